//! Independent reference computations used by the integration tests.
//!
//! Nothing here goes through the tree walker, the library distance functions
//! or the library summation helpers.

#![allow(dead_code)]

use brc_core::group::GAMMA;
use brc_core::vec3::Vec3;

/// Ball distance from `2 asinh(|p-q| / sqrt((1-|p|²)(1-|q|²)))`.
pub fn ball_dist(p: [f64; 3], q: [f64; 3]) -> f64 {
    let d2: f64 = (0..3).map(|k| (p[k] - q[k]).powi(2)).sum();
    let np: f64 = p.iter().map(|v| v * v).sum();
    let nq: f64 = q.iter().map(|v| v * v).sum();
    2.0 * (d2.sqrt() / ((1.0 - np) * (1.0 - nq)).sqrt()).asinh()
}

pub fn apply_letter(letter: usize, p: [f64; 3]) -> [f64; 3] {
    GAMMA[letter].apply_vec(Vec3::new(p[0], p[1], p[2])).to_array()
}

/// Every admissible word of length `n` over letters `0..6`, in lexicographic order.
pub fn admissible_words(n: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * 6);
        for w in &words {
            for l in 0..6 {
                if let Some(&last) = w.last() {
                    if (last as i32 - l as i32).abs() == 3 {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words = next;
    }
    words
}

/// Path vertices; `innermost` applies the new letter first.
pub fn path_vertices(word: &[usize], innermost: bool) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(word.len());
    if innermost {
        for t in 1..=word.len() {
            let mut p = [0.0; 3];
            for &l in word[..t].iter().rev() {
                p = apply_letter(l, p);
            }
            out.push(p);
        }
    } else {
        let mut p = [0.0; 3];
        for &l in word {
            p = apply_letter(l, p);
            out.push(p);
        }
    }
    out
}

pub fn path_l(word: &[usize], innermost: bool) -> f64 {
    path_vertices(word, innermost)
        .iter()
        .map(|&p| ball_dist([0.0; 3], p))
        .sum()
}

pub fn path_l0(word: &[usize], innermost: bool) -> f64 {
    let mut prev = [0.0; 3];
    let mut acc = 0.0;
    for p in path_vertices(word, innermost) {
        acc += ball_dist(prev, p);
        prev = p;
    }
    acc
}

/// Brute-force spectrum in lexicographic word order.
pub fn spectrum(n: usize, l0: bool, innermost: bool) -> Vec<f64> {
    admissible_words(n)
        .iter()
        .map(|w| if l0 { path_l0(w, innermost) } else { path_l(w, innermost) })
        .collect()
}

/// Mean and population standard deviation with Kahan summation.
pub fn moments(values: &[f64]) -> (f64, f64) {
    let kahan = |it: &mut dyn Iterator<Item = f64>| {
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for x in it {
            let y = x - c;
            let t = s + y;
            c = (t - s) - y;
            s = t;
        }
        s
    };
    let n = values.len() as f64;
    let mean = kahan(&mut values.iter().copied()) / n;
    let var = kahan(&mut values.iter().map(|v| (v - mean) * (v - mean))) / n;
    (mean, var.sqrt())
}

/// `ln Σ exp(q v)` with the maximum term factored out.
pub fn ln_partition(values: &[f64], q: f64) -> f64 {
    let m = values.iter().map(|v| q * v).fold(f64::NEG_INFINITY, f64::max);
    m + values.iter().map(|v| (q * v - m).exp()).sum::<f64>().ln()
}

/// Step length from the image of the origin under the first letter.
pub fn step_length() -> f64 {
    ball_dist([0.0; 3], apply_letter(0, [0.0; 3]))
}

/// `exp(θ X)` by a 40-term Taylor series.
pub fn expm3(x: &[[i64; 3]; 3], theta: f64) -> [[f64; 3]; 3] {
    let xf: Vec<Vec<f64>> = x.iter().map(|r| r.iter().map(|&v| v as f64 * theta).collect()).collect();
    let mut term = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut sum = term;
    for k in 1..40 {
        let mut next = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                next[i][j] = (0..3).map(|m| term[i][m] * xf[m][j]).sum::<f64>() / k as f64;
            }
        }
        term = next;
        for i in 0..3 {
            for j in 0..3 {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

pub fn matmul<const D: usize>(a: &[[i64; D]; D], b: &[[i64; D]; D]) -> [[i64; D]; D] {
    let mut c = [[0; D]; D];
    for i in 0..D {
        for j in 0..D {
            c[i][j] = (0..D).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn identity<const D: usize>() -> [[i64; D]; D] {
    let mut c = [[0; D]; D];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 1;
    }
    c
}

/// Determinant of a permutation matrix from the sign of its permutation;
/// `None` if the matrix is not a permutation matrix.
pub fn permutation_det<const D: usize>(a: &[[i64; D]; D]) -> Option<i64> {
    let mut perm = [0usize; D];
    for (i, row) in a.iter().enumerate() {
        let ones: Vec<usize> = (0..D).filter(|&j| row[j] == 1).collect();
        if ones.len() != 1 || row.iter().any(|&v| v != 0 && v != 1) {
            return None;
        }
        perm[i] = ones[0];
    }
    let mut sorted = perm;
    sorted.sort_unstable();
    if sorted.iter().enumerate().any(|(i, &v)| i != v) {
        return None;
    }
    let mut seen = [false; D];
    let mut sign = 1;
    for start in 0..D {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Some(sign)
}

/// Composite Simpson rule on `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}
