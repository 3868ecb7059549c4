//! Permutation representation of the mapping class group acting on the six
//! cusp coordinates, stored in the Kronecker basis `(+x, +y, +t, -x, -y, -t)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::RelationCheck;

pub type Mat3 = [[i64; 3]; 3];
pub type Mat6 = [[i64; 6]; 6];

const I2: [[i64; 2]; 2] = [[1, 0], [0, 1]];
const J2: [[i64; 2]; 2] = [[0, 1], [1, 0]];

const M: [Mat3; 3] = [
    [[0, 0, 0], [1, 0, 0], [0, 0, 1]],
    [[0, 0, 0], [0, 1, 0], [1, 0, 0]],
    [[1, 0, 0], [0, 0, 0], [0, 1, 0]],
];
const N: [Mat3; 3] = [
    [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
];
const X: [Mat3; 3] = [
    [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
    [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
];

fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn add3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = *a;
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] += b[i][j];
        }
    }
    c
}

fn sub3(a: &Mat3, b: &Mat3) -> Mat3 {
    add3(a, &scale3(b, -1))
}

fn scale3(a: &Mat3, s: i64) -> Mat3 {
    a.map(|row| row.map(|v| v * s))
}

fn transpose3(a: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[j][i];
        }
    }
    c
}

fn id3() -> Mat3 {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
}

pub fn identity6() -> Mat6 {
    let mut m = [[0; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// `a ⊗ b` for a 2×2 and a 3×3 matrix.
pub fn kron(a: &[[i64; 2]; 2], b: &Mat3) -> Mat6 {
    let mut c = [[0; 6]; 6];
    for (bi, arow) in a.iter().enumerate() {
        for (bj, &s) in arow.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    c[3 * bi + i][3 * bj + j] = s * b[i][j];
                }
            }
        }
    }
    c
}

pub fn mul6(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut c = [[0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] = (0..6).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn add6(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut c = *a;
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] += b[i][j];
        }
    }
    c
}

pub fn transpose6(a: &Mat6) -> Mat6 {
    let mut c = [[0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] = a[j][i];
        }
    }
    c
}

pub fn pow6(a: &Mat6, n: u32) -> Mat6 {
    (0..n).fold(identity6(), |acc, _| mul6(&acc, a))
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det6(a: &Mat6) -> i64 {
    let mut m = *a;
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..6 {
        if m[k][k] == 0 {
            match (k + 1..6).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..6 {
            for j in k + 1..6 {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[5][5]
}

/// `exp(θ X)` for a 3×3 matrix by scaling and squaring of a Taylor series.
pub fn expm_series(x: &Mat3, theta: f64) -> [[f64; 3]; 3] {
    type F3 = [[f64; 3]; 3];
    let mul = |a: &F3, b: &F3| {
        let mut c = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    };
    let squarings = 6;
    let s = theta / f64::from(1u32 << squarings);
    let a: F3 = x.map(|row| row.map(|v| v as f64 * s));
    let mut term: F3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut sum = term;
    for k in 1..30 {
        term = mul(&term, &a).map(|row| row.map(|v| v / k as f64));
        for i in 0..3 {
            for j in 0..3 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// The three generators `T_i = I2⊗M_i + J2⊗N_i`, their inverses and the
/// blocks of the decompositions `T_i = I2⊗R_i + (I2+J2)⊗N_i` and
/// `T_i = (I2⊗R_i) A_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationRep {
    pub t: [Mat6; 3],
    pub t_inv: [Mat6; 3],
    pub m: [Mat3; 3],
    pub n: [Mat3; 3],
    /// `R_i = M_i - N_i`.
    pub r: [Mat3; 3],
    /// `so(3)` generators with `R_i = exp(π/2 X_i)`.
    pub x: [Mat3; 3],
    /// `A_i = I2⊗(I3 + R_i^{-1} N_i) + J2⊗(R_i^{-1} N_i)`.
    pub a: [Mat6; 3],
}

pub fn mcg_generators() -> PermutationRep {
    let t = [0, 1, 2].map(|i| add6(&kron(&I2, &M[i]), &kron(&J2, &N[i])));
    let t_inv = [0, 1, 2].map(|i| {
        add6(&kron(&I2, &transpose3(&M[i])), &kron(&J2, &transpose3(&N[i])))
    });
    let r = [0, 1, 2].map(|i| sub3(&M[i], &N[i]));
    let a = [0, 1, 2].map(|i| {
        let rn = mul3(&transpose3(&r[i]), &N[i]);
        add6(&kron(&I2, &add3(&id3(), &rn)), &kron(&J2, &rn))
    });
    PermutationRep {
        t,
        t_inv,
        m: M,
        n: N,
        r,
        x: X,
        a,
    }
}

/// `exp(π/2 X) = I + X + X²` for a unit rotation generator (`X³ = -X`).
pub fn quarter_turn(x: &Mat3) -> Mat3 {
    add3(&add3(&id3(), x), &mul3(x, x))
}

/// Word over `t1, t2, t3` with integer powers, e.g. `t1 t2 t1^-1 t3`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct McgWord {
    /// `(generator index 0..3, power)`.
    pub letters: Vec<(usize, i32)>,
}

impl McgWord {
    /// `ρ(w) = T_{w_1} T_{w_2} …`.
    pub fn matrix(&self, rep: &PermutationRep) -> Mat6 {
        self.letters.iter().fold(identity6(), |acc, &(g, p)| {
            let base = if p < 0 { &rep.t_inv[g] } else { &rep.t[g] };
            mul6(&acc, &pow6(base, p.unsigned_abs()))
        })
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, p)| {
                if p == 1 {
                    format!("t{}", g + 1)
                } else {
                    format!("t{}^{}", g + 1, p)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for McgWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let (name, power) = match tok.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<i32>()
                            .map_err(|_| Error::Parse(format!("bad power in {tok:?}")))?,
                    ),
                    None => (tok, 1),
                };
                let g = match name {
                    "t1" => 0,
                    "t2" => 1,
                    "t3" => 2,
                    _ => return Err(Error::Parse(format!("unknown twist {tok:?}"))),
                };
                Ok((g, power))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(McgWord { letters })
    }
}

pub fn apply6(m: &Mat6, u: &[f64; 6]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(u).map(|(&a, &b)| a as f64 * b).sum();
    }
    out
}

/// `ρ(w) u`.
pub fn mcg_apply(word: &McgWord, u: &[f64; 6]) -> [f64; 6] {
    apply6(&word.matrix(&mcg_generators()), u)
}

/// Orbit of `u` under the group generated by `T_1, T_2`, computed on index
/// permutations so that coincident entries do not merge distinct elements.
pub fn mcg_orbit(u: &[f64; 6]) -> Vec<[f64; 6]> {
    let rep = mcg_generators();
    let perm_of = |m: &Mat6| -> [usize; 6] {
        let mut p = [0; 6];
        for (i, row) in m.iter().enumerate() {
            p[i] = row.iter().position(|&v| v == 1).expect("permutation matrix");
        }
        p
    };
    let gens = [perm_of(&rep.t[0]), perm_of(&rep.t[1])];
    let start = [0, 1, 2, 3, 4, 5];
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut order = vec![start];
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = g.map(|k| cur[k]);
            if seen.insert(next) {
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    order.into_iter().map(|p| p.map(|k| u[k])).collect()
}

/// Structural identities of the representation, all in exact integer
/// arithmetic except the matrix exponential check.
pub fn mcg_structure_report() -> Vec<RelationCheck> {
    let rep = mcg_generators();
    let id6 = identity6();
    let mut out = Vec::new();
    let mut push = |name: String, ok: bool, dev: f64| {
        out.push(RelationCheck {
            name,
            max_deviation: dev,
            passed: ok,
        })
    };
    let exact = |a: &Mat6, b: &Mat6| if a == b { 0.0 } else { 1.0 };
    for i in 0..3 {
        let t4 = pow6(&rep.t[i], 4);
        push(format!("T{}^4 = I6", i + 1), t4 == id6, exact(&t4, &id6));
        let det = det6(&rep.t[i]);
        push(format!("det T{} = -1", i + 1), det == -1, (det + 1).abs() as f64);
        let inv = mul6(&rep.t[i], &rep.t_inv[i]);
        push(format!("T{0} T{0}^-1 = I6", i + 1), inv == id6, exact(&inv, &id6));
        let split = add6(&kron(&I2, &rep.r[i]), &kron(&[[1, 1], [1, 1]], &rep.n[i]));
        push(format!("T{0} = I2⊗R{0} + (I2+J2)⊗N{0}", i + 1), split == rep.t[i], exact(&split, &rep.t[i]));
        let a2 = mul6(&rep.a[i], &rep.a[i]);
        push(format!("A{}^2 = I6", i + 1), a2 == id6, exact(&a2, &id6));
        let ra = mul6(&kron(&I2, &rep.r[i]), &rep.a[i]);
        push(format!("T{0} = (I2⊗R{0}) A{0}", i + 1), ra == rep.t[i], exact(&ra, &rep.t[i]));
        let q = quarter_turn(&rep.x[i]);
        push(format!("R{0} = I + X{0} + X{0}^2", i + 1), q == rep.r[i], if q == rep.r[i] { 0.0 } else { 1.0 });
        let series = expm_series(&rep.x[i], std::f64::consts::FRAC_PI_2);
        let dev = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| (series[a][b] - rep.r[i][a][b] as f64).abs())
            .fold(0.0, f64::max);
        push(format!("R{0} = exp(pi/2 X{0})", i + 1), dev < 1e-12, dev);
    }
    let [t1, t2, t3] = rep.t;
    let [t1i, t2i, _] = rep.t_inv;
    let t3w = mul6(&mul6(&t1i, &t2i), &t1);
    push("T3 = T1^-1 T2^-1 T1".into(), t3w == t3, exact(&t3w, &t3));
    let l = mul6(&mul6(&t1, &t2), &t1);
    let r = mul6(&mul6(&t2, &t1), &t2);
    push("T1 T2 T1 = T2 T1 T2".into(), l == r, exact(&l, &r));
    let j = mul6(&t1, &t2);
    let s = mul6(&t1, &j);
    let s2 = pow6(&s, 2);
    let j3 = pow6(&j, 3);
    push("S^2 = I6".into(), s2 == id6, exact(&s2, &id6));
    push("J^3 = I6".into(), j3 == id6, exact(&j3, &id6));
    let comm = |a: &Mat3, b: &Mat3| sub3(&mul3(a, b), &mul3(b, a));
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let lhs = comm(&X[a], &X[b]);
        push(format!("[X{}, X{}] = X{}", a + 1, b + 1, c + 1), lhs == X[c], if lhs == X[c] { 0.0 } else { 1.0 });
    }
    let cas = add3(&add3(&mul3(&X[0], &X[0]), &mul3(&X[1], &X[1])), &mul3(&X[2], &X[2]));
    let target = scale3(&id3(), -2);
    push("X1^2 + X2^2 + X3^2 = -2 I3".into(), cas == target, if cas == target { 0.0 } else { 1.0 });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_report_passes() {
        for c in mcg_structure_report() {
            assert!(c.passed, "{}", c.name);
        }
    }

    #[test]
    fn t1_matches_printed_permutation() {
        // (ū_{+x}, ū_{+y}, ū_{+t}, ū_{-x}, ū_{-y}, ū_{-t}) -> (ū_{-y}, ū_{+x}, ū_{+t}, ū_{+y}, ū_{-x}, ū_{-t})
        let u = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let w: McgWord = "t1".parse().unwrap();
        assert_eq!(mcg_apply(&w, &u), [5.0, 1.0, 3.0, 2.0, 4.0, 6.0]);
        let w2: McgWord = "t2".parse().unwrap();
        assert_eq!(mcg_apply(&w2, &u), [6.0, 2.0, 1.0, 3.0, 5.0, 4.0]);
        let w3: McgWord = "t3".parse().unwrap();
        assert_eq!(mcg_apply(&w3, &u), [1.0, 6.0, 2.0, 4.0, 3.0, 5.0]);
    }

    #[test]
    fn word_parsing_and_homomorphism() {
        let rep = mcg_generators();
        let w: McgWord = "t1 t2 t1^-1 t3".parse().unwrap();
        assert_eq!(w.to_string(), "t1 t2 t1^-1 t3");
        let a: McgWord = "t1 t2".parse().unwrap();
        let b: McgWord = "t1^-1 t3".parse().unwrap();
        assert_eq!(w.matrix(&rep), mul6(&a.matrix(&rep), &b.matrix(&rep)));
        assert!("t4".parse::<McgWord>().is_err());
        assert_eq!(McgWord::default().matrix(&rep), identity6());
    }

    #[test]
    fn orbit_bounded() {
        let orbit = mcg_orbit(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!(orbit.len() <= 48 && orbit.len() > 1);
    }

    #[test]
    fn bareiss_det() {
        assert_eq!(det6(&identity6()), 1);
        let mut m = identity6();
        m.swap(0, 1);
        assert_eq!(det6(&m), -1);
    }
}
