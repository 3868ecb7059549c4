fn main() {
    std::process::exit(brc_core::cli::run(std::env::args_os()));
}
