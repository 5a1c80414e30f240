fn main() {
    std::process::exit(wigner_ks_cli::run(std::env::args_os()));
}
