fn main() {
    std::process::exit(bnsat::cli::run(std::env::args_os()));
}
