fn main() {
    std::process::exit(aco::cli::run(std::env::args_os()));
}
