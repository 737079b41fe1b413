fn main() {
    std::process::exit(shapdet::cli::run(std::env::args_os()));
}
