fn main() {
    std::process::exit(derivspace::cli::run(std::env::args_os()));
}
