fn main() {
    std::process::exit(tornheim::cli::run(std::env::args_os()));
}
