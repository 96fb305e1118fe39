fn main() {
    std::process::exit(pg4codes::cli::run(std::env::args_os()));
}
