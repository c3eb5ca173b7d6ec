fn main() {
    std::process::exit(relcheb::cli::run(std::env::args_os()));
}
