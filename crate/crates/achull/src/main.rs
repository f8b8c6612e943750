fn main() {
    std::process::exit(achull::cli::run(std::env::args_os()));
}
