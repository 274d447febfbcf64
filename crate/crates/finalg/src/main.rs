fn main() {
    std::process::exit(finalg::cli::run(std::env::args_os()));
}
