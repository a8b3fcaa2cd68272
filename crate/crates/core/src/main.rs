fn main() {
    std::process::exit(visipts::cli::run(std::env::args_os()));
}
