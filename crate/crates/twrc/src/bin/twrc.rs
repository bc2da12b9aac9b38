fn main() {
    std::process::exit(twrc::cli::run(std::env::args_os()));
}
