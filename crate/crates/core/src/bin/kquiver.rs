fn main() {
    std::process::exit(kquiver::cli::run(std::env::args_os()));
}
