fn main() {
    std::process::exit(bolforge::cli::run(std::env::args_os()));
}
