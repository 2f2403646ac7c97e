fn main() {
    std::process::exit(cfckit_cli::run(std::env::args_os()));
}
