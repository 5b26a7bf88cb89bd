fn main() {
    std::process::exit(fokas_cli::run(std::env::args_os()));
}
