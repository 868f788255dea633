fn main() {
    std::process::exit(isoq_cli::run(std::env::args_os()));
}
