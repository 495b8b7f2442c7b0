fn main() {
    std::process::exit(relkort_cli::run(std::env::args_os()));
}
