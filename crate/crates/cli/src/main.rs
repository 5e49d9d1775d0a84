fn main() {
    std::process::exit(telesum_cli::run(std::env::args_os().skip(1)));
}
