fn main() {
    std::process::exit(parint_cli::run_cli(std::env::args_os()));
}
