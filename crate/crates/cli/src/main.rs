fn main() {
    std::process::exit(romik_cli::run(std::env::args_os()));
}
