fn main() {
    std::process::exit(recistab_cli::run(std::env::args_os()));
}
