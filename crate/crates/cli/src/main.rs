fn main() {
    std::process::exit(hsbasis_cli::run(std::env::args_os()));
}
