fn main() {
    std::process::exit(oscihaz::cli::run(std::env::args_os()));
}
