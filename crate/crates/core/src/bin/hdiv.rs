fn main() {
    std::process::exit(hdiv::cli::run(std::env::args_os()));
}
