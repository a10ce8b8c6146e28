fn main() {
    std::process::exit(knotkit::cli::run(std::env::args_os()));
}
