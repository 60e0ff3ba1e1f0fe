fn main() {
    std::process::exit(clark_core::cli::run(std::env::args_os()));
}
