fn main() {
    std::process::exit(dynkin_core::cli::run(std::env::args_os()));
}
