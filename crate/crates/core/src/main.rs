fn main() {
    std::process::exit(tendex::cli::run(std::env::args_os()));
}
