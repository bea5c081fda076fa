fn main() {
    schlicht::cli::init_threads();
    std::process::exit(schlicht::cli::run(std::env::args_os()));
}
