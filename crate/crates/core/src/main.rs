fn main() {
    std::process::exit(autosync::cli::main_with(std::env::args_os()));
}
