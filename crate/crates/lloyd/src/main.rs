fn main() {
    std::process::exit(lloyd::cli::main_entry(std::env::args_os()));
}
