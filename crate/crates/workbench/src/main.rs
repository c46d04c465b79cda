fn main() {
    std::process::exit(green_workbench::cli::main_with_args(std::env::args_os()));
}
