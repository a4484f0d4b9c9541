fn main() {
    std::process::exit(mathisson_top::cli::main_with(std::env::args_os()));
}
