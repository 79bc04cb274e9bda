fn main() {
    std::process::exit(dp3_core::cli::main_with_args(std::env::args_os()));
}
