fn main() {
    std::process::exit(narrow_abp::cli::main_with_args(std::env::args_os()));
}
