fn main() {
    std::process::exit(waring_deborder::cli::main_with(std::env::args_os()));
}
