fn main() {
    std::process::exit(unique_games::cli::main_with_args(std::env::args_os()));
}
