fn main() {
    std::process::exit(bentforge::cli::main_exit());
}
