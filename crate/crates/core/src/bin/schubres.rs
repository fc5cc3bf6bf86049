fn main() {
    std::process::exit(schubres::cli::main_exit());
}
