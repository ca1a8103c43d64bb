fn main() {
    std::process::exit(dqeig::cli::main_entry());
}
