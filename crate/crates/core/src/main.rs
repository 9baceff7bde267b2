fn main() {
    std::process::exit(dtqw::cli::main());
}
