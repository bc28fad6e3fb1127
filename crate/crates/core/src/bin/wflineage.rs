fn main() {
    std::process::exit(wflineage::cli::main());
}
