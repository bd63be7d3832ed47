fn main() {
    std::process::exit(loopslice::cli::main());
}
