fn main() {
    std::process::exit(poslim::cli::run());
}
