fn main() {
    std::process::exit(so3trace::cli::run());
}
