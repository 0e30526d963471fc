fn main() {
    std::process::exit(ballpswf::cli::run(std::env::args_os()));
}
