fn main() {
    std::process::exit(me_response::cli::run(std::env::args_os()));
}
