fn main() -> std::process::ExitCode {
    cfchroma_cli::run(std::env::args_os())
}
