use std::process::ExitCode;

fn main() -> ExitCode {
    qlsp_catalyst::cli::main()
}
