use std::process::ExitCode;

fn main() -> ExitCode {
    idxdict::cli::main()
}
