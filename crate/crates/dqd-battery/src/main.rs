use std::process::ExitCode;

fn main() -> ExitCode {
    dqd_battery::cli::main()
}
