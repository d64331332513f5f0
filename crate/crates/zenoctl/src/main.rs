use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = zenoctl::run::max_qubits_from_env();
    let code = zenoctl::run_cli(
        std::env::args_os(),
        env.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
