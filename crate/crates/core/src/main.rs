use std::io::IsTerminal;
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = grassmann_cup::cli::run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        color,
    );
    ExitCode::from(code as u8)
}
