use std::io;
use std::process::ExitCode;

use stancu_core::cli::{run, GRID_ENV};

fn main() -> ExitCode {
    let grid = std::env::var(GRID_ENV).ok();
    let code = run(
        std::env::args_os(),
        grid.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
