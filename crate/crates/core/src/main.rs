use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = supercohom::cli::threads_from_env() {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = supercohom::cli::run_command(&args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
