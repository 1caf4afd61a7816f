use clap::Parser;

fn main() {
    let cli = povs::cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(err) = povs::cli::run(cli, &mut out) {
        eprintln!("error: {err}");
        std::process::exit(povs::cli::exit_code(&err));
    }
}
