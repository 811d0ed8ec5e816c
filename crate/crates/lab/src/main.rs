use clap::Parser;

fn main() {
    let cli = awlab::cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = awlab::cli::execute(&cli, &mut stdout);
    std::process::exit(code);
}
