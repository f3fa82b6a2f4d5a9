use clap::Parser;

fn main() {
    let cli = tecc_cli::Cli::parse();
    match tecc_cli::run(&cli) {
        Ok(report) => {
            print!("{}", report);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(e.exit_code());
        }
    }
}
