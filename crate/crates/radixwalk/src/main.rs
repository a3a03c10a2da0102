use clap::Parser;

fn main() {
    let cli = match radixwalk::cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version output also arrives as an "error".
            if e.use_stderr() {
                eprint!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    if let Err(e) = radixwalk::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
