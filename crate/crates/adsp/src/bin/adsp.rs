use std::panic::catch_unwind;

fn main() {
    // a panic anywhere in the pipeline is an internal error, never a crash
    let code = catch_unwind(adsp::cli::run).unwrap_or_else(|_| {
        eprintln!("error: internal panic");
        2
    });
    std::process::exit(code);
}
