use clap::Parser;

fn main() {
    // Die quietly when the read end of a pipe closes (`... | head`),
    // like every other line-oriented Unix tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = ising_embed_cli::Cli::parse();
    std::process::exit(ising_embed_cli::run(cli));
}
