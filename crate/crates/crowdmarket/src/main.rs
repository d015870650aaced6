fn main() {
    // Die quietly when a downstream pipe closes (e.g. `... | head`), like
    // any other line-oriented tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(crowdmarket::cli::run());
}
