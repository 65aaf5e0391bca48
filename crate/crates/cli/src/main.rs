fn main() {
    // Behave like a normal pipeline filter: die silently on a closed pipe
    // instead of panicking on EPIPE (Rust masks SIGPIPE by default).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(tilepump_cli::run(std::env::args()));
}
