fn main() {
    let threads = std::env::var("HESSLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    hesslab::par::configure_threads(threads);
    std::process::exit(hesslab::cli::run(std::env::args_os()));
}
