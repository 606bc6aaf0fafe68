fn main() {
    std::process::exit(contact_ricci::cli::execute(std::env::args_os()));
}
