fn main() {
    std::process::exit(mackey_fields::cli::main());
}
