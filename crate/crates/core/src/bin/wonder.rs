fn main() {
    wonder_core::cli::main()
}
