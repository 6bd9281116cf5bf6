fn main() {
    daha_leonard::cli::main()
}
