fn main() {
    std::process::exit(normlift::run());
}
