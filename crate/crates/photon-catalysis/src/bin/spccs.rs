fn main() -> ! {
    photon_catalysis::cli::main()
}
