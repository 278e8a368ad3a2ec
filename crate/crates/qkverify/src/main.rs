fn main() {
    // CLI wired up once the check registry lands.
}
