use leibniz::catalogue::{verify_catalogue, Catalogue};

fn main() {
    let cat = Catalogue::bundled();
    println!("{} entries, sha256 {}", cat.entries.len(), cat.digest());

    let name = std::env::args().nth(1).unwrap_or_else(|| "A_17".to_string());
    for report in verify_catalogue(&cat, Some(&name), 3) {
        println!("{}: {}", report.label(), if report.passed() { "pass" } else { "FAIL" });
        for check in &report.checks {
            println!("  {:<24} {:<5} {}", check.check, check.passed, check.detail);
        }
    }
}
