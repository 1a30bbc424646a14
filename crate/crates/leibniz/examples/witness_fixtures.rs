use leibniz::catalogue::Catalogue;
use leibniz::iso::FixtureFile;

fn main() {
    let cat = Catalogue::bundled();
    let file = FixtureFile::bundled();
    for outcome in file.verify(&cat).unwrap() {
        println!(
            "{:<26} {} -> {} over {}: {} ({})",
            outcome.name,
            outcome.source,
            outcome.target,
            outcome.field,
            outcome.verdict,
            if outcome.matches { "as expected" } else { "UNEXPECTED" }
        );
    }
}
