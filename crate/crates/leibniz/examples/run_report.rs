use leibniz::catalogue::{verify_catalogue, Catalogue};
use leibniz::field::parse_matrix;
use leibniz::iso::FixtureFile;
use leibniz::linalg::Matrix;
use leibniz::report::{canon_row, fixtures_command, verify_command, CommandReport, RunReport};

fn main() {
    let cat = Catalogue::bundled();
    let mut report = RunReport::new(&cat);
    report.push(verify_command(&verify_catalogue(&cat, Some("A_5"), 2)));
    report.push(fixtures_command(&FixtureFile::bundled().verify(&cat).unwrap()));
    let m = Matrix::from_rows(parse_matrix("[[0,2],[4,0]]").unwrap(), &()).unwrap();
    report.push(CommandReport::new("canon", vec![canon_row(&m).1]));

    print!("{}", report.to_table());
    if std::env::args().any(|a| a == "--json") {
        print!("{}", report.to_json());
    }
}
