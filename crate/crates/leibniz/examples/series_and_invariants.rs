use leibniz::algebra::SeriesKind;
use leibniz::catalogue::Catalogue;
use leibniz::invariants::signature;

fn main() {
    let cat = Catalogue::bundled();
    for spec in ["A_1", "A_16", "A_17:alpha=2", "R_1"] {
        let (entry, params) = cat.point(spec).unwrap();
        let a = cat.instantiate(entry, &params).unwrap();
        println!("{spec}");
        println!("  lower central {:?}", a.series(SeriesKind::LowerCentral).dims);
        println!("  derived       {:?}", a.series(SeriesKind::Derived).dims);
        let ann = a.annihilators();
        println!(
            "  Leib {}  left ann {}  right ann {}  centre {}",
            a.leib_ideal().dim(),
            ann.left.dim(),
            ann.right.dim(),
            ann.center.dim()
        );
        println!("  flags {:?}", a.classify_flags());
        println!("  signature {:?}", signature(&a));
    }
}
