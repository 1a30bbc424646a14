use leibniz::catalogue::Catalogue;
use leibniz::lemmas::{bounds_report, lemma4_bound, lemma5_bounds};

fn main() {
    for k in 1..=4 {
        println!("k = {k}: dim A^2 <= {}", lemma4_bound(k));
    }
    let (i, ii) = lemma5_bounds(2, 1);
    println!("k = 2, t = 1: bounds {i} and {ii}");

    let cat = Catalogue::bundled();
    for spec in ["A_1", "A_16", "A_120:alpha=2", "R_3"] {
        let (entry, params) = cat.point(spec).unwrap();
        let a = cat.instantiate(entry, &params).unwrap();
        let r = bounds_report(&a);
        println!("{spec}: holds {}  {:?}  {:?}", r.holds(), r.lemma4, r.lemma5);
    }
}
