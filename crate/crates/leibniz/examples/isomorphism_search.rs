use leibniz::catalogue::Catalogue;
use leibniz::iso::{decide_isomorphism, verify_witness, IsoVerdict, SearchConfig};

fn main() {
    let cat = Catalogue::bundled();
    let cfg = SearchConfig::default();
    for (x, y) in [("A_5:alpha=2", "A_5:alpha=-2"), ("A_17:alpha=2", "A_17:alpha=1/2"), ("A_1", "A_2")] {
        let (ea, pa) = cat.point(x).unwrap();
        let (eb, pb) = cat.point(y).unwrap();
        let a = cat.instantiate(ea, &pa).unwrap();
        let b = cat.instantiate(eb, &pb).unwrap();
        let verdict = decide_isomorphism(&a, &b, &cfg, 17).unwrap();
        println!("{x} vs {y}: {}", verdict.label());
        match &verdict {
            IsoVerdict::Certified(p) => {
                println!("  P = {p}");
                println!("  recheck: {}", verify_witness(&a, &b, p).unwrap().is_ok());
                println!("  base_change(A, P) == B: {}", a.base_change(p).unwrap() == b);
            }
            IsoVerdict::NonIsomorphic(fields) => println!("  differs in {fields:?}"),
            other => println!("  {other:?}"),
        }
    }
}
