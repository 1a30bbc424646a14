use leibniz::field::{parse_scalar, reduce_mod_p, sqrt_in_field, GaussianRational as G, QuadExt, SqrtResult};

fn main() {
    let a = G::from_ints(3, 4);
    let b = G::from_ratio(1, 2);
    println!("a = {a}, b = {b}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("1 / a = {}", a.recip().unwrap());
    println!("norm a = {}", a.norm());

    for v in [G::from_ints(-4, 0), a.clone(), G::from_i64(2)] {
        match sqrt_in_field(&v) {
            SqrtResult::InField(s) => println!("sqrt({v}) = {s}"),
            SqrtResult::Extension { d } => println!("sqrt({v}) needs Q(i)(sqrt {d})"),
        }
    }

    let d = G::from_i64(2);
    let r = QuadExt::generator(&d).unwrap();
    println!("({r})^2 = {}", &r * &r);
    let x = &r + &QuadExt::embed(G::one(), &d);
    println!("(1 + sqrt 2) * conj = {}", &x * &x.conj());

    for p in [13, 17] {
        println!("{a} mod {p} = {}", reduce_mod_p(&a, p).unwrap());
    }

    for text in ["-3/4", "2 - i/3", "sqrt(2)/2"] {
        println!("{text:>10} parses to {}", parse_scalar(text).unwrap());
    }
}
