use leibniz::algebra::LeibnizAlgebra;
use leibniz::field::GaussianRational as G;
use leibniz::linalg::unit_vec;

fn e(k: usize) -> Vec<G> {
    unit_vec(5, k - 1, &())
}

fn main() {
    // [e1,e1] = e3, [e1,e3] = e4, [e1,e4] = e5, [e2,e2] = e5.
    let mut a = LeibnizAlgebra::<G>::from_products(5, &(), [(0, 0, e(3)), (0, 2, e(4)), (0, 3, e(5)), (1, 1, e(5))]).unwrap();
    println!("{a}");
    println!("identity: {}", a.check_leibniz());
    println!("Lie: {}", a.is_lie());
    println!("Leib(A) has dimension {}", a.leib_ideal().dim());

    // Adding [e3,e1] = e5 breaks the identity at (e1, e1, e1).
    a.set_product(2, 0, e(5)).unwrap();
    println!("after adding [e3,e1] = e5: {}", a.check_leibniz());
}
