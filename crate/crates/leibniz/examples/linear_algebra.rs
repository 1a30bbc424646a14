use leibniz::field::GaussianRational as G;
use leibniz::linalg::{Matrix, Subspace};

fn g(a: i64, b: i64) -> G {
    G::from_ints(a, b)
}

fn main() {
    let m = Matrix::from_rows(
        vec![vec![g(1, 0), g(2, 0), g(3, 0)], vec![g(0, 1), g(1, 0), g(0, 0)], vec![g(1, 1), g(3, 0), g(3, 0)]],
        &(),
    )
    .unwrap();
    println!("M = {m}");
    println!("rank M = {}", m.rank());
    for v in m.nullspace() {
        println!("kernel vector {v:?}", v = v.iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    let p = Matrix::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(2, 0), g(1, 0)]], &()).unwrap();
    let inv = p.invert().unwrap();
    println!("P^-1 = {inv}");
    println!("P P^-1 = {}", p.mul(&inv).unwrap());

    let u = Subspace::span(3, vec![vec![g(1, 0), g(0, 0), g(0, 0)], vec![g(0, 0), g(1, 0), g(0, 0)]], &());
    let w = Subspace::span(3, vec![vec![g(0, 0), g(1, 0), g(1, 0)]], &());
    println!("dim U = {}, dim W = {}", u.dim(), w.dim());
    println!("dim U + W = {}", u.sum(&w).unwrap().dim());
    println!("dim U ∩ W = {}", u.intersection(&w).unwrap().dim());
}
