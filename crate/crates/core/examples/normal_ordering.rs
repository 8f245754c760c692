//! Normal ordering of operator words and products of polynomials.

use semiclassical::ncpoly::{commutator, normal_order, parse_expression, NCPolynomial, Word};

fn main() -> semiclassical::Result<()> {
    for w in ["QP", "PQ", "PPQ", "PQPQ"] {
        let word: Word = w.parse()?;
        println!("{w:>5} -> {}", normal_order(&word));
    }

    let (q, p) = (NCPolynomial::q(), NCPolynomial::p());
    println!("[q, p]   = {}", commutator(&q, &p));
    println!("[q^2, p] = {}", commutator(&q.pow(2), &p));

    let f = parse_expression("(q + p)^3")?;
    println!("(q + p)^3 = {f}");
    println!("self-adjoint: {}", f.is_self_adjoint());
    Ok(())
}
