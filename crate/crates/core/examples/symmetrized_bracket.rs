//! The symmetrized Poisson bracket against the commutator and the classical
//! bracket.

use semiclassical::ncpoly::{
    classical_limit, commutator, from_weyl_basis, parse_expression, to_weyl_basis, WeylPolynomial,
};

fn main() -> semiclassical::Result<()> {
    let h = WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5)])?;
    let q = WeylPolynomial::monomial(1, 0);
    println!("{{H, q}}_S = {}", h.symmetrized_poisson(&q));

    // degree <= 2: bracket = commutator / (i hbar)
    let f = parse_expression("q^2 + 3*q*p")?;
    let g = parse_expression("p^2 - q")?;
    let bracket = from_weyl_basis(&to_weyl_basis(&f).symmetrized_poisson(&to_weyl_basis(&g)));
    let quantum = commutator(&f, &g).div_ihbar().expect("degree <= 2 commutators are divisible by hbar");
    println!("{{f, g}}_S       = {bracket}");
    println!("[f, g] / i hbar = {quantum}");

    // degree 3: they differ by hbar^2 terms, the classical limits agree
    let f = parse_expression("q^3")?;
    let g = parse_expression("p^3")?;
    let bracket = from_weyl_basis(&to_weyl_basis(&f).symmetrized_poisson(&to_weyl_basis(&g)));
    let quantum = commutator(&f, &g).div_ihbar().expect("commutators are divisible by hbar");
    println!("{{q^3, p^3}}_S       = {bracket}");
    println!("[q^3, p^3] / i hbar = {quantum}");
    println!("classical limits: {} and {}", classical_limit(&bracket), classical_limit(&quantum));
    Ok(())
}
