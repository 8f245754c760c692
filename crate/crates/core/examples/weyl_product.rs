//! Weyl monomials and the symmetrized product, which adds indices.

use semiclassical::ncpoly::{from_weyl_basis, to_weyl_basis, weyl_monomial, weyl_monomial_enumerated, WeylPolynomial};
use semiclassical::oracles::brute_force_weyl;

fn main() -> semiclassical::Result<()> {
    for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let w = weyl_monomial(n, m);
        assert_eq!(w, weyl_monomial_enumerated(n, m, 16)?);
        assert_eq!(w, brute_force_weyl(n, m)?);
        println!("W({n},{m}) = {w}");
    }

    let a = WeylPolynomial::monomial(1, 1);
    let b = WeylPolynomial::monomial(1, 0);
    let ab = a.symmetrized_product(&b);
    println!("W(1,1) o W(1,0) = {ab} = {}", from_weyl_basis(&ab));

    let f = semiclassical::ncpoly::parse_expression("q^2*p")?;
    println!("q^2 p in the Weyl basis: {}", to_weyl_basis(&f));
    println!("(q*p) @ q = {}", semiclassical::ncpoly::parse_expression("(q*p) @ q")?);
    Ok(())
}
