//! Exact symbolic algebra of polynomials in `q̂`, `p̂` modulo `[q̂, p̂] = iħ`.
//!
//! `ħ` is a formal grading symbol here; numbers enter only in
//! [`crate::repspace`].

mod classical;
mod coefficient;
mod parse;
mod poly;
mod weyl;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

pub use classical::{classical_limit, eval_classical, ClassicalPolynomial};
pub use coefficient::Coefficient;
pub use parse::parse_expression;
pub use poly::{adjoint, commutator, multiply, normal_order, Letter, Monomial, NCPolynomial, Word};
pub use weyl::{
    from_weyl_basis, partial_p, partial_q, symmetrized_poisson, symmetrized_product,
    to_weyl_basis, weyl_monomial, weyl_monomial_enumerated, WeylPolynomial, ENUMERATION_CAP,
};

/// Adds `c` into `map[key]`, dropping the entry if it cancels to zero.
fn accumulate<K: Ord>(map: &mut BTreeMap<K, Coefficient>, key: K, c: &Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

fn push_power(factors: &mut Vec<String>, name: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(name.to_string()),
        _ => factors.push(format!("{name}^{e}")),
    }
}

/// Shared term printer: `c1*f1*f2 + c2*f3 - ...`, with unit coefficients
/// elided next to factors.
fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Coefficient, Vec<String>)>,
{
    let mut first = true;
    for (c, factors) in terms {
        let negative = c.is_negative_for_display();
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let mut parts = Vec::with_capacity(factors.len() + 1);
        match c.unsigned_text() {
            Some(t) => parts.push(t),
            None if factors.is_empty() => parts.push("1".to_string()),
            None => {}
        }
        parts.extend(factors);
        write!(f, "{}", parts.join("*"))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
