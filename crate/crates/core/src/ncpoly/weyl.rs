use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coefficient::Coefficient;
use super::poly::{normal_order, Letter, Monomial, NCPolynomial, Word};
use super::{accumulate, binomial};
use crate::{Error, Result};

/// Default limit on `n + m` for [`weyl_monomial_enumerated`]; `C(16, 8)`
/// interleavings is 12870 words.
pub const ENUMERATION_CAP: u32 = 16;

/// An algebra element in the Weyl basis: a term `(n, m, k) ↦ c` stands for
/// `c·ħᵏ·W(n, m)` with `W(n, m) = q̂ⁿ∘p̂ᵐ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylPolynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl WeylPolynomial {
    pub fn zero() -> Self {
        WeylPolynomial::default()
    }

    /// `W(0, 0)`, the unit of `∘`.
    pub fn unit() -> Self {
        WeylPolynomial::term(0, 0, 0, Coefficient::one())
    }

    /// `c·ħᵏ·W(n, m)`.
    pub fn term(n: u32, m: u32, k: u32, c: Coefficient) -> Self {
        let mut out = WeylPolynomial::zero();
        accumulate(&mut out.terms, Monomial::new(n, m, k), &c);
        out
    }

    /// `W(n, m)` with unit coefficient.
    pub fn monomial(n: u32, m: u32) -> Self {
        WeylPolynomial::term(n, m, 0, Coefficient::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coefficient)>>(terms: I) -> Self {
        let mut out = WeylPolynomial::zero();
        for (mono, c) in terms {
            accumulate(&mut out.terms, mono, &c);
        }
        out
    }

    /// Real coefficients in the Weyl basis, as accepted by configuration
    /// files. Floats are converted exactly.
    pub fn from_real_terms(terms: &[(u32, u32, f64)]) -> Result<Self> {
        let mut out = WeylPolynomial::zero();
        for &(n, m, c) in terms {
            let coeff = Coefficient::from_f64(c)
                .ok_or_else(|| Error::InvalidParameter(format!("non-finite coefficient {c}")))?;
            accumulate(&mut out.terms, Monomial::new(n, m, 0), &coeff);
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: u32, m: u32, k: u32) -> Coefficient {
        self.terms
            .get(&Monomial::new(n, m, k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        WeylPolynomial::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    /// `a ∘ b`: bilinear extension of `W(a,b)∘W(c,d) = W(a+c, b+d)`.
    pub fn symmetrized_product(&self, other: &WeylPolynomial) -> WeylPolynomial {
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = Monomial::new(ma.q + mb.q, ma.p + mb.p, ma.hbar + mb.hbar);
                accumulate(&mut out, mono, &(ca * cb));
            }
        }
        WeylPolynomial { terms: out }
    }

    /// `∂/∂q̂`: `W(n, m) ↦ n·W(n−1, m)`.
    pub fn partial_q(&self) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().filter(|(m, _)| m.q > 0).map(|(m, c)| {
            (
                Monomial::new(m.q - 1, m.p, m.hbar),
                c.scale(&BigRational::from_integer(BigInt::from(m.q))),
            )
        }))
    }

    /// `∂/∂p̂`: `W(n, m) ↦ m·W(n, m−1)`.
    pub fn partial_p(&self) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().filter(|(m, _)| m.p > 0).map(|(m, c)| {
            (
                Monomial::new(m.q, m.p - 1, m.hbar),
                c.scale(&BigRational::from_integer(BigInt::from(m.p))),
            )
        }))
    }

    /// `{f, g}_S = ∂f/∂q̂ ∘ ∂g/∂p̂ − ∂g/∂q̂ ∘ ∂f/∂p̂`.
    pub fn symmetrized_poisson(&self, other: &WeylPolynomial) -> WeylPolynomial {
        let lhs = self.partial_q().symmetrized_product(&other.partial_p());
        let rhs = other.partial_q().symmetrized_product(&self.partial_p());
        &lhs - &rhs
    }
}

pub fn symmetrized_product(a: &WeylPolynomial, b: &WeylPolynomial) -> WeylPolynomial {
    a.symmetrized_product(b)
}

pub fn partial_q(w: &WeylPolynomial) -> WeylPolynomial {
    w.partial_q()
}

pub fn partial_p(w: &WeylPolynomial) -> WeylPolynomial {
    w.partial_p()
}

pub fn symmetrized_poisson(f: &WeylPolynomial, g: &WeylPolynomial) -> WeylPolynomial {
    f.symmetrized_poisson(g)
}

/// `q̂ⁿ∘p̂ᵐ` by the degree recursion `W(n+1, m) = (q̂·W(n, m) + W(n, m)·q̂)/2`
/// starting from `W(0, m) = p̂ᵐ`. No size limit.
pub fn weyl_monomial(n: u32, m: u32) -> NCPolynomial {
    let half = Coefficient::from_ratio(1, 2);
    let mut w = NCPolynomial::term(0, m, 0, Coefficient::one());
    for _ in 0..n {
        let sum = &w.left_mul_q() + &w.right_mul_letter(Letter::Q);
        w = sum.scale(&half);
    }
    w
}

/// `q̂ⁿ∘p̂ᵐ` as the literal average of all `C(n+m, n)` distinct interleavings
/// of `n` letters `Q` and `m` letters `P`.
pub fn weyl_monomial_enumerated(n: u32, m: u32, cap: u32) -> Result<NCPolynomial> {
    if n + m > cap {
        return Err(Error::EnumerationCap { total: n + m, cap });
    }
    let mut sum = NCPolynomial::zero();
    let mut count: u64 = 0;
    for_each_interleaving(n, m, &mut |w| {
        sum = &sum + &normal_order(w);
        count += 1;
    });
    debug_assert_eq!(BigInt::from(count), binomial(n + m, n));
    Ok(sum.scale(&Coefficient::from_rational(BigRational::new(
        1.into(),
        BigInt::from(count),
    ))))
}

fn for_each_interleaving(n: u32, m: u32, f: &mut dyn FnMut(&Word)) {
    fn go(n: u32, m: u32, buf: &mut Vec<Letter>, f: &mut dyn FnMut(&Word)) {
        if n == 0 && m == 0 {
            f(&Word(buf.clone()));
            return;
        }
        if n > 0 {
            buf.push(Letter::Q);
            go(n - 1, m, buf, f);
            buf.pop();
        }
        if m > 0 {
            buf.push(Letter::P);
            go(n, m - 1, buf, f);
            buf.pop();
        }
    }
    go(n, m, &mut Vec::with_capacity((n + m) as usize), f);
}

/// Linear extension of [`weyl_monomial`], with `ħ` exponents added.
pub fn from_weyl_basis(w: &WeylPolynomial) -> NCPolynomial {
    let mut cache: BTreeMap<(u32, u32), NCPolynomial> = BTreeMap::new();
    let mut out = NCPolynomial::zero();
    for (mono, c) in w.terms() {
        let base = cache
            .entry((mono.q, mono.p))
            .or_insert_with(|| weyl_monomial(mono.q, mono.p));
        out = &out + &base.shift_hbar(mono.hbar).scale(c);
    }
    out
}

/// Exact change of basis by triangular elimination: `W(n, m)` is `q̂ⁿp̂ᵐ`
/// plus terms of strictly lower operator degree, so peeling off the
/// highest-degree normal-ordered term repeatedly terminates.
pub fn to_weyl_basis(f: &NCPolynomial) -> WeylPolynomial {
    let mut residual = f.clone();
    let mut out = WeylPolynomial::zero();
    let mut cache: BTreeMap<(u32, u32), NCPolynomial> = BTreeMap::new();
    while let Some((mono, c)) = residual
        .terms()
        .max_by_key(|(m, _)| (m.degree(), **m))
        .map(|(m, c)| (*m, c.clone()))
    {
        let base = cache
            .entry((mono.q, mono.p))
            .or_insert_with(|| weyl_monomial(mono.q, mono.p));
        residual = &residual - &base.shift_hbar(mono.hbar).scale(&c);
        accumulate(&mut out.terms, mono, &c);
    }
    out
}

impl Add for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, c);
        }
        WeylPolynomial { terms }
    }
}

impl Sub for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        WeylPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self + &rhs
    }
}

impl Sub for WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self - &rhs
    }
}

impl fmt::Display for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.terms.iter().map(|(m, c)| {
            let mut factors = Vec::new();
            super::push_power(&mut factors, "hbar", m.hbar);
            factors.push(format!("W({},{})", m.q, m.p));
            (c, factors)
        }))
    }
}
