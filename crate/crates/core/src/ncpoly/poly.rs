use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coefficient::Coefficient;
use super::{accumulate, binomial, factorial};

/// Exponents of one term `ħᵏ·q̂ⁿp̂ᵐ`. Field order makes the derived ordering
/// lexicographic on `(n, m, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub p: u32,
    pub hbar: u32,
}

impl Monomial {
    pub const fn new(q: u32, p: u32, hbar: u32) -> Self {
        Monomial { q, p, hbar }
    }

    /// Degree in the operators, not counting `ħ`.
    pub fn degree(&self) -> u32 {
        self.q + self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Q,
    P,
}

/// A finite product of generators, read left to right. The empty word is `Î`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl FromStr for Word {
    type Err = crate::Error;

    /// Parses strings over `{Q, P}` (case-insensitive), e.g. `"PPQ"`.
    fn from_str(s: &str) -> crate::Result<Word> {
        s.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(col, c)| match c {
                'Q' | 'q' => Ok(Letter::Q),
                'P' | 'p' => Ok(Letter::P),
                other => Err(crate::Error::Parse {
                    line: 1,
                    column: col + 1,
                    message: format!("unexpected letter `{other}` in word"),
                }),
            })
            .collect::<crate::Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::Q { 'Q' } else { 'P' })?;
        }
        Ok(())
    }
}

/// A polynomial in `q̂`, `p̂` over Gaussian rationals, graded by powers of
/// `ħ`, kept in normal order (every `q̂` left of every `p̂`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial::default()
    }

    pub fn identity() -> Self {
        NCPolynomial::term(0, 0, 0, Coefficient::one())
    }

    pub fn q() -> Self {
        NCPolynomial::term(1, 0, 0, Coefficient::one())
    }

    pub fn p() -> Self {
        NCPolynomial::term(0, 1, 0, Coefficient::one())
    }

    pub fn hbar() -> Self {
        NCPolynomial::term(0, 0, 1, Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        NCPolynomial::term(0, 0, 0, c)
    }

    /// `c·ħᵏ·q̂ⁿp̂ᵐ`.
    pub fn term(n: u32, m: u32, k: u32, c: Coefficient) -> Self {
        let mut out = NCPolynomial::zero();
        accumulate(&mut out.terms, Monomial::new(n, m, k), &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coefficient)>>(terms: I) -> Self {
        let mut out = NCPolynomial::zero();
        for (mono, c) in terms {
            accumulate(&mut out.terms, mono, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
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

    /// Highest `n + m` over the stored terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        NCPolynomial::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    /// Multiplies by `ħʲ`.
    pub fn shift_hbar(&self, j: u32) -> Self {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q, m.p, m.hbar + j), c.clone()))
                .collect(),
        }
    }

    /// The operator product, normal-ordered with
    /// `p̂ᵇq̂ᶜ = Σⱼ C(b,j)·C(c,j)·j!·(−iħ)ʲ·q̂ᶜ⁻ʲp̂ᵇ⁻ʲ`.
    pub fn multiply(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let base = ca * cb;
                let (b, c) = (ma.p, mb.q);
                for j in 0..=b.min(c) {
                    let weight = binomial(b, j) * binomial(c, j) * factorial(j);
                    let mut coeff = base.scale(&BigRational::from_integer(weight));
                    coeff = coeff * minus_i_pow(j);
                    let mono = Monomial::new(
                        ma.q + c - j,
                        b - j + mb.p,
                        ma.hbar + mb.hbar + j,
                    );
                    accumulate(&mut out, mono, &coeff);
                }
            }
        }
        NCPolynomial { terms: out }
    }

    pub fn pow(&self, e: u32) -> NCPolynomial {
        (0..e).fold(NCPolynomial::identity(), |acc, _| acc.multiply(self))
    }

    /// `fg − gf`.
    pub fn commutator(&self, other: &NCPolynomial) -> NCPolynomial {
        &self.multiply(other) - &other.multiply(self)
    }

    /// Antilinear involution with `q̂† = q̂`, `p̂† = p̂`, `ħ` real:
    /// `(c·ħᵏq̂ⁿp̂ᵐ)† = c̄·ħᵏ·p̂ᵐq̂ⁿ`, normal-ordered again.
    pub fn adjoint(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, c) in &self.terms {
            let reversed = NCPolynomial::term(0, m.p, m.hbar, c.conj())
                .multiply(&NCPolynomial::term(m.q, 0, 0, Coefficient::one()));
            out = &out + &reversed;
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Right multiplication by one generator, using `p̂ᵐq̂ = q̂p̂ᵐ − i·m·ħ·p̂ᵐ⁻¹`.
    pub(crate) fn right_mul_letter(&self, letter: Letter) -> NCPolynomial {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            match letter {
                Letter::P => accumulate(&mut out, Monomial::new(m.q, m.p + 1, m.hbar), c),
                Letter::Q => {
                    accumulate(&mut out, Monomial::new(m.q + 1, m.p, m.hbar), c);
                    if m.p > 0 {
                        let shifted = c.mul_i().scale(&BigRational::from_integer(
                            BigInt::from(-(m.p as i64)),
                        ));
                        accumulate(&mut out, Monomial::new(m.q, m.p - 1, m.hbar + 1), &shifted);
                    }
                }
            }
        }
        NCPolynomial { terms: out }
    }

    /// Left multiplication by `q̂`, which never needs reordering.
    pub(crate) fn left_mul_q(&self) -> NCPolynomial {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q + 1, m.p, m.hbar), c.clone()))
                .collect(),
        }
    }

    /// Divides by `iħ` when every term carries at least one `ħ`.
    pub fn div_ihbar(&self) -> Option<NCPolynomial> {
        let minus_i = -Coefficient::i();
        let mut out = NCPolynomial::zero();
        for (m, c) in &self.terms {
            if m.hbar == 0 {
                return None;
            }
            accumulate(&mut out.terms, Monomial::new(m.q, m.p, m.hbar - 1), &(c * &minus_i));
        }
        Some(out)
    }
}

fn minus_i_pow(j: u32) -> Coefficient {
    match j % 4 {
        0 => Coefficient::one(),
        1 => -Coefficient::i(),
        2 => Coefficient::from_integer(-1),
        _ => Coefficient::i(),
    }
}

/// Normal-orders a word by appending its letters one at a time.
pub fn normal_order(word: &Word) -> NCPolynomial {
    word.letters()
        .iter()
        .fold(NCPolynomial::identity(), |acc, &l| acc.right_mul_letter(l))
}

pub fn multiply(f: &NCPolynomial, g: &NCPolynomial) -> NCPolynomial {
    f.multiply(g)
}

pub fn commutator(f: &NCPolynomial, g: &NCPolynomial) -> NCPolynomial {
    f.commutator(g)
}

pub fn adjoint(f: &NCPolynomial) -> NCPolynomial {
    f.adjoint()
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, c);
        }
        NCPolynomial { terms }
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        NCPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.multiply(rhs)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $f:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                $tr::$f(&self, &rhs)
            }
        }
    )*};
}
forward_owned!(NCPolynomial, Add::add, Sub::sub, Mul::mul);

impl Neg for NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        -&self
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.terms.iter().map(|(m, c)| {
            let mut factors = Vec::new();
            super::push_power(&mut factors, "hbar", m.hbar);
            super::push_power(&mut factors, "q", m.q);
            super::push_power(&mut factors, "p", m.p);
            (c, factors)
        }))
    }
}
