use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ncpoly::{Coefficient, Letter, Monomial, NCPolynomial, Word};
use crate::{Error, Result};

pub const BRUTE_FORCE_CAP: u32 = 12;

type Exact = Complex<BigRational>;

/// Normal-orders a word by repeatedly rewriting its leftmost `PQ` into
/// `QP − iħ`. Terms with the same word and ħ-power are merged as they
/// appear so the work stays polynomial.
pub fn normal_order_literal(word: &Word) -> NCPolynomial {
    let mut pending: BTreeMap<(Vec<Letter>, u32), Exact> = BTreeMap::new();
    pending.insert((word.letters().to_vec(), 0), Complex::one());
    let mut done: BTreeMap<(u32, u32, u32), Exact> = BTreeMap::new();
    let minus_i = Complex::new(BigRational::zero(), -BigRational::one());
    while let Some(((letters, k), c)) = pending.pop_first() {
        match letters.windows(2).position(|w| w == [Letter::P, Letter::Q]) {
            None => {
                let n = letters.iter().filter(|&&l| l == Letter::Q).count() as u32;
                let m = letters.len() as u32 - n;
                *done.entry((n, m, k)).or_insert_with(Complex::zero) += c;
            }
            Some(at) => {
                let mut swapped = letters.clone();
                swapped.swap(at, at + 1);
                *pending.entry((swapped, k)).or_insert_with(Complex::zero) += c.clone();
                let mut contracted = letters;
                contracted.drain(at..at + 2);
                *pending.entry((contracted, k + 1)).or_insert_with(Complex::zero) += c * minus_i.clone();
            }
        }
    }
    NCPolynomial::from_terms(
        done.into_iter()
            .map(|((n, m, k), c)| (Monomial::new(n, m, k), Coefficient::new(c.re, c.im))),
    )
}

fn interleavings(n: usize, m: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    if n == 0 && m == 0 {
        out.push(prefix.clone());
        return;
    }
    for (letter, left) in [(Letter::Q, n), (Letter::P, m)] {
        if left > 0 {
            prefix.push(letter);
            if letter == Letter::Q {
                interleavings(n - 1, m, prefix, out);
            } else {
                interleavings(n, m - 1, prefix, out);
            }
            prefix.pop();
        }
    }
}

/// `W(n, m)` as the average of all `C(n+m, n)` distinct words, each
/// normal-ordered by [`normal_order_literal`].
pub fn brute_force_weyl(n: u32, m: u32) -> Result<NCPolynomial> {
    if n + m > BRUTE_FORCE_CAP {
        return Err(Error::EnumerationCap {
            total: n + m,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut words = Vec::new();
    interleavings(n as usize, m as usize, &mut Vec::new(), &mut words);
    let mut sum = NCPolynomial::zero();
    for w in &words {
        sum = sum + normal_order_literal(&Word::new(w.clone()));
    }
    let count = BigRational::from_integer(BigInt::from(words.len()));
    Ok(sum.scale(&Coefficient::from_rational(BigRational::one() / count)))
}
