//! The Hodge spectrum, computed two independent ways.
//!
//! The combinatorial route walks the tower directly: each level takes the
//! torus-knot spectral numbers below 1, compresses them by the conjugate
//! count d' of the derived curve, spreads them over d' unit windows and
//! reflects the result across 1. The transform route applies the spectral
//! transform Sp generator-wise to the motivic Milnor fiber and subtracts
//! from Sp(1). Both land in the group ring Z[t^Q] and agree exactly; the
//! [`crate::verify`] module and the test suite exploit that equality.

use crate::motive::{Generator, MotiveExpr};
use crate::puiseux::ExponentTower;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Element of the group ring Z[t^Q]: finitely many reduced rational
/// exponents with integer multiplicities.
///
/// Intermediate values may be signed; a final curve spectrum has positive
/// multiplicities and support inside (0, 2).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumElem {
    terms: BTreeMap<BigRational, i64>,
}

/// Failure of the spectral transform on a motive outside the image of the
/// recursion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("no spectral transform for {0}")]
    UnsupportedMotive(String),
}

impl SpectrumElem {
    pub fn zero() -> Self {
        SpectrumElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct exponents in the support.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Adds mult copies of t^alpha.
    pub fn add_term(&mut self, alpha: BigRational, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&alpha);
        }
    }

    /// Adds c times another element.
    pub fn add_scaled(&mut self, other: &SpectrumElem, c: i64) {
        for (alpha, &mult) in other.iter() {
            self.add_term(alpha.clone(), mult * c);
        }
    }

    pub fn multiplicity(&self, alpha: &BigRational) -> i64 {
        self.terms.get(alpha).copied().unwrap_or(0)
    }

    /// The (exponent, multiplicity) pairs in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigRational, &i64)> {
        self.terms.iter()
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, &c| acc + BigInt::from(c))
    }

    /// JSON form: a list of [numerator, denominator, multiplicity] triples
    /// sorted by exponent.
    pub fn to_json(&self) -> Result<Value, num_bigint::TryFromBigIntError<()>> {
        let mut items = Vec::new();
        for (alpha, &mult) in self.iter() {
            items.push(json!([
                i64::try_from(alpha.numer())?,
                i64::try_from(alpha.denom())?,
                mult
            ]));
        }
        Ok(Value::Array(items))
    }

    /// LaTeX form as a sum of multiples of t^{p/q}.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (alpha, &mult)) in self.iter().enumerate() {
            if i == 0 {
                if mult < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if mult < 0 { " - " } else { " + " });
            }
            let mag = mult.unsigned_abs();
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            if alpha.is_one() {
                out.push('t');
            } else {
                out.push_str(&format!("t^{{{}}}", alpha));
            }
        }
        out
    }
}

impl Add for &SpectrumElem {
    type Output = SpectrumElem;
    fn add(self, rhs: &SpectrumElem) -> SpectrumElem {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &SpectrumElem {
    type Output = SpectrumElem;
    fn sub(self, rhs: &SpectrumElem) -> SpectrumElem {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl Neg for &SpectrumElem {
    type Output = SpectrumElem;
    fn neg(self) -> SpectrumElem {
        let mut out = SpectrumElem::zero();
        out.add_scaled(self, -1);
        out
    }
}

impl fmt::Display for SpectrumElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (alpha, &mult)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", alpha)?;
            if mult != 1 {
                write!(f, " (x{})", mult)?;
            }
        }
        Ok(())
    }
}

/// Spectrum of the torus-knot singularity y^m - x^n: the (m-1)(n-1) numbers
/// i/m + j/n with 1 <= i < m and 1 <= j < n, each of multiplicity 1.
///
/// # Panics
///
/// Panics if some i/m + j/n equals 1, which cannot happen for coprime m, n.
pub fn torus_knot_spectrum(m: &BigInt, n: &BigInt) -> SpectrumElem {
    let mut out = SpectrumElem::zero();
    let mut i = BigInt::one();
    while i < *m {
        let base = BigRational::new(i.clone(), m.clone());
        let mut j = BigInt::one();
        while j < *n {
            let alpha = &base + BigRational::new(j.clone(), n.clone());
            assert!(!alpha.is_one(), "spectral number 1 for coprime m, n");
            out.add_term(alpha, 1);
            j += 1;
        }
        i += 1;
    }
    out
}

/// Signed spectral transform of the truncation class [y^m - x^n = 1]:
/// t minus the torus-knot spectrum.
pub fn sp_truncation(m: &BigInt, n: &BigInt) -> SpectrumElem {
    let mut out = -&torus_knot_spectrum(m, n);
    out.add_term(BigRational::one(), 1);
    out
}

/// Splits an element into its parts with exponent below 1 and at least 1.
pub fn split_at_one(s: &SpectrumElem) -> (SpectrumElem, SpectrumElem) {
    let one = BigRational::one();
    let mut lo = SpectrumElem::zero();
    let mut hi = SpectrumElem::zero();
    for (alpha, &mult) in s.iter() {
        if *alpha < one {
            lo.add_term(alpha.clone(), mult);
        } else {
            hi.add_term(alpha.clone(), mult);
        }
    }
    (lo, hi)
}

/// Spectral transform of [mu_e] times L: the e terms t^{1 + k/e}, the
/// geometric expansion of t (1 - t) / (1 - t^{1/e}).
pub fn sp_mu_line(e: &BigInt) -> SpectrumElem {
    mu_window(e, &BigRational::one())
}

fn mu_window(e: &BigInt, shift: &BigRational) -> SpectrumElem {
    let mut out = SpectrumElem::zero();
    let mut k = BigInt::zero();
    while k < *e {
        out.add_term(shift + BigRational::new(k.clone(), e.clone()), 1);
        k += 1;
    }
    out
}

/// Spectral transform of the Fermat-type class [(y^m - x^n)^e = 1]:
/// the window sum of t^{k/e} over k < e, times the transform of the
/// truncation compressed by e, with its part at exponent >= 1 delayed by
/// t^{1 - 1/e}.
pub fn sp_fermat(m: &BigInt, n: &BigInt, e: &BigInt) -> SpectrumElem {
    let (lo, hi) = split_at_one(&sp_truncation(m, n));
    let einv = BigRational::new(BigInt::one(), e.clone());
    let delay = BigRational::one() - &einv;
    let mut inner = SpectrumElem::zero();
    for (alpha, &mult) in lo.iter() {
        inner.add_term(alpha * &einv, mult);
    }
    for (alpha, &mult) in hi.iter() {
        inner.add_term(alpha * &einv + &delay, mult);
    }
    let mut out = SpectrumElem::zero();
    let mut k = BigInt::zero();
    while k < *e {
        let w = BigRational::new(k.clone(), e.clone());
        for (alpha, &mult) in inner.iter() {
            out.add_term(&w + alpha, mult);
        }
        k += 1;
    }
    out
}

/// Spectrum assembled level by level from the tower.
///
/// Each level contributes (s + j)/d' for every torus-knot spectral number
/// s below 1 and every window index 0 <= j < d', together with the
/// reflections 2 - (s + j)/d'.
pub fn spectrum_via_process(tower: &ExponentTower) -> SpectrumElem {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = SpectrumElem::zero();
    for level in tower.levels() {
        let data = &level.data;
        let torus = torus_knot_spectrum(&data.m, &data.n);
        let dprime = BigRational::from_integer(data.dprime.clone());
        for (s, &mult) in torus.iter() {
            if !(*s < BigRational::one()) {
                continue;
            }
            let mut j = BigInt::zero();
            while j < data.dprime {
                let v = (s + BigRational::from_integer(j.clone())) / &dprime;
                assert!(!v.is_one() && v.is_positive() && v < two);
                out.add_term((&two - &v).clone(), mult);
                out.add_term(v, mult);
                j += 1;
            }
        }
    }
    out
}

/// Spectrum read off the motivic Milnor fiber: Sp(1) minus the
/// generator-wise transform of the motive, restricted to exponents strictly
/// between 0 and 2.
///
/// Only motives in the image of [`crate::motive::motivic_milnor_fiber`] are
/// supported: the point and root-of-unity classes may carry powers 0 and 1
/// of L, the Fermat classes only power 0.
pub fn spectrum_via_motive(s: &MotiveExpr) -> Result<SpectrumElem, SpectrumError> {
    let one = BigInt::one();
    let mut transform = SpectrumElem::zero();
    for (g, coeff) in s.terms() {
        for (power, c) in coeff.iter() {
            let part = match g {
                Generator::Point => mu_transform(&one, power)?,
                Generator::MuRoots(k) => mu_transform(k, power)?,
                Generator::FermatClass { m, n, e } => {
                    if power != 0 {
                        return Err(SpectrumError::UnsupportedMotive(format!(
                            "Fermat class with L power {}",
                            power
                        )));
                    }
                    sp_fermat(m, n, e)
                }
            };
            transform.add_scaled(&part, c);
        }
    }
    let mut signed = SpectrumElem::zero();
    signed.add_term(BigRational::zero(), 1);
    signed.add_scaled(&transform, -1);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = SpectrumElem::zero();
    for (alpha, &mult) in signed.iter() {
        if alpha.is_positive() && *alpha < two {
            out.add_term(alpha.clone(), mult);
        }
    }
    Ok(out)
}

fn mu_transform(k: &BigInt, power: i64) -> Result<SpectrumElem, SpectrumError> {
    match power {
        0 => Ok(mu_window(k, &BigRational::zero())),
        1 => Ok(mu_window(k, &BigRational::one())),
        _ => Err(SpectrumError::UnsupportedMotive(format!(
            "[mu_{}] with L power {}",
            k, power
        ))),
    }
}
