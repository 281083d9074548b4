//! Essential exponents of a plane-curve branch and the derived-curve tower.
//!
//! An irreducible branch tangent to the x-axis has a Puiseux parametrization
//! whose topology is captured by the essential exponents mu_1 < ... < mu_e,
//! the exponents whose denominators successively enlarge the ramification.
//! Writing mu_1 = n/m in lowest terms, the truncation y^m - x^n carries the
//! first exponent and the derived curve, with exponents
//! mu_i' = m(mu_{i+1} - mu_1 + n), carries the rest. Iterating yields a tower
//! of strictly shorter exponent lists on which every other invariant in this
//! crate is computed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Rejection reason for an essential-exponent list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("could not parse `{0}` as a fraction p/q")]
    Syntax(String),
    #[error("exponent `{0}` has denominator zero")]
    ZeroDenominator(String),
    #[error("first exponent {0} must exceed 1; swap the roles of x and y so that the branch is tangent to the x-axis")]
    FirstTooSmall(BigRational),
    #[error("exponent {0} is an integer; every essential exponent has a nontrivial denominator")]
    IntegerExponent(BigRational),
    #[error("exponents must be strictly increasing, but {0} is followed by {1}")]
    NotIncreasing(BigRational, BigRational),
    #[error("exponent {0} is not essential: its denominator divides the ramification accumulated so far")]
    NotEssential(BigRational),
}

/// Validated essential exponents of one branch, strictly increasing reduced
/// rationals, none an integer, the first greater than 1.
///
/// The empty list is legal and denotes a smooth branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentList {
    exps: Vec<BigRational>,
}

impl ExponentList {
    /// Parses a comma-separated list of fractions, e.g. `3/2, 7/4, 11/6`.
    ///
    /// Whitespace around tokens is ignored. A bare integer token is read as
    /// p/1 and then rejected by validation. An empty or all-whitespace string
    /// denotes a smooth branch with no essential exponents.
    pub fn parse(text: &str) -> Result<Self, ExponentError> {
        if text.trim().is_empty() {
            return Ok(ExponentList { exps: Vec::new() });
        }
        let mut exps = Vec::new();
        for token in text.split(',') {
            exps.push(parse_fraction(token)?);
        }
        Self::from_fractions(exps)
    }

    /// Validates a sequence of rationals as essential exponents.
    ///
    /// Essentiality is the lcm-chain test: with e_0 = 1 and
    /// e_i = lcm(e_{i-1}, denominator(mu_i)), every step must strictly grow.
    pub fn from_fractions(exps: Vec<BigRational>) -> Result<Self, ExponentError> {
        if let Some(first) = exps.first() {
            if *first <= BigRational::one() {
                return Err(ExponentError::FirstTooSmall(first.clone()));
            }
        }
        let mut ram = BigInt::one();
        for (i, x) in exps.iter().enumerate() {
            if x.is_integer() {
                return Err(ExponentError::IntegerExponent(x.clone()));
            }
            if i > 0 && exps[i - 1] >= *x {
                return Err(ExponentError::NotIncreasing(
                    exps[i - 1].clone(),
                    x.clone(),
                ));
            }
            if (&ram % x.denom()).is_zero() {
                return Err(ExponentError::NotEssential(x.clone()));
            }
            ram = ram.lcm(x.denom());
        }
        Ok(ExponentList { exps })
    }

    /// The exponents in increasing order.
    pub fn exponents(&self) -> &[BigRational] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Newton data of the leading exponent plus the conjugate counts: with
    /// mu_1 = n/m reduced, d is the lcm of all denominators and d' = d/m.
    ///
    /// # Panics
    ///
    /// Panics when the list is empty.
    pub fn newton_data(&self) -> LevelData {
        let first = self
            .exps
            .first()
            .expect("newton_data requires a nonempty exponent list");
        let m = first.denom().clone();
        let n = first.numer().clone();
        let d = self
            .exps
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let dprime = &d / &m;
        LevelData { m, n, d, dprime }
    }

    /// The exponent list of the derived curve, one exponent shorter.
    ///
    /// With mu_1 = n/m the remaining exponents transform as
    /// mu_i' = m(mu_{i+1} - mu_1 + n). The output is validated; a failure
    /// there or an output exponent at or below m*n is a bug, not bad input.
    pub fn derived(&self) -> ExponentList {
        let first = match self.exps.first() {
            Some(first) => first,
            None => return ExponentList { exps: Vec::new() },
        };
        let m = BigRational::from_integer(first.denom().clone());
        let shift = BigRational::from_integer(first.numer().clone()) - first;
        let out: Vec<BigRational> = self.exps[1..]
            .iter()
            .map(|x| (x + &shift) * &m)
            .collect();
        let derived =
            ExponentList::from_fractions(out).expect("derived exponents must validate");
        let mn = BigRational::from_integer(first.numer() * first.denom());
        for x in derived.exponents() {
            assert!(*x > mn, "derived exponent {} must exceed m*n = {}", x, mn);
        }
        derived
    }

    /// Runs the derivation to exhaustion and records the data of every level.
    pub fn decompose(&self) -> ExponentTower {
        let mut levels: Vec<TowerLevel> = Vec::new();
        let mut current = self.clone();
        while !current.is_empty() {
            let data = current.newton_data();
            let next = current.derived();
            if let Some(prev) = levels.last() {
                assert_eq!(
                    prev.data.dprime, data.d,
                    "conjugate counts must chain between levels"
                );
            }
            assert_eq!(next.len() + 1, current.len());
            if next.is_empty() {
                assert!(data.dprime.is_one(), "the last level must have d' = 1");
            }
            levels.push(TowerLevel {
                data,
                exponents: current,
            });
            current = next;
        }
        ExponentTower { levels }
    }
}

impl fmt::Display for ExponentList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

/// Truncation data of one recursion level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    /// Denominator of the leading exponent in lowest terms.
    pub m: BigInt,
    /// Numerator of the leading exponent.
    pub n: BigInt,
    /// Conjugate count of the curve at this level.
    pub d: BigInt,
    /// Conjugate count of the derived curve, d' = d/m.
    pub dprime: BigInt,
}

/// One level of the tower: the data of the leading exponent together with
/// the full exponent list still alive at this depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub data: LevelData,
    pub exponents: ExponentList,
}

/// The full truncation tower of a branch, outermost level first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTower {
    levels: Vec<TowerLevel>,
}

impl ExponentTower {
    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

fn parse_fraction(token: &str) -> Result<BigRational, ExponentError> {
    let t = token.trim();
    if t.is_empty() {
        return Err(ExponentError::Syntax(token.to_string()));
    }
    let (num_s, den_s) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| ExponentError::Syntax(t.to_string()))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| ExponentError::Syntax(t.to_string()))?;
    if den.is_zero() {
        return Err(ExponentError::ZeroDenominator(t.to_string()));
    }
    Ok(BigRational::new(num, den))
}
