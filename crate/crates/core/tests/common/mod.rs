#![allow(dead_code)]

//! Shared helpers for the integration tests: a deterministic corpus of
//! valid exponent lists, and exact polynomial plumbing used as oracles.

use milnor::monodromy::{milnor_number, monodromy_charpoly, DensePoly};
use milnor::puiseux::ExponentList;
use milnor::spectrum::SpectrumElem;
use milnor::{BigInt, BigRational};

/// Tiny deterministic bit mixer so the corpus is reproducible without
/// pulling in a random-number crate.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Builds a random valid exponent list from a seed: at most 4 levels,
/// denominators between 2 and 9, numerators at most 60. Trailing exponents
/// are dropped until the Milnor number stays small enough for the spectrum
/// and monodromy pipelines to run in bulk.
pub fn tower_from_seed(seed: u64) -> Option<ExponentList> {
    let mut rng = Mix(seed);
    let depth = 1 + rng.below(4);
    let mut dens: Vec<u64> = Vec::new();
    let mut ram: u64 = 1;
    for _ in 0..depth {
        let cands: Vec<u64> = (2..=9).filter(|q| !ram.is_multiple_of(*q)).collect();
        if cands.is_empty() {
            break;
        }
        let q = cands[rng.below(cands.len() as u64) as usize];
        dens.push(q);
        ram = lcm(ram, q);
    }
    let mut fracs: Vec<BigRational> = Vec::new();
    let (mut prev_num, mut prev_den): (u64, u64) = (1, 1);
    for &q in &dens {
        let lo = prev_num * q / prev_den + 1;
        let cands: Vec<u64> = (lo..lo + 14)
            .filter(|&p| p <= 60 && gcd(p, q) == 1 && p * prev_den > prev_num * q)
            .collect();
        if cands.is_empty() {
            break;
        }
        let p = cands[rng.below(cands.len() as u64) as usize];
        fracs.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
        (prev_num, prev_den) = (p, q);
    }
    loop {
        if fracs.is_empty() {
            return None;
        }
        let list =
            ExponentList::from_fractions(fracs.clone()).expect("generated exponents are valid");
        if milnor_of(&list) <= BigInt::from(4000) {
            return Some(list);
        }
        fracs.pop();
    }
}

pub fn milnor_of(list: &ExponentList) -> BigInt {
    milnor_number(&monodromy_charpoly(&list.decompose()))
}

/// Writes a spectrum element as a dense polynomial in u = t^{1/scale}.
///
/// Panics if some exponent times scale is not a nonnegative integer.
pub fn upoly(s: &SpectrumElem, scale: u64) -> DensePoly {
    let scale = BigRational::from_integer(BigInt::from(scale));
    let mut terms: Vec<(usize, i64)> = Vec::new();
    let mut top = 0usize;
    for (alpha, &mult) in s.iter() {
        let scaled = alpha * &scale;
        assert!(scaled.is_integer(), "exponent {} is not integral at this scale", alpha);
        let k = usize::try_from(i64::try_from(scaled.numer()).expect("exponent fits in i64"))
            .expect("exponent is nonnegative");
        top = top.max(k);
        terms.push((k, mult));
    }
    let mut coeffs = vec![BigInt::from(0); top + 1];
    for (k, mult) in terms {
        coeffs[k] += BigInt::from(mult);
    }
    DensePoly::from_coeffs(coeffs)
}

/// The monomial u^k.
pub fn u_pow(k: usize) -> DensePoly {
    let mut coeffs = vec![BigInt::from(0); k + 1];
    coeffs[k] = BigInt::from(1);
    DensePoly::from_coeffs(coeffs)
}

/// The binomial 1 - u^k.
pub fn one_minus_u(k: usize) -> DensePoly {
    &DensePoly::one() - &u_pow(k)
}

/// Replaces u by u^k, spreading the coefficients out.
pub fn stretch(p: &DensePoly, k: usize) -> DensePoly {
    assert!(k >= 1);
    if p.is_zero() {
        return DensePoly::zero();
    }
    let src = p.coeffs();
    let mut coeffs = vec![BigInt::from(0); (src.len() - 1) * k + 1];
    for (i, c) in src.iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    DensePoly::from_coeffs(coeffs)
}

/// Exact polynomial division, None when the division leaves a remainder.
pub fn div_exact(a: &DensePoly, b: &DensePoly) -> Option<DensePoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(DensePoly::zero());
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        return None;
    }
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    let lead = &b.coeffs()[db];
    let mut quot = vec![BigInt::from(0); da - db + 1];
    for i in (db..=da).rev() {
        if rem[i] == BigInt::from(0) {
            continue;
        }
        let (q, r) = num_integer::Integer::div_rem(&rem[i], lead);
        if r != BigInt::from(0) {
            return None;
        }
        for (j, c) in b.coeffs().iter().enumerate() {
            let delta = &q * c;
            rem[i - db + j] -= delta;
        }
        quot[i - db] = q;
    }
    if rem.iter().any(|c| *c != BigInt::from(0)) {
        return None;
    }
    Some(DensePoly::from_coeffs(quot))
}

pub fn divisors(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= x {
        if x.is_multiple_of(i) {
            out.push(i);
            if i != x / i {
                out.push(x / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The q-th cyclotomic polynomial, computed by dividing t^q - 1 by the
/// cyclotomic polynomials of the proper divisors of q.
pub fn cyclotomic(q: u64) -> DensePoly {
    let mut p = &u_pow(q as usize) - &DensePoly::one();
    for d in divisors(q) {
        if d < q {
            p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    p
}
