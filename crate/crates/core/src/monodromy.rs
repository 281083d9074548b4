//! The characteristic polynomial of the monodromy, kept as a formal product
//! of factors (t^a - 1)^e, and the Milnor number read off its degree.
//!
//! The recursion multiplies the truncation's polynomial, rescaled by t to
//! t^{d'}, with the derived curve's polynomial and divides by t^{d'} - 1.
//! Working on unreduced cohomology keeps every step a Laurent monomial
//! bookkeeping exercise: the truncation contributes (t - 1) times the
//! classical torus-knot polynomial, the smooth terminal curve contributes
//! t - 1, and one final division by t - 1 returns to reduced cohomology.
//! All cancellation happens in the exponent map; nothing is expanded until
//! [`expand`] is called.

use crate::puiseux::ExponentTower;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use thiserror::Error;

/// Formal product of factors (t^a - 1)^{e_a} with integer exponents.
///
/// Intermediate values may carry negative exponents; only [`expand`] insists
/// that the whole product is a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloProduct {
    factors: BTreeMap<BigInt, i64>,
}

impl CycloProduct {
    /// The empty product, the constant 1.
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// The single factor (t^order - 1)^exp.
    pub fn factor(order: BigInt, exp: i64) -> Self {
        let mut h = CycloProduct::one();
        h.mul_factor(order, exp);
        h
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies by (t^order - 1)^exp in place.
    ///
    /// # Panics
    ///
    /// Panics when order is not positive.
    pub fn mul_factor(&mut self, order: BigInt, exp: i64) {
        assert!(order.is_positive(), "factor orders must be positive");
        if exp == 0 {
            return;
        }
        let entry = self.factors.entry(order.clone()).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.factors.remove(&order);
        }
    }

    /// The (order, exponent) pairs in increasing order.
    pub fn factors(&self) -> impl Iterator<Item = (&BigInt, i64)> {
        self.factors.iter().map(|(a, &e)| (a, e))
    }

    /// Degree of the expanded product, the sum of order times exponent.
    pub fn degree(&self) -> BigInt {
        self.factors()
            .fold(BigInt::zero(), |acc, (a, e)| acc + a * BigInt::from(e))
    }

    /// Replaces t by t^k, scaling every order.
    pub fn substitute(&self, k: &BigInt) -> CycloProduct {
        assert!(k.is_positive(), "substitution power must be positive");
        let mut out = CycloProduct::one();
        for (a, e) in self.factors() {
            out.mul_factor(a * k, e);
        }
        out
    }

    /// JSON form: the factor list as [order, exponent] pairs in increasing
    /// order of the orders.
    pub fn to_json(&self) -> Result<Value, num_bigint::TryFromBigIntError<()>> {
        let mut items = Vec::new();
        for (a, e) in self.factors() {
            items.push(json!([i64::try_from(a)?, e]));
        }
        Ok(Value::Array(items))
    }

    /// LaTeX form as a quotient of products of (t^a - 1) factors.
    pub fn to_latex(&self) -> String {
        render_cyclo(self, true)
    }
}

impl Mul for &CycloProduct {
    type Output = CycloProduct;
    fn mul(self, rhs: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (a, e) in rhs.factors() {
            out.mul_factor(a.clone(), e);
        }
        out
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_cyclo(self, false))
    }
}

fn render_cyclo(h: &CycloProduct, latex: bool) -> String {
    if h.is_one() {
        return "1".to_string();
    }
    let part = |positive: bool| -> String {
        let mut out = String::new();
        for (a, e) in h.factors() {
            if (e > 0) != positive {
                continue;
            }
            let base = if a.is_one() {
                "(t-1)".to_string()
            } else if latex {
                format!("(t^{{{}}}-1)", a)
            } else {
                format!("(t^{}-1)", a)
            };
            out.push_str(&base);
            let mag = e.unsigned_abs();
            if mag != 1 {
                let ms = mag.to_string();
                if latex && ms.len() > 1 {
                    out.push_str(&format!("^{{{}}}", ms));
                } else {
                    out.push_str(&format!("^{}", ms));
                }
            }
        }
        out
    };
    let num = part(true);
    let den = part(false);
    match (num.is_empty(), den.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => num,
        (true, false) => {
            if latex {
                format!("\\frac{{1}}{{{}}}", den)
            } else {
                format!("1 / ({})", den)
            }
        }
        (false, false) => {
            if latex {
                format!("\\frac{{{}}}{{{}}}", num, den)
            } else {
                format!("{} / ({})", num, den)
            }
        }
    }
}

/// Characteristic polynomial of the monodromy of y^m - x^n on reduced
/// cohomology: (t^{mn} - 1)(t - 1) / ((t^m - 1)(t^n - 1)), of degree
/// (m - 1)(n - 1).
pub fn charpoly_torus(m: &BigInt, n: &BigInt) -> CycloProduct {
    let mut h = CycloProduct::one();
    h.mul_factor(m * n, 1);
    h.mul_factor(BigInt::one(), 1);
    h.mul_factor(m.clone(), -1);
    h.mul_factor(n.clone(), -1);
    h
}

/// Characteristic polynomial of the branch's monodromy on reduced
/// cohomology, assembled level by level.
///
/// The fold runs from the smooth terminal curve outward on unreduced
/// cohomology, where each level multiplies by its truncation polynomial in
/// t^{d'} and divides by t^{d'} - 1; a last division by t - 1 discards the
/// trivial eigenvalue of H^0. The net effect is the product over levels of
/// charpoly_torus(m, n) in the variable t^{d'}.
pub fn monodromy_charpoly(tower: &ExponentTower) -> CycloProduct {
    let mut h = CycloProduct::factor(BigInt::one(), 1);
    for level in tower.levels().iter().rev() {
        let d = &level.data;
        let unreduced = &charpoly_torus(&d.m, &d.n) * &CycloProduct::factor(BigInt::one(), 1);
        h = &h * &unreduced.substitute(&d.dprime);
        h.mul_factor(d.dprime.clone(), -1);
    }
    h.mul_factor(BigInt::one(), -1);
    h
}

/// The Milnor number, the degree of the expanded characteristic polynomial.
pub fn milnor_number(h: &CycloProduct) -> BigInt {
    h.degree()
}

/// Multiplicity of exp(2 pi i p/q) as a root of the product.
///
/// A factor t^a - 1 vanishes there exactly when q divides a, so the
/// multiplicity is the sum of exponents over such factors; it does not
/// depend on p as long as gcd(p, q) = 1.
pub fn root_multiplicity(h: &CycloProduct, p: &BigInt, q: &BigInt) -> i64 {
    debug_assert!(q.is_positive() && !p.is_negative() && p < q);
    debug_assert!(p.gcd(q).is_one());
    h.factors()
        .filter(|(a, _)| (*a % q).is_zero())
        .map(|(_, e)| e)
        .sum()
}

/// Dense integer polynomial with the constant coefficient first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

/// Failure while expanding a [`CycloProduct`] into a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("division by t^{order} - 1 leaves a remainder; the product is not a polynomial")]
    NonExactDivision { order: BigInt },
    #[error("factor order {order} exceeds machine-size polynomial storage")]
    DegreeOverflow { order: BigInt },
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly::default()
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from coefficients, constant term first, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        DensePoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients, constant term first. Empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// JSON form: the coefficient list, constant term first.
    pub fn to_json(&self) -> Result<Value, num_bigint::TryFromBigIntError<()>> {
        let mut items = Vec::new();
        for c in &self.coeffs {
            items.push(Value::from(i64::try_from(c)?));
        }
        Ok(Value::Array(items))
    }

    fn mul_cyclo_factor(&self, order: usize) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + order];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + order] += c;
            out[i] -= c;
        }
        DensePoly::from_coeffs(out)
    }

    fn div_cyclo_factor(&self, order: usize) -> Option<DensePoly> {
        if self.is_zero() {
            return Some(DensePoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let len = rem.len();
        if len <= order {
            return None;
        }
        let mut quot = vec![BigInt::zero(); len - order];
        for i in (order..len).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            rem[i - order] += &c;
            quot[i - order] = c;
        }
        if rem.iter().take(order).any(|c| !c.is_zero()) {
            return None;
        }
        Some(DensePoly::from_coeffs(quot))
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl std::ops::Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        DensePoly::from_coeffs(out)
    }
}

impl std::ops::Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        DensePoly::from_coeffs(out)
    }
}

/// Expands the product into a dense polynomial.
///
/// All factors with positive exponent are multiplied out first; divisions
/// follow and must all be exact. Exactness of every single division step is
/// guaranteed whenever the full product is a polynomial, because each
/// division factor divides the numerator independently over the rationals.
pub fn expand(h: &CycloProduct) -> Result<DensePoly, ExpandError> {
    let to_order = |a: &BigInt| -> Result<usize, ExpandError> {
        a.to_usize().ok_or(ExpandError::DegreeOverflow { order: a.clone() })
    };
    let mut p = DensePoly::one();
    for (a, e) in h.factors() {
        if e > 0 {
            let order = to_order(a)?;
            for _ in 0..e {
                p = p.mul_cyclo_factor(order);
            }
        }
    }
    for (a, e) in h.factors() {
        if e < 0 {
            let order = to_order(a)?;
            for _ in 0..(-e) {
                p = p
                    .div_cyclo_factor(order)
                    .ok_or(ExpandError::NonExactDivision { order: a.clone() })?;
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::ExponentList;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn tower(text: &str) -> ExponentTower {
        ExponentList::parse(text).unwrap().decompose()
    }

    fn product(pairs: &[(i64, i64)]) -> CycloProduct {
        let mut h = CycloProduct::one();
        for &(a, e) in pairs {
            h.mul_factor(big(a), e);
        }
        h
    }

    #[test]
    fn torus_charpoly_expands_to_small_cyclotomic_cases() {
        let h = charpoly_torus(&big(2), &big(3));
        assert_eq!(h, product(&[(6, 1), (1, 1), (2, -1), (3, -1)]));
        assert_eq!(expand(&h).unwrap(), DensePoly::from_ints(&[1, -1, 1]));
        let h = charpoly_torus(&big(2), &big(5));
        assert_eq!(expand(&h).unwrap(), DensePoly::from_ints(&[1, -1, 1, -1, 1]));
    }

    #[test]
    fn torus_charpoly_degree_matches_milnor_number() {
        for (m, n) in [(2i64, 3i64), (2, 5), (2, 13), (3, 4), (4, 7), (5, 6)] {
            let h = charpoly_torus(&big(m), &big(n));
            let expected = (m - 1) * (n - 1);
            assert_eq!(milnor_number(&h), big(expected));
            assert_eq!(expand(&h).unwrap().degree(), Some(expected as usize));
        }
    }

    #[test]
    fn substitution_scales_orders() {
        let h = product(&[(6, 1), (1, 1), (2, -1), (3, -1)]);
        assert_eq!(
            h.substitute(&big(6)),
            product(&[(36, 1), (6, 1), (12, -1), (18, -1)])
        );
        assert_eq!(h.substitute(&big(1)), h);
        assert_eq!(h.substitute(&big(6)).degree(), h.degree() * big(6));
    }

    #[test]
    fn charpoly_of_the_depth_three_example() {
        let h = monodromy_charpoly(&tower("3/2,7/4,11/6"));
        assert_eq!(
            h,
            product(&[
                (1, 1),
                (36, 1),
                (78, 1),
                (237, 1),
                (12, -1),
                (18, -1),
                (39, -1),
                (79, -1),
            ])
        );
        assert_eq!(milnor_number(&h), big(204));
        let p = expand(&h).unwrap();
        assert_eq!(p.degree(), Some(204));
        assert_eq!(p.coeffs()[0], big(1));
        assert_eq!(p.coeffs()[204], big(1));
        assert_eq!(p.eval(&big(1)), big(1));
    }

    #[test]
    fn charpoly_of_a_smooth_branch_is_one() {
        let h = monodromy_charpoly(&tower(""));
        assert!(h.is_one());
        assert_eq!(milnor_number(&h), big(0));
        assert_eq!(expand(&h).unwrap(), DensePoly::one());
    }

    #[test]
    fn single_level_tower_reduces_to_the_torus_polynomial() {
        let h = monodromy_charpoly(&tower("5/2"));
        assert_eq!(h, charpoly_torus(&big(2), &big(5)));
        assert_eq!(milnor_number(&h), big(4));
    }

    #[test]
    fn no_eigenvalue_one_on_reduced_cohomology() {
        for text in ["3/2,7/4,11/6", "5/2", "7/3,9/2"] {
            let h = monodromy_charpoly(&tower(text));
            assert_eq!(root_multiplicity(&h, &big(0), &big(1)), 0);
        }
    }

    #[test]
    fn root_multiplicities_of_the_basic_torus_knot() {
        let h = charpoly_torus(&big(2), &big(3));
        assert_eq!(root_multiplicity(&h, &big(1), &big(6)), 1);
        assert_eq!(root_multiplicity(&h, &big(1), &big(2)), 0);
        assert_eq!(root_multiplicity(&h, &big(1), &big(3)), 0);
        assert_eq!(root_multiplicity(&h, &big(1), &big(4)), 0);
        assert_eq!(root_multiplicity(&CycloProduct::one(), &big(1), &big(5)), 0);
    }

    #[test]
    fn expansion_rejects_non_polynomials() {
        assert_eq!(
            expand(&product(&[(3, 1), (2, -1)])),
            Err(ExpandError::NonExactDivision { order: big(2) })
        );
        assert_eq!(
            expand(&product(&[(1, -1)])),
            Err(ExpandError::NonExactDivision { order: big(1) })
        );
    }

    #[test]
    fn expansion_of_simple_factors() {
        assert_eq!(expand(&CycloProduct::one()).unwrap(), DensePoly::one());
        assert_eq!(
            expand(&product(&[(1, 1)])).unwrap(),
            DensePoly::from_ints(&[-1, 1])
        );
        assert_eq!(
            expand(&product(&[(2, 2), (1, -1)])).unwrap(),
            DensePoly::from_ints(&[-1, -1, 1, 1])
        );
    }

    #[test]
    fn dense_polynomial_arithmetic() {
        let a = DensePoly::from_ints(&[1, 1]);
        let b = DensePoly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, DensePoly::from_ints(&[-1, 0, 1]));
        assert_eq!(&a + &b, DensePoly::from_ints(&[0, 2]));
        assert_eq!(&a - &a, DensePoly::zero());
        assert!(DensePoly::from_ints(&[0, 0]).is_zero());
        assert_eq!(DensePoly::from_ints(&[3]).degree(), Some(0));
        assert_eq!(DensePoly::zero().degree(), None);
    }

    #[test]
    fn renders_factored_text_and_latex() {
        let h = monodromy_charpoly(&tower("3/2,7/4,11/6"));
        assert_eq!(
            h.to_string(),
            "(t-1)(t^36-1)(t^78-1)(t^237-1) / ((t^12-1)(t^18-1)(t^39-1)(t^79-1))"
        );
        assert_eq!(
            h.to_latex(),
            "\\frac{(t-1)(t^{36}-1)(t^{78}-1)(t^{237}-1)}{(t^{12}-1)(t^{18}-1)(t^{39}-1)(t^{79}-1)}"
        );
        assert_eq!(CycloProduct::one().to_string(), "1");
    }

    #[test]
    fn json_lists_factors_in_order() {
        let h = charpoly_torus(&big(2), &big(3));
        assert_eq!(
            h.to_json().unwrap(),
            serde_json::json!([[1, 1], [2, -1], [3, -1], [6, 1]])
        );
    }
}
