//! Cross-checks tying the spectrum and monodromy pipelines together.
//!
//! Every check compares two quantities that the library computes along
//! independent routes, so a pass is evidence against implementation bugs
//! rather than a tautology. The CLI exposes [`run_checks`] behind its
//! `--verify` flag.

use crate::monodromy::{expand, milnor_number, monodromy_charpoly, root_multiplicity, CycloProduct};
use crate::motive::motivic_milnor_fiber;
use crate::puiseux::ExponentTower;
use crate::spectrum::{spectrum_via_motive, spectrum_via_process, SpectrumElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Outcome of one named cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// Runs every cross-check on one branch.
pub fn run_checks(tower: &ExponentTower) -> Vec<Check> {
    let spectrum = spectrum_via_process(tower);
    let charpoly = monodromy_charpoly(tower);
    vec![
        Check {
            name: "path_equivalence",
            pass: path_equivalence(tower, &spectrum),
        },
        Check {
            name: "reflection_symmetry",
            pass: reflection_symmetry(&spectrum),
        },
        Check {
            name: "cardinality_equals_milnor",
            pass: spectrum.total_multiplicity() == milnor_number(&charpoly),
        },
        Check {
            name: "eigenvalue_consistency",
            pass: eigenvalue_consistency(&spectrum, &charpoly),
        },
        Check {
            name: "expand_degree_consistency",
            pass: expand_degree_consistency(&charpoly),
        },
    ]
}

/// The generator-wise transform of the motive reproduces the combinatorial
/// spectrum exactly.
pub fn path_equivalence(tower: &ExponentTower, spectrum: &SpectrumElem) -> bool {
    match spectrum_via_motive(&motivic_milnor_fiber(tower)) {
        Ok(s) => s == *spectrum,
        Err(_) => false,
    }
}

/// Multiplicities are symmetric under reflection across 1.
pub fn reflection_symmetry(spectrum: &SpectrumElem) -> bool {
    let two = BigRational::from_integer(BigInt::from(2));
    spectrum
        .iter()
        .all(|(alpha, &mult)| spectrum.multiplicity(&(&two - alpha)) == mult)
}

/// Spectral numbers hit monodromy eigenvalues with the right multiplicity.
///
/// Every residue class r = alpha mod 1 occurring in the spectrum must carry
/// total multiplicity equal to the multiplicity of the root exp(2 pi i r) of
/// the characteristic polynomial, and for every q dividing some factor order
/// the residues of denominator q must either all occur (when the root
/// multiplicity is nonzero, there are phi(q) of them) or all be absent.
///
/// Factor orders beyond the u64 range fail the check outright.
pub fn eigenvalue_consistency(spectrum: &SpectrumElem, charpoly: &CycloProduct) -> bool {
    let mut residues: BTreeMap<BigRational, i64> = BTreeMap::new();
    for (alpha, &mult) in spectrum.iter() {
        let residue = alpha.fract();
        *residues.entry(residue).or_insert(0) += mult;
    }
    for (residue, &total) in &residues {
        if root_multiplicity(charpoly, residue.numer(), residue.denom()) != total {
            return false;
        }
    }
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for (order, _) in charpoly.factors() {
        let Some(order) = order.to_u64() else {
            return false;
        };
        for q in divisors(order) {
            candidates.insert(q);
        }
    }
    for q in candidates {
        let qi = BigInt::from(q);
        let mult: i64 = charpoly
            .factors()
            .filter(|(a, _)| (*a % &qi).is_zero())
            .map(|(_, e)| e)
            .sum();
        let occurring = residues.keys().filter(|r| *r.denom() == qi).count() as u64;
        let expected = if mult == 0 { 0 } else { totient(q) };
        if occurring != expected {
            return false;
        }
    }
    true
}

/// The factored degree agrees with the degree after full expansion.
pub fn expand_degree_consistency(charpoly: &CycloProduct) -> bool {
    match expand(charpoly) {
        Ok(p) => match p.degree() {
            Some(deg) => BigInt::from(deg) == milnor_number(charpoly),
            None => false,
        },
        Err(_) => false,
    }
}

fn divisors(x: u64) -> Vec<u64> {
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
    out
}

fn totient(mut x: u64) -> u64 {
    let mut out = x;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if x > 1 {
        out -= out / x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::ExponentList;

    fn checks(text: &str) -> Vec<Check> {
        run_checks(&ExponentList::parse(text).unwrap().decompose())
    }

    #[test]
    fn all_checks_pass_on_the_depth_three_example() {
        for check in checks("3/2,7/4,11/6") {
            assert!(check.pass, "check {} failed", check.name);
        }
    }

    #[test]
    fn all_checks_pass_on_small_branches() {
        for text in ["", "5/2", "7/3", "3/2,7/4", "8/5,13/3"] {
            for check in checks(text) {
                assert!(check.pass, "check {} failed on {:?}", check.name, text);
            }
        }
    }

    #[test]
    fn check_names_are_stable() {
        let names: Vec<&str> = checks("").iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            vec![
                "path_equivalence",
                "reflection_symmetry",
                "cardinality_equals_milnor",
                "eigenvalue_consistency",
                "expand_degree_consistency",
            ]
        );
    }

    #[test]
    fn eigenvalue_consistency_spots_a_corrupted_spectrum() {
        let tower = ExponentList::parse("5/2").unwrap().decompose();
        let mut spectrum = spectrum_via_process(&tower);
        let charpoly = monodromy_charpoly(&tower);
        assert!(eigenvalue_consistency(&spectrum, &charpoly));
        spectrum.add_term(BigRational::new(BigInt::from(7), BigInt::from(10)), 1);
        assert!(!eigenvalue_consistency(&spectrum, &charpoly));
    }

    #[test]
    fn reflection_symmetry_spots_an_unbalanced_multiset() {
        let mut s = SpectrumElem::zero();
        s.add_term(BigRational::new(BigInt::from(1), BigInt::from(2)), 1);
        assert!(!reflection_symmetry(&s));
        s.add_term(BigRational::new(BigInt::from(3), BigInt::from(2)), 1);
        assert!(reflection_symmetry(&s));
    }

    #[test]
    fn totient_and_divisors_helpers() {
        assert_eq!(divisors(12).len(), 6);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(6), 2);
        assert_eq!(totient(36), 12);
        assert_eq!(totient(79), 78);
    }
}
