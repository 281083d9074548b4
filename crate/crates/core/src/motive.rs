//! The fragment of the monodromic Grothendieck ring hit by the recursion,
//! and the motivic Milnor fiber itself.
//!
//! The recursion only ever produces three kinds of classes: the point, the
//! k-th roots of unity [mu_k] with their cyclic action, and the Fermat-type
//! curves (y^m - x^n)^e = 1 with their root-of-unity action. A motive here is
//! a formal sum of such generators with coefficients in Z[L, 1/L], where L is
//! the class of the affine line. No relations beyond [mu_1] = point are
//! imposed; equality is structural equality of normal forms.

use crate::puiseux::ExponentTower;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Named generator class. The ordering Point < MuRoots < FermatClass, with
/// MuRoots ordered by k and FermatClass lexicographically by (m, n, e), is
/// the canonical output order everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// The class of a point, identified with [mu_1].
    Point,
    /// The class [mu_k] of the k-th roots of unity with its cyclic action.
    MuRoots(BigInt),
    /// The class of {(x, y) : (y^m - x^n)^e = 1} with its mu-hat action.
    FermatClass { m: BigInt, n: BigInt, e: BigInt },
}

impl Generator {
    /// [mu_k], normalizing [mu_1] to the point class.
    pub fn mu_roots(k: BigInt) -> Generator {
        if k.is_one() {
            Generator::Point
        } else {
            Generator::MuRoots(k)
        }
    }

    /// The Fermat-type class of (y^m - x^n)^e = 1.
    pub fn fermat(m: BigInt, n: BigInt, e: BigInt) -> Generator {
        Generator::FermatClass { m, n, e }
    }

    fn normalized(self) -> Generator {
        match self {
            Generator::MuRoots(k) if k.is_one() => Generator::Point,
            g => g,
        }
    }
}

/// Integer Laurent polynomial in the Lefschetz class L.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentL {
    terms: BTreeMap<i64, i64>,
}

impl LaurentL {
    pub fn zero() -> Self {
        LaurentL::default()
    }

    pub fn one() -> Self {
        LaurentL::term(0, 1)
    }

    /// The class L itself.
    pub fn l() -> Self {
        LaurentL::term(1, 1)
    }

    /// The single term c * L^p.
    pub fn term(power: i64, coeff: i64) -> Self {
        let mut t = LaurentL::zero();
        t.insert(power, coeff);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, power: i64) -> i64 {
        self.terms.get(&power).copied().unwrap_or(0)
    }

    /// The (power, coefficient) pairs in increasing power order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&p, &c)| (p, c))
    }

    fn insert(&mut self, power: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(power).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&power);
        }
    }
}

impl Add for &LaurentL {
    type Output = LaurentL;
    fn add(self, rhs: &LaurentL) -> LaurentL {
        let mut out = self.clone();
        for (p, c) in rhs.iter() {
            out.insert(p, c);
        }
        out
    }
}

impl Sub for &LaurentL {
    type Output = LaurentL;
    fn sub(self, rhs: &LaurentL) -> LaurentL {
        let mut out = self.clone();
        for (p, c) in rhs.iter() {
            out.insert(p, -c);
        }
        out
    }
}

impl Neg for &LaurentL {
    type Output = LaurentL;
    fn neg(self) -> LaurentL {
        let mut out = LaurentL::zero();
        for (p, c) in self.iter() {
            out.insert(p, -c);
        }
        out
    }
}

impl Mul for &LaurentL {
    type Output = LaurentL;
    fn mul(self, rhs: &LaurentL) -> LaurentL {
        let mut out = LaurentL::zero();
        for (p, c) in self.iter() {
            for (q, d) in rhs.iter() {
                out.insert(p + q, c * d);
            }
        }
        out
    }
}

impl fmt::Display for LaurentL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mag = c.unsigned_abs();
            match (p, mag) {
                (0, _) => write!(f, "{}", mag)?,
                (1, 1) => write!(f, "L")?,
                (1, _) => write!(f, "{}L", mag)?,
                (_, 1) => write!(f, "L^{}", p)?,
                (_, _) => write!(f, "{}L^{}", mag, p)?,
            }
        }
        Ok(())
    }
}

/// Formal sum of generators with Laurent coefficients in L, kept in normal
/// form: no zero coefficients, [mu_1] merged into the point class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotiveExpr {
    terms: BTreeMap<Generator, LaurentL>,
}

impl MotiveExpr {
    pub fn zero() -> Self {
        MotiveExpr::default()
    }

    /// The motive consisting of a single generator with coefficient 1.
    pub fn generator(g: Generator) -> Self {
        let mut out = MotiveExpr::zero();
        out.add_term(g, &LaurentL::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The (generator, coefficient) pairs in canonical generator order.
    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &LaurentL)> {
        self.terms.iter()
    }

    /// Adds c times the generator g, renormalizing.
    pub fn add_term(&mut self, g: Generator, c: &LaurentL) {
        if c.is_zero() {
            return;
        }
        let g = g.normalized();
        let entry = self.terms.entry(g.clone()).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// Multiplies every coefficient by c.
    pub fn scale(&self, c: &LaurentL) -> MotiveExpr {
        let mut out = MotiveExpr::zero();
        for (g, coeff) in self.terms() {
            out.add_term(g.clone(), &(coeff * c));
        }
        out
    }

    /// JSON form: a list of {"gen", "coeff"} objects in canonical order,
    /// with each coefficient a list of [power, coefficient] pairs.
    ///
    /// Fails when a generator parameter does not fit in a JSON integer.
    pub fn to_json(&self) -> Result<Value, num_bigint::TryFromBigIntError<()>> {
        let mut items = Vec::new();
        for (g, coeff) in self.terms() {
            let gen = match g {
                Generator::Point => json!({"kind": "point"}),
                Generator::MuRoots(k) => json!({"kind": "mu", "k": i64::try_from(k)?}),
                Generator::FermatClass { m, n, e } => json!({
                    "kind": "fermat",
                    "m": i64::try_from(m)?,
                    "n": i64::try_from(n)?,
                    "e": i64::try_from(e)?,
                }),
            };
            let coeffs: Vec<Value> = coeff.iter().map(|(p, c)| json!([p, c])).collect();
            items.push(json!({"gen": gen, "coeff": coeffs}));
        }
        Ok(Value::Array(items))
    }

    /// LaTeX form in display order: Fermat classes first, then the
    /// root-of-unity terms by decreasing power of L and decreasing k.
    pub fn to_latex(&self) -> String {
        render_motive(self, true)
    }
}

impl Add for &MotiveExpr {
    type Output = MotiveExpr;
    fn add(self, rhs: &MotiveExpr) -> MotiveExpr {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g.clone(), c);
        }
        out
    }
}

impl Sub for &MotiveExpr {
    type Output = MotiveExpr;
    fn sub(self, rhs: &MotiveExpr) -> MotiveExpr {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g.clone(), &(-c));
        }
        out
    }
}

impl Neg for &MotiveExpr {
    type Output = MotiveExpr;
    fn neg(self) -> MotiveExpr {
        MotiveExpr::zero().sub(self)
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_motive(self, false))
    }
}

/// S of the pure power (y^m - x^n)^e: the Fermat-type class minus
/// [mu_e] (L - 1).
pub fn base_case_motive(m: &BigInt, n: &BigInt, e: &BigInt) -> MotiveExpr {
    let mut out = MotiveExpr::zero();
    out.add_term(
        Generator::fermat(m.clone(), n.clone(), e.clone()),
        &LaurentL::one(),
    );
    let one_minus_l = &LaurentL::one() - &LaurentL::l();
    out.add_term(Generator::mu_roots(e.clone()), &one_minus_l);
    out
}

/// One unfolding of the recursion: S(f) from S(f') and the level data of f.
///
/// Adds the pure-power base case for the truncation and corrects by
/// [mu_{d'}], so that folding this step over a tower reproduces
/// [`motivic_milnor_fiber`] exactly.
pub fn recursion_step(
    sf_prime: &MotiveExpr,
    m: &BigInt,
    n: &BigInt,
    dprime: &BigInt,
) -> MotiveExpr {
    let mut out = &base_case_motive(m, n, dprime) + sf_prime;
    out.add_term(Generator::mu_roots(dprime.clone()), &(-&LaurentL::one()));
    out
}

/// The motivic Milnor fiber of the branch with the given tower.
///
/// In closed form this is the sum over levels of
/// [(y^m - x^n)^{d'} = 1] - [mu_{d'}] L, plus the point class contributed by
/// the smooth terminal curve.
pub fn motivic_milnor_fiber(tower: &ExponentTower) -> MotiveExpr {
    let mut out = MotiveExpr::generator(Generator::Point);
    for level in tower.levels() {
        let d = &level.data;
        out.add_term(
            Generator::fermat(d.m.clone(), d.n.clone(), d.dprime.clone()),
            &LaurentL::one(),
        );
        out.add_term(Generator::mu_roots(d.dprime.clone()), &(-&LaurentL::l()));
    }
    out
}

fn render_motive(motive: &MotiveExpr, latex: bool) -> String {
    if motive.is_zero() {
        return "0".to_string();
    }
    // display order: Fermat classes in lexicographic order, then everything
    // else by decreasing power of L and decreasing root count
    let mut fermat: Vec<(&Generator, i64, i64)> = Vec::new();
    let mut mu: Vec<(i64, BigInt, i64)> = Vec::new();
    for (g, coeff) in motive.terms() {
        match g {
            Generator::FermatClass { .. } => {
                for (p, c) in coeff.iter() {
                    fermat.push((g, p, c));
                }
            }
            Generator::Point => {
                for (p, c) in coeff.iter() {
                    mu.push((p, BigInt::one(), c));
                }
            }
            Generator::MuRoots(k) => {
                for (p, c) in coeff.iter() {
                    mu.push((p, k.clone(), c));
                }
            }
        }
    }
    mu.sort_by(|a, b| (&b.0, &b.1).cmp(&(&a.0, &a.1)));

    let mut pieces: Vec<(i64, String)> = Vec::new();
    for (g, p, c) in fermat {
        pieces.push((c, fermat_latex(g, latex) + &l_power(p, latex)));
    }
    for (p, k, c) in mu {
        let mut body = if k.is_one() {
            String::new()
        } else if latex {
            format!("[\\mu_{}]", brace(&k.to_string(), latex))
        } else {
            format!("[mu_{}]", k)
        };
        body.push_str(&l_power(p, latex));
        if body.is_empty() {
            body.push('1');
        }
        pieces.push((c, body));
    }

    let mut out = String::new();
    for (i, (c, body)) in pieces.iter().enumerate() {
        let mag = c.unsigned_abs();
        if i == 0 {
            if *c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if *c < 0 { " - " } else { " + " });
        }
        if mag != 1 || body == "1" {
            out.push_str(&mag.to_string());
            if body != "1" {
                out.push_str(body);
            }
        } else {
            out.push_str(body);
        }
    }
    out
}

fn fermat_latex(g: &Generator, latex: bool) -> String {
    let (m, n, e) = match g {
        Generator::FermatClass { m, n, e } => (m, n, e),
        _ => unreachable!("fermat_latex is only called on Fermat classes"),
    };
    let ym = format!("y^{}", brace(&m.to_string(), latex));
    let xn = format!("x^{}", brace(&n.to_string(), latex));
    if e.is_one() {
        format!("[{}-{}-1]", ym, xn)
    } else {
        format!("[({}-{})^{}-1]", ym, xn, brace(&e.to_string(), latex))
    }
}

fn l_power(p: i64, latex: bool) -> String {
    let l = if latex { "\\mathbb{L}" } else { "L" };
    match p {
        0 => String::new(),
        1 => l.to_string(),
        _ => format!("{}^{}", l, brace(&p.to_string(), latex)),
    }
}

fn brace(s: &str, latex: bool) -> String {
    if latex && s.len() > 1 {
        format!("{{{}}}", s)
    } else {
        s.to_string()
    }
}
