//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives in a declared [`Universe`] of named variables and
//! stores dense exponent vectors over it. Terms are kept sorted in
//! descending graded-lexicographic order (total degree first, then
//! lexicographic with the first declared variable most significant); that
//! order is the canonical one for printing, hashing and comparison.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Arc<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable `{n}`");
        }
        Arc::new(Universe { names })
    }

    /// `prefix1 .. prefixN` after the given leading variables, e.g. `{q, t, x1, x2}`.
    pub fn with_indexed(lead: &[&str], families: &[&str], n: usize) -> Arc<Universe> {
        let mut names: Vec<String> = lead.iter().map(|s| s.to_string()).collect();
        for fam in families {
            names.extend((1..=n).map(|i| format!("{fam}{i}")));
        }
        Universe::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| {
            Error::Usage(format!(
                "variable `{name}` is not in [{}]",
                self.names.join(", ")
            ))
        })
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if same_universe(a, b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            left: a.names.join(","),
            right: b.names.join(","),
        })
    }
}

/// A dense exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 12]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[idx] = exp;
        m.deg = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over [`Rational`] in a fixed [`Universe`].
#[derive(Clone)]
pub struct Polynomial {
    universe: Arc<Universe>,
    /// Nonzero coefficients, strictly descending by monomial.
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        Polynomial {
            universe: universe.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, Rational::ONE)
    }

    pub fn constant(universe: &Arc<Universe>, c: Rational) -> Self {
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.push((Monomial::one(universe.len()), c));
        }
        p
    }

    pub fn integer(universe: &Arc<Universe>, c: i64) -> Self {
        Self::constant(universe, Rational::from_integer(c))
    }

    /// The variable `name` raised to `exp`.
    pub fn var_pow(universe: &Arc<Universe>, name: &str, exp: u32) -> Result<Self> {
        let idx = universe.var_index(name)?;
        Ok(Self::monomial(
            universe,
            Monomial::var(universe.len(), idx, exp),
            Rational::ONE,
        ))
    }

    pub fn var(universe: &Arc<Universe>, name: &str) -> Result<Self> {
        Self::var_pow(universe, name, 1)
    }

    pub fn monomial(universe: &Arc<Universe>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.exps.len(), universe.len());
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(universe: &Arc<Universe>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.exps.len(), universe.len());
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(universe, acc)
    }

    fn from_map(universe: &Arc<Universe>, acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            universe: universe.clone(),
            terms,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::ZERO,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.deg)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps[idx])
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Rational::ZERO)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Vec<(Monomial, Rational)> {
        self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect()
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_universe(&self.universe, &other.universe)?;
        Ok(Polynomial {
            universe: self.universe.clone(),
            terms: merge_add(&self.terms, &other.terms),
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_universe(&self.universe, &other.universe)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_zero() {
            return Self::zero(&self.universe);
        }
        if small.len() <= 8 {
            // Multiplication by a monomial preserves the term order, so a
            // few shifted copies can be merged without hashing.
            let mut acc = big.mul_monomial(&small.terms[0].0, &small.terms[0].1);
            for (m, c) in &small.terms[1..] {
                acc = merge_add(&acc, &big.mul_monomial(m, c));
            }
            return Polynomial {
                universe: self.universe.clone(),
                terms: acc,
            };
        }
        let mut acc: FxHashMap<Monomial, Rational> =
            FxHashMap::with_capacity_and_hasher(big.len() * 2, Default::default());
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ms.mul(mb);
                let c = cs * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.universe, acc)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Self::one(&self.universe);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Product of a sequence of polynomials in this universe.
    pub fn product<'a, I>(universe: &Arc<Universe>, factors: I) -> Polynomial
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        factors
            .into_iter()
            .fold(Self::one(universe), |acc, f| acc.mul_unchecked(f))
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` if `d` does
    /// not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if !same_universe(&self.universe, &d.universe) || d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading_term().cloned()?;
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            let sub = d.mul_monomial(&qm, &qc);
            rem.terms = merge_add(&rem.terms, &negate_terms(&sub));
            quot.push((qm, qc));
        }
        Some(Polynomial {
            universe: self.universe.clone(),
            terms: quot,
        })
    }

    /// Rewrites the polynomial in another universe, mapping variables by name.
    pub fn embed(&self, target: &Arc<Universe>) -> Result<Polynomial> {
        if same_universe(&self.universe, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .universe
            .names
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[u32; 12]> = SmallVec::from_elem(0, target.len());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(Error::Usage(format!(
                            "variable `{}` has no counterpart in [{}]",
                            self.universe.names[i],
                            target.names.join(", ")
                        )))
                    }
                }
            }
            terms.push((Monomial { deg: m.deg, exps }, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Polynomial composition: variable `i` is replaced by `images[i]`; all
    /// images share one target universe.
    pub fn compose(&self, target: &Arc<Universe>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.universe.len());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul_unchecked(&powers[i][e as usize]);
            }
            for (k, v) in term.terms {
                match out.get_mut(&k) {
                    Some(x) => *x += &v,
                    None => {
                        out.insert(k, v);
                    }
                }
            }
        }
        Polynomial::from_map(target, out)
    }

    /// Applies `f` to every exponent vector; used for shifts like `q -> 1/q`
    /// after clearing. Terms mapping to the same monomial are merged.
    pub fn map_monomials<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&[u32]) -> Vec<u32>,
    {
        Polynomial::from_terms(
            &self.universe,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(&f(&m.exps)), c.clone())),
        )
    }

    pub fn coefficients_are_nonnegative_integers(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| c.is_integer() && !c.is_negative())
    }
}

fn negate_terms(t: &[(Monomial, Rational)]) -> Vec<(Monomial, Rational)> {
    t.iter().map(|(m, c)| (m.clone(), -c)).collect()
}

fn merge_add(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)]) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Exact product of two polynomials over the same universe.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.try_mul(q)
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.len().cmp(&other.terms.len()).then_with(|| {
            for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            universe: self.universe.clone(),
            terms: negate_terms(&self.terms),
        }
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// Operator forms panic on a universe mismatch; use the `try_*` methods
// when the operands come from different computations.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial universes differ")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial universes differ")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial universes differ")
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl std::ops::Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl std::ops::Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Canonical text: terms in descending graded-lex order, written as
/// `c * a^i * q^k` and joined by ` + ` / ` - `. Unit coefficients are
/// omitted on non-constant terms and exponents of 1 are not written.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // with a constant term, print by ascending total degree: `1 - q`
        let mut order: Vec<&(Monomial, Rational)> = self.terms.iter().collect();
        if self.terms.iter().any(|(m, _)| m.is_one()) {
            order.sort_by_key(|(m, _)| m.degree());
        }
        for (k, (m, c)) in order.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.universe.names[i].clone()),
                    _ => parts.push(format!("{}^{}", self.universe.names[i], e)),
                }
            }
            f.write_str(&parts.join(" * "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn p(u: &Arc<Universe>, s: &str) -> Polynomial {
        parse_polynomial(u, s).unwrap()
    }

    #[test]
    fn poly_mul_examples() {
        let u = Universe::new(["a", "b", "q", "t"]);
        assert_eq!(
            poly_mul(&p(&u, "1 - q"), &p(&u, "1 + q")).unwrap(),
            p(&u, "1 - q^2")
        );
        assert_eq!(
            poly_mul(&p(&u, "a - b"), &p(&u, "1")).unwrap(),
            p(&u, "a - b")
        );
        assert_eq!(
            poly_mul(&p(&u, "1 - t"), &p(&u, "1 - t*q")).unwrap(),
            p(&u, "1 - t - t*q + t^2*q")
        );
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let u = Universe::new(["a", "b"]);
        let v = Universe::new(["b", "a"]);
        let err = poly_mul(&p(&u, "a"), &p(&v, "a")).unwrap_err();
        assert!(matches!(err, Error::UniverseMismatch { .. }));
    }

    #[test]
    fn canonical_text() {
        let u = Universe::new(["a", "b", "q"]);
        let x = p(&u, "(a - b) * (a*q - b)");
        assert_eq!(x.to_string(), "a^2 * q - a * b * q - a * b + b^2");
        assert_eq!(p(&u, "1 - q").to_string(), "1 - q");
        assert_eq!(p(&u, "3/2*a - 2").to_string(), "-2 + 3/2 * a");
        assert_eq!(Polynomial::zero(&u).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let u = Universe::new(["q", "t"]);
        let num = p(&u, "1 - q^3");
        assert_eq!(
            num.div_exact(&p(&u, "1 - q")).unwrap(),
            p(&u, "1 + q + q^2")
        );
        assert!(num.div_exact(&p(&u, "1 - t")).is_none());
        assert!(p(&u, "q^2 + 1").div_exact(&p(&u, "q + 1")).is_none());
    }

    #[test]
    fn compose_and_embed() {
        let u = Universe::new(["a", "b", "q"]);
        let f = p(&u, "a^2 - b");
        let imgs = vec![p(&u, "q*a"), p(&u, "b"), p(&u, "q")];
        assert_eq!(f.compose(&u, &imgs), p(&u, "q^2*a^2 - b"));
        let big = Universe::new(["q", "a", "b", "t"]);
        let e = f.embed(&big).unwrap();
        assert_eq!(e.to_string(), "a^2 - b");
        assert!(p(&big, "t").embed(&u).is_err());
    }
}
