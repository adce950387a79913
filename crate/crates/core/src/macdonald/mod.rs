//! The row Macdonald polynomial `g_n(X; q, t)`, the degree-n coefficient of
//! `Π_i (t x_i; q)_∞ / (x_i; q)_∞`, and its expansions.

mod operator;
mod symmetric;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::partition::{partitions_of, z_of, Partition};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::{series_expand, SeriesFactor, TruncatedSeries};
use crate::specialization::{at_ab, qt_universe, spec_Z, Limits};

pub use operator::{
    a_i, apply_D_eigencheck, eigenvalue, prop9_check, tx_universe, DEFAULT_OPERATOR_CAP,
    DEFAULT_PROP9_CAP,
};
pub use symmetric::{
    basis_elements, graded_universe, orbit_polynomial, single_part_generators, x_universe, Basis,
    SymmetricPolynomial,
};

/// Coefficients of `g_n` on one basis, keyed by the partitions of `n`.
#[derive(Debug, Clone)]
pub struct ExpansionTable {
    pub n: u32,
    pub basis: Basis,
    pub entries: BTreeMap<Partition, FactoredFraction>,
}

fn partitions_of_n(n: u32) -> Vec<Partition> {
    if n == 0 {
        vec![Partition::empty()]
    } else {
        partitions_of(n)
    }
}

fn qt(s: &str) -> FactoredFraction {
    crate::text::parse_fraction(&qt_universe(), s).expect("well-formed literal")
}

fn sign(n: u32) -> Rational {
    if n % 2 == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

/// `(a; q)_k / (q; q)_k` with `a` given as text in `{q, t}`.
fn pochhammer_ratio(a: &str, k: u32) -> FactoredFraction {
    let mut f = FactoredFraction::one(&qt_universe());
    for j in 0..k {
        f = &f * &qt(&format!("(1 - {a}*q^{j})/(1 - q^{})", j + 1));
    }
    f
}

/// The coefficient of each basis element in `g_n`.
pub fn gn_table(n: u32, basis: Basis, limits: &Limits) -> Result<ExpansionTable> {
    let mut entries = BTreeMap::new();
    for mu in partitions_of_n(n) {
        let c = match basis {
            Basis::Power => {
                let mut c = FactoredFraction::constant(&qt_universe(), z_of(&mu).recip());
                for &k in mu.parts() {
                    c = &c * &qt(&format!("(1 - t^{k})/(1 - q^{k})"));
                }
                c
            }
            Basis::Monomial => mu
                .parts()
                .iter()
                .fold(FactoredFraction::one(&qt_universe()), |acc, &k| {
                    &acc * &pochhammer_ratio("t", k)
                }),
            Basis::Complete => at_ab(&spec_Z(&mu, limits)?.value, "1", "t")?,
            Basis::Elementary => at_ab(&spec_Z(&mu, limits)?.value, "t", "1")?.scale(&sign(n)),
            Basis::DeformedComplete => at_ab(&spec_Z(&mu, limits)?.value, "1", "0")?,
            Basis::DeformedElementary => {
                at_ab(&spec_Z(&mu, limits)?.value, "0", "1")?.scale(&sign(n))
            }
        };
        entries.insert(mu, c);
    }
    Ok(ExpansionTable { n, basis, entries })
}

impl ExpansionTable {
    /// `Σ coefficient · basis element` on `N` variables.
    pub fn to_symmetric(&self, n_vars: usize) -> Result<SymmetricPolynomial> {
        let elements = basis_elements(self.basis, self.n, n_vars)?;
        let parts = self
            .entries
            .iter()
            .map(|(mu, c)| elements[mu].scale(c))
            .collect::<Result<Vec<_>>>()?;
        SymmetricPolynomial::sum(n_vars, parts)
    }

    /// Entry-wise `frac_eq` on the same key set.
    pub fn equals(&self, other: &ExpansionTable) -> Result<bool> {
        if self.n != other.n
            || self.basis != other.basis
            || self.entries.len() != other.entries.len()
        {
            return Ok(false);
        }
        for (mu, c) in &self.entries {
            match other.entries.get(mu) {
                Some(d) if frac_eq(c, d)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// `e_n = Σ (-1)^{n - l(mu)} / z_mu · p_mu`
pub fn en_power_table(n: u32) -> ExpansionTable {
    let entries = partitions_of_n(n)
        .into_iter()
        .map(|mu| {
            let c = &sign(n - mu.len() as u32) / &z_of(&mu);
            (mu, FactoredFraction::constant(&qt_universe(), c))
        })
        .collect();
    ExpansionTable {
        n,
        basis: Basis::Power,
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaRoles {
    /// `p_k ↦ -(-1)^k (1 - q^k)/(1 - t^k) p_k`
    QT,
    /// the same with `q` and `t` exchanged
    TQ,
}

/// `ω_{q,t}` on a power-basis table: the coefficient of `p_mu` is
/// multiplied by `(-1)^{|mu| - l(mu)} Π_i (1 - q^{mu_i})/(1 - t^{mu_i})`.
pub fn omega_apply(table: &ExpansionTable, roles: OmegaRoles) -> Result<ExpansionTable> {
    if table.basis != Basis::Power {
        return Err(Error::Usage(format!(
            "omega acts on power-basis tables, got `{}`",
            table.basis.tag()
        )));
    }
    let (a, b) = match roles {
        OmegaRoles::QT => ("q", "t"),
        OmegaRoles::TQ => ("t", "q"),
    };
    let mut entries = BTreeMap::new();
    for (mu, c) in &table.entries {
        let mut f = c.scale(&sign(mu.weight() - mu.len() as u32));
        for &k in mu.parts() {
            f = &f * &qt(&format!("(1 - {a}^{k})/(1 - {b}^{k})"));
        }
        entries.insert(mu.clone(), f);
    }
    Ok(ExpansionTable {
        n: table.n,
        basis: Basis::Power,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnMethod {
    FromBasis,
    HeineProduct,
}

/// `g_n` on `N` variables, from the monomial table or from the product of
/// the single-variable q-binomial series.
pub fn gn_polynomial(
    n: u32,
    n_vars: usize,
    method: GnMethod,
    limits: &Limits,
) -> Result<SymmetricPolynomial> {
    if n_vars == 0 {
        return Err(Error::InvalidValue("N must be at least 1".into()));
    }
    match method {
        GnMethod::FromBasis => gn_table(n, Basis::Monomial, limits)?.to_symmetric(n_vars),
        GnMethod::HeineProduct => {
            let s = heine_series(n_vars, n as usize)?;
            SymmetricPolynomial::from_fraction(s.coefficient(n as usize), n_vars)
        }
    }
}

/// `Π_i (t x_i; q)_∞ / (x_i; q)_∞` graded by `u`.
fn heine_series(n_vars: usize, order: usize) -> Result<TruncatedSeries> {
    let gu = graded_universe(n_vars);
    let factors = (1..=n_vars)
        .map(|i| {
            let x = Polynomial::var(&gu, &format!("x{i}"))?;
            Ok(SeriesFactor::QRatio {
                alpha: &Polynomial::var(&gu, "t")? * &x,
                beta: x,
                q: "q".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    series_expand(&gu, &factors, "u", order)
}

/// All six tables and the product formula give the same `g_n`.
pub fn six_way_check(n: u32, n_vars: usize, limits: &Limits) -> Result<bool> {
    let reference = gn_polynomial(n, n_vars, GnMethod::HeineProduct, limits)?;
    for basis in Basis::ALL {
        if !gn_table(n, basis, limits)?
            .to_symmetric(n_vars)?
            .equals(&reference)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeformedKind {
    /// `E_n(X; t) = e_n[(1 - t) X]`
    E,
    /// `H_n(X; t) = h_n[(1 - t) X]`
    H,
}

/// `E_n` or `H_n` computed from its generating series, from `g_n` at
/// `q = 0`, and from its monomial expansion. Each entry is tagged.
pub fn deformed_all_ways(
    kind: DeformedKind,
    n: u32,
    n_vars: usize,
    limits: &Limits,
) -> Result<Vec<(&'static str, SymmetricPolynomial)>> {
    if n == 0 || n_vars == 0 {
        return Err(Error::InvalidValue("need n >= 1 and N >= 1".into()));
    }
    let basis = match kind {
        DeformedKind::E => Basis::DeformedElementary,
        DeformedKind::H => Basis::DeformedComplete,
    };
    let gens = single_part_generators(basis, n_vars, n)?;
    let from_series = SymmetricPolynomial::from_polynomial(&gens[n as usize], n_vars)?;

    let g = gn_polynomial(n, n_vars, GnMethod::FromBasis, limits)?;
    let qt_u = qt_universe();
    let zero = FactoredFraction::zero(&qt_u);
    let from_gn = match kind {
        DeformedKind::H => g.map_coefficients(|c| c.substitute_in_place(&[("q", zero.clone())]))?,
        DeformedKind::E => {
            let inv_t = qt("1/t");
            let pref = qt(&format!("(-t)^{n}"));
            g.map_coefficients(|c| {
                Ok(&c.substitute_in_place(&[("q", zero.clone()), ("t", inv_t.clone())])? * &pref)
            })?
        }
    };

    let orbits = partitions_of(n).into_iter().map(|mu| {
        let l = mu.len() as u32;
        let c = match kind {
            DeformedKind::H => qt(&format!("(1 - t)^{l}")),
            DeformedKind::E => qt(&format!("(-t)^{} * (1 - t)^{l}", n - l)),
        };
        (mu, c)
    });
    let from_monomials = SymmetricPolynomial::from_orbits(n_vars, orbits)?;
    Ok(vec![
        ("generating-series", from_series),
        ("row-polynomial-at-q=0", from_gn),
        ("monomial-expansion", from_monomials),
    ])
}

/// The partial-fraction forms
/// `E_n = (-1)^n t^{n-N} (t - 1) Σ A_i(X;t) x_i^n` and
/// `H_n = t^{N-1} (1 - t) Σ A_i(X;1/t) x_i^n`.
pub fn deformed_partial_fraction(
    kind: DeformedKind,
    n: u32,
    n_vars: usize,
) -> Result<FactoredFraction> {
    let u = x_universe(n_vars);
    let t = FactoredFraction::from_poly(&Polynomial::var(&u, "t")?);
    let one = FactoredFraction::one(&u);
    let param = match kind {
        DeformedKind::E => t.clone(),
        DeformedKind::H => t.recip()?,
    };
    let terms = (1..=n_vars)
        .map(|i| {
            let xn = FactoredFraction::from_poly(&Polynomial::var_pow(&u, &format!("x{i}"), n)?);
            Ok(&a_i(&u, i, n_vars, &param)? * &xn)
        })
        .collect::<Result<Vec<_>>>()?;
    let s = FactoredFraction::sum(&u, terms)?;
    let pref = match kind {
        DeformedKind::E => {
            let tp = if n as usize >= n_vars {
                t.pow(n - n_vars as u32)
            } else {
                t.pow(n_vars as u32 - n).recip()?
            };
            (&tp * &(&t - &one)).scale(&sign(n))
        }
        DeformedKind::H => &t.pow(n_vars as u32 - 1) * &(&one - &t),
    };
    Ok(&pref * &s)
}

/// `E_n` or `H_n`, after checking that all constructions agree.
pub fn deformed(
    kind: DeformedKind,
    n: u32,
    n_vars: usize,
    limits: &Limits,
) -> Result<SymmetricPolynomial> {
    let ways = deformed_all_ways(kind, n, n_vars, limits)?;
    if !deformed_agree(kind, n, n_vars, &ways)? {
        return Err(Error::Internal(format!(
            "constructions of the degree-{n} deformed generator disagree"
        )));
    }
    Ok(ways.into_iter().next().expect("three constructions").1)
}

fn deformed_agree(
    kind: DeformedKind,
    n: u32,
    n_vars: usize,
    ways: &[(&'static str, SymmetricPolynomial)],
) -> Result<bool> {
    let first = &ways[0].1;
    for (_, w) in &ways[1..] {
        if !first.equals(w)? {
            return Ok(false);
        }
    }
    let u = x_universe(n_vars);
    frac_eq(
        &first.to_fraction(&u)?,
        &deformed_partial_fraction(kind, n, n_vars)?,
    )
}

pub fn deformed_check(kind: DeformedKind, n: u32, n_vars: usize, limits: &Limits) -> Result<bool> {
    let ways = deformed_all_ways(kind, n, n_vars, limits)?;
    deformed_agree(kind, n, n_vars, &ways)
}

/// Substitutes `t = q` in every orbit coefficient.
fn t_to_q(s: &SymmetricPolynomial) -> Result<SymmetricPolynomial> {
    let q = qt("q");
    s.map_coefficients(|c| c.substitute_in_place(&[("t", q.clone())]))
}

/// `Σ_mu table[mu] · element[mu]`
fn combine(
    n_vars: usize,
    coefficients: &BTreeMap<Partition, FactoredFraction>,
    elements: &BTreeMap<Partition, SymmetricPolynomial>,
    global: &Rational,
) -> Result<SymmetricPolynomial> {
    let parts = coefficients
        .iter()
        .map(|(mu, c)| elements[mu].scale(&c.scale(global)))
        .collect::<Result<Vec<_>>>()?;
    SymmetricPolynomial::sum(n_vars, parts)
}

/// The inverse formulas for `h_n` and `e_n`, each tagged:
/// `h_n = g_n(X;q,q)`, `h_n = Σ Z_mu(1,0,q) H_mu(X;q)`,
/// `h_n = (-1)^n Σ Z_mu(0,1,q) E_mu(X;q)`, `e_n = Σ Z_mu(1,0,q) E_mu(X;q)`,
/// `e_n = (-1)^n Σ Z_mu(0,1,q) H_mu(X;q)`.
pub fn inverse_expansions(
    n: u32,
    n_vars: usize,
    limits: &Limits,
) -> Result<Vec<(&'static str, bool)>> {
    if n == 0 || n_vars == 0 {
        return Err(Error::InvalidValue("need n >= 1 and N >= 1".into()));
    }
    let h = &basis_elements(Basis::Complete, n, n_vars)?[&Partition::new(vec![n])?];
    let e = &basis_elements(Basis::Elementary, n, n_vars)?[&Partition::new(vec![n])?];
    let big_h: BTreeMap<Partition, SymmetricPolynomial> =
        basis_elements(Basis::DeformedComplete, n, n_vars)?
            .into_iter()
            .map(|(mu, s)| Ok((mu, t_to_q(&s)?)))
            .collect::<Result<_>>()?;
    let big_e: BTreeMap<Partition, SymmetricPolynomial> =
        basis_elements(Basis::DeformedElementary, n, n_vars)?
            .into_iter()
            .map(|(mu, s)| Ok((mu, t_to_q(&s)?)))
            .collect::<Result<_>>()?;
    let mut z10 = BTreeMap::new();
    let mut z01 = BTreeMap::new();
    for mu in partitions_of(n) {
        let z = spec_Z(&mu, limits)?.value;
        z10.insert(mu.clone(), at_ab(&z, "1", "0")?);
        z01.insert(mu, at_ab(&z, "0", "1")?);
    }
    let g_qq = t_to_q(&gn_polynomial(n, n_vars, GnMethod::FromBasis, limits)?)?;
    let one = Rational::ONE;
    let sgn = sign(n);
    Ok(vec![
        ("h_n = g_n(X;q,q)", h.equals(&g_qq)?),
        (
            "h_n = sum Z(1,0,q) H(X;q)",
            h.equals(&combine(n_vars, &z10, &big_h, &one)?)?,
        ),
        (
            "h_n = (-1)^n sum Z(0,1,q) E(X;q)",
            h.equals(&combine(n_vars, &z01, &big_e, &sgn)?)?,
        ),
        (
            "e_n = sum Z(1,0,q) E(X;q)",
            e.equals(&combine(n_vars, &z10, &big_e, &one)?)?,
        ),
        (
            "e_n = (-1)^n sum Z(0,1,q) H(X;q)",
            e.equals(&combine(n_vars, &z01, &big_h, &sgn)?)?,
        ),
    ])
}

pub fn inverse_expansions_check(n: u32, n_vars: usize, limits: &Limits) -> Result<bool> {
    Ok(inverse_expansions(n, n_vars, limits)?
        .iter()
        .all(|(_, ok)| *ok))
}

/// `ω_{q,t}(g_n) = e_n` on power-basis tables.
pub fn omega_gn_check(n: u32, limits: &Limits) -> Result<bool> {
    omega_apply(&gn_table(n, Basis::Power, limits)?, OmegaRoles::QT)?.equals(&en_power_table(n))
}

/// Power-basis table of a product of single-part tables.
fn power_product(factors: &[ExpansionTable]) -> Result<ExpansionTable> {
    let u = qt_universe();
    let mut acc: BTreeMap<Partition, FactoredFraction> =
        [(Partition::empty(), FactoredFraction::one(&u))]
            .into_iter()
            .collect();
    for f in factors {
        let mut next: BTreeMap<Partition, Vec<FactoredFraction>> = BTreeMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &f.entries {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                next.entry(Partition::from_unsorted(parts)?)
                    .or_default()
                    .push(ca * cb);
            }
        }
        acc = next
            .into_iter()
            .map(|(k, v)| Ok((k, FactoredFraction::sum(&u, v)?)))
            .collect::<Result<_>>()?;
    }
    Ok(ExpansionTable {
        n: factors.iter().map(|f| f.n).sum(),
        basis: Basis::Power,
        entries: acc,
    })
}

/// Power-basis tables of `E_k(X;t)` and `H_k(X;q)`, both read off `g_k`:
/// `E_k = (-t)^k g_k(X;0,1/t)` and `H_k(X;q) = g_k(X;0,q)`.
fn deformed_power_tables(k: u32, limits: &Limits) -> Result<(ExpansionTable, ExpansionTable)> {
    let g = gn_table(k, Basis::Power, limits)?;
    let zero = FactoredFraction::zero(&qt_universe());
    let pref = qt(&format!("(-t)^{k}"));
    let mut e = BTreeMap::new();
    let mut h = BTreeMap::new();
    for (mu, c) in &g.entries {
        let ce = &c.substitute_in_place(&[("q", zero.clone()), ("t", qt("1/t"))])? * &pref;
        // q ↦ 0 first, then t ↦ q
        let ch = c
            .substitute_in_place(&[("q", zero.clone())])?
            .substitute_in_place(&[("t", qt("q"))])?;
        e.insert(mu.clone(), ce);
        h.insert(mu.clone(), ch);
    }
    Ok((
        ExpansionTable {
            n: k,
            basis: Basis::Power,
            entries: e,
        },
        ExpansionTable {
            n: k,
            basis: Basis::Power,
            entries: h,
        },
    ))
}

/// `ω_{q,t}(E_mu(X;t)) = H_mu(X;q)` on power-basis coefficients.
pub fn omega_duality_check(mu: &Partition, limits: &Limits) -> Result<bool> {
    let mut es = Vec::new();
    let mut hs = Vec::new();
    for &k in mu.parts() {
        let (e, h) = deformed_power_tables(k, limits)?;
        es.push(e);
        hs.push(h);
    }
    let lhs = omega_apply(&power_product(&es)?, OmegaRoles::QT)?;
    lhs.equals(&power_product(&hs)?)
}

/// `Σ_n q^n g_n = Π_i (1 - x_i)/(1 - t x_i) · Σ_n g_n` up to x-degree `order`.
pub fn prop1_check(n_vars: usize, order: usize, limits: &Limits) -> Result<bool> {
    let gu = graded_universe(n_vars);
    let g = gn_series(n_vars, order, limits)?;
    let lhs: Vec<FactoredFraction> = g
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            Ok(c * &FactoredFraction::from_poly(&Polynomial::var_pow(&gu, "q", k as u32)?))
        })
        .collect::<Result<_>>()?;
    let mut factors = Vec::new();
    for i in 1..=n_vars {
        factors.push(SeriesFactor::Numerator(crate::text::parse_polynomial(
            &gu,
            &format!("1 - u*x{i}"),
        )?));
        factors.push(SeriesFactor::Denominator(crate::text::parse_polynomial(
            &gu,
            &format!("1 - u*t*x{i}"),
        )?));
    }
    let rhs = series_expand(&gu, &factors, "u", order)?.try_mul(&g)?;
    series_coefficients_equal(&lhs, rhs.coefficients())
}

/// `Σ_n h_n[(q - t)/(1 - q) X] = Π_i (1 - x_i) · Σ_n g_n` up to x-degree
/// `order`, the left side expanded as `Σ_mu Z_mu(q, t, q) h_mu(X)`.
pub fn prop2_check(n_vars: usize, order: usize, limits: &Limits) -> Result<bool> {
    let gu = graded_universe(n_vars);
    let g = gn_series(n_vars, order, limits)?;
    let mut lhs = vec![FactoredFraction::one(&gu)];
    for n in 1..=order as u32 {
        let mut entries = BTreeMap::new();
        for mu in partitions_of(n) {
            let z = at_ab(&spec_Z(&mu, limits)?.value, "q", "t")?;
            entries.insert(mu, z);
        }
        let table = ExpansionTable {
            n,
            basis: Basis::Complete,
            entries,
        };
        lhs.push(table.to_symmetric(n_vars)?.to_fraction(&gu)?);
    }
    let factors = (1..=n_vars)
        .map(|i| {
            Ok(SeriesFactor::Numerator(crate::text::parse_polynomial(
                &gu,
                &format!("1 - u*x{i}"),
            )?))
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs = series_expand(&gu, &factors, "u", order)?.try_mul(&g)?;
    series_coefficients_equal(&lhs, rhs.coefficients())
}

/// `Σ_{n ≤ order} g_n u^n` with coefficients from the monomial table.
fn gn_series(n_vars: usize, order: usize, limits: &Limits) -> Result<TruncatedSeries> {
    let gu = graded_universe(n_vars);
    let coefficients = (0..=order as u32)
        .map(|n| gn_polynomial(n, n_vars, GnMethod::FromBasis, limits)?.to_fraction(&gu))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coefficients(&gu, "u", coefficients))
}

fn series_coefficients_equal(a: &[FactoredFraction], b: &[FactoredFraction]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(b) {
        if !frac_eq(x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn degree_one_tables() {
        for basis in [Basis::Power, Basis::Monomial, Basis::Complete] {
            let t = gn_table(1, basis, &lim()).unwrap();
            assert!(frac_eq(&t.entries[&p(&[1])], &qt("(1 - t)/(1 - q)")).unwrap());
        }
        let t = gn_table(1, Basis::DeformedComplete, &lim()).unwrap();
        assert!(frac_eq(&t.entries[&p(&[1])], &qt("1/(1 - q)")).unwrap());
    }

    #[test]
    fn degree_two_tables() {
        let m = gn_table(2, Basis::Monomial, &lim()).unwrap();
        assert!(frac_eq(
            &m.entries[&p(&[2])],
            &qt("(1 - t)*(1 - t*q)/((1 - q)*(1 - q^2))")
        )
        .unwrap());
        assert!(frac_eq(&m.entries[&p(&[1, 1])], &qt("((1 - t)/(1 - q))^2")).unwrap());
        let h = gn_table(2, Basis::Complete, &lim()).unwrap();
        assert!(frac_eq(&h.entries[&p(&[2])], &qt("(1 - t^2)/(1 - q^2)")).unwrap());
        assert!(frac_eq(
            &h.entries[&p(&[1, 1])],
            &qt("(1 - t)*(q - t)/((1 - q)*(1 - q^2))")
        )
        .unwrap());
    }

    #[test]
    fn gn_small() {
        let g0 = gn_polynomial(0, 2, GnMethod::FromBasis, &lim()).unwrap();
        assert!(g0
            .coefficient(&Partition::empty())
            .to_polynomial()
            .unwrap()
            .is_one());
        let g1 = gn_polynomial(1, 2, GnMethod::HeineProduct, &lim()).unwrap();
        assert_eq!(g1.coefficients().len(), 1);
        assert!(frac_eq(&g1.coefficient(&p(&[1])), &qt("(1 - t)/(1 - q)")).unwrap());
        let a = gn_polynomial(2, 2, GnMethod::FromBasis, &lim()).unwrap();
        let b = gn_polynomial(2, 2, GnMethod::HeineProduct, &lim()).unwrap();
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn six_way_small() {
        for n in 1..=3 {
            assert!(six_way_check(n, 3, &lim()).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn deformed_small() {
        let e = deformed(DeformedKind::E, 2, 1, &lim()).unwrap();
        assert!(frac_eq(&e.coefficient(&p(&[2])), &qt("t^2 - t")).unwrap());
        for n in 1..=3 {
            assert!(deformed_check(DeformedKind::E, n, 3, &lim()).unwrap());
            assert!(deformed_check(DeformedKind::H, n, 3, &lim()).unwrap());
        }
    }

    #[test]
    fn omega() {
        let g1 = omega_apply(&gn_table(1, Basis::Power, &lim()).unwrap(), OmegaRoles::QT).unwrap();
        assert!(frac_eq(&g1.entries[&p(&[1])], &qt("1")).unwrap());
        for n in 1..=4 {
            assert!(omega_gn_check(n, &lim()).unwrap());
        }
        let g3 = gn_table(3, Basis::Power, &lim()).unwrap();
        let back = omega_apply(&omega_apply(&g3, OmegaRoles::QT).unwrap(), OmegaRoles::TQ).unwrap();
        assert!(back.equals(&g3).unwrap());
        assert!(omega_apply(
            &gn_table(2, Basis::Monomial, &lim()).unwrap(),
            OmegaRoles::QT
        )
        .is_err());
        assert!(omega_duality_check(&p(&[2, 1]), &lim()).unwrap());
    }

    #[test]
    fn inverse_small() {
        let r = inverse_expansions(2, 3, &lim()).unwrap();
        assert!(r.iter().all(|(_, ok)| *ok), "{r:?}");
    }

    #[test]
    fn series_props_small() {
        assert!(prop1_check(2, 3, &lim()).unwrap());
        assert!(prop2_check(2, 3, &lim()).unwrap());
    }
}
