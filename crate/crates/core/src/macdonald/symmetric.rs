//! Symmetric polynomials on `x1..xN` stored by monomial orbit, with
//! coefficients in `Q(q, t)`.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::partition::{partitions_of, Partition};
use crate::poly::{check_universe, Monomial, Polynomial, Universe};
use crate::rational::Rational;
use crate::series::{series_expand, SeriesFactor};
use crate::specialization::qt_universe;

fn cached(key: (bool, usize)) -> Arc<Universe> {
    static CACHE: OnceLock<Mutex<HashMap<(bool, usize), Arc<Universe>>>> = OnceLock::new();
    let mut map = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("universe cache");
    map.entry(key)
        .or_insert_with(|| {
            let lead: &[&str] = if key.0 { &["q", "t", "u"] } else { &["q", "t"] };
            Universe::with_indexed(lead, &["x"], key.1)
        })
        .clone()
}

/// `{q, t, x1..xN}`
pub fn x_universe(n_vars: usize) -> Arc<Universe> {
    cached((false, n_vars))
}

/// `{q, t, u, x1..xN}`; `u` grades by total x-degree.
pub fn graded_universe(n_vars: usize) -> Arc<Universe> {
    cached((true, n_vars))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Power,
    Monomial,
    Complete,
    Elementary,
    DeformedComplete,
    DeformedElementary,
}

impl Basis {
    pub const ALL: [Basis; 6] = [
        Basis::Power,
        Basis::Monomial,
        Basis::Complete,
        Basis::Elementary,
        Basis::DeformedComplete,
        Basis::DeformedElementary,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Power => "power",
            Basis::Monomial => "monomial",
            Basis::Complete => "complete",
            Basis::Elementary => "elementary",
            Basis::DeformedComplete => "deformed-complete",
            Basis::DeformedElementary => "deformed-elementary",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Basis> {
        Ok(match s {
            "power" => Basis::Power,
            "monomial" => Basis::Monomial,
            "complete" => Basis::Complete,
            "elementary" => Basis::Elementary,
            "deformed-complete" | "deformed-h" => Basis::DeformedComplete,
            "deformed-elementary" | "deformed-e" => Basis::DeformedElementary,
            _ => return Err(Error::Usage(format!("unknown basis `{s}`"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricPolynomial {
    n_vars: usize,
    coefficients: BTreeMap<Partition, FactoredFraction>,
}

/// Indices of `q`, `t`, `x1..xN` in a universe, `None` for absent `q`/`t`.
struct Layout {
    q: Option<usize>,
    t: Option<usize>,
    x: Vec<usize>,
}

impl Layout {
    fn of(u: &Arc<Universe>, n_vars: usize) -> Result<Layout> {
        let x = (1..=n_vars)
            .map(|i| u.var_index(&format!("x{i}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Layout {
            q: u.index_of("q"),
            t: u.index_of("t"),
            x,
        })
    }
}

/// Explicit `m_mu(x1..xN)` in a universe containing the x-variables.
pub fn orbit_polynomial(u: &Arc<Universe>, n_vars: usize, mu: &Partition) -> Result<Polynomial> {
    if mu.len() > n_vars {
        return Ok(Polynomial::zero(u));
    }
    let layout = Layout::of(u, n_vars)?;
    let mut v: Vec<u32> = vec![0; n_vars - mu.len()];
    v.extend(mu.parts().iter().rev());
    let mut terms = Vec::new();
    loop {
        let mut e = vec![0u32; u.len()];
        for (i, &x) in layout.x.iter().enumerate() {
            e[x] = v[i];
        }
        terms.push((Monomial::from_exponents(&e), Rational::ONE));
        if !next_permutation(&mut v) {
            break;
        }
    }
    Ok(Polynomial::from_terms(u, terms))
}

fn distinct_rearrangements(v: &[u32]) -> usize {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in v {
        *counts.entry(e).or_default() += 1;
    }
    let fact = |n: usize| (1..=n).product::<usize>();
    counts.values().fold(fact(v.len()), |acc, &m| acc / fact(m))
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl SymmetricPolynomial {
    pub fn zero(n_vars: usize) -> Self {
        SymmetricPolynomial {
            n_vars,
            coefficients: BTreeMap::new(),
        }
    }

    /// Coefficients must live in `{q, t}`; orbits longer than `N` vanish.
    pub fn from_orbits<I>(n_vars: usize, orbits: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, FactoredFraction)>,
    {
        let qt = qt_universe();
        let mut grouped: BTreeMap<Partition, Vec<FactoredFraction>> = BTreeMap::new();
        for (mu, c) in orbits {
            check_universe(&qt, c.universe())?;
            if mu.len() <= n_vars && !c.is_zero() {
                grouped.entry(mu).or_default().push(c);
            }
        }
        let mut coefficients = BTreeMap::new();
        for (mu, cs) in grouped {
            let c = FactoredFraction::sum(&qt, cs)?;
            if !c.is_zero() {
                coefficients.insert(mu, c);
            }
        }
        Ok(SymmetricPolynomial {
            n_vars,
            coefficients,
        })
    }

    pub fn monomial(n_vars: usize, mu: &Partition) -> Self {
        Self::from_orbits(
            n_vars,
            [(mu.clone(), FactoredFraction::one(&qt_universe()))],
        )
        .expect("qt coefficient")
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn coefficients(&self) -> &BTreeMap<Partition, FactoredFraction> {
        &self.coefficients
    }

    pub fn coefficient(&self, mu: &Partition) -> FactoredFraction {
        self.coefficients
            .get(mu)
            .cloned()
            .unwrap_or_else(|| FactoredFraction::zero(&qt_universe()))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn check_alphabet(&self, other: &SymmetricPolynomial) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::Usage(format!(
                "symmetric polynomials on {} and {} variables",
                self.n_vars, other.n_vars
            )));
        }
        Ok(())
    }

    pub fn sum(n_vars: usize, items: Vec<SymmetricPolynomial>) -> Result<Self> {
        let mut all = Vec::new();
        for s in items {
            if s.n_vars != n_vars {
                return Err(Error::Usage("mixed alphabet sizes in a sum".into()));
            }
            all.extend(s.coefficients);
        }
        Self::from_orbits(n_vars, all)
    }

    pub fn try_add(&self, other: &SymmetricPolynomial) -> Result<Self> {
        self.check_alphabet(other)?;
        Self::sum(self.n_vars, vec![self.clone(), other.clone()])
    }

    pub fn scale(&self, c: &FactoredFraction) -> Result<Self> {
        self.map_coefficients(|f| f.try_mul(c))
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&FactoredFraction) -> Result<FactoredFraction>,
    {
        let mapped = self
            .coefficients
            .iter()
            .map(|(mu, c)| Ok((mu.clone(), f(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_orbits(self.n_vars, mapped)
    }

    /// Orbit-wise `frac_eq`.
    pub fn equals(&self, other: &SymmetricPolynomial) -> Result<bool> {
        self.check_alphabet(other)?;
        let keys: std::collections::BTreeSet<&Partition> = self
            .coefficients
            .keys()
            .chain(other.coefficients.keys())
            .collect();
        for mu in keys {
            if !frac_eq(&self.coefficient(mu), &other.coefficient(mu))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reads orbits off an explicit polynomial whose variables are among
    /// `q`, `t`, `x1..xN` (others must not occur). Fails if `p` is not
    /// symmetric in the x-variables.
    pub fn from_polynomial(p: &Polynomial, n_vars: usize) -> Result<Self> {
        let u = p.universe();
        let layout = Layout::of(u, n_vars)?;
        let mut by_x: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 && Some(i) != layout.q && Some(i) != layout.t && !layout.x.contains(&i) {
                    return Err(Error::Usage(format!(
                        "variable `{}` in a symmetric polynomial",
                        u.names()[i]
                    )));
                }
            }
            let xs: Vec<u32> = layout.x.iter().map(|&i| e[i]).collect();
            let qt = [layout.q.map_or(0, |i| e[i]), layout.t.map_or(0, |i| e[i])];
            by_x.entry(xs)
                .or_default()
                .push((Monomial::from_exponents(&qt), c.clone()));
        }
        let qt = qt_universe();
        let polys: BTreeMap<Vec<u32>, Polynomial> = by_x
            .into_iter()
            .map(|(k, v)| (k, Polynomial::from_terms(&qt, v)))
            .collect();
        let not_symmetric =
            || Error::InvalidValue("polynomial is not symmetric in the x-variables".into());
        let mut orbit_sizes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut orbits = Vec::new();
        for (xs, c) in &polys {
            let mut sorted = xs.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if polys.get(&sorted) != Some(c) {
                return Err(not_symmetric());
            }
            *orbit_sizes.entry(sorted.clone()).or_default() += 1;
            if &sorted == xs {
                let parts: Vec<u32> = sorted.into_iter().filter(|&e| e > 0).collect();
                orbits.push((Partition::new(parts)?, FactoredFraction::from_poly(c)));
            }
        }
        for (rep, seen) in orbit_sizes {
            if seen != distinct_rearrangements(&rep) {
                return Err(not_symmetric());
            }
        }
        Self::from_orbits(n_vars, orbits)
    }

    /// As [`Self::from_polynomial`] for a fraction whose denominator factors
    /// involve only `q` and `t`.
    pub fn from_fraction(f: &FactoredFraction, n_vars: usize) -> Result<Self> {
        let qt = qt_universe();
        let denom = f
            .denominator_factors()
            .iter()
            .map(|(p, k)| Ok((p.embed(&qt)?, *k)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidValue("denominator involves the x-variables".into()))?;
        let inv = FactoredFraction::from_parts(&qt, Rational::ONE, Vec::new(), denom)?;
        Self::from_polynomial(&f.numerator(), n_vars)?.scale(&inv)
    }

    /// `Σ coefficient · m_mu` as a fraction in `target`, which must contain
    /// `q`, `t` and the x-variables.
    pub fn to_fraction(&self, target: &Arc<Universe>) -> Result<FactoredFraction> {
        let terms = self
            .coefficients
            .iter()
            .map(|(mu, c)| {
                let m = FactoredFraction::from_poly(&orbit_polynomial(target, self.n_vars, mu)?);
                c.embed(target)?.try_mul(&m)
            })
            .collect::<Result<Vec<_>>>()?;
        FactoredFraction::sum(target, terms)
    }

    /// Explicit polynomial; fails if some coefficient is not a polynomial.
    pub fn to_polynomial(&self, target: &Arc<Universe>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(target);
        for (mu, c) in &self.coefficients {
            let c = c.to_polynomial().ok_or_else(|| {
                Error::InvalidValue(format!("coefficient of m{mu} is not a polynomial"))
            })?;
            acc = &acc + &(&c.embed(target)? * &orbit_polynomial(target, self.n_vars, mu)?);
        }
        Ok(acc)
    }
}

/// `h_k`, `e_k`, `p_k`, `H_k(X;t)` or `E_k(X;t)` on `N` variables for
/// `k = 0..=max_k`, as explicit polynomials in `{q, t, x1..xN}`.
pub fn single_part_generators(basis: Basis, n_vars: usize, max_k: u32) -> Result<Vec<Polynomial>> {
    let target = x_universe(n_vars);
    if basis == Basis::Power {
        let mut out = vec![Polynomial::one(&target)];
        for k in 1..=max_k {
            let p = (1..=n_vars).try_fold(Polynomial::zero(&target), |acc, i| {
                Ok::<_, Error>(&acc + &Polynomial::var_pow(&target, &format!("x{i}"), k)?)
            })?;
            out.push(p);
        }
        return Ok(out);
    }
    let gu = graded_universe(n_vars);
    let lin = |s: &str| crate::text::parse_polynomial(&gu, s);
    let mut factors = Vec::new();
    for i in 1..=n_vars {
        match basis {
            Basis::Complete | Basis::Monomial => {
                factors.push(SeriesFactor::Denominator(lin(&format!("1 - u*x{i}"))?))
            }
            Basis::Elementary => {
                factors.push(SeriesFactor::Numerator(lin(&format!("1 + u*x{i}"))?))
            }
            Basis::DeformedComplete => {
                factors.push(SeriesFactor::Numerator(lin(&format!("1 - u*t*x{i}"))?));
                factors.push(SeriesFactor::Denominator(lin(&format!("1 - u*x{i}"))?));
            }
            Basis::DeformedElementary => {
                factors.push(SeriesFactor::Numerator(lin(&format!("1 + u*x{i}"))?));
                factors.push(SeriesFactor::Denominator(lin(&format!("1 + u*t*x{i}"))?));
            }
            Basis::Power => unreachable!(),
        }
    }
    let s = series_expand(&gu, &factors, "u", max_k as usize)?;
    s.coefficients()
        .iter()
        .map(|c| {
            c.to_polynomial()
                .ok_or_else(|| Error::Internal("generator coefficient is not a polynomial".into()))?
                .embed(&target)
        })
        .collect()
}

/// Every basis element of degree `n` on `N` variables.
pub fn basis_elements(
    basis: Basis,
    n: u32,
    n_vars: usize,
) -> Result<BTreeMap<Partition, SymmetricPolynomial>> {
    let mus = if n == 0 {
        vec![Partition::empty()]
    } else {
        partitions_of(n)
    };
    if basis == Basis::Monomial {
        return Ok(mus
            .into_iter()
            .map(|mu| {
                let m = SymmetricPolynomial::monomial(n_vars, &mu);
                (mu, m)
            })
            .collect());
    }
    let gens = single_part_generators(basis, n_vars, n)?;
    let target = x_universe(n_vars);
    mus.into_iter()
        .map(|mu| {
            let p = Polynomial::product(&target, mu.parts().iter().map(|&k| &gens[k as usize]));
            Ok((mu, SymmetricPolynomial::from_polynomial(&p, n_vars)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_fraction, parse_polynomial};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn orbit_extraction() {
        let u = x_universe(2);
        let poly = parse_polynomial(&u, "t*x1^2*x2 + t*x1*x2^2 + 3*x1 + 3*x2").unwrap();
        let s = SymmetricPolynomial::from_polynomial(&poly, 2).unwrap();
        assert_eq!(s.coefficients().len(), 2);
        assert_eq!(
            s.coefficient(&p(&[2, 1]))
                .to_polynomial()
                .unwrap()
                .to_string(),
            "t"
        );
        assert_eq!(s.to_polynomial(&u).unwrap(), poly);
        let bad = parse_polynomial(&u, "x1").unwrap();
        assert!(SymmetricPolynomial::from_polynomial(&bad, 2).is_err());
    }

    #[test]
    fn orbit_polynomials() {
        let u = x_universe(3);
        assert_eq!(orbit_polynomial(&u, 3, &p(&[2, 1])).unwrap().len(), 6);
        assert_eq!(orbit_polynomial(&u, 3, &p(&[1, 1])).unwrap().len(), 3);
        assert!(orbit_polynomial(&u, 3, &p(&[1, 1, 1, 1]))
            .unwrap()
            .is_zero());
        assert!(orbit_polynomial(&u, 3, &Partition::empty())
            .unwrap()
            .is_one());
    }

    #[test]
    fn generators_single_variable() {
        // E_2(x; t) = (t^2 - t) x^2 for one variable
        let e = single_part_generators(Basis::DeformedElementary, 1, 2).unwrap();
        assert_eq!(
            e[2],
            parse_polynomial(&x_universe(1), "t^2*x1^2 - t*x1^2").unwrap()
        );
        let h = single_part_generators(Basis::Complete, 2, 2).unwrap();
        assert_eq!(
            h[2],
            parse_polynomial(&x_universe(2), "x1^2 + x1*x2 + x2^2").unwrap()
        );
    }

    #[test]
    fn fraction_round_trip() {
        let u = x_universe(2);
        let f = parse_fraction(&u, "(1 - t)/(1 - q) * (x1 + x2)").unwrap();
        let s = SymmetricPolynomial::from_fraction(&f, 2).unwrap();
        assert!(frac_eq(&s.to_fraction(&u).unwrap(), &f).unwrap());
        let g = parse_fraction(&u, "1/(1 - x1)").unwrap();
        assert!(SymmetricPolynomial::from_fraction(&g, 2).is_err());
    }
}
