//! `m_mu[(a - b)/(1 - q)]` in closed form and by brute force.
//!
//! Two closed forms sum over the distinct rearrangements `c` of `mu`:
//!
//! * `Z_mu = Σ_c Π_i (a^{c_i} q^{[c_{i-1}]} - b^{c_i}) / (1 - q^{[c_i]})`
//! * `W_mu = Σ_c Π_i (a^{c_i} q^{(l-i) c_i} - b^{c_i}) / (1 - q^{[c_i]})`
//!
//! where `[c_i]` is the i-th prefix sum. The oracles expand `m_mu` in power
//! sums through the cycle structure of `S_l`, or evaluate it directly on
//! the finite alphabet `{1, q, ..., q^{N-1}}`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::partition::{derangements_capped, permutations_with_cycles, Partition};
use crate::poly::{Polynomial, Universe};
use crate::rational::Rational;

pub fn abq_universe() -> Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| Universe::new(["a", "b", "q"])).clone()
}

pub fn qt_universe() -> Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| Universe::new(["q", "t"])).clone()
}

/// Resource caps for the derangement and permutation sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_length: usize,
    pub max_permutation: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_length: 8,
            max_permutation: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Elementary,
    Complete,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Theorem1,
    Theorem3,
    OraclePowersum,
    OracleDirect(usize),
    Generator(GeneratorKind),
}

impl Formula {
    pub fn tag(&self) -> String {
        match self {
            Formula::Theorem1 => "theorem1".into(),
            Formula::Theorem3 => "theorem3".into(),
            Formula::OraclePowersum => "oracle-powersum".into(),
            Formula::OracleDirect(n) => format!("oracle-direct({n})"),
            Formula::Generator(GeneratorKind::Elementary) => "generator-elementary".into(),
            Formula::Generator(GeneratorKind::Complete) => "generator-complete".into(),
            Formula::Generator(GeneratorKind::Power) => "generator-power".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpecResult {
    pub partition: Partition,
    pub value: FactoredFraction,
    pub formula: Formula,
}

impl SpecResult {
    /// Every numerator term has joint degree `|mu|` in `(a, b)` and no
    /// denominator factor involves `a` or `b`. Oracle-direct values are
    /// evaluated at `a = 1, b = q^N` and are not checked.
    pub fn is_homogeneous(&self) -> bool {
        let u = self.value.universe();
        let (ia, ib) = match (u.index_of("a"), u.index_of("b")) {
            (Some(a), Some(b)) => (a, b),
            _ => return false,
        };
        let w = self.partition.weight();
        let free_of_ab = |p: &Polynomial| p.degree_in(ia) == 0 && p.degree_in(ib) == 0;
        self.value
            .denominator_factors()
            .iter()
            .all(|(p, _)| free_of_ab(p))
            && self
                .value
                .numerator()
                .terms()
                .iter()
                .all(|(m, _)| m.exponents()[ia] + m.exponents()[ib] == w)
    }
}

fn poly(u: &Arc<Universe>, terms: &[(&str, u32)]) -> Polynomial {
    let mut p = Polynomial::one(u);
    for (v, e) in terms {
        p = &p * &Polynomial::var_pow(u, v, *e).expect("variable in universe");
    }
    p
}

/// `a^i q^j - b^k`
fn binomial(u: &Arc<Universe>, a_exp: u32, q_exp: u32, b_exp: u32) -> Polynomial {
    &poly(u, &[("a", a_exp), ("q", q_exp)]) - &poly(u, &[("b", b_exp)])
}

/// `1 - q^k`
pub(crate) fn one_minus_q(u: &Arc<Universe>, k: u32) -> Polynomial {
    &Polynomial::one(u) - &Polynomial::var_pow(u, "q", k).expect("q in universe")
}

fn closed_form<F>(mu: &Partition, limits: &Limits, numerator_q_exp: F) -> Result<FactoredFraction>
where
    F: Fn(&crate::partition::Derangement, usize) -> u32,
{
    let u = abq_universe();
    let l = mu.len();
    let terms = derangements_capped(mu, limits.max_length)?
        .iter()
        .map(|c| {
            let numer = (1..=l).map(|i| {
                let ci = c.entries()[i - 1];
                (binomial(&u, ci, numerator_q_exp(c, i), ci), 1)
            });
            let denom = (1..=l).map(|i| (one_minus_q(&u, c.prefix(i)), 1));
            FactoredFraction::from_parts(&u, Rational::ONE, numer, denom)
        })
        .collect::<Result<Vec<_>>>()?;
    FactoredFraction::sum(&u, terms)
}

/// `Z_mu(a, b, q)`: the prefix-sum closed form.
#[allow(non_snake_case)]
pub fn spec_Z(mu: &Partition, limits: &Limits) -> Result<SpecResult> {
    let value = closed_form(mu, limits, |c, i| c.prefix(i - 1))?;
    Ok(SpecResult {
        partition: mu.clone(),
        value,
        formula: Formula::Theorem1,
    })
}

/// `W_mu(a, b, q)`: the `(l - i) c_i` closed form.
#[allow(non_snake_case)]
pub fn spec_W(mu: &Partition, limits: &Limits) -> Result<SpecResult> {
    let l = mu.len() as u32;
    let value = closed_form(mu, limits, |c, i| (l - i as u32) * c.entries()[i - 1])?;
    Ok(SpecResult {
        partition: mu.clone(),
        value,
        formula: Formula::Theorem3,
    })
}

/// Specializations of `e_n`, `h_n`, `p_n` on `(a - b)/(1 - q)`.
pub fn spec_generator(kind: GeneratorKind, n: u32) -> Result<SpecResult> {
    if n == 0 {
        return Err(Error::InvalidValue(
            "generator degree must be at least 1".into(),
        ));
    }
    let u = abq_universe();
    let (partition, numer): (Partition, Vec<Polynomial>) = match kind {
        GeneratorKind::Elementary => (
            Partition::new(vec![1; n as usize])?,
            (1..=n).map(|i| binomial(&u, 1, i - 1, 1)).collect(),
        ),
        GeneratorKind::Complete => (
            Partition::new(vec![n])?,
            (1..=n)
                .map(|i| &poly(&u, &[("a", 1)]) - &poly(&u, &[("b", 1), ("q", i - 1)]))
                .collect(),
        ),
        GeneratorKind::Power => (Partition::new(vec![n])?, vec![binomial(&u, n, 0, n)]),
    };
    let denom: Vec<Polynomial> = match kind {
        GeneratorKind::Power => vec![one_minus_q(&u, n)],
        _ => (1..=n).map(|i| one_minus_q(&u, i)).collect(),
    };
    let value = FactoredFraction::from_parts(
        &u,
        Rational::ONE,
        numer.into_iter().map(|p| (p, 1)),
        denom.into_iter().map(|p| (p, 1)),
    )?;
    Ok(SpecResult {
        partition,
        value,
        formula: Formula::Generator(kind),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Powersum,
    Direct(usize),
}

/// Brute-force values of `m_mu` on the alphabet.
pub fn spec_oracle(mu: &Partition, mode: OracleMode, limits: &Limits) -> Result<SpecResult> {
    match mode {
        OracleMode::Powersum => powersum_oracle(mu, limits),
        OracleMode::Direct(n) => direct_oracle(mu, n),
    }
}

/// `(Π m_i!) m_mu = Σ_σ (-1)^{l - #cycles} Π_γ p_{s_γ}`, with `s_γ` the sum
/// of the parts indexed by the cycle, and `p_s ↦ (a^s - b^s)/(1 - q^s)`.
fn powersum_oracle(mu: &Partition, limits: &Limits) -> Result<SpecResult> {
    let u = abq_universe();
    let parts = mu.parts();
    let mut grouped: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for sigma in permutations_with_cycles(mu.len(), limits.max_permutation)? {
        let mut sums: Vec<u32> = sigma
            .cycles()
            .iter()
            .map(|cyc| cyc.iter().map(|&j| parts[j - 1]).sum())
            .collect();
        sums.sort_unstable();
        *grouped.entry(sums).or_insert(0) += sigma.sign();
    }
    let terms = grouped
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(sums, c)| {
            FactoredFraction::from_parts(
                &u,
                Rational::from_integer(c),
                sums.iter().map(|&s| (binomial(&u, s, 0, s), 1)),
                sums.iter().map(|&s| (one_minus_q(&u, s), 1)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let value =
        FactoredFraction::sum(&u, terms)?.scale(&mu.multiplicity_factorial_product().recip());
    Ok(SpecResult {
        partition: mu.clone(),
        value,
        formula: Formula::OraclePowersum,
    })
}

/// `m_mu(1, q, ..., q^{N-1})` by summing every distinct exponent vector.
fn direct_oracle(mu: &Partition, n: usize) -> Result<SpecResult> {
    if n < mu.len() {
        return Err(Error::Usage(format!(
            "direct oracle needs N >= l(mu) = {}, got {n}",
            mu.len()
        )));
    }
    let u = abq_universe();
    let mut v: Vec<u32> = vec![0; n - mu.len()];
    v.extend(mu.parts().iter().rev());
    v.sort_unstable();
    let q_idx = u.index_of("q").expect("q");
    let mut terms = Vec::new();
    loop {
        let e: u32 = v.iter().enumerate().map(|(i, &x)| i as u32 * x).sum();
        terms.push((crate::poly::Monomial::var(u.len(), q_idx, e), Rational::ONE));
        if !next_perm(&mut v) {
            break;
        }
    }
    let value = FactoredFraction::from_poly(&Polynomial::from_terms(&u, terms));
    Ok(SpecResult {
        partition: mu.clone(),
        value,
        formula: Formula::OracleDirect(n),
    })
}

fn next_perm(v: &mut [u32]) -> bool {
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

/// Evaluates an `{a, b, q}` value at `a`, `b` given as expressions in `{q, t}`.
pub fn at_ab(value: &FactoredFraction, a: &str, b: &str) -> Result<FactoredFraction> {
    let qt = qt_universe();
    let a = crate::text::parse_fraction(&qt, a)?;
    let b = crate::text::parse_fraction(&qt, b)?;
    value.substitute(&qt, &[("a", a), ("b", b)])
}

/// `m_mu[(1 - t)/(1 - q)]`, i.e. `Z_mu(1, t, q)` in `{q, t}`.
pub fn m_one_minus_t(mu: &Partition, limits: &Limits) -> Result<FactoredFraction> {
    at_ab(&spec_Z(mu, limits)?.value, "1", "t")
}

fn qt_poly(s: &str) -> Polynomial {
    crate::text::parse_polynomial(&qt_universe(), s).expect("well-formed literal")
}

/// `(1 - q^{|mu|}) Z_mu = Σ_i (a^i q^{|mu| - i} - b^i) Z_{mu \ i}`
pub fn check_prop3(mu: &Partition, limits: &Limits) -> Result<bool> {
    let u = abq_universe();
    let w = mu.weight();
    let lhs = &FactoredFraction::from_poly(&one_minus_q(&u, w)) * &spec_Z(mu, limits)?.value;
    let terms = mu
        .distinct_parts()
        .into_iter()
        .map(|i| {
            let rest = mu.remove_part(i).expect("part present");
            Ok(&FactoredFraction::from_poly(&binomial(&u, i, w - i, i))
                * &spec_Z(&rest, limits)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    frac_eq(&lhs, &FactoredFraction::sum(&u, terms)?)
}

/// `(1 - q^{|mu|}) W_mu(a, b, q) = Σ_i (a^i - b^i) W_{mu \ i}(qa, b, q)`
pub fn check_prop4(mu: &Partition, limits: &Limits) -> Result<bool> {
    let u = abq_universe();
    let w = mu.weight();
    let lhs = &FactoredFraction::from_poly(&one_minus_q(&u, w)) * &spec_W(mu, limits)?.value;
    let qa = FactoredFraction::from_poly(&poly(&u, &[("q", 1), ("a", 1)]));
    let terms = mu
        .distinct_parts()
        .into_iter()
        .map(|i| {
            let rest = mu.remove_part(i).expect("part present");
            let shifted = spec_W(&rest, limits)?
                .value
                .substitute_in_place(&[("a", qa.clone())])?;
            Ok(&FactoredFraction::from_poly(&binomial(&u, i, 0, i)) * &shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    frac_eq(&lhs, &FactoredFraction::sum(&u, terms)?)
}

/// `(1 - q^{|mu|}) m_mu = Σ_i (q^{|mu| - i} - t^i) m_{mu \ i}` on `(1 - t)/(1 - q)`.
pub fn check_thm2(mu: &Partition, limits: &Limits) -> Result<bool> {
    let u = qt_universe();
    let w = mu.weight();
    let lhs =
        &FactoredFraction::from_poly(&qt_poly(&format!("1 - q^{w}"))) * &m_one_minus_t(mu, limits)?;
    let terms = mu
        .distinct_parts()
        .into_iter()
        .map(|i| {
            let rest = mu.remove_part(i).expect("part present");
            let c = qt_poly(&format!("q^{} - t^{i}", w - i));
            Ok(&FactoredFraction::from_poly(&c) * &m_one_minus_t(&rest, limits)?)
        })
        .collect::<Result<Vec<_>>>()?;
    frac_eq(&lhs, &FactoredFraction::sum(&u, terms)?)
}

/// `(1 - q^{|mu|}) m_mu[(1-t)/(1-q)] = Σ_i (1 - t^i) m_{mu \ i}[(q-t)/(1-q)]`
pub fn check_thm4(mu: &Partition, limits: &Limits) -> Result<bool> {
    let u = qt_universe();
    let w = mu.weight();
    let lhs =
        &FactoredFraction::from_poly(&qt_poly(&format!("1 - q^{w}"))) * &m_one_minus_t(mu, limits)?;
    let terms = mu
        .distinct_parts()
        .into_iter()
        .map(|i| {
            let rest = mu.remove_part(i).expect("part present");
            let shifted = at_ab(&spec_Z(&rest, limits)?.value, "q", "t")?;
            Ok(&FactoredFraction::from_poly(&qt_poly(&format!("1 - t^{i}"))) * &shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    frac_eq(&lhs, &FactoredFraction::sum(&u, terms)?)
}

/// `Z_mu` at `a = 1, b = q^N` against the direct evaluation on `{1, ..., q^{N-1}}`.
pub fn check_evaluation(mu: &Partition, n: usize, limits: &Limits) -> Result<bool> {
    let u = abq_universe();
    let bq = FactoredFraction::from_poly(&Polynomial::var_pow(&u, "q", n as u32)?);
    let z = spec_Z(mu, limits)?
        .value
        .substitute_in_place(&[("a", FactoredFraction::one(&u)), ("b", bq)])?;
    frac_eq(&z, &spec_oracle(mu, OracleMode::Direct(n), limits)?.value)
}

/// `e_k` at `a = 1, b = q^N` against `q^{k(k-1)/2}` times the Gauss polynomial.
pub fn check_gauss(k: u32, n: u32) -> Result<bool> {
    let u = abq_universe();
    let bq = FactoredFraction::from_poly(&Polynomial::var_pow(&u, "q", n)?);
    let e = spec_generator(GeneratorKind::Elementary, k)?
        .value
        .substitute_in_place(&[("a", FactoredFraction::one(&u)), ("b", bq)])?;
    let gauss = FactoredFraction::from_parts(
        &u,
        Rational::ONE,
        std::iter::once((
            Polynomial::var_pow(&u, "q", k * (k.saturating_sub(1)) / 2)?,
            1,
        ))
        .chain((1..=k).map(|i| (one_minus_q(&u, n + 1 - i), 1))),
        (1..=k).map(|i| (one_minus_q(&u, i), 1)),
    )?;
    frac_eq(&e, &gauss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn abq(s: &str) -> FactoredFraction {
        parse_fraction(&abq_universe(), s).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn z_examples() {
        for n in 1..=5 {
            let z = spec_Z(&p(&[n]), &lim()).unwrap();
            assert!(frac_eq(&z.value, &abq(&format!("(a^{n} - b^{n})/(1 - q^{n})"))).unwrap());
        }
        let z11 = spec_Z(&p(&[1, 1]), &lim()).unwrap();
        assert!(frac_eq(&z11.value, &abq("(a - b)*(a*q - b)/((1 - q)*(1 - q^2))")).unwrap());
        let z21 = spec_Z(&p(&[2, 1]), &lim()).unwrap();
        let by_hand = abq("(a^2 - b^2)*(a*q^2 - b)/((1 - q^2)*(1 - q^3)) + (a - b)*(a^2*q - b^2)/((1 - q)*(1 - q^3))");
        assert!(frac_eq(&z21.value, &by_hand).unwrap());
    }

    #[test]
    fn w_examples() {
        let w = spec_W(&p(&[4]), &lim()).unwrap();
        assert!(frac_eq(&w.value, &abq("(a^4 - b^4)/(1 - q^4)")).unwrap());
        let w11 = spec_W(&p(&[1, 1]), &lim()).unwrap();
        assert!(frac_eq(&w11.value, &abq("(a*q - b)*(a - b)/((1 - q)*(1 - q^2))")).unwrap());
        let w21 = spec_W(&p(&[2, 1]), &lim()).unwrap();
        assert!(frac_eq(&w21.value, &spec_Z(&p(&[2, 1]), &lim()).unwrap().value).unwrap());
    }

    #[test]
    fn generator_examples() {
        let u = abq_universe();
        let e2 = spec_generator(GeneratorKind::Elementary, 2).unwrap();
        let at = e2
            .value
            .substitute_in_place(&[("a", abq("1")), ("b", abq("q^3"))])
            .unwrap();
        assert!(frac_eq(&at, &abq("q + q^2 + q^3")).unwrap());

        for n in 1..=5 {
            let h = spec_generator(GeneratorKind::Complete, n).unwrap().value;
            let e = spec_generator(GeneratorKind::Elementary, n).unwrap().value;
            let swapped = e
                .substitute(&u, &[("a", abq("b")), ("b", abq("a"))])
                .unwrap()
                .scale(&Rational::from_integer(if n % 2 == 0 { 1 } else { -1 }));
            assert!(frac_eq(&h, &swapped).unwrap(), "n = {n}");
        }
        let p3 = spec_generator(GeneratorKind::Power, 3).unwrap();
        assert!(frac_eq(&p3.value, &abq("(a^3 - b^3)/(1 - q^3)")).unwrap());
        assert!(spec_generator(GeneratorKind::Power, 0).is_err());
    }

    #[test]
    fn generators_are_the_extreme_monomials() {
        for n in 1..=5u32 {
            let e = spec_generator(GeneratorKind::Elementary, n).unwrap().value;
            let z = spec_Z(&p(&vec![1; n as usize]), &lim()).unwrap().value;
            assert!(frac_eq(&e, &z).unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let ps = spec_oracle(&p(&[2, 1]), OracleMode::Powersum, &lim()).unwrap();
        let hand = abq("(a^2 - b^2)*(a - b)/((1 - q^2)*(1 - q)) - (a^3 - b^3)/(1 - q^3)");
        assert!(frac_eq(&ps.value, &hand).unwrap());
        let d = spec_oracle(&p(&[1]), OracleMode::Direct(3), &lim()).unwrap();
        assert!(frac_eq(&d.value, &abq("1 + q + q^2")).unwrap());
        let d = spec_oracle(&p(&[2, 1]), OracleMode::Direct(2), &lim()).unwrap();
        assert!(frac_eq(&d.value, &abq("q + q^2")).unwrap());
        assert!(spec_oracle(&p(&[1, 1, 1]), OracleMode::Direct(2), &lim()).is_err());
    }

    #[test]
    fn homogeneity() {
        for mu in crate::partition::partitions_up_to(5) {
            assert!(spec_Z(&mu, &lim()).unwrap().is_homogeneous());
            assert!(spec_W(&mu, &lim()).unwrap().is_homogeneous());
            assert!(spec_oracle(&mu, OracleMode::Powersum, &lim())
                .unwrap()
                .is_homogeneous());
        }
    }

    #[test]
    fn caps_are_errors() {
        let tight = Limits {
            max_length: 2,
            max_permutation: 2,
        };
        assert!(matches!(
            spec_Z(&p(&[1, 1, 1]), &tight),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            spec_oracle(&p(&[1, 1, 1]), OracleMode::Powersum, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn recurrences_small() {
        for mu in crate::partition::partitions_up_to(5) {
            assert!(check_prop3(&mu, &lim()).unwrap(), "prop3 {mu}");
            assert!(check_prop4(&mu, &lim()).unwrap(), "prop4 {mu}");
            assert!(check_thm2(&mu, &lim()).unwrap(), "thm2 {mu}");
            assert!(check_thm4(&mu, &lim()).unwrap(), "thm4 {mu}");
        }
    }

    #[test]
    fn gauss_small() {
        for n in 1..=4 {
            for k in 1..=n {
                assert!(check_gauss(k, n).unwrap());
            }
        }
    }
}
