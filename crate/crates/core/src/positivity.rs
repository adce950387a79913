//! The positivity polynomial `H_mu(q, t)`.
//!
//! `P_mu(q)` is the product of `[s]_q = 1 + q + ... + q^{s-1}` over the part
//! sums `s` of all nonempty sets of positions of `mu`. Multiplying the
//! `(1, t)` specialization by `P_mu` clears every denominator, and each
//! derangement term becomes a product of homogeneous sums
//! `(x^c - y^c)/(x - y)` and leftover `[s]_q` factors, all with nonnegative
//! coefficients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::partition::{derangements_capped, Partition};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::specialization::{m_one_minus_t, qt_universe, Limits};

/// Largest partition length: `P_mu` has `2^l - 1` factors.
pub const DEFAULT_LENGTH_CAP: usize = 6;

fn qt_monomial(q: u32, t: u32) -> Monomial {
    Monomial::from_exponents(&[q, t])
}

/// `Σ_{j < c} x^j y^{c-1-j}` with `x = q^step`, `y = t`.
fn homogeneous_sum(step: u32, c: u32) -> Polynomial {
    Polynomial::from_terms(
        &qt_universe(),
        (0..c).map(|j| (qt_monomial(step * j, c - 1 - j), Rational::ONE)),
    )
}

/// `[s]_q` in `{q, t}`.
pub fn q_integer(s: u32) -> Polynomial {
    Polynomial::from_terms(
        &qt_universe(),
        (0..s).map(|j| (qt_monomial(j, 0), Rational::ONE)),
    )
}

/// `[s]_t` in `{q, t}`.
fn t_integer(s: u32) -> Polynomial {
    Polynomial::from_terms(
        &qt_universe(),
        (0..s).map(|j| (qt_monomial(0, j), Rational::ONE)),
    )
}

/// Part sums of every nonempty position subset, indexed by bitmask.
fn subset_sums(mu: &Partition) -> Vec<u32> {
    let l = mu.len();
    (0..1u32 << l)
        .map(|s| {
            (0..l)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| mu.parts()[i])
                .sum()
        })
        .collect()
}

#[allow(non_snake_case)]
pub fn P_poly(mu: &Partition, length_cap: usize) -> Result<Polynomial> {
    Error::check_cap("partition length", mu.len(), length_cap)?;
    let sums = subset_sums(mu);
    let factors: Vec<Polynomial> = sums[1..].iter().map(|&s| q_integer(s)).collect();
    Ok(Polynomial::product(&qt_universe(), factors.iter()))
}

#[allow(non_snake_case)]
pub fn H_poly(mu: &Partition, limits: &Limits, length_cap: usize) -> Result<Polynomial> {
    Error::check_cap("partition length", mu.len(), length_cap)?;
    let u = qt_universe();
    let l = mu.len();
    let sums = subset_sums(mu);
    let full = (1u32 << l) - 1;
    let mut total = Polynomial::zero(&u);
    for c in derangements_capped(mu, limits.max_length)? {
        let mut used = vec![false; 1 << l];
        let mut term = Polynomial::one(&u);
        for i in 1..=l {
            term = &term * &homogeneous_sum((l - i) as u32, c.entries()[i - 1]);
            let target = c.prefix(i);
            let pick = (1..=full)
                .find(|&s| {
                    !used[s as usize] && s.count_ones() as usize == i && sums[s as usize] == target
                })
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "no unused subset of {mu} with {i} parts summing to {target}"
                    ))
                })?;
            used[pick as usize] = true;
        }
        for s in 1..=full {
            if !used[s as usize] {
                term = &term * &q_integer(sums[s as usize]);
            }
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `q^{|mu| - l} H(q, 1/q)`; an error if a negative power of `q` appears.
#[allow(non_snake_case)]
pub fn hbar(mu: &Partition, h: &Polynomial) -> Result<Polynomial> {
    let shift = mu.weight() - mu.len() as u32;
    let mut terms = Vec::with_capacity(h.len());
    for (m, c) in h.terms() {
        let (a, b) = (m.exponents()[0], m.exponents()[1]);
        if b > a + shift {
            return Err(Error::Internal(format!(
                "q^{a} t^{b} maps to a negative power of q"
            )));
        }
        terms.push((qt_monomial(a + shift - b, 0), c.clone()));
    }
    Ok(Polynomial::from_terms(h.universe(), terms))
}

/// The two-part closed form, `n > k >= 1`.
#[allow(non_snake_case)]
pub fn H_nk_closed(n: u32, k: u32) -> Result<Polynomial> {
    if n == k {
        return Err(Error::NotApplicable(
            "the closed form needs two distinct parts".into(),
        ));
    }
    if k == 0 || n < k {
        return Err(Error::InvalidValue(format!(
            "need n > k >= 1, got n = {n}, k = {k}"
        )));
    }
    let first = &(&homogeneous_sum(1, n) * &t_integer(k)) * &q_integer(k);
    let second = &(&homogeneous_sum(1, k) * &t_integer(n)) * &q_integer(n);
    Ok(&first + &second)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PositivityReport {
    pub partition: Partition,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "Hbar")]
    pub hbar: String,
    pub all_coefficients_nonnegative_integers: bool,
    pub hbar_is_polynomial: bool,
    pub identity_holds: bool,
    pub prop5_consequence_holds: bool,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.all_coefficients_nonnegative_integers
            && self.hbar_is_polynomial
            && self.identity_holds
            && self.prop5_consequence_holds
    }
}

/// Builds `P`, `H`, `Hbar` and checks the factorization
/// `Z_mu(1, t, q) = (l!/Π m_i!) Π_i (q^{i-1} - t)/(1 - q^i) · H / Hbar`
/// together with `(l!/Π m_i!) P = Π_i [i]_q · Hbar`.
pub fn thm8_check(mu: &Partition, limits: &Limits, length_cap: usize) -> Result<PositivityReport> {
    let u = qt_universe();
    let p = P_poly(mu, length_cap)?;
    let h = H_poly(mu, limits, length_cap)?;
    let hb = hbar(mu, &h);
    let l = mu.len() as u32;
    let count = mu.rearrangement_count();
    let (identity_holds, prop5_consequence_holds) = match &hb {
        Ok(hb) if !hb.is_zero() => {
            let lhs = m_one_minus_t(mu, limits)?;
            let t = Polynomial::var(&u, "t")?;
            let numer = (1..=l).map(|i| (&Polynomial::var_pow(&u, "q", i - 1).expect("q") - &t, 1));
            let denom = (1..=l).map(|i| {
                (
                    &Polynomial::one(&u) - &Polynomial::var_pow(&u, "q", i).expect("q"),
                    1,
                )
            });
            let prefactor = FactoredFraction::from_parts(&u, count.clone(), numer, denom)?;
            let rhs =
                &(&prefactor * &FactoredFraction::from_poly(&h)) / &FactoredFraction::from_poly(hb);
            let qints: Vec<Polynomial> = (1..=l).map(q_integer).collect();
            let right = &Polynomial::product(&u, qints.iter()) * hb;
            (frac_eq(&lhs, &rhs)?, p.scale(&count) == right)
        }
        _ => (false, false),
    };
    Ok(PositivityReport {
        partition: mu.clone(),
        p: p.to_string(),
        h: h.to_string(),
        hbar: hb.as_ref().map(|p| p.to_string()).unwrap_or_default(),
        all_coefficients_nonnegative_integers: h.coefficients_are_nonnegative_integers(),
        hbar_is_polynomial: hb.is_ok(),
        identity_holds,
        prop5_consequence_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn qt(s: &str) -> Polynomial {
        parse_polynomial(&qt_universe(), s).unwrap()
    }

    #[test]
    fn p_examples() {
        assert_eq!(P_poly(&p(&[2, 1]), 6).unwrap(), qt("(1 + q)*(1 + q + q^2)"));
        assert_eq!(P_poly(&p(&[4]), 6).unwrap(), qt("1 + q + q^2 + q^3"));
        assert_eq!(P_poly(&p(&[1, 1]), 6).unwrap(), qt("1 + q"));
        assert!(P_poly(&p(&[1; 7]), 6).is_err());
    }

    #[test]
    fn h_examples() {
        let lim = Limits::default();
        assert_eq!(
            H_poly(&p(&[2, 1]), &lim, 6).unwrap(),
            qt("1 + 2*q + 2*t + q*t")
        );
        assert_eq!(H_nk_closed(2, 1).unwrap(), qt("1 + 2*q + 2*t + q*t"));
        assert_eq!(H_poly(&p(&[3]), &lim, 6).unwrap(), qt("1 + t + t^2"));
        assert_eq!(H_poly(&p(&[1, 1]), &lim, 6).unwrap(), qt("1"));
        assert_eq!(
            H_poly(&p(&[3, 1]), &lim, 6).unwrap(),
            H_nk_closed(3, 1).unwrap()
        );
        assert!(matches!(H_nk_closed(2, 2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn hbar_example() {
        let h = qt("1 + 2*q + 2*t + q*t");
        // q (1 + 2q + 2/q + 1) = 2 + 2q + 2q^2
        assert_eq!(hbar(&p(&[2, 1]), &h).unwrap(), qt("2 + 2*q + 2*q^2"));
    }

    #[test]
    fn reports() {
        for mu in [
            p(&[2, 1]),
            p(&[2, 2]),
            p(&[3]),
            p(&[1, 1, 1]),
            p(&[3, 2, 1]),
        ] {
            let r = thm8_check(&mu, &Limits::default(), 6).unwrap();
            assert!(r.passed(), "{mu}: {r:?}");
        }
    }
}
