//! Truncated power series in one distinguished variable, with exact
//! rational-function coefficients in the remaining variables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fraction::FactoredFraction;
use crate::poly::{check_universe, Monomial, Polynomial, Universe};
use crate::rational::Rational;

/// One factor of a product to be expanded.
#[derive(Debug, Clone)]
pub enum SeriesFactor {
    Numerator(Polynomial),
    /// Must have a nonzero constant term in the expansion variable.
    Denominator(Polynomial),
    /// The infinite ratio `Π_{j ≥ 0} (1 - alpha q^j v) / (1 - beta q^j v)` in
    /// the expansion variable `v`. Coefficients follow from the q-difference
    /// equation `F(v)(1 - beta v) = (1 - alpha v) F(qv)`.
    QRatio {
        alpha: Polynomial,
        beta: Polynomial,
        q: String,
    },
}

#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    variable: String,
    universe: Arc<Universe>,
    coefficients: Vec<FactoredFraction>,
}

impl TruncatedSeries {
    pub fn one(universe: &Arc<Universe>, variable: &str, order: usize) -> Self {
        let mut coefficients = vec![FactoredFraction::zero(universe); order + 1];
        coefficients[0] = FactoredFraction::one(universe);
        TruncatedSeries {
            variable: variable.to_string(),
            universe: universe.clone(),
            coefficients,
        }
    }

    pub fn from_coefficients(
        universe: &Arc<Universe>,
        variable: &str,
        coefficients: Vec<FactoredFraction>,
    ) -> Self {
        assert!(!coefficients.is_empty());
        TruncatedSeries {
            variable: variable.to_string(),
            universe: universe.clone(),
            coefficients,
        }
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Truncation order: the highest exponent kept.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[FactoredFraction] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> &FactoredFraction {
        &self.coefficients[k]
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let mut s = self.clone();
        s.coefficients.truncate(order + 1);
        s
    }

    pub fn try_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        check_universe(&self.universe, &other.universe)?;
        if self.variable != other.variable {
            return Err(Error::Usage(format!(
                "series in `{}` and `{}` cannot be multiplied",
                self.variable, other.variable
            )));
        }
        let order = self.order().min(other.order());
        let mut coefficients = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let terms: Vec<FactoredFraction> = (0..=k)
                .filter(|&i| {
                    !self.coefficients[i].is_zero() && !other.coefficients[k - i].is_zero()
                })
                .map(|i| &self.coefficients[i] * &other.coefficients[k - i])
                .collect();
            coefficients.push(FactoredFraction::sum(&self.universe, terms)?);
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            universe: self.universe.clone(),
            coefficients,
        })
    }

    pub fn try_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        check_universe(&self.universe, &other.universe)?;
        let order = self.order().min(other.order());
        let coefficients = (0..=order)
            .map(|k| self.coefficients[k].try_add(&other.coefficients[k]))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            universe: self.universe.clone(),
            coefficients,
        })
    }
}

/// Splits `p` by powers of variable `idx`: `p = Σ_k c_k v^k`.
fn split_by_power(p: &Polynomial, idx: usize) -> Vec<Polynomial> {
    let deg = p.degree_in(idx) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let k = e[idx] as usize;
        e[idx] = 0;
        buckets[k].push((Monomial::from_exponents(&e), c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| Polynomial::from_terms(p.universe(), t))
        .collect()
}

fn polynomial_series(p: &Polynomial, var: &str, idx: usize, order: usize) -> TruncatedSeries {
    let parts = split_by_power(p, idx);
    let u = p.universe();
    let coefficients = (0..=order)
        .map(|k| match parts.get(k) {
            Some(c) => FactoredFraction::from_poly(c),
            None => FactoredFraction::zero(u),
        })
        .collect();
    TruncatedSeries::from_coefficients(u, var, coefficients)
}

fn inverse_series(p: &Polynomial, var: &str, idx: usize, order: usize) -> Result<TruncatedSeries> {
    let parts = split_by_power(p, idx);
    let u = p.universe();
    if parts[0].is_zero() {
        return Err(Error::NotInvertible(p.to_string()));
    }
    let c0_inv = FactoredFraction::from_poly(&parts[0]).recip()?;
    let cs: Vec<FactoredFraction> = parts.iter().map(FactoredFraction::from_poly).collect();
    let mut inv: Vec<FactoredFraction> = vec![c0_inv.clone()];
    for k in 1..=order {
        let terms: Vec<FactoredFraction> = (1..=k.min(cs.len() - 1))
            .filter(|&j| !cs[j].is_zero() && !inv[k - j].is_zero())
            .map(|j| &cs[j] * &inv[k - j])
            .collect();
        let s = FactoredFraction::sum(u, terms)?;
        inv.push(-(&s * &c0_inv));
    }
    Ok(TruncatedSeries::from_coefficients(u, var, inv))
}

fn q_ratio_series(
    alpha: &Polynomial,
    beta: &Polynomial,
    q: &str,
    var: &str,
    idx: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let u = alpha.universe();
    check_universe(u, beta.universe())?;
    if alpha.degree_in(idx) > 0 || beta.degree_in(idx) > 0 {
        return Err(Error::Usage(format!(
            "q-ratio parameters must not involve `{var}`"
        )));
    }
    let one = Polynomial::one(u);
    let mut coefficients = vec![FactoredFraction::one(u)];
    for k in 1..=order {
        let qk1 = Polynomial::var_pow(u, q, k as u32 - 1)?;
        let num = beta - &(alpha * &qk1);
        let den = &one - &Polynomial::var_pow(u, q, k as u32)?;
        let step = FactoredFraction::ratio(&num, &den)?;
        let prev = coefficients.last().unwrap().clone();
        coefficients.push(&prev * &step);
    }
    Ok(TruncatedSeries::from_coefficients(u, var, coefficients))
}

/// Expands a product of factors as a power series in `var` up to `order`.
pub fn series_expand(
    universe: &Arc<Universe>,
    factors: &[SeriesFactor],
    var: &str,
    order: usize,
) -> Result<TruncatedSeries> {
    let idx = universe.var_index(var)?;
    let mut acc = TruncatedSeries::one(universe, var, order);
    for f in factors {
        let s = match f {
            SeriesFactor::Numerator(p) => {
                check_universe(universe, p.universe())?;
                polynomial_series(p, var, idx, order)
            }
            SeriesFactor::Denominator(p) => {
                check_universe(universe, p.universe())?;
                inverse_series(p, var, idx, order)?
            }
            SeriesFactor::QRatio { alpha, beta, q } => {
                check_universe(universe, alpha.universe())?;
                q_ratio_series(alpha, beta, q, var, idx, order)?
            }
        };
        acc = acc.try_mul(&s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::frac_eq;
    use crate::text::{parse_fraction, parse_polynomial};

    fn u() -> Arc<Universe> {
        Universe::new(["q", "t", "x"])
    }

    fn assert_coeffs(s: &TruncatedSeries, expected: &[&str]) {
        assert_eq!(s.order() + 1, expected.len());
        for (k, e) in expected.iter().enumerate() {
            let want = parse_fraction(s.universe(), e).unwrap();
            assert!(
                frac_eq(s.coefficient(k), &want).unwrap(),
                "coefficient {k}: {} vs {e}",
                s.coefficient(k)
            );
        }
    }

    #[test]
    fn geometric_series() {
        let u = u();
        let s = series_expand(
            &u,
            &[SeriesFactor::Denominator(
                parse_polynomial(&u, "1 - x").unwrap(),
            )],
            "x",
            3,
        )
        .unwrap();
        assert_coeffs(&s, &["1", "1", "1", "1"]);
    }

    #[test]
    fn heine_ratio() {
        let u = u();
        let s = series_expand(
            &u,
            &[SeriesFactor::QRatio {
                alpha: parse_polynomial(&u, "t").unwrap(),
                beta: parse_polynomial(&u, "1").unwrap(),
                q: "q".into(),
            }],
            "x",
            2,
        )
        .unwrap();
        assert_coeffs(
            &s,
            &[
                "1",
                "(1 - t)/(1 - q)",
                "(1 - t)*(1 - t*q)/((1 - q)*(1 - q^2))",
            ],
        );
    }

    #[test]
    fn simple_rational_product() {
        let u = u();
        let s = series_expand(
            &u,
            &[
                SeriesFactor::Numerator(parse_polynomial(&u, "1 - t*x").unwrap()),
                SeriesFactor::Denominator(parse_polynomial(&u, "1 - x").unwrap()),
            ],
            "x",
            2,
        )
        .unwrap();
        assert_coeffs(&s, &["1", "1 - t", "1 - t"]);
    }

    #[test]
    fn non_invertible_denominator() {
        let u = u();
        let err = series_expand(
            &u,
            &[SeriesFactor::Denominator(
                parse_polynomial(&u, "x - x^2").unwrap(),
            )],
            "x",
            2,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotInvertible(_)));
    }

    #[test]
    fn non_monic_constant_term() {
        let u = u();
        // 1/(2 - x) = 1/2 + x/4 + x^2/8
        let s = series_expand(
            &u,
            &[SeriesFactor::Denominator(
                parse_polynomial(&u, "2 - x").unwrap(),
            )],
            "x",
            2,
        )
        .unwrap();
        assert_coeffs(&s, &["1/2", "1/4", "1/8"]);
        // 1/(1 - t x) has coefficients t^k
        let s = series_expand(
            &u,
            &[SeriesFactor::Denominator(
                parse_polynomial(&u, "1 - t*x").unwrap(),
            )],
            "x",
            3,
        )
        .unwrap();
        assert_coeffs(&s, &["1", "t", "t^2", "t^3"]);
    }
}
