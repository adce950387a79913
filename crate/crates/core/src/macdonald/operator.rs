//! The first difference operator `D = Σ_i A_i(X;t) T_{x_i}` with
//! `A_i = Π_{j≠i} (t x_i - x_j)/(x_i - x_j)` and `T_{x_i}: x_i ↦ q x_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::poly::{Polynomial, Universe};
use crate::rational::Rational;
use crate::specialization::{qt_universe, Limits};

use super::symmetric::{orbit_polynomial, x_universe};
use super::{gn_polynomial, GnMethod};

pub const DEFAULT_OPERATOR_CAP: usize = 3;
pub const DEFAULT_PROP9_CAP: usize = 5;

/// `q^n t^{N-1} + 1 + t + ... + t^{N-2}` in `{q, t}`.
pub fn eigenvalue(n: u32, n_vars: usize) -> Polynomial {
    let u = qt_universe();
    let mut acc = Polynomial::var_pow(&u, "q", n).expect("q")
        * Polynomial::var_pow(&u, "t", n_vars as u32 - 1).expect("t");
    for k in 0..n_vars.saturating_sub(1) {
        acc = &acc + &Polynomial::var_pow(&u, "t", k as u32).expect("t");
    }
    acc
}

fn var(u: &Arc<Universe>, name: &str) -> Polynomial {
    Polynomial::var(u, name).expect("variable in universe")
}

/// Checks `D g_n = eigenvalue · g_n` after multiplying both sides by the
/// Vandermonde product `V = Π_{i<j} (x_i - x_j)`, using
/// `A_i V = (-1)^{i-1} Π_{j≠i} (t x_i - x_j) · V_{without i}`.
#[allow(non_snake_case)]
pub fn apply_D_eigencheck(n: u32, n_vars: usize, cap: usize, limits: &Limits) -> Result<bool> {
    if n_vars == 0 {
        return Err(Error::InvalidValue("N must be at least 1".into()));
    }
    Error::check_cap("operator alphabet size N", n_vars, cap)?;
    let u = x_universe(n_vars);
    let g = gn_polynomial(n, n_vars, GnMethod::FromBasis, limits)?;
    // clear the (q;q) denominators
    let qq = FactoredFraction::from_parts(
        &qt_universe(),
        Rational::ONE,
        (1..=n).map(|i| {
            (
                &Polynomial::one(&qt_universe())
                    - &Polynomial::var_pow(&qt_universe(), "q", i).expect("q"),
                1,
            )
        }),
        Vec::new(),
    )?;
    let mut gp = Polynomial::zero(&u);
    for (mu, c) in g.coefficients() {
        let c = (&qq * c).to_polynomial().ok_or_else(|| {
            Error::Internal(format!("(q;q)_n does not clear the coefficient of m{mu}"))
        })?;
        gp = &gp + &(&c.embed(&u)? * &orbit_polynomial(&u, n_vars, mu)?);
    }
    let x: Vec<Polynomial> = (1..=n_vars).map(|i| var(&u, &format!("x{i}"))).collect();
    let t = var(&u, "t");
    let vandermonde = |skip: Option<usize>| {
        let mut v = Polynomial::one(&u);
        for i in 0..n_vars {
            for j in i + 1..n_vars {
                if Some(i) != skip && Some(j) != skip {
                    v = &v * &(&x[i] - &x[j]);
                }
            }
        }
        v
    };
    let mut lhs = Polynomial::zero(&u);
    for i in 0..n_vars {
        let mut images: Vec<Polynomial> = u.names().iter().map(|name| var(&u, name)).collect();
        let xi = u.var_index(&format!("x{}", i + 1))?;
        images[xi] = &var(&u, "q") * &x[i];
        let shifted = gp.compose(&u, &images);
        let mut a = vandermonde(Some(i));
        for j in 0..n_vars {
            if j != i {
                a = &a * &(&(&t * &x[i]) - &x[j]);
            }
        }
        let term = &a * &shifted;
        lhs = if i % 2 == 0 {
            &lhs + &term
        } else {
            &lhs - &term
        };
    }
    let rhs = &(&eigenvalue(n, n_vars).embed(&u)? * &vandermonde(None)) * &gp;
    Ok(lhs == rhs)
}

/// `{t, x1..xN}`
pub fn tx_universe(n_vars: usize) -> Arc<Universe> {
    Universe::with_indexed(&["t"], &["x"], n_vars)
}

/// `A_i(X; s)` for a parameter `s` given as a fraction in the same universe.
pub fn a_i(
    u: &Arc<Universe>,
    i: usize,
    n_vars: usize,
    s: &FactoredFraction,
) -> Result<FactoredFraction> {
    let xi = FactoredFraction::from_poly(&Polynomial::var(u, &format!("x{i}"))?);
    let mut acc = FactoredFraction::one(u);
    for j in (1..=n_vars).filter(|&j| j != i) {
        let xj = FactoredFraction::from_poly(&Polynomial::var(u, &format!("x{j}"))?);
        let num = &(s * &xi) - &xj;
        let den = &xi - &xj;
        acc = &acc * &(&num / &den);
    }
    Ok(acc)
}

/// Both partial-fraction identities:
/// `Σ A_i = (1 - t^N)/(1 - t)` and
/// `Σ x_i/(1 - t x_i) A_i = t^{N-1}/(1 - t) (1 - Π (1 - x_i)/(1 - t x_i))`.
pub fn prop9_check(n_vars: usize, cap: usize) -> Result<(bool, bool)> {
    if n_vars == 0 {
        return Err(Error::InvalidValue("N must be at least 1".into()));
    }
    Error::check_cap("partial-fraction alphabet size N", n_vars, cap)?;
    let u = tx_universe(n_vars);
    let t = FactoredFraction::from_poly(&var(&u, "t"));
    let one = FactoredFraction::one(&u);
    let a: Vec<FactoredFraction> = (1..=n_vars)
        .map(|i| a_i(&u, i, n_vars, &t))
        .collect::<Result<_>>()?;
    let first = FactoredFraction::sum(&u, a.clone())?;
    let want_first = &(&one - &t.pow(n_vars as u32)) / &(&one - &t);
    let mut weighted = Vec::new();
    let mut prod = one.clone();
    for (k, ai) in a.iter().enumerate() {
        let xi = FactoredFraction::from_poly(&var(&u, &format!("x{}", k + 1)));
        weighted.push(&(&xi / &(&one - &(&t * &xi))) * ai);
        prod = &prod * &(&(&one - &xi) / &(&one - &(&t * &xi)));
    }
    let second = FactoredFraction::sum(&u, weighted)?;
    let want_second = &(&t.pow(n_vars as u32 - 1) / &(&one - &t)) * &(&one - &prod);
    Ok((
        frac_eq(&first, &want_first)?,
        frac_eq(&second, &want_second)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;

    #[test]
    fn eigenvalue_at_zero() {
        for n_vars in 1..=3 {
            let e = FactoredFraction::from_poly(&eigenvalue(0, n_vars));
            let want =
                parse_fraction(&qt_universe(), &format!("(1 - t^{n_vars})/(1 - t)")).unwrap();
            assert!(frac_eq(&e, &want).unwrap());
        }
    }

    #[test]
    fn small_eigenchecks() {
        let lim = Limits::default();
        assert!(apply_D_eigencheck(0, 2, 3, &lim).unwrap());
        assert!(apply_D_eigencheck(1, 2, 3, &lim).unwrap());
        assert!(apply_D_eigencheck(2, 3, 3, &lim).unwrap());
        assert!(apply_D_eigencheck(1, 4, 3, &lim).is_err());
    }

    #[test]
    fn prop9_small() {
        assert_eq!(prop9_check(1, 5).unwrap(), (true, true));
        let u = tx_universe(2);
        let t = FactoredFraction::from_poly(&Polynomial::var(&u, "t").unwrap());
        let s = &a_i(&u, 1, 2, &t).unwrap() + &a_i(&u, 2, 2, &t).unwrap();
        assert!(frac_eq(&s, &parse_fraction(&u, "1 + t").unwrap()).unwrap());
        assert_eq!(prop9_check(3, 5).unwrap(), (true, true));
    }
}
