//! Symmetrized rational identities over `S_n`.
//!
//! The sums over permutations are accumulated over subsets instead of
//! permutations: a chain sum `Σ_σ Π_i f(σ(i), {σ(1..i)})` satisfies
//! `F(S) = Σ_{j ∈ S} F(S \ j) f(j, S)`, and a cycle sum groups the
//! permutations by the set partition of their cycles, a block `B` carrying
//! `(|B| - 1)!` cyclic orders.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::partition::{derangements_capped, z_of, Partition};
use crate::poly::{Monomial, Polynomial, Universe};
use crate::rational::Rational;
use crate::specialization::{abq_universe, one_minus_q, qt_universe, spec_W, spec_Z, Limits};

pub const DEFAULT_N_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    #[serde(rename = "thm6-left")]
    Thm6Left,
    #[serde(rename = "thm6-right")]
    Thm6Right,
    #[serde(rename = "thm7-right")]
    Thm7Right,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Thm6Left, Side::Thm6Right, Side::Thm7Right];

    pub fn tag(&self) -> &'static str {
        match self {
            Side::Thm6Left => "thm6-left",
            Side::Thm6Right => "thm6-right",
            Side::Thm7Right => "thm7-right",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetrizedSum {
    pub n: usize,
    pub side: Side,
    pub value: FactoredFraction,
}

/// `{x1..xn, y1..yn}`
pub fn xy_universe(n: usize) -> Arc<Universe> {
    Universe::with_indexed(&[], &["x", "y"], n)
}

/// `{x1..xn}`
pub fn x_universe(n: usize) -> Arc<Universe> {
    Universe::with_indexed(&[], &["x"], n)
}

/// `Π_{i ∈ S} x_i^k` where `S` is a bitmask; x-variables come first.
fn x_power(u: &Arc<Universe>, set: u32, k: u32) -> Polynomial {
    let mut e = vec![0u32; u.len()];
    for (i, slot) in e.iter_mut().enumerate().take(32) {
        if set & (1 << i) != 0 {
            *slot = k;
        }
    }
    Polynomial::monomial(u, Monomial::from_exponents(&e), Rational::ONE)
}

/// `Π_{i ∈ S} y_i` with y-variables after the `n` x-variables.
fn y_product(u: &Arc<Universe>, n: usize, set: u32) -> Polynomial {
    let mut e = vec![0u32; u.len()];
    for i in 0..n {
        if set & (1 << i) != 0 {
            e[n + i] = 1;
        }
    }
    Polynomial::monomial(u, Monomial::from_exponents(&e), Rational::ONE)
}

fn bits(set: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| set & (1 << i) != 0)
}

/// `F(S) = Σ_{j ∈ S} F(S \ j) step(j, S)`, `F(∅) = 1`; returns `F(full)`.
fn chain_sum<F>(u: &Arc<Universe>, n: usize, step: F) -> Result<FactoredFraction>
where
    F: Fn(usize, u32) -> Result<FactoredFraction> + Sync,
{
    let full = (1u32 << n) - 1;
    let mut table: Vec<Option<FactoredFraction>> = vec![None; 1 << n];
    table[0] = Some(FactoredFraction::one(u));
    for size in 1..=n {
        let layer: Vec<u32> = (1..=full)
            .filter(|s| s.count_ones() as usize == size)
            .collect();
        let computed = layer
            .par_iter()
            .map(|&s| {
                let terms = bits(s)
                    .map(|j| {
                        let prev = table[(s & !(1 << j)) as usize]
                            .as_ref()
                            .expect("smaller layer done");
                        Ok(prev * &step(j, s)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((s, FactoredFraction::sum(u, terms)?))
            })
            .collect::<Result<Vec<_>>>()?;
        for (s, v) in computed {
            table[s as usize] = Some(v);
        }
    }
    Ok(table[full as usize].take().expect("full set computed"))
}

/// `Σ_σ Π_{γ ∈ cycles(σ)} block(γ)` for a weight depending only on the
/// underlying set of each cycle.
fn cycle_sum<F>(u: &Arc<Universe>, n: usize, block: F) -> Result<FactoredFraction>
where
    F: Fn(u32) -> Result<FactoredFraction>,
{
    let full = (1u32 << n) - 1;
    let weights: Vec<Option<FactoredFraction>> = (0..=full)
        .map(|b| {
            if b == 0 {
                return Ok(None);
            }
            let orders = Rational::factorial(b.count_ones() - 1);
            Ok(Some(block(b)?.scale(&orders)))
        })
        .collect::<Result<_>>()?;
    let mut table: Vec<Option<FactoredFraction>> = vec![None; 1 << n];
    table[0] = Some(FactoredFraction::one(u));
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut terms = Vec::new();
        // blocks containing the lowest element of s
        let mut sub = rest;
        loop {
            let b = sub | low;
            let w = weights[b as usize].as_ref().expect("nonempty block");
            terms.push(w * table[(s & !b) as usize].as_ref().expect("subset done"));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        table[s as usize] = Some(FactoredFraction::sum(u, terms)?);
    }
    Ok(table[full as usize].take().expect("full set computed"))
}

fn one_minus(p: &Polynomial) -> Polynomial {
    &Polynomial::one(p.universe()) - p
}

/// One side of the symmetrized identity on `{x1..xn, y1..yn}`.
pub fn symmetrized_side(n: usize, side: Side, cap: usize) -> Result<SymmetrizedSum> {
    if n == 0 {
        return Err(Error::InvalidValue("n must be at least 1".into()));
    }
    Error::check_cap("symmetrized sum size n", n, cap)?;
    let u = xy_universe(n);
    let value = match side {
        Side::Thm6Left => chain_sum(&u, n, |j, s| {
            let xs = x_power(&u, s, 1);
            FactoredFraction::ratio(&(&y_product(&u, n, 1 << j) - &xs), &one_minus(&xs))
        })?,
        Side::Thm6Right => chain_sum(&u, n, |j, s| {
            let k = (n - s.count_ones() as usize + 1) as u32;
            let num = &y_product(&u, n, 1 << j) - &x_power(&u, 1 << j, k);
            FactoredFraction::ratio(&num, &one_minus(&x_power(&u, s, 1)))
        })?,
        Side::Thm7Right => cycle_sum(&u, n, |b| {
            let xb = x_power(&u, b, 1);
            FactoredFraction::ratio(&(&y_product(&u, n, b) - &xb), &one_minus(&xb))
        })?,
    };
    Ok(SymmetrizedSum { n, side, value })
}

/// All three sides agree.
pub fn check_three_way(n: usize, cap: usize) -> Result<bool> {
    let [l, r, c] = Side::ALL.map(|s| symmetrized_side(n, s, cap));
    let (l, r, c) = (l?.value, r?.value, c?.value);
    Ok(frac_eq(&l, &r)? && frac_eq(&l, &c)?)
}

/// Swaps `(x_i, y_i)` with `(x_j, y_j)` (1-based) and compares.
pub fn relabeling_invariant(sum: &SymmetrizedSum, i: usize, j: usize) -> Result<bool> {
    let u = sum.value.universe().clone();
    let var = |name: String| -> Result<FactoredFraction> {
        Ok(FactoredFraction::from_poly(&Polynomial::var(&u, &name)?))
    };
    let (xi, xj, yi, yj) = (
        format!("x{i}"),
        format!("x{j}"),
        format!("y{i}"),
        format!("y{j}"),
    );
    let bindings = [
        (xi.as_str(), var(xj.clone())?),
        (xj.as_str(), var(xi.clone())?),
        (yi.as_str(), var(yj.clone())?),
        (yj.as_str(), var(yi.clone())?),
    ];
    frac_eq(&sum.value, &sum.value.substitute_in_place(&bindings)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantKind {
    Prop5,
    Littlewood,
}

/// The derangement sums with constant value. Prop5 lives in `{q, t}`;
/// the Littlewood sum is a rational number wrapped as a constant fraction.
pub fn constant_identity(
    mu: &Partition,
    kind: ConstantKind,
    limits: &Limits,
) -> Result<FactoredFraction> {
    let ds = derangements_capped(mu, limits.max_length)?;
    let u = qt_universe();
    let l = mu.len() as u32;
    match kind {
        ConstantKind::Prop5 => {
            let terms = ds
                .iter()
                .map(|c| {
                    FactoredFraction::from_parts(
                        &u,
                        Rational::ONE,
                        (1..=l as usize)
                            .map(|i| (one_minus_q(&u, (l - i as u32 + 1) * c.entries()[i - 1]), 1)),
                        (1..=l as usize).map(|i| (one_minus_q(&u, c.prefix(i)), 1)),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            FactoredFraction::sum(&u, terms)
        }
        ConstantKind::Littlewood => {
            let mut acc = Rational::ZERO;
            for c in &ds {
                let prod: u64 = c.prefix_sums().iter().map(|&s| s as u64).product();
                acc += &Rational::new(1, prod as i64);
            }
            Ok(FactoredFraction::constant(&u, acc))
        }
    }
}

/// Expected constants: `l!/Π m_i!` and `1/z_mu`.
pub fn constant_expected(mu: &Partition, kind: ConstantKind) -> Rational {
    match kind {
        ConstantKind::Prop5 => mu.rearrangement_count(),
        ConstantKind::Littlewood => z_of(mu).recip(),
    }
}

pub fn check_constant(mu: &Partition, kind: ConstantKind, limits: &Limits) -> Result<bool> {
    let v = constant_identity(mu, kind, limits)?;
    let want = FactoredFraction::constant(v.universe(), constant_expected(mu, kind));
    frac_eq(&v, &want)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricConstantKind {
    Prop7,
    Prop8,
}

/// `prop7 = Σ_σ Π_i (1 - x_{σ(i)}^{n-i+1}) / (1 - x_{σ(1)}⋯x_{σ(i)})` and
/// `prop8 = Σ_σ Π_i 1 / (x_{σ(1)} + ⋯ + x_{σ(i)})` on `{x1..xn}`.
pub fn prop7_prop8(n: usize, kind: SymmetricConstantKind, cap: usize) -> Result<FactoredFraction> {
    if n == 0 {
        return Err(Error::InvalidValue("n must be at least 1".into()));
    }
    Error::check_cap("symmetrized sum size n", n, cap)?;
    let u = x_universe(n);
    match kind {
        SymmetricConstantKind::Prop7 => chain_sum(&u, n, |j, s| {
            let k = (n - s.count_ones() as usize + 1) as u32;
            FactoredFraction::ratio(
                &one_minus(&x_power(&u, 1 << j, k)),
                &one_minus(&x_power(&u, s, 1)),
            )
        }),
        SymmetricConstantKind::Prop8 => chain_sum(&u, n, |_, s| {
            let sum = bits(s).fold(Polynomial::zero(&u), |acc, i| {
                &acc + &x_power(&u, 1 << i, 1)
            });
            FactoredFraction::from_poly(&sum).recip()
        }),
    }
}

pub fn check_prop7_prop8(n: usize, kind: SymmetricConstantKind, cap: usize) -> Result<bool> {
    let v = prop7_prop8(n, kind, cap)?;
    let u = v.universe().clone();
    let want = match kind {
        SymmetricConstantKind::Prop7 => {
            FactoredFraction::constant(&u, Rational::factorial(n as u32))
        }
        SymmetricConstantKind::Prop8 => {
            FactoredFraction::from_poly(&x_power(&u, (1 << n) - 1, 1)).recip()?
        }
    };
    frac_eq(&v, &want)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `f_n(x; y_1..y_{n-1}, x_n) = Σ_{i<n} f_{n-1}(x_i ↦ x_i x_n; y_i ↦ y_i x_n)`
    SetYToX,
    /// `f_n(x; y_1..y_{n-1}, 1) = f_{n-1} + Σ_{i<n} f_{n-1}(x_i ↦ x_i x_n)`
    SetYToOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppendixSide {
    /// the prefix-product chain sum
    L,
    /// the cycle sum
    R,
}

/// Checks one of the two substitution recurrences for one side.
pub fn appendix_step(n: usize, relation: Relation, side: AppendixSide, cap: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidValue("recurrences need n >= 2".into()));
    }
    let which = match side {
        AppendixSide::L => Side::Thm6Left,
        AppendixSide::R => Side::Thm7Right,
    };
    let big = symmetrized_side(n, which, cap)?.value;
    let small = symmetrized_side(n - 1, which, cap)?.value;
    let u = big.universe().clone();
    let var = |name: &str| -> Result<FactoredFraction> {
        Ok(FactoredFraction::from_poly(&Polynomial::var(&u, name)?))
    };
    let xn = var(&format!("x{n}"))?;
    let yn = format!("y{n}");
    let lhs = match relation {
        Relation::SetYToX => big.substitute_in_place(&[(yn.as_str(), xn.clone())])?,
        Relation::SetYToOne => {
            big.substitute_in_place(&[(yn.as_str(), FactoredFraction::one(&u))])?
        }
    };
    let mut terms = Vec::new();
    if relation == Relation::SetYToOne {
        terms.push(small.embed(&u)?);
    }
    for i in 1..n {
        let (xi, yi) = (format!("x{i}"), format!("y{i}"));
        let mut bindings = vec![(xi.as_str(), &var(&xi)? * &xn)];
        if relation == Relation::SetYToX {
            bindings.push((yi.as_str(), &var(&yi)? * &xn));
        }
        terms.push(small.substitute(&u, &bindings)?);
    }
    frac_eq(&lhs, &FactoredFraction::sum(&u, terms)?)
}

/// Specializes `x_i = q^{mu_i}`, `y_i = (bq/a)^{mu_i}` in both chain sums and
/// compares with `Z_mu` and `W_mu` after the homogeneity factor
/// `(-1)^l a^{|mu|} / (q^{|mu|} Π m_i!)`.
pub fn specialization_chain(mu: &Partition, limits: &Limits) -> Result<bool> {
    let n = mu.len();
    let u = abq_universe();
    let q = FactoredFraction::from_poly(&Polynomial::var(&u, "q")?);
    let a = FactoredFraction::from_poly(&Polynomial::var(&u, "a")?);
    let b = FactoredFraction::from_poly(&Polynomial::var(&u, "b")?);
    let ratio = &(&b * &q) / &a;
    let names: Vec<(String, String)> = (1..=n)
        .map(|i| (format!("x{i}"), format!("y{i}")))
        .collect();
    let mut bindings = Vec::new();
    for (i, (x, y)) in names.iter().enumerate() {
        let m = mu.parts()[i];
        bindings.push((x.as_str(), q.pow(m)));
        bindings.push((y.as_str(), ratio.pow(m)));
    }
    let w = mu.weight();
    let sign = if n % 2 == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    };
    let factor = (&a.pow(w) / &q.pow(w)).scale(&(&sign / &mu.multiplicity_factorial_product()));
    let cap = n.max(1);
    for (side, closed) in [
        (Side::Thm6Left, spec_Z(mu, limits)?.value),
        (Side::Thm6Right, spec_W(mu, limits)?.value),
    ] {
        let s = symmetrized_side(n, side, cap)?
            .value
            .substitute(&u, &bindings)?;
        if !frac_eq(&(&factor * &s), &closed)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn n_one_all_sides() {
        for side in Side::ALL {
            let s = symmetrized_side(1, side, 5).unwrap();
            let want = parse_fraction(s.value.universe(), "(y1 - x1)/(1 - x1)").unwrap();
            assert!(frac_eq(&s.value, &want).unwrap());
        }
    }

    #[test]
    fn n_two_display() {
        let u = xy_universe(2);
        let left = parse_fraction(
            &u,
            "(y1 - x1)*(y2 - x1*x2)/((1 - x1)*(1 - x1*x2)) + (y2 - x2)*(y1 - x1*x2)/((1 - x2)*(1 - x1*x2))",
        )
        .unwrap();
        let right = parse_fraction(
            &u,
            "(y1 - x1^2)*(y2 - x2)/((1 - x1)*(1 - x1*x2)) + (y2 - x2^2)*(y1 - x1)/((1 - x2)*(1 - x1*x2))",
        )
        .unwrap();
        let cycles = parse_fraction(
            &u,
            "(y1 - x1)*(y2 - x2)/((1 - x1)*(1 - x2)) + (y1*y2 - x1*x2)/(1 - x1*x2)",
        )
        .unwrap();
        assert!(frac_eq(
            &symmetrized_side(2, Side::Thm6Left, 5).unwrap().value,
            &left
        )
        .unwrap());
        assert!(frac_eq(
            &symmetrized_side(2, Side::Thm6Right, 5).unwrap().value,
            &right
        )
        .unwrap());
        assert!(frac_eq(
            &symmetrized_side(2, Side::Thm7Right, 5).unwrap().value,
            &cycles
        )
        .unwrap());
        assert!(frac_eq(&left, &cycles).unwrap());
    }

    #[test]
    fn n_three_agrees() {
        assert!(check_three_way(3, 5).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            symmetrized_side(4, Side::Thm6Left, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn relabeling() {
        let s = symmetrized_side(3, Side::Thm6Left, 5).unwrap();
        assert!(relabeling_invariant(&s, 1, 3).unwrap());
    }

    #[test]
    fn constant_examples() {
        let lim = Limits::default();
        let v = constant_identity(&p(&[2, 1]), ConstantKind::Prop5, &lim).unwrap();
        assert!(frac_eq(&v, &FactoredFraction::integer(v.universe(), 2)).unwrap());
        let l = constant_identity(&p(&[2, 1]), ConstantKind::Littlewood, &lim).unwrap();
        assert_eq!(
            l.to_polynomial().unwrap().as_constant(),
            Some(Rational::new(1, 2))
        );
        let l = constant_identity(&p(&[1, 1]), ConstantKind::Littlewood, &lim).unwrap();
        assert_eq!(
            l.to_polynomial().unwrap().as_constant(),
            Some(Rational::new(1, 2))
        );
    }

    #[test]
    fn prop7_prop8_examples() {
        let v = prop7_prop8(2, SymmetricConstantKind::Prop7, 5).unwrap();
        assert!(frac_eq(&v, &FactoredFraction::integer(v.universe(), 2)).unwrap());
        let v = prop7_prop8(1, SymmetricConstantKind::Prop7, 5).unwrap();
        assert!(frac_eq(&v, &FactoredFraction::one(v.universe())).unwrap());
        let v = prop7_prop8(2, SymmetricConstantKind::Prop8, 5).unwrap();
        assert!(frac_eq(&v, &parse_fraction(v.universe(), "1/(x1*x2)").unwrap()).unwrap());
        for n in 1..=4 {
            assert!(check_prop7_prop8(n, SymmetricConstantKind::Prop7, 5).unwrap());
            assert!(check_prop7_prop8(n, SymmetricConstantKind::Prop8, 5).unwrap());
        }
    }

    #[test]
    fn appendix_examples() {
        let u = xy_universe(2);
        let f2 = symmetrized_side(2, Side::Thm6Left, 5).unwrap().value;
        let at = f2
            .substitute_in_place(&[("y2", FactoredFraction::one(&u))])
            .unwrap();
        let hand = parse_fraction(&u, "(y1 - x1)/(1 - x1) + (y1 - x1*x2)/(1 - x1*x2)").unwrap();
        assert!(frac_eq(&at, &hand).unwrap());
        for n in 2..=3 {
            for rel in [Relation::SetYToX, Relation::SetYToOne] {
                for side in [AppendixSide::L, AppendixSide::R] {
                    assert!(
                        appendix_step(n, rel, side, 5).unwrap(),
                        "n={n} {rel:?} {side:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn chain_reaches_closed_forms() {
        for mu in [p(&[2, 1]), p(&[3, 1]), p(&[1, 1]), p(&[2, 2, 1])] {
            assert!(
                specialization_chain(&mu, &Limits::default()).unwrap(),
                "{mu}"
            );
        }
    }
}
