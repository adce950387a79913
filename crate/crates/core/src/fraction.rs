//! Rational functions kept as a scalar times a product of polynomial factors.
//!
//! No multivariate gcd is ever taken. Factors are normalized up to a scalar
//! (divided by their constant term, or by their leading coefficient when the
//! constant term vanishes) so that factors which agree up to a constant are
//! recognized as identical and cancel. Equality is decided by
//! cross-multiplication.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{check_universe, same_universe, Polynomial, Universe};
use crate::rational::Rational;

/// A multiset of normalized, non-constant factors, sorted and deduplicated.
type Factors = Vec<(Polynomial, u32)>;

#[derive(Clone)]
pub struct FactoredFraction {
    universe: Arc<Universe>,
    coeff: Rational,
    numer: Factors,
    denom: Factors,
}

/// Splits `p` into `(scale, normalized)` with `p = scale * normalized`.
fn normalize_factor(p: &Polynomial) -> (Rational, Polynomial) {
    let c = p.constant_term();
    let s = if c.is_zero() {
        p.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or(Rational::ONE)
    } else {
        c
    };
    if s.is_one() {
        (s, p.clone())
    } else {
        let inv = s.recip();
        (s, p.scale(&inv))
    }
}

fn insert_factor(list: &mut Factors, p: Polynomial, k: u32) {
    match list.binary_search_by(|(f, _)| f.cmp(&p)) {
        Ok(i) => list[i].1 += k,
        Err(i) => list.insert(i, (p, k)),
    }
}

/// Pointwise combination of two sorted factor lists.
fn merge_with<F>(a: &Factors, b: &Factors, mut op: F) -> Factors
where
    F: FnMut(u32, u32) -> u32,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    loop {
        let (p, k) = match (a.get(i), b.get(j)) {
            (None, None) => break,
            (Some((p, x)), None) => {
                i += 1;
                (p, op(*x, 0))
            }
            (None, Some((p, y))) => {
                j += 1;
                (p, op(0, *y))
            }
            (Some((p, x)), Some((r, y))) => match p.cmp(r) {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (p, op(*x, 0))
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (r, op(0, *y))
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (p, op(*x, *y))
                }
            },
        };
        if k > 0 {
            out.push((p.clone(), k));
        }
    }
    out
}

fn expand(universe: &Arc<Universe>, coeff: &Rational, factors: &Factors) -> Polynomial {
    let mut ordered: Vec<&Polynomial> = Vec::new();
    for (p, k) in factors {
        for _ in 0..*k {
            ordered.push(p);
        }
    }
    // Multiplying small factors first keeps intermediate products small.
    ordered.sort_by_key(|p| p.len());
    let mut acc = Polynomial::constant(universe, coeff.clone());
    for p in ordered {
        acc = &acc * p;
    }
    acc
}

impl FactoredFraction {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        FactoredFraction {
            universe: universe.clone(),
            coeff: Rational::ZERO,
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, Rational::ONE)
    }

    pub fn constant(universe: &Arc<Universe>, c: Rational) -> Self {
        FactoredFraction {
            universe: universe.clone(),
            coeff: c,
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn integer(universe: &Arc<Universe>, c: i64) -> Self {
        Self::constant(universe, Rational::from_integer(c))
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        Self::from_parts(p.universe(), Rational::ONE, [(p.clone(), 1)], [])
            .expect("a fraction without denominator factors is always valid")
    }

    /// `numerator / Π denominators`.
    pub fn new<I>(numerator: &Polynomial, denominators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Polynomial>,
    {
        Self::from_parts(
            numerator.universe(),
            Rational::ONE,
            [(numerator.clone(), 1)],
            denominators.into_iter().map(|d| (d, 1)),
        )
    }

    /// `num / den` for two single polynomials.
    pub fn ratio(num: &Polynomial, den: &Polynomial) -> Result<Self> {
        Self::new(num, [den.clone()])
    }

    /// General constructor from a scalar and factor multisets. Zero
    /// denominator factors are rejected; factors are normalized and
    /// identical numerator/denominator factors cancel.
    pub fn from_parts<N, D>(
        universe: &Arc<Universe>,
        coeff: Rational,
        numer: N,
        denom: D,
    ) -> Result<Self>
    where
        N: IntoIterator<Item = (Polynomial, u32)>,
        D: IntoIterator<Item = (Polynomial, u32)>,
    {
        let mut c = coeff;
        let mut dl: Factors = Vec::new();
        for (p, k) in denom {
            check_universe(universe, p.universe())?;
            if p.is_zero() {
                return Err(Error::InvalidValue("zero denominator factor".into()));
            }
            if k == 0 {
                continue;
            }
            let (s, n) = normalize_factor(&p);
            c = &c / &s.pow(k);
            if !n.is_constant() {
                insert_factor(&mut dl, n, k);
            }
        }
        let mut nl: Factors = Vec::new();
        for (p, k) in numer {
            check_universe(universe, p.universe())?;
            if k == 0 {
                continue;
            }
            if p.is_zero() {
                return Ok(Self::zero(universe));
            }
            let (s, n) = normalize_factor(&p);
            c = &c * &s.pow(k);
            if !n.is_constant() {
                insert_factor(&mut nl, n, k);
            }
        }
        if c.is_zero() {
            return Ok(Self::zero(universe));
        }
        let mut f = FactoredFraction {
            universe: universe.clone(),
            coeff: c,
            numer: nl,
            denom: dl,
        };
        f.cancel();
        Ok(f)
    }

    fn cancel(&mut self) {
        let common = merge_with(&self.numer, &self.denom, |a, b| a.min(b));
        if common.is_empty() {
            return;
        }
        self.numer = merge_with(&self.numer, &common, |a, b| a - b);
        self.denom = merge_with(&self.denom, &common, |a, b| a - b);
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coeff
    }

    pub fn numerator_factors(&self) -> &[(Polynomial, u32)] {
        &self.numer
    }

    pub fn denominator_factors(&self) -> &[(Polynomial, u32)] {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The scalar times all numerator factors, expanded.
    pub fn numerator(&self) -> Polynomial {
        expand(&self.universe, &self.coeff, &self.numer)
    }

    /// The product of all denominator factors, expanded.
    pub fn denominator(&self) -> Polynomial {
        expand(&self.universe, &Rational::ONE, &self.denom)
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_empty()
    }

    /// Cancels denominator factors that divide a numerator factor exactly.
    pub fn reduced(&self) -> FactoredFraction {
        if self.is_zero() || self.denom.is_empty() {
            return self.clone();
        }
        let mut numer: Vec<Polynomial> = Vec::new();
        for (p, k) in &self.numer {
            for _ in 0..*k {
                numer.push(p.clone());
            }
        }
        let mut denom_left: Factors = Vec::new();
        for (d, k) in &self.denom {
            let mut left = *k;
            'outer: while left > 0 {
                for n in numer.iter_mut() {
                    if let Some(q) = n.div_exact(d) {
                        *n = q;
                        left -= 1;
                        continue 'outer;
                    }
                }
                break;
            }
            if left > 0 {
                denom_left.push((d.clone(), left));
            }
        }
        Self::from_parts(
            &self.universe,
            self.coeff.clone(),
            numer.into_iter().map(|p| (p, 1)),
            denom_left,
        )
        .expect("reduction keeps denominators nonzero")
    }

    /// `reduced`, then a single polynomial when the whole denominator divides
    /// the numerator.
    pub fn simplified(&self) -> FactoredFraction {
        let r = self.reduced();
        if r.is_polynomial() {
            return r;
        }
        match r.to_polynomial() {
            Some(p) => FactoredFraction::from_poly(&p),
            None => r,
        }
    }

    /// The value as a polynomial, if the denominator divides out exactly.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.denom.is_empty() {
            return Some(self.numerator());
        }
        let r = self.reduced();
        if r.denom.is_empty() {
            return Some(r.numerator());
        }
        r.numerator().div_exact(&r.denominator())
    }

    pub fn scale(&self, c: &Rational) -> FactoredFraction {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        let mut f = self.clone();
        f.coeff = &f.coeff * c;
        f
    }

    pub fn try_mul(&self, other: &FactoredFraction) -> Result<FactoredFraction> {
        check_universe(&self.universe, &other.universe)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.universe));
        }
        let mut f = FactoredFraction {
            universe: self.universe.clone(),
            coeff: &self.coeff * &other.coeff,
            numer: merge_with(&self.numer, &other.numer, |a, b| a + b),
            denom: merge_with(&self.denom, &other.denom, |a, b| a + b),
        };
        f.cancel();
        Ok(f)
    }

    pub fn recip(&self) -> Result<FactoredFraction> {
        if self.is_zero() {
            return Err(Error::InvalidValue("reciprocal of zero".into()));
        }
        Ok(FactoredFraction {
            universe: self.universe.clone(),
            coeff: self.coeff.recip(),
            numer: self.denom.clone(),
            denom: self.numer.clone(),
        })
    }

    pub fn try_div(&self, other: &FactoredFraction) -> Result<FactoredFraction> {
        self.try_mul(&other.recip()?)
    }

    pub fn pow(&self, k: u32) -> FactoredFraction {
        if k == 0 {
            return Self::one(&self.universe);
        }
        if self.is_zero() {
            return self.clone();
        }
        FactoredFraction {
            universe: self.universe.clone(),
            coeff: self.coeff.pow(k),
            numer: self.numer.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
            denom: self.denom.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }

    pub fn try_add(&self, other: &FactoredFraction) -> Result<FactoredFraction> {
        check_universe(&self.universe, &other.universe)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let common = merge_with(&self.numer, &other.numer, |a, b| a.min(b));
        let rest_a = merge_with(&self.numer, &common, |a, b| a - b);
        let rest_b = merge_with(&other.numer, &common, |a, b| a - b);
        let lcm = merge_with(&self.denom, &other.denom, |a, b| a.max(b));
        let fill_a = merge_with(&lcm, &self.denom, |a, b| a - b);
        let fill_b = merge_with(&lcm, &other.denom, |a, b| a - b);
        let na = expand(
            &self.universe,
            &self.coeff,
            &merge_with(&rest_a, &fill_a, |a, b| a + b),
        );
        let nb = expand(
            &self.universe,
            &other.coeff,
            &merge_with(&rest_b, &fill_b, |a, b| a + b),
        );
        let n = &na + &nb;
        if n.is_zero() {
            return Ok(Self::zero(&self.universe));
        }
        let mut numer = common;
        numer.push((n, 1));
        Self::from_parts(&self.universe, Rational::ONE, numer, lcm)
    }

    pub fn try_sub(&self, other: &FactoredFraction) -> Result<FactoredFraction> {
        self.try_add(&-other)
    }

    /// Sum of many fractions by balanced pairwise reduction, so common
    /// denominators grow gradually instead of one term at a time.
    pub fn sum(universe: &Arc<Universe>, terms: Vec<FactoredFraction>) -> Result<FactoredFraction> {
        for t in &terms {
            check_universe(universe, &t.universe)?;
        }
        Ok(tree_sum(universe, terms))
    }

    /// Substitutes fractions for variables. The result lives in `target`;
    /// variables without a binding are carried over by name. Denominator
    /// factors that become identically zero are reported as poles.
    pub fn substitute(
        &self,
        target: &Arc<Universe>,
        bindings: &[(&str, FactoredFraction)],
    ) -> Result<FactoredFraction> {
        let sub = Substitution::new(&self.universe, target, bindings)?;
        if self.is_zero() {
            return Ok(Self::zero(target));
        }
        let mut numer: Factors = Vec::new();
        let mut denom: Factors = Vec::new();
        for (p, k) in &self.numer {
            let (n, d) = sub.apply(p);
            if n.is_zero() {
                return Ok(Self::zero(target));
            }
            numer.push((n, *k));
            for (f, m) in d {
                denom.push((f, m * k));
            }
        }
        for (p, k) in &self.denom {
            let (n, d) = sub.apply(p);
            if n.is_zero() {
                return Err(Error::Pole(p.to_string()));
            }
            denom.push((n, *k));
            for (f, m) in d {
                numer.push((f, m * k));
            }
        }
        Self::from_parts(target, self.coeff.clone(), numer, denom)
    }

    /// Substitution within the fraction's own universe.
    pub fn substitute_in_place(
        &self,
        bindings: &[(&str, FactoredFraction)],
    ) -> Result<FactoredFraction> {
        let u = self.universe.clone();
        self.substitute(&u, bindings)
    }

    /// Moves the fraction to a universe that contains all of its variables.
    pub fn embed(&self, target: &Arc<Universe>) -> Result<FactoredFraction> {
        if same_universe(&self.universe, target) {
            return Ok(self.clone());
        }
        let conv = |l: &Factors| -> Result<Factors> {
            l.iter().map(|(p, k)| Ok((p.embed(target)?, *k))).collect()
        };
        Self::from_parts(
            target,
            self.coeff.clone(),
            conv(&self.numer)?,
            conv(&self.denom)?,
        )
    }
}

fn tree_sum(universe: &Arc<Universe>, mut terms: Vec<FactoredFraction>) -> FactoredFraction {
    match terms.len() {
        0 => FactoredFraction::zero(universe),
        1 => terms.pop().unwrap(),
        n => {
            let right = terms.split_off(n / 2);
            let (a, b) = if n >= 16 {
                rayon::join(|| tree_sum(universe, terms), || tree_sum(universe, right))
            } else {
                (tree_sum(universe, terms), tree_sum(universe, right))
            };
            a.try_add(&b).expect("universes checked by caller")
        }
    }
}

/// Precomputed images `N_i / D_i` for every source variable.
struct Substitution<'a> {
    target: &'a Arc<Universe>,
    numer: Vec<Polynomial>,
    denom: Vec<Option<(Polynomial, Factors)>>,
}

impl<'a> Substitution<'a> {
    fn new(
        source: &Arc<Universe>,
        target: &'a Arc<Universe>,
        bindings: &[(&str, FactoredFraction)],
    ) -> Result<Self> {
        let mut numer = Vec::with_capacity(source.len());
        let mut denom = Vec::with_capacity(source.len());
        for (name, v) in bindings {
            source.var_index(name)?;
            check_universe(target, &v.universe)?;
        }
        for name in source.names() {
            match bindings.iter().find(|(n, _)| n == name) {
                Some((_, v)) => {
                    numer.push(v.numerator());
                    if v.denom.is_empty() {
                        denom.push(None);
                    } else {
                        denom.push(Some((v.denominator(), v.denom.clone())));
                    }
                }
                None => {
                    if target.index_of(name).is_none() {
                        return Err(Error::Usage(format!(
                            "unbound variable `{name}` is missing from the target universe"
                        )));
                    }
                    numer.push(Polynomial::var(target, name)?);
                    denom.push(None);
                }
            }
        }
        Ok(Substitution {
            target,
            numer,
            denom,
        })
    }

    /// Returns `(N, D)` with `p(images) = N / Π D`.
    fn apply(&self, p: &Polynomial) -> (Polynomial, Factors) {
        if self.denom.iter().all(Option::is_none) {
            return (p.compose(self.target, &self.numer), Vec::new());
        }
        let nv = self.numer.len();
        let degs: Vec<u32> = (0..nv)
            .map(|i| {
                if self.denom[i].is_some() {
                    p.degree_in(i)
                } else {
                    0
                }
            })
            .collect();
        let mut npow: Vec<Vec<Polynomial>> = self
            .numer
            .iter()
            .map(|n| vec![Polynomial::one(self.target), n.clone()])
            .collect();
        let mut dpow: Vec<Vec<Polynomial>> = self
            .denom
            .iter()
            .map(|d| match d {
                Some((dp, _)) => vec![Polynomial::one(self.target), dp.clone()],
                None => vec![Polynomial::one(self.target)],
            })
            .collect();
        let mut acc = Polynomial::zero(self.target);
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(self.target, c.clone());
            for i in 0..nv {
                let e = m.exponents()[i] as usize;
                if e > 0 {
                    while npow[i].len() <= e {
                        let next = npow[i].last().unwrap() * &self.numer[i];
                        npow[i].push(next);
                    }
                    term = &term * &npow[i][e];
                }
                if let Some((dp, _)) = &self.denom[i] {
                    let r = degs[i] as usize - e;
                    if r > 0 {
                        while dpow[i].len() <= r {
                            let next = dpow[i].last().unwrap() * dp;
                            dpow[i].push(next);
                        }
                        term = &term * &dpow[i][r];
                    }
                }
            }
            acc = &acc + &term;
        }
        let mut dl: Factors = Vec::new();
        for i in 0..nv {
            if let Some((_, fl)) = &self.denom[i] {
                if degs[i] > 0 {
                    for (f, k) in fl {
                        dl.push((f.clone(), k * degs[i]));
                    }
                }
            }
        }
        (acc, dl)
    }
}

/// Cross-multiplication equality: `f.num * Π g.den == g.num * Π f.den`.
pub fn frac_eq(f: &FactoredFraction, g: &FactoredFraction) -> Result<bool> {
    check_universe(&f.universe, &g.universe)?;
    if f.is_zero() || g.is_zero() {
        return Ok(f.is_zero() && g.is_zero());
    }
    let left = merge_with(&f.numer, &g.denom, |a, b| a + b);
    let right = merge_with(&g.numer, &f.denom, |a, b| a + b);
    let common = merge_with(&left, &right, |a, b| a.min(b));
    let left = merge_with(&left, &common, |a, b| a - b);
    let right = merge_with(&right, &common, |a, b| a - b);
    if left.is_empty() && right.is_empty() {
        return Ok(f.coeff == g.coeff);
    }
    Ok(expand(&f.universe, &f.coeff, &left) == expand(&f.universe, &g.coeff, &right))
}

impl std::ops::Neg for &FactoredFraction {
    type Output = FactoredFraction;
    fn neg(self) -> FactoredFraction {
        let mut f = self.clone();
        f.coeff = -&f.coeff;
        f
    }
}

impl std::ops::Neg for FactoredFraction {
    type Output = FactoredFraction;
    fn neg(self) -> FactoredFraction {
        -&self
    }
}

macro_rules! fraction_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &FactoredFraction {
            type Output = FactoredFraction;
            fn $m(self, rhs: &FactoredFraction) -> FactoredFraction {
                self.$try(rhs)
                    .expect("fraction operands must share a universe")
            }
        }
        impl std::ops::$tr for FactoredFraction {
            type Output = FactoredFraction;
            fn $m(self, rhs: FactoredFraction) -> FactoredFraction {
                (&self).$m(&rhs)
            }
        }
    };
}
fraction_op!(Add, add, try_add);
fraction_op!(Sub, sub, try_sub);
fraction_op!(Mul, mul, try_mul);
fraction_op!(Div, div, try_div);

fn write_factors(f: &mut fmt::Formatter<'_>, list: &Factors) -> fmt::Result {
    for (i, (p, k)) in list.iter().enumerate() {
        if i > 0 {
            f.write_str(" * ")?;
        }
        let text = p.to_string();
        let bare = p.len() == 1 && !text.contains([' ', '-']) && (*k == 1 || !text.contains('^'));
        if bare {
            f.write_str(&text)?;
        } else {
            write!(f, "({text})")?;
        }
        if *k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Factored text form, e.g. `(a - b) * (a * q - b) / ((1 - q) * (1 - q^2))`.
impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let ([(p, 1)], []) = (self.numer.as_slice(), self.denom.as_slice()) {
            if self.coeff.is_one() {
                return write!(f, "{p}");
            }
        }
        if self.numer.is_empty() {
            write!(f, "{}", self.coeff)?;
        } else {
            if self.coeff.is_one() {
            } else if (-&self.coeff).is_one() {
                f.write_str("-")?;
            } else {
                write!(f, "{} * ", self.coeff)?;
            }
            write_factors(f, &self.numer)?;
        }
        match self.denom.as_slice() {
            [] => {}
            [(_, 1)] => {
                f.write_str(" / ")?;
                write_factors(f, &self.denom)?;
            }
            _ => {
                f.write_str(" / (")?;
                write_factors(f, &self.denom)?;
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredFraction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_fraction, parse_polynomial};

    fn fr(u: &Arc<Universe>, s: &str) -> FactoredFraction {
        parse_fraction(u, s).unwrap()
    }

    fn abq() -> Arc<Universe> {
        Universe::new(["a", "b", "q", "t"])
    }

    #[test]
    fn frac_eq_examples() {
        let u = abq();
        assert!(frac_eq(
            &fr(&u, "(a^2 - b^2)/(1 - q^2)"),
            &fr(&u, "(a - b)*(a + b)/((1 - q)*(1 + q))")
        )
        .unwrap());
        assert!(!frac_eq(&fr(&u, "(a - b)/(1 - q)"), &fr(&u, "(a + b)/(1 - q)")).unwrap());
        assert!(frac_eq(&fr(&u, "(1 - q^3)/(1 - q)"), &fr(&u, "1 + q + q^2")).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        let u = abq();
        let zero = Polynomial::zero(&u);
        let err = FactoredFraction::ratio(&Polynomial::one(&u), &zero).unwrap_err();
        assert!(matches!(err, Error::InvalidValue(_)));
    }

    #[test]
    fn substitute_examples() {
        let u = abq();
        let h2 = fr(&u, "(a - b*q)*(a - b)/((1 - q)*(1 - q^2))");
        let s = h2
            .substitute_in_place(&[("a", fr(&u, "1")), ("b", fr(&u, "q^2"))])
            .unwrap();
        assert!(frac_eq(&s, &fr(&u, "(1 - q^3)/(1 - q)")).unwrap());
        assert_eq!(
            s.to_polynomial().unwrap(),
            parse_polynomial(&u, "1 + q + q^2").unwrap()
        );

        let pn = fr(&u, "(a^3 - b^3)/(1 - q^3)");
        assert!(pn
            .substitute_in_place(&[("a", fr(&u, "b"))])
            .unwrap()
            .is_zero());

        let x = fr(&u, "(1 - t)/(1 - q)");
        let y = x.substitute_in_place(&[("t", fr(&u, "q"))]).unwrap();
        assert!(frac_eq(&y, &FactoredFraction::one(&u)).unwrap());
    }

    #[test]
    fn substitution_pole_is_reported() {
        let u = abq();
        let x = fr(&u, "a/(1 - t*q)");
        let err = x.substitute_in_place(&[("t", fr(&u, "1/q"))]).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }

    #[test]
    fn rational_substitution_clears_denominators() {
        let u = abq();
        // t^2 + 1 at t = 1/q is (1 + q^2)/q^2
        let x = fr(&u, "t^2 + 1");
        let y = x.substitute_in_place(&[("t", fr(&u, "1/q"))]).unwrap();
        assert!(frac_eq(&y, &fr(&u, "(1 + q^2)/q^2")).unwrap());
    }

    #[test]
    fn sums_and_cancellation() {
        let u = abq();
        let a = fr(&u, "1/(1 - q)");
        let b = fr(&u, "-q/(1 - q)");
        assert!(frac_eq(&(&a + &b), &FactoredFraction::one(&u)).unwrap());
        let s = FactoredFraction::sum(&u, vec![a.clone(), b.clone(), a.clone(), b]).unwrap();
        assert!(frac_eq(&s, &fr(&u, "2")).unwrap());
        assert!((&a - &a).is_zero());
        // factors equal up to sign cancel
        let c = fr(&u, "(q - 1)/(1 - q)");
        assert_eq!(c.to_string(), "-1");
    }

    #[test]
    fn embed_moves_between_universes() {
        let small = Universe::new(["q", "t"]);
        let x = fr(&small, "(1 - t)/(1 - q)");
        let big = abq();
        let y = x.embed(&big).unwrap();
        assert!(frac_eq(&y, &fr(&big, "(1 - t)/(1 - q)")).unwrap());
    }
}
