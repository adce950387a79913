//! Named verification sweeps. Each sweep expands into independent instances
//! that run on the rayon pool; results keep the generation order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fraction::{frac_eq, FactoredFraction};
use crate::identities::{
    appendix_step, check_prop7_prop8, constant_expected, constant_identity, specialization_chain,
    symmetrized_side, AppendixSide, ConstantKind, Relation, Side, SymmetricConstantKind,
    DEFAULT_N_CAP,
};
use crate::macdonald::{
    apply_D_eigencheck, deformed_check, eigenvalue, inverse_expansions, omega_duality_check,
    omega_gn_check, prop1_check, prop2_check, prop9_check, six_way_check, DeformedKind,
    DEFAULT_OPERATOR_CAP, DEFAULT_PROP9_CAP,
};
use crate::partition::{partitions_up_to, Partition};
use crate::positivity::{thm8_check, H_nk_closed, H_poly, DEFAULT_LENGTH_CAP};
use crate::report::Check;
use crate::specialization::{
    check_evaluation, check_gauss, check_prop3, check_prop4, check_thm2, check_thm4, qt_universe,
    spec_W, spec_Z, spec_oracle, Limits, OracleMode,
};
use crate::text::parse_fraction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// the two closed forms agree
    Thm5,
    /// closed form against the power-sum oracle
    Oracle,
    /// `a = 1, b = q^N` against the direct sum
    Evaluation,
    Gauss,
    Recurrences,
    Thm6,
    Thm7,
    Prop5,
    Prop6,
    Prop7,
    Prop8,
    Appendix,
    Chain,
    Thm8,
    SixWay,
    Thm9,
    Prop9,
    Prop1,
    Prop2,
    Omega,
    OmegaDuality,
    Inverse,
    Deformed,
}

impl Identity {
    pub const ALL: [Identity; 23] = [
        Identity::Thm5,
        Identity::Oracle,
        Identity::Evaluation,
        Identity::Gauss,
        Identity::Recurrences,
        Identity::Thm6,
        Identity::Thm7,
        Identity::Prop5,
        Identity::Prop6,
        Identity::Prop7,
        Identity::Prop8,
        Identity::Appendix,
        Identity::Chain,
        Identity::Thm8,
        Identity::SixWay,
        Identity::Thm9,
        Identity::Prop9,
        Identity::Prop1,
        Identity::Prop2,
        Identity::Omega,
        Identity::OmegaDuality,
        Identity::Inverse,
        Identity::Deformed,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Identity::Thm5 => "thm5",
            Identity::Oracle => "oracle",
            Identity::Evaluation => "evaluation",
            Identity::Gauss => "gauss",
            Identity::Recurrences => "recurrences",
            Identity::Thm6 => "thm6",
            Identity::Thm7 => "thm7",
            Identity::Prop5 => "prop5",
            Identity::Prop6 => "prop6",
            Identity::Prop7 => "prop7",
            Identity::Prop8 => "prop8",
            Identity::Appendix => "appendix",
            Identity::Chain => "chain",
            Identity::Thm8 => "thm8",
            Identity::SixWay => "six-way",
            Identity::Thm9 => "thm9",
            Identity::Prop9 => "prop9",
            Identity::Prop1 => "prop1",
            Identity::Prop2 => "prop2",
            Identity::Omega => "omega",
            Identity::OmegaDuality => "omega-duality",
            Identity::Inverse => "inverse",
            Identity::Deformed => "deformed",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = match s.as_str() {
            "littlewood" => "prop6",
            "eigen" | "eigencheck" => "thm9",
            "positivity" => "thm8",
            other => other,
        };
        Identity::ALL
            .into_iter()
            .find(|i| i.tag() == s)
            .ok_or_else(|| Error::Usage(format!("unknown identity `{s}`")))
    }
}

/// Sweep bounds. `None` means the per-identity default.
#[derive(Debug, Clone, Default)]
pub struct Params {
    /// upper end of an `n` sweep
    pub n: Option<u32>,
    pub max_weight: Option<u32>,
    pub max_length: Option<usize>,
    /// alphabet size for the Macdonald checks
    pub n_vars: Option<usize>,
    /// cap on symmetrized sums
    pub max_n: Option<usize>,
    /// cap on operator alphabets
    pub max_n_vars: Option<usize>,
    /// truncation order for the series identities
    pub order: Option<usize>,
    pub limits: Limits,
}

type Task = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

fn task(instance: String, f: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Task {
    Box::new(move || Ok(vec![Check::identity(instance.clone(), f())?]))
}

fn nonempty_up_to(w: u32, max_length: Option<usize>) -> Vec<Partition> {
    partitions_up_to(w)
        .into_iter()
        .filter(|mu| max_length.is_none_or(|l| mu.len() <= l))
        .collect()
}

/// Runs one sweep. Resource-cap errors abort the sweep; every other error
/// is recorded as a failed instance.
pub fn run(identity: Identity, params: &Params) -> Result<Vec<Check>> {
    let tasks = tasks(identity, params)?;
    let done: Vec<Vec<Check>> = tasks.par_iter().map(|t| t()).collect::<Result<_>>()?;
    Ok(done.into_iter().flatten().collect())
}

fn tasks(identity: Identity, p: &Params) -> Result<Vec<Task>> {
    let lim = p.limits;
    let max_n = p.max_n.unwrap_or(DEFAULT_N_CAP);
    let mut out: Vec<Task> = Vec::new();
    match identity {
        Identity::Thm5 => {
            for mu in nonempty_up_to(p.max_weight.unwrap_or(8), p.max_length) {
                out.push(task(format!("thm5 mu={mu}"), move || {
                    frac_eq(&spec_Z(&mu, &lim)?.value, &spec_W(&mu, &lim)?.value)
                }));
            }
        }
        Identity::Oracle => {
            for mu in nonempty_up_to(p.max_weight.unwrap_or(7), p.max_length) {
                out.push(task(format!("oracle mu={mu}"), move || {
                    frac_eq(
                        &spec_Z(&mu, &lim)?.value,
                        &spec_oracle(&mu, OracleMode::Powersum, &lim)?.value,
                    )
                }));
            }
        }
        Identity::Evaluation => {
            let top = p.n_vars.unwrap_or(5);
            for mu in nonempty_up_to(p.max_weight.unwrap_or(6), p.max_length) {
                for n in mu.len()..=top {
                    let mu = mu.clone();
                    out.push(task(format!("evaluation mu={mu} N={n}"), move || {
                        check_evaluation(&mu, n, &lim)
                    }));
                }
            }
        }
        Identity::Gauss => {
            let top = p.n.unwrap_or(6);
            for n in 1..=top {
                for k in 1..=n {
                    out.push(task(format!("gauss k={k} N={n}"), move || {
                        check_gauss(k, n)
                    }));
                }
            }
        }
        Identity::Recurrences => {
            type Rec = fn(&Partition, &Limits) -> Result<bool>;
            let checks: [(&str, Rec); 4] = [
                ("prop3", check_prop3),
                ("prop4", check_prop4),
                ("thm2", check_thm2),
                ("thm4", check_thm4),
            ];
            for mu in nonempty_up_to(p.max_weight.unwrap_or(8), p.max_length) {
                for (name, f) in checks {
                    let mu = mu.clone();
                    out.push(task(format!("{name} mu={mu}"), move || f(&mu, &lim)));
                }
            }
        }
        Identity::Thm6 | Identity::Thm7 => {
            let top = p.n.unwrap_or(4) as usize;
            Error::check_cap("symmetrized sum size n", top, max_n)?;
            let other = if identity == Identity::Thm6 {
                Side::Thm6Right
            } else {
                Side::Thm7Right
            };
            for n in 1..=top {
                out.push(task(format!("{identity} n={n}"), move || {
                    let l = symmetrized_side(n, Side::Thm6Left, max_n)?;
                    let r = symmetrized_side(n, other, max_n)?;
                    frac_eq(&l.value, &r.value)
                }));
            }
        }
        Identity::Prop5 | Identity::Prop6 => {
            let (kind, w, l) = if identity == Identity::Prop5 {
                (ConstantKind::Prop5, 9, 6)
            } else {
                (ConstantKind::Littlewood, 10, 7)
            };
            let max_length = p.max_length.unwrap_or(l);
            Error::check_cap("partition length", max_length, lim.max_length)?;
            for mu in nonempty_up_to(p.max_weight.unwrap_or(w), Some(max_length)) {
                out.push(Box::new(move || {
                    let instance = format!("{identity} mu={mu}");
                    let expected = constant_expected(&mu, kind);
                    let got = constant_identity(&mu, kind, &lim);
                    match got {
                        Ok(v) => {
                            let holds = frac_eq(
                                &v,
                                &FactoredFraction::constant(v.universe(), expected.clone()),
                            )?;
                            let actual = if holds {
                                expected.to_string()
                            } else {
                                v.to_string()
                            };
                            Ok(vec![Check::values(instance, expected.to_string(), actual)])
                        }
                        Err(e) => Ok(vec![Check::identity(instance, Err(e))?]),
                    }
                }));
            }
        }
        Identity::Prop7 | Identity::Prop8 => {
            let kind = if identity == Identity::Prop7 {
                SymmetricConstantKind::Prop7
            } else {
                SymmetricConstantKind::Prop8
            };
            let top = p.n.unwrap_or(5) as usize;
            Error::check_cap("symmetrized sum size n", top, max_n)?;
            for n in 1..=top {
                out.push(task(format!("{identity} n={n}"), move || {
                    check_prop7_prop8(n, kind, max_n)
                }));
            }
        }
        Identity::Appendix => {
            let top = p.n.unwrap_or(4) as usize;
            Error::check_cap("symmetrized sum size n", top, max_n)?;
            for n in 2..=top {
                for (rname, rel) in [("y=x", Relation::SetYToX), ("y=1", Relation::SetYToOne)] {
                    for (sname, side) in [("L", AppendixSide::L), ("R", AppendixSide::R)] {
                        out.push(task(
                            format!("appendix n={n} {rname} side={sname}"),
                            move || appendix_step(n, rel, side, max_n),
                        ));
                    }
                }
            }
        }
        Identity::Chain => {
            for mu in nonempty_up_to(p.max_weight.unwrap_or(4), p.max_length) {
                out.push(task(format!("chain mu={mu}"), move || {
                    specialization_chain(&mu, &lim)
                }));
            }
        }
        Identity::Thm8 => {
            let cap = DEFAULT_LENGTH_CAP;
            for mu in nonempty_up_to(p.max_weight.unwrap_or(8), Some(p.max_length.unwrap_or(5))) {
                out.push(task(format!("thm8 mu={mu}"), move || {
                    Ok(thm8_check(&mu, &lim, cap)?.passed())
                }));
            }
            out.push(Box::new(move || {
                let mu = Partition::new(vec![2, 1])?;
                Ok(vec![Check::values(
                    "thm8 H(2,1) value",
                    canonical_qt("1 + 2*q + 2*t + q*t")?,
                    canonical_qt(&H_poly(&mu, &lim, cap)?.to_string())?,
                )])
            }));
            let top = p.n.unwrap_or(5);
            for n in 2..=top {
                for k in 1..n {
                    out.push(task(format!("thm8 closed form n={n} k={k}"), move || {
                        Ok(H_nk_closed(n, k)? == H_poly(&Partition::new(vec![n, k])?, &lim, cap)?)
                    }));
                }
            }
        }
        Identity::SixWay => {
            let n_vars = p.n_vars.unwrap_or(3);
            for n in 0..=p.n.unwrap_or(5) {
                out.push(task(format!("six-way n={n} N={n_vars}"), move || {
                    six_way_check(n, n_vars, &lim)
                }));
            }
        }
        Identity::Thm9 => {
            let cap = p.max_n_vars.unwrap_or(DEFAULT_OPERATOR_CAP);
            let top_vars = p.n_vars.unwrap_or(3);
            Error::check_cap("operator alphabet size N", top_vars, cap)?;
            for n_vars in top_vars.min(2)..=top_vars {
                out.push(task(format!("thm9 eigenvalue n=0 N={n_vars}"), move || {
                    let want =
                        parse_fraction(&qt_universe(), &format!("(1 - t^{n_vars})/(1 - t)"))?;
                    frac_eq(&FactoredFraction::from_poly(&eigenvalue(0, n_vars)), &want)
                }));
                for n in 0..=p.n.unwrap_or(4) {
                    out.push(task(format!("thm9 n={n} N={n_vars}"), move || {
                        apply_D_eigencheck(n, n_vars, cap, &lim)
                    }));
                }
            }
        }
        Identity::Prop9 => {
            let cap = p.max_n_vars.unwrap_or(DEFAULT_PROP9_CAP);
            let top = p.n_vars.unwrap_or(4);
            Error::check_cap("partial-fraction alphabet size N", top, cap)?;
            for n_vars in 1..=top {
                out.push(Box::new(move || {
                    let (sum, weighted) = match prop9_check(n_vars, cap) {
                        Ok((a, b)) => (Ok(a), Ok(b)),
                        Err(e @ Error::ResourceLimit { .. }) => return Err(e),
                        Err(e) => (Err(e.clone()), Err(e)),
                    };
                    Ok(vec![
                        Check::identity(format!("prop9 sum N={n_vars}"), sum)?,
                        Check::identity(format!("prop9 weighted N={n_vars}"), weighted)?,
                    ])
                }));
            }
        }
        Identity::Prop1 | Identity::Prop2 => {
            let n_vars = p.n_vars.unwrap_or(3);
            let order = p.order.unwrap_or(5);
            let f = if identity == Identity::Prop1 {
                prop1_check
            } else {
                prop2_check
            };
            out.push(task(
                format!("{identity} N={n_vars} order={order}"),
                move || f(n_vars, order, &lim),
            ));
        }
        Identity::Omega => {
            for n in 1..=p.n.unwrap_or(5) {
                out.push(task(format!("omega n={n}"), move || {
                    omega_gn_check(n, &lim)
                }));
            }
        }
        Identity::OmegaDuality => {
            for mu in nonempty_up_to(p.max_weight.unwrap_or(4), p.max_length) {
                out.push(task(format!("omega-duality mu={mu}"), move || {
                    omega_duality_check(&mu, &lim)
                }));
            }
        }
        Identity::Inverse => {
            let n_vars = p.n_vars.unwrap_or(3);
            for n in 1..=p.n.unwrap_or(4) {
                out.push(Box::new(move || {
                    match inverse_expansions(n, n_vars, &lim) {
                        Ok(rs) => Ok(rs
                            .into_iter()
                            .map(|(name, ok)| {
                                Check::values(
                                    format!("inverse {name} n={n} N={n_vars}"),
                                    "holds".into(),
                                    if ok { "holds" } else { "differs" }.into(),
                                )
                            })
                            .collect()),
                        Err(e) => Ok(vec![Check::identity(
                            format!("inverse n={n} N={n_vars}"),
                            Err(e),
                        )?]),
                    }
                }));
            }
        }
        Identity::Deformed => {
            let n_vars = p.n_vars.unwrap_or(3);
            for n in 1..=p.n.unwrap_or(4) {
                for (name, kind) in [("E", DeformedKind::E), ("H", DeformedKind::H)] {
                    out.push(task(
                        format!("deformed {name} n={n} N={n_vars}"),
                        move || deformed_check(kind, n, n_vars, &lim),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn canonical_qt(s: &str) -> Result<String> {
    Ok(crate::text::parse_polynomial(&qt_universe(), s)?.to_string())
}
