//! JSON records for exact values.
//!
//! A fraction is stored by its factors so that reading a record back and
//! writing it again reproduces the same bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::FactoredFraction;
use crate::poly::Universe;
use crate::rational::Rational;
use crate::text::parse_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub factor: String,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionRecord {
    pub variables: Vec<String>,
    /// Expanded numerator, scalar included.
    pub numerator: String,
    pub coefficient: String,
    pub numerator_factors: Vec<FactorRecord>,
    pub denominator_factors: Vec<FactorRecord>,
}

fn factor_records(fs: &[(crate::poly::Polynomial, u32)]) -> Vec<FactorRecord> {
    fs.iter()
        .map(|(p, k)| FactorRecord {
            factor: p.to_string(),
            power: *k,
        })
        .collect()
}

impl FractionRecord {
    pub fn from_fraction(f: &FactoredFraction) -> Self {
        FractionRecord {
            variables: f.universe().names().to_vec(),
            numerator: f.numerator().to_string(),
            coefficient: f.coefficient().to_string(),
            numerator_factors: factor_records(f.numerator_factors()),
            denominator_factors: factor_records(f.denominator_factors()),
        }
    }

    pub fn to_fraction(&self) -> Result<FactoredFraction> {
        let u = Universe::new(self.variables.iter().cloned());
        let coeff: Rational = self
            .coefficient
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient `{}`", self.coefficient)))?;
        let read = |fs: &[FactorRecord]| -> Result<Vec<_>> {
            fs.iter()
                .map(|r| Ok((parse_polynomial(&u, &r.factor)?, r.power)))
                .collect()
        };
        let f = FactoredFraction::from_parts(
            &u,
            coeff,
            read(&self.numerator_factors)?,
            read(&self.denominator_factors)?,
        )?;
        if f.numerator().to_string() != self.numerator {
            return Err(Error::Parse("numerator does not match its factors".into()));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;

    #[test]
    fn round_trip() {
        let u = Universe::new(["a", "b", "q"]);
        for s in [
            "(a - b)*(a*q - b)/((1 - q)*(1 - q^2))",
            "-3/2 * (1 - q)*(1 + q)/(1 - q^2)",
            "0",
            "7",
        ] {
            let f = parse_fraction(&u, s).unwrap();
            let rec = FractionRecord::from_fraction(&f);
            let text = serde_json::to_string(&rec).unwrap();
            let back: FractionRecord = serde_json::from_str(&text).unwrap();
            let again = FractionRecord::from_fraction(&back.to_fraction().unwrap());
            assert_eq!(serde_json::to_string(&again).unwrap(), text);
        }
    }

    #[test]
    fn rejects_inconsistent_numerator() {
        let u = Universe::new(["q"]);
        let mut rec = FractionRecord::from_fraction(&parse_fraction(&u, "1 - q").unwrap());
        rec.numerator = "q".into();
        assert!(rec.to_fraction().is_err());
    }
}
