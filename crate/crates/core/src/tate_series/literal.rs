//! JSON series literals and their materialization at a working precision.
//!
//! A literal is either a bare array of terms or an object with `terms` and
//! `families`:
//!
//! ```json
//! {"terms": [{"exponents": [0, 1], "coeff": [[1]]}],
//!  "families": [{"var": 0, "coeff": [[-1]], "quad": [1, 0, 0]}]}
//! ```
//!
//! A term is `coeff(t) · t^val_shift · x^exponents`, where `coeff` lists the
//! coefficients of a polynomial in t (t ↦ p in the p-adic case). A family is
//! `sum_{k ≥ 0} coeff · t^(a k² + b k + c) · x_var^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ErrBound, PowerSeries, SeriesError};
use crate::field_tower::valuation::parse_rational;
use crate::field_tower::{Base, LocalElem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermLiteral {
    pub exponents: Vec<u32>,
    pub coeff: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub val_shift: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLiteral {
    pub var: usize,
    pub coeff: Vec<Vec<i64>>,
    /// (a, b, c) in the exponent a k² + b k + c.
    pub quad: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesLiteral {
    Terms(Vec<TermLiteral>),
    Full {
        #[serde(default)]
        terms: Vec<TermLiteral>,
        #[serde(default)]
        families: Vec<FamilyLiteral>,
    },
}

/// A parsed literal that can be re-materialized at any precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesDef {
    pub nvars: usize,
    pub terms: Vec<TermLiteral>,
    pub families: Vec<FamilyLiteral>,
}

fn shift_of(t: &TermLiteral) -> Result<BigRational, SeriesError> {
    match &t.val_shift {
        None => Ok(BigRational::zero()),
        Some(s) => {
            let v = parse_rational(s).ok_or_else(|| SeriesError::Literal(format!("val_shift {s:?}")))?;
            if v.is_negative() {
                return Err(SeriesError::Literal(format!("negative val_shift {s:?}")));
            }
            Ok(v)
        }
    }
}

impl SeriesDef {
    pub fn from_literal(lit: &SeriesLiteral, nvars: usize) -> Result<Self, SeriesError> {
        let (terms, families) = match lit {
            SeriesLiteral::Terms(t) => (t.clone(), Vec::new()),
            SeriesLiteral::Full { terms, families } => (terms.clone(), families.clone()),
        };
        for t in &terms {
            if t.exponents.len() != nvars {
                return Err(SeriesError::ArityMismatch(t.exponents.len(), nvars));
            }
            shift_of(t)?;
        }
        for f in &families {
            if f.var >= nvars {
                return Err(SeriesError::Literal(format!("family variable {} out of range", f.var)));
            }
            let [a, b, _] = f.quad;
            if a < 0 || (a == 0 && b <= 0) {
                return Err(SeriesError::Literal("family exponents must grow without bound".into()));
            }
        }
        Ok(SeriesDef { nvars, terms, families })
    }

    pub fn parse_json(s: &str, nvars: usize) -> Result<Self, SeriesError> {
        let lit: SeriesLiteral = serde_json::from_str(s).map_err(|e| SeriesError::Literal(e.to_string()))?;
        Self::from_literal(&lit, nvars)
    }

    pub fn is_polynomial(&self) -> bool {
        self.families.is_empty()
    }

    /// Builds the series, keeping family terms of valuation below `prec` and
    /// certifying the rest.
    pub fn materialize<B: Base>(
        &self,
        base: &B,
        delta: &[BigRational],
        prec: i64,
    ) -> Result<PowerSeries<B>, SeriesError> {
        let mut root = 1u64;
        for t in &self.terms {
            let d = u64::try_from(shift_of(t)?.denom()).map_err(|_| SeriesError::RootOverflow)?;
            root = num_integer::lcm(root, d);
        }
        let mut out = PowerSeries::zero(base, self.nvars, delta.to_vec()).lift_root(root);
        for t in &self.terms {
            let c = base.int_from_digits(&t.coeff)?;
            let sh = shift_of(t)?;
            let k = (sh * BigInt::from(root)).to_integer();
            let k = u64::try_from(k).map_err(|_| SeriesError::RootOverflow)?;
            let coef = LocalElem::from_int(base, c).lift(base, root).mul(base, &LocalElem::s_pow(base, root, k));
            out.add_term(t.exponents.clone(), coef);
        }
        for f in &self.families {
            let c = base.int_from_digits(&f.coeff)?;
            if base.is_zero(&c) {
                continue;
            }
            let cv = base.val(&c).unwrap() as i64;
            let [a, b, c0] = f.quad;
            let expo = |k: i64| a * k * k + b * k + c0;
            // past the vertex the exponent is increasing
            let vertex = if a > 0 { (-b).div_euclid(2 * a).max(0) + 1 } else { 0 };
            let mut k = 0i64;
            loop {
                let e = expo(k);
                if e < 0 {
                    return Err(SeriesError::Literal("family exponent is negative".into()));
                }
                if k >= vertex && e + cv >= prec {
                    break;
                }
                let mut nu = vec![0u32; self.nvars];
                nu[f.var] = k as u32;
                let coef = LocalElem::from_int(base, base.mul(&c, &base.pi_pow(e as u32)));
                out.add_term(nu, coef);
                k += 1;
            }
            let mut vars = vec![false; self.nvars];
            vars[f.var] = k > 0;
            let e0 = BigRational::from_integer(BigInt::from(expo(k) + cv));
            out.add_err(ErrBound {
                e0,
                w: vec![BigRational::zero(); self.nvars],
                vars: if k > 0 { Some(vars) } else { None },
            });
        }
        Ok(out)
    }
}

/// Writes a series back as a literal (error bounds are not representable
/// and are dropped).
pub fn to_literal<B: Base>(f: &PowerSeries<B>) -> SeriesLiteral {
    let b = f.base();
    let mut terms = Vec::new();
    for (nu, c) in f.terms() {
        for (r, a) in c.components() {
            terms.push(TermLiteral {
                exponents: nu.clone(),
                coeff: b.int_to_digits(a),
                val_shift: (*r != 0).then(|| format!("{r}/{}", c.root())),
            });
        }
    }
    SeriesLiteral::Terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{PadicBase, TadicBase, Valuation};

    const GRAPH: &str = r#"{"terms": [{"exponents": [0, 1], "coeff": [[1]]}],
        "families": [{"var": 0, "coeff": [[-1]], "quad": [1, 0, 0]}]}"#;

    #[test]
    fn graph_literal_materializes() {
        let b = TadicBase::new(2).unwrap();
        let def = SeriesDef::parse_json(GRAPH, 2).unwrap();
        let d = vec![BigRational::from_integer(1.into()), BigRational::zero()];
        let f = def.materialize(&b, &d, 10).unwrap();
        // k = 0..3 kept (k² < 10), plus y
        assert_eq!(f.terms().len(), 5);
        assert_eq!(f.err().unwrap().e0, BigRational::from_integer(16.into()));
        assert!(f.is_integral());
    }

    #[test]
    fn shifted_terms_round_trip() {
        let b = PadicBase::new(5).unwrap();
        let s = r#"[{"exponents": [1], "coeff": [[2], [1]], "val_shift": "1/3"}]"#;
        let def = SeriesDef::parse_json(s, 1).unwrap();
        let f = def.materialize(&b, &[BigRational::zero()], 10).unwrap();
        assert_eq!(f.root(), 3);
        assert_eq!(f.gauss_norm(), Valuation::ratio(1, 3));
        let lit = to_literal(&f);
        let g = SeriesDef::from_literal(&lit, 1).unwrap().materialize(&b, &[BigRational::zero()], 10).unwrap();
        assert!(g.same_terms(&f));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(SeriesDef::parse_json(r#"[{"exponents": [1, 2], "coeff": [[1]]}]"#, 1).is_err());
        assert!(SeriesDef::parse_json(r#"{"families": [{"var": 0, "coeff": [[1]], "quad": [0, 0, 1]}]}"#, 1).is_err());
        assert!(SeriesDef::parse_json(r#"[{"exponents": [1], "coeff": [[1]], "val_shift": "-1"}]"#, 1).is_err());
    }
}
