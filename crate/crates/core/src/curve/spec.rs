use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};

/// Serializable description of a curve over `F_{p^k}` whose coefficients
/// lie in the prime field: `{"p": 13, "ext_degree": 1, "a": [a1, a2, a3, a4, a6]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub ext_degree: usize,
    pub a: [i64; 5],
}

fn one() -> usize {
    1
}

impl CurveSpec {
    pub fn new(p: u64, ext_degree: usize, a: [i64; 5]) -> Self {
        let a = a.map(|c| c.rem_euclid(p as i64));
        Self { p, ext_degree, a }
    }

    /// `y^2 = x^3 + a4 x + a6` over `F_p`.
    pub fn short(p: u64, a4: i64, a6: i64) -> Self {
        Self::new(p, 1, [0, 0, 0, a4, a6])
    }

    pub fn field(&self) -> Result<FiniteField> {
        FiniteField::extension(self.p, self.ext_degree)
    }

    pub fn curve(&self) -> Result<WeierstrassCurve<Fq>> {
        self.curve_over(&self.field()?)
    }

    /// The curve with coefficients lifted into `field`, which must have
    /// characteristic `p`.
    pub fn curve_over(&self, field: &FiniteField) -> Result<WeierstrassCurve<Fq>> {
        if field.characteristic() != self.p {
            return Err(Error::FieldMismatch);
        }
        WeierstrassCurve::from_array(self.a.map(|c| field.from_i64(c)))
    }

    /// Inverse of [`CurveSpec::curve`] for curves with prime-field coefficients.
    pub fn from_curve(e: &WeierstrassCurve<Fq>) -> Result<Self> {
        let field = e.a1().field().clone();
        let mut a = [0i64; 5];
        for (slot, c) in a.iter_mut().zip(e.coefficients()) {
            if !c.is_prime_field_element() {
                return Err(Error::InvalidArgument("coefficient outside the prime field".into()));
            }
            *slot = c.residue() as i64;
        }
        Ok(Self { p: field.characteristic(), ext_degree: field.degree(), a })
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.a;
        write!(f, "F_{}^{}:[{a1},{a2},{a3},{a4},{a6}]", self.p, self.ext_degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = CurveSpec::new(13, 2, [0, 1, 0, -1, 3]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"p":13,"ext_degree":2,"a":[0,1,0,12,3]}"#);
        let back: CurveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(CurveSpec::from_curve(&s.curve().unwrap()).unwrap(), s);
        let short: CurveSpec = serde_json::from_str(r#"{"p":5,"a":[0,0,0,1,1]}"#).unwrap();
        assert_eq!(short.ext_degree, 1);
    }

    #[test]
    fn singular_spec_is_an_error() {
        assert!(CurveSpec::short(7, 0, 0).curve().is_err());
    }
}
