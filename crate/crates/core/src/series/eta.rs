use super::{LaurentSeries, Scalar};
use crate::error::{Error, Result};

/// `prod_{m >= 1} (1 - z^{step*m})^weight + O(z^prec)`.
///
/// The monomial prefactor (`q` for the discriminant, `z` for its roots) is
/// left to the caller. Only factors with `step*m < prec` contribute.
pub fn eta_power_product<C: Scalar>(step: i64, weight: u32, prec: i64) -> Result<LaurentSeries<C>> {
    if prec <= 0 {
        return Err(Error::InvalidArgument(format!("precision must be positive, got {prec}")));
    }
    if step <= 0 {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let mut acc = LaurentSeries::<C>::one(prec);
    let mut m = 1;
    while step * m < prec {
        let factor = LaurentSeries::from_coeffs(0, vec![C::one()], prec)
            - LaurentSeries::monomial(C::one(), step * m, prec);
        acc = &acc * &factor.checked_pow(weight as i64)?;
        m += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Rational;

    fn ints(s: &LaurentSeries<Rational>, upto: i64) -> Vec<i64> {
        (0..upto).map(|e| s.coeff(e).unwrap().to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn ramanujan_tau_prefix() {
        let p = eta_power_product::<Rational>(1, 24, 5).unwrap();
        assert_eq!(ints(&p, 5), vec![1, -24, 252, -1472, 4830]);
        let q = LaurentSeries::var(6);
        let delta = &q * &p;
        assert_eq!(delta.coeff(1).unwrap(), Rational::from_i64(1));
        assert_eq!(delta.coeff(4).unwrap(), Rational::from_i64(-1472));
    }

    #[test]
    fn step_four_weight_six() {
        let p = eta_power_product::<Rational>(4, 6, 5).unwrap();
        assert_eq!(ints(&p, 5), vec![1, 0, 0, 0, -6]);
    }

    #[test]
    fn empty_truncation_and_errors() {
        let p = eta_power_product::<Rational>(3, 8, 1).unwrap();
        assert_eq!(p, LaurentSeries::one(1));
        assert!(eta_power_product::<Rational>(1, 24, 0).is_err());
    }
}
