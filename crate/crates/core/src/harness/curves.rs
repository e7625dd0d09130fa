use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{nth_power_class, FiniteField};
use crate::isogeny::find_kernel_point;
use crate::torsion::full_torsion;

/// Largest prime accepted by [`enumerate_curves`].
pub const MAX_ENUMERATION_PRIME: u64 = 10_000;

/// Which short Weierstrass curves [`enumerate_curves`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveFilter {
    All,
    /// `E[n]` is rational over `F_p` (`n` = 3 or 4).
    FullTorsion(u32),
    /// `E[n]` is not rational over `F_p`.
    TorsionInExtension(u32),
    /// `E(F_p)` has a point of order `l`.
    PointOfOrder(u32),
    /// `Delta` is a 12th power in `F_p`.
    DeltaTwelfthPower,
    /// The smallest `(a4, a6)` in its class under `(a4, a6) ~ (u^4 a4, u^6 a6)`.
    IsomorphismClass,
}

impl FromStr for CurveFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let level = |rest: &str| rest.parse::<u32>().map_err(|_| Error::InvalidArgument(format!("bad filter `{s}`")));
        Ok(match s {
            "" | "all" => Self::All,
            "delta-12th-power" => Self::DeltaTwelfthPower,
            "iso-classes" => Self::IsomorphismClass,
            _ => {
                if let Some(r) = s.strip_prefix("full-").and_then(|r| r.strip_suffix("-torsion")) {
                    Self::FullTorsion(level(r)?)
                } else if let Some(r) = s.strip_prefix("ext-").and_then(|r| r.strip_suffix("-torsion")) {
                    Self::TorsionInExtension(level(r)?)
                } else if let Some(r) = s.strip_prefix("point-order-") {
                    Self::PointOfOrder(level(r)?)
                } else {
                    return Err(Error::InvalidArgument(format!("unknown curve filter `{s}`")));
                }
            }
        })
    }
}

impl fmt::Display for CurveFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::All => write!(f, "all"),
            Self::FullTorsion(n) => write!(f, "full-{n}-torsion"),
            Self::TorsionInExtension(n) => write!(f, "ext-{n}-torsion"),
            Self::PointOfOrder(l) => write!(f, "point-order-{l}"),
            Self::DeltaTwelfthPower => write!(f, "delta-12th-power"),
            Self::IsomorphismClass => write!(f, "iso-classes"),
        }
    }
}

fn keep(spec: &CurveSpec, filter: CurveFilter, field: &FiniteField) -> Result<bool> {
    let e = spec.curve()?;
    Ok(match filter {
        CurveFilter::All => true,
        CurveFilter::FullTorsion(n) => full_torsion(&e, n)?.is_some(),
        CurveFilter::TorsionInExtension(n) => full_torsion(&e, n)?.is_none(),
        CurveFilter::PointOfOrder(l) => find_kernel_point(&e, l, crate::isogeny::ISOGENY_SEED)?.is_some(),
        CurveFilter::DeltaTwelfthPower => nth_power_class(e.discriminant(), 12)?,
        CurveFilter::IsomorphismClass => {
            let p = field.characteristic() as i64;
            let [.., a4, a6] = spec.a;
            (1..p).all(|u| {
                let u2 = u * u % p;
                let (b4, b6) = (a4 * (u2 * u2 % p) % p, a6 * (u2 * u2 % p * u2 % p) % p);
                (a4, a6) <= (b4, b6)
            })
        }
    })
}

/// All nonsingular `y^2 = x^3 + a x + b` over `F_p` passing `filter`,
/// ordered by `(a, b)`.
pub fn enumerate_curves(p: u64, filter: CurveFilter) -> Result<Vec<CurveSpec>> {
    if p <= 3 || p > MAX_ENUMERATION_PRIME {
        return Err(Error::InvalidArgument(format!("enumeration needs a prime 3 < p <= 10^4, got {p}")));
    }
    let field = FiniteField::prime(p)?;
    let mut out = Vec::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            if (4 * a * a % p as i64 * a + 27 * b * b) % p as i64 == 0 {
                continue;
            }
            let spec = CurveSpec::short(p, a, b);
            if keep(&spec, filter, &field)? {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// `count` of the given curves chosen with a seeded generator, in their original order.
pub fn sample_curves(curves: &[CurveSpec], count: usize, seed: u64) -> Vec<CurveSpec> {
    if count >= curves.len() {
        return curves.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, curves.len(), count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| curves[i].clone()).collect()
}
