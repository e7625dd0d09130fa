use super::{raw_pairing, PairingCalibration};
use crate::disc_roots::w_n;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::torsion::TorsionModule;
use crate::torsor::{torsor_elements, wedge_action, RankTwoModule, WedgeElement};

/// The signs `eps` in `{1, -1}` for which
/// `w_n(v . t) = e_n(v)^eps w_n(t)` for every `v` in `wedge^2 E[n]` and
/// every `t` in `T_n(E[n])`, where `e_n(c (P0 ^ Q0)) = e_n(P0, Q0)^c` with
/// the raw Miller pairing.
pub fn valid_signs(m: &TorsionModule) -> Result<Vec<i8>> {
    let n = m.order();
    let (p0, q0) = m.reference_basis();
    let e = raw_pairing(m.curve(), m.point(p0), m.point(q0), n)?;
    let ts = torsor_elements(m)?;
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        let zeta = if sign > 0 { e.clone() } else { e.inv().expect("unit") };
        let mut ok = true;
        for t in &ts {
            let w = w_n(m, t)?.value;
            for c in 0..n {
                let moved = w_n(m, &wedge_action(m, WedgeElement(c), t)?)?.value;
                ok &= moved == zeta.pow(c as u64) * w.clone();
            }
        }
        if ok {
            out.push(sign);
        }
    }
    Ok(out)
}

/// The unique sign valid on every given module; errors if some module
/// admits no sign or the modules disagree.
pub fn calibrate_sign(modules: &[TorsionModule]) -> Result<PairingCalibration> {
    let mut chosen: Option<i8> = None;
    for m in modules {
        let signs = valid_signs(m)?;
        let [sign] = signs[..] else {
            return Err(Error::Calibration(format!("{} valid signs on {:?}", signs.len(), m.curve())));
        };
        match chosen {
            None => chosen = Some(sign),
            Some(s) if s != sign => {
                return Err(Error::Calibration(format!("sign {sign} on {:?} disagrees with {s}", m.curve())))
            }
            Some(_) => {}
        }
    }
    chosen.map(|sign| PairingCalibration { sign }).ok_or_else(|| Error::Calibration("no calibration curves".into()))
}
