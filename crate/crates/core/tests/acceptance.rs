//! End-to-end acceptance run. Each criterion runs once, in order, under its
//! own wall-clock bound, and prints a single PASS or FAIL line to stderr
//! (written directly, so it shows even when test output is captured).

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use discroot::curve::CurveSpec;
use discroot::harness::{enumerate_curves, run_suite, sample_curves, CurveFilter, Suite, SuiteConfig, VerificationReport};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn no_failures(r: &VerificationReport) -> Result<(), String> {
    match r.failures().first() {
        None => Ok(()),
        Some(l) => Err(format!(
            "{} failures, first: {} {} {}",
            r.failures().len(),
            l.curve,
            l.property,
            l.witness
        )),
    }
}

fn require_properties(r: &VerificationReport, names: &[&str]) -> Result<(), String> {
    for n in names {
        ensure(!r.lines_named(n).is_empty(), format!("property {n} was never checked"))?;
    }
    Ok(())
}

fn curves_with(r: &VerificationReport, property_prefix: &str) -> BTreeSet<String> {
    r.lines.iter().filter(|l| l.property.starts_with(property_prefix)).map(|l| l.curve.clone()).collect()
}

fn suite(s: Suite, cfg: SuiteConfig) -> Result<VerificationReport, String> {
    run_suite(s, &cfg).map_err(|e| e.to_string())
}

fn torsor_combinatorics() -> Outcome {
    let r = suite(Suite::TorsorSelftest, SuiteConfig { levels: vec![3, 4], samples: 500, ..Default::default() })?;
    no_failures(&r)?;
    require_properties(
        &r,
        &[
            "projective_line_size",
            "torsor_size",
            "s4_size",
            "gh_simply_transitive",
            "cyclic_subgroup_bijection",
            "phi_basis_independence",
            "wedge_simply_transitive",
            "tau_bijective_equivariant",
            "epsilon_isomorphism",
        ],
    )?;
    let actual = |curve: &str, prop: &str| {
        r.lines.iter().find(|l| l.curve == curve && l.property == prop).map(|l| l.witness["actual"].clone())
    };
    ensure(actual("(Z/3)^2", "projective_line_size") == Some(4.into()), "|P(V)| != 4")?;
    ensure(actual("(Z/3)^2", "torsor_size") == Some(3.into()), "|T_3| != 3")?;
    ensure(actual("(Z/4)^2", "s4_size") == Some(384.into()), "|S_4(V)| != 384")?;
    ensure(actual("(Z/4)^2", "torsor_size") == Some(4.into()), "|T_4(V)| != 4")?;
    Ok(format!("{} properties", r.lines.len()))
}

/// Curves with `E[3]` rational over `F_p`, by counting points of order
/// dividing 3 with plain integer arithmetic.
fn full_three_torsion_brute_force(p: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            if (4 * a * a % p * a + 27 * b * b).is_multiple_of(p) {
                continue;
            }
            // (x, y) has order 3 iff it is an inflection point: psi_3(x) = 0.
            let mut count = 1;
            for x in 0..p {
                let psi3 = (3 * x % p * x % p * x % p * x + 6 * a % p * x % p * x + 12 * b % p * x + p * p - a * a % p) % p;
                if psi3 != 0 {
                    continue;
                }
                let rhs = (x * x % p * x + a * x + b) % p;
                count += (0..p).filter(|y| y * y % p == rhs).count();
            }
            if count == 9 {
                out.insert((a, b));
            }
        }
    }
    out
}

fn cube_roots() -> Outcome {
    let primes = [13u64, 37, 73, 97, 109];
    let mut curves = Vec::new();
    let mut rational = 0;
    for &p in &primes {
        let full = enumerate_curves(p, CurveFilter::FullTorsion(3)).map_err(|e| e.to_string())?;
        if p == 13 {
            let found: BTreeSet<(u64, u64)> = full.iter().map(|c| (c.a[3] as u64, c.a[4] as u64)).collect();
            ensure(found == full_three_torsion_brute_force(13), "full E[3] filter disagrees with point counting")?;
        }
        rational += full.len();
        curves.extend(full);
        let ext = enumerate_curves(p, CurveFilter::TorsionInExtension(3)).map_err(|e| e.to_string())?;
        curves.extend(sample_curves(&ext, 10, p));
    }
    let total = curves.len();
    ensure(total >= 200, format!("only {total} curves"))?;
    let r = suite(Suite::CubeRoots, SuiteConfig { curves: Some(curves), ..Default::default() })?;
    no_failures(&r)?;
    let checked = r.lines_named("cube_root_polynomial").len();
    ensure(checked == total, format!("{checked} of {total} curves checked"))?;
    let ext = r.lines_named("cube_root_polynomial").iter().filter(|l| l.witness["field_degree"] != 1).count();
    ensure(ext >= primes.len(), "no curves over proper extensions")?;
    Ok(format!("{total} curves ({rational} with rational E[3], {ext} over extensions)"))
}

fn fourth_roots() -> Outcome {
    let cfg = SuiteConfig { primes: vec![13, 37], sample: Some(25), ..Default::default() };
    let r = suite(Suite::FourthRoots, cfg)?;
    no_failures(&r)?;
    let curves = curves_with(&r, "w4_fourth_power_is_delta").len();
    ensure(curves >= 50, format!("only {curves} curves"))?;
    let orbits = r.lines_named("h_orbit_constancy");
    ensure(orbits.len() >= 3, format!("orbit sweep on only {} curves", orbits.len()))?;
    ensure(orbits.iter().all(|l| l.witness["representatives"] == 384), "orbit sweep incomplete")?;
    for p in ["squaring_matches_w2", "sigma_sign_law", "w4_bijective_onto_fourth_roots"] {
        ensure(r.lines_named(p).len() == curves, format!("{p} missing on some curve"))?;
    }
    Ok(format!("{curves} curves, orbit sweep on {}", orbits.len()))
}

fn pairing_equivariance() -> Outcome {
    let cfg = SuiteConfig { primes: vec![13, 37], sample: Some(15), levels: vec![3, 4], ..Default::default() };
    let r = suite(Suite::Pairing, cfg)?;
    no_failures(&r)?;
    let n3 = curves_with(&r, "wedge_equivariance_n3").len();
    let n4 = curves_with(&r, "wedge_equivariance_n4").len();
    ensure(n3 >= 25 && n4 >= 25, format!("{n3} curves for n=3, {n4} for n=4"))?;
    let signs: BTreeSet<Option<i8>> = r.lines.iter().map(|l| l.calibration_sign).collect();
    ensure(signs.len() == 1 && !signs.contains(&None), format!("calibration signs {signs:?}"))?;
    let sign = signs.into_iter().next().flatten().unwrap_or(0);
    Ok(format!("{n3} curves (n=3), {n4} curves (n=4), sign {sign:+}"))
}

fn change_of_variables() -> Outcome {
    let cfg = SuiteConfig { primes: vec![13, 37], sample: Some(10), samples: 120, ..Default::default() };
    let r = suite(Suite::Transform, cfg)?;
    no_failures(&r)?;
    let changes = r.curve_count();
    ensure(changes >= 100, format!("only {changes} changes"))?;
    for p in ["delta_u12", "b2_shift", "b4_shift", "w3_u4"] {
        ensure(r.lines_named(p).len() == changes, format!("{p} missing on some change"))?;
    }
    let w4 = r.lines_named("w4_u3").len();
    ensure(w4 >= changes / 2, format!("w4 covariance on only {w4} changes"))?;
    Ok(format!("{changes} changes, {w4} with (u, r) only"))
}

fn tate_curve() -> Outcome {
    let r = suite(Suite::Tate, SuiteConfig { levels: vec![3, 4], precision: 8, ..Default::default() })?;
    no_failures(&r)?;
    require_properties(
        &r,
        &["discriminant_is_eta_product", "tate_xy_on_curve", "w4_tau_equals_delta", "w3_tau_equals_delta"],
    )?;
    let leading = r.lines_named("w4_tau_equals_delta");
    ensure(leading.iter().all(|l| l.witness["leading_is_z"] == true), "w4 of tau is not z mod z^2")?;
    Ok(format!("N = 8, {} properties", r.lines.len()))
}

fn isogeny_classes() -> Outcome {
    let cfg = SuiteConfig { primes: vec![13, 37], degrees: vec![5, 7], ..Default::default() };
    let r = suite(Suite::Coates, cfg)?;
    no_failures(&r)?;
    let mut found = BTreeMap::new();
    for l in [5, 7] {
        let line = r.lines_named(&format!("isogenies_found_degree_{l}"));
        let n = line.first().map(|l| l.witness["isogenies"].as_u64().unwrap_or(0)).unwrap_or(0);
        // Rational l-isogenies over F_p, summed over all (a4, a6), number
        // (p - 1)^2 when X_0(l) has genus 0 and two cusps.
        ensure(n == 12 * 12 + 36 * 36, format!("{n} isogenies of degree {l}, expected 1440"))?;
        let checked: u64 = r
            .lines_named(&format!("discriminant_class_degree_{l}"))
            .iter()
            .map(|line| line.witness["isogenies"].as_u64().unwrap_or(0))
            .sum();
        ensure(checked == n, format!("{checked} of {n} degree-{l} isogenies checked"))?;
        found.insert(l, n);
    }
    require_properties(&r, &["negative_control_degree_2", "negative_control_degree_3"])?;
    let controls: Vec<String> = [2, 3]
        .iter()
        .map(|d| {
            let w = &r.lines_named(&format!("negative_control_degree_{d}"))[0].witness;
            format!("d={d}: {} of {}", w["class_failures"], w["isogenies"])
        })
        .collect();
    Ok(format!("{} + {} isogenies; controls {}", found[&5], found[&7], controls.join(", ")))
}

fn galois_equivariance() -> Outcome {
    let cfg = SuiteConfig { primes: vec![13, 37], sample: Some(15), levels: vec![3, 4], ..Default::default() };
    let r = suite(Suite::Galois, cfg)?;
    no_failures(&r)?;
    let curves = curves_with(&r, "frobenius_").len();
    ensure(curves >= 25, format!("only {curves} curves with torsion in a proper extension"))?;
    require_properties(
        &r,
        &["frobenius_equivariance_w3", "frobenius_equivariance_w4", "frobenius_pairing_det_n3", "frobenius_pairing_det_n4"],
    )?;
    Ok(format!("{curves} curves"))
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "torsor combinatorics", bound: Duration::from_secs(10), run: torsor_combinatorics },
    Criterion { id: 2, name: "cube roots of the discriminant", bound: Duration::from_secs(60), run: cube_roots },
    Criterion { id: 3, name: "fourth roots of the discriminant", bound: Duration::from_secs(120), run: fourth_roots },
    Criterion { id: 4, name: "pairing equivariance", bound: Duration::from_secs(120), run: pairing_equivariance },
    Criterion { id: 5, name: "change of variables", bound: Duration::from_secs(30), run: change_of_variables },
    Criterion { id: 6, name: "Tate curve series", bound: Duration::from_secs(30), run: tate_curve },
    Criterion { id: 7, name: "discriminant class under isogeny", bound: Duration::from_secs(120), run: isogeny_classes },
    Criterion { id: 8, name: "Galois equivariance", bound: Duration::from_secs(60), run: galois_equivariance },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.bound => Err(format!("{detail}; took {elapsed:.1?}, bound {:?}", c.bound)),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        let line = format!("{tag} [{}] {} ({:.2}s / {}s): {detail}\n", c.id, c.name, elapsed.as_secs_f64(), c.bound.as_secs());
        let _ = std::io::stderr().write_all(line.as_bytes());
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn explicit_curve_lists_are_respected() {
    let curves = vec![CurveSpec::short(13, 1, 2), CurveSpec::short(37, 3, 5)];
    let r = run_suite(Suite::CubeRoots, &SuiteConfig { curves: Some(curves), ..Default::default() }).unwrap();
    assert_eq!(r.curve_count(), 2);
}
