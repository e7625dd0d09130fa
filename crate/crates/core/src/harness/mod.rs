//! Batch verification: curve enumeration, suite orchestration and
//! JSON-lines reports.

mod curves;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use curves::{enumerate_curves, sample_curves, CurveFilter, MAX_ENUMERATION_PRIME};
pub use suites::{
    chain_checks, cube_root_checks, dual_checks, fourth_root_checks, frobenius_checks, isogeny_sweep, module,
    pairing_checks, random_change, transform_checks, twelfth_root_check, y_squared_model, IsogenySweep,
};

use crate::check::Check;
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::pairing::{valid_signs, PairingCalibration};
use crate::torsion::base_field;

/// The named property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Exhaustive torsor combinatorics on `(Z/n)^2`.
    TorsorSelftest,
    /// `prod (T - w_3(t)) = T^3 - Delta`.
    CubeRoots,
    /// `w~_4` and `w_4` as fourth roots of `Delta`.
    FourthRoots,
    /// Compatibility of `w_n` with the Weil pairing and sign calibration.
    Pairing,
    /// Tate curve series identities.
    Tate,
    /// Discriminant classes along isogenies of degree prime to 12.
    Coates,
    /// Covariance under changes of variables.
    Transform,
    /// Frobenius equivariance on torsion over proper extensions.
    Galois,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::TorsorSelftest,
        Suite::CubeRoots,
        Suite::FourthRoots,
        Suite::Pairing,
        Suite::Tate,
        Suite::Coates,
        Suite::Transform,
        Suite::Galois,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::TorsorSelftest => "torsor-selftest",
            Suite::CubeRoots => "cube-roots",
            Suite::FourthRoots => "fourth-roots",
            Suite::Pairing => "pairing",
            Suite::Tate => "tate",
            Suite::Coates => "coates",
            Suite::Transform => "transform",
            Suite::Galois => "galois",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a suite run depends on. Identical configs give identical reports
/// (apart from timings, which are only recorded on request). Missing JSON
/// fields take their default values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub primes: Vec<u64>,
    /// Explicit curves; when present, `primes` and `sample` are ignored.
    pub curves: Option<Vec<CurveSpec>>,
    /// Seeded sample of this many curves per prime instead of all of them.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Torsion levels `n` in {3, 4}.
    pub levels: Vec<u32>,
    /// Series precision for the Tate suite.
    pub precision: i64,
    /// Isogeny degrees for the Coates suite.
    pub degrees: Vec<u32>,
    /// At most this many curves per prime in the Coates suite.
    pub budget: Option<usize>,
    /// Random pairs for sampled torsor checks; random changes for `transform`.
    pub samples: usize,
    /// Record per-curve wall time in each report line.
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            primes: vec![13],
            curves: None,
            sample: None,
            seed: 0x5eed,
            levels: vec![3, 4],
            precision: 8,
            degrees: vec![5, 7],
            budget: None,
            samples: 500,
            timings: false,
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if let Some(n) = self.levels.iter().find(|n| **n != 3 && **n != 4) {
            return Err(Error::UnsupportedLevel(*n));
        }
        if self.curves.is_none() && self.primes.is_empty() {
            return Err(Error::InvalidArgument("no primes and no curve list".into()));
        }
        if self.precision < 2 {
            return Err(Error::InvalidArgument("precision must be at least 2".into()));
        }
        Ok(())
    }

    /// The curves a suite runs on, after enumeration, filtering and sampling.
    pub fn curves(&self, filter: CurveFilter) -> Result<Vec<CurveSpec>> {
        if let Some(c) = &self.curves {
            return Ok(c.clone());
        }
        let mut out = Vec::new();
        for &p in &self.primes {
            let all = enumerate_curves(p, filter)?;
            out.extend(match self.sample {
                Some(k) => sample_curves(&all, k, self.seed ^ p),
                None => all,
            });
        }
        Ok(out)
    }
}

/// One `(curve, property)` outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub suite: String,
    pub curve: String,
    pub property: String,
    pub passed: bool,
    pub witness: Value,
    pub calibration_sign: Option<i8>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub lines: Vec<ReportLine>,
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> Vec<&ReportLine> {
        self.lines.iter().filter(|l| !l.passed).collect()
    }

    /// Distinct curve labels that produced at least one line.
    pub fn curve_count(&self) -> usize {
        self.lines.iter().map(|l| &l.curve).collect::<std::collections::BTreeSet<_>>().len()
    }

    pub fn lines_named(&self, property: &str) -> Vec<&ReportLine> {
        self.lines.iter().filter(|l| l.property == property).collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&serde_json::to_string(l).expect("report lines serialize"));
            s.push('\n');
        }
        s
    }

    /// 0 when every property passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

struct Recorder<'a> {
    suite: Suite,
    cfg: &'a SuiteConfig,
    lines: Vec<ReportLine>,
    sign: Option<i8>,
}

impl Recorder<'_> {
    fn push(&mut self, curve: &str, check: Check, elapsed: Option<f64>) {
        self.lines.push(ReportLine {
            suite: self.suite.name().to_string(),
            curve: curve.to_string(),
            property: check.name,
            passed: check.passed,
            witness: check.detail,
            calibration_sign: self.sign,
            seed: self.cfg.seed,
            elapsed_ms: if self.cfg.timings { elapsed } else { None },
        });
    }

    /// Run `f`, recording its checks, or an `error` line if it fails.
    fn run(&mut self, curve: &str, f: impl FnOnce() -> Result<Vec<Check>>) {
        let start = Instant::now();
        let res = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match res {
            Ok(checks) => {
                for c in checks {
                    self.push(curve, c, Some(ms));
                }
            }
            Err(e) => self.push(curve, Check::new("error", false, json!({ "error": e.to_string() })), Some(ms)),
        }
    }
}

/// Run the named suite.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut rec = Recorder { suite, cfg, lines: Vec::new(), sign: None };
    match suite {
        Suite::TorsorSelftest => {
            for &n in &cfg.levels {
                rec.run(&format!("(Z/{n})^2"), || crate::torsor::selftest(n, cfg.samples, cfg.seed));
            }
        }
        Suite::CubeRoots => {
            for spec in cfg.curves(CurveFilter::All)? {
                rec.run(&spec.to_string(), || cube_root_checks(&spec.curve()?));
            }
        }
        Suite::FourthRoots => {
            for (i, spec) in cfg.curves(CurveFilter::All)?.iter().enumerate() {
                // The orbit sweep is the expensive part; three curves suffice for it.
                rec.run(&spec.to_string(), || fourth_root_checks(&spec.curve()?, i < 3));
            }
        }
        Suite::Pairing => run_pairing(&mut rec)?,
        Suite::Tate => {
            for &n in &cfg.levels {
                rec.run(&format!("tate(n={n})"), || crate::tate::tate_checks(n as i64, cfg.precision));
            }
        }
        Suite::Coates => run_coates(&mut rec)?,
        Suite::Transform => {
            let curves = cfg.curves(CurveFilter::All)?;
            if curves.is_empty() {
                return Err(Error::InvalidArgument("no curves to transform".into()));
            }
            let mut rng = suites::suite_rng(cfg.seed);
            for i in 0..cfg.samples {
                let spec = &curves[i % curves.len()];
                let u_r_only = i % 2 == 0;
                let label = format!("{spec}#{i}");
                rec.run(&label, || transform_checks(&spec.curve()?, u_r_only, &mut rng));
            }
        }
        Suite::Galois => {
            for spec in cfg.curves(CurveFilter::All)? {
                for &n in &cfg.levels {
                    rec.run(&spec.to_string(), || {
                        let m = module(&spec.curve()?, n)?;
                        if base_field(m.curve()).degree() == 1 {
                            return Ok(Vec::new());
                        }
                        frobenius_checks(&m)
                    });
                }
            }
        }
    }
    Ok(VerificationReport { suite, lines: rec.lines })
}

fn run_pairing(rec: &mut Recorder) -> Result<()> {
    let cfg = rec.cfg;
    let mut per_curve = Vec::new();
    for spec in cfg.curves(CurveFilter::All)? {
        let start = Instant::now();
        let res: Result<Vec<(u32, crate::torsion::TorsionModule, Vec<i8>)>> = (|| {
            let e = spec.curve()?;
            let mut v = Vec::new();
            for &n in &cfg.levels {
                let m = module(&e, n)?;
                let signs = valid_signs(&m)?;
                v.push((n, m, signs));
            }
            Ok(v)
        })();
        per_curve.push((spec, res, start.elapsed().as_secs_f64() * 1e3));
    }
    let all_signs: Vec<&Vec<i8>> =
        per_curve.iter().filter_map(|(_, r, _)| r.as_ref().ok()).flat_map(|v| v.iter().map(|(_, _, s)| s)).collect();
    let singles: BTreeSetI8 = all_signs.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
    let uniform = !all_signs.is_empty() && all_signs.iter().all(|s| s.len() == 1) && singles.len() == 1;
    let sign = singles.iter().next().copied();
    rec.sign = if uniform { sign } else { None };
    rec.push(
        "*",
        Check::new(
            "calibration_uniform",
            uniform,
            json!({ "sign": sign, "modules": all_signs.len(), "levels": cfg.levels }),
        ),
        None,
    );
    let cal = PairingCalibration { sign: sign.unwrap_or(1) };
    for (spec, res, ms) in per_curve {
        let label = spec.to_string();
        match res {
            Err(e) => rec.push(&label, Check::new("error", false, json!({ "error": e.to_string() })), Some(ms)),
            Ok(mods) => {
                for (n, m, signs) in &mods {
                    let ok = uniform && signs.as_slice() == [cal.sign];
                    let degree = base_field(m.curve()).degree();
                    rec.push(
                        &label,
                        Check::new(format!("wedge_equivariance_n{n}"), ok, json!({ "valid_signs": signs, "field_degree": degree })),
                        Some(ms),
                    );
                    rec.run(&label, || pairing_checks(m, cal).map(|c| vec![c]));
                }
                let m3 = mods.iter().find(|(n, _, _)| *n == 3);
                let m4 = mods.iter().find(|(n, _, _)| *n == 4);
                if let (Some((_, m3, _)), Some((_, m4, _))) = (m3, m4) {
                    rec.run(&label, || twelfth_root_check(m3, m4).map(|c| vec![c]));
                }
            }
        }
    }
    Ok(())
}

type BTreeSetI8 = std::collections::BTreeSet<i8>;

fn legendre_is_minus_one(a: u64, l: u64) -> bool {
    let a = a % l;
    a != 0 && (1..l).all(|x| x * x % l != a)
}

fn run_coates(rec: &mut Recorder) -> Result<()> {
    let cfg = rec.cfg;
    let mut degrees = cfg.degrees.clone();
    for d in [2, 3] {
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    let mut curves = Vec::new();
    if let Some(c) = &cfg.curves {
        curves = c.clone();
    } else {
        for &p in &cfg.primes {
            let mut all = enumerate_curves(p, CurveFilter::All)?;
            if let Some(k) = cfg.sample {
                all = sample_curves(&all, k, cfg.seed ^ p);
            }
            if let Some(b) = cfg.budget {
                all.truncate(b);
            }
            curves.extend(all);
        }
    }
    let mut totals: std::collections::BTreeMap<u32, (usize, usize, usize)> = Default::default();
    let mut duals_done: std::collections::BTreeMap<(u64, u32), usize> = Default::default();
    let mut chains_done = 0usize;
    for spec in &curves {
        let label = spec.to_string();
        let mut sweep = None;
        rec.run(&label, || {
            let s = isogeny_sweep(&spec.curve()?, &degrees)?;
            let checks = s.checks.clone();
            sweep = Some(s);
            Ok(checks)
        });
        let Some(sweep) = sweep else { continue };
        for (l, found, fails) in &sweep.counts {
            let t = totals.entry(*l).or_default();
            t.0 += 1;
            t.1 += found;
            t.2 += fails;
        }
        for &l in &cfg.degrees {
            let found = sweep.counts.iter().any(|(d, k, _)| *d == l && *k > 0);
            let done = duals_done.entry((spec.p, l)).or_default();
            if found && *done < 2 && spec.ext_degree == 1 && legendre_is_minus_one(spec.p, l as u64) {
                *done += 1;
                rec.run(&label, || dual_checks(&spec.curve()?, l, 1));
            }
        }
        if chains_done < 5 {
            if let Some(&l) = cfg.degrees.first() {
                if sweep.counts.iter().any(|(d, k, _)| *d == l && *k > 0) {
                    chains_done += 1;
                    rec.run(&label, || Ok(chain_checks(&spec.curve()?, l, l)?.into_iter().collect()));
                }
            }
        }
    }
    for (l, (curves_seen, found, fails)) in &totals {
        let detail = json!({ "degree": l, "curves": curves_seen, "isogenies": found, "class_failures": fails });
        if 12 % l == 0 {
            rec.push("*", Check::new(format!("negative_control_degree_{l}"), *fails > 0, detail), None);
        } else {
            // No isogenies in the budget is reported, not a failure.
            rec.push("*", Check::new(format!("isogenies_found_degree_{l}"), true, detail), None);
        }
    }
    Ok(())
}
