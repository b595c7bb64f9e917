//! Named check suites over lattices and algebras, producing serializable
//! verdicts with witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::binuclear::{
    build_ni_order, check_bez, is_binuclear_lattice, ni_join, ni_meet, verify_pop_characterization,
    BinucPoset, BinuclearVerdict, NiBound,
};
use crate::lattice::{is_lattice, FinLattice, LatticeVerdict, Poset};
use crate::semidistrib::{
    check_kappa_properties, check_semidistributivity, kappa_ni, verify_cjirr_binuc, KappaError,
    SdVerdict,
};
use crate::torsion::{
    bricks_and_kappa, cone_data, cw_partition, enumerate_presilting, enumerate_tors_with_limit,
    fss_cover_check, hasse_vs_incidence, interior_point, random_theta, res_interval, tf_interval,
    AlgebraSpec, StabilityVector, TorsData, TorsionError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn pass(name: &str) -> Self {
        Check {
            name: name.to_string(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn fail(name: &str, witness: Value) -> Self {
        Check {
            name: name.to_string(),
            verdict: Verdict::Fail,
            witness: Some(witness),
        }
    }

    fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            verdict: Verdict::Skipped,
            witness: Some(json!({ "reason": reason.into() })),
        }
    }

    fn from_result(name: &str, r: Result<(), Value>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(w) => Check::fail(name, w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lattice,
    Binuclear,
    Semidistributive,
    Kappa,
    Torsion,
    Fss,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lattice,
        Suite::Binuclear,
        Suite::Semidistributive,
        Suite::Kappa,
        Suite::Torsion,
        Suite::Fss,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Binuclear => "binuclear",
            Suite::Semidistributive => "semidistributive",
            Suite::Kappa => "kappa",
            Suite::Torsion => "torsion",
            Suite::Fss => "fss",
            Suite::All => "all",
        }
    }

    fn runs(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub theta_samples: usize,
    pub max_indec: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            theta_samples: 500,
            max_indec: crate::torsion::DEFAULT_MAX_INDEC,
        }
    }
}

/// Checks in canonical order plus summary counts.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub summary: BTreeMap<String, Value>,
}

impl SuiteOutput {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn note(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }
}

/// Runs `suite` on a poset read from a lattice file. Everything except the
/// lattice test is skipped when the poset is not a lattice; the torsion
/// suites do not apply to plain lattices.
pub fn run_on_poset(name: &str, poset: Poset, suite: Suite) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    out.note("elements", poset.len());
    let verdict = is_lattice(&poset);
    if suite.runs(Suite::Lattice) {
        out.push(match verdict {
            LatticeVerdict::Lattice => Check::pass("is_lattice"),
            LatticeVerdict::Missing { a, b, missing } => Check::fail(
                "is_lattice",
                json!({ "a": poset.label(a), "b": poset.label(b), "missing": missing }),
            ),
        });
    }
    let lattice = match (verdict, FinLattice::from_poset(name, poset)) {
        (LatticeVerdict::Lattice, Ok(l)) => l,
        (_, res) => {
            let reason = match res {
                Err(e) => e.to_string(),
                Ok(_) => "input is not a lattice".to_string(),
            };
            for n in lattice_check_names(suite) {
                out.push(Check::skipped(n, reason.clone()));
            }
            return out;
        }
    };
    lattice_checks(&lattice, None, suite, &mut out);
    for n in torsion_check_names(suite) {
        out.push(Check::skipped(n, "input is a lattice, not an algebra"));
    }
    out
}

/// Runs `suite` on the lattice of torsion classes of `spec` (lattice-level
/// suites) and on the algebra itself (torsion and fss suites).
pub fn run_on_algebra(
    spec: &AlgebraSpec,
    suite: Suite,
    opts: &SuiteOptions,
) -> Result<SuiteOutput, TorsionError> {
    let td = enumerate_tors_with_limit(spec, opts.max_indec)?;
    Ok(run_on_tors(&td, suite, opts))
}

/// [`run_on_algebra`] for an already enumerated torsion lattice.
pub fn run_on_tors(td: &TorsData, suite: Suite, opts: &SuiteOptions) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    out.note("indecomposables", td.spec().len());
    out.note("torsion_classes", td.len());
    lattice_checks(td.lattice(), Some(td.binuc()), suite, &mut out);
    torsion_checks(td, suite, opts, &mut out);
    out
}

fn lattice_check_names(suite: Suite) -> Vec<&'static str> {
    let mut v = Vec::new();
    if suite.runs(Suite::Lattice) {
        v.push("bez_criterion");
    }
    if suite.runs(Suite::Binuclear) {
        v.extend([
            "binuclear_lattice",
            "binuc_order_is_lattice",
            "ni_meet",
            "ni_join",
            "pop_characterization",
        ]);
    }
    if suite.runs(Suite::Semidistributive) {
        v.extend(["semidistributive", "binuc_semidistributive"]);
    }
    if suite.runs(Suite::Kappa) {
        v.extend([
            "kappa_bijection",
            "kappa_binuc_formula",
            "binuc_irreducibles",
        ]);
    }
    v
}

fn torsion_check_names(suite: Suite) -> Vec<&'static str> {
    let mut v = Vec::new();
    if suite.runs(Suite::Torsion) {
        v.extend([
            "interval_restriction",
            "bricks_kappa",
            "presilting_bijection",
            "cone_dimensions",
        ]);
    }
    if suite.runs(Suite::Fss) {
        v.extend([
            "cover_classification",
            "heart_partition",
            "stability_sampling",
            "cone_interiors",
        ]);
    }
    v
}

fn bez_check(name: &str, p: &Poset) -> Check {
    let v = check_bez(p);
    match v.witness {
        None => Check::pass(name),
        Some((x, y, z)) => Check::fail(
            name,
            json!({ "x": p.label(x), "y": p.label(y), "common_cover": p.label(z) }),
        ),
    }
}

fn sd_witness(l: &FinLattice, v: &SdVerdict) -> Value {
    let names = |t: [crate::lattice::ElementId; 3]| -> Vec<&str> {
        t.iter().map(|&x| l.label(x)).collect()
    };
    json!({
        "meet_semidistributive": v.meet_sd,
        "join_semidistributive": v.join_sd,
        "meet_witness": v.meet_witness.map(names),
        "join_witness": v.join_witness.map(names),
    })
}

/// Scans all pairs of binuclear intervals. Returns the number of missing
/// bounds and the first one found.
fn scan_bounds(
    bp: &BinucPoset,
    op: fn(
        &BinucPoset,
        crate::lattice::Interval,
        crate::lattice::Interval,
    ) -> Result<NiBound, crate::binuclear::BinucError>,
) -> Result<(), Value> {
    let ivs = bp.intervals();
    let mut missing = 0usize;
    let mut first = None;
    for (i, &a) in ivs.iter().enumerate() {
        for &b in &ivs[i + 1..] {
            match op(bp, a, b) {
                Ok(NiBound::Exists(_)) => {}
                Ok(NiBound::Missing { candidate, witness }) => {
                    missing += 1;
                    first.get_or_insert(json!({
                        "pair": [bp.label(a), bp.label(b)],
                        "candidate": bp.label(candidate),
                        "witness": witness.map(|w| bp.label(w)),
                    }));
                }
                Err(e @ crate::binuclear::BinucError::NotBinuclearLattice(_)) => {
                    return Err(json!({ "skip": e.to_string() }))
                }
                Err(e) => return Err(json!({ "error": e.to_string() })),
            }
        }
    }
    match first {
        None => Ok(()),
        Some(f) => Err(json!({ "missing_pairs": missing, "first": f })),
    }
}

fn bound_check(name: &str, r: Result<(), Value>) -> Check {
    match r {
        Err(w) if w.get("skip").is_some() => Check::skipped(name, w["skip"].as_str().unwrap_or("")),
        r => Check::from_result(name, r),
    }
}

fn kappa_error(e: KappaError) -> Result<Check, String> {
    match e {
        KappaError::PreconditionFailed(reason) => Err(reason),
        other => Ok(Check::fail("", json!({ "error": other.to_string() }))),
    }
}

fn lattice_checks(l: &FinLattice, bp: Option<&BinucPoset>, suite: Suite, out: &mut SuiteOutput) {
    if suite.runs(Suite::Lattice) {
        out.push(bez_check("bez_criterion", l.poset()));
    }
    let owned;
    let bp = match bp {
        Some(bp) => bp,
        None => {
            owned = build_ni_order(l);
            &owned
        }
    };
    out.note("binuclear_intervals", bp.len());
    out.note("binuc_hasse_edges", bp.poset().covers().len());
    let binuc_lattice = bp.to_lattice();

    if suite.runs(Suite::Binuclear) {
        out.push(match is_binuclear_lattice(l) {
            BinuclearVerdict::Binuclear => Check::pass("binuclear_lattice"),
            BinuclearVerdict::Witness { interval, class } => Check::fail(
                "binuclear_lattice",
                json!({
                    "interval": l.interval_label(interval),
                    "nuclear": class.nuclear,
                    "conuclear": class.conuclear,
                }),
            ),
        });
        out.push(match is_lattice(bp.poset()) {
            LatticeVerdict::Lattice => Check::pass("binuc_order_is_lattice"),
            LatticeVerdict::Missing { a, b, missing } => Check::fail(
                "binuc_order_is_lattice",
                json!({
                    "a": bp.poset().label(a),
                    "b": bp.poset().label(b),
                    "missing": missing,
                }),
            ),
        });
        out.push(bound_check("ni_meet", scan_bounds(bp, ni_meet)));
        out.push(bound_check("ni_join", scan_bounds(bp, ni_join)));
        out.push(Check::from_result(
            "pop_characterization",
            verify_pop_characterization(l, 12).map_err(
                |f| json!({ "statement": f.statement, "interval": l.interval_label(f.interval) }),
            ),
        ));
    }

    if suite.runs(Suite::Semidistributive) {
        let sd = check_semidistributivity(l);
        out.push(if sd.holds() {
            Check::pass("semidistributive")
        } else {
            Check::fail("semidistributive", sd_witness(l, &sd))
        });
        out.push(match &binuc_lattice {
            Ok(bl) => {
                let v = check_semidistributivity(bl);
                if v.holds() {
                    Check::pass("binuc_semidistributive")
                } else if sd.holds() {
                    Check::fail("binuc_semidistributive", sd_witness(bl, &v))
                } else {
                    // only implied when the base lattice is semidistributive
                    Check::skipped(
                        "binuc_semidistributive",
                        "base lattice is not semidistributive",
                    )
                }
            }
            Err(e) => Check::skipped("binuc_semidistributive", e.to_string()),
        });
    }

    if suite.runs(Suite::Kappa) {
        let report = check_kappa_properties(l);
        let sd = report.flags.meet_semidistributive && report.flags.join_semidistributive;
        let bij = report.flags.meet_kappa && report.flags.join_kappa;
        out.push(if bij == sd {
            Check::pass("kappa_bijection")
        } else {
            Check::fail(
                "kappa_bijection",
                json!({ "flags": report.flags, "witnesses": report.witnesses }),
            )
        });
        let c = match kappa_ni(l) {
            Ok(nk) => {
                out.note("binuc_kappa_pairs", nk.map.len());
                Check::pass("kappa_binuc_formula")
            }
            Err(e) => match kappa_error(e) {
                Ok(mut c) => {
                    c.name = "kappa_binuc_formula".into();
                    c
                }
                Err(reason) => Check::skipped("kappa_binuc_formula", reason),
            },
        };
        out.push(c);
        out.push(match verify_cjirr_binuc(l) {
            Ok(r) if r.passed() => Check::pass("binuc_irreducibles"),
            Ok(r) => Check::fail("binuc_irreducibles", json!({ "failures": r.failures })),
            Err(e) => match kappa_error(e) {
                Ok(mut c) => {
                    c.name = "binuc_irreducibles".into();
                    c
                }
                Err(reason) => Check::skipped("binuc_irreducibles", reason),
            },
        });
    }
}

fn err_check(name: &str, e: impl fmt::Display) -> Check {
    Check::fail(name, json!({ "error": e.to_string() }))
}

fn torsion_checks(td: &TorsData, suite: Suite, opts: &SuiteOptions, out: &mut SuiteOutput) {
    if !suite.runs(Suite::Torsion) && !suite.runs(Suite::Fss) {
        return;
    }
    let entries = enumerate_presilting(td);
    if suite.runs(Suite::Torsion) {
        let mut failures = Vec::new();
        for &iv in td.binuc().intervals() {
            match res_interval(td, iv) {
                Ok(r) => failures.extend(r.failures),
                Err(e) => failures.push(e.to_string()),
            }
        }
        out.push(if failures.is_empty() {
            Check::pass("interval_restriction")
        } else {
            Check::fail("interval_restriction", json!({ "failures": failures }))
        });
        let c = match bricks_and_kappa(td) {
            Ok(r) => {
                out.note("bricks", r.bricks.len());
                Check::pass("bricks_kappa")
            }
            Err(e) => err_check("bricks_kappa", e),
        };
        out.push(c);
        let c = match &entries {
            Ok(e) => {
                out.note("tau_rigid_pairs", e.len());
                Check::pass("presilting_bijection")
            }
            Err(e) => err_check("presilting_bijection", e),
        };
        out.push(c);
        out.push(match &entries {
            Ok(e) => {
                let bad = td
                    .binuc()
                    .intervals()
                    .iter()
                    .find_map(|&iv| cone_data(td, e, iv).err().map(|err| (iv, err)));
                match bad {
                    None => Check::pass("cone_dimensions"),
                    Some((iv, err)) => Check::fail(
                        "cone_dimensions",
                        json!({ "interval": td.interval_label(iv), "error": err.to_string() }),
                    ),
                }
            }
            Err(_) => Check::skipped("cone_dimensions", "no presilting bijection"),
        });
    }
    if suite.runs(Suite::Fss) {
        let Ok(entries) = &entries else {
            for n in [
                "cover_classification",
                "heart_partition",
                "stability_sampling",
                "cone_interiors",
            ] {
                out.push(Check::skipped(n, "no presilting bijection"));
            }
            return;
        };
        out.push(match fss_cover_check(td, entries) {
            Ok(r) if r.passed() => Check::pass("cover_classification"),
            Ok(r) => Check::fail("cover_classification", json!({ "failures": r.failures })),
            Err(e) => err_check("cover_classification", e),
        });
        let cw = cw_partition(td);
        out.note("heart_blocks", cw.blocks.len());
        out.push(if cw.passed() {
            Check::pass("heart_partition")
        } else {
            Check::fail("heart_partition", json!({ "failures": cw.failures }))
        });
        out.push(Check::from_result(
            "stability_sampling",
            sample_stability(td, opts),
        ));
        out.push(Check::from_result(
            "cone_interiors",
            check_cone_interiors(td, entries),
        ));
        if let Ok(diff) = hasse_vs_incidence(td, entries) {
            let pairs =
                |v: &[(crate::lattice::Interval, crate::lattice::Interval)]| -> Vec<[String; 2]> {
                    v.iter()
                        .map(|&(a, b)| [td.interval_label(a), td.interval_label(b)])
                        .collect()
                };
            out.note(
                "hasse_vs_incidence",
                json!({
                    "hasse_only": pairs(&diff.hasse_only),
                    "incidence_only": pairs(&diff.incidence_only),
                }),
            );
        }
    }
}

/// Seeded random stability vectors all land on binuclear intervals, and
/// `θ = 0` gives the whole lattice.
pub fn sample_stability(td: &TorsData, opts: &SuiteOptions) -> Result<(), Value> {
    let n = td.spec().rank();
    let l = td.lattice();
    let origin = tf_interval(td, &StabilityVector::zero(n))
        .map_err(|e| json!({ "theta": "0", "error": e.to_string() }))?;
    if origin != crate::lattice::Interval::new(l.bottom(), l.top()) {
        return Err(json!({ "theta": "0", "interval": td.interval_label(origin) }));
    }
    let mut rng = StdRng::seed_from_u64(opts.seed);
    for _ in 0..opts.theta_samples {
        let theta = random_theta(n, &mut rng);
        if let Err(e) = tf_interval(td, &theta) {
            let shown: Vec<String> = theta.0.iter().map(|r| r.to_string()).collect();
            return Err(json!({ "theta": shown, "error": e.to_string() }));
        }
    }
    Ok(())
}

/// The sum of the generators of each cone gives back that cone's interval.
pub fn check_cone_interiors(
    td: &TorsData,
    entries: &[crate::torsion::PresiltingEntry],
) -> Result<(), Value> {
    let n = td.spec().rank();
    for &iv in td.binuc().intervals() {
        let c = cone_data(td, entries, iv).map_err(|e| json!({ "error": e.to_string() }))?;
        let got = tf_interval(td, &interior_point(n, &c.generators))
            .map_err(|e| json!({ "interval": td.interval_label(iv), "error": e.to_string() }))?;
        if got != iv {
            return Err(json!({
                "interval": td.interval_label(iv),
                "generators": c.generators,
                "got": td.interval_label(got),
            }));
        }
    }
    Ok(())
}
