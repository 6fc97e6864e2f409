//! The named check registry.
//!
//! Every proposition-level operation in the core crate is runnable by name
//! with string-typed parameters, both from the CLI subcommands and from a
//! suite manifest. The subcommands are thin wrappers over [`run_check`], so
//! a manifest entry and the equivalent command line take the same path.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use dgpd_core::compact::{
    coeff_conv_identity_check, naive_compat_search, schur_check, schur_cross_check, validate_rep,
    weak_compat_check, FiniteFn, Representation, UnitaryRep,
};
use dgpd_core::convolution::{
    compatibility_scan, convolve, pair_matrix_iso_check, pair_matrix_transposed_check,
    AlgebraElement, ScanMode,
};
use dgpd_core::double::{central_action_double, from_group, DoubleGroupoid};
use dgpd_core::fixtures;
use dgpd_core::group::FiniteGroupTable;
use dgpd_core::haar::{induce_haar, DoubleHaarSystem, HaarSystem};
use dgpd_core::nctorus::{
    nct_compat_expressions, nct_compat_table, nct_conv_bullet, nct_conv_circ, nct_generic_conv,
    NctMode, TorusFunction,
};
use dgpd_core::singular::{main_theorem_check, torus_bridge_check, CentralEmbedding, KElem};
use dgpd_core::ValidationReport;

use crate::format::{
    element_from_file, haar_from_file, load_double, load_structure, read_json, DoubleHaarFile,
    ElementFile, HaarFile, LoadedStructure,
};

/// Witnesses kept in a report without `--audit`.
const WITNESS_CAP: usize = 8;

/// Settings shared by every check in a run.
#[derive(Debug, Clone)]
pub struct CheckContext {
    pub tolerance: f64,
    pub seed: u64,
    /// Full scans and uncapped witness lists.
    pub audit: bool,
    /// Base directory for relative file parameters.
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }

    fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Result of one named check, before report formatting.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    /// Tuples/instances examined, summed over sub-scans.
    pub checked: u64,
    /// Violating tuples, capped at [`WITNESS_CAP`] unless auditing.
    pub witnesses: Vec<String>,
    /// Human-facing summary lines.
    pub detail: Vec<String>,
}

impl CheckOutcome {
    fn new() -> CheckOutcome {
        CheckOutcome {
            verdict: Verdict::Pass,
            checked: 0,
            witnesses: Vec::new(),
            detail: Vec::new(),
        }
    }

    fn fail(&mut self) {
        self.verdict = Verdict::Fail;
    }

    fn witness(&mut self, audit: bool, text: String) {
        if audit || self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(text);
        }
    }

    fn note(&mut self, text: String) {
        self.detail.push(text);
    }

    /// Folds a validation report in: every axiom contributes its scan count,
    /// violations become witnesses, and any violation fails the check.
    fn absorb_report(&mut self, report: &ValidationReport, audit: bool) {
        for axiom in &report.axioms {
            self.checked += axiom.checked;
            for v in &axiom.violations {
                self.witness(
                    audit,
                    format!(
                        "{}: {} ({}) — {}",
                        report.subject,
                        axiom.axiom,
                        v.witness.join(", "),
                        v.detail
                    ),
                );
            }
            if !axiom.is_ok() {
                self.fail();
            }
        }
    }
}

/// A registry entry: the runnable name, a one-line description, the accepted
/// parameters, and a small parameter set used by the coverage test.
pub struct CheckDef {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static str,
    pub sample: &'static [(&'static str, &'static str)],
}

/// Every check reachable by name. `list-checks` prints this table and the
/// coverage test runs one small instance of each entry.
pub const REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "validate",
        about: "category/groupoid axioms of a structure file",
        params: "file",
        sample: &[("fixture", "z3")],
    },
    CheckDef {
        name: "validate-double",
        about: "double-groupoid axioms, interchange included",
        params: "file | fixture",
        sample: &[("fixture", "from-group-z2")],
    },
    CheckDef {
        name: "validate-rep",
        about: "unitary representation axioms and irreducibility metadata",
        params: "group, rep (name or `all`)",
        sample: &[("group", "s3"), ("rep", "all")],
    },
    CheckDef {
        name: "haar-induce",
        about: "induced vertical/horizontal Haar systems and their diagram",
        params: "file | fixture, haar (double-Haar file; default counting)",
        sample: &[("fixture", "from-group-z3")],
    },
    CheckDef {
        name: "convolve",
        about: "one convolution product in a groupoid algebra",
        params: "file | fixture, u, v (`delta:<arrow>`, `unit`, or `@<element file>`), haar",
        sample: &[("fixture", "z3"), ("u", "delta:1"), ("v", "delta:2")],
    },
    CheckDef {
        name: "compat-scan",
        about: "delta-basis exchange scan vs structural product equality",
        params: "file | fixture, mode (indexed | full)",
        sample: &[("fixture", "equal-pair-z3")],
    },
    CheckDef {
        name: "compat-fuzz",
        about: "scan/structure agreement on seeded random double groupoids",
        params: "count (default 50)",
        sample: &[("count", "3")],
    },
    CheckDef {
        name: "pair-matrix",
        about: "pair-groupoid algebra vs matrix algebra, exact",
        params: "max-n (default 5)",
        sample: &[("max-n", "3")],
    },
    CheckDef {
        name: "nctorus",
        about: "rotation-algebra closed forms and the exchange trichotomy",
        params: "r, check (closed-vs-oracle | compat-table), range",
        sample: &[("r", "1.5"), ("check", "compat-table"), ("range", "1")],
    },
    CheckDef {
        name: "schur",
        about: "coefficient convolution within and across irreducibles",
        params: "group",
        sample: &[("group", "z4")],
    },
    CheckDef {
        name: "coeff-identity",
        about: "pointwise-times-coefficient convolution identity",
        params: "group, pi (name or `all`), pairs (random (u,v) count)",
        sample: &[("group", "s3"), ("pi", "rho2"), ("pairs", "2")],
    },
    CheckDef {
        name: "weak-compat",
        about: "averaged exchange law in coefficient slots",
        params: "group, pi (name or `all`), pairs",
        sample: &[("group", "s3"), ("pi", "rho2"), ("pairs", "2")],
    },
    CheckDef {
        name: "naive-compat",
        about: "unaveraged exchange law; expects witnesses or none",
        params: "group, sigma, pi (names or `all`), expect (witnesses | none), threshold",
        sample: &[("group", "s3"), ("sigma", "rho2"), ("pi", "rho2")],
    },
    CheckDef {
        name: "theorem-main",
        about: "level-function exchange identity over a central subgroup",
        params: "group, k, pi, u, v, pairs, indices, expect | model=circle, r, band, freq-max",
        sample: &[
            ("group", "q8"),
            ("k", "center"),
            ("pi", "rho2"),
            ("u", "one"),
            ("v", "one"),
            ("indices", "all"),
        ],
    },
    CheckDef {
        name: "torus-bridge",
        about: "rotation algebra as the circle case of the level model",
        params: "r, range (default 3), flip-sign (negative control)",
        sample: &[("r", "1.5"), ("range", "2")],
    },
];

pub fn find_check(name: &str) -> Result<&'static CheckDef> {
    REGISTRY
        .iter()
        .find(|def| def.name == name)
        .ok_or_else(|| anyhow!("unknown check {name:?}; see `dgpd list-checks`"))
}

/// Typed access to the string parameter map, with required/default handling
/// and an unknown-key guard so typos fail loudly.
struct Params<'a> {
    check: &'a str,
    map: &'a BTreeMap<String, String>,
    used: BTreeSet<&'a str>,
}

impl<'a> Params<'a> {
    fn new(check: &'a str, map: &'a BTreeMap<String, String>) -> Params<'a> {
        Params {
            check,
            map,
            used: BTreeSet::new(),
        }
    }

    fn get(&mut self, key: &'a str) -> Option<&'a str> {
        self.used.insert(key);
        self.map.get(key).map(|s| s.as_str())
    }

    fn get_or(&mut self, key: &'a str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    fn require(&mut self, key: &'a str) -> Result<&'a str> {
        let check = self.check;
        self.get(key)
            .ok_or_else(|| anyhow!("check {check}: missing required param {key:?}"))
    }

    fn f64_or(&mut self, key: &'a str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .with_context(|| format!("check {}: param {key}={s:?}", self.check)),
        }
    }

    fn i64_or(&mut self, key: &'a str, default: i64) -> Result<i64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .with_context(|| format!("check {}: param {key}={s:?}", self.check)),
        }
    }

    fn usize_or(&mut self, key: &'a str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .with_context(|| format!("check {}: param {key}={s:?}", self.check)),
        }
    }

    fn require_f64(&mut self, key: &'a str) -> Result<f64> {
        let s = self.require(key)?;
        s.parse()
            .with_context(|| format!("check {}: param {key}={s:?}", self.check))
    }

    fn path(&mut self, key: &'a str, base: &Path) -> Option<PathBuf> {
        self.get(key).map(|s| resolve_path(base, s))
    }

    fn finish(mut self) -> Result<()> {
        // `tolerance` and `seed` are read by the dispatcher before the
        // check body runs; accept them everywhere.
        self.used.insert("tolerance");
        self.used.insert("seed");
        for key in self.map.keys() {
            if !self.used.contains(key.as_str()) {
                bail!("check {}: unknown param {key:?}", self.check);
            }
        }
        Ok(())
    }
}

fn resolve_path(base: &Path, raw: &str) -> PathBuf {
    let p = Path::new(raw);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// The context a check effectively runs under: the base context with any
/// per-entry `tolerance`/`seed` overrides applied, so one manifest can mix
/// tolerances and seeds. Echoed into reports.
pub fn effective_context(
    name: &str,
    params: &BTreeMap<String, String>,
    base: &CheckContext,
) -> Result<CheckContext> {
    let mut ctx = base.clone();
    let mut p = Params::new(name, params);
    ctx.tolerance = p.f64_or("tolerance", ctx.tolerance)?;
    if ctx.tolerance <= 0.0 {
        bail!("check {name}: tolerance must be positive");
    }
    ctx.seed = match p.get("seed") {
        None => ctx.seed,
        Some(s) => s
            .parse()
            .with_context(|| format!("check {name}: param seed={s:?}"))?,
    };
    Ok(ctx)
}

/// Runs one named check. `Err` is a usage/parse problem (exit 2 territory);
/// a failed proposition comes back as `Ok` with a fail verdict.
pub fn run_check(
    name: &str,
    params: &BTreeMap<String, String>,
    ctx: &CheckContext,
) -> Result<CheckOutcome> {
    find_check(name)?;
    let ctx = effective_context(name, params, ctx)?;
    let mut p = Params::new(name, params);

    let outcome = match name {
        "validate" => check_validate(&mut p, &ctx),
        "validate-double" => check_validate_double(&mut p, &ctx),
        "validate-rep" => check_validate_rep(&mut p, &ctx),
        "haar-induce" => check_haar_induce(&mut p, &ctx),
        "convolve" => check_convolve(&mut p, &ctx),
        "compat-scan" => check_compat_scan(&mut p, &ctx),
        "compat-fuzz" => check_compat_fuzz(&mut p, &ctx),
        "pair-matrix" => check_pair_matrix(&mut p, &ctx),
        "nctorus" => check_nctorus(&mut p, &ctx),
        "schur" => check_schur(&mut p, &ctx),
        "coeff-identity" => check_coeff_identity(&mut p, &ctx),
        "weak-compat" => check_weak_compat(&mut p, &ctx),
        "naive-compat" => check_naive_compat(&mut p, &ctx),
        "theorem-main" => check_theorem_main(&mut p, &ctx),
        "torus-bridge" => check_torus_bridge(&mut p, &ctx),
        _ => unreachable!("registry lookup precedes dispatch"),
    }?;
    p.finish()?;
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Fixture lookup
// ---------------------------------------------------------------------------

/// Built-in groups addressable from parameters.
pub fn fixture_group(name: &str) -> Result<FiniteGroupTable> {
    if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse::<u32>().ok()) {
        if (2..=16).contains(&n) {
            return Ok(fixtures::cyclic_group(n));
        }
    }
    match name {
        "s3" => Ok(fixtures::symmetric_group(3)),
        "q8" => Ok(fixtures::quaternion_group()),
        "z2xz2" => Ok(fixtures::direct_product(
            &fixtures::cyclic_group(2),
            &fixtures::cyclic_group(2),
        )),
        _ => bail!("unknown group fixture {name:?} (zN for 2<=N<=16, s3, q8, z2xz2)"),
    }
}

/// The representation list shipped with a fixture group, keyed by the
/// fixture name the caller asked for.
pub fn fixture_reps(group_name: &str, g: &FiniteGroupTable) -> Result<Vec<UnitaryRep>> {
    match group_name {
        name if name.starts_with('z') && !name.contains('x') => {
            Ok(fixtures::cyclic_characters(g))
        }
        "s3" => Ok(fixtures::s3_irreps(g)),
        "q8" => Ok(fixtures::q8_irreps(g)),
        other => bail!("no representation list for group {other:?}"),
    }
}

fn rep_by_name(reps: &[UnitaryRep], name: &str) -> Result<UnitaryRep> {
    reps.iter()
        .find(|r| r.name() == name)
        .cloned()
        .ok_or_else(|| {
            let known: Vec<&str> = reps.iter().map(|r| r.name()).collect();
            anyhow!("unknown rep {name:?}; available: {}", known.join(", "))
        })
}

fn select_reps(reps: Vec<UnitaryRep>, selector: &str) -> Result<Vec<UnitaryRep>> {
    if selector == "all" {
        Ok(reps)
    } else {
        Ok(vec![rep_by_name(&reps, selector)?])
    }
}

/// Built-in double groupoids addressable from parameters.
pub fn fixture_double(name: &str) -> Result<DoubleGroupoid> {
    match name {
        "from-group-z2" => Ok(from_group(&fixtures::cyclic_group(2))),
        "from-group-z3" => Ok(from_group(&fixtures::cyclic_group(3))),
        "equal-pair-z2" => Ok(fixtures::equal_pair_double(&fixtures::cyclic_group(2))),
        "equal-pair-z3" => Ok(fixtures::equal_pair_double(&fixtures::cyclic_group(3))),
        "z2-on-z4" => {
            let g = fixtures::cyclic_group(4);
            let k = g.subgroup(&["0", "2"]).expect("Z/2 inside Z/4");
            central_action_double(&g, &k).map_err(|e| anyhow!("z2-on-z4 fixture: {e}"))
        }
        "q8-center" => {
            let g = fixtures::quaternion_group();
            let k = g.subgroup(&["1", "-1"]).expect("center of Q8");
            central_action_double(&g, &k).map_err(|e| anyhow!("q8-center fixture: {e}"))
        }
        _ => bail!(
            "unknown double fixture {name:?} (from-group-z2, from-group-z3, \
             equal-pair-z2, equal-pair-z3, z2-on-z4, q8-center)"
        ),
    }
}

/// Structure fixtures for `validate`/`convolve` without a file on disk.
fn fixture_structure(name: &str) -> Result<dgpd_core::FiniteGroupoidTable> {
    if let Some(n) = name
        .strip_prefix("pair")
        .and_then(|s| s.parse::<u32>().ok())
    {
        if (1..=6).contains(&n) {
            return Ok(fixtures::pair_groupoid(n));
        }
    }
    Ok(fixture_group(name)?.table().clone())
}

fn double_from_params(
    p: &mut Params<'_>,
    ctx: &CheckContext,
) -> Result<(DoubleGroupoid, String)> {
    if let Some(path) = p.path("file", &ctx.base_dir) {
        let dg = load_double(&path)?;
        Ok((dg, path.display().to_string()))
    } else if let Some(name) = p.get("fixture") {
        Ok((fixture_double(name)?, format!("fixture {name}")))
    } else {
        bail!("check {}: need `file` or `fixture`", p.check)
    }
}

// ---------------------------------------------------------------------------
// Check bodies
// ---------------------------------------------------------------------------

fn check_validate(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let (report, label) = if let Some(path) = p.path("file", &ctx.base_dir) {
        let label = path.display().to_string();
        match load_structure(&path)? {
            LoadedStructure::Groupoid(gpd) => (gpd.validate(&label), format!("groupoid {label}")),
            LoadedStructure::Category(cat) => (cat.validate(&label), format!("category {label}")),
        }
    } else if let Some(name) = p.get("fixture") {
        let gpd = fixture_structure(name)?;
        (gpd.validate(name), format!("groupoid fixture {name}"))
    } else {
        bail!("check validate: need `file` or `fixture`");
    };
    out.note(format!(
        "{label}: {} axioms scanned",
        report.axioms.len()
    ));
    out.absorb_report(&report, ctx.audit);
    Ok(out)
}

fn check_validate_double(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let (dg, label) = double_from_params(p, ctx)?;
    let report = dg.validate(&label);
    out.note(format!(
        "{label}: {} squares, {} corners, strict 2-group: {}",
        dg.square_count(),
        dg.corners().len(),
        dg.is_strict_2group()
    ));
    out.absorb_report(&report, ctx.audit);
    Ok(out)
}

fn check_validate_rep(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let group_name = p.require("group")?;
    let g = fixture_group(group_name)?;
    let reps = select_reps(fixture_reps(group_name, &g)?, p.get_or("rep", "all"))?;
    for rep in &reps {
        out.note(format!(
            "{}: dim {}, declared irreducible: {}",
            rep.name(),
            rep.dim(),
            rep.declared_irreducible()
        ));
        out.absorb_report(&validate_rep(&g, rep), ctx.audit);
    }
    Ok(out)
}

fn check_haar_induce(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let (dg, label) = double_from_params(p, ctx)?;
    let dh = match p.path("haar", &ctx.base_dir) {
        Some(path) => {
            let file: DoubleHaarFile = read_json(&path)?;
            file.to_system(&dg)?
        }
        None => DoubleHaarSystem::counting(&dg),
    };
    match induce_haar(&dg, &dh) {
        Err(e) => {
            out.fail();
            out.witness(ctx.audit, format!("{label}: induction rejected: {e}"));
        }
        Ok(induced) => {
            let show = |haar: &HaarSystem, gpd: &dgpd_core::FiniteGroupoidTable| {
                let mut entries: Vec<String> = gpd
                    .arrows()
                    .take(4)
                    .map(|a| format!("{}: {}", gpd.arrow_name(a), haar.weight(a)))
                    .collect();
                if gpd.arrow_count() > 4 {
                    entries.push("…".to_string());
                }
                entries.join(", ")
            };
            out.note(format!("{label}: muCirc {}", show(&induced.mu_circ, dg.vertical())));
            out.note(format!("{label}: muBullet {}", show(&induced.mu_bullet, dg.horizontal())));
            out.absorb_report(&induced.diagram, ctx.audit);
        }
    }
    Ok(out)
}

/// Parses an element spec: `delta:<arrow>`, `unit`, or `@<element file>`.
fn element_spec(
    spec: &str,
    gpd: &dgpd_core::FiniteGroupoidTable,
    haar: &HaarSystem,
    base: &Path,
) -> Result<AlgebraElement> {
    if let Some(arrow) = spec.strip_prefix("delta:") {
        let a = gpd
            .arrow_id(arrow)
            .ok_or_else(|| anyhow!("unknown arrow {arrow:?} in element spec"))?;
        Ok(AlgebraElement::delta(gpd, a))
    } else if spec == "unit" {
        Ok(AlgebraElement::unit(gpd, haar))
    } else if let Some(path) = spec.strip_prefix('@') {
        let file: ElementFile = read_json(&resolve_path(base, path))?;
        element_from_file(gpd, &file)
    } else {
        bail!("element spec {spec:?}: expected delta:<arrow>, unit, or @<file>")
    }
}

fn check_convolve(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let gpd = if let Some(path) = p.path("file", &ctx.base_dir) {
        load_structure(&path).and_then(|s| match s {
            LoadedStructure::Groupoid(g) => Ok(g),
            LoadedStructure::Category(_) => {
                bail!("convolution requires a groupoid (inverse table present)")
            }
        })?
    } else if let Some(name) = p.get("fixture") {
        fixture_structure(name)?
    } else {
        bail!("check convolve: need `file` or `fixture`");
    };
    let haar = match p.path("haar", &ctx.base_dir) {
        Some(path) => {
            let file: HaarFile = read_json(&path)?;
            haar_from_file(&gpd, &file)?
        }
        None => HaarSystem::counting(&gpd),
    };
    let report = haar.validate(&gpd, "haar weights");
    if !report.is_valid() {
        out.note("haar weights rejected".to_string());
        out.absorb_report(&report, ctx.audit);
        return Ok(out);
    }
    let u = element_spec(p.require("u")?, &gpd, &haar, &ctx.base_dir)?;
    let v = element_spec(p.require("v")?, &gpd, &haar, &ctx.base_dir)?;
    let product = convolve(&gpd, &haar, &u, &v).map_err(|e| anyhow!("convolve: {e}"))?;
    out.checked = 1;
    out.note(format!("u * v = {}", product.describe(&gpd)));
    out.note(format!("support size {}", product.support_len()));
    Ok(out)
}

fn scan_mode(p: &mut Params<'_>, ctx: &CheckContext) -> Result<ScanMode> {
    // --audit upgrades the default to the full quartic scan.
    let default = if ctx.audit { "full" } else { "indexed" };
    match p.get_or("mode", default) {
        "indexed" => Ok(ScanMode::Indexed),
        "full" => Ok(ScanMode::Full),
        other => bail!("check {}: mode {other:?} (indexed | full)", p.check),
    }
}

fn check_compat_scan(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let (dg, label) = double_from_params(p, ctx)?;
    let mode = scan_mode(p, ctx)?;
    let report = compatibility_scan(&dg, mode, ctx.tolerance)
        .map_err(|e| anyhow!("compat-scan on {label}: {e}"))?;
    out.checked = report.checked;
    out.verdict = Verdict::from_bool(report.verdict_products_equal);
    out.note(format!(
        "{label}: {:?} scan over {} tuples",
        report.mode, report.checked
    ));
    out.note(format!(
        "products structurally equal: {}",
        report.structural_products_equal
    ));
    for v in &report.violations {
        out.witness(
            ctx.audit,
            format!(
                "({}) lhs = {} vs rhs = {}",
                v.witness.join(","),
                v.lhs,
                v.rhs
            ),
        );
    }
    Ok(out)
}

fn check_compat_fuzz(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let count = p.usize_or("count", 50)?;
    let fixtures_named = [
        "from-group-z2",
        "from-group-z3",
        "equal-pair-z2",
        "equal-pair-z3",
        "z2-on-z4",
        "q8-center",
    ];
    let mut cases: Vec<(DoubleGroupoid, String)> = Vec::new();
    for name in fixtures_named {
        cases.push((fixture_double(name)?, name.to_string()));
    }
    let mut rng = fixtures::seeded_rng(ctx.seed);
    for i in 0..count {
        let (dg, desc) = fixtures::random_double(&mut rng);
        cases.push((dg, format!("random #{i}: {desc}")));
    }
    let mut agree = 0u64;
    let mut differ = 0u64;
    for (dg, label) in &cases {
        out.checked += 1;
        // The scan itself hard-errors if its verdict ever disagrees with
        // table equality, so a clean return is the property under test.
        match compatibility_scan(dg, ScanMode::Indexed, ctx.tolerance) {
            Err(e) => {
                out.fail();
                out.witness(ctx.audit, format!("{label}: {e}"));
            }
            Ok(report) => {
                if report.structural_products_equal {
                    agree += 1;
                } else {
                    differ += 1;
                    if report.violations.is_empty() {
                        out.fail();
                        out.witness(
                            ctx.audit,
                            format!("{label}: products differ but no witness surfaced"),
                        );
                    }
                }
            }
        }
    }
    out.note(format!(
        "{} cases: {} with ∘ = •, {} with ∘ ≠ • (each witnessed)",
        cases.len(),
        agree,
        differ
    ));
    Ok(out)
}

fn check_pair_matrix(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let max_n = p.usize_or("max-n", 5)? as u32;
    if max_n == 0 {
        bail!("check pair-matrix: max-n must be at least 1");
    }
    for n in 1..=max_n {
        out.checked += 1;
        if !pair_matrix_iso_check(n) {
            out.fail();
            out.witness(ctx.audit, format!("matrix comparison broke at n = {n}"));
        }
    }
    out.note(format!("isomorphism exact for n = 1..={max_n}"));
    // Negative control: the transposed comparison must break once the
    // algebra is noncommutative.
    if max_n >= 2 {
        out.checked += 1;
        if pair_matrix_transposed_check(max_n) {
            out.fail();
            out.witness(
                ctx.audit,
                format!("transposed comparison unexpectedly passed at n = {max_n}"),
            );
        } else {
            out.note(format!(
                "transposed control fails at n = {max_n} as required"
            ));
        }
    }
    Ok(out)
}

fn check_nctorus(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let r = p.require_f64("r")?;
    let check = p.require("check")?;
    match check {
        "closed-vs-oracle" => {
            let range = p.i64_or("range", 3)?;
            let mut worst = 0.0f64;
            for a in -range..=range {
                for b in -range..=range {
                    for c in -range..=range {
                        for d in -range..=range {
                            let u = TorusFunction::basis(a, b);
                            let v = TorusFunction::basis(c, d);
                            for (mode, closed) in [
                                (NctMode::Circ, nct_conv_circ(&u, &v, r)),
                                (NctMode::Bullet, nct_conv_bullet(&u, &v)),
                            ] {
                                out.checked += 1;
                                let oracle = nct_generic_conv(&u, &v, r, mode);
                                let gap = closed.sup_distance(&oracle);
                                worst = worst.max(gap);
                                if gap > ctx.tolerance {
                                    out.fail();
                                    out.witness(
                                        ctx.audit,
                                        format!(
                                            "u[{a},{b}] {mode:?} u[{c},{d}]: closed vs oracle gap {gap:.3e}"
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            out.note(format!(
                "basis pairs with indices in [-{range},{range}], worst gap {worst:.3e}"
            ));
        }
        "compat-table" => {
            let range = p.i64_or("range", 1)?;
            let table = nct_compat_table(r, range, ctx.tolerance);
            out.checked = table.checked;
            out.verdict = Verdict::from_bool(table.mismatches.is_empty());
            out.note(format!(
                "classes over [-{range},{range}]^8: equal {}, both-zero {}, first-only {}",
                table.equal_count, table.both_zero_count, table.first_only_count
            ));
            for m in &table.mismatches {
                out.witness(ctx.audit, m.clone());
            }
            if ctx.audit {
                for (label, sample) in &table.samples {
                    out.note(format!("sample {label}: {sample}"));
                }
            }
            // The one-sided tuple at frequencies (b,d,f,h) = (1,0,0,1):
            // both products defined, totals match, yet only the first
            // expression is nonzero.
            let idx = [0, 1, 0, 0, 0, 0, 0, 1];
            let outcome = nct_compat_expressions(idx, r, ctx.tolerance);
            out.checked += 1;
            if outcome.equal || outcome.expr1.is_zero() || !outcome.expr2.is_zero() {
                out.fail();
                out.witness(
                    ctx.audit,
                    format!(
                        "inequality witness lost at {idx:?}: expr1 = {}, expr2 = {}",
                        outcome.expr1.describe(),
                        outcome.expr2.describe()
                    ),
                );
            } else {
                out.note(format!(
                    "inequality witness {idx:?}: expr1 = {} ≠ expr2 = 0",
                    outcome.expr1.describe()
                ));
            }
        }
        other => bail!("check nctorus: check {other:?} (closed-vs-oracle | compat-table)"),
    }
    Ok(out)
}

fn check_schur(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let group_name = p.require("group")?;
    let g = fixture_group(group_name)?;
    let reps = fixture_reps(group_name, &g)?;
    let irreducibles: Vec<&UnitaryRep> =
        reps.iter().filter(|r| r.declared_irreducible()).collect();
    for rep in &irreducibles {
        out.absorb_report(&schur_check(&g, rep, ctx.tolerance), ctx.audit);
    }
    for (i, sigma) in irreducibles.iter().enumerate() {
        for pi in irreducibles.iter().skip(i + 1) {
            out.absorb_report(&schur_cross_check(&g, sigma, pi, ctx.tolerance), ctx.audit);
        }
    }
    out.note(format!(
        "{group_name}: {} irreducibles, within-rep identity and cross-rep vanishing",
        irreducibles.len()
    ));
    Ok(out)
}

/// Shared driver for the two coefficient-slot identities: runs the supplied
/// closure on `(1,1)` plus `pairs` seeded random pairs, across all
/// coefficient slots of the selected representations.
fn coefficient_slots(
    p: &mut Params<'_>,
    ctx: &CheckContext,
    run: impl Fn(
        &FiniteGroupTable,
        &UnitaryRep,
        &FiniteFn,
        &FiniteFn,
        usize,
        usize,
        f64,
    ) -> Result<(f64, bool)>,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let group_name = p.require("group")?;
    let g = fixture_group(group_name)?;
    let reps = select_reps(fixture_reps(group_name, &g)?, p.get_or("pi", "all"))?;
    let pairs = p.usize_or("pairs", 0)?;
    let mut rng = fixtures::seeded_rng(ctx.seed);
    let mut pool: Vec<(FiniteFn, FiniteFn, String)> =
        vec![(FiniteFn::one(&g), FiniteFn::one(&g), "1,1".to_string())];
    for n in 0..pairs {
        pool.push((
            fixtures::random_finite_fn(&g, &mut rng),
            fixtures::random_finite_fn(&g, &mut rng),
            format!("pair #{n}"),
        ));
    }
    let mut worst = 0.0f64;
    for rep in &reps {
        for (u, v, label) in &pool {
            for i in 0..rep.dim() {
                for k in 0..rep.dim() {
                    out.checked += 1;
                    let (gap, equal) = run(&g, rep, u, v, i, k, ctx.tolerance)?;
                    worst = worst.max(gap);
                    if !equal {
                        out.fail();
                        out.witness(
                            ctx.audit,
                            format!("{} ({label}) slot ({i},{k}): gap {gap:.3e}", rep.name()),
                        );
                    }
                }
            }
        }
    }
    out.note(format!(
        "{group_name}: {} reps × {} inputs, all slots, worst gap {worst:.3e}",
        reps.len(),
        pool.len()
    ));
    Ok(out)
}

fn check_coeff_identity(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    coefficient_slots(p, ctx, |g, rep, u, v, i, k, tol| {
        let o = coeff_conv_identity_check(g, rep, u, v, i, k, tol)
            .map_err(|e| anyhow!("coeff-identity: {e}"))?;
        Ok((o.gap, o.equal))
    })
}

fn check_weak_compat(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    coefficient_slots(p, ctx, |g, rep, u, v, i, k, tol| {
        let o = weak_compat_check(g, rep, u, v, i, k, tol)
            .map_err(|e| anyhow!("weak-compat: {e}"))?;
        Ok((o.gap, o.equal))
    })
}

fn check_naive_compat(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let group_name = p.require("group")?;
    let g = fixture_group(group_name)?;
    let reps = fixture_reps(group_name, &g)?;
    let sigmas = select_reps(reps.clone(), p.get_or("sigma", "all"))?;
    let pis = select_reps(reps, p.get_or("pi", "all"))?;
    let expect = p.get_or("expect", "witnesses");
    let threshold = p.f64_or("threshold", 1e-6)?;
    let mut found = 0usize;
    let mut max_gap = 0.0f64;
    for sigma in &sigmas {
        for pi in &pis {
            let witnesses = naive_compat_search(&g, sigma, pi, threshold)
                .map_err(|e| anyhow!("naive-compat: {e}"))?;
            out.checked +=
                (sigma.dim().pow(3) * pi.dim().pow(3)) as u64;
            for w in &witnesses {
                max_gap = max_gap.max(w.gap);
                out.witness(
                    ctx.audit,
                    format!(
                        "σ = {}, π = {}: σ-slots {:?}, π-slots {:?}, gap {:.3e}",
                        sigma.name(),
                        pi.name(),
                        w.sigma_idx,
                        w.pi_idx,
                        w.gap
                    ),
                );
            }
            found += witnesses.len();
        }
    }
    let matched = match expect {
        "witnesses" => found > 0,
        "none" => found == 0,
        other => bail!("check naive-compat: expect {other:?} (witnesses | none)"),
    };
    // The witness lines above are evidence, not failures, when the law is
    // expected to break; the verdict only tracks the expectation.
    out.verdict = Verdict::from_bool(matched);
    out.note(format!(
        "expected {expect}: {found} violating slot tuples (threshold {threshold:.1e}), max gap {max_gap:.3e}"
    ));
    Ok(out)
}

/// Named level subgroups for `theorem-main`.
fn k_subgroup(g: &FiniteGroupTable, group_name: &str, spec: &str) -> Result<Vec<dgpd_core::ArrowId>> {
    match spec {
        "center" => Ok(g.center()),
        "trivial" => Ok(vec![g.identity()]),
        "full" => Ok(g.elements().collect()),
        "a3" if group_name == "s3" => g
            .subgroup(&["012", "120", "201"])
            .map_err(|e| anyhow!("a3 subgroup: {e}")),
        other => {
            let names: Vec<&str> = other.split('+').collect();
            g.subgroup(&names)
                .map_err(|e| anyhow!("k = {other:?}: {e}"))
        }
    }
}

fn check_theorem_main(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    match p.get_or("model", "finite") {
        "finite" => theorem_main_finite(p, ctx),
        "circle" => theorem_main_circle(p, ctx),
        other => bail!("check theorem-main: model {other:?} (finite | circle)"),
    }
}

fn theorem_main_finite(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    use dgpd_core::compact::GroupFunction;

    let mut out = CheckOutcome::new();
    let group_name = p.require("group")?;
    let g = fixture_group(group_name)?;
    let k = k_subgroup(&g, group_name, p.get_or("k", "center"))?;
    let k_names: Vec<String> = k.iter().map(|&x| g.name(x).to_string()).collect();
    let reps = select_reps(fixture_reps(group_name, &g)?, p.get_or("pi", "all"))?;
    let expect = p.get_or("expect", "holds");
    let u_spec = p.get_or("u", "one");
    let v_spec = p.get_or("v", "one");
    let pairs = p.usize_or("pairs", 20)?;
    let indices = p.get_or("indices", "all");

    let name_refs: Vec<&str> = k_names.iter().map(|s| s.as_str()).collect();
    let ce = CentralEmbedding::finite(g.clone(), &name_refs)
        .map_err(|e| anyhow!("level subgroup: {e}"))?;
    out.note(format!(
        "{group_name} with K = {{{}}} (central: {})",
        k_names.join(", "),
        ce.is_central()
    ));

    let mut rng = fixtures::seeded_rng(ctx.seed);
    let mut pool: Vec<(GroupFunction, GroupFunction, String)> = vec![(
        GroupFunction::one(ce.model()),
        GroupFunction::one(ce.model()),
        "1,1".to_string(),
    )];
    let randomized = u_spec == "random" || v_spec == "random";
    if randomized {
        for n in 0..pairs {
            let u = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let v = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            pool.push((u, v, format!("pair #{n}")));
        }
    }

    let mut failures = 0u64;
    let mut worst = 0.0f64;
    for rep in &reps {
        let pi = Representation::Finite(rep.clone());
        let slots: Vec<(usize, usize)> = match indices {
            "all" => (0..rep.dim())
                .flat_map(|i| (0..rep.dim()).map(move |kk| (i, kk)))
                .collect(),
            spec => {
                let (i, kk) = spec
                    .split_once(',')
                    .ok_or_else(|| anyhow!("indices {spec:?}: expected `all` or `i,k`"))?;
                vec![(i.trim().parse()?, kk.trim().parse()?)]
            }
        };
        for &kappa1 in &k {
            for &kappa2 in &k {
                for &lambda1 in &k {
                    for &lambda2 in &k {
                        for &(i, kk) in &slots {
                            for (u, v, label) in &pool {
                                out.checked += 1;
                                let o = main_theorem_check(
                                    &ce,
                                    &pi,
                                    u,
                                    v,
                                    KElem::G(kappa1),
                                    KElem::G(kappa2),
                                    KElem::G(lambda1),
                                    KElem::G(lambda2),
                                    i,
                                    kk,
                                    ctx.tolerance,
                                )
                                .map_err(|e| anyhow!("theorem-main: {e}"))?;
                                worst = worst.max(o.gap);
                                if !o.equal {
                                    failures += 1;
                                    out.witness(
                                        ctx.audit,
                                        format!(
                                            "{} ({label}) κ=({},{}) λ=({},{}) slot ({i},{kk}): gap {:.3e}",
                                            rep.name(),
                                            g.name(kappa1),
                                            g.name(kappa2),
                                            g.name(lambda1),
                                            g.name(lambda2),
                                            o.gap
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    finish_expectation(&mut out, expect, failures, worst)?;
    Ok(out)
}

fn theorem_main_circle(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    use dgpd_core::compact::GroupFunction;
    use dgpd_core::fourier::FourierSeries;

    let mut out = CheckOutcome::new();
    let r = p.require_f64("r")?;
    let band = p.i64_or("band", 4)?;
    let freq_max = p.i64_or("freq-max", 4)?;
    let expect = p.get_or("expect", "holds");
    let ce = CentralEmbedding::circle(r, band);
    out.note(format!(
        "circle model: r = {r}, level band ±{band}, frequencies up to ±{freq_max}"
    ));

    let freqs: BTreeSet<i64> = [-freq_max, -1, 0, 1, freq_max].into_iter().collect();
    let levels: [i64; 3] = [-1, 0, 1];
    let mut failures = 0u64;
    let mut worst = 0.0f64;
    for &m in &freqs {
        let pi = Representation::CircleCharacter(m);
        for &b in &freqs {
            for &d in &freqs {
                let u = GroupFunction::Circle(FourierSeries::basis(b));
                let v = GroupFunction::Circle(FourierSeries::basis(d));
                for k1 in levels {
                    for k2 in levels {
                        for l1 in levels {
                            for l2 in levels {
                                out.checked += 1;
                                let o = main_theorem_check(
                                    &ce,
                                    &pi,
                                    &u,
                                    &v,
                                    KElem::Z(k1),
                                    KElem::Z(k2),
                                    KElem::Z(l1),
                                    KElem::Z(l2),
                                    0,
                                    0,
                                    ctx.tolerance,
                                )
                                .map_err(|e| anyhow!("theorem-main circle: {e}"))?;
                                worst = worst.max(o.gap);
                                if !o.equal {
                                    failures += 1;
                                    out.witness(
                                        ctx.audit,
                                        format!(
                                            "π = e[{m}], u = e[{b}], v = e[{d}], levels ({k1},{k2}|{l1},{l2}): gap {:.3e}",
                                            o.gap
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    finish_expectation(&mut out, expect, failures, worst)?;
    Ok(out)
}

fn finish_expectation(
    out: &mut CheckOutcome,
    expect: &str,
    failures: u64,
    worst: f64,
) -> Result<()> {
    match expect {
        "holds" => {
            out.verdict = Verdict::from_bool(failures == 0);
            out.note(format!(
                "{} evaluations, {} failing, worst gap {worst:.3e}",
                out.checked, failures
            ));
        }
        "fails" => {
            // Negative fixture: the identity is supposed to break somewhere.
            out.verdict = Verdict::from_bool(failures > 0);
            out.note(format!(
                "{} evaluations, {} failing (failures expected), worst gap {worst:.3e}",
                out.checked, failures
            ));
        }
        other => bail!("expect {other:?} (holds | fails)"),
    }
    Ok(())
}

fn check_torus_bridge(p: &mut Params<'_>, ctx: &CheckContext) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    let r = p.require_f64("r")?;
    let range = p.i64_or("range", 3)?;
    let flip = matches!(p.get_or("flip-sign", "false"), "true" | "1" | "yes");
    let report = torus_bridge_check(r, range, ctx.tolerance, flip);
    if !flip {
        out.note(format!(
            "rotation algebra vs circle level model, indices in [-{range},{range}]"
        ));
        out.absorb_report(&report, ctx.audit);
    } else {
        // Negative control: with the rotation sign flipped on one side, the
        // vertical comparison must break while the horizontal one (which
        // never sees the phase) stays exact.
        let vertical_broken = report
            .axioms
            .iter()
            .any(|a| a.axiom == "vertical-products-match" && !a.is_ok());
        let horizontal_ok = report
            .axioms
            .iter()
            .any(|a| a.axiom == "horizontal-products-match" && a.is_ok());
        out.checked = report.axioms.iter().map(|a| a.checked).sum();
        out.verdict = Verdict::from_bool(vertical_broken && horizontal_ok);
        out.note(format!(
            "sign-flip control: vertical broken: {vertical_broken}, horizontal intact: {horizontal_ok}"
        ));
        if out.verdict == Verdict::Fail {
            out.witness(
                ctx.audit,
                "sign-flip control did not produce the expected asymmetry".to_string(),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> CheckContext {
        CheckContext {
            tolerance: 1e-9,
            seed: 42,
            audit: false,
            base_dir: PathBuf::from("."),
        }
    }

    fn params(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
        entries
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    /// Every registry entry runs with its sample parameters. This is the
    /// coverage guarantee: no proposition-level check can exist without a
    /// name reachable from the CLI and the suite runner.
    #[test]
    fn every_registered_check_runs_with_its_sample_params() {
        for def in REGISTRY {
            let outcome = run_check(def.name, &params(def.sample), &ctx())
                .unwrap_or_else(|e| panic!("check {} failed to run: {e}", def.name));
            assert_eq!(
                outcome.verdict,
                Verdict::Pass,
                "sample run of {} did not pass: {:?}",
                def.name,
                outcome.witnesses
            );
            assert!(outcome.checked > 0, "check {} scanned nothing", def.name);
        }
    }

    #[test]
    fn unknown_names_and_params_are_usage_errors() {
        assert!(run_check("no-such-check", &params(&[]), &ctx()).is_err());
        let bad = params(&[("fixture", "z3"), ("tyop", "1")]);
        assert!(run_check("validate", &bad, &ctx()).is_err());
        let bad_tol = params(&[("fixture", "z3"), ("tolerance", "-1")]);
        assert!(run_check("validate", &bad_tol, &ctx()).is_err());
    }

    #[test]
    fn compat_scan_fails_with_witnesses_on_from_group_z2() {
        let outcome = run_check(
            "compat-scan",
            &params(&[("fixture", "from-group-z2")]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, Verdict::Fail);
        assert!(!outcome.witnesses.is_empty());
        // The mixed tuple pinned by the module-level analysis is among them.
        assert!(
            outcome.witnesses.iter().any(|w| w.contains("(0,1,1,0)")),
            "expected the (0,1,1,0) witness, got {:?}",
            outcome.witnesses
        );
    }

    #[test]
    fn naive_compat_expectation_flips_the_verdict() {
        let found = run_check(
            "naive-compat",
            &params(&[("group", "s3"), ("sigma", "rho2"), ("pi", "rho2")]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(found.verdict, Verdict::Pass);
        let none = run_check(
            "naive-compat",
            &params(&[
                ("group", "s3"),
                ("sigma", "rho2"),
                ("pi", "rho2"),
                ("expect", "none"),
            ]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(none.verdict, Verdict::Fail);
        let chars = run_check(
            "naive-compat",
            &params(&[("group", "z8"), ("expect", "none")]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(chars.verdict, Verdict::Pass);
    }

    #[test]
    fn theorem_main_honors_the_fails_expectation_on_s3_a3() {
        let outcome = run_check(
            "theorem-main",
            &params(&[
                ("group", "s3"),
                ("k", "a3"),
                ("pi", "rho2"),
                ("u", "random"),
                ("v", "random"),
                ("pairs", "3"),
                ("indices", "all"),
                ("expect", "fails"),
            ]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, Verdict::Pass);
        assert!(!outcome.witnesses.is_empty());
    }

    #[test]
    fn torus_bridge_flip_sign_is_a_working_negative_control() {
        let straight = run_check(
            "torus-bridge",
            &params(&[("r", "0.7"), ("range", "2")]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(straight.verdict, Verdict::Pass);
        let flipped = run_check(
            "torus-bridge",
            &params(&[("r", "0.7"), ("range", "2"), ("flip-sign", "true")]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(flipped.verdict, Verdict::Pass);
    }

    #[test]
    fn per_entry_seed_and_tolerance_overrides_apply() {
        // A sub-atomic tolerance forces the random-input identity to
        // miss, proving the override reaches the check body.
        let outcome = run_check(
            "coeff-identity",
            &params(&[
                ("group", "s3"),
                ("pi", "rho2"),
                ("pairs", "2"),
                ("tolerance", "1e-22"),
            ]),
            &ctx(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, Verdict::Fail);
    }
}
