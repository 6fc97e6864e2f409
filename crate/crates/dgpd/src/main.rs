//! Command-line front end.
//!
//! Every subcommand folds its arguments into a parameter map and goes
//! through the same [`checks::run_check`] path a suite manifest uses, so
//! `dgpd schur --group s3` and the manifest entry
//! `{"name": "schur", "params": {"group": "s3"}}` are the same computation.
//!
//! Exit codes: 0 all pass, 1 at least one fail, 2 usage or parse error.
//! Machine output (JSON-lines, one object per check) goes to stdout; the
//! human table goes to stderr. `DGPD_SEED` overrides `--seed`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use dgpd::checks::{self, CheckContext, REGISTRY};
use dgpd::format::{self, Manifest};
use dgpd::report::{suite_summary, Report};

#[derive(Parser)]
#[command(
    name = "dgpd",
    about = "Convolution checks for finite double groupoids and their compact cousins",
    version
)]
struct Cli {
    /// Tolerance for approximate comparisons (exact checks ignore it)
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for randomized inputs; the DGPD_SEED env var wins over this flag
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads for suite runs (default 1; report order is fixed)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Full quartic scans and uncapped witness lists
    #[arg(long, global = true)]
    audit: bool,

    /// Add wall-clock timings to reports (makes output non-reproducible)
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check category/groupoid axioms of a structure file
    Validate {
        /// Structure JSON file
        file: Option<PathBuf>,
        /// Built-in structure instead of a file (e.g. z3, pair3)
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Check double-groupoid axioms, interchange included
    ValidateDouble {
        /// Double-groupoid JSON file
        file: Option<PathBuf>,
        /// Built-in double groupoid instead of a file
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Check unitary representation axioms and irreducibility metadata
    ValidateRep {
        #[arg(long)]
        group: String,
        /// Representation name, or `all`
        #[arg(long, default_value = "all")]
        rep: String,
    },
    /// Induce vertical/horizontal Haar systems and verify their diagram
    HaarInduce {
        /// Double-groupoid JSON file
        double_file: Option<PathBuf>,
        /// Double-Haar JSON file (counting weights when omitted)
        dhaar_file: Option<PathBuf>,
        /// Built-in double groupoid instead of a file
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Convolve two algebra elements over a groupoid
    Convolve {
        /// Structure JSON file (must carry an inverse table)
        file: Option<PathBuf>,
        /// Built-in structure instead of a file
        #[arg(long)]
        fixture: Option<String>,
        /// Left factor: delta:<arrow>, unit, or @<element file>
        #[arg(long)]
        u: String,
        /// Right factor, same forms
        #[arg(long)]
        v: String,
        /// Haar weights file (counting when omitted)
        #[arg(long)]
        haar: Option<PathBuf>,
    },
    /// Compare the two delta-basis convolution products of a double groupoid
    CompatScan {
        /// Double-groupoid JSON file
        file: Option<PathBuf>,
        /// Built-in double groupoid instead of a file
        #[arg(long)]
        fixture: Option<String>,
        /// indexed (composable tuples only) or full (quartic)
        #[arg(long)]
        mode: Option<String>,
    },
    /// Scan/structure agreement on seeded random double groupoids
    CompatFuzz {
        /// Number of random instances on top of the named fixtures
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Pair-groupoid algebra vs matrix algebra, exact rationals
    PairMatrix {
        /// Largest n to check
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Rotation-algebra closed forms and the exchange trichotomy
    Nctorus {
        /// Rotation parameter
        #[arg(long)]
        r: f64,
        /// closed-vs-oracle or compat-table
        #[arg(long)]
        check: String,
        /// Index range for the scan
        #[arg(long)]
        range: Option<i64>,
    },
    /// Coefficient convolution within and across irreducibles
    Schur {
        #[arg(long)]
        group: String,
    },
    /// Pointwise-times-coefficient convolution identity
    CoeffIdentity {
        #[arg(long)]
        group: String,
        /// Representation name, or `all`
        #[arg(long, default_value = "all")]
        pi: String,
        /// Seeded random (u,v) pairs on top of (1,1)
        #[arg(long, default_value_t = 0)]
        pairs: usize,
    },
    /// Averaged exchange law in coefficient slots
    WeakCompat {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "all")]
        pi: String,
        #[arg(long, default_value_t = 0)]
        pairs: usize,
    },
    /// Unaveraged exchange law; verdict tracks the stated expectation
    NaiveCompat {
        #[arg(long)]
        group: String,
        /// Representation for the pointwise factors, or `all`
        #[arg(long, default_value = "all")]
        sigma: String,
        /// Representation for the coefficient factors, or `all`
        #[arg(long, default_value = "all")]
        pi: String,
        /// witnesses (the law breaks) or none (it holds)
        #[arg(long, default_value = "witnesses")]
        expect: String,
        /// Minimum sup-norm gap for a witness
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Level-function exchange identity over a central subgroup
    TheoremMain {
        /// finite (default) or circle
        #[arg(long, default_value = "finite")]
        model: String,
        #[arg(long)]
        group: Option<String>,
        /// Level subgroup: center, trivial, full, a3, or `+`-joined element names
        #[arg(long, default_value = "center")]
        k: String,
        /// Representation name, or `all`
        #[arg(long, default_value = "all")]
        pi: String,
        /// one or random
        #[arg(long, default_value = "one")]
        u: String,
        /// one or random
        #[arg(long, default_value = "one")]
        v: String,
        /// Seeded random (u,v) pairs when randomized
        #[arg(long)]
        pairs: Option<usize>,
        /// Check every coefficient slot (i,k)
        #[arg(long, conflicts_with = "indices")]
        all_indices: bool,
        /// One slot as `i,k`
        #[arg(long)]
        indices: Option<String>,
        /// holds (default) or fails (negative fixture)
        #[arg(long, default_value = "holds")]
        expect: String,
        /// Circle model: rotation parameter
        #[arg(long)]
        r: Option<f64>,
        /// Circle model: level truncation band
        #[arg(long)]
        band: Option<i64>,
        /// Circle model: largest frequency in the grid
        #[arg(long)]
        freq_max: Option<i64>,
    },
    /// Rotation algebra as the circle case of the level model
    TorusBridge {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 3)]
        range: i64,
        /// Negative control: flip the rotation sign on one side
        #[arg(long)]
        flip_sign: bool,
    },
    /// Run one registry check by name with raw key=value parameters
    Run {
        /// Check name as listed by list-checks
        name: String,
        /// Parameters, repeatable: -p key=value
        #[arg(short = 'p', long = "param")]
        params: Vec<String>,
    },
    /// Run every check in a manifest; exit 0 only if all pass
    Suite {
        /// Manifest JSON: [{"name": ..., "params": {...}}, ...]
        manifest: PathBuf,
    },
    /// List every runnable check with its parameters
    ListChecks,
    /// Write the bundled fixture files into a directory
    EmitFixtures {
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("dgpd: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn base_context(cli: &Cli) -> Result<CheckContext> {
    let seed = match std::env::var("DGPD_SEED") {
        Err(_) => cli.seed,
        Ok(s) => s
            .parse()
            .map_err(|e| anyhow!("DGPD_SEED={s:?}: {e}"))?,
    };
    if cli.tolerance <= 0.0 {
        return Err(anyhow!("--tolerance must be positive"));
    }
    Ok(CheckContext {
        tolerance: cli.tolerance,
        seed,
        audit: cli.audit,
        base_dir: PathBuf::from("."),
    })
}

fn dispatch(cli: Cli) -> Result<bool> {
    let ctx = base_context(&cli)?;
    let timings = cli.timings;
    let jobs = cli.jobs;

    let mut params: BTreeMap<String, String> = BTreeMap::new();

    let name: &str = match &cli.command {
        Command::Validate { file, fixture } => {
            opt_path(&mut params, "file", file);
            opt_str(&mut params, "fixture", fixture);
            "validate"
        }
        Command::ValidateDouble { file, fixture } => {
            opt_path(&mut params, "file", file);
            opt_str(&mut params, "fixture", fixture);
            "validate-double"
        }
        Command::ValidateRep { group, rep } => {
            put(&mut params, "group", group.clone());
            put(&mut params, "rep", rep.clone());
            "validate-rep"
        }
        Command::HaarInduce {
            double_file,
            dhaar_file,
            fixture,
        } => {
            opt_path(&mut params, "file", double_file);
            opt_path(&mut params, "haar", dhaar_file);
            opt_str(&mut params, "fixture", fixture);
            "haar-induce"
        }
        Command::Convolve {
            file,
            fixture,
            u,
            v,
            haar,
        } => {
            opt_path(&mut params, "file", file);
            opt_str(&mut params, "fixture", fixture);
            put(&mut params, "u", u.clone());
            put(&mut params, "v", v.clone());
            opt_path(&mut params, "haar", haar);
            "convolve"
        }
        Command::CompatScan {
            file,
            fixture,
            mode,
        } => {
            opt_path(&mut params, "file", file);
            opt_str(&mut params, "fixture", fixture);
            opt_str(&mut params, "mode", mode);
            "compat-scan"
        }
        Command::CompatFuzz { count } => {
            put(&mut params, "count", count.to_string());
            "compat-fuzz"
        }
        Command::PairMatrix { max_n } => {
            put(&mut params, "max-n", max_n.to_string());
            "pair-matrix"
        }
        Command::Nctorus { r, check, range } => {
            put(&mut params, "r", r.to_string());
            put(&mut params, "check", check.clone());
            if let Some(range) = range {
                put(&mut params, "range", range.to_string());
            }
            "nctorus"
        }
        Command::Schur { group } => {
            put(&mut params, "group", group.clone());
            "schur"
        }
        Command::CoeffIdentity { group, pi, pairs } => {
            put(&mut params, "group", group.clone());
            put(&mut params, "pi", pi.clone());
            put(&mut params, "pairs", pairs.to_string());
            "coeff-identity"
        }
        Command::WeakCompat { group, pi, pairs } => {
            put(&mut params, "group", group.clone());
            put(&mut params, "pi", pi.clone());
            put(&mut params, "pairs", pairs.to_string());
            "weak-compat"
        }
        Command::NaiveCompat {
            group,
            sigma,
            pi,
            expect,
            threshold,
        } => {
            put(&mut params, "group", group.clone());
            put(&mut params, "sigma", sigma.clone());
            put(&mut params, "pi", pi.clone());
            put(&mut params, "expect", expect.clone());
            if let Some(t) = threshold {
                put(&mut params, "threshold", t.to_string());
            }
            "naive-compat"
        }
        Command::TheoremMain {
            model,
            group,
            k,
            pi,
            u,
            v,
            pairs,
            all_indices,
            indices,
            expect,
            r,
            band,
            freq_max,
        } => {
            put(&mut params, "model", model.clone());
            if model == "finite" {
                let group = group
                    .as_ref()
                    .ok_or_else(|| anyhow!("theorem-main: --group is required for the finite model"))?;
                put(&mut params, "group", group.clone());
                put(&mut params, "k", k.clone());
                put(&mut params, "pi", pi.clone());
                put(&mut params, "u", u.clone());
                put(&mut params, "v", v.clone());
                if let Some(p) = pairs {
                    put(&mut params, "pairs", p.to_string());
                }
                if *all_indices {
                    put(&mut params, "indices", "all".to_string());
                } else if let Some(spec) = indices {
                    put(&mut params, "indices", spec.clone());
                }
            } else {
                let r = r.ok_or_else(|| anyhow!("theorem-main: --r is required for the circle model"))?;
                put(&mut params, "r", r.to_string());
                if let Some(b) = band {
                    put(&mut params, "band", b.to_string());
                }
                if let Some(f) = freq_max {
                    put(&mut params, "freq-max", f.to_string());
                }
            }
            put(&mut params, "expect", expect.clone());
            "theorem-main"
        }
        Command::TorusBridge {
            r,
            range,
            flip_sign,
        } => {
            put(&mut params, "r", r.to_string());
            put(&mut params, "range", range.to_string());
            if *flip_sign {
                put(&mut params, "flip-sign", "true".to_string());
            }
            "torus-bridge"
        }
        Command::Run { name, params: kvs } => {
            for kv in kvs {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| anyhow!("param {kv:?}: expected key=value"))?;
                params.insert(k.to_string(), v.to_string());
            }
            return run_single(name, &params, &ctx, timings);
        }
        Command::Suite { manifest } => {
            return run_suite(manifest, &ctx, jobs, timings);
        }
        Command::ListChecks => {
            for def in REGISTRY {
                println!("{:<16} {}", def.name, def.about);
                println!("{:<16}   params: {}", "", def.params);
            }
            return Ok(true);
        }
        Command::EmitFixtures { dir } => {
            emit_fixtures(dir)?;
            return Ok(true);
        }
    };
    run_single(name, &params, &ctx, timings)
}

fn put(map: &mut BTreeMap<String, String>, key: &str, value: String) {
    map.insert(key.to_string(), value);
}

fn opt_path(map: &mut BTreeMap<String, String>, key: &str, value: &Option<PathBuf>) {
    if let Some(p) = value {
        map.insert(key.to_string(), p.display().to_string());
    }
}

fn opt_str(map: &mut BTreeMap<String, String>, key: &str, value: &Option<String>) {
    if let Some(s) = value {
        map.insert(key.to_string(), s.clone());
    }
}

/// Runs one check, emits its JSON line on stdout and its human block on
/// stderr, and reports whether it passed.
fn run_single(
    name: &str,
    params: &BTreeMap<String, String>,
    ctx: &CheckContext,
    timings: bool,
) -> Result<bool> {
    let report = execute(name, params, ctx, timings)?;
    println!("{}", report.json_line());
    eprintln!("{}", report.human());
    Ok(report.passed())
}

fn execute(
    name: &str,
    params: &BTreeMap<String, String>,
    ctx: &CheckContext,
    timings: bool,
) -> Result<Report> {
    let started = Instant::now();
    let outcome = checks::run_check(name, params, ctx)?;
    let elapsed = timings.then(|| started.elapsed().as_millis() as u64);
    let echo = checks::effective_context(name, params, ctx)?;
    Ok(Report::new(name, outcome, params, &echo, elapsed))
}

fn run_suite(
    manifest_path: &Path,
    ctx: &CheckContext,
    jobs: Option<usize>,
    timings: bool,
) -> Result<bool> {
    let manifest: Manifest = format::read_json(manifest_path)?;
    let base_dir = manifest_path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let ctx = CheckContext {
        base_dir,
        ..ctx.clone()
    };

    let n = manifest.len();
    let workers = jobs.unwrap_or(1).clamp(1, n.max(1));
    let slots: Mutex<Vec<Option<Result<Report>>>> = Mutex::new((0..n).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let entry = &manifest[i];
                let result = execute(&entry.name, &entry.params, &ctx, timings)
                    .with_context(|| format!("manifest entry #{i} ({})", entry.name));
                slots.lock().expect("no poisoned slots")[i] = Some(result);
            });
        }
    });

    // Serialized assembly in manifest order, whatever the thread schedule.
    let mut reports = Vec::with_capacity(n);
    for slot in slots.into_inner().expect("no poisoned slots") {
        reports.push(slot.expect("every slot filled")?);
    }
    for report in &reports {
        println!("{}", report.json_line());
    }
    for report in &reports {
        eprintln!("{}", report.human());
    }
    eprintln!("{}", suite_summary(&reports));
    Ok(reports.iter().all(Report::passed))
}

/// Writes the bundled example inputs: structures, double groupoids, Haar
/// weights, and algebra elements, all derived from the built-in fixtures.
fn emit_fixtures(dir: &Path) -> Result<()> {
    use dgpd_core::convolution::AlgebraElement;
    use dgpd_core::fixtures;
    use dgpd_core::haar::DoubleHaarSystem;
    use dgpd_core::Scalar;

    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written: Vec<String> = Vec::new();
    let mut emit = |name: &str, value: serde_json::Value| -> Result<()> {
        let path = dir.join(name);
        format::write_json(&path, &value)?;
        written.push(name.to_string());
        Ok(())
    };

    let z3 = fixtures::cyclic_group(3);
    emit(
        "z3.json",
        serde_json::to_value(format::StructureFile::from_groupoid(z3.table()))?,
    )?;
    emit(
        "pair3.json",
        serde_json::to_value(format::StructureFile::from_groupoid(&fixtures::pair_groupoid(3)))?,
    )?;
    emit(
        "z3-bad.json",
        serde_json::to_value(format::StructureFile::from_category(
            &fixtures::cyclic_group_with_bad_entry(3, "1", "1", "1"),
        ))?,
    )?;

    for name in [
        "from-group-z2",
        "from-group-z3",
        "equal-pair-z3",
        "z2-on-z4",
        "q8-center",
    ] {
        let dg = checks::fixture_double(name)?;
        emit(
            &format!("{name}.json"),
            serde_json::to_value(format::DoubleFile::from_double(&dg))?,
        )?;
    }

    let q8c = checks::fixture_double("q8-center")?;
    emit(
        "q8-center-haar.json",
        serde_json::to_value(format::DoubleHaarFile::from_system(
            &q8c,
            &DoubleHaarSystem::counting(&q8c),
        ))?,
    )?;

    let gpd = z3.table();
    let mut u = AlgebraElement::zero(gpd);
    u.add_to(gpd.arrow_id("0").expect("z3 arrow"), Scalar::one());
    u.add_to(
        gpd.arrow_id("1").expect("z3 arrow"),
        Scalar::from_rational(dgpd_core::scalar::Rational::new(1, 2)),
    );
    let mut v = AlgebraElement::zero(gpd);
    v.add_to(gpd.arrow_id("2").expect("z3 arrow"), Scalar::from_integer(2));
    emit("u-z3.json", serde_json::to_value(format::element_to_file(gpd, &u))?)?;
    emit("v-z3.json", serde_json::to_value(format::element_to_file(gpd, &v))?)?;

    eprintln!("wrote {} files into {}", written.len(), dir.display());
    for name in written {
        eprintln!("  {name}");
    }
    Ok(())
}
