//! The rotation 2-group model: circle-valued functions graded by an integer
//! level, with two convolution products.
//!
//! Elements live in the span of a doubly indexed basis `u_{j,k}` — level `j`,
//! circle frequency `k` — standing for the function that is `e^{ikθ}` at
//! level `j` and zero elsewhere. The vertical product `*∘` twists by the
//! rotation constant `r`:
//!
//! `u_{a,b} *∘ u_{c,d} = e^{i·r·b·c} · u_{a+c, b+d}`
//!
//! while the horizontal product `*•` convolves along the circle with
//! normalized measure, so it projects onto matching frequencies:
//!
//! `u_{a,b} *• u_{c,d} = u_{a+c, b}` if `b = d`, else `0`.
//!
//! Each closed form has an independent oracle ([`nct_generic_conv`]) that
//! evaluates the defining sum level by level through [`FourierSeries`]
//! operations: argument rotation plus pointwise product for `*∘`, and
//! frequency-orthogonal convolution for `*•`. The circle integral is applied
//! exactly through character orthogonality, never quadratured.
//!
//! Conventions fixed here: the circle carries normalized measure (total mass
//! one) and the level index carries counting measure. Rescaling the level
//! measure would rescale `*•` but not `*∘`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::convolution::PRUNE_EPS;
use crate::fourier::FourierSeries;
use crate::groupoid::VIOLATION_CAP;

/// The action constant, in radians per level step.
pub type RotationParam = f64;

/// Finitely supported coefficient map `(level, frequency) ↦ c`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TorusFunction {
    coeffs: BTreeMap<(i64, i64), Complex64>,
}

impl TorusFunction {
    pub fn zero() -> Self {
        TorusFunction::default()
    }

    /// The basis element `u_{level, freq}`.
    pub fn basis(level: i64, freq: i64) -> Self {
        let mut f = TorusFunction::zero();
        f.add_to(level, freq, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_coeffs(entries: &[(i64, i64, Complex64)]) -> Self {
        let mut f = TorusFunction::zero();
        for &(j, k, c) in entries {
            f.add_to(j, k, c);
        }
        f.prune();
        f
    }

    pub fn coeff(&self, level: i64, freq: i64) -> Complex64 {
        self.coeffs.get(&(level, freq)).copied().unwrap_or_default()
    }

    pub fn add_to(&mut self, level: i64, freq: i64, c: Complex64) {
        *self.coeffs.entry((level, freq)).or_default() += c;
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&(j, k), &c)| (j, k, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, k, c) in other.support() {
            out.add_to(j, k, c);
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    pub fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_EPS);
    }

    /// Splits into one Fourier series per level, dropping empty levels.
    pub fn levels(&self) -> BTreeMap<i64, FourierSeries> {
        let mut out: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (j, k, c) in self.support() {
            out.entry(j).or_default().push((k, c));
        }
        out.into_iter()
            .map(|(j, entries)| (j, FourierSeries::from_coeffs(&entries)))
            .collect()
    }

    /// Rebuilds from a per-level decomposition.
    pub fn from_levels(levels: &BTreeMap<i64, FourierSeries>) -> Self {
        let mut f = TorusFunction::zero();
        for (&j, series) in levels {
            for (k, c) in series.support() {
                f.add_to(j, k, c);
            }
        }
        f.prune();
        f
    }

    /// Largest level magnitude in the support.
    pub fn level_bound(&self) -> i64 {
        self.coeffs.keys().map(|&(j, _)| j.abs()).max().unwrap_or(0)
    }

    /// Largest frequency magnitude in the support.
    pub fn frequency_bound(&self) -> i64 {
        self.coeffs.keys().map(|&(_, k)| k.abs()).max().unwrap_or(0)
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        let keys: BTreeSet<(i64, i64)> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.into_iter()
            .map(|(j, k)| (self.coeff(j, k) - other.coeff(j, k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    /// Printable form: `u[level,freq]: value` pairs in index order.
    pub fn describe(&self) -> String {
        if self.coeffs.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(j, k), c)| format!("u[{j},{k}]: {c}"))
            .collect();
        parts.join(", ")
    }
}

/// Closed-form vertical product: bilinear extension of
/// `u_{a,b} *∘ u_{c,d} = e^{i·r·b·c} u_{a+c, b+d}`.
pub fn nct_conv_circ(u: &TorusFunction, v: &TorusFunction, r: RotationParam) -> TorusFunction {
    let mut out = TorusFunction::zero();
    for (a, b, cu) in u.support() {
        for (c, d, cv) in v.support() {
            let phase = Complex64::cis(r * b as f64 * c as f64);
            out.add_to(a + c, b + d, cu * cv * phase);
        }
    }
    out.prune();
    out
}

/// Closed-form horizontal product: bilinear extension of
/// `u_{a,b} *• u_{c,d} = [b = d] · u_{a+c, b}`.
pub fn nct_conv_bullet(u: &TorusFunction, v: &TorusFunction) -> TorusFunction {
    let mut out = TorusFunction::zero();
    for (a, b, cu) in u.support() {
        for (c, d, cv) in v.support() {
            if b == d {
                out.add_to(a + c, b, cu * cv);
            }
        }
    }
    out.prune();
    out
}

/// Which product [`nct_generic_conv`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NctMode {
    Circ,
    Bullet,
}

/// Oracle route: evaluates the defining convolution sums level by level.
///
/// For output level `n`, the vertical sum is
/// `Σ_m u(m, r·(n−m) + θ) · v(n−m, θ)` — each term rotates the level-`m`
/// series of `u` by `r` times the level of the `v` factor, then multiplies
/// pointwise. The horizontal sum integrates `u(m, φ)·v(n−m, θ−φ)` over the
/// normalized circle, which is the frequency-diagonal convolution of the two
/// series.
pub fn nct_generic_conv(
    u: &TorusFunction,
    v: &TorusFunction,
    r: RotationParam,
    mode: NctMode,
) -> TorusFunction {
    let lu = u.levels();
    let lv = v.levels();
    let mut out: BTreeMap<i64, FourierSeries> = BTreeMap::new();
    for (&m, fu) in &lu {
        for (&l, fv) in &lv {
            let term = match mode {
                NctMode::Circ => fu.rotate(r * l as f64).cauchy_product(fv),
                NctMode::Bullet => fu.orthogonal_convolve(fv),
            };
            let slot = out.entry(m + l).or_insert_with(FourierSeries::zero);
            *slot = slot.add(&term);
        }
    }
    TorusFunction::from_levels(&out)
}

/// The two exchange expressions for one basis 8-tuple, and whether they
/// agree within `tol`.
#[derive(Debug, Clone)]
pub struct NctCompatOutcome {
    pub expr1: TorusFunction,
    pub expr2: TorusFunction,
    pub equal: bool,
}

/// Evaluates `(u_{ab} *∘ u_{cd}) *• (u_{ef} *∘ u_{gh})` against
/// `(u_{ab} *• u_{ef}) *∘ (u_{cd} *• u_{gh})` for one index tuple
/// `[a,b,c,d,e,f,g,h]`.
pub fn nct_compat_expressions(idx: [i64; 8], r: RotationParam, tol: f64) -> NctCompatOutcome {
    let [a, b, c, d, e, f, g, h] = idx;
    let u_ab = TorusFunction::basis(a, b);
    let u_cd = TorusFunction::basis(c, d);
    let u_ef = TorusFunction::basis(e, f);
    let u_gh = TorusFunction::basis(g, h);
    let expr1 = nct_conv_bullet(&nct_conv_circ(&u_ab, &u_cd, r), &nct_conv_circ(&u_ef, &u_gh, r));
    let expr2 = nct_conv_circ(&nct_conv_bullet(&u_ab, &u_ef), &nct_conv_bullet(&u_cd, &u_gh), r);
    let equal = expr1.equal_within(&expr2, tol);
    NctCompatOutcome { expr1, expr2, equal }
}

/// Predicted outcome class for one exchange tuple, decided from the
/// frequency indices alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NctCompatClass {
    /// `b = f` and `d = h`: both expressions carry the same phase on the
    /// same basis element.
    Equal,
    /// `b + d ≠ f + h`: the frequency projection kills both expressions.
    BothZero,
    /// Total frequencies match but the pairs differ: the first expression
    /// survives while the second loses a factor to the projection.
    FirstOnly,
}

pub fn nct_compat_predicted(idx: [i64; 8]) -> NctCompatClass {
    let [_, b, _, d, _, f, _, h] = idx;
    if b == f && d == h {
        NctCompatClass::Equal
    } else if b + d != f + h {
        NctCompatClass::BothZero
    } else {
        NctCompatClass::FirstOnly
    }
}

/// Full exchange scan over all index tuples in `[-range, range]^8`.
#[derive(Debug, Clone)]
pub struct NctCompatTable {
    pub range: i64,
    pub r: RotationParam,
    pub checked: u64,
    pub equal_count: u64,
    pub both_zero_count: u64,
    pub first_only_count: u64,
    /// Tuples whose computed outcome contradicted the predicted class.
    pub mismatches: Vec<String>,
    /// One representative tuple per class, with both expressions printed.
    pub samples: BTreeMap<&'static str, String>,
}

/// Scans every tuple in `[-range, range]^8`, classifying the computed
/// outcome and checking it against [`nct_compat_predicted`].
pub fn nct_compat_table(r: RotationParam, range: i64, tol: f64) -> NctCompatTable {
    let mut table = NctCompatTable {
        range,
        r,
        checked: 0,
        equal_count: 0,
        both_zero_count: 0,
        first_only_count: 0,
        mismatches: Vec::new(),
        samples: BTreeMap::new(),
    };
    let span: Vec<i64> = (-range..=range).collect();
    let mut idx = [0i64; 8];
    scan_rec(&span, &mut idx, 0, r, tol, &mut table);
    table
}

fn scan_rec(
    span: &[i64],
    idx: &mut [i64; 8],
    pos: usize,
    r: RotationParam,
    tol: f64,
    table: &mut NctCompatTable,
) {
    if pos == 8 {
        record_tuple(*idx, r, tol, table);
        return;
    }
    for &v in span {
        idx[pos] = v;
        scan_rec(span, idx, pos + 1, r, tol, table);
    }
}

fn record_tuple(idx: [i64; 8], r: RotationParam, tol: f64, table: &mut NctCompatTable) {
    table.checked += 1;
    let outcome = nct_compat_expressions(idx, r, tol);
    let predicted = nct_compat_predicted(idx);
    let computed = if outcome.equal {
        if outcome.expr1.is_zero() {
            NctCompatClass::BothZero
        } else {
            NctCompatClass::Equal
        }
    } else {
        NctCompatClass::FirstOnly
    };
    let (slot, label) = match computed {
        NctCompatClass::Equal => (&mut table.equal_count, "equal"),
        NctCompatClass::BothZero => (&mut table.both_zero_count, "both-zero"),
        NctCompatClass::FirstOnly => (&mut table.first_only_count, "first-only"),
    };
    *slot += 1;
    if predicted != computed && table.mismatches.len() < VIOLATION_CAP {
        table.mismatches.push(format!(
            "{idx:?}: predicted {predicted:?}, computed {computed:?}"
        ));
    }
    table.samples.entry(label).or_insert_with(|| {
        format!(
            "{idx:?}: expr1 = {}, expr2 = {}",
            outcome.expr1.describe(),
            outcome.expr2.describe()
        )
    });
}
