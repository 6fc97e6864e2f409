//! Semidirect models `K ⋉ G` with a discrete index group `K` placed inside
//! a compact group `G`: level functions, translation operators, the two
//! convolution products, and the averaged exchange theorem.
//!
//! A level function is a finite sum of decorated functions `u^κ` — the
//! function `u` on `G` sitting at level `κ ∈ K`. The horizontal product
//! convolves over `G` and multiplies levels:
//!
//! `u^κ *• v^λ = (u * v)^{κλ}`
//!
//! while the vertical product multiplies pointwise after translating the
//! left factor by the right factor's level:
//!
//! `u^κ *∘ v^λ = (L_λ u · v)^{κλ}`, where `(L_κ u)(g) = u(κg)`.
//!
//! Two models are supported: a finite group `G` with `K` one of its
//! subgroups (centrality is a validated property, not a constructor
//! precondition — non-central choices are legitimate negative fixtures),
//! and the circle with `K = ℤ` acting through angle `r` per level. The
//! circle's level group is truncated to a band `[-B, B]`; operations whose
//! result would leave the band error out rather than silently wrapping,
//! because the untruncated level group is genuinely infinite.
//!
//! [`sg_generic_conv`] recomputes both products from the raw action-
//! groupoid and product-group convolution sums, without the level
//! factorization the closed forms rely on, and serves as their oracle.
//! [`torus_bridge_check`] identifies the circle model with the rotation
//! 2-group module basis-by-basis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::compact::{
    group_convolve, pointwise_product, CompactError, FiniteFn, GroupFunction, ModelRef,
    Representation,
};
use crate::fourier::FourierSeries;
use crate::group::{FiniteGroupTable, GroupError};
use crate::groupoid::ArrowId;
use crate::nctorus::{nct_conv_bullet, nct_conv_circ, TorusFunction};
use crate::report::{AxiomScan, ValidationReport};

#[derive(Debug, Clone)]
pub enum SingularError {
    /// The level is not an element of `K`.
    UnknownLevel(String),
    /// A level product left the configured circle band.
    TruncationExceeded { level: i64, band: i64 },
    /// Finite-model data used with the circle model or vice versa.
    ModelMismatch,
    Group(GroupError),
    Compact(CompactError),
}

impl fmt::Display for SingularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularError::UnknownLevel(name) => write!(f, "level {name:?} is not in K"),
            SingularError::TruncationExceeded { level, band } => write!(
                f,
                "level {level} escapes the configured band [-{band}, {band}]"
            ),
            SingularError::ModelMismatch => write!(f, "finite/circle model mismatch"),
            SingularError::Group(e) => write!(f, "subgroup data: {e}"),
            SingularError::Compact(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SingularError {}

impl From<GroupError> for SingularError {
    fn from(e: GroupError) -> Self {
        SingularError::Group(e)
    }
}

impl From<CompactError> for SingularError {
    fn from(e: CompactError) -> Self {
        SingularError::Compact(e)
    }
}

/// One element of the level group `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum KElem {
    /// A finite-group element (already an element of the ambient group).
    G(ArrowId),
    /// An integer level of the circle model.
    Z(i64),
}

enum Model {
    Finite {
        group: FiniteGroupTable,
        k_elements: Vec<ArrowId>,
    },
    Circle {
        r: f64,
        band: i64,
    },
}

/// A discrete level group `K` placed inside a compact model.
pub struct CentralEmbedding {
    model: Model,
}

impl CentralEmbedding {
    /// Finite model: `K` must be a subgroup of `group` (closure is checked
    /// here); whether it is central is [`CentralEmbedding::validate`]'s
    /// business.
    pub fn finite(group: FiniteGroupTable, k_names: &[&str]) -> Result<Self, SingularError> {
        let k_elements = group.subgroup(k_names)?;
        Ok(CentralEmbedding {
            model: Model::Finite { group, k_elements },
        })
    }

    /// Circle model: levels are integers in `[-band, band]`, each acting by
    /// the angle `r · level`.
    pub fn circle(r: f64, band: i64) -> Self {
        CentralEmbedding {
            model: Model::Circle { r, band },
        }
    }

    pub fn model(&self) -> ModelRef<'_> {
        match &self.model {
            Model::Finite { group, .. } => ModelRef::Finite(group),
            Model::Circle { .. } => ModelRef::Circle,
        }
    }

    /// The ambient finite group, if this is the finite model.
    pub fn finite_group(&self) -> Option<&FiniteGroupTable> {
        match &self.model {
            Model::Finite { group, .. } => Some(group),
            Model::Circle { .. } => None,
        }
    }

    pub fn rotation(&self) -> Option<f64> {
        match &self.model {
            Model::Circle { r, .. } => Some(*r),
            Model::Finite { .. } => None,
        }
    }

    pub fn band(&self) -> Option<i64> {
        match &self.model {
            Model::Circle { band, .. } => Some(*band),
            Model::Finite { .. } => None,
        }
    }

    pub fn k_identity(&self) -> KElem {
        match &self.model {
            Model::Finite { group, .. } => KElem::G(group.identity()),
            Model::Circle { .. } => KElem::Z(0),
        }
    }

    /// All levels in ascending order (the full band for the circle).
    pub fn k_elements(&self) -> Vec<KElem> {
        match &self.model {
            Model::Finite { k_elements, .. } => k_elements.iter().map(|&a| KElem::G(a)).collect(),
            Model::Circle { band, .. } => (-band..=*band).map(KElem::Z).collect(),
        }
    }

    pub fn contains(&self, kappa: KElem) -> bool {
        match (&self.model, kappa) {
            (Model::Finite { k_elements, .. }, KElem::G(a)) => k_elements.contains(&a),
            (Model::Circle { band, .. }, KElem::Z(n)) => n.abs() <= *band,
            _ => false,
        }
    }

    pub fn k_mul(&self, a: KElem, b: KElem) -> Result<KElem, SingularError> {
        match (&self.model, a, b) {
            (Model::Finite { group, .. }, KElem::G(x), KElem::G(y)) => {
                self.check_level(a)?;
                self.check_level(b)?;
                Ok(KElem::G(group.op(x, y)))
            }
            (Model::Circle { band, .. }, KElem::Z(x), KElem::Z(y)) => {
                let sum = x + y;
                if sum.abs() > *band {
                    Err(SingularError::TruncationExceeded {
                        level: sum,
                        band: *band,
                    })
                } else {
                    Ok(KElem::Z(sum))
                }
            }
            _ => Err(SingularError::ModelMismatch),
        }
    }

    pub fn k_inv(&self, a: KElem) -> Result<KElem, SingularError> {
        match (&self.model, a) {
            (Model::Finite { group, .. }, KElem::G(x)) => {
                self.check_level(a)?;
                Ok(KElem::G(group.inv(x)))
            }
            (Model::Circle { .. }, KElem::Z(x)) => Ok(KElem::Z(-x)),
            _ => Err(SingularError::ModelMismatch),
        }
    }

    fn check_level(&self, kappa: KElem) -> Result<(), SingularError> {
        if self.contains(kappa) {
            Ok(())
        } else {
            Err(SingularError::UnknownLevel(self.level_name(kappa)))
        }
    }

    pub fn level_name(&self, kappa: KElem) -> String {
        match (&self.model, kappa) {
            (Model::Finite { group, .. }, KElem::G(a)) => group.name(a).to_string(),
            (_, KElem::Z(n)) => n.to_string(),
            (Model::Circle { .. }, KElem::G(a)) => format!("#{}", a.0),
        }
    }

    /// The translation operator `(L_κ u)(g) = u(κ · g)`; on the circle a
    /// level-`n` translation twists frequency `k` by `e^{i·k·r·n}`.
    pub fn translate(&self, kappa: KElem, u: &GroupFunction) -> Result<GroupFunction, SingularError> {
        self.check_level(kappa)?;
        match (&self.model, kappa, u) {
            (Model::Finite { group, .. }, KElem::G(x), GroupFunction::Finite(f)) => {
                let mut out = FiniteFn::zero(group);
                for g in group.elements() {
                    out.set(g, f.value(group.op(x, g)));
                }
                Ok(GroupFunction::Finite(out))
            }
            (Model::Circle { r, .. }, KElem::Z(n), GroupFunction::Circle(s)) => {
                Ok(GroupFunction::Circle(s.rotate(r * n as f64)))
            }
            _ => Err(SingularError::ModelMismatch),
        }
    }

    /// True when every element of `K` commutes with every ambient element
    /// (always true on the circle).
    pub fn is_central(&self) -> bool {
        match &self.model {
            Model::Finite { group, k_elements } => group.is_central(k_elements),
            Model::Circle { .. } => true,
        }
    }

    /// Report form of the centrality check, with non-commuting witnesses.
    pub fn validate(&self, subject: &str) -> ValidationReport {
        let mut report = ValidationReport::new(subject.to_string());
        let mut scan = AxiomScan::new("centrality");
        if let Model::Finite { group, k_elements } = &self.model {
            for &kappa in k_elements {
                for g in group.elements() {
                    scan.tick();
                    if group.op(kappa, g) != group.op(g, kappa) {
                        scan.violate(
                            alloc::vec![
                                group.name(kappa).to_string(),
                                group.name(g).to_string()
                            ],
                            "level element does not commute with the ambient element"
                                .to_string(),
                        );
                    }
                }
            }
        } else {
            scan.tick();
        }
        report.push(scan.finish());
        report
    }
}

/// A finite sum `Σ u_κ^κ` of functions placed at levels of `K`.
#[derive(Debug, Clone)]
pub struct LevelFunction {
    levels: BTreeMap<KElem, GroupFunction>,
}

impl LevelFunction {
    pub fn zero() -> Self {
        LevelFunction {
            levels: BTreeMap::new(),
        }
    }

    /// The decorated function `u^κ`.
    pub fn single(
        ce: &CentralEmbedding,
        kappa: KElem,
        u: GroupFunction,
    ) -> Result<Self, SingularError> {
        ce.check_level(kappa)?;
        match (ce.model(), &u) {
            (ModelRef::Finite(_), GroupFunction::Finite(_))
            | (ModelRef::Circle, GroupFunction::Circle(_)) => {}
            _ => return Err(SingularError::ModelMismatch),
        }
        let mut f = LevelFunction::zero();
        f.levels.insert(kappa, u);
        Ok(f)
    }

    pub fn level(&self, kappa: KElem) -> Option<&GroupFunction> {
        self.levels.get(&kappa)
    }

    pub fn support(&self) -> impl Iterator<Item = (KElem, &GroupFunction)> + '_ {
        self.levels.iter().map(|(&k, f)| (k, f))
    }

    pub fn support_levels(&self) -> Vec<KElem> {
        self.levels.keys().copied().collect()
    }

    pub fn add_level(&mut self, kappa: KElem, u: GroupFunction) -> Result<(), SingularError> {
        match self.levels.get_mut(&kappa) {
            Some(existing) => {
                *existing = existing.add(&u)?;
                Ok(())
            }
            None => {
                self.levels.insert(kappa, u);
                Ok(())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SingularError> {
        let mut out = self.clone();
        for (k, f) in other.support() {
            out.add_level(k, f.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for f in out.levels.values_mut() {
            *f = f.scale(c);
        }
        out
    }

    /// Drops levels whose function is below `tol` in sup norm.
    pub fn prune(&mut self, tol: f64) {
        self.levels.retain(|_, f| f.sup_norm() > tol);
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        let keys: BTreeSet<KElem> = self
            .levels
            .keys()
            .chain(other.levels.keys())
            .copied()
            .collect();
        keys.into_iter()
            .map(|k| match (self.level(k), other.level(k)) {
                (Some(a), Some(b)) => a.sup_distance(b),
                (Some(a), None) | (None, Some(a)) => a.sup_norm(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }

    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.levels.values().all(|f| f.sup_norm() <= tol)
    }

    pub fn describe(&self, ce: &CentralEmbedding) -> String {
        if self.levels.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .levels
            .keys()
            .map(|&k| format!("level {}", ce.level_name(k)))
            .collect();
        parts.join(", ")
    }
}

/// Horizontal product: `u^κ *• v^λ = (u * v)^{κλ}`, extended bilinearly.
pub fn sg_conv_bullet(
    ce: &CentralEmbedding,
    x: &LevelFunction,
    y: &LevelFunction,
) -> Result<LevelFunction, SingularError> {
    let mut out = LevelFunction::zero();
    for (kappa, u) in x.support() {
        for (lambda, v) in y.support() {
            let level = ce.k_mul(kappa, lambda)?;
            let conv = group_convolve(ce.model(), u, v)?;
            out.add_level(level, conv)?;
        }
    }
    out.prune(crate::convolution::PRUNE_EPS);
    Ok(out)
}

/// Vertical product: `u^κ *∘ v^λ = (L_λ u · v)^{κλ}`, extended bilinearly.
pub fn sg_conv_circ(
    ce: &CentralEmbedding,
    x: &LevelFunction,
    y: &LevelFunction,
) -> Result<LevelFunction, SingularError> {
    let mut out = LevelFunction::zero();
    for (kappa, u) in x.support() {
        for (lambda, v) in y.support() {
            let level = ce.k_mul(kappa, lambda)?;
            let shifted = ce.translate(lambda, u)?;
            let prod = pointwise_product(ce.model(), &shifted, v)?;
            out.add_level(level, prod)?;
        }
    }
    out.prune(crate::convolution::PRUNE_EPS);
    Ok(out)
}

/// Which product [`sg_generic_conv`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgMode {
    Circ,
    Bullet,
}

/// Oracle route: both products computed from the raw double sums over the
/// semidirect model, with counting measure on `K` and normalized measure on
/// `G`, never using the level factorization.
///
/// Finite model, writing `x(κ, g)` for the value of the level-`κ` component
/// at `g`:
///
/// - vertical: `(x *∘ y)(κ, g) = Σ_λ x(λ, λ⁻¹κg) · y(λ⁻¹κ, g)`
/// - horizontal: `(x *• y)(κ, g) = Σ_λ (1/|G|) Σ_h x(λ, h) · y(λ⁻¹κ, h⁻¹g)`
///
/// Circle model: the same sums per output level, with the angle shift
/// `r·(n−m)` entering the vertical sum and character orthogonality applied
/// exactly in the horizontal one.
pub fn sg_generic_conv(
    ce: &CentralEmbedding,
    x: &LevelFunction,
    y: &LevelFunction,
    mode: SgMode,
) -> Result<LevelFunction, SingularError> {
    // Guard the truncation contract first: every level product that occurs
    // in the bilinear expansion must stay representable.
    for (kappa, _) in x.support() {
        for (lambda, _) in y.support() {
            ce.k_mul(kappa, lambda)?;
        }
    }
    match &ce.model {
        Model::Finite { group, k_elements } => {
            let value = |f: &LevelFunction, kappa: ArrowId, g: ArrowId| -> Complex64 {
                match f.level(KElem::G(kappa)) {
                    Some(GroupFunction::Finite(component)) => component.value(g),
                    _ => Complex64::default(),
                }
            };
            let mut out = LevelFunction::zero();
            for &kappa in k_elements {
                let mut component = FiniteFn::zero(group);
                for g in group.elements() {
                    let mut acc = Complex64::default();
                    for &lambda in k_elements {
                        let residue = group.op(group.inv(lambda), kappa);
                        match mode {
                            SgMode::Circ => {
                                let at = group.op(group.inv(lambda), group.op(kappa, g));
                                acc += value(x, lambda, at) * value(y, residue, g);
                            }
                            SgMode::Bullet => {
                                let mut inner = Complex64::default();
                                for h in group.elements() {
                                    inner += value(x, lambda, h)
                                        * value(y, residue, group.op(group.inv(h), g));
                                }
                                acc += inner / group.order() as f64;
                            }
                        }
                    }
                    component.set(g, acc);
                }
                let mut wrapped = LevelFunction::zero();
                wrapped.add_level(KElem::G(kappa), GroupFunction::Finite(component))?;
                out = out.add(&wrapped)?;
            }
            out.prune(crate::convolution::PRUNE_EPS);
            Ok(out)
        }
        Model::Circle { r, band } => {
            let series = |f: &LevelFunction, n: i64| -> FourierSeries {
                match f.level(KElem::Z(n)) {
                    Some(GroupFunction::Circle(s)) => s.clone(),
                    _ => FourierSeries::zero(),
                }
            };
            let mut out = LevelFunction::zero();
            for n in -*band..=*band {
                let mut component = FourierSeries::zero();
                for m in -*band..=*band {
                    let residue = n - m;
                    if residue.abs() > *band {
                        continue;
                    }
                    let term = match mode {
                        SgMode::Circ => series(x, m)
                            .rotate(r * residue as f64)
                            .cauchy_product(&series(y, residue)),
                        SgMode::Bullet => series(x, m).orthogonal_convolve(&series(y, residue)),
                    };
                    component = component.add(&term);
                }
                let mut wrapped = LevelFunction::zero();
                wrapped.add_level(KElem::Z(n), GroupFunction::Circle(component))?;
                out = out.add(&wrapped)?;
            }
            out.prune(crate::convolution::PRUNE_EPS);
            Ok(out)
        }
    }
}

/// Outcome of one averaged-exchange instance: both sums, the shortcut value
/// `((L_{λ1}u * L_{λ2}v)·π_ik)^{κ1λ1κ2λ2}` for audit, and the verdict.
#[derive(Debug, Clone)]
pub struct TheoremOutcome {
    pub lhs: LevelFunction,
    pub rhs: LevelFunction,
    pub audit: LevelFunction,
    pub gap: f64,
    pub equal: bool,
}

/// Evaluates, through the closed-form products only,
///
/// `Σ_j (u^{κ1} *∘ π_ij^{λ1}) *• (v^{κ2} *∘ π_jk^{λ2})`
///
/// against
///
/// `Σ_j (u^{κ1} *• v^{κ2}) *∘ (π_ij^{λ1} *• π_jk^{λ2})`,
///
/// plus the audit shortcut. Equality over all inputs characterizes central
/// `K`; for non-central subgroups some tuples fail.
#[allow(clippy::too_many_arguments)]
pub fn main_theorem_check(
    ce: &CentralEmbedding,
    pi: &Representation,
    u: &GroupFunction,
    v: &GroupFunction,
    kappa1: KElem,
    kappa2: KElem,
    lambda1: KElem,
    lambda2: KElem,
    i: usize,
    k: usize,
    tol: f64,
) -> Result<TheoremOutcome, SingularError> {
    let u_level = LevelFunction::single(ce, kappa1, u.clone())?;
    let v_level = LevelFunction::single(ce, kappa2, v.clone())?;

    let mut lhs = LevelFunction::zero();
    let mut rhs = LevelFunction::zero();
    for j in 0..pi.dim() {
        let pi_ij = LevelFunction::single(ce, lambda1, pi.coefficient_fn(ce.model(), i, j)?)?;
        let pi_jk = LevelFunction::single(ce, lambda2, pi.coefficient_fn(ce.model(), j, k)?)?;

        let left_factor = sg_conv_circ(ce, &u_level, &pi_ij)?;
        let right_factor = sg_conv_circ(ce, &v_level, &pi_jk)?;
        lhs = lhs.add(&sg_conv_bullet(ce, &left_factor, &right_factor)?)?;

        let uv = sg_conv_bullet(ce, &u_level, &v_level)?;
        let coeffs = sg_conv_bullet(ce, &pi_ij, &pi_jk)?;
        rhs = rhs.add(&sg_conv_circ(ce, &uv, &coeffs)?)?;
    }

    // Audit shortcut, from primitive operations.
    let shifted_u = ce.translate(lambda1, u)?;
    let shifted_v = ce.translate(lambda2, v)?;
    let conv = group_convolve(ce.model(), &shifted_u, &shifted_v)?;
    let with_coeff = pointwise_product(ce.model(), &conv, &pi.coefficient_fn(ce.model(), i, k)?)?;
    let audit_level = ce.k_mul(
        ce.k_mul(ce.k_mul(kappa1, lambda1)?, kappa2)?,
        lambda2,
    )?;
    let audit = LevelFunction::single(ce, audit_level, with_coeff)?;

    let gap = lhs.sup_distance(&rhs);
    Ok(TheoremOutcome {
        lhs,
        rhs,
        audit,
        gap,
        equal: gap <= tol,
    })
}

/// Verifies that `u_{j,k} ↦ (e_k)^j` carries the rotation 2-group closed
/// forms to [`sg_conv_circ`] and [`sg_conv_bullet`] on all basis pairs with
/// indices in `[-range, range]`, to `tol`. `flip_sign` negates the action
/// constant on the semidirect side only — an intentional convention mismatch
/// used as an audit negative control.
pub fn torus_bridge_check(r: f64, range: i64, tol: f64, flip_sign: bool) -> ValidationReport {
    let mut report = ValidationReport::new(format!("torus bridge at r = {r}, range {range}"));
    let sg_r = if flip_sign { -r } else { r };
    let ce = CentralEmbedding::circle(sg_r, 2 * range.max(1));

    let lift = |j: i64, k: i64| -> LevelFunction {
        LevelFunction::single(&ce, KElem::Z(j), GroupFunction::Circle(FourierSeries::basis(k)))
            .expect("band covers the range")
    };
    let lift_torus = |f: &TorusFunction| -> LevelFunction {
        let mut out = LevelFunction::zero();
        for (j, k, c) in f.support() {
            let piece = GroupFunction::Circle(FourierSeries::basis(k).scale(c));
            out.add_level(KElem::Z(j), piece).expect("same model");
        }
        out
    };

    let mut circ_scan = AxiomScan::new("vertical-products-match");
    let mut bullet_scan = AxiomScan::new("horizontal-products-match");
    for a in -range..=range {
        for b in -range..=range {
            for c in -range..=range {
                for d in -range..=range {
                    let torus_circ =
                        nct_conv_circ(&TorusFunction::basis(a, b), &TorusFunction::basis(c, d), r);
                    let torus_bullet =
                        nct_conv_bullet(&TorusFunction::basis(a, b), &TorusFunction::basis(c, d));

                    circ_scan.tick();
                    match sg_conv_circ(&ce, &lift(a, b), &lift(c, d)) {
                        Ok(sg) => {
                            let gap = sg.sup_distance(&lift_torus(&torus_circ));
                            if gap > tol {
                                circ_scan.violate(
                                    alloc::vec![
                                        format!("u[{a},{b}]"),
                                        format!("u[{c},{d}]")
                                    ],
                                    format!("vertical products differ by {gap:.3e}"),
                                );
                            }
                        }
                        Err(e) => circ_scan.violate(
                            alloc::vec![format!("u[{a},{b}]"), format!("u[{c},{d}]")],
                            format!("semidirect evaluation failed: {e}"),
                        ),
                    }

                    bullet_scan.tick();
                    match sg_conv_bullet(&ce, &lift(a, b), &lift(c, d)) {
                        Ok(sg) => {
                            let gap = sg.sup_distance(&lift_torus(&torus_bullet));
                            if gap > tol {
                                bullet_scan.violate(
                                    alloc::vec![
                                        format!("u[{a},{b}]"),
                                        format!("u[{c},{d}]")
                                    ],
                                    format!("horizontal products differ by {gap:.3e}"),
                                );
                            }
                        }
                        Err(e) => bullet_scan.violate(
                            alloc::vec![format!("u[{a},{b}]"), format!("u[{c},{d}]")],
                            format!("semidirect evaluation failed: {e}"),
                        ),
                    }
                }
            }
        }
    }
    report.push(circ_scan.finish());
    report.push(bullet_scan.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const TOL: f64 = 1e-12;
    const SQRT2: f64 = core::f64::consts::SQRT_2;

    fn q8_center() -> CentralEmbedding {
        CentralEmbedding::finite(fixtures::quaternion_group(), &["1", "-1"]).unwrap()
    }

    fn s3_a3() -> CentralEmbedding {
        CentralEmbedding::finite(fixtures::symmetric_group(3), &["012", "120", "201"]).unwrap()
    }

    #[test]
    fn embeddings_classify_centrality() {
        assert!(q8_center().is_central());
        assert!(q8_center().validate("q8 center").is_valid());
        let a3 = s3_a3();
        assert!(!a3.is_central());
        assert!(!a3.validate("s3 with a3 levels").is_valid());
        assert!(CentralEmbedding::circle(SQRT2, 4).is_central());
        // Non-subgroup selections are structural errors.
        assert!(CentralEmbedding::finite(fixtures::cyclic_group(4), &["0", "1"]).is_err());
    }

    #[test]
    fn translation_matches_the_model_formulas() {
        // Circle: L_n e_k = e^{iknr} e_k.
        let ce = CentralEmbedding::circle(SQRT2, 4);
        let e3 = GroupFunction::Circle(FourierSeries::basis(3));
        let moved = ce.translate(KElem::Z(2), &e3).unwrap();
        let expected =
            GroupFunction::Circle(FourierSeries::basis(3).scale(Complex64::cis(3.0 * 2.0 * SQRT2)));
        assert!(moved.equal_within(&expected, TOL));

        // Identity level is the identity operator.
        let ce = q8_center();
        let g = ce.finite_group().unwrap();
        let rho = fixtures::q8_irreps(g).pop().unwrap();
        let coeff = GroupFunction::Finite(rho.coefficient(g, 0, 0).unwrap());
        let same = ce.translate(ce.k_identity(), &coeff).unwrap();
        assert!(same.equal_within(&coeff, TOL));

        // κ = −1 on the 2-dim irrep of Q8 negates every coefficient.
        let minus_one = KElem::G(g.element("-1").unwrap());
        let negated = ce.translate(minus_one, &coeff).unwrap();
        assert!(negated.equal_within(&coeff.scale(Complex64::new(-1.0, 0.0)), TOL));
    }

    #[test]
    fn closed_forms_carry_the_level_exponent() {
        let ce = q8_center();
        let g = ce.finite_group().unwrap();
        let one = GroupFunction::one(ce.model());
        let e = ce.k_identity();
        let m = KElem::G(g.element("-1").unwrap());

        let x = LevelFunction::single(&ce, m, one.clone()).unwrap();
        let y = LevelFunction::single(&ce, m, one.clone()).unwrap();
        let bullet = sg_conv_bullet(&ce, &x, &y).unwrap();
        assert_eq!(bullet.support_levels(), alloc::vec![e]);
        assert!(bullet
            .level(e)
            .unwrap()
            .equal_within(&one, TOL));

        // (ρ_00)^{-1} *∘ (ρ_00)^{-1} = (−ρ_00 · ρ_00)^{1}.
        let rho = fixtures::q8_irreps(g).pop().unwrap();
        let coeff = GroupFunction::Finite(rho.coefficient(g, 0, 0).unwrap());
        let lifted = LevelFunction::single(&ce, m, coeff.clone()).unwrap();
        let circ = sg_conv_circ(&ce, &lifted, &lifted).unwrap();
        assert_eq!(circ.support_levels(), alloc::vec![e]);
        let squared = pointwise_product(ce.model(), &coeff, &coeff).unwrap();
        let expected = squared.scale(Complex64::new(-1.0, 0.0));
        assert!(circ.level(e).unwrap().equal_within(&expected, TOL));
    }

    #[test]
    fn circle_closed_forms_reproduce_the_phase_formula() {
        let r = SQRT2;
        let ce = CentralEmbedding::circle(r, 8);
        let lift = |j: i64, k: i64| {
            LevelFunction::single(&ce, KElem::Z(j), GroupFunction::Circle(FourierSeries::basis(k)))
                .unwrap()
        };
        // (e_b)^a *∘ (e_d)^c = e^{irbc} (e_{b+d})^{a+c} with a=1,b=2,c=3,d=4.
        let circ = sg_conv_circ(&ce, &lift(1, 2), &lift(3, 4)).unwrap();
        let mut expected = LevelFunction::zero();
        expected
            .add_level(
                KElem::Z(4),
                GroupFunction::Circle(FourierSeries::basis(6).scale(Complex64::cis(6.0 * r))),
            )
            .unwrap();
        assert!(circ.equal_within(&expected, TOL));

        // Bullet multiplies levels and projects frequencies.
        let bullet = sg_conv_bullet(&ce, &lift(1, 2), &lift(3, 2)).unwrap();
        let mut expected = LevelFunction::zero();
        expected
            .add_level(KElem::Z(4), GroupFunction::Circle(FourierSeries::basis(2)))
            .unwrap();
        assert!(bullet.equal_within(&expected, TOL));
        assert!(sg_conv_bullet(&ce, &lift(1, 2), &lift(3, 4))
            .unwrap()
            .is_zero_within(TOL));
    }

    #[test]
    fn generic_oracle_agrees_with_closed_forms() {
        let ce = q8_center();
        let g = ce.finite_group().unwrap().clone();
        let levels = ce.k_elements();
        let mut rng = fixtures::seeded_rng(11);
        for _ in 0..25 {
            let mut x = LevelFunction::zero();
            let mut y = LevelFunction::zero();
            for &level in &levels {
                x.add_level(
                    level,
                    GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng)),
                )
                .unwrap();
                y.add_level(
                    level,
                    GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng)),
                )
                .unwrap();
            }
            let closed = sg_conv_circ(&ce, &x, &y).unwrap();
            let oracle = sg_generic_conv(&ce, &x, &y, SgMode::Circ).unwrap();
            assert!(closed.equal_within(&oracle, TOL));
            let closed = sg_conv_bullet(&ce, &x, &y).unwrap();
            let oracle = sg_generic_conv(&ce, &x, &y, SgMode::Bullet).unwrap();
            assert!(closed.equal_within(&oracle, TOL));
        }

        // Circle model, multi-level random-ish data built from basis pieces.
        let ce = CentralEmbedding::circle(SQRT2, 6);
        let mut x = LevelFunction::zero();
        let mut y = LevelFunction::zero();
        for (j, k, re) in [(0i64, 1i64, 0.7), (1, -2, -0.3), (2, 0, 1.5)] {
            x.add_level(
                KElem::Z(j),
                GroupFunction::Circle(FourierSeries::basis(k).scale(Complex64::new(re, 0.2))),
            )
            .unwrap();
            y.add_level(
                KElem::Z(-j),
                GroupFunction::Circle(FourierSeries::basis(k + 1).scale(Complex64::new(0.4, re))),
            )
            .unwrap();
        }
        for mode in [SgMode::Circ, SgMode::Bullet] {
            let closed = match mode {
                SgMode::Circ => sg_conv_circ(&ce, &x, &y).unwrap(),
                SgMode::Bullet => sg_conv_bullet(&ce, &x, &y).unwrap(),
            };
            let oracle = sg_generic_conv(&ce, &x, &y, mode).unwrap();
            assert!(closed.equal_within(&oracle, TOL), "{mode:?}");
        }
    }

    #[test]
    fn band_escape_is_an_error_not_a_wrap() {
        let ce = CentralEmbedding::circle(SQRT2, 2);
        let lift = |j: i64| {
            LevelFunction::single(&ce, KElem::Z(j), GroupFunction::Circle(FourierSeries::basis(0)))
                .unwrap()
        };
        let x = lift(2);
        assert!(matches!(
            sg_conv_bullet(&ce, &x, &x),
            Err(SingularError::TruncationExceeded { level: 4, band: 2 })
        ));
        assert!(matches!(
            sg_generic_conv(&ce, &x, &x, SgMode::Circ),
            Err(SingularError::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn translation_exchange_needs_centrality_only_on_the_right() {
        let mut rng = fixtures::seeded_rng(23);

        // Central case: both exchange directions hold.
        let ce = q8_center();
        let g = ce.finite_group().unwrap().clone();
        let minus_one = KElem::G(g.element("-1").unwrap());
        for _ in 0..10 {
            let u = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let v = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let conv = group_convolve(ce.model(), &u, &v).unwrap();
            let moved_whole = ce.translate(minus_one, &conv).unwrap();
            let left = group_convolve(ce.model(), &ce.translate(minus_one, &u).unwrap(), &v)
                .unwrap();
            let right = group_convolve(ce.model(), &u, &ce.translate(minus_one, &v).unwrap())
                .unwrap();
            assert!(moved_whole.equal_within(&left, TOL));
            assert!(moved_whole.equal_within(&right, TOL));
        }

        // Non-central levels: the left-factor direction is a change of
        // variables and survives; the right-factor direction fails.
        let ce = s3_a3();
        let g = ce.finite_group().unwrap().clone();
        let cycle = KElem::G(g.element("120").unwrap());
        let mut right_failures = 0;
        for _ in 0..10 {
            let u = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let v = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let conv = group_convolve(ce.model(), &u, &v).unwrap();
            let moved_whole = ce.translate(cycle, &conv).unwrap();
            let left =
                group_convolve(ce.model(), &ce.translate(cycle, &u).unwrap(), &v).unwrap();
            assert!(moved_whole.equal_within(&left, TOL));
            let right =
                group_convolve(ce.model(), &u, &ce.translate(cycle, &v).unwrap()).unwrap();
            if !moved_whole.equal_within(&right, 1e-9) {
                right_failures += 1;
            }
        }
        assert!(right_failures > 0);
    }

    #[test]
    fn theorem_holds_on_the_central_quaternion_fixture() {
        let ce = q8_center();
        let g = ce.finite_group().unwrap().clone();
        let rho = Representation::Finite(fixtures::q8_irreps(&g).pop().unwrap());
        let one = GroupFunction::one(ce.model());
        let minus_one = KElem::G(g.element("-1").unwrap());

        // All constant inputs, all level signs, all coefficient slots.
        for kappa1 in [ce.k_identity(), minus_one] {
            for kappa2 in [ce.k_identity(), minus_one] {
                for lambda1 in [ce.k_identity(), minus_one] {
                    for lambda2 in [ce.k_identity(), minus_one] {
                        for i in 0..2 {
                            for k in 0..2 {
                                let out = main_theorem_check(
                                    &ce, &rho, &one, &one, kappa1, kappa2, lambda1, lambda2,
                                    i, k, 1e-9,
                                )
                                .unwrap();
                                assert!(out.equal, "gap {} at ({i},{k})", out.gap);
                                assert!(out.lhs.equal_within(&out.audit, 1e-9));
                            }
                        }
                    }
                }
            }
        }

        // Random inputs at mixed levels.
        let mut rng = fixtures::seeded_rng(41);
        for _ in 0..10 {
            let u = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let v = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let out = main_theorem_check(
                &ce,
                &rho,
                &u,
                &v,
                minus_one,
                ce.k_identity(),
                minus_one,
                minus_one,
                0,
                1,
                1e-9,
            )
            .unwrap();
            assert!(out.equal, "gap {}", out.gap);
            assert!(out.lhs.equal_within(&out.audit, 1e-9));
        }
    }

    #[test]
    fn trivial_levels_reduce_to_the_weak_compat_check() {
        let g = fixtures::symmetric_group(3);
        let rho_rep = fixtures::s3_irreps(&g).pop().unwrap();
        let ce = CentralEmbedding::finite(g.clone(), &["012"]).unwrap();
        let rho = Representation::Finite(rho_rep.clone());
        let e = ce.k_identity();
        let mut rng = fixtures::seeded_rng(5);
        let u = fixtures::random_finite_fn(&g, &mut rng);
        let v = fixtures::random_finite_fn(&g, &mut rng);
        for i in 0..2 {
            for k in 0..2 {
                let theorem = main_theorem_check(
                    &ce,
                    &rho,
                    &GroupFunction::Finite(u.clone()),
                    &GroupFunction::Finite(v.clone()),
                    e,
                    e,
                    e,
                    e,
                    i,
                    k,
                    1e-9,
                )
                .unwrap();
                let weak =
                    crate::compact::weak_compat_check(&g, &rho_rep, &u, &v, i, k, 1e-9).unwrap();
                assert_eq!(theorem.equal, weak.equal);
                let GroupFunction::Finite(level_fn) = theorem.lhs.level(e).unwrap() else {
                    panic!("finite model level");
                };
                assert!(level_fn.equal_within(&weak.lhs, TOL));
            }
        }
    }

    #[test]
    fn noncentral_levels_break_the_theorem_on_random_inputs() {
        let ce = s3_a3();
        let g = ce.finite_group().unwrap().clone();
        let rho = Representation::Finite(fixtures::s3_irreps(&g).pop().unwrap());
        let cycle = KElem::G(g.element("120").unwrap());
        let e = ce.k_identity();
        let mut rng = fixtures::seeded_rng(17);
        let mut failures = 0;
        for _ in 0..10 {
            let u = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            let v = GroupFunction::Finite(fixtures::random_finite_fn(&g, &mut rng));
            // A non-central λ2 is essential: translation exits the right
            // convolution factor only for central levels, while λ1 alone
            // can always be pulled through the left factor.
            let out =
                main_theorem_check(&ce, &rho, &u, &v, e, e, e, cycle, 0, 0, 1e-9).unwrap();
            if !out.equal {
                failures += 1;
            }
            let left_only =
                main_theorem_check(&ce, &rho, &u, &v, e, e, cycle, e, 0, 0, 1e-9).unwrap();
            assert!(left_only.equal, "left-level tuples stay exact");
        }
        assert!(failures > 0, "expected failing tuples for non-central levels");
    }

    #[test]
    fn circle_theorem_is_the_torus_compatibility() {
        let ce = CentralEmbedding::circle(SQRT2, 4);
        let pi = Representation::CircleCharacter(2);
        let u = GroupFunction::Circle(FourierSeries::basis(1));
        let v = GroupFunction::Circle(FourierSeries::basis(-1));
        let out = main_theorem_check(
            &ce,
            &pi,
            &u,
            &v,
            KElem::Z(1),
            KElem::Z(-1),
            KElem::Z(1),
            KElem::Z(1),
            0,
            0,
            1e-9,
        )
        .unwrap();
        assert!(out.equal, "gap {}", out.gap);
        assert!(out.lhs.equal_within(&out.audit, 1e-9));
    }

    #[test]
    fn bridge_matches_and_the_flipped_convention_fails() {
        let ok = torus_bridge_check(SQRT2, 2, TOL, false);
        assert!(ok.is_valid());
        let degenerate = torus_bridge_check(0.0, 2, TOL, false);
        assert!(degenerate.is_valid());
        let flipped = torus_bridge_check(core::f64::consts::PI / 5.0, 2, TOL, true);
        assert!(!flipped.is_valid());
        // Only the phase-carrying vertical product can notice the flip.
        assert!(flipped
            .axioms
            .iter()
            .any(|a| a.axiom == "vertical-products-match" && !a.is_ok()));
        assert!(flipped
            .axioms
            .iter()
            .all(|a| a.axiom != "horizontal-products-match" || a.is_ok()));
    }
}
