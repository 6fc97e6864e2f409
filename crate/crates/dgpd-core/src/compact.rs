//! Compact-group models: finite groups handled exactly, the circle through
//! finite Fourier series.
//!
//! Functions on a finite group are dense complex vectors against normalized
//! counting measure (each element weighs `1/|G|`, so constants convolve to
//! constants). Circle functions are [`FourierSeries`] values, where the same
//! convolution acts frequency-diagonally. On top of the two function models
//! sit unitary representations with validated homomorphism/unitarity data,
//! their matrix coefficients `π_ij(g)`, and the identities tying the
//! pointwise product, convolution, and coefficients together — including
//! the counterexample scan for the naive exchange law, which is genuinely
//! false for nonabelian groups.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::fourier::FourierSeries;
use crate::group::FiniteGroupTable;
use crate::groupoid::ArrowId;
use crate::report::{AxiomScan, ValidationReport};

/// Tolerance for representation-defining identities (homomorphism,
/// unitarity, identity matrix): these are exact constructions evaluated in
/// floating point, so the bar is near machine precision.
pub const REP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompactError {
    /// Function bound to a different group table.
    ContextMismatch,
    /// Finite-model value used with the circle model or vice versa.
    ModelMismatch,
    IndexOutOfRange { index: usize, dim: usize },
    /// A representation was given the wrong number of matrices or a matrix
    /// of the wrong shape.
    MatrixShape { expected: usize, got: usize },
}

impl fmt::Display for CompactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactError::ContextMismatch => write!(f, "function bound to a different group"),
            CompactError::ModelMismatch => write!(f, "finite/circle model mismatch"),
            CompactError::IndexOutOfRange { index, dim } => {
                write!(f, "coefficient index {index} out of range for dimension {dim}")
            }
            CompactError::MatrixShape { expected, got } => {
                write!(f, "matrix data has length {got}, expected {expected}")
            }
        }
    }
}

impl core::error::Error for CompactError {}

/// A total complex-valued function on a finite group, indexed by element id.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFn {
    values: Vec<Complex64>,
    context: u64,
}

impl FiniteFn {
    pub fn zero(g: &FiniteGroupTable) -> Self {
        FiniteFn {
            values: alloc::vec![Complex64::default(); g.order()],
            context: g.table().context_id(),
        }
    }

    /// The constant function 1.
    pub fn one(g: &FiniteGroupTable) -> Self {
        let mut f = FiniteFn::zero(g);
        f.values.fill(Complex64::new(1.0, 0.0));
        f
    }

    /// The indicator of one element (no measure normalization).
    pub fn delta(g: &FiniteGroupTable, elem: ArrowId) -> Self {
        let mut f = FiniteFn::zero(g);
        f.values[elem.index()] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn from_values(g: &FiniteGroupTable, values: Vec<Complex64>) -> Result<Self, CompactError> {
        if values.len() != g.order() {
            return Err(CompactError::MatrixShape {
                expected: g.order(),
                got: values.len(),
            });
        }
        Ok(FiniteFn {
            values,
            context: g.table().context_id(),
        })
    }

    pub fn value(&self, elem: ArrowId) -> Complex64 {
        self.values[elem.index()]
    }

    pub fn set(&mut self, elem: ArrowId, c: Complex64) {
        self.values[elem.index()] = c;
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn bound_to(&self, g: &FiniteGroupTable) -> bool {
        self.context == g.table().context_id()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CompactError> {
        if self.context != other.context {
            return Err(CompactError::ContextMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v *= c;
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = v.conj();
        }
        out
    }

    /// Largest pointwise distance; infinite across contexts.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        if self.context != other.context {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Printable form: `element: value` pairs in element order.
    pub fn describe(&self, g: &FiniteGroupTable) -> String {
        let parts: Vec<String> = g
            .elements()
            .map(|e| format!("{}: {}", g.name(e), self.value(e)))
            .collect();
        parts.join(", ")
    }
}

/// Normalized ℓ² pairing `⟨u, v⟩ = (1/|G|) Σ_g conj(u(g))·v(g)`.
pub fn inner_product(
    g: &FiniteGroupTable,
    u: &FiniteFn,
    v: &FiniteFn,
) -> Result<Complex64, CompactError> {
    if !u.bound_to(g) || !v.bound_to(g) {
        return Err(CompactError::ContextMismatch);
    }
    let sum: Complex64 = g.elements().map(|e| u.value(e).conj() * v.value(e)).sum();
    Ok(sum / g.order() as f64)
}

/// Convolution against normalized counting measure:
/// `(u*v)(g) = (1/|G|) Σ_h u(h)·v(h⁻¹g)`.
pub fn finite_convolve(
    g: &FiniteGroupTable,
    u: &FiniteFn,
    v: &FiniteFn,
) -> Result<FiniteFn, CompactError> {
    if !u.bound_to(g) || !v.bound_to(g) {
        return Err(CompactError::ContextMismatch);
    }
    let norm = 1.0 / g.order() as f64;
    let mut out = FiniteFn::zero(g);
    for target in g.elements() {
        let mut acc = Complex64::default();
        for h in g.elements() {
            let shift = g.op(g.inv(h), target);
            acc += u.value(h) * v.value(shift);
        }
        out.set(target, acc * norm);
    }
    Ok(out)
}

pub fn finite_pointwise(u: &FiniteFn, v: &FiniteFn) -> Result<FiniteFn, CompactError> {
    if u.context != v.context {
        return Err(CompactError::ContextMismatch);
    }
    let mut out = u.clone();
    for (a, b) in out.values.iter_mut().zip(&v.values) {
        *a *= b;
    }
    Ok(out)
}

/// Which compact model an operation runs on.
#[derive(Clone, Copy)]
pub enum ModelRef<'a> {
    Finite(&'a FiniteGroupTable),
    Circle,
}

/// A function on either compact model.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupFunction {
    Finite(FiniteFn),
    Circle(FourierSeries),
}

impl GroupFunction {
    pub fn one(model: ModelRef<'_>) -> Self {
        match model {
            ModelRef::Finite(g) => GroupFunction::Finite(FiniteFn::one(g)),
            ModelRef::Circle => GroupFunction::Circle(FourierSeries::one()),
        }
    }

    pub fn zero(model: ModelRef<'_>) -> Self {
        match model {
            ModelRef::Finite(g) => GroupFunction::Finite(FiniteFn::zero(g)),
            ModelRef::Circle => GroupFunction::Circle(FourierSeries::zero()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CompactError> {
        match (self, other) {
            (GroupFunction::Finite(a), GroupFunction::Finite(b)) => {
                Ok(GroupFunction::Finite(a.add(b)?))
            }
            (GroupFunction::Circle(a), GroupFunction::Circle(b)) => {
                Ok(GroupFunction::Circle(a.add(b)))
            }
            _ => Err(CompactError::ModelMismatch),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        match self {
            GroupFunction::Finite(a) => GroupFunction::Finite(a.scale(c)),
            GroupFunction::Circle(a) => GroupFunction::Circle(a.scale(c)),
        }
    }

    /// Infinite across models or group contexts.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (GroupFunction::Finite(a), GroupFunction::Finite(b)) => a.sup_distance(b),
            (GroupFunction::Circle(a), GroupFunction::Circle(b)) => a.sup_distance(b),
            _ => f64::INFINITY,
        }
    }

    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    pub fn sup_norm(&self) -> f64 {
        match self {
            GroupFunction::Finite(a) => a.sup_norm(),
            GroupFunction::Circle(a) => a.sup_distance(&FourierSeries::zero()),
        }
    }
}

/// Model-dispatching convolution: normalized group convolution on the finite
/// model, frequency-diagonal convolution on the circle.
pub fn group_convolve(
    model: ModelRef<'_>,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<GroupFunction, CompactError> {
    match (model, u, v) {
        (ModelRef::Finite(g), GroupFunction::Finite(a), GroupFunction::Finite(b)) => {
            Ok(GroupFunction::Finite(finite_convolve(g, a, b)?))
        }
        (ModelRef::Circle, GroupFunction::Circle(a), GroupFunction::Circle(b)) => {
            Ok(GroupFunction::Circle(a.orthogonal_convolve(b)))
        }
        _ => Err(CompactError::ModelMismatch),
    }
}

/// Model-dispatching pointwise product (Cauchy product of coefficients on
/// the circle).
pub fn pointwise_product(
    model: ModelRef<'_>,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<GroupFunction, CompactError> {
    match (model, u, v) {
        (ModelRef::Finite(_), GroupFunction::Finite(a), GroupFunction::Finite(b)) => {
            Ok(GroupFunction::Finite(finite_pointwise(a, b)?))
        }
        (ModelRef::Circle, GroupFunction::Circle(a), GroupFunction::Circle(b)) => {
            Ok(GroupFunction::Circle(a.cauchy_product(b)))
        }
        _ => Err(CompactError::ModelMismatch),
    }
}

/// A unitary representation of a finite group: one `dim × dim` complex
/// matrix (row-major) per group element, in element-id order.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    name: String,
    dim: usize,
    matrices: Vec<Vec<Complex64>>,
    irreducible: bool,
    context: u64,
}

impl UnitaryRep {
    /// Shape checks only; the algebraic axioms are [`validate_rep`]'s job.
    pub fn new(
        g: &FiniteGroupTable,
        name: &str,
        dim: usize,
        matrices: Vec<Vec<Complex64>>,
        irreducible: bool,
    ) -> Result<Self, CompactError> {
        if matrices.len() != g.order() {
            return Err(CompactError::MatrixShape {
                expected: g.order(),
                got: matrices.len(),
            });
        }
        for m in &matrices {
            if m.len() != dim * dim {
                return Err(CompactError::MatrixShape {
                    expected: dim * dim,
                    got: m.len(),
                });
            }
        }
        Ok(UnitaryRep {
            name: name.to_string(),
            dim,
            matrices,
            irreducible,
            context: g.table().context_id(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declared irreducibility; [`validate_rep`] checks it against the
    /// character norm.
    pub fn declared_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn bound_to(&self, g: &FiniteGroupTable) -> bool {
        self.context == g.table().context_id()
    }

    pub fn matrix(&self, elem: ArrowId) -> &[Complex64] {
        &self.matrices[elem.index()]
    }

    pub fn entry(&self, elem: ArrowId, i: usize, j: usize) -> Complex64 {
        self.matrices[elem.index()][i * self.dim + j]
    }

    fn check_index(&self, index: usize) -> Result<(), CompactError> {
        if index < self.dim {
            Ok(())
        } else {
            Err(CompactError::IndexOutOfRange {
                index,
                dim: self.dim,
            })
        }
    }

    /// The matrix coefficient `π_ij` as a function on the group.
    pub fn coefficient(
        &self,
        g: &FiniteGroupTable,
        i: usize,
        j: usize,
    ) -> Result<FiniteFn, CompactError> {
        if !self.bound_to(g) {
            return Err(CompactError::ContextMismatch);
        }
        self.check_index(i)?;
        self.check_index(j)?;
        let mut f = FiniteFn::zero(g);
        for e in g.elements() {
            f.set(e, self.entry(e, i, j));
        }
        Ok(f)
    }

    /// The character `χ(g) = tr π(g)`.
    pub fn character(&self, g: &FiniteGroupTable) -> Result<FiniteFn, CompactError> {
        if !self.bound_to(g) {
            return Err(CompactError::ContextMismatch);
        }
        let mut f = FiniteFn::zero(g);
        for e in g.elements() {
            let tr: Complex64 = (0..self.dim).map(|i| self.entry(e, i, i)).sum();
            f.set(e, tr);
        }
        Ok(f)
    }
}

fn mat_mul(dim: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::default(); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik.norm() == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

fn mat_adjoint(dim: usize, a: &[Complex64]) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::default(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

fn mat_identity(dim: usize) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::default(); dim * dim];
    for i in 0..dim {
        out[i * dim + i] = Complex64::new(1.0, 0.0);
    }
    out
}

fn mat_max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Checks the defining axioms: `π(e) = I`, `π(gh) = π(g)π(h)` over all
/// pairs, unitarity per element (all to [`REP_TOL`]), and that the declared
/// irreducibility flag matches the character-norm test `⟨χ,χ⟩ = 1`.
pub fn validate_rep(g: &FiniteGroupTable, rep: &UnitaryRep) -> ValidationReport {
    let mut report = ValidationReport::new(format!("representation {}", rep.name));
    if !rep.bound_to(g) {
        let mut scan = AxiomScan::new("binding");
        scan.tick();
        scan.violate(
            alloc::vec![rep.name.clone()],
            "representation bound to a different group table".to_string(),
        );
        report.push(scan.finish());
        return report;
    }
    let dim = rep.dim;

    let mut scan = AxiomScan::new("identity-matrix");
    scan.tick();
    let at_identity = rep.matrix(g.identity());
    if mat_max_dist(at_identity, &mat_identity(dim)) > REP_TOL {
        scan.violate(
            alloc::vec![g.name(g.identity()).to_string()],
            "matrix at the group identity is not the identity matrix".to_string(),
        );
    }
    report.push(scan.finish());

    let mut scan = AxiomScan::new("homomorphism");
    for a in g.elements() {
        for b in g.elements() {
            scan.tick();
            let product = mat_mul(dim, rep.matrix(a), rep.matrix(b));
            let at_ab = rep.matrix(g.op(a, b));
            let gap = mat_max_dist(&product, at_ab);
            if gap > REP_TOL {
                scan.violate(
                    alloc::vec![g.name(a).to_string(), g.name(b).to_string()],
                    format!("matrix of the product differs by {gap:.3e}"),
                );
            }
        }
    }
    report.push(scan.finish());

    let mut scan = AxiomScan::new("unitarity");
    for a in g.elements() {
        scan.tick();
        let gram = mat_mul(dim, &mat_adjoint(dim, rep.matrix(a)), rep.matrix(a));
        let gap = mat_max_dist(&gram, &mat_identity(dim));
        if gap > REP_TOL {
            scan.violate(
                alloc::vec![g.name(a).to_string()],
                format!("π(g)*π(g) differs from the identity by {gap:.3e}"),
            );
        }
    }
    report.push(scan.finish());

    let mut scan = AxiomScan::new("irreducibility-metadata");
    scan.tick();
    if let Ok(chi) = rep.character(g) {
        if let Ok(norm) = inner_product(g, &chi, &chi) {
            // The character self-pairing of any representation is a positive
            // integer; exactly 1 means irreducible.
            let is_irreducible = (norm.re - 1.0).abs() <= 1e-9 && norm.im.abs() <= 1e-9;
            if is_irreducible != rep.irreducible {
                scan.violate(
                    alloc::vec![rep.name.clone()],
                    format!(
                        "declared irreducible={} but ⟨χ,χ⟩ = {:.6}",
                        rep.irreducible, norm.re
                    ),
                );
            }
        }
    }
    report.push(scan.finish());

    report
}

/// Outcome of a two-sided identity check: both sides, their gap, and the
/// verdict at the tolerance the caller supplied.
#[derive(Debug, Clone)]
pub struct IdentityOutcome {
    pub lhs: FiniteFn,
    pub rhs: FiniteFn,
    pub gap: f64,
    pub equal: bool,
}

/// Compares `Σ_j (u·π_ij) * (v·π_jk)` with `(u*v)·π_ik`, both sides
/// evaluated independently.
pub fn coeff_conv_identity_check(
    g: &FiniteGroupTable,
    rep: &UnitaryRep,
    u: &FiniteFn,
    v: &FiniteFn,
    i: usize,
    k: usize,
    tol: f64,
) -> Result<IdentityOutcome, CompactError> {
    rep.check_index(i)?;
    rep.check_index(k)?;
    let mut lhs = FiniteFn::zero(g);
    for j in 0..rep.dim() {
        let left = finite_pointwise(u, &rep.coefficient(g, i, j)?)?;
        let right = finite_pointwise(v, &rep.coefficient(g, j, k)?)?;
        lhs = lhs.add(&finite_convolve(g, &left, &right)?)?;
    }
    let rhs = finite_pointwise(&finite_convolve(g, u, v)?, &rep.coefficient(g, i, k)?)?;
    let gap = lhs.sup_distance(&rhs);
    Ok(IdentityOutcome {
        lhs,
        rhs,
        gap,
        equal: gap <= tol,
    })
}

/// Compares `Σ_j (u·π_ij) * (v·π_jk)` with `Σ_j (u*v)·(π_ij*π_jk)`, the
/// averaged exchange identity for one coefficient slot.
pub fn weak_compat_check(
    g: &FiniteGroupTable,
    rep: &UnitaryRep,
    u: &FiniteFn,
    v: &FiniteFn,
    i: usize,
    k: usize,
    tol: f64,
) -> Result<IdentityOutcome, CompactError> {
    rep.check_index(i)?;
    rep.check_index(k)?;
    let mut lhs = FiniteFn::zero(g);
    let mut rhs = FiniteFn::zero(g);
    let conv_uv = finite_convolve(g, u, v)?;
    for j in 0..rep.dim() {
        let left = finite_pointwise(u, &rep.coefficient(g, i, j)?)?;
        let right = finite_pointwise(v, &rep.coefficient(g, j, k)?)?;
        lhs = lhs.add(&finite_convolve(g, &left, &right)?)?;

        let coeff_conv = finite_convolve(
            g,
            &rep.coefficient(g, i, j)?,
            &rep.coefficient(g, j, k)?,
        )?;
        rhs = rhs.add(&finite_pointwise(&conv_uv, &coeff_conv)?)?;
    }
    let gap = lhs.sup_distance(&rhs);
    Ok(IdentityOutcome {
        lhs,
        rhs,
        gap,
        equal: gap <= tol,
    })
}

/// Verifies `π_ij * π_jk = (1/d)·π_ik` over all index triples of one
/// declared-irreducible representation.
pub fn schur_check(g: &FiniteGroupTable, rep: &UnitaryRep, tol: f64) -> ValidationReport {
    let mut report = ValidationReport::new(format!("orthogonality for {}", rep.name));
    let mut scan = AxiomScan::new("coefficient-convolution");
    let d = rep.dim();
    let scale = Complex64::new(1.0 / d as f64, 0.0);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                scan.tick();
                let result = (|| {
                    let conv = finite_convolve(
                        g,
                        &rep.coefficient(g, i, j)?,
                        &rep.coefficient(g, j, k)?,
                    )?;
                    let expected = rep.coefficient(g, i, k)?.scale(scale);
                    Ok::<f64, CompactError>(conv.sup_distance(&expected))
                })();
                match result {
                    Ok(gap) if gap <= tol => {}
                    Ok(gap) => scan.violate(
                        alloc::vec![i.to_string(), j.to_string(), k.to_string()],
                        format!("π_ij*π_jk differs from (1/{d})π_ik by {gap:.3e}"),
                    ),
                    Err(e) => scan.violate(
                        alloc::vec![i.to_string(), j.to_string(), k.to_string()],
                        format!("evaluation failed: {e}"),
                    ),
                }
            }
        }
    }
    report.push(scan.finish());
    report
}

/// Verifies `σ_ab * π_cd = 0` for all coefficient pairs of two inequivalent
/// irreducible representations.
pub fn schur_cross_check(
    g: &FiniteGroupTable,
    sigma: &UnitaryRep,
    pi: &UnitaryRep,
    tol: f64,
) -> ValidationReport {
    let mut report = ValidationReport::new(format!(
        "cross orthogonality for {} vs {}",
        sigma.name(),
        pi.name()
    ));
    let mut scan = AxiomScan::new("cross-coefficient-vanishing");
    for a in 0..sigma.dim() {
        for b in 0..sigma.dim() {
            for c in 0..pi.dim() {
                for d in 0..pi.dim() {
                    scan.tick();
                    let result = (|| {
                        let conv = finite_convolve(
                            g,
                            &sigma.coefficient(g, a, b)?,
                            &pi.coefficient(g, c, d)?,
                        )?;
                        Ok::<f64, CompactError>(conv.sup_norm())
                    })();
                    match result {
                        Ok(norm) if norm <= tol => {}
                        Ok(norm) => scan.violate(
                            alloc::vec![
                                a.to_string(),
                                b.to_string(),
                                c.to_string(),
                                d.to_string()
                            ],
                            format!("σ_ab*π_cd has sup norm {norm:.3e}"),
                        ),
                        Err(e) => scan.violate(
                            alloc::vec![
                                a.to_string(),
                                b.to_string(),
                                c.to_string(),
                                d.to_string()
                            ],
                            format!("evaluation failed: {e}"),
                        ),
                    }
                }
            }
        }
    }
    report.push(scan.finish());
    report
}

/// One failing tuple from [`naive_compat_search`].
#[derive(Debug, Clone)]
pub struct NaiveWitness {
    /// `(a, b, c)` into `σ` and `(i, j, k)` into `π`.
    pub sigma_idx: [usize; 3],
    pub pi_idx: [usize; 3],
    pub gap: f64,
}

/// Scans `(σ_ab·π_ij) * (π_jk·σ_bc)` against `(σ_ab*σ_bc)·(π_ij*π_jk)` over
/// all index tuples, returning every tuple whose sup-norm gap exceeds
/// `threshold`. The unaveraged law tested here fails in general; summing
/// over the shared indices is what rescues it.
pub fn naive_compat_search(
    g: &FiniteGroupTable,
    sigma: &UnitaryRep,
    pi: &UnitaryRep,
    threshold: f64,
) -> Result<Vec<NaiveWitness>, CompactError> {
    let mut witnesses = Vec::new();
    for a in 0..sigma.dim() {
        for b in 0..sigma.dim() {
            for c in 0..sigma.dim() {
                for i in 0..pi.dim() {
                    for j in 0..pi.dim() {
                        for k in 0..pi.dim() {
                            let lhs = finite_convolve(
                                g,
                                &finite_pointwise(
                                    &sigma.coefficient(g, a, b)?,
                                    &pi.coefficient(g, i, j)?,
                                )?,
                                &finite_pointwise(
                                    &pi.coefficient(g, j, k)?,
                                    &sigma.coefficient(g, b, c)?,
                                )?,
                            )?;
                            let rhs = finite_pointwise(
                                &finite_convolve(
                                    g,
                                    &sigma.coefficient(g, a, b)?,
                                    &sigma.coefficient(g, b, c)?,
                                )?,
                                &finite_convolve(
                                    g,
                                    &pi.coefficient(g, i, j)?,
                                    &pi.coefficient(g, j, k)?,
                                )?,
                            )?;
                            let gap = lhs.sup_distance(&rhs);
                            if gap > threshold {
                                witnesses.push(NaiveWitness {
                                    sigma_idx: [a, b, c],
                                    pi_idx: [i, j, k],
                                    gap,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(witnesses)
}

/// A representation of either compact model: a validated finite-group
/// representation, or a circle character `θ ↦ e^{ikθ}` (dimension 1).
#[derive(Debug, Clone)]
pub enum Representation {
    Finite(UnitaryRep),
    CircleCharacter(i64),
}

impl Representation {
    pub fn dim(&self) -> usize {
        match self {
            Representation::Finite(rep) => rep.dim(),
            Representation::CircleCharacter(_) => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Representation::Finite(rep) => rep.name().to_string(),
            Representation::CircleCharacter(k) => format!("e[{k}]"),
        }
    }

    /// The `(i, j)` matrix coefficient as a model function.
    pub fn coefficient_fn(
        &self,
        model: ModelRef<'_>,
        i: usize,
        j: usize,
    ) -> Result<GroupFunction, CompactError> {
        match (self, model) {
            (Representation::Finite(rep), ModelRef::Finite(g)) => {
                Ok(GroupFunction::Finite(rep.coefficient(g, i, j)?))
            }
            (Representation::CircleCharacter(k), ModelRef::Circle) => {
                if i != 0 || j != 0 {
                    return Err(CompactError::IndexOutOfRange {
                        index: i.max(j),
                        dim: 1,
                    });
                }
                Ok(GroupFunction::Circle(FourierSeries::basis(*k)))
            }
            _ => Err(CompactError::ModelMismatch),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const TOL: f64 = 1e-9;

    #[test]
    fn finite_convolution_normalizes_and_fixes_constants() {
        let z2 = fixtures::cyclic_group(2);
        let d0 = FiniteFn::delta(&z2, z2.element("0").unwrap());
        let d1 = FiniteFn::delta(&z2, z2.element("1").unwrap());
        let conv = finite_convolve(&z2, &d0, &d1).unwrap();
        assert!(conv.equal_within(&d1.scale(Complex64::new(0.5, 0.0)), TOL));

        let s3 = fixtures::symmetric_group(3);
        let one = FiniteFn::one(&s3);
        let conv = finite_convolve(&s3, &one, &one).unwrap();
        assert!(conv.equal_within(&one, TOL));
    }

    #[test]
    fn circle_model_dispatches_to_fourier_operations() {
        let e2 = GroupFunction::Circle(FourierSeries::basis(2));
        let e3 = GroupFunction::Circle(FourierSeries::basis(3));
        let conv = group_convolve(ModelRef::Circle, &e2, &e2).unwrap();
        assert!(conv.equal_within(&e2, TOL));
        let cross = group_convolve(ModelRef::Circle, &e2, &e3).unwrap();
        assert!(cross.equal_within(&GroupFunction::Circle(FourierSeries::zero()), TOL));
        let prod = pointwise_product(ModelRef::Circle, &e2, &e3).unwrap();
        assert!(prod.equal_within(&GroupFunction::Circle(FourierSeries::basis(5)), TOL));

        let z2 = fixtures::cyclic_group(2);
        let fin = GroupFunction::one(ModelRef::Finite(&z2));
        assert!(matches!(
            group_convolve(ModelRef::Circle, &fin, &e2),
            Err(CompactError::ModelMismatch)
        ));
    }

    #[test]
    fn fixture_representations_validate() {
        let z5 = fixtures::cyclic_group(5);
        for rep in fixtures::cyclic_characters(&z5) {
            assert!(validate_rep(&z5, &rep).is_valid(), "{}", rep.name());
        }
        let s3 = fixtures::symmetric_group(3);
        for rep in fixtures::s3_irreps(&s3) {
            assert!(validate_rep(&s3, &rep).is_valid(), "{}", rep.name());
        }
        let q8 = fixtures::quaternion_group();
        for rep in fixtures::q8_irreps(&q8) {
            assert!(validate_rep(&q8, &rep).is_valid(), "{}", rep.name());
        }
    }

    #[test]
    fn transposing_one_matrix_breaks_the_homomorphism() {
        let s3 = fixtures::symmetric_group(3);
        let rho = fixtures::s3_irreps(&s3).pop().unwrap();
        assert_eq!(rho.dim(), 2);
        // Transpose the matrix of one non-involution element in place.
        let mut matrices: Vec<Vec<Complex64>> =
            s3.elements().map(|e| rho.matrix(e).to_vec()).collect();
        let cycle = s3.element("120").unwrap();
        let m = &mut matrices[cycle.index()];
        m.swap(1, 2);
        let broken = UnitaryRep::new(&s3, "rho2-transposed", 2, matrices, true).unwrap();
        let report = validate_rep(&s3, &broken);
        assert!(!report.is_valid());
        assert!(report
            .axioms
            .iter()
            .any(|a| a.axiom == "homomorphism" && !a.is_ok()));
    }

    #[test]
    fn permutation_representation_is_detectably_reducible() {
        let s3 = fixtures::symmetric_group(3);
        let perm = fixtures::s3_permutation_rep(&s3);
        // Declared reducible: validates, and its character self-pairing is 2.
        assert!(validate_rep(&s3, &perm).is_valid());
        let chi = perm.character(&s3).unwrap();
        let norm = inner_product(&s3, &chi, &chi).unwrap();
        assert!((norm.re - 2.0).abs() < TOL && norm.im.abs() < TOL);
        // The same data declared irreducible fails the metadata axiom.
        let matrices: Vec<Vec<Complex64>> =
            s3.elements().map(|e| perm.matrix(e).to_vec()).collect();
        let lying = UnitaryRep::new(&s3, "perm3-as-irrep", 3, matrices, true).unwrap();
        let report = validate_rep(&s3, &lying);
        assert!(report
            .axioms
            .iter()
            .any(|a| a.axiom == "irreducibility-metadata" && !a.is_ok()));
    }

    #[test]
    fn schur_identities_hold_within_and_across_irreps() {
        let z5 = fixtures::cyclic_group(5);
        for rep in fixtures::cyclic_characters(&z5) {
            assert!(schur_check(&z5, &rep, TOL).is_valid());
        }
        let s3 = fixtures::symmetric_group(3);
        let irreps = fixtures::s3_irreps(&s3);
        for rep in &irreps {
            assert!(schur_check(&s3, rep, TOL).is_valid(), "{}", rep.name());
        }
        // Pinned instance: ρ_00 * ρ_00 = (1/2) ρ_00.
        let rho = &irreps[2];
        let conv = finite_convolve(
            &s3,
            &rho.coefficient(&s3, 0, 0).unwrap(),
            &rho.coefficient(&s3, 0, 0).unwrap(),
        )
        .unwrap();
        let half = rho
            .coefficient(&s3, 0, 0)
            .unwrap()
            .scale(Complex64::new(0.5, 0.0));
        assert!(conv.equal_within(&half, TOL));
        // Distinct irreps annihilate each other.
        for a in 0..irreps.len() {
            for b in 0..irreps.len() {
                if a != b {
                    assert!(
                        schur_cross_check(&s3, &irreps[a], &irreps[b], TOL).is_valid(),
                        "{} vs {}",
                        irreps[a].name(),
                        irreps[b].name()
                    );
                }
            }
        }
    }

    #[test]
    fn coefficient_identity_holds_for_constants_and_random_functions() {
        let s3 = fixtures::symmetric_group(3);
        let rho = fixtures::s3_irreps(&s3).pop().unwrap();
        let one = FiniteFn::one(&s3);
        let outcome = coeff_conv_identity_check(&s3, &rho, &one, &one, 0, 0, TOL).unwrap();
        assert!(outcome.equal);
        assert!(outcome
            .rhs
            .equal_within(&rho.coefficient(&s3, 0, 0).unwrap(), TOL));

        let zero = FiniteFn::zero(&s3);
        let outcome = coeff_conv_identity_check(&s3, &rho, &zero, &zero, 1, 0, TOL).unwrap();
        assert!(outcome.equal && outcome.lhs.sup_norm() <= TOL);

        let q8 = fixtures::quaternion_group();
        let rho2 = fixtures::q8_irreps(&q8).pop().unwrap();
        let mut rng = fixtures::seeded_rng(7);
        for _ in 0..5 {
            let u = fixtures::random_finite_fn(&q8, &mut rng);
            let v = fixtures::random_finite_fn(&q8, &mut rng);
            for i in 0..rho2.dim() {
                for k in 0..rho2.dim() {
                    let coeff =
                        coeff_conv_identity_check(&q8, &rho2, &u, &v, i, k, TOL).unwrap();
                    assert!(coeff.equal, "coeff gap {} at ({i},{k})", coeff.gap);
                    let weak = weak_compat_check(&q8, &rho2, &u, &v, i, k, TOL).unwrap();
                    assert!(weak.equal, "weak gap {} at ({i},{k})", weak.gap);
                }
            }
        }
    }

    #[test]
    fn naive_law_fails_on_s3_but_not_for_characters_or_trivial_sigma() {
        let s3 = fixtures::symmetric_group(3);
        let irreps = fixtures::s3_irreps(&s3);
        let rho = &irreps[2];
        let witnesses = naive_compat_search(&s3, rho, rho, 1e-6).unwrap();
        assert!(!witnesses.is_empty());
        assert!(witnesses.iter().all(|w| w.gap > 1e-6));

        let trivial = &irreps[0];
        assert!(naive_compat_search(&s3, trivial, rho, 1e-6)
            .unwrap()
            .is_empty());

        let z4 = fixtures::cyclic_group(4);
        let chars = fixtures::cyclic_characters(&z4);
        for sigma in &chars {
            for pi in &chars {
                assert!(naive_compat_search(&z4, sigma, pi, 1e-6).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn scaled_coefficients_are_orthonormal_across_the_full_irrep_list() {
        for (g, irreps) in [
            (
                fixtures::symmetric_group(3),
                fixtures::s3_irreps(&fixtures::symmetric_group(3)),
            ),
            (
                fixtures::quaternion_group(),
                fixtures::q8_irreps(&fixtures::quaternion_group()),
            ),
        ] {
            // Complete list: dimensions squared sum to the group order.
            let total: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
            assert_eq!(total, g.order());

            let mut family: Vec<(String, FiniteFn)> = Vec::new();
            for rep in &irreps {
                let scale = Complex64::new((rep.dim() as f64).sqrt(), 0.0);
                for i in 0..rep.dim() {
                    for j in 0..rep.dim() {
                        family.push((
                            format!("{}[{i}{j}]", rep.name()),
                            rep.coefficient(&g, i, j).unwrap().scale(scale),
                        ));
                    }
                }
            }
            for (p, (na, fa)) in family.iter().enumerate() {
                for (q, (nb, fb)) in family.iter().enumerate() {
                    let pairing = inner_product(&g, fa, fb).unwrap();
                    let expected = if p == q { 1.0 } else { 0.0 };
                    assert!(
                        (pairing.re - expected).abs() < TOL && pairing.im.abs() < TOL,
                        "⟨{na}, {nb}⟩ = {pairing}"
                    );
                }
            }
        }
    }

    #[test]
    fn coefficient_index_errors_are_reported() {
        let z3 = fixtures::cyclic_group(3);
        let chi = fixtures::cyclic_characters(&z3).pop().unwrap();
        assert!(matches!(
            chi.coefficient(&z3, 0, 1),
            Err(CompactError::IndexOutOfRange { index: 1, dim: 1 })
        ));
        let circle = Representation::CircleCharacter(3);
        assert!(circle.coefficient_fn(ModelRef::Circle, 0, 0).is_ok());
        assert!(circle.coefficient_fn(ModelRef::Circle, 1, 0).is_err());
    }
}
