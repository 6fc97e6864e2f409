//! Convolution algebras of finite groupoids with Haar weights.
//!
//! Elements are finitely supported coefficient vectors over the arrow set.
//! The product is
//! `(u*v)(g) = Σ_{h ∈ t⁻¹(t(g))} u(h)·v(h⁻¹∘g)·weight(h)`,
//! computed sparsely as a sum over composable support pairs. Coefficients
//! stay exact rational until a transcendental scalar enters; comparisons use
//! exact equality in the all-rational case and a sup-norm tolerance
//! otherwise.
//!
//! For a double groupoid the two structures induce two products `*∘` and
//! `*•` on the same coefficient space. [`compatibility_scan`] tests the
//! exchange identity `(δa *∘ δb) *• (δc *∘ δd) = (δa *• δc) *∘ (δb *• δd)`
//! over basis tuples (with counting weights, the setting in which its
//! verdict is equivalent to plain equality of the two composition tables)
//! and cross-checks that equivalence structurally, erring out loudly if the
//! two ever disagree.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::double::DoubleGroupoid;
use crate::fixtures;
use crate::groupoid::{ArrowId, FiniteGroupoidTable, VIOLATION_CAP};
use crate::haar::{induce_haar, DoubleHaarSystem, HaarError, HaarSystem, InducedHaar};
use crate::report::ValidationReport;
use crate::scalar::{Rational, Scalar};

/// Magnitude below which float coefficients are dropped after each ring
/// operation. Exact zeros are dropped regardless.
pub const PRUNE_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum AlgebraError {
    /// Element or weight system bound to a different arrow set.
    ContextMismatch,
    UnknownArrow(String),
    Haar(HaarError),
    /// The scan verdict contradicted the structural product comparison.
    Internal(String),
    /// Input structure failed validation first.
    InvalidInput(Box<ValidationReport>),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ContextMismatch => {
                write!(f, "element bound to a different arrow set")
            }
            AlgebraError::UnknownArrow(n) => write!(f, "coefficient on unknown arrow {n:?}"),
            AlgebraError::Haar(e) => write!(f, "haar data: {e}"),
            AlgebraError::Internal(d) => write!(f, "internal inconsistency: {d}"),
            AlgebraError::InvalidInput(report) => write!(
                f,
                "input failed validation ({} violations)",
                report.violation_count()
            ),
        }
    }
}

impl core::error::Error for AlgebraError {}

impl From<HaarError> for AlgebraError {
    fn from(e: HaarError) -> Self {
        AlgebraError::Haar(e)
    }
}

/// A finitely supported function on the arrows of one groupoid.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    coeffs: BTreeMap<ArrowId, Scalar>,
    context: u64,
}

impl AlgebraElement {
    pub fn zero(gpd: &FiniteGroupoidTable) -> Self {
        AlgebraElement {
            coeffs: BTreeMap::new(),
            context: gpd.context_id(),
        }
    }

    pub fn delta(gpd: &FiniteGroupoidTable, a: ArrowId) -> Self {
        let mut e = AlgebraElement::zero(gpd);
        e.coeffs.insert(a, Scalar::one());
        e
    }

    pub fn from_named(
        gpd: &FiniteGroupoidTable,
        entries: &[(String, Scalar)],
    ) -> Result<Self, AlgebraError> {
        let mut e = AlgebraElement::zero(gpd);
        for (name, c) in entries {
            let a = gpd
                .arrow_id(name)
                .ok_or_else(|| AlgebraError::UnknownArrow(name.clone()))?;
            e.add_to(a, *c);
        }
        e.prune();
        Ok(e)
    }

    /// Two-sided unit: `Σ_x weight(1_x)⁻¹ · δ_{1_x}`.
    pub fn unit(gpd: &FiniteGroupoidTable, haar: &HaarSystem) -> Self {
        let mut e = AlgebraElement::zero(gpd);
        for x in gpd.objects() {
            let u = gpd.unit(x);
            let w = haar.weight(u);
            e.add_to(u, Scalar::from_rational(Rational::new(*w.denom(), *w.numer())));
        }
        e
    }

    pub fn context_id(&self) -> u64 {
        self.context
    }

    pub fn bound_to(&self, gpd: &FiniteGroupoidTable) -> bool {
        self.context == gpd.context_id()
    }

    pub fn coeff(&self, a: ArrowId) -> Scalar {
        self.coeffs.get(&a).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn add_to(&mut self, a: ArrowId, c: Scalar) {
        let entry = self.coeffs.entry(a).or_insert_with(Scalar::zero);
        *entry = *entry + c;
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = *v * c;
        }
        out.prune();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.context != other.context {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.clone();
        for (&a, &c) in &other.coeffs {
            out.add_to(a, c);
        }
        out.prune();
        Ok(out)
    }

    /// Support in ascending arrow order.
    pub fn support(&self) -> impl Iterator<Item = (ArrowId, Scalar)> + '_ {
        self.coeffs.iter().map(|(&a, &c)| (a, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(Scalar::is_exact)
    }

    /// Drops exact zeros and float coefficients below [`PRUNE_EPS`].
    pub fn prune(&mut self) {
        self.coeffs
            .retain(|_, c| !c.is_exact_zero() && (c.is_exact() || c.abs() > PRUNE_EPS));
    }

    /// Largest coefficient distance over the union of supports.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        let keys: BTreeSet<ArrowId> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.into_iter()
            .map(|a| self.coeff(a).distance(&other.coeff(a)))
            .fold(0.0, f64::max)
    }

    /// Exact map equality when both sides are all-rational, sup-norm within
    /// `tol` otherwise.
    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        if self.context != other.context {
            return false;
        }
        if self.is_exact() && other.is_exact() {
            self.coeffs == other.coeffs
        } else {
            self.sup_distance(other) <= tol
        }
    }

    /// Printable form: `name: value` pairs in arrow order.
    pub fn describe(&self, gpd: &FiniteGroupoidTable) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&a, c)| format!("{}: {}", gpd.arrow_name(a), c))
            .collect();
        parts.join(", ")
    }
}

/// Convolution against a Haar system:
/// sparse sum `u*v = Σ u(a)·v(b)·weight(a)·δ_{a∘b}` over composable support
/// pairs, which is the fiber-sum formula evaluated on the support.
pub fn convolve(
    gpd: &FiniteGroupoidTable,
    haar: &HaarSystem,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if !u.bound_to(gpd) || !v.bound_to(gpd) {
        return Err(AlgebraError::ContextMismatch);
    }
    if !haar.bound_to(gpd) {
        return Err(AlgebraError::Haar(HaarError::ContextMismatch));
    }
    let mut out = AlgebraElement::zero(gpd);
    for (a, ca) in u.support() {
        let wa = Scalar::from_rational(haar.weight(a));
        for (b, cb) in v.support() {
            if let Some(ab) = gpd.compose_opt(a, b) {
                out.add_to(ab, ca * cb * wa);
            }
        }
    }
    out.prune();
    Ok(out)
}

/// The two convolution products induced on the square coefficient space by a
/// double groupoid with double Haar data.
pub struct DoubleConvolution<'a> {
    dg: &'a DoubleGroupoid,
    pub induced: InducedHaar,
}

/// Induces the Haar systems from `dh` and bundles both products. Errors if
/// `dh` fails validation.
pub fn double_convolutions<'a>(
    dg: &'a DoubleGroupoid,
    dh: &DoubleHaarSystem,
) -> Result<DoubleConvolution<'a>, AlgebraError> {
    let induced = induce_haar(dg, dh)?;
    Ok(DoubleConvolution { dg, induced })
}

impl<'a> DoubleConvolution<'a> {
    pub fn conv_circ(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        convolve(self.dg.vertical(), &self.induced.mu_circ, u, v)
    }

    pub fn conv_bullet(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        convolve(self.dg.horizontal(), &self.induced.mu_bullet, u, v)
    }

    pub fn delta(&self, a: ArrowId) -> AlgebraElement {
        AlgebraElement::delta(self.dg.vertical(), a)
    }
}

/// How [`compatibility_scan`] chooses its tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Only structurally plausible tuples, via the composability indexes:
    /// everywhere else both sides are zero.
    Indexed,
    /// All |squares|⁴ tuples. Audit mode.
    Full,
}

#[derive(Debug, Clone)]
pub struct CompatViolation {
    pub witness: [String; 4],
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct CompatReport {
    pub mode: ScanMode,
    /// Tuples evaluated by this scan.
    pub checked: u64,
    pub violations: Vec<CompatViolation>,
    /// Scan outcome: no violating tuple found.
    pub verdict_products_equal: bool,
    /// Direct comparison of the two composition tables.
    pub structural_products_equal: bool,
}

/// Scans the exchange identity over delta tuples using counting weights (the
/// setting of the products-equal equivalence) and cross-checks the verdict
/// against structural table equality. `dg` must validate; the scan refuses
/// invalid structures, and a verdict/structure disagreement on a valid one is
/// an internal error by definition.
pub fn compatibility_scan(
    dg: &DoubleGroupoid,
    mode: ScanMode,
    tol: f64,
) -> Result<CompatReport, AlgebraError> {
    let structure = dg.validate("compatibility scan input");
    if !structure.is_valid() {
        return Err(AlgebraError::InvalidInput(Box::new(structure)));
    }
    let conv = double_convolutions(dg, &DoubleHaarSystem::counting(dg))?;

    let tuples: Vec<[ArrowId; 4]> = match mode {
        ScanMode::Full => {
            let squares: Vec<ArrowId> = dg.squares().collect();
            let mut all = Vec::with_capacity(squares.len().pow(4));
            for &a in &squares {
                for &b in &squares {
                    for &c in &squares {
                        for &d in &squares {
                            all.push([a, b, c, d]);
                        }
                    }
                }
            }
            all
        }
        ScanMode::Indexed => {
            let v_pairs = dg.vertical().composable_pairs();
            let h_pairs = dg.horizontal().composable_pairs();
            let mut set = BTreeSet::new();
            // Left side nonzero needs (a,b) and (c,d) vertically composable.
            for &(a, b) in &v_pairs {
                for &(c, d) in &v_pairs {
                    set.insert([a, b, c, d]);
                }
            }
            // Right side nonzero needs (a,c) and (b,d) horizontally composable.
            for &(a, c) in &h_pairs {
                for &(b, d) in &h_pairs {
                    set.insert([a, b, c, d]);
                }
            }
            set.into_iter().collect()
        }
    };

    let mut report = CompatReport {
        mode,
        checked: 0,
        violations: Vec::new(),
        verdict_products_equal: true,
        structural_products_equal: dg.vertical().compose_table()
            == dg.horizontal().compose_table(),
    };

    for [a, b, c, d] in tuples {
        report.checked += 1;
        let lhs = conv.conv_bullet(
            &conv.conv_circ(&conv.delta(a), &conv.delta(b))?,
            &conv.conv_circ(&conv.delta(c), &conv.delta(d))?,
        )?;
        let rhs = conv.conv_circ(
            &conv.conv_bullet(&conv.delta(a), &conv.delta(c))?,
            &conv.conv_bullet(&conv.delta(b), &conv.delta(d))?,
        )?;
        if !lhs.equal_within(&rhs, tol) {
            report.verdict_products_equal = false;
            if report.violations.len() < VIOLATION_CAP {
                report.violations.push(CompatViolation {
                    witness: [
                        dg.square_name(a).to_string(),
                        dg.square_name(b).to_string(),
                        dg.square_name(c).to_string(),
                        dg.square_name(d).to_string(),
                    ],
                    lhs: lhs.describe(dg.vertical()),
                    rhs: rhs.describe(dg.vertical()),
                });
            }
        }
    }

    if report.verdict_products_equal != report.structural_products_equal {
        return Err(AlgebraError::Internal(format!(
            "scan verdict {} but structural comparison {}",
            report.verdict_products_equal, report.structural_products_equal
        )));
    }
    Ok(report)
}

/// Checks that mapping `δ_(i,j) ↦ E_ij` intertwines pair-groupoid
/// convolution (counting weights) with matrix multiplication for all basis
/// pairs, both products computed by independent routes.
pub fn pair_matrix_iso_check(n: u32) -> bool {
    pair_matrix_check(n, false)
}

/// Negative control: the transposed assignment `δ_(i,j) ↦ E_ji` is not an
/// algebra map once n > 1 pairs off-diagonal units.
pub fn pair_matrix_transposed_check(n: u32) -> bool {
    pair_matrix_check(n, true)
}

fn pair_matrix_check(n: u32, transpose: bool) -> bool {
    let g = fixtures::pair_groupoid(n);
    let haar = HaarSystem::counting(&g);
    let n = n as usize;

    let unit_matrix = |arrow: ArrowId| -> Vec<Vec<Rational>> {
        let (i, j) = parse_pair(&g, arrow);
        let (r, c) = if transpose { (j, i) } else { (i, j) };
        let mut m = alloc::vec![alloc::vec![Rational::zero(); n]; n];
        m[r][c] = Rational::from_integer(1);
        m
    };

    for a in g.arrows() {
        for b in g.arrows() {
            let conv = convolve(
                &g,
                &haar,
                &AlgebraElement::delta(&g, a),
                &AlgebraElement::delta(&g, b),
            )
            .expect("bound elements");

            // Matrix route: dense multiplication of the mapped units.
            let product = mat_mul(&unit_matrix(a), &unit_matrix(b));

            // Map the convolution result into a matrix and compare exactly.
            let mut mapped = alloc::vec![alloc::vec![Rational::zero(); n]; n];
            for (arrow, c) in conv.support() {
                let (i, j) = parse_pair(&g, arrow);
                let (r, col) = if transpose { (j, i) } else { (i, j) };
                match c {
                    Scalar::Exact(re, im) if im.is_zero() => {
                        mapped[r][col] = mapped[r][col] + re;
                    }
                    _ => return false,
                }
            }
            if mapped != product {
                return false;
            }
        }
    }
    true
}

/// Zero-based `(i, j)` of a pair-groupoid arrow named `(i,j)`.
fn parse_pair(g: &FiniteGroupoidTable, arrow: ArrowId) -> (usize, usize) {
    let name = g.arrow_name(arrow);
    let inner = &name[1..name.len() - 1];
    let comma = inner.find(',').expect("pair arrows are named (i,j)");
    let i: usize = inner[..comma].parse().expect("numeric point");
    let j: usize = inner[comma + 1..].parse().expect("numeric point");
    (i - 1, j - 1)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = alloc::vec![alloc::vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::from_group;
    use crate::fixtures;

    fn counting_conv(
        g: &FiniteGroupoidTable,
        a: &str,
        b: &str,
    ) -> AlgebraElement {
        let haar = HaarSystem::counting(g);
        convolve(
            g,
            &haar,
            &AlgebraElement::delta(g, g.arrow_id(a).unwrap()),
            &AlgebraElement::delta(g, g.arrow_id(b).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn deltas_convolve_to_the_composite_delta() {
        let g = fixtures::cyclic_group(3);
        let out = counting_conv(g.table(), "1", "2");
        assert_eq!(out.describe(g.table()), "0: 1");

        let pair = fixtures::pair_groupoid(3);
        let out = counting_conv(&pair, "(1,2)", "(2,3)");
        assert_eq!(out.describe(&pair), "(1,3): 1");
        let zero = counting_conv(&pair, "(1,2)", "(3,1)");
        assert_eq!(zero.support_len(), 0);
    }

    #[test]
    fn convolution_is_associative_on_all_basis_triples() {
        for (label, g, haar) in [
            (
                "z3 counting",
                fixtures::cyclic_group(3).table().clone(),
                None,
            ),
            ("pair3 counting", fixtures::pair_groupoid(3), None),
            (
                "z2on z4 anchored",
                fixtures::z2_on_z4(),
                Some(()),
            ),
        ] {
            let haar = match haar {
                None => HaarSystem::counting(&g),
                Some(()) => {
                    // A genuinely non-uniform valid system, to exercise the
                    // weight factor: weight depends on the anchor point.
                    let weights: Vec<Rational> = g
                        .arrows()
                        .map(|a| {
                            let name = g.arrow_name(a);
                            let inner = &name[1..name.len() - 1];
                            let anchor: i64 =
                                inner[inner.find(',').unwrap() + 1..].parse().unwrap();
                            Rational::new(1, anchor + 1)
                        })
                        .collect();
                    HaarSystem::from_weights(&g, weights).unwrap()
                }
            };
            assert!(haar.validate(&g, label).is_valid(), "{label}");
            for a in g.arrows() {
                for b in g.arrows() {
                    for c in g.arrows() {
                        let da = AlgebraElement::delta(&g, a);
                        let db = AlgebraElement::delta(&g, b);
                        let dc = AlgebraElement::delta(&g, c);
                        let left = convolve(
                            &g,
                            &haar,
                            &convolve(&g, &haar, &da, &db).unwrap(),
                            &dc,
                        )
                        .unwrap();
                        let right = convolve(
                            &g,
                            &haar,
                            &da,
                            &convolve(&g, &haar, &db, &dc).unwrap(),
                        )
                        .unwrap();
                        assert!(left.equal_within(&right, 0.0), "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn unit_element_is_two_sided_for_nonuniform_haar() {
        let g = fixtures::z2_on_z4();
        let weights: Vec<Rational> = g
            .arrows()
            .map(|a| {
                let name = g.arrow_name(a);
                let inner = &name[1..name.len() - 1];
                let anchor: i64 = inner[inner.find(',').unwrap() + 1..].parse().unwrap();
                Rational::new(1, anchor + 1)
            })
            .collect();
        let haar = HaarSystem::from_weights(&g, weights).unwrap();
        assert!(haar.validate(&g, "anchored").is_valid());
        let e = AlgebraElement::unit(&g, &haar);
        for a in g.arrows() {
            let da = AlgebraElement::delta(&g, a);
            let left = convolve(&g, &haar, &e, &da).unwrap();
            let right = convolve(&g, &haar, &da, &e).unwrap();
            assert!(left.equal_within(&da, 0.0));
            assert!(right.equal_within(&da, 0.0));
        }
    }

    #[test]
    fn pair_matrix_iso_holds_and_transpose_fails() {
        for n in 1..=5 {
            assert!(pair_matrix_iso_check(n), "n = {n}");
        }
        assert!(!pair_matrix_transposed_check(3));
        // With one point there is nothing off-diagonal to break.
        assert!(pair_matrix_transposed_check(1));
    }

    #[test]
    fn group_double_of_z2_has_the_expected_exchange_witnesses() {
        let dg = from_group(&fixtures::cyclic_group(2));
        let report = compatibility_scan(&dg, ScanMode::Indexed, 0.0).unwrap();
        assert!(!report.verdict_products_equal);
        assert!(!report.structural_products_equal);
        // Exactly the four mixed tuples fail, in scan order.
        let witnesses: Vec<&[String; 4]> =
            report.violations.iter().map(|v| &v.witness).collect();
        assert_eq!(
            witnesses,
            [
                &["0", "1", "0", "1"],
                &["0", "1", "1", "0"],
                &["1", "0", "0", "1"],
                &["1", "0", "1", "0"],
            ]
        );
        // Hand-checked entry: left side dies on the diagonal-only vertical
        // product, right side survives as δ_1.
        let pinned = &report.violations[1];
        assert_eq!(pinned.witness, ["0", "1", "1", "0"]);
        assert_eq!(pinned.lhs, "0");
        assert_eq!(pinned.rhs, "1: 1");
    }

    #[test]
    fn one_square_double_has_equal_products() {
        let dg = fixtures::equal_pair_double(&fixtures::cyclic_group(1));
        let report = compatibility_scan(&dg, ScanMode::Indexed, 0.0).unwrap();
        assert!(report.verdict_products_equal);
        assert!(report.structural_products_equal);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn indexed_and_full_scans_agree_including_witnesses() {
        for dg in [
            fixtures::equal_pair_double(&fixtures::cyclic_group(3)),
            from_group(&fixtures::cyclic_group(2)),
        ] {
            let indexed = compatibility_scan(&dg, ScanMode::Indexed, 0.0).unwrap();
            let full = compatibility_scan(&dg, ScanMode::Full, 0.0).unwrap();
            assert_eq!(
                indexed.verdict_products_equal,
                full.verdict_products_equal
            );
            let iw: Vec<&[String; 4]> =
                indexed.violations.iter().map(|v| &v.witness).collect();
            let fw: Vec<&[String; 4]> =
                full.violations.iter().map(|v| &v.witness).collect();
            assert_eq!(iw, fw);
            assert!(full.checked >= indexed.checked);
        }
    }

    #[test]
    fn context_mismatch_is_reported() {
        let g3 = fixtures::cyclic_group(3);
        let g4 = fixtures::cyclic_group(4);
        let haar = HaarSystem::counting(g3.table());
        let u = AlgebraElement::delta(g3.table(), ArrowId(0));
        let v = AlgebraElement::delta(g4.table(), ArrowId(0));
        assert!(matches!(
            convolve(g3.table(), &haar, &u, &v),
            Err(AlgebraError::ContextMismatch)
        ));
    }
}
