//! Finite double groupoids: one square set, two groupoid structures.
//!
//! A [`DoubleGroupoid`] holds four tables. The `vertical` table composes
//! squares with `∘` over objects named by the arrows of `side_k`; the
//! `horizontal` table composes the same squares with `•` over objects named
//! by the arrows of `side_h`. The two side groupoids share their object set.
//! Construction only enforces that the name sets line up (so interned square
//! ids mean the same thing in both top tables); all axioms, including the
//! interchange law, live in [`DoubleGroupoid::validate`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::group::{FiniteGroupTable, GroupError, POINT};
use crate::groupoid::{ArrowId, FiniteGroupoidTable, StructureError, VIOLATION_CAP};
use crate::report::{AxiomScan, ValidationReport};

/// A corner: the pair `(k, h)` of a `side_k` arrow and a `side_h` arrow with
/// equal targets in the shared base. Double targets of squares land here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Corner {
    pub k: ArrowId,
    pub h: ArrowId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoubleStructureError {
    /// The two top tables do not share one square id set.
    SquareSetsDiffer,
    /// Vertical object names must be exactly the side_k arrow names.
    VerticalObjectsMismatch,
    /// Horizontal object names must be exactly the side_h arrow names.
    HorizontalObjectsMismatch,
    /// The side groupoids must share one base object set.
    BaseObjectsMismatch,
    Component(StructureError),
    Group(GroupError),
}

impl fmt::Display for DoubleStructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoubleStructureError::SquareSetsDiffer => {
                write!(f, "vertical and horizontal tables disagree on square ids")
            }
            DoubleStructureError::VerticalObjectsMismatch => {
                write!(f, "vertical objects are not the side_k arrow ids")
            }
            DoubleStructureError::HorizontalObjectsMismatch => {
                write!(f, "horizontal objects are not the side_h arrow ids")
            }
            DoubleStructureError::BaseObjectsMismatch => {
                write!(f, "side groupoids disagree on base object ids")
            }
            DoubleStructureError::Component(e) => write!(f, "component table: {e}"),
            DoubleStructureError::Group(e) => write!(f, "group data: {e}"),
        }
    }
}

impl core::error::Error for DoubleStructureError {}

impl From<StructureError> for DoubleStructureError {
    fn from(e: StructureError) -> Self {
        DoubleStructureError::Component(e)
    }
}

impl From<GroupError> for DoubleStructureError {
    fn from(e: GroupError) -> Self {
        DoubleStructureError::Group(e)
    }
}

#[derive(Debug, Clone)]
pub struct DoubleGroupoid {
    vertical: FiniteGroupoidTable,
    horizontal: FiniteGroupoidTable,
    side_k: FiniteGroupoidTable,
    side_h: FiniteGroupoidTable,
    /// All corners in lexicographic `(k, h)` order, empty fibers included.
    corners: Vec<Corner>,
    /// Squares per corner, keyed by double target.
    corner_fibers: BTreeMap<Corner, Vec<ArrowId>>,
}

impl DoubleGroupoid {
    pub fn new(
        vertical: FiniteGroupoidTable,
        horizontal: FiniteGroupoidTable,
        side_k: FiniteGroupoidTable,
        side_h: FiniteGroupoidTable,
    ) -> Result<Self, DoubleStructureError> {
        if vertical.category().arrow_names() != horizontal.category().arrow_names() {
            return Err(DoubleStructureError::SquareSetsDiffer);
        }
        if vertical.category().object_names() != side_k.category().arrow_names() {
            return Err(DoubleStructureError::VerticalObjectsMismatch);
        }
        if horizontal.category().object_names() != side_h.category().arrow_names() {
            return Err(DoubleStructureError::HorizontalObjectsMismatch);
        }
        if side_k.category().object_names() != side_h.category().object_names() {
            return Err(DoubleStructureError::BaseObjectsMismatch);
        }

        let mut corners = Vec::new();
        for k in side_k.arrows() {
            for h in side_h.arrows() {
                if side_k.target(k).0 == side_h.target(h).0 {
                    corners.push(Corner { k, h });
                }
            }
        }

        let mut corner_fibers: BTreeMap<Corner, Vec<ArrowId>> = BTreeMap::new();
        for c in &corners {
            corner_fibers.insert(*c, Vec::new());
        }
        let mut dg = DoubleGroupoid {
            vertical,
            horizontal,
            side_k,
            side_h,
            corners,
            corner_fibers,
        };
        for a in dg.squares() {
            let c = dg.double_target(a);
            dg.corner_fibers.entry(c).or_default().push(a);
        }
        Ok(dg)
    }

    pub fn vertical(&self) -> &FiniteGroupoidTable {
        &self.vertical
    }

    pub fn horizontal(&self) -> &FiniteGroupoidTable {
        &self.horizontal
    }

    pub fn side_k(&self) -> &FiniteGroupoidTable {
        &self.side_k
    }

    pub fn side_h(&self) -> &FiniteGroupoidTable {
        &self.side_h
    }

    pub fn square_count(&self) -> usize {
        self.vertical.arrow_count()
    }

    pub fn squares(&self) -> impl Iterator<Item = ArrowId> {
        self.vertical.arrows()
    }

    pub fn square_name(&self, a: ArrowId) -> &str {
        self.vertical.arrow_name(a)
    }

    pub fn square_id(&self, name: &str) -> Option<ArrowId> {
        self.vertical.arrow_id(name)
    }

    /// Vertical source edge of a square, as a `side_k` arrow.
    pub fn v_source(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.vertical.source(a).0)
    }

    /// Vertical target edge of a square, as a `side_k` arrow.
    pub fn v_target(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.vertical.target(a).0)
    }

    /// Horizontal source edge of a square, as a `side_h` arrow.
    pub fn h_source(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.horizontal.source(a).0)
    }

    /// Horizontal target edge of a square, as a `side_h` arrow.
    pub fn h_target(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.horizontal.target(a).0)
    }

    /// The double target `t^D(a) = (t^∘(a), t^•(a))`.
    pub fn double_target(&self, a: ArrowId) -> Corner {
        Corner {
            k: self.v_target(a),
            h: self.h_target(a),
        }
    }

    /// All corners, ascending; empty fibers included.
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    /// Squares whose double target is `c`, ascending. Empty when none.
    pub fn corner_fiber(&self, c: Corner) -> &[ArrowId] {
        self.corner_fibers
            .get(&c)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn corner_name(&self, c: Corner) -> String {
        format!(
            "({}, {})",
            self.side_k.arrow_name(c.k),
            self.side_h.arrow_name(c.h)
        )
    }

    /// Vertical corner translation `a ∘ (k, h) = (t^∘(a), t^•(a) ∘ h)`,
    /// defined when the vertical source edge of `a` is `k`.
    pub fn corner_act_v(&self, a: ArrowId, c: Corner) -> Option<Corner> {
        if self.v_source(a) != c.k {
            return None;
        }
        let h = self.side_h.compose_opt(self.h_target(a), c.h)?;
        Some(Corner {
            k: self.v_target(a),
            h,
        })
    }

    /// Horizontal corner translation `a • (k, h) = (t^∘(a) • k, t^•(a))`,
    /// defined when the horizontal source edge of `a` is `h`.
    pub fn corner_act_h(&self, a: ArrowId, c: Corner) -> Option<Corner> {
        if self.h_source(a) != c.h {
            return None;
        }
        let k = self.side_k.compose_opt(self.v_target(a), c.k)?;
        Some(Corner {
            k,
            h: self.h_target(a),
        })
    }

    /// True iff the bottom-left groupoid is a single point: one object and
    /// only its unit arrow.
    pub fn is_strict_2group(&self) -> bool {
        self.side_h.object_count() == 1 && self.side_h.arrow_count() == 1
    }

    /// All interchange tuples `(a, b, c, d)`: `a∘b`, `c∘d`, `a•c`, `b•d` all
    /// defined. Lexicographic order.
    pub fn composable_squares(&self) -> Vec<[ArrowId; 4]> {
        let v_pairs = self.vertical.composable_pairs();
        let mut out = Vec::new();
        for &(a, b) in &v_pairs {
            for &(c, d) in &v_pairs {
                if self.horizontal.composable(a, c) && self.horizontal.composable(b, d) {
                    out.push([a, b, c, d]);
                }
            }
        }
        out
    }

    /// Full axiom scan. Invalid component tables short-circuit: their
    /// reports are embedded and the cross-structure scans are skipped.
    pub fn validate(&self, subject: &str) -> ValidationReport {
        let mut report = ValidationReport::new(subject);
        let components = [
            ("vertical", self.vertical.validate("vertical")),
            ("horizontal", self.horizontal.validate("horizontal")),
            ("side_k", self.side_k.validate("side_k")),
            ("side_h", self.side_h.validate("side_h")),
        ];
        let mut component_failure = false;
        for (label, sub) in components {
            if !sub.is_valid() {
                component_failure = true;
            }
            report.absorb(label, sub);
        }
        if component_failure {
            return report;
        }

        self.scan_corner_consistency(&mut report);
        self.scan_edge_functoriality(&mut report);
        self.scan_unit_edges(&mut report);
        self.scan_interchange(&mut report);
        self.scan_corner_filling(&mut report);
        report
    }

    /// The four corner equations per square: each edge pair of the square
    /// must meet in the right base object. Equivalent to the source/target
    /// halves of the four edge functors.
    fn scan_corner_consistency(&self, report: &mut ValidationReport) {
        let mut scan = AxiomScan::new("corner-consistency");
        for a in self.squares() {
            scan.tick();
            let ks = self.v_source(a);
            let kt = self.v_target(a);
            let hs = self.h_source(a);
            let ht = self.h_target(a);
            let ok = self.side_k.source(ks).0 == self.side_h.source(hs).0
                && self.side_k.target(ks).0 == self.side_h.source(ht).0
                && self.side_k.source(kt).0 == self.side_h.target(hs).0
                && self.side_k.target(kt).0 == self.side_h.target(ht).0;
            if !ok && scan.violation_len() < VIOLATION_CAP {
                scan.violate(
                    alloc::vec![self.square_name(a).to_string()],
                    format!(
                        "edges k: {} -> {}, h: {} -> {} do not close a square",
                        self.side_k.arrow_name(ks),
                        self.side_k.arrow_name(kt),
                        self.side_h.arrow_name(hs),
                        self.side_h.arrow_name(ht)
                    ),
                );
            }
        }
        report.push(scan.finish());
    }

    /// Edge maps are multiplicative: `∘`-composites have `∘`-composed
    /// horizontal edges in `side_h`, and `•`-composites have `•`-composed
    /// vertical edges in `side_k`.
    fn scan_edge_functoriality(&self, report: &mut ValidationReport) {
        let mut scan = AxiomScan::new("edge-functoriality");
        for (a, b) in self.vertical.composable_pairs() {
            scan.tick();
            let ab = self
                .vertical
                .compose_opt(a, b)
                .expect("validated vertical table lists all composable pairs");
            let hs = self.side_h.compose_opt(self.h_source(a), self.h_source(b));
            let ht = self.side_h.compose_opt(self.h_target(a), self.h_target(b));
            if hs != Some(self.h_source(ab)) || ht != Some(self.h_target(ab)) {
                if scan.violation_len() < VIOLATION_CAP {
                    scan.violate(
                        alloc::vec![
                            self.square_name(a).to_string(),
                            self.square_name(b).to_string(),
                        ],
                        "horizontal edges of a vertical composite are not the composed edges"
                            .to_string(),
                    );
                }
            }
        }
        for (a, c) in self.horizontal.composable_pairs() {
            scan.tick();
            let ac = self
                .horizontal
                .compose_opt(a, c)
                .expect("validated horizontal table lists all composable pairs");
            let ks = self.side_k.compose_opt(self.v_source(a), self.v_source(c));
            let kt = self.side_k.compose_opt(self.v_target(a), self.v_target(c));
            if ks != Some(self.v_source(ac)) || kt != Some(self.v_target(ac)) {
                if scan.violation_len() < VIOLATION_CAP {
                    scan.violate(
                        alloc::vec![
                            self.square_name(a).to_string(),
                            self.square_name(c).to_string(),
                        ],
                        "vertical edges of a horizontal composite are not the composed edges"
                            .to_string(),
                    );
                }
            }
        }
        report.push(scan.finish());
    }

    /// Unit squares have unit edges: the vertical unit over `k` has the unit
    /// `side_h` edges at the endpoints of `k`, and dually.
    fn scan_unit_edges(&self, report: &mut ValidationReport) {
        let mut scan = AxiomScan::new("unit-edges");
        for x in self.vertical.objects() {
            scan.tick();
            let k = ArrowId(x.0);
            let u = self.vertical.unit(x);
            let want_s = self.side_h.unit(self.side_k.source(k));
            let want_t = self.side_h.unit(self.side_k.target(k));
            if self.h_source(u) != want_s || self.h_target(u) != want_t {
                if scan.violation_len() < VIOLATION_CAP {
                    scan.violate(
                        alloc::vec![self.square_name(u).to_string()],
                        format!(
                            "vertical unit over {} lacks unit horizontal edges",
                            self.side_k.arrow_name(k)
                        ),
                    );
                }
            }
        }
        for x in self.horizontal.objects() {
            scan.tick();
            let h = ArrowId(x.0);
            let u = self.horizontal.unit(x);
            let want_s = self.side_k.unit(self.side_h.source(h));
            let want_t = self.side_k.unit(self.side_h.target(h));
            if self.v_source(u) != want_s || self.v_target(u) != want_t {
                if scan.violation_len() < VIOLATION_CAP {
                    scan.violate(
                        alloc::vec![self.square_name(u).to_string()],
                        format!(
                            "horizontal unit over {} lacks unit vertical edges",
                            self.side_h.arrow_name(h)
                        ),
                    );
                }
            }
        }
        report.push(scan.finish());
    }

    /// The interchange law on every tuple with all four inner products
    /// defined: `(a∘b)•(c∘d)` and `(a•c)∘(b•d)` must both be defined and
    /// agree. A defined-vs-undefined mismatch is reported as a violation,
    /// not skipped.
    fn scan_interchange(&self, report: &mut ValidationReport) {
        let mut scan = AxiomScan::new("interchange");
        for [a, b, c, d] in self.composable_squares() {
            scan.tick();
            let ab = self.vertical.compose_opt(a, b).unwrap();
            let cd = self.vertical.compose_opt(c, d).unwrap();
            let ac = self.horizontal.compose_opt(a, c).unwrap();
            let bd = self.horizontal.compose_opt(b, d).unwrap();
            let lhs = self.horizontal.compose_opt(ab, cd);
            let rhs = self.vertical.compose_opt(ac, bd);
            if lhs.is_none() || rhs.is_none() || lhs != rhs {
                if scan.violation_len() < VIOLATION_CAP {
                    scan.violate(
                        [a, b, c, d]
                            .iter()
                            .map(|&x| self.square_name(x).to_string())
                            .collect(),
                        format!(
                            "(a∘b)•(c∘d) = {}, (a•c)∘(b•d) = {}",
                            lhs.map(|x| format!("{:?}", self.square_name(x)))
                                .unwrap_or_else(|| "undefined".to_string()),
                            rhs.map(|x| format!("{:?}", self.square_name(x)))
                                .unwrap_or_else(|| "undefined".to_string()),
                        ),
                    );
                }
            }
        }
        report.push(scan.finish());
    }

    /// Every corner is the double target of at least one square. True in a
    /// genuine double groupoid; checked rather than assumed.
    fn scan_corner_filling(&self, report: &mut ValidationReport) {
        let mut scan = AxiomScan::new("corner-filling");
        for &c in &self.corners {
            scan.tick();
            if self.corner_fiber(c).is_empty() && scan.violation_len() < VIOLATION_CAP {
                scan.violate(
                    alloc::vec![self.corner_name(c)],
                    "no square has this corner as its double target".to_string(),
                );
            }
        }
        report.push(scan.finish());
    }
}

/// The double groupoid of a group `G`: squares are group elements, `∘` is the
/// trivial (units only) structure over `side_k = G`, `•` is the group product
/// over the point. A strict 2-group.
pub fn from_group(g: &FiniteGroupTable) -> DoubleGroupoid {
    let names: Vec<String> = g
        .table()
        .category()
        .arrow_names()
        .iter()
        .cloned()
        .collect();

    let vertical = FiniteGroupoidTable::from_parts(
        names.clone(),
        names
            .iter()
            .map(|n| (n.clone(), n.clone(), n.clone()))
            .collect(),
        names.iter().map(|n| (n.clone(), n.clone())).collect(),
        names.iter().map(|n| (n.clone(), n.clone(), n.clone())).collect(),
        names.iter().map(|n| (n.clone(), n.clone())).collect(),
    )
    .expect("trivial structure over group elements is well formed");

    let horizontal = one_object_table(&names, |a, b| {
        let ga = g.element(a).unwrap();
        let gb = g.element(b).unwrap();
        g.name(g.op(ga, gb)).to_string()
    });

    let side_k = g.table().clone();
    let side_h = point_groupoid();
    DoubleGroupoid::new(vertical, horizontal, side_k, side_h)
        .expect("group double groupoid tables align by construction")
}

/// The action double groupoid of a subgroup `K ≤ G` acting by left
/// translation: squares are pairs `(κ,g)`, `∘` is the action groupoid over
/// `side_k = G`, `•` is the product group over the point. Satisfies the
/// interchange law iff `K` is central; non-central `K` is allowed here on
/// purpose and flagged by `validate`.
pub fn central_action_double(
    g: &FiniteGroupTable,
    k_elements: &[ArrowId],
) -> Result<DoubleGroupoid, DoubleStructureError> {
    let square = |k: ArrowId, x: ArrowId| format!("({},{})", g.name(k), g.name(x));
    let mut squares = Vec::new();
    for &k in k_elements {
        for x in g.elements() {
            squares.push((k, x));
        }
    }

    let g_names: Vec<String> = g
        .table()
        .category()
        .arrow_names()
        .iter()
        .cloned()
        .collect();

    // Vertical: s(κ,x) = x, t(κ,x) = κx, (κ',κx)∘(κ,x) = (κ'κ,x).
    let mut arrows = Vec::new();
    let mut units = Vec::new();
    let mut compose = Vec::new();
    let mut inverse = Vec::new();
    for &(k, x) in &squares {
        arrows.push((
            square(k, x),
            g.name(x).to_string(),
            g.name(g.op(k, x)).to_string(),
        ));
        inverse.push((square(k, x), square(g.inv(k), g.op(k, x))));
    }
    for x in g.elements() {
        units.push((g.name(x).to_string(), square(g.identity(), x)));
    }
    for &(k, x) in &squares {
        // Compositions with (κ, x) on the right: left factor sits over κx.
        for &kp in k_elements {
            compose.push((
                square(kp, g.op(k, x)),
                square(k, x),
                square(g.op(kp, k), x),
            ));
        }
    }
    let vertical =
        FiniteGroupoidTable::from_parts(g_names.clone(), arrows, units, compose, inverse)?;

    // Horizontal: the product group K x G over the point.
    let square_names: Vec<String> = squares.iter().map(|&(k, x)| square(k, x)).collect();
    let horizontal = one_object_table(&square_names, |a, b| {
        let (ka, xa) = split_pair(g, a);
        let (kb, xb) = split_pair(g, b);
        square(g.op(ka, kb), g.op(xa, xb))
    });

    DoubleGroupoid::new(vertical, horizontal, g.table().clone(), point_groupoid())
}

fn split_pair(g: &FiniteGroupTable, name: &str) -> (ArrowId, ArrowId) {
    let inner = &name[1..name.len() - 1];
    let comma = inner.find(',').expect("square names are (κ,g) pairs");
    let k = g.element(&inner[..comma]).expect("known κ component");
    let x = g.element(&inner[comma + 1..]).expect("known g component");
    (k, x)
}

/// One-object groupoid from a total multiplication on `names`.
fn one_object_table(names: &[String], op: impl Fn(&str, &str) -> String) -> FiniteGroupoidTable {
    FiniteGroupTable::from_op(&names.to_vec(), op)
        .expect("well formed one-object table")
        .table()
        .clone()
}

/// The terminal double groupoid building block: one object, one arrow.
pub fn point_groupoid() -> FiniteGroupoidTable {
    FiniteGroupoidTable::from_parts(
        alloc::vec![POINT.to_string()],
        alloc::vec![(POINT.to_string(), POINT.to_string(), POINT.to_string())],
        alloc::vec![(POINT.to_string(), POINT.to_string())],
        alloc::vec![(POINT.to_string(), POINT.to_string(), POINT.to_string())],
        alloc::vec![(POINT.to_string(), POINT.to_string())],
    )
    .expect("point groupoid is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn group_double_of_z2_has_diagonal_interchange_tuples() {
        let dg = from_group(&fixtures::cyclic_group(2));
        assert!(dg.validate("from_group(z2)").is_valid());
        assert!(dg.is_strict_2group());
        let tuples = dg.composable_squares();
        // Vertical composition is trivial, so tuples are exactly (a,a,c,c).
        assert_eq!(tuples.len(), 4);
        for [a, b, c, d] in &tuples {
            assert_eq!(a, b);
            assert_eq!(c, d);
        }
    }

    #[test]
    fn group_double_corners_pair_elements_with_the_point() {
        let dg = from_group(&fixtures::cyclic_group(2));
        let names: Vec<String> = dg.corners().iter().map(|&c| dg.corner_name(c)).collect();
        assert_eq!(names, ["(0, *)", "(1, *)"]);

        let dg3 = from_group(&fixtures::cyclic_group(3));
        let two = dg3.square_id("2").unwrap();
        assert_eq!(dg3.corner_name(dg3.double_target(two)), "(2, *)");
    }

    // Oracle for the interchange-tuple count: quantify over all |squares|^4
    // tuples and test the four products directly. The fast enumerator must
    // agree exactly.
    #[test]
    fn central_action_tuple_enumeration_matches_brute_force() {
        let g = fixtures::cyclic_group(4);
        let k = g.subgroup(&["0", "2"]).unwrap();
        let dg = central_action_double(&g, &k).unwrap();
        assert_eq!(dg.square_count(), 8);
        assert!(dg.validate("z2 in z4 action double").is_valid());

        let mut brute = 0usize;
        let squares: Vec<ArrowId> = dg.squares().collect();
        for &a in &squares {
            for &b in &squares {
                for &c in &squares {
                    for &d in &squares {
                        if dg.vertical().compose_opt(a, b).is_some()
                            && dg.vertical().compose_opt(c, d).is_some()
                            && dg.horizontal().compose_opt(a, c).is_some()
                            && dg.horizontal().compose_opt(b, d).is_some()
                        {
                            brute += 1;
                        }
                    }
                }
            }
        }
        let fast = dg.composable_squares();
        assert_eq!(fast.len(), brute);
        // 16 vertically composable pairs squared: every horizontal pair
        // composes, so 256 interchange tuples.
        assert_eq!(fast.len(), 256);
    }

    #[test]
    fn non_central_subgroup_breaks_interchange() {
        let g = fixtures::symmetric_group(3);
        let a3 = fixtures::alternating_subgroup_s3(&g);
        let dg = central_action_double(&g, &a3).unwrap();
        let report = dg.validate("s3 with a3 translation");
        assert!(!report.is_valid());
        let interchange = report
            .axioms
            .iter()
            .find(|a| a.axiom == "interchange")
            .expect("interchange axiom scanned");
        assert!(!interchange.violations.is_empty());
    }

    #[test]
    fn double_target_is_equivariant_for_both_translations() {
        let g = fixtures::cyclic_group(4);
        let k = g.subgroup(&["0", "2"]).unwrap();
        let dg = central_action_double(&g, &k).unwrap();

        for (a, b) in dg.vertical().composable_pairs() {
            let ab = dg.vertical().compose_opt(a, b).unwrap();
            let acted = dg.corner_act_v(a, dg.double_target(b)).unwrap();
            assert_eq!(dg.double_target(ab), acted);
        }
        for (a, b) in dg.horizontal().composable_pairs() {
            let ab = dg.horizontal().compose_opt(a, b).unwrap();
            let acted = dg.corner_act_h(a, dg.double_target(b)).unwrap();
            assert_eq!(dg.double_target(ab), acted);
        }
    }

    #[test]
    fn corner_fibers_partition_the_squares() {
        let g = fixtures::quaternion_group();
        let k = g.center();
        let dg = central_action_double(&g, &k).unwrap();
        assert!(dg.validate("q8 center action double").is_valid());
        let total: usize = dg.corners().iter().map(|&c| dg.corner_fiber(c).len()).sum();
        assert_eq!(total, dg.square_count());
    }

    #[test]
    fn misaligned_side_tables_are_rejected() {
        let g2 = fixtures::cyclic_group(2);
        let g3 = fixtures::cyclic_group(3);
        let dg2 = from_group(&g2);
        let err = DoubleGroupoid::new(
            dg2.vertical().clone(),
            dg2.horizontal().clone(),
            g3.table().clone(),
            point_groupoid(),
        )
        .unwrap_err();
        assert_eq!(err, DoubleStructureError::VerticalObjectsMismatch);
    }
}
