//! Haar systems on finite groupoids and double groupoids.
//!
//! A Haar system assigns a positive rational weight to each arrow; the
//! defining invariance, `weight(g∘h) = weight(h)` for every composable pair,
//! is the atomic form of left translations being measure preserving between
//! target fibers. Double Haar systems add a weight family on squares that is
//! invariant under both translations, plus Haar systems on the two side
//! groupoids. [`induce_haar`] produces the Haar systems on the vertical and
//! horizontal structures determined by that data, and certifies the full
//! fiber-integration diagram by exact rational arithmetic on the delta basis.
//!
//! Empirically, on every fixture family in this crate the double invariance
//! forces the square weights to be constant on each double-target fiber, so
//! induced systems are uniform there as well; nothing below assumes it.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::double::{Corner, DoubleGroupoid};
use crate::groupoid::{ArrowId, FiniteGroupoidTable, ObjectId, VIOLATION_CAP};
use crate::report::{AxiomScan, ValidationReport};
use crate::scalar::Rational;

#[derive(Debug, Clone)]
pub enum HaarError {
    /// Weight vector does not bind to the arrow set it is used with.
    ContextMismatch,
    UnknownArrow(String),
    DuplicateWeight(String),
    MissingWeight(String),
    /// Input data failed validation; the report carries the witnesses.
    InvalidInput(Box<ValidationReport>),
}

impl fmt::Display for HaarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HaarError::ContextMismatch => {
                write!(f, "weight system bound to a different arrow set")
            }
            HaarError::UnknownArrow(n) => write!(f, "weight listed for unknown arrow {n:?}"),
            HaarError::DuplicateWeight(n) => write!(f, "weight listed twice for arrow {n:?}"),
            HaarError::MissingWeight(n) => write!(f, "no weight listed for arrow {n:?}"),
            HaarError::InvalidInput(report) => write!(
                f,
                "input failed validation ({} violations)",
                report.violation_count()
            ),
        }
    }
}

impl core::error::Error for HaarError {}

/// Positive rational weight per arrow of one groupoid (or per square of a
/// double groupoid; squares are the arrows of the top tables).
#[derive(Debug, Clone, PartialEq)]
pub struct HaarSystem {
    weights: Vec<Rational>,
    context: u64,
}

impl HaarSystem {
    /// Counting measure: every arrow weighs 1.
    pub fn counting(gpd: &FiniteGroupoidTable) -> Self {
        HaarSystem {
            weights: alloc::vec![Rational::from_integer(1); gpd.arrow_count()],
            context: gpd.context_id(),
        }
    }

    /// Constant weight `c` on every arrow.
    pub fn uniform(gpd: &FiniteGroupoidTable, c: Rational) -> Self {
        HaarSystem {
            weights: alloc::vec![c; gpd.arrow_count()],
            context: gpd.context_id(),
        }
    }

    /// Weights by arrow name; must mention every arrow exactly once.
    pub fn from_named_weights(
        gpd: &FiniteGroupoidTable,
        entries: &[(String, Rational)],
    ) -> Result<Self, HaarError> {
        let mut weights: Vec<Option<Rational>> = alloc::vec![None; gpd.arrow_count()];
        for (name, w) in entries {
            let a = gpd
                .arrow_id(name)
                .ok_or_else(|| HaarError::UnknownArrow(name.clone()))?;
            if weights[a.index()].replace(*w).is_some() {
                return Err(HaarError::DuplicateWeight(name.clone()));
            }
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    HaarError::MissingWeight(gpd.category().arrow_names()[i].clone())
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(HaarSystem {
            weights,
            context: gpd.context_id(),
        })
    }

    pub fn from_weights(gpd: &FiniteGroupoidTable, weights: Vec<Rational>) -> Result<Self, HaarError> {
        if weights.len() != gpd.arrow_count() {
            return Err(HaarError::ContextMismatch);
        }
        Ok(HaarSystem {
            weights,
            context: gpd.context_id(),
        })
    }

    pub fn weight(&self, a: ArrowId) -> Rational {
        self.weights[a.index()]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn context_id(&self) -> u64 {
        self.context
    }

    pub fn bound_to(&self, gpd: &FiniteGroupoidTable) -> bool {
        self.context == gpd.context_id()
    }

    /// Same system scaled by `c > 0`. Invariance is scale-free.
    pub fn scale(&self, c: Rational) -> Self {
        HaarSystem {
            weights: self.weights.iter().map(|w| *w * c).collect(),
            context: self.context,
        }
    }

    /// Positivity plus left invariance `weight(g∘h) = weight(h)` over every
    /// composable pair.
    pub fn validate(&self, gpd: &FiniteGroupoidTable, subject: &str) -> ValidationReport {
        let mut report = ValidationReport::new(subject);
        if !self.bound_to(gpd) {
            let mut scan = AxiomScan::new("context");
            scan.tick();
            scan.violate(
                Vec::new(),
                "weight system bound to a different arrow set".to_string(),
            );
            report.push(scan.finish());
            return report;
        }

        let mut scan = AxiomScan::new("positivity");
        for a in gpd.arrows() {
            scan.tick();
            if self.weight(a) <= Rational::zero() && scan.violation_len() < VIOLATION_CAP {
                scan.violate(
                    alloc::vec![gpd.arrow_name(a).to_string()],
                    format!("weight {} is not positive", self.weight(a)),
                );
            }
        }
        report.push(scan.finish());

        let mut scan = AxiomScan::new("left-invariance");
        for (g, h) in gpd.composable_pairs() {
            scan.tick();
            let gh = gpd
                .compose_opt(g, h)
                .expect("validated table lists composable pairs");
            if self.weight(gh) != self.weight(h) && scan.violation_len() < VIOLATION_CAP {
                scan.violate(
                    alloc::vec![
                        gpd.arrow_name(g).to_string(),
                        gpd.arrow_name(h).to_string(),
                    ],
                    format!(
                        "weight(g∘h) = {} but weight(h) = {}",
                        self.weight(gh),
                        self.weight(h)
                    ),
                );
            }
        }
        report.push(scan.finish());

        report
    }

    /// `∫_{t^{-1}(x)} u dμ_x`: the weighted sum of `u` over the target fiber.
    pub fn fiber_integral(
        &self,
        gpd: &FiniteGroupoidTable,
        u: &[Rational],
        x: ObjectId,
    ) -> Rational {
        gpd.target_fiber(x)
            .iter()
            .map(|&a| u[a.index()] * self.weight(a))
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

/// Square weights invariant under both translations, plus Haar systems on
/// the side groupoids.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleHaarSystem {
    pub mu_d: HaarSystem,
    pub mu_k: HaarSystem,
    pub mu_h: HaarSystem,
}

impl DoubleHaarSystem {
    pub fn counting(dg: &DoubleGroupoid) -> Self {
        DoubleHaarSystem {
            mu_d: HaarSystem::counting(dg.vertical()),
            mu_k: HaarSystem::counting(dg.side_k()),
            mu_h: HaarSystem::counting(dg.side_h()),
        }
    }

    /// Component Haar validity, positivity of the square weights, and the
    /// two-sided invariance `μ^D(a∘b) = μ^D(b)`, `μ^D(a•b) = μ^D(b)`.
    pub fn validate(&self, dg: &DoubleGroupoid, subject: &str) -> ValidationReport {
        let mut report = ValidationReport::new(subject);
        report.absorb("mu_k", self.mu_k.validate(dg.side_k(), "mu_k"));
        report.absorb("mu_h", self.mu_h.validate(dg.side_h(), "mu_h"));

        if !self.mu_d.bound_to(dg.vertical()) {
            let mut scan = AxiomScan::new("mu_d: context");
            scan.tick();
            scan.violate(
                Vec::new(),
                "square weights bound to a different square set".to_string(),
            );
            report.push(scan.finish());
            return report;
        }

        let mut scan = AxiomScan::new("mu_d: positivity");
        for a in dg.squares() {
            scan.tick();
            if self.mu_d.weight(a) <= Rational::zero() && scan.violation_len() < VIOLATION_CAP {
                scan.violate(
                    alloc::vec![dg.square_name(a).to_string()],
                    format!("weight {} is not positive", self.mu_d.weight(a)),
                );
            }
        }
        report.push(scan.finish());

        for (label, table) in [
            ("mu_d: vertical-invariance", dg.vertical()),
            ("mu_d: horizontal-invariance", dg.horizontal()),
        ] {
            let mut scan = AxiomScan::new(label);
            for (a, b) in table.composable_pairs() {
                scan.tick();
                let ab = table.compose_opt(a, b).expect("listed composable pair");
                if self.mu_d.weight(ab) != self.mu_d.weight(b)
                    && scan.violation_len() < VIOLATION_CAP
                {
                    scan.violate(
                        alloc::vec![
                            dg.square_name(a).to_string(),
                            dg.square_name(b).to_string(),
                        ],
                        format!(
                            "weight(product) = {} but weight(b) = {}",
                            self.mu_d.weight(ab),
                            self.mu_d.weight(b)
                        ),
                    );
                }
            }
            report.push(scan.finish());
        }

        report
    }
}

/// The Haar systems induced on the two top structures, with the certificate
/// that the whole fiber-integration diagram commutes.
#[derive(Debug, Clone)]
pub struct InducedHaar {
    /// Haar system for the vertical structure.
    pub mu_circ: HaarSystem,
    /// Haar system for the horizontal structure.
    pub mu_bullet: HaarSystem,
    /// Exact-arithmetic certificate: validity of both induced systems, both
    /// triangle identities, and the mixed-path square, all on delta bases.
    pub diagram: ValidationReport,
}

/// Builds the induced Haar systems: the `∘`-weight of a square is its square
/// weight times the side_h weight of its horizontal target edge, and
/// symmetrically for `•`. Requires `dh` to validate against `dg`.
pub fn induce_haar(dg: &DoubleGroupoid, dh: &DoubleHaarSystem) -> Result<InducedHaar, HaarError> {
    let dh_report = dh.validate(dg, "double haar input");
    if !dh_report.is_valid() {
        return Err(HaarError::InvalidInput(Box::new(dh_report)));
    }

    let mu_circ: Vec<Rational> = dg
        .squares()
        .map(|b| dh.mu_d.weight(b) * dh.mu_h.weight(dg.h_target(b)))
        .collect();
    let mu_bullet: Vec<Rational> = dg
        .squares()
        .map(|b| dh.mu_d.weight(b) * dh.mu_k.weight(dg.v_target(b)))
        .collect();
    let mu_circ = HaarSystem::from_weights(dg.vertical(), mu_circ)?;
    let mu_bullet = HaarSystem::from_weights(dg.horizontal(), mu_bullet)?;

    let mut diagram = ValidationReport::new("induced haar diagram");
    diagram.absorb("mu_circ", mu_circ.validate(dg.vertical(), "mu_circ"));
    diagram.absorb("mu_bullet", mu_bullet.validate(dg.horizontal(), "mu_bullet"));
    scan_triangles(dg, dh, &mu_circ, &mu_bullet, &mut diagram);
    scan_fubini(dg, dh, &mut diagram);

    Ok(InducedHaar {
        mu_circ,
        mu_bullet,
        diagram,
    })
}

/// Function on corners, keyed sparsely. Intermediate stage of the diagram.
type CornerFn = BTreeMap<Corner, Rational>;

/// `∫dμ^D`: integrate a square function over double-target fibers.
pub fn integrate_squares(
    dg: &DoubleGroupoid,
    dh: &DoubleHaarSystem,
    u: &[Rational],
) -> CornerFn {
    let mut out = CornerFn::new();
    for &c in dg.corners() {
        let mut acc = Rational::zero();
        for &b in dg.corner_fiber(c) {
            acc = acc + u[b.index()] * dh.mu_d.weight(b);
        }
        if !acc.is_zero() {
            out.insert(c, acc);
        }
    }
    out
}

/// `∫dμ̄^H`: collapse the h component of a corner function, yielding a
/// function on side_k arrows.
pub fn integrate_corners_h(
    dg: &DoubleGroupoid,
    mu_h: &HaarSystem,
    v: &CornerFn,
) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::zero(); dg.side_k().arrow_count()];
    for (c, value) in v {
        out[c.k.index()] = out[c.k.index()] + *value * mu_h.weight(c.h);
    }
    out
}

/// `∫dμ̄^K`: collapse the k component of a corner function, yielding a
/// function on side_h arrows.
pub fn integrate_corners_k(
    dg: &DoubleGroupoid,
    mu_k: &HaarSystem,
    v: &CornerFn,
) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::zero(); dg.side_h().arrow_count()];
    for (c, value) in v {
        out[c.h.index()] = out[c.h.index()] + *value * mu_k.weight(c.k);
    }
    out
}

fn scan_triangles(
    dg: &DoubleGroupoid,
    dh: &DoubleHaarSystem,
    mu_circ: &HaarSystem,
    mu_bullet: &HaarSystem,
    diagram: &mut ValidationReport,
) {
    let mut circ = AxiomScan::new("circ-triangle");
    let mut bullet = AxiomScan::new("bullet-triangle");
    for b in dg.squares() {
        let mut delta = alloc::vec![Rational::zero(); dg.square_count()];
        delta[b.index()] = Rational::from_integer(1);
        let through_corners = integrate_squares(dg, dh, &delta);

        circ.tick();
        let via_corners = integrate_corners_h(dg, &dh.mu_h, &through_corners);
        let direct: Vec<Rational> = dg
            .side_k()
            .arrows()
            .map(|k| {
                // ∫ over the ∘-target fiber of k with μ°.
                dg.squares()
                    .filter(|&s| dg.v_target(s) == k)
                    .map(|s| delta[s.index()] * mu_circ.weight(s))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect();
        if via_corners != direct && circ.violation_len() < VIOLATION_CAP {
            circ.violate(
                alloc::vec![dg.square_name(b).to_string()],
                "corner path and direct vertical integration disagree".to_string(),
            );
        }

        bullet.tick();
        let via_corners = integrate_corners_k(dg, &dh.mu_k, &through_corners);
        let direct: Vec<Rational> = dg
            .side_h()
            .arrows()
            .map(|h| {
                dg.squares()
                    .filter(|&s| dg.h_target(s) == h)
                    .map(|s| delta[s.index()] * mu_bullet.weight(s))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect();
        if via_corners != direct && bullet.violation_len() < VIOLATION_CAP {
            bullet.violate(
                alloc::vec![dg.square_name(b).to_string()],
                "corner path and direct horizontal integration disagree".to_string(),
            );
        }
    }
    diagram.push(circ.finish());
    diagram.push(bullet.finish());
}

/// The mixed square: integrating a corner function first over h then k-fibers
/// down to base objects must equal the other order, exactly.
fn scan_fubini(dg: &DoubleGroupoid, dh: &DoubleHaarSystem, diagram: &mut ValidationReport) {
    let mut scan = AxiomScan::new("fubini-square");
    for &c0 in dg.corners() {
        scan.tick();
        let mut delta = CornerFn::new();
        delta.insert(c0, Rational::from_integer(1));

        let on_k = integrate_corners_h(dg, &dh.mu_h, &delta);
        let left: Vec<Rational> = dg
            .side_k()
            .category()
            .objects()
            .map(|m| dh.mu_k.fiber_integral(dg.side_k(), &on_k, m))
            .collect();

        let on_h = integrate_corners_k(dg, &dh.mu_k, &delta);
        let right: Vec<Rational> = dg
            .side_h()
            .category()
            .objects()
            .map(|m| dh.mu_h.fiber_integral(dg.side_h(), &on_h, m))
            .collect();

        if left != right && scan.violation_len() < VIOLATION_CAP {
            scan.violate(
                alloc::vec![dg.corner_name(c0)],
                "h-then-k and k-then-h integration paths disagree".to_string(),
            );
        }
    }
    diagram.push(scan.finish());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::from_group;
    use crate::fixtures;

    #[test]
    fn counting_and_uniform_haar_are_valid_on_cyclic_groups() {
        let g = fixtures::cyclic_group(3);
        let counting = HaarSystem::counting(g.table());
        assert!(counting.validate(g.table(), "counting z3").is_valid());
        let third = HaarSystem::uniform(g.table(), Rational::new(1, 3));
        assert!(third.validate(g.table(), "uniform z3").is_valid());
    }

    #[test]
    fn perturbed_pair_groupoid_weight_breaks_invariance() {
        let g = fixtures::pair_groupoid(3);
        let mut weights = alloc::vec![Rational::from_integer(1); g.arrow_count()];
        let bad = g.arrow_id("(1,2)").unwrap();
        weights[bad.index()] = Rational::from_integer(2);
        let h = HaarSystem::from_weights(&g, weights).unwrap();
        let report = h.validate(&g, "perturbed pair3");
        assert!(!report.is_valid());
        let inv = report
            .axioms
            .iter()
            .find(|a| a.axiom == "left-invariance")
            .unwrap();
        assert!(!inv.violations.is_empty());
    }

    #[test]
    fn action_groupoid_haar_systems_depend_only_on_the_anchor() {
        // On the Z/2-on-Z/4 action groupoid, invariance pins the weight of
        // (κ,g) to a function of g alone. Check such a system validates and
        // a κ-dependent one does not.
        let g = fixtures::z2_on_z4();
        let by_anchor = |name: &str| -> Rational {
            // name is "(κ,g)"; weight 1/(g+1).
            let inner = &name[1..name.len() - 1];
            let gpart: i64 = inner[inner.find(',').unwrap() + 1..].parse().unwrap();
            Rational::new(1, gpart + 1)
        };
        let weights: Vec<Rational> = g
            .arrows()
            .map(|a| by_anchor(g.arrow_name(a)))
            .collect();
        let h = HaarSystem::from_weights(&g, weights).unwrap();
        assert!(h.validate(&g, "anchored weights").is_valid());

        let mut bad = h.weights().to_vec();
        let target = g.arrow_id("(1,0)").unwrap();
        bad[target.index()] = Rational::new(7, 2);
        let hbad = HaarSystem::from_weights(&g, bad).unwrap();
        assert!(!hbad.validate(&g, "kappa-dependent weights").is_valid());
    }

    #[test]
    fn group_double_counting_induces_counting_on_both_structures() {
        let dg = from_group(&fixtures::cyclic_group(3));
        let dh = DoubleHaarSystem::counting(&dg);
        assert!(dh.validate(&dg, "counting double haar").is_valid());
        let induced = induce_haar(&dg, &dh).unwrap();
        assert!(induced.diagram.is_valid());
        let one = Rational::from_integer(1);
        assert!(induced.mu_circ.weights().iter().all(|w| *w == one));
        assert!(induced.mu_bullet.weights().iter().all(|w| *w == one));
    }

    #[test]
    fn induced_systems_scale_linearly_with_the_square_weights() {
        let g = fixtures::cyclic_group(4);
        let k = g.subgroup(&["0", "2"]).unwrap();
        let dg = crate::double::central_action_double(&g, &k).unwrap();
        let dh = DoubleHaarSystem::counting(&dg);
        let c = Rational::new(3, 7);
        let scaled = DoubleHaarSystem {
            mu_d: dh.mu_d.scale(c),
            mu_k: dh.mu_k.clone(),
            mu_h: dh.mu_h.clone(),
        };
        let base = induce_haar(&dg, &dh).unwrap();
        let bumped = induce_haar(&dg, &scaled).unwrap();
        assert!(bumped.diagram.is_valid());
        for b in dg.squares() {
            assert_eq!(bumped.mu_circ.weight(b), base.mu_circ.weight(b) * c);
            assert_eq!(bumped.mu_bullet.weight(b), base.mu_bullet.weight(b) * c);
        }
    }

    #[test]
    fn strict_2group_with_scaled_side_haar_composes_the_weights() {
        let g = fixtures::quaternion_group();
        let dg = crate::double::central_action_double(&g, &g.center()).unwrap();
        let half = Rational::new(1, 2);
        let dh = DoubleHaarSystem {
            mu_d: HaarSystem::counting(dg.vertical()),
            mu_k: HaarSystem::uniform(dg.side_k(), half),
            mu_h: HaarSystem::counting(dg.side_h()),
        };
        assert!(dh.validate(&dg, "scaled q8 double haar").is_valid());
        let induced = induce_haar(&dg, &dh).unwrap();
        assert!(induced.diagram.is_valid());
        for b in dg.squares() {
            assert_eq!(induced.mu_bullet.weight(b), half);
            assert_eq!(induced.mu_circ.weight(b), Rational::from_integer(1));
        }
    }

    #[test]
    fn triangle_determines_each_induced_weight() {
        // Perturbing a single induced weight must break the circ triangle:
        // the diagram determines the system uniquely.
        let dg = from_group(&fixtures::cyclic_group(3));
        let dh = DoubleHaarSystem::counting(&dg);
        let induced = induce_haar(&dg, &dh).unwrap();

        let mut bad = induced.mu_circ.weights().to_vec();
        bad[0] = bad[0] + Rational::new(1, 5);
        let bad = HaarSystem::from_weights(dg.vertical(), bad).unwrap();

        let mut diagram = ValidationReport::new("perturbed");
        scan_triangles(&dg, &dh, &bad, &induced.mu_bullet, &mut diagram);
        assert!(!diagram.is_valid());
    }

    #[test]
    fn invalid_double_haar_is_rejected_with_its_report() {
        let dg = from_group(&fixtures::cyclic_group(2));
        let mut dh = DoubleHaarSystem::counting(&dg);
        // Non-uniform weights on the horizontal group break invariance.
        let mut w = dh.mu_d.weights().to_vec();
        w[0] = Rational::from_integer(5);
        dh.mu_d = HaarSystem::from_weights(dg.vertical(), w).unwrap();
        match induce_haar(&dg, &dh) {
            Err(HaarError::InvalidInput(report)) => assert!(!report.is_valid()),
            other => panic!("expected InvalidInput, got {other:?}"),
        }
    }
}
