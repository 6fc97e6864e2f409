//! Finite groups as one-object groupoid tables.
//!
//! A [`FiniteGroupTable`] wraps a [`FiniteGroupoidTable`] with a single
//! object, caching the identity and exposing total multiplication. Subgroups
//! are element lists checked for closure; centrality is deliberately not a
//! construction invariant, because non-central subgroups are wanted as
//! negative fixtures.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::groupoid::{ArrowId, FiniteGroupoidTable};

/// Shared object name for one-object tables, so side groupoids built from
/// groups and points interoperate without renaming.
pub const POINT: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NotOneObject(usize),
    UnknownElement(String),
    NotClosed { left: String, right: String, product: String },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotOneObject(n) => {
                write!(f, "group table must have exactly one object, found {n}")
            }
            GroupError::UnknownElement(name) => write!(f, "unknown group element {name:?}"),
            GroupError::NotClosed { left, right, product } => write!(
                f,
                "subset not closed: {left:?} * {right:?} = {product:?} lies outside"
            ),
        }
    }
}

impl core::error::Error for GroupError {}

/// A finite group presented as its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: FiniteGroupoidTable,
    identity: ArrowId,
}

impl FiniteGroupTable {
    pub fn new(table: FiniteGroupoidTable) -> Result<Self, GroupError> {
        if table.object_count() != 1 {
            return Err(GroupError::NotOneObject(table.object_count()));
        }
        let identity = table.unit(table.objects().next().unwrap());
        Ok(FiniteGroupTable { table, identity })
    }

    pub fn table(&self) -> &FiniteGroupoidTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.arrow_count()
    }

    pub fn identity(&self) -> ArrowId {
        self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = ArrowId> {
        self.table.arrows()
    }

    pub fn name(&self, g: ArrowId) -> &str {
        self.table.arrow_name(g)
    }

    pub fn element(&self, name: &str) -> Option<ArrowId> {
        self.table.arrow_id(name)
    }

    /// Total multiplication. Panics only if the underlying table is not a
    /// one-object compose table, which `new` has excluded.
    pub fn op(&self, a: ArrowId, b: ArrowId) -> ArrowId {
        self.table
            .compose_opt(a, b)
            .expect("one-object table is totally composable")
    }

    pub fn inv(&self, a: ArrowId) -> ArrowId {
        self.table.inverse(a)
    }

    /// Elements commuting with everything, ascending.
    pub fn center(&self) -> Vec<ArrowId> {
        self.elements()
            .filter(|&z| {
                self.elements()
                    .all(|g| self.op(z, g) == self.op(g, z))
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Checks `elements` names a subset closed under product and inverse and
    /// containing the identity, and returns it as an ascending id list.
    pub fn subgroup(&self, elements: &[&str]) -> Result<Vec<ArrowId>, GroupError> {
        let mut ids = Vec::with_capacity(elements.len());
        for name in elements {
            ids.push(
                self.element(name)
                    .ok_or_else(|| GroupError::UnknownElement((*name).to_string()))?,
            );
        }
        ids.sort_unstable();
        ids.dedup();
        if ids.binary_search(&self.identity).is_err() {
            return Err(GroupError::NotClosed {
                left: self.name(self.identity).to_string(),
                right: self.name(self.identity).to_string(),
                product: self.name(self.identity).to_string(),
            });
        }
        for &a in &ids {
            for &b in &ids {
                let p = self.op(a, b);
                if ids.binary_search(&p).is_err() {
                    return Err(GroupError::NotClosed {
                        left: self.name(a).to_string(),
                        right: self.name(b).to_string(),
                        product: self.name(p).to_string(),
                    });
                }
            }
            let i = self.inv(a);
            if ids.binary_search(&i).is_err() {
                return Err(GroupError::NotClosed {
                    left: self.name(a).to_string(),
                    right: self.name(a).to_string(),
                    product: self.name(i).to_string(),
                });
            }
        }
        Ok(ids)
    }

    /// True iff every element of `sub` commutes with every group element.
    pub fn is_central(&self, sub: &[ArrowId]) -> bool {
        sub.iter()
            .all(|&k| self.elements().all(|g| self.op(k, g) == self.op(g, k)))
    }

    /// Builds the group table from an element list and a multiplication
    /// closure. Identity and inverses are found by scanning, so the closure
    /// must be a genuine group law on the names.
    pub fn from_op(
        names: &[String],
        op: impl Fn(&str, &str) -> String,
    ) -> Result<Self, crate::groupoid::StructureError> {
        let objects = alloc::vec![POINT.to_string()];
        let arrows: Vec<(String, String, String)> = names
            .iter()
            .map(|n| (n.clone(), POINT.to_string(), POINT.to_string()))
            .collect();

        // The identity is the e with e*g = g for all g.
        let identity = names
            .iter()
            .find(|e| names.iter().all(|g| op(e, g) == **g))
            .expect("group law has an identity")
            .clone();
        let units = alloc::vec![(POINT.to_string(), identity.clone())];

        let mut compose = Vec::with_capacity(names.len() * names.len());
        for a in names {
            for b in names {
                compose.push((a.clone(), b.clone(), op(a, b)));
            }
        }
        let inverse: Vec<(String, String)> = names
            .iter()
            .map(|a| {
                let ai = names
                    .iter()
                    .find(|b| op(a, b) == identity)
                    .expect("group law has inverses")
                    .clone();
                (a.clone(), ai)
            })
            .collect();

        let table = FiniteGroupoidTable::from_parts(objects, arrows, units, compose, inverse)?;
        Ok(FiniteGroupTable::new(table).expect("one object by construction"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn center_of_s3_is_trivial() {
        let g = fixtures::symmetric_group(3);
        let z = g.center();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0], g.identity());
    }

    #[test]
    fn center_of_q8_is_plus_minus_one() {
        let g = fixtures::quaternion_group();
        let z: Vec<&str> = g.center().iter().map(|&a| g.name(a)).collect();
        assert_eq!(z, ["-1", "1"]);
    }

    #[test]
    fn subgroup_rejects_non_closed_subsets() {
        let g = fixtures::cyclic_group(4);
        assert!(g.table().validate("z4").is_valid());
        let err = g.subgroup(&["0", "1"]).unwrap_err();
        assert!(matches!(err, GroupError::NotClosed { .. }));
        let ok = g.subgroup(&["0", "2"]).unwrap();
        assert_eq!(ok.len(), 2);
        assert!(g.is_central(&ok));
    }

    #[test]
    fn a3_is_normal_but_not_central_in_s3() {
        let g = fixtures::symmetric_group(3);
        let a3 = fixtures::alternating_subgroup_s3(&g);
        assert_eq!(a3.len(), 3);
        assert!(!g.is_central(&a3));
    }
}
