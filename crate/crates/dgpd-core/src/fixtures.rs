//! Canonical finite fixtures: groups, groupoids, double groupoids,
//! representations, and seeded random generators.
//!
//! Everything here is constructed programmatically from first principles
//! (permutation composition, quaternion sign rules, character formulas), then
//! cross-checked by the validators in the rest of the crate. No table is
//! copied in by hand.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::compact::{FiniteFn, UnitaryRep};
use crate::double::{
    central_action_double, from_group, point_groupoid, DoubleGroupoid,
};
use crate::group::{FiniteGroupTable, POINT};
use crate::groupoid::{ArrowId, FiniteCategoryTable, FiniteGroupoidTable};

/// The cyclic group Z/n with elements named by their residues.
pub fn cyclic_group(n: u32) -> FiniteGroupTable {
    assert!(n > 0, "cyclic group needs at least one element");
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FiniteGroupTable::from_op(&names, |a, b| {
        let x: u32 = a.parse().unwrap();
        let y: u32 = b.parse().unwrap();
        ((x + y) % n).to_string()
    })
    .expect("cyclic table is well formed")
}

/// Direct product, with elements named `a|b`. The separator never collides
/// with the `(κ,g)` naming used for action squares.
pub fn direct_product(g: &FiniteGroupTable, h: &FiniteGroupTable) -> FiniteGroupTable {
    let mut names = Vec::new();
    for a in g.elements() {
        for b in h.elements() {
            names.push(format!("{}|{}", g.name(a), h.name(b)));
        }
    }
    let split = |n: &str| -> (String, String) {
        let bar = n.find('|').expect("product names contain a separator");
        (n[..bar].to_string(), n[bar + 1..].to_string())
    };
    FiniteGroupTable::from_op(&names, |a, b| {
        let (a1, a2) = split(a);
        let (b1, b2) = split(b);
        let x = g.op(g.element(&a1).unwrap(), g.element(&b1).unwrap());
        let y = h.op(h.element(&a2).unwrap(), h.element(&b2).unwrap());
        format!("{}|{}", g.name(x), h.name(y))
    })
    .expect("product table is well formed")
}

/// The symmetric group S_n (desk scale: n ≤ 4), elements named by one-line
/// notation, product `(p*q)(i) = p(q(i))`.
pub fn symmetric_group(n: usize) -> FiniteGroupTable {
    assert!((1..=4).contains(&n), "one-line digit names need n <= 4");
    let mut perms = Vec::new();
    permutations(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let names: Vec<String> = perms.iter().map(|p| perm_name(p)).collect();
    FiniteGroupTable::from_op(&names, |a, b| {
        let p = parse_perm(a);
        let q = parse_perm(b);
        let pq: Vec<usize> = (0..p.len()).map(|i| p[q[i]]).collect();
        perm_name(&pq)
    })
    .expect("permutation table is well formed")
}

fn permutations(n: usize, pool: &mut Vec<usize>, fixed: usize, out: &mut Vec<Vec<usize>>) {
    if fixed == n {
        out.push(pool.clone());
        return;
    }
    for i in fixed..n {
        pool.swap(fixed, i);
        permutations(n, pool, fixed + 1, out);
        pool.swap(fixed, i);
    }
}

fn perm_name(p: &[usize]) -> String {
    p.iter().map(|d| char::from(b'0' + *d as u8)).collect()
}

fn parse_perm(name: &str) -> Vec<usize> {
    name.bytes().map(|b| (b - b'0') as usize).collect()
}

fn perm_is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// The even permutations of S3 as an element list (the subgroup A3).
pub fn alternating_subgroup_s3(s3: &FiniteGroupTable) -> Vec<ArrowId> {
    s3.elements()
        .filter(|&g| perm_is_even(&parse_perm(s3.name(g))))
        .collect()
}

/// The quaternion group Q8 = {±1, ±i, ±j, ±k}.
pub fn quaternion_group() -> FiniteGroupTable {
    const AXES: [&str; 4] = ["1", "i", "j", "k"];
    let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let parse = |s: &str| -> (i32, usize) {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        (sign, AXES.iter().position(|a| *a == body).unwrap())
    };
    FiniteGroupTable::from_op(&names, |a, b| {
        let (sa, xa) = parse(a);
        let (sb, xb) = parse(b);
        let (sp, xp) = quaternion_axes(xa, xb);
        let sign = sa * sb * sp;
        let body = AXES[xp];
        if sign < 0 {
            format!("-{body}")
        } else {
            body.to_string()
        }
    })
    .expect("quaternion table is well formed")
}

/// Product of quaternion axes 1,i,j,k by index, returning (sign, axis).
fn quaternion_axes(a: usize, b: usize) -> (i32, usize) {
    match (a, b) {
        (0, x) => (1, x),
        (x, 0) => (1, x),
        (x, y) if x == y => (-1, 0),
        // i*j = k and cyclic; reversed order flips the sign.
        (1, 2) => (1, 3),
        (2, 3) => (1, 1),
        (3, 1) => (1, 2),
        (2, 1) => (-1, 3),
        (3, 2) => (-1, 1),
        (1, 3) => (-1, 2),
        _ => unreachable!("axis indices are 0..4"),
    }
}

/// The pair groupoid on points 1..=n: arrow `(i,j)` runs j -> i, so
/// `(i,j)∘(j,l) = (i,l)`, matching matrix-unit index order.
pub fn pair_groupoid(n: u32) -> FiniteGroupoidTable {
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut units = Vec::new();
    let mut compose = Vec::new();
    let mut inverse = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            arrows.push((format!("({i},{j})"), j.to_string(), i.to_string()));
            inverse.push((format!("({i},{j})"), format!("({j},{i})")));
            for l in 1..=n {
                compose.push((format!("({i},{j})"), format!("({j},{l})"), format!("({i},{l})")));
            }
        }
        units.push((i.to_string(), format!("({i},{i})")));
    }
    FiniteGroupoidTable::from_parts(objects, arrows, units, compose, inverse)
        .expect("pair groupoid is well formed")
}

/// The action groupoid of Z/2 on Z/4, the generator acting by +2. Squares
/// are named with the abstract Z/2 labels: `(1,2)` is the generator sitting
/// over the point 2, with target 0.
pub fn z2_on_z4() -> FiniteGroupoidTable {
    let embed = |k: u32| 2 * k; // Z/2 -> Z/4
    let objects: Vec<String> = (0..4u32).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut units = Vec::new();
    let mut compose = Vec::new();
    let mut inverse = Vec::new();
    for k in 0..2u32 {
        for g in 0..4u32 {
            let t = (embed(k) + g) % 4;
            arrows.push((format!("({k},{g})"), g.to_string(), t.to_string()));
            inverse.push((format!("({k},{g})"), format!("({},{})", (2 - k) % 2, t)));
            for kp in 0..2u32 {
                compose.push((
                    format!("({kp},{t})"),
                    format!("({k},{g})"),
                    format!("({},{})", (kp + k) % 2, g),
                ));
            }
        }
    }
    for g in 0..4u32 {
        units.push((g.to_string(), format!("(0,{g})")));
    }
    FiniteGroupoidTable::from_parts(objects, arrows, units, compose, inverse)
        .expect("action groupoid is well formed")
}

/// Z/n as a category with one compose entry replaced, for exercising the
/// axiom scanner on a corrupted table.
pub fn cyclic_group_with_bad_entry(
    n: u32,
    left: &str,
    right: &str,
    wrong: &str,
) -> FiniteCategoryTable {
    let objects = alloc::vec![POINT.to_string()];
    let arrows: Vec<(String, String, String)> = (0..n)
        .map(|i| (i.to_string(), POINT.to_string(), POINT.to_string()))
        .collect();
    let units = alloc::vec![(POINT.to_string(), "0".to_string())];
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let value = if a.to_string() == left && b.to_string() == right {
                wrong.to_string()
            } else {
                ((a + b) % n).to_string()
            };
            compose.push((a.to_string(), b.to_string(), value));
        }
    }
    FiniteCategoryTable::from_parts(objects, arrows, units, compose)
        .expect("corrupted table is still structurally well formed")
}

/// Both structures equal to the group itself over the point. A valid double
/// groupoid exactly when the group is abelian; used by the random generator
/// to produce products-equal instances.
pub fn equal_pair_double(g: &FiniteGroupTable) -> DoubleGroupoid {
    DoubleGroupoid::new(
        g.table().clone(),
        g.table().clone(),
        point_groupoid(),
        point_groupoid(),
    )
    .expect("group tables align over the point")
}

/// Deterministic stream cipher RNG used by every seeded fixture.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A seeded valid double groupoid together with a label describing it.
/// Draws from three families: products-equal doubles of abelian groups,
/// group doubles, and central action doubles.
pub fn random_double(rng: &mut ChaCha8Rng) -> (DoubleGroupoid, String) {
    use rand::Rng;
    match rng.gen_range(0..3u8) {
        0 => {
            let (g, name) = random_abelian_group(rng);
            (equal_pair_double(&g), format!("equal-pair({name})"))
        }
        1 => {
            let (g, name) = random_group(rng);
            (from_group(&g), format!("from-group({name})"))
        }
        _ => {
            let (g, name) = random_group(rng);
            // Random cyclic subgroup of the center: always central.
            let center = g.center();
            let z = center[rng.gen_range(0..center.len())];
            let k = cyclic_closure(&g, z);
            let label = format!("central-action({name}, <{}>)", g.name(z));
            (
                central_action_double(&g, &k).expect("central subgroups are closed"),
                label,
            )
        }
    }
}

/// Elements of the cyclic subgroup generated by `z`, ascending.
pub fn cyclic_closure(g: &FiniteGroupTable, z: ArrowId) -> Vec<ArrowId> {
    let mut out = alloc::vec![g.identity()];
    let mut cur = z;
    while cur != g.identity() {
        out.push(cur);
        cur = g.op(cur, z);
    }
    out.sort_unstable();
    out
}

pub fn random_abelian_group(rng: &mut ChaCha8Rng) -> (FiniteGroupTable, String) {
    use rand::Rng;
    match rng.gen_range(0..6u8) {
        0 => (cyclic_group(2), "z2".to_string()),
        1 => (cyclic_group(3), "z3".to_string()),
        2 => (cyclic_group(4), "z4".to_string()),
        3 => (cyclic_group(5), "z5".to_string()),
        4 => (
            direct_product(&cyclic_group(2), &cyclic_group(2)),
            "z2xz2".to_string(),
        ),
        _ => (
            direct_product(&cyclic_group(2), &cyclic_group(4)),
            "z2xz4".to_string(),
        ),
    }
}

pub fn random_group(rng: &mut ChaCha8Rng) -> (FiniteGroupTable, String) {
    use rand::Rng;
    match rng.gen_range(0..8u8) {
        0..=5 => random_abelian_group(rng),
        6 => (symmetric_group(3), "s3".to_string()),
        _ => (quaternion_group(), "q8".to_string()),
    }
}

/// All characters of a cyclic group whose elements are named by residues:
/// `chi{a}(g) = e^{2πi·a·g/n}`.
pub fn cyclic_characters(g: &FiniteGroupTable) -> Vec<UnitaryRep> {
    let n = g.order() as i64;
    (0..n)
        .map(|a| {
            let matrices: Vec<Vec<Complex64>> = g
                .elements()
                .map(|e| {
                    let residue: i64 = g.name(e).parse().expect("residue-named element");
                    alloc::vec![Complex64::cis(
                        core::f64::consts::TAU * (a * residue) as f64 / n as f64
                    )]
                })
                .collect();
            UnitaryRep::new(g, &format!("chi{a}"), 1, matrices, true)
                .expect("character shape is fixed")
        })
        .collect()
}

/// The complete irreducible list for S3 in the order
/// `[trivial, sign, standard 2-dim]`.
///
/// The 2-dim matrices are computed, not transcribed: the permutation action
/// on coordinates is compressed onto the orthonormal plane basis
/// `(1,−1,0)/√2`, `(1,1,−2)/√6` orthogonal to `(1,1,1)`, which the action
/// preserves, so the resulting real matrices multiply like the permutations
/// themselves.
pub fn s3_irreps(g: &FiniteGroupTable) -> Vec<UnitaryRep> {
    let one = |_p: &[usize]| alloc::vec![Complex64::new(1.0, 0.0)];
    let sign = |p: &[usize]| {
        let s = if perm_is_even(p) { 1.0 } else { -1.0 };
        alloc::vec![Complex64::new(s, 0.0)]
    };
    let inv_sqrt2 = Float::sqrt(2.0f64).recip();
    let inv_sqrt6 = Float::sqrt(6.0f64).recip();
    let plane = [
        [inv_sqrt2, -inv_sqrt2, 0.0],
        [inv_sqrt6, inv_sqrt6, -2.0 * inv_sqrt6],
    ];
    let standard = |p: &[usize]| {
        let mut m = alloc::vec![Complex64::default(); 4];
        for a in 0..2 {
            for b in 0..2 {
                // Push the basis vector through the coordinate permutation,
                // then project back: entry = ⟨plane_a, P_p · plane_b⟩.
                let mut moved = [0.0f64; 3];
                for (j, &x) in plane[b].iter().enumerate() {
                    moved[p[j]] = x;
                }
                let entry: f64 = plane[a].iter().zip(moved).map(|(x, y)| x * y).sum();
                m[a * 2 + b] = Complex64::new(entry, 0.0);
            }
        }
        m
    };

    let build = |name: &str, dim: usize, f: &dyn Fn(&[usize]) -> Vec<Complex64>| {
        let matrices: Vec<Vec<Complex64>> = g
            .elements()
            .map(|e| f(&parse_perm(g.name(e))))
            .collect();
        UnitaryRep::new(g, name, dim, matrices, true).expect("fixed shape")
    };
    alloc::vec![
        build("triv", 1, &one),
        build("sgn", 1, &sign),
        build("rho2", 2, &standard),
    ]
}

/// The 3-dim coordinate-permutation representation of S3 — reducible (it
/// contains the trivial line), kept as a negative control.
pub fn s3_permutation_rep(g: &FiniteGroupTable) -> UnitaryRep {
    let matrices: Vec<Vec<Complex64>> = g
        .elements()
        .map(|e| {
            let p = parse_perm(g.name(e));
            let mut m = alloc::vec![Complex64::default(); 9];
            for (j, &pj) in p.iter().enumerate() {
                m[pj * 3 + j] = Complex64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    UnitaryRep::new(g, "perm3", 3, matrices, false).expect("fixed shape")
}

/// The complete irreducible list for Q8 in the order
/// `[trivial, chi-i, chi-j, chi-k, 2-dim]`.
///
/// Each sign character is +1 exactly on one of the index-2 subgroups
/// `{±1, ±i}`, `{±1, ±j}`, `{±1, ±k}`. The 2-dim representation sends
/// `i ↦ diag(i, −i)`, `j ↦ [[0,1],[−1,0]]`, `k ↦ [[0,i],[i,0]]`, with
/// negated elements mapped to negated matrices.
pub fn q8_irreps(g: &FiniteGroupTable) -> Vec<UnitaryRep> {
    let sign_char = |name: &str, kernel_axis: char| {
        let matrices: Vec<Vec<Complex64>> = g
            .elements()
            .map(|e| {
                let label = g.name(e).trim_start_matches('-');
                let inside = label == "1" || label.starts_with(kernel_axis);
                let s = if inside { 1.0 } else { -1.0 };
                alloc::vec![Complex64::new(s, 0.0)]
            })
            .collect();
        UnitaryRep::new(g, name, 1, matrices, true).expect("fixed shape")
    };
    let trivial = {
        let matrices: Vec<Vec<Complex64>> = g
            .elements()
            .map(|_| alloc::vec![Complex64::new(1.0, 0.0)])
            .collect();
        UnitaryRep::new(g, "triv", 1, matrices, true).expect("fixed shape")
    };
    let two_dim = {
        let i = Complex64::new(0.0, 1.0);
        let o = Complex64::default();
        let l = Complex64::new(1.0, 0.0);
        let base = |axis: &str| -> Vec<Complex64> {
            match axis {
                "1" => alloc::vec![l, o, o, l],
                "i" => alloc::vec![i, o, o, -i],
                "j" => alloc::vec![o, l, -l, o],
                "k" => alloc::vec![o, i, i, o],
                _ => unreachable!("axis labels are 1, i, j, k"),
            }
        };
        let matrices: Vec<Vec<Complex64>> = g
            .elements()
            .map(|e| {
                let name = g.name(e);
                let negated = name.starts_with('-');
                let m = base(name.trim_start_matches('-'));
                if negated {
                    m.into_iter().map(|z| -z).collect()
                } else {
                    m
                }
            })
            .collect();
        UnitaryRep::new(g, "rho2", 2, matrices, true).expect("fixed shape")
    };
    alloc::vec![
        trivial,
        sign_char("chi-i", 'i'),
        sign_char("chi-j", 'j'),
        sign_char("chi-k", 'k'),
        two_dim,
    ]
}

/// A function with independent re/im parts uniform in `[-1, 1]` per element.
pub fn random_finite_fn(g: &FiniteGroupTable, rng: &mut ChaCha8Rng) -> FiniteFn {
    let values: Vec<Complex64> = (0..g.order())
        .map(|_| Complex64::new(uniform_pm1(rng), uniform_pm1(rng)))
        .collect();
    FiniteFn::from_values(g, values).expect("length matches the order")
}

fn uniform_pm1(rng: &mut ChaCha8Rng) -> f64 {
    use rand_chacha::rand_core::RngCore;
    // 53 uniform bits, mapped affinely onto [-1, 1].
    let bits = rng.next_u64() >> 11;
    (bits as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
}
