//! JSON file formats: structure files, double-groupoid files, Haar weight
//! files, algebra elements, torus functions, and suite manifests.
//!
//! All maps are `BTreeMap`s and all emitters walk tables in id order, so a
//! round trip through these types is byte-stable.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use dgpd_core::convolution::AlgebraElement;
use dgpd_core::double::DoubleGroupoid;
use dgpd_core::haar::{DoubleHaarSystem, HaarSystem};
use dgpd_core::nctorus::TorusFunction;
use dgpd_core::scalar::{Rational, Scalar};
use dgpd_core::{FiniteCategoryTable, FiniteGroupoidTable};

/// One arrow of a structure file: an id plus its endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowDef {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// A finite category or groupoid as explicit tables. Compose entries not
/// listed are non-composable; an `inverse` table upgrades the category to a
/// groupoid and is never inferred.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDef>,
    pub units: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, String>>,
}

impl StructureFile {
    pub fn to_category(&self) -> Result<FiniteCategoryTable> {
        FiniteCategoryTable::from_parts(
            self.objects.clone(),
            self.arrows
                .iter()
                .map(|a| (a.id.clone(), a.source.clone(), a.target.clone()))
                .collect(),
            self.units
                .iter()
                .map(|(x, u)| (x.clone(), u.clone()))
                .collect(),
            self.compose
                .iter()
                .map(|[a, b, ab]| (a.clone(), b.clone(), ab.clone()))
                .collect(),
        )
        .map_err(|e| anyhow!("structure tables: {e}"))
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoidTable> {
        let inverse = self
            .inverse
            .as_ref()
            .ok_or_else(|| anyhow!("structure has no inverse table; a groupoid requires one"))?;
        FiniteGroupoidTable::from_parts(
            self.objects.clone(),
            self.arrows
                .iter()
                .map(|a| (a.id.clone(), a.source.clone(), a.target.clone()))
                .collect(),
            self.units
                .iter()
                .map(|(x, u)| (x.clone(), u.clone()))
                .collect(),
            self.compose
                .iter()
                .map(|[a, b, ab]| (a.clone(), b.clone(), ab.clone()))
                .collect(),
            inverse.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        )
        .map_err(|e| anyhow!("structure tables: {e}"))
    }

    pub fn from_category(cat: &FiniteCategoryTable) -> StructureFile {
        StructureFile {
            objects: cat.object_names().to_vec(),
            arrows: cat
                .arrows()
                .map(|a| ArrowDef {
                    id: cat.arrow_name(a).to_string(),
                    source: cat.object_name(cat.source(a)).to_string(),
                    target: cat.object_name(cat.target(a)).to_string(),
                })
                .collect(),
            units: cat
                .objects()
                .map(|x| {
                    (
                        cat.object_name(x).to_string(),
                        cat.arrow_name(cat.unit(x)).to_string(),
                    )
                })
                .collect(),
            compose: cat
                .compose_table()
                .iter()
                .map(|(&(a, b), &ab)| {
                    [
                        cat.arrow_name(a).to_string(),
                        cat.arrow_name(b).to_string(),
                        cat.arrow_name(ab).to_string(),
                    ]
                })
                .collect(),
            inverse: None,
        }
    }

    pub fn from_groupoid(gpd: &FiniteGroupoidTable) -> StructureFile {
        let cat = gpd.category();
        let mut file = StructureFile::from_category(cat);
        file.inverse = Some(
            cat.arrows()
                .map(|a| {
                    (
                        cat.arrow_name(a).to_string(),
                        cat.arrow_name(gpd.inverse(a)).to_string(),
                    )
                })
                .collect(),
        );
        file
    }
}

/// Four structure files; `vertical` and `horizontal` share their arrow ids
/// (the squares), `side_k`/`side_h` carry the sides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleFile {
    #[serde(rename = "sideK")]
    pub side_k: StructureFile,
    #[serde(rename = "sideH")]
    pub side_h: StructureFile,
    pub vertical: StructureFile,
    pub horizontal: StructureFile,
}

impl DoubleFile {
    pub fn to_double(&self) -> Result<DoubleGroupoid> {
        DoubleGroupoid::new(
            self.vertical.to_groupoid().context("vertical structure")?,
            self.horizontal.to_groupoid().context("horizontal structure")?,
            self.side_k.to_groupoid().context("sideK structure")?,
            self.side_h.to_groupoid().context("sideH structure")?,
        )
        .map_err(|e| anyhow!("double-groupoid assembly: {e}"))
    }

    pub fn from_double(dg: &DoubleGroupoid) -> DoubleFile {
        DoubleFile {
            side_k: StructureFile::from_groupoid(dg.side_k()),
            side_h: StructureFile::from_groupoid(dg.side_h()),
            vertical: StructureFile::from_groupoid(dg.vertical()),
            horizontal: StructureFile::from_groupoid(dg.horizontal()),
        }
    }
}

/// Haar weights: arrow id → rational string `"p/q"` (or a bare integer).
pub type HaarFile = BTreeMap<String, String>;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let body = s.trim();
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (body, "1"),
    };
    let p: i64 = p.parse().map_err(|e| anyhow!("rational {s:?}: {e}"))?;
    let q: i64 = q.parse().map_err(|e| anyhow!("rational {s:?}: {e}"))?;
    if q == 0 {
        bail!("rational {s:?}: zero denominator");
    }
    Ok(Rational::new(p, q))
}

pub fn haar_from_file(gpd: &FiniteGroupoidTable, file: &HaarFile) -> Result<HaarSystem> {
    let mut named = Vec::new();
    for (arrow, w) in file {
        named.push((arrow.clone(), parse_rational(w)?));
    }
    HaarSystem::from_named_weights(gpd, &named).map_err(|e| anyhow!("haar weights: {e}"))
}

pub fn haar_to_file(gpd: &FiniteGroupoidTable, haar: &HaarSystem) -> HaarFile {
    gpd.arrows()
        .map(|a| (gpd.arrow_name(a).to_string(), haar.weight(a).to_string()))
        .collect()
}

/// Double Haar weights: square weights `muD` plus side systems `muK`, `muH`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleHaarFile {
    #[serde(rename = "muD")]
    pub mu_d: HaarFile,
    #[serde(rename = "muK")]
    pub mu_k: HaarFile,
    #[serde(rename = "muH")]
    pub mu_h: HaarFile,
}

impl DoubleHaarFile {
    pub fn to_system(&self, dg: &DoubleGroupoid) -> Result<DoubleHaarSystem> {
        Ok(DoubleHaarSystem {
            mu_d: haar_from_file(dg.vertical(), &self.mu_d).context("muD")?,
            mu_k: haar_from_file(dg.side_k(), &self.mu_k).context("muK")?,
            mu_h: haar_from_file(dg.side_h(), &self.mu_h).context("muH")?,
        })
    }

    pub fn from_system(dg: &DoubleGroupoid, dh: &DoubleHaarSystem) -> DoubleHaarFile {
        DoubleHaarFile {
            mu_d: haar_to_file(dg.vertical(), &dh.mu_d),
            mu_k: haar_to_file(dg.side_k(), &dh.mu_k),
            mu_h: haar_to_file(dg.side_h(), &dh.mu_h),
        }
    }
}

/// Algebra element: arrow id → `[re, im]`. Coefficients load as floats;
/// exactness is an in-memory refinement, not a wire concern.
pub type ElementFile = BTreeMap<String, [f64; 2]>;

pub fn element_from_file(gpd: &FiniteGroupoidTable, file: &ElementFile) -> Result<AlgebraElement> {
    let entries: Vec<(String, Scalar)> = file
        .iter()
        .map(|(arrow, &[re, im])| {
            (
                arrow.clone(),
                Scalar::from_complex(Complex64::new(re, im)),
            )
        })
        .collect();
    AlgebraElement::from_named(gpd, &entries).map_err(|e| anyhow!("element: {e}"))
}

pub fn element_to_file(gpd: &FiniteGroupoidTable, e: &AlgebraElement) -> ElementFile {
    e.support()
        .map(|(a, c)| {
            let z = c.to_complex();
            (gpd.arrow_name(a).to_string(), [z.re, z.im])
        })
        .collect()
}

/// Torus function: `"level,frequency"` → `[re, im]`.
pub type TorusFile = BTreeMap<String, [f64; 2]>;

pub fn torus_from_file(file: &TorusFile) -> Result<TorusFunction> {
    let mut entries = Vec::new();
    for (key, &[re, im]) in file {
        let (j, k) = key
            .split_once(',')
            .ok_or_else(|| anyhow!("torus key {key:?}: expected \"level,frequency\""))?;
        let j: i64 = j.trim().parse().with_context(|| format!("torus key {key:?}"))?;
        let k: i64 = k.trim().parse().with_context(|| format!("torus key {key:?}"))?;
        entries.push((j, k, Complex64::new(re, im)));
    }
    Ok(TorusFunction::from_coeffs(&entries))
}

pub fn torus_to_file(u: &TorusFunction) -> TorusFile {
    u.support()
        .map(|(j, k, z)| (format!("{j},{k}"), [z.re, z.im]))
        .collect()
}

/// One suite entry: a registry check name plus string-typed parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

pub type Manifest = Vec<ManifestEntry>;

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .with_context(|| format!("serializing {}", path.display()))?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Loads a structure file and builds whichever table its contents support:
/// a groupoid when an inverse table is present, otherwise a plain category.
pub enum LoadedStructure {
    Category(FiniteCategoryTable),
    Groupoid(FiniteGroupoidTable),
}

pub fn load_structure(path: &Path) -> Result<LoadedStructure> {
    let file: StructureFile = read_json(path)?;
    if file.inverse.is_some() {
        Ok(LoadedStructure::Groupoid(file.to_groupoid()?))
    } else {
        Ok(LoadedStructure::Category(file.to_category()?))
    }
}

pub fn load_groupoid(path: &Path) -> Result<FiniteGroupoidTable> {
    let file: StructureFile = read_json(path)?;
    file.to_groupoid()
        .with_context(|| format!("loading {}", path.display()))
}

pub fn load_double(path: &Path) -> Result<DoubleGroupoid> {
    let file: DoubleFile = read_json(path)?;
    file.to_double()
        .with_context(|| format!("loading {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgpd_core::fixtures;

    #[test]
    fn groupoid_structure_round_trips_through_json() {
        let gpd = fixtures::cyclic_group(3).table().clone();
        let file = StructureFile::from_groupoid(&gpd);
        let text = serde_json::to_string(&file).unwrap();
        let back: StructureFile = serde_json::from_str(&text).unwrap();
        let rebuilt = back.to_groupoid().unwrap();
        assert_eq!(rebuilt, gpd);
    }

    #[test]
    fn double_file_round_trips_and_reassembles() {
        let g = fixtures::cyclic_group(2);
        let dg = dgpd_core::double::from_group(&g);
        let file = DoubleFile::from_double(&dg);
        let text = serde_json::to_string(&file).unwrap();
        let back: DoubleFile = serde_json::from_str(&text).unwrap();
        let rebuilt = back.to_double().unwrap();
        assert_eq!(rebuilt.square_count(), dg.square_count());
        assert!(rebuilt.validate("round trip").is_valid());
    }

    #[test]
    fn compose_entries_over_unknown_ids_are_parse_errors() {
        let g = fixtures::cyclic_group(2);
        let mut file = StructureFile::from_groupoid(g.table());
        file.compose.push(["0".into(), "1".into(), "ghost".into()]);
        assert!(file.to_groupoid().is_err());
    }

    #[test]
    fn missing_inverse_table_blocks_groupoid_loading() {
        let g = fixtures::cyclic_group(2);
        let mut file = StructureFile::from_groupoid(g.table());
        file.inverse = None;
        assert!(file.to_groupoid().is_err());
        assert!(file.to_category().is_ok());
    }

    #[test]
    fn haar_files_parse_rational_strings() {
        let gpd = fixtures::cyclic_group(2).table().clone();
        let file: HaarFile = [("0".to_string(), "1/3".to_string()), ("1".to_string(), "2".to_string())]
            .into_iter()
            .collect();
        let haar = haar_from_file(&gpd, &file).unwrap();
        let a = gpd.arrow_id("0").unwrap();
        let b = gpd.arrow_id("1").unwrap();
        assert_eq!(haar.weight(a), Rational::new(1, 3));
        assert_eq!(haar.weight(b), Rational::from_integer(2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn torus_keys_parse_signed_index_pairs() {
        let file: TorusFile = [("-2,3".to_string(), [1.0, -0.5])].into_iter().collect();
        let u = torus_from_file(&file).unwrap();
        assert_eq!(u.coeff(-2, 3), Complex64::new(1.0, -0.5));
        let bad: TorusFile = [("7".to_string(), [1.0, 0.0])].into_iter().collect();
        assert!(torus_from_file(&bad).is_err());
    }
}
