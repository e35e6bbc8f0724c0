//! JSON file formats: SSX for simplicial sets and CAT for finite category
//! presentations.  Operads (OPD) live with [`crate::operad::ColoredOperad`].
//!
//! Output is canonical: maps are key-sorted and lists follow the internal
//! order, so serialization is byte-deterministic and parse ∘ serialize is
//! the identity on canonical files.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::constructions::nerve::{Category, MorphismSpec};
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::sset::SSet;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FaceRef {
    pub degens: Vec<usize>,
    pub base: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SsxFile {
    pub dims: BTreeMap<usize, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    /// Present when only a skeleton of the intended object is listed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_through: Option<usize>,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file formats serialize");
    s.push('\n');
    s
}

fn parse_json<T: for<'de> Deserialize<'de>>(kind: &str, text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("{kind}: line {}, column {}: {e}", e.line(), e.column())))
}

pub fn sset_to_file(x: &SSet) -> SsxFile {
    let top = x.top_dim().map_or(0, |t| t + 1);
    let mut dims = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for n in 0..top {
        dims.insert(n, x.names(n).to_vec());
        if n == 0 {
            continue;
        }
        for s in x.nondegenerate(n) {
            let refs = x
                .faces_of(s)
                .iter()
                .map(|f| FaceRef {
                    degens: f.degeneracies(),
                    base: x.name(f.base()).to_string(),
                })
                .collect();
            faces.insert(x.name(s).to_string(), refs);
        }
    }
    SsxFile {
        dims,
        faces,
        labels: None,
        known_through: x.known_through(),
    }
}

pub fn sset_to_ssx(x: &SSet) -> String {
    pretty(&sset_to_file(x))
}

pub fn sset_from_file(file: &SsxFile) -> Result<SSet> {
    let top = file.dims.keys().next_back().map_or(0, |t| t + 1);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top];
    let mut index: HashMap<&str, Simplex> = HashMap::new();
    for (&n, ids) in &file.dims {
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.as_str(), Simplex::nondegenerate(n, i)).is_some() {
                return Err(Error::Parse(format!("SSX: dims.{n}: duplicate simplex id {id:?}")));
            }
        }
        names[n] = ids.clone();
    }
    for id in file.faces.keys() {
        match index.get(id.as_str()) {
            None => return Err(Error::Parse(format!("SSX: faces.{id}: not listed in dims"))),
            Some(s) if s.dim() == 0 => return Err(Error::Parse(format!("SSX: faces.{id}: vertices have no faces"))),
            Some(_) => {}
        }
    }
    if let Some(labels) = &file.labels {
        if let Some(id) = labels.keys().find(|id| !index.contains_key(id.as_str())) {
            return Err(Error::Parse(format!("SSX: labels.{id}: not listed in dims")));
        }
    }
    let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); top];
    for (n, level) in names.iter().enumerate().skip(1) {
        for id in level {
            let refs = file
                .faces
                .get(id)
                .ok_or_else(|| Error::Parse(format!("SSX: faces.{id}: missing")))?;
            if refs.len() != n + 1 {
                return Err(Error::Parse(format!(
                    "SSX: faces.{id}: a {n}-simplex has {} faces, {} given",
                    n + 1,
                    refs.len()
                )));
            }
            for (i, r) in refs.iter().enumerate() {
                let at = || format!("SSX: faces.{id}[{i}]");
                let base = *index
                    .get(r.base.as_str())
                    .ok_or_else(|| Error::Parse(format!("{}: unknown base {:?}", at(), r.base)))?;
                if base.dim() + r.degens.len() != n - 1 {
                    return Err(Error::Parse(format!(
                        "{}: base {:?} of dimension {} with {} degeneracies is not a {}-simplex",
                        at(),
                        r.base,
                        base.dim(),
                        r.degens.len(),
                        n - 1
                    )));
                }
                let face = Simplex::from_degeneracies(n - 1, &r.degens, base.base_id())
                    .map_err(|e| Error::Parse(format!("{}: {e}", at())))?;
                faces[n].push(face);
            }
        }
    }
    SSet::from_parts(names, faces, file.known_through).map_err(|e| Error::Parse(format!("SSX: {e}")))
}

pub fn sset_from_ssx(text: &str) -> Result<SSet> {
    sset_from_file(&parse_json("SSX", text)?)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CatMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CatFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<CatMorphism>,
    /// Triples `[g, f, g∘f]`; composites with identities may be omitted.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
}

pub fn category_to_file(c: &Category) -> CatFile {
    let n = c.morphism_count();
    let mut compose = Vec::new();
    for g in (0..n).filter(|&g| !c.is_identity(g)) {
        for f in (0..n).filter(|&f| !c.is_identity(f) && c.dst(f) == c.src(g)) {
            compose.push([
                c.morphism_name(g).to_string(),
                c.morphism_name(f).to_string(),
                c.morphism_name(c.compose(g, f)).to_string(),
            ]);
        }
    }
    CatFile {
        objects: c.objects().to_vec(),
        morphisms: (0..n)
            .map(|f| CatMorphism {
                id: c.morphism_name(f).to_string(),
                src: c.object_name(c.src(f)).to_string(),
                dst: c.object_name(c.dst(f)).to_string(),
            })
            .collect(),
        compose,
        identities: (0..c.object_count())
            .map(|o| (c.object_name(o).to_string(), c.morphism_name(c.identity(o)).to_string()))
            .collect(),
    }
}

pub fn category_to_cat(c: &Category) -> String {
    pretty(&category_to_file(c))
}

pub fn category_from_file(file: &CatFile) -> Result<Category> {
    let morphisms = file
        .morphisms
        .iter()
        .map(|m| MorphismSpec {
            id: m.id.clone(),
            src: m.src.clone(),
            dst: m.dst.clone(),
        })
        .collect();
    let identities: Vec<(String, String)> = file.identities.iter().map(|(o, m)| (o.clone(), m.clone())).collect();
    let compose: Vec<(String, String, String)> =
        file.compose.iter().map(|[g, f, h]| (g.clone(), f.clone(), h.clone())).collect();
    Category::new(file.objects.clone(), morphisms, &identities, &compose).map_err(|e| Error::Parse(format!("CAT: {e}")))
}

pub fn category_from_cat(text: &str) -> Result<Category> {
    category_from_file(&parse_json("CAT", text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::pushout::quotient;
    use crate::constructions::standard::{boundary, horn, standard};
    use crate::constructions::Nerve;
    use crate::smap::SMap;
    use std::sync::Arc;

    fn round_trip(x: &SSet) {
        let text = sset_to_ssx(x);
        let back = sset_from_ssx(&text).unwrap();
        assert_eq!(&back, x);
        assert_eq!(sset_to_ssx(&back), text);
    }

    #[test]
    fn ssx_round_trip() {
        round_trip(&SSet::empty());
        round_trip(&standard(3));
        round_trip(&boundary(2));
        round_trip(&horn(3, 1).unwrap());
        let bz2 = Nerve::new(&Arc::new(Category::bz2()), 3);
        round_trip(bz2.sset());
        // a quotient with degenerate faces
        let b = Arc::new(standard(1));
        let a = Arc::new(boundary(1));
        let incl = SMap::new_unchecked(a.clone(), b.clone(), a.nondegenerate(0).collect());
        round_trip(quotient(&incl).unwrap().sset());
    }

    #[test]
    fn ssx_errors_carry_locations() {
        let bad = r#"{"dims": {"0": ["a"], "1": ["e"]}, "faces": {"e": [{"degens": [], "base": "b"}, {"degens": [], "base": "a"}]}}"#;
        let e = sset_from_ssx(bad).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("faces.e[0]")), "{e}");
        let short = r#"{"dims": {"0": ["a"], "1": ["e"]}, "faces": {"e": [{"degens": [], "base": "a"}]}}"#;
        assert!(matches!(sset_from_ssx(short), Err(Error::Parse(_))));
        let unknown = r#"{"dims": {}, "extra": 1}"#;
        assert!(matches!(sset_from_ssx(unknown), Err(Error::Parse(_))));
        // d_0 d_1 ≠ d_0 d_0 is caught by validation
        let twisted = r#"{"dims": {"0": ["a", "b"], "1": ["f", "g", "h"], "2": ["t"]},
            "faces": {"f": [{"degens": [], "base": "b"}, {"degens": [], "base": "a"}],
                      "g": [{"degens": [], "base": "b"}, {"degens": [], "base": "a"}],
                      "h": [{"degens": [], "base": "b"}, {"degens": [], "base": "b"}],
                      "t": [{"degens": [], "base": "f"}, {"degens": [], "base": "g"}, {"degens": [], "base": "h"}]}}"#;
        assert!(matches!(sset_from_ssx(twisted), Err(Error::Parse(_))));
    }

    #[test]
    fn cat_round_trip() {
        for c in [
            Category::bz2(),
            Category::iso_groupoid(),
            Category::ordinal(3),
            Category::poset(
                vec!["00".into(), "01".into(), "10".into(), "11".into()],
                &[("00".into(), "01".into()), ("00".into(), "10".into()), ("01".into(), "11".into()), ("10".into(), "11".into())],
            )
            .unwrap(),
        ] {
            let text = category_to_cat(&c);
            let back = category_from_cat(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(category_to_cat(&back), text);
        }
        let missing = r#"{"objects": ["a"], "morphisms": [{"id": "f", "src": "a", "dst": "a"}], "identities": {}}"#;
        assert!(matches!(category_from_cat(missing), Err(Error::Parse(_))));
    }
}
