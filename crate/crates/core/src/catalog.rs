//! Static data: coordinate systems, weight systems, presentations, maps,
//! group actions and the push-forward table.
//!
//! The built-in catalog is compiled in; an override file with the same
//! layout may replace entries by name (or add new ones).

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{ChernError, CoordinateSpec, CoordinateSystem, WeightSystem};
use crate::maps::MapSpec;
use crate::polyring::{parse_polynomial, CoefficientRing, Coeff, PolyError, VarSet};
use crate::presentations::{GeneratorSpec, GradedRingPresentation, Params, PresentationError, PresentationSpec};

const BUILTIN: &str = include_str!("../catalog/catalog.json");

/// Prefix of the automatically generated torus presentations.
pub const TORUS_PREFIX: &str = "torus:";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("no {kind} named `{name}` in the catalog")]
    Unknown { kind: &'static str, name: String },
    #[error("catalog entry `{0}`: {1}")]
    Invalid(String, String),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub name: String,
    pub coordinate_system: String,
    pub weights: Vec<Vec<i64>>,
}

/// Closed formulas for generator images before an identification, with
/// the total classes whose product should reproduce them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaSpec {
    pub name: String,
    pub target: String,
    pub whitney: Vec<String>,
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaClassSpec {
    pub name: String,
    pub degree: i64,
    pub payload: String,
    #[serde(default)]
    pub expansion: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRelationSpec {
    pub id: String,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushForwardSpec {
    pub presentation: String,
    pub map: String,
    pub classes: Vec<ZetaClassSpec>,
    pub relations: Vec<ZetaRelationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub field: CoefficientRing,
    /// Acts on the free coordinates of this system ...
    #[serde(default)]
    pub coordinate_system: Option<String>,
    /// ... or on these variables (degree 1).
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub order: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

/// Raw catalog contents. Every section is optional in an override file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogData {
    #[serde(default)]
    pub coordinate_systems: Vec<CoordinateSpec>,
    #[serde(default)]
    pub weight_systems: Vec<WeightSpec>,
    #[serde(default)]
    pub presentations: Vec<PresentationSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub formulas: Vec<FormulaSpec>,
    #[serde(default)]
    pub pushforward: Option<PushForwardSpec>,
    #[serde(default)]
    pub expected_constants: BTreeMap<String, String>,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
}

fn merge_named<T, F: Fn(&T) -> &str>(base: &mut Vec<T>, over: Vec<T>, name: F) {
    for item in over {
        match base.iter().position(|b| name(b) == name(&item)) {
            Some(i) => base[i] = item,
            None => base.push(item),
        }
    }
}

impl CatalogData {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("built-in catalog is valid JSON")
    }

    /// Entries of `over` replace same-named entries of `self`.
    pub fn merge(&mut self, over: CatalogData) {
        merge_named(&mut self.coordinate_systems, over.coordinate_systems, |c| &c.name);
        merge_named(&mut self.weight_systems, over.weight_systems, |w| &w.name);
        merge_named(&mut self.presentations, over.presentations, |p| &p.name);
        merge_named(&mut self.maps, over.maps, |m| &m.name);
        merge_named(&mut self.formulas, over.formulas, |f| &f.name);
        merge_named(&mut self.groups, over.groups, |g| &g.name);
        if over.pushforward.is_some() {
            self.pushforward = over.pushforward;
        }
        self.expected_constants.extend(over.expected_constants);
    }
}

/// Resolved catalog: coordinate and weight systems are built eagerly,
/// presentations on demand (and cached per parameter instantiation).
#[derive(Debug)]
pub struct Catalog {
    data: CatalogData,
    coords: BTreeMap<String, Arc<CoordinateSystem>>,
    weights: BTreeMap<String, WeightSystem>,
    cache: Mutex<HashMap<String, Arc<GradedRingPresentation>>>,
}

impl Clone for Catalog {
    fn clone(&self) -> Self {
        Self::from_data(self.data.clone()).expect("already validated")
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_data(CatalogData::builtin()).expect("built-in catalog resolves")
    }

    /// The built-in catalog, optionally overridden by a JSON file.
    pub fn load(path: Option<&Path>) -> Result<Self, CatalogError> {
        let mut data = CatalogData::builtin();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|source| CatalogError::Io { path: p.display().to_string(), source })?;
            data.merge(serde_json::from_str(&text)?);
        }
        Self::from_data(data)
    }

    pub fn from_data(data: CatalogData) -> Result<Self, CatalogError> {
        let mut coords = BTreeMap::new();
        for c in &data.coordinate_systems {
            coords.insert(c.name.clone(), Arc::new(CoordinateSystem::from_spec(c.clone())?));
        }
        let mut weights = BTreeMap::new();
        for w in &data.weight_systems {
            let cs = coords
                .get(&w.coordinate_system)
                .ok_or_else(|| ChernError::UnknownCoordinates(w.coordinate_system.clone()))?;
            weights.insert(w.name.clone(), WeightSystem::new(&w.name, cs.clone(), &w.weights)?);
        }
        Ok(Self { data, coords, weights, cache: Mutex::new(HashMap::new()) })
    }

    pub fn data(&self) -> &CatalogData {
        &self.data
    }

    /// A modified copy (used by the negative controls).
    pub fn with_data(&self, f: impl FnOnce(&mut CatalogData)) -> Result<Self, CatalogError> {
        let mut data = self.data.clone();
        f(&mut data);
        Self::from_data(data)
    }

    pub fn coordinate_system(&self, name: &str) -> Result<Arc<CoordinateSystem>, CatalogError> {
        self.coords
            .get(name)
            .cloned()
            .ok_or_else(|| CatalogError::Unknown { kind: "coordinate system", name: name.into() })
    }

    pub fn weight_system(&self, name: &str) -> Result<&WeightSystem, CatalogError> {
        self.weights
            .get(name)
            .ok_or_else(|| CatalogError::Unknown { kind: "weight system", name: name.into() })
    }

    pub fn presentation_spec(&self, name: &str) -> Result<PresentationSpec, CatalogError> {
        if let Some(cs) = name.strip_prefix(TORUS_PREFIX) {
            let c = self.coordinate_system(cs)?;
            return Ok(PresentationSpec {
                name: name.to_string(),
                ring: CoefficientRing::Rationals,
                generators: c
                    .vars()
                    .names()
                    .iter()
                    .map(|n| GeneratorSpec { name: n.clone(), degree: 1, heavy: false })
                    .collect(),
                parameters: Vec::new(),
                relations: Vec::new(),
                basis: None,
                coordinate_system: Some(cs.to_string()),
            });
        }
        self.data
            .presentations
            .iter()
            .find(|p| p.name == name)
            .cloned()
            .ok_or_else(|| CatalogError::Unknown { kind: "presentation", name: name.into() })
    }

    /// The presentation instantiated with those of `params` it declares.
    pub fn presentation(&self, name: &str, params: &Params) -> Result<Arc<GradedRingPresentation>, CatalogError> {
        let spec = self.presentation_spec(name)?;
        let used: Vec<String> = spec
            .parameters
            .iter()
            .map(|p| format!("{p}={}", params.get(p).map(|c| c.to_string()).unwrap_or_default()))
            .collect();
        let key = format!("{name}[{}]", used.join(","));
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let pres = Arc::new(GradedRingPresentation::from_spec(&spec, params)?);
        self.cache.lock().expect("cache lock").insert(key, pres.clone());
        Ok(pres)
    }

    pub fn map_spec(&self, name: &str) -> Result<&MapSpec, CatalogError> {
        self.data
            .maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CatalogError::Unknown { kind: "map", name: name.into() })
    }

    pub fn formula(&self, name: &str) -> Result<&FormulaSpec, CatalogError> {
        self.data
            .formulas
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| CatalogError::Unknown { kind: "formula", name: name.into() })
    }

    pub fn pushforward(&self) -> Result<&PushForwardSpec, CatalogError> {
        self.data
            .pushforward
            .as_ref()
            .ok_or_else(|| CatalogError::Unknown { kind: "section", name: "pushforward".into() })
    }

    pub fn group(&self, name: &str) -> Result<&GroupSpec, CatalogError> {
        self.data
            .groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| CatalogError::Unknown { kind: "group", name: name.into() })
    }

    /// Variables a group acts on.
    pub fn group_vars(&self, g: &GroupSpec) -> Result<Arc<VarSet>, CatalogError> {
        match (&g.coordinate_system, &g.variables) {
            (Some(cs), _) => Ok(self.coordinate_system(cs)?.vars().clone()),
            (None, Some(v)) => Ok(VarSet::uniform(v.iter().cloned())?),
            (None, None) => Err(CatalogError::Invalid(g.name.clone(), "no variables".into())),
        }
    }

    pub fn expected_constant(&self, name: &str) -> Result<Coeff, CatalogError> {
        let text = self
            .data
            .expected_constants
            .get(name)
            .ok_or_else(|| CatalogError::Unknown { kind: "constant", name: name.into() })?;
        let empty = VarSet::uniform(Vec::<String>::new())?;
        Ok(parse_polynomial(text, CoefficientRing::Rationals, &empty)?.constant_term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational;

    #[test]
    fn builtin_resolves() {
        let c = Catalog::builtin();
        assert_eq!(c.weight_system("Delta_spin7").unwrap().dimension(), 8);
        assert_eq!(c.weight_system("V_g2").unwrap().coords().rank(), 2);
        assert_eq!(c.expected_constant("A").unwrap(), rational(8, 3));
        let t = c.presentation("torus:spin7", &Params::new()).unwrap();
        assert_eq!(t.coordinate_system(), Some("spin7"));
        assert_eq!(t.vars().names(), ["x", "y", "z"]);
    }

    #[test]
    fn every_presentation_builds() {
        let c = Catalog::builtin();
        let mut params = Params::new();
        params.insert("delta1".into(), rational(0, 1));
        params.insert("delta2".into(), rational(1, 1));
        for p in &c.data().presentations {
            let pres = c.presentation(&p.name, &params).unwrap();
            assert!(pres.is_confluent(), "{}", p.name);
        }
    }

    #[test]
    fn override_replaces_by_name() {
        let mut d = CatalogData::builtin();
        let n = d.presentations.len();
        let mut g2 = d.presentations.iter().find(|p| p.name == "G2").unwrap().clone();
        g2.relations[0].text = "c2^2 - 5*c4".into();
        d.merge(CatalogData { presentations: vec![g2], ..Default::default() });
        assert_eq!(d.presentations.len(), n);
        let c = Catalog::from_data(d).unwrap();
        assert_eq!(c.presentation_spec("G2").unwrap().relations[0].text, "c2^2 - 5*c4");
    }

    #[test]
    fn unknown_names() {
        let c = Catalog::builtin();
        assert!(matches!(c.map_spec("nope"), Err(CatalogError::Unknown { .. })));
        assert!(c.presentation("torus:nope", &Params::new()).is_err());
    }
}
