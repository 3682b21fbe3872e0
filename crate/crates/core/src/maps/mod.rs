//! Ring homomorphisms between presented rings.
//!
//! A map is built as an [`UnverifiedMap`] and only becomes a usable
//! [`RingMap`] after every relation of the source has been checked to map
//! to zero in the target.

pub mod constants;
pub mod pushforward;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::chern::chern_class;
use crate::polyring::{PolyError, Polynomial};
use crate::presentations::g2::Detector;
use crate::presentations::{GradedRingPresentation, Params, PresentationError};

fn one() -> i64 {
    1
}

/// Serialized map: generator name -> image text. An image is a polynomial
/// in the target generators or `chern(WEIGHTS, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default = "one")]
    pub degree_scale: i64,
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map `{map}` gives no image for generator `{generator}`")]
    MissingImage { map: String, generator: String },
    #[error("map `{map}`: image of `{generator}`: {msg}")]
    BadImage { map: String, generator: String, msg: String },
    #[error("map `{map}`: weights in coordinates `{found}` cannot land in `{expected}`")]
    CoordinateMismatch { map: String, expected: String, found: String },
    #[error("map `{0}` failed verification: {1}")]
    NotVerified(String, String),
    #[error("element is not in `{0}`")]
    WrongSource(String),
    #[error("maps `{0}` and `{1}` do not compose")]
    NotComposable(String, String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<CatalogError> for MapError {
    fn from(e: CatalogError) -> Self {
        MapError::BadImage { map: String::new(), generator: String::new(), msg: e.to_string() }
    }
}

/// Image of one source relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationImage {
    pub map: String,
    pub relation: String,
    pub anchor: String,
    pub image_normal_form: String,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapVerification {
    pub map: String,
    /// Generators whose images have the wrong degree.
    pub degree_errors: Vec<String>,
    pub relations: Vec<RelationImage>,
}

impl MapVerification {
    pub fn passed(&self) -> bool {
        self.degree_errors.is_empty() && self.relations.iter().all(|r| r.verdict)
    }

    fn failures(&self) -> String {
        let mut out: Vec<String> = self.degree_errors.clone();
        out.extend(
            self.relations
                .iter()
                .filter(|r| !r.verdict)
                .map(|r| format!("relation {} maps to {}", r.relation, r.image_normal_form)),
        );
        out.join("; ")
    }
}

#[derive(Clone, Debug)]
pub struct UnverifiedMap {
    name: String,
    source: Arc<GradedRingPresentation>,
    target: Arc<GradedRingPresentation>,
    degree_scale: i64,
    images: Vec<Polynomial>,
}

impl UnverifiedMap {
    /// `images` are given per source generator, in the target's ring.
    pub fn new(
        name: &str,
        source: Arc<GradedRingPresentation>,
        target: Arc<GradedRingPresentation>,
        degree_scale: i64,
        images: Vec<Polynomial>,
    ) -> Result<Self, MapError> {
        if images.len() != source.vars().len() {
            return Err(MapError::BadImage {
                map: name.into(),
                generator: String::new(),
                msg: format!("{} images for {} generators", images.len(), source.vars().len()),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if target.require_own(img).is_err() {
                return Err(MapError::BadImage {
                    map: name.into(),
                    generator: source.vars().name(i).into(),
                    msg: format!("not an element of `{}`", target.name()),
                });
            }
        }
        Ok(Self { name: name.into(), source, target, degree_scale, images })
    }

    pub fn identity(pres: Arc<GradedRingPresentation>) -> Self {
        let images = pres
            .vars()
            .names()
            .iter()
            .map(|n| pres.generator(n).expect("own generator"))
            .collect();
        Self { name: format!("id_{}", pres.name()), source: pres.clone(), target: pres, degree_scale: 1, images }
    }

    /// Resolves a catalog map; `params` instantiate parametrized source and
    /// target presentations.
    pub fn from_catalog(catalog: &Catalog, name: &str, params: &Params) -> Result<Self, MapError> {
        let spec = catalog.map_spec(name)?;
        let source = catalog.presentation(&spec.source, params)?;
        let target = catalog.presentation(&spec.target, params)?;
        Self::from_spec(catalog, spec, source, target)
    }

    pub fn from_spec(
        catalog: &Catalog,
        spec: &MapSpec,
        source: Arc<GradedRingPresentation>,
        target: Arc<GradedRingPresentation>,
    ) -> Result<Self, MapError> {
        let mut images = Vec::new();
        for g in source.vars().names() {
            let text = spec
                .images
                .get(g)
                .ok_or_else(|| MapError::MissingImage { map: spec.name.clone(), generator: g.clone() })?;
            images.push(parse_image(catalog, &spec.name, g, text, &target)?);
        }
        for g in spec.images.keys() {
            if source.vars().index_of(g).is_none() {
                return Err(MapError::BadImage {
                    map: spec.name.clone(),
                    generator: g.clone(),
                    msg: format!("not a generator of `{}`", source.name()),
                });
            }
        }
        Self::new(&spec.name, source, target, spec.degree_scale, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<GradedRingPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRingPresentation> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitutes generator images and normal-forms in the target.
    fn apply_raw(&self, p: &Polynomial) -> Result<Polynomial, MapError> {
        let p = p
            .embed(self.source.vars())
            .map_err(|_| MapError::WrongSource(self.source.name().into()))?;
        let img = p.substitute_into(&self.images, self.target.ring(), self.target.vars().clone())?;
        Ok(self.target.normal_form(&img))
    }

    /// Checks image degrees and that every source relation maps to zero.
    pub fn check(&self) -> MapVerification {
        let mut degree_errors = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            let want = self.source.vars().degree(i) * self.degree_scale;
            if img.is_zero() {
                continue;
            }
            match img.homogeneous_degree() {
                Some(d) if d == want => {}
                other => degree_errors.push(format!(
                    "image of {} has degree {:?}, expected {}",
                    self.source.vars().name(i),
                    other,
                    want
                )),
            }
        }
        let relations = self
            .source
            .relations()
            .iter()
            .map(|r| {
                let (text, verdict) = match self.apply_raw(&r.poly) {
                    Ok(img) => (img.to_string(), img.is_zero()),
                    Err(e) => (format!("error: {e}"), false),
                };
                RelationImage {
                    map: self.name.clone(),
                    relation: r.id.clone(),
                    anchor: r.anchor.clone(),
                    image_normal_form: text,
                    verdict,
                }
            })
            .collect();
        MapVerification { map: self.name.clone(), degree_errors, relations }
    }

    /// Seals the map if the check passes.
    pub fn verify(self) -> Result<(RingMap, MapVerification), MapError> {
        let report = self.check();
        if report.passed() {
            Ok((RingMap { inner: self }, report))
        } else {
            Err(MapError::NotVerified(self.name.clone(), report.failures()))
        }
    }
}

fn parse_image(
    catalog: &Catalog,
    map: &str,
    generator: &str,
    text: &str,
    target: &GradedRingPresentation,
) -> Result<Polynomial, MapError> {
    let bad = |msg: String| MapError::BadImage { map: map.into(), generator: generator.into(), msg };
    let t = text.trim();
    if let Some(args) = t.strip_prefix("chern(").and_then(|r| r.strip_suffix(')')) {
        let (ws_name, idx) = args.split_once(',').ok_or_else(|| bad(format!("malformed `{t}`")))?;
        let idx: usize = idx.trim().parse().map_err(|_| bad(format!("malformed index in `{t}`")))?;
        let ws = catalog.weight_system(ws_name.trim()).map_err(|e| bad(e.to_string()))?;
        match target.coordinate_system() {
            Some(cs) if cs == ws.coords().name() => {}
            other => {
                return Err(MapError::CoordinateMismatch {
                    map: map.into(),
                    expected: other.unwrap_or("(not a torus)").into(),
                    found: ws.coords().name().into(),
                })
            }
        }
        let c = chern_class(ws, idx).embed(target.vars())?.change_ring(target.ring())?;
        return Ok(c);
    }
    target.parse(t).map_err(|e| bad(e.to_string()))
}

/// A verified ring map.
#[derive(Clone, Debug)]
pub struct RingMap {
    inner: UnverifiedMap,
}

impl RingMap {
    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn source(&self) -> &Arc<GradedRingPresentation> {
        &self.inner.source
    }

    pub fn target(&self) -> &Arc<GradedRingPresentation> {
        &self.inner.target
    }

    pub fn degree_scale(&self) -> i64 {
        self.inner.degree_scale
    }

    /// Image of `p`, which must be written in the source generators;
    /// the result is in target normal form.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, MapError> {
        self.inner.apply_raw(p)
    }

    pub fn apply_text(&self, text: &str) -> Result<Polynomial, MapError> {
        let p = self.source().parse(text)?;
        self.apply(&p)
    }

    pub fn image(&self, generator: &str) -> Result<&Polynomial, MapError> {
        let i = self.source().vars().require(generator)?;
        Ok(&self.inner.images[i])
    }

    /// `other ∘ self`, still to be verified.
    pub fn then(&self, other: &RingMap) -> Result<UnverifiedMap, MapError> {
        if self.target().name() != other.source().name() {
            return Err(MapError::NotComposable(self.name().into(), other.name().into()));
        }
        let images = self.inner.images.iter().map(|p| other.apply(p)).collect::<Result<Vec<_>, _>>()?;
        UnverifiedMap::new(
            &format!("{}∘{}", other.name(), self.name()),
            self.source().clone(),
            other.target().clone(),
            self.degree_scale() * other.degree_scale(),
            images,
        )
    }

    /// Generators on which two maps with the same source and target differ.
    pub fn differences(&self, other: &RingMap) -> Vec<(String, Polynomial, Polynomial)> {
        let names = self.source().vars().names();
        let mut out = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let a = self.target().normal_form(&self.inner.images[i]);
            let b = match other.image(n).and_then(|p| Ok(p.embed(self.target().vars())?)) {
                Ok(p) => self.target().normal_form(&p),
                Err(_) => {
                    out.push((n.clone(), a, self.target().zero()));
                    continue;
                }
            };
            if a != b {
                out.push((n.clone(), a, b));
            }
        }
        out
    }
}

impl Detector for RingMap {
    fn detector_name(&self) -> String {
        self.name().to_string()
    }

    fn detect(&self, p: &Polynomial) -> Result<Polynomial, String> {
        let q = p
            .embed(self.source().vars())
            .and_then(|q| q.change_ring(self.source().ring()))
            .map_err(|e| e.to_string())?;
        self.apply(&q).map_err(|e| e.to_string())
    }
}

/// Resolves and seals a catalog map.
pub fn load_map(catalog: &Catalog, name: &str, params: &Params) -> Result<RingMap, MapError> {
    Ok(UnverifiedMap::from_catalog(catalog, name, params)?.verify()?.0)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::polyring::rational;

    pub(crate) fn delta(d1: i64, d2: i64) -> Params {
        let mut p = Params::new();
        p.insert("delta1".into(), rational(d1, 1));
        p.insert("delta2".into(), rational(d2, 1));
        p
    }

    #[test]
    fn g2_to_so4_images() {
        let c = Catalog::builtin();
        let m = load_map(&c, "res_G2_SO4", &Params::new()).unwrap();
        assert_eq!(m.apply_text("c2").unwrap(), m.target().parse("2*d2 + y2").unwrap());
        assert_eq!(m.apply_text("c7").unwrap(), m.target().parse("d3*d4").unwrap());
        let sq = m.apply_text("c2^2 - 4*c4").unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn every_catalog_map_verifies() {
        let c = Catalog::builtin();
        for spec in &c.data().maps {
            for (d1, d2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let r = UnverifiedMap::from_catalog(&c, &spec.name, &delta(d1, d2)).unwrap().check();
                assert!(r.passed(), "{}: {:?}", spec.name, r);
            }
        }
    }

    #[test]
    fn identity_map_passes() {
        let c = Catalog::builtin();
        for name in ["G2", "SO4", "Spin7"] {
            let p = c.presentation(name, &delta(1, 1)).unwrap();
            assert!(UnverifiedMap::identity(p).check().passed());
        }
    }

    #[test]
    fn cycle_map_kills_c2() {
        let c = Catalog::builtin();
        let m = load_map(&c, "cycle_G2", &Params::new()).unwrap();
        assert!(m.apply_text("c2").unwrap().is_zero());
        assert_eq!(m.apply_text("c7").unwrap().to_string(), "1*w7^2");
    }

    #[test]
    fn wrong_coordinates_are_rejected() {
        let c = Catalog::builtin();
        let mut spec = c.map_spec("res_G2_T").unwrap().clone();
        spec.images.insert("c2".into(), "chern(V_g2, 2)".into());
        let src = c.presentation("G2", &Params::new()).unwrap();
        let tgt = c.presentation("torus:so4", &Params::new()).unwrap();
        assert!(matches!(
            UnverifiedMap::from_spec(&c, &spec, src, tgt),
            Err(MapError::CoordinateMismatch { .. })
        ));
    }

    #[test]
    fn broken_map_does_not_seal() {
        let c = Catalog::builtin();
        let mut spec = c.map_spec("res_G2_SO4").unwrap().clone();
        spec.images.insert("c4".into(), "d2^2 + d4".into());
        let src = c.presentation("G2", &Params::new()).unwrap();
        let tgt = c.presentation("SO4", &Params::new()).unwrap();
        let m = UnverifiedMap::from_spec(&c, &spec, src, tgt).unwrap();
        assert!(!m.check().passed());
        assert!(matches!(m.verify(), Err(MapError::NotVerified(..))));
    }

    #[test]
    fn triangle_commutes() {
        let c = Catalog::builtin();
        let p = Params::new();
        let a = load_map(&c, "res_G2_SO4", &p).unwrap();
        let b = load_map(&c, "res_SO4_T", &p).unwrap();
        let direct = load_map(&c, "res_G2_T", &p).unwrap();
        let (comp, _) = a.then(&b).unwrap().verify().unwrap();
        assert!(comp.differences(&direct).is_empty());
    }
}
