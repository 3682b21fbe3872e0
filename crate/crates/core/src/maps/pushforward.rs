//! Classes `i_*(p)` pushed forward from the closed orbit with Chow ring
//! `Z_(2)[x2, x3]`, multiplied by ambient classes through the projection
//! formula `i_*(p) y = i_*(p i^*(y))` (valid modulo `c8'`).
//!
//! Payloads are kept in a canonical form using `i_*(1) = 0` and the
//! ambient pull-backs `i^*(c4) = x2^2`, `i^*(c6) = -x3^2`, `i^*(c2') = 2 x2`:
//! a monomial `x2^a x3^b` with `b` even is `i_*` of a pulled-back class
//! times `1` (`a` even, so zero) or times `x2` (`a` odd, so a multiple of
//! the 2-torsion class `zeta3`, whose coefficient is read mod 2).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{MapError, RingMap};
use crate::catalog::PushForwardSpec;
use crate::polyring::{CoefficientRing, Coeff, Monomial, Polynomial, VarSet};
use crate::presentations::{GradedRingPresentation, Params};

/// `i_*(payload)`, of ambient degree `deg(payload) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushForwardElement {
    payload: Polynomial,
}

fn canonical(p: &Polynomial) -> Result<Polynomial, MapError> {
    let v = p.vars();
    let (i2, i3) = (v.require("x2")?, v.require("x3")?);
    let ring = p.ring();
    let mut out = Polynomial::zero(ring, v.clone());
    for (m, c) in p.terms() {
        let (a, b) = (m.exp(i2), m.exp(i3));
        let c = if b % 2 == 1 {
            c.clone()
        } else if a % 2 == 1 {
            ring.residue_mod(c, 2)?
        } else {
            continue;
        };
        if !c.is_zero() {
            out = &out + &Polynomial::monomial(ring, v.clone(), m.clone(), c)?;
        }
    }
    Ok(out)
}

impl PushForwardElement {
    pub fn new(payload: Polynomial) -> Result<Self, MapError> {
        Ok(Self { payload: canonical(&payload)? })
    }

    pub fn payload(&self) -> &Polynomial {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    /// Ambient degree; `None` for zero or inhomogeneous payloads.
    pub fn degree(&self) -> Option<i64> {
        self.payload.homogeneous_degree().map(|d| d + 1)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MapError> {
        Self::new(self.payload.try_add(&other.payload)?)
    }

    /// `z * y = i_*(payload * i^*(y))`, modulo `c8'`.
    pub fn multiply(&self, y: &Polynomial, i_star: &RingMap) -> Result<Self, MapError> {
        let iy = i_star.apply(y)?;
        Self::new(self.payload.try_mul(&iy)?)
    }
}

#[derive(Clone, Debug)]
pub struct ZetaClass {
    pub name: String,
    pub degree: i64,
    /// In the orbit's Chow ring.
    pub payload: Polynomial,
    /// Expression in the ambient generators (over `Q`), when the class is
    /// not itself a generator.
    pub expansion: Option<Polynomial>,
}

/// Evaluation of a zeta-form.
#[derive(Clone, Debug)]
pub struct ZetaEvaluation {
    pub value: PushForwardElement,
    /// Terms divisible by `c8'`, dropped by the projection formula.
    pub dropped: Polynomial,
    /// Whether substituting the expansions reproduces the relation.
    pub link: bool,
}

#[derive(Debug)]
pub struct PushForwardCalculus {
    ambient: Arc<GradedRingPresentation>,
    i_star: RingMap,
    classes: Vec<ZetaClass>,
    /// Ambient generators followed by the non-generator zeta classes.
    ext_vars: Arc<VarSet>,
    constants: Params,
    /// `i^*` of every extended variable, in the orbit's ring.
    ext_images: Vec<Polynomial>,
    c8: String,
}

impl PushForwardCalculus {
    /// `constants` supply `a`, `b` (and any other scalars the forms use);
    /// the ambient's own parameters are added.
    pub fn new(spec: &PushForwardSpec, i_star: RingMap, constants: &Params) -> Result<Self, MapError> {
        let ambient = i_star.source().clone();
        let orbit = i_star.target().clone();
        let mut params = constants.clone();
        params.extend(ambient.params().iter().map(|(k, v)| (k.clone(), v.clone())));
        let mut names: Vec<(String, i64)> = ambient
            .vars()
            .names()
            .iter()
            .zip(ambient.vars().degrees())
            .map(|(n, &d)| (n.clone(), d))
            .collect();
        let mut classes = Vec::new();
        for c in &spec.classes {
            let payload = orbit.parse(&c.payload)?;
            if payload.homogeneous_degree().map(|d| d + 1) != Some(c.degree) {
                return Err(MapError::BadImage {
                    map: i_star.name().into(),
                    generator: c.name.clone(),
                    msg: "payload degree does not match".into(),
                });
            }
            let expansion = match &c.expansion {
                Some(e) => Some(crate::polyring::parse_polynomial_with(
                    e,
                    CoefficientRing::Rationals,
                    ambient.vars(),
                    &params,
                )?),
                None => None,
            };
            if ambient.vars().index_of(&c.name).is_none() {
                names.push((c.name.clone(), c.degree));
            }
            classes.push(ZetaClass { name: c.name.clone(), degree: c.degree, payload, expansion });
        }
        let ext_vars = VarSet::new(names)?;
        let mut ext_images = Vec::new();
        for n in ext_vars.names() {
            let img = match ambient.vars().index_of(n) {
                Some(_) => i_star.image(n)?.clone(),
                None => {
                    let c = classes.iter().find(|c| &c.name == n).expect("listed class");
                    let e = c.expansion.as_ref().ok_or_else(|| MapError::BadImage {
                        map: i_star.name().into(),
                        generator: n.clone(),
                        msg: "class without expansion".into(),
                    })?;
                    let q = e.substitute_into(
                        &ambient
                            .vars()
                            .names()
                            .iter()
                            .map(|g| i_star.image(g).map(|p| p.change_ring(CoefficientRing::Rationals)))
                            .collect::<Result<Result<Vec<_>, _>, _>>()??,
                        CoefficientRing::Rationals,
                        orbit.vars().clone(),
                    )?;
                    orbit.normal_form(&q.change_ring(orbit.ring())?)
                }
            };
            ext_images.push(img);
        }
        Ok(Self { ambient, i_star, classes, ext_vars, constants: params, ext_images, c8: "c8p".into() })
    }

    pub fn ambient(&self) -> &Arc<GradedRingPresentation> {
        &self.ambient
    }

    pub fn i_star(&self) -> &RingMap {
        &self.i_star
    }

    pub fn classes(&self) -> &[ZetaClass] {
        &self.classes
    }

    pub fn class(&self, name: &str) -> Option<&ZetaClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// `i^*` of a zeta class, from its expansion (or the map, for generators).
    pub fn pullback_of_class(&self, name: &str) -> Option<&Polynomial> {
        self.ext_vars.index_of(name).map(|i| &self.ext_images[i])
    }

    pub fn element(&self, class: &str) -> Result<PushForwardElement, MapError> {
        let c = self.class(class).ok_or_else(|| MapError::WrongSource(class.into()))?;
        PushForwardElement::new(c.payload.clone())
    }

    pub fn parse_form(&self, text: &str) -> Result<Polynomial, MapError> {
        Ok(crate::polyring::parse_polynomial_with(
            text,
            CoefficientRing::Rationals,
            &self.ext_vars,
            &self.constants,
        )?)
    }

    /// Substitutes the expansions of the non-generator classes.
    pub fn expand(&self, form: &Polynomial) -> Result<Polynomial, MapError> {
        let vars = self.ambient.vars();
        let images = self
            .ext_vars
            .names()
            .iter()
            .map(|n| match vars.index_of(n) {
                Some(_) => Ok(Polynomial::var(CoefficientRing::Rationals, vars.clone(), n)?),
                None => Ok(self.class(n).and_then(|c| c.expansion.clone()).expect("expansion checked")),
            })
            .collect::<Result<Vec<_>, MapError>>()?;
        Ok(form.substitute_into(&images, CoefficientRing::Rationals, vars.clone())?)
    }

    /// Evaluates a form in which every term carries a zeta factor or `c8'`.
    /// The first zeta factor is pushed forward, the rest of the term is
    /// pulled back.
    pub fn evaluate(&self, form: &Polynomial, relation: Option<&Polynomial>) -> Result<ZetaEvaluation, MapError> {
        let orbit = self.i_star.target();
        let c8 = self.ext_vars.require(&self.c8)?;
        let zeta_idx: Vec<(usize, &ZetaClass)> = self
            .classes
            .iter()
            .map(|c| (self.ext_vars.index_of(&c.name).expect("class variable"), c))
            .collect();
        let mut payload = Polynomial::zero(orbit.ring(), orbit.vars().clone());
        let mut dropped = Polynomial::zero(CoefficientRing::Rationals, self.ext_vars.clone());
        for (m, c) in form.terms() {
            if m.exp(c8) > 0 {
                dropped = &dropped + &Polynomial::monomial(CoefficientRing::Rationals, self.ext_vars.clone(), m.clone(), c.clone())?;
                continue;
            }
            let Some((zi, zc)) = zeta_idx.iter().find(|(i, _)| m.exp(*i) > 0) else {
                return Err(MapError::BadImage {
                    map: self.i_star.name().into(),
                    generator: m.display(&self.ext_vars),
                    msg: "term has neither a zeta factor nor c8'".into(),
                });
            };
            let rest = Monomial::var(*zi, &self.ext_vars)
                .quotient_of(m)
                .expect("zeta divides the term");
            let rest_poly =
                Polynomial::monomial(CoefficientRing::Rationals, self.ext_vars.clone(), rest, Coeff::from_integer(1.into()))?;
            let pulled = rest_poly.substitute_into(&self.ext_images, orbit.ring(), orbit.vars().clone())?;
            let term = (&zc.payload * &pulled).scale(&orbit.ring().coerce(c)?)?;
            payload = &payload + &term;
        }
        let value = PushForwardElement::new(payload)?;
        let link = match relation {
            Some(r) => self.expand(form)? == r.change_ring(CoefficientRing::Rationals)?,
            None => true,
        };
        Ok(ZetaEvaluation { value, dropped, link })
    }

    pub fn evaluate_text(&self, text: &str, relation: Option<&Polynomial>) -> Result<ZetaEvaluation, MapError> {
        let f = self.parse_form(text)?;
        self.evaluate(&f, relation)
    }
}

/// The calculus of the catalog, for one instantiation of the ambient.
pub fn load_calculus(
    catalog: &crate::catalog::Catalog,
    params: &Params,
    constants: &Params,
) -> Result<PushForwardCalculus, MapError> {
    let spec = catalog.pushforward()?;
    let i_star = super::load_map(catalog, &spec.map, params)?;
    if i_star.source().spec().name != spec.presentation {
        return Err(MapError::NotComposable(spec.map.clone(), spec.presentation.clone()));
    }
    PushForwardCalculus::new(spec, i_star, constants)
}

/// `a`, `b` as used by the zeta-forms.
pub fn zeta_constants(a: Coeff, b: Coeff) -> Params {
    let mut p = BTreeMap::new();
    p.insert("a".to_string(), a);
    p.insert("b".to_string(), b);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::maps::tests::delta;
    use crate::polyring::rational;

    fn calc(d1: i64, d2: i64) -> PushForwardCalculus {
        let c = Catalog::builtin();
        load_calculus(&c, &delta(d1, d2), &zeta_constants(rational(3, 1), rational(1, 1))).unwrap()
    }

    #[test]
    fn zeta3_times_c4_and_c4p_agree() {
        let k = calc(0, 0);
        let z3 = k.element("zeta3").unwrap();
        let a = z3.multiply(&k.ambient().parse("c4p").unwrap(), k.i_star()).unwrap();
        let b = z3.multiply(&k.ambient().parse("c4").unwrap(), k.i_star()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.payload().to_string(), "1*x2^3");
        assert_eq!(a.degree(), Some(7));
    }

    #[test]
    fn zeta3_annihilators() {
        let k = calc(0, 0);
        let z3 = k.element("zeta3").unwrap();
        for y in ["c7", "c2p", "zeta3"] {
            assert!(z3.multiply(&k.ambient().parse(y).unwrap(), k.i_star()).unwrap().is_zero(), "{y}");
        }
    }

    #[test]
    fn constant_payloads_vanish() {
        let k = calc(0, 0);
        let one = k.i_star().target().parse("5 + x2^2").unwrap();
        assert!(PushForwardElement::new(one).unwrap().is_zero());
    }

    #[test]
    fn pullbacks_of_zeta4_and_zeta6_vanish() {
        let k = calc(1, 1);
        assert!(k.pullback_of_class("zeta4").unwrap().is_zero());
        assert!(k.pullback_of_class("zeta6").unwrap().is_zero());
    }

    #[test]
    fn every_form_evaluates_to_zero() {
        let c = Catalog::builtin();
        for (d1, d2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let k = calc(d1, d2);
            for r in &c.pushforward().unwrap().relations {
                let rel = k.ambient().relation(&r.id).unwrap().poly.clone();
                let e = k.evaluate_text(&r.form, Some(&rel)).unwrap();
                assert!(e.value.is_zero(), "{} -> {}", r.id, e.value.payload());
                assert!(e.link, "{}", r.id);
            }
        }
    }

    #[test]
    fn wrong_a_is_detected() {
        let k = load_calculus(&Catalog::builtin(), &delta(0, 0), &zeta_constants(rational(1, 1), rational(1, 1))).unwrap();
        let e = k.evaluate_text("a*zeta4*c2p - 6*b*zeta6", None).unwrap();
        assert!(!e.value.is_zero());
    }
}
