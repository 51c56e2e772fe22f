//! Groupoid morphisms, strongness, kernels, images and preimages, and the
//! standard morphisms attached to a groupoid.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use crate::constructions::{
    direct_product, induced_groupoid, left_translation_groupoid, pair_groupoid_over, pair_index,
};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::quasiperm::{closure_witness, Quasipermutation};
use crate::report::{Rule, ValidationReport};
use crate::subgroupoids::{enumerate_subgroupoids, Subgroupoid};
use crate::Elem;

/// A pair `(f, f₀)` of maps between two groupoids.
///
/// `unit_map[i]` is the image of the `i`-th unit of the domain, as an
/// element of the codomain.
#[derive(Clone, Debug)]
pub struct GroupoidMorphism {
    domain: FiniteGroupoid,
    codomain: FiniteGroupoid,
    map: Vec<Elem>,
    unit_map: Vec<Elem>,
    strong: OnceLock<Option<(Elem, Elem)>>,
}

impl GroupoidMorphism {
    pub fn new(domain: FiniteGroupoid, codomain: FiniteGroupoid, map: Vec<Elem>, unit_map: Vec<Elem>) -> Result<Self> {
        let mut r = ValidationReport::new();
        if map.len() != domain.len() {
            r.push(
                Rule::Structure,
                vec![],
                format!("element map has {} entries for {} elements", map.len(), domain.len()),
            );
        }
        if unit_map.len() != domain.units().len() {
            r.push(
                Rule::Structure,
                vec![],
                format!("unit map has {} entries for {} units", unit_map.len(), domain.units().len()),
            );
        }
        for (x, &y) in map.iter().chain(unit_map.iter()).enumerate() {
            if y >= codomain.len() {
                r.push(Rule::Structure, vec![x], format!("image {y} is out of range"));
            }
        }
        r.into_result().map_err(Error::Invalid)?;
        Ok(Self {
            domain,
            codomain,
            map,
            unit_map,
            strong: OnceLock::new(),
        })
    }

    /// Takes `f₀` to be the restriction of `f` to units.
    pub fn from_element_map(domain: FiniteGroupoid, codomain: FiniteGroupoid, map: Vec<Elem>) -> Result<Self> {
        let unit_map = domain
            .units()
            .iter()
            .map(|&u| map.get(u).copied().unwrap_or(usize::MAX))
            .collect();
        Self::new(domain, codomain, map, unit_map)
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        Self::from_element_map(g.clone(), g.clone(), g.elements().collect()).expect("identity is well-formed")
    }

    pub fn domain(&self) -> &FiniteGroupoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroupoid {
        &self.codomain
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn unit_map(&self) -> &[Elem] {
        &self.unit_map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `f₀(u)` for a unit `u` of the domain.
    pub fn apply_unit(&self, u: Elem) -> Option<Elem> {
        self.domain.unit_position(u).map(|p| self.unit_map[p])
    }

    /// Both defining conditions and the derived identities `f∘ε = ε′∘f₀`
    /// and `f∘ι = ι′∘f`, each with witnesses in the domain.
    pub fn validate(&self) -> ValidationReport {
        let (g, h) = (&self.domain, &self.codomain);
        let mut r = ValidationReport::new();
        for x in g.elements() {
            let fx = self.map[x];
            for &(y, xy) in g.row(x) {
                let fy = self.map[y];
                match h.compose(fx, fy) {
                    Some(p) if p == self.map[xy] => {}
                    Some(_) => r.push(
                        Rule::Homomorphism,
                        vec![x, y],
                        format!("f({0}·{1}) != f({0})·f({1})", g.label(x), g.label(y)),
                    ),
                    None => r.push(
                        Rule::Homomorphism,
                        vec![x, y],
                        format!("f({})·f({}) is undefined", g.label(x), g.label(y)),
                    ),
                }
            }
            let f0 = |u: Elem| self.apply_unit(u).expect("source is a unit");
            if h.source(fx) != f0(g.source(x)) || h.target(fx) != f0(g.target(x)) {
                r.push(
                    Rule::SourceTarget,
                    vec![x],
                    format!("source or target of f({}) disagrees with f₀", g.label(x)),
                );
            }
            if h.inverse(fx) != self.map[g.inverse(x)] {
                r.push(
                    Rule::InverseCompatibility,
                    vec![x],
                    format!("f({0}⁻¹) != f({0})⁻¹", g.label(x)),
                );
            }
        }
        for (i, &u) in g.units().iter().enumerate() {
            let v = self.unit_map[i];
            if !h.is_unit(v) {
                r.push(
                    Rule::UnitPreservation,
                    vec![u],
                    format!("f₀({}) = {} is not a unit", g.label(u), h.label(v)),
                );
            } else if self.map[u] != v {
                r.push(
                    Rule::UnitPreservation,
                    vec![u],
                    format!("f({0}) != f₀({0})", g.label(u)),
                );
            }
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// A pair `(x, y)` with `f(x)·f(y)` defined but `x·y` undefined.
    pub fn strong_witness(&self) -> Option<(Elem, Elem)> {
        *self.strong.get_or_init(|| {
            let (g, h) = (&self.domain, &self.codomain);
            // Group domain elements by the target of their image, then only
            // pairs landing on composable images need a look.
            let mut by_image_source: HashMap<Elem, Vec<Elem>> = HashMap::new();
            for y in g.elements() {
                by_image_source.entry(h.source(self.map[y])).or_default().push(y);
            }
            for x in g.elements() {
                let t = h.target(self.map[x]);
                for &y in by_image_source.get(&t).map_or(&[][..], |v| v.as_slice()) {
                    if !g.composable(x, y) {
                        return Some((x, y));
                    }
                }
            }
            None
        })
    }

    pub fn is_strong(&self) -> bool {
        self.strong_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<Elem> = self.map.iter().copied().collect();
        let hit_units: BTreeSet<Elem> = self.unit_map.iter().copied().collect();
        hit.len() == self.codomain.len() && hit_units.len() == self.codomain.units().len()
    }

    pub fn is_injective(&self) -> bool {
        let hit: BTreeSet<Elem> = self.map.iter().copied().collect();
        hit.len() == self.map.len()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `Ker(f) = {x | f(x) is a unit}`.
    pub fn kernel(&self) -> Result<Subgroupoid<'_>> {
        let members: Vec<Elem> = self
            .domain
            .elements()
            .filter(|&x| self.codomain.is_unit(self.map[x]))
            .collect();
        Subgroupoid::new(&self.domain, &members)
    }

    /// `f(H)`; only defined for strong morphisms.
    pub fn image(&self, h: &Subgroupoid<'_>) -> Result<Subgroupoid<'_>> {
        if let Some((x, y)) = self.strong_witness() {
            return Err(Error::NotStrong(x, y));
        }
        let members: BTreeSet<Elem> = h.members().iter().map(|&x| self.map[x]).collect();
        Subgroupoid::new(&self.codomain, &members.into_iter().collect::<Vec<_>>())
    }

    /// `f(Γ)`.
    pub fn full_image(&self) -> Result<Subgroupoid<'_>> {
        let all: Vec<Elem> = self.domain.elements().collect();
        let whole = Subgroupoid::new(&self.domain, &all)?;
        self.image(&whole)
    }

    /// `f⁻¹(H′)`.
    pub fn preimage(&self, h: &Subgroupoid<'_>) -> Result<Subgroupoid<'_>> {
        let members: Vec<Elem> = self
            .domain
            .elements()
            .filter(|&x| h.contains(self.map[x]))
            .collect();
        if members.is_empty() {
            return Err(Error::Empty("preimage"));
        }
        Subgroupoid::new(&self.domain, &members)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupoidMorphism) -> Result<GroupoidMorphism> {
        if self.codomain != other.domain {
            return Err(Error::Hypothesis(
                "codomain of the first morphism is not the domain of the second".into(),
            ));
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        let unit_map = self
            .unit_map
            .iter()
            .map(|&v| other.apply_unit(v).unwrap_or(other.map[v]))
            .collect();
        GroupoidMorphism::new(self.domain.clone(), other.codomain.clone(), map, unit_map)
    }
}

/// The anchor `x ↦ (α(x), β(x))` into the pair groupoid on the base.
pub fn anchor_morphism(g: &FiniteGroupoid) -> Result<GroupoidMorphism> {
    let base = g.base();
    let pg = pair_groupoid_over(&base)?;
    let m = base.len();
    let pos = |u: Elem| g.unit_position(u).expect("source is a unit");
    let map = g
        .elements()
        .map(|x| pair_index(m, pos(g.source(x)), pos(g.target(x))))
        .collect();
    GroupoidMorphism::new(g.clone(), pg, map, (0..m).collect())
}

/// The canonical morphism `f*(Γ) → Γ`, `(x, y, a) ↦ a`, over the base map `f`.
pub fn induced_canonical_morphism(g: &FiniteGroupoid, map: &[(String, String)]) -> Result<GroupoidMorphism> {
    let ind = induced_groupoid(g, map)?;
    let f = ind.triples.iter().map(|&(_, _, a)| a).collect();
    let f0 = ind
        .groupoid
        .units()
        .iter()
        .map(|&u| ind.base_map[ind.triples[u].0])
        .collect();
    GroupoidMorphism::new(ind.groupoid, g.clone(), f, f0)
}

/// The morphism `a ↦ L_a` onto the groupoid of left translations.
#[derive(Clone, Debug)]
pub struct CayleyEmbedding {
    pub morphism: GroupoidMorphism,
    pub translations: Vec<Quasipermutation>,
}

impl CayleyEmbedding {
    /// First translation (or pair of translations) whose inverse or product
    /// in the symmetric groupoid on the element set is not a translation.
    pub fn closure_witness(&self) -> Result<Option<(usize, Option<usize>)>> {
        closure_witness(&self.translations)
    }
}

pub fn cayley_embed(g: &FiniteGroupoid) -> Result<CayleyEmbedding> {
    let l = left_translation_groupoid(g)?;
    let morphism = GroupoidMorphism::new(g.clone(), l.groupoid, g.elements().collect(), g.units().to_vec())?;
    Ok(CayleyEmbedding {
        morphism,
        translations: l.translations,
    })
}

/// Projection `g × h → g` onto the first factor.
pub fn first_projection(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<GroupoidMorphism> {
    let p = direct_product(g, h)?;
    let m = h.len();
    let map = p.elements().map(|z| z / m).collect();
    GroupoidMorphism::from_element_map(p, g.clone(), map)
}

/// Projection `g × h → h` onto the second factor.
pub fn second_projection(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<GroupoidMorphism> {
    let p = direct_product(g, h)?;
    let m = h.len();
    let map = p.elements().map(|z| z % m).collect();
    GroupoidMorphism::from_element_map(p, h.clone(), map)
}

/// Outcome of comparing subgroupoids over the kernel with subgroupoids of
/// the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// Subgroupoids of the domain containing the kernel.
    pub over_kernel: usize,
    /// Wide subgroupoids of the codomain.
    pub codomain_wide: usize,
    pub normal_over_kernel: usize,
    pub codomain_normal: usize,
    /// All subgroupoids of the codomain, wide or not.
    pub codomain_all: usize,
    pub bijection: bool,
    pub normal_bijection: bool,
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.bijection && self.normal_bijection
    }
}

/// Checks that `H ↦ f(H)` and `H′ ↦ f⁻¹(H′)` are mutually inverse between
/// subgroupoids containing `Ker(f)` and wide subgroupoids of the codomain,
/// and between their normal parts.
pub fn correspondence_check(m: &GroupoidMorphism) -> Result<CorrespondenceReport> {
    m.validate().into_result().map_err(Error::Invalid)?;
    if let Some((x, y)) = m.strong_witness() {
        return Err(Error::NotStrong(x, y));
    }
    if !m.is_surjective() {
        return Err(Error::Hypothesis("morphism is not surjective on elements and units".into()));
    }
    let ker = m.kernel()?;
    let upstairs: Vec<Subgroupoid<'_>> = enumerate_subgroupoids(m.domain(), false)?
        .into_iter()
        .filter(|h| ker.is_subset_of(h))
        .collect();
    let all_downstairs = enumerate_subgroupoids(m.codomain(), false)?;
    let codomain_all = all_downstairs.len();
    let downstairs: Vec<Subgroupoid<'_>> = all_downstairs.into_iter().filter(|h| h.is_wide()).collect();

    let mut failures = Vec::new();
    let mut check = |ups: &[&Subgroupoid<'_>], downs: &[&Subgroupoid<'_>], what: &str| -> Result<bool> {
        let down_set: BTreeSet<&[Elem]> = downs.iter().map(|h| h.members()).collect();
        let up_set: BTreeSet<&[Elem]> = ups.iter().map(|h| h.members()).collect();
        let mut ok = true;
        for h in ups {
            let img = m.image(h)?;
            let back = m.preimage(&img)?;
            if !down_set.contains(img.members()) {
                ok = false;
                failures.push(format!("{what}: f({:?}) = {:?} is not in the codomain lattice", h.labels(), img.labels()));
            }
            if back.members() != h.members() {
                ok = false;
                failures.push(format!("{what}: f⁻¹(f({:?})) = {:?}", h.labels(), back.labels()));
            }
        }
        for h in downs {
            let pre = m.preimage(h)?;
            let there = m.image(&pre)?;
            if !up_set.contains(pre.members()) {
                ok = false;
                failures.push(format!("{what}: f⁻¹({:?}) = {:?} is not over the kernel", h.labels(), pre.labels()));
            }
            if there.members() != h.members() {
                ok = false;
                failures.push(format!("{what}: f(f⁻¹({:?})) = {:?}", h.labels(), there.labels()));
            }
        }
        Ok(ok && ups.len() == downs.len())
    };
    let all_up: Vec<&Subgroupoid<'_>> = upstairs.iter().collect();
    let all_down: Vec<&Subgroupoid<'_>> = downstairs.iter().collect();
    let bijection = check(&all_up, &all_down, "subgroupoids")?;
    let normal_up: Vec<&Subgroupoid<'_>> = upstairs.iter().filter(|h| h.is_normal()).collect();
    let normal_down: Vec<&Subgroupoid<'_>> = downstairs.iter().filter(|h| h.is_normal()).collect();
    let normal_bijection = check(&normal_up, &normal_down, "normal subgroupoids")?;
    Ok(CorrespondenceReport {
        over_kernel: upstairs.len(),
        codomain_wide: downstairs.len(),
        normal_over_kernel: normal_up.len(),
        codomain_normal: normal_down.len(),
        codomain_all,
        bijection,
        normal_bijection,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, disjoint_union, from_group, pair_groupoid};
    use crate::iso::is_isomorphic;
    use crate::subgroupoids::{isotropy_subgroupoid, null_subgroupoid};

    fn z(n: usize) -> FiniteGroupoid {
        from_group(&cyclic_group(n).unwrap()).unwrap()
    }

    fn mod_two() -> GroupoidMorphism {
        GroupoidMorphism::from_element_map(z(4), z(2), vec![0, 1, 0, 1]).unwrap()
    }

    #[test]
    fn identity_is_valid_and_strong() {
        let g = pair_groupoid(3).unwrap();
        let id = GroupoidMorphism::identity(&g);
        assert!(id.is_valid());
        assert!(id.is_strong());
        assert!(id.is_isomorphism());
        assert_eq!(id.kernel().unwrap().members(), null_subgroupoid(&g).unwrap().members());
    }

    #[test]
    fn broken_source_condition_is_reported() {
        let g = pair_groupoid(2).unwrap();
        let mut map: Vec<Elem> = g.elements().collect();
        map[2] = 3;
        let m = GroupoidMorphism::from_element_map(g.clone(), g, map).unwrap();
        let r = m.validate();
        assert!(r.has(Rule::SourceTarget));
        assert!(r.violations().iter().any(|v| v.witness == vec![2]));
    }

    #[test]
    fn reduction_mod_two() {
        let m = mod_two();
        assert!(m.is_valid());
        assert!(m.is_strong());
        assert_eq!(m.kernel().unwrap().members(), &[0, 2]);
        let r = correspondence_check(&m).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!((r.over_kernel, r.codomain_wide), (2, 2));
    }

    #[test]
    fn projection_correspondence() {
        let m = first_projection(&pair_groupoid(2).unwrap(), &z(2)).unwrap();
        assert!(m.is_valid());
        assert!(m.is_strong());
        assert_eq!(m.kernel().unwrap().len(), 4);
        let img = m.full_image().unwrap();
        assert_eq!(img.len(), 4);
        let r = correspondence_check(&m).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.over_kernel, r.codomain_wide);
        assert_eq!(r.codomain_all, 4);
    }

    #[test]
    fn preimage_of_null_is_kernel() {
        let m = first_projection(&pair_groupoid(2).unwrap(), &z(2)).unwrap();
        let null = null_subgroupoid(m.codomain()).unwrap();
        assert_eq!(m.preimage(&null).unwrap().members(), m.kernel().unwrap().members());
    }

    #[test]
    fn anchor_is_strong() {
        let u = disjoint_union(&[&pair_groupoid(2).unwrap(), &z(3)]).unwrap();
        let a = anchor_morphism(&u).unwrap();
        assert!(a.is_valid());
        assert!(a.is_strong());
        let is = isotropy_subgroupoid(a.codomain()).unwrap();
        assert_eq!(a.preimage(&is).unwrap().members(), u.isotropy_bundle().as_slice());
        let gp = pair_groupoid(3).unwrap();
        assert!(anchor_morphism(&gp).unwrap().is_isomorphism());
        let za = anchor_morphism(&z(4)).unwrap();
        assert!(za.map().iter().all(|&y| y == 0));
    }

    #[test]
    fn induced_canonical_is_not_strong() {
        let map = vec![("x".to_string(), "0".to_string()), ("y".to_string(), "0".to_string())];
        let m = induced_canonical_morphism(&z(2), &map).unwrap();
        assert!(m.is_valid());
        let (a, b) = m.strong_witness().unwrap();
        let d = m.domain();
        assert!(!d.composable(a, b));
        assert!(m.codomain().composable(m.apply(a), m.apply(b)));
        assert!(matches!(m.image(&null_subgroupoid(d).unwrap()), Err(Error::NotStrong(..))));
    }

    #[test]
    fn cayley_embedding_is_iso() {
        let g = disjoint_union(&[&pair_groupoid(2).unwrap(), &z(4)]).unwrap();
        let c = cayley_embed(&g).unwrap();
        assert!(c.morphism.is_valid());
        assert!(c.morphism.is_isomorphism());
        assert_eq!(c.closure_witness().unwrap(), None);
        assert!(is_isomorphic(&g, c.morphism.codomain()).unwrap().is_some());
    }

    #[test]
    fn composition_keeps_strongness() {
        let p = first_projection(&pair_groupoid(2).unwrap(), &z(2)).unwrap();
        let a = anchor_morphism(p.codomain()).unwrap();
        let c = p.then(&a).unwrap();
        assert!(c.is_valid());
        assert!(c.is_strong());
        assert!(p.then(&p).is_err());
    }
}
