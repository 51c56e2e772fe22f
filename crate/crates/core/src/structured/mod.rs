//! Group-groupoids and vector-space-groupoids over prime fields.
//!
//! Each structure has two validators: one checks the laws directly
//! (groups, homomorphic structure maps, interchange law), the other checks
//! that the operations themselves are groupoid morphisms. The two agree on
//! every well-formed input.

pub mod field;

use crate::constructions::{direct_product, null_groupoid, pair_groupoid_over, pair_index};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::groupoid::FiniteGroupoid;
use crate::morphisms::GroupoidMorphism;
use crate::report::{Rule, ValidationReport};
use crate::Elem;

pub use field::{is_prime, CoordinateSpace, PrimeField};

/// Largest number of pairs of composable pairs an interchange scan visits.
pub const INTERCHANGE_BOUND: usize = 20_000_000;

/// Largest carrier `p^dim` accepted by [`pair_vector_space_groupoid`].
pub const VECTOR_SPACE_BOUND: usize = 64;

/// A groupoid with a group operation `⊕` on elements and one on units.
///
/// `omega` is indexed like the carrier's elements; `omega0` is indexed by
/// unit position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGroupoid {
    pub carrier: FiniteGroupoid,
    pub omega: GroupTable,
    pub omega0: GroupTable,
}

impl GroupGroupoid {
    pub fn new(carrier: FiniteGroupoid, omega: GroupTable, omega0: GroupTable) -> Result<Self> {
        let mut r = ValidationReport::new();
        if omega.len() != carrier.len() {
            r.push(Rule::Structure, vec![], format!("⊕ has {} elements, carrier has {}", omega.len(), carrier.len()));
        }
        if omega0.len() != carrier.units().len() {
            r.push(
                Rule::Structure,
                vec![],
                format!("unit ⊕ has {} elements, carrier has {} units", omega0.len(), carrier.units().len()),
            );
        }
        r.into_result().map_err(Error::Invalid)?;
        Ok(Self { carrier, omega, omega0 })
    }

    fn pos(&self, u: Elem) -> usize {
        self.carrier.unit_position(u).expect("structure maps land on units")
    }

    fn unit(&self, i: usize) -> Elem {
        self.carrier.units()[i]
    }

    pub fn is_commutative(&self) -> bool {
        self.omega.is_commutative() && self.omega0.is_commutative()
    }

    fn composable_pairs(&self) -> Vec<(Elem, Elem, Elem)> {
        self.carrier
            .elements()
            .flat_map(|x| self.carrier.row(x).iter().map(move |&(y, xy)| (x, y, xy)))
            .collect()
    }
}

/// Associativity, identity and inverses of a total table.
pub fn validate_group(t: &GroupTable) -> ValidationReport {
    t.validate()
}

fn check_homomorphisms(gg: &GroupGroupoid, r: &mut ValidationReport) {
    let g = &gg.carrier;
    let (w, w0) = (&gg.omega, &gg.omega0);
    for x in g.elements() {
        for y in g.elements() {
            let s = w.op(x, y);
            for (name, f) in [("α", FiniteGroupoid::source as fn(&FiniteGroupoid, Elem) -> Elem), ("β", FiniteGroupoid::target)] {
                if gg.pos(f(g, s)) != w0.op(gg.pos(f(g, x)), gg.pos(f(g, y))) {
                    r.push(
                        Rule::Homomorphism,
                        vec![x, y],
                        format!("{name}({0}⊕{1}) != {name}({0})⊕{name}({1})", g.label(x), g.label(y)),
                    );
                }
            }
            if g.inverse(s) != w.op(g.inverse(x), g.inverse(y)) {
                r.push(
                    Rule::Homomorphism,
                    vec![x, y],
                    format!("ι({0}⊕{1}) != ι({0})⊕ι({1})", g.label(x), g.label(y)),
                );
            }
        }
    }
    for i in 0..w0.len() {
        for j in 0..w0.len() {
            if gg.unit(w0.op(i, j)) != w.op(gg.unit(i), gg.unit(j)) {
                let (u, v) = (gg.unit(i), gg.unit(j));
                r.push(
                    Rule::Homomorphism,
                    vec![u, v],
                    format!("ε({0}⊕{1}) != ε({0})⊕ε({1})", g.label(u), g.label(v)),
                );
            }
        }
    }
}

fn interchange_bound(pairs: usize) -> Result<()> {
    let work = pairs.saturating_mul(pairs);
    if work > INTERCHANGE_BOUND {
        return Err(Error::SizeLimit {
            what: "interchange scan",
            size: work,
            limit: INTERCHANGE_BOUND,
        });
    }
    Ok(())
}

/// `(x·y)⊕(z·t) = (x⊕z)·(y⊕t)` over all pairs of composable pairs.
fn check_interchange(gg: &GroupGroupoid, pairs: &[(Elem, Elem, Elem)], r: &mut ValidationReport) {
    let g = &gg.carrier;
    let w = &gg.omega;
    for &(x, y, xy) in pairs {
        for &(z, t, zt) in pairs {
            let lhs = w.op(xy, zt);
            let rhs = g.compose(w.op(x, z), w.op(y, t));
            if rhs != Some(lhs) {
                r.push(
                    Rule::Interchange,
                    vec![x, y, z, t],
                    format!(
                        "({0}·{1})⊕({2}·{3}) != ({0}⊕{2})·({1}⊕{3})",
                        g.label(x),
                        g.label(y),
                        g.label(z),
                        g.label(t)
                    ),
                );
            }
        }
    }
}

/// `σ(x·y) = σ(x)·σ(y)`, a consequence of the other laws.
fn check_sigma(gg: &GroupGroupoid, pairs: &[(Elem, Elem, Elem)], r: &mut ValidationReport) {
    let g = &gg.carrier;
    let Some(inv) = (0..gg.omega.len()).map(|x| gg.omega.inverse(x)).collect::<Option<Vec<_>>>() else {
        return;
    };
    for &(x, y, xy) in pairs {
        if g.compose(inv[x], inv[y]) != Some(inv[xy]) {
            r.push(
                Rule::Interchange,
                vec![x, y],
                format!("σ({0}·{1}) != σ({0})·σ({1})", g.label(x), g.label(y)),
            );
        }
    }
}

/// Groups, homomorphic structure maps and the interchange law, plus the
/// derived compatibility of `σ` with the multiplication.
pub fn validate_group_groupoid(gg: &GroupGroupoid) -> Result<ValidationReport> {
    let pairs = gg.composable_pairs();
    interchange_bound(pairs.len())?;
    let mut r = gg.carrier.validate().prefixed("groupoid");
    let groups_ok = {
        let a = gg.omega.validate();
        let b = gg.omega0.validate();
        let ok = a.passed() && b.passed();
        r.merge(a.prefixed("⊕ on elements"));
        r.merge(b.prefixed("⊕ on units"));
        ok
    };
    if !groups_ok {
        return Ok(r);
    }
    check_homomorphisms(gg, &mut r);
    check_interchange(gg, &pairs, &mut r);
    if r.passed() {
        check_sigma(gg, &pairs, &mut r);
    }
    Ok(r)
}

/// The singleton groupoid `{λ}`.
fn singleton() -> FiniteGroupoid {
    null_groupoid(&["λ".to_string()]).expect("one label")
}

/// The operations `(ω, ω₀)`, `(ν, ν₀)` and `(σ, σ₀)` as groupoid morphisms.
pub fn validate_group_groupoid_by_morphisms(gg: &GroupGroupoid) -> Result<ValidationReport> {
    let g = &gg.carrier;
    interchange_bound(gg.composable_pairs().len())?;
    let mut r = g.validate().prefixed("groupoid");
    let a = gg.omega.validate();
    let b = gg.omega0.validate();
    let groups_ok = a.passed() && b.passed();
    r.merge(a.prefixed("⊕ on elements"));
    r.merge(b.prefixed("⊕ on units"));
    if !groups_ok {
        return Ok(r);
    }
    let n = g.len();
    let square = direct_product(g, g)?;
    let omega_map = square.elements().map(|z| gg.omega.op(z / n, z % n)).collect();
    let omega_units = square
        .units()
        .iter()
        .map(|&z| gg.unit(gg.omega0.op(gg.pos(z / n), gg.pos(z % n))))
        .collect();
    let m = GroupoidMorphism::new(square, g.clone(), omega_map, omega_units)?;
    r.merge(m.validate().prefixed("(ω,ω₀)"));

    let e = gg.omega.identity().expect("group");
    let e0 = gg.omega0.identity().expect("group");
    let m = GroupoidMorphism::new(singleton(), g.clone(), vec![e], vec![gg.unit(e0)])?;
    r.merge(m.validate().prefixed("(ν,ν₀)"));

    let sigma = g.elements().map(|x| gg.omega.inverse(x).expect("group")).collect();
    let sigma0 = (0..gg.omega0.len())
        .map(|i| gg.unit(gg.omega0.inverse(i).expect("group")))
        .collect();
    let m = GroupoidMorphism::new(g.clone(), g.clone(), sigma, sigma0)?;
    r.merge(m.validate().prefixed("(σ,σ₀)"));
    Ok(r)
}

/// A groupoid morphism between group-groupoids that is additive on
/// elements and on units.
pub fn validate_gg_morphism(m: &GroupoidMorphism, from: &GroupGroupoid, to: &GroupGroupoid) -> Result<ValidationReport> {
    if m.domain() != &from.carrier || m.codomain() != &to.carrier {
        return Err(Error::Hypothesis("morphism does not join the given group-groupoids".into()));
    }
    let mut r = m.validate();
    let g = m.domain();
    for x in g.elements() {
        for y in g.elements() {
            if m.apply(from.omega.op(x, y)) != to.omega.op(m.apply(x), m.apply(y)) {
                r.push(
                    Rule::Homomorphism,
                    vec![x, y],
                    format!("f({0}⊕{1}) != f({0})⊕f({1})", g.label(x), g.label(y)),
                );
            }
        }
    }
    let f0 = m.unit_map();
    for i in 0..from.omega0.len() {
        for j in 0..from.omega0.len() {
            let (Some(a), Some(b)) = (to.carrier.unit_position(f0[i]), to.carrier.unit_position(f0[j])) else {
                continue;
            };
            if f0[from.omega0.op(i, j)] != to.unit(to.omega0.op(a, b)) {
                let (u, v) = (from.unit(i), from.unit(j));
                r.push(
                    Rule::Homomorphism,
                    vec![u, v],
                    format!("f₀({0}⊕{1}) != f₀({0})⊕f₀({1})", g.label(u), g.label(v)),
                );
            }
        }
    }
    Ok(r)
}

/// The pair groupoid on a group with componentwise `⊕`.
pub fn pair_group_groupoid(t: &GroupTable) -> Result<GroupGroupoid> {
    t.validate().into_result().map_err(Error::Invalid)?;
    let n = t.len();
    let carrier = pair_groupoid_over(t.labels())?;
    // Element index → (a, b).
    let mut pairs = vec![(0, 0); n * n];
    for a in 0..n {
        for b in 0..n {
            pairs[pair_index(n, a, b)] = (a, b);
        }
    }
    let labels = carrier.labels().to_vec();
    let omega = GroupTable::from_fn(labels, |x, y| {
        let ((a, b), (c, d)) = (pairs[x], pairs[y]);
        pair_index(n, t.op(a, c), t.op(b, d))
    })?;
    // Unit position i is the diagonal pair (i, i).
    let omega0 = GroupTable::from_fn(t.labels().to_vec(), |i, j| t.op(i, j))?;
    GroupGroupoid::new(carrier, omega, omega0)
}

/// A commutative group-groupoid with a `GF(p)` scalar action.
///
/// `phi[k][x]` is `k·x` on elements, `phi0[k][i]` is `k·u` for the unit at
/// position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceGroupoid {
    pub gg: GroupGroupoid,
    pub field: PrimeField,
    pub phi: Vec<Vec<Elem>>,
    pub phi0: Vec<Vec<usize>>,
}

impl VectorSpaceGroupoid {
    pub fn new(gg: GroupGroupoid, p: u32, phi: Vec<Vec<Elem>>, phi0: Vec<Vec<usize>>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mut r = ValidationReport::new();
        let shape_ok = |rows: &[Vec<usize>], width: usize| {
            rows.len() == field.order() && rows.iter().all(|row| row.len() == width && row.iter().all(|&v| v < width))
        };
        if !shape_ok(&phi, gg.carrier.len()) {
            r.push(Rule::Structure, vec![], "scalar table on elements must be p rows over the carrier");
        }
        if !shape_ok(&phi0, gg.carrier.units().len()) {
            r.push(Rule::Structure, vec![], "scalar table on units must be p rows over the units");
        }
        r.into_result().map_err(Error::Invalid)?;
        Ok(Self { gg, field, phi, phi0 })
    }

    /// Returns a copy with `k·x` redefined.
    pub fn with_scalar(&self, k: usize, x: Elem, value: Elem) -> Self {
        let mut v = self.clone();
        v.phi[k][x] = value;
        v
    }
}

fn check_vector_space(field: &PrimeField, t: &GroupTable, phi: &[Vec<usize>], what: &str, r: &mut ValidationReport) {
    if !t.is_commutative() {
        r.push(Rule::Commutativity, vec![], format!("{what}: addition is not commutative"));
    }
    let n = t.len();
    for (x, &one_x) in phi[1].iter().enumerate() {
        if one_x != x {
            r.push(Rule::VectorSpace, vec![1, x], format!("{what}: 1·{} != itself", t.label(x)));
        }
    }
    for k in field.elements() {
        for x in 0..n {
            for y in 0..n {
                if phi[k][t.op(x, y)] != t.op(phi[k][x], phi[k][y]) {
                    r.push(
                        Rule::VectorSpace,
                        vec![k, x, y],
                        format!("{what}: {k}·({0}+{1}) != {k}·{0}+{k}·{1}", t.label(x), t.label(y)),
                    );
                }
            }
            for l in field.elements() {
                if phi[field.add(k, l)][x] != t.op(phi[k][x], phi[l][x]) {
                    r.push(
                        Rule::VectorSpace,
                        vec![k, l, x],
                        format!("{what}: ({k}+{l})·{0} != {k}·{0}+{l}·{0}", t.label(x)),
                    );
                }
                if phi[field.mul(k, l)][x] != phi[k][phi[l][x]] {
                    r.push(
                        Rule::VectorSpace,
                        vec![k, l, x],
                        format!("{what}: ({k}{l})·{0} != {k}·({l}·{0})", t.label(x)),
                    );
                }
            }
        }
    }
}

/// Vector-space axioms on elements and units, linear structure maps and
/// the interchange law.
pub fn validate_vector_space_groupoid(v: &VectorSpaceGroupoid) -> Result<ValidationReport> {
    let gg = &v.gg;
    let g = &gg.carrier;
    let pairs = gg.composable_pairs();
    interchange_bound(pairs.len())?;
    let mut r = g.validate().prefixed("groupoid");
    let a = gg.omega.validate();
    let b = gg.omega0.validate();
    let groups_ok = a.passed() && b.passed();
    r.merge(a.prefixed("+ on elements"));
    r.merge(b.prefixed("+ on units"));
    if !groups_ok {
        return Ok(r);
    }
    check_vector_space(&v.field, &gg.omega, &v.phi, "elements", &mut r);
    check_vector_space(&v.field, &gg.omega0, &v.phi0, "units", &mut r);
    check_homomorphisms(gg, &mut r);
    for k in v.field.elements() {
        for x in g.elements() {
            let kx = v.phi[k][x];
            for (name, f) in [("α", FiniteGroupoid::source as fn(&FiniteGroupoid, Elem) -> Elem), ("β", FiniteGroupoid::target)] {
                if gg.pos(f(g, kx)) != v.phi0[k][gg.pos(f(g, x))] {
                    r.push(Rule::Linearity, vec![k, x], format!("{name}({k}·{0}) != {k}·{name}({0})", g.label(x)));
                }
            }
            if g.inverse(kx) != v.phi[k][g.inverse(x)] {
                r.push(Rule::Linearity, vec![k, x], format!("ι({k}·{0}) != {k}·ι({0})", g.label(x)));
            }
        }
        for i in 0..gg.omega0.len() {
            if gg.unit(v.phi0[k][i]) != v.phi[k][gg.unit(i)] {
                let u = gg.unit(i);
                r.push(Rule::Linearity, vec![k, u], format!("ε({k}·{0}) != {k}·ε({0})", g.label(u)));
            }
        }
    }
    check_interchange(gg, &pairs, &mut r);
    Ok(r)
}

/// The defining conditions: vector spaces, a commutative group-groupoid,
/// and the scalar action as a morphism out of `null(GF(p)) × V`.
pub fn validate_vector_space_groupoid_by_definition(v: &VectorSpaceGroupoid) -> Result<ValidationReport> {
    let gg = &v.gg;
    let g = &gg.carrier;
    let mut r = validate_group_groupoid_by_morphisms(gg)?;
    if !gg.omega.validate().passed() || !gg.omega0.validate().passed() {
        return Ok(r);
    }
    check_vector_space(&v.field, &gg.omega, &v.phi, "elements", &mut r);
    check_vector_space(&v.field, &gg.omega0, &v.phi0, "units", &mut r);
    let scalars: Vec<String> = v.field.elements().map(|k| k.to_string()).collect();
    let k = null_groupoid(&scalars)?;
    let kv = direct_product(&k, g)?;
    let n = g.len();
    let map = kv.elements().map(|z| v.phi[z / n][z % n]).collect();
    let unit_map = kv
        .units()
        .iter()
        .map(|&z| gg.unit(v.phi0[z / n][gg.pos(z % n)]))
        .collect();
    let m = GroupoidMorphism::new(kv, g.clone(), map, unit_map)?;
    r.merge(m.validate().prefixed("(φ,φ₀)"));
    Ok(r)
}

/// The pair groupoid on `GF(p)^dim` with componentwise addition and scaling.
pub fn pair_vector_space_groupoid(p: u32, dim: usize) -> Result<VectorSpaceGroupoid> {
    let field = PrimeField::new(p)?;
    if dim == 0 {
        return Err(Error::Empty("vector space dimension"));
    }
    let size = (field.order() as u128).saturating_pow(dim as u32);
    if size > VECTOR_SPACE_BOUND as u128 {
        return Err(Error::SizeLimit {
            what: "vector space",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            limit: VECTOR_SPACE_BOUND,
        });
    }
    let space = CoordinateSpace { field, dim };
    let n = space.len();
    let labels = (0..n).map(|v| space.label(v)).collect();
    let t = GroupTable::from_fn(labels, |a, b| space.add(a, b))?;
    let gg = pair_group_groupoid(&t)?;
    let mut phi = vec![vec![0; n * n]; field.order()];
    for (k, row) in phi.iter_mut().enumerate() {
        for a in 0..n {
            for b in 0..n {
                row[pair_index(n, a, b)] = pair_index(n, space.scale(k, a), space.scale(k, b));
            }
        }
    }
    let phi0 = field
        .elements()
        .map(|k| (0..n).map(|a| space.scale(k, a)).collect())
        .collect();
    VectorSpaceGroupoid::new(gg, p, phi, phi0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, from_group};

    fn one_unit(t: &GroupTable) -> GroupGroupoid {
        let g = from_group(t).unwrap();
        GroupGroupoid::new(g, t.clone(), GroupTable::cyclic(1).unwrap()).unwrap()
    }

    #[test]
    fn pair_group_groupoid_on_z2_and_z4() {
        for n in [2, 4] {
            let gg = pair_group_groupoid(&cyclic_group(n).unwrap()).unwrap();
            assert_eq!(gg.carrier.len(), n * n);
            assert!(validate_group_groupoid(&gg).unwrap().passed());
            assert!(validate_group_groupoid_by_morphisms(&gg).unwrap().passed());
        }
    }

    #[test]
    fn abelian_group_is_a_group_groupoid() {
        let gg = one_unit(&GroupTable::klein());
        assert!(validate_group_groupoid(&gg).unwrap().passed());
        assert!(validate_group_groupoid_by_morphisms(&gg).unwrap().passed());
    }

    #[test]
    fn nonabelian_group_fails_interchange() {
        let gg = one_unit(&GroupTable::symmetric(3).unwrap());
        let r = validate_group_groupoid(&gg).unwrap();
        assert!(r.has(Rule::Interchange));
        assert!(!validate_group_groupoid_by_morphisms(&gg).unwrap().passed());
    }

    #[test]
    fn twisted_operation_is_caught() {
        let gg = pair_group_groupoid(&cyclic_group(2).unwrap()).unwrap();
        // Move the identity of ⊕ off the units.
        let perm = [2, 1, 0, 3];
        let twisted = GroupGroupoid::new(gg.carrier.clone(), gg.omega.transported(&perm), gg.omega0.clone()).unwrap();
        assert!(twisted.omega.is_group());
        let r = validate_group_groupoid(&twisted).unwrap();
        assert!(!r.passed());
        assert!(!validate_group_groupoid_by_morphisms(&twisted).unwrap().passed());
    }

    #[test]
    fn vector_space_groupoids() {
        let v = pair_vector_space_groupoid(2, 2).unwrap();
        assert_eq!(v.gg.carrier.len(), 16);
        assert!(validate_vector_space_groupoid(&v).unwrap().passed());
        assert!(validate_vector_space_groupoid_by_definition(&v).unwrap().passed());
        let bad = v.with_scalar(1, 5, 6);
        let r = validate_vector_space_groupoid(&bad).unwrap();
        assert!(!r.passed());
        assert!(!validate_vector_space_groupoid_by_definition(&bad).unwrap().passed());
        assert!(matches!(pair_vector_space_groupoid(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(pair_vector_space_groupoid(2, 7), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn gf3_over_itself() {
        let t = cyclic_group(3).unwrap();
        let gg = one_unit(&t);
        let phi = (0..3).map(|k| (0..3).map(|x| k * x % 3).collect()).collect();
        let v = VectorSpaceGroupoid::new(gg, 3, phi, vec![vec![0]; 3]).unwrap();
        assert!(validate_vector_space_groupoid(&v).unwrap().passed());
        assert!(validate_vector_space_groupoid_by_definition(&v).unwrap().passed());
    }

    #[test]
    fn diagonal_is_a_gg_morphism() {
        let z2 = cyclic_group(2).unwrap();
        let null = null_groupoid(z2.labels()).unwrap();
        let from = GroupGroupoid::new(null, z2.clone(), z2.clone()).unwrap();
        assert!(validate_group_groupoid(&from).unwrap().passed());
        let to = pair_group_groupoid(&z2).unwrap();
        let diagonal = |x: usize| pair_index(2, x, x);
        let m = GroupoidMorphism::from_element_map(from.carrier.clone(), to.carrier.clone(), vec![diagonal(0), diagonal(1)])
            .unwrap();
        assert!(validate_gg_morphism(&m, &from, &to).unwrap().passed());
        let id = GroupoidMorphism::identity(&to.carrier);
        assert!(validate_gg_morphism(&id, &to, &to).unwrap().passed());
        let flipped =
            GroupoidMorphism::from_element_map(from.carrier.clone(), to.carrier.clone(), vec![diagonal(1), diagonal(0)])
                .unwrap();
        assert!(flipped.is_valid());
        let r = validate_gg_morphism(&flipped, &from, &to).unwrap();
        assert!(r.has(Rule::Homomorphism));
    }
}
