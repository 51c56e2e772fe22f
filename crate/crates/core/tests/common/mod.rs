#![allow(dead_code)]

use brandt::constructions::{
    cyclic_group, direct_product, disjoint_union, from_group, induced_groupoid, left_translation_groupoid,
    null_groupoid, pair_groupoid, whitney_sum,
};
use brandt::quasiperm::{alternating_groupoid, symmetric_groupoid};
use brandt::{FiniteGroupoid, GroupTable};
use proptest::prelude::*;

/// Source, target and inverse of `a1..a14`, transcribed from the reference table.
pub const ALPHA: [usize; 14] = [1, 2, 1, 2, 5, 6, 7, 5, 6, 7, 11, 11, 11, 11];
pub const BETA: [usize; 14] = [1, 2, 2, 1, 5, 6, 7, 6, 5, 7, 11, 11, 11, 11];
pub const INV: [usize; 14] = [1, 2, 4, 3, 5, 6, 7, 9, 8, 10, 11, 14, 13, 12];

/// Every filled cell of the reference `⊙` table as `(i, j, k)` meaning `a_i ⊙ a_j = a_k`.
pub const PRODUCTS: [(usize, usize, usize); 36] = [
    (1, 1, 1), (1, 3, 3),
    (2, 2, 2), (2, 4, 4),
    (3, 2, 3), (3, 4, 1),
    (4, 1, 4), (4, 3, 2),
    (5, 5, 5), (5, 8, 8),
    (6, 6, 6), (6, 9, 9),
    (7, 7, 7), (7, 10, 10),
    (8, 6, 8), (8, 9, 5),
    (9, 5, 9), (9, 8, 6),
    (10, 7, 10), (10, 10, 7),
    (11, 11, 11), (11, 12, 12), (11, 13, 13), (11, 14, 14),
    (12, 11, 12), (12, 12, 13), (12, 13, 14), (12, 14, 11),
    (13, 11, 13), (13, 12, 14), (13, 13, 11), (13, 14, 12),
    (14, 11, 14), (14, 12, 11), (14, 13, 12), (14, 14, 13),
];

pub fn group(t: &GroupTable) -> FiniteGroupoid {
    from_group(t).unwrap()
}

pub fn z(n: usize) -> FiniteGroupoid {
    group(&cyclic_group(n).unwrap())
}

/// `GP(2) ⊔ S₂ ⊔ Z₄` relabelled `a1..a14`.
pub fn fourteen_six() -> FiniteGroupoid {
    let gp2 = pair_groupoid(2).unwrap();
    let s2 = symmetric_groupoid(2).unwrap().groupoid;
    let z4 = z(4);
    let u = disjoint_union(&[&gp2, &s2, &z4]).unwrap();
    u.relabeled((1..=14).map(|i| format!("a{i}")).collect()).unwrap()
}

pub fn corpus() -> Vec<(&'static str, FiniteGroupoid)> {
    vec![
        ("GP(2)", pair_groupoid(2).unwrap()),
        ("GP(3)", pair_groupoid(3).unwrap()),
        ("S2", symmetric_groupoid(2).unwrap().groupoid),
        ("Z4", z(4)),
        ("(14;6)", fourteen_six()),
        ("A3", alternating_groupoid(3).unwrap().groupoid),
    ]
}

/// A construction chain of bounded depth.
#[derive(Clone, Debug)]
pub enum Recipe {
    Pair(usize),
    Null(usize),
    Cyclic(usize),
    Klein,
    S3,
    Symmetric(usize),
    Alternating,
    Union(Box<Recipe>, Box<Recipe>),
    Product(Box<Recipe>, Box<Recipe>),
    WhitneySelf(Box<Recipe>),
    WhitneyNull(Box<Recipe>),
    Induced(Box<Recipe>, Vec<usize>),
    LeftTranslations(Box<Recipe>),
}

/// Largest groupoid a chain may produce; bigger products fall back to unions.
pub const MAX_CHAIN_SIZE: usize = 160;

fn leaf() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        (1usize..=3).prop_map(Recipe::Pair),
        (1usize..=3).prop_map(Recipe::Null),
        (1usize..=5).prop_map(Recipe::Cyclic),
        Just(Recipe::Klein),
        Just(Recipe::S3),
        (1usize..=2).prop_map(Recipe::Symmetric),
        Just(Recipe::Alternating),
    ]
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    leaf().prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Recipe::Union(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Recipe::Product(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Recipe::WhitneySelf(Box::new(a))),
            inner.clone().prop_map(|a| Recipe::WhitneyNull(Box::new(a))),
            (inner.clone(), prop::collection::vec(0usize..8, 1..=3)).prop_map(|(a, f)| Recipe::Induced(Box::new(a), f)),
            inner.prop_map(|a| Recipe::LeftTranslations(Box::new(a))),
        ]
    })
}

/// Number of elements `g ⊕ h` would have.
fn whitney_size(g: &FiniteGroupoid, h: &FiniteGroupoid) -> usize {
    let mut total = 0;
    for &u in g.units() {
        for &v in g.units() {
            let (Some(u2), Some(v2)) = (h.unit_for_base_label(g.base_label(u)), h.unit_for_base_label(g.base_label(v)))
            else {
                continue;
            };
            total += g.hom_set(u, v).len() * h.hom_set(u2, v2).len();
        }
    }
    total
}

/// Builds a chain; a step that would exceed [`MAX_CHAIN_SIZE`] returns its
/// first input unchanged.
pub fn build(r: &Recipe) -> FiniteGroupoid {
    match r {
        Recipe::Pair(n) => pair_groupoid(*n).unwrap(),
        Recipe::Null(k) => null_groupoid(&(0..*k).map(|i| format!("n{i}")).collect::<Vec<_>>()).unwrap(),
        Recipe::Cyclic(n) => z(*n),
        Recipe::Klein => group(&GroupTable::klein()),
        Recipe::S3 => group(&GroupTable::symmetric(3).unwrap()),
        Recipe::Symmetric(n) => symmetric_groupoid(*n).unwrap().groupoid,
        Recipe::Alternating => alternating_groupoid(3).unwrap().groupoid,
        Recipe::Union(a, b) => {
            let (g, h) = (build(a), build(b));
            if g.len() + h.len() > MAX_CHAIN_SIZE {
                return g;
            }
            disjoint_union(&[&g, &h]).unwrap()
        }
        Recipe::Product(a, b) => {
            let (g, h) = (build(a), build(b));
            if g.len() * h.len() > MAX_CHAIN_SIZE {
                return g;
            }
            direct_product(&g, &h).unwrap()
        }
        Recipe::WhitneySelf(a) => {
            let g = build(a);
            if whitney_size(&g, &g) > MAX_CHAIN_SIZE {
                return g;
            }
            whitney_sum(&g, &g).unwrap()
        }
        Recipe::WhitneyNull(a) => {
            let g = build(a);
            let null = null_groupoid(&g.base()).unwrap();
            whitney_sum(&g, &null).unwrap()
        }
        Recipe::Induced(a, f) => {
            let g = build(a);
            let base = g.base();
            let map: Vec<(String, String)> = f
                .iter()
                .enumerate()
                .map(|(i, &k)| (format!("x{i}"), base[k % base.len()].clone()))
                .collect();
            let size: usize = map
                .iter()
                .flat_map(|(_, a)| map.iter().map(move |(_, b)| (a, b)))
                .map(|(a, b)| g.hom_set(g.unit_for_base_label(a).unwrap(), g.unit_for_base_label(b).unwrap()).len())
                .sum();
            if size > MAX_CHAIN_SIZE {
                return g;
            }
            induced_groupoid(&g, &map).unwrap().groupoid
        }
        Recipe::LeftTranslations(a) => left_translation_groupoid(&build(a)).unwrap().groupoid,
    }
}

/// Structure-function laws every groupoid satisfies, checked exhaustively.
pub fn check_laws(g: &FiniteGroupoid) -> Result<(), String> {
    use brandt::is_isomorphic;
    use brandt::morphisms::{anchor_morphism, first_projection, second_projection, GroupoidMorphism};
    use brandt::subgroupoids::{isotropy_subgroupoid, null_subgroupoid};

    let report = g.validate();
    if !report.passed() {
        return Err(format!("validate failed:\n{report}"));
    }
    for &u in g.units() {
        if (g.source(u), g.target(u), g.inverse(u), g.compose(u, u)) != (u, u, u, Some(u)) {
            return Err(format!("unit {} is not fixed", g.label(u)));
        }
    }
    for x in g.elements() {
        let xi = g.inverse(x);
        if g.source(xi) != g.target(x) || g.target(xi) != g.source(x) || g.inverse(xi) != x {
            return Err(format!("inverse of {} has the wrong ends", g.label(x)));
        }
        let mut seen = std::collections::HashSet::new();
        for &(y, xy) in g.row(x) {
            if g.source(xy) != g.source(x) || g.target(xy) != g.target(y) {
                return Err(format!("{}·{} has the wrong ends", g.label(x), g.label(y)));
            }
            if !seen.insert(xy) {
                return Err(format!("left cancellation fails for {}", g.label(x)));
            }
            if g.compose(g.inverse(y), xi) != Some(g.inverse(xy)) {
                return Err(format!("(xy)⁻¹ != y⁻¹x⁻¹ at {}·{}", g.label(x), g.label(y)));
            }
        }
        for y in g.elements() {
            if g.compose(x, y).is_some() != g.compose(g.inverse(y), xi).is_some() {
                return Err(format!("composability of {},{} is not mirrored by inverses", g.label(x), g.label(y)));
            }
        }
    }
    let mut right: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for x in g.elements() {
        for &(y, xy) in g.row(x) {
            if let Some(prev) = right.insert((y, xy), x) {
                return Err(format!("right cancellation fails: {}·{0} = {}·{0}", g.label(y), g.label(prev)));
            }
        }
    }
    let mut groups = Vec::new();
    for &u in g.units() {
        let iso = g.isotropy_group(u).map_err(|e| e.to_string())?;
        if !iso.table.is_group() {
            return Err(format!("Γ({}) is not a group", g.label(u)));
        }
        groups.push(iso);
    }
    for x in g.elements() {
        let c = g.isotropy_conjugation(x).map_err(|e| e.to_string())?;
        let from = g.hom_set(g.source(x), g.source(x)).len();
        if c.map.len() != from {
            return Err(format!("conjugation by {} is not total", g.label(x)));
        }
    }
    if g.is_transitive() && groups[0].order() <= 32 {
        let first = group(&groups[0].table);
        for other in &groups[1..] {
            if is_isomorphic(&first, &group(&other.table)).map_err(|e| e.to_string())?.is_none() {
                return Err("isotropy groups of a transitive groupoid differ".into());
            }
        }
    }
    let null = null_subgroupoid(g).map_err(|e| e.to_string())?;
    let is = isotropy_subgroupoid(g).map_err(|e| e.to_string())?;
    if !null.is_normal() || !is.is_normal() {
        return Err("null or isotropy subgroupoid is not normal".into());
    }
    let z2 = z(2);
    for (name, m) in [
        ("identity", GroupoidMorphism::identity(g)),
        ("anchor", anchor_morphism(g).map_err(|e| e.to_string())?),
        ("projection", first_projection(g, &z2).map_err(|e| e.to_string())?),
        ("second projection", second_projection(&z2, g).map_err(|e| e.to_string())?),
    ] {
        let r = m.validate();
        if !r.passed() {
            return Err(format!("{name} morphism fails:\n{r}"));
        }
        if !m.is_strong() {
            return Err(format!("{name} morphism is not strong"));
        }
    }
    Ok(())
}

pub mod structured {
    use brandt::constructions::{cyclic_group, from_group, null_groupoid};
    use brandt::structured::{pair_group_groupoid, pair_vector_space_groupoid, GroupGroupoid};
    use brandt::GroupTable;

    pub fn one_unit(t: &GroupTable) -> GroupGroupoid {
        GroupGroupoid::new(from_group(t).unwrap(), t.clone(), GroupTable::cyclic(1).unwrap()).unwrap()
    }

    pub fn null(t: &GroupTable) -> GroupGroupoid {
        GroupGroupoid::new(null_groupoid(t.labels()).unwrap(), t.clone(), t.clone()).unwrap()
    }

    /// Group-groupoids that satisfy every law.
    pub fn valid() -> Vec<(String, GroupGroupoid)> {
        let mut out = Vec::new();
        for n in 1..=5 {
            out.push((format!("pair Z{n}"), pair_group_groupoid(&cyclic_group(n).unwrap()).unwrap()));
        }
        out.push(("pair Klein".into(), pair_group_groupoid(&GroupTable::klein()).unwrap()));
        out.push(("pair S3".into(), pair_group_groupoid(&GroupTable::symmetric(3).unwrap()).unwrap()));
        for n in [2, 3, 4] {
            out.push((format!("one-unit Z{n}"), one_unit(&cyclic_group(n).unwrap())));
        }
        out.push(("one-unit Klein".into(), one_unit(&GroupTable::klein())));
        out.push(("null Z3".into(), null(&cyclic_group(3).unwrap())));
        out.push(("null S3".into(), null(&GroupTable::symmetric(3).unwrap())));
        for (p, d) in [(2, 1), (2, 2), (3, 1)] {
            out.push((format!("pair GF({p})^{d}"), pair_vector_space_groupoid(p, d).unwrap().gg));
        }
        out
    }

    /// Broken variants: transported operations, single-cell edits and a
    /// non-commutative one-unit case.
    pub fn mutated() -> Vec<(String, GroupGroupoid)> {
        let mut out = Vec::new();
        for (name, gg) in valid() {
            let n = gg.omega.len();
            if n < 3 {
                continue;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, n - 1);
            let t = GroupGroupoid::new(gg.carrier.clone(), gg.omega.transported(&perm), gg.omega0.clone()).unwrap();
            out.push((format!("{name} transported"), t));
            let v = (gg.omega.op(1, 1) + 1) % n;
            let c = GroupGroupoid::new(gg.carrier.clone(), gg.omega.with_cell(1, 1, v), gg.omega0.clone()).unwrap();
            out.push((format!("{name} cell edit"), c));
            let m = gg.omega0.len();
            if m >= 2 {
                let mut perm0: Vec<usize> = (0..m).collect();
                perm0.swap(0, m - 1);
                let t0 = GroupGroupoid::new(gg.carrier.clone(), gg.omega.clone(), gg.omega0.transported(&perm0)).unwrap();
                out.push((format!("{name} unit transported"), t0));
            }
        }
        out.push(("one-unit S3".into(), one_unit(&GroupTable::symmetric(3).unwrap())));
        out
    }
}
