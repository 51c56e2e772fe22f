//! Groupoids built from sets, groups and other groupoids.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::groupoid::{FiniteGroupoid, GroupoidTables};
use crate::quasiperm::Quasipermutation;
use crate::Elem;

/// Index of `(i, j)` in the pair groupoid on `n` points: the diagonal comes
/// first, then the off-diagonal pairs in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> Elem {
    if i == j {
        i
    } else {
        n + i * (n - 1) + if j < i { j } else { j - 1 }
    }
}

fn pair_points(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

/// The pair groupoid on `{1..n}`: `(x,y)·(y,z) = (x,z)`.
pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
    let points: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    pair_groupoid_over(&points)
}

/// The pair groupoid on a set of names, with the names as its base.
pub fn pair_groupoid_over(points: &[String]) -> Result<FiniteGroupoid> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Empty("pair groupoid base"));
    }
    let pairs = pair_points(n);
    let labels = pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", points[i], points[j]))
        .collect();
    let alpha = pairs.iter().map(|&(i, _)| i).collect();
    let beta = pairs.iter().map(|&(_, j)| j).collect();
    let inv = pairs.iter().map(|&(i, j)| pair_index(n, j, i)).collect();
    FiniteGroupoid::from_structure(
        labels,
        (0..n).collect(),
        alpha,
        beta,
        inv,
        Some(points.to_vec()),
        |x, y| pair_index(n, pairs[x].0, pairs[y].1),
    )
}

/// Every element is a unit and only `u·u = u` is defined.
pub fn null_groupoid(labels: &[String]) -> Result<FiniteGroupoid> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::Empty("null groupoid"));
    }
    let id: Vec<Elem> = (0..n).collect();
    FiniteGroupoid::from_structure(
        labels.to_vec(),
        id.clone(),
        id.clone(),
        id.clone(),
        id,
        Some(labels.to_vec()),
        |x, _| x,
    )
}

/// A group as a groupoid with one unit.
pub fn from_group(t: &GroupTable) -> Result<FiniteGroupoid> {
    t.validate().into_result().map_err(Error::Invalid)?;
    let e = t.identity().expect("validated group has an identity");
    let n = t.len();
    FiniteGroupoid::from_structure(
        t.labels().to_vec(),
        vec![e],
        vec![e; n],
        vec![e; n],
        (0..n).map(|x| t.inverse(x).expect("validated group has inverses")).collect(),
        None,
        |x, y| t.op(x, y),
    )
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> Result<GroupTable> {
    GroupTable::cyclic(n)
}

/// Tagged copies of the inputs side by side, in argument order.
///
/// Element `x` of the `k`-th input (1-based) gets label `k.label`. A base is
/// recorded when at least one input carries one.
pub fn disjoint_union(gs: &[&FiniteGroupoid]) -> Result<FiniteGroupoid> {
    if gs.is_empty() {
        return Err(Error::Empty("disjoint union"));
    }
    let with_base = gs.iter().any(|g| g.has_base_labels());
    let mut t = GroupoidTables {
        labels: Vec::new(),
        units: Vec::new(),
        alpha: Vec::new(),
        beta: Vec::new(),
        inv: Vec::new(),
        mul: Vec::new(),
        base_labels: with_base.then(Vec::new),
    };
    let mut offset = 0;
    for (k, g) in gs.iter().enumerate() {
        let tag = k + 1;
        t.labels.extend(g.labels().iter().map(|l| format!("{tag}.{l}")));
        t.units.extend(g.units().iter().map(|&u| u + offset));
        t.alpha.extend(g.elements().map(|x| g.source(x) + offset));
        t.beta.extend(g.elements().map(|x| g.target(x) + offset));
        t.inv.extend(g.elements().map(|x| g.inverse(x) + offset));
        for x in g.elements() {
            t.mul.extend(g.row(x).iter().map(|&(y, z)| (x + offset, y + offset, z + offset)));
        }
        if let Some(b) = t.base_labels.as_mut() {
            b.extend(g.base().into_iter().map(|l| format!("{tag}.{l}")));
        }
        offset += g.len();
    }
    FiniteGroupoid::from_tables(t)
}

/// Componentwise product; `(x, y)` has index `x·|h| + y`.
pub fn direct_product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<FiniteGroupoid> {
    let m = h.len();
    let split = |z: Elem| (z / m, z % m);
    let labels = g
        .elements()
        .flat_map(|x| h.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", g.label(x), h.label(y)))
        .collect();
    let units: Vec<Elem> = g
        .units()
        .iter()
        .flat_map(|&u| h.units().iter().map(move |&v| u * m + v))
        .collect();
    let base = (g.has_base_labels() || h.has_base_labels()).then(|| {
        units
            .iter()
            .map(|&w| {
                let (u, v) = split(w);
                format!("({},{})", g.base_label(u), h.base_label(v))
            })
            .collect()
    });
    let n = g.len() * m;
    let map = |f: &dyn Fn(&FiniteGroupoid, Elem) -> Elem| -> Vec<Elem> {
        (0..n)
            .map(|z| {
                let (x, y) = split(z);
                f(g, x) * m + f(h, y)
            })
            .collect()
    };
    let alpha = map(&|k, x| k.source(x));
    let beta = map(&|k, x| k.target(x));
    let inv = map(&|k, x| k.inverse(x));
    let mut mul = Vec::new();
    for x in g.elements() {
        for &(x2, xx) in g.row(x) {
            for y in h.elements() {
                for &(y2, yy) in h.row(y) {
                    mul.push((x * m + y, x2 * m + y2, xx * m + yy));
                }
            }
        }
    }
    FiniteGroupoid::from_tables(GroupoidTables {
        labels,
        units,
        alpha,
        beta,
        inv,
        mul,
        base_labels: base,
    })
}

/// The fibred product over a common base: pairs `(x, x′)` whose sources and
/// targets carry the same base names, in lexicographic order of the pair.
pub fn whitney_sum(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<FiniteGroupoid> {
    let gb: HashSet<String> = g.base().into_iter().collect();
    let hb: HashSet<String> = h.base().into_iter().collect();
    if gb != hb {
        let mut only_g: Vec<_> = gb.difference(&hb).cloned().collect();
        let mut only_h: Vec<_> = hb.difference(&gb).cloned().collect();
        only_g.sort();
        only_h.sort();
        return Err(Error::BaseMismatch(format!(
            "only in first: [{}], only in second: [{}]",
            only_g.join(", "),
            only_h.join(", ")
        )));
    }
    let unit_of_h: HashMap<&str, Elem> = h.units().iter().map(|&u| (h.base_label(u), u)).collect();
    let across = |u: Elem| unit_of_h[g.base_label(u)];
    let pairs: Vec<(Elem, Elem)> = g
        .elements()
        .flat_map(|x| h.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| across(g.source(x)) == h.source(y) && across(g.target(x)) == h.target(y))
        .collect();
    let index: HashMap<(Elem, Elem), Elem> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", g.label(x), h.label(y)))
        .collect();
    let units: Vec<Elem> = (0..pairs.len())
        .filter(|&i| g.is_unit(pairs[i].0) && h.is_unit(pairs[i].1))
        .collect();
    let base = units.iter().map(|&i| g.base_label(pairs[i].0).to_string()).collect();
    let alpha = pairs.iter().map(|&(x, y)| index[&(g.source(x), h.source(y))]).collect();
    let beta = pairs.iter().map(|&(x, y)| index[&(g.target(x), h.target(y))]).collect();
    let inv = pairs.iter().map(|&(x, y)| index[&(g.inverse(x), h.inverse(y))]).collect();
    FiniteGroupoid::from_structure(labels, units, alpha, beta, inv, Some(base), |a, b| {
        let (x, y) = pairs[a];
        let (x2, y2) = pairs[b];
        let xx = g.compose(x, x2).expect("components are composable");
        let yy = h.compose(y, y2).expect("components are composable");
        index[&(xx, yy)]
    })
}

/// The pullback of a groupoid along a map `f: X → base`.
#[derive(Clone, Debug)]
pub struct InducedGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Element `i` is `(x, y, a)`, with `x, y` positions in `X`.
    pub triples: Vec<(usize, usize, Elem)>,
    /// `f(x)` as a unit of the original groupoid.
    pub base_map: Vec<Elem>,
    pub points: Vec<String>,
}

/// `f*(Γ)`: elements `(x, y, a)` with `f(x) = α(a)` and `f(y) = β(a)`.
///
/// `map` lists `(x, f(x))` with `f(x)` a base name of `g`; the order of `map`
/// fixes the order of the new base `X`.
pub fn induced_groupoid(g: &FiniteGroupoid, map: &[(String, String)]) -> Result<InducedGroupoid> {
    if map.is_empty() {
        return Err(Error::Empty("induced groupoid base"));
    }
    let points: Vec<String> = map.iter().map(|(x, _)| x.clone()).collect();
    let base_map = map
        .iter()
        .map(|(_, b)| g.unit_for_base_label(b).ok_or_else(|| Error::NotInBase(b.clone())))
        .collect::<Result<Vec<Elem>>>()?;
    let k = points.len();
    let mut triples = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for a in g.hom_set(base_map[x], base_map[y]) {
                triples.push((x, y, a));
            }
        }
    }
    let index: HashMap<(usize, usize, Elem), Elem> =
        triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let labels = triples
        .iter()
        .map(|&(x, y, a)| format!("({},{},{})", points[x], points[y], g.label(a)))
        .collect();
    let units = (0..triples.len())
        .filter(|&i| {
            let (x, y, a) = triples[i];
            x == y && a == base_map[x]
        })
        .collect();
    let alpha = triples.iter().map(|&(x, _, _)| index[&(x, x, base_map[x])]).collect();
    let beta = triples.iter().map(|&(_, y, _)| index[&(y, y, base_map[y])]).collect();
    let inv = triples.iter().map(|&(x, y, a)| index[&(y, x, g.inverse(a))]).collect();
    let groupoid = FiniteGroupoid::from_structure(labels, units, alpha, beta, inv, Some(points.clone()), |i, j| {
        let (x, _, a) = triples[i];
        let (_, z, b) = triples[j];
        index[&(x, z, g.compose(a, b).expect("targets match"))]
    })?;
    Ok(InducedGroupoid {
        groupoid,
        triples,
        base_map,
        points,
    })
}

/// The groupoid `L(Γ)` of left translations `L_a: x ↦ a·x`.
///
/// Points of the ambient set are element indices plus one. Element `i` is
/// `L_i`, and the product is composition of maps, `L_a·L_b = L_a∘L_b`,
/// defined exactly when `β(a) = α(b)`.
#[derive(Clone, Debug)]
pub struct LeftTranslations {
    pub groupoid: FiniteGroupoid,
    pub translations: Vec<Quasipermutation>,
}

pub fn left_translation(g: &FiniteGroupoid, a: Elem) -> Result<Quasipermutation> {
    let pairs = g
        .arrows_from(g.target(a))
        .iter()
        .map(|&x| {
            let ax = g.compose(a, x).ok_or_else(|| {
                Error::Hypothesis(format!("{}·{} is composable but undefined", g.label(a), g.label(x)))
            })?;
            Ok((x + 1, ax + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    Quasipermutation::from_pairs(g.len(), pairs)
}

pub fn left_translation_groupoid(g: &FiniteGroupoid) -> Result<LeftTranslations> {
    let translations = g
        .elements()
        .map(|a| left_translation(g, a))
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<&Quasipermutation, Elem> =
        translations.iter().enumerate().map(|(i, q)| (q, i)).collect();
    if index.len() != translations.len() {
        return Err(Error::Hypothesis("two elements have the same left translation".into()));
    }
    let find = |q: &Quasipermutation| {
        index
            .get(q)
            .copied()
            .ok_or_else(|| Error::BadQuasipermutation(format!("{q} is not a left translation")))
    };
    let mut units = Vec::new();
    let mut alpha = Vec::with_capacity(g.len());
    let mut beta = Vec::with_capacity(g.len());
    let mut inv = Vec::with_capacity(g.len());
    for (i, l) in translations.iter().enumerate() {
        if l.is_identity() {
            units.push(i);
        }
        alpha.push(find(&l.target_unit())?);
        beta.push(find(&l.source_unit())?);
        inv.push(find(&l.inverse())?);
    }
    let mut by_range: HashMap<Vec<usize>, Vec<Elem>> = HashMap::new();
    for (i, l) in translations.iter().enumerate() {
        by_range.entry(l.range()).or_default().push(i);
    }
    let mut mul = Vec::new();
    for (a, la) in translations.iter().enumerate() {
        for &b in by_range.get(la.domain()).map_or(&[][..], |v| v.as_slice()) {
            let composed = translations[b].then(la)?.expect("range equals domain");
            mul.push((a, b, find(&composed)?));
        }
    }
    let labels = g.labels().iter().map(|l| format!("L[{l}]")).collect();
    let groupoid = FiniteGroupoid::from_tables(GroupoidTables {
        labels,
        units,
        alpha,
        beta,
        inv,
        mul,
        base_labels: g.has_base_labels().then(|| g.base()),
    })?;
    Ok(LeftTranslations { groupoid, translations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::GroupoidType;
    use crate::quasiperm::symmetric_groupoid;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn ty(g: &FiniteGroupoid) -> (usize, usize) {
        let GroupoidType { elements, units } = g.groupoid_type();
        (elements, units)
    }

    #[test]
    fn pair_groupoid_order_and_type() {
        let g = pair_groupoid(2).unwrap();
        assert_eq!(g.labels(), names(&["(1,1)", "(2,2)", "(1,2)", "(2,1)"]).as_slice());
        assert_eq!(g.units(), &[0, 1]);
        assert!(g.is_valid());
        let g3 = pair_groupoid(3).unwrap();
        assert_eq!(ty(&g3), (9, 3));
        assert!(g3.is_transitive());
        for i in 0..3 {
            for j in 0..3 {
                let x = pair_index(3, i, j);
                assert_eq!(g3.label(x), format!("({},{})", i + 1, j + 1));
            }
        }
        assert!(pair_groupoid(0).is_err());
        assert_eq!(ty(&pair_groupoid(1).unwrap()), (1, 1));
    }

    #[test]
    fn null_and_group() {
        let n = null_groupoid(&names(&["a", "b", "c"])).unwrap();
        assert_eq!(ty(&n), (3, 3));
        assert!(!n.is_transitive());
        assert!(n.is_valid());
        assert!(null_groupoid(&[]).is_err());

        let z4 = from_group(&cyclic_group(4).unwrap()).unwrap();
        assert_eq!(ty(&z4), (4, 1));
        assert_eq!(z4.compose(2, 3), Some(1));
        let bad = cyclic_group(3).unwrap().with_cell(1, 1, 0);
        assert!(matches!(from_group(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn union_and_product_types() {
        for m in 1..=4 {
            for n in 1..=4 {
                let gp = pair_groupoid(m).unwrap();
                let z = from_group(&cyclic_group(n).unwrap()).unwrap();
                let u = disjoint_union(&[&gp, &z]).unwrap();
                assert_eq!(ty(&u), (m * m + n, m + 1));
                assert!(u.is_valid());
                let p = direct_product(&gp, &z).unwrap();
                assert_eq!(ty(&p), (m * m * n, m));
                assert!(p.is_valid());
            }
        }
        assert!(disjoint_union(&[]).is_err());
    }

    #[test]
    fn product_of_transitive_is_transitive() {
        let p = direct_product(&pair_groupoid(2).unwrap(), &pair_groupoid(3).unwrap()).unwrap();
        assert!(p.is_transitive());
        assert_eq!(ty(&p), (36, 6));
        assert_eq!(p.base_label(p.units()[1]), "(1,2)");
    }

    #[test]
    fn whitney_sum_of_pair_groupoids() {
        let g = pair_groupoid(2).unwrap();
        let w = whitney_sum(&g, &g).unwrap();
        assert_eq!(ty(&w), (4, 2));
        assert!(w.is_valid());
        assert!(w.is_transitive());
        let other = pair_groupoid_over(&names(&["p", "q"])).unwrap();
        assert!(matches!(whitney_sum(&g, &other), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn induced_from_z2_over_two_points() {
        let z2 = from_group(&cyclic_group(2).unwrap()).unwrap();
        let map = vec![("x".to_string(), "0".to_string()), ("y".to_string(), "0".to_string())];
        let ind = induced_groupoid(&z2, &map).unwrap();
        assert_eq!(ty(&ind.groupoid), (8, 2));
        assert!(ind.groupoid.is_valid());
        assert!(ind.groupoid.is_transitive());
        let unit_labels: Vec<&str> = ind.groupoid.units().iter().map(|&u| ind.groupoid.label(u)).collect();
        assert_eq!(unit_labels, ["(x,x,0)", "(y,y,0)"]);
        let bad = vec![("x".to_string(), "7".to_string())];
        assert!(matches!(induced_groupoid(&z2, &bad), Err(Error::NotInBase(_))));
    }

    #[test]
    fn left_translations_of_s2() {
        let s2 = symmetric_groupoid(2).unwrap().groupoid;
        let l = left_translation_groupoid(&s2).unwrap();
        assert!(l.groupoid.is_valid());
        assert_eq!(l.groupoid.len(), 6);
        for &u in s2.units() {
            assert!(l.translations[u].is_identity());
        }
        for x in s2.elements() {
            let a = s2.source(x);
            let composed = l.translations[x].then(&l.translations[a]).unwrap().unwrap();
            assert_eq!(composed, l.translations[x]);
        }
    }

    #[test]
    fn left_translations_of_z4_are_bijections() {
        let z4 = from_group(&cyclic_group(4).unwrap()).unwrap();
        let l = left_translation_groupoid(&z4).unwrap();
        assert!(l.translations.iter().all(|q| q.len() == 4));
        assert_eq!(l.groupoid.units().len(), 1);
    }
}
