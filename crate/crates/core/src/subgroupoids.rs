//! Subgroupoids: classification, generated closures and lattice enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::report::{Rule, ValidationReport};
use crate::Elem;

pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// How a subset sits inside a groupoid, from weakest to strongest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NotSubgroupoid { rule: Rule, witness: Vec<Elem> },
    Subgroupoid,
    Wide,
    Normal,
}

impl Classification {
    pub fn is_subgroupoid(&self) -> bool {
        !matches!(self, Classification::NotSubgroupoid { .. })
    }
}

/// A closed subset of a groupoid. Its units are `α(H) ∪ β(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroupoid<'g> {
    parent: &'g FiniteGroupoid,
    members: Vec<Elem>,
    units: Vec<Elem>,
    wide: bool,
    normal: bool,
}

impl<'g> Subgroupoid<'g> {
    /// Checks closure of `members` and records the wide/normal flags.
    pub fn new(parent: &'g FiniteGroupoid, members: &[Elem]) -> Result<Self> {
        let members = normalize(parent, members)?;
        match classify_sorted(parent, &members) {
            Classification::NotSubgroupoid { rule, witness } => {
                let mut r = ValidationReport::new();
                let names: Vec<&str> = witness.iter().map(|&x| parent.label(x)).collect();
                r.push(rule, witness.clone(), format!("subset is not closed at [{}]", names.join(", ")));
                Err(Error::Invalid(r))
            }
            c => {
                let units = parent.units().iter().copied().filter(|u| members.binary_search(u).is_ok()).collect();
                Ok(Self {
                    parent,
                    members,
                    units,
                    wide: matches!(c, Classification::Wide | Classification::Normal),
                    normal: c == Classification::Normal,
                })
            }
        }
    }

    pub fn parent(&self) -> &'g FiniteGroupoid {
        self.parent
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_wide(&self) -> bool {
        self.wide
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn classification(&self) -> Classification {
        if self.normal {
            Classification::Normal
        } else if self.wide {
            Classification::Wide
        } else {
            Classification::Subgroupoid
        }
    }

    pub fn is_subset_of(&self, other: &Subgroupoid<'_>) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// The subgroupoid as a groupoid in its own right.
    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        self.parent.restrict(&self.members)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|&x| self.parent.label(x)).collect()
    }
}

fn normalize(g: &FiniteGroupoid, s: &[Elem]) -> Result<Vec<Elem>> {
    if s.is_empty() {
        return Err(Error::Empty("subset"));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= g.len()) {
        let mut r = ValidationReport::new();
        r.push(Rule::Structure, vec![x], format!("element {x} is out of range"));
        return Err(Error::Invalid(r));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn classify_sorted(g: &FiniteGroupoid, members: &[Elem]) -> Classification {
    let inside = |x: Elem| members.binary_search(&x).is_ok();
    for &x in members {
        if !inside(g.inverse(x)) {
            return Classification::NotSubgroupoid {
                rule: Rule::Inverse,
                witness: vec![x],
            };
        }
        for &(y, xy) in g.row(x) {
            if inside(y) && !inside(xy) {
                return Classification::NotSubgroupoid {
                    rule: Rule::Closure,
                    witness: vec![x, y],
                };
            }
        }
    }
    // Follows from the two checks above when the parent is a groupoid.
    for &x in members {
        if !inside(g.source(x)) || !inside(g.target(x)) {
            return Classification::NotSubgroupoid {
                rule: Rule::UnitLaw,
                witness: vec![x],
            };
        }
    }
    if !g.units().iter().all(|&u| inside(u)) {
        return Classification::Subgroupoid;
    }
    if conjugation_witness(g, &inside).is_some() {
        return Classification::Wide;
    }
    Classification::Normal
}

/// First `(x, h)` with `x·h·x⁻¹` defined and outside the subset.
fn conjugation_witness(g: &FiniteGroupoid, inside: &dyn Fn(Elem) -> bool) -> Option<(Elem, Elem)> {
    for x in g.elements() {
        let b = g.target(x);
        for h in g.hom_set(b, b) {
            if !inside(h) {
                continue;
            }
            let c = g
                .compose(x, h)
                .and_then(|xh| g.compose(xh, g.inverse(x)));
            if !c.is_some_and(inside) {
                return Some((x, h));
            }
        }
    }
    None
}

/// Classifies a nonempty subset; a failure carries the offending elements.
pub fn classify_subset(g: &FiniteGroupoid, s: &[Elem]) -> Result<Classification> {
    let v = normalize(g, s)?;
    Ok(classify_sorted(g, &v))
}

/// The conjugation witness for a wide subgroupoid that is not normal.
pub fn normality_witness(h: &Subgroupoid<'_>) -> Option<(Elem, Elem)> {
    conjugation_witness(h.parent, &|x| h.contains(x))
}

fn closure_of(g: &FiniteGroupoid, seed: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut inside = vec![false; g.len()];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    let push = |x: Elem, inside: &mut Vec<bool>, members: &mut Vec<Elem>, queue: &mut VecDeque<Elem>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
            queue.push_back(x);
        }
    };
    for x in seed {
        push(x, &mut inside, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        push(g.inverse(x), &mut inside, &mut members, &mut queue);
        let snapshot = members.clone();
        for y in snapshot {
            if let Some(z) = g.compose(x, y) {
                push(z, &mut inside, &mut members, &mut queue);
            }
            if let Some(z) = g.compose(y, x) {
                push(z, &mut inside, &mut members, &mut queue);
            }
        }
    }
    members.sort_unstable();
    members
}

/// The least subgroupoid containing `seed`.
pub fn generated_subgroupoid<'g>(g: &'g FiniteGroupoid, seed: &[Elem]) -> Result<Subgroupoid<'g>> {
    let seed = normalize(g, seed)?;
    Subgroupoid::new(g, &closure_of(g, seed))
}

pub fn isotropy_subgroupoid(g: &FiniteGroupoid) -> Result<Subgroupoid<'_>> {
    Subgroupoid::new(g, &g.isotropy_bundle())
}

/// The unit set `ε(M)` as a subgroupoid.
pub fn null_subgroupoid(g: &FiniteGroupoid) -> Result<Subgroupoid<'_>> {
    Subgroupoid::new(g, g.units())
}

/// [`enumerate_subgroupoids_bounded`] with the default bound of 16 elements.
pub fn enumerate_subgroupoids(g: &FiniteGroupoid, normal_only: bool) -> Result<Vec<Subgroupoid<'_>>> {
    enumerate_subgroupoids_bounded(g, normal_only, DEFAULT_ENUMERATION_BOUND)
}

/// Every subgroupoid of `g`, ordered by size and then by member list.
///
/// Subgroupoids are reached by joining generated closures: each one is
/// `⟨x₁, …, x_k⟩`, so adding one generator at a time from every known
/// subgroupoid visits the whole lattice.
pub fn enumerate_subgroupoids_bounded(
    g: &FiniteGroupoid,
    normal_only: bool,
    bound: usize,
) -> Result<Vec<Subgroupoid<'_>>> {
    let bound = bound.min(64);
    if g.len() > bound {
        return Err(Error::SizeLimit {
            what: "subgroupoid enumeration",
            size: g.len(),
            limit: bound,
        });
    }
    let to_mask = |v: &[Elem]| v.iter().fold(0u64, |m, &x| m | 1 << x);
    let from_mask = |m: u64| (0..g.len()).filter(|&x| m >> x & 1 == 1).collect::<Vec<_>>();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue = VecDeque::new();
    for x in g.elements() {
        let m = to_mask(&closure_of(g, [x]));
        if seen.insert(m) {
            queue.push_back(m);
        }
    }
    while let Some(m) = queue.pop_front() {
        let members = from_mask(m);
        for x in g.elements().filter(|&x| m >> x & 1 == 0) {
            let joined = to_mask(&closure_of(g, members.iter().copied().chain([x])));
            if seen.insert(joined) {
                queue.push_back(joined);
            }
        }
    }
    let ordered: BTreeSet<(usize, Vec<Elem>)> = seen
        .into_iter()
        .map(|m| {
            let v = from_mask(m);
            (v.len(), v)
        })
        .collect();
    let mut out = Vec::with_capacity(ordered.len());
    for (_, v) in ordered {
        let h = Subgroupoid::new(g, &v)?;
        if !normal_only || h.is_normal() {
            out.push(h);
        }
    }
    Ok(out)
}
