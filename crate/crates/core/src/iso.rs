//! Isomorphism search between small groupoids.

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::morphisms::GroupoidMorphism;
use crate::Elem;

pub const DEFAULT_ISO_BOUND: usize = 32;

/// A bijective morphism `(f, f₀)`; `unit_map[i]` is the image of the `i`-th
/// unit of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<Elem>,
    pub unit_map: Vec<Elem>,
}

/// Data an isomorphism has to preserve, used to prune candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    unit: bool,
    loop_: bool,
    order: usize,
    source_group: usize,
    hom_set: usize,
    out: usize,
    into: usize,
}

fn element_order(g: &FiniteGroupoid, x: Elem) -> usize {
    if g.source(x) != g.target(x) {
        return 0;
    }
    let mut p = x;
    for k in 1..=g.len() {
        if g.is_unit(p) {
            return k;
        }
        p = match g.compose(p, x) {
            Some(q) => q,
            None => return 0,
        };
    }
    0
}

fn signatures(g: &FiniteGroupoid) -> Vec<Signature> {
    g.elements()
        .map(|x| {
            let (a, b) = g.anchor(x);
            Signature {
                unit: g.is_unit(x),
                loop_: a == b,
                order: element_order(g, x),
                source_group: g.hom_set(a, a).len(),
                hom_set: g.hom_set(a, b).len(),
                out: g.arrows_from(a).len(),
                into: g.arrows_into(b).len(),
            }
        })
        .collect()
}

struct Search<'a> {
    g: &'a FiniteGroupoid,
    h: &'a FiniteGroupoid,
    gs: Vec<Signature>,
    hs: Vec<Signature>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    order: Vec<Elem>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and everything it forces; on failure the trail is
    /// left for the caller to undo.
    fn assign(&mut self, x: Elem, y: Elem, trail: &mut Vec<Elem>) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if let Some(prev) = self.map[x] {
                if prev != y {
                    return false;
                }
                continue;
            }
            if self.used[y] || self.gs[x] != self.hs[y] {
                return false;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            trail.push(x);
            let (g, h) = (self.g, self.h);
            queue.push((g.inverse(x), h.inverse(y)));
            queue.push((g.source(x), h.source(y)));
            queue.push((g.target(x), h.target(y)));
            for z in g.elements() {
                let Some(fz) = self.map[z] else { continue };
                match (g.compose(x, z), h.compose(y, fz)) {
                    (Some(a), Some(b)) => queue.push((a, b)),
                    (None, None) => {}
                    _ => return false,
                }
                match (g.compose(z, x), h.compose(fz, y)) {
                    (Some(a), Some(b)) => queue.push((a, b)),
                    (None, None) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &mut Vec<Elem>, to: usize) {
        while trail.len() > to {
            let x = trail.pop().unwrap();
            let y = self.map[x].take().unwrap();
            self.used[y] = false;
        }
    }

    fn run(&mut self, trail: &mut Vec<Elem>) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.map[x].is_none()) else {
            return true;
        };
        for y in self.h.elements() {
            if self.used[y] || self.gs[x] != self.hs[y] {
                continue;
            }
            let mark = trail.len();
            if self.assign(x, y, trail) && self.run(trail) {
                return true;
            }
            self.undo(trail, mark);
        }
        false
    }
}

/// [`is_isomorphic_bounded`] with the default bound of 32 elements.
pub fn is_isomorphic(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<Option<Isomorphism>> {
    is_isomorphic_bounded(g, h, DEFAULT_ISO_BOUND)
}

/// Finds an isomorphism `g → h` by backtracking, or proves there is none.
///
/// A witness is re-checked as a groupoid morphism before it is returned.
pub fn is_isomorphic_bounded(g: &FiniteGroupoid, h: &FiniteGroupoid, bound: usize) -> Result<Option<Isomorphism>> {
    for k in [g, h] {
        if k.len() > bound {
            return Err(Error::SizeLimit {
                what: "isomorphism search",
                size: k.len(),
                limit: bound,
            });
        }
    }
    if g.groupoid_type() != h.groupoid_type() || g.product_count() != h.product_count() {
        return Ok(None);
    }
    let gs = signatures(g);
    let hs = signatures(h);
    let (mut a, mut b) = (gs.clone(), hs.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut order: Vec<Elem> = g.units().to_vec();
    order.extend(g.elements().filter(|&x| !g.is_unit(x)));
    let mut search = Search {
        g,
        h,
        gs,
        hs,
        map: vec![None; g.len()],
        used: vec![false; h.len()],
        order,
    };
    if !search.run(&mut Vec::new()) {
        return Ok(None);
    }
    let map: Vec<Elem> = search.map.into_iter().map(|y| y.unwrap()).collect();
    let unit_map: Vec<Elem> = g.units().iter().map(|&u| map[u]).collect();
    let m = GroupoidMorphism::new(g.clone(), h.clone(), map.clone(), unit_map.clone())?;
    let report = m.validate();
    if !report.passed() || !m.is_isomorphism() {
        return Err(Error::Hypothesis(format!("isomorphism witness failed re-validation:\n{report}")));
    }
    Ok(Some(Isomorphism { map, unit_map }))
}
