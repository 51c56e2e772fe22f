//! The finite groupoid data model.
//!
//! Groupoids are stored in Brandt form: units are elements, and the source
//! and target maps send every element to a unit element. The product `x·y`
//! is defined exactly when `β(x) = α(y)`. Categorical composition `g∘f` is
//! the same data written in the opposite order: `g∘f = f·g`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::report::{Rule, ValidationReport};
use crate::Elem;

/// Raw, editable tables of a groupoid.
///
/// `base_labels`, when present, is aligned with `units` and names the
/// Ehresmann base point each unit stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidTables {
    pub labels: Vec<String>,
    pub units: Vec<Elem>,
    pub alpha: Vec<Elem>,
    pub beta: Vec<Elem>,
    pub inv: Vec<Elem>,
    pub mul: Vec<(Elem, Elem, Elem)>,
    pub base_labels: Option<Vec<String>>,
}

/// A finite groupoid with structurally well-formed tables.
///
/// Every index is in range and every source/target value is a declared
/// unit; the groupoid axioms themselves are checked by [`validate`].
///
/// [`validate`]: FiniteGroupoid::validate
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    units: Vec<Elem>,
    unit_pos: Vec<Option<usize>>,
    alpha: Vec<Elem>,
    beta: Vec<Elem>,
    inv: Vec<Elem>,
    /// Row `x` holds `(y, x·y)` sorted by `y`.
    rows: Vec<Vec<(Elem, Elem)>>,
    /// Elements with a given source, indexed by unit position.
    from_unit: Vec<Vec<Elem>>,
    /// Elements with a given target, indexed by unit position.
    into_unit: Vec<Vec<Elem>>,
    base_labels: Option<Vec<String>>,
}

/// The size signature `(n;m)`: `n` elements and `m` units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidType {
    pub elements: usize,
    pub units: usize,
}

impl fmt::Display for GroupoidType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.elements, self.units)
    }
}

impl FiniteGroupoid {
    pub fn from_tables(tables: GroupoidTables) -> Result<Self> {
        let GroupoidTables {
            labels,
            units,
            alpha,
            beta,
            inv,
            mul,
            base_labels,
        } = tables;
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty("element list"));
        }
        let mut report = ValidationReport::new();

        let mut seen = HashSet::new();
        for (i, l) in labels.iter().enumerate() {
            if !seen.insert(l.as_str()) {
                report.push(Rule::Structure, vec![i], format!("duplicate element label `{l}`"));
            }
        }
        for (name, table) in [("alpha", &alpha), ("beta", &beta), ("inv", &inv)] {
            if table.len() != n {
                report.push(
                    Rule::Structure,
                    vec![],
                    format!("{name} has {} entries for {n} elements", table.len()),
                );
            }
            for (x, &v) in table.iter().enumerate() {
                if v >= n {
                    report.push(Rule::Structure, vec![x], format!("{name}[{x}] = {v} out of range"));
                }
            }
        }
        if units.is_empty() {
            report.push(Rule::Structure, vec![], "unit set is empty");
        }
        let mut unit_pos = vec![None; n];
        let mut order: Vec<usize> = (0..units.len()).collect();
        order.sort_by_key(|&i| units[i]);
        let sorted_units: Vec<Elem> = order.iter().map(|&i| units[i]).collect();
        for (p, &u) in sorted_units.iter().enumerate() {
            if u >= n {
                report.push(Rule::Structure, vec![u], format!("unit index {u} out of range"));
            } else if unit_pos[u].is_some() {
                report.push(Rule::Structure, vec![u], format!("unit `{}` listed twice", labels[u]));
            } else {
                unit_pos[u] = Some(p);
            }
        }
        if report.passed() {
            for (name, table) in [("alpha", &alpha), ("beta", &beta)] {
                for (x, &u) in table.iter().enumerate() {
                    if unit_pos[u].is_none() {
                        report.push(
                            Rule::Structure,
                            vec![x, u],
                            format!("{name}({}) = {} is not a unit", labels[x], labels[u]),
                        );
                    }
                }
            }
        }
        let base_labels = match base_labels {
            Some(b) => {
                if b.len() != units.len() {
                    report.push(
                        Rule::Structure,
                        vec![],
                        format!("{} base labels for {} units", b.len(), units.len()),
                    );
                    None
                } else {
                    let mut seen = HashSet::new();
                    for (i, l) in b.iter().enumerate() {
                        if !seen.insert(l.as_str()) {
                            report.push(Rule::Structure, vec![i], format!("duplicate base label `{l}`"));
                        }
                    }
                    Some(order.iter().map(|&i| b[i].clone()).collect())
                }
            }
            None => None,
        };

        let mut rows: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); n];
        for &(x, y, z) in &mul {
            if x >= n || y >= n || z >= n {
                report.push(
                    Rule::Structure,
                    vec![x, y, z],
                    format!("product triple ({x},{y},{z}) out of range"),
                );
                continue;
            }
            rows[x].push((y, z));
        }
        for (x, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    report.push(
                        Rule::Structure,
                        vec![x, w[0].0],
                        format!("product {}·{} given twice", labels[x], labels[w[0].0]),
                    );
                }
            }
        }
        report.into_result().map_err(Error::Invalid)?;

        let m = sorted_units.len();
        let mut from_unit = vec![Vec::new(); m];
        let mut into_unit = vec![Vec::new(); m];
        for x in 0..n {
            from_unit[unit_pos[alpha[x]].unwrap()].push(x);
            into_unit[unit_pos[beta[x]].unwrap()].push(x);
        }
        Ok(Self {
            labels,
            units: sorted_units,
            unit_pos,
            alpha,
            beta,
            inv,
            rows,
            from_unit,
            into_unit,
            base_labels,
        })
    }

    /// Builds a groupoid from structure maps and a product function that is
    /// consulted on every composable pair.
    pub(crate) fn from_structure(
        labels: Vec<String>,
        units: Vec<Elem>,
        alpha: Vec<Elem>,
        beta: Vec<Elem>,
        inv: Vec<Elem>,
        base_labels: Option<Vec<String>>,
        product: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let mut by_source: HashMap<Elem, Vec<Elem>> = HashMap::new();
        for (y, &a) in alpha.iter().enumerate() {
            by_source.entry(a).or_default().push(y);
        }
        let mut mul = Vec::new();
        for (x, b) in beta.iter().enumerate() {
            if let Some(ys) = by_source.get(b) {
                for &y in ys {
                    mul.push((x, y, product(x, y)));
                }
            }
        }
        Self::from_tables(GroupoidTables {
            labels,
            units,
            alpha,
            beta,
            inv,
            mul,
            base_labels,
        })
    }

    pub fn to_tables(&self) -> GroupoidTables {
        let mul = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&(y, z)| (x, y, z)))
            .collect();
        GroupoidTables {
            labels: self.labels.clone(),
            units: self.units.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            inv: self.inv.clone(),
            mul,
            base_labels: self.base_labels.clone(),
        }
    }

    /// Same tables with different display labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        let mut t = self.to_tables();
        t.labels = labels;
        Self::from_tables(t)
    }

    pub fn with_base_labels(&self, base: Option<Vec<String>>) -> Result<Self> {
        let mut t = self.to_tables();
        t.base_labels = base;
        Self::from_tables(t)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// Units in increasing element order.
    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.unit_pos[x].is_some()
    }

    /// Position of a unit in [`units`](Self::units).
    pub fn unit_position(&self, u: Elem) -> Option<usize> {
        self.unit_pos[u]
    }

    pub fn source(&self, x: Elem) -> Elem {
        self.alpha[x]
    }

    pub fn target(&self, x: Elem) -> Elem {
        self.beta[x]
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        self.inv[x]
    }

    /// `x·y` when the table defines it.
    pub fn compose(&self, x: Elem, y: Elem) -> Option<Elem> {
        let row = &self.rows[x];
        row.binary_search_by_key(&y, |&(k, _)| k).ok().map(|i| row[i].1)
    }

    pub fn composable(&self, x: Elem, y: Elem) -> bool {
        self.beta[x] == self.alpha[y]
    }

    /// The defined products `(y, x·y)` with left factor `x`.
    pub fn row(&self, x: Elem) -> &[(Elem, Elem)] {
        &self.rows[x]
    }

    pub fn product_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Elements with source `u`.
    pub fn arrows_from(&self, u: Elem) -> &[Elem] {
        self.unit_pos[u].map_or(&[], |p| &self.from_unit[p])
    }

    /// Elements with target `u`.
    pub fn arrows_into(&self, u: Elem) -> &[Elem] {
        self.unit_pos[u].map_or(&[], |p| &self.into_unit[p])
    }

    /// Elements `x` with `α(x) = u` and `β(x) = v`.
    pub fn hom_set(&self, u: Elem, v: Elem) -> Vec<Elem> {
        self.arrows_from(u)
            .iter()
            .copied()
            .filter(|&x| self.beta[x] == v)
            .collect()
    }

    pub fn base_labels(&self) -> Option<&[String]> {
        self.base_labels.as_deref()
    }

    pub fn has_base_labels(&self) -> bool {
        self.base_labels.is_some()
    }

    /// External name of a unit: its base label, or its element label.
    pub fn base_label(&self, u: Elem) -> &str {
        match (&self.base_labels, self.unit_pos[u]) {
            (Some(b), Some(p)) => &b[p],
            _ => &self.labels[u],
        }
    }

    /// The base as a list of names aligned with [`units`](Self::units).
    pub fn base(&self) -> Vec<String> {
        self.units.iter().map(|&u| self.base_label(u).to_string()).collect()
    }

    pub fn unit_for_base_label(&self, name: &str) -> Option<Elem> {
        self.units.iter().copied().find(|&u| self.base_label(u) == name)
    }

    pub fn groupoid_type(&self) -> GroupoidType {
        GroupoidType {
            elements: self.len(),
            units: self.units.len(),
        }
    }

    pub fn anchor(&self, x: Elem) -> (Elem, Elem) {
        (self.alpha[x], self.beta[x])
    }

    /// True when every ordered pair of units is joined by an element.
    pub fn is_transitive(&self) -> bool {
        let m = self.units.len();
        let mut hit = vec![false; m * m];
        for x in self.elements() {
            let a = self.unit_pos[self.alpha[x]].unwrap();
            let b = self.unit_pos[self.beta[x]].unwrap();
            hit[a * m + b] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `Is(Γ) = {x | α(x) = β(x)}` in element order.
    pub fn isotropy_bundle(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.alpha[x] == self.beta[x]).collect()
    }

    /// The isotropy group `Γ(u)` with its induced multiplication.
    pub fn isotropy_group(&self, u: Elem) -> Result<IsotropyGroup> {
        if !self.is_unit(u) {
            return Err(Error::NotAUnit(u));
        }
        let members = self.hom_set(u, u);
        let pos: HashMap<Elem, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut rows = Vec::with_capacity(members.len());
        let mut report = ValidationReport::new();
        for &x in &members {
            let mut row = Vec::with_capacity(members.len());
            for &y in &members {
                match self.compose(x, y).and_then(|z| pos.get(&z)) {
                    Some(&p) => row.push(p),
                    None => {
                        report.push(
                            Rule::Closure,
                            vec![x, y],
                            format!(
                                "{}·{} does not land in Γ({})",
                                self.labels[x], self.labels[y], self.labels[u]
                            ),
                        );
                        row.push(0);
                    }
                }
            }
            rows.push(row);
        }
        report.into_result().map_err(Error::Invalid)?;
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let table = GroupTable::from_rows(labels, rows)?;
        let check = table.validate();
        if let Err(r) = check.into_result() {
            return Err(Error::Invalid(r));
        }
        Ok(IsotropyGroup { unit: u, members, table })
    }

    /// The map `z ↦ x⁻¹·z·x` from `Γ(α(x))` to `Γ(β(x))`, checked to be a
    /// group isomorphism.
    pub fn isotropy_conjugation(&self, x: Elem) -> Result<Conjugation> {
        let from = self.isotropy_group(self.alpha[x])?;
        let to = self.isotropy_group(self.beta[x])?;
        let xi = self.inv[x];
        let mut map = Vec::with_capacity(from.members.len());
        let mut report = ValidationReport::new();
        for &z in &from.members {
            match self.compose(xi, z).and_then(|w| self.compose(w, x)) {
                Some(w) => map.push((z, w)),
                None => report.push(
                    Rule::Composability,
                    vec![xi, z, x],
                    format!("{}·{}·{} undefined", self.labels[xi], self.labels[z], self.labels[x]),
                ),
            }
        }
        report.into_result().map_err(Error::Invalid)?;
        let conj = Conjugation {
            from: from.unit,
            to: to.unit,
            map,
        };
        conj.check(self, &from, &to).into_result().map_err(Error::Invalid)?;
        Ok(conj)
    }

    /// Checks G1–G3, the unit laws, exact composability and surjectivity of
    /// α and β onto the units.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let lab = |x: Elem| self.labels[x].as_str();

        for &u in &self.units {
            if self.alpha[u] != u || self.beta[u] != u {
                r.push(Rule::UnitLaw, vec![u], format!("α/β do not fix unit {}", lab(u)));
            }
            if self.inv[u] != u {
                r.push(Rule::UnitLaw, vec![u], format!("ι({0}) = {1} != {0}", lab(u), lab(self.inv[u])));
            }
            if self.compose(u, u) != Some(u) {
                r.push(Rule::UnitLaw, vec![u], format!("{0}·{0} != {0}", lab(u)));
            }
        }
        for (p, &u) in self.units.iter().enumerate() {
            if self.from_unit[p].is_empty() {
                r.push(Rule::Surjectivity, vec![u], format!("{} is not a source", lab(u)));
            }
            if self.into_unit[p].is_empty() {
                r.push(Rule::Surjectivity, vec![u], format!("{} is not a target", lab(u)));
            }
        }

        for x in self.elements() {
            let expected = self.arrows_from(self.beta[x]);
            for &(y, _) in &self.rows[x] {
                if !self.composable(x, y) {
                    r.push(
                        Rule::Composability,
                        vec![x, y],
                        format!("{}·{} is defined but β({0}) != α({1})", lab(x), lab(y)),
                    );
                }
            }
            for &y in expected {
                if self.compose(x, y).is_none() {
                    r.push(
                        Rule::Composability,
                        vec![x, y],
                        format!("{}·{} is composable but undefined", lab(x), lab(y)),
                    );
                }
            }
        }

        // G1. A triple is visited whenever either bracketing is defined.
        for x in self.elements() {
            for &(y, xy) in &self.rows[x] {
                for &(z, xy_z) in &self.rows[xy] {
                    match self.compose(y, z).and_then(|yz| self.compose(x, yz)) {
                        Some(x_yz) if x_yz == xy_z => {}
                        other => r.push(
                            Rule::Associativity,
                            vec![x, y, z],
                            match other {
                                Some(x_yz) => format!(
                                    "({}·{})·{} = {} but {0}·({1}·{2}) = {}",
                                    lab(x), lab(y), lab(z), lab(xy_z), lab(x_yz)
                                ),
                                None => format!(
                                    "({}·{})·{} is defined but {0}·({1}·{2}) is not",
                                    lab(x), lab(y), lab(z)
                                ),
                            },
                        ),
                    }
                }
            }
        }
        for y in self.elements() {
            for &(z, yz) in &self.rows[y] {
                for &x in self.arrows_into(self.alpha[yz]) {
                    if self.compose(x, yz).is_some()
                        && self.compose(x, y).and_then(|xy| self.compose(xy, z)).is_none()
                    {
                        r.push(
                            Rule::Associativity,
                            vec![x, y, z],
                            format!(
                                "{}·({}·{}) is defined but ({0}·{1})·{2} is not",
                                lab(x), lab(y), lab(z)
                            ),
                        );
                    }
                }
            }
        }

        for x in self.elements() {
            let (a, b) = (self.alpha[x], self.beta[x]);
            if self.compose(a, x) != Some(x) {
                r.push(Rule::Identity, vec![x], format!("α({0})·{0} != {0}", lab(x)));
            }
            if self.compose(x, b) != Some(x) {
                r.push(Rule::Identity, vec![x], format!("{0}·β({0}) != {0}", lab(x)));
            }
            let xi = self.inv[x];
            if self.compose(xi, x) != Some(b) {
                r.push(Rule::Inverse, vec![x, xi], format!("{1}·{0} != β({0})", lab(x), lab(xi)));
            }
            if self.compose(x, xi) != Some(a) {
                r.push(Rule::Inverse, vec![x, xi], format!("{0}·{1} != α({0})", lab(x), lab(xi)));
            }
        }
        let mut hit = vec![false; self.len()];
        for x in self.elements() {
            let y = self.inv[x];
            if hit[y] {
                r.push(Rule::Inverse, vec![x, y], format!("ι is not injective at {}", lab(y)));
            }
            hit[y] = true;
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// The sub-table on `members`, which must be closed under products and
    /// inverses. Elements keep their relative order and labels.
    pub fn restrict(&self, members: &[Elem]) -> Result<FiniteGroupoid> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pos: HashMap<Elem, usize> = sorted.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let idx = |x: Elem| -> Result<usize> {
            pos.get(&x).copied().ok_or_else(|| {
                let mut r = ValidationReport::new();
                r.push(Rule::Closure, vec![x], format!("{} escapes the subset", self.labels[x]));
                Error::Invalid(r)
            })
        };
        let mut units = Vec::new();
        let mut base = Vec::new();
        for &x in &sorted {
            if self.is_unit(x) {
                units.push(idx(x)?);
                base.push(self.base_label(x).to_string());
            }
        }
        let mut alpha = Vec::with_capacity(sorted.len());
        let mut beta = Vec::with_capacity(sorted.len());
        let mut inv = Vec::with_capacity(sorted.len());
        let mut mul = Vec::new();
        for &x in &sorted {
            alpha.push(idx(self.alpha[x])?);
            beta.push(idx(self.beta[x])?);
            inv.push(idx(self.inv[x])?);
            for &(y, z) in &self.rows[x] {
                if let Some(&py) = pos.get(&y) {
                    mul.push((pos[&x], py, idx(z)?));
                }
            }
        }
        FiniteGroupoid::from_tables(GroupoidTables {
            labels: sorted.iter().map(|&x| self.labels[x].clone()).collect(),
            units,
            alpha,
            beta,
            inv,
            mul,
            base_labels: self.base_labels.as_ref().map(|_| base),
        })
    }
}

/// `Γ(u)` with its multiplication as a group table; table index `i` is
/// element `members[i]`.
#[derive(Clone, Debug)]
pub struct IsotropyGroup {
    pub unit: Elem,
    pub members: Vec<Elem>,
    pub table: GroupTable,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Conjugation by an element between the isotropy groups at its ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugation {
    pub from: Elem,
    pub to: Elem,
    pub map: Vec<(Elem, Elem)>,
}

impl Conjugation {
    pub fn apply(&self, z: Elem) -> Option<Elem> {
        self.map.iter().find(|&&(a, _)| a == z).map(|&(_, b)| b)
    }

    fn check(&self, g: &FiniteGroupoid, from: &IsotropyGroup, to: &IsotropyGroup) -> ValidationReport {
        let mut r = ValidationReport::new();
        let image: HashSet<Elem> = self.map.iter().map(|&(_, w)| w).collect();
        let target: HashSet<Elem> = to.members.iter().copied().collect();
        if image != target {
            r.push(Rule::Closure, vec![self.from, self.to], "conjugation is not onto the target group");
        }
        for &(a, fa) in &self.map {
            for &(b, fb) in &self.map {
                let ab = g.compose(a, b).and_then(|ab| self.apply(ab));
                if ab.is_none() || ab != g.compose(fa, fb) {
                    r.push(
                        Rule::Homomorphism,
                        vec![a, b],
                        format!("conjugation does not respect {}·{}", g.label(a), g.label(b)),
                    );
                }
            }
        }
        debug_assert_eq!(from.members.len(), self.map.len());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{pair_groupoid, from_group};

    #[test]
    fn pair_groupoid_basic_maps() {
        let g = pair_groupoid(2).unwrap();
        let p3 = g.find("(1,2)").unwrap();
        let p4 = g.find("(2,1)").unwrap();
        assert_eq!(g.inverse(p3), p4);
        assert_eq!(g.compose(p3, p4), g.find("(1,1)"));
        assert_eq!(g.compose(p3, p3), None);
        for &u in g.units() {
            assert_eq!((g.source(u), g.target(u), g.inverse(u)), (u, u, u));
            assert_eq!(g.compose(u, u), Some(u));
        }
    }

    #[test]
    fn broken_inverse_is_reported() {
        let g = pair_groupoid(2).unwrap();
        let mut t = g.to_tables();
        let p3 = g.find("(1,2)").unwrap();
        t.inv[p3] = p3;
        let bad = FiniteGroupoid::from_tables(t).unwrap();
        let report = bad.validate();
        assert!(!report.passed());
        let v = report.violations().iter().find(|v| v.rule == Rule::Inverse).unwrap();
        assert!(v.witness.contains(&p3));
    }

    #[test]
    fn structural_errors_are_rejected_at_construction() {
        let g = pair_groupoid(2).unwrap();
        let mut t = g.to_tables();
        t.alpha[0] = 99;
        assert!(matches!(FiniteGroupoid::from_tables(t), Err(Error::Invalid(_))));

        let mut t = g.to_tables();
        t.mul.push(t.mul[0]);
        assert!(matches!(FiniteGroupoid::from_tables(t), Err(Error::Invalid(_))));

        let mut t = g.to_tables();
        t.labels.clear();
        assert!(matches!(FiniteGroupoid::from_tables(t), Err(Error::Empty(_))));
    }

    #[test]
    fn product_off_composable_pairs_is_a_violation() {
        let g = pair_groupoid(2).unwrap();
        let mut t = g.to_tables();
        let p3 = g.find("(1,2)").unwrap();
        t.mul.push((p3, p3, p3));
        let bad = FiniteGroupoid::from_tables(t).unwrap();
        assert!(bad.validate().has(Rule::Composability));
    }

    #[test]
    fn missing_product_breaks_identity_law() {
        let g = pair_groupoid(2).unwrap();
        let mut t = g.to_tables();
        // drop (1,1)·(1,2)
        let p1 = g.find("(1,1)").unwrap();
        let p3 = g.find("(1,2)").unwrap();
        t.mul.retain(|&(x, y, _)| !(x == p1 && y == p3));
        let bad = FiniteGroupoid::from_tables(t).unwrap();
        let r = bad.validate();
        assert!(r.has(Rule::Composability));
        assert!(r.has(Rule::Identity));
    }

    #[test]
    fn isotropy_of_a_group_is_the_group() {
        let z4 = from_group(&GroupTable::cyclic(4).unwrap()).unwrap();
        let iso = z4.isotropy_group(0).unwrap();
        assert_eq!(iso.order(), 4);
        assert!(iso.table.is_group());
        assert!(matches!(z4.isotropy_group(1), Err(Error::NotAUnit(1))));
    }

    #[test]
    fn conjugation_by_unit_is_identity() {
        let z4 = from_group(&GroupTable::cyclic(4).unwrap()).unwrap();
        let c = z4.isotropy_conjugation(0).unwrap();
        assert!(c.map.iter().all(|&(a, b)| a == b));
    }

    #[test]
    fn restrict_to_units() {
        let g = pair_groupoid(3).unwrap();
        let sub = g.restrict(g.units()).unwrap();
        assert_eq!(sub.groupoid_type(), GroupoidType { elements: 3, units: 3 });
        assert!(sub.is_valid());
        assert!(g.restrict(&[g.find("(1,2)").unwrap()]).is_err());
    }
}
