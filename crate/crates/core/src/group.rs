//! Finite groups given by total Cayley tables.

use crate::error::{Error, Result};
use crate::report::{Rule, ValidationReport};

/// A total binary operation on `0..n` with labels.
///
/// Construction only checks the table shape. The identity and inverses are
/// looked up once and cached; whether the group axioms hold is answered by
/// [`GroupTable::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: Option<usize>,
    inverses: Vec<Option<usize>>,
}

impl GroupTable {
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty("group table"));
        }
        let mut report = ValidationReport::new();
        if rows.len() != n {
            report.push(
                Rule::Structure,
                vec![],
                format!("{} rows for {} elements", rows.len(), n),
            );
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                report.push(Rule::Structure, vec![a], format!("row {a} has {} cells", row.len()));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    report.push(Rule::Structure, vec![a, b], format!("cell ({a},{b}) = {c} out of range"));
                }
            }
            table.extend(row.iter().copied());
        }
        let mut seen = std::collections::HashSet::new();
        for (i, l) in labels.iter().enumerate() {
            if !seen.insert(l) {
                report.push(Rule::Structure, vec![i], format!("duplicate label `{l}`"));
            }
        }
        report.into_result().map_err(Error::Invalid)?;
        Ok(Self::from_flat(labels, table))
    }

    pub fn from_fn(labels: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::from_rows(labels, rows)
    }

    fn from_flat(labels: Vec<String>, table: Vec<usize>) -> Self {
        let n = labels.len();
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n).find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x));
        let inverses = (0..n)
            .map(|x| identity.and_then(|e| (0..n).find(|&y| at(x, y) == e && at(y, x) == e)))
            .collect();
        Self {
            labels,
            table,
            identity,
            inverses,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverses[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.len()).map(|r| r.to_vec()).collect()
    }

    /// Returns a copy with one cell overwritten.
    pub fn with_cell(&self, a: usize, b: usize, value: usize) -> Self {
        let mut table = self.table.clone();
        table[a * self.len() + b] = value;
        Self::from_flat(self.labels.clone(), table)
    }

    /// Transports the operation along a bijection `perm` of the carrier:
    /// the new product is `perm(op(perm⁻¹ a, perm⁻¹ b))`.
    pub fn transported(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut back = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            back[p] = i;
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = perm[self.op(back[a], back[b])];
            }
        }
        Self::from_flat(self.labels.clone(), table)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Associativity, identity and inverse checks with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut report = ValidationReport::new();
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    let bc = self.op(b, c);
                    if self.op(ab, c) != self.op(a, bc) {
                        report.push(
                            Rule::Associativity,
                            vec![a, b, c],
                            format!(
                                "({0}{1}){2} != {0}({1}{2})",
                                self.labels[a], self.labels[b], self.labels[c]
                            ),
                        );
                        if report.violations().len() >= crate::report::MAX_WITNESSES_PER_RULE {
                            break 'outer;
                        }
                    }
                }
            }
        }
        match self.identity {
            None => report.push(Rule::Identity, vec![], "no two-sided identity"),
            Some(_) => {
                for x in 0..n {
                    if self.inverses[x].is_none() {
                        report.push(
                            Rule::Inverse,
                            vec![x],
                            format!("{} has no two-sided inverse", self.labels[x]),
                        );
                    }
                }
            }
        }
        report
    }

    pub fn is_group(&self) -> bool {
        self.validate().passed()
    }

    /// `Z_n` under addition mod `n`, labels `0..n-1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("cyclic group order"));
        }
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
    }

    /// `Z_2 × Z_2` with labels `e, a, b, c`.
    pub fn klein() -> Self {
        let labels = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        Self::from_fn(labels, |a, b| a ^ b).expect("klein table is well-formed")
    }

    /// The symmetric group on `1..=n`, elements in lexicographic order of
    /// their one-line notation, product `a·b = a∘b` (apply `b` first).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("symmetric group degree"));
        }
        let perms = all_permutations(n);
        let index: std::collections::HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_fn(labels, |a, b| {
            let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index[&composed]
        })
    }

    /// Componentwise product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &GroupTable) -> Self {
        let m = other.len();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        Self::from_fn(labels, |x, y| {
            self.op(x / m, y / m) * m + other.op(x % m, y % m)
        })
        .expect("product of well-formed tables is well-formed")
    }
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_is_a_group() {
        let z4 = GroupTable::cyclic(4).unwrap();
        assert!(z4.validate().passed());
        assert_eq!(z4.op(2, 3), 1);
        assert_eq!(z4.identity(), Some(0));
        assert_eq!(z4.inverse(1), Some(3));
    }

    #[test]
    fn klein_is_commutative_group() {
        let k = GroupTable::klein();
        assert!(k.is_group());
        assert!(k.is_commutative());
        assert!((0..4).all(|x| k.op(x, x) == 0));
    }

    #[test]
    fn associativity_defect_has_triple_witness() {
        // Swapping two cells of a row keeps it a Latin square but breaks associativity.
        let z3 = GroupTable::cyclic(3).unwrap();
        let bad = z3.with_cell(1, 1, 0).with_cell(1, 2, 2);
        let report = bad.validate();
        assert!(!report.passed());
        let v = report
            .violations()
            .iter()
            .find(|v| v.rule == Rule::Associativity)
            .expect("associativity witness");
        assert_eq!(v.witness.len(), 3);
        let (a, b, c) = (v.witness[0], v.witness[1], v.witness[2]);
        assert_ne!(bad.op(bad.op(a, b), c), bad.op(a, bad.op(b, c)));
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(GroupTable::symmetric(3).unwrap().len(), 6);
        let s3 = GroupTable::symmetric(3).unwrap();
        assert!(s3.is_group());
        assert!(!s3.is_commutative());
    }

    #[test]
    fn rejects_ragged_tables() {
        let err = GroupTable::from_rows(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1]]);
        assert!(matches!(err, Err(Error::Invalid(_))));
        let err = GroupTable::from_rows(vec!["a".into()], vec![vec![3]]);
        assert!(matches!(err, Err(Error::Invalid(_))));
    }
}
