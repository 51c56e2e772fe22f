//! Quasipermutations, the symmetric groupoid `S_n` and the alternating
//! groupoid `A_n`.
//!
//! A quasipermutation of degree `n` is an injective map from a nonempty
//! subset of `{1..n}` into `{1..n}`. Two of them compose as `f` then `g`
//! (the groupoid product `f·g = g∘f`) exactly when `R(f) = D(g)`.

mod counts;

pub use counts::{count_formulas, enumerated_counts, CountInt, Counts};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidTables};
use crate::Elem;

/// Default upper bound on the degree of enumerated symmetric groupoids.
pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// An injective partial map on `{1..degree}` with ordered domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quasipermutation {
    degree: usize,
    domain: Vec<usize>,
    image: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Even,
    Odd,
}

impl Signature {
    pub fn value(self) -> i8 {
        match self {
            Signature::Even => 1,
            Signature::Odd => -1,
        }
    }
}

impl std::ops::Mul for Signature {
    type Output = Signature;
    fn mul(self, rhs: Signature) -> Signature {
        if self == rhs {
            Signature::Even
        } else {
            Signature::Odd
        }
    }
}

impl Quasipermutation {
    /// Builds `i_a ↦ j_a`. The domain must be strictly increasing.
    pub fn new(degree: usize, domain: Vec<usize>, image: Vec<usize>) -> Result<Self> {
        let bad = |why: String| Err(Error::BadQuasipermutation(why));
        if domain.is_empty() {
            return bad("empty domain".into());
        }
        if domain.len() != image.len() {
            return bad(format!("{} domain points but {} images", domain.len(), image.len()));
        }
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return bad("domain is not strictly increasing".into());
        }
        if domain.iter().chain(&image).any(|&p| p == 0 || p > degree) {
            return bad(format!("point outside 1..={degree}"));
        }
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("image values repeat".into());
        }
        Ok(Self { degree, domain, image })
    }

    /// Builds a quasipermutation from `(point, value)` pairs in any order.
    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let (domain, image) = pairs.into_iter().unzip();
        Self::new(degree, domain, image)
    }

    /// `Id_A` for a nonempty `A ⊆ {1..degree}`.
    pub fn identity_on(degree: usize, set: &[usize]) -> Result<Self> {
        Self::from_pairs(degree, set.iter().map(|&p| (p, p)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Length `k = |D(f)|`.
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `R(f)` as an increasing list.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.image.clone();
        r.sort_unstable();
        r
    }

    pub fn apply(&self, point: usize) -> Option<usize> {
        self.domain.binary_search(&point).ok().map(|i| self.image[i])
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.image
    }

    pub fn inverse(&self) -> Self {
        Self::from_pairs(self.degree, self.image.iter().copied().zip(self.domain.iter().copied()))
            .expect("inverse of an injective map is injective")
    }

    pub fn source_unit(&self) -> Self {
        Self::identity_on(self.degree, &self.domain).expect("nonempty domain")
    }

    pub fn target_unit(&self) -> Self {
        Self::identity_on(self.degree, &self.range()).expect("nonempty range")
    }

    /// Groupoid product `self·g = g∘self`: apply `self`, then `g`.
    /// `None` when `R(self) != D(g)`.
    pub fn then(&self, g: &Quasipermutation) -> Result<Option<Quasipermutation>> {
        if self.degree != g.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree));
        }
        if self.range() != g.domain {
            return Ok(None);
        }
        let image = self
            .image
            .iter()
            .map(|&v| g.apply(v).expect("range equals domain"))
            .collect();
        Ok(Some(Self {
            degree: self.degree,
            domain: self.domain.clone(),
            image,
        }))
    }

    /// Sign of the quasipermutation.
    ///
    /// For `k ≥ 2` this is the sign of the rank permutation `π`, where
    /// `f(i_a)` is the `π(a)`-th smallest element of `R(f)`. A length-one
    /// map is even only when it is an identity.
    pub fn signature(&self) -> Signature {
        if self.len() == 1 {
            return if self.is_identity() {
                Signature::Even
            } else {
                Signature::Odd
            };
        }
        let inversions = (0..self.len())
            .flat_map(|a| (a + 1..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.image[a] > self.image[b])
            .count();
        if inversions % 2 == 0 {
            Signature::Even
        } else {
            Signature::Odd
        }
    }

    /// Parses the text form `k: i1 .. ik -> j1 .. jk`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::BadQuasipermutation(format!("`{text}`: {why}"));
        let (k, rest) = text.split_once(':').ok_or_else(|| bad("missing `k:` prefix"))?;
        let k: usize = k.trim().parse().map_err(|_| bad("length is not a number"))?;
        let (dom, img) = rest.split_once("->").ok_or_else(|| bad("missing `->`"))?;
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("point is not a number")))
                .collect()
        };
        let (domain, image) = (nums(dom)?, nums(img)?);
        if domain.len() != k {
            return Err(bad("length prefix does not match the domain"));
        }
        Self::new(degree, domain, image)
    }

    /// Canonical order: identities before non-identities, then by length,
    /// domain and image lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (!self.is_identity(), self.len(), &self.domain, &self.image).cmp(&(
            !other.is_identity(),
            other.len(),
            &other.domain,
            &other.image,
        ))
    }
}

impl fmt::Display for Quasipermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{}: {} -> {}", self.len(), join(&self.domain), join(&self.image))
    }
}

/// `qp_compose(f, g)`: the product `f·g = g∘f`, `None` when `R(f) != D(g)`.
pub fn qp_compose(f: &Quasipermutation, g: &Quasipermutation) -> Result<Option<Quasipermutation>> {
    f.then(g)
}

/// Every quasipermutation of degree `n` in canonical order.
pub fn all_quasipermutations(n: usize) -> Vec<Quasipermutation> {
    let mut out = Vec::new();
    for k in 1..=n {
        for domain in subsets_of_size(n, k) {
            for image in arrangements(n, k) {
                out.push(Quasipermutation {
                    degree: n,
                    domain: domain.clone(),
                    image,
                });
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..=n {
            cur.push(p);
            go(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 1..=n {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                go(n, k, used, cur, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// A groupoid whose elements are quasipermutations; element `i` is `perms[i]`.
#[derive(Clone, Debug)]
pub struct QuasipermGroupoid {
    pub groupoid: FiniteGroupoid,
    pub perms: Vec<Quasipermutation>,
}

impl QuasipermGroupoid {
    /// Builds the groupoid on a list of quasipermutations of one degree that
    /// is closed under composition and inversion.
    pub fn from_perms(perms: Vec<Quasipermutation>) -> Result<Self> {
        if perms.is_empty() {
            return Err(Error::Empty("quasipermutation list"));
        }
        let index: HashMap<&Quasipermutation, Elem> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let lookup = |q: &Quasipermutation| -> Result<Elem> {
            index
                .get(q)
                .copied()
                .ok_or_else(|| Error::BadQuasipermutation(format!("{q} is missing from the set")))
        };
        let mut alpha = Vec::with_capacity(perms.len());
        let mut beta = Vec::with_capacity(perms.len());
        let mut inv = Vec::with_capacity(perms.len());
        for p in &perms {
            alpha.push(lookup(&p.source_unit())?);
            beta.push(lookup(&p.target_unit())?);
            inv.push(lookup(&p.inverse())?);
        }
        let units = (0..perms.len()).filter(|&i| perms[i].is_identity()).collect();
        let labels = perms.iter().map(|p| p.to_string()).collect();
        let mut by_domain: HashMap<&[usize], Vec<Elem>> = HashMap::new();
        for (i, p) in perms.iter().enumerate() {
            by_domain.entry(p.domain()).or_default().push(i);
        }
        let mut mul = Vec::new();
        for (x, p) in perms.iter().enumerate() {
            let range = p.range();
            for &y in by_domain.get(range.as_slice()).map_or(&[][..], |v| v.as_slice()) {
                let z = p.then(&perms[y])?.expect("range equals domain");
                mul.push((x, y, lookup(&z)?));
            }
        }
        let groupoid = FiniteGroupoid::from_tables(GroupoidTables {
            labels,
            units,
            alpha,
            beta,
            inv,
            mul,
            base_labels: None,
        })?;
        Ok(Self { groupoid, perms })
    }

    pub fn index_of(&self, q: &Quasipermutation) -> Option<Elem> {
        self.perms.iter().position(|p| p == q)
    }
}

/// `S_n` with the default degree bound.
pub fn symmetric_groupoid(n: usize) -> Result<QuasipermGroupoid> {
    symmetric_groupoid_bounded(n, DEFAULT_DEGREE_BOUND)
}

pub fn symmetric_groupoid_bounded(n: usize, bound: usize) -> Result<QuasipermGroupoid> {
    if n == 0 {
        return Err(Error::Empty("degree"));
    }
    if n > bound {
        return Err(Error::SizeLimit {
            what: "symmetric groupoid degree",
            size: n,
            limit: bound,
        });
    }
    QuasipermGroupoid::from_perms(all_quasipermutations(n))
}

/// `A_n`: the even quasipermutations of degree `n ≥ 2`.
pub fn alternating_groupoid(n: usize) -> Result<QuasipermGroupoid> {
    alternating_groupoid_bounded(n, DEFAULT_DEGREE_BOUND)
}

pub fn alternating_groupoid_bounded(n: usize, bound: usize) -> Result<QuasipermGroupoid> {
    if n < 2 {
        return Err(Error::Hypothesis(format!(
            "alternating groupoid needs degree at least 2, got {n}"
        )));
    }
    if n > bound {
        return Err(Error::SizeLimit {
            what: "alternating groupoid degree",
            size: n,
            limit: bound,
        });
    }
    let perms = all_quasipermutations(n)
        .into_iter()
        .filter(|p| p.signature() == Signature::Even)
        .collect();
    QuasipermGroupoid::from_perms(perms)
}

/// Checks that a set of quasipermutations is closed under the groupoid
/// product and inversion, returning the first offending pair or element.
pub fn closure_witness(set: &[Quasipermutation]) -> Result<Option<(usize, Option<usize>)>> {
    let index: HashMap<&Quasipermutation, usize> = set.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut by_domain: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (i, p) in set.iter().enumerate() {
        by_domain.entry(p.domain()).or_default().push(i);
    }
    for (i, p) in set.iter().enumerate() {
        if !index.contains_key(&p.inverse()) {
            return Ok(Some((i, None)));
        }
        let range = p.range();
        for &j in by_domain.get(range.as_slice()).map_or(&[][..], |v| v.as_slice()) {
            let q = p.then(&set[j])?.expect("range equals domain");
            if !index.contains_key(&q) {
                return Ok(Some((i, Some(j))));
            }
        }
    }
    Ok(None)
}
