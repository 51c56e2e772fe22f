//! Closed-form sizes of `S_n`, `A_n` and their unit and isotropy parts,
//! generic over the integer type so callers choose between checked machine
//! integers and `BigUint`.

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, One, Zero};

use super::{all_quasipermutations, Signature};
use crate::error::{Error, Result};

/// Integer types the counting formulas can be evaluated in.
pub trait CountInt:
    Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + FromPrimitive
{
}

impl<T> CountInt for T where
    T: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + FromPrimitive
{
}

/// Sizes of `S_n`, `S_{n,0}`, `Is(S_n)` and, for `n ≥ 2`, the same three for `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts<T> {
    pub degree: usize,
    pub symmetric: T,
    pub symmetric_units: T,
    pub symmetric_isotropy: T,
    pub alternating: Option<T>,
    pub alternating_units: Option<T>,
    pub alternating_isotropy: Option<T>,
}

fn overflow() -> Error {
    Error::Overflow("count")
}

fn lift<T: CountInt>(v: usize) -> Result<T> {
    T::from_usize(v).ok_or_else(overflow)
}

/// Evaluates the closed forms exactly, failing on overflow of `T`.
///
/// `|S_n| = Σ k!·C(n,k)²`, `|S_{n,0}| = 2ⁿ−1`, `|Is(S_n)| = Σ k!·C(n,k)`,
/// `|A_n| = ½[|S_n| − (n²−2n)]`, `|A_{n,0}| = 2ⁿ−1`, `|Is(A_n)| = ½[n + |Is(S_n)|]`.
pub fn count_formulas<T: CountInt>(n: usize) -> Result<Counts<T>> {
    if n == 0 {
        return Err(Error::Empty("degree"));
    }
    let mut sum_sq = T::zero();
    let mut sum = T::zero();
    let mut binom = T::one();
    let mut fact = T::one();
    for k in 1..=n {
        // C(n,k) = C(n,k-1)·(n-k+1)/k, exact at every step.
        binom = binom
            .checked_mul(&lift(n - k + 1)?)
            .and_then(|b| b.checked_div(&lift(k).ok()?))
            .ok_or_else(overflow)?;
        fact = fact.checked_mul(&lift(k)?).ok_or_else(overflow)?;
        let term = fact.checked_mul(&binom).ok_or_else(overflow)?;
        sum = sum.checked_add(&term).ok_or_else(overflow)?;
        let term_sq = term.checked_mul(&binom).ok_or_else(overflow)?;
        sum_sq = sum_sq.checked_add(&term_sq).ok_or_else(overflow)?;
    }
    let two = lift::<T>(2)?;
    let mut pow = T::one();
    for _ in 0..n {
        pow = pow.checked_mul(&two).ok_or_else(overflow)?;
    }
    let units = pow.checked_sub(&T::one()).ok_or_else(overflow)?;

    let (alternating, alternating_units, alternating_isotropy) = if n >= 2 {
        let correction = lift::<T>(n)?.checked_mul(&lift(n - 2)?).ok_or_else(overflow)?;
        let a = sum_sq
            .checked_sub(&correction)
            .and_then(|d| d.checked_div(&two))
            .ok_or_else(overflow)?;
        let ia = sum
            .checked_add(&lift(n)?)
            .and_then(|d| d.checked_div(&two))
            .ok_or_else(overflow)?;
        (Some(a), Some(units.clone()), Some(ia))
    } else {
        (None, None, None)
    };

    Ok(Counts {
        degree: n,
        symmetric: sum_sq,
        symmetric_units: units,
        symmetric_isotropy: sum,
        alternating,
        alternating_units,
        alternating_isotropy,
    })
}

/// The same six sizes obtained by listing every quasipermutation of degree `n`.
pub fn enumerated_counts(n: usize, bound: usize) -> Result<Counts<u64>> {
    if n == 0 {
        return Err(Error::Empty("degree"));
    }
    if n > bound {
        return Err(Error::SizeLimit {
            what: "enumeration degree",
            size: n,
            limit: bound,
        });
    }
    let all = all_quasipermutations(n);
    let count = |pred: &dyn Fn(&super::Quasipermutation) -> bool| all.iter().filter(|p| pred(p)).count() as u64;
    let isotropic = |p: &super::Quasipermutation| p.domain() == p.range().as_slice();
    let even = |p: &super::Quasipermutation| p.signature() == Signature::Even;
    let alt = n >= 2;
    Ok(Counts {
        degree: n,
        symmetric: all.len() as u64,
        symmetric_units: count(&|p| p.is_identity()),
        symmetric_isotropy: count(&isotropic),
        alternating: alt.then(|| count(&even)),
        alternating_units: alt.then(|| count(&|p| even(p) && p.is_identity())),
        alternating_isotropy: alt.then(|| count(&|p| even(p) && isotropic(p))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn degree_two_and_three() {
        let c = count_formulas::<u64>(2).unwrap();
        assert_eq!((c.symmetric, c.symmetric_units, c.symmetric_isotropy), (6, 3, 4));
        assert_eq!(c.alternating, Some(3));
        let c = count_formulas::<u64>(3).unwrap();
        assert_eq!((c.symmetric, c.symmetric_isotropy), (33, 15));
        assert_eq!((c.alternating, c.alternating_units, c.alternating_isotropy), (Some(15), Some(7), Some(9)));
    }

    #[test]
    fn degree_one_has_no_alternating_part() {
        let c = count_formulas::<u64>(1).unwrap();
        assert_eq!((c.symmetric, c.symmetric_units, c.symmetric_isotropy), (1, 1, 1));
        assert_eq!(c.alternating, None);
    }

    #[test]
    fn machine_integers_overflow_cleanly() {
        assert!(count_formulas::<u8>(5).is_err());
        assert!(count_formulas::<u64>(40).is_err());
        let big = count_formulas::<BigUint>(40).unwrap();
        let small = count_formulas::<u128>(20).unwrap();
        assert_eq!(count_formulas::<BigUint>(20).unwrap().symmetric, BigUint::from(small.symmetric));
        assert!(big.symmetric > BigUint::from(u64::MAX));
    }

    #[test]
    fn enumeration_respects_bound() {
        assert!(matches!(enumerated_counts(7, 6), Err(Error::SizeLimit { .. })));
    }
}
