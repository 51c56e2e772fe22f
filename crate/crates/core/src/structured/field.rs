//! Prime fields and their coordinate spaces.

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `GF(p)` with elements `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn order(&self) -> usize {
        self.p as usize
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        (a * b) % self.order()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// `GF(p)^dim`; vector `v` has index `Σ v_i p^(dim-1-i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordinateSpace {
    pub field: PrimeField,
    pub dim: usize,
}

impl CoordinateSpace {
    pub fn len(&self) -> usize {
        self.field.order().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let p = self.field.order();
        let mut out = vec![0; self.dim];
        let mut v = v;
        for c in out.iter_mut().rev() {
            *c = v % p;
            v /= p;
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let p = self.field.order();
        coords.iter().fold(0, |acc, &c| acc * p + c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = x.iter().zip(&y).map(|(&s, &t)| self.field.add(s, t)).collect();
        self.index(&sum)
    }

    pub fn scale(&self, k: usize, a: usize) -> usize {
        let x: Vec<usize> = self.coords(a).into_iter().map(|s| self.field.mul(k, s)).collect();
        self.index(&x)
    }

    pub fn label(&self, v: usize) -> String {
        let c: Vec<String> = self.coords(v).iter().map(|x| x.to_string()).collect();
        format!("[{}]", c.join(","))
    }
}
