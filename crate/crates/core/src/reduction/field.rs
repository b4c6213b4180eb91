//! Arithmetic in `F_p` for `p < 2^32` and an incremental row-echelon basis.

use crate::error::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ReductionError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(ReductionError::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

/// Deterministic primality for `n < 2^32` (Miller–Rabin, bases 2, 7, 61).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Row-echelon basis of a subspace of `F_p^ncols`, built one row at a time.
///
/// Every stored row has a 1 at its pivot column and zeros to the left of it,
/// and pivots are distinct, so the rank of the span restricted to the first
/// `c` columns is the number of pivots below `c`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    /// `pivot_row[c]` indexes `rows` when column `c` is a pivot.
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        EchelonBasis { field, ncols, pivot_row: vec![None; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rank of the span projected onto columns `0..c`.
    pub fn prefix_rank(&self, c: usize) -> usize {
        self.pivot_row[..c.min(self.ncols)].iter().filter(|p| p.is_some()).count()
    }

    /// Reduces `v` on columns `0..limit`; returns the first column in that
    /// range where the residue is nonzero.
    fn reduce(&self, v: &mut [u64], limit: usize) -> Option<usize> {
        let f = self.field;
        for c in 0..limit {
            if v[c] == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let factor = v[c];
                    let row = &self.rows[r];
                    for j in c..self.ncols {
                        if row[j] != 0 {
                            v[j] = f.sub(v[j], f.mul(factor, row[j]));
                        }
                    }
                }
                None => return Some(c),
            }
        }
        None
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let Some(c) = self.reduce(&mut v, self.ncols) else { return false };
        let f = self.field;
        let inv = f.inv(v[c]);
        for x in v[c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Whether `v` projected onto columns `0..c` lies in the projected span.
    pub fn contains_prefix(&self, mut v: Vec<u64>, c: usize) -> bool {
        self.reduce(&mut v, c.min(self.ncols)).is_none()
    }
}

/// Rank of a small dense matrix over `F_p`.
pub fn rank(field: PrimeField, rows: &[Vec<u64>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else { return 0 };
    let mut basis = EchelonBasis::new(field, ncols);
    for r in rows {
        basis.insert(r.clone());
    }
    basis.rank()
}
