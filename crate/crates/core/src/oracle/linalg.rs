//! Dense linear algebra over small prime fields, plus row-echelon subspace
//! enumeration. Everything here stays brute-force so it can serve as an
//! independent ground truth for the closed formulas.

use crate::error::{Error, Result};

pub(crate) fn check_prime_field(q: u32) -> Result<()> {
    if matches!(q, 2 | 3 | 5) {
        Ok(())
    } else {
        Err(Error::ScaleBound(format!("q = {} outside the supported prime fields 2, 3, 5", q)))
    }
}

/// Row-major matrix over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMat {
    pub q: u32,
    pub rows: usize,
    pub cols: usize,
    a: Vec<u32>,
}

impl FpMat {
    pub fn zero(q: u32, rows: usize, cols: usize) -> Self {
        FpMat { q, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = FpMat::zero(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = FpMat::zero(q, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.a[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|v| *v == 0)
    }

    pub fn mul(&self, rhs: &FpMat) -> FpMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = FpMat::zero(self.q, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, (cur + v * rhs.get(k, j)) % self.q);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for (j, v) in x.iter().enumerate() {
                    acc = (acc + self.get(i, j) * v) % self.q;
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.a.len() {
            out.a[i] = (self.a[i] + self.q - rhs.a[i]) % self.q;
        }
        out
    }

    pub fn scaled(&self, s: u32) -> FpMat {
        let mut out = self.clone();
        for v in out.a.iter_mut() {
            *v = (*v * s) % self.q;
        }
        out
    }

    pub fn add(&self, rhs: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.a.len() {
            out.a[i] = (self.a[i] + rhs.a[i]) % self.q;
        }
        out
    }

    fn inv_scalar(&self, v: u32) -> u32 {
        // q is prime and tiny.
        for cand in 1..self.q {
            if (cand * v) % self.q == 1 {
                return cand;
            }
        }
        panic!("non-invertible scalar {} mod {}", v, self.q);
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (row..self.rows).find(|r| self.get(*r, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..self.cols {
                    let tmp = self.get(row, c);
                    self.set(row, c, self.get(pivot_row, c));
                    self.set(pivot_row, c, tmp);
                }
            }
            let inv = self.inv_scalar(self.get(row, col));
            for c in 0..self.cols {
                self.set(row, c, self.get(row, c) * inv % self.q);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for c in 0..self.cols {
                        let v = (self.get(r, c) + (self.q - factor) * self.get(row, c)) % self.q;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref_in_place().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the right kernel, one row per basis vector.
    pub fn kernel_basis(&self) -> FpMat {
        let mut copy = self.clone();
        let pivots = copy.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMat::zero(self.q, free.len(), self.cols);
        for (k, fc) in free.iter().enumerate() {
            out.set(k, *fc, 1);
            for (r, pc) in pivots.iter().enumerate() {
                let v = copy.get(r, *fc);
                if v != 0 {
                    out.set(k, *pc, self.q - v);
                }
            }
        }
        out
    }
}

/// Subspace of `F_q^dim` given by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub basis: FpMat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    /// Reduces `v` modulo the subspace; the remainder is zero exactly when
    /// `v` lies in the span, and is supported on non-pivot coordinates
    /// otherwise.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let q = self.basis.q;
        let mut out = v.to_vec();
        for (r, pc) in self.pivots.iter().enumerate() {
            let factor = out[*pc];
            if factor != 0 {
                for c in 0..out.len() {
                    out[c] = (out[c] + (q - factor) * self.basis.get(r, c)) % q;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|x| *x == 0)
    }

    /// Coordinates of `v` in the echelon basis; `None` if outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|pc| v[*pc]).collect())
    }

    pub fn from_span(q: u32, cols: usize, vectors: &[Vec<u32>]) -> Subspace {
        let mut m = FpMat::from_rows(q, cols, vectors);
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let mut basis = FpMat::zero(q, rank, cols);
        for r in 0..rank {
            for c in 0..cols {
                basis.set(r, c, m.get(r, c));
            }
        }
        Subspace { basis, pivots }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Every subspace of `F_q^dim`, enumerated by reduced row-echelon
/// representatives so each subspace appears exactly once.
pub fn all_subspaces(q: u32, dim: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=dim {
        for pivots in combinations(dim, k) {
            // Free entries: (row r, col c) with c > pivots[r], c not a pivot.
            let mut free_slots = Vec::new();
            for (r, pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..dim {
                    if !pivots.contains(&c) {
                        free_slots.push((r, c));
                    }
                }
            }
            let total = free_slots.len();
            let mut counter = vec![0u32; total];
            loop {
                let mut basis = FpMat::zero(q, k, dim);
                for (r, pc) in pivots.iter().enumerate() {
                    basis.set(r, *pc, 1);
                }
                for (slot, (r, c)) in free_slots.iter().enumerate() {
                    basis.set(*r, *c, counter[slot]);
                }
                out.push(Subspace { basis, pivots: pivots.clone() });
                // Odometer.
                let mut idx = 0;
                loop {
                    if idx == total {
                        break;
                    }
                    counter[idx] += 1;
                    if counter[idx] < q {
                        break;
                    }
                    counter[idx] = 0;
                    idx += 1;
                }
                if idx == total {
                    break;
                }
            }
        }
    }
    out
}
