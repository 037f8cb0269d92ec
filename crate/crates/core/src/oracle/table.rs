//! Memoized brute-force data for one tube at one field size: every
//! isomorphism class up to a dimension bound, canonical representatives,
//! automorphism counts, Hom dimensions and the full Hall-number table
//! obtained by enumerating subrepresentations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::linalg::check_prime_field;
use super::rep::{IsoType, NilpRep, MAX_TOTAL_DIM};

/// All block multisets of total length <= max_len for a tube of rank p,
/// sorted. Includes the zero class.
pub fn classes_up_to(p: usize, max_len: i64) -> Vec<IsoType> {
    // Blocks ordered lexicographically; multisets as non-decreasing lists.
    let mut blocks: Vec<(i64, i64)> = Vec::new();
    for j in 0..p as i64 {
        for n in 1..=max_len {
            blocks.push((j, n));
        }
    }
    blocks.sort();
    let mut out = Vec::new();
    let mut current: Vec<(i64, i64)> = Vec::new();
    fn rec(
        blocks: &[(i64, i64)],
        start: usize,
        budget: i64,
        current: &mut Vec<(i64, i64)>,
        out: &mut Vec<IsoType>,
    ) {
        out.push(IsoType::new(current.clone()));
        for i in start..blocks.len() {
            if blocks[i].1 <= budget {
                current.push(blocks[i]);
                rec(blocks, i, budget - blocks[i].1, current, out);
                current.pop();
            }
        }
    }
    rec(&blocks, 0, max_len, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Order of `GL_n(F_q)`.
pub fn gl_order(q: u32, n: usize) -> BigInt {
    let qb = BigInt::from(q);
    let qn = num_traits::pow(qb.clone(), n);
    let mut acc = BigInt::one();
    for i in 0..n {
        acc *= &qn - num_traits::pow(qb.clone(), i);
    }
    acc
}

/// Counts invertible endomorphisms. Small endomorphism algebras are
/// enumerated outright; past the enumeration threshold the unit count of
/// the endomorphism ring is used (radical times a product of general linear
/// groups over the block multiplicities).
pub fn brute_aut(m: &NilpRep) -> Result<BigInt> {
    if m.total_dim() > MAX_TOTAL_DIM {
        return Err(Error::ScaleBound(format!(
            "total dimension {} exceeds {}",
            m.total_dim(),
            MAX_TOTAL_DIM
        )));
    }
    if m.total_dim() == 0 {
        return Ok(BigInt::one());
    }
    let basis = m.hom_basis(m);
    let e = basis.len();
    let space = (m.q as u64).checked_pow(e as u32);
    if let Some(total) = space.filter(|t| *t <= 1 << 17) {
        let mut count = 0u64;
        let mut coeffs = vec![0u32; e];
        for _ in 0..total {
            let mut invertible = true;
            for v in 0..m.p {
                let mut phi = super::linalg::FpMat::zero(m.q, m.dims[v], m.dims[v]);
                for (k, c) in coeffs.iter().enumerate() {
                    if *c != 0 {
                        phi = phi.add(&basis[k][v].scaled(*c));
                    }
                }
                if !phi.is_invertible() {
                    invertible = false;
                    break;
                }
            }
            if invertible {
                count += 1;
            }
            let mut idx = 0;
            while idx < e {
                coeffs[idx] += 1;
                if coeffs[idx] < m.q {
                    break;
                }
                coeffs[idx] = 0;
                idx += 1;
            }
        }
        return Ok(BigInt::from(count));
    }
    // Unit-group count: units of End(M) = |GL over the semisimple quotient|
    // times |radical|. Every block has residue field F_q here.
    let iso = m.classify()?;
    let mut mult: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for b in iso.blocks() {
        *mult.entry(*b).or_insert(0) += 1;
    }
    let head_dim: usize = mult.values().map(|m| m * m).sum();
    let mut acc = num_traits::pow(BigInt::from(m.q), e - head_dim);
    for m_i in mult.values() {
        acc *= gl_order(m.q, *m_i);
    }
    Ok(acc)
}

/// `|{X <= M : X iso B, M/X iso A}|` by enumerating subrepresentations.
pub fn brute_hall(a: &IsoType, b: &IsoType, m: &NilpRep) -> Result<u64> {
    if m.total_dim() > MAX_TOTAL_DIM {
        return Err(Error::ScaleBound(format!(
            "total dimension {} exceeds {}",
            m.total_dim(),
            MAX_TOTAL_DIM
        )));
    }
    check_prime_field(m.q)?;
    let mut count = 0u64;
    let mut failure: Option<Error> = None;
    m.for_each_subrep(|tuple| {
        if failure.is_some() {
            return;
        }
        let sub = m.sub_rep(tuple);
        let quot = m.quotient_rep(tuple);
        match (sub.classify(), quot.classify()) {
            (Ok(si), Ok(qi)) => {
                if si == *b && qi == *a {
                    count += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// Interned brute-force tables for one `(p, q)` tube up to a total
/// dimension bound. All maps are keyed by class index into `classes`.
pub struct TubeTable {
    pub p: usize,
    pub q: u32,
    pub max_dim: i64,
    pub classes: Vec<IsoType>,
    pub reps: Vec<NilpRep>,
    pub dim_vectors: Vec<Vec<usize>>,
    pub aut: Vec<BigInt>,
    /// (quotient class A, sub class B) -> count, per middle class.
    pub hall: Vec<BTreeMap<(usize, usize), u64>>,
    hom_dims: Vec<Vec<usize>>,
    index: BTreeMap<IsoType, usize>,
}

impl TubeTable {
    pub fn build(p: usize, q: u32, max_dim: i64) -> Result<TubeTable> {
        check_prime_field(q)?;
        if p == 0 {
            return Err(Error::InvalidInput("p = 0".into()));
        }
        if max_dim < 0 || max_dim as usize > MAX_TOTAL_DIM {
            return Err(Error::ScaleBound(format!(
                "max dimension {} exceeds {}",
                max_dim, MAX_TOTAL_DIM
            )));
        }
        let classes = classes_up_to(p, max_dim);
        let index: BTreeMap<IsoType, usize> =
            classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let reps: Vec<NilpRep> = classes
            .iter()
            .map(|c| NilpRep::from_iso(p, q, c))
            .collect::<Result<_>>()?;
        let dim_vectors: Vec<Vec<usize>> = classes.iter().map(|c| c.dim_vector(p)).collect();
        let aut: Vec<BigInt> = reps.iter().map(brute_aut).collect::<Result<_>>()?;
        let mut hall: Vec<BTreeMap<(usize, usize), u64>> = vec![BTreeMap::new(); classes.len()];
        for (mi, rep) in reps.iter().enumerate() {
            let mut failure: Option<Error> = None;
            let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            rep.for_each_subrep(|tuple| {
                if failure.is_some() {
                    return;
                }
                let sub = rep.sub_rep(tuple);
                let quot = rep.quotient_rep(tuple);
                match (sub.classify(), quot.classify()) {
                    (Ok(si), Ok(qi)) => {
                        let bi = index[&si];
                        let ai = index[&qi];
                        *counts.entry((ai, bi)).or_insert(0) += 1;
                    }
                    (Err(e), _) | (_, Err(e)) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            hall[mi] = counts;
        }
        let mut hom_dims = vec![vec![0usize; classes.len()]; classes.len()];
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                hom_dims[i][j] = reps[i].hom_dim(&reps[j]);
            }
        }
        Ok(TubeTable { p, q, max_dim, classes, reps, dim_vectors, aut, hall, hom_dims, index })
    }

    pub fn class_index(&self, iso: &IsoType) -> Result<usize> {
        self.index.get(iso).copied().ok_or_else(|| {
            Error::ScaleBound(format!("class {} outside the table bound {}", iso, self.max_dim))
        })
    }

    /// `F^M_{A B}`: subobjects of `M` isomorphic to `B` with quotient `A`.
    pub fn hall_number(&self, a: usize, b: usize, m: usize) -> u64 {
        self.hall[m].get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom_dims[a][b]
    }

    pub fn classes_with_dim_vector(&self, dv: &[usize]) -> Vec<usize> {
        (0..self.classes.len()).filter(|i| self.dim_vectors[*i] == dv).collect()
    }

    pub fn dim_vector_sum(&self, a: usize, b: usize) -> Vec<usize> {
        self.dim_vectors[a]
            .iter()
            .zip(self.dim_vectors[b].iter())
            .map(|(x, y)| x + y)
            .collect()
    }

    pub fn total_dim(&self, a: usize) -> usize {
        self.dim_vectors[a].iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_enumeration_counts() {
        // Rank-1 tube: classes of total length <= 4 are partitions of 0..=4.
        let classes = classes_up_to(1, 4);
        assert_eq!(classes.len(), 1 + 1 + 2 + 3 + 5);
    }

    #[test]
    fn hall_examples_lines_in_a_plane() {
        // M = S + S over F_q: the number of simple submodules with simple
        // quotient is the number of lines in a 2-dim space.
        for q in [2u32, 3, 5] {
            let s = IsoType::new(vec![(0, 1)]);
            let m = NilpRep::from_iso(1, q, &IsoType::new(vec![(0, 1), (0, 1)])).unwrap();
            assert_eq!(brute_hall(&s, &s, &m).unwrap(), q as u64 + 1);
        }
        // M uniserial of length 2: unique simple submodule.
        let s = IsoType::new(vec![(0, 1)]);
        let m = NilpRep::indecomposable(1, 3, 0, 2).unwrap();
        assert_eq!(brute_hall(&s, &s, &m).unwrap(), 1);
        // Zero submodule: F^M_{M, 0} = 1.
        let m2 = NilpRep::indecomposable(1, 3, 0, 2).unwrap();
        assert_eq!(
            brute_hall(&IsoType::new(vec![(0, 2)]), &IsoType::zero(), &m2).unwrap(),
            1
        );
        assert_eq!(brute_hall(&s, &IsoType::zero(), &m2).unwrap(), 0);
    }

    #[test]
    fn aut_examples() {
        // Chain of length 3 in a rank-2 tube: (q-1) q.
        for q in [2u32, 3] {
            let m = NilpRep::indecomposable(2, q, 0, 3).unwrap();
            assert_eq!(brute_aut(&m).unwrap(), BigInt::from((q - 1) * q));
        }
        // Simple: q - 1 scalars.
        let m = NilpRep::indecomposable(2, 5, 1, 1).unwrap();
        assert_eq!(brute_aut(&m).unwrap(), BigInt::from(4));
        // S + S over F_2: GL_2(F_2).
        let m = NilpRep::from_iso(1, 2, &IsoType::new(vec![(0, 1), (0, 1)])).unwrap();
        assert_eq!(brute_aut(&m).unwrap(), BigInt::from(6));
    }

    #[test]
    fn aut_unit_formula_agrees_with_enumeration() {
        // S^(2) + S at q = 3: enumerable (3^5 = 243), and also computable
        // through the unit-count branch; force both and compare.
        let iso = IsoType::new(vec![(0, 2), (0, 1)]);
        let m = NilpRep::from_iso(1, 3, &iso).unwrap();
        let enumerated = brute_aut(&m).unwrap();
        // q^(e - sum m_i^2) * prod |GL_{m_i}|, e = 5, head = 2.
        let expected = num_traits::pow(BigInt::from(3), 3) * gl_order(3, 1) * gl_order(3, 1);
        assert_eq!(enumerated, expected);
    }

    #[test]
    fn table_is_consistent_with_direct_counts() {
        let t = TubeTable::build(2, 2, 3).unwrap();
        let s0 = t.class_index(&IsoType::new(vec![(0, 1)])).unwrap();
        let s1 = t.class_index(&IsoType::new(vec![(1, 1)])).unwrap();
        let chain = t.class_index(&IsoType::new(vec![(0, 2)])).unwrap();
        // 0 -> S_1 -> S_0^(2) -> S_0 -> 0 is the unique filtration.
        assert_eq!(t.hall_number(s0, s1, chain), 1);
        assert_eq!(t.hall_number(s1, s0, chain), 0);
        let split = t.class_index(&IsoType::new(vec![(0, 1), (1, 1)])).unwrap();
        assert_eq!(t.hall_number(s0, s1, split), 1);
        assert_eq!(t.hall_number(s1, s0, split), 1);
    }
}
