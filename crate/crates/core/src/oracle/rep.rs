//! Nilpotent representations of the cyclic quiver over a prime field: one
//! exceptional tube (or, with one vertex, a homogeneous tube over a
//! degree-one point) made completely explicit.
//!
//! Vertex `v` maps to vertex `v + 1 mod p`. An indecomposable with top
//! vertex `t` and length `n` occupies the chain `t, t+1, ..., t+n-1`; the
//! tube labels used by the rest of the crate put the top of `S_{i,j}` at
//! vertex `-j mod p`, so that tau (shift by one vertex) lowers `j` by one.

use std::fmt;

use crate::error::{Error, Result};

use super::linalg::{all_subspaces, check_prime_field, FpMat, Subspace};

pub(crate) const MAX_TOTAL_DIM: usize = 6;

/// Isomorphism class of a single-tube torsion module: a sorted multiset of
/// (top index j, length n) pairs in the tube labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IsoType(Vec<(i64, i64)>);

impl IsoType {
    pub fn new(mut blocks: Vec<(i64, i64)>) -> Self {
        blocks.sort();
        IsoType(blocks)
    }

    pub fn zero() -> Self {
        IsoType::default()
    }

    pub fn blocks(&self) -> &[(i64, i64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_length(&self) -> i64 {
        self.0.iter().map(|(_, n)| n).sum()
    }

    /// Dimension vector in the vertex labeling.
    pub fn dim_vector(&self, p: usize) -> Vec<usize> {
        let mut dims = vec![0usize; p];
        for (j, n) in &self.0 {
            let top = (-j).rem_euclid(p as i64) as usize;
            for k in 0..*n {
                dims[(top + k as usize) % p] += 1;
            }
        }
        dims
    }

    /// Parses "(j,n)+(j,n)+..." or "0".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(IsoType::zero());
        }
        let mut blocks = Vec::new();
        for part in t.split('+') {
            let part = part.trim();
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("expected (j,n), got {:?}", part),
                })?;
            let (j, n) = inner.split_once(',').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected (j,n), got {:?}", part),
            })?;
            let j: i64 = j.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad top index in {:?}", part),
            })?;
            let n: i64 = n.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad length in {:?}", part),
            })?;
            if n < 1 {
                return Err(Error::InvalidTube(format!("length {} < 1", n)));
            }
            blocks.push((j, n));
        }
        Ok(IsoType::new(blocks))
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(j, n)| format!("({},{})", j, n)).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Nilpotent representation of the cyclic quiver with `p` vertices over
/// `F_q`: `arrows[v]` maps vertex `v` to vertex `v + 1 mod p`.
#[derive(Debug, Clone)]
pub struct NilpRep {
    pub p: usize,
    pub q: u32,
    pub dims: Vec<usize>,
    pub arrows: Vec<FpMat>,
}

impl NilpRep {
    pub fn new(p: usize, q: u32, dims: Vec<usize>, arrows: Vec<FpMat>) -> Result<Self> {
        check_prime_field(q)?;
        if p == 0 || dims.len() != p || arrows.len() != p {
            return Err(Error::InvalidInput(format!(
                "need {} dims and arrows for {} vertices",
                p, p
            )));
        }
        for v in 0..p {
            let a = &arrows[v];
            if a.rows != dims[(v + 1) % p] || a.cols != dims[v] || a.q != q {
                return Err(Error::InvalidInput(format!(
                    "arrow {} has shape {}x{}, expected {}x{}",
                    v,
                    a.rows,
                    a.cols,
                    dims[(v + 1) % p],
                    dims[v]
                )));
            }
        }
        let rep = NilpRep { p, q, dims, arrows };
        if !rep.is_nilpotent() {
            return Err(Error::InvalidInput("representation is not nilpotent".into()));
        }
        Ok(rep)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Composite of `len` consecutive arrows starting at vertex `v`.
    pub fn path(&self, v: usize, len: usize) -> FpMat {
        let mut acc = FpMat::identity(self.q, self.dims[v]);
        let mut at = v;
        for _ in 0..len {
            acc = self.arrows[at].mul(&acc);
            at = (at + 1) % self.p;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        let bound = self.total_dim();
        (0..self.p).all(|v| self.path(v, bound).is_zero())
    }

    /// Canonical single chain: top vertex for tube label `j` is `-j mod p`.
    pub fn indecomposable(p: usize, q: u32, j: i64, n: i64) -> Result<Self> {
        NilpRep::from_iso(p, q, &IsoType::new(vec![(j, n)]))
    }

    /// Direct sum of canonical chains.
    pub fn from_iso(p: usize, q: u32, iso: &IsoType) -> Result<Self> {
        check_prime_field(q)?;
        if p == 0 {
            return Err(Error::InvalidInput("p = 0".into()));
        }
        let mut dims = vec![0usize; p];
        // (vertex, slot) for every chain element, in block order.
        let mut positions: Vec<Vec<(usize, usize)>> = Vec::new();
        for (j, n) in iso.blocks() {
            if *n < 1 {
                return Err(Error::InvalidTube(format!("length {} < 1", n)));
            }
            let top = (-j).rem_euclid(p as i64) as usize;
            let mut chain = Vec::new();
            for k in 0..*n {
                let v = (top + k as usize) % p;
                chain.push((v, dims[v]));
                dims[v] += 1;
            }
            positions.push(chain);
        }
        let mut arrows: Vec<FpMat> =
            (0..p).map(|v| FpMat::zero(q, dims[(v + 1) % p], dims[v])).collect();
        for chain in &positions {
            for pair in chain.windows(2) {
                let (v, slot) = pair[0];
                let (_, next_slot) = pair[1];
                arrows[v].set(next_slot, slot, 1);
            }
        }
        NilpRep::new(p, q, dims, arrows)
    }

    /// Decomposition into chain blocks via the rank array of path maps.
    pub fn classify(&self) -> Result<IsoType> {
        let total = self.total_dim();
        if total == 0 {
            return Ok(IsoType::zero());
        }
        // ranks[v][len] for len = 0..=total+1.
        let mut ranks = vec![vec![0usize; total + 2]; self.p];
        for v in 0..self.p {
            let mut acc = FpMat::identity(self.q, self.dims[v]);
            ranks[v][0] = self.dims[v];
            let mut at = v;
            for len in 1..=total + 1 {
                acc = self.arrows[at].mul(&acc);
                at = (at + 1) % self.p;
                ranks[v][len] = acc.rank();
            }
        }
        for v in 0..self.p {
            if ranks[v][total] != 0 {
                return Err(Error::InvalidInput("representation is not nilpotent".into()));
            }
        }
        // life(v, l): number of elements at vertex v surviving exactly l more
        // arrows. A block with socle vertex u and length n contributes one
        // element of life l at vertex u - l for each l < n.
        let life = |v: usize, l: usize| ranks[v][l] - ranks[v][l + 1];
        let mut blocks = Vec::new();
        for socle in 0..self.p {
            for n in 1..=total {
                let at_len = |len: usize| -> usize {
                    if len == 0 {
                        return 0;
                    }
                    let l = len - 1;
                    let v = (socle + self.p * total - l) % self.p;
                    life(v, l)
                };
                // Blocks with this socle of length >= n, minus those >= n+1.
                let count = at_len(n) as i64 - at_len(n + 1) as i64;
                debug_assert!(count >= 0);
                for _ in 0..count {
                    let top = (socle + self.p * total - (n - 1)) % self.p;
                    let j = (-(top as i64)).rem_euclid(self.p as i64);
                    blocks.push((j, n as i64));
                }
            }
        }
        Ok(IsoType::new(blocks))
    }

    /// Calls `f` on every subrepresentation, presented as one echelon
    /// subspace per vertex.
    pub fn for_each_subrep<F: FnMut(&[Subspace])>(&self, mut f: F) {
        let per_vertex: Vec<Vec<Subspace>> =
            self.dims.iter().map(|d| all_subspaces(self.q, *d)).collect();
        let mut choice = vec![0usize; self.p];
        'outer: loop {
            let tuple: Vec<Subspace> =
                (0..self.p).map(|v| per_vertex[v][choice[v]].clone()).collect();
            if self.closed_under_arrows(&tuple) {
                f(&tuple);
            }
            let mut idx = 0;
            loop {
                if idx == self.p {
                    break 'outer;
                }
                choice[idx] += 1;
                if choice[idx] < per_vertex[idx].len() {
                    break;
                }
                choice[idx] = 0;
                idx += 1;
            }
        }
    }

    fn closed_under_arrows(&self, tuple: &[Subspace]) -> bool {
        for v in 0..self.p {
            let next = &tuple[(v + 1) % self.p];
            for r in 0..tuple[v].dim() {
                let image = self.arrows[v].mul_vec(tuple[v].basis.row(r));
                if !next.contains(&image) {
                    return false;
                }
            }
        }
        true
    }

    /// The subrepresentation on the given subspaces.
    pub fn sub_rep(&self, tuple: &[Subspace]) -> NilpRep {
        let dims: Vec<usize> = tuple.iter().map(|s| s.dim()).collect();
        let mut arrows = Vec::with_capacity(self.p);
        for v in 0..self.p {
            let next = &tuple[(v + 1) % self.p];
            let mut a = FpMat::zero(self.q, next.dim(), tuple[v].dim());
            for c in 0..tuple[v].dim() {
                let image = self.arrows[v].mul_vec(tuple[v].basis.row(c));
                let coords = next.coords(&image).expect("subrep closed under arrows");
                for (r, val) in coords.iter().enumerate() {
                    a.set(r, c, *val);
                }
            }
            arrows.push(a);
        }
        NilpRep { p: self.p, q: self.q, dims, arrows }
    }

    /// The quotient representation by the given subspaces, in the basis of
    /// non-pivot ambient coordinates.
    pub fn quotient_rep(&self, tuple: &[Subspace]) -> NilpRep {
        let free: Vec<Vec<usize>> = (0..self.p)
            .map(|v| (0..self.dims[v]).filter(|c| !tuple[v].pivots.contains(c)).collect())
            .collect();
        let dims: Vec<usize> = free.iter().map(|f| f.len()).collect();
        let mut arrows = Vec::with_capacity(self.p);
        for v in 0..self.p {
            let nv = (v + 1) % self.p;
            let mut a = FpMat::zero(self.q, dims[nv], dims[v]);
            for (c, amb) in free[v].iter().enumerate() {
                let mut e = vec![0u32; self.dims[v]];
                e[*amb] = 1;
                let image = self.arrows[v].mul_vec(&e);
                let reduced = tuple[nv].reduce(&image);
                for (r, amb_r) in free[nv].iter().enumerate() {
                    a.set(r, c, reduced[*amb_r]);
                }
            }
            arrows.push(a);
        }
        NilpRep { p: self.p, q: self.q, dims, arrows }
    }

    /// Basis of the intertwiner space Hom(self, other): tuples of matrices
    /// `phi_v` with `phi_{v+1} A_v = B_v phi_v`.
    pub fn hom_basis(&self, other: &NilpRep) -> Vec<Vec<FpMat>> {
        assert_eq!(self.p, other.p);
        assert_eq!(self.q, other.q);
        let q = self.q;
        // Unknowns: entries of phi_v, laid out vertex by vertex, row-major.
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::with_capacity(self.p + 1);
            for v in 0..self.p {
                out.push(acc);
                acc += other.dims[v] * self.dims[v];
            }
            out.push(acc);
            out
        };
        let unknowns = offsets[self.p];
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for v in 0..self.p {
            let nv = (v + 1) % self.p;
            // phi_{nv} * A_v - B_v * phi_v = 0, entry (r, c).
            for r in 0..other.dims[nv] {
                for c in 0..self.dims[v] {
                    let mut row = vec![0u32; unknowns];
                    for s in 0..self.dims[nv] {
                        let idx = offsets[nv] + r * self.dims[nv] + s;
                        row[idx] = (row[idx] + self.arrows[v].get(s, c)) % q;
                    }
                    for s in 0..other.dims[v] {
                        let idx = offsets[v] + s * self.dims[v] + c;
                        row[idx] = (row[idx] + q - other.arrows[v].get(r, s) % q) % q;
                    }
                    rows.push(row);
                }
            }
        }
        let constraint = FpMat::from_rows(q, unknowns, &rows);
        let kernel = constraint.kernel_basis();
        let mut basis = Vec::with_capacity(kernel.rows);
        for k in 0..kernel.rows {
            let mut mats = Vec::with_capacity(self.p);
            for v in 0..self.p {
                let mut m = FpMat::zero(q, other.dims[v], self.dims[v]);
                for r in 0..other.dims[v] {
                    for c in 0..self.dims[v] {
                        m.set(r, c, kernel.get(k, offsets[v] + r * self.dims[v] + c));
                    }
                }
                mats.push(m);
            }
            basis.push(mats);
        }
        basis
    }

    pub fn hom_dim(&self, other: &NilpRep) -> usize {
        self.hom_basis(other).len()
    }

    /// Euler form on dimension vectors: `sum a_v b_v - sum a_v b_{v+1}`.
    pub fn euler_dimvec(&self, other: &NilpRep) -> i64 {
        let mut acc = 0i64;
        for v in 0..self.p {
            acc += self.dims[v] as i64 * other.dims[v] as i64;
            acc -= self.dims[v] as i64 * other.dims[(v + 1) % self.p] as i64;
        }
        acc
    }

    /// `dim Ext^1(self, other) = dim Hom(self, other) - <dim self, dim other>`.
    pub fn ext_dim(&self, other: &NilpRep) -> i64 {
        self.hom_dim(other) as i64 - self.euler_dimvec(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_single_jordan_block() {
        let a = FpMat::from_rows(2, 2, &[vec![0, 0], vec![1, 0]]);
        let rep = NilpRep::new(1, 2, vec![2], vec![a]).unwrap();
        assert_eq!(rep.classify().unwrap(), IsoType::new(vec![(0, 2)]));
    }

    #[test]
    fn classify_two_simples() {
        let rep = NilpRep::new(
            2,
            2,
            vec![1, 1],
            vec![FpMat::zero(2, 1, 1), FpMat::zero(2, 1, 1)],
        )
        .unwrap();
        assert_eq!(rep.classify().unwrap(), IsoType::new(vec![(0, 1), (1, 1)]));
    }

    #[test]
    fn classify_length_two_chains() {
        // Arrow 0 -> 1 invertible: top vertex 0, so label j = 0.
        let rep = NilpRep::new(
            2,
            2,
            vec![1, 1],
            vec![FpMat::identity(2, 1), FpMat::zero(2, 1, 1)],
        )
        .unwrap();
        assert_eq!(rep.classify().unwrap(), IsoType::new(vec![(0, 2)]));
        // Arrow 1 -> 0 invertible: top vertex 1, label j = -1 mod 2 = 1.
        let rep = NilpRep::new(
            2,
            2,
            vec![1, 1],
            vec![FpMat::zero(2, 1, 1), FpMat::identity(2, 1)],
        )
        .unwrap();
        assert_eq!(rep.classify().unwrap(), IsoType::new(vec![(1, 2)]));
    }

    #[test]
    fn canonical_rep_round_trips_through_classify() {
        for p in 1..=3usize {
            for q in [2u32, 3] {
                for j in 0..p as i64 {
                    for n in 1..=4i64 {
                        let rep = NilpRep::indecomposable(p, q, j, n).unwrap();
                        assert_eq!(rep.classify().unwrap(), IsoType::new(vec![(j, n)]));
                    }
                }
                let iso = IsoType::new(vec![(0, 2), (0, 1), ((p as i64) - 1, 1)]);
                let rep = NilpRep::from_iso(p, q, &iso).unwrap();
                assert_eq!(rep.classify().unwrap(), iso);
            }
        }
    }

    #[test]
    fn non_nilpotent_rejected() {
        let rep = NilpRep::new(1, 2, vec![1], vec![FpMat::identity(2, 1)]);
        assert!(rep.is_err());
    }

    #[test]
    fn hom_dims_match_min_for_jordan_blocks() {
        for q in [2u32, 3] {
            for n in 1..=3i64 {
                for m in 1..=3i64 {
                    let a = NilpRep::indecomposable(1, q, 0, n).unwrap();
                    let b = NilpRep::indecomposable(1, q, 0, m).unwrap();
                    assert_eq!(a.hom_dim(&b) as i64, n.min(m));
                }
            }
        }
    }

    #[test]
    fn iso_display_parse() {
        let iso = IsoType::new(vec![(1, 2), (0, 1)]);
        assert_eq!(iso.to_string(), "(0,1)+(1,2)");
        assert_eq!(IsoType::parse("(1,2)+(0,1)").unwrap(), iso);
        assert_eq!(IsoType::parse("0").unwrap(), IsoType::zero());
    }
}
