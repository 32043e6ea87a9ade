//! Exact linear algebra over F_p: row-echelon subspaces, intersections and
//! kernels. Column order is significant: pivots are the first nonzero entry
//! of a row, so truncating coordinates to a prefix commutes with projection.

use crate::poly::PrimeField;

/// A linear subspace of F_p^dim stored as a reduced row-echelon basis,
/// rows sorted by pivot column. The representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, dim: usize) -> Self {
        Self::from_vectors(field, dim, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn from_vectors(field: PrimeField, dim: usize, vs: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut s = Self::zero(field, dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.dim - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` in place to its normal form modulo the subspace.
    pub fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let m = f.neg(c);
            for j in pc..self.dim {
                if row[j] != 0 {
                    v[j] = f.mul_add(v[j], m, row[j]);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Add `v` to the span. Returns the reduced, normalized vector that was
    /// adjoined, or `None` when `v` was already in the span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        self.reduce(&mut v);
        let pc = v.iter().position(|&c| c != 0)?;
        let f = self.field;
        let inv = f.inv(v[pc]);
        for c in v[pc..].iter_mut() {
            *c = f.mul(*c, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let m = f.neg(c);
            for j in pc..self.dim {
                if v[j] != 0 {
                    row[j] = f.mul_add(row[j], m, v[j]);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v.clone());
        Some(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let (big, small) = if self.rank() >= other.rank() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for r in &small.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Intersection via the kernel of `U -> F^dim / W`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim, other.dim);
        let (a, b) = if self.rank() <= other.rank() {
            (self, other)
        } else {
            (other, self)
        };
        let images: Vec<Vec<u32>> = a
            .rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                b.reduce(&mut v);
                v
            })
            .collect();
        let ker = kernel(self.field, self.dim, &images, None);
        let vecs = ker.into_iter().map(|c| combine(self.field, self.dim, &c, &a.rows));
        Subspace::from_vectors(self.field, self.dim, vecs)
    }

    /// Projection onto the first `len` coordinates.
    pub fn truncate(&self, len: usize) -> Subspace {
        assert!(len <= self.dim);
        let mut out = Subspace::zero(self.field, len);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if pc < len {
                out.rows.push(row[..len].to_vec());
                out.pivots.push(pc);
            }
        }
        out
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// `sum_i coeffs[i] * vecs[i]`
pub(crate) fn combine(field: PrimeField, dim: usize, coeffs: &[u32], vecs: &[Vec<u32>]) -> Vec<u32> {
    let mut out = vec![0u32; dim];
    for (&c, v) in coeffs.iter().zip(vecs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            if x != 0 {
                *o = field.mul_add(*o, c, x);
            }
        }
    }
    out
}

/// Basis of `{c in F^k : sum_i c_i * images[i] in modulo}` where `k =
/// images.len()` and each image lives in F^dim.
pub fn kernel(field: PrimeField, dim: usize, images: &[Vec<u32>], modulo: Option<&Subspace>) -> Vec<Vec<u32>> {
    let k = images.len();
    // slot[c] = (row with pivot c normalized to 1, payload)
    let mut slots: Vec<Option<(Vec<u32>, Vec<u32>)>> = vec![None; dim];
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        if let Some(m) = modulo {
            m.reduce(&mut v);
        }
        let mut payload = unit(k, i);
        let mut placed = false;
        for c in 0..dim {
            if v[c] == 0 {
                continue;
            }
            match &slots[c] {
                Some((row, pay)) => {
                    let m = field.neg(v[c]);
                    for j in c..dim {
                        if row[j] != 0 {
                            v[j] = field.mul_add(v[j], m, row[j]);
                        }
                    }
                    for (pj, &q) in payload.iter_mut().zip(pay) {
                        if q != 0 {
                            *pj = field.mul_add(*pj, m, q);
                        }
                    }
                }
                None => {
                    let inv = field.inv(v[c]);
                    for x in v[c..].iter_mut() {
                        *x = field.mul(*x, inv);
                    }
                    for x in payload.iter_mut() {
                        *x = field.mul(*x, inv);
                    }
                    slots[c] = Some((std::mem::take(&mut v), std::mem::take(&mut payload)));
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            out.push(payload);
        }
    }
    out
}

/// Row-echelon basis with sparse rows, indexed by pivot column. Used for the
/// large ambient space of all monomials below the truncation order, where
/// rows coming from relations are short.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: PrimeField,
    dim: usize,
    slots: Vec<Option<Vec<(usize, u32)>>>,
    rank: usize,
}

impl SparseEchelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            slots: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.slots[c].is_some()
    }

    /// Reduce a dense vector in place; afterwards it vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            if let Some(row) = &self.slots[c] {
                let m = f.neg(v[c]);
                for &(j, x) in row {
                    v[j] = f.mul_add(v[j], m, x);
                }
            }
        }
    }

    /// Insert a vector; returns the sparse reduced row if the span grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<Vec<(usize, u32)>> {
        self.reduce(&mut v);
        let pc = v.iter().position(|&c| c != 0)?;
        let inv = self.field.inv(v[pc]);
        let row: Vec<(usize, u32)> = (pc..self.dim)
            .filter(|&j| v[j] != 0)
            .map(|j| (j, self.field.mul(v[j], inv)))
            .collect();
        self.slots[pc] = Some(row.clone());
        self.rank += 1;
        Some(row)
    }
}
