//! Exact dense and sparse linear algebra over the rationals.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::HashMap;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Brings `m` to reduced row echelon form in place and returns the pivot columns.
/// Rows past the rank are left as zero rows.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r][c..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of the right null space of `m` (an `nrows x ncols` matrix).
/// One vector per free column, with a 1 in that column.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); ncols];
        v[f] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            if !work[r][f].is_zero() {
                v[p] = -work[r][f].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Some solution `x` of `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &inv;
            for j in c..n {
                let t = &factor * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Q::zero(); ncols];
            for k in 0..inner {
                if row[k].is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += &row[k] * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// A subspace of `Q^n` stored as the nonzero rows of a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let mut rows: Vec<Vec<Q>> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows);
        rows.truncate(pivots.len());
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Vectors among `candidates` that extend a basis of `self`, chosen greedily in order.
    pub fn complement_from(&self, candidates: &[Vec<Q>]) -> Vec<usize> {
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if !acc.contains(c) {
                acc = Subspace::span(self.ambient, acc.rows.iter().cloned().chain([c.clone()]));
                chosen.push(i);
            }
        }
        chosen
    }
}

/// Column-major sparse matrix with exact entries; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, cols: (0..n).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn from_triples(nrows: usize, ncols: usize, triples: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut acc: Vec<std::collections::BTreeMap<usize, Q>> = vec![Default::default(); ncols];
        for (r, c, v) in triples {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            *acc[c].entry(r).or_insert_with(Q::zero) += v;
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, Q)>>) -> Self {
        let ncols = cols.len();
        Self::from_triples(
            nrows,
            ncols,
            cols.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn from_dense(m: &[Vec<Q>]) -> Self {
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut cols = vec![Vec::new(); ncols];
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[c].push((r, v.clone()));
                }
            }
        }
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, c: usize) -> &[(usize, Q)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.cols[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.nrows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += a * x;
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector given as (index, value) pairs.
    pub fn apply_sparse(&self, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut acc: std::collections::BTreeMap<usize, Q> = Default::default();
        for (c, x) in v {
            for (r, a) in &self.cols[*c] {
                *acc.entry(*r).or_insert_with(Q::zero) += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let cols = other.cols.iter().map(|col| self.apply_sparse(col)).collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Self::from_triples(
            self.nrows,
            self.ncols,
            self.triples().chain(other.triples()).map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> SparseMatrix {
        if s.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|(r, v)| (*r, v * s)).collect()).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn transpose(&self) -> SparseMatrix {
        Self::from_triples(self.ncols, self.nrows, self.triples().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.triples() {
            m[r][c] = v.clone();
        }
        m
    }

    /// Dense submatrix with the given global row and column index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Q>> {
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = vec![vec![Q::zero(); cols.len()]; rows.len()];
        for (j, &c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[c] {
                if let Some(&i) = pos.get(r) {
                    m[i][j] = v.clone();
                }
            }
        }
        m
    }

    /// `a ⊗ b` with the row/column index `(i, j) ↦ i * b.dim + j`.
    pub fn kron(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let (bn, bm) = (b.nrows, b.ncols);
        let mut triples = Vec::with_capacity(a.nnz() * b.nnz());
        for (ra, ca, va) in a.triples() {
            for (rb, cb, vb) in b.triples() {
                triples.push((ra * bn + rb, ca * bm + cb, va * vb));
            }
        }
        Self::from_triples(a.nrows * bn, a.ncols * bm, triples)
    }

    pub fn max_abs_entry(&self) -> Q {
        self.triples().map(|(_, _, v)| v.abs()).max().unwrap_or_else(Q::zero)
    }
}

/// Integer matrix helpers used for lattice computations.
pub mod int {
    /// Smith normal form `u * m * v = d` with `u`, `v` unimodular.
    /// Returns `(d_diag, u)`; the diagonal has nonnegative entries, each dividing the next.
    pub fn smith_normal_form(m: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut a: Vec<Vec<i64>> = m.to_vec();
        let mut u: Vec<Vec<i64>> =
            (0..nrows).map(|i| (0..nrows).map(|j| i64::from(i == j)).collect()).collect();
        let steps = nrows.min(ncols);
        for t in 0..steps {
            // pick the smallest nonzero entry of the trailing block as pivot
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..nrows {
                    for j in t..ncols {
                        if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return finish(a, u, steps);
                };
                a.swap(t, pi);
                u.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..nrows {
                    let f = a[i][t] / p;
                    if f != 0 {
                        for j in 0..ncols {
                            a[i][j] -= f * a[t][j];
                        }
                        for j in 0..nrows {
                            u[i][j] -= f * u[t][j];
                        }
                    }
                    if a[i][t] != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..ncols {
                    let f = a[t][j] / p;
                    if f != 0 {
                        for row in a.iter_mut() {
                            row[j] -= f * row[t];
                        }
                    }
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // enforce divisibility of the rest of the block by the pivot
                let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in 0..ncols {
                            a[t][j] += a[i][j];
                        }
                        for j in 0..nrows {
                            u[t][j] += u[i][j];
                        }
                    }
                    None => break,
                }
            }
            if a[t][t] < 0 {
                for j in 0..ncols {
                    a[t][j] = -a[t][j];
                }
                for j in 0..nrows {
                    u[t][j] = -u[t][j];
                }
            }
        }
        finish(a, u, steps)
    }

    fn finish(a: Vec<Vec<i64>>, u: Vec<Vec<i64>>, steps: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
        let diag = (0..steps).map(|i| a[i][i]).collect();
        (diag, u)
    }

    pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}
