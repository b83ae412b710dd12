//! Dense exact linear algebra over `F_q`: RREF, kernels, and subspaces of a
//! fixed ambient coordinate space.

use crate::field::{Field, FqElem};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FqElem>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.fmt_elem(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FqElem>>) -> Mat {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            data.extend(r);
        }
        Mat {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &FqElem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FqElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FqElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = f.inv(self.at(r, c));
            for j in c..self.cols {
                *self.at_mut(r, j) = f.mul(self.at(r, j), &inv);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.at(i, c)) {
                    let factor = self.at(i, c).clone();
                    for j in c..self.cols {
                        let s = f.mul(&factor, self.at(r, j));
                        *self.at_mut(i, j) = f.sub(self.at(i, j), &s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// RREF basis of the right null space: vectors `v` with `M v = 0`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis_rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.at(ri, fc));
            }
            basis_rows.push(v);
        }
        let mut basis = Mat::from_rows(&f, basis_rows);
        basis.rref();
        Subspace {
            ambient_dim: self.cols,
            basis,
        }
    }

    /// Solve `M x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[FqElem]) -> Option<Vec<FqElem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field.clone();
        let mut aug = Mat::zero(&f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> FqElem {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.at(i, c))) else {
                return f.zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(c * n + j, pr * n + j);
                }
                det = f.neg(&det);
            }
            det = f.mul(&det, m.at(c, c));
            let inv = f.inv(m.at(c, c));
            for i in (c + 1)..n {
                if !f.is_zero(m.at(i, c)) {
                    let factor = f.mul(m.at(i, c), &inv);
                    for j in c..n {
                        let s = f.mul(&factor, m.at(c, j));
                        *m.at_mut(i, j) = f.sub(m.at(i, j), &s);
                    }
                }
            }
        }
        det
    }

    pub fn mul_vec(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(r, c), &v[c]));
                }
                acc
            })
            .collect()
    }
}

/// A subspace of `F_q^n` stored as an RREF basis matrix; RREF uniqueness
/// makes subspace equality matrix equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
}

impl Subspace {
    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Mat::zero(field, 0, ambient_dim),
        }
    }

    pub fn full(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Mat::identity(field, ambient_dim),
        }
    }

    /// Row span of the given vectors, in RREF.
    pub fn span(field: &Field, vectors: Vec<Vec<FqElem>>) -> Subspace {
        let ambient_dim = vectors.first().map(|v| v.len()).unwrap_or(0);
        let mut m = Mat::from_rows(field, vectors);
        let pivots = m.rref();
        let dim = pivots.len();
        m.rows = dim;
        m.data.truncate(dim * m.cols);
        Subspace {
            ambient_dim,
            basis: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn contains(&self, v: &[FqElem]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.field().clone();
        let mut v = v.to_vec();
        // reduce against RREF rows
        for r in 0..self.basis.rows {
            let pc = (0..self.ambient_dim)
                .find(|&c| f.is_one(self.basis.at(r, c)))
                .expect("RREF row has a pivot");
            if !f.is_zero(&v[pc]) {
                let factor = v[pc].clone();
                for c in 0..self.ambient_dim {
                    let s = f.mul(&factor, self.basis.at(r, c));
                    v[c] = f.sub(&v[c], &s);
                }
            }
        }
        v.iter().all(|x| f.is_zero(x))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = Vec::new();
        for r in 0..self.basis.rows {
            rows.push(self.basis.row(r).to_vec());
        }
        for r in 0..other.basis.rows {
            rows.push(other.basis.row(r).to_vec());
        }
        if rows.is_empty() {
            return self.clone();
        }
        Subspace::span(self.field(), rows)
    }

    /// Intersection via the kernel of the stacked basis: kernel vectors
    /// `(x, y)` with `x A + y B = 0` give `x A` in both row spaces.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Validation(format!(
                "ambient mismatch: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let f = self.field().clone();
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(&f, self.ambient_dim));
        }
        // columns of the stacked transpose: a + b unknowns
        let mut m = Mat::zero(&f, self.ambient_dim, a + b);
        for i in 0..a {
            for c in 0..self.ambient_dim {
                *m.at_mut(c, i) = self.basis.at(i, c).clone();
            }
        }
        for j in 0..b {
            for c in 0..self.ambient_dim {
                *m.at_mut(c, a + j) = f.neg(other.basis.at(j, c));
            }
        }
        let ker = m.kernel();
        let mut rows = Vec::new();
        for r in 0..ker.basis.rows {
            let x = &ker.basis.row(r)[..a];
            let mut v = vec![f.zero(); self.ambient_dim];
            for (i, xi) in x.iter().enumerate() {
                for c in 0..self.ambient_dim {
                    let s = f.mul(xi, self.basis.at(i, c));
                    v[c] = f.add(&v[c], &s);
                }
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(&f, self.ambient_dim));
        }
        Ok(Subspace::span(&f, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ext_field_make;
    use rand::{Rng, SeedableRng};

    fn rand_subspace(
        f: &Field,
        dim: usize,
        ambient: usize,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Subspace {
        loop {
            let rows: Vec<Vec<FqElem>> = (0..dim)
                .map(|_| (0..ambient).map(|_| f.from_u64(rng.gen_range(0..97))).collect())
                .collect();
            let s = Subspace::span(f, rows);
            if s.dim() == dim {
                return s;
            }
        }
    }

    #[test]
    fn kernel_identity_and_zero() {
        let f = ext_field_make(97, 1).unwrap();
        assert_eq!(Mat::identity(&f, 3).kernel().dim(), 0);
        assert_eq!(Mat::zero(&f, 2, 5).kernel().dim(), 5);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = ext_field_make(97, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = Mat::from_rows(
                &f,
                (0..4)
                    .map(|_| (0..7).map(|_| f.from_u64(rng.gen_range(0..97))).collect())
                    .collect(),
            );
            let ker = m.kernel();
            assert_eq!(ker.dim(), 7 - m.rank());
            for r in 0..ker.basis.rows {
                let v = ker.basis.row(r).to_vec();
                assert!(m.mul_vec(&v).iter().all(|x| f.is_zero(x)));
            }
        }
    }

    #[test]
    fn intersect_idempotent() {
        let f = ext_field_make(97, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let a = rand_subspace(&f, 3, 6, &mut rng);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn dimension_formula_random() {
        let f = ext_field_make(97, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = rand_subspace(&f, rng.gen_range(1..7), 10, &mut rng);
            let b = rand_subspace(&f, rng.gen_range(1..7), 10, &mut rng);
            let i = a.intersect(&b).unwrap();
            let s = a.sum(&b);
            assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
        }
    }

    #[test]
    fn two_random_7dim_in_10_meet_in_4() {
        let f = ext_field_make(97, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let mut generic = 0;
        for _ in 0..10 {
            let a = rand_subspace(&f, 7, 10, &mut rng);
            let b = rand_subspace(&f, 7, 10, &mut rng);
            if a.intersect(&b).unwrap().dim() == 4 {
                generic += 1;
            }
        }
        assert!(generic >= 9, "7+7-10 = 4 generically");
    }

    #[test]
    fn ambient_mismatch_is_error() {
        let f = ext_field_make(97, 1).unwrap();
        let a = Subspace::full(&f, 3);
        let b = Subspace::full(&f, 4);
        assert!(a.intersect(&b).is_err());
    }
}
