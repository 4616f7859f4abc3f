//! Dense exact matrices and the subspace lattice.
//!
//! Everything downstream (normalizers, derivation spaces, theorem checks)
//! reduces to row elimination here. Subspaces are kept in reduced row echelon
//! form so that equality of computed spaces is plain grid equality.

use crate::error::{Error, Result};
use crate::field::{Field, PivotRow};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Mat<F> {
        let entries = vec![field.zero(); rows * cols];
        Mat { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Mat<F> {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    /// Standard matrix with a single 1 entry (0-based position).
    pub fn unit(field: F, rows: usize, cols: usize, i: usize, j: usize) -> Mat<F> {
        let mut m = Mat::zero(field, rows, cols);
        let one = m.field.one();
        m.set(i, j, one);
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Mat<F>> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Mat { field, rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[F::Elem]) {
        assert_eq!(v.len(), self.rows);
        for (i, e) in v.iter().enumerate() {
            self.set(i, j, e.clone());
        }
    }

    pub fn from_flat(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Mat<F> {
        assert_eq!(entries.len(), rows * cols);
        Mat { field, rows, cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn flatten(&self) -> Vec<F::Elem> {
        self.entries.clone()
    }

    pub fn add(&self, other: &Mat<F>) -> Result<Mat<F>> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Mat<F>) -> Result<Mat<F>> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let entries = self.entries.iter().map(|a| self.field.mul(c, a)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Mat<F>) -> Result<Mat<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self` for square matrices.
    pub fn commutator(&self, other: &Mat<F>) -> Result<Mat<F>> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    acc = f.add(&acc, &f.mul(a, &v[j]));
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Mat<F>) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.field.render(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Incremental row-echelon accumulator. Rows are folded in one at a time and
/// never stored beyond the running basis, which keeps the big derivation
/// systems (tens of thousands of constraint rows) at a small memory footprint.
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<PivotRow<F::Elem>>, // sorted by pivot column, pivot entry = 1
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Echelon<F> {
        Echelon { field, cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.col).collect()
    }

    /// Folds one row in; returns true when it enlarged the row space.
    pub fn insert(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.cols);
        self.field.reduce_row(&mut row, &self.rows);
        let lead = match row.iter().position(|e| !self.field.is_zero(e)) {
            Some(c) => c,
            None => return false,
        };
        let scale = self
            .field
            .inv(&row[lead])
            .expect("leading entry is nonzero");
        for e in row[lead..].iter_mut() {
            *e = self.field.mul(e, &scale);
        }
        row[lead] = self.field.one();
        let at = self.rows.partition_point(|r| r.col < lead);
        self.rows.insert(at, PivotRow { col: lead, entries: row });
        true
    }

    /// Sparse convenience: `(column, coefficient)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, F::Elem)]) -> bool {
        let mut row = vec![self.field.zero(); self.cols];
        for (c, v) in entries {
            row[*c] = self.field.add(&row[*c], v);
        }
        self.insert(row)
    }

    /// Backward pass; yields the canonical RREF rows sorted by pivot column.
    pub fn into_rref_rows(mut self) -> Vec<Vec<F::Elem>> {
        for i in (0..self.rows.len()).rev() {
            let (head, tail) = self.rows.split_at_mut(i + 1);
            self.field.reduce_row(&mut head[i].entries[..], tail);
        }
        self.rows.into_iter().map(|r| r.entries).collect()
    }
}

/// Reduced row echelon form and rank.
pub fn rref<F: Field>(m: &Mat<F>) -> (Mat<F>, usize) {
    let mut ech = Echelon::new(m.field().clone(), m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i).to_vec());
    }
    let rank = ech.rank();
    let mut rows = ech.into_rref_rows();
    while rows.len() < m.rows() {
        rows.push(vec![m.field().zero(); m.cols()]);
    }
    let out = Mat::from_rows(m.field().clone(), m.cols(), rows).expect("shape preserved");
    (out, rank)
}

/// One particular solution of `m x = b`, or `None` when inconsistent. Free
/// variables are pinned to zero, so the answer is deterministic.
pub fn solve<F: Field>(m: &Mat<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch("solve rhs length".into()));
    }
    let f = m.field().clone();
    let cols = m.cols();
    let mut ech = Echelon::new(f.clone(), cols + 1);
    for i in 0..m.rows() {
        let mut row = m.row(i).to_vec();
        row.push(b[i].clone());
        ech.insert(row);
    }
    if ech.pivots().contains(&cols) {
        return Ok(None);
    }
    let rows = ech.into_rref_rows();
    let mut x = vec![f.zero(); cols];
    for row in &rows {
        let p = row.iter().position(|e| !f.is_zero(e)).expect("no zero rows");
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}

/// A subspace of a coordinate space, stored as its canonical RREF basis.
/// Equal subspaces have identical bases, so `==` decides subspace equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>, // RREF, no zero rows
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Subspace<F> {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Subspace<F> {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { field, ambient, basis }
    }

    pub fn span(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Subspace<F>> {
        let mut ech = Echelon::new(field.clone(), ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch("span vector length".into()));
            }
            ech.insert(v);
        }
        Ok(Subspace { field, ambient, basis: ech.into_rref_rows() })
    }

    pub fn from_echelon(ech: Echelon<F>) -> Subspace<F> {
        let field = ech.field.clone();
        let ambient = ech.cols;
        Subspace { field, ambient, basis: ech.into_rref_rows() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Pivot columns of the canonical basis.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|e| !self.field.is_zero(e)).expect("no zero rows"))
            .collect()
    }

    /// The canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut row = v.to_vec();
        let pivots: Vec<PivotRow<F::Elem>> = self
            .basis
            .iter()
            .zip(self.pivots())
            .map(|(r, col)| PivotRow { col, entries: r.clone() })
            .collect();
        self.field.reduce_row(&mut row, &pivots);
        row
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch("contains vector length".into()));
        }
        Ok(self.reduce(v).iter().all(|e| self.field.is_zero(e)))
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch("ambient dims differ".into()));
        }
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch("ambient dims differ".into()));
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::span(self.field.clone(), self.ambient, vs)
    }

    /// Zassenhaus intersection: eliminate `[u|u]` and `[w|0]` rows; rows whose
    /// left half vanishes carry the intersection in their right half.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch("ambient dims differ".into()));
        }
        let f = &self.field;
        let n = self.ambient;
        let mut ech = Echelon::new(f.clone(), 2 * n);
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            ech.insert(row);
        }
        for w in &other.basis {
            let mut row = w.clone();
            row.extend(std::iter::repeat_with(|| f.zero()).take(n));
            ech.insert(row);
        }
        let mut inter = Vec::new();
        for row in ech.into_rref_rows() {
            if row[..n].iter().all(|e| f.is_zero(e)) {
                inter.push(row[n..].to_vec());
            }
        }
        Subspace::span(f.clone(), n, inter)
    }
}

/// Kernel of `m` as a canonical subspace of the domain.
pub fn kernel<F: Field>(m: &Mat<F>) -> Subspace<F> {
    let f = m.field().clone();
    let mut ech = Echelon::new(f.clone(), m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i).to_vec());
    }
    kernel_of_echelon(ech)
}

/// Kernel of the row space accumulated in `ech`.
pub fn kernel_of_echelon<F: Field>(ech: Echelon<F>) -> Subspace<F> {
    let f = ech.field.clone();
    let cols = ech.cols;
    let pivots = ech.pivots();
    let rows = ech.into_rref_rows();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivot_set.contains(&c) {
            continue;
        }
        let mut v = vec![f.zero(); cols];
        v[c] = f.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = f.neg(&row[c]);
        }
        basis.push(v);
    }
    Subspace::span(f, cols, basis).expect("consistent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};

    fn q(v: i64) -> num::BigRational {
        Rationals.scalar_from(v)
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = Gf::new(7).unwrap();
        let id = Mat::identity(f, 3);
        let (r, rank) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(rank, 3);

        let z = Mat::zero(f, 2, 5);
        let (r, rank) = rref(&z);
        assert!(r.is_zero());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_char2_row_cancellation() {
        let f = Gf::new(2).unwrap();
        let m = Mat::from_rows(f, 2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        let (r, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[1, 1]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    #[test]
    fn kernel_cases() {
        let f = Gf::new(5).unwrap();
        assert_eq!(kernel(&Mat::identity(f, 4)).dim(), 0);
        assert_eq!(kernel(&Mat::zero(f, 3, 4)).dim(), 4);

        // [[1,2]] over Q: kernel is span{(-2,1)}, canonicalized to (1, -1/2)
        let m = Mat::from_rows(Rationals, 2, vec![vec![q(1), q(2)]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let minus_half = Rationals.inv(&q(-2)).unwrap();
        assert_eq!(k.basis()[0], vec![q(1), minus_half]);
        assert!(k.contains(&[q(-2), q(1)]).unwrap());
    }

    #[test]
    fn solve_cases() {
        let f = Gf::new(5).unwrap();
        let id = Mat::identity(f, 3);
        assert_eq!(solve(&id, &[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));

        let z = Mat::zero(f, 2, 3);
        assert_eq!(solve(&z, &[1, 0]).unwrap(), None);

        let m = Mat::from_rows(f, 1, vec![vec![2]]).unwrap();
        assert_eq!(solve(&m, &[3]).unwrap(), Some(vec![4]));
    }

    #[test]
    fn subspace_lattice_basics() {
        let f = Gf::new(7).unwrap();
        let e1 = Subspace::span(f, 2, vec![vec![1, 0]]).unwrap();
        let e2 = Subspace::span(f, 2, vec![vec![0, 1]]).unwrap();
        let sum = e1.sum(&e2).unwrap();
        assert_eq!(sum.dim(), 2);
        let inter = e1.intersect(&e2).unwrap();
        assert!(inter.is_zero());

        let v = Subspace::span(f, 3, vec![vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let zero = Subspace::zero(f, 3);
        assert_eq!(v.sum(&zero).unwrap(), v);
        assert_eq!(v.intersect(&v).unwrap(), v);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = Gf::new(7).unwrap();
        let a = Subspace::span(f, 2, vec![vec![1, 0]]).unwrap();
        let b = Subspace::span(f, 3, vec![vec![1, 0, 0]]).unwrap();
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&[1, 0, 0]).is_err());
    }
}
