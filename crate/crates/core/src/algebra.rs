//! Ladder matrix Lie algebras: an ordered basis of standard matrices over the
//! index set, the bracket through structure constants, derived series,
//! block-traceless subalgebras, normalizers and centralizers.
//!
//! Normalizer and centralizer come in two routes each: a brute-force kernel
//! computation in the ambient matrix algebra and the closed block form. The
//! verification suites assert the two agree; nothing here assumes it.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ladder::{block_index_set, BlockPartition, Ladder};
use crate::linalg::{kernel_of_echelon, Echelon, Mat, Subspace};

/// 0-based flat position of the 1-based entry `(i, j)` in an `n x n` grid.
pub fn flat(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// Sparse antisymmetric bracket table: entry `[a][b]` lists the `(k, coeff)`
/// terms of the bracket of basis elements `a` and `b`.
pub(crate) type BracketTable<F> = Vec<Vec<Vec<(usize, <F as Field>::Elem)>>>;

/// A ladder matrix Lie algebra with its row-major basis of standard matrices.
#[derive(Debug, Clone)]
pub struct LadderAlgebra<F: Field> {
    field: F,
    ladder: Ladder,
    partition: Option<BlockPartition>,
    blocks: BTreeSet<(usize, usize)>,
    basis: Vec<(usize, usize)>,
    index_of: BTreeMap<(usize, usize), usize>,
    sc: BracketTable<F>,
}

impl<F: Field> LadderAlgebra<F> {
    /// Builds the algebra of an upper triangular ladder. Non-upper-triangular
    /// ladders are refused because their span need not be bracket-closed; use
    /// [`LadderAlgebra::build_unchecked`] to attempt those anyway.
    pub fn build(field: F, ladder: Ladder) -> Result<LadderAlgebra<F>> {
        if !ladder.classify().upper_triangular {
            return Err(Error::NotBracketClosed);
        }
        Self::build_unchecked(field, ladder)
    }

    /// Builds without the upper-triangular precondition; still fails when the
    /// span is genuinely not closed under the bracket.
    pub fn build_unchecked(field: F, ladder: Ladder) -> Result<LadderAlgebra<F>> {
        let basis: Vec<(usize, usize)> = ladder.index_set().into_iter().collect();
        let index_of: BTreeMap<(usize, usize), usize> =
            basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let partition = if ladder.is_empty() {
            None
        } else {
            Some(ladder.partition()?)
        };
        let blocks = partition
            .as_ref()
            .map(|p| block_index_set(&ladder, p))
            .unwrap_or_default();
        let d = basis.len();
        let mut sc = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in (a + 1)..d {
                let (r, s) = basis[a];
                let (u, v) = basis[b];
                let mut terms: Vec<(usize, F::Elem)> = Vec::new();
                if s == u {
                    let k = *index_of.get(&(r, v)).ok_or(Error::NotBracketClosed)?;
                    terms.push((k, field.one()));
                }
                if v == r {
                    let k = *index_of.get(&(u, s)).ok_or(Error::NotBracketClosed)?;
                    terms.push((k, field.neg(&field.one())));
                }
                sc[b][a] = terms.iter().map(|(k, c)| (*k, field.neg(c))).collect();
                sc[a][b] = terms;
            }
        }
        Ok(LadderAlgebra { field, ladder, partition, blocks, basis, index_of, sc })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }
    pub fn n(&self) -> usize {
        self.ladder.n()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis_pairs(&self) -> &[(usize, usize)] {
        &self.basis
    }
    pub fn partition(&self) -> Option<&BlockPartition> {
        self.partition.as_ref()
    }
    pub fn blocks(&self) -> &BTreeSet<(usize, usize)> {
        &self.blocks
    }
    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.index_of.get(&pair).copied()
    }

    /// Bracket of two basis elements in basis coordinates.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, F::Elem)] {
        &self.sc[a][b]
    }

    pub fn basis_mat(&self, k: usize) -> Mat<F> {
        let (i, j) = self.basis[k];
        Mat::unit(self.field.clone(), self.n(), self.n(), i - 1, j - 1)
    }

    pub fn mat_of_coords(&self, coords: &[F::Elem]) -> Mat<F> {
        assert_eq!(coords.len(), self.dim());
        let n = self.n();
        let mut m = Mat::zero(self.field.clone(), n, n);
        for (k, &(i, j)) in self.basis.iter().enumerate() {
            m.set(i - 1, j - 1, coords[k].clone());
        }
        m
    }

    /// Basis coordinates of a matrix supported on the index set; errors when
    /// the support leaks outside.
    pub fn coords_of_mat(&self, m: &Mat<F>) -> Result<Vec<F::Elem>> {
        if m.rows() != self.n() || m.cols() != self.n() {
            return Err(Error::DimensionMismatch("matrix size vs ladder size".into()));
        }
        let mut coords = vec![self.field.zero(); self.dim()];
        for i in 1..=self.n() {
            for j in 1..=self.n() {
                let v = m.get(i - 1, j - 1);
                if self.field.is_zero(v) {
                    continue;
                }
                match self.index_of((i, j)) {
                    Some(k) => coords[k] = v.clone(),
                    None => {
                        return Err(Error::AlgebraMismatch(format!(
                            "support at ({i},{j}) outside the index set"
                        )))
                    }
                }
            }
        }
        Ok(coords)
    }

    /// Bracket in basis coordinates.
    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::AlgebraMismatch("coordinate length vs dimension".into()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); d];
        for a in 0..d {
            if f.is_zero(&x[a]) {
                continue;
            }
            for b in 0..d {
                if b == a || f.is_zero(&y[b]) {
                    continue;
                }
                let cab = f.mul(&x[a], &y[b]);
                for (k, c) in &self.sc[a][b] {
                    out[*k] = f.add(&out[*k], &f.mul(&cab, c));
                }
            }
        }
        Ok(out)
    }

    /// Span of all pairwise brackets of basis vectors of `s`.
    pub fn derived_subspace(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch("subspace ambient vs algebra dim".into()));
        }
        let mut ech = Echelon::new(self.field.clone(), self.dim());
        let basis = s.basis();
        for a in 0..basis.len() {
            for b in (a + 1)..basis.len() {
                ech.insert(self.bracket(&basis[a], &basis[b])?);
            }
        }
        Ok(Subspace::from_echelon(ech))
    }

    /// The subspace of the algebra with zero trace on every present diagonal
    /// block (with respect to this ladder's own partition).
    pub fn traceless_subspace(&self) -> Result<Subspace<F>> {
        self.traceless_subspace_of(&self.ladder)
    }

    /// Same, for a sub-ladder whose index set is contained in this one; the
    /// result lives in this algebra's coordinates. The partition and the
    /// present diagonal blocks are those of `sub` itself.
    pub fn traceless_subspace_of(&self, sub: &Ladder) -> Result<Subspace<F>> {
        if sub.is_empty() {
            return Ok(Subspace::zero(self.field.clone(), self.dim()));
        }
        if sub.n() != self.n() {
            return Err(Error::DimensionMismatch("sub-ladder size".into()));
        }
        let p = sub.partition()?;
        let blocks = block_index_set(sub, &p);
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let unit = |k: usize| {
            let mut v = vec![f.zero(); self.dim()];
            v[k] = f.one();
            v
        };
        for &(i, j) in sub.index_set().iter() {
            let k = self.index_of((i, j)).ok_or_else(|| {
                Error::AlgebraMismatch(format!("sub-ladder entry ({i},{j}) not in the host"))
            })?;
            if i != j {
                rows.push(unit(k));
            }
        }
        for &(bi, bj) in &blocks {
            if bi != bj {
                continue;
            }
            let (start, end) = p.block_range(bi);
            for x in start..end {
                let ka = self.index_of((x, x)).expect("diagonal entry present");
                let kb = self.index_of((x + 1, x + 1)).expect("diagonal entry present");
                let mut v = vec![f.zero(); self.dim()];
                v[ka] = f.one();
                v[kb] = f.neg(&f.one());
                rows.push(v);
            }
        }
        Subspace::span(f.clone(), self.dim(), rows)
    }

    /// Iterates the derived series to its fixpoint and checks each term
    /// against the block-traceless shape it is expected to take.
    pub fn derived_series(&self) -> Result<DerivedSeries<F>> {
        let mut terms = vec![Subspace::full(self.field.clone(), self.dim())];
        loop {
            let next = self.derived_subspace(terms.last().unwrap())?;
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
        }
        let mut recovered = Vec::new();
        let mut matches_traceless = Vec::new();
        for term in terms.iter().skip(1) {
            let mut support: BTreeSet<(usize, usize)> = BTreeSet::new();
            for v in term.basis() {
                for (k, e) in v.iter().enumerate() {
                    if !self.field.is_zero(e) {
                        support.insert(self.basis[k]);
                    }
                }
            }
            match crate::ladder::canonicalize(self.n(), &support) {
                Ok(lad) => {
                    let expected = self.traceless_subspace_of(&lad)?;
                    matches_traceless.push(&expected == term);
                    recovered.push(Some(lad));
                }
                Err(_) => {
                    recovered.push(None);
                    matches_traceless.push(false);
                }
            }
        }
        let terminal_expected = self.traceless_subspace_of(&self.ladder.sdut_core())?;
        let terminal_matches_core = &terminal_expected == terms.last().unwrap();
        Ok(DerivedSeries { terms, recovered, matches_traceless, terminal_matches_core })
    }

    /// Brute-force normalizer in the ambient matrix algebra: all `X` with
    /// `[X, e]` supported on the index set for every basis element `e`.
    pub fn normalizer_brute(&self) -> Subspace<F> {
        normalizer_brute_of(&self.field, &self.ladder)
    }

    /// The block upper triangular algebra of the partition, as a subspace of
    /// the ambient matrix space.
    pub fn normalizer_block_form(&self) -> Result<Subspace<F>> {
        let p = self.partition.as_ref().ok_or(Error::EmptyLadder)?;
        let block_ladder = p.block_ladder();
        let n = self.n();
        let f = &self.field;
        let rows: Vec<Vec<F::Elem>> = block_ladder
            .index_set()
            .into_iter()
            .map(|(i, j)| {
                let mut v = vec![f.zero(); n * n];
                v[flat(n, i, j)] = f.one();
                v
            })
            .collect();
        Subspace::span(f.clone(), n * n, rows)
    }

    /// Brute-force centralizer: all `X` commuting with every basis element.
    pub fn centralizer_brute(&self) -> Subspace<F> {
        centralizer_brute_of(&self.field, &self.ladder)
    }

    /// The centralizer predicted by the structure lemma: scalars, plus the
    /// top-right corner block when both end diagonal blocks are absent.
    pub fn centralizer_closed_form(&self) -> Result<Subspace<F>> {
        let p = self.partition.as_ref().ok_or(Error::EmptyLadder)?;
        let t = p.block_count();
        let n = self.n();
        let f = &self.field;
        let mut rows = vec![Mat::identity(f.clone(), n).flatten()];
        if !self.blocks.contains(&(1, 1)) && !self.blocks.contains(&(t, t)) {
            let (r0, r1) = p.block_range(1);
            let (c0, c1) = p.block_range(t);
            for i in r0..=r1 {
                for j in c0..=c1 {
                    let mut v = vec![f.zero(); n * n];
                    v[flat(n, i, j)] = f.one();
                    rows.push(v);
                }
            }
        }
        Subspace::span(f.clone(), n * n, rows)
    }
}

/// Derived series data: the chain of subspaces down to the fixpoint, the
/// ladder recovered from each term's support, and whether each term equals
/// the block-traceless space of that ladder.
#[derive(Debug, Clone)]
pub struct DerivedSeries<F: Field> {
    pub terms: Vec<Subspace<F>>,
    pub recovered: Vec<Option<Ladder>>,
    pub matches_traceless: Vec<bool>,
    pub terminal_matches_core: bool,
}

impl<F: Field> DerivedSeries<F> {
    pub fn terminal(&self) -> &Subspace<F> {
        self.terms.last().expect("series has at least the algebra itself")
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    pub fn all_terms_are_traceless_ladders(&self) -> bool {
        self.matches_traceless.iter().all(|&b| b)
    }
}

/// Brute-force normalizer of a ladder span inside the ambient matrix
/// algebra; needs only the shape, so it works for spans that are not
/// bracket-closed.
pub fn normalizer_brute_of<F: Field>(field: &F, l: &Ladder) -> Subspace<F> {
    let n = l.n();
    let one = field.one();
    let neg_one = field.neg(&one);
    let inside = l.index_set();
    let mut ech = Echelon::new(field.clone(), n * n);
    for &(u, v) in inside.iter() {
        for i in 1..=n {
            for j in 1..=n {
                if inside.contains(&(i, j)) {
                    continue;
                }
                // [X, E_uv]_{ij} = X_{iu} [v=j] - X_{vj} [i=u]
                let mut row: Vec<(usize, F::Elem)> = Vec::new();
                if v == j {
                    row.push((flat(n, i, u), one.clone()));
                }
                if i == u {
                    row.push((flat(n, v, j), neg_one.clone()));
                }
                if !row.is_empty() {
                    ech.insert_sparse(&row);
                }
            }
        }
    }
    kernel_of_echelon(ech)
}

/// Brute-force centralizer of a ladder span; shape-only like the normalizer.
pub fn centralizer_brute_of<F: Field>(field: &F, l: &Ladder) -> Subspace<F> {
    let n = l.n();
    let mats: Vec<Mat<F>> = l
        .index_set()
        .iter()
        .map(|&(i, j)| Mat::unit(field.clone(), n, n, i - 1, j - 1))
        .collect();
    centralizer_of_span(field, n, &mats)
}

/// Brute-force centralizer of an arbitrary list of matrices inside the
/// ambient matrix algebra.
pub fn centralizer_of_span<F: Field>(field: &F, n: usize, mats: &[Mat<F>]) -> Subspace<F> {
    let mut ech = Echelon::new(field.clone(), n * n);
    for b in mats {
        // (XB - BX)_{ij} = sum_u X_{iu} B_{uj} - sum_v B_{iv} X_{vj}
        for i in 1..=n {
            for j in 1..=n {
                let mut row: Vec<(usize, F::Elem)> = Vec::new();
                for u in 1..=n {
                    let c = b.get(u - 1, j - 1);
                    if !field.is_zero(c) {
                        row.push((flat(n, i, u), c.clone()));
                    }
                }
                for v in 1..=n {
                    let c = b.get(i - 1, v - 1);
                    if !field.is_zero(c) {
                        row.push((flat(n, v, j), field.neg(c)));
                    }
                }
                if !row.is_empty() {
                    ech.insert_sparse(&row);
                }
            }
        }
    }
    kernel_of_echelon(ech)
}
