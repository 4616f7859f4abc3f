//! The named witness maps used by the verification suites: the
//! characteristic-2 derivation of the full 2x2 algebra that escapes the
//! inner-plus-trace decomposition, the characteristic-3 derivation of a
//! block-traceless core with no adjoint witness, and the non-dominant
//! derivation on a non-DUT ladder.
//!
//! Each constructor returns the host (and core basis where relevant) together
//! with the endomap, so callers can certify the map is a derivation before
//! watching the theorem machinery reject it.

use crate::algebra::LadderAlgebra;
use crate::derivation::{Endomap, LieBasis};
use crate::error::Result;
use crate::field::Field;
use crate::ladder::parse_ladder;
use crate::linalg::Mat;

/// On the full 2x2 matrix algebra: `E12 -> E21`, zero on the other standard
/// matrices. A derivation exactly in characteristic 2, where it falls outside
/// the inner-plus-trace decomposition.
pub fn char2_m2_map<F: Field>(field: &F) -> Result<(LadderAlgebra<F>, Endomap<F>)> {
    let alg = LadderAlgebra::build(field.clone(), parse_ladder("n=2: (2,1)")?)?;
    let mut f = Mat::zero(field.clone(), alg.dim(), alg.dim());
    let e12 = alg.index_of((1, 2)).expect("basis of M_2");
    let e21 = alg.index_of((2, 1)).expect("basis of M_2");
    f.set(e21, e12, field.one());
    Ok((alg, f))
}

/// The same map restricted to the traceless core sl_2; in characteristic 2 it
/// is a derivation of sl_2 with no adjoint witness in M_2.
pub fn char2_sl2_map<F: Field>(
    field: &F,
) -> Result<(LadderAlgebra<F>, LieBasis<F>, Endomap<F>)> {
    let alg = LadderAlgebra::build(field.clone(), parse_ladder("n=2: (2,1)")?)?;
    let core = LieBasis::of_subspace(&alg, &alg.traceless_subspace()?)?;
    // core basis is the RREF of span{E11 - E22, E12, E21}: pivots at the
    // (1,1), (1,2), (2,1) coordinates in that order
    let mut f = Mat::zero(field.clone(), core.dim(), core.dim());
    let (mut from, mut to) = (None, None);
    for k in 0..core.dim() {
        let m = core.element(k);
        if !field.is_zero(m.get(0, 1)) && field.is_zero(m.get(0, 0)) {
            from = Some(k);
        }
        if !field.is_zero(m.get(1, 0)) && field.is_zero(m.get(0, 0)) {
            to = Some(k);
        }
    }
    f.set(to.expect("E21 in core basis"), from.expect("E12 in core basis"), field.one());
    Ok((alg, core, f))
}

/// On the block-traceless core of the ladder `n=4: (2,1)`: `E12 -> E24`,
/// zero on the rest of the basis. A derivation exactly in characteristic 3,
/// where no matrix `X` satisfies `f(B) = [X, B]`.
pub fn char3_core_map<F: Field>(
    field: &F,
) -> Result<(LadderAlgebra<F>, LieBasis<F>, Endomap<F>)> {
    let alg = LadderAlgebra::build(field.clone(), parse_ladder("n=4: (2,1)")?)?;
    let core = LieBasis::of_subspace(&alg, &alg.traceless_subspace()?)?;
    let mut f = Mat::zero(field.clone(), core.dim(), core.dim());
    let (mut from, mut to) = (None, None);
    for k in 0..core.dim() {
        let m = core.element(k);
        if !field.is_zero(m.get(0, 1)) {
            from = Some(k);
        }
        if !field.is_zero(m.get(1, 3)) && field.is_zero(m.get(0, 2)) {
            to = Some(k);
        }
    }
    f.set(to.expect("E24 in core basis"), from.expect("E12 in core basis"), field.one());
    Ok((alg, core, f))
}

/// On the non-DUT ladder `n=5: (1,2) (3,4)`: the two-parameter family
/// `E12 -> a E34 + b E35`, `E13 -> a E24 + b E25`. A derivation over every
/// field; it maps the (1,2) block into the (2,3) block, which the dominance
/// corollary forbids for DUT ladders.
pub fn non_dominant_map<F: Field>(
    field: &F,
    a: i64,
    b: i64,
) -> Result<(LadderAlgebra<F>, Endomap<F>)> {
    let alg = LadderAlgebra::build(field.clone(), parse_ladder("n=5: (1,2) (3,4)")?)?;
    let mut f = Mat::zero(field.clone(), alg.dim(), alg.dim());
    let (av, bv) = (field.scalar_from(a), field.scalar_from(b));
    let idx = |p: (usize, usize)| alg.index_of(p).expect("in the index set");
    f.set(idx((3, 4)), idx((1, 2)), av.clone());
    f.set(idx((3, 5)), idx((1, 2)), bv.clone());
    f.set(idx((2, 4)), idx((1, 3)), av);
    f.set(idx((2, 5)), idx((1, 3)), bv);
    Ok((alg, f))
}
