//! Ladders as combinatorial shapes: index sets, partitions, block index
//! sets, classification, canonicalization, enumeration, Fibonacci counting.
//!
//! A ladder of size `n` is an antichain of corner points with strictly
//! increasing rows and columns; its index set is the union of the upper-right
//! rectangles hanging off the corners.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(i1,j1)` dominates `(i2,j2)` when `i1 >= i2` and `j1 <= j2`.
pub fn dominates(p: (usize, usize), q: (usize, usize)) -> bool {
    p.0 >= q.0 && p.1 <= q.1
}

/// A ladder: size `n` and an ordered list of 1-based corner points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLadder", into = "RawLadder")]
pub struct Ladder {
    n: usize,
    corners: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawLadder {
    n: usize,
    corners: Vec<(usize, usize)>,
}

impl TryFrom<RawLadder> for Ladder {
    type Error = Error;
    fn try_from(raw: RawLadder) -> Result<Ladder> {
        Ladder::new(raw.n, raw.corners)
    }
}

impl From<Ladder> for RawLadder {
    fn from(l: Ladder) -> RawLadder {
        RawLadder { n: l.n, corners: l.corners }
    }
}

impl Ladder {
    pub fn new(n: usize, corners: Vec<(usize, usize)>) -> Result<Ladder> {
        if n == 0 {
            return Err(Error::InvalidLadder("size must be at least 1".into()));
        }
        for &(i, j) in &corners {
            if i < 1 || i > n || j < 1 || j > n {
                return Err(Error::InvalidLadder(format!(
                    "corner ({i},{j}) outside [{n}]x[{n}]"
                )));
            }
        }
        for w in corners.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidLadder(format!(
                    "corners {:?} and {:?} are not strictly increasing",
                    w[0], w[1]
                )));
            }
        }
        Ok(Ladder { n, corners })
    }

    pub fn empty(n: usize) -> Ladder {
        Ladder::new(n, Vec::new()).expect("empty ladder is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn corners(&self) -> &[(usize, usize)] {
        &self.corners
    }
    pub fn step(&self) -> usize {
        self.corners.len()
    }
    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// All 1-based index pairs dominated by some corner, in row-major order.
    pub fn index_set(&self) -> BTreeSet<(usize, usize)> {
        let mut set = BTreeSet::new();
        for &(ci, cj) in &self.corners {
            for i in 1..=ci {
                for j in cj..=self.n {
                    set.insert((i, j));
                }
            }
        }
        set
    }

    pub fn contains_index(&self, idx: (usize, usize)) -> bool {
        self.corners.iter().any(|&c| dominates(c, idx))
    }

    /// The partition of the ladder; errors on the empty ladder.
    pub fn partition(&self) -> Result<BlockPartition> {
        if self.is_empty() {
            return Err(Error::EmptyLadder);
        }
        let mut cuts: BTreeSet<usize> = BTreeSet::new();
        for &(i, j) in &self.corners {
            cuts.insert(i);
            cuts.insert(j - 1);
        }
        cuts.remove(&0);
        cuts.remove(&self.n);
        let cuts: Vec<usize> = cuts.into_iter().collect();
        Ok(BlockPartition::from_cuts(self.n, cuts))
    }

    /// Corners strictly below the diagonal: the maximal strongly dominant
    /// sub-ladder. Empty exactly when the ladder algebra is solvable.
    pub fn sdut_core(&self) -> Ladder {
        let corners = self.corners.iter().copied().filter(|&(i, j)| i > j).collect();
        Ladder::new(self.n, corners).expect("subsequence of a valid ladder")
    }

    pub fn classify(&self) -> LadderClass {
        let s = self.corners.len();
        let upper = (0..s.saturating_sub(1)).all(|l| self.corners[l].0 < self.corners[l + 1].1);
        let strictly = self.corners.iter().all(|&(i, j)| i < j);
        let dominant = self.corners.iter().all(|&(i, j)| j <= i);
        let dut = upper && dominant;
        let sdut = upper && self.corners.iter().all(|&(i, j)| j < i);
        let block_form_equal = if self.is_empty() {
            false
        } else {
            let p = self.partition().expect("non-empty");
            p.block_ladder() == *self
        };
        LadderClass {
            upper_triangular: upper,
            strictly_upper_triangular: strictly,
            dut,
            sdut,
            block_form_equal,
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.n)?;
        for &(i, j) in &self.corners {
            write!(f, " ({i},{j})")?;
        }
        Ok(())
    }
}

/// Parses the ladder literal grammar `n=<int>: (<i>,<j>)*`.
pub fn parse_ladder(s: &str) -> Result<Ladder> {
    let s = s.trim();
    let rest = s
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse(format!("ladder `{s}` must start with `n=`")))?;
    let colon = rest
        .find(':')
        .ok_or_else(|| Error::Parse(format!("ladder `{s}` is missing `:`")))?;
    let n: usize = rest[..colon]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad size in ladder `{s}`")))?;
    let mut corners = Vec::new();
    for tok in rest[colon + 1..].split_whitespace() {
        let inner = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad corner token `{tok}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad corner token `{tok}`")))?;
        let i: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad corner `{tok}`")))?;
        let j: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad corner `{tok}`")))?;
        corners.push((i, j));
    }
    Ladder::new(n, corners)
}

/// Classification flags of a ladder shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LadderClass {
    pub upper_triangular: bool,
    pub strictly_upper_triangular: bool,
    pub dut: bool,
    pub sdut: bool,
    pub block_form_equal: bool,
}

/// The block partition induced by a ladder: cut positions in `[n-1]` and the
/// resulting block sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    n: usize,
    cuts: Vec<usize>,
    sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn from_cuts(n: usize, cuts: Vec<usize>) -> BlockPartition {
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cuts.iter().all(|&c| c >= 1 && c < n));
        let mut sizes = Vec::with_capacity(cuts.len() + 1);
        let mut prev = 0;
        for &c in &cuts {
            sizes.push(c - prev);
            prev = c;
        }
        sizes.push(n - prev);
        BlockPartition { n, cuts, sizes }
    }

    pub fn from_sizes(n: usize, sizes: Vec<usize>) -> Result<BlockPartition> {
        if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
            return Err(Error::InvalidLadder(format!(
                "sizes {sizes:?} do not partition [{n}]"
            )));
        }
        let mut cuts = Vec::new();
        let mut acc = 0;
        for &s in &sizes[..sizes.len() - 1] {
            acc += s;
            cuts.push(acc);
        }
        Ok(BlockPartition { n, cuts, sizes })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    /// 1-based block index containing the 1-based row or column `pos`.
    pub fn block_of(&self, pos: usize) -> usize {
        debug_assert!(pos >= 1 && pos <= self.n);
        self.cuts.partition_point(|&c| c < pos) + 1
    }

    /// 1-based inclusive row range of block `b` (1-based).
    pub fn block_range(&self, b: usize) -> (usize, usize) {
        let start = if b == 1 { 1 } else { self.cuts[b - 2] + 1 };
        let end = if b == self.block_count() { self.n } else { self.cuts[b - 1] };
        (start, end)
    }

    /// The ladder whose algebra is exactly the block upper triangular
    /// matrices of this partition.
    pub fn block_ladder(&self) -> Ladder {
        let t = self.block_count();
        let mut corners = Vec::with_capacity(t);
        for b in 1..=t {
            let (start, end) = self.block_range(b);
            corners.push((end, start));
        }
        Ladder::new(self.n, corners).expect("block ladder is valid")
    }
}

/// Block-level index set `[I(L)]`: the 1-based blocks of the partition whose
/// entries lie in the index set. Blocks never straddle the rectangles, so one
/// representative entry decides membership.
pub fn block_index_set(l: &Ladder, p: &BlockPartition) -> BTreeSet<(usize, usize)> {
    let t = p.block_count();
    let mut set = BTreeSet::new();
    for bi in 1..=t {
        for bj in 1..=t {
            let (_, row_end) = p.block_range(bi);
            let (col_start, _) = p.block_range(bj);
            if l.contains_index((row_end, col_start)) {
                set.insert((bi, bj));
            }
        }
    }
    set
}

/// The block reinterpretation of dominance: every present block must be
/// dominated by a present diagonal block. Agrees with the corner inequalities
/// and is what the classification theorem actually characterizes.
pub fn dut_by_block_criterion(l: &Ladder) -> Result<bool> {
    let p = l.partition()?;
    let blocks = block_index_set(l, &p);
    Ok(blocks.iter().all(|&(i, j)| {
        (i..=j).any(|k| blocks.contains(&(k, k)))
    }))
}

/// The adjacent-pair form used in the removal characterization: for every
/// `i < t`, at least one of the diagonal blocks `(i,i)`, `(i+1,i+1)` is
/// present. Equivalent to DUT for upper triangular ladders.
pub fn dut_pair_criterion(l: &Ladder) -> Result<bool> {
    let p = l.partition()?;
    let blocks = block_index_set(l, &p);
    let t = p.block_count();
    Ok((1..t).all(|i| blocks.contains(&(i, i)) || blocks.contains(&(i + 1, i + 1))))
}

/// Recovers the ladder whose index set equals `set`, or reports that the set
/// is not a ladder shape. Corners are the dominance-maximal elements.
pub fn canonicalize(n: usize, set: &BTreeSet<(usize, usize)>) -> Result<Ladder> {
    for &(i, j) in set {
        if i < 1 || i > n || j < 1 || j > n {
            return Err(Error::NotALadderShape(format!("index ({i},{j}) outside [{n}]x[{n}]")));
        }
    }
    let mut corners: Vec<(usize, usize)> = set
        .iter()
        .copied()
        .filter(|&p| set.iter().all(|&q| q == p || !dominates(q, p)))
        .collect();
    corners.sort();
    let ladder = Ladder::new(n, corners)
        .map_err(|e| Error::NotALadderShape(format!("maximal elements fail: {e}")))?;
    if &ladder.index_set() != set {
        return Err(Error::NotALadderShape(
            "set is not closed under the dominance order".into(),
        ));
    }
    Ok(ladder)
}

/// Fibonacci numbers with `F(1) = F(2) = 1`.
pub fn fibonacci(k: u32) -> u128 {
    assert!(k >= 1);
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 2..k {
        (a, b) = (b, a + b);
    }
    if k == 1 {
        1
    } else {
        b
    }
}

/// Closed-form count of distinct DUT ladder matrix sets in `M_n`.
pub fn count_dut(n: usize) -> u128 {
    fibonacci(2 * n as u32 + 1)
}

/// Closed-form count of DUT sets per `t x t` block form.
pub fn count_dut_block_forms(t: usize) -> u128 {
    fibonacci(t as u32 + 2)
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    // one composition per subset of the n-1 internal gaps
    let mut out = Vec::new();
    for mask in 0..(1u32 << (n - 1)) {
        let mut sizes = Vec::new();
        let mut len = 1;
        for gap in 0..n - 1 {
            if mask & (1 << gap) != 0 {
                sizes.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        sizes.push(len);
        out.push(sizes);
    }
    out
}

fn non_consecutive_subsets(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    'mask: for mask in 0..(1u32 << t) {
        for k in 0..t.saturating_sub(1) {
            if mask & (1 << k) != 0 && mask & (1 << (k + 1)) != 0 {
                continue 'mask;
            }
        }
        out.push((0..t).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect());
    }
    out
}

/// All distinct DUT ladder matrix sets of size `n` as canonical ladders,
/// including the empty ladder. Generated by removing non-consecutive diagonal
/// blocks from every block upper triangular form, then deduplicated by index
/// set so the Fibonacci count is a genuine cross-check.
pub fn enumerate_dut(n: usize) -> Vec<Ladder> {
    assert!(n >= 1);
    let mut seen: BTreeSet<Ladder> = BTreeSet::new();
    for sizes in compositions(n) {
        let p = BlockPartition::from_sizes(n, sizes).expect("composition of n");
        let t = p.block_count();
        for removed in non_consecutive_subsets(t) {
            let mut entries: BTreeSet<(usize, usize)> = BTreeSet::new();
            for bi in 1..=t {
                for bj in bi..=t {
                    if bi == bj && removed.contains(&bi) {
                        continue;
                    }
                    let (r0, r1) = p.block_range(bi);
                    let (c0, c1) = p.block_range(bj);
                    for i in r0..=r1 {
                        for j in c0..=c1 {
                            entries.insert((i, j));
                        }
                    }
                }
            }
            let ladder = canonicalize(n, &entries).expect("removal shapes are ladders");
            seen.insert(ladder);
        }
    }
    seen.into_iter().collect()
}

/// Every ladder of size `n` (all antichains), canonical and sorted.
pub fn enumerate_all_ladders(n: usize) -> Vec<Ladder> {
    assert!(n <= 8, "antichain sweep grows as C(2n, n)");
    let subsets_by_size: Vec<Vec<Vec<usize>>> = {
        let mut by_size = vec![Vec::new(); n + 1];
        for mask in 0u32..(1 << n) {
            let vals: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            by_size[vals.len()].push(vals);
        }
        by_size
    };
    let mut out = Vec::new();
    for s in 0..=n {
        for rows in &subsets_by_size[s] {
            for cols in &subsets_by_size[s] {
                let corners: Vec<(usize, usize)> =
                    rows.iter().copied().zip(cols.iter().copied()).collect();
                out.push(Ladder::new(n, corners).expect("increasing by construction"));
            }
        }
    }
    out.sort();
    out
}
