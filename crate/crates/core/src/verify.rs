//! Verification suites: per-ladder JSON verdicts that confront the
//! brute-force computations with the closed-form structure theory.
//!
//! Every suite declares the field hypothesis of the statements it checks.
//! When the run's field violates the hypothesis, the suite switches to
//! expect-divergence mode: mismatches are reported as `divergence` findings
//! rather than failures, and the named counterexamples must reproduce.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{centralizer_of_span, LadderAlgebra};
use crate::counterexamples;
use crate::derivation::{
    case_tag, check_dominance, decompose, dee_space, derivation_space, endomap_basis,
    extend_from_core, inner_space, is_derivation, predicted_der_dim, rebuild, LieBasis,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldTag, Gf, Rationals};
use crate::ladder::{
    canonicalize, count_dut, count_dut_block_forms, dut_by_block_criterion, dut_pair_criterion,
    enumerate_all_ladders, enumerate_dut, Ladder,
};

/// Which family of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Enumerate,
    Classify,
    Structure,
    Derivations,
    Core,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "enumerate" => Ok(Suite::Enumerate),
            "classify" => Ok(Suite::Classify),
            "structure" => Ok(Suite::Structure),
            "derivations" => Ok(Suite::Derivations),
            "core" => Ok(Suite::Core),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Suite::Enumerate => "enumerate",
            Suite::Classify => "classify",
            Suite::Structure => "structure",
            Suite::Derivations => "derivations",
            Suite::Core => "core",
            Suite::All => "all",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Divergence,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Dims {
    pub algebra: Option<usize>,
    pub normalizer: Option<usize>,
    pub centralizer: Option<usize>,
    pub der_bruteforce: Option<usize>,
    pub der_predicted: Option<usize>,
    pub inner: Option<usize>,
    pub dee: Option<usize>,
    pub core_der: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Checks {
    pub count: Option<bool>,
    pub classification: Option<bool>,
    pub normalizer: Option<bool>,
    pub centralizer: Option<bool>,
    pub derived_series: Option<bool>,
    pub decomposition: Option<bool>,
    pub dominance: Option<bool>,
    pub extension: Option<bool>,
    pub split_sequence: Option<bool>,
}

impl Checks {
    fn worst(&self) -> bool {
        [
            self.count,
            self.classification,
            self.normalizer,
            self.centralizer,
            self.derived_series,
            self.decomposition,
            self.dominance,
            self.extension,
            self.split_sequence,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub ladder: Option<Ladder>,
    pub field: String,
    pub suite: String,
    pub dims: Dims,
    pub case_tag: Option<String>,
    pub checks: Checks,
    pub status: Status,
    pub detail: Option<String>,
}

impl Verdict {
    fn new(suite: Suite, field: String, ladder: Option<Ladder>) -> Verdict {
        Verdict {
            ladder,
            field,
            suite: suite.to_string(),
            dims: Dims::default(),
            case_tag: None,
            checks: Checks::default(),
            status: Status::Pass,
            detail: None,
        }
    }

    fn finalize(mut self, assert_mode: bool) -> Verdict {
        if !self.checks.worst() {
            self.status = if assert_mode { Status::Fail } else { Status::Divergence };
        }
        self
    }
}

pub fn all_passed(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.status != Status::Fail)
}

/// Fibonacci cross-check of the enumeration (field-independent).
pub fn enumerate_verdicts(n: usize) -> Vec<Verdict> {
    let ladders = enumerate_dut(n);
    let expected = count_dut(n);
    let forms_ok = (1..=8).all(|t| {
        let brute = (0u32..1 << t)
            .filter(|mask| (0..t - 1).all(|k| mask & (3 << k) != 3 << k))
            .count();
        brute as u128 == count_dut_block_forms(t)
    });
    let count_ok = ladders.len() as u128 == expected && forms_ok;
    let mut v = Verdict::new(Suite::Enumerate, "-".into(), None);
    v.checks.count = Some(count_ok);
    v.detail = Some(format!(
        "enumerated={} fibonacci={} block_forms_ok={}",
        ladders.len(),
        expected,
        forms_ok
    ));
    vec![v.finalize(true)]
}

/// Classification agreement over every ladder of size `n` (field-independent):
/// canonical round trip, corner flags vs block criteria, and the DUT count by
/// direct classification.
pub fn classify_verdicts(n: usize) -> Vec<Verdict> {
    let ladders = enumerate_all_ladders(n);
    let mut out: Vec<Verdict> = ladders
        .par_iter()
        .map(|l| {
            let mut v = Verdict::new(Suite::Classify, "-".into(), Some(l.clone()));
            let round_trip = canonicalize(n, &l.index_set()).as_ref() == Ok(l);
            let flags = l.classify();
            let mut ok = round_trip;
            if !l.is_empty() {
                let block = dut_by_block_criterion(l).unwrap_or(!flags.dut);
                ok &= flags.dut == block;
                if flags.dut {
                    ok &= dut_pair_criterion(l).unwrap_or(false);
                }
                if flags.upper_triangular && dut_pair_criterion(l).unwrap_or(false) {
                    ok &= flags.dut;
                }
            }
            v.checks.classification = Some(ok);
            v.finalize(true)
        })
        .collect();
    let dut_count = ladders.iter().filter(|l| l.classify().dut).count();
    let mut summary = Verdict::new(Suite::Classify, "-".into(), None);
    summary.checks.count = Some(dut_count as u128 == count_dut(n));
    summary.detail = Some(format!("dut_by_classification={dut_count} fibonacci={}", count_dut(n)));
    out.push(summary.finalize(true));
    out
}

/// Structure checks for one upper triangular ladder: normalizer and
/// centralizer against their closed forms (DUT only), and the derived series
/// against the block-traceless shapes.
pub fn structure_check<F: Field>(field: &F, l: &Ladder) -> Verdict {
    let tag = field.tag();
    let mut v = Verdict::new(Suite::Structure, tag.to_string(), Some(l.clone()));
    let flags = l.classify();
    if l.is_empty() || !flags.upper_triangular {
        v.detail = Some("skipped: empty or not upper triangular".into());
        return v;
    }
    // the series observations assume generic characteristic; below that we
    // only report findings
    let char_ok = tag.characteristic() == 0 || tag.characteristic() as usize > l.n();
    let alg = match LadderAlgebra::build(field.clone(), l.clone()) {
        Ok(a) => a,
        Err(e) => {
            v.detail = Some(format!("build failed: {e}"));
            v.checks.derived_series = Some(false);
            return v.finalize(true);
        }
    };
    v.dims.algebra = Some(alg.dim());
    if flags.dut {
        let nb = alg.normalizer_brute();
        let cb = alg.centralizer_brute();
        v.dims.normalizer = Some(nb.dim());
        v.dims.centralizer = Some(cb.dim());
        let n_ok = alg.normalizer_block_form().map(|c| c == nb).unwrap_or(false);
        let c_ok = alg.centralizer_closed_form().map(|c| c == cb).unwrap_or(false);
        let c_in_n = nb.contains_subspace(&cb).unwrap_or(false);
        v.checks.normalizer = Some(n_ok);
        v.checks.centralizer = Some(c_ok && c_in_n);
    }
    match alg.derived_series() {
        Ok(s) => {
            let ok = s.all_terms_are_traceless_ladders() && s.terminal_matches_core;
            v.checks.derived_series = Some(ok);
            v.detail = Some(format!("series_dims={:?}", s.dims()));
        }
        Err(e) => {
            v.checks.derived_series = Some(false);
            v.detail = Some(format!("derived series failed: {e}"));
        }
    }
    // the normalizer/centralizer lemmas carry no characteristic hypothesis,
    // so those mismatches always fail; the series shape claims are only
    // asserted at generic characteristic
    let lemma_failed =
        v.checks.normalizer == Some(false) || v.checks.centralizer == Some(false);
    let series_failed = v.checks.derived_series == Some(false);
    v.status = if lemma_failed || (series_failed && char_ok) {
        Status::Fail
    } else if series_failed {
        Status::Divergence
    } else {
        Status::Pass
    };
    v
}

/// Main-theorem checks for one non-empty DUT ladder: brute derivation space
/// versus the case formula, direct sum with trivial intersection, exact
/// decomposition round trips, and the dominance corollary.
pub fn derivations_check<F: Field>(field: &F, l: &Ladder) -> Verdict {
    let tag = field.tag();
    let assert_mode = tag.characteristic() != 2;
    let mut v = Verdict::new(Suite::Derivations, tag.to_string(), Some(l.clone()));
    if l.is_empty() || !l.classify().dut {
        v.detail = Some("skipped: empty or not DUT".into());
        return v;
    }
    let alg = match LadderAlgebra::build(field.clone(), l.clone()) {
        Ok(a) => a,
        Err(e) => {
            v.detail = Some(format!("build failed: {e}"));
            v.checks.decomposition = Some(false);
            return v.finalize(assert_mode);
        }
    };
    v.dims.algebra = Some(alg.dim());
    let lie = LieBasis::of_algebra(&alg);
    let der = derivation_space(&lie);
    v.dims.der_bruteforce = Some(der.dim());

    let inner = match inner_space(&alg) {
        Ok(s) => s,
        Err(e) => {
            v.detail = Some(format!("inner space failed: {e}"));
            v.checks.decomposition = Some(false);
            return v.finalize(assert_mode);
        }
    };
    let dee = match dee_space(&alg) {
        Ok(s) => s,
        Err(e) => {
            v.detail = Some(format!("trace-driven space failed: {e}"));
            v.checks.decomposition = Some(false);
            return v.finalize(assert_mode);
        }
    };
    v.dims.inner = Some(inner.dim());
    v.dims.dee = Some(dee.dim());
    v.case_tag = case_tag(&alg).ok().map(|t| t.to_string());

    let mut decomposition_ok = true;
    match predicted_der_dim(&alg) {
        Ok((dim, _)) => {
            v.dims.der_predicted = Some(dim);
            decomposition_ok &= dim == der.dim();
        }
        Err(_) => {
            // characteristic 2: no formula is claimed
            decomposition_ok &= !assert_mode;
        }
    }
    let sum_ok = inner
        .sum(&dee)
        .map(|s| s == der)
        .unwrap_or(false);
    let inter_ok = inner.intersect(&dee).map(|s| s.is_zero()).unwrap_or(false);
    decomposition_ok &= sum_ok && inter_ok;

    let mut dominance_ok = true;
    let block_ut = v.case_tag.as_deref() == Some("block_upper_triangular");
    for f in endomap_basis(field, alg.dim(), &der) {
        match decompose(&alg, &f) {
            Ok(dec) => {
                decomposition_ok &= rebuild(&alg, &dec).map(|r| r == f).unwrap_or(false);
            }
            Err(_) => decomposition_ok = false,
        }
        if !block_ut {
            dominance_ok &= check_dominance(&alg, &f).unwrap_or(false);
        }
    }
    v.checks.decomposition = Some(decomposition_ok);
    if !block_ut {
        v.checks.dominance = Some(dominance_ok);
    }
    v.finalize(assert_mode)
}

/// Core (block-traceless) checks for one SDUT ladder: adjoint witnesses for
/// every brute derivation of the core, the dimension identity, the split
/// exact sequence, and agreement of the two centralizers.
pub fn core_check<F: Field>(field: &F, l: &Ladder) -> Verdict {
    let tag = field.tag();
    let assert_mode = !matches!(tag.characteristic(), 2 | 3);
    let mut v = Verdict::new(Suite::Core, tag.to_string(), Some(l.clone()));
    if l.is_empty() || !l.classify().sdut {
        v.detail = Some("skipped: empty or not SDUT".into());
        return v;
    }
    let alg = match LadderAlgebra::build(field.clone(), l.clone()) {
        Ok(a) => a,
        Err(e) => {
            v.detail = Some(format!("build failed: {e}"));
            v.checks.extension = Some(false);
            return v.finalize(assert_mode);
        }
    };
    v.dims.algebra = Some(alg.dim());
    let core_sub = match alg.traceless_subspace() {
        Ok(s) => s,
        Err(e) => {
            v.detail = Some(format!("core subspace failed: {e}"));
            v.checks.extension = Some(false);
            return v.finalize(assert_mode);
        }
    };
    let core = match LieBasis::of_subspace(&alg, &core_sub) {
        Ok(c) => c,
        Err(e) => {
            v.detail = Some(format!("core basis failed: {e}"));
            v.checks.extension = Some(false);
            return v.finalize(assert_mode);
        }
    };
    let core_der = derivation_space(&core);
    v.dims.core_der = Some(core_der.dim());

    let nb = alg.normalizer_brute();
    let cb = alg.centralizer_brute();
    v.dims.normalizer = Some(nb.dim());
    v.dims.centralizer = Some(cb.dim());

    let mut extension_ok = core_der.dim() == nb.dim() - cb.dim();
    for f in endomap_basis(field, core.dim(), &core_der) {
        extension_ok &= extend_from_core(&alg, &core, &f).is_ok();
    }
    v.checks.extension = Some(extension_ok);

    let lie = LieBasis::of_algebra(&alg);
    let der = derivation_space(&lie);
    v.dims.der_bruteforce = Some(der.dim());
    let dee = dee_space(&alg).map(|s| s.dim()).unwrap_or(usize::MAX);
    v.dims.dee = Some(dee);
    v.checks.split_sequence = Some(der.dim() == dee + core_der.dim());

    let core_mats: Vec<_> = (0..core.dim()).map(|k| core.element(k).clone()).collect();
    let core_centralizer = centralizer_of_span(field, alg.n(), &core_mats);
    v.checks.centralizer = Some(core_centralizer == cb);

    v.finalize(assert_mode)
}

/// The counterexample rows a suite must reproduce when the field violates the
/// suite's characteristic hypothesis; also the field-independent non-DUT
/// dominance witness for the derivations suite.
fn synthetic_verdicts<F: Field>(field: &F, suite: Suite) -> Vec<Verdict> {
    let tag = field.tag();
    let mut out = Vec::new();
    if matches!(suite, Suite::Derivations | Suite::All) {
        // a derivation of a non-DUT ladder algebra that breaks dominance
        let mut v = Verdict::new(Suite::Derivations, tag.to_string(), None);
        match counterexamples::non_dominant_map(field, 1, 1) {
            Ok((alg, f)) => {
                v.ladder = Some(alg.ladder().clone());
                let lie = LieBasis::of_algebra(&alg);
                let is_der = is_derivation(&lie, &f).unwrap_or(false);
                let breaks = !check_dominance(&alg, &f).unwrap_or(true);
                v.checks.dominance = Some(is_der && breaks);
                v.detail = Some("non-DUT witness: derivation that violates dominance".into());
            }
            Err(e) => {
                v.checks.dominance = Some(false);
                v.detail = Some(format!("witness construction failed: {e}"));
            }
        }
        out.push(v.finalize(true));
    }
    if matches!(suite, Suite::Derivations | Suite::All) && tag.characteristic() == 2 {
        let mut v = Verdict::new(Suite::Derivations, tag.to_string(), None);
        match counterexamples::char2_m2_map(field) {
            Ok((alg, f)) => {
                v.ladder = Some(alg.ladder().clone());
                let lie = LieBasis::of_algebra(&alg);
                let is_der = is_derivation(&lie, &f).unwrap_or(false);
                let rejected = decompose(&alg, &f).err() == Some(Error::NotInDecomposition);
                v.checks.decomposition = Some(is_der && rejected);
                v.detail = Some("char-2 counterexample must reproduce".into());
            }
            Err(e) => {
                v.checks.decomposition = Some(false);
                v.detail = Some(format!("witness construction failed: {e}"));
            }
        }
        out.push(v.finalize(true));
    }
    if matches!(suite, Suite::Core | Suite::All) && tag.characteristic() == 2 {
        let mut v = Verdict::new(Suite::Core, tag.to_string(), None);
        match counterexamples::char2_sl2_map(field) {
            Ok((alg, core, f)) => {
                v.ladder = Some(alg.ladder().clone());
                let is_der = is_derivation(&core, &f).unwrap_or(false);
                let rejected =
                    extend_from_core(&alg, &core, &f).err() == Some(Error::NoAdjointWitness);
                v.checks.extension = Some(is_der && rejected);
                v.detail = Some("char-2 core counterexample must reproduce".into());
            }
            Err(e) => {
                v.checks.extension = Some(false);
                v.detail = Some(format!("witness construction failed: {e}"));
            }
        }
        out.push(v.finalize(true));
    }
    if matches!(suite, Suite::Core | Suite::All) && tag.characteristic() == 3 {
        let mut v = Verdict::new(Suite::Core, tag.to_string(), None);
        match counterexamples::char3_core_map(field) {
            Ok((alg, core, f)) => {
                v.ladder = Some(alg.ladder().clone());
                let is_der = is_derivation(&core, &f).unwrap_or(false);
                let rejected =
                    extend_from_core(&alg, &core, &f).err() == Some(Error::NoAdjointWitness);
                v.checks.extension = Some(is_der && rejected);
                v.detail = Some("char-3 core counterexample must reproduce".into());
            }
            Err(e) => {
                v.checks.extension = Some(false);
                v.detail = Some(format!("witness construction failed: {e}"));
            }
        }
        out.push(v.finalize(true));
    }
    out
}

fn suite_ladders(suite: Suite, n: usize) -> Vec<Ladder> {
    match suite {
        Suite::Enumerate | Suite::Classify => Vec::new(),
        Suite::Structure => enumerate_all_ladders(n)
            .into_iter()
            .filter(|l| !l.is_empty() && l.classify().upper_triangular)
            .collect(),
        Suite::Derivations => enumerate_dut(n).into_iter().filter(|l| !l.is_empty()).collect(),
        Suite::Core => enumerate_dut(n)
            .into_iter()
            .filter(|l| !l.is_empty() && l.classify().sdut)
            .collect(),
        Suite::All => Vec::new(),
    }
}

/// Runs one suite for one size over one field; deterministic ladder order.
pub fn run_suite_with<F: Field>(field: &F, suite: Suite, n: usize) -> Vec<Verdict> {
    match suite {
        Suite::Enumerate => enumerate_verdicts(n),
        Suite::Classify => classify_verdicts(n),
        Suite::Structure => {
            let ladders = suite_ladders(suite, n);
            ladders.par_iter().map(|l| structure_check(field, l)).collect()
        }
        Suite::Derivations => {
            let ladders = suite_ladders(suite, n);
            let mut out: Vec<Verdict> =
                ladders.par_iter().map(|l| derivations_check(field, l)).collect();
            out.extend(synthetic_verdicts(field, suite));
            out
        }
        Suite::Core => {
            let ladders = suite_ladders(suite, n);
            let mut out: Vec<Verdict> = ladders.par_iter().map(|l| core_check(field, l)).collect();
            out.extend(synthetic_verdicts(field, suite));
            out
        }
        Suite::All => {
            let mut out = enumerate_verdicts(n);
            out.extend(classify_verdicts(n));
            out.extend(run_suite_with(field, Suite::Structure, n));
            out.extend(run_suite_with(field, Suite::Derivations, n));
            out.extend(run_suite_with(field, Suite::Core, n));
            out
        }
    }
}

/// Checks for a single explicit ladder instead of a sweep.
pub fn run_single_with<F: Field>(field: &F, suite: Suite, l: &Ladder) -> Vec<Verdict> {
    match suite {
        Suite::Enumerate => enumerate_verdicts(l.n()),
        Suite::Classify => classify_verdicts(l.n()),
        Suite::Structure => vec![structure_check(field, l)],
        Suite::Derivations => {
            let mut out = vec![derivations_check(field, l)];
            out.extend(synthetic_verdicts(field, Suite::Derivations));
            out
        }
        Suite::Core => {
            let mut out = vec![core_check(field, l)];
            out.extend(synthetic_verdicts(field, Suite::Core));
            out
        }
        Suite::All => {
            let mut out = vec![structure_check(field, l)];
            out.push(derivations_check(field, l));
            out.push(core_check(field, l));
            out.extend(synthetic_verdicts(field, Suite::All));
            out
        }
    }
}

/// Streams one suite's verdicts in deterministic ladder order while the
/// per-ladder jobs run on the worker pool; long sweeps become inspectable
/// mid-run. Returns whether everything passed.
pub fn run_suite_streaming<F: Field>(
    field: &F,
    suite: Suite,
    n: usize,
    emit: &mut dyn FnMut(&Verdict),
) -> bool {
    fn send(vs: Vec<Verdict>, ok: &mut bool, emit: &mut dyn FnMut(&Verdict)) {
        for v in vs {
            *ok &= v.status != Status::Fail;
            emit(&v);
        }
    }
    let mut ok = true;
    match suite {
        Suite::Enumerate => send(enumerate_verdicts(n), &mut ok, emit),
        Suite::Classify => send(classify_verdicts(n), &mut ok, emit),
        Suite::Structure => {
            stream_checks(field, &suite_ladders(suite, n), structure_check, &mut ok, emit)
        }
        Suite::Derivations => {
            stream_checks(field, &suite_ladders(suite, n), derivations_check, &mut ok, emit);
            send(synthetic_verdicts(field, suite), &mut ok, emit);
        }
        Suite::Core => {
            stream_checks(field, &suite_ladders(suite, n), core_check, &mut ok, emit);
            send(synthetic_verdicts(field, suite), &mut ok, emit);
        }
        Suite::All => {
            for s in [
                Suite::Enumerate,
                Suite::Classify,
                Suite::Structure,
                Suite::Derivations,
                Suite::Core,
            ] {
                ok &= run_suite_streaming(field, s, n, emit);
            }
        }
    }
    ok
}

/// Per-ladder jobs on the pool; a reorder buffer restores ladder order on
/// the caller's thread, which owns the emitter.
fn stream_checks<F: Field>(
    field: &F,
    ladders: &[Ladder],
    check: impl Fn(&F, &Ladder) -> Verdict + Sync,
    ok: &mut bool,
    emit: &mut dyn FnMut(&Verdict),
) {
    let (tx, rx) = std::sync::mpsc::channel::<(usize, Verdict)>();
    std::thread::scope(|s| {
        let check = &check;
        s.spawn(move || {
            ladders
                .par_iter()
                .enumerate()
                .for_each_with(tx, |tx, (i, l)| {
                    let _ = tx.send((i, check(field, l)));
                });
        });
        let mut pending = std::collections::BTreeMap::new();
        let mut next = 0usize;
        for (i, v) in rx.iter() {
            pending.insert(i, v);
            while let Some(v) = pending.remove(&next) {
                *ok &= v.status != Status::Fail;
                emit(&v);
                next += 1;
            }
        }
    });
}

/// Field dispatch for the CLI.
pub fn run_suite(tag: FieldTag, suite: Suite, n: usize) -> Result<Vec<Verdict>> {
    match tag {
        FieldTag::Rational => Ok(run_suite_with(&Rationals, suite, n)),
        FieldTag::Prime(p) => Ok(run_suite_with(&Gf::new(p)?, suite, n)),
    }
}

pub fn run_single(tag: FieldTag, suite: Suite, l: &Ladder) -> Result<Vec<Verdict>> {
    match tag {
        FieldTag::Rational => Ok(run_single_with(&Rationals, suite, l)),
        FieldTag::Prime(p) => Ok(run_single_with(&Gf::new(p)?, suite, l)),
    }
}

/// The per-algebra report behind `show`: shape data plus, for upper
/// triangular ladders, the structure dimensions over the requested field.
#[derive(Debug, Clone, Serialize)]
pub struct ShowReport {
    pub ladder: Ladder,
    pub field: String,
    pub dim: usize,
    pub cuts: Option<Vec<usize>>,
    pub sizes: Option<Vec<usize>>,
    pub block_index_set: Option<Vec<(usize, usize)>>,
    pub class: crate::ladder::LadderClass,
    pub normalizer_dim: Option<usize>,
    pub centralizer_dim: Option<usize>,
    pub derived_series_dims: Option<Vec<usize>>,
    pub terminal_ladder: Option<Ladder>,
}

pub fn show_report(tag: FieldTag, l: &Ladder) -> Result<ShowReport> {
    let class = l.classify();
    let (cuts, sizes, blocks) = match l.partition() {
        Ok(p) => {
            let blocks = crate::ladder::block_index_set(l, &p);
            (
                Some(p.cuts().to_vec()),
                Some(p.sizes().to_vec()),
                Some(blocks.into_iter().collect::<Vec<_>>()),
            )
        }
        Err(_) => (None, None, None),
    };
    let mut report = ShowReport {
        ladder: l.clone(),
        field: tag.to_string(),
        dim: l.index_set().len(),
        cuts,
        sizes,
        block_index_set: blocks,
        class,
        normalizer_dim: None,
        centralizer_dim: None,
        derived_series_dims: None,
        terminal_ladder: None,
    };
    if !l.is_empty() && class.upper_triangular {
        match tag {
            FieldTag::Rational => fill_show_dims(&Rationals, l, &mut report)?,
            FieldTag::Prime(p) => fill_show_dims(&Gf::new(p)?, l, &mut report)?,
        }
    }
    Ok(report)
}

fn fill_show_dims<F: Field>(field: &F, l: &Ladder, report: &mut ShowReport) -> Result<()> {
    let alg = LadderAlgebra::build(field.clone(), l.clone())?;
    report.normalizer_dim = Some(alg.normalizer_brute().dim());
    report.centralizer_dim = Some(alg.centralizer_brute().dim());
    let series = alg.derived_series()?;
    report.derived_series_dims = Some(series.dims());
    report.terminal_ladder = Some(l.sdut_core());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_suite_passes() {
        let vs = enumerate_verdicts(4);
        assert!(all_passed(&vs));
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].checks.count, Some(true));
    }

    #[test]
    fn classify_suite_passes_small() {
        assert!(all_passed(&classify_verdicts(4)));
    }

    #[test]
    fn structure_suite_passes_small() {
        let f = Gf::new(101).unwrap();
        let vs = run_suite_with(&f, Suite::Structure, 3);
        assert!(all_passed(&vs), "{:?}", vs.iter().find(|v| v.status == Status::Fail));
    }

    #[test]
    fn derivations_suite_passes_small() {
        let f = Gf::new(101).unwrap();
        let vs = run_suite_with(&f, Suite::Derivations, 3);
        assert!(all_passed(&vs), "{:?}", vs.iter().find(|v| v.status == Status::Fail));
        // non-empty DUT ladders plus the dominance witness
        assert_eq!(vs.len(), 13 - 1 + 1);
    }

    #[test]
    fn core_suite_passes_small() {
        let f = Gf::new(7).unwrap();
        let vs = run_suite_with(&f, Suite::Core, 4);
        assert!(all_passed(&vs), "{:?}", vs.iter().find(|v| v.status == Status::Fail));
        for v in &vs {
            assert_eq!(v.checks.extension, Some(true));
            assert_eq!(v.checks.split_sequence, Some(true));
        }
    }

    #[test]
    fn char2_run_reproduces_counterexample_and_diverges() {
        let f = Gf::new(2).unwrap();
        let vs = run_suite_with(&f, Suite::Derivations, 2);
        assert!(all_passed(&vs), "{:?}", vs);
        // the M_2 ladder diverges from the formula in characteristic 2
        assert!(vs.iter().any(|v| v.status == Status::Divergence));
        // and the synthetic counterexample row passes
        let synth = vs.iter().find(|v| v.detail.as_deref() == Some("char-2 counterexample must reproduce")).unwrap();
        assert_eq!(synth.status, Status::Pass);
    }

    #[test]
    fn show_report_of_running_example() {
        let l = crate::ladder::parse_ladder("n=7: (1,1) (4,3) (5,5)").unwrap();
        let r = show_report(FieldTag::Prime(101), &l).unwrap();
        assert_eq!(r.dim, 25);
        assert_eq!(r.cuts, Some(vec![1, 2, 4, 5]));
        assert_eq!(r.normalizer_dim, Some(30));
        assert_eq!(r.centralizer_dim, Some(1));
    }
}
