//! Acceptance suite: every structural claim the library is built to
//! reproduce, each as one criterion with a printed pass/fail line. All
//! comparisons are exact; there are no tolerances anywhere.

use ladder_lie::verify::{all_passed, run_suite_with, Status, Suite};
use ladder_lie::*;

fn report(criterion: &str, pass: bool) -> bool {
    println!("criterion {criterion}: {}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn gf(p: u64) -> Gf {
    Gf::new(p).unwrap()
}

#[test]
fn criterion_01_fibonacci_counts() {
    let expected = [2u128, 5, 13, 34, 89, 233];
    let mut ok = true;
    for (n, &want) in (1..=6).zip(&expected) {
        let got = enumerate_dut(n).len() as u128;
        ok &= got == want && count_dut(n) == want;
    }
    let forms: Vec<u128> = (1..=5).map(count_dut_block_forms).collect();
    ok &= forms == [2, 3, 5, 8, 13];
    // brute count of non-consecutive removal subsets per block form
    for t in 1..=8u32 {
        let brute = (0u32..1 << t)
            .filter(|mask| (0..t - 1).all(|k| mask & (3 << k) != 3 << k))
            .count() as u128;
        ok &= brute == count_dut_block_forms(t as usize);
    }
    assert!(report("1 (fibonacci counts)", ok));
}

#[test]
fn criterion_02_structure_lemmas() {
    let f = gf(101);
    let mut ok = true;
    for n in 1..=5 {
        for l in enumerate_dut(n) {
            if l.is_empty() {
                continue;
            }
            let alg = LadderAlgebra::build(f, l.clone()).unwrap();
            let nb = alg.normalizer_brute();
            let cb = alg.centralizer_brute();
            ok &= nb == alg.normalizer_block_form().unwrap();
            ok &= cb == alg.centralizer_closed_form().unwrap();
            ok &= nb.contains_subspace(&cb).unwrap();
        }
    }
    assert!(report("2 (normalizer/centralizer lemmas)", ok));
}

#[test]
fn criterion_03_main_theorem_dimension() {
    let f = gf(101);
    let mut ok = true;
    for n in 1..=5 {
        for l in enumerate_dut(n) {
            if l.is_empty() {
                continue;
            }
            let alg = LadderAlgebra::build(f, l.clone()).unwrap();
            let der = derivation_space(&LieBasis::of_algebra(&alg));
            let (predicted, _) = predicted_der_dim(&alg).unwrap();
            let inner = inner_space(&alg).unwrap();
            let dee = dee_space(&alg).unwrap();
            ok &= der.dim() == predicted;
            ok &= inner.sum(&dee).unwrap() == der;
            ok &= inner.intersect(&dee).unwrap().is_zero();
            ok &= inner.dim() == alg.normalizer_brute().dim() - alg.centralizer_brute().dim();
        }
    }
    // spot values
    let m2 = LadderAlgebra::build(Rationals, parse_ladder("n=2: (2,1)").unwrap()).unwrap();
    ok &= derivation_space(&LieBasis::of_algebra(&m2)).dim() == 4;
    let l32 = LadderAlgebra::build(f, parse_ladder("n=4: (3,2)").unwrap()).unwrap();
    ok &= derivation_space(&LieBasis::of_algebra(&l32)).dim() == 10;
    let ex = LadderAlgebra::build(f, parse_ladder("n=7: (1,1) (4,3) (5,5)").unwrap()).unwrap();
    ok &= derivation_space(&LieBasis::of_algebra(&ex)).dim() == 29;
    assert!(report("3 (main theorem dimensions and direct sum)", ok));
}

#[test]
fn criterion_04_decomposition_witnesses() {
    let f = gf(101);
    let mut ok = true;
    for n in 1..=5 {
        for l in enumerate_dut(n) {
            if l.is_empty() {
                continue;
            }
            let alg = LadderAlgebra::build(f, l.clone()).unwrap();
            let der = derivation_space(&LieBasis::of_algebra(&alg));
            let expected_tag = case_tag(&alg).unwrap();
            for fd in endomap_basis(&f, alg.dim(), &der) {
                match decompose(&alg, &fd) {
                    Ok(dec) => {
                        ok &= dec.case_tag == expected_tag;
                        ok &= rebuild(&alg, &dec).unwrap() == fd;
                        match (&dec.case_tag, &dec.case_data) {
                            (CaseTag::BlockUpperTriangular, CaseData::Scalars(_)) => {}
                            (CaseTag::EndBlockPresent, CaseData::None) => {}
                            (CaseTag::BothEndsAbsent, CaseData::CornerBlocks(_)) => {}
                            _ => ok = false,
                        }
                    }
                    Err(_) => ok = false,
                }
            }
        }
    }
    assert!(report("4 (decomposition round trips)", ok));
}

#[test]
fn criterion_05_dominance() {
    let f = gf(101);
    let mut ok = true;
    for n in 1..=5 {
        for l in enumerate_dut(n) {
            if l.is_empty() || l.classify().block_form_equal {
                continue;
            }
            let alg = LadderAlgebra::build(f, l.clone()).unwrap();
            let der = derivation_space(&LieBasis::of_algebra(&alg));
            for fd in endomap_basis(&f, alg.dim(), &der) {
                ok &= check_dominance(&alg, &fd).unwrap();
            }
        }
    }
    // the non-DUT witness: a certified derivation that breaks dominance
    let (alg, fd) = counterexamples::non_dominant_map(&f, 1, 1).unwrap();
    let lie = LieBasis::of_algebra(&alg);
    ok &= is_derivation(&lie, &fd).unwrap();
    ok &= !check_dominance(&alg, &fd).unwrap();
    assert!(report("5 (dominance corollary)", ok));
}

#[test]
fn criterion_06_characteristic_counterexamples() {
    let mut ok = true;

    let f2 = gf(2);
    let (alg, fd) = counterexamples::char2_m2_map(&f2).unwrap();
    ok &= is_derivation(&LieBasis::of_algebra(&alg), &fd).unwrap();
    ok &= decompose(&alg, &fd).err() == Some(Error::NotInDecomposition);

    let f3 = gf(3);
    let (alg, core, fd) = counterexamples::char3_core_map(&f3).unwrap();
    ok &= is_derivation(&core, &fd).unwrap();
    ok &= extend_from_core(&alg, &core, &fd).err() == Some(Error::NoAdjointWitness);

    assert!(report("6 (characteristic counterexamples)", ok));
}

#[test]
fn criterion_07_sdut_extension_and_split_sequence() {
    let mut ok = true;
    for p in [7u64, 101] {
        let f = gf(p);
        for n in 1..=6 {
            let vs = run_suite_with(&f, Suite::Core, n);
            ok &= all_passed(&vs);
            for v in &vs {
                ok &= v.checks.extension == Some(true);
                ok &= v.checks.split_sequence == Some(true);
                ok &= v.checks.centralizer == Some(true);
                // dim Der(core) = dim N - dim C
                let (cd, nd, cz) = (
                    v.dims.core_der.unwrap(),
                    v.dims.normalizer.unwrap(),
                    v.dims.centralizer.unwrap(),
                );
                ok &= cd == nd - cz;
            }
        }
    }
    assert!(report("7 (SDUT extension and split sequence)", ok));
}

#[test]
fn criterion_08_derived_series() {
    let mut ok = true;
    for n in 1..=5 {
        let fields_pass = {
            let a = run_suite_with(&gf(101), Suite::Structure, n);
            let b = run_suite_with(&Rationals, Suite::Structure, n);
            let series_ok = |vs: &[ladder_lie::Verdict]| {
                vs.iter().all(|v| {
                    v.status == Status::Pass && v.checks.derived_series.unwrap_or(true)
                })
            };
            series_ok(&a) && series_ok(&b)
        };
        ok &= fields_pass;
    }
    // strictly upper triangular ladders terminate at zero, non-solvable ones
    // at the traceless algebra of the SDUT core
    for n in 1..=5 {
        for l in enumerate_all_ladders(n) {
            let flags = l.classify();
            if l.is_empty() || !flags.upper_triangular {
                continue;
            }
            let alg = LadderAlgebra::build(gf(101), l.clone()).unwrap();
            let s = alg.derived_series().unwrap();
            ok &= s.terminal().is_zero() == l.sdut_core().is_empty();
            if flags.strictly_upper_triangular {
                ok &= s.terminal().is_zero();
            }
        }
    }
    assert!(report("8 (derived series shapes)", ok));
}

#[test]
fn criterion_09_step1_theorem() {
    let f = gf(101);
    let mut ok = true;
    for n in 1..=5usize {
        for i in 1..=n {
            for j in 1..=n {
                let l = Ladder::new(n, vec![(i, j)]).unwrap();
                let alg = LadderAlgebra::build(f, l).unwrap();
                let d = alg.dim();
                assert_eq!(d, i * (n - j + 1));
                let der = derivation_space(&LieBasis::of_algebra(&alg)).dim();
                if i < j {
                    // abelian: every endomorphism is a derivation
                    ok &= der == d * d;
                } else if i == n && j == 1 {
                    // the full matrix algebra: inner part plus the
                    // one-dimensional trace-driven ideal
                    ok &= der == n * n;
                    ok &= dee_space(&alg).unwrap().dim() == 1;
                } else if j == 1 || i == n {
                    let nb = alg.normalizer_brute().dim();
                    let cb = alg.centralizer_brute().dim();
                    ok &= der == nb - cb;
                    ok &= dee_space(&alg).unwrap().dim() == 0;
                } else {
                    // interior: both end blocks absent
                    let (predicted, tag) = predicted_der_dim(&alg).unwrap();
                    ok &= der == predicted && tag == CaseTag::BothEndsAbsent;
                    // the explicit three-block formula
                    let (a, b, c) = (j - 1, i - j + 1, n - i);
                    let dim_lb = a * a + b * b + c * c + a * b + a * c + b * c;
                    ok &= der == dim_lb - 1;
                }
            }
        }
    }
    assert!(report("9 (one-step ladder theorem)", ok));
}

#[test]
fn criterion_10_intertwiner_lemma() {
    let mut ok = true;
    let f7 = gf(7);
    for m in 1..=4 {
        for n in 1..=4 {
            let s = solve_intertwiner(&f7, m, n);
            ok &= s.dim() == 1 && s.basis()[0] == intertwiner_generator(&f7, m, n);
            let s = solve_intertwiner(&Rationals, m, n);
            ok &= s.dim() == 1 && s.basis()[0] == intertwiner_generator(&Rationals, m, n);
        }
    }
    assert!(report("10 (intertwiner lemma)", ok));
}

#[test]
fn criterion_11_property_suites() {
    let mut ok = true;

    // Jacobi identity: exhaustive on all basis triples of every upper
    // triangular ladder algebra with n <= 4
    let f = gf(101);
    for n in 1..=4 {
        for l in enumerate_all_ladders(n) {
            if l.is_empty() || !l.classify().upper_triangular {
                continue;
            }
            let alg = LadderAlgebra::build(f, l).unwrap();
            let d = alg.dim();
            let unit = |k: usize| {
                let mut v = vec![0u64; d];
                v[k] = 1;
                v
            };
            for x in 0..d {
                for y in (x + 1)..d {
                    for z in (y + 1)..d {
                        let (vx, vy, vz) = (unit(x), unit(y), unit(z));
                        let t1 = alg.bracket(&vx, &alg.bracket(&vy, &vz).unwrap()).unwrap();
                        let t2 = alg.bracket(&vy, &alg.bracket(&vz, &vx).unwrap()).unwrap();
                        let t3 = alg.bracket(&vz, &alg.bracket(&vx, &vy).unwrap()).unwrap();
                        for k in 0..d {
                            ok &= f.add(&t1[k], &f.add(&t2[k], &t3[k])) == 0;
                        }
                    }
                }
            }
        }
    }
    // and on pseudo-random triples of larger algebras up to n = 7
    for spec in ["n=6: (2,1) (6,4)", "n=7: (1,1) (4,3) (5,5)"] {
        let alg = LadderAlgebra::build(f, parse_ladder(spec).unwrap()).unwrap();
        let d = alg.dim();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 101
        };
        for _ in 0..20 {
            let vx: Vec<u64> = (0..d).map(|_| rnd()).collect();
            let vy: Vec<u64> = (0..d).map(|_| rnd()).collect();
            let vz: Vec<u64> = (0..d).map(|_| rnd()).collect();
            let t1 = alg.bracket(&vx, &alg.bracket(&vy, &vz).unwrap()).unwrap();
            let t2 = alg.bracket(&vy, &alg.bracket(&vz, &vx).unwrap()).unwrap();
            let t3 = alg.bracket(&vz, &alg.bracket(&vx, &vy).unwrap()).unwrap();
            for k in 0..d {
                ok &= f.add(&t1[k], &f.add(&t2[k], &t3[k])) == 0;
            }
        }
    }

    // rank-nullity: exhaustive over every GF(2) and GF(3) matrix with at
    // most 9 entries, for every shape up to 3x3
    for p in [2u64, 3] {
        let fp = gf(p);
        for rows in 1..=3usize {
            for cols in 1..=3usize {
                let cells = rows * cols;
                let total = (p as u128).pow(cells as u32);
                for code in 0..total {
                    let mut m = Mat::zero(fp, rows, cols);
                    let mut c = code;
                    for idx in 0..cells {
                        m.set(idx / cols, idx % cols, (c % p as u128) as u64);
                        c /= p as u128;
                    }
                    let (_, rank) = rref(&m);
                    ok &= rank + kernel(&m).dim() == cols;
                }
            }
        }
    }
    // and on pseudo-random shapes up to 6x6 over GF(2), GF(3), GF(101)
    let mut state = 0xdeadbeefu64;
    let mut rnd = |bound: u64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) % bound
    };
    for p in [2u64, 3, 101] {
        let fp = gf(p);
        for _ in 0..60 {
            let rows = 1 + rnd(6) as usize;
            let cols = 1 + rnd(6) as usize;
            let mut m = Mat::zero(fp, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, rnd(p));
                }
            }
            let (_, rank) = rref(&m);
            ok &= rank + kernel(&m).dim() == cols;
        }
    }

    // Grassmann identity on pseudo-random subspace pairs
    let f101 = gf(101);
    for ambient in 2..=6usize {
        for _ in 0..40 {
            let mk = |state: &mut dyn FnMut(u64) -> u64| {
                let k = 1 + state(ambient as u64) as usize;
                let rows: Vec<Vec<u64>> = (0..k)
                    .map(|_| (0..ambient).map(|_| state(101)).collect())
                    .collect();
                Subspace::span(f101, ambient, rows).unwrap()
            };
            let a = mk(&mut rnd);
            let b = mk(&mut rnd);
            let sum = a.sum(&b).unwrap();
            let inter = a.intersect(&b).unwrap();
            ok &= a.dim() + b.dim() == sum.dim() + inter.dim();
            ok &= sum.contains_subspace(&a).unwrap() && sum.contains_subspace(&b).unwrap();
            ok &= a.contains_subspace(&inter).unwrap() && b.contains_subspace(&inter).unwrap();
        }
    }

    // canonical form idempotence: re-spanning a canonical basis is identity,
    // and ladder canonicalization inverts the index set exhaustively
    for _ in 0..40 {
        let ambient = 2 + rnd(5) as usize;
        let k = 1 + rnd(ambient as u64) as usize;
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..ambient).map(|_| rnd(101)).collect())
            .collect();
        let v = Subspace::span(f101, ambient, rows).unwrap();
        let again = Subspace::span(f101, ambient, v.basis().to_vec()).unwrap();
        ok &= again == v;
    }
    for n in 1..=4 {
        for l in enumerate_all_ladders(n) {
            ok &= canonicalize(n, &l.index_set()).as_ref() == Ok(&l);
        }
    }

    assert!(report("11 (property suites)", ok));
}
