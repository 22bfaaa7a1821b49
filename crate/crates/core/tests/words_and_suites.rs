mod common;

use std::collections::HashMap;

use coxlim::catalog;
use coxlim::suites::{run_suite, Suite};
use coxlim::{CoxeterMatrix, RunConfig, System, Tolerances};

fn key(m: &nalgebra::DMatrix<f64>) -> Vec<i64> {
    m.iter().map(|x| (x * 1e4).round() as i64).collect()
}

/// Lexicographically least word of minimal length for every element up to
/// `depth`, by trying all words in order.
fn brute_force_shortlex(m: &CoxeterMatrix, depth: usize) -> HashMap<Vec<i64>, Vec<usize>> {
    let g = common::gram(m);
    let n = m.rank();
    let mut best: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for len in 0..=depth {
        let total = n.pow(len as u32);
        for code in 0..total {
            let mut w = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                w.push(c % n);
                c /= n;
            }
            w.reverse();
            best.entry(key(&common::word_matrix(&g, &w))).or_insert(w);
        }
    }
    best
}

#[test]
fn canonical_words_are_shortlex_minimal() {
    for m in [
        catalog::triangle_334(),
        catalog::rank4_all3(),
        catalog::ideal_edge_triangle(-1.0),
        catalog::ideal_triangle(),
        catalog::tetrahedron_535(),
    ] {
        let depth = if m.rank() == 4 { 5 } else { 7 };
        let s = System::new(m.clone(), Tolerances::default()).unwrap();
        let g = common::gram(&m);
        let oracle = brute_force_shortlex(&m, depth);
        let ball = s
            .generators()
            .enumerate_ball(depth, 1_000_000, Default::default())
            .unwrap();
        assert_eq!(ball.len(), oracle.len(), "{}", m.to_text());
        for w in ball.iter() {
            let want = &oracle[&key(&common::word_matrix(&g, w.word()))];
            assert_eq!(w.word(), &want[..], "{}", m.to_text());
        }
    }
}

#[test]
fn infinite_triangle_grows_like_a_free_product() {
    // Every reduced word alternates letters: 1, 3, 6, 12, 24, …
    let s = System::new(catalog::ideal_triangle(), Tolerances::default()).unwrap();
    let counts = s
        .generators()
        .enumerate_ball(8, 1_000_000, Default::default())
        .unwrap()
        .counts();
    let want: Vec<usize> = (0..=8)
        .map(|k| if k == 0 { 1 } else { 3 << (k - 1) })
        .collect();
    assert_eq!(counts, want);
}

fn config(seed: u64) -> RunConfig {
    RunConfig {
        seed,
        depth: 7,
        ..RunConfig::default()
    }
}

#[test]
fn every_suite_passes_on_the_reference_groups() {
    for m in [
        catalog::triangle_334(),
        catalog::ideal_edge_triangle(-1.0),
        catalog::protruding_triangle(),
    ] {
        let s = System::new(m.clone(), Tolerances::default()).unwrap();
        for suite in Suite::ALL {
            // Length-40 rays sit right at the interleaving bound for the
            // triangle groups; 60 clears it.
            let cfg = RunConfig {
                ct_word_length: 60,
                ..config(5)
            };
            let r = run_suite(&s, suite, &cfg).unwrap();
            let bad: Vec<_> = r
                .failures()
                .map(|c| format!("{} = {}", c.name, c.value))
                .collect();
            assert!(bad.is_empty(), "{suite} on\n{}{bad:?}", m.to_text());
        }
    }
}

#[test]
fn cusped_rank_four_passes_cusps_and_ct() {
    let s = System::new(catalog::rank4_all3(), Tolerances::default()).unwrap();
    for suite in [Suite::Cusps, Suite::Ct] {
        let r = run_suite(&s, suite, &config(0)).unwrap();
        assert!(
            r.passed(),
            "{suite}: {:?}",
            r.failures().map(|c| &c.name).collect::<Vec<_>>()
        );
    }
}

#[test]
fn slow_growth_group_fails_ct_at_default_length() {
    // The 5-3-5 tetrahedron group converges too slowly for length-40 rays
    // to meet the interleaving bound; longer rays do.
    let s = System::new(catalog::tetrahedron_535(), Tolerances::default()).unwrap();
    let short = run_suite(&s, Suite::Ct, &config(0)).unwrap();
    assert!(!short.passed());
    assert!(short
        .failures()
        .any(|c| c.name.ends_with("interleaved_gap")));
    let long = run_suite(
        &s,
        Suite::Ct,
        &RunConfig {
            ct_word_length: 80,
            ..config(0)
        },
    )
    .unwrap();
    assert!(long.passed());
}
