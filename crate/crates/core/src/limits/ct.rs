//! Finite-sample evidence for the boundary map `W → Λ(W)`: random geodesic
//! rays converge in the chart, interleaved subsequences share a limit, and
//! at a rank-2 cusp two sequences at word-metric Gromov product 0 share a
//! limit point.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chart::ChartPoint;
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::limits::cusps::compute_cusps;
use crate::system::System;

#[derive(Clone, Debug)]
pub struct CtOptions {
    pub trials: usize,
    pub word_length: usize,
    /// Tail starts at `ceil(tail_fraction · L)`.
    pub tail_fraction: f64,
    pub tail_tol: f64,
    /// Bound on the distance between the even and odd subsequence limits.
    pub coherence_tol: f64,
    /// Powers `k` for `(st)^k · o`; consecutive entries must double.
    pub witness_powers: Vec<usize>,
    pub witness_tol: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for CtOptions {
    fn default() -> Self {
        Self {
            trials: 20,
            word_length: 40,
            tail_fraction: 0.8,
            tail_tol: 1e-3,
            coherence_tol: 1e-6,
            witness_powers: vec![25, 50, 100, 200],
            witness_tol: 1e-6,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RayReport {
    pub word: Vec<usize>,
    pub tail_diameter: f64,
    /// `|w_L · o − w_{L−1} · o|`: the last even and odd terms.
    pub coherence: f64,
    pub max_entry: f64,
}

#[derive(Clone, Debug)]
pub struct CuspWitness {
    /// The pair `{s, t}` spanning the rank-2 affine subsystem.
    pub pair: (usize, usize),
    pub cusp: ChartPoint,
    pub powers: Vec<usize>,
    /// `|(st)^k · o − p|` and `|(ts)^k · o − p|` for each power.
    pub raw_st: Vec<f64>,
    pub raw_ts: Vec<f64>,
    /// Richardson-extrapolated limits of both sequences.
    pub limit_st: ChartPoint,
    pub limit_ts: ChartPoint,
    /// Distance between the two limits.
    pub limit_gap: f64,
    /// Largest distance from a limit to the cusp.
    pub cusp_gap: f64,
    /// `((st)^k | (ts)^k)` in the word metric for each power.
    pub word_gromov: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct CtReport {
    pub rays: Vec<RayReport>,
    pub witnesses: Vec<CuspWitness>,
    pub failures: Vec<String>,
}

impl CtReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn max_tail_diameter(&self) -> f64 {
        self.rays
            .iter()
            .map(|r| r.tail_diameter)
            .fold(0.0, f64::max)
    }

    pub fn max_coherence(&self) -> f64 {
        self.rays.iter().map(|r| r.coherence).fold(0.0, f64::max)
    }
}

/// Largest pairwise Euclidean distance.
pub fn diameter(points: &[ChartPoint]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.euclid(q));
        }
    }
    best
}

/// Richardson extrapolation for terms `x(k)` with an expansion in `1/k`,
/// sampled at `k, 2k, 4k, …`.
pub fn richardson(terms: &[DVector<f64>]) -> DVector<f64> {
    let mut table: Vec<DVector<f64>> = terms.to_vec();
    let mut factor = 2.0;
    for _ in 1..terms.len() {
        table = table
            .windows(2)
            .map(|w| &w[1] + (&w[1] - &w[0]) / (factor - 1.0))
            .collect();
        factor *= 2.0;
    }
    table.pop().expect("at least one term")
}

fn ray(system: &System, opts: &CtOptions, trial: usize) -> Result<RayReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(trial as u64);
    let chart = system.chart();
    let o = chart.base_point();
    let prefixes = system.generators().random_ray(&mut rng, opts.word_length)?;
    let points: Vec<ChartPoint> = prefixes
        .iter()
        .map(|w| chart.act(w, &o))
        .collect::<Result<_>>()?;
    let len = points.len() - 1;
    let start = ((opts.tail_fraction * len as f64).ceil() as usize).min(len);
    let last = prefixes.last().expect("ray contains the identity");
    Ok(RayReport {
        word: last.word().to_vec(),
        tail_diameter: diameter(&points[start..]),
        coherence: if len >= 1 {
            points[len].euclid(&points[len - 1])
        } else {
            0.0
        },
        max_entry: last.matrix().amax(),
    })
}

fn witness(
    system: &System,
    pair: (usize, usize),
    cusp: &ChartPoint,
    opts: &CtOptions,
) -> Result<CuspWitness> {
    let gens = system.generators();
    let chart = system.chart();
    let o = chart.base_point();
    let (s, t) = pair;
    let mut st_terms = Vec::new();
    let mut ts_terms = Vec::new();
    let mut raw_st = Vec::new();
    let mut raw_ts = Vec::new();
    let mut word_gromov = Vec::new();
    for &k in &opts.witness_powers {
        let a = gens.reduce_word(&[s, t].repeat(k))?;
        let b = gens.reduce_word(&[t, s].repeat(k))?;
        let pa = chart.act(&a, &o)?;
        let pb = chart.act(&b, &o)?;
        raw_st.push(pa.euclid(cusp));
        raw_ts.push(pb.euclid(cusp));
        st_terms.push(pa.into_inner());
        ts_terms.push(pb.into_inner());
        word_gromov.push(gens.gromov_product(&a, &b)?);
    }
    let limit_st = ChartPoint(richardson(&st_terms));
    let limit_ts = ChartPoint(richardson(&ts_terms));
    Ok(CuspWitness {
        pair,
        cusp: cusp.clone(),
        powers: opts.witness_powers.clone(),
        raw_st,
        raw_ts,
        limit_gap: limit_st.euclid(&limit_ts),
        cusp_gap: limit_st.euclid(cusp).max(limit_ts.euclid(cusp)),
        limit_st,
        limit_ts,
        word_gromov,
    })
}

pub fn ct_verify(system: &System, opts: &CtOptions) -> Result<CtReport> {
    let rays = exec::map_range(opts.execution, opts.trials, |i| ray(system, opts, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        if !(r.tail_diameter <= opts.tail_tol) {
            failures.push(format!(
                "ray {i}: tail diameter {:.3e} exceeds {:.1e}",
                r.tail_diameter, opts.tail_tol
            ));
        }
        if !(r.coherence <= opts.coherence_tol) {
            failures.push(format!(
                "ray {i}: interleaved subsequences differ by {:.3e} (> {:.1e})",
                r.coherence, opts.coherence_tol
            ));
        }
    }
    let mut witnesses = Vec::new();
    for cusp in compute_cusps(system)?.iter().filter(|c| c.rank == 2) {
        let pair = (cusp.delta_prime[0], cusp.delta_prime[1]);
        let w = witness(system, pair, &cusp.point, opts)?;
        let name = format!("cusp {{{},{}}}", pair.0 + 1, pair.1 + 1);
        if !(w.limit_gap <= opts.witness_tol && w.cusp_gap <= opts.witness_tol) {
            failures.push(format!(
                "{name}: limits differ by {:.3e}, cusp gap {:.3e} (> {:.1e})",
                w.limit_gap, w.cusp_gap, opts.witness_tol
            ));
        }
        if w.word_gromov.iter().any(|&g| g != 0.0) {
            failures.push(format!(
                "{name}: word Gromov product {:?} is not 0",
                w.word_gromov
            ));
        }
        witnesses.push(w);
    }
    Ok(CtReport {
        rays,
        witnesses,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::coxsys::{CoxeterMatrix, Edge};

    #[test]
    fn constant_sequence_has_zero_diameter() {
        let p = ChartPoint(DVector::from_vec(vec![0.5, 0.5]));
        assert_eq!(diameter(&vec![p; 5]), 0.0);
    }

    #[test]
    fn richardson_removes_inverse_powers() {
        let f = |k: f64| DVector::from_vec(vec![1.0 + 3.0 / k - 2.0 / (k * k), 2.0 - 1.0 / k]);
        let terms: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&k| f(k)).collect();
        let l = richardson(&terms);
        assert!((l[0] - 1.0).abs() < 1e-12 && (l[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_two_cusp_witness() {
        let m = CoxeterMatrix::from_edges(
            3,
            &[
                (0, 1, Edge::DEFAULT_INFINITE),
                (0, 2, Edge::Finite(3)),
                (1, 2, Edge::Finite(3)),
            ],
        )
        .unwrap();
        let s = System::new(m, Tolerances::default()).unwrap();
        let r = ct_verify(
            &s,
            &CtOptions {
                trials: 4,
                word_length: 30,
                ..CtOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.witnesses.len(), 1);
        let w = &r.witnesses[0];
        assert!(w.limit_gap <= 1e-6 && w.cusp_gap <= 1e-6, "{w:?}");
        assert!(w.word_gromov.iter().all(|&g| g == 0.0));
        assert!(w.raw_st.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn deterministic_in_the_seed() {
        let s = System::new(CoxeterMatrix::uniform(4, 3).unwrap(), Tolerances::default()).unwrap();
        let opts = CtOptions {
            trials: 3,
            word_length: 20,
            seed: 9,
            ..CtOptions::default()
        };
        let a = ct_verify(&s, &opts).unwrap();
        let b = ct_verify(
            &s,
            &CtOptions {
                execution: Execution::Sequential,
                ..opts.clone()
            },
        )
        .unwrap();
        for (x, y) in a.rays.iter().zip(&b.rays) {
            assert_eq!(x.word, y.word);
            assert_eq!(x.tail_diameter, y.tail_diameter);
        }
    }
}
