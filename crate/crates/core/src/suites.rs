//! Invariant suites run by `coxlim verify`. Each check carries the measured
//! value and the threshold it is held to.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::ChartPoint;
use crate::config::RunConfig;
use crate::coxsys::{build_form, reflection_matrix, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::exec;
use crate::hilbert::{self, hyperboloid, ModelMap};
use crate::limits::{
    classify_action, compute_cusps, ct_verify, isometry_type, quasi_isometry_report, CtOptions,
    IsometryKind, TruncatedSpace,
};
use crate::system::System;
use crate::words::{CayleyBall, Generators, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Geometry,
    Words,
    Cusps,
    Ct,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Geometry, Suite::Words, Suite::Cusps, Suite::Ct];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Geometry => "geometry",
            Suite::Words => "words",
            Suite::Cusps => "cusps",
            Suite::Ct => "ct",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown suite `{s}` (expected geometry, words, cusps or ct)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
    /// Strictly greater than the threshold.
    Above,
    /// Finite; the threshold is unused.
    Finite,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, value: f64, bound: Bound, threshold: f64) -> Self {
        let passed = match bound {
            Bound::AtMost => value <= threshold,
            Bound::AtLeast => value >= threshold,
            Bound::Above => value > threshold,
            Bound::Finite => value.is_finite(),
        };
        Self {
            name: name.into(),
            value,
            bound,
            threshold,
            passed,
            detail: String::new(),
        }
    }

    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, Bound::AtMost, threshold)
    }

    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, Bound::AtLeast, threshold)
    }

    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, Bound::Above, threshold)
    }

    pub fn finite(name: &str, value: f64) -> Self {
        Self::new(name, value, Bound::Finite, f64::INFINITY)
    }

    /// A yes/no check, recorded as value 1 (holds) or 0 against threshold 1.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self::at_least(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn relation(&self) -> &'static str {
        match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
            Bound::Above => ">",
            Bound::Finite => "finite",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run_suite(system: &System, suite: Suite, config: &RunConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Geometry => geometry(system, config)?,
        Suite::Words => words(system, config)?,
        Suite::Cusps => cusps(system, config)?,
        Suite::Ct => ct(system, config)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn rng_for(config: &RunConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

/// Rejection sample from `K = {x ∈ D : B(α, x) < 0 for every simple root}`.
pub fn sample_chamber<R: Rng + ?Sized>(
    system: &System,
    rng: &mut R,
    max_radius: f64,
) -> ChartPoint {
    let chart = system.chart();
    let form = system.form();
    loop {
        let x = chart.sample_interior(rng, max_radius);
        if (0..system.rank()).all(|s| form.with_root(s, x.coords()) < 0.0) {
            return x;
        }
    }
}

/// Largest `|d(w·x, w·y) − d(x, y)|` over `pairs` random pairs and random
/// reduced `w` with `|w| <= max_len`.
pub fn isometry_defect<R: Rng + ?Sized>(
    system: &System,
    rng: &mut R,
    pairs: usize,
    max_len: usize,
) -> Result<f64> {
    let chart = system.chart();
    let gens = system.generators();
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let x = chart.sample_interior(rng, 0.9);
        let y = chart.sample_interior(rng, 0.9);
        let len = rng.random_range(0..=max_len);
        let w = gens.random_element(rng, len)?;
        let d0 = hilbert::hilbert_distance(chart, &x, &y)?;
        let d1 = hilbert::hilbert_distance(chart, &chart.act(&w, &x)?, &chart.act(&w, &y)?)?;
        worst = worst.max((d1 - d0).abs());
    }
    Ok(worst)
}

/// Smallest `d(o, w·x) − d(o, x)` over `samples` points of `K` and every
/// `w ≠ id` in the ball.
pub fn dirichlet_margin<R: Rng + ?Sized>(
    system: &System,
    rng: &mut R,
    ball: &CayleyBall,
    samples: usize,
    config: &RunConfig,
) -> Result<f64> {
    let chart = system.chart();
    let o = chart.base_point();
    let points: Vec<ChartPoint> = (0..samples)
        .map(|_| sample_chamber(system, rng, 0.9))
        .collect();
    let elements: Vec<_> = ball.iter().filter(|w| !w.is_identity()).collect();
    let margins = exec::map(config.execution, &points, |x| -> Result<f64> {
        let dx = hilbert::hilbert_distance(chart, &o, x)?;
        let mut m = f64::INFINITY;
        for w in &elements {
            let wx = chart.act(w, x)?;
            m = m.min(hilbert::hilbert_distance(chart, &o, &wx)? - dx);
        }
        Ok(m)
    });
    margins
        .into_iter()
        .try_fold(f64::INFINITY, |acc, m| Ok(acc.min(m?)))
}

fn geometry(system: &System, config: &RunConfig) -> Result<Vec<Check>> {
    let chart = system.chart();
    let form = system.form();
    let n = system.rank();
    let mut checks = Vec::new();
    let mut rng = rng_for(config, 0);

    let o = chart.o();
    let residual = (form.gram() * o - o * chart.lambda()).amax();
    checks.push(Check::at_most("perron_residual", residual, 1e-9));
    checks.push(Check::above("perron_min_coordinate", o.min(), 0.0));

    let mut inv: f64 = 0.0;
    let mut pres: f64 = 0.0;
    for i in 0..n {
        let s = reflection_matrix(form, i);
        inv = inv.max((&s * &s - DMatrix::<f64>::identity(n, n)).amax());
        for _ in 0..100 {
            let u = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            let v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            pres = pres.max((form.apply(&(&s * &u), &(&s * &v)) - form.apply(&u, &v)).abs());
        }
    }
    checks.push(Check::at_most("reflection_involution", inv, 1e-12));
    checks.push(Check::at_most("reflection_preserves_form", pres, 1e-10));

    let gens = system.generators();
    let mut worst_q = f64::NEG_INFINITY;
    let mut worst_norm: f64 = 0.0;
    for _ in 0..1000 {
        let x = chart.sample_interior(&mut rng, 0.95);
        let len = rng.random_range(0..=8);
        let w = gens.random_element(&mut rng, len)?;
        let y = chart.act(&w, &x)?;
        worst_q = worst_q.max(chart.quadratic(y.coords()));
        worst_norm = worst_norm.max((chart.weighted_norm(y.coords()) - 1.0).abs());
    }
    checks.push(
        Check::new("action_preserves_domain", worst_q, Bound::AtMost, 0.0)
            .with_detail("max q(w·x)"),
    );
    checks.push(Check::at_most("action_stays_on_chart", worst_norm, 1e-10));

    checks.push(Check::at_most(
        "isometry_invariance",
        isometry_defect(system, &mut rng, 1000, 8)?,
        1e-9,
    ));

    let model = ModelMap::new(chart)?;
    let mut model_res: f64 = 0.0;
    let mut sym: f64 = 0.0;
    let mut tri: f64 = f64::NEG_INFINITY;
    let mut add: f64 = 0.0;
    let mut lip = f64::NEG_INFINITY;
    let xi = chart.sample_boundary(&mut rng);
    for _ in 0..1000 {
        let x = chart.sample_interior(&mut rng, 0.9);
        let y = chart.sample_interior(&mut rng, 0.9);
        let z = chart.sample_interior(&mut rng, 0.9);
        model_res = model_res.max(model.isometry_residual(chart, &x, &y)?);
        let dxy = hilbert::hilbert_distance(chart, &x, &y)?;
        let dyx = hilbert::hilbert_distance(chart, &y, &x)?;
        let dxz = hilbert::hilbert_distance(chart, &x, &z)?;
        let dyz = hilbert::hilbert_distance(chart, &y, &z)?;
        sym = sym.max((dxy - dyx).abs());
        tri = tri.max(dxz - dxy - dyz);
        let t = rng.random_range(0.1..0.9);
        let m = ChartPoint(x.coords() + (y.coords() - x.coords()) * t);
        let split =
            hilbert::hilbert_distance(chart, &x, &m)? + hilbert::hilbert_distance(chart, &m, &y)?;
        add = add.max((split - dxy).abs());
        let bx = hilbert::busemann(chart, xi.coords(), x.coords())?;
        let by = hilbert::busemann(chart, xi.coords(), y.coords())?;
        lip = lip.max((bx - by).abs() - dxy);
    }
    checks.push(Check::at_most("model_isometry", model_res, 1e-9));
    checks.push(Check::at_most("distance_symmetry", sym, 1e-10));
    checks.push(
        Check::at_most("triangle_inequality", tri, 1e-10)
            .with_detail("max d(x,z) − d(x,y) − d(y,z)"),
    );
    checks.push(Check::at_most("chord_additivity", add, 1e-10));
    checks.push(
        Check::at_most("busemann_lipschitz", lip, 1e-8).with_detail("max |b(x)−b(y)| − d(x,y)"),
    );

    // Points at Euclidean radius r along an axis of the model ball.
    let mut axis: f64 = 0.0;
    let frame = model.l() * model.lp();
    for r in [0.1, 0.5, 0.9, 0.99] {
        let mut z = DVector::zeros(n);
        z[0] = r;
        z[n - 1] = 1.0;
        let p = chart.normalize(&(&frame * z))?;
        let d = hilbert::hilbert_distance(chart, &chart.base_point(), &p)?;
        axis = axis.max((d - ((1.0 + r) / (1.0 - r)).ln()).abs());
    }
    checks.push(Check::at_most("model_axis_closed_form", axis, 1e-9));

    let mut limit: f64 = 0.0;
    let big_o = hyperboloid(form, o)?;
    for _ in 0..20 {
        let xi = chart.sample_boundary(&mut rng);
        let x = chart.sample_interior(&mut rng, 0.9);
        let c = -form.apply(xi.coords(), &big_o);
        let u = xi.coords() / c - &big_o;
        let t: f64 = 40.0;
        let ct = &big_o * (t / 2.0).cosh() + &u * (t / 2.0).sinh();
        let big_x = hyperboloid(form, x.coords())?;
        let d = 2.0 * (-form.apply(&ct, &big_x)).max(1.0).acosh();
        limit = limit.max((hilbert::busemann(chart, xi.coords(), x.coords())? - (d - t)).abs());
    }
    checks.push(Check::at_most("busemann_limit_t40", limit, 1e-6));

    let ball = gens.enumerate_ball(config.depth.min(6), config.max_elements, config.execution)?;
    checks.push(
        Check::above(
            "dirichlet_margin",
            dirichlet_margin(system, &mut rng, &ball, 100, config)?,
            0.0,
        )
        .with_detail(format!("100 points of K, {} elements", ball.len() - 1)),
    );
    Ok(checks)
}

fn quantize(m: &DMatrix<f64>) -> Vec<i64> {
    m.iter().map(|x| (x * 1e6).round() as i64).collect()
}

/// Counts per length by breadth-first search over matrices, deduplicated by
/// a quantized-matrix hash.
pub fn matrix_dedup_counts(gens: &Generators, depth: usize) -> Vec<usize> {
    let n = gens.rank();
    let refl: Vec<DMatrix<f64>> = (0..n).map(|s| reflection_matrix(gens.form(), s)).collect();
    let id = DMatrix::<f64>::identity(n, n);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(quantize(&id));
    let mut frontier = vec![id];
    let mut counts = vec![1];
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &frontier {
            for r in &refl {
                let p = m * r;
                if seen.insert(quantize(&p)) {
                    next.push(p);
                }
            }
        }
        counts.push(next.len());
        frontier = next;
    }
    counts
}

/// The same system with its generators listed in reverse order.
fn reversed(matrix: &CoxeterMatrix) -> Result<CoxeterMatrix> {
    let n = matrix.rank();
    let mut out = CoxeterMatrix::new(n)?;
    for i in 0..n {
        for j in i + 1..n {
            out.set(n - 1 - i, n - 1 - j, matrix.edge(i, j))?;
        }
    }
    Ok(out)
}

/// `C(k) = max(2 log ℓ(w) − d(o, w·o))` over the ball of radius `k`, for
/// every `k` up to the ball depth.
pub fn deficit_by_depth(
    system: &System,
    ball: &CayleyBall,
    config: &RunConfig,
) -> Result<Vec<f64>> {
    let chart = system.chart();
    let o = chart.base_point();
    let mut c = Vec::with_capacity(ball.levels.len());
    let mut running = f64::NEG_INFINITY;
    for (len, level) in ball.levels.iter().enumerate() {
        if len > 0 {
            let deficits = exec::map(config.execution, level, |w| -> Result<f64> {
                let d = hilbert::hilbert_distance(chart, &o, &chart.act(w, &o)?)?;
                Ok(2.0 * (len as f64).ln() - d)
            });
            for v in deficits {
                running = running.max(v?);
            }
        }
        c.push(running);
    }
    Ok(c)
}

fn words(system: &System, config: &RunConfig) -> Result<Vec<Check>> {
    let gens = system.generators();
    let n = system.rank();
    let depth = config.depth;
    let mut checks = Vec::new();
    let ball = gens.enumerate_ball(depth, config.max_elements, config.execution)?;

    let oracle_depth = depth.min(6);
    let oracle = matrix_dedup_counts(gens, oracle_depth);
    let counts = ball.counts();
    checks.push(
        Check::holds(
            "ball_counts_match_matrix_oracle",
            oracle[..] == counts[..=oracle_depth],
        )
        .with_detail(format!("{:?}", &counts[..=oracle_depth])),
    );

    let rev = reversed(system.matrix())?;
    let rev_gens = Generators::new(&build_form(&rev)?, *system.tolerances());
    let rev_counts = rev_gens
        .enumerate_ball(depth, config.max_elements, config.execution)?
        .counts();
    checks.push(Check::holds(
        "counts_invariant_under_relabeling",
        rev_counts == counts,
    ));

    // Every element of the ball must have a distinct matrix.
    let mut by_matrix: HashMap<Vec<i64>, usize> = HashMap::new();
    for w in ball.iter() {
        by_matrix.insert(quantize(w.matrix()), w.length());
    }
    checks.push(Check::holds(
        "ball_elements_distinct",
        by_matrix.len() == ball.len(),
    ));

    // Exchange: ℓ(ws) = ℓ(w) ± 1, with the sign given by the descent test.
    let inner: Vec<_> = ball.iter().filter(|w| w.length() < depth).collect();
    let verdicts = exec::map(config.execution, &inner, |w| -> (usize, usize) {
        let mut bad = 0;
        let mut ambiguous = 0;
        for s in 0..n {
            match gens.is_descent(w, s, Side::Right) {
                Ok(desc) => {
                    let ws = gens.right_mul(w, s);
                    let expected = if desc { w.length() - 1 } else { w.length() + 1 };
                    if by_matrix.get(&quantize(ws.matrix())) != Some(&expected) {
                        bad += 1;
                    }
                }
                Err(_) => ambiguous += 1,
            }
        }
        (bad, ambiguous)
    });
    let (bad, ambiguous) = verdicts
        .iter()
        .fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    checks.push(Check::at_most(
        "exchange_consistency_violations",
        bad as f64,
        0.0,
    ));
    checks.push(Check::at_most(
        "root_sign_dichotomy_violations",
        ambiguous as f64,
        0.0,
    ));

    let mut rng = rng_for(config, 1);
    let mut reduce_bad = 0;
    let mut residual: f64 = 0.0;
    for _ in 0..100 {
        let word: Vec<usize> = (0..30).map(|_| rng.random_range(0..n)).collect();
        let w = gens.reduce_word(&word)?;
        let raw = gens.product(&word);
        let scale = raw.matrix().amax().max(1.0);
        residual = residual.max((w.matrix() - raw.matrix()).amax() / scale);
        if w.length() <= depth && by_matrix.get(&quantize(w.matrix())) != Some(&w.length()) {
            reduce_bad += 1;
        }
        if gens.reduce_word(w.word())?.word() != w.word() {
            reduce_bad += 1;
        }
    }
    checks.push(Check::at_most(
        "reduce_word_relative_residual",
        residual,
        1e-8,
    ));
    checks.push(Check::at_most(
        "reduce_word_length_mismatches",
        reduce_bad as f64,
        0.0,
    ));

    let c = deficit_by_depth(system, &ball, config)?;
    let c_final = *c.last().expect("nonempty");
    checks.push(
        Check::finite("log_length_deficit", c_final).with_detail(format!("C by depth {c:?}")),
    );
    if depth >= 6 {
        checks.push(Check::at_most("deficit_stability", c_final - c[6], 0.5));
    }
    Ok(checks)
}

fn cusps(system: &System, config: &RunConfig) -> Result<Vec<Check>> {
    let chart = system.chart();
    let form = system.form();
    let gens = system.generators();
    let mut checks = Vec::new();
    let class = classify_action(system)?;
    checks.push(Check::holds("classification", true).with_detail(format!(
        "{} ({}), {} cusps",
        class.case,
        class.case.numeral(),
        class.cusps.len()
    )));
    let cusps = compute_cusps(system)?;
    let mut rng = rng_for(config, 2);

    let mut fixed: f64 = 0.0;
    let mut null: f64 = 0.0;
    let mut separation = f64::INFINITY;
    let ball6 = gens.enumerate_ball(6, config.max_elements, config.execution)?;
    for c in &cusps {
        null = null.max(chart.quadratic(c.point.coords()).abs());
        for &s in &c.delta_prime {
            let moved = chart.act(&gens.product(&[s]), &c.point)?;
            fixed = fixed.max(moved.euclid(&c.point));
        }
        for w in ball6.iter() {
            if w.word().iter().all(|s| c.delta_prime.contains(s)) {
                continue;
            }
            let wp = chart.act(w, &c.point)?;
            let off = (0..system.rank())
                .filter(|i| !c.delta_prime.contains(i))
                .map(|i| wp.coords()[i].abs())
                .fold(0.0, f64::max);
            separation = separation.min(off);
        }
        if c.delta_prime.len() >= 2 {
            let t = isometry_type(system, &gens.product(&c.delta_prime), None)?;
            let ok = t.kind == IsometryKind::Parabolic
                && t.fixed_points
                    .first()
                    .is_some_and(|p| p.euclid(&c.point) <= 1e-8);
            checks.push(
                Check::holds(
                    &format!("coxeter_element_parabolic_{}", subset_tag(&c.delta_prime)),
                    ok,
                )
                .with_detail(format!(
                    "{} with spectral radius {:.17}",
                    t.kind, t.spectral_radius
                )),
            );
        }
    }
    if cusps.is_empty() {
        checks.push(Check::holds("no_cusps", class.affine.is_empty()));
    } else {
        checks.push(Check::at_most("cusp_isotropic", null, 1e-10));
        checks.push(Check::at_most("cusp_fixed_by_affine_subgroup", fixed, 1e-9));
        checks.push(Check::above(
            "cusp_moved_outside_stabilizer",
            separation,
            1e-9,
        ));
    }

    let ts = TruncatedSpace::build(system, &cusps, config)?;
    let images = ts.images();
    if !cusps.is_empty() {
        checks.push(
            Check::above("horoball_level_admissible", -ts.level(), ts.face_radius())
                .with_detail(format!("level {:.17}, {} images", ts.level(), images.len())),
        );
        let sep =
            hilbert::min_separation(form, images, config.execution).map_or(f64::INFINITY, |m| m.0);
        checks.push(Check::at_least("horoball_pairwise_separation", sep, 2.0));
        checks.push(Check::holds(
            "horoball_disjoint_on_samples",
            horosphere_overlaps(system, &ts, 1000, config)? == 0,
        ));
        let (mismatch, invariance) = equivariance(system, &ts, &mut rng, config)?;
        checks.push(Check::at_most(
            "horoball_equivariance_mismatches",
            mismatch as f64,
            0.0,
        ));
        checks.push(Check::at_most(
            "truncated_space_invariance_violations",
            invariance as f64,
            0.0,
        ));
        let (pairs, worst) = crossing_pairs(system, &ts, &mut rng, 100)?;
        checks.push(
            Check::at_most("log_truncated_distance_bound", worst, 0.0)
                .with_detail(format!("max 2 log d′ − d over {pairs} crossing pairs")),
        );
        checks.push(Check::at_least("crossing_pairs_found", pairs as f64, 100.0));
    }

    let ball = gens.enumerate_ball(config.depth, config.max_elements, config.execution)?;
    let q = quasi_isometry_report(system, &ball, &ts, config.execution)?;
    checks.push(Check::above("quasi_isometry_l", q.l, 0.0));
    checks.push(Check::at_most(
        "quasi_isometry_l_prime",
        q.l_prime,
        q.l_prime_bound + 1e-12,
    ));
    checks.push(Check::finite("deficit_constant", q.c).with_detail(format!(
        "P estimate {:.17}, {} crossing chords",
        q.p_estimate, q.crossing
    )));
    Ok(checks)
}

fn subset_tag(subset: &[usize]) -> String {
    subset
        .iter()
        .map(|s| (s + 1).to_string())
        .collect::<Vec<_>>()
        .join("")
}

/// Number of sampled horosphere points of each image that fall strictly
/// inside another image.
pub fn horosphere_overlaps(
    system: &System,
    ts: &TruncatedSpace,
    per_ball: usize,
    config: &RunConfig,
) -> Result<usize> {
    let chart = system.chart();
    let form = system.form();
    let images = ts.images();
    // Covectors `B h_j`, so each membership test is one dot product.
    let covectors: Vec<DVector<f64>> = images
        .iter()
        .map(|img| form.gram() * img.ball.null_vector())
        .collect();
    let counts = exec::map_range(config.execution, images.len(), |i| -> Result<usize> {
        let mut rng = rng_for(config, 1000 + i as u64);
        let samples = images[i]
            .ball
            .horosphere_samples(chart, &mut rng, per_ball, 4.0)?;
        let mut bad = 0;
        for x in &samples {
            for (j, g) in covectors.iter().enumerate() {
                if j != i && -g.dot(x) < 1.0 - 1e-9 {
                    bad += 1;
                }
            }
        }
        Ok(bad)
    });
    counts.into_iter().try_fold(0, |acc, c| Ok(acc + c?))
}

/// Points near the horosphere of `ball`, on both sides of it.
fn near_horosphere<R: Rng + ?Sized>(
    system: &System,
    ball: &hilbert::Horoball,
    rng: &mut R,
    count: usize,
) -> Result<Vec<ChartPoint>> {
    let chart = system.chart();
    ball.horosphere_samples(chart, rng, count, 3.0)?
        .into_iter()
        .map(|x| {
            let t = rng.random_range(-0.4..0.4);
            chart.normalize(&(x + ball.null_vector() * t))
        })
        .collect()
}

/// Membership disagreements for `x ∈ O` versus `w·x ∈ w·O` with `|w| <= 4`,
/// and sampled points of `D″` whose generator images land in an image of
/// the shorter orbit.
fn equivariance<R: Rng + ?Sized>(
    system: &System,
    ts: &TruncatedSpace,
    rng: &mut R,
    config: &RunConfig,
) -> Result<(usize, usize)> {
    let chart = system.chart();
    let gens = system.generators();
    let ball = gens.enumerate_ball(4, config.max_elements, config.execution)?;
    let mut mismatch = 0;
    let depth_margin = |b: &hilbert::Horoball, x: &ChartPoint| -> Result<f64> {
        Ok(b.depth_coordinate(chart.form(), x.coords())? - 1.0)
    };
    let bases: Vec<_> = ts
        .images()
        .iter()
        .filter(|img| img.word.is_empty())
        .collect();
    for base in &bases {
        let samples = near_horosphere(system, &base.ball, rng, 1000)?;
        for w in ball.iter() {
            let image = base.ball.image(chart, w)?;
            for x in &samples {
                let a = depth_margin(&base.ball, x)?;
                let b = depth_margin(&image, &chart.act(w, x)?)?;
                if a.abs() > 1e-9 && (a < 0.0) != (b < 0.0) {
                    mismatch += 1;
                }
            }
        }
    }

    let shorter: Vec<_> = ts
        .images()
        .iter()
        .filter(|img| img.word.len() < ts.depth())
        .collect();
    let mut violations = 0;
    let mut tested = 0;
    while tested < 1000 {
        let x = chart.sample_interior(rng, 0.99);
        if !ts.contains(&x)? {
            continue;
        }
        tested += 1;
        for s in 0..system.rank() {
            let y = chart.act(&gens.product(&[s]), &x)?;
            if shorter
                .iter()
                .any(|img| img.ball.contains(chart, &y).unwrap_or(true))
            {
                violations += 1;
            }
        }
    }
    Ok((mismatch, violations))
}

/// Pairs of points of `D″` just outside an image on opposite sides, so
/// that the chord between them crosses it. Returns the number of pairs and
/// the largest `2 log d′ − d`.
pub fn crossing_pairs<R: Rng + ?Sized>(
    system: &System,
    ts: &TruncatedSpace,
    rng: &mut R,
    wanted: usize,
) -> Result<(usize, f64)> {
    let chart = system.chart();
    let form = system.form();
    let images = ts.images();
    let mut found = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut attempts = 0;
    while found < wanted && attempts < 100 * wanted && !images.is_empty() {
        attempts += 1;
        let img = &images[rng.random_range(0..images.len())];
        let h = img.ball.null_vector();
        let pts = img.ball.horosphere_samples(chart, rng, 2, 3.0)?;
        let push = rng.random_range(0.01..0.3);
        let ends: Vec<ChartPoint> = pts
            .iter()
            .map(|x| chart.normalize(&(x - h * push)))
            .collect::<Result<_>>()?;
        let (x, y) = (&ends[0], &ends[1]);
        if !ts.contains(x)? || !ts.contains(y)? {
            continue;
        }
        let Some((t1, t2)) = img.ball.chord_interval(form, x.coords(), y.coords()) else {
            continue;
        };
        if t1 <= 0.0 || t2 >= 1.0 {
            continue;
        }
        let d = hilbert::hilbert_distance(chart, x, y)?;
        let dp = crate::limits::truncated_distance(ts, x, y)?;
        worst = worst.max(2.0 * dp.ln() - d);
        found += 1;
    }
    Ok((found, worst))
}

fn ct(system: &System, config: &RunConfig) -> Result<Vec<Check>> {
    let opts = CtOptions {
        trials: config.ct_trials,
        word_length: config.ct_word_length,
        seed: config.seed,
        execution: config.execution,
        ..CtOptions::default()
    };
    let report = ct_verify(system, &opts)?;
    let mut checks = Vec::new();
    for (i, r) in report.rays.iter().enumerate() {
        checks.push(
            Check::at_most(
                &format!("ray_{i}_tail_diameter"),
                r.tail_diameter,
                opts.tail_tol,
            )
            .with_detail(crate::words::format_word(&r.word)),
        );
        checks.push(Check::at_most(
            &format!("ray_{i}_interleaved_gap"),
            r.coherence,
            opts.coherence_tol,
        ));
    }
    for w in &report.witnesses {
        let tag = format!("{}{}", w.pair.0 + 1, w.pair.1 + 1);
        checks.push(Check::at_most(
            &format!("cusp_{tag}_limit_gap"),
            w.limit_gap,
            opts.witness_tol,
        ));
        checks.push(Check::at_most(
            &format!("cusp_{tag}_cusp_gap"),
            w.cusp_gap,
            opts.witness_tol,
        ));
        let g = w.word_gromov.iter().fold(0.0, |a: f64, &b| a.max(b.abs()));
        checks.push(
            Check::at_most(&format!("cusp_{tag}_word_gromov_product"), g, 0.0)
                .with_detail(format!("powers {:?}", w.powers)),
        );
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::config::Tolerances;

    fn system(m: CoxeterMatrix) -> System {
        System::new(m, Tolerances::default()).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("geom".parse::<Suite>().is_err());
    }

    #[test]
    fn check_bounds() {
        assert!(Check::at_most("a", 1.0, 1.0).passed);
        assert!(!Check::above("a", 0.0, 0.0).passed);
        assert!(!Check::at_most("a", f64::NAN, 1.0).passed);
        assert!(!Check::holds("a", false).passed);
    }

    #[test]
    fn dedup_oracle_on_finite_dihedral() {
        let s = catalog::dihedral(4);
        let g = Generators::new(&build_form(&s).unwrap(), Tolerances::default());
        assert_eq!(matrix_dedup_counts(&g, 6), vec![1, 2, 2, 2, 1, 0, 0]);
    }

    #[test]
    fn reversal_keeps_labels() {
        let m = catalog::tetrahedron_535();
        let r = reversed(&m).unwrap();
        assert_eq!(r.edge(3, 2), m.edge(0, 1));
        assert_eq!(r.edge(2, 1), m.edge(1, 2));
    }

    #[test]
    fn words_suite_passes_on_334() {
        let s = system(catalog::triangle_334());
        let r = run_suite(&s, Suite::Words, &RunConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
