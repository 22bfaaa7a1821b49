//! `D″ = D′ \ W·O` with its path metric `d′`, and the metric comparisons
//! between word length, `d` and `d′`.

use crate::chart::{Chart, ChartPoint};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::hilbert::{self, hyperboloid, HoroballImage};
use crate::limits::cusps::CuspPoint;
use crate::system::System;
use crate::words::CayleyBall;

#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    chart: Chart,
    level: f64,
    depth: usize,
    face_radius: f64,
    images: Vec<HoroballImage>,
}

impl TruncatedSpace {
    /// Horoballs at every cusp and their images over `|w| <= horoball_depth`,
    /// at `config.horoball_level` or at the searched level.
    pub fn build(system: &System, cusps: &[CuspPoint], config: &RunConfig) -> Result<Self> {
        let chart = system.chart();
        let face_radius = hilbert::face_radius(chart)?;
        if cusps.is_empty() {
            return Ok(Self {
                chart: chart.clone(),
                level: config.horoball_level.unwrap_or(0.0),
                depth: config.horoball_depth,
                face_radius,
                images: Vec::new(),
            });
        }
        let points: Vec<ChartPoint> = cusps.iter().map(|c| c.point.clone()).collect();
        let ball = system.generators().enumerate_ball(
            config.horoball_depth,
            config.max_elements,
            config.execution,
        )?;
        let (level, images) = match config.horoball_level {
            Some(k) => {
                let images = hilbert::horoball_orbit(
                    chart,
                    system.generators(),
                    &points,
                    k,
                    &ball,
                    config.execution,
                )?;
                (k, images)
            }
            None => {
                let found = hilbert::horoball_level_search(
                    chart,
                    system.generators(),
                    &points,
                    &ball,
                    config.execution,
                )?;
                (found.level, found.images)
            }
        };
        Ok(Self {
            chart: chart.clone(),
            level,
            depth: config.horoball_depth,
            face_radius,
            images,
        })
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn face_radius(&self) -> f64 {
        self.face_radius
    }

    pub fn images(&self) -> &[HoroballImage] {
        &self.images
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Index of an enumerated horoball containing `x`.
    pub fn horoball_containing(&self, x: &ChartPoint) -> Result<Option<usize>> {
        let big_x = hyperboloid(self.chart.form(), x.coords())?;
        Ok(self
            .images
            .iter()
            .position(|img| -self.chart.form().apply(img.ball.null_vector(), &big_x) < 1.0))
    }

    /// `x ∈ D` and outside every enumerated horoball.
    pub fn contains(&self, x: &ChartPoint) -> Result<bool> {
        if !self.chart.in_domain(x) {
            return Ok(false);
        }
        Ok(self.horoball_containing(x)?.is_none())
    }
}

/// One round of path surgery on the chord `[x, y]`: each subsegment inside a
/// horoball, of Hilbert length `s`, is replaced by the horospherical arc
/// between its ends, of length `4 sinh(s/4)`. The arcs stay on horospheres
/// of pairwise disjoint balls, so no further round changes the path.
pub fn truncated_distance(ts: &TruncatedSpace, x: &ChartPoint, y: &ChartPoint) -> Result<f64> {
    let chart = &ts.chart;
    let d = hilbert::hilbert_distance(chart, x, y)?;
    for p in [x, y] {
        if let Some(i) = ts.horoball_containing(p)? {
            return Err(Error::Domain(format!(
                "endpoint lies inside horoball {i} (word {})",
                crate::words::format_word(&ts.images[i].word)
            )));
        }
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    let form = chart.form();
    let dir = y.coords() - x.coords();
    let mut total = d;
    for img in &ts.images {
        let Some((t1, t2)) = img.ball.chord_interval(form, x.coords(), y.coords()) else {
            continue;
        };
        let (a, b) = (t1.max(0.0), t2.min(1.0));
        if b <= a {
            continue;
        }
        let p = ChartPoint(x.coords() + &dir * a);
        let q = ChartPoint(x.coords() + &dir * b);
        let s = hilbert::hilbert_distance(chart, &p, &q)?;
        total += 4.0 * (s / 4.0).sinh() - s;
    }
    Ok(total)
}

/// Empirical constants relating `ℓ(w)`, `d(o, w·o)` and `d′(o, w·o)`.
#[derive(Clone, Debug)]
pub struct QuasiIsometryReport {
    pub depth: usize,
    pub elements: usize,
    /// `min d′(o,w·o) / ℓ(w)`.
    pub l: f64,
    /// `max d′(o,w·o) / ℓ(w)`.
    pub l_prime: f64,
    /// `max_s d′(o, s·o)`, an upper bound for `l′`.
    pub l_prime_bound: f64,
    /// `C = max(2 log ℓ(w) − d(o,w·o))`.
    pub c: f64,
    /// `c_by_depth[k]` is `C` over the ball of radius `k`.
    pub c_by_depth: Vec<f64>,
    /// Largest Hilbert distance from a vertex of the sequence path of `w`
    /// to the segment `[o, w·o]`.
    pub p_estimate: f64,
    /// Elements whose chord from `o` crosses a horoball.
    pub crossing: usize,
}

struct ElementStats {
    length: usize,
    d: f64,
    d_prime: f64,
    path_gap: f64,
}

/// Hilbert distance from `x` to the segment `[a, b]`, via the B-orthogonal
/// projection onto the plane spanned by `a` and `b`.
fn distance_to_segment(
    chart: &Chart,
    x: &ChartPoint,
    a: &ChartPoint,
    b: &ChartPoint,
) -> Result<f64> {
    let form = chart.form();
    let xh = hyperboloid(form, x.coords())?;
    let ah = hyperboloid(form, a.coords())?;
    let bh = hyperboloid(form, b.coords())?;
    let gab = form.apply(&ah, &bh);
    let det = -1.0 - gab * gab;
    if det.abs() < 1e-300 || (ah.clone() - &bh).amax() < 1e-15 {
        return hilbert::hilbert_distance(chart, x, a);
    }
    let ra = form.apply(&xh, &ah);
    let rb = form.apply(&xh, &bh);
    // Gram matrix [[-1, gab], [gab, -1]].
    let ca = (-ra - gab * rb) / det;
    let cb = (-rb - gab * ra) / det;
    if ca >= 0.0 && cb >= 0.0 {
        let p = &ah * ca + &bh * cb;
        let qp = form.quadratic(&p);
        Ok(2.0 * (-qp).max(1.0).sqrt().acosh())
    } else {
        Ok(hilbert::hilbert_distance(chart, x, a)?.min(hilbert::hilbert_distance(chart, x, b)?))
    }
}

pub fn quasi_isometry_report(
    system: &System,
    ball: &CayleyBall,
    ts: &TruncatedSpace,
    exec: Execution,
) -> Result<QuasiIsometryReport> {
    let chart = system.chart();
    let gens = system.generators();
    let o = chart.base_point();
    let elements: Vec<_> = ball.iter().filter(|w| !w.is_identity()).collect();
    let stats = exec::map(exec, &elements, |w| -> Result<ElementStats> {
        let wo = chart.act(w, &o)?;
        let d = hilbert::hilbert_distance(chart, &o, &wo)?;
        let d_prime = truncated_distance(ts, &o, &wo)?;
        let mut path_gap: f64 = 0.0;
        let mut prefix = gens.identity();
        for &s in &w.word()[..w.length() - 1] {
            prefix = gens.right_mul(&prefix, s);
            let v = chart.act(&prefix, &o)?;
            path_gap = path_gap.max(distance_to_segment(chart, &v, &o, &wo)?);
        }
        Ok(ElementStats {
            length: w.length(),
            d,
            d_prime,
            path_gap,
        })
    });
    let stats: Vec<ElementStats> = stats.into_iter().collect::<Result<_>>()?;

    let mut l = f64::INFINITY;
    let mut l_prime: f64 = 0.0;
    let mut l_prime_bound: f64 = 0.0;
    let mut p_estimate: f64 = 0.0;
    let mut crossing = 0;
    let mut c_at = vec![f64::NEG_INFINITY; ball.depth + 1];
    for s in &stats {
        let ratio = s.d_prime / s.length as f64;
        l = l.min(ratio);
        l_prime = l_prime.max(ratio);
        if s.length == 1 {
            l_prime_bound = l_prime_bound.max(s.d_prime);
        }
        if s.d_prime > s.d + 1e-12 {
            crossing += 1;
        }
        p_estimate = p_estimate.max(s.path_gap);
        let deficit = 2.0 * (s.length as f64).ln() - s.d;
        c_at[s.length] = c_at[s.length].max(deficit);
    }
    let mut c_by_depth = Vec::with_capacity(c_at.len());
    let mut running = f64::NEG_INFINITY;
    for v in c_at {
        running = running.max(v);
        c_by_depth.push(running);
    }
    Ok(QuasiIsometryReport {
        depth: ball.depth,
        elements: stats.len(),
        l,
        l_prime,
        l_prime_bound,
        c: *c_by_depth.last().unwrap_or(&f64::NEG_INFINITY),
        c_by_depth,
        p_estimate,
        crossing,
    })
}
