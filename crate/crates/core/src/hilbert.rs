//! Hilbert-metric geometry of `D`, horoballs and the horoball level search.
//!
//! Distances follow the log cross-ratio convention, which is twice the
//! hyperbolic distance of the hyperboloid model of `B`. Formulas borrowed
//! from the hyperboloid carry that factor explicitly.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::chart::{Chart, ChartPoint};
use crate::coxsys::BilinearForm;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::words::{CayleyBall, Generators, GroupElement, Side};

/// Endpoints of the chord through `x` and `y`, as affine parameters on
/// `x + t (y - x)` with `t_a < 0 < 1 < t_b`.
#[derive(Clone, Debug)]
pub struct Chord {
    pub t_a: f64,
    pub t_b: f64,
    pub a: ChartPoint,
    pub b: ChartPoint,
}

fn require_interior(chart: &Chart, x: &ChartPoint) -> Result<f64> {
    let q = chart.quadratic(x.coords());
    if q < 0.0 {
        Ok(q)
    } else {
        Err(Error::Domain(format!("q(x) = {q:.3e} is not negative")))
    }
}

/// Roots of `q(x + t d) = q(x) + 2 t B(x,d) + t² q(d)` in ascending order.
/// Requires `q(x) < 0 < q(d)`.
fn line_roots(qx: f64, bxd: f64, qd: f64) -> (f64, f64) {
    let disc = (bxd * bxd - qx * qd).max(0.0).sqrt();
    let r1 = if bxd >= 0.0 {
        (-bxd - disc) / qd
    } else {
        (-bxd + disc) / qd
    };
    let r2 = qx / (qd * r1);
    if r1 < r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

pub fn boundary_chord(chart: &Chart, x: &ChartPoint, y: &ChartPoint) -> Result<Chord> {
    let qx = require_interior(chart, x)?;
    require_interior(chart, y)?;
    let d = y.coords() - x.coords();
    if d.amax() == 0.0 {
        return Err(Error::DegenerateChord);
    }
    let form = chart.form();
    let qd = form.quadratic(&d);
    let bxd = form.apply(x.coords(), &d);
    let (t_a, t_b) = line_roots(qx, bxd, qd);
    Ok(Chord {
        t_a,
        t_b,
        a: ChartPoint(x.coords() + &d * t_a),
        b: ChartPoint(x.coords() + &d * t_b),
    })
}

/// `d(x,y) = log [a,x,y,b]`, evaluated as `2 asinh √(Δ / (q(x) q(y)))` where
/// `Δ = B(x,d)² − q(x) q(d)` is the discriminant of the chord. Unlike the
/// cross-ratio this keeps full relative precision near `∂D`.
pub fn hilbert_distance(chart: &Chart, x: &ChartPoint, y: &ChartPoint) -> Result<f64> {
    let qx = require_interior(chart, x)?;
    let qy = require_interior(chart, y)?;
    let d = y.coords() - x.coords();
    let form = chart.form();
    let bxd = form.apply(x.coords(), &d);
    let delta = (bxd * bxd - qx * form.quadratic(&d)).max(0.0);
    Ok(2.0 * (delta / (qx * qy)).sqrt().asinh())
}

/// The literal log cross-ratio `log((|y−a||x−b|) / (|y−b||x−a|))`.
pub fn cross_ratio_distance(chart: &Chart, x: &ChartPoint, y: &ChartPoint) -> Result<f64> {
    if x == y {
        require_interior(chart, x)?;
        return Ok(0.0);
    }
    let c = boundary_chord(chart, x, y)?;
    Ok(((1.0 - c.t_a) * c.t_b / ((c.t_b - 1.0) * -c.t_a)).ln())
}

/// `(x|y)_base = (d(base,x) + d(base,y) − d(x,y)) / 2`.
pub fn gromov_product(
    chart: &Chart,
    x: &ChartPoint,
    y: &ChartPoint,
    base: &ChartPoint,
) -> Result<f64> {
    let dx = hilbert_distance(chart, base, x)?;
    let dy = hilbert_distance(chart, base, y)?;
    let dxy = hilbert_distance(chart, x, y)?;
    Ok((dx + dy - dxy) / 2.0)
}

/// Unit-norm representative `X = x / √(−q(x))` on the hyperboloid.
pub fn hyperboloid(form: &BilinearForm, x: &DVector<f64>) -> Result<DVector<f64>> {
    let q = form.quadratic(x);
    if q >= 0.0 {
        return Err(Error::Domain(format!("q = {q:.3e} is not negative")));
    }
    Ok(x / (-q).sqrt())
}

/// Point at distance `t` from `x` on the geodesic ray towards `xi ∈ ∂D`.
pub fn ray_point(chart: &Chart, x: &ChartPoint, xi: &ChartPoint, t: f64) -> Result<ChartPoint> {
    let form = chart.form();
    let big_x = hyperboloid(form, x.coords())?;
    let c = -form.apply(xi.coords(), &big_x);
    if c <= 0.0 {
        return Err(Error::Domain(
            "ideal point is not in the future cone".into(),
        ));
    }
    let u = xi.coords() / c - &big_x;
    let s = t / 2.0;
    chart.normalize(&(big_x * s.cosh() + u * s.sinh()))
}

/// Point at distance `t` from `x` along the chord towards `y`.
pub fn geodesic_point(chart: &Chart, x: &ChartPoint, y: &ChartPoint, t: f64) -> Result<ChartPoint> {
    let c = boundary_chord(chart, x, y)?;
    ray_point(chart, x, &c.b, t)
}

fn require_ideal(chart: &Chart, xi: &DVector<f64>) -> Result<()> {
    let q = chart.quadratic(xi);
    let tol = chart.tolerances().boundary.max(1e-9 * xi.norm_squared());
    if q.abs() > tol {
        return Err(Error::Domain(format!("ideal point has q = {q:.3e}")));
    }
    Ok(())
}

/// Busemann function of `xi ∈ ∂D` normalized by `b(o) = 0`:
/// `b(x) = 2 log(−B(ξ,x)) − log(−q(x)) − [same at o]`. Both arguments may be
/// arbitrary positive multiples.
pub fn busemann(chart: &Chart, xi: &DVector<f64>, x: &DVector<f64>) -> Result<f64> {
    require_ideal(chart, xi)?;
    let form = chart.form();
    let qx = form.quadratic(x);
    if qx >= 0.0 {
        return Err(Error::Domain(format!("q(x) = {qx:.3e} is not negative")));
    }
    let bx = -form.apply(xi, x);
    let bo = -form.apply(xi, chart.o());
    if bx <= 0.0 || bo <= 0.0 {
        return Err(Error::Domain(
            "ideal point is not in the future cone".into(),
        ));
    }
    Ok(2.0 * bx.ln() - (-qx).ln() - 2.0 * bo.ln() + (-chart.lambda()).ln())
}

/// The projective model map onto the Klein ball.
///
/// `L` holds unit eigenvectors of `B` (positive eigenvalues first), `Lp` the
/// scalings `1/√|λ_i|`, so `(L Lp)ᵀ B (L Lp) = A = diag(1,…,1,−1)`.
#[derive(Clone, Debug)]
pub struct ModelMap {
    l: DMatrix<f64>,
    lp: DVector<f64>,
}

impl ModelMap {
    pub fn new(chart: &Chart) -> Result<Self> {
        let b = chart.form().gram();
        let n = b.nrows();
        let eig = SymmetricEigen::new(b.clone());
        let mut order: Vec<usize> = (0..n).collect();
        // Descending, so the single negative eigenvalue comes last.
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        if !(eig.eigenvalues[order[n - 1]] < 0.0 && eig.eigenvalues[order[n - 2]] > 0.0) {
            let s = crate::coxsys::signature(chart.form(), chart.tolerances().zero);
            return Err(Error::UnsupportedSignature {
                pos: s.n_pos,
                neg: s.n_neg,
                zero: s.n_zero,
                expected: n - 1,
            });
        }
        let mut l = DMatrix::zeros(n, n);
        let mut lp = DVector::zeros(n);
        for (c, &k) in order.iter().enumerate() {
            l.set_column(c, &eig.eigenvectors.column(k));
            lp[c] = 1.0 / eig.eigenvalues[k].abs().sqrt();
        }
        let mut map = Self { l, lp };
        if map.forward(chart.o())[n - 1] < 0.0 {
            let flipped = -map.l.column(n - 1);
            map.l.set_column(n - 1, &flipped);
        }
        Ok(map)
    }

    pub fn l(&self) -> &DMatrix<f64> {
        &self.l
    }

    pub fn lp(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.lp)
    }

    pub fn a(&self) -> DMatrix<f64> {
        let n = self.lp.len();
        DMatrix::from_fn(n, n, |i, j| match (i == j, i + 1 == n) {
            (true, true) => -1.0,
            (true, false) => 1.0,
            _ => 0.0,
        })
    }

    /// `g(v) = Lp⁻¹ L⁻¹ v`.
    pub fn forward(&self, v: &DVector<f64>) -> DVector<f64> {
        let w = self.l.tr_mul(v);
        w.component_div(&self.lp)
    }

    /// `p(v) = v / v_n`, dropping the last coordinate.
    pub fn project(v: &DVector<f64>) -> DVector<f64> {
        let n = v.len();
        v.rows(0, n - 1) / v[n - 1]
    }

    pub fn to_ball(&self, x: &ChartPoint) -> DVector<f64> {
        Self::project(&self.forward(x.coords()))
    }

    /// Hilbert metric of the open unit ball, by the cross-ratio.
    pub fn ball_distance(z1: &DVector<f64>, z2: &DVector<f64>) -> f64 {
        let d = z2 - z1;
        let dd = d.norm_squared();
        if dd == 0.0 {
            return 0.0;
        }
        let b = z1.dot(&d);
        let c = z1.norm_squared() - 1.0;
        let (t_a, t_b) = line_roots(c, b, dd);
        ((1.0 - t_a) * t_b / ((t_b - 1.0) * -t_a)).ln()
    }

    /// `|d_D(x,y) − d_ball(p∘g(x), p∘g(y))|`.
    pub fn isometry_residual(&self, chart: &Chart, x: &ChartPoint, y: &ChartPoint) -> Result<f64> {
        let d = hilbert_distance(chart, x, y)?;
        let e = Self::ball_distance(&self.to_ball(x), &self.to_ball(y));
        Ok((d - e).abs())
    }
}

/// A horoball, stored as the future null vector `h` with
/// `O = {x : −B(h, X) < 1}` for `X` on the hyperboloid.
#[derive(Clone, Debug)]
pub struct Horoball {
    xi: ChartPoint,
    level: f64,
    h: DVector<f64>,
}

impl Horoball {
    /// The sublevel set `{b_ξ < level}` of the Busemann function based at `o`.
    pub fn new(chart: &Chart, xi: &ChartPoint, level: f64) -> Result<Self> {
        require_ideal(chart, xi.coords())?;
        let big_o = hyperboloid(chart.form(), chart.o())?;
        let c = -chart.form().apply(xi.coords(), &big_o);
        if c <= 0.0 {
            return Err(Error::Domain(
                "ideal point is not in the future cone".into(),
            ));
        }
        let h = xi.coords() / (c * (level / 2.0).exp());
        Ok(Self {
            xi: xi.clone(),
            level,
            h,
        })
    }

    fn from_null(chart: &Chart, h: DVector<f64>) -> Result<Self> {
        let big_o = hyperboloid(chart.form(), chart.o())?;
        let c = -chart.form().apply(&h, &big_o);
        Ok(Self {
            xi: chart.normalize(&h)?,
            level: -2.0 * c.ln(),
            h,
        })
    }

    pub fn xi(&self) -> &ChartPoint {
        &self.xi
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn null_vector(&self) -> &DVector<f64> {
        &self.h
    }

    /// `−B(h, X)`; below 1 inside, 1 on the horosphere.
    pub fn depth_coordinate(&self, form: &BilinearForm, x: &DVector<f64>) -> Result<f64> {
        let big_x = hyperboloid(form, x)?;
        Ok(-form.apply(&self.h, &big_x))
    }

    pub fn contains(&self, chart: &Chart, x: &ChartPoint) -> Result<bool> {
        Ok(self.depth_coordinate(chart.form(), x.coords())? < 1.0)
    }

    pub fn image(&self, chart: &Chart, w: &GroupElement) -> Result<Self> {
        Self::from_null(chart, w.matrix() * &self.h)
    }

    /// The same horoball centre at another level.
    pub fn at_level(&self, chart: &Chart, level: f64) -> Result<Self> {
        Self::new(chart, &self.xi, level)
    }

    /// `−B(h₁, h₂)`: the balls are disjoint iff this is at least 2, and their
    /// distance is `2 log(−B(h₁,h₂)/2)` when it is.
    pub fn separation(&self, form: &BilinearForm, other: &Horoball) -> f64 {
        -form.apply(&self.h, &other.h)
    }

    /// Hilbert distance from `o` to the horoball (negative if `o` is inside).
    pub fn distance_from_base(&self, chart: &Chart) -> Result<f64> {
        let big_o = hyperboloid(chart.form(), chart.o())?;
        Ok(2.0 * (-chart.form().apply(&self.h, &big_o)).ln())
    }

    /// Parameters `t` of `x + t(y − x)` inside the ball, as an open
    /// interval, or `None`.
    pub fn chord_interval(
        &self,
        form: &BilinearForm,
        x: &DVector<f64>,
        y: &DVector<f64>,
    ) -> Option<(f64, f64)> {
        chord_interval(form, &self.h, x, y)
    }

    /// Points of the horosphere, at most `radius` away from the point closest
    /// to `o` in horospherical distance (in the hyperbolic normalization),
    /// returned on the hyperboloid.
    pub fn horosphere_samples<R: rand::Rng + ?Sized>(
        &self,
        chart: &Chart,
        rng: &mut R,
        count: usize,
        radius: f64,
    ) -> Result<Vec<DVector<f64>>> {
        let form = chart.form();
        let n = form.rank();
        let big_o = hyperboloid(form, chart.o())?;
        let c = -form.apply(&self.h, &big_o);
        let u0 = &self.h / c - &big_o;
        let s = c.ln();
        let x0 = &big_o * s.cosh() + u0 * s.sinh();

        // B-orthonormal basis of {h, X0}^⊥, which is positive definite.
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n - 2);
        for k in 0..n {
            let mut v = DVector::zeros(n);
            v[k] = 1.0;
            // Solve B(v',h) = B(v',X0) = 0 with v' = v − a h − b X0, using
            // B(h,h) = 0, B(h,X0) = −1, B(X0,X0) = −1.
            let bh = form.apply(&v, &self.h);
            let bx = form.apply(&v, &x0);
            let b = -bh;
            let a = bh - bx;
            v -= &self.h * a + &x0 * b;
            for e in &basis {
                let p = form.apply(&v, e);
                v -= e * p;
            }
            let q = form.quadratic(&v);
            // The starting vector has unit length, so `q` is on an absolute scale.
            if q > 1e-8 && basis.len() < n - 2 {
                basis.push(v / q.sqrt());
            }
        }
        let m = basis.len();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let z: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
            let r2: f64 = z.iter().map(|c| c * c).sum();
            if r2 > 1.0 {
                continue;
            }
            let mut u = DVector::zeros(n);
            for (zi, e) in z.iter().zip(&basis) {
                u.axpy(zi * radius, e, 1.0);
            }
            let qu = form.quadratic(&u);
            out.push(&x0 + &u + &self.h * (qu / 2.0));
        }
        Ok(out)
    }
}

/// Roots in `t` of `(B(h,x) + t B(h,d))² + q(x + t d) < 0`, the condition for
/// `x + t d` to lie in the ball of null vector `h`.
fn chord_interval(
    form: &BilinearForm,
    h: &DVector<f64>,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> Option<(f64, f64)> {
    let d = y - x;
    let hx = form.apply(h, x);
    let hd = form.apply(h, &d);
    let a = hd * hd + form.quadratic(&d);
    let b = 2.0 * (hx * hd + form.apply(x, &d));
    let c = hx * hx + form.quadratic(x);
    if a <= 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let r1 = if b >= 0.0 {
        (-b - sq) / (2.0 * a)
    } else {
        (-b + sq) / (2.0 * a)
    };
    let r2 = c / (a * r1);
    Some(if r1 < r2 { (r1, r2) } else { (r2, r1) })
}

/// Simple reflections fixing `p`: those with `B(p, α_s) = 0`.
pub fn stabilizer(chart: &Chart, p: &ChartPoint) -> Vec<usize> {
    let form = chart.form();
    let scale = p.coords().amax();
    (0..form.rank())
        .filter(|&s| form.with_root(s, p.coords()).abs() <= 1e-9 * scale)
        .collect()
}

/// One horoball of the orbit `W · O`.
#[derive(Clone, Debug)]
pub struct HoroballImage {
    /// Index into the cusp list.
    pub cusp: usize,
    /// Minimal coset representative `w` with the image `w · O_p`.
    pub word: Vec<usize>,
    pub ball: Horoball,
}

/// Images `w · O_p` for every cusp `p` and every minimal representative `w`
/// of `W / Stab(p)` in the ball. Cusps lie in the closed fundamental chamber,
/// so distinct pairs `(p, w)` give distinct horoballs.
pub fn horoball_orbit(
    chart: &Chart,
    gens: &Generators,
    cusps: &[ChartPoint],
    level: f64,
    ball: &CayleyBall,
    exec: Execution,
) -> Result<Vec<HoroballImage>> {
    let elements = ball.elements();
    let mut out = Vec::new();
    for (ci, p) in cusps.iter().enumerate() {
        let base = Horoball::new(chart, p, level)?;
        let stab = stabilizer(chart, p);
        let images = exec::map(exec, &elements, |w| -> Result<Option<HoroballImage>> {
            for &s in &stab {
                if gens.is_descent(w, s, Side::Right)? {
                    return Ok(None);
                }
            }
            Ok(Some(HoroballImage {
                cusp: ci,
                word: w.word().to_vec(),
                ball: base.image(chart, w)?,
            }))
        });
        for img in images {
            if let Some(img) = img? {
                out.push(img);
            }
        }
    }
    Ok(out)
}

/// Smallest `−B(h_i, h_j)` over distinct pairs, with the pair.
pub fn min_separation(
    form: &BilinearForm,
    images: &[HoroballImage],
    exec: Execution,
) -> Option<(f64, usize, usize)> {
    let rows = exec::map_range(exec, images.len(), |i| {
        let mut best: Option<(f64, usize, usize)> = None;
        for j in i + 1..images.len() {
            let s = images[i].ball.separation(form, &images[j].ball);
            if best.is_none_or(|(b, _, _)| s < b) {
                best = Some((s, i, j));
            }
        }
        best
    });
    rows.into_iter()
        .flatten()
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// `max{d(o,[α,β]), d(o,P_α)}` over the faces that meet `D`; faces missing
/// `D` impose nothing on horoballs inside it.
pub fn face_radius(chart: &Chart) -> Result<f64> {
    let form = chart.form();
    let n = form.rank();
    let big_o = hyperboloid(form, chart.o())?;
    let binv = form
        .gram()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("bilinear form is singular".into()))?;
    let mut r: f64 = 0.0;
    for a in 0..n {
        // P_α = {v_α = 0} = {B(B⁻¹e_α, v) = 0}.
        let h: DVector<f64> = binv.column(a).into_owned();
        let qh = form.quadratic(&h);
        // A face tangent to D at a cusp does not meet D.
        if qh > chart.tolerances().zero * h.norm_squared() {
            r = r.max(2.0 * (big_o[a].abs() / qh.sqrt()).asinh());
        }
    }
    let g = form.gram();
    for a in 0..n {
        for b in a + 1..n {
            let det = g[(a, a)] * g[(b, b)] - g[(a, b)] * g[(a, b)];
            if det >= 0.0 {
                continue;
            }
            // B-orthogonal projection of O onto span{α, β}.
            let ra = form.with_root(a, &big_o);
            let rb = form.with_root(b, &big_o);
            let ca = (g[(b, b)] * ra - g[(a, b)] * rb) / det;
            let cb = (g[(a, a)] * rb - g[(a, b)] * ra) / det;
            let qp = ca * ca * g[(a, a)] + 2.0 * ca * cb * g[(a, b)] + cb * cb * g[(b, b)];
            if qp < 0.0 {
                r = r.max(2.0 * (-qp).sqrt().max(1.0).acosh());
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct LevelSearch {
    pub level: f64,
    pub face_radius: f64,
    /// Smallest pairwise `−B(h_i,h_j)` at the returned level (≥ 2).
    pub min_separation: f64,
    /// Each grid and bisection probe with its verdict.
    pub probes: Vec<(f64, bool)>,
    pub images: Vec<HoroballImage>,
}

/// Largest admissible level on the grid `−1, −2, −4, …` (down to `−2^20`),
/// refined by bisection against the previous rejected level. A level is
/// admissible when the enumerated images are pairwise disjoint, the cusp
/// horoballs miss `B(o, r)` for the face radius `r`, and `o` and the
/// segments `[o, s·o]` avoid every image.
pub fn horoball_level_search(
    chart: &Chart,
    gens: &Generators,
    cusps: &[ChartPoint],
    ball: &CayleyBall,
    exec: Execution,
) -> Result<LevelSearch> {
    let form = chart.form();
    let r = face_radius(chart)?;
    let unit = horoball_orbit(chart, gens, cusps, 0.0, ball, exec)?;
    let o = chart.base_point();
    let neighbours: Vec<ChartPoint> = (0..gens.rank())
        .map(|s| chart.act(&gens.product(&[s]), &o))
        .collect::<Result<_>>()?;
    let sep0 = min_separation(form, &unit, exec).map(|m| m.0);
    let big_o = hyperboloid(form, chart.o())?;

    // Every image scales as h_k = e^{−k/2} h_0.
    let admissible = |k: f64| -> bool {
        if -k <= r {
            return false;
        }
        if let Some(s) = sep0 {
            if (-k).exp() * s < 2.0 {
                return false;
            }
        }
        let scale = (-k / 2.0).exp();
        unit.iter().all(|img| {
            let h = img.ball.null_vector() * scale;
            -form.apply(&h, &big_o) >= 1.0
                && neighbours.iter().all(|y| {
                    chord_interval(form, &h, o.coords(), y.coords())
                        .is_none_or(|(t1, t2)| t2 <= 0.0 || t1 >= 1.0)
                })
        })
    };

    let mut probes = Vec::new();
    let mut rejected = 0.0;
    let mut accepted = None;
    for e in 0..=20 {
        let k = -(2f64.powi(e));
        let ok = admissible(k);
        probes.push((k, ok));
        if ok {
            accepted = Some(k);
            break;
        }
        rejected = k;
    }
    let Some(mut good) = accepted else {
        return Err(Error::SearchFailure(format!(
            "no admissible level down to k = -2^20 (face radius {r:.6}, \
             {} images, min unit separation {:?})",
            unit.len(),
            sep0
        )));
    };
    let mut bad = rejected;
    while bad - good > 1e-3 {
        let mid = 0.5 * (bad + good);
        let ok = admissible(mid);
        probes.push((mid, ok));
        if ok {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let images = unit
        .into_iter()
        .map(|img| {
            Ok(HoroballImage {
                ball: img.ball.at_level_shift(chart, good)?,
                ..img
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelSearch {
        level: good,
        face_radius: r,
        min_separation: sep0.map_or(f64::INFINITY, |s| (-good).exp() * s),
        probes,
        images,
    })
}

impl Horoball {
    /// The image horoball after moving every base level from 0 to `k`.
    fn at_level_shift(&self, chart: &Chart, k: f64) -> Result<Self> {
        Self::from_null(chart, &self.h * (-k / 2.0).exp())
    }
}
