//! The affine chart `V₁ = {v : Σ o_i v_i = 1}` and the normalized action.
//!
//! In the chart, `D = V₁ ∩ {q < 0}` is an open ellipsoid centred at the
//! Perron vector `o`, with principal axes along the eigenvectors of `B` for
//! the positive eigenvalues. [`Chart::from_ball`] and [`Chart::to_ball`] are
//! the affine identification of `D` with the open unit ball.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;

use crate::config::Tolerances;
use crate::coxsys::{perron_eigenvector, BilinearForm};
use crate::error::{Error, Result};
use crate::words::GroupElement;

/// A vector of simple-root coordinates with `|v|_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint(pub(crate) DVector<f64>);

impl ChartPoint {
    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Euclidean distance between chart coordinates.
    pub fn euclid(&self, other: &ChartPoint) -> f64 {
        (&self.0 - &other.0).norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `q < 0`: inside `D`.
    Interior,
    /// `|q| <= tol`: on `∂D`.
    Boundary,
    Exterior,
}

/// Where `D` pokes out of the simplex `conv(Δ̂)`.
#[derive(Clone, Debug)]
pub struct Protrusion {
    /// Minimum of each simple-root coordinate over the closure of `D`.
    pub min_coordinate: Vec<f64>,
    /// A boundary point with a negative coordinate when `R ≠ ∅`.
    pub witness: Option<ChartPoint>,
}

impl Protrusion {
    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }
}

/// Coordinates below this over `D̄` mean `R = D \ conv(Δ̂)` is nonempty.
const PROTRUSION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Chart {
    form: BilinearForm,
    o: DVector<f64>,
    lambda: f64,
    /// Eigenvectors for the positive eigenvalues, with semi-axis lengths.
    axes: Vec<(DVector<f64>, f64)>,
    positive_eigenvalues: Vec<f64>,
    tol: Tolerances,
}

impl Chart {
    pub fn new(form: &BilinearForm, tol: Tolerances) -> Result<Self> {
        let perron = perron_eigenvector(form, tol.zero)?;
        let eig = SymmetricEigen::new(form.gram().clone());
        let n = form.rank();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut axes = Vec::with_capacity(n - 1);
        let mut positive_eigenvalues = Vec::with_capacity(n - 1);
        for &k in &order[1..] {
            let l = eig.eigenvalues[k];
            let mut e: DVector<f64> = eig.eigenvectors.column(k).into_owned();
            // Orthogonalize against o explicitly to absorb eigen-solver noise.
            e -= &perron.vector * perron.vector.dot(&e);
            e /= e.norm();
            axes.push((e, (-perron.eigenvalue / l).sqrt()));
            positive_eigenvalues.push(l);
        }
        Ok(Self {
            form: form.clone(),
            o: perron.vector,
            lambda: perron.eigenvalue,
            axes,
            positive_eigenvalues,
            tol,
        })
    }

    pub fn rank(&self) -> usize {
        self.o.len()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// The Perron vector; also the base point and the centre of `D`.
    pub fn o(&self) -> &DVector<f64> {
        &self.o
    }

    pub fn base_point(&self) -> ChartPoint {
        ChartPoint(self.o.clone())
    }

    /// Negative eigenvalue of `B`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn positive_eigenvalues(&self) -> &[f64] {
        &self.positive_eigenvalues
    }

    pub fn weighted_norm(&self, v: &DVector<f64>) -> f64 {
        self.o.dot(v)
    }

    pub fn normalize(&self, v: &DVector<f64>) -> Result<ChartPoint> {
        let w = self.weighted_norm(v);
        if !(w.abs() > self.tol.chart * v.norm()) {
            return Err(Error::ChartSingularity { value: w });
        }
        Ok(ChartPoint(v / w))
    }

    /// Accepts coordinates already on `V₁` (to 1e-12), renormalizing them.
    pub fn point(&self, coords: DVector<f64>) -> Result<ChartPoint> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let w = self.weighted_norm(&coords);
        if (w - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("|v|_1 = {w}, expected 1")));
        }
        Ok(ChartPoint(coords / w))
    }

    pub fn quadratic(&self, v: &DVector<f64>) -> f64 {
        self.form.quadratic(v)
    }

    pub fn region(&self, x: &ChartPoint) -> Region {
        let q = self.quadratic(&x.0);
        if q.abs() <= self.tol.boundary {
            Region::Boundary
        } else if q < 0.0 {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    pub fn in_domain(&self, x: &ChartPoint) -> bool {
        self.region(x) == Region::Interior
    }

    /// `x ∈ conv(Δ̂)`, decided by the sign of every simple-root coordinate.
    pub fn in_simplex(&self, x: &ChartPoint) -> bool {
        x.0.iter().all(|&c| c >= -self.tol.simplex)
    }

    /// `w · x = normalize(w(x))`.
    pub fn act(&self, w: &GroupElement, x: &ChartPoint) -> Result<ChartPoint> {
        self.act_matrix(w.matrix(), x)
    }

    pub fn act_matrix(&self, m: &DMatrix<f64>, x: &ChartPoint) -> Result<ChartPoint> {
        self.normalize(&(m * &x.0))
    }

    /// Chart vertex `α̂_i = α_i / o_i`.
    pub fn simplex_vertex(&self, i: usize) -> ChartPoint {
        let mut v = DVector::zeros(self.rank());
        v[i] = 1.0 / self.o[i];
        ChartPoint(v)
    }

    /// Affine map from the open unit ball of `R^{n-1}` onto `D`.
    pub fn from_ball(&self, z: &[f64]) -> ChartPoint {
        let mut v = self.o.clone();
        for ((e, a), zi) in self.axes.iter().zip(z) {
            v.axpy(a * zi, e, 1.0);
        }
        ChartPoint(v)
    }

    pub fn to_ball(&self, x: &ChartPoint) -> Vec<f64> {
        let d = &x.0 - &self.o;
        self.axes.iter().map(|(e, a)| e.dot(&d) / a).collect()
    }

    /// Uniform sample from the part of `D` that maps into the ball of radius
    /// `max_radius < 1`.
    pub fn sample_interior<R: Rng + ?Sized>(&self, rng: &mut R, max_radius: f64) -> ChartPoint {
        let k = self.rank() - 1;
        loop {
            let z: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
            let r2: f64 = z.iter().map(|c| c * c).sum();
            if r2 <= 1.0 && r2 > 0.0 {
                let scaled: Vec<f64> = z.iter().map(|c| c * max_radius).collect();
                return self.from_ball(&scaled);
            }
        }
    }

    /// Uniform direction sample on `∂D`.
    pub fn sample_boundary<R: Rng + ?Sized>(&self, rng: &mut R) -> ChartPoint {
        let k = self.rank() - 1;
        loop {
            let z: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
            let r = z.iter().map(|c| c * c).sum::<f64>().sqrt();
            if r <= 1.0 && r > 1e-3 {
                let unit: Vec<f64> = z.iter().map(|c| c / r).collect();
                return self.from_ball(&unit);
            }
        }
    }

    /// Minimum of each coordinate over `D̄` and a witness of `R ≠ ∅`.
    ///
    /// Over the ellipsoid `{o + Σ a_k z_k e_k : |z| <= 1}` the coordinate
    /// `v_i` is minimized at `z = -g/|g|` with `g_k = a_k e_k[i]`.
    pub fn protrusion(&self) -> Protrusion {
        let n = self.rank();
        let mut min_coordinate = Vec::with_capacity(n);
        let mut witness: Option<(f64, ChartPoint)> = None;
        for i in 0..n {
            let g: Vec<f64> = self.axes.iter().map(|(e, a)| a * e[i]).collect();
            let norm = g.iter().map(|c| c * c).sum::<f64>().sqrt();
            let m = self.o[i] - norm;
            min_coordinate.push(m);
            if m < -PROTRUSION_TOL && witness.as_ref().is_none_or(|(w, _)| m < *w) {
                let z: Vec<f64> = g.iter().map(|c| -c / norm).collect();
                witness = Some((m, self.from_ball(&z)));
            }
        }
        Protrusion {
            min_coordinate,
            witness: witness.map(|(_, p)| p),
        }
    }
}
