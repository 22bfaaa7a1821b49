//! Elliptic, parabolic and hyperbolic elements.

use std::fmt;

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::chart::ChartPoint;
use crate::error::{Error, Result};
use crate::system::System;
use crate::words::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometryKind::Elliptic => "elliptic",
            IsometryKind::Parabolic => "parabolic",
            IsometryKind::Hyperbolic => "hyperbolic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IsometryType {
    pub kind: IsometryKind,
    pub spectral_radius: f64,
    /// Order when `w^k = I` was detected.
    pub order: Option<usize>,
    /// Boundary fixed points: attracting then repelling for hyperbolic
    /// elements, the unique one for parabolic elements.
    pub fixed_points: Vec<ChartPoint>,
}

/// `w^k = I` residual that counts as the identity.
pub const ORDER_RESIDUAL: f64 = 1e-8;
/// Spectral radius above `1 + HYPERBOLIC_GAP` is hyperbolic.
pub const HYPERBOLIC_GAP: f64 = 1e-6;
/// Spectral radius within this of 1 is parabolic.
pub const PARABOLIC_BAND: f64 = 1e-8;
/// Eigenvalues this close are treated as one perturbed multiple eigenvalue.
const CLUSTER_RADIUS: f64 = 1e-4;

/// `2 · (largest finite m_ij)²`.
pub fn default_order_bound(system: &System) -> usize {
    let m = system.matrix().max_finite_label() as usize;
    2 * m * m
}

/// Classifies `w ≠ id`. `order_bound` defaults to [`default_order_bound`].
pub fn isometry_type(
    system: &System,
    w: &GroupElement,
    order_bound: Option<usize>,
) -> Result<IsometryType> {
    let n = system.rank();
    let m = w.matrix();
    let bound = order_bound.unwrap_or_else(|| default_order_bound(system));
    let id = DMatrix::<f64>::identity(n, n);
    let mut power = id.clone();
    for k in 1..=bound {
        power = &power * m;
        if (&power - &id).amax() <= ORDER_RESIDUAL {
            return Ok(IsometryType {
                kind: IsometryKind::Elliptic,
                spectral_radius: 1.0,
                order: Some(k),
                fixed_points: Vec::new(),
            });
        }
        if power.amax() > 1e12 {
            break;
        }
    }

    let rho = clustered_spectral_radius(m);
    if rho > 1.0 + HYPERBOLIC_GAP {
        let attracting = null_eigenvector(system, m, rho)?;
        let repelling = null_eigenvector(system, m, 1.0 / rho)?;
        Ok(IsometryType {
            kind: IsometryKind::Hyperbolic,
            spectral_radius: rho,
            order: None,
            fixed_points: vec![attracting, repelling],
        })
    } else if (rho - 1.0).abs() <= PARABOLIC_BAND {
        Ok(IsometryType {
            kind: IsometryKind::Parabolic,
            spectral_radius: rho,
            order: None,
            fixed_points: vec![parabolic_fixed_point(system, m)?],
        })
    } else {
        Err(Error::NumericalAmbiguity {
            what: format!("spectral radius {rho:.12} is neither 1 nor clearly above it"),
            margin: rho - 1.0,
        })
    }
}

/// A Jordan block of size `j` at eigenvalue 1 splits into `j` eigenvalues at
/// distance `~ε^{1/j}`; their mean is exact to rounding. The radius is the
/// largest modulus of a cluster mean.
pub fn clustered_spectral_radius(m: &DMatrix<f64>) -> f64 {
    let eig: Vec<Complex<f64>> = m.clone().complex_eigenvalues().iter().copied().collect();
    let mut clusters: Vec<Vec<Complex<f64>>> = Vec::new();
    for z in eig {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|y| (y - z).norm() <= CLUSTER_RADIUS))
        {
            Some(c) => c.push(z),
            None => clusters.push(vec![z]),
        }
    }
    clusters
        .iter()
        .map(|c| (c.iter().sum::<Complex<f64>>() / c.len() as f64).norm())
        .fold(0.0, f64::max)
}

/// Right-singular vectors of `a` whose singular values are at most `tol`.
fn kernel(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect()
}

fn null_eigenvector(system: &System, m: &DMatrix<f64>, lambda: f64) -> Result<ChartPoint> {
    let n = m.nrows();
    let shifted = m - DMatrix::<f64>::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let (i, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let v: DVector<f64> = v_t.row(i).transpose();
    let v = if system.chart().weighted_norm(&v) < 0.0 {
        -v
    } else {
        v
    };
    system.chart().normalize(&v)
}

/// The unique isotropic line in `ker(W − I)`.
fn parabolic_fixed_point(system: &System, m: &DMatrix<f64>) -> Result<ChartPoint> {
    let n = m.nrows();
    let shifted = m - DMatrix::<f64>::identity(n, n);
    let ker = kernel(&shifted, 1e-6 * m.amax().max(1.0));
    if ker.is_empty() {
        return Err(Error::NumericalAmbiguity {
            what: "parabolic element has no fixed vector".into(),
            margin: 0.0,
        });
    }
    let k = DMatrix::from_columns(&ker);
    let gram = k.transpose() * system.form().gram() * &k;
    let eig = SymmetricEigen::new(gram);
    let scale = eig.eigenvalues.amax().max(1.0);
    let radical: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i].abs() <= 1e-6 * scale)
        .collect();
    if radical.len() != 1 {
        return Err(Error::NumericalAmbiguity {
            what: format!(
                "fixed subspace has a {}-dimensional isotropic radical; expected a unique fixed point",
                radical.len()
            ),
            margin: 0.0,
        });
    }
    let v = &k * eig.eigenvectors.column(radical[0]);
    let v = if system.chart().weighted_norm(&v) < 0.0 {
        -v
    } else {
        v
    };
    system.chart().normalize(&v)
}
