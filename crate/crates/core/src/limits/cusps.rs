//! Parabolic fixed points: one per irreducible affine special subsystem.

use nalgebra::DVector;

use crate::chart::ChartPoint;
use crate::coxsys::{classify_subsystems, sorted_eigen, SubsystemKind};
use crate::error::{fmt_subset, Error, Result};
use crate::system::System;

#[derive(Clone, Debug, PartialEq)]
pub struct CuspPoint {
    /// The irreducible affine subset `Δ'` whose walls meet at the point.
    pub delta_prime: Vec<usize>,
    pub point: ChartPoint,
    /// `|Δ'|`, the rank of the smallest affine special subgroup fixing it.
    pub rank: usize,
    /// Every simple reflection fixing the point; contains `Δ'`.
    pub fixing: Vec<usize>,
}

const CUSP_TOL: f64 = 1e-9;

/// The nullvector of each irreducible affine block, embedded with zeros
/// outside the block and normalized into the chart.
pub fn compute_cusps(system: &System) -> Result<Vec<CuspPoint>> {
    let form = system.form();
    let chart = system.chart();
    let n = system.rank();
    let zero = system.tolerances().zero;
    let mut out: Vec<CuspPoint> = Vec::new();
    for class in classify_subsystems(form, n, zero) {
        if class.kind != SubsystemKind::Affine {
            continue;
        }
        let subset = &class.subset;
        let restricted = form.restrict(subset);
        let (values, vectors) = sorted_eigen(restricted.gram());
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let nullity = values.iter().filter(|v| v.abs() <= zero * scale).count();
        if nullity != 1 {
            return Err(Error::Degeneracy {
                subset: fmt_subset(subset),
                nullity,
            });
        }
        // Eigenvalues ascend and the block is positive semidefinite.
        let mut null: DVector<f64> = vectors.column(0).into_owned();
        if null.sum() < 0.0 {
            null = -null;
        }
        let mut v = DVector::zeros(n);
        for (k, &i) in subset.iter().enumerate() {
            v[i] = null[k];
        }
        let point = chart.normalize(&v)?;
        verify(system, subset, &point)?;
        let fixing = (0..n)
            .filter(|&s| form.with_root(s, point.coords()).abs() <= CUSP_TOL)
            .collect();
        if out.iter().all(|c| c.point.euclid(&point) > CUSP_TOL) {
            out.push(CuspPoint {
                delta_prime: subset.clone(),
                rank: subset.len(),
                point,
                fixing,
            });
        }
    }
    Ok(out)
}

fn verify(system: &System, subset: &[usize], p: &ChartPoint) -> Result<()> {
    let form = system.form();
    let bad = |what: String, margin: f64| {
        Err(Error::NumericalAmbiguity {
            what: format!("cusp of {}: {what}", fmt_subset(subset)),
            margin,
        })
    };
    let q = system.chart().quadratic(p.coords());
    if q.abs() > system.tolerances().boundary {
        return bad("q(p) is not zero".into(), q);
    }
    for s in 0..system.rank() {
        let b = form.with_root(s, p.coords());
        if subset.contains(&s) {
            if b.abs() > CUSP_TOL {
                return bad(format!("B(p, α_{}) is not zero", s + 1), b);
            }
            if p.coords()[s] <= 0.0 {
                return bad("nullvector is not positive".into(), p.coords()[s]);
            }
        } else if b > CUSP_TOL {
            // Walls of generators not adjacent to Δ' pass through p.
            return bad(format!("B(p, α_{}) is positive", s + 1), b);
        }
    }
    Ok(())
}
