//! Static SVG pictures of a limit-set sample in the affine chart.
//!
//! The chart is drawn isometrically: points are projected onto a Euclidean
//! orthonormal frame of `o^⊥` (rank 3), or of the part of `o^⊥` orthogonal to
//! a viewing direction (rank 4).

use std::fmt::Write;

use nalgebra::{DMatrix, DVector, Vector2};

use crate::chart::ChartPoint;
use crate::error::{Error, Result};
use crate::limits::LimitSample;
use crate::system::System;

/// Samples along `∂D`.
pub const BOUNDARY_SAMPLES: usize = 720;
pub const DOT_RADIUS: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Viewing direction for rank 4, in simple-root coordinates.
    pub view: Vec<f64>,
    /// Width and height of the picture in SVG user units.
    pub size: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            view: vec![1.0, 2.0, 3.0, 4.0],
            size: 400.0,
        }
    }
}

/// Gram–Schmidt of `candidates` against `fixed`, keeping the first `k`
/// independent directions.
fn complete_frame(
    fixed: &[DVector<f64>],
    candidates: &[DVector<f64>],
    k: usize,
) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = fixed.iter().map(|v| v.normalize()).collect();
    let mut out = Vec::new();
    for c in candidates {
        let mut v = c.clone();
        for b in &basis {
            v -= b * b.dot(&v);
        }
        if v.norm() > 1e-8 {
            let v = v.normalize();
            basis.push(v.clone());
            out.push(v);
            if out.len() == k {
                break;
            }
        }
    }
    out
}

struct Projection {
    origin: DVector<f64>,
    /// 2 × n.
    p: DMatrix<f64>,
}

impl Projection {
    fn new(system: &System, opts: &RenderOptions) -> Result<Self> {
        let n = system.rank();
        let o = system.chart().o().clone();
        let mut fixed = vec![o.clone()];
        match n {
            3 => {}
            4 => {
                if opts.view.len() != 4 {
                    return Err(Error::InvalidInput(format!(
                        "view direction needs 4 coordinates, got {}",
                        opts.view.len()
                    )));
                }
                let mut v = DVector::from_column_slice(&opts.view);
                v -= &o * o.dot(&v);
                if v.norm() < 1e-8 {
                    return Err(Error::InvalidInput(
                        "view direction must not be parallel to the base point".into(),
                    ));
                }
                fixed.push(v);
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "SVG output supports rank 3 and 4, not rank {n}"
                )))
            }
        }
        let candidates: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let mut e = DVector::zeros(n);
                e[i] = 1.0;
                e
            })
            .collect();
        let frame = complete_frame(&fixed, &candidates, 2);
        let p = DMatrix::from_rows(&[frame[0].transpose(), frame[1].transpose()]);
        Ok(Self { origin: o, p })
    }

    fn apply(&self, v: &DVector<f64>) -> Vector2<f64> {
        let x = &self.p * (v - &self.origin);
        Vector2::new(x[0], x[1])
    }
}

/// Outline of the projected ellipsoid `D̄`: the support point in each of
/// `BOUNDARY_SAMPLES` directions.
fn boundary_outline(system: &System, proj: &Projection) -> Vec<Vector2<f64>> {
    let chart = system.chart();
    let k = system.rank() - 1;
    let o = chart.base_point();
    // Columns: the semi-axes of D as chart vectors.
    let axes: Vec<DVector<f64>> = (0..k)
        .map(|i| {
            let mut z = vec![0.0; k];
            z[i] = 1.0;
            chart.from_ball(&z).coords() - o.coords()
        })
        .collect();
    let m = &proj.p * DMatrix::from_columns(&axes);
    let mmt = &m * m.transpose();
    (0..BOUNDARY_SAMPLES)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / BOUNDARY_SAMPLES as f64;
            let u = nalgebra::DVector::from_vec(vec![t.cos(), t.sin()]);
            let s = &mmt * &u;
            let len = u.dot(&s).sqrt();
            Vector2::new(s[0] / len, s[1] / len)
        })
        .collect()
}

pub fn render_svg(system: &System, sample: &LimitSample, opts: &RenderOptions) -> Result<String> {
    let proj = Projection::new(system, opts)?;
    let chart = system.chart();
    let n = system.rank();
    let vertices: Vec<Vector2<f64>> = (0..n)
        .map(|i| proj.apply(chart.simplex_vertex(i).coords()))
        .collect();
    let outline = boundary_outline(system, &proj);
    let dots: Vec<Vector2<f64>> = sample
        .points
        .iter()
        .map(|p: &ChartPoint| proj.apply(p.coords()))
        .collect();

    let (mut lo, mut hi) = (
        Vector2::repeat(f64::INFINITY),
        Vector2::repeat(f64::NEG_INFINITY),
    );
    for p in vertices.iter().chain(&outline) {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    let extent = (hi - lo).max().max(1e-12);
    let margin = 0.05 * opts.size;
    let scale = (opts.size - 2.0 * margin) / extent;
    // SVG's y axis points down.
    let to_svg = |p: &Vector2<f64>| -> (f64, f64) {
        (
            margin + (p.x - lo.x) * scale,
            opts.size - margin - (p.y - lo.y) * scale,
        )
    };

    let mut out = String::new();
    let w =
        |out: &mut String, s: std::fmt::Arguments<'_>| out.write_fmt(s).expect("write to string");
    w(
        &mut out,
        format_args!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s} {s}\" width=\"{s}\" height=\"{s}\">\n",
            s = opts.size
        ),
    );
    w(
        &mut out,
        format_args!(
            "<!-- coxeter-limits v1, mode={}, depth={}, rank={n} -->\n",
            sample.mode, sample.depth
        ),
    );
    out.push_str("<g fill=\"none\" stroke=\"#888\" stroke-width=\"0.5\">\n");
    for i in 0..n {
        for j in i + 1..n {
            let (x1, y1) = to_svg(&vertices[i]);
            let (x2, y2) = to_svg(&vertices[j]);
            w(
                &mut out,
                format_args!(
                    "<line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\"/>\n"
                ),
            );
        }
    }
    out.push_str("</g>\n<polygon fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.5\" points=\"");
    for (k, p) in outline.iter().enumerate() {
        let (x, y) = to_svg(p);
        if k > 0 {
            out.push(' ');
        }
        w(&mut out, format_args!("{x:.4},{y:.4}"));
    }
    out.push_str("\"/>\n<g fill=\"#b22222\">\n");
    for p in &dots {
        let (x, y) = to_svg(p);
        w(
            &mut out,
            format_args!("<circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{DOT_RADIUS}\"/>\n"),
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
