//! Reference computations that share no code with the library: the Gram
//! matrix from labels, a Jacobi eigensolver, reflection matrices, a
//! matrix-hash BFS and the hyperboloid distance.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use coxlim::{CoxeterMatrix, Edge};

pub fn gram(m: &CoxeterMatrix) -> DMatrix<f64> {
    let n = m.rank();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            return 1.0;
        }
        match m.edge(i, j) {
            Edge::Finite(2) => 0.0,
            Edge::Finite(k) => -(PI / k as f64).cos(),
            Edge::Infinite { weight } => weight,
        }
    })
}

/// Cyclic Jacobi: eigenvalues and the matrix whose columns are eigenvectors.
pub fn jacobi(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// `(n_pos, n_neg, n_zero)` with zero meaning `|λ| <= 1e-8 · max|λ|`.
pub fn sign_counts(g: &DMatrix<f64>) -> (usize, usize, usize) {
    let (eig, _) = jacobi(g);
    let scale = eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-8 * scale;
    let pos = eig.iter().filter(|&&x| x > tol).count();
    let neg = eig.iter().filter(|&&x| x < -tol).count();
    (pos, neg, eig.len() - pos - neg)
}

/// Unit eigenvector of the negative eigenvalue, positive entries.
pub fn perron(g: &DMatrix<f64>) -> DVector<f64> {
    let (eig, v) = jacobi(g);
    let k = (0..eig.len())
        .min_by(|&a, &b| eig[a].total_cmp(&eig[b]))
        .unwrap();
    let mut o = v.column(k).into_owned();
    if o.sum() < 0.0 {
        o = -o;
    }
    o.normalize()
}

/// `v ↦ v − 2 B(α_i, v) α_i`.
pub fn reflection(g: &DMatrix<f64>, i: usize) -> DMatrix<f64> {
    let n = g.nrows();
    let mut r = DMatrix::<f64>::identity(n, n);
    for j in 0..n {
        r[(i, j)] -= 2.0 * g[(i, j)];
    }
    r
}

pub fn word_matrix(g: &DMatrix<f64>, word: &[usize]) -> DMatrix<f64> {
    let n = g.nrows();
    word.iter()
        .fold(DMatrix::identity(n, n), |m, &s| m * reflection(g, s))
}

pub fn bilinear(g: &DMatrix<f64>, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    (u.transpose() * g * v)[(0, 0)]
}

/// Hilbert distance on the negative cone, as twice the hyperbolic distance
/// between the hyperboloid representatives.
pub fn hilbert(g: &DMatrix<f64>, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let qx = bilinear(g, x, x);
    let qy = bilinear(g, y, y);
    assert!(qx < 0.0 && qy < 0.0, "points must be timelike");
    let sx = if x.sum() < 0.0 { -1.0 } else { 1.0 };
    let sy = if y.sum() < 0.0 { -1.0 } else { 1.0 };
    let xh = x * (sx / (-qx).sqrt());
    let yh = y * (sy / (-qy).sqrt());
    let diff = &xh - &yh;
    let q = bilinear(g, &diff, &diff).max(0.0);
    4.0 * (q.sqrt() / 2.0).asinh()
}

/// Hilbert distance as the log cross-ratio of the chord endpoints.
pub fn cross_ratio(g: &DMatrix<f64>, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let d = y - x;
    let a = bilinear(g, &d, &d);
    let b = 2.0 * bilinear(g, x, &d);
    let c = bilinear(g, x, x);
    if a.abs() < 1e-300 {
        return 0.0;
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    let (t1, t2) = {
        let r1 = (-b - disc) / (2.0 * a);
        let r2 = (-b + disc) / (2.0 * a);
        (r1.min(r2), r1.max(r2))
    };
    (t2 * (1.0 - t1) / ((t2 - 1.0) * -t1)).ln()
}

fn key(m: &DMatrix<f64>) -> Vec<i64> {
    m.iter().map(|x| (x * 1e4).round() as i64).collect()
}

/// Breadth-first search over matrices: each new matrix gets the first depth
/// at which it appears. Returns `(length, matrix)` for every element.
pub fn matrix_bfs(g: &DMatrix<f64>, depth: usize) -> Vec<(usize, DMatrix<f64>)> {
    let n = g.nrows();
    let refl: Vec<DMatrix<f64>> = (0..n).map(|i| reflection(g, i)).collect();
    let id = DMatrix::<f64>::identity(n, n);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(key(&id), ());
    let mut out = vec![(0, id.clone())];
    let mut frontier = vec![id];
    for len in 1..=depth {
        let mut next = Vec::new();
        for m in &frontier {
            for r in &refl {
                let p = m * r;
                if seen.insert(key(&p), ()).is_none() {
                    next.push(p);
                }
            }
        }
        out.extend(next.iter().map(|m| (len, m.clone())));
        frontier = next;
    }
    out
}

pub fn counts_by_length(elements: &[(usize, DMatrix<f64>)], depth: usize) -> Vec<usize> {
    let mut c = vec![0; depth + 1];
    for (l, _) in elements {
        c[*l] += 1;
    }
    c
}
