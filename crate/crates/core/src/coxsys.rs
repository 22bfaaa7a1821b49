//! Coxeter matrices, their bilinear form and everything that can be read off
//! the form alone: signature, irreducible components, the Perron–Frobenius
//! eigenvector, simple reflections and the classification of special
//! subsystems.
//!
//! Indices are 0-based in the API and 1-based in the text format and in every
//! human-readable message.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{fmt_subset, Error, Result};

/// Label of an edge of the Coxeter diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Edge {
    /// `m_ij = m` with `m >= 2`.
    Finite(u32),
    /// `m_ij = ∞` with the form entry `B_ij = weight <= -1`.
    Infinite { weight: f64 },
}

impl Edge {
    pub const DEFAULT_INFINITE: Edge = Edge::Infinite { weight: -1.0 };

    fn validate(self) -> Result<()> {
        match self {
            Edge::Finite(m) if m < 2 => Err(Error::InvalidInput(format!(
                "finite edge label must be at least 2, got {m}"
            ))),
            Edge::Infinite { weight } if !(weight <= -1.0) || !weight.is_finite() => {
                Err(Error::InvalidInput(format!(
                    "weight of an infinite edge must be <= -1, got {weight}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Entry of the bilinear form contributed by this edge.
    pub fn form_entry(self) -> f64 {
        match self {
            Edge::Finite(2) => 0.0,
            Edge::Finite(m) => -(PI / m as f64).cos(),
            Edge::Infinite { weight } => weight,
        }
    }
}

/// Symmetric Coxeter matrix. Only the strict upper triangle is stored;
/// unspecified pairs are `m_ij = 2` and the diagonal is implicitly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterMatrix {
    rank: usize,
    upper: Vec<Edge>,
}

impl CoxeterMatrix {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        Ok(Self {
            rank,
            upper: vec![Edge::Finite(2); rank * (rank - 1) / 2],
        })
    }

    /// Builds a matrix from `(i, j, edge)` triples with 0-based indices.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Edge)]) -> Result<Self> {
        let mut m = Self::new(rank)?;
        for &(i, j, e) in edges {
            m.set(i, j, e)?;
        }
        Ok(m)
    }

    /// Every pair carries the same finite label `m`.
    pub fn uniform(rank: usize, m: u32) -> Result<Self> {
        let mut out = Self::new(rank)?;
        for i in 0..rank {
            for j in i + 1..rank {
                out.set(i, j, Edge::Finite(m))?;
            }
        }
        Ok(out)
    }

    /// The triangle group with `m_12 = a`, `m_13 = b`, `m_23 = c`.
    pub fn triangle(a: u32, b: u32, c: u32) -> Result<Self> {
        Self::from_edges(
            3,
            &[
                (0, 1, Edge::Finite(a)),
                (0, 2, Edge::Finite(b)),
                (1, 2, Edge::Finite(c)),
            ],
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * (2 * self.rank - a - 1) / 2 + (b - a - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, edge: Edge) -> Result<()> {
        if i >= self.rank || j >= self.rank {
            return Err(Error::InvalidInput(format!(
                "generator index out of range 1..={}",
                self.rank
            )));
        }
        if i == j {
            return Err(Error::InvalidInput("m_ii is fixed to 1".into()));
        }
        edge.validate()?;
        let k = self.slot(i, j);
        self.upper[k] = edge;
        Ok(())
    }

    /// Label of the pair `(i, j)`, `i != j`.
    pub fn edge(&self, i: usize, j: usize) -> Edge {
        assert!(i != j, "the diagonal of a Coxeter matrix has no edge");
        self.upper[self.slot(i, j)]
    }

    /// Largest finite label, used to bound element orders.
    pub fn max_finite_label(&self) -> u32 {
        self.upper
            .iter()
            .filter_map(|e| match e {
                Edge::Finite(m) => Some(*m),
                Edge::Infinite { .. } => None,
            })
            .max()
            .unwrap_or(2)
    }

    /// Parses the line-based system format:
    ///
    /// ```text
    /// rank 3
    /// m 1 2 3
    /// inf 1 3 -1.1   # weight optional, default -1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut matrix: Option<CoxeterMatrix> = None;
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "rank" => {
                    if matrix.is_some() {
                        return Err(err("rank declared twice".into()));
                    }
                    if tokens.len() != 2 {
                        return Err(err("expected `rank N`".into()));
                    }
                    let n: usize = tokens[1]
                        .parse()
                        .map_err(|_| err(format!("invalid rank `{}`", tokens[1])))?;
                    matrix = Some(CoxeterMatrix::new(n).map_err(|e| err(e.to_string()))?);
                }
                kw @ ("m" | "inf") => {
                    let m = matrix
                        .as_mut()
                        .ok_or_else(|| err("`rank N` must come first".into()))?;
                    let expected = if kw == "m" { 4..=4 } else { 3..=4 };
                    if !expected.contains(&tokens.len()) {
                        let usage = if kw == "m" { "m i j k" } else { "inf i j [w]" };
                        return Err(err(format!("expected `{usage}`")));
                    }
                    let index = |t: &str| -> Result<usize> {
                        let v: usize = t
                            .parse()
                            .map_err(|_| err(format!("invalid generator index `{t}`")))?;
                        if v == 0 || v > m.rank() {
                            return Err(err(format!(
                                "generator index {v} out of range 1..={}",
                                m.rank()
                            )));
                        }
                        Ok(v - 1)
                    };
                    let (i, j) = (index(tokens[1])?, index(tokens[2])?);
                    if i == j {
                        return Err(err("an edge needs two distinct generators".into()));
                    }
                    if !seen.insert((i.min(j), i.max(j))) {
                        return Err(err(format!("pair ({}, {}) given twice", i + 1, j + 1)));
                    }
                    let edge = if kw == "m" {
                        let k: u32 = tokens[3]
                            .parse()
                            .map_err(|_| err(format!("invalid label `{}`", tokens[3])))?;
                        Edge::Finite(k)
                    } else {
                        let weight = match tokens.get(3) {
                            Some(t) => t
                                .parse::<f64>()
                                .map_err(|_| err(format!("invalid weight `{t}`")))?,
                            None => -1.0,
                        };
                        Edge::Infinite { weight }
                    };
                    m.set(i, j, edge).map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        matrix.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `rank N`".into(),
        })
    }

    /// Inverse of [`CoxeterMatrix::parse`]; pairs with `m_ij = 2` are omitted.
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                match self.edge(i, j) {
                    Edge::Finite(2) => {}
                    Edge::Finite(k) => out.push_str(&format!("m {} {} {}\n", i + 1, j + 1, k)),
                    Edge::Infinite { weight } => {
                        out.push_str(&format!("inf {} {} {:?}\n", i + 1, j + 1, weight))
                    }
                }
            }
        }
        out
    }
}

/// Gram matrix of the form on the simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    gram: DMatrix<f64>,
}

impl BilinearForm {
    /// Wraps a symmetric matrix with unit diagonal.
    pub fn from_gram(gram: DMatrix<f64>) -> Result<Self> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(Error::InvalidInput("Gram matrix must be square".into()));
        }
        let n = gram.nrows();
        for i in 0..n {
            for j in 0..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::InvalidInput("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn apply(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (&self.gram * v).dot(u)
    }

    /// `B(α_i, v)`.
    pub fn with_root(&self, i: usize, v: &DVector<f64>) -> f64 {
        self.gram.row(i).transpose().dot(v)
    }

    pub fn quadratic(&self, v: &DVector<f64>) -> f64 {
        self.apply(v, v)
    }

    /// Form restricted to the simple roots in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> BilinearForm {
        let k = subset.len();
        let gram = DMatrix::from_fn(k, k, |a, b| self.gram[(subset[a], subset[b])]);
        BilinearForm { gram }
    }
}

pub fn build_form(matrix: &CoxeterMatrix) -> Result<BilinearForm> {
    let n = matrix.rank();
    let mut gram = DMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let e = matrix.edge(i, j);
            e.validate()?;
            let v = e.form_entry();
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }
    Ok(BilinearForm { gram })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureReport {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Absolute threshold actually used.
    pub zero_tolerance: f64,
}

impl SignatureReport {
    pub fn is_lorentzian(&self) -> bool {
        self.n_neg == 1 && self.n_zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_neg == 0 && self.n_zero == 0
    }
}

impl fmt::Display for SignatureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_zero == 0 {
            write!(f, "({},{})", self.n_pos, self.n_neg)
        } else {
            write!(f, "({},{},{})", self.n_pos, self.n_neg, self.n_zero)
        }
    }
}

pub(crate) fn sorted_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Inertia of the form. `rel_tol` is relative to the largest `|λ|`.
pub fn signature(form: &BilinearForm, rel_tol: f64) -> SignatureReport {
    let (eigenvalues, _) = sorted_eigen(&form.gram);
    let scale = eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);
    let (mut n_pos, mut n_neg, mut n_zero) = (0, 0, 0);
    for &l in &eigenvalues {
        if l.abs() <= tol {
            n_zero += 1;
        } else if l > 0.0 {
            n_pos += 1;
        } else {
            n_neg += 1;
        }
    }
    SignatureReport {
        n_pos,
        n_neg,
        n_zero,
        eigenvalues,
        zero_tolerance: tol,
    }
}

/// Connected components of `{i : B_ij != 0}` restricted to `subset`.
pub fn components_of(form: &BilinearForm, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; subset.len()];
    let mut out = Vec::new();
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(a) = stack.pop() {
            comp.push(subset[a]);
            for b in 0..subset.len() {
                if !seen[b] && form.gram[(subset[a], subset[b])] != 0.0 {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Partition of the generators into irreducible blocks, each sorted, blocks
/// ordered by smallest element.
pub fn irreducible_components(matrix: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let n = matrix.rank();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if matrix.edge(i, j) != Edge::Finite(2) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(a) = stack.pop() {
            comp.push(a);
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Positive unit eigenvector for the negative eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronData {
    pub vector: DVector<f64>,
    pub eigenvalue: f64,
}

pub fn perron_eigenvector(form: &BilinearForm, rel_tol: f64) -> Result<PerronData> {
    let n = form.rank();
    let all: Vec<usize> = (0..n).collect();
    let comps = components_of(form, &all);
    if comps.len() > 1 {
        let described: Vec<String> = comps.iter().map(|c| fmt_subset(c)).collect();
        return Err(Error::Reducible {
            components: described.join(" "),
        });
    }
    let sig = signature(form, rel_tol);
    if !(sig.n_neg == 1 && sig.n_zero == 0) {
        return Err(Error::UnsupportedSignature {
            pos: sig.n_pos,
            neg: sig.n_neg,
            zero: sig.n_zero,
            expected: n - 1,
        });
    }
    let (values, vectors) = sorted_eigen(&form.gram);
    let mut o: DVector<f64> = vectors.column(0).into_owned();
    if o.sum() < 0.0 {
        o = -o;
    }
    o /= o.norm();
    if o.iter().any(|&c| c <= 0.0) {
        return Err(Error::NumericalAmbiguity {
            what: "Perron eigenvector has a non-positive coordinate".into(),
            margin: o.min(),
        });
    }
    Ok(PerronData {
        vector: o,
        eigenvalue: values[0],
    })
}

/// Matrix of `s_i(v) = v - 2 B(α_i, v) α_i` in simple-root coordinates.
pub fn reflection_matrix(form: &BilinearForm, i: usize) -> DMatrix<f64> {
    let n = form.rank();
    let mut s = DMatrix::identity(n, n);
    for j in 0..n {
        s[(i, j)] -= 2.0 * form.gram[(i, j)];
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsystemKind {
    Finite,
    Affine,
    Lorentzian,
    /// Neither of the above: more than one negative direction, or a
    /// reducible non-finite subset that is not Lorentzian.
    Higher,
}

impl fmt::Display for SubsystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubsystemKind::Finite => "finite",
            SubsystemKind::Affine => "affine",
            SubsystemKind::Lorentzian => "lorentzian",
            SubsystemKind::Higher => "higher",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsystemClass {
    pub subset: Vec<usize>,
    pub kind: SubsystemKind,
    pub signature: SignatureReport,
    pub irreducible: bool,
}

/// Classifies the special subsystem generated by `subset`.
pub fn classify_subset(form: &BilinearForm, subset: &[usize], rel_tol: f64) -> SubsystemClass {
    let k = subset.len();
    let sig = signature(&form.restrict(subset), rel_tol);
    let comps = components_of(form, subset);
    let irreducible = comps.len() == 1;
    let kind = if irreducible {
        if sig.is_positive_definite() {
            SubsystemKind::Finite
        } else if sig.n_neg == 0 && sig.n_zero == 1 && sig.n_pos + 1 == k {
            SubsystemKind::Affine
        } else if sig.n_neg == 1 && sig.n_zero == 0 {
            SubsystemKind::Lorentzian
        } else {
            SubsystemKind::Higher
        }
    } else {
        let all_finite = comps
            .iter()
            .all(|c| signature(&form.restrict(c), rel_tol).is_positive_definite());
        if all_finite {
            SubsystemKind::Finite
        } else if sig.n_neg == 1 && sig.n_zero == 0 {
            SubsystemKind::Lorentzian
        } else {
            SubsystemKind::Higher
        }
    };
    SubsystemClass {
        subset: subset.to_vec(),
        kind,
        signature: sig,
        irreducible,
    }
}

/// Every subset with `2 <= |Δ'| <= max_rank`, ordered by size then
/// lexicographically.
pub fn subsets(n: usize, min_size: usize, max_size: usize) -> Vec<Vec<usize>> {
    assert!(n < 64, "rank too large for subset enumeration");
    let mut out: Vec<Vec<usize>> = (0u64..(1u64 << n))
        .filter(|m| {
            let c = m.count_ones() as usize;
            c >= min_size && c <= max_size
        })
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn classify_subsystems(
    form: &BilinearForm,
    max_rank: usize,
    rel_tol: f64,
) -> Vec<SubsystemClass> {
    subsets(form.rank(), 2, max_rank.min(form.rank()))
        .iter()
        .map(|s| classify_subset(form, s, rel_tol))
        .collect()
}
