//! Word-metric combinatorics driven by the root-sign descent criterion.
//!
//! `ℓ(s w) < ℓ(w)` exactly when `w⁻¹(α_s)` is a negative root, and
//! `ℓ(w s) < ℓ(w)` exactly when `w(α_s)` is. Every element carries both its
//! matrix and its inverse so either test is a column read.
//!
//! Canonical words are ShortLex-minimal for the generator order: the first
//! letter of `NF(u)` is the smallest left descent of `u`. Enumeration grows
//! the ball by left multiplication and accepts `s·w` only when `s` is that
//! smallest left descent, which gives every element exactly one parent.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::chart::{Chart, ChartPoint};
use crate::config::Tolerances;
use crate::coxsys::BilinearForm;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    word: Vec<usize>,
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl GroupElement {
    /// A reduced word for the element. Canonical (ShortLex) for elements
    /// produced by [`Generators::enumerate_ball`] and
    /// [`Generators::reduce_word`].
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Space-separated 1-based generator indices, e.g. `1 2 1 3`.
    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

pub fn format_word(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|s| (s + 1).to_string()).collect();
    parts.join(" ")
}

pub fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 && v <= rank => Ok(v - 1),
            _ => Err(Error::InvalidInput(format!(
                "invalid generator `{t}` (expected 1..={rank})"
            ))),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootSign {
    Positive,
    Negative,
}

/// All elements of word length at most `depth`.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub depth: usize,
    /// `levels[k]` holds the elements of length `k`, in canonical order.
    pub levels: Vec<Vec<GroupElement>>,
    /// False when the element budget stopped the enumeration early; then
    /// `depth` is the last fully enumerated length.
    pub complete: bool,
}

impl CayleyBall {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.levels.iter().flatten()
    }

    pub fn elements(&self) -> Vec<&GroupElement> {
        self.iter().collect()
    }
}

/// The simple reflections of a form, with the descent machinery.
#[derive(Clone, Debug)]
pub struct Generators {
    form: BilinearForm,
    tol: f64,
    /// Generators used to build words; all of them unless restricted to a
    /// special subgroup.
    letters: Vec<usize>,
}

impl Generators {
    pub fn new(form: &BilinearForm, tol: Tolerances) -> Self {
        Self {
            form: form.clone(),
            tol: tol.descent,
            letters: (0..form.rank()).collect(),
        }
    }

    /// The special subgroup `W_J` acting on the same space. Its word length
    /// agrees with the ambient one and all descents of its elements lie in
    /// `J`, so the same descent machinery applies.
    pub fn restricted(&self, subset: &[usize]) -> Result<Self> {
        let mut letters = subset.to_vec();
        letters.sort_unstable();
        letters.dedup();
        if letters.is_empty() || letters.iter().any(|&s| s >= self.rank()) {
            return Err(Error::InvalidInput(format!(
                "invalid generator subset {subset:?} for rank {}",
                self.rank()
            )));
        }
        Ok(Self {
            letters,
            ..self.clone()
        })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn identity(&self) -> GroupElement {
        let n = self.rank();
        GroupElement {
            word: Vec::new(),
            matrix: DMatrix::identity(n, n),
            inverse: DMatrix::identity(n, n),
        }
    }

    /// `m ← s·m`: only row `s` changes.
    fn reflect_rows(&self, m: &mut DMatrix<f64>, s: usize) {
        let n = self.rank();
        let b = self.form.gram();
        let mut row = vec![0.0; n];
        for (j, r) in row.iter_mut().enumerate() {
            *r = (0..n).map(|k| b[(s, k)] * m[(k, j)]).sum();
        }
        for j in 0..n {
            m[(s, j)] -= 2.0 * row[j];
        }
    }

    /// `m ← m·s`: column `s` of `m` feeds a rank-one update.
    fn reflect_cols(&self, m: &mut DMatrix<f64>, s: usize) {
        let n = self.rank();
        let b = self.form.gram();
        let col: Vec<f64> = m.column(s).iter().copied().collect();
        for j in 0..n {
            let bj = b[(s, j)];
            if bj == 0.0 {
                continue;
            }
            for r in 0..n {
                m[(r, j)] -= 2.0 * col[r] * bj;
            }
        }
    }

    /// `s·w`, with the word prefixed by `s` (not reduced if `s` is a left
    /// descent of `w`).
    pub fn left_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        let mut out = w.clone();
        self.reflect_rows(&mut out.matrix, s);
        self.reflect_cols(&mut out.inverse, s);
        out.word.insert(0, s);
        out
    }

    /// `w·s`, with `s` appended to the word.
    pub fn right_mul(&self, w: &GroupElement, s: usize) -> GroupElement {
        let mut out = w.clone();
        self.reflect_cols(&mut out.matrix, s);
        self.reflect_rows(&mut out.inverse, s);
        out.word.push(s);
        out
    }

    /// Element of an arbitrary word, kept verbatim.
    pub fn product(&self, word: &[usize]) -> GroupElement {
        let mut w = self.identity();
        for &s in word {
            assert!(s < self.rank(), "generator {s} out of range");
            self.reflect_cols(&mut w.matrix, s);
            self.reflect_rows(&mut w.inverse, s);
        }
        w.word = word.to_vec();
        w
    }

    /// Sign of a root image. Rounding error in a column grows with the
    /// largest entry of the whole matrix, so that entry sets the scale.
    fn root_sign(&self, m: &DMatrix<f64>, s: usize) -> Result<RootSign> {
        let col = m.column(s);
        let scale = m.amax().max(col.amax());
        let eps = self.tol * scale;
        let neg = col.min();
        let pos = col.max();
        match (neg < -eps, pos > eps) {
            (true, true) => Err(Error::NumericalAmbiguity {
                what: "root image has coordinates of both signs".into(),
                margin: neg.abs().min(pos) / scale,
            }),
            (true, false) => Ok(RootSign::Negative),
            (false, true) => Ok(RootSign::Positive),
            (false, false) => Err(Error::NumericalAmbiguity {
                what: "root image vanished".into(),
                margin: col.amax() / scale,
            }),
        }
    }

    /// `w(α_s)` for [`Side::Right`], `w⁻¹(α_s)` for [`Side::Left`].
    pub fn root_image(&self, w: &GroupElement, s: usize, side: Side) -> DVector<f64> {
        match side {
            Side::Right => w.matrix.column(s).into_owned(),
            Side::Left => w.inverse.column(s).into_owned(),
        }
    }

    /// Whether multiplying by `s` on `side` shortens `w`.
    pub fn is_descent(&self, w: &GroupElement, s: usize, side: Side) -> Result<bool> {
        let m = match side {
            Side::Right => &w.matrix,
            Side::Left => &w.inverse,
        };
        Ok(self.root_sign(m, s)? == RootSign::Negative)
    }

    pub fn descents(&self, w: &GroupElement, side: Side) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for s in 0..self.rank() {
            if self.is_descent(w, s, side)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    fn min_left_descent(&self, w: &GroupElement) -> Result<Option<usize>> {
        for &s in &self.letters {
            if self.is_descent(w, s, Side::Left)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// Canonical children of `w` one level up.
    fn children(&self, w: &GroupElement) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for &s in &self.letters {
            if self.is_descent(w, s, Side::Left)? {
                continue;
            }
            let u = self.left_mul(s, w);
            if self.min_left_descent(&u)? == Some(s) {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Ball of radius `depth`; errors when more than `max_elements` would be
    /// stored.
    pub fn enumerate_ball(
        &self,
        depth: usize,
        max_elements: usize,
        exec: Execution,
    ) -> Result<CayleyBall> {
        let ball = self.enumerate_ball_partial(depth, max_elements, exec)?;
        if !ball.complete {
            return Err(Error::Resource {
                limit: max_elements,
                completed_depth: ball.depth,
            });
        }
        Ok(ball)
    }

    /// Like [`Generators::enumerate_ball`] but returns what fits in the
    /// budget, flagged incomplete.
    pub fn enumerate_ball_partial(
        &self,
        depth: usize,
        max_elements: usize,
        exec: Execution,
    ) -> Result<CayleyBall> {
        let mut levels = vec![vec![self.identity()]];
        let mut total = 1usize;
        for k in 0..depth {
            let results = exec::map(exec, &levels[k], |w| self.children(w));
            let mut next = Vec::new();
            for r in results {
                next.extend(r?);
            }
            if next.is_empty() {
                // Finite group: the ball has saturated.
                levels.push(next);
                continue;
            }
            if total + next.len() > max_elements {
                return Ok(CayleyBall {
                    depth: k,
                    levels,
                    complete: false,
                });
            }
            total += next.len();
            levels.push(next);
        }
        Ok(CayleyBall {
            depth,
            levels,
            complete: true,
        })
    }

    /// ShortLex word of the element represented by `word`.
    ///
    /// Letters are appended one at a time; whenever one is a right descent,
    /// the deletion condition names the letter to drop. Every matrix is
    /// recomputed from a reduced word, so rounding never carries over from a
    /// longer intermediate product.
    pub fn reduce_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut u = self.identity();
        for &s in word {
            assert!(s < self.rank(), "generator {s} out of range");
            if self.is_descent(&u, s, Side::Right)? {
                let mut reduced = u.word.clone();
                let i = self.right_deletion(&reduced, s)?;
                reduced.remove(i);
                u = self.product(&reduced);
            } else {
                u = self.right_mul(&u, s);
            }
        }
        self.canonicalize(&u)
    }

    /// ShortLex word of an element given by any reduced word.
    pub fn canonicalize(&self, w: &GroupElement) -> Result<GroupElement> {
        let mut canonical = Vec::with_capacity(w.length());
        let mut rest = w.word.clone();
        let mut u = w.clone();
        while let Some(s) = self.min_left_descent(&u)? {
            let i = self.left_deletion(&rest, s)?;
            rest.remove(i);
            canonical.push(s);
            u = self.product(&rest);
        }
        if !rest.is_empty() {
            return Err(Error::NumericalAmbiguity {
                what: "element with no left descent has a nonempty word".into(),
                margin: 0.0,
            });
        }
        Ok(self.product(&canonical))
    }

    fn reflect_vector(&self, t: usize, beta: &mut DVector<f64>) {
        let b = self.form.gram();
        let c: f64 = (0..self.rank()).map(|k| b[(t, k)] * beta[k]).sum();
        beta[t] -= 2.0 * c;
    }

    fn is_simple_root(beta: &DVector<f64>, t: usize) -> bool {
        let tol = 1e-6 * beta.amax().max(1.0);
        beta.iter()
            .enumerate()
            .all(|(k, &c)| (c - if k == t { 1.0 } else { 0.0 }).abs() <= tol)
    }

    /// Index `i` with `t_1 ⋯ t̂_i ⋯ t_k = t_1 ⋯ t_k s`, for reduced `t` with
    /// right descent `s`: the unique `i` with `t_{i+1} ⋯ t_k(α_s) = α_{t_i}`.
    fn right_deletion(&self, t: &[usize], s: usize) -> Result<usize> {
        let mut beta = DVector::zeros(self.rank());
        beta[s] = 1.0;
        for i in (0..t.len()).rev() {
            if Self::is_simple_root(&beta, t[i]) {
                return Ok(i);
            }
            self.reflect_vector(t[i], &mut beta);
        }
        Err(Error::NumericalAmbiguity {
            what: "deletion condition found no letter to remove".into(),
            margin: 0.0,
        })
    }

    /// Index `i` with `t_1 ⋯ t̂_i ⋯ t_k = s t_1 ⋯ t_k`, for reduced `t` with
    /// left descent `s`.
    fn left_deletion(&self, t: &[usize], s: usize) -> Result<usize> {
        let mut beta = DVector::zeros(self.rank());
        beta[s] = 1.0;
        for (i, &ti) in t.iter().enumerate() {
            if Self::is_simple_root(&beta, ti) {
                return Ok(i);
            }
            self.reflect_vector(ti, &mut beta);
        }
        Err(Error::NumericalAmbiguity {
            what: "deletion condition found no letter to remove".into(),
            margin: 0.0,
        })
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        GroupElement {
            word,
            matrix: w.inverse.clone(),
            inverse: w.matrix.clone(),
        }
    }

    /// `(w1|w2)_id = (|w1| + |w2| - |w1⁻¹ w2|) / 2`; both words must be reduced.
    pub fn gromov_product(&self, w1: &GroupElement, w2: &GroupElement) -> Result<f64> {
        let mut word: Vec<usize> = w1.word.iter().rev().copied().collect();
        word.extend_from_slice(&w2.word);
        let d = self.reduce_word(&word)?.length();
        Ok((w1.length() + w2.length()) as f64 / 2.0 - d as f64 / 2.0)
    }

    /// A uniformly chosen length-increasing extension at every step; returns
    /// the prefixes `w_0 = id, w_1, …, w_len`.
    pub fn random_ray<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        len: usize,
    ) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(len + 1);
        let mut w = self.identity();
        out.push(w.clone());
        for _ in 0..len {
            let mut options = Vec::new();
            for &s in &self.letters {
                if !self.is_descent(&w, s, Side::Right)? {
                    options.push(s);
                }
            }
            if options.is_empty() {
                // Longest element of a finite group.
                break;
            }
            let s = options[rng.random_range(0..options.len())];
            w = self.right_mul(&w, s);
            out.push(w.clone());
        }
        Ok(out)
    }

    /// A random reduced element of length exactly `len` (when one exists).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Result<GroupElement> {
        Ok(self
            .random_ray(rng, len)?
            .pop()
            .expect("ray contains the identity"))
    }
}

/// Vertices `w_k · o` of the sequence path; consecutive vertices are joined
/// by chart segments.
pub fn sequence_path(chart: &Chart, seq: &[GroupElement]) -> Result<Vec<ChartPoint>> {
    let o = chart.base_point();
    seq.iter().map(|w| chart.act(w, &o)).collect()
}
