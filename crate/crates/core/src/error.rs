use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "bilinear form has signature ({pos},{neg}) with {zero} null directions; \
         a form of signature ({expected},1) is required"
    )]
    UnsupportedSignature {
        pos: usize,
        neg: usize,
        zero: usize,
        expected: usize,
    },

    #[error(
        "Coxeter matrix is reducible into components {components}; \
         analyze the component of signature (n_k-1,1) on its own"
    )]
    Reducible { components: String },

    #[error("point lies on the chart singularity |v|_1 = {value:.3e}")]
    ChartSingularity { value: f64 },

    #[error("point is outside the domain: {0}")]
    Domain(String),

    #[error("degenerate chord: the two points coincide")]
    DegenerateChord,

    #[error("numerically ambiguous: {what} (margin {margin:.3e})")]
    NumericalAmbiguity { what: String, margin: f64 },

    #[error("degenerate affine block {subset}: null space has dimension {nullity}")]
    Degeneracy { subset: String, nullity: usize },

    #[error("horoball level search failed: {0}")]
    SearchFailure(String),

    #[error("element budget of {limit} exceeded; ball complete through length {completed_depth}")]
    Resource {
        limit: usize,
        completed_depth: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Formats 0-based indices as a 1-based set, e.g. `{1,2,4}`.
pub(crate) fn fmt_subset(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
