//! The three cases of the action on `D`, read off the special subsystems.

use std::fmt;

use crate::chart::ChartPoint;
use crate::coxsys::{classify_subsystems, SubsystemClass, SubsystemKind};
use crate::error::Result;
use crate::limits::cusps::{compute_cusps, CuspPoint};
use crate::system::System;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionCase {
    /// (i): every special subgroup of rank `n−1` is finite.
    Cocompact,
    /// (ii): some special subgroup is affine.
    WithCusps,
    /// (iii): neither.
    ConvexCocompact,
}

impl ActionCase {
    pub fn label(self) -> &'static str {
        match self {
            ActionCase::Cocompact => "cocompact",
            ActionCase::WithCusps => "with_cusps",
            ActionCase::ConvexCocompact => "convex_cocompact",
        }
    }

    pub fn numeral(self) -> &'static str {
        match self {
            ActionCase::Cocompact => "i",
            ActionCase::WithCusps => "ii",
            ActionCase::ConvexCocompact => "iii",
        }
    }
}

impl fmt::Display for ActionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub case: ActionCase,
    /// The rank `n−1` special subsystems.
    pub facets: Vec<SubsystemClass>,
    /// Irreducible affine subsystems.
    pub affine: Vec<SubsystemClass>,
    pub cusps: Vec<CuspPoint>,
    /// A point of `∂D` outside `conv(Δ̂)` when `R = D \ conv(Δ̂)` is nonempty.
    pub protrusion: Option<ChartPoint>,
}

pub fn classify_action(system: &System) -> Result<ClassificationResult> {
    let n = system.rank();
    let all = classify_subsystems(system.form(), n - 1, system.tolerances().zero);
    let facets: Vec<SubsystemClass> = all
        .iter()
        .filter(|c| c.subset.len() == n - 1)
        .cloned()
        .collect();
    let affine: Vec<SubsystemClass> = all
        .iter()
        .filter(|c| c.kind == SubsystemKind::Affine)
        .cloned()
        .collect();
    let case = if facets.iter().all(|c| c.kind == SubsystemKind::Finite) {
        ActionCase::Cocompact
    } else if !affine.is_empty() {
        ActionCase::WithCusps
    } else {
        ActionCase::ConvexCocompact
    };
    Ok(ClassificationResult {
        case,
        facets,
        affine,
        cusps: compute_cusps(system)?,
        protrusion: system.chart().protrusion().witness,
    })
}
