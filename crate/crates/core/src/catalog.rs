//! Named reference systems and the search for a rank-4 extension of `(3,3,4)`.

use crate::config::Tolerances;
use crate::coxsys::{build_form, classify_subset, signature, CoxeterMatrix, Edge, SubsystemKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub matrix: CoxeterMatrix,
    /// `(n_pos, n_neg, n_zero)`.
    pub expected_signature: (usize, usize, usize),
}

fn entry(name: &'static str, matrix: CoxeterMatrix, sig: (usize, usize, usize)) -> CatalogEntry {
    CatalogEntry {
        name,
        matrix,
        expected_signature: sig,
    }
}

pub fn triangle_333() -> CoxeterMatrix {
    CoxeterMatrix::triangle(3, 3, 3).expect("valid labels")
}

pub fn triangle_334() -> CoxeterMatrix {
    CoxeterMatrix::triangle(3, 3, 4).expect("valid labels")
}

pub fn triangle_237() -> CoxeterMatrix {
    CoxeterMatrix::triangle(2, 3, 7).expect("valid labels")
}

pub fn rank4_all3() -> CoxeterMatrix {
    CoxeterMatrix::uniform(4, 3).expect("valid labels")
}

/// `m_12 = ∞` with the given weight, `m_13 = m_23 = 3`.
pub fn ideal_edge_triangle(weight: f64) -> CoxeterMatrix {
    CoxeterMatrix::from_edges(
        3,
        &[
            (0, 1, Edge::Infinite { weight }),
            (0, 2, Edge::Finite(3)),
            (1, 2, Edge::Finite(3)),
        ],
    )
    .expect("weight <= -1")
}

/// The convex-cocompact witness: [`ideal_edge_triangle`] at weight −1.1.
pub fn protruding_triangle() -> CoxeterMatrix {
    ideal_edge_triangle(-1.1)
}

/// Every pair `m_ij = ∞` with weight −1.
pub fn ideal_triangle() -> CoxeterMatrix {
    let e = Edge::DEFAULT_INFINITE;
    CoxeterMatrix::from_edges(3, &[(0, 1, e), (0, 2, e), (1, 2, e)]).expect("valid edges")
}

pub fn dihedral(m: u32) -> CoxeterMatrix {
    CoxeterMatrix::from_edges(2, &[(0, 1, Edge::Finite(m))]).expect("valid label")
}

pub fn infinite_dihedral() -> CoxeterMatrix {
    CoxeterMatrix::from_edges(2, &[(0, 1, Edge::DEFAULT_INFINITE)]).expect("valid edge")
}

/// Two commuting infinite dihedral groups.
pub fn reducible_pair() -> CoxeterMatrix {
    let e = Edge::DEFAULT_INFINITE;
    CoxeterMatrix::from_edges(4, &[(0, 1, e), (2, 3, e)]).expect("valid edges")
}

/// The linear diagram `5 − 3 − 5`, a compact hyperbolic tetrahedron group.
pub fn tetrahedron_535() -> CoxeterMatrix {
    CoxeterMatrix::from_edges(
        4,
        &[
            (0, 1, Edge::Finite(5)),
            (1, 2, Edge::Finite(3)),
            (2, 3, Edge::Finite(5)),
        ],
    )
    .expect("valid labels")
}

/// The reference catalog with sign counts derived by hand.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry("triangle-333", triangle_333(), (2, 0, 1)),
        entry("triangle-334", triangle_334(), (2, 1, 0)),
        entry("triangle-237", triangle_237(), (2, 1, 0)),
        entry(
            "triangle-236",
            CoxeterMatrix::triangle(2, 3, 6).expect("valid"),
            (2, 0, 1),
        ),
        entry("rank4-all3", rank4_all3(), (3, 1, 0)),
        entry("protruding-triangle", protruding_triangle(), (2, 1, 0)),
        entry("ideal-edge-triangle", ideal_edge_triangle(-1.0), (2, 1, 0)),
        entry("ideal-triangle", ideal_triangle(), (2, 1, 0)),
        entry("dihedral-4", dihedral(4), (2, 0, 0)),
        entry("infinite-dihedral", infinite_dihedral(), (1, 0, 1)),
        entry("reducible-pair", reducible_pair(), (2, 0, 2)),
        entry("tetrahedron-535", tetrahedron_535(), (3, 1, 0)),
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

const EXTENSION_LABELS: [u32; 5] = [2, 3, 4, 5, 6];

/// First irreducible rank-4 system of signature `(3,1)` whose generators
/// `{1,2,3}` span `(3,3,4)`, searching labels `m_14, m_24, m_34` in
/// `{2,…,6,∞}` in lexicographic order. When `cocompact_faces` is set, the
/// other rank-3 special subsystems must also be finite or Lorentzian
/// (no cusps).
pub fn extension_of_334(tol: &Tolerances, cocompact_faces: bool) -> Result<CoxeterMatrix> {
    let mut labels: Vec<Edge> = EXTENSION_LABELS.iter().map(|&m| Edge::Finite(m)).collect();
    labels.push(Edge::DEFAULT_INFINITE);
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                let t = triangle_334();
                let mut m = CoxeterMatrix::new(4)?;
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    m.set(i, j, t.edge(i, j))?;
                }
                m.set(0, 3, a)?;
                m.set(1, 3, b)?;
                m.set(2, 3, c)?;
                let form = build_form(&m)?;
                let sig = signature(&form, tol.zero);
                if !sig.is_lorentzian() || crate::coxsys::irreducible_components(&m).len() != 1 {
                    continue;
                }
                let base = classify_subset(&form, &[0, 1, 2], tol.zero);
                if base.kind != SubsystemKind::Lorentzian {
                    continue;
                }
                if cocompact_faces {
                    let affine = crate::coxsys::classify_subsystems(&form, 3, tol.zero)
                        .iter()
                        .any(|s| s.kind == SubsystemKind::Affine);
                    if affine {
                        continue;
                    }
                }
                return Ok(m);
            }
        }
    }
    Err(Error::SearchFailure(
        "no rank-4 extension of (3,3,4) with signature (3,1)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::System;

    #[test]
    fn names_are_unique() {
        let c = catalog();
        assert!(c.len() >= 10);
        for (i, a) in c.iter().enumerate() {
            assert!(c[i + 1..].iter().all(|b| b.name != a.name));
        }
        assert!(lookup("rank4-all3").is_some());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn extension_contains_the_triangle() {
        let tol = Tolerances::default();
        let m = extension_of_334(&tol, false).unwrap();
        for (i, j, l) in [(0, 1, 3), (0, 2, 3), (1, 2, 4)] {
            assert_eq!(m.edge(i, j), Edge::Finite(l));
        }
        let s = System::new(m, tol).unwrap();
        assert_eq!(s.signature().n_neg, 1);
    }
}
