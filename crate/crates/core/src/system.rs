//! A validated Lorentzian Coxeter system with its chart and generators.

use crate::chart::Chart;
use crate::config::Tolerances;
use crate::coxsys::{build_form, signature, BilinearForm, CoxeterMatrix, SignatureReport};
use crate::error::Result;
use crate::words::Generators;

#[derive(Clone, Debug)]
pub struct System {
    matrix: CoxeterMatrix,
    form: BilinearForm,
    signature: SignatureReport,
    chart: Chart,
    generators: Generators,
    tol: Tolerances,
}

impl System {
    /// Rejects reducible input and forms whose signature is not `(n-1,1)`.
    pub fn new(matrix: CoxeterMatrix, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        let form = build_form(&matrix)?;
        let signature = signature(&form, tol.zero);
        let chart = Chart::new(&form, tol)?;
        let generators = Generators::new(&form, tol);
        Ok(Self {
            matrix,
            form,
            signature,
            chart,
            generators,
            tol,
        })
    }

    pub fn parse(text: &str, tol: Tolerances) -> Result<Self> {
        Self::new(CoxeterMatrix::parse(text)?, tol)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn signature(&self) -> &SignatureReport {
        &self.signature
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::Edge;
    use crate::error::Error;

    #[test]
    fn accepts_lorentzian_rejects_others() {
        let ok = System::new(
            CoxeterMatrix::triangle(3, 3, 4).unwrap(),
            Tolerances::default(),
        );
        assert!(ok.is_ok());
        let affine = System::new(
            CoxeterMatrix::triangle(3, 3, 3).unwrap(),
            Tolerances::default(),
        );
        assert!(matches!(affine, Err(Error::UnsupportedSignature { .. })));
        let split = CoxeterMatrix::from_edges(
            4,
            &[
                (0, 1, Edge::DEFAULT_INFINITE),
                (2, 3, Edge::DEFAULT_INFINITE),
            ],
        )
        .unwrap();
        assert!(matches!(
            System::new(split, Tolerances::default()),
            Err(Error::Reducible { .. })
        ));
    }
}
