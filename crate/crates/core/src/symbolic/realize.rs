use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::RelIndex;
use crate::oracle::{DenseMatrix, Oracle};

use super::{BTriple, SymbolicAlgebra, TElement};

/// `Σ_{g⊕i ≤ j ≤ h} E_g* A_j E_i*` at the oracle's base point.
pub fn b_to_matrix<F: Field>(t: BTriple, oracle: &Oracle<F>) -> Result<DenseMatrix<F>> {
    let params = oracle.points().params();
    if !t.is_valid(params) {
        return Err(Error::InvalidTriple(t));
    }
    let mut out = DenseMatrix::zeros(oracle.field().clone(), oracle.size());
    for j in RelIndex::interval(t.g.symdiff(t.i), t.h) {
        out = out.add(&oracle.eae(t.g, j, t.i)?)?;
    }
    Ok(out)
}

/// Matrices of every basis element at one base point.
#[derive(Debug, Clone)]
pub struct Realization<F: Field> {
    oracle: Oracle<F>,
    mats: BTreeMap<BTriple, DenseMatrix<F>>,
}

impl<F: Field> Realization<F> {
    pub fn new(alg: &SymbolicAlgebra<F>, oracle: Oracle<F>) -> Result<Self> {
        if oracle.points().params() != alg.params() {
            return Err(Error::InvalidParams("oracle and algebra disagree on the scheme".into()));
        }
        let mats = alg
            .basis()
            .into_iter()
            .map(|t| Ok((t, b_to_matrix(t, &oracle)?)))
            .collect::<Result<_>>()?;
        Ok(Realization { oracle, mats })
    }

    pub fn oracle(&self) -> &Oracle<F> {
        &self.oracle
    }

    pub fn b_matrix(&self, t: &BTriple) -> Result<&DenseMatrix<F>> {
        self.mats.get(t).ok_or(Error::InvalidTriple(*t))
    }

    pub fn matrices(&self) -> impl Iterator<Item = (&BTriple, &DenseMatrix<F>)> {
        self.mats.iter()
    }

    /// The matrix of a combination of basis elements.
    pub fn t_matrix(&self, a: &TElement<F::Elem>) -> Result<DenseMatrix<F>> {
        let mut out = DenseMatrix::zeros(self.oracle.field().clone(), self.oracle.size());
        for (t, c) in a.iter() {
            out = out.add(&self.b_matrix(t)?.scale(c))?;
        }
        Ok(out)
    }
}
