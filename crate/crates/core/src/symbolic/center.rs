use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::{subsets_of, RelIndex};

use super::{BTriple, SymbolicAlgebra, TElement};

impl<F: Field> SymbolicAlgebra<F> {
    fn check_center_index(&self, g: RelIndex) -> Result<()> {
        self.params.check(g)?;
        if g.le2(self.params.tilde(self.params.d())) {
            Ok(())
        } else {
            Err(Error::InvalidCenterIndex(g.0))
        }
    }

    /// `C_g = Σ_i k̄_{g\i} B_{i, g∩i, i}` for `g ≤ tilde(d)`.
    pub fn c_element(&self, g: RelIndex) -> Result<TElement<F::Elem>> {
        self.check_center_index(g)?;
        let mut out = TElement::zero();
        for i in self.params.relations() {
            self.accumulate(&mut out, BTriple { g: i, h: g.meet(i), i }, self.kbar(g.diff(i)));
        }
        Ok(out)
    }

    /// The basis `{C_g : g ≤ tilde(d)}` of the center, ascending in `g`.
    pub fn center_basis(&self) -> Vec<(RelIndex, TElement<F::Elem>)> {
        subsets_of(self.params.big_mask().0)
            .map(|g| {
                let g = RelIndex(g);
                (g, self.c_element(g).expect("subsets of tilde(d) are center indices"))
            })
            .collect()
    }

    /// `C_g C_h = k̄_{g∩h} C_{g∪h}`, returned as the pair `(k̄_{g∩h}, g∪h)`.
    pub fn c_mul(&self, g: RelIndex, h: RelIndex) -> Result<(F::Elem, RelIndex)> {
        self.check_center_index(g)?;
        self.check_center_index(h)?;
        Ok((self.kbar(g.meet(h)), g.join(h)))
    }
}
