use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::RelIndex;

use super::{BTriple, SymbolicAlgebra, TElement};

impl<F: Field> SymbolicAlgebra<F> {
    /// Whether `D_{g,h,i}` is defined: a valid triple with `p ∤ k_h`.
    pub fn has_d_element(&self, t: BTriple) -> bool {
        t.is_valid(&self.params) && !self.divides_valency(t.h)
    }

    /// `D_{g,h,i} = Σ (−1)^{|a|−|h|} k̄_{i∩a}^{-1} B_{g,a,i}` over
    /// `h ≤ a ≤ g⊙i` with `p ∤ k_a`.
    pub fn d_element(&self, g: RelIndex, h: RelIndex, i: RelIndex) -> Result<TElement<F::Elem>> {
        let t = self.check_triple(BTriple { g, h, i })?;
        if self.divides_valency(h) {
            return Err(Error::UndefinedDElement { triple: t, middle: h.0 });
        }
        let mut out = TElement::zero();
        for a in RelIndex::interval(h, self.params.odot(g, i)) {
            if self.divides_valency(a) {
                continue;
            }
            let inv = self.field.inv(&self.kbar(i.meet(a)))?;
            let c = if (a.weight() - h.weight()).is_multiple_of(2) { inv } else { self.field.neg(&inv) };
            self.accumulate(&mut out, BTriple { g, h: a, i }, c);
        }
        Ok(out)
    }

    fn d_of(&self, t: BTriple) -> Result<TElement<F::Elem>> {
        self.d_element(t.g, t.h, t.i)
    }

    /// `B_s D_t`, checked against the closed form
    /// `B_{j,k,g} D_{g,h,i} = k̄_{g∩k} D_{j,m,i}`, `m = (i⊕j) ∪ (tilde(i∩j) ∩ h)`,
    /// nonzero iff the inner indices agree and `tilde(g∩i) ∩ k ≤ h`.
    ///
    /// The rule needs `p ∤ k_k`; for other `s` the product is returned unchecked.
    pub fn bd_mul(&self, s: BTriple, t: BTriple) -> Result<TElement<F::Elem>> {
        let b = self.b(s)?;
        let d = self.d_of(t)?;
        let prod = self.t_mul(&b, &d);
        if self.divides_valency(s.h) {
            return Ok(prod);
        }
        let (j, k, l) = (s.g, s.h, s.i);
        let (g, h, i) = (t.g, t.h, t.i);
        let expected = if g == l && self.params.tilde(g.meet(i)).meet(k).le2(h) {
            let m = i.symdiff(j).join(self.params.tilde(i.meet(j)).meet(h));
            let dm = self.d_element(j, m, i).map_err(|e| Error::RuleViolation(format!("{s}·D{t}: {e}")))?;
            self.scale(&self.kbar(g.meet(k)), &dm)
        } else {
            TElement::zero()
        };
        if prod != expected {
            return Err(Error::RuleViolation(format!("{s}·D{t} disagrees with the closed form")));
        }
        Ok(prod)
    }

    /// `D_s D_t`, checked against the closed form
    /// `D_{j,k,g} D_{g,h,i} = D_{j,m,i}`, `m = (i⊕j) ∪ (tilde(i∩j) ∩ h)`,
    /// nonzero iff the inner indices agree, `tilde(g∩i) \ h ≤ j` and
    /// `k = (g⊕j) ∪ (tilde(g∩j) ∩ h)`.
    pub fn d_mul(&self, s: BTriple, t: BTriple) -> Result<TElement<F::Elem>> {
        let prod = self.t_mul(&self.d_of(s)?, &self.d_of(t)?);
        let (j, k, l) = (s.g, s.h, s.i);
        let (g, h, i) = (t.g, t.h, t.i);
        let tl = &self.params;
        let nonzero = g == l
            && tl.tilde(g.meet(i)).diff(h).le2(j)
            && k == g.symdiff(j).join(tl.tilde(g.meet(j)).meet(h));
        let expected = if nonzero {
            let m = i.symdiff(j).join(tl.tilde(i.meet(j)).meet(h));
            self.d_element(j, m, i).map_err(|e| Error::RuleViolation(format!("D{s}·D{t}: {e}")))?
        } else {
            TElement::zero()
        };
        if prod != expected {
            return Err(Error::RuleViolation(format!("D{s}·D{t} disagrees with the closed form")));
        }
        Ok(prod)
    }
}
