use crate::error::Result;
use crate::field::Field;
use crate::index::RelIndex;

use super::{BTriple, SymbolicAlgebra, TElement};

impl<F: Field> SymbolicAlgebra<F> {
    /// Basis triples `(a, b, c)` with `p | k_b`; they span the Jacobson radical.
    pub fn radical_basis(&self) -> Vec<BTriple> {
        self.basis().into_iter().filter(|t| self.divides_valency(t.h)).collect()
    }

    /// `2·|{a : u_a ≡ 1 (mod p)}| + 1`; 1 when the radical is zero.
    pub fn radical_nilpotency(&self) -> usize {
        2 * self.one_mod.weight() as usize + 1
    }

    /// `|radical_basis()|` without enumeration: positions with `u_a ≡ 1 (mod p)`
    /// admit two middle-free bit patterns, so `4^{thin} 5^{big} 2^{m}` triples
    /// avoid the radical.
    pub fn radical_dim_by_position(&self) -> u128 {
        let m = self.one_mod.weight();
        let big = self.params.n2() as u32 - m;
        let thin = self.params.thin_rank() as u32;
        super::dim_by_position(&self.params) - 4u128.pow(thin) * 5u128.pow(big) * 2u128.pow(m)
    }

    /// `p ∤ k_d`.
    pub fn is_semisimple(&self) -> bool {
        !self.divides_valency(self.params.d())
    }

    /// `{B_{g,a,g} : a ≤ tilde(g)}`, a basis of `E_g* T E_g*`.
    pub fn local_basis(&self, g: RelIndex) -> Result<Vec<BTriple>> {
        self.params.check(g)?;
        Ok(RelIndex::interval(RelIndex::ZERO, self.params.tilde(g))
            .into_iter()
            .map(|a| BTriple { g, h: a, i: g })
            .collect())
    }

    /// The local basis elements with `p | k_a`.
    pub fn local_radical(&self, g: RelIndex) -> Result<Vec<BTriple>> {
        Ok(self.local_basis(g)?.into_iter().filter(|t| self.divides_valency(t.h)).collect())
    }

    /// `|{a ∈ P(g) : u_a ≡ 1 (mod p)}| + 1`.
    pub fn local_nilpotency(&self, g: RelIndex) -> Result<usize> {
        self.params.check(g)?;
        Ok(g.meet(self.one_mod).weight() as usize + 1)
    }

    /// `2^{n_{0, tilde(g)}}`, the dimension of the local algebra modulo its radical.
    pub fn local_quotient_dim(&self, g: RelIndex) -> Result<usize> {
        self.params.check(g)?;
        Ok(1 << self.params.tilde(g).diff(self.one_mod).weight())
    }

    /// The local idempotents `D_{g,h,g}`, one per `h ≤ tilde(g)` with `p ∤ k_h`.
    pub fn local_idempotents(&self, g: RelIndex) -> Result<Vec<(RelIndex, TElement<F::Elem>)>> {
        self.local_basis(g)?
            .into_iter()
            .filter(|t| !self.divides_valency(t.h))
            .map(|t| Ok((t.h, self.d_element(g, t.h, g)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::index::SchemeParams;

    fn params(u: &[u32]) -> SchemeParams {
        SchemeParams::new(u.to_vec()).unwrap()
    }

    fn fp(u: &[u32], p: u64) -> SymbolicAlgebra<PrimeField> {
        SymbolicAlgebra::new(params(u), PrimeField::new(p).unwrap())
    }

    #[test]
    fn radical_examples() {
        let rad = fp(&[2, 3], 2).radical_basis();
        let listed: Vec<BTriple> = [
            (0, 2, 2), (0, 3, 3), (1, 2, 3), (1, 3, 2), (2, 2, 0), (2, 2, 2),
            (2, 3, 1), (2, 3, 3), (3, 2, 1), (3, 2, 3), (3, 3, 0), (3, 3, 2),
        ]
        .iter()
        .map(|&(g, h, i)| BTriple::new(g, h, i))
        .collect();
        assert_eq!(rad, listed);
        assert!(SymbolicAlgebra::new(params(&[2, 3]), Rationals).radical_basis().is_empty());
        assert!(fp(&[2, 3], 3).radical_basis().is_empty());
    }

    #[test]
    fn nilpotency_formula_examples() {
        assert_eq!(fp(&[2, 3], 2).radical_nilpotency(), 3);
        assert_eq!(fp(&[3, 3], 2).radical_nilpotency(), 5);
        assert_eq!(SymbolicAlgebra::new(params(&[3, 4, 5]), Rationals).radical_nilpotency(), 1);
        assert_eq!(fp(&[2, 3], 3).radical_nilpotency(), 1);
    }

    #[test]
    fn semisimplicity_examples() {
        assert!(!fp(&[2, 3], 2).is_semisimple());
        for p in [3, 5, 7] {
            assert!(fp(&[2, 3], p).is_semisimple());
        }
        assert!(SymbolicAlgebra::new(params(&[2, 3]), Rationals).is_semisimple());
        assert!(!fp(&[4, 4], 3).is_semisimple());
    }

    #[test]
    fn semisimplicity_coherence() {
        for u in [vec![2, 3], vec![3, 4], vec![2, 2, 5], vec![4, 4, 2]] {
            for p in [2, 3, 5] {
                let q = fp(&u, p);
                let locals_semisimple = q
                    .params()
                    .relations()
                    .all(|g| q.local_radical(g).unwrap().is_empty());
                assert_eq!(q.is_semisimple(), q.radical_basis().is_empty());
                assert_eq!(q.is_semisimple(), locals_semisimple);
            }
        }
    }

    #[test]
    fn local_examples() {
        let q = fp(&[2, 3], 2);
        assert_eq!(q.local_basis(RelIndex(3)).unwrap(), vec![BTriple::new(3, 0, 3), BTriple::new(3, 2, 3)]);
        assert_eq!(q.local_radical(RelIndex(3)).unwrap(), vec![BTriple::new(3, 2, 3)]);
        assert_eq!(q.local_nilpotency(RelIndex(3)).unwrap(), 2);
        assert_eq!(q.local_quotient_dim(RelIndex(0)).unwrap(), 1);
        assert_eq!(q.local_quotient_dim(RelIndex(3)).unwrap(), 1);
        let q0 = SymbolicAlgebra::new(params(&[2, 3]), Rationals);
        assert_eq!(q0.local_quotient_dim(RelIndex(3)).unwrap(), 2);
        assert!(q.local_basis(RelIndex(4)).is_err());
    }

    fn local_nilpotency_by_products<F: Field>(q: &SymbolicAlgebra<F>, g: RelIndex) -> usize {
        let rad: Vec<TElement<F::Elem>> =
            q.local_radical(g).unwrap().into_iter().map(|t| q.b(t).unwrap()).collect();
        if rad.is_empty() {
            return 1;
        }
        // all h-fold products of spanning elements
        let mut words = rad.clone();
        let mut h = 1;
        while words.iter().any(|w| !w.is_zero()) {
            words = words.iter().flat_map(|w| rad.iter().map(move |r| q.t_mul(w, r))).filter(|w| !w.is_zero()).collect();
            h += 1;
        }
        h
    }

    #[test]
    fn local_nilpotency_matches_products() {
        for u in [vec![3, 3, 2], vec![3, 5, 4]] {
            for p in [2, 3] {
                let q = fp(&u, p);
                for g in q.params().relations() {
                    assert_eq!(q.local_nilpotency(g).unwrap(), local_nilpotency_by_products(&q, g), "u={u:?} p={p} g={g}");
                }
            }
        }
    }

    #[test]
    fn local_idempotent_count() {
        for u in [vec![2, 3], vec![3, 3, 4], vec![5, 2]] {
            for p in [2, 3, 5] {
                let q = fp(&u, p);
                for g in q.params().relations() {
                    let ids = q.local_idempotents(g).unwrap();
                    assert_eq!(ids.len(), q.local_quotient_dim(g).unwrap());
                    let sum = ids.iter().fold(TElement::zero(), |acc, (_, d)| q.add(&acc, d));
                    // the idempotents sum to E_g* modulo the local radical
                    let diff = q.sub(&sum, &q.b(BTriple { g, h: RelIndex::ZERO, i: g }).unwrap());
                    assert!(diff.support().iter().all(|t| q.divides_valency(t.h)));
                }
            }
        }
    }
}
