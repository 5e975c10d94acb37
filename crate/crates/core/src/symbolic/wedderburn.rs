use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::RelIndex;

use super::{BTriple, SymbolicAlgebra};

/// One class of `D`-triples sharing the signature `tilde(g∩i) \ h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ApproxClass {
    /// 1-based, in ascending signature order.
    pub class_index: usize,
    pub signature: RelIndex,
    pub triples: Vec<BTriple>,
    pub diag_indices: Vec<RelIndex>,
}

impl ApproxClass {
    /// The unique triple `(a, q, c)` of the class with outer indices `(a, c)`.
    pub fn matrix_unit(&self, a: RelIndex, c: RelIndex) -> Option<BTriple> {
        self.triples.iter().copied().find(|t| t.g == a && t.i == c)
    }
}

/// Block sizes of `T / Rad(T)` and the radical dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WedderburnType {
    /// Sorted descending.
    pub block_sizes: Vec<usize>,
    pub radical_dim: usize,
}

impl<F: Field> SymbolicAlgebra<F> {
    /// Signature of a `D`-triple.
    pub fn signature(&self, t: &BTriple) -> RelIndex {
        self.params.tilde(t.g.meet(t.i)).diff(t.h)
    }

    /// The partition of `D`-triples by signature, ascending.
    pub fn approx_classes(&self) -> Vec<ApproxClass> {
        let mut by_sig: BTreeMap<RelIndex, Vec<BTriple>> = BTreeMap::new();
        for t in self.basis() {
            if !self.divides_valency(t.h) {
                by_sig.entry(self.signature(&t)).or_default().push(t);
            }
        }
        by_sig
            .into_iter()
            .enumerate()
            .map(|(k, (signature, triples))| {
                let diag_indices = triples.iter().filter(|t| t.g == t.i).map(|t| t.g).collect();
                ApproxClass { class_index: k + 1, signature, triples, diag_indices }
            })
            .collect()
    }

    /// Block sizes without enumerating triples, sorted descending.
    ///
    /// A class is fixed by its signature, a subset `r` of the big positions.
    /// Its diagonal indices range freely over thin positions and over big
    /// positions outside `r` with `u_a ≢ 1 (mod p)`, and are pinned elsewhere.
    pub fn block_sizes_by_position(&self) -> Vec<u128> {
        let free_big = self.params.big_mask().diff(self.one_mod).weight() as usize;
        let pinned = self.one_mod.weight();
        let thin = self.params.thin_rank();
        let mut out = Vec::new();
        for s in 0..=free_big {
            let size = 1u128 << (thin + free_big - s);
            let count = super::binomial(free_big, s) << pinned;
            out.extend(std::iter::repeat_n(size, count as usize));
        }
        out
    }

    /// Block sizes `|D(m)|` with the radical dimension; checked against the
    /// total dimension and the per-class bijection onto `D(m) × D(m)`.
    pub fn wedderburn_type(&self) -> Result<WedderburnType> {
        let classes = self.approx_classes();
        for c in &classes {
            if c.triples.len() != c.diag_indices.len() * c.diag_indices.len() {
                return Err(Error::RuleViolation(format!(
                    "class {} has {} triples but {} diagonal indices",
                    c.class_index,
                    c.triples.len(),
                    c.diag_indices.len()
                )));
            }
        }
        let mut block_sizes: Vec<usize> = classes.iter().map(|c| c.diag_indices.len()).collect();
        block_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let radical_dim = self.radical_basis().len();
        let total = radical_dim + block_sizes.iter().map(|s| s * s).sum::<usize>();
        if total != self.dim() {
            return Err(Error::RuleViolation(format!("radical plus blocks give {total}, not {}", self.dim())));
        }
        Ok(WedderburnType { block_sizes, radical_dim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::index::SchemeParams;
    use crate::linalg::EchelonBasis;
    use crate::symbolic::TElement;

    fn params(u: &[u32]) -> SchemeParams {
        SchemeParams::new(u.to_vec()).unwrap()
    }

    fn triples(v: &[(u32, u32, u32)]) -> Vec<BTriple> {
        v.iter().map(|&(g, h, i)| BTriple::new(g, h, i)).collect()
    }

    #[test]
    fn worked_classes() {
        let q = SymbolicAlgebra::new(params(&[2, 3]), PrimeField::new(2).unwrap());
        let classes = q.approx_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].triples, triples(&[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]));
        assert_eq!(classes[1].triples, triples(&[(2, 0, 2), (2, 1, 3), (3, 0, 3), (3, 1, 2)]));
        assert_eq!(classes[0].diag_indices, vec![RelIndex(0), RelIndex(1)]);
        assert_eq!(classes[1].diag_indices, vec![RelIndex(2), RelIndex(3)]);
        let w = q.wedderburn_type().unwrap();
        assert_eq!(w, WedderburnType { block_sizes: vec![2, 2], radical_dim: 12 });
    }

    #[test]
    fn two_point_scheme() {
        for ch in [0u64, 2, 3] {
            let w = if ch == 0 {
                SymbolicAlgebra::new(params(&[2]), Rationals).wedderburn_type().unwrap()
            } else {
                SymbolicAlgebra::new(params(&[2]), PrimeField::new(ch).unwrap()).wedderburn_type().unwrap()
            };
            assert_eq!(w, WedderburnType { block_sizes: vec![2], radical_dim: 0 });
        }
        let q = SymbolicAlgebra::new(params(&[2]), Rationals);
        let classes = q.approx_classes();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].triples.len(), 4);
    }

    #[test]
    fn semisimple_blocks_fill_dimension() {
        let q = SymbolicAlgebra::new(params(&[2, 3]), PrimeField::new(3).unwrap());
        let w = q.wedderburn_type().unwrap();
        assert_eq!(w.radical_dim, 0);
        assert_eq!(w.block_sizes.iter().map(|s| s * s).sum::<usize>(), 20);
    }

    #[test]
    fn product_forms_match_enumeration() {
        for u in [vec![2, 3], vec![3, 3, 2], vec![4, 5, 2], vec![2, 2], vec![3, 4, 7]] {
            for ch in [0u64, 2, 3, 5] {
                let (blocks, rad, w) = if ch == 0 {
                    let q = SymbolicAlgebra::new(params(&u), Rationals);
                    (q.block_sizes_by_position(), q.radical_dim_by_position(), q.wedderburn_type().unwrap())
                } else {
                    let q = SymbolicAlgebra::new(params(&u), PrimeField::new(ch).unwrap());
                    (q.block_sizes_by_position(), q.radical_dim_by_position(), q.wedderburn_type().unwrap())
                };
                assert_eq!(blocks, w.block_sizes.iter().map(|&b| b as u128).collect::<Vec<_>>(), "u={u:?} p={ch}");
                assert_eq!(rad, w.radical_dim as u128);
            }
        }
    }

    fn check_matrix_units<F: Field>(q: &SymbolicAlgebra<F>) {
        let mut span = EchelonBasis::new(q.field().clone(), q.dim());
        for t in q.radical_basis() {
            span.insert(&q.coordinates(&q.b(t).unwrap()));
        }
        for c in q.approx_classes() {
            for a in &c.diag_indices {
                for b in &c.diag_indices {
                    let ab = c.matrix_unit(*a, *b).unwrap();
                    let dab = q.d_element(ab.g, ab.h, ab.i).unwrap();
                    span.insert(&q.coordinates(&dab));
                    for e in &c.diag_indices {
                        for f in &c.diag_indices {
                            let ef = c.matrix_unit(*e, *f).unwrap();
                            let prod = q.t_mul(&dab, &q.d_element(ef.g, ef.h, ef.i).unwrap());
                            let expect = if b == e {
                                let af = c.matrix_unit(*a, *f).unwrap();
                                q.d_element(af.g, af.h, af.i).unwrap()
                            } else {
                                TElement::zero()
                            };
                            assert_eq!(prod, expect);
                        }
                    }
                }
            }
        }
        assert_eq!(span.dim(), q.dim());
    }

    #[test]
    fn matrix_unit_tables() {
        for u in [vec![2, 3], vec![3, 3], vec![2, 4, 3]] {
            for ch in [0u64, 2, 3] {
                if ch == 0 {
                    check_matrix_units(&SymbolicAlgebra::new(params(&u), Rationals));
                } else {
                    check_matrix_units(&SymbolicAlgebra::new(params(&u), PrimeField::new(ch).unwrap()));
                }
            }
        }
    }
}
