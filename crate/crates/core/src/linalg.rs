//! Sparse vectors and an incrementally maintained reduced row-echelon basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::field::Field;

/// Nonzero entries `(position, value)` sorted by position.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a - c·b` on sparse vectors, dropping cancelled entries.
pub fn sub_scaled<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() || ib < b.len() {
        let pa = a.get(ia).map_or(usize::MAX, |e| e.0);
        let pb = b.get(ib).map_or(usize::MAX, |e| e.0);
        if pa < pb {
            out.push(a[ia].clone());
            ia += 1;
        } else if pb < pa {
            let v = field.neg(&field.mul(c, &b[ib].1));
            if !v.is_zero() {
                out.push((pb, v));
            }
            ib += 1;
        } else {
            let v = field.sub_scaled(&a[ia].1, c, &b[ib].1);
            if !v.is_zero() {
                out.push((pa, v));
            }
            ia += 1;
            ib += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.iter()
        .filter_map(|(p, x)| {
            let y = field.mul(c, x);
            (!y.is_zero()).then_some((*p, y))
        })
        .collect()
}

fn coeff_at<E>(v: &SparseVec<E>, pos: usize) -> Option<&E> {
    v.binary_search_by_key(&pos, |e| e.0).ok().map(|k| &v[k].1)
}

/// Reduced row-echelon basis of a subspace of `F^len`.
///
/// The pivot of a row is its first nonzero position, rows are monic at the
/// pivot and vanish at every other pivot, so the basis is canonical.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    len: usize,
    rows: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, len: usize) -> Self {
        EchelonBasis { field, len, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<F::Elem>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The remainder of `v` after eliminating every pivot position.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: Vec<Option<F::Elem>> = vec![None; self.len];
        let mut touched: Vec<usize> = Vec::with_capacity(v.len());
        for (p, x) in v {
            acc[*p] = Some(x.clone());
            touched.push(*p);
        }
        // rows vanish at foreign pivots, so v's own coefficients stay current
        for (pos, c) in v {
            let Some(row) = self.rows.get(pos) else { continue };
            for (q, y) in row {
                match &mut acc[*q] {
                    Some(a) => *a = f.sub_scaled(a, c, y),
                    slot @ None => {
                        *slot = Some(f.neg(&f.mul(c, y)));
                        touched.push(*q);
                    }
                }
            }
        }
        touched.sort_unstable();
        touched
            .into_iter()
            .filter_map(|p| acc[p].take().filter(|x| !x.is_zero()).map(|x| (p, x)))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead).expect("leading entry is nonzero");
        let r = scale(&self.field, &inv, &r);
        for row in self.rows.values_mut() {
            if let Some(c) = coeff_at(row, pivot).cloned() {
                *row = sub_scaled(&self.field, row, &c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}
