//! The Terwilliger algebra in closed form, on the basis of `B`-elements.
//!
//! `B_{g,h,i} = Σ_{g⊕i ≤ j ≤ h} E_g* A_j E_i*` for each triple with
//! `g⊕h ≤ i ≤ g⊙h`. Products of basis elements are single scaled basis
//! elements, so the whole algebra is computed without matrices.

mod center;
mod delements;
mod radical;
mod realize;
mod wedderburn;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::{RelIndex, SchemeParams};
use crate::linalg::SparseVec;
use crate::scheme::in_window;

pub use realize::{b_to_matrix, Realization};
pub use wedderburn::{ApproxClass, WedderburnType};

/// Index triple of a basis element `B_{g,h,i}`; ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BTriple {
    pub g: RelIndex,
    pub h: RelIndex,
    pub i: RelIndex,
}

impl BTriple {
    pub fn new(g: impl Into<RelIndex>, h: impl Into<RelIndex>, i: impl Into<RelIndex>) -> Self {
        BTriple { g: g.into(), h: h.into(), i: i.into() }
    }

    pub fn is_valid(&self, params: &SchemeParams) -> bool {
        [self.g, self.h, self.i].iter().all(|r| params.check(*r).is_ok()) && in_window(self.g, self.h, self.i, params)
    }

    pub fn transpose(&self) -> Self {
        BTriple { g: self.i, h: self.h, i: self.g }
    }
}

impl fmt::Display for BTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{{{},{},{}}}", self.g, self.h, self.i)
    }
}

/// All valid triples in lexicographic order.
pub fn b_triples(params: &SchemeParams) -> Vec<BTriple> {
    let mut out = Vec::new();
    for g in params.relations() {
        for h in params.relations() {
            for i in RelIndex::interval(g.symdiff(h), params.odot(g, h)) {
                out.push(BTriple { g, h, i });
            }
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

/// `Σ C(n2,g) C(n−n2,h) C(g,i) C(h,j) 2^{n−g−h+i}` over `g ≤ n2`, `h ≤ n−n2`,
/// `i ≤ g`, `j ≤ h`.
pub fn dim_formula(params: &SchemeParams) -> u128 {
    let (n, n2) = (params.n(), params.n2());
    let mut total = 0u128;
    for g in 0..=n2 {
        for h in 0..=n - n2 {
            for i in 0..=g {
                for j in 0..=h {
                    total += (binomial(n2, g) * binomial(n - n2, h) * binomial(g, i) * binomial(h, j)) << (n - g - h + i);
                }
            }
        }
    }
    total
}

/// `4^{n−n2} · 5^{n2}`: validity of a triple is a per-coordinate condition
/// with four admissible bit patterns at a thin position and five at a big one.
pub fn dim_by_position(params: &SchemeParams) -> u128 {
    4u128.pow((params.n() - params.n2()) as u32) * 5u128.pow(params.n2() as u32)
}

/// A finite combination of `B`-elements; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TElement<E> {
    coeffs: BTreeMap<BTriple, E>,
}

impl<E: Clone + Zero> TElement<E> {
    pub fn zero() -> Self {
        TElement { coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: &BTriple) -> Option<&E> {
        self.coeffs.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BTriple, &E)> {
        self.coeffs.iter()
    }

    /// `Supp_B`, in lexicographic order.
    pub fn support(&self) -> Vec<BTriple> {
        self.coeffs.keys().copied().collect()
    }
}

/// The algebra `T` over a given field, with every operation in closed form.
#[derive(Debug, Clone)]
pub struct SymbolicAlgebra<F: Field> {
    params: SchemeParams,
    field: F,
    one_mod: RelIndex,
    positions: OnceLock<BTreeMap<BTriple, usize>>,
}

impl<F: Field> SymbolicAlgebra<F> {
    pub fn new(params: SchemeParams, field: F) -> Self {
        let one_mod = params.one_mod_mask(field.characteristic());
        SymbolicAlgebra { params, field, one_mod, positions: OnceLock::new() }
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// `k̄_g`, the valency as a field element.
    pub fn kbar(&self, g: RelIndex) -> F::Elem {
        (1..=self.params.n())
            .filter(|a| g.0 >> (a - 1) & 1 == 1)
            .fold(self.field.one(), |acc, a| {
                self.field.mul(&acc, &self.field.from_u64(self.params.factor(a) as u64 - 1))
            })
    }

    /// `p | k_g`: some position of `g` has `u_a ≡ 1 (mod p)`.
    pub fn divides_valency(&self, g: RelIndex) -> bool {
        g.meet(self.one_mod) != RelIndex::ZERO
    }

    /// Positions `a` with `u_a ≡ 1 (mod p)`.
    pub fn one_mod_mask(&self) -> RelIndex {
        self.one_mod
    }

    pub fn check_triple(&self, t: BTriple) -> Result<BTriple> {
        for r in [t.g, t.h, t.i] {
            self.params.check(r)?;
        }
        if t.is_valid(&self.params) {
            Ok(t)
        } else {
            Err(Error::InvalidTriple(t))
        }
    }

    pub fn basis(&self) -> Vec<BTriple> {
        b_triples(&self.params)
    }

    pub fn dim(&self) -> usize {
        self.positions().len()
    }

    fn positions(&self) -> &BTreeMap<BTriple, usize> {
        self.positions.get_or_init(|| self.basis().into_iter().enumerate().map(|(k, t)| (t, k)).collect())
    }

    /// Position of a triple in the lexicographic basis.
    pub fn position(&self, t: &BTriple) -> Result<usize> {
        self.positions().get(t).copied().ok_or(Error::InvalidTriple(*t))
    }

    /// Coordinates with respect to the lexicographic basis.
    pub fn coordinates(&self, a: &TElement<F::Elem>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> =
            a.iter().map(|(t, c)| (self.positions()[t], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Builds an element from terms, summing repeats and dropping zeros.
    pub fn from_terms<I>(&self, terms: I) -> Result<TElement<F::Elem>>
    where
        I: IntoIterator<Item = (BTriple, F::Elem)>,
    {
        let mut out = TElement::zero();
        for (t, c) in terms {
            self.check_triple(t)?;
            self.accumulate(&mut out, t, c);
        }
        Ok(out)
    }

    fn accumulate(&self, out: &mut TElement<F::Elem>, t: BTriple, c: F::Elem) {
        if c.is_zero() {
            return;
        }
        match out.coeffs.get_mut(&t) {
            Some(v) => {
                *v = self.field.add(v, &c);
                if v.is_zero() {
                    out.coeffs.remove(&t);
                }
            }
            None => {
                out.coeffs.insert(t, c);
            }
        }
    }

    /// The basis element `B_t`.
    pub fn b(&self, t: BTriple) -> Result<TElement<F::Elem>> {
        self.from_terms([(t, self.field.one())])
    }

    /// `I = Σ_g B_{g,0,g}`.
    pub fn identity(&self) -> TElement<F::Elem> {
        let mut out = TElement::zero();
        for g in self.params.relations() {
            out.coeffs.insert(BTriple { g, h: RelIndex::ZERO, i: g }, self.field.one());
        }
        out
    }

    pub fn add(&self, a: &TElement<F::Elem>, b: &TElement<F::Elem>) -> TElement<F::Elem> {
        let mut out = a.clone();
        for (t, c) in b.iter() {
            self.accumulate(&mut out, *t, c.clone());
        }
        out
    }

    pub fn sub(&self, a: &TElement<F::Elem>, b: &TElement<F::Elem>) -> TElement<F::Elem> {
        self.add(a, &self.scale(&self.field.from_int(-1), b))
    }

    pub fn scale(&self, c: &F::Elem, a: &TElement<F::Elem>) -> TElement<F::Elem> {
        let mut out = TElement::zero();
        for (t, x) in a.iter() {
            self.accumulate(&mut out, *t, self.field.mul(c, x));
        }
        out
    }

    /// The one-term rule for a product whose inner indices agree:
    /// `B_{g,h,i} B_{i,j,k} = k̄_{h∩i∩j} B_{g,m,k}`.
    fn b_mul_unchecked(&self, s: &BTriple, t: &BTriple) -> Option<(BTriple, F::Elem)> {
        if s.i != t.g {
            return None;
        }
        let c = self.kbar(s.h.meet(s.i).meet(t.h));
        let m = self.params.m5(s.g, s.h, s.i, t.h, t.i);
        Some((BTriple { g: s.g, h: m, i: t.i }, c))
    }

    /// `B_s B_t`.
    pub fn b_mul(&self, s: BTriple, t: BTriple) -> Result<TElement<F::Elem>> {
        self.check_triple(s)?;
        self.check_triple(t)?;
        let mut out = TElement::zero();
        if let Some((r, c)) = self.b_mul_unchecked(&s, &t) {
            self.check_triple(r)?;
            self.accumulate(&mut out, r, c);
        }
        Ok(out)
    }

    /// The bilinear extension of [`Self::b_mul`].
    pub fn t_mul(&self, a: &TElement<F::Elem>, b: &TElement<F::Elem>) -> TElement<F::Elem> {
        let mut by_left: BTreeMap<RelIndex, Vec<(&BTriple, &F::Elem)>> = BTreeMap::new();
        for (t, c) in b.iter() {
            by_left.entry(t.g).or_default().push((t, c));
        }
        let mut out = TElement::zero();
        for (s, cs) in a.iter() {
            let Some(right) = by_left.get(&s.i) else { continue };
            for (t, ct) in right {
                if let Some((r, c)) = self.b_mul_unchecked(s, t) {
                    let c = self.field.mul(&c, &self.field.mul(cs, ct));
                    self.accumulate(&mut out, r, c);
                }
            }
        }
        out
    }

    /// `E_g* A_h E_i*` on the `B`-basis, by Möbius inversion over the window
    /// `[g⊕i, h]`: `Σ_j (−1)^{|h|−|j|} B_{g,j,i}`.
    pub fn eae_to_b(&self, g: RelIndex, h: RelIndex, i: RelIndex) -> Result<TElement<F::Elem>> {
        self.check_triple(BTriple { g, h, i })?;
        let mut out = TElement::zero();
        for j in RelIndex::interval(g.symdiff(i), h) {
            let sign = if (h.weight() - j.weight()).is_multiple_of(2) { 1 } else { -1 };
            self.accumulate(&mut out, BTriple { g, h: j, i }, self.field.from_int(sign));
        }
        Ok(out)
    }

    /// Sorted `[{"g","h","i","coeff"}]` with rendered coefficients.
    pub fn to_json(&self, a: &TElement<F::Elem>) -> Value {
        Value::Array(
            a.iter()
                .map(|(t, c)| json!({"g": t.g.0, "h": t.h.0, "i": t.i.0, "coeff": self.field.render(c)}))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::scheme::intersection_number;
    use proptest::prelude::*;

    fn params(u: &[u32]) -> SchemeParams {
        SchemeParams::new(u.to_vec()).unwrap()
    }

    fn t(g: u32, h: u32, i: u32) -> BTriple {
        BTriple::new(g, h, i)
    }

    #[test]
    fn triple_counts() {
        assert_eq!(b_triples(&params(&[2, 3])).len(), 20);
        assert_eq!(b_triples(&params(&[2])).len(), 4);
        assert_eq!(b_triples(&params(&[3])).len(), 5);
        assert!(b_triples(&params(&[2, 3])).contains(&t(0, 0, 0)));
        let list = b_triples(&params(&[2, 3, 4]));
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn triple_validity_matches_intersection_numbers() {
        for u in [vec![2, 3], vec![3, 4, 2], vec![2, 2]] {
            let p = params(&u);
            let valid: Vec<BTriple> = b_triples(&p);
            let mut by_numbers = Vec::new();
            for g in p.relations() {
                for h in p.relations() {
                    for i in p.relations() {
                        if intersection_number(g, h, i, &p) != 0 {
                            by_numbers.push(BTriple { g, h, i });
                        }
                    }
                }
            }
            assert_eq!(valid, by_numbers);
            // validity is symmetric under all permutations
            for x in &valid {
                for y in [BTriple { g: x.h, h: x.g, i: x.i }, BTriple { g: x.i, h: x.h, i: x.g }, BTriple { g: x.g, h: x.i, i: x.h }] {
                    assert!(y.is_valid(&p));
                }
            }
        }
    }

    #[test]
    fn dim_formula_examples() {
        assert_eq!(dim_formula(&params(&[2, 3])), 20);
        assert_eq!(dim_formula(&params(&[2])), 4);
        assert_eq!(dim_formula(&params(&[3])), 5);
        assert_eq!(dim_formula(&params(&[2, 2, 2])), 64);
        assert_eq!(dim_formula(&params(&[4, 4, 4])), 125);
        for u in [vec![2, 3, 4], vec![3, 3], vec![2, 2, 3, 3], vec![5, 2, 2, 2]] {
            let p = params(&u);
            assert_eq!(dim_formula(&p), b_triples(&p).len() as u128, "u={u:?}");
        }
    }

    #[test]
    fn dim_by_position_matches_formula() {
        for u in [vec![2], vec![3, 2], vec![2, 3, 4], vec![3, 3, 3, 2], vec![2; 12], vec![7, 2, 9, 2, 5]] {
            let p = params(&u);
            assert_eq!(dim_by_position(&p), dim_formula(&p), "u={u:?}");
        }
    }

    #[test]
    fn b_mul_examples() {
        let p = params(&[2, 3]);
        let q = SymbolicAlgebra::new(p.clone(), Rationals);
        let prod = q.b_mul(t(2, 3, 3), t(3, 2, 3)).unwrap();
        assert_eq!(prod, q.from_terms([(t(2, 3, 3), Rationals.from_int(2))]).unwrap());
        let f2 = SymbolicAlgebra::new(p.clone(), PrimeField::new(2).unwrap());
        assert!(f2.b_mul(t(2, 3, 3), t(3, 2, 3)).unwrap().is_zero());
        for x in b_triples(&p) {
            let left = q.b_mul(BTriple::new(x.g, 0, x.g), x).unwrap();
            assert_eq!(left, q.b(x).unwrap());
            let right = q.b_mul(x, BTriple::new(x.i, 0, x.i)).unwrap();
            assert_eq!(right, q.b(x).unwrap());
        }
        assert_eq!(q.b_mul(t(0, 1, 0), t(0, 0, 0)), Err(Error::InvalidTriple(t(0, 1, 0))));
        assert!(q.b_mul(t(0, 0, 0), t(1, 0, 1)).unwrap().is_zero());
    }

    #[test]
    fn identity_is_unit() {
        let q = SymbolicAlgebra::new(params(&[2, 3, 3]), PrimeField::new(3).unwrap());
        let one = q.identity();
        for x in q.basis() {
            let b = q.b(x).unwrap();
            assert_eq!(q.t_mul(&one, &b), b);
            assert_eq!(q.t_mul(&b, &one), b);
        }
    }

    #[test]
    fn eae_to_b_examples() {
        let q = SymbolicAlgebra::new(params(&[2, 3]), Rationals);
        let e = q.eae_to_b(RelIndex(2), RelIndex(3), RelIndex(3)).unwrap();
        let minus_one = Rationals.from_int(-1);
        assert_eq!(e, q.from_terms([(t(2, 3, 3), Rationals.one()), (t(2, 1, 3), minus_one)]).unwrap());
        for x in q.basis() {
            let lo = x.g.symdiff(x.i);
            assert_eq!(q.eae_to_b(x.g, lo, x.i).unwrap(), q.b(BTriple { g: x.g, h: lo, i: x.i }).unwrap());
        }
        assert!(q.eae_to_b(RelIndex(0), RelIndex(1), RelIndex(0)).is_err());
    }

    #[test]
    fn json_is_sorted_and_rendered() {
        let q = SymbolicAlgebra::new(params(&[2, 3]), Rationals);
        let e = q.eae_to_b(RelIndex(2), RelIndex(3), RelIndex(3)).unwrap();
        let js = q.to_json(&e).to_string();
        assert_eq!(js, r#"[{"coeff":"-1/1","g":2,"h":1,"i":3},{"coeff":"1/1","g":2,"h":3,"i":3}]"#);
        let f3 = SymbolicAlgebra::new(params(&[2, 3]), PrimeField::new(3).unwrap());
        let e = f3.eae_to_b(RelIndex(2), RelIndex(3), RelIndex(3)).unwrap();
        assert_eq!(f3.to_json(&e)[0]["coeff"], "2");
    }

    #[test]
    fn divisibility_matches_valency() {
        let p = params(&[2, 3, 4, 7]);
        for ch in [0u64, 2, 3, 5] {
            let alg: Box<dyn Fn(RelIndex) -> bool> = if ch == 0 {
                let a = SymbolicAlgebra::new(p.clone(), Rationals);
                Box::new(move |g| a.divides_valency(g))
            } else {
                let a = SymbolicAlgebra::new(p.clone(), PrimeField::new(ch).unwrap());
                Box::new(move |g| a.divides_valency(g))
            };
            for g in p.relations() {
                assert_eq!(alg(g), crate::field::divides(ch, crate::scheme::valency(g, &p)));
            }
        }
    }

    fn triple_strategy() -> impl Strategy<Value = (usize, usize, usize)> {
        (0usize..20, 0usize..20, 0usize..20)
    }

    proptest! {
        #[test]
        fn associativity_on_basis((a, b, c) in triple_strategy(), ch in prop::sample::select(vec![0u64, 2, 3])) {
            let p = params(&[2, 3]);
            let basis = b_triples(&p);
            if ch == 0 {
                let q = SymbolicAlgebra::new(p, Rationals);
                let (x, y, z) = (q.b(basis[a]).unwrap(), q.b(basis[b]).unwrap(), q.b(basis[c]).unwrap());
                prop_assert_eq!(q.t_mul(&q.t_mul(&x, &y), &z), q.t_mul(&x, &q.t_mul(&y, &z)));
            } else {
                let q = SymbolicAlgebra::new(p, PrimeField::new(ch).unwrap());
                let (x, y, z) = (q.b(basis[a]).unwrap(), q.b(basis[b]).unwrap(), q.b(basis[c]).unwrap());
                prop_assert_eq!(q.t_mul(&q.t_mul(&x, &y), &z), q.t_mul(&x, &q.t_mul(&y, &z)));
            }
        }

        #[test]
        fn associativity_on_combinations(coeffs in prop::collection::vec(-3i64..4, 60)) {
            let p = params(&[2, 3]);
            let basis = b_triples(&p);
            let q = SymbolicAlgebra::new(p, Rationals);
            let elems: Vec<_> = coeffs
                .chunks(20)
                .map(|cs| q.from_terms(basis.iter().zip(cs).map(|(t, &c)| (*t, Rationals.from_int(c)))).unwrap())
                .collect();
            let (x, y, z) = (&elems[0], &elems[1], &elems[2]);
            prop_assert_eq!(q.t_mul(&q.t_mul(x, y), z), q.t_mul(x, &q.t_mul(y, z)));
            prop_assert_eq!(q.t_mul(x, &q.add(y, z)), q.add(&q.t_mul(x, y), &q.t_mul(x, z)));
        }
    }
}
