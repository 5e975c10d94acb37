//! Bitmask calculus on relation indices.
//!
//! A relation index `g` in `[0, 2^n - 1]` encodes the set of coordinates in
//! which two points of the factorial scheme differ. Its support is the set of
//! 1-bits, reported 1-indexed. Everything here is pure integer arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of factors accepted by [`SchemeParams`].
pub const MAX_FACTORS: usize = 20;

/// A relation index of the factorial scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelIndex(pub u32);

impl RelIndex {
    pub const ZERO: RelIndex = RelIndex(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Number of coordinates in the support.
    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// `self ≤₂ other`: the support of `self` is contained in that of `other`.
    #[inline]
    pub fn le2(self, other: RelIndex) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn join(self, other: RelIndex) -> RelIndex {
        RelIndex(self.0 | other.0)
    }

    #[inline]
    pub fn meet(self, other: RelIndex) -> RelIndex {
        RelIndex(self.0 & other.0)
    }

    #[inline]
    pub fn diff(self, other: RelIndex) -> RelIndex {
        RelIndex(self.0 & !other.0)
    }

    #[inline]
    pub fn symdiff(self, other: RelIndex) -> RelIndex {
        RelIndex(self.0 ^ other.0)
    }

    /// All indices `a` with `lo ≤₂ a ≤₂ hi`, in increasing numeric order.
    /// Empty when `lo` is not below `hi`.
    pub fn interval(lo: RelIndex, hi: RelIndex) -> Vec<RelIndex> {
        if !lo.le2(hi) {
            return Vec::new();
        }
        let free = hi.0 & !lo.0;
        let mut out: Vec<RelIndex> = subsets_of(free).map(|s| RelIndex(lo.0 | s)).collect();
        out.sort_unstable();
        out
    }
}

/// Iterates over all submasks of `mask`, starting from `mask` itself and ending at 0.
pub fn subsets_of(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

impl fmt::Display for RelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for RelIndex {
    fn from(v: u32) -> Self {
        RelIndex(v)
    }
}

impl BitOr for RelIndex {
    type Output = RelIndex;
    fn bitor(self, rhs: RelIndex) -> RelIndex {
        self.join(rhs)
    }
}

impl BitAnd for RelIndex {
    type Output = RelIndex;
    fn bitand(self, rhs: RelIndex) -> RelIndex {
        self.meet(rhs)
    }
}

impl BitXor for RelIndex {
    type Output = RelIndex;
    fn bitxor(self, rhs: RelIndex) -> RelIndex {
        self.symdiff(rhs)
    }
}

/// Defining data of a factorial scheme: factor sizes `u_1, …, u_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    u: Vec<u32>,
    /// Bits `a` with `u_a > 2`.
    big_mask: u32,
    /// Bits `a` with `u_a = 2`.
    thin_mask: u32,
}

impl SchemeParams {
    pub fn new(u: Vec<u32>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidParams("at least one factor is required".into()));
        }
        if u.len() > MAX_FACTORS {
            return Err(Error::InvalidParams(format!(
                "{} factors given, at most {MAX_FACTORS} supported",
                u.len()
            )));
        }
        if let Some((pos, &v)) = u.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(Error::InvalidParams(format!("u_{} = {v} is below 2", pos + 1)));
        }
        if u.iter().try_fold(1u64, |acc, &v| acc.checked_mul(v as u64)).is_none() {
            return Err(Error::InvalidParams("point count overflows 64 bits".into()));
        }
        let mut big_mask = 0;
        let mut thin_mask = 0;
        for (a, &v) in u.iter().enumerate() {
            if v > 2 {
                big_mask |= 1 << a;
            } else {
                thin_mask |= 1 << a;
            }
        }
        Ok(SchemeParams { u, big_mask, thin_mask })
    }

    pub fn u(&self) -> &[u32] {
        &self.u
    }

    /// Size of factor `a`, 1-indexed.
    pub fn factor(&self, a: usize) -> u32 {
        self.u[a - 1]
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    /// The top relation index `d = 2^n - 1`.
    pub fn d(&self) -> RelIndex {
        RelIndex(((1u64 << self.n()) - 1) as u32)
    }

    pub fn relation_count(&self) -> usize {
        1usize << self.n()
    }

    pub fn relations(&self) -> impl Iterator<Item = RelIndex> {
        (0..=self.d().0).map(RelIndex)
    }

    pub fn n2(&self) -> usize {
        self.big_mask.count_ones() as usize
    }

    /// Number of valency-one relations, `2^{|{a : u_a = 2}|}`.
    pub fn d1(&self) -> u64 {
        1u64 << self.thin_mask.count_ones()
    }

    /// `log2(d1)`.
    pub fn thin_rank(&self) -> usize {
        self.thin_mask.count_ones() as usize
    }

    pub fn big_mask(&self) -> RelIndex {
        RelIndex(self.big_mask)
    }

    pub fn thin_mask(&self) -> RelIndex {
        RelIndex(self.thin_mask)
    }

    /// `|X| = ∏ u_i`; fits in 64 bits by construction.
    pub fn point_count(&self) -> u64 {
        self.u.iter().map(|&v| v as u64).product()
    }

    pub fn check(&self, g: RelIndex) -> Result<RelIndex> {
        if g.0 > self.d().0 {
            Err(Error::IndexOutOfRange { index: g.0 as u64, max: self.d().0 as u64 })
        } else {
            Ok(g)
        }
    }

    /// The index supported on `{a ∈ P(g) : u_a > 2}`.
    #[inline]
    pub fn tilde(&self, g: RelIndex) -> RelIndex {
        RelIndex(g.0 & self.big_mask)
    }

    /// `g ⊙ h = (g ⊕ h) ∪ tilde(g ∩ h)`.
    #[inline]
    pub fn odot(&self, g: RelIndex, h: RelIndex) -> RelIndex {
        g.symdiff(h).join(self.tilde(g.meet(h)))
    }

    /// The five-argument composite index
    /// `(g ⊕ k) ∪ (tilde(g∩k) \ i) ∪ ((h ∪ j) ∩ tilde(g∩k) ∩ i)`.
    #[inline]
    pub fn m5(&self, g: RelIndex, h: RelIndex, i: RelIndex, j: RelIndex, k: RelIndex) -> RelIndex {
        let t = self.tilde(g.meet(k));
        g.symdiff(k).join(t.diff(i)).join(h.join(j).meet(t).meet(i))
    }

    /// `p | (u_a - 1)`, i.e. `u_a ≡ 1 (mod p)`; never true in characteristic 0.
    pub fn factor_is_one_mod(&self, a: usize, p: u64) -> bool {
        p != 0 && (self.factor(a) as u64 - 1).is_multiple_of(p)
    }

    /// Bits `a` with `u_a ≡ 1 (mod p)`.
    pub fn one_mod_mask(&self, p: u64) -> RelIndex {
        let mut m = 0;
        for a in 1..=self.n() {
            if self.factor_is_one_mod(a, p) {
                m |= 1 << (a - 1);
            }
        }
        RelIndex(m)
    }
}

/// 1-indexed support of `g` as a subset of `[1, n]`.
pub fn support(g: RelIndex, n: usize) -> Result<BTreeSet<usize>> {
    if n == 0 || n > MAX_FACTORS {
        return Err(Error::InvalidParams(format!("n = {n} outside [1, {MAX_FACTORS}]")));
    }
    let max = (1u64 << n) - 1;
    if g.0 as u64 > max {
        return Err(Error::IndexOutOfRange { index: g.0 as u64, max });
    }
    Ok((0..n).filter(|b| g.0 >> b & 1 == 1).map(|b| b + 1).collect())
}

/// Index whose support is the given set of 1-indexed positions.
pub fn from_support<I: IntoIterator<Item = usize>>(positions: I) -> RelIndex {
    RelIndex(positions.into_iter().fold(0, |acc, a| acc | 1 << (a - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: u32) -> RelIndex {
        RelIndex(v)
    }

    fn p23() -> SchemeParams {
        SchemeParams::new(vec![2, 3]).unwrap()
    }

    #[test]
    fn support_examples() {
        assert!(support(r(0), 2).unwrap().is_empty());
        assert_eq!(support(r(2), 2).unwrap(), BTreeSet::from([2]));
        assert_eq!(support(r(3), 2).unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(
            support(r(4), 2),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        );
        assert_eq!(from_support([1, 2]), r(3));
    }

    #[test]
    fn order_examples() {
        assert!(r(5).le2(r(5)));
        assert!(r(1).le2(r(3)));
        assert!(!r(2).le2(r(1)));
    }

    #[test]
    fn set_operations() {
        assert_eq!(r(2).symdiff(r(3)), r(1));
        assert_eq!(r(6).symdiff(r(6)), r(0));
        assert_eq!(r(2).join(r(3)), r(3));
        assert_eq!(r(2).meet(r(3)), r(2));
        assert_eq!(r(3).diff(r(2)), r(1));
        assert_eq!(r(2) | r(1), r(3));
    }

    #[test]
    fn tilde_examples() {
        let p = p23();
        assert_eq!(p.tilde(r(3)), r(2));
        assert_eq!(p.tilde(r(0)), r(0));
        let q = SchemeParams::new(vec![3, 3]).unwrap();
        assert_eq!(q.tilde(r(3)), r(3));
    }

    #[test]
    fn odot_examples() {
        let p = p23();
        assert_eq!(p.odot(r(2), r(3)), r(3));
        for g in 0..4 {
            assert_eq!(p.odot(r(g), r(0)), r(g));
        }
        assert_eq!(p.odot(r(3), r(3)), r(2));
    }

    #[test]
    fn m5_examples() {
        let p = p23();
        assert_eq!(p.m5(r(2), r(3), r(3), r(2), r(3)), r(3));
        assert_eq!(p.m5(r(0), r(0), r(0), r(0), r(0)), r(0));
        // g⊕k = 0, tilde(g∩k) = 2, 2\3 = 0, (1∪2)∩2∩3 = 2; bounded above by g⊙k = 2
        assert_eq!(p.m5(r(3), r(1), r(3), r(2), r(3)), r(2));
        assert_eq!(p.odot(r(3), r(3)), r(2));
    }

    #[test]
    fn derived_constants() {
        let p = p23();
        assert_eq!(p.d(), r(3));
        assert_eq!(p.n2(), 1);
        assert_eq!(p.d1(), 2);
        assert_eq!(p.point_count(), 6);
        assert!(SchemeParams::new(vec![u32::MAX; 3]).is_err());
        assert_eq!(p.n2() + p.thin_rank(), p.n());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SchemeParams::new(vec![]).is_err());
        assert!(SchemeParams::new(vec![2, 1]).is_err());
        assert!(SchemeParams::new(vec![2; MAX_FACTORS + 1]).is_err());
    }

    #[test]
    fn interval_enumerates_boolean_window() {
        assert_eq!(RelIndex::interval(r(1), r(7)), vec![r(1), r(3), r(5), r(7)]);
        assert!(RelIndex::interval(r(2), r(1)).is_empty());
        assert_eq!(RelIndex::interval(r(0), r(0)), vec![r(0)]);
    }

    #[test]
    fn partial_order_laws_exhaustive() {
        for g in 0..64u32 {
            for h in 0..64u32 {
                let (g, h) = (r(g), r(h));
                if g.le2(h) && h.le2(g) {
                    assert_eq!(g, h);
                }
                for k in 0..64u32 {
                    let k = r(k);
                    if g.le2(h) && h.le2(k) {
                        assert!(g.le2(k));
                    }
                }
            }
        }
    }

    #[test]
    fn window_claims_exhaustive() {
        for u in [vec![2, 3, 4], vec![3, 2, 2], vec![4, 4, 4], vec![2, 2, 2]] {
            let p = SchemeParams::new(u).unwrap();
            let rels: Vec<RelIndex> = p.relations().collect();
            for &g in &rels {
                let t = p.tilde(g);
                assert_eq!(p.tilde(t), t);
                assert!(t.le2(g));
                for &h in &rels {
                    let o = p.odot(g, h);
                    assert!(g.symdiff(h).le2(o) && o.le2(g.join(h)));
                }
            }
            for &g in &rels {
                for &h in &rels {
                    for &i in &rels {
                        for &j in &rels {
                            for &k in &rels {
                                let m = p.m5(g, h, i, j, k);
                                assert!(g.symdiff(k).le2(m));
                                assert!(m.le2(p.odot(g, k)));
                            }
                        }
                    }
                }
            }
        }
    }
}
