//! The factorial scheme on `X = U_1 × … × U_n` with `U_i = [0, u_i)`.
//!
//! Closed-form quantities (valencies, intersection numbers, closed subsets)
//! live next to brute-force point counts over [`PointSet`], which serve as
//! their oracles. Points are encoded mixed-radix little-endian: coordinate 1
//! is the least significant digit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::index::{subsets_of, RelIndex, SchemeParams};

/// Default cap on `|X|` for every brute-force routine.
pub const DEFAULT_MAX_POINTS: u64 = 4096;

/// Environment variable overriding [`DEFAULT_MAX_POINTS`].
pub const MAX_POINTS_ENV: &str = "TERWILLIGER_MAX_POINTS";

/// The oracle cap, honouring `TERWILLIGER_MAX_POINTS` when it parses.
pub fn max_points_from_env() -> u64 {
    std::env::var(MAX_POINTS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_POINTS)
}

/// Largest relation count for which the naive subset scan is run.
pub const SCAN_MAX_D: u32 = 15;

pub type RelSet = BTreeSet<RelIndex>;

/// A point of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<u32>,
}

impl Point {
    pub fn new(coords: Vec<u32>, params: &SchemeParams) -> Result<Self> {
        if coords.len() != params.n() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                params.n(),
                coords.len()
            )));
        }
        for (a, (&c, &u)) in coords.iter().zip(params.u()).enumerate() {
            if c >= u {
                return Err(Error::InvalidPoint(format!("coordinate {} is {c}, must be below {u}", a + 1)));
            }
        }
        Ok(Point { coords })
    }

    pub fn origin(params: &SchemeParams) -> Self {
        Point { coords: vec![0; params.n()] }
    }

    /// Parses the external form `"0,2"`.
    pub fn parse(text: &str, params: &SchemeParams) -> Result<Self> {
        let coords = text
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidPoint(format!("bad coordinate {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Point::new(coords, params)
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn encode(&self, params: &SchemeParams) -> usize {
        let mut idx = 0usize;
        for (&c, &u) in self.coords.iter().zip(params.u()).rev() {
            idx = idx * u as usize + c as usize;
        }
        idx
    }

    pub fn decode(mut idx: usize, params: &SchemeParams) -> Self {
        let coords = params
            .u()
            .iter()
            .map(|&u| {
                let c = (idx % u as usize) as u32;
                idx /= u as usize;
                c
            })
            .collect();
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// The relation containing `(x, y)`: the mask of coordinates where they differ.
pub fn rel(x: &Point, y: &Point) -> Result<RelIndex> {
    if x.coords.len() != y.coords.len() {
        return Err(Error::InvalidPoint(format!(
            "dimension mismatch: {} vs {} coordinates",
            x.coords.len(),
            y.coords.len()
        )));
    }
    Ok(RelIndex(
        x.coords
            .iter()
            .zip(&y.coords)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .fold(0, |acc, (i, _)| acc | 1 << i),
    ))
}

/// `k_g = ∏_{a ∈ P(g)} (u_a - 1)`.
pub fn valency(g: RelIndex, params: &SchemeParams) -> u64 {
    (1..=params.n())
        .filter(|a| g.0 >> (a - 1) & 1 == 1)
        .map(|a| params.factor(a) as u64 - 1)
        .product()
}

/// Whether `g ⊕ h ≤₂ i ≤₂ g ⊙ h`, the exact support of `p_{gh}^i`.
#[inline]
pub fn in_window(g: RelIndex, h: RelIndex, i: RelIndex, params: &SchemeParams) -> bool {
    g.symdiff(h).le2(i) && i.le2(params.odot(g, h))
}

/// `p_{gh}^i` in closed form: zero outside the window, otherwise
/// `∏_{j ∈ P}(u_j - 2) ∏_{k ∈ Q}(u_k - 1)` with `P = P(i) \ P(g⊕h)` and
/// `Q = P₂(g∩h) \ P`.
pub fn intersection_number(g: RelIndex, h: RelIndex, i: RelIndex, params: &SchemeParams) -> u64 {
    if !in_window(g, h, i, params) {
        return 0;
    }
    let extra = i.diff(g.symdiff(h));
    let rest = params.tilde(g.meet(h)).diff(extra);
    let mut out = 1u64;
    for a in 1..=params.n() {
        let bit = 1 << (a - 1);
        let u = params.factor(a) as u64;
        if extra.0 & bit != 0 {
            out *= u - 2;
        } else if rest.0 & bit != 0 {
            out *= u - 1;
        }
    }
    out
}

/// Explicit enumeration of `X`, backing every brute-force count.
#[derive(Debug, Clone)]
pub struct PointSet {
    params: SchemeParams,
    count: usize,
    coords: Vec<u32>,
}

impl PointSet {
    /// Refuses schemes with more than `cap` points.
    pub fn new(params: &SchemeParams, cap: u64) -> Result<Self> {
        let points = params.point_count();
        if points > cap {
            return Err(Error::SizeCap { points, cap });
        }
        let count = points as usize;
        let n = params.n();
        let mut coords = Vec::with_capacity(count * n);
        for idx in 0..count {
            coords.extend_from_slice(Point::decode(idx, params).coords());
        }
        Ok(PointSet { params: params.clone(), count, coords })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn point(&self, idx: usize) -> Point {
        let n = self.params.n();
        Point { coords: self.coords[idx * n..(idx + 1) * n].to_vec() }
    }

    /// Relation between encoded points.
    #[inline]
    pub fn rel_idx(&self, a: usize, b: usize) -> RelIndex {
        let n = self.params.n();
        let (ca, cb) = (&self.coords[a * n..(a + 1) * n], &self.coords[b * n..(b + 1) * n]);
        let mut m = 0u32;
        for t in 0..n {
            if ca[t] != cb[t] {
                m |= 1 << t;
            }
        }
        RelIndex(m)
    }

    /// `xR_g` as encoded points.
    pub fn neighborhood(&self, x: usize, g: RelIndex) -> Vec<usize> {
        (0..self.count).filter(|&y| self.rel_idx(x, y) == g).collect()
    }

    /// `|{a : (x,a) ∈ R_g, (a,y) ∈ R_h}|` for an explicit pair.
    pub fn count_paths(&self, x: usize, y: usize, g: RelIndex, h: RelIndex) -> u64 {
        (0..self.count)
            .filter(|&a| self.rel_idx(x, a) == g && self.rel_idx(a, y) == h)
            .count() as u64
    }

    /// A representative pair `(x, y) ∈ R_i` with `x` the origin.
    pub fn representative_pair(&self, i: RelIndex) -> (usize, usize) {
        let y: Vec<u32> = (0..self.params.n()).map(|t| (i.0 >> t) & 1).collect();
        (0, Point { coords: y }.encode(&self.params))
    }

    /// `|xR_g ∩ yR_h ∩ zR_i|` by scanning all points.
    pub fn triple_count(&self, x: usize, y: usize, z: usize, g: RelIndex, h: RelIndex, i: RelIndex) -> u64 {
        (0..self.count)
            .filter(|&a| self.rel_idx(x, a) == g && self.rel_idx(y, a) == h && self.rel_idx(z, a) == i)
            .count() as u64
    }
}

/// `p_{gh}^i` by counting, for one representative pair of `R_i`.
pub fn intersection_number_oracle(
    g: RelIndex,
    h: RelIndex,
    i: RelIndex,
    points: &PointSet,
) -> Result<u64> {
    let params = points.params();
    for r in [g, h, i] {
        params.check(r)?;
    }
    let (x, y) = points.representative_pair(i);
    Ok(points.count_paths(x, y, g, h))
}

/// `|xR_g ∩ yR_h ∩ zR_i|` by brute force.
pub fn triple_intersection(
    x: &Point,
    y: &Point,
    z: &Point,
    g: RelIndex,
    h: RelIndex,
    i: RelIndex,
    points: &PointSet,
) -> Result<u64> {
    let params = points.params();
    for p in [x, y, z] {
        Point::new(p.coords.clone(), params)?;
    }
    Ok(points.triple_count(x.encode(params), y.encode(params), z.encode(params), g, h, i))
}

/// Complex multiplication `UV = {R_a : p_{bc}^a > 0 for some b ∈ U, c ∈ V}`.
pub fn complex_product(u: &RelSet, v: &RelSet, params: &SchemeParams) -> Result<RelSet> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = RelSet::new();
    for &b in u {
        params.check(b)?;
        for &c in v {
            params.check(c)?;
            out.extend(RelIndex::interval(b.symdiff(c), params.odot(b, c)));
        }
    }
    Ok(out)
}

/// `UU' ⊆ U`; the scheme is symmetric so `U' = U`.
pub fn is_closed(u: &RelSet, params: &SchemeParams) -> Result<bool> {
    Ok(complex_product(u, u, params)?.is_subset(u))
}

fn closure(seed: RelSet, params: &SchemeParams) -> Result<RelSet> {
    let mut w = seed;
    loop {
        let mut next = complex_product(&w, &w, params)?;
        next.extend(w.iter().copied());
        if next == w {
            return Ok(w);
        }
        w = next;
    }
}

/// `⟨U⟩`, the least closed subset containing `U`.
pub fn generated_closed_subset(u: &RelSet, params: &SchemeParams) -> Result<ClosedSubset> {
    ClosedSubset::new(closure(u.clone(), params)?, params)
}

/// Valency-one members of a closed subset.
pub fn thin_radical(u: &RelSet, params: &SchemeParams) -> Result<RelSet> {
    require_closed(u, params)?;
    Ok(u.iter().copied().filter(|&a| valency(a, params) == 1).collect())
}

/// `⟨⋃_{g ∈ U} R_g R_g⟩`.
pub fn thin_residue(u: &RelSet, params: &SchemeParams) -> Result<RelSet> {
    require_closed(u, params)?;
    let mut seed = RelSet::new();
    for &g in u {
        let single = RelSet::from([g]);
        seed.extend(complex_product(&single, &single, params)?);
    }
    closure(seed, params)
}

/// `R_g U R_g ⊆ U` for every relation `g`.
pub fn is_strongly_normal(u: &RelSet, params: &SchemeParams) -> Result<bool> {
    if !is_closed(u, params)? {
        return Ok(false);
    }
    for g in params.relations() {
        let single = RelSet::from([g]);
        let conj = complex_product(&complex_product(&single, u, params)?, &single, params)?;
        if !conj.is_subset(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_closed(u: &RelSet, params: &SchemeParams) -> Result<()> {
    if u.is_empty() || !is_closed(u, params)? {
        Err(Error::NotClosed(u.iter().map(|r| r.0).collect()))
    } else {
        Ok(())
    }
}

/// A closed subset together with its thin radical/residue factorisation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosedSubset {
    pub members: RelSet,
    pub is_closed: bool,
    pub is_strongly_normal: bool,
    pub thin_radical: RelSet,
    pub thin_residue: RelSet,
    /// 1-indexed positions spanned by the largest tilde inside the subset.
    pub p_max: BTreeSet<usize>,
}

impl ClosedSubset {
    pub fn new(members: RelSet, params: &SchemeParams) -> Result<Self> {
        require_closed(&members, params)?;
        let top = members.iter().fold(RelIndex::ZERO, |acc, &a| acc.join(params.tilde(a)));
        Ok(ClosedSubset {
            is_closed: true,
            is_strongly_normal: is_strongly_normal(&members, params)?,
            thin_radical: thin_radical(&members, params)?,
            thin_residue: thin_residue(&members, params)?,
            p_max: crate::index::support(top, params.n())?,
            members,
        })
    }

    pub fn member_list(&self) -> Vec<u32> {
        self.members.iter().map(|r| r.0).collect()
    }
}

/// All subspaces of `F_2^m`, each as a sorted list of vectors (bitmasks).
///
/// Subspaces are produced from their reduced row-echelon generator matrices,
/// so every subspace appears exactly once.
pub fn f2_subspaces(m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for pivots in subsets_of((1u32 << m) - 1) {
        let pivot_cols: Vec<usize> = (0..m).filter(|c| pivots >> c & 1 == 1).collect();
        // free[r] = non-pivot columns to the right of row r's pivot
        let free: Vec<Vec<usize>> = pivot_cols
            .iter()
            .map(|&c| (c + 1..m).filter(|f| pivots >> f & 1 == 0).collect())
            .collect();
        let total_free: usize = free.iter().map(Vec::len).sum();
        for assignment in 0u64..(1u64 << total_free) {
            let mut bit = 0;
            let rows: Vec<u32> = pivot_cols
                .iter()
                .zip(&free)
                .map(|(&c, fs)| {
                    let mut row = 1u32 << c;
                    for &f in fs {
                        if assignment >> bit & 1 == 1 {
                            row |= 1 << f;
                        }
                        bit += 1;
                    }
                    row
                })
                .collect();
            let mut span: Vec<u32> = (0u32..(1 << rows.len()))
                .map(|sel| {
                    rows.iter()
                        .enumerate()
                        .filter(|(r, _)| sel >> r & 1 == 1)
                        .fold(0, |acc, (_, v)| acc ^ v)
                })
                .collect();
            span.sort_unstable();
            out.push(span);
        }
    }
    out.sort();
    out
}

/// Spreads the bits of an `F_2^m` vector onto the set bits of `mask`.
fn deposit(v: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut t = 0;
    for b in 0..32 {
        if mask >> b & 1 == 1 {
            if v >> t & 1 == 1 {
                out |= 1 << b;
            }
            t += 1;
        }
    }
    out
}

/// Subgroups of the thin radical `O_ϑ(S)`, an elementary abelian 2-group.
pub fn thin_radical_subgroups(params: &SchemeParams) -> Vec<RelSet> {
    let mask = params.thin_mask().0;
    f2_subspaces(params.thin_rank())
        .into_iter()
        .map(|s| s.into_iter().map(|v| RelIndex(deposit(v, mask))).collect())
        .collect()
}

fn sorted_by_members(found: BTreeMap<Vec<u32>, ClosedSubset>) -> Vec<ClosedSubset> {
    found.into_values().collect()
}

/// Every closed subset, as `⟨R_g⟩·V` over `g` with `P(g) = P₂(g)` and
/// subgroups `V` of the thin radical. Each result is checked closed.
pub fn enumerate_closed_subsets(params: &SchemeParams) -> Result<Vec<ClosedSubset>> {
    let subgroups = thin_radical_subgroups(params);
    let mut found = BTreeMap::new();
    for g in subsets_of(params.big_mask().0) {
        let generated = generated_closed_subset(&RelSet::from([RelIndex(g)]), params)?;
        for v in &subgroups {
            let members = complex_product(&generated.members, v, params)?;
            let cs = ClosedSubset::new(members, params)?;
            found.insert(cs.member_list(), cs);
        }
    }
    Ok(sorted_by_members(found))
}

/// Every strongly normal closed subset, as `O^ϑ(S)·V`.
pub fn enumerate_strongly_normal(params: &SchemeParams) -> Result<Vec<ClosedSubset>> {
    let full: RelSet = params.relations().collect();
    let residue = thin_residue(&full, params)?;
    let mut found = BTreeMap::new();
    for v in thin_radical_subgroups(params) {
        let cs = ClosedSubset::new(complex_product(&residue, &v, params)?, params)?;
        if !cs.is_strongly_normal {
            return Err(Error::NotClosed(cs.member_list()));
        }
        found.insert(cs.member_list(), cs);
    }
    Ok(sorted_by_members(found))
}

/// Naive scan over all subsets of `[1, d]` joined with `{0}`; oracle only.
pub fn closed_subsets_by_scan(params: &SchemeParams) -> Result<Vec<RelSet>> {
    let d = params.d().0;
    if d > SCAN_MAX_D {
        return Err(Error::InvalidParams(format!("subset scan limited to d ≤ {SCAN_MAX_D}, got {d}")));
    }
    let mut out = Vec::new();
    for sel in 0u32..(1 << d) {
        let set: RelSet = std::iter::once(RelIndex::ZERO)
            .chain((0..d).filter(|b| sel >> b & 1 == 1).map(|b| RelIndex(b + 1)))
            .collect();
        if is_closed(&set, params)? {
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}

/// Gaussian binomials `[m choose k]_2` for `k = 0..=m`.
pub fn gaussian_binomials_q2(m: usize) -> Vec<u128> {
    // [m k] = [m-1 k-1] + 2^k [m-1 k]
    let mut row = vec![1u128];
    for size in 1..=m {
        let mut next = vec![1u128; size + 1];
        for k in 1..size {
            next[k] = row[k - 1] + (row[k] << k);
        }
        row = next;
    }
    row
}

/// Number of subspaces of `F_2^m`.
pub fn galois_number_g2(m: usize) -> u128 {
    gaussian_binomials_q2(m).into_iter().sum()
}

/// `2^{n2} · G_2(log2 d1)`.
pub fn closed_subset_count(params: &SchemeParams) -> u128 {
    galois_number_g2(params.thin_rank()) << params.n2()
}

/// `G_2(log2 d1)`.
pub fn strongly_normal_count(params: &SchemeParams) -> u128 {
    galois_number_g2(params.thin_rank())
}
