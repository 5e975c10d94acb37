//! The oracle verification suite: every closed-form result is checked against
//! explicit matrices and brute-force counts, stopping at the first failure.

use std::collections::BTreeSet;

use serde::Serialize;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::index::{RelIndex, SchemeParams};
use crate::linalg::EchelonBasis;
use crate::oracle::{center_dim, is_two_sided_ideal, nilpotency_index, DenseMatrix, Oracle, SpannedAlgebra};
use crate::report::{run_report, Report};
use crate::scheme::{
    closed_subset_count, closed_subsets_by_scan, complex_product, enumerate_closed_subsets,
    enumerate_strongly_normal, f2_subspaces, galois_number_g2, intersection_number, strongly_normal_count,
    thin_residue, valency, Point, PointSet, RelSet, SCAN_MAX_D,
};
use crate::symbolic::{dim_by_position, dim_formula, BTriple, Realization, SymbolicAlgebra, TElement};

/// Largest `|X|` for which every base point is checked.
pub const BASE_POINT_SWEEP_MAX: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyResult {
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl VerifyResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verify result serializes")
    }

    pub fn failed(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs the suite for `(u, p)`; `|X|` must not exceed `max_points`.
pub fn run_verify(u: &[u32], p: u64, max_points: u64) -> Result<VerifyResult> {
    run_verify_with(u, p, max_points, |_| {})
}

/// As [`run_verify`], reporting each finished check to `progress`.
pub fn run_verify_with(
    u: &[u32],
    p: u64,
    max_points: u64,
    progress: impl FnMut(&CheckResult),
) -> Result<VerifyResult> {
    let params = SchemeParams::new(u.to_vec())?;
    let spec = FieldSpec::new(p)?;
    let points = PointSet::new(&params, max_points)?;
    match spec.p() {
        0 => Verifier::new(points, Rationals)?.run(progress),
        p => Verifier::new(points, PrimeField::new(p)?)?.run(progress),
    }
}

struct Verifier<F: Field> {
    params: SchemeParams,
    points: PointSet,
    alg: SymbolicAlgebra<F>,
    real: Realization<F>,
    report: Report,
    closure: Option<SpannedAlgebra<F>>,
    center_dim: Option<usize>,
}

impl<F: Field> Verifier<F> {
    fn new(points: PointSet, field: F) -> Result<Self> {
        let params = points.params().clone();
        let alg = SymbolicAlgebra::new(params.clone(), field.clone());
        let oracle = Oracle::new(&points, field.clone(), &Point::origin(&params))?;
        let real = Realization::new(&alg, oracle)?;
        let report = run_report(params.u(), field.characteristic(), None)?;
        Ok(Verifier { params, points, alg, real, report, closure: None, center_dim: None })
    }

    fn run(mut self, mut progress: impl FnMut(&CheckResult)) -> Result<VerifyResult> {
        type Check<F> = fn(&mut Verifier<F>) -> Outcome;
        let checks: [(&str, Check<F>); 18] = [
            ("scheme_axioms", Self::scheme_axioms),
            ("intersection_numbers", Self::intersection_numbers),
            ("valency_weighted_symmetry", Self::valency_weighted_symmetry),
            ("triple_regularity", Self::triple_regularity),
            ("closed_subsets", Self::closed_subsets),
            ("dual_idempotents", Self::dual_idempotents),
            ("nonvanishing_triples", Self::nonvanishing_triples),
            ("dimension", Self::dimension),
            ("b_basis", Self::b_basis),
            ("b_products", Self::b_products),
            ("center", Self::center),
            ("subset_ratio", Self::subset_ratio),
            ("radical", Self::radical),
            ("local_algebras", Self::local_algebras),
            ("product_rules", Self::product_rules),
            ("wedderburn", Self::wedderburn),
            ("report_consistency", Self::report_consistency),
            ("base_point_independence", Self::base_point_independence),
        ];
        let mut results = Vec::new();
        for (name, check) in checks {
            let (status, detail) = match check(&mut self) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            };
            let result = CheckResult { name: name.to_string(), status, detail };
            progress(&result);
            results.push(result);
            if status == Status::Fail {
                break;
            }
        }
        let overall = results.iter().all(|c| c.status == Status::Pass);
        Ok(VerifyResult { checks: results, overall })
    }

    fn field(&self) -> &F {
        self.alg.field()
    }

    fn oracle(&self) -> &Oracle<F> {
        self.real.oracle()
    }

    fn closure(&mut self) -> std::result::Result<&SpannedAlgebra<F>, String> {
        if self.closure.is_none() {
            self.closure = Some(lib(self.oracle().terwilliger_algebra())?);
        }
        Ok(self.closure.as_ref().expect("just computed"))
    }

    fn center_dim(&mut self) -> std::result::Result<usize, String> {
        if self.center_dim.is_none() {
            let closure = self.closure()?;
            self.center_dim = Some(lib(center_dim(closure))?);
        }
        Ok(self.center_dim.expect("just computed"))
    }

    fn scheme_axioms(&mut self) -> Outcome {
        let n = self.points.len();
        let f = self.field().clone();
        let adj: Vec<DenseMatrix<F>> = self.params.relations().map(|g| self.oracle().adjacency(g).cloned()).collect::<Result<_>>().map_err(|e| e.to_string())?;
        ensure(adj[0] == DenseMatrix::identity(f.clone(), n), || "A_0 is not the identity".into())?;
        let mut sum = DenseMatrix::zeros(f.clone(), n);
        for (g, a) in self.params.relations().zip(&adj) {
            ensure(&a.transpose() == a, || format!("A_{g} is not symmetric"))?;
            for y in 0..n {
                let row = (0..n).filter(|&z| self.points.rel_idx(y, z) == g).count() as u64;
                ensure(row == valency(g, &self.params), || format!("row {y} of A_{g} has {row} ones"))?;
            }
            sum = lib(sum.add(a))?;
        }
        ensure(sum == DenseMatrix::from_fn(f.clone(), n, |_, _| f.one()), || "adjacency matrices do not sum to J".into())?;
        for (g, ag) in self.params.relations().zip(&adj) {
            for (h, ah) in self.params.relations().zip(&adj) {
                let mut expect = DenseMatrix::zeros(f.clone(), n);
                for (i, ai) in self.params.relations().zip(&adj) {
                    let c = f.from_u64(intersection_number(g, h, i, &self.params));
                    expect = lib(expect.add(&ai.scale(&c)))?;
                }
                ensure(lib(ag.mul(ah))? == expect, || format!("A_{g} A_{h} differs from Σ_i p_{{{g}{h}}}^i A_i"))?;
            }
        }
        Ok(format!("{} relations on {} points", adj.len(), n))
    }

    fn intersection_numbers(&mut self) -> Outcome {
        let n = self.points.len();
        let r = self.params.relation_count();
        for x in 0..n {
            for y in 0..n {
                let i = self.points.rel_idx(x, y);
                let mut counts = vec![0u64; r * r];
                for a in 0..n {
                    counts[self.points.rel_idx(x, a).0 as usize * r + self.points.rel_idx(a, y).0 as usize] += 1;
                }
                for g in self.params.relations() {
                    for h in self.params.relations() {
                        let seen = counts[g.0 as usize * r + h.0 as usize];
                        let closed = intersection_number(g, h, i, &self.params);
                        ensure(seen == closed, || {
                            format!("x={} y={}: |xR_{g} ∩ yR_{h}| = {seen}, closed form p_{{{g}{h}}}^{i} = {closed}", self.points.point(x), self.points.point(y))
                        })?;
                    }
                }
            }
        }
        Ok(format!("{} triples over {} ordered pairs", r * r * r, n * n))
    }

    fn valency_weighted_symmetry(&mut self) -> Outcome {
        let p = &self.params;
        for g in p.relations() {
            for h in p.relations() {
                for i in p.relations() {
                    let vals = [
                        valency(g, p) * intersection_number(h, i, g, p),
                        valency(h, p) * intersection_number(g, i, h, p),
                        valency(i, p) * intersection_number(h, g, i, p),
                    ];
                    ensure(vals[0] == vals[1] && vals[1] == vals[2], || format!("({g},{h},{i}): {vals:?}"))?;
                }
            }
        }
        Ok("k_g p_{hi}^g = k_h p_{gi}^h = k_i p_{hg}^i".into())
    }

    fn triple_regularity(&mut self) -> Outcome {
        let n = self.points.len();
        let r = self.params.relation_count();
        let rel = |a: usize, b: usize| self.points.rel_idx(a, b).0 as usize;
        // histogram of (rel(x,w), rel(y,w), rel(z,w)) per configuration of (x,y,z)
        let mut seen: Vec<Option<Vec<u32>>> = vec![None; r * r * r];
        let mut hist = vec![0u32; r * r * r];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    hist.iter_mut().for_each(|c| *c = 0);
                    for w in 0..n {
                        hist[(rel(x, w) * r + rel(y, w)) * r + rel(z, w)] += 1;
                    }
                    let key = (rel(x, y) * r + rel(x, z)) * r + rel(y, z);
                    match &seen[key] {
                        Some(prev) => ensure(prev == &hist, || {
                            format!(
                                "triple counts at ({}, {}, {}) differ from an earlier triple in the same configuration",
                                self.points.point(x),
                                self.points.point(y),
                                self.points.point(z)
                            )
                        })?,
                        None => seen[key] = Some(hist.clone()),
                    }
                }
            }
        }
        Ok(format!("{} relation configurations", seen.iter().flatten().count()))
    }

    fn closed_subsets(&mut self) -> Outcome {
        let p = &self.params;
        let all = lib(enumerate_closed_subsets(p))?;
        let normal = lib(enumerate_strongly_normal(p))?;
        ensure(all.len() as u128 == closed_subset_count(p), || format!("{} closed subsets, formula {}", all.len(), closed_subset_count(p)))?;
        ensure(normal.len() as u128 == strongly_normal_count(p), || format!("{} strongly normal, formula {}", normal.len(), strongly_normal_count(p)))?;
        let m = p.thin_rank();
        ensure(f2_subspaces(m).len() as u128 == galois_number_g2(m), || format!("subspace count of F_2^{m} differs from G_2({m})"))?;
        let full: RelSet = p.relations().collect();
        let residue = lib(thin_residue(&full, p))?;
        for cs in &all {
            let prod = lib(complex_product(&cs.thin_residue, &cs.thin_radical, p))?;
            ensure(prod == cs.members, || format!("{:?} is not residue times radical", cs.member_list()))?;
            ensure(cs.is_strongly_normal == residue.is_subset(&cs.members), || {
                format!("{:?}: strong normality disagrees with containing the thin residue", cs.member_list())
            })?;
        }
        let normal_members: BTreeSet<Vec<u32>> = normal.iter().map(|c| c.member_list()).collect();
        let normal_by_flag: BTreeSet<Vec<u32>> = all.iter().filter(|c| c.is_strongly_normal).map(|c| c.member_list()).collect();
        ensure(normal_members == normal_by_flag, || "strongly normal enumeration disagrees with the flag".into())?;
        let mut detail = format!("{} closed, {} strongly normal", all.len(), normal.len());
        if p.d().0 <= SCAN_MAX_D {
            let scanned = lib(closed_subsets_by_scan(p))?;
            let mut ours: Vec<RelSet> = all.iter().map(|c| c.members.clone()).collect();
            ours.sort();
            ensure(ours == scanned, || "enumeration disagrees with the subset scan".into())?;
            detail.push_str("; matches subset scan");
        }
        Ok(detail)
    }

    fn dual_idempotents(&mut self) -> Outcome {
        let n = self.points.len();
        let f = self.field().clone();
        let mut sum = DenseMatrix::zeros(f.clone(), n);
        for g in self.params.relations() {
            let eg = lib(self.oracle().dual(g))?;
            ensure(eg.trace() == f.from_u64(valency(g, &self.params)), || format!("trace of E*_{g}"))?;
            for h in self.params.relations() {
                let prod = lib(eg.mul(lib(self.oracle().dual(h))?))?;
                let ok = if g == h { &prod == eg } else { prod.is_zero() };
                ensure(ok, || format!("E*_{g} E*_{h} is not δ E*_{g}"))?;
            }
            sum = lib(sum.add(eg))?;
        }
        ensure(sum == DenseMatrix::identity(f, n), || "dual idempotents do not sum to I".into())?;
        Ok("orthogonal idempotents summing to I".into())
    }

    fn nonvanishing_triples(&mut self) -> Outcome {
        let mut count = 0;
        for g in self.params.relations() {
            for h in self.params.relations() {
                for i in self.params.relations() {
                    let nz = !lib(self.oracle().eae(g, h, i))?.is_zero();
                    let pn = intersection_number(g, h, i, &self.params) != 0;
                    ensure(nz == pn, || format!("E*_{g} A_{h} E*_{i} nonzero={nz} but p_{{{g}{h}}}^{i} nonzero={pn}"))?;
                    count += nz as usize;
                }
            }
        }
        Ok(format!("{count} nonvanishing products"))
    }

    fn dimension(&mut self) -> Outcome {
        let formula = dim_formula(&self.params);
        let by_position = dim_by_position(&self.params);
        let listed = self.alg.dim() as u128;
        let closure = self.closure()?.dim() as u128;
        ensure(formula == listed && formula == by_position && formula == closure, || {
            format!("formula {formula}, per-position {by_position}, basis {listed}, closure {closure}")
        })?;
        Ok(format!("dim T = {formula}"))
    }

    fn b_basis(&mut self) -> Outcome {
        let dim = self.alg.dim();
        let mut span = EchelonBasis::new(self.field().clone(), self.points.len().pow(2));
        let closure = self.closure()?.clone();
        for (t, m) in self.real.matrices() {
            ensure(closure.contains(m), || format!("{t} lies outside the closure"))?;
            ensure(span.insert(&m.to_sparse()), || format!("{t} is dependent on earlier basis elements"))?;
            let tt = lib(self.real.b_matrix(&t.transpose()))?;
            ensure(&m.transpose() == tt, || format!("transpose of {t} is not {}", t.transpose()))?;
        }
        ensure(span.dim() == closure.dim(), || format!("{} independent images, closure {}", span.dim(), closure.dim()))?;
        for t in self.alg.basis() {
            for h in RelIndex::interval(t.g.symdiff(t.i), self.params.odot(t.g, t.i)) {
                let back = lib(self.real.t_matrix(&lib(self.alg.eae_to_b(t.g, h, t.i))?))?;
                ensure(back == lib(self.oracle().eae(t.g, h, t.i))?, || format!("inversion of E*_{} A_{h} E*_{} fails", t.g, t.i))?;
            }
        }
        Ok(format!("{dim} independent images spanning the closure"))
    }

    fn b_products(&mut self) -> Outcome {
        let mats: Vec<(BTriple, &DenseMatrix<F>)> = self.real.matrices().map(|(t, m)| (*t, m)).collect();
        let mut nonzero = 0;
        for (s, ms) in &mats {
            for (t, mt) in &mats {
                if s.i != t.g {
                    continue;
                }
                let sym = lib(self.alg.b_mul(*s, *t))?;
                let m = lib(ms.mul(mt))?;
                ensure(lib(self.real.t_matrix(&sym))? == m, || format!("{s}·{t}: symbolic product disagrees with matrices"))?;
                nonzero += 1;
            }
        }
        // each image lies in its E*_g · E*_i block, so by orthogonality of the
        // dual idempotents the remaining matrix products vanish
        let n = self.points.len();
        let duals: Vec<Vec<F::Elem>> = self
            .params
            .relations()
            .map(|g| self.oracle().dual(g).map(|d| d.diagonal().expect("dual idempotents are diagonal")))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let mut vanishing = 0;
        for (s, ms) in &mats {
            let (rows, cols) = (&duals[s.g.0 as usize], &duals[s.i.0 as usize]);
            for y in 0..n {
                for z in 0..n {
                    let outside = rows[y].is_zero() || cols[z].is_zero();
                    ensure(!outside || ms.get(y, z).is_zero(), || format!("{s} has an entry outside its block"))?;
                }
            }
            for (t, _) in &mats {
                if s.i != t.g {
                    ensure(lib(self.alg.b_mul(*s, *t))?.is_zero(), || format!("{s}·{t} symbolic should vanish"))?;
                    vanishing += 1;
                }
            }
        }
        Ok(format!("{nonzero} composable pairs match, {vanishing} others vanish"))
    }

    fn center(&mut self) -> Outcome {
        let basis = self.alg.center_basis();
        ensure(basis.len() == 1 << self.params.n2(), || format!("{} center elements", basis.len()))?;
        let mut span = EchelonBasis::new(self.field().clone(), self.alg.dim());
        for (g, c) in &basis {
            span.insert(&self.alg.coordinates(c));
            for t in self.alg.basis() {
                let b = lib(self.alg.b(t))?;
                ensure(self.alg.t_mul(c, &b) == self.alg.t_mul(&b, c), || format!("C_{g} does not commute with {t}"))?;
            }
            for (h, d) in &basis {
                let (k, gh) = lib(self.alg.c_mul(*g, *h))?;
                let expect = self.alg.scale(&k, &lib(self.alg.c_element(gh))?);
                ensure(self.alg.t_mul(c, d) == expect, || format!("C_{g} C_{h} disagrees with the closed form"))?;
            }
        }
        ensure(span.dim() == basis.len(), || "center elements are dependent".into())?;
        let zdim = self.center_dim()?;
        let closure = self.closure()?.clone();
        ensure(zdim == basis.len(), || format!("oracle center has dimension {zdim}, expected {}", basis.len()))?;
        for (g, c) in &basis {
            let m = lib(self.real.t_matrix(c))?;
            for gen in closure.generators() {
                ensure(lib(m.mul(gen))? == lib(gen.mul(&m))?, || format!("matrix of C_{g} is not central"))?;
            }
        }
        Ok(format!("dim Z(T) = {zdim}"))
    }

    fn subset_ratio(&mut self) -> Outcome {
        let zdim = self.center_dim()? as u128;
        let normal = strongly_normal_count(&self.params);
        let closed = closed_subset_count(&self.params);
        ensure(normal * zdim == closed, || format!("{normal}/{closed} is not 1/{zdim}"))?;
        Ok(format!("{normal}/{closed} = 1/{zdim}"))
    }

    fn radical(&mut self) -> Outcome {
        let rad = self.alg.radical_basis();
        let by_position = self.alg.radical_dim_by_position();
        ensure(rad.len() as u128 == by_position, || format!("{} radical triples, per-position count {by_position}", rad.len()))?;
        ensure(self.alg.is_semisimple() == rad.is_empty(), || "semisimplicity disagrees with the radical".into())?;
        let locals_semisimple = self.params.relations().all(|g| self.alg.local_radical(g).map(|r| r.is_empty()).unwrap_or(false));
        ensure(self.alg.is_semisimple() == locals_semisimple, || "semisimplicity disagrees with the local algebras".into())?;
        let mats: Vec<DenseMatrix<F>> = rad.iter().map(|t| self.real.b_matrix(t).cloned()).collect::<Result<_>>().map_err(|e| e.to_string())?;
        let closure = self.closure()?.clone();
        ensure(lib(is_two_sided_ideal(&mats, &closure))?, || "radical span is not a two-sided ideal".into())?;
        let nil = lib(nilpotency_index(&mats))?;
        let formula = self.alg.radical_nilpotency();
        ensure(nil == formula, || format!("nilpotency {nil}, formula {formula}"))?;
        Ok(format!("dim {} ideal, nilpotency {nil}", rad.len()))
    }

    fn local_algebras(&mut self) -> Outcome {
        for g in self.params.relations() {
            let ids = lib(self.alg.local_idempotents(g))?;
            let qdim = lib(self.alg.local_quotient_dim(g))?;
            ensure(ids.len() == qdim, || format!("{} idempotents at {g}, quotient dimension {qdim}", ids.len()))?;
            let mut sum = TElement::zero();
            for (h, dh) in &ids {
                for (i, di) in &ids {
                    let prod = self.alg.t_mul(di, dh);
                    let expect = if h == i { dh.clone() } else { TElement::zero() };
                    ensure(prod == expect, || format!("D_{{{g},{i},{g}}} D_{{{g},{h},{g}}} is not δ D"))?;
                }
                sum = self.alg.add(&sum, dh);
            }
            let diff = self.alg.sub(&sum, &lib(self.alg.b(BTriple { g, h: RelIndex::ZERO, i: g }))?);
            ensure(diff.support().iter().all(|t| self.alg.divides_valency(t.h)), || format!("local idempotents at {g} do not sum to E*_{g} modulo the radical"))?;
            let local_rad: Vec<DenseMatrix<F>> = lib(self.alg.local_radical(g))?
                .iter()
                .map(|t| self.real.b_matrix(t).cloned())
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            let nil = lib(nilpotency_index(&local_rad))?;
            let formula = lib(self.alg.local_nilpotency(g))?;
            ensure(nil == formula, || format!("local nilpotency at {g} is {nil}, formula {formula}"))?;
        }
        Ok(format!("{} local algebras", self.params.relation_count()))
    }

    fn product_rules(&mut self) -> Outcome {
        let basis = self.alg.basis();
        let ds: Vec<BTriple> = basis.iter().copied().filter(|t| self.alg.has_d_element(*t)).collect();
        for s in &basis {
            for t in &ds {
                lib(self.alg.bd_mul(*s, *t))?;
            }
        }
        for s in &ds {
            for t in &ds {
                lib(self.alg.d_mul(*s, *t))?;
            }
        }
        let ruled = basis.iter().filter(|t| !self.alg.divides_valency(t.h)).count();
        Ok(format!("{} B·D products ({} under the closed form) and {} D·D products", basis.len() * ds.len(), ruled * ds.len(), ds.len() * ds.len()))
    }

    fn wedderburn(&mut self) -> Outcome {
        let w = lib(self.alg.wedderburn_type())?;
        let classes = self.alg.approx_classes();
        let mut span = EchelonBasis::new(self.field().clone(), self.alg.dim());
        for t in self.alg.radical_basis() {
            span.insert(&self.alg.coordinates(&lib(self.alg.b(t))?));
        }
        for c in &classes {
            let unit = |a: RelIndex, b: RelIndex| -> std::result::Result<TElement<F::Elem>, String> {
                let t = c.matrix_unit(a, b).ok_or_else(|| format!("class {} has no triple over ({a},{b})", c.class_index))?;
                lib(self.alg.d_element(t.g, t.h, t.i))
            };
            for &a in &c.diag_indices {
                for &b in &c.diag_indices {
                    let dab = unit(a, b)?;
                    span.insert(&self.alg.coordinates(&dab));
                    for &e in &c.diag_indices {
                        for &f in &c.diag_indices {
                            let prod = self.alg.t_mul(&dab, &unit(e, f)?);
                            let expect = if b == e { unit(a, f)? } else { TElement::zero() };
                            ensure(prod == expect, || format!("class {}: D({a},{b}) D({e},{f}) is not a matrix unit product", c.class_index))?;
                        }
                    }
                }
            }
        }
        ensure(span.dim() == self.alg.dim(), || format!("radical and matrix units span {} of {}", span.dim(), self.alg.dim()))?;
        let by_position: Vec<u128> = self.alg.block_sizes_by_position();
        let blocks: Vec<u128> = w.block_sizes.iter().map(|&b| b as u128).collect();
        ensure(blocks == by_position, || format!("blocks {blocks:?}, per-position {by_position:?}"))?;
        let closure_dim = self.closure()?.dim();
        let total = w.radical_dim + w.block_sizes.iter().map(|b| b * b).sum::<usize>();
        ensure(total == closure_dim, || format!("radical plus blocks give {total}, closure {closure_dim}"))?;
        Ok(format!("blocks {:?}, radical {}", w.block_sizes, w.radical_dim))
    }

    fn report_consistency(&mut self) -> Outcome {
        let zdim = self.center_dim()?;
        let closure = self.closure()?.clone();
        let r = &self.report;
        let w = lib(self.alg.wedderburn_type())?;
        let observed = [
            ("dimT", r.dim_t, closure.dim() as u128),
            ("dimZ", r.dim_z, zdim as u128),
            ("radicalDim", r.radical_dim, w.radical_dim as u128),
            ("radicalNilpotency", r.radical_nilpotency as u128, self.alg.radical_nilpotency() as u128),
            ("irreducibleCount", r.irreducible_count as u128, self.alg.approx_classes().len() as u128),
            ("closedSubsetCount", r.closed_subset_count, lib(enumerate_closed_subsets(&self.params))?.len() as u128),
        ];
        for (name, reported, seen) in observed {
            ensure(reported == seen, || format!("{name}: report {reported}, oracle {seen}"))?;
        }
        let blocks: Vec<u128> = w.block_sizes.iter().map(|&b| b as u128).collect();
        ensure(r.wedderburn_blocks == blocks, || "wedderburnBlocks disagree".into())?;
        ensure(r.semisimple == self.alg.radical_basis().is_empty(), || "semisimple flag disagrees".into())?;
        lib(r.check_invariants())?;
        Ok("all report fields reproduced".into())
    }

    /// Algebra invariants measured at one base point.
    fn invariants_at(&self, base: &Point) -> std::result::Result<[usize; 5], String> {
        let oracle = lib(Oracle::new(&self.points, self.field().clone(), base))?;
        let real = lib(Realization::new(&self.alg, oracle))?;
        let closure = lib(real.oracle().terwilliger_algebra())?;
        let mut span = EchelonBasis::new(self.field().clone(), self.points.len().pow(2));
        for (_, m) in real.matrices() {
            span.insert(&m.to_sparse());
        }
        let rad: Vec<DenseMatrix<F>> =
            self.alg.radical_basis().iter().map(|t| real.b_matrix(t).cloned()).collect::<Result<_>>().map_err(|e| e.to_string())?;
        if !lib(is_two_sided_ideal(&rad, &closure))? {
            return Err(format!("radical is not an ideal at base point {base}"));
        }
        let mut rad_span = EchelonBasis::new(self.field().clone(), self.points.len().pow(2));
        for m in &rad {
            rad_span.insert(&m.to_sparse());
        }
        Ok([closure.dim(), span.dim(), lib(center_dim(&closure))?, rad_span.dim(), lib(nilpotency_index(&rad))?])
    }

    fn base_point_independence(&mut self) -> Outcome {
        let n = self.points.len();
        if n > BASE_POINT_SWEEP_MAX {
            return Ok(format!("not run: |X| = {n} exceeds {BASE_POINT_SWEEP_MAX}"));
        }
        let origin = Point::origin(&self.params);
        let reference = self.invariants_at(&origin)?;
        for x in 1..n {
            let base = self.points.point(x);
            let here = self.invariants_at(&base)?;
            ensure(here == reference, || {
                format!("invariants [dimT, B-rank, dimZ, radicalDim, nilpotency] at {base} are {here:?}, at {origin} {reference:?}")
            })?;
            let report = lib(run_report(self.params.u(), self.field().characteristic(), Some(base.coords())))?;
            ensure(Report { base_point: self.report.base_point.clone(), ..report } == self.report, || format!("report at {base} differs"))?;
        }
        Ok(format!("{n} base points agree on {reference:?}"))
    }
}

impl From<Error> for CheckResult {
    fn from(e: Error) -> Self {
        CheckResult { name: "setup".into(), status: Status::Fail, detail: e.to_string() }
    }
}
