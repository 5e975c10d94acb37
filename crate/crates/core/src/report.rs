//! The invariant report: every field computed in closed form.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::index::SchemeParams;
use crate::scheme::{closed_subset_count, strongly_normal_count, valency, Point};
use crate::symbolic::{dim_formula, SymbolicAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub n: usize,
    pub u: Vec<u32>,
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub params: ReportParams,
    pub d: u32,
    pub n2: usize,
    pub d1: u64,
    pub valencies: Vec<u64>,
    pub dim_t: u128,
    pub dim_z: u128,
    pub closed_subset_count: u128,
    pub strongly_normal_count: u128,
    pub semisimple: bool,
    pub radical_dim: u128,
    pub radical_nilpotency: usize,
    /// Sorted descending.
    pub wedderburn_blocks: Vec<u128>,
    pub irreducible_count: usize,
    /// `stronglyNormalCount / closedSubsetCount` as a reduced fraction.
    pub center_probability_check: String,
    pub base_point: String,
}

impl Report {
    /// Pretty JSON; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `dimT = radicalDim + Σ blocks²`, `dimZ = 2^{n2}`, one irreducible per block,
    /// and `1/dimZ` as the subset ratio.
    pub fn check_invariants(&self) -> Result<()> {
        let blocks: u128 = self.wedderburn_blocks.iter().map(|b| b * b).sum();
        let expect_ratio = format!("1/{}", self.dim_z);
        let failures: Vec<String> = [
            (self.dim_t == self.radical_dim + blocks, format!("dimT {} != radical {} + blocks {blocks}", self.dim_t, self.radical_dim)),
            (self.dim_z == 1u128 << self.n2, format!("dimZ {} != 2^{}", self.dim_z, self.n2)),
            (self.irreducible_count == self.wedderburn_blocks.len(), "irreducible count differs from block count".into()),
            (self.center_probability_check == expect_ratio, format!("ratio {} != {expect_ratio}", self.center_probability_check)),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, msg)| msg)
        .collect();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::RuleViolation(failures.join("; ")))
        }
    }
}

fn build<F: Field>(params: SchemeParams, field: F, base: Point) -> Report {
    let alg = SymbolicAlgebra::new(params.clone(), field);
    let closed = closed_subset_count(&params);
    let normal = strongly_normal_count(&params);
    let ratio = Ratio::new(normal, closed);
    let wedderburn_blocks = alg.block_sizes_by_position();
    Report {
        params: ReportParams { n: params.n(), u: params.u().to_vec(), p: alg.characteristic() },
        d: params.d().0,
        n2: params.n2(),
        d1: params.d1(),
        valencies: params.relations().map(|g| valency(g, &params)).collect(),
        dim_t: dim_formula(&params),
        dim_z: 1u128 << params.n2(),
        closed_subset_count: closed,
        strongly_normal_count: normal,
        semisimple: alg.is_semisimple(),
        radical_dim: alg.radical_dim_by_position(),
        radical_nilpotency: alg.radical_nilpotency(),
        irreducible_count: wedderburn_blocks.len(),
        wedderburn_blocks,
        center_probability_check: format!("{}/{}", ratio.numer(), ratio.denom()),
        base_point: base.to_string(),
    }
}

/// The full report for factor sizes `u` over characteristic `p`, at the
/// given base point (the origin by default).
pub fn run_report(u: &[u32], p: u64, base_point: Option<&[u32]>) -> Result<Report> {
    let params = SchemeParams::new(u.to_vec())?;
    let spec = FieldSpec::new(p)?;
    let base = match base_point {
        Some(c) => Point::new(c.to_vec(), &params)?,
        None => Point::origin(&params),
    };
    let report = match spec.p() {
        0 => build(params, Rationals, base),
        p => build(params, PrimeField::new(p)?, base),
    };
    report.check_invariants()?;
    Ok(report)
}
