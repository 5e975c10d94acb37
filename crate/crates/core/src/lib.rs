//! Terwilliger algebras of factorial association schemes.
//!
//! A factorial scheme lives on `X = [0,u_1) × … × [0,u_n)`; its relations are
//! indexed by bitmasks of differing coordinates. This crate computes the
//! scheme's closed subsets and the structure of its Terwilliger algebra
//! (dimension, center, Jacobson radical, Wedderburn blocks) in closed form
//! over `Q` or `F_p`, and certifies the results against explicit matrices.
//!
//! ```
//! use terwilliger::{run_report, SchemeParams};
//!
//! let report = run_report(&[2, 3], 2, None).unwrap();
//! assert_eq!(report.dim_t, 20);
//! assert_eq!(report.wedderburn_blocks, vec![2, 2]);
//! # let _ = SchemeParams::new(vec![2, 3]).unwrap();
//! ```

pub mod error;
pub mod field;
pub mod index;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scheme;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use index::{RelIndex, SchemeParams};
pub use oracle::{DenseMatrix, Oracle, SpannedAlgebra};
pub use report::{run_report, Report};
pub use scheme::{ClosedSubset, Point, PointSet};
pub use symbolic::{ApproxClass, BTriple, SymbolicAlgebra, TElement, WedderburnType};
pub use verify::{run_verify, run_verify_with, CheckResult, Status, VerifyResult};

/// Exact rationals, the scalars in characteristic 0.
pub type Rational = num_rational::BigRational;
/// Residues modulo the field's prime.
pub type Residue = u64;

pub type QMatrix = DenseMatrix<Rationals>;
pub type FpMatrix = DenseMatrix<PrimeField>;
pub type QAlgebra = SymbolicAlgebra<Rationals>;
pub type FpAlgebra = SymbolicAlgebra<PrimeField>;
pub type QElement = TElement<Rational>;
pub type FpElement = TElement<Residue>;
