//! Exact-arithmetic derivative spaces of homogeneous polynomials.
//!
//! Given a degree-`d` form `f` in variables `x0..xn`, the library computes
//! the spaces `E_k(f)` spanned by its order-`k` partial derivatives,
//! certifies when those derivatives are maximally independent, and inverts
//! the construction: from the span `E_k(f)` alone it recovers `f` up to a
//! scalar and produces an exact certificate (the dimension of the solution
//! space) that the recovery is unique.
//!
//! All arithmetic is over arbitrary-precision rationals; there are no
//! tolerances anywhere. Randomness appears only in sampling, and every
//! property of a sampled polynomial is certified by a rank computation
//! before it is used.

pub mod cli;
pub mod derivatives;
pub mod error;
pub mod exactla;
pub mod experiment;
pub mod genericity;
pub mod multiindex;
pub mod polyring;
pub mod reconstruct;

pub use derivatives::{apolar_pair, catalecticant, derivative, e_dim, e_space, Catalecticant};
pub use error::{Error, Result};
pub use exactla::{row_space, span_of_polys, ExactMatrix, Subspace};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentKind, ExperimentReport};
pub use genericity::{
    certify_generic, fingerprint, profile, sample, Fingerprint, GenericityProfile,
};
pub use multiindex::{binomial, dim_space, enumerate, MultiIndex};
pub use polyring::{parse, HomPoly, Rational};
pub use reconstruct::{
    check_symmetry, descend, descent_report, extract_relations, solve_from_span, verify_theorem,
    ReconstructionResult, RelationMatrix, TheoremReport, Verdict,
};
