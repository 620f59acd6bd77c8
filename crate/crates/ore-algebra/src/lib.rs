//! Exact computer algebra for Ore extensions `R[x; sigma, delta]` over
//! coefficient rings `R = A[y]`, where `A` is a finite-dimensional unital
//! algebra over the rationals given by structure constants — including
//! non-associative ones such as the octonions.
//!
//! Everything is computed in exact rational arithmetic: twisted products,
//! x-degree valuations, bounded nucleus certificates, centralizer spaces as
//! nullspaces of exact linear systems, free-module bases of centralizers,
//! degree-drop certificates for families of equal-degree elements, and
//! annihilating bivariate polynomials for commuting pairs.

pub mod algebra;
pub mod bc;
pub mod centralizer;
mod error;
pub mod linalg;
pub mod ore;
pub mod parse;
pub mod poly;
mod rat;
pub mod sample;

pub use algebra::{AlgElem, AlgebraSpec};
pub use bc::{annihilating_polynomial, evaluate, find_annihilating, left_power, BivarPoly};
pub use centralizer::{
    check_d_condition, check_degree_sum, check_rank_divides, leading_ydeg, CentralizerQuery,
    DCertificate, ModuleBasis, YdegCaps,
};
pub use error::{Error, Result};
pub use linalg::{in_span, RatMatrix};
pub use ore::{Degree, NucleusCheck, NucleusWitness, OreContext, OreElem};
pub use parse::{canonical_text, parse_coeff_poly, parse_element};
pub use poly::{
    apply_delta, apply_sigma, verify_sigma_derivation, CoeffPoly, DeltaSpec, SigmaSpec,
};
pub use rat::Rat;
