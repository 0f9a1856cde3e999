//! Exact computation of higher limits of polynomial functors over relation
//! lattices, together with Dold-Kan translation and derived functors.
//!
//! Everything is integer-exact: matrices over `BigInt`, Smith normal form for
//! all kernel/image/homology extraction, no floating point anywhere. The core
//! linear algebra is generic over [`scalar::Scalar`]; the concrete aliases
//! [`Int`] and [`IntMatrix`] are what the higher layers use.

pub mod complex;
pub mod cross_effect;
pub mod derived;
pub mod error;
pub mod functor;
pub mod group;
pub mod limits;
pub mod matrix;
pub mod scalar;
pub mod simplicial;
pub mod snf;
pub mod verify;

pub use complex::{ChainComplex, CochainComplex};
pub use cross_effect::{cross_effect, CrossEffectSummand};
pub use derived::{
    derived, duality_predicted_limits, k3_homology, torsion_predicted_limits,
    DerivedFunctorResult, K3Row,
};
pub use error::{Error, Result};
pub use functor::{
    antisym_power, ask_power, divided_power, ext_power, parse_functor, sym_power, tensor_power,
    PolyFunctor,
};
pub use group::{parse_group, FinAbGroup, Presentation, PresentedGroup};
pub use limits::{
    c_phi, limit_complex_free, limit_complex_via_cone, limits_free, limits_via_cone, LimitComplex,
    Route,
};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use simplicial::{
    dk_chain, dk_of_map, nonnormalized_chain, nonnormalized_cochain, normalized_chain,
    normalized_cochain, relation_cosimplicial, CosimplicialModule, RelationCosimplicial,
    SimplicialModule,
};
pub use verify::{run_suite, suite_names, Check, VerifyOpts};

/// The scalar every high-level computation runs over.
pub type Int = num_bigint::BigInt;
/// Dense exact integer matrix.
pub type IntMatrix = Matrix<Int>;

/// Convenience constructor for `Int` from machine integers.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Extra levels added to every truncation bound, read from the
/// `FUNCTOR_LIMITS_TRUNC_SLACK` environment variable (default 0). All results
/// are provably truncation-independent; raising the slack lets that claim be
/// tested from the outside without recompiling.
pub fn truncation_slack() -> usize {
    std::env::var("FUNCTOR_LIMITS_TRUNC_SLACK")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}
