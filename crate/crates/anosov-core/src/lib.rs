//! Exact-arithmetic toolkit for suspension Anosov flows over hyperbolic
//! elements of SL(2,Z).
//!
//! The crate enumerates periodic orbits of a hyperbolic toral automorphism,
//! decides SL(2,Z)/GL(2,Z) conjugacy (in particular reversibility, A ~ A^-1),
//! computes first homology of mapping tori, of orbit complements and of
//! integrally surgered manifolds, keeps the Birkhoff-section boundary
//! bookkeeping, and produces certified orbit-growth bounds. All of it runs on
//! arbitrary-precision integers and rationals; no floating point enters any
//! invariant.
//!
//! Module map:
//!
//! - [`linalg`]: integer matrices, Smith normal form, cokernels, the
//!   [`Hyperbolic2`] seed type.
//! - [`torus`]: periodic points and orbits of the toral automorphism, orbit
//!   censuses, orbit ids.
//! - [`words`]: cyclic RL-words and conjugacy decisions in SL(2,Z) and
//!   GL(2,Z) with exact witnesses.
//! - [`suspension`]: the mapping torus, H_1, per_Z, orbit homology classes
//!   and the reverse flow.
//! - [`surgery`]: orbit complements, integral Dehn-filling homology and the
//!   suspension fingerprint check.
//! - [`birkhoff`]: boundary data of Birkhoff sections and its validation.
//! - [`stats`]: certified sqrt/log bounds, the density-zero ratio and
//!   entropy estimates.
//! - [`geometry`]: the exact rational crossing predicates behind the
//!   surgery presentations.

pub mod abelian;
pub mod birkhoff;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod stats;
pub mod surgery;
pub mod suspension;
pub mod torus;
pub mod words;

pub use abelian::AbelianGroup;
pub use error::{Error, Result};
pub use linalg::{cokernel, snf, Hyperbolic2, IntMat, SnfResult};
pub use suspension::{build_suspension, per_z, SuspensionFlow};
pub use torus::{census, enumerate_orbits, OrbitCensus, OrbitId, PeriodicOrbit, TorusPoint};
