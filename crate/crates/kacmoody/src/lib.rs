//! Kac-Moody nilradicals and Borel subalgebras over exact rationals.
//!
//! From a generalized Cartan matrix this crate constructs the truncated
//! nilradical (the Serre-relation quotient of the free Lie algebra on the
//! Chevalley generators, graded by the root lattice) and the Borel
//! subalgebra on top of it, then computes graded derivation spaces,
//! automorphism building blocks, root multiplicities and the combinatorial
//! identities those computations rest on. Everything is exact: scalars are
//! arbitrary-precision rationals and there is no floating point.
//!
//! Modules:
//! - [`gcm`]: matrix validation, symmetrizers, finite/affine/indefinite
//!   classification against the Kac catalog, diagram automorphisms.
//! - [`qlinalg`]: exact rank / kernel / solve, fraction-free elimination.
//! - [`roots`]: root-lattice arithmetic, Weyl reflections, real-root
//!   enumeration, highest and highest-short roots.
//! - [`liealg`]: the graded Serre quotient, brackets, multiplicities, the
//!   Peterson recurrence oracle, Borel construction, algebra caches.
//! - [`deriv`]: graded derivation spaces of the nilradical and the Borel,
//!   inner/outer splits, per-theorem verification sweeps.
//! - [`autos`]: torus actions, exp(ad x), diagram lifts, Borel
//!   automorphisms fixing the generators, the rank-2 Heisenberg group check.
//! - [`combid`]: exact binomial/beta identity sweeps.

pub mod autos;
pub mod combid;
pub mod deriv;
pub mod gcm;
pub mod liealg;
pub mod qlinalg;
pub mod rat;
pub mod roots;
