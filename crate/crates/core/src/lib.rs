//! Exact Ricci curvature and Einstein metric certification for left-invariant
//! metrics on `SO(n)` adapted to a block decomposition
//! `n = k_1 + ... + k_p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`partition`] and [`triples`]: the module decomposition of `so(n)` and
//!   the closed-form structure-constant sums `[k|ij]`.
//! * [`oracle`]: explicit matrices, raw brackets and a Levi-Civita Ricci
//!   computation, used as independent numerical ground truth.
//! * [`ricci`]: closed-form Ricci components, generic over [`scalar::Scalar`].
//! * [`poly`]: exact multivariate and univariate polynomials, Sturm
//!   sequences, root isolation and resultants.
//! * [`pipeline`]: the Einstein system for the symmetric ansatz, its
//!   elimination to a univariate polynomial in `x23`, and certificates.
//! * [`selfcheck`]: the closed forms compared against the oracle over
//!   many partitions and seeded metrics.
//! * [`cli`]: the `einstein-flag` command line front end.

pub mod cli;
pub mod interval;
pub mod oracle;
pub mod partition;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod ricci;
pub mod scalar;
pub mod selfcheck;
pub mod triples;

pub use interval::RatInterval;
pub use partition::{FlagPartition, ModuleIndex, PartitionError, PartitionOptions};
pub use rational::Rational;
pub use ricci::{MetricParams, RicciComponents, SymmetricAnsatz};
pub use triples::TripleTable;
