//! Finite permutation groups, subgroup lattices, hereditary saturated
//! formations, and the hypercenter / subgroup-intersection constructions
//! built on them.
//!
//! ```
//! use flab_core::{parse_group, Analysis, FormationExpr, Method, SubgroupFunctor};
//!
//! let a = Analysis::from_group(parse_group("S3 x C5")?)?;
//! let f = FormationExpr::parse("cross[{2,3};{5}]")?;
//! let z = a.hypercenter(&f, Method::Auto)?;
//! assert_eq!(z, a.si_sigma(&f, &SubgroupFunctor::CyclicPrimary));
//! # Ok::<(), flab_core::FlabError>(())
//! ```

pub mod error;
pub mod formations;
pub mod group;
pub mod hypercenter;
pub mod intersections;
pub mod lattice;
pub mod perm;
pub mod primes;
pub mod products;
pub mod schreier;
pub mod section;
pub mod series;
pub mod spec;
pub mod subgroup;
pub mod verify;

pub use error::{FlabError, Result};
pub use formations::FormationExpr;
pub use group::{Caps, Cayley, Group};
pub use hypercenter::Method;
pub use intersections::{Analysis, SubgroupFunctor};
pub use lattice::SubgroupLattice;
pub use perm::Perm;
pub use primes::PrimeSet;
pub use spec::{parse_group, parse_spec, GroupSpec};
pub use subgroup::Subgroup;
