//! Set systems and delta-matroids: twists, loop complementation, minors,
//! twisted-duality orbits, excluded 3-minors, GF(2) representations and
//! looped simple graphs under local complementation.
//!
//! ```
//! use setsys::{catalog, Subset};
//! use setsys::twisted::{is_vf_safe, orbit};
//! use setsys::gf2::is_binary;
//!
//! let s3 = catalog::get("S3")?;
//! let t = s3.loop_complement(Subset::singleton(0))?;
//! assert_eq!(t.format_family(), "{∅, {a}, {a,b,c}}");
//! assert_eq!(orbit(&s3, true)?.len(), 28);
//!
//! let b1 = catalog::get("B1")?;
//! assert!(is_vf_safe(&b1)? && !is_binary(&b1)?);
//! # Ok::<(), setsys::Error>(())
//! ```

pub mod canon;
pub mod catalog;
pub mod delta;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod subset;
pub mod system;
pub mod twisted;
pub mod verify;

pub use canon::{canonical_form, canonical_key, is_isomorphic, CanonKey};
pub use delta::{check_symmetric_exchange, is_delta_matroid, is_even, is_normal, ExchangeWitness};
pub use error::{Error, Result};
pub use subset::{GroundSet, Subset};
pub use system::{ElementClass, Op, SetSystem, Step};
