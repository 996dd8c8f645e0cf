//! Quantale-enriched categories, the Hausdorff functor and monad, and
//! coalgebras of Hausdorff polynomial functors over finite carriers.

pub mod caps;
pub mod coalg;
pub mod error;
pub mod gen;
pub mod hausdorff;
pub mod omega;
pub mod par;
pub mod quantale;
pub mod report;
pub mod suites;
pub mod vcat;

pub use caps::Caps;
pub use error::{Error, Result};
pub use quantale::{AnyQuantale, Dist, Elt, Lawvere, Quantale, TableQuantale};
pub use report::{LawEntry, LawReport};
pub use vcat::{VCategory, VFunctor, VRelation};
