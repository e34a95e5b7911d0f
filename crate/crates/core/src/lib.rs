pub mod error;
mod perm;
pub mod refset;
pub mod roots;
pub mod sigma_conj;
pub mod strata;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use refset::RefSet;
pub use roots::{Root, RootSet};
pub use weyl::{Cocharacter, ReducedWord, SimpleRef, WeylElement, XmyDecomposition};
