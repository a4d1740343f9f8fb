//! Exact computations with twisted universal enveloping algebras.
//!
//! Lie algebras are given by rational structure constants ([`lie`]), their
//! enveloping algebras are handled in the PBW basis with truncated power
//! series in a deformation parameter `xi` ([`pbw`]), twists and the
//! resulting Hopf structures live in [`twist`], first-order data in
//! [`semiclassical`], and file formats plus the job driver in [`cli_io`].

pub mod cli_io;
pub mod error;
pub mod lie;
pub mod pbw;
pub mod rat;
pub mod semiclassical;
pub mod twist;

pub use error::{Error, Result};
pub use rat::Rat;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lie.md")]
    mod lie {}
    #[doc = include_str!("../../../book/src/pbw.md")]
    mod pbw {}
    #[doc = include_str!("../../../book/src/twists.md")]
    mod twists {}
    #[doc = include_str!("../../../book/src/semiclassical.md")]
    mod semiclassical {}
    #[doc = include_str!("../../../book/src/jobs.md")]
    mod jobs {}
}
