//! Higher-order Hochschild cohomology `HH^*_X(A, M)` of a finite pointed
//! simplicial set `X` with coefficients in a multi-module `M` over a
//! commutative algebra `A`, computed exactly.
//!
//! [`simplicial`] holds the spaces, [`actions`] finds the action classes,
//! [`coeffalg`] reads algebras and modules, and [`cochain`] assembles the
//! complex and takes ranks with [`exactlinalg`].

pub mod actions;
pub mod cochain;
pub mod coeffalg;
pub mod exactlinalg;
pub mod simplicial;

/// The book's chapters, compiled as doc-tests so their snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/cochains.md")]
    mod cochains {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
