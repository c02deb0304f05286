pub mod error;
pub mod generators;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod repcheck;
pub mod rng;
pub mod tensor;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use poly::{compare_monomials, Minor, Monomial, Poly, PolyMatrix, Ring, VarId, VarOrder};
pub use rational::Rational;
pub use tensor::{RatMatrix, Tensor};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/caveats.md")]
    mod caveats {}
}
