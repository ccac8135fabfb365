//! Exact symbolic kernel for Toeplitz quantization of the free `*`-algebra
//! on `2n` non-commuting generators `θ_1, θ̄_1, …, θ_n, θ̄_n`.
//!
//! ```
//! use fta_core::toeplitz::apply;
//! use fta_core::{form, project, Element, Scalar, WeightSystem, Word};
//!
//! let e = |s: &str| Element::from(s.parse::<Word>().unwrap());
//! let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
//! assert_eq!(project(&ws, &e("t1 t2 b2")).unwrap(), e("t1").scale(&Scalar::from_ints(3, 0)));
//! assert_eq!(form(&ws, &e("t1"), &e("t1 t2 b2")).unwrap(), Scalar::from_ints(6, 0));
//! assert_eq!(apply(&ws, &e("b1"), &e("t2 t1")).unwrap().to_string(), "2*t2");
//! ```

pub mod error;
pub mod form;
pub mod freealg;
pub mod matrixrep;
pub mod projection;
pub mod sample;
pub mod scalar;
pub mod scanproj;
pub mod toeplitz;

pub use error::{Error, Result};
pub use form::{form, form_words, WeightSystem};
pub use freealg::{
    Algebra, BeginsWith, Decomposition, Element, Letter, LetterKind, MultiIndex, Word,
};
pub use projection::{project, project_oracle, project_word};
pub use scalar::{Rational, Scalar};
pub use toeplitz::ToeplitzOperator;
