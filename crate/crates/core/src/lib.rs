//! Exact truncated computations around the Betti double shuffle group:
//! the twisted Magnus group, its Lie algebra, the harmonic coproducts on
//! the Betti algebra and module, and pro-p shadows over `Z/p^K`.

pub mod coeff;
pub mod discrete;
pub mod error;
pub mod freegroup;
pub mod gen;
pub mod hopf;
pub mod liealg;
pub mod linalg;
pub mod magnus;
pub mod ncseries;
pub mod padic;
pub mod tensor;
pub mod uni;
pub mod word;

pub use coeff::{ring_binomial, ring_invert, RingElement, RingSpec};
pub use error::{Error, Result};
pub use freegroup::GroupWord;
pub use magnus::{DmrMethod, GtVerdict, ReflectionVerdict, TwistedMagnusElement};
pub use ncseries::{Coords, CoproductStyle, Series};
pub use tensor::TensorSeries;
pub use uni::UniSeries;
pub use word::Word;
