//! Exact computations with filter-regular sequences, Hilbert–Samuel functions,
//! Artin–Rees numbers and Koszul homology over truncated local rings
//! `F_p[[x_1..x_n]]/I_0`, and experiments on how these invariants behave when
//! the generators of an ideal are perturbed by elements of high order.

pub mod certified;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod verify;

pub use certified::{CertifiedValue, Flag, Status, Value};
pub use error::{Error, Result};
pub use ideal::Ideal;
pub use poly::{parse_poly, Monomial, PolyContext, PrimeField, TruncPoly};
pub use ring::{two_level_value, Element, Ring, RingSpec};
