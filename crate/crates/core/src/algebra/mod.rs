//! Exact arithmetic substrate: integers, rationals, polynomials and étale algebras.

pub mod cubic;
pub mod etale;
pub mod integer;
pub mod mpoly;
pub mod poly;

pub use cubic::{cubic_discriminant, factor_cubic, factor_small, rational_roots, rational_roots_q, Factorization};
pub use etale::EtaleElement;
pub use integer::{integer_sqrt, is_prime, square_class, SquareClass};
pub use poly::{resultant, Poly, Rat};
