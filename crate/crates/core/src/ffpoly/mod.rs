//! Arithmetic in F_q and A = F_q[t] for an odd prime q.

mod enumerate;
mod factor;
mod field;
mod jacobi;
mod poly;
mod text;

pub use enumerate::{count_upto, enumerate_all, enumerate_monic, enumerate_upto};
pub use factor::{factor, irreducibles, is_irreducible, is_squarefree, mobius, monic_divisors, Factorization};
pub use field::{check_modulus, legendre, smallest_nonsquare, FieldElement};
pub(crate) use field::{add_mod, inv_mod, mul_mod};
pub use jacobi::jacobi;
pub use poly::Poly;
