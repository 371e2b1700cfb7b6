//! The Hopf *-algebra `ℂ_q[SU_2]`.
//!
//! Relations: `ba = qab`, `ca = qac`, `bc = cb`, `db = qbd`, `dc = qcd`,
//! `ad = 1 + q^{-1}bc`, `da = 1 + qbc`.

pub mod clebsch;
pub mod element;
pub mod haar;
pub mod monomial;
pub mod pw;
pub mod spin;
pub mod tensor;

pub use clebsch::{clebsch_coefficients, ClebschTable};
pub use element::{generators, AlgebraElement};
pub use haar::{haar, haar_bc_power};
pub use monomial::{product, rewrite_word, Gen, Monomial, RewriteStrategy};
pub use pw::{gns_inner, l2_inner, matrix_coefficients, quantum_dim, PwBlock};
pub use spin::Spin;
pub use tensor::{coproduct, coproduct_left, coproduct_right, Tensor, Tensor3};
