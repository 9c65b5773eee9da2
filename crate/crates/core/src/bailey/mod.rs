//! The standard multiparameter Bailey pair at `b = 0`, the `Q^{(d,e,k)}_i`
//! family, its q-difference system and the product sides.

mod check;
mod closed;
mod family;
mod pair;

pub use check::{check_family, CheckOutcome, CheckResult, CheckSet, FamilyReport};
pub use closed::{closed_beta, ClosedBeta, CLOSED_BETAS};
pub use family::{
    derive_family, product_side, q_direct, q_family, q_lemma_form, qdiff_residuals, wbl_right,
    wbl_sides, wbl_left_from_alpha,
};
pub use pair::{alpha_monomial, beta_from_alpha, smpbp_alpha_b0, AlphaMonomial};

use core::fmt;

use crate::error::{Error, Result};
use crate::series::{PochLength, PochSpec};

/// The triple `(d, e, k)` indexing a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub d: u32,
    pub e: u32,
    pub k: u32,
}

impl FamilyParams {
    pub fn new(d: u32, e: u32, k: u32) -> Result<Self> {
        if d == 0 || e == 0 || k == 0 {
            return Err(Error::BadParameters(alloc::format!(
                "d, e, k must be positive, got ({d}, {e}, {k})"
            )));
        }
        Ok(FamilyParams { d, e, k })
    }

    /// `K = k + d(e - 1)`, the number of family members.
    pub fn big_k(&self) -> u32 {
        self.k + self.d * (self.e - 1)
    }

    /// `d(2K + 1)`, the modulus of the product sides.
    pub fn modulus(&self) -> u32 {
        self.d * (2 * self.big_k() + 1)
    }

    pub(crate) fn check_member(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.big_k() {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                max: self.big_k() as i64,
            });
        }
        Ok(())
    }

    /// `(a^e q^e; q^e)_len`.
    pub(crate) fn aq_poch(&self, length: PochLength) -> PochSpec {
        PochSpec {
            sign: 1,
            a_exp: self.e,
            q_offset: self.e as i64,
            q_step: self.e,
            length,
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d, self.e, self.k)
    }
}

/// `(-1)^n` as a coefficient.
pub(crate) fn parity_sign(n: u64) -> crate::Coefficient {
    crate::Coefficient::from(if n % 2 == 0 { 1 } else { -1 })
}
