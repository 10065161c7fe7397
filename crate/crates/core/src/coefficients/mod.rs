//! Cylindrical coefficients: printed formulas, exact oracles, the numeric
//! chain-rule replay and the discrepancy ledger.

pub mod chain_rule;
pub mod ledger;
pub mod nonauto;
pub mod printed;
pub mod second_order;
pub mod signs;
pub mod symbol;

pub use chain_rule::{
    chain_rule_matrix, derive_cyl_coeffs_numeric, ChainRuleMatrix, CylCoeffEstimate, Scaling,
};
pub use ledger::{audit, build_ledger, sigma_vote, LedgerAudit, LedgerEntry, SigmaVote, Verdict};
pub use nonauto::{derived_hat_k0, derived_nonautonomous};
pub use printed::{
    a0, autonomous_coeffs, critical_and_lower_values, nonautonomous_coeffs, theorem_hat_k0,
    AutonomousCoefficients, NonautonomousCoefficients, RemarkValues,
};
pub use second_order::{second_order_coeffs, SecondOrderCoefficients};
pub use signs::{sign_report, SignReport};
pub use symbol::{char_symbol, CharSymbol, Sigma};

use crate::error::Result;
use crate::rational::Q;

/// `K̂0` from the printed `t`-dependent block and as stated with the
/// logarithmic profile.
#[derive(Debug, Clone, PartialEq)]
pub struct HatLimits {
    /// `lim t K̃0`, `lim K̃1`, `lim K̃2`, `lim K̃3` from the printed formulas.
    pub from_formula: [Q; 4],
    pub theorem_k0: Q,
    pub derived_k0: Q,
}

pub fn hat_limits(n: u32) -> Result<HatLimits> {
    let c = nonautonomous_coeffs(n)?;
    Ok(HatLimits {
        from_formula: [
            c.hat_k0(),
            c.k[1].coeff(0),
            c.k[2].coeff(0),
            c.k[3].coeff(0),
        ],
        theorem_k0: theorem_hat_k0(n),
        derived_k0: derived_hat_k0(n)?,
    })
}
