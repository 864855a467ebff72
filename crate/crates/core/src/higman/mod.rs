//! The invariant tower: closed divisors, Δ, the Higman length and `inv`.

mod analyze;
mod bezout;
mod closed;
mod disc;
mod rho;

pub use analyze::{
    analyze, analyze_with, certificate_poly, higman_chain, inv, inv_with, split_sign, AnalyzeOptions, HigmanChain,
    HigmanReport, LevelInvariants, Status,
};
pub use closed::{closed_divisors, delta, fbar_n, partial_sums, powerful_support, ClosedDivisorSet, ClosedSubset};
pub use disc::{disc_radical, prodant, ProdantPairs};
pub use rho::{
    fstar2, rho1, rho1_certified, rho2, rho2_certificate, rho3, rho3_certificate, Certificate, Rho1Witness,
};
