//! Closed-form success exponents, crossover thresholds and runtimes.

mod crossover;
mod formulas;
mod oracle;
mod runtime;

pub use crossover::{
    crossover, easy_reduced, min_n_adaptive_wins, theorem_check, Comparison, CrossoverResult, TheoremCheck,
};
pub use formulas::{
    ceil_log2, ghz_exponents, ghz_idle_exponents, subroutine_exponents, w_adaptive_approx_exponents,
    w_composition_check, w_exponents, Subroutine, WVariant, BRISBANE_ADAPTIVE_55_REPORTED,
};
pub use oracle::{ghz_oracle, subroutine_oracle, w_oracle, OracleReport};
pub use runtime::{runtime_estimate, LayerDurations};
