use thiserror::Error;

use crate::eos::Branch;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("nu = {nu} lies outside the EOS domain [{lo}, {hi}]")]
    Domain { nu: f64, lo: f64, hi: f64 },

    #[error("invalid EOS configuration: {0}")]
    Config(String),

    #[error("r'' has no sign change on the domain (convex EOS)")]
    NoSpinodal,

    #[error("r'' sign pattern is not (+, -, +): {changes} sign change(s) found")]
    MalformedSpinodal { changes: usize },

    #[error("Lichnerowicz index {f} is not attained on the {branch:?} branch (range [{lo}, {hi}])")]
    Range { f: f64, branch: Branch, lo: f64, hi: f64 },

    #[error("pressure {pi} outside the spinodal window ({lo}, {hi})")]
    PressureOutOfWindow { pi: f64, lo: f64, hi: f64 },

    #[error("domain truncates the {branch:?} root of p(nu) = {pi}")]
    Bracket { pi: f64, branch: Branch },

    #[error("spinodal pressure window collapsed: p(nu_B) = {p_b} >= p(nu_A) = {p_a}")]
    WindowCollapse { p_b: f64, p_a: f64 },

    #[error("area function has no sign change on the admissible window ({lo}, {hi})")]
    NoEqualArea { lo: f64, hi: f64 },

    #[error("Newton iteration failed to converge (residual {residual:e} after {iterations} iterations)")]
    NewtonDiverged { residual: f64, iterations: usize },

    #[error("iterate ({nu_minus}, {nu_plus}) left its phase branch")]
    SpinodalCrossing { nu_minus: f64, nu_plus: f64 },

    #[error("m = {m} is not reachable by continuation (family ends at m = {m_bar})")]
    BeyondFamily { m: f64, m_bar: f64 },

    #[error("expected exactly three stationary points (saddle, center, saddle), found {found}")]
    UnexpectedStationaryCount { found: usize },

    #[error("level-set radicand {value:e} negative at nu = {nu}")]
    NegativeRadicand { nu: f64, value: f64 },

    #[error("shot orbit escaped the heteroclinic window at x1 = {x1}, nu = {nu}: {reason}")]
    OrbitEscaped { x1: f64, nu: f64, reason: String },

    #[error("profile has {found} samples, at least {needed} required")]
    TooFewSamples { found: usize, needed: usize },

    #[error("profile invariant violated: {0}")]
    InvalidProfile(String),

    #[error("entropy s* = {s} outside the modeled range [{lo}, {hi}]")]
    EntropyOutOfRange { s: f64, lo: f64, hi: f64 },

    #[error("slice at s* = {s} is not of van der Waals type: {source}")]
    SliceNotVanDerWaals { s: f64, source: Box<Error> },
}
