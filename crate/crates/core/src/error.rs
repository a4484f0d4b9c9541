use thiserror::Error;

/// Errors raised by the algebra, the dynamics and the integrator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("velocity has zero norm")]
    ZeroVelocity,
    #[error("spin and velocity are linearly dependent (|s^u| = {0:e})")]
    DegenerateSpin(f64),
    #[error("spin violates the Pirani condition (relative defect {0:e})")]
    PiraniViolated(f64),
    #[error("matrix is not a pseudo-orthogonal transformation (defect {0:e})")]
    NotLorentz(f64),
    #[error("matrix is not skew-symmetric (defect {0:e})")]
    NotSkew(f64),
    #[error("chart denominator vanishes ({0})")]
    SingularChart(&'static str),
    #[error("left the chart{}: {reason}", at_tau(.tau))]
    ChartExit { tau: Option<f64>, reason: String },
    #[error("parametrization derivative dt/dtau vanishes")]
    SingularParametrization,
    #[error("velocity is not timelike at tau = {tau}")]
    NotTimelike { tau: f64 },
    #[error("step size underflow at tau = {tau}")]
    StepUnderflow { tau: f64 },
    #[error("maximum number of steps exceeded at tau = {tau}")]
    MaxStepsExceeded { tau: f64 },
    #[error("trajectory has no samples")]
    EmptyTrajectory,
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

fn at_tau(tau: &Option<f64>) -> String {
    tau.map(|t| format!(" at tau = {t}")).unwrap_or_default()
}
