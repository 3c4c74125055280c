/// Absolute tolerance used by geometric predicates (mirror incidence,
/// collinearity, vertex incidence).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);
    /// Environment variable that overrides the default predicate tolerance.
    pub const ENV_VAR: &'static str = "ORBIFOLD_TOLERANCE";

    /// Reads [`Self::ENV_VAR`], falling back to the default when unset or unparsable.
    pub fn from_env() -> Tolerance {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .map(Tolerance)
            .unwrap_or(Self::DEFAULT)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}
