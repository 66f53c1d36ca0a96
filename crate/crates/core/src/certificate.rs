use crate::arith::RatFunc;
use crate::tensors::Matrix;

/// One nonzero obstruction of a claimed identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub label: String,
    pub index: Vec<usize>,
    pub value: RatFunc,
}

/// Verdict of a check together with its witnesses.
///
/// A certificate holds exactly when it carries no residuals; every stored
/// residual is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    residuals: Vec<Residual>,
    derived: Vec<(String, Matrix)>,
}

impl Certificate {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `value` under `label` when it is nonzero.
    pub fn push(&mut self, label: &str, index: Vec<usize>, value: RatFunc) {
        if !value.is_zero() {
            self.residuals.push(Residual {
                label: label.to_string(),
                index,
                value,
            });
        }
    }

    pub fn add_derived(&mut self, name: &str, m: Matrix) {
        self.derived.push((name.to_string(), m));
    }

    /// Appends another certificate's residuals and derived tensors.
    pub fn absorb(&mut self, other: Certificate) {
        self.residuals.extend(other.residuals);
        self.derived.extend(other.derived);
    }

    /// Same as [`absorb`](Self::absorb) but prefixes every residual label.
    pub fn absorb_prefixed(&mut self, prefix: &str, other: Certificate) {
        self.residuals
            .extend(other.residuals.into_iter().map(|mut r| {
                r.label = format!("{prefix}.{}", r.label);
                r
            }));
        self.derived.extend(other.derived);
    }

    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn residuals(&self) -> &[Residual] {
        &self.residuals
    }

    pub fn derived(&self) -> &[(String, Matrix)] {
        &self.derived
    }

    pub fn derived_tensor(&self, name: &str) -> Option<&Matrix> {
        self.derived.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// True when some residual label starts with `prefix`.
    pub fn fails_at(&self, prefix: &str) -> bool {
        self.residuals.iter().any(|r| r.label.starts_with(prefix))
    }
}
