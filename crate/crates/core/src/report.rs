//! Named residuals and the line-oriented report format.

use serde::Serialize;

/// Ordered list of named max-norm residuals.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Residuals {
    pub entries: Vec<(String, f64)>,
}

impl Residuals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, r: f64) {
        self.entries.push((name.into(), r));
    }

    /// Keeps the larger residual when the name already exists.
    pub fn record(&mut self, name: &str, r: f64) {
        match self.entries.iter_mut().find(|e| e.0 == name) {
            Some(e) => e.1 = if r.is_nan() || e.1.is_nan() { f64::NAN } else { e.1.max(r) },
            None => self.entries.push((name.to_string(), r)),
        }
    }

    pub fn extend(&mut self, prefix: &str, other: &Residuals) {
        for (n, r) in &other.entries {
            self.push(format!("{prefix}{n}"), *r);
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == name).map(|e| e.1)
    }

    /// Largest residual; NaN propagates.
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
    }

    pub fn failures(&self, tol: f64) -> Vec<(String, f64)> {
        self.entries.iter().filter(|e| !(e.1 <= tol)).cloned().collect()
    }

    pub fn within(&self, tol: f64) -> bool {
        self.failures(tol).is_empty()
    }
}
