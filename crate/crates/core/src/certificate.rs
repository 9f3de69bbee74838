use serde::{Deserialize, Serialize};

use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Proven,
    Refuted,
    NoCounterexample,
}

impl Verdict {
    /// Anything but `Refuted`.
    pub fn passed(self) -> bool {
        self != Verdict::Refuted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    GeneratorPairs,
    Sampled,
}

/// Outcome of a decision procedure or falsifier.
///
/// `Proven` only comes out of the closed-form and generator-pair methods;
/// sampling can refute but never prove. A `Refuted` certificate always
/// carries the offending pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<(Vector, Vector)>,
    pub samples_used: usize,
    pub seed: Option<u64>,
}

impl Certificate {
    pub fn proven(method: Method) -> Self {
        debug_assert!(method != Method::Sampled);
        Self {
            verdict: Verdict::Proven,
            method,
            witness: None,
            samples_used: 0,
            seed: None,
        }
    }

    pub fn refuted(method: Method, witness: (Vector, Vector)) -> Self {
        Self {
            verdict: Verdict::Refuted,
            method,
            witness: Some(witness),
            samples_used: 0,
            seed: None,
        }
    }

    pub fn no_counterexample(samples_used: usize, seed: u64) -> Self {
        Self {
            verdict: Verdict::NoCounterexample,
            method: Method::Sampled,
            witness: None,
            samples_used,
            seed: Some(seed),
        }
    }

    pub(crate) fn sampled(mut self, samples_used: usize, seed: u64) -> Self {
        self.samples_used = samples_used;
        self.seed = Some(seed);
        self
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}
