//! Structured pass/fail evidence shared by the validators.

use std::fmt;

use serde::Serialize;

/// How much of the input space a check covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    /// Every input was checked.
    Exhaustive,
    /// Only generators plus pseudo-random samples were checked.
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    // rings and homs
    HomZero,
    HomOne,
    HomAdd,
    HomMul,
    HomApply,
    HomDisagree,
    // lattices
    NotAntisymmetric,
    NoTop,
    NoBottom,
    NoMeet,
    // directed lattices
    BottomNotZeroRing,
    ZeroRingAboveBottom,
    InvalidDescriptor,
    EdgeDescriptor,
    EdgeNotHom,
    PathDependence,
    // ideals
    MissingZero,
    NotClosedNeg,
    NotClosedAdd,
    NotAbsorbing,
    TransitionClosure,
    BottomNotWhole,
    IdealShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub confidence: Confidence,
    /// Number of individual checks performed.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            confidence: Confidence::Exhaustive,
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            detail: detail.into(),
        });
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Folds another report in; confidence degrades to the weaker of the two.
    pub fn absorb(&mut self, other: ValidationReport) {
        if other.confidence == Confidence::Sampled {
            self.confidence = Confidence::Sampled;
        }
        self.checked += other.checked;
        for v in other.violations {
            self.violations.push(Violation {
                kind: v.kind,
                detail: format!("{}: {}", other.subject, v.detail),
            });
        }
    }

    /// "exhaustive pass", "sampled pass", or "fail".
    pub fn verdict(&self) -> &'static str {
        match (self.passed(), self.confidence) {
            (true, Confidence::Exhaustive) => "exhaustive pass",
            (true, Confidence::Sampled) => "sampled pass",
            (false, _) => "fail",
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} checks)",
            self.subject,
            self.verdict(),
            self.checked
        )?;
        for v in &self.violations {
            writeln!(f, "  {:?}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}
