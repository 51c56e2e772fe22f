//! Validation reports shared by every checker in the crate.

use std::fmt;

/// The law or structural condition a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Table shape: lengths, index ranges, duplicate labels.
    Structure,
    /// The multiplication is defined exactly on the composable pairs.
    Composability,
    /// G1: `(xy)z = x(yz)`.
    Associativity,
    /// G2: `α(x)x = xβ(x) = x`.
    Identity,
    /// G3: `x⁻¹x = β(x)`, `xx⁻¹ = α(x)`.
    Inverse,
    /// Units are fixed by α, β, ι and idempotent.
    UnitLaw,
    /// α and β are onto the unit set.
    Surjectivity,
    /// A subset, image or product leaves the set it should stay in.
    Closure,
    /// A total operation is not commutative.
    Commutativity,
    /// `f(xy) = f(x)f(y)` on composable pairs.
    Homomorphism,
    /// `α'∘f = f₀∘α` and `β'∘f = f₀∘β`.
    SourceTarget,
    /// `f∘ε = ε'∘f₀`.
    UnitPreservation,
    /// `f∘ι = ι'∘f`.
    InverseCompatibility,
    /// `(x·y)⊕(z·t) = (x⊕z)·(y⊕t)`.
    Interchange,
    /// Vector-space axioms of a scalar action.
    VectorSpace,
    /// Structure maps commute with the scalar action.
    Linearity,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Structure => "structure",
            Rule::Composability => "composability",
            Rule::Associativity => "G1 associativity",
            Rule::Identity => "G2 identities",
            Rule::Inverse => "G3 inverses",
            Rule::UnitLaw => "unit law",
            Rule::Surjectivity => "surjectivity",
            Rule::Closure => "closure",
            Rule::Commutativity => "commutativity",
            Rule::Homomorphism => "homomorphism",
            Rule::SourceTarget => "source/target compatibility",
            Rule::UnitPreservation => "unit preservation",
            Rule::InverseCompatibility => "inverse compatibility",
            Rule::Interchange => "interchange law",
            Rule::VectorSpace => "vector space axioms",
            Rule::Linearity => "linearity",
        };
        f.write_str(name)
    }
}

/// One failed check together with the tuple of indices that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

/// Collected violations; an empty report is a pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

/// Violations kept per rule. Later hits of the same rule are counted, not stored.
pub const MAX_WITNESSES_PER_RULE: usize = 16;

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn push(&mut self, rule: Rule, witness: Vec<usize>, message: impl Into<String>) {
        if self.violations.iter().filter(|v| v.rule == rule).count() < MAX_WITNESSES_PER_RULE {
            self.violations.push(Violation {
                rule,
                witness,
                message: message.into(),
            });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.push(v.rule, v.witness, v.message);
        }
    }

    /// Rewrites every message with a prefix, used when nesting reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for v in &mut self.violations {
            v.message = format!("{prefix}: {}", v.message);
        }
        self
    }

    pub fn into_result(self) -> Result<(), ValidationReport> {
        if self.passed() {
            Ok(())
        } else {
            Err(self)
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "PASS");
        }
        writeln!(f, "FAIL ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}
