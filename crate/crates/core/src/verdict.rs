use std::fmt;

use serde::Serialize;

/// A structural identity checked by one of the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Shape,
    Coassociativity,
    LeftCounit,
    RightCounit,
    Associativity,
    LeftUnit,
    RightUnit,
    ComultiplicationMultiplicative,
    CounitMultiplicative,
    UnitComultiplicative,
    MorphismComultiplication,
    MorphismCounit,
    SurjectivityFlag,
    CoactionAssociativity,
    CoactionCounit,
    ContraAssociativity,
    ContraUnity,
    ComoduleMap,
    ContraMap,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// Result of an axiom check: the list of identities that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub failed: Vec<Axiom>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn require(&mut self, holds: bool, axiom: Axiom) {
        if !holds {
            self.failed.push(axiom);
        }
    }

    pub fn fails(&self, axiom: Axiom) -> bool {
        self.failed.contains(&axiom)
    }

    pub fn merge(mut self, other: Verdict) -> Self {
        for a in other.failed {
            if !self.failed.contains(&a) {
                self.failed.push(a);
            }
        }
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "pass")
        } else {
            let names: Vec<String> = self.failed.iter().map(ToString::to_string).collect();
            write!(f, "fail: {}", names.join(", "))
        }
    }
}
