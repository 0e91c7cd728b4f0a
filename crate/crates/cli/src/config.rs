//! Run configuration shared by every subcommand: grade and sample
//! budgets, the subtraction scheme, and the output format.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use renorm_core::algebra::SubtractionScheme;
use renorm_core::graph::DegreeFunction;
use renorm_core::hopf::Session;

/// How a scheme was requested on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeSpec {
    Minimal,
    Critical,
    Pole,
    /// A JSON file holding a `{ "graph name or canonical key": order }`
    /// table for a custom jet assignment.
    Custom(PathBuf),
}

impl SchemeSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        match text {
            "minimal" => Ok(SchemeSpec::Minimal),
            "critical" => Ok(SchemeSpec::Critical),
            "pole" => Ok(SchemeSpec::Pole),
            other => match other.strip_prefix("custom:") {
                Some(path) if !path.is_empty() => Ok(SchemeSpec::Custom(PathBuf::from(path))),
                _ => Err(format!(
                    "unknown scheme '{other}': expected minimal, critical, pole or custom:<file>"
                )),
            },
        }
    }

    /// Builds the scheme, resolving a custom table against the session
    /// so entries may use either registered names or canonical keys.
    pub fn resolve(&self, session: &Session) -> Result<SubtractionScheme, String> {
        match self {
            SchemeSpec::Minimal => Ok(SubtractionScheme::Jet(DegreeFunction::Minimal)),
            SchemeSpec::Critical => Ok(SubtractionScheme::Jet(DegreeFunction::Critical)),
            SchemeSpec::Pole => Ok(SubtractionScheme::Pole),
            SchemeSpec::Custom(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let table: BTreeMap<String, i64> = serde_json::from_str(&text)
                    .map_err(|e| format!("bad degree table {}: {e}", path.display()))?;
                let mut by_key = BTreeMap::new();
                for (name, order) in table {
                    let key = match session.generator_by_name(&name) {
                        Some(id) => session.key(id).to_string(),
                        // Not a registered name: take it as a canonical
                        // key directly.
                        None => name,
                    };
                    by_key.insert(key, order);
                }
                Ok(SubtractionScheme::Jet(DegreeFunction::Custom(by_key)))
            }
        }
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Minimal => write!(f, "minimal"),
            SchemeSpec::Critical => write!(f, "critical"),
            SchemeSpec::Pole => write!(f, "pole"),
            SchemeSpec::Custom(path) => write!(f, "custom:{}", path.display()),
        }
    }
}

/// Report rendering choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Everything a command run depends on besides its input files.
#[derive(Clone, Debug)]
pub struct WorkbenchConfig {
    /// Hopf-algebra working grade; sessions are built and all character
    /// computations run up to this loop number.
    pub max_grade: u32,
    /// Random instances per identity check.
    pub samples: u64,
    /// Base seed; every derived draw is a pure function of it.
    pub seed: u64,
    /// The subtraction scheme request.
    pub scheme: SchemeSpec,
    /// Report format.
    pub format: OutputFormat,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        WorkbenchConfig {
            max_grade: 3,
            samples: 200,
            seed: 0,
            scheme: SchemeSpec::Minimal,
            format: OutputFormat::Text,
        }
    }
}

impl WorkbenchConfig {
    /// Bounds promised to every downstream consumer.
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=6).contains(&self.max_grade) {
            return Err(format!(
                "max grade {} is out of range 1..=6",
                self.max_grade
            ));
        }
        if self.samples == 0 {
            return Err("samples must be at least 1".to_string());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_specs_parse_and_round_trip_through_display() {
        for text in ["minimal", "critical", "pole", "custom:orders.json"] {
            let spec = SchemeSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!(SchemeSpec::parse("bogus").is_err());
        assert!(SchemeSpec::parse("custom:").is_err());
    }

    #[test]
    fn the_default_config_is_valid_and_bounds_are_enforced() {
        let mut cfg = WorkbenchConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.max_grade = 0;
        assert!(cfg.validate().is_err());
        cfg.max_grade = 7;
        assert!(cfg.validate().is_err());
        cfg.max_grade = 3;
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
    }
}
