//! Flat `key value` run reports.

use std::fmt::Write as _;
use std::time::Duration;

use crate::approx::BoundReport;
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub instance_digest: String,
    pub strategy: String,
    pub f_value: Weight,
    pub bounds: BoundReport,
    pub exact_optimum: Option<Weight>,
    pub elapsed: Duration,
}

impl RunReport {
    /// `f ≤ D`, and `f − f* ≤ D − LB` when the optimum is known.
    pub fn check(&self) -> Result<()> {
        if self.f_value > self.bounds.d_value {
            return Err(Error::InternalInvariant(format!(
                "f = {} exceeds D = {}",
                self.f_value, self.bounds.d_value
            )));
        }
        if let Some(opt) = self.exact_optimum {
            let gap = self.f_value.try_sub(opt)?;
            if gap > self.bounds.deviation_bound {
                return Err(Error::InternalInvariant(format!(
                    "f − f* = {gap} exceeds the deviation bound {}",
                    self.bounds.deviation_bound
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance_digest {}", self.instance_digest);
        let _ = writeln!(out, "strategy {}", self.strategy);
        let _ = writeln!(out, "f_value {}", self.f_value);
        out.push_str(&bound_lines(&self.bounds));
        match self.exact_optimum {
            Some(opt) => {
                let _ = writeln!(out, "exact_optimum {opt}");
            }
            None => out.push_str("exact_optimum none\n"),
        }
        let _ = writeln!(out, "elapsed_us {}", self.elapsed.as_micros());
        out
    }
}

pub fn bound_lines(bounds: &BoundReport) -> String {
    format!(
        "d_value {}\nlower_bound {}\ndeviation_bound {}\n",
        bounds.d_value, bounds.lower_bound, bounds.deviation_bound
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(f: u64, opt: Option<u64>) -> RunReport {
        RunReport {
            instance_digest: "ab".into(),
            strategy: "whole".into(),
            f_value: Weight::new(f),
            bounds: BoundReport {
                d_value: Weight::new(19),
                lower_bound: Weight::new(10),
                deviation_bound: Weight::new(9),
            },
            exact_optimum: opt.map(Weight::new),
            elapsed: Duration::from_micros(42),
        }
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            report(12, Some(12)).to_text(),
            "instance_digest ab\nstrategy whole\nf_value 12\nd_value 19\nlower_bound 10\n\
             deviation_bound 9\nexact_optimum 12\nelapsed_us 42\n"
        );
        assert!(report(12, None).to_text().contains("exact_optimum none\n"));
    }

    #[test]
    fn invariants() {
        assert!(report(19, Some(10)).check().is_ok());
        assert!(report(20, None).check().is_err());
        assert!(report(19, Some(9)).check().is_err());
    }
}
