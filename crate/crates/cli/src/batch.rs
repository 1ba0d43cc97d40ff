//! Batch evaluation of a newline-delimited matrix list.

use rayon::prelude::*;
use torus_bundle::cohomology::CoefficientRing;

use crate::input::parse_theta;
use crate::report::{build_report, render_text, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Default)]
pub struct BatchResult {
    /// One entry per accepted line, in input order.
    pub reports: Vec<(usize, Report)>,
    /// `(line number, message)` for rejected lines.
    pub rejected: Vec<(usize, String)>,
}

impl BatchResult {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.passed())
    }

    pub fn summary(&self) -> String {
        let failed = self.reports.iter().filter(|(_, r)| !r.passed()).count();
        let mut s = format!(
            "batch: {} reports ({} with failed checks), {} rejected lines\n",
            self.reports.len(),
            failed,
            self.rejected.len()
        );
        for (line, msg) in &self.rejected {
            s.push_str(&format!("  line {line}: {msg}\n"));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (i, (_, r)) in self.reports.iter().enumerate() {
            match format {
                Format::Json => {
                    out.push_str(&r.to_json());
                    out.push('\n');
                }
                Format::Text => {
                    if i > 0 {
                        out.push_str("\n----\n\n");
                    }
                    out.push_str(&render_text(r));
                }
            }
        }
        out
    }
}

/// Blank lines and lines starting with `#` are skipped. Line numbers are
/// 1-based.
pub fn run_batch(input: &str, rings: &[CoefficientRing]) -> BatchResult {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(usize, Result<Report, String>)> = lines
        .par_iter()
        .map(|&(n, l)| {
            let r = parse_theta(l)
                .map_err(|e| e.to_string())
                .and_then(|t| build_report(&t, rings).map_err(|e| e.to_string()));
            (n, r)
        })
        .collect();
    let mut out = BatchResult::default();
    for (n, r) in results {
        match r {
            Ok(rep) => out.reports.push((n, rep)),
            Err(e) => out.rejected.push((n, e)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        let r = run_batch("", &[CoefficientRing::Integers]);
        assert!(r.reports.is_empty() && r.rejected.is_empty());
        assert_eq!(r.render(Format::Json), "");
    }

    #[test]
    fn partial_failure() {
        let r = run_batch("1,0,0,1\n# comment\n1,2,3,4\n\n2,1,1,1\n", &[CoefficientRing::Integers]);
        assert_eq!(r.reports.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(r.rejected.len(), 1);
        assert_eq!(r.rejected[0].0, 3);
        assert!(r.summary().contains("line 3"));
    }
}
