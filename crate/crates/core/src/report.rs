//! Outcomes of verification checks.
//!
//! A [`Verdict`] accumulates witnesses. Only the first few failure witnesses
//! are kept verbatim; the total count is always reported.

use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::ring::Ring;

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
    Error(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
            Status::Error(_) => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    notes: Vec<String>,
    witnesses: Vec<String>,
    failures: usize,
    checks: usize,
    skipped: Option<String>,
    error: Option<String>,
}

impl Verdict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict { skipped: Some(reason.into()), ..Self::default() }
    }

    pub fn errored(err: &AlgebraError) -> Self {
        Verdict { error: Some(err.to_string()), ..Self::default() }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Records one check; `witness` is only built on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.fail(witness());
        }
        ok
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness.into());
        }
    }

    /// Records a matrix identity `lhs = rhs`.
    pub fn check_matrices<R: Ring>(&mut self, what: impl FnOnce() -> String, lhs: &Matrix<R>, rhs: &Matrix<R>) -> bool {
        self.check(lhs == rhs, || format!("{}: {}", what(), matrix_difference(lhs, rhs)))
    }

    pub fn absorb(&mut self, other: Verdict) {
        self.notes.extend(other.notes);
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.failures += other.failures;
        self.checks += other.checks;
        if self.skipped.is_none() {
            self.skipped = other.skipped;
        }
        if self.error.is_none() {
            self.error = other.error;
        }
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn status(&self) -> Status {
        if let Some(e) = &self.error {
            Status::Error(e.clone())
        } else if self.failures > 0 {
            Status::Fail
        } else if let Some(r) = &self.skipped {
            Status::Skipped(r.clone())
        } else {
            Status::Pass
        }
    }

    /// Human-readable lines: reason or error first, then notes, then
    /// failure witnesses.
    pub fn details(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(e) = &self.error {
            out.push(format!("error: {e}"));
        }
        if let Some(r) = &self.skipped {
            out.push(r.clone());
        }
        out.extend(self.notes.iter().cloned());
        if self.failures > 0 {
            out.push(format!("{} of {} checks failed", self.failures, self.checks));
            out.extend(self.witnesses.iter().cloned());
            if self.failures > self.witnesses.len() {
                out.push(format!("({} further failures omitted)", self.failures - self.witnesses.len()));
            }
        }
        out
    }
}

/// Describes the first entry where two matrices differ.
pub fn matrix_difference<R: Ring>(lhs: &Matrix<R>, rhs: &Matrix<R>) -> String {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return format!("shapes {}x{} and {}x{}", lhs.rows(), lhs.cols(), rhs.rows(), rhs.cols());
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return format!("entry ({i},{j}): left = {}, right = {}", lhs[(i, j)], rhs[(i, j)]);
            }
        }
    }
    "matrices agree".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Gf3;

    #[test]
    fn status_precedence() {
        let mut v = Verdict::new();
        assert!(v.check(true, || unreachable!()));
        assert_eq!(v.status(), Status::Pass);
        v.fail("x");
        assert_eq!(v.status(), Status::Fail);
        assert_eq!(v.details(), vec!["1 of 1 checks failed".to_string(), "x".to_string()]);
        let mut s = Verdict::skipped("not eligible");
        assert_eq!(s.status(), Status::Skipped("not eligible".into()));
        s.absorb(v);
        assert_eq!(s.status(), Status::Fail);
    }

    #[test]
    fn witnesses_are_capped() {
        let mut v = Verdict::new();
        for i in 0..8 {
            v.check(false, || format!("w{i}"));
        }
        let d = v.details();
        assert_eq!(d.len(), 1 + MAX_WITNESSES + 1);
        assert_eq!(d.last().unwrap(), "(3 further failures omitted)");
    }

    #[test]
    fn difference_names_an_entry() {
        let a = Matrix::<Gf3>::identity(2);
        let b = Matrix::<Gf3>::zeros(2, 2);
        assert_eq!(matrix_difference(&a, &b), "entry (0,0): left = 1, right = 0");
    }
}
