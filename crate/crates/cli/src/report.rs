use std::fmt::Write as _;
use std::time::Instant;

use parabolic_twist::hopf::CheckOutcome;
use parabolic_twist::repmat::{MatrixCheck, PolyMatrix};
use parabolic_twist::{AlgebraError, Q};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A definitional-only entry whose printed closed form disagrees.
    Finding,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
        }
    }
}

/// One check. `degree` is the truncation degree of symbolic checks and
/// absent for exact representation-level ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub status: Status,
    pub degree: Option<u32>,
    /// Leading nonzero term of the difference of the two sides.
    pub residual: Option<String>,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// What a check produced before it is wrapped into a `Report`.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub residual: Option<String>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn flag(ok: bool) -> Verdict {
        Verdict { status: Status::from_bool(ok), residual: None, note: None }
    }

    pub fn symbolic<const N: usize>(c: &CheckOutcome<Q, N>) -> Verdict {
        Verdict { status: Status::from_bool(c.holds), residual: element_residual(c), note: None }
    }

    pub fn matrix(c: &MatrixCheck<Q>) -> Verdict {
        Verdict { status: Status::from_bool(c.holds), residual: matrix_residual(&c.residual), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.note = Some(note.into());
        self
    }
}

/// `2/9*x*z * E33 (x) E33 (x) E12`.
pub fn element_residual<const N: usize>(c: &CheckOutcome<Q, N>) -> Option<String> {
    let (_, key, coeff) = c.residual.leading_term()?;
    let legs: Vec<String> = key.iter().map(|m| m.to_string()).collect();
    Some(format!("{coeff} * {}", legs.join(" (x) ")))
}

/// First entry, row-major, among those of lowest total degree.
pub fn matrix_residual(m: &PolyMatrix<Q>) -> Option<String> {
    let low = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter_map(|(i, j)| m.get(i, j).valuation().map(|d| (d, i, j)))
        .min()?;
    let (d, i, j) = low;
    Some(format!("entry ({i},{j}): {}", m.get(i, j).homogeneous(d)))
}

/// Runs checks and stamps them with wall time.
#[derive(Clone, Copy, Debug)]
pub struct Clock {
    pub timing: bool,
}

impl Clock {
    pub fn run(
        &self,
        name: impl Into<String>,
        degree: Option<u32>,
        check: impl FnOnce() -> Result<Verdict, AlgebraError>,
    ) -> Result<Report, AlgebraError> {
        let start = Instant::now();
        let v = check()?;
        let millis = if self.timing { start.elapsed().as_millis() as u64 } else { 0 };
        Ok(Report { name: name.into(), status: v.status, degree, residual: v.residual, millis, note: v.note })
    }

    /// Runs shared work whose time is charged to the first report of a group.
    pub fn shared<T>(&self, work: impl FnOnce() -> Result<T, AlgebraError>) -> Result<(T, u64), AlgebraError> {
        let start = Instant::now();
        let out = work()?;
        Ok((out, if self.timing { start.elapsed().as_millis() as u64 } else { 0 }))
    }
}

/// Everything a command emits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub reports: Vec<Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

/// Adds `millis` of shared work to the first report.
pub fn charge(mut reports: Vec<Report>, millis: u64) -> Vec<Report> {
    if let Some(r) = reports.first_mut() {
        r.millis += millis;
    }
    reports
}

impl Document {
    pub fn failed(&self) -> bool {
        self.reports.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let _ = write!(s, "{:<8}{}", r.status.label(), r.name);
            if let Some(d) = r.degree {
                let _ = write!(s, "  [D={d}]");
            }
            if r.millis > 0 {
                let _ = write!(s, "  {} ms", r.millis);
            }
            s.push('\n');
            if let Some(res) = &r.residual {
                let _ = writeln!(s, "        residual: {res}");
            }
            if let Some(note) = &r.note {
                let _ = writeln!(s, "        note: {note}");
            }
        }
        if let Some(m) = &self.matrix {
            for row in m {
                let _ = writeln!(s, "[{}]", row.join(", "));
            }
        }
        if let Some(v) = &self.value {
            let _ = writeln!(s, "{v}");
        }
        s
    }
}
