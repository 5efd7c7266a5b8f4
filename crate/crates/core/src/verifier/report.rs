use std::fmt;

/// One compared pair of computed values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub description: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Every check passed, but an unbounded existential was only searched
    /// inside a finite window.
    BoundedPass,
    Fail,
    /// A hypothesis does not hold; nothing was checked.
    NotApplicable(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::BoundedPass => f.write_str("bounded pass"),
            Status::Fail => f.write_str("FAIL"),
            Status::NotApplicable(why) => write!(f, "n/a ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub ring: String,
    pub parameters: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Computed values that are not themselves compared.
    pub notes: Vec<(String, String)>,
    pub status: Status,
}

impl TheoremReport {
    pub fn new(theorem_id: &str, ring: &str) -> Self {
        TheoremReport {
            theorem_id: theorem_id.to_string(),
            ring: ring.to_string(),
            parameters: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn param(&mut self, name: &str, value: impl fmt::Display) -> &mut Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn note(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.notes.push((name.into(), value.to_string()));
    }

    pub fn check(
        &mut self,
        description: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
        pass: bool,
    ) {
        self.checks.push(Check {
            description: description.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        });
    }

    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, description: impl Into<String>, lhs: T, rhs: T) {
        let pass = lhs == rhs;
        self.check(description, lhs, rhs, pass);
    }

    pub fn not_applicable(mut self, why: impl Into<String>) -> Self {
        self.status = Status::NotApplicable(why.into());
        self
    }

    /// Sets the status from the checks; `bounded` marks a pass that rests on
    /// a finite search window.
    pub fn finish(mut self, bounded: bool) -> Self {
        if matches!(self.status, Status::NotApplicable(_)) {
            return self;
        }
        self.status = if self.checks.iter().any(|c| !c.pass) {
            Status::Fail
        } else if bounded {
            Status::BoundedPass
        } else {
            Status::Pass
        };
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// One tab-separated record per check:
    /// theorem_id, ring, description, lhs, rhs, pass.
    pub fn records(&self) -> Vec<String> {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        if let Status::NotApplicable(why) = &self.status {
            return vec![format!(
                "{}\t{}\tprecondition: {}\t-\t-\tn/a",
                self.theorem_id,
                self.ring,
                clean(why)
            )];
        }
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    self.theorem_id,
                    self.ring,
                    clean(&c.description),
                    clean(&c.lhs),
                    clean(&c.rhs),
                    if c.pass { "pass" } else { "FAIL" }
                )
            })
            .collect()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "{} on {} [{}]: {}",
            self.theorem_id,
            self.ring,
            params.join(", "),
            self.status
        )?;
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}: {} vs {}", c.description, c.lhs, c.rhs)?;
        }
        for (k, v) in &self.notes {
            writeln!(f, "       {k} = {v}")?;
        }
        Ok(())
    }
}
