use std::fmt::Write as _;

/// Convention tag for printed polynomials: terms by degree, then words in
/// lexicographic order.
pub const BASIS_CONVENTION: &str = "deglex-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
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
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone)]
enum Item {
    Field(String, String),
    List(String, Vec<String>),
    Check(String, Status, Option<String>),
    Notice(String),
}

/// Output of one command. Rendered as text or as `key=value` lines.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    nc_degree: usize,
    adic_degree: usize,
    items: Vec<Item>,
}

impl Report {
    pub fn new(command: &str, nc_degree: usize, adic_degree: usize) -> Self {
        Report {
            command: command.to_string(),
            nc_degree,
            adic_degree,
            items: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.items.push(Item::Field(key.to_string(), value.to_string()));
    }

    pub fn list<I, S>(&mut self, key: &str, values: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.items
            .push(Item::List(key.to_string(), values.into_iter().map(|s| s.to_string()).collect()));
    }

    pub fn check(&mut self, name: &str, status: Status) {
        self.items.push(Item::Check(name.to_string(), status, None));
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.items
            .push(Item::Check(name.to_string(), Status::Skip, Some(reason.to_string())));
    }

    pub fn notice(&mut self, text: impl ToString) {
        self.items.push(Item::Notice(text.to_string()));
    }

    pub fn failed(&self) -> bool {
        self.items
            .iter()
            .any(|i| matches!(i, Item::Check(_, Status::Fail, _)))
    }

    pub fn checks(&self) -> Vec<(String, Status)> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Check(n, s, _) => Some((n.clone(), *s)),
                _ => None,
            })
            .collect()
    }

    /// Value of the first field named `key`.
    pub fn value(&self, key: &str) -> Option<&str> {
        self.items.iter().find_map(|i| match i {
            Item::Field(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    /// Entries of the first list named `key`.
    pub fn values(&self, key: &str) -> Option<&[String]> {
        self.items.iter().find_map(|i| match i {
            Item::List(k, vs) if k == key => Some(vs.as_slice()),
            _ => None,
        })
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.checks().into_iter().find(|(n, _)| n == check).map(|(_, s)| s)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Machine => self.render_machine(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# ncthick {} d={} N={} basis={}",
            self.command, self.nc_degree, self.adic_degree, BASIS_CONVENTION
        );
        for item in &self.items {
            match item {
                Item::Field(k, v) => {
                    let _ = writeln!(s, "{k}: {v}");
                }
                Item::List(k, vs) => {
                    let _ = writeln!(s, "{k}: {}", vs.len());
                    for (i, v) in vs.iter().enumerate() {
                        let _ = writeln!(s, "  [{}] {v}", i + 1);
                    }
                }
                Item::Check(n, st, reason) => match reason {
                    Some(r) => {
                        let _ = writeln!(s, "{} {n} ({r})", st.label());
                    }
                    None => {
                        let _ = writeln!(s, "{} {n}", st.label());
                    }
                },
                Item::Notice(t) => {
                    let _ = writeln!(s, "note: {t}");
                }
            }
        }
        s
    }

    fn render_machine(&self) -> String {
        let key = |k: &str| k.replace(' ', "_");
        let mut s = String::new();
        let _ = writeln!(s, "format=ncthick-machine-v1");
        let _ = writeln!(s, "command={}", self.command);
        let _ = writeln!(s, "nc_degree={}", self.nc_degree);
        let _ = writeln!(s, "adic_degree={}", self.adic_degree);
        let _ = writeln!(s, "basis={BASIS_CONVENTION}");
        let mut notes = 0;
        for item in &self.items {
            match item {
                Item::Field(k, v) => {
                    let _ = writeln!(s, "{}={v}", key(k));
                }
                Item::List(k, vs) => {
                    let _ = writeln!(s, "{}.count={}", key(k), vs.len());
                    for (i, v) in vs.iter().enumerate() {
                        let _ = writeln!(s, "{}.{}={v}", key(k), i + 1);
                    }
                }
                Item::Check(n, st, _) => {
                    let _ = writeln!(s, "check.{}={}", key(n), st.label());
                }
                Item::Notice(t) => {
                    notes += 1;
                    let _ = writeln!(s, "note.{notes}={t}");
                }
            }
        }
        s
    }
}
