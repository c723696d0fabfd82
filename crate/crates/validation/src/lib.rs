//! Bookkeeping for the acceptance run: one PASS/FAIL line per check.

use std::time::Duration;

pub struct Ledger {
    lines: Vec<(bool, String)>,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger { lines: Vec::new() }
    }

    /// Records and prints one check.
    pub fn check(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        println!("{} [{id}] {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((ok, format!("[{id}] {detail}")));
    }

    /// Prints context that is not itself a criterion.
    pub fn info(&self, id: &str, detail: impl AsRef<str>) {
        println!("INFO [{id}] {}", detail.as_ref());
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.0).count()
    }

    pub fn total(&self) -> usize {
        self.lines.len()
    }
}

impl Default for Ledger {
    fn default() -> Self {
        Self::new()
    }
}

pub fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}
