use std::fmt::Display;
use std::time::Instant;

/// Machine-readable account of one run, emitted as `r <key> <value>` lines
/// after the primary output when `--report` is set.
///
/// Everything printed to stdout is a pure function of the inputs and the
/// seed, so repeated runs can be compared byte for byte. The wall time is
/// the one genuinely nondeterministic measurement, so it goes to stderr.
pub struct RunReport {
    command: String,
    digests: Vec<(String, u64)>,
    params: Vec<(String, String)>,
    results: Vec<String>,
    counters: Vec<(String, u64)>,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            digests: Vec::new(),
            params: Vec::new(),
            results: Vec::new(),
            counters: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn digest(&mut self, label: &str, value: u64) {
        self.digests.push((label.to_string(), value));
    }

    pub fn param(&mut self, key: &str, value: impl Display) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, line: impl Display) {
        self.results.push(line.to_string());
    }

    pub fn counter(&mut self, key: &str, value: u64) {
        self.counters.push((key.to_string(), value));
    }

    pub fn emit(&self) {
        println!("r command {}", self.command);
        for (label, value) in &self.digests {
            println!("r digest {label} {value:016x}");
        }
        for (key, value) in &self.params {
            println!("r param {key} {value}");
        }
        for line in &self.results {
            println!("r result {line}");
        }
        for (key, value) in &self.counters {
            println!("r counter {key} {value}");
        }
        eprintln!("r wall_ms {}", self.started.elapsed().as_millis());
    }
}
