//! Workflow benchmark data model, JSON file format, and structural validation.
//!
//! A [`WorkflowSpec`] fully describes a benchmark: the files it touches, the
//! tasks it runs, and each task's kernel parameters. Dependencies are never
//! stored as explicit edges; they are induced by files, with the producer of
//! a file preceding every consumer. Validation checks that this relation is a
//! DAG, that every file has at most one producer, and that per-task parameters
//! are well formed. Violations are data, not errors: [`WorkflowSpec::validate`]
//! always returns a report.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Fraction of compute workers that run the CPU kernel, in tenths.
///
/// Each task's compute phase runs groups of 10 workers, so the CPU/memory mix
/// can only take values 0.0, 0.1, ..., 1.0. Stored as an integer count of
/// tenths to keep equality and ordering exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CpuFraction(u8);

#[derive(Debug, Error)]
#[error("f = {0} is not a multiple of 0.1 in [0.0, 1.0]")]
pub struct FractionError(pub f64);

impl CpuFraction {
    pub fn from_tenths(tenths: u8) -> Result<Self, FractionError> {
        if tenths <= 10 {
            Ok(CpuFraction(tenths))
        } else {
            Err(FractionError(f64::from(tenths) / 10.0))
        }
    }

    /// Accepts values that are exact multiples of 0.1 up to f64 parsing noise.
    pub fn from_f64(f: f64) -> Result<Self, FractionError> {
        let scaled = f * 10.0;
        let tenths = scaled.round();
        if !(0.0..=10.0).contains(&tenths) || (scaled - tenths).abs() > 1e-9 {
            return Err(FractionError(f));
        }
        Ok(CpuFraction(tenths as u8))
    }

    pub fn tenths(self) -> u8 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 10.0
    }

    /// CPU workers per group of 10, i.e. round(10 f).
    pub fn cpu_workers_per_group(self) -> u32 {
        u32::from(self.0)
    }

    /// Memory workers per group of 10.
    pub fn mem_workers_per_group(self) -> u32 {
        10 - u32::from(self.0)
    }

    /// The sweep 0.1, 0.2, ..., 0.9 used by calibration experiments.
    pub fn sweep() -> Vec<CpuFraction> {
        (1..=9).map(CpuFraction).collect()
    }
}

impl fmt::Display for CpuFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// One task's kernel configuration, validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskParams {
    pub cores: u32,
    pub cpuwork: f64,
    pub memwork: f64,
    pub f: CpuFraction,
}

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("cores must be >= 1")]
    ZeroCores,
    #[error("{field} must be finite and >= 0, got {value}")]
    NegativeWork { field: &'static str, value: f64 },
    #[error(transparent)]
    Fraction(#[from] FractionError),
}

impl TaskParams {
    pub fn new(cores: u32, cpuwork: f64, memwork: f64, f: CpuFraction) -> Result<Self, ParamError> {
        if cores == 0 {
            return Err(ParamError::ZeroCores);
        }
        for (field, value) in [("cpuwork", cpuwork), ("memwork", memwork)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ParamError::NegativeWork { field, value });
            }
        }
        Ok(TaskParams {
            cores,
            cpuwork,
            memwork,
            f,
        })
    }
}

/// A data file: unique id plus size in bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSpec {
    pub id: String,
    pub size_bytes: u64,
}

/// A task: category label, kernel parameters, and file bindings.
///
/// The kernel parameters are stored raw as parsed from JSON; [`TaskSpec::params`]
/// converts them to a validated [`TaskParams`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub id: String,
    pub category: String,
    pub cores: u32,
    pub cpuwork: f64,
    pub memwork: f64,
    pub f: f64,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl TaskSpec {
    pub fn params(&self) -> Result<TaskParams, ParamError> {
        TaskParams::new(
            self.cores,
            self.cpuwork,
            self.memwork,
            CpuFraction::from_f64(self.f)?,
        )
    }
}

/// Generator metadata carried alongside the benchmark.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub recipe: String,
    pub requested_tasks: u64,
    pub requested_footprint_bytes: u64,
    pub seed: u64,
}

/// The complete benchmark description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkflowSpec {
    pub name: String,
    pub provenance: Provenance,
    pub files: Vec<FileSpec>,
    pub tasks: Vec<TaskSpec>,
}

/// A single structural violation found by validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateFileId { file: String },
    DuplicateTaskId { task: String },
    MultipleProducers { file: String, tasks: Vec<String> },
    UnknownFile { task: String, file: String },
    InputIsOutput { task: String, file: String },
    DuplicateReference { task: String, file: String },
    BadParams { task: String, detail: String },
    Cycle { tasks: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateFileId { file } => write!(out, "file {file} declared twice"),
            Violation::DuplicateTaskId { task } => write!(out, "task {task} declared twice"),
            Violation::MultipleProducers { file, tasks } => {
                write!(out, "file {file} has two producers: {}", tasks.join(", "))
            }
            Violation::UnknownFile { task, file } => {
                write!(out, "task {task} references undeclared file {file}")
            }
            Violation::InputIsOutput { task, file } => {
                write!(out, "task {task} lists file {file} as both input and output")
            }
            Violation::DuplicateReference { task, file } => {
                write!(out, "task {task} references file {file} twice")
            }
            Violation::BadParams { task, detail } => {
                write!(out, "task {task} has invalid parameters: {detail}")
            }
            Violation::Cycle { tasks } => {
                write!(out, "cycle through tasks: {}", tasks.join(", "))
            }
        }
    }
}

/// Outcome of structural validation. Violations are data, never errors.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(out, "ok")
        } else {
            for v in &self.violations {
                writeln!(out, "{v}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("workflow spec is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl WorkflowSpec {
    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut file_ids = BTreeSet::new();
        for file in &self.files {
            if !file_ids.insert(file.id.as_str()) {
                violations.push(Violation::DuplicateFileId {
                    file: file.id.clone(),
                });
            }
        }
        let mut task_ids = BTreeSet::new();
        for task in &self.tasks {
            if !task_ids.insert(task.id.as_str()) {
                violations.push(Violation::DuplicateTaskId {
                    task: task.id.clone(),
                });
            }
        }

        for task in &self.tasks {
            if let Err(err) = task.params() {
                violations.push(Violation::BadParams {
                    task: task.id.clone(),
                    detail: err.to_string(),
                });
            }
            let inputs: BTreeSet<&str> = task.inputs.iter().map(String::as_str).collect();
            for (refs, declared) in [(&task.inputs, &inputs), (&task.outputs, &BTreeSet::new())] {
                let _ = declared;
                let mut seen = BTreeSet::new();
                for file in refs.iter() {
                    if !file_ids.contains(file.as_str()) {
                        violations.push(Violation::UnknownFile {
                            task: task.id.clone(),
                            file: file.clone(),
                        });
                    }
                    if !seen.insert(file.as_str()) {
                        violations.push(Violation::DuplicateReference {
                            task: task.id.clone(),
                            file: file.clone(),
                        });
                    }
                }
            }
            for output in &task.outputs {
                if inputs.contains(output.as_str()) {
                    violations.push(Violation::InputIsOutput {
                        task: task.id.clone(),
                        file: output.clone(),
                    });
                }
            }
        }

        // At most one producer per file.
        let mut producers: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for task in &self.tasks {
            for output in &task.outputs {
                producers.entry(output).or_default().push(&task.id);
            }
        }
        for (file, tasks) in &producers {
            if tasks.len() > 1 {
                violations.push(Violation::MultipleProducers {
                    file: (*file).to_string(),
                    tasks: tasks.iter().map(|t| (*t).to_string()).collect(),
                });
            }
        }

        if self.topological_order().is_none() {
            let in_cycle = self.tasks_in_cycles();
            violations.push(Violation::Cycle { tasks: in_cycle });
        }

        ValidationReport { violations }
    }

    /// Sum of sizes of all distinct files referenced by at least one task.
    pub fn total_footprint(&self) -> u64 {
        let referenced: BTreeSet<&str> = self
            .tasks
            .iter()
            .flat_map(|t| t.inputs.iter().chain(t.outputs.iter()))
            .map(String::as_str)
            .collect();
        self.files
            .iter()
            .filter(|f| referenced.contains(f.id.as_str()))
            .map(|f| f.size_bytes)
            .sum()
    }

    /// Serializes to the canonical JSON document. Deterministic: the same
    /// spec always produces identical bytes.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("spec serialization cannot fail");
        text.push('\n');
        text
    }

    /// Parses a JSON document. Structural problems beyond the schema are
    /// reported by [`WorkflowSpec::validate`], not here.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Map from file id to the index of its producing task. Files absent
    /// from the map are workflow inputs. When a file illegally has several
    /// producers the first one wins; validation reports the violation.
    pub fn file_producers(&self) -> BTreeMap<&str, usize> {
        let mut producers = BTreeMap::new();
        for (idx, task) in self.tasks.iter().enumerate() {
            for output in &task.outputs {
                producers.entry(output.as_str()).or_insert(idx);
            }
        }
        producers
    }

    /// Dependency edges (producer task index, consumer task index) induced
    /// by shared files.
    pub fn dependency_edges(&self) -> BTreeSet<(usize, usize)> {
        let producers = self.file_producers();
        let mut edges = BTreeSet::new();
        for (consumer_idx, task) in self.tasks.iter().enumerate() {
            for input in &task.inputs {
                if let Some(&producer_idx) = producers.get(input.as_str()) {
                    if producer_idx != consumer_idx {
                        edges.insert((producer_idx, consumer_idx));
                    }
                }
            }
        }
        edges
    }

    /// Kahn topological order over task indices, or `None` if cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let edges = self.dependency_edges();
        let mut indegree = vec![0usize; self.tasks.len()];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.tasks.len()];
        for &(parent, child) in &edges {
            indegree[child] += 1;
            children[parent].push(child);
        }
        let mut ready: Vec<usize> = (0..self.tasks.len())
            .filter(|&i| indegree[i] == 0)
            .collect();
        let mut order = Vec::with_capacity(self.tasks.len());
        while let Some(task) = ready.pop() {
            order.push(task);
            for &child in &children[task] {
                indegree[child] -= 1;
                if indegree[child] == 0 {
                    ready.push(child);
                }
            }
        }
        if order.len() == self.tasks.len() {
            Some(order)
        } else {
            None
        }
    }

    /// Ids of tasks that sit on at least one dependency cycle.
    fn tasks_in_cycles(&self) -> Vec<String> {
        let edges = self.dependency_edges();
        let mut indegree = vec![0usize; self.tasks.len()];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.tasks.len()];
        for &(parent, child) in &edges {
            indegree[child] += 1;
            children[parent].push(child);
        }
        let mut ready: Vec<usize> = (0..self.tasks.len())
            .filter(|&i| indegree[i] == 0)
            .collect();
        let mut removed = vec![false; self.tasks.len()];
        while let Some(task) = ready.pop() {
            removed[task] = true;
            for &child in &children[task] {
                indegree[child] -= 1;
                if indegree[child] == 0 {
                    ready.push(child);
                }
            }
        }
        self.tasks
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed[*i])
            .map(|(_, t)| t.id.clone())
            .collect()
    }
}
