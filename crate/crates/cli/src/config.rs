//! Run configuration, read from TOML.
//!
//! Every section is optional; missing keys take the defaults below. Losses
//! are given in dB and converted to linear transmissions here.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use ionphot::analysis::{BubbleModel, SweepAxis, SweepSpec};
use ionphot::capacity::{strontium_budgets, PowerBudget, TransmissionSource};
use ionphot::srdesign::{strontium_roster, WavelengthRole};
use ionphot::{BlockwiseOrder, CircuitSpec, LossModel, Method, SynthOptions, Wavelength};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub circuit: CircuitConfig,
    pub loss: LossConfig,
    pub sweep: SweepConfig,
    pub capacity: CapacityConfig,
    pub casestudy: CaseStudyConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CircuitConfig {
    pub m: u32,
    pub n: u32,
    pub method: Method,
    pub blockwise_order: BlockwiseOrder,
    /// Bus length between neighbouring zones.
    pub zone_pitch: f64,
}

impl Default for CircuitConfig {
    fn default() -> Self {
        Self {
            m: 3,
            n: 4,
            method: Method::BubbleSort,
            blockwise_order: BlockwiseOrder::Alternating,
            zone_pitch: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingOverride {
    pub pair: [u32; 2],
    pub eta_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossConfig {
    pub eta_x_db: f64,
    pub eta_y_db: f64,
    /// Waveguide loss per unit length; only the bus has nonzero lengths.
    pub propagation_db_per_unit: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub crossing_override: Vec<CrossingOverride>,
}

impl Default for LossConfig {
    fn default() -> Self {
        Self {
            eta_x_db: -0.22,
            eta_y_db: -0.1,
            propagation_db_per_unit: 0.0,
            crossing_override: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BubbleForm {
    /// `η_Y^{log2 n}` and displacement crossing counts.
    #[default]
    Paper,
    /// Real tree depths and crossing counts of the synthesized netlist.
    GraphExact,
}

impl BubbleForm {
    pub fn model(self) -> BubbleModel {
        match self {
            BubbleForm::Paper => BubbleModel::PAPER,
            BubbleForm::GraphExact => BubbleModel::GRAPH_EXACT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Splitter,
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub m: u32,
    pub n_min: u32,
    pub n_max: u32,
    /// Which loss varies; the other comes from `[loss]`.
    pub axis: Axis,
    pub eta_db_min: f64,
    pub eta_db_max: f64,
    pub steps: usize,
    pub bubble_form: BubbleForm,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            m: 3,
            n_min: 2,
            n_max: 100,
            axis: Axis::Crossing,
            eta_db_min: -1.0,
            eta_db_max: 0.0,
            steps: 51,
            bubble_form: BubbleForm::Paper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    #[default]
    ClosedForm,
    Graph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetRow {
    pub wavelength_nm: u32,
    pub required_mw: f64,
    pub available_mw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CapacityConfig {
    /// Wavelength count used for the per-budget zone limits.
    pub m: u32,
    /// One curve pair per entry.
    pub m_values: Vec<u32>,
    pub n_max: u32,
    pub source: Source,
    /// Laser-to-outcoupler ratios reported on their own.
    pub ratios: Vec<f64>,
    pub ions_per_zone: [u32; 2],
    /// Empty means the built-in strontium table.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub budgets: Vec<BudgetRow>,
}

impl Default for CapacityConfig {
    fn default() -> Self {
        Self {
            m: 3,
            m_values: vec![3, 7],
            n_max: 100,
            source: Source::ClosedForm,
            ratios: vec![500.0],
            ions_per_zone: [1, 10],
            budgets: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseStudyConfig {
    pub n: u32,
    pub method: Method,
    pub loading_zone: u32,
    pub solo_multiplicity: u32,
    /// TOML file holding `[[roster]]` entries, relative to this config.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roster_path: Option<PathBuf>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub roster: Vec<WavelengthRole>,
}

impl Default for CaseStudyConfig {
    fn default() -> Self {
        Self {
            n: 4,
            method: Method::BlockwiseDuplication,
            loading_zone: 1,
            solo_multiplicity: 1,
            roster_path: None,
            roster: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Graph,
    Digraph,
    Table,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Graph, Format::Digraph, Format::Table];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            formats: Format::ALL.to_vec(),
        }
    }
}

impl OutputConfig {
    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RosterFile {
    roster: Vec<WavelengthRole>,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |i| before.len() - i - 1)
        + 1;
    (line, column)
}

fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, ConfigError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| position(text, s.start));
        ConfigError::Parse {
            path: path.to_path_buf(),
            line,
            column,
            message: e.message().to_string(),
        }
    })
}

fn read(path: &Path) -> Result<String, ConfigError> {
    fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl RunConfig {
    /// Parses and validates; `origin` is only used in diagnostics.
    pub fn parse(text: &str, origin: &Path) -> Result<Self, ConfigError> {
        let config: RunConfig = parse_toml(text, origin)?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config file; a relative roster path is taken from the file's
    /// directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let mut config = Self::parse(&read(path)?, path)?;
        if let Some(roster) = &config.casestudy.roster_path {
            if roster.is_relative() {
                let base = path.parent().unwrap_or(Path::new(""));
                config.casestudy.roster_path = Some(base.join(roster));
            }
        }
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let c = &self.circuit;
        if c.m < 1 {
            return Err(field("circuit.m", "must be at least 1"));
        }
        if c.n < 1 {
            return Err(field("circuit.n", "must be at least 1"));
        }
        if c.zone_pitch.is_nan() || c.zone_pitch < 0.0 {
            return Err(field("circuit.zone_pitch", "must be nonnegative"));
        }
        self.loss_model()?;

        let s = &self.sweep;
        if s.m < 1 {
            return Err(field("sweep.m", "must be at least 1"));
        }
        if s.n_min < 1 || s.n_min > s.n_max {
            return Err(field(
                "sweep.n_min",
                format!("range {}..={} is empty", s.n_min, s.n_max),
            ));
        }
        if s.steps < 2 {
            return Err(field("sweep.steps", "need at least 2 grid points"));
        }
        if s.eta_db_min.is_nan() || s.eta_db_max.is_nan() || s.eta_db_min > s.eta_db_max {
            return Err(field(
                "sweep.eta_db_min",
                "must not exceed sweep.eta_db_max",
            ));
        }
        if s.eta_db_max > 0.0 {
            return Err(field("sweep.eta_db_max", "losses are at most 0 dB"));
        }

        let k = &self.capacity;
        if k.m < 1 {
            return Err(field("capacity.m", "must be at least 1"));
        }
        if k.m_values.iter().any(|&m| m < 1) {
            return Err(field("capacity.m_values", "every m must be at least 1"));
        }
        if k.n_max < 1 {
            return Err(field("capacity.n_max", "must be at least 1"));
        }
        if k.ratios.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(field("capacity.ratios", "every ratio must be positive"));
        }
        if k.ions_per_zone[0] > k.ions_per_zone[1] {
            return Err(field(
                "capacity.ions_per_zone",
                "lower bound exceeds upper bound",
            ));
        }
        for (i, row) in k.budgets.iter().enumerate() {
            PowerBudget::new(row.wavelength_nm, row.required_mw, row.available_mw)
                .map_err(|e| field(&format!("capacity.budgets[{i}]"), e.to_string()))?;
        }

        let cs = &self.casestudy;
        if cs.n < 1 {
            return Err(field("casestudy.n", "must be at least 1"));
        }
        if cs.loading_zone < 1 || cs.loading_zone > cs.n {
            return Err(field(
                "casestudy.loading_zone",
                format!("must be in 1..={}", cs.n),
            ));
        }
        if cs.solo_multiplicity < 1 {
            return Err(field("casestudy.solo_multiplicity", "must be at least 1"));
        }
        if cs.roster_path.is_some() && !cs.roster.is_empty() {
            return Err(field(
                "casestudy.roster_path",
                "give either roster_path or inline roster entries, not both",
            ));
        }
        if self.output.formats.is_empty() {
            return Err(field("output.formats", "select at least one format"));
        }
        Ok(())
    }

    pub fn circuit_spec(&self) -> Result<CircuitSpec, ConfigError> {
        CircuitSpec::new(self.circuit.m, self.circuit.n, self.circuit.method)
            .map_err(|e| field("circuit", e.to_string()))
    }

    pub fn synth_options(&self) -> SynthOptions<f64> {
        SynthOptions {
            blockwise_order: self.circuit.blockwise_order,
            zone_pitch: self.circuit.zone_pitch,
        }
    }

    pub fn loss_model(&self) -> Result<LossModel<f64>, ConfigError> {
        let l = &self.loss;
        let mut model = LossModel::from_db(l.eta_x_db, l.eta_y_db).map_err(|e| {
            let name = if l.eta_x_db > 0.0 || l.eta_x_db.is_nan() {
                "loss.eta_x_db"
            } else {
                "loss.eta_y_db"
            };
            field(name, e.to_string())
        })?;
        if l.propagation_db_per_unit != 0.0 {
            model = model
                .with_propagation_db(l.propagation_db_per_unit, self.circuit.zone_pitch)
                .map_err(|e| field("loss.propagation_db_per_unit", e.to_string()))?;
        }
        for (i, o) in l.crossing_override.iter().enumerate() {
            let name = format!("loss.crossing_override[{i}]");
            let eta = ionphot::db_to_linear(o.eta_db).map_err(|e| field(&name, e.to_string()))?;
            model = model
                .with_crossing_override(Wavelength(o.pair[0]), Wavelength(o.pair[1]), eta)
                .map_err(|e| field(&name, e.to_string()))?;
        }
        Ok(model)
    }

    /// The loss held fixed while the sweep varies the other one.
    pub fn sweep_spec(&self) -> SweepSpec<f64> {
        let s = &self.sweep;
        let (axis, fixed_db) = match s.axis {
            Axis::Splitter => (SweepAxis::Splitter, self.loss.eta_x_db),
            Axis::Crossing => (SweepAxis::Crossing, self.loss.eta_y_db),
        };
        SweepSpec {
            m: s.m,
            n_min: s.n_min,
            n_max: s.n_max,
            axis,
            fixed_db,
            eta_db_min: s.eta_db_min,
            eta_db_max: s.eta_db_max,
            steps: s.steps,
            bubble_model: s.bubble_form.model(),
        }
    }

    pub fn transmission_source(&self) -> TransmissionSource {
        match self.capacity.source {
            Source::ClosedForm => TransmissionSource::ClosedForm,
            Source::Graph => TransmissionSource::Graph,
        }
    }

    pub fn budgets(&self) -> Vec<PowerBudget<f64>> {
        if self.capacity.budgets.is_empty() {
            strontium_budgets()
        } else {
            self.capacity
                .budgets
                .iter()
                .map(|b| {
                    PowerBudget::new(b.wavelength_nm, b.required_mw, b.available_mw)
                        .expect("validated")
                })
                .collect()
        }
    }

    pub fn roster(&self) -> Result<Vec<WavelengthRole>, ConfigError> {
        if let Some(path) = &self.casestudy.roster_path {
            let file: RosterFile = parse_toml(&read(path)?, path)?;
            if file.roster.is_empty() {
                return Err(field(
                    "casestudy.roster_path",
                    "roster file lists no wavelengths",
                ));
            }
            Ok(file.roster)
        } else if self.casestudy.roster.is_empty() {
            Ok(strontium_roster())
        } else {
            Ok(self.casestudy.roster.clone())
        }
    }
}
