//! Scenario configuration: defaults, validation, and the flat key-value
//! scenario file format.

use std::path::Path;

use hflts::{CriteriaWeights, WeightMode};

use crate::energy::{EnergyParams, ForwardingInterpretation};
use crate::error::{FlocError, Result};
use crate::links::RfTransferParams;
use crate::network::{deploy, DeploySetup, NetworkConfig, NodeState};
use crate::thermal::ThermalParams;

/// How per-node sun exposure is assigned.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ExposureMode {
    /// Each node keeps its deployment draw from `[0.5, 1]`.
    Random,
    /// Every node uses the same fixed factor.
    Constant(f64),
}

/// Simulation knobs beyond the physical parameter blocks.
#[derive(Clone, Copy, Debug)]
pub struct SimOptions {
    /// Weight between routing cost and time-frequency in link connectivity.
    pub alpha2: f64,
    /// Receiver noise floor for link quality (W).
    pub noise_floor: f64,
    /// Cap on RF energy moved per transmission (J).
    pub rf_transfer_cap: f64,
    /// Ambient temperature at deployment (C).
    pub initial_temperature: f64,
    pub exposure: ExposureMode,
    /// Awake window length bounds as fractions of the collection period.
    pub awake_fraction_min: f64,
    pub awake_fraction_max: f64,
    /// Draw early failures from the per-round failure probability instead
    /// of waiting for the hard temperature limit.
    pub probabilistic_failure: bool,
    /// Scales the neighborhood-mean gain threshold in status evaluation.
    pub gain_threshold_scale: f64,
    /// Lifetime packet budget per node.
    pub packet_cap: u64,
    /// How criterion weights enter the ranking.
    pub weight_mode: WeightMode,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            alpha2: 0.5,
            noise_floor: 1e-9,
            rf_transfer_cap: 1e-3,
            initial_temperature: 20.0,
            exposure: ExposureMode::Random,
            awake_fraction_min: 0.25,
            awake_fraction_max: 1.0,
            probabilistic_failure: false,
            gain_threshold_scale: 1.0,
            packet_cap: 1024,
            weight_mode: WeightMode::Unweighted,
        }
    }
}

/// A complete, validated experiment description.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub network: NetworkConfig,
    pub energy: EnergyParams,
    pub thermal: ThermalParams,
    pub rf: RfTransferParams,
    pub weights: CriteriaWeights,
    pub sink_position: (f64, f64),
    pub initial_energy_sink_neighbors: f64,
    pub initial_energy_others: f64,
    pub options: SimOptions,
}

impl Default for Scenario {
    fn default() -> Self {
        let network = NetworkConfig::default();
        let center = network.area_side / 2.0;
        Scenario {
            network,
            energy: EnergyParams::default(),
            thermal: ThermalParams::default(),
            rf: RfTransferParams::default(),
            weights: CriteriaWeights::uniform(),
            sink_position: (center, center),
            initial_energy_sink_neighbors: 5.0,
            initial_energy_others: 3.0,
            options: SimOptions::default(),
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.network.validate()?;
        self.energy.validate()?;
        self.thermal.validate()?;
        self.rf.validate()?;
        let fields = [
            self.sink_position.0,
            self.sink_position.1,
            self.initial_energy_sink_neighbors,
            self.initial_energy_others,
            self.options.noise_floor,
            self.options.rf_transfer_cap,
            self.options.initial_temperature,
            self.options.gain_threshold_scale,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("scenario parameters must be finite"));
        }
        if self.initial_energy_sink_neighbors <= 0.0 || self.initial_energy_others <= 0.0 {
            return Err(FlocError::config("initial energies must be positive"));
        }
        if !(0.0..=1.0).contains(&self.options.alpha2) {
            return Err(FlocError::config("alpha2 must be in [0, 1]"));
        }
        if self.options.noise_floor <= 0.0 {
            return Err(FlocError::config("noise floor must be positive"));
        }
        if self.options.rf_transfer_cap < 0.0 {
            return Err(FlocError::config("rf transfer cap must be nonnegative"));
        }
        let (lo, hi) = (
            self.options.awake_fraction_min,
            self.options.awake_fraction_max,
        );
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(FlocError::config(
                "awake fractions must satisfy 0 <= min <= max <= 1",
            ));
        }
        if self.options.gain_threshold_scale < 0.0 {
            return Err(FlocError::config(
                "gain threshold scale must be nonnegative",
            ));
        }
        if let ExposureMode::Constant(v) = self.options.exposure {
            if !(0.0..=1.0).contains(&v) {
                return Err(FlocError::config("exposure factor must be in [0, 1]"));
            }
        }
        Ok(())
    }

    /// Deploys the scenario's nodes (positions, exposure, initial energy).
    pub fn deploy(&self) -> Result<Vec<NodeState>> {
        let setup = DeploySetup {
            sink_position: self.sink_position,
            energy_near_sink: self.initial_energy_sink_neighbors,
            energy_other: self.initial_energy_others,
            initial_temperature: self.options.initial_temperature,
        };
        let mut nodes = deploy(&self.network, &setup)?;
        if let ExposureMode::Constant(v) = self.options.exposure {
            let fixed = crate::thermal::SunExposure::new(v)?;
            for node in &mut nodes {
                node.exposure = fixed;
            }
        }
        Ok(nodes)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| FlocError::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    /// Parses the flat `key = value` scenario format. Blank lines are
    /// skipped, `#` starts a comment (whole-line or trailing), and unknown
    /// keys are a hard error.
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut builder = ScenarioBuilder::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let uncommented = raw_line.split('#').next().unwrap_or("");
            let line = uncommented.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| FlocError::ScenarioParse {
                    line: line_no,
                    message: "expected `key = value`".to_string(),
                })?;
            builder.apply(key.trim(), value.trim()).map_err(|message| {
                FlocError::ScenarioParse {
                    line: line_no,
                    message,
                }
            })?;
        }
        let scenario = builder.finish()?;
        scenario.validate()?;
        Ok(scenario)
    }
}

/// Accumulates raw keys before derived defaults are resolved.
#[derive(Default)]
struct ScenarioBuilder {
    scenario: Option<Scenario>,
    rho_set: bool,
    sigma_set: bool,
    d0_set: bool,
    sink_x_set: bool,
    sink_y_set: bool,
    exposure_mode: Option<String>,
    exposure_value: Option<f64>,
}

impl ScenarioBuilder {
    fn scenario(&mut self) -> &mut Scenario {
        self.scenario.get_or_insert_with(Scenario::default)
    }

    fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let parse_f64 = |v: &str| -> std::result::Result<f64, String> {
            v.parse::<f64>()
                .map_err(|_| format!("invalid number {v:?}"))
        };
        let parse_usize = |v: &str| -> std::result::Result<usize, String> {
            v.parse::<usize>()
                .map_err(|_| format!("invalid count {v:?}"))
        };
        let parse_bool = |v: &str| -> std::result::Result<bool, String> {
            match v {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(format!("invalid boolean {v:?}")),
            }
        };

        match key {
            "rho" => self.rho_set = true,
            "sigma" => self.sigma_set = true,
            "d0" | "d0_override" => self.d0_set = true,
            "sink_x" => self.sink_x_set = true,
            "sink_y" => self.sink_y_set = true,
            _ => {}
        }
        let s = self.scenario();
        match key {
            // Network block.
            "area_side" => s.network.area_side = parse_f64(value)?,
            "node_count" => s.network.node_count = parse_usize(value)?,
            "short_range" => s.network.short_range = parse_f64(value)?,
            "long_range" => s.network.long_range = parse_f64(value)?,
            "t_cp" => s.network.collection_period = parse_f64(value)?,
            "rounds" => s.network.rounds = parse_usize(value)?,
            "seed" => {
                s.network.seed = value
                    .parse::<u64>()
                    .map_err(|_| format!("invalid seed {value:?}"))?
            }
            "sink_x" => s.sink_position.0 = parse_f64(value)?,
            "sink_y" => s.sink_position.1 = parse_f64(value)?,
            "initial_energy_sink_neighbors" => s.initial_energy_sink_neighbors = parse_f64(value)?,
            "initial_energy_others" => s.initial_energy_others = parse_f64(value)?,

            // Radio energy block.
            "e_elec" => s.energy.e_elec = parse_f64(value)?,
            "eps_fs" => s.energy.eps_fs = parse_f64(value)?,
            "eps_mp" => s.energy.eps_mp = parse_f64(value)?,
            "d0" | "d0_override" => s.energy.d_0 = parse_f64(value)?,
            "r_cc" => s.energy.r_cc = parse_f64(value)?,
            "r_compression" => s.energy.r_compression = parse_f64(value)?,
            "packet_bits" => s.energy.packet_bits = parse_f64(value)?,
            "packet_count" => {
                s.options.packet_cap = value
                    .parse::<u64>()
                    .map_err(|_| format!("invalid count {value:?}"))?
            }
            "ch_forwarding_interpretation" => {
                s.energy.forwarding = match value {
                    "literal" => ForwardingInterpretation::Literal,
                    "per_cluster" => ForwardingInterpretation::PerCluster,
                    _ => return Err(format!("expected literal|per_cluster, got {value:?}")),
                }
            }

            // Thermal block.
            "s_max" => s.thermal.s_max = parse_f64(value)?,
            "rho" => s.thermal.rho = parse_f64(value)?,
            "sigma" => s.thermal.sigma = parse_f64(value)?,
            "area_sen" => s.thermal.area_sen = parse_f64(value)?,
            "eta" => s.thermal.eta = parse_f64(value)?,
            "c_p" => s.thermal.c_p = parse_f64(value)?,
            "mass" => s.thermal.mass = parse_f64(value)?,
            "t_high" => s.thermal.t_high = parse_f64(value)?,
            "initial_temperature" => s.options.initial_temperature = parse_f64(value)?,
            "exposure_mode" => self.exposure_mode = Some(value.to_string()),
            "exposure_value" => self.exposure_value = Some(parse_f64(value)?),

            // RF transfer and link block. `n_p` is the path-loss exponent's
            // tabulated alias.
            "eta1" => s.rf.eta1 = parse_f64(value)?,
            "mu" => s.rf.mu = parse_f64(value)?,
            "beta1" => s.rf.beta1 = parse_f64(value)?,
            "alpha1" | "n_p" => s.rf.alpha1 = parse_f64(value)?,
            "signal_power" => s.rf.signal_power = parse_f64(value)?,
            "noise_floor" => s.options.noise_floor = parse_f64(value)?,
            "rf_transfer_cap" => s.options.rf_transfer_cap = parse_f64(value)?,
            "alpha2" => s.options.alpha2 = parse_f64(value)?,

            // Decision block.
            "weights" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != hflts::CRITERIA_COUNT {
                    return Err(format!(
                        "expected {} comma-separated weights",
                        hflts::CRITERIA_COUNT
                    ));
                }
                let mut weights = [0.0; hflts::CRITERIA_COUNT];
                for (slot, part) in weights.iter_mut().zip(parts) {
                    *slot = parse_f64(part)?;
                }
                s.weights = CriteriaWeights::new(weights).map_err(|e| e.to_string())?;
            }
            "weight_mode" => {
                s.options.weight_mode = match value {
                    "pseudo_code" | "unweighted" => WeightMode::Unweighted,
                    "weighted" => WeightMode::Weighted,
                    _ => {
                        return Err(format!(
                            "expected pseudo_code|unweighted|weighted, got {value:?}"
                        ))
                    }
                }
            }
            "awake_min" => s.options.awake_fraction_min = parse_f64(value)?,
            "awake_max" => s.options.awake_fraction_max = parse_f64(value)?,
            "probabilistic_failure" => s.options.probabilistic_failure = parse_bool(value)?,
            "gain_threshold_scale" => s.options.gain_threshold_scale = parse_f64(value)?,

            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Scenario> {
        let rho_set = self.rho_set;
        let sigma_set = self.sigma_set;
        let d0_set = self.d0_set;
        let sink_x_set = self.sink_x_set;
        let sink_y_set = self.sink_y_set;
        let exposure_mode = self.exposure_mode.take();
        let exposure_value = self.exposure_value;
        let mut scenario = self.scenario.take().unwrap_or_default();

        // Derived defaults: the sink sits at the area center unless pinned,
        // the solar peak sits mid-run, the spread covers a third of the
        // half-day, and the amplifier crossover follows the coefficients
        // unless overridden.
        if !sink_x_set {
            scenario.sink_position.0 = scenario.network.area_side / 2.0;
        }
        if !sink_y_set {
            scenario.sink_position.1 = scenario.network.area_side / 2.0;
        }
        if !rho_set {
            scenario.thermal.rho =
                scenario.network.rounds as f64 * scenario.network.collection_period / 2.0;
            if scenario.thermal.rho <= 0.0 {
                scenario.thermal.rho = ThermalParams::default().rho;
            }
        }
        if !sigma_set {
            scenario.thermal.sigma = scenario.thermal.rho / 3.0;
        }
        if !d0_set {
            scenario.energy.d_0 =
                EnergyParams::derived_d0(scenario.energy.eps_fs, scenario.energy.eps_mp);
        }
        match exposure_mode.as_deref() {
            None => {
                if let Some(v) = exposure_value {
                    scenario.options.exposure = ExposureMode::Constant(v);
                }
            }
            Some("random") => scenario.options.exposure = ExposureMode::Random,
            Some("constant") => {
                scenario.options.exposure = ExposureMode::Constant(exposure_value.unwrap_or(1.0));
            }
            Some(other) => {
                return Err(FlocError::config(format!(
                    "exposure_mode must be random|constant, got {other:?}"
                )))
            }
        }
        Ok(scenario)
    }
}
