//! Network domain model: scenario geometry, node state, seeded uniform
//! deployment, and range-limited neighbor discovery.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{FlocError, Result};
use crate::thermal::SunExposure;

/// Node roles are the decision engine's alternatives.
pub type Role = hflts::Alternative;

/// Sentinel id for the sink in graphs and routes.
pub const SINK_ID: usize = usize::MAX;

/// Exposure factors are drawn uniformly from this band at deployment,
/// modeling shade versus direct sunlight.
pub const EXPOSURE_MIN: f64 = 0.5;
pub const EXPOSURE_MAX: f64 = 1.0;

/// Geometry, radio ranges, and run shape.
#[derive(Clone, Copy, Debug)]
pub struct NetworkConfig {
    /// Side of the square deployment area (m).
    pub area_side: f64,
    /// Number of sensor nodes.
    pub node_count: usize,
    /// Short radio range used for sensing and data links (m).
    pub short_range: f64,
    /// Long radio range reserved for sink collection tagging (m).
    pub long_range: f64,
    /// Data collection period, one round (s).
    pub collection_period: f64,
    /// Number of rounds to simulate.
    pub rounds: usize,
    /// Seed for deployment and per-round draws.
    pub seed: u64,
}

impl NetworkConfig {
    /// Node density over the deployment area (nodes per m^2).
    pub fn node_density(&self) -> f64 {
        self.node_count as f64 / (self.area_side * self.area_side)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.area_side,
            self.short_range,
            self.long_range,
            self.collection_period,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("network parameters must be finite"));
        }
        if self.area_side <= 0.0 {
            return Err(FlocError::config("deployment area side must be positive"));
        }
        if self.node_count == 0 {
            return Err(FlocError::config("node count must be positive"));
        }
        if self.short_range <= 0.0 {
            return Err(FlocError::config("short radio range must be positive"));
        }
        if self.long_range < self.short_range {
            return Err(FlocError::config(
                "long radio range must be at least the short range",
            ));
        }
        if self.collection_period <= 0.0 {
            return Err(FlocError::config("collection period must be positive"));
        }
        Ok(())
    }
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            area_side: 500.0,
            node_count: 80,
            short_range: 200.0,
            long_range: 400.0,
            collection_period: 60.0,
            rounds: 500,
            seed: 1,
        }
    }
}

/// Sleep/awake schedule within one collection period.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ScheduleState {
    /// Start of the awake window within the period (s).
    pub window_start: f64,
    /// Awake time within the period (s).
    pub working_time: f64,
    /// Sleep/awake transitions this period.
    pub transition_count: u32,
    /// Transition budget per period.
    pub max_transition_count: u32,
}

impl ScheduleState {
    pub fn asleep() -> Self {
        ScheduleState {
            window_start: 0.0,
            working_time: 0.0,
            transition_count: 0,
            max_transition_count: 2,
        }
    }

    pub fn window_end(&self) -> f64 {
        self.window_start + self.working_time
    }

    /// True when the two awake windows share a positive-length overlap.
    pub fn overlaps(&self, other: &ScheduleState) -> bool {
        self.window_start.max(other.window_start) < self.window_end().min(other.window_end())
    }
}

/// Per-node simulation state.
#[derive(Clone, Debug)]
pub struct NodeState {
    pub id: usize,
    pub position: (f64, f64),
    /// Remaining battery energy (J).
    pub battery: f64,
    /// Ambient temperature (C).
    pub temperature: f64,
    /// Fixed sun-exposure factor drawn at deployment.
    pub exposure: SunExposure,
    /// Role for the current round; `None` while dead or undecided.
    pub role: Option<Role>,
    pub alive: bool,
    pub awake: bool,
    pub schedule: ScheduleState,
    /// Lifetime packets generated, bounded by the scenario packet cap.
    pub packets_generated: u64,
}

/// Euclidean distance between two positions.
pub fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

/// Deployment inputs beyond the network geometry.
#[derive(Clone, Copy, Debug)]
pub struct DeploySetup {
    pub sink_position: (f64, f64),
    /// Initial battery for nodes within the short range of the sink (J).
    pub energy_near_sink: f64,
    /// Initial battery for all other nodes (J).
    pub energy_other: f64,
    /// Starting ambient temperature (C).
    pub initial_temperature: f64,
}

/// Deploys nodes i.i.d. uniformly over the square.
///
/// A pure function of `(config, setup)`: positions and exposure factors are
/// drawn from a generator seeded with `config.seed`, so repeated calls
/// produce identical node lists. Nodes within the short range of the sink
/// start with the higher initial energy.
pub fn deploy(config: &NetworkConfig, setup: &DeploySetup) -> Result<Vec<NodeState>> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut positions = Vec::with_capacity(config.node_count);
    for _ in 0..config.node_count {
        let x: f64 = rng.random_range(0.0..config.area_side);
        let y: f64 = rng.random_range(0.0..config.area_side);
        positions.push((x, y));
    }
    let mut nodes = Vec::with_capacity(config.node_count);
    for (id, position) in positions.into_iter().enumerate() {
        let exposure = SunExposure::new(rng.random_range(EXPOSURE_MIN..=EXPOSURE_MAX))?;
        let near_sink = distance(position, setup.sink_position) <= config.short_range;
        nodes.push(NodeState {
            id,
            position,
            battery: if near_sink {
                setup.energy_near_sink
            } else {
                setup.energy_other
            },
            temperature: setup.initial_temperature,
            exposure,
            role: None,
            alive: true,
            awake: false,
            schedule: ScheduleState::asleep(),
            packets_generated: 0,
        });
    }
    Ok(nodes)
}

/// Ids of alive nodes within `range` of `node`, excluding the node itself.
/// The boundary is inclusive and the result is sorted by id.
pub fn neighbors(node: &NodeState, all: &[NodeState], range: f64) -> Vec<usize> {
    let mut ids: Vec<usize> = all
        .iter()
        .filter(|other| {
            other.id != node.id && other.alive && distance(node.position, other.position) <= range
        })
        .map(|other| other.id)
        .collect();
    ids.sort_unstable();
    ids
}
