use crate::expression::{Alternative, ALTERNATIVES};
use crate::interval::{aggregate_intervals, possibility_rank, AggregationMode, NumericInterval};
use crate::matrix::ExpressionMatrix;
use crate::HfltsError;

/// Number of decision criteria.
pub const CRITERIA_COUNT: usize = 6;

/// Human-readable criterion names, in column order.
pub const CRITERIA_NAMES: [&str; CRITERIA_COUNT] = [
    "gain_degree",
    "energy_welfare",
    "thermal_entropy",
    "link_connectivity",
    "expected_hop",
    "link_quality",
];

/// Normalized per-node criterion values, each in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CriteriaVector {
    pub gain_degree: f64,
    pub energy_welfare: f64,
    pub thermal_entropy: f64,
    pub link_connectivity: f64,
    pub expected_hop: f64,
    pub link_quality: f64,
}

impl CriteriaVector {
    pub fn new(values: [f64; CRITERIA_COUNT]) -> Result<Self, HfltsError> {
        for v in values {
            // Tolerate last-ulp drift from upstream normalization.
            if !(-1e-9..=1.0 + 1e-9).contains(&v) {
                return Err(HfltsError::ValueOutOfRange(v));
            }
        }
        let c = |v: f64| v.clamp(0.0, 1.0);
        Ok(CriteriaVector {
            gain_degree: c(values[0]),
            energy_welfare: c(values[1]),
            thermal_entropy: c(values[2]),
            link_connectivity: c(values[3]),
            expected_hop: c(values[4]),
            link_quality: c(values[5]),
        })
    }

    pub fn as_array(&self) -> [f64; CRITERIA_COUNT] {
        [
            self.gain_degree,
            self.energy_welfare,
            self.thermal_entropy,
            self.link_connectivity,
            self.expected_hop,
            self.link_quality,
        ]
    }
}

/// Nonnegative criterion weights summing to 1.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CriteriaWeights([f64; CRITERIA_COUNT]);

impl CriteriaWeights {
    pub fn new(weights: [f64; CRITERIA_COUNT]) -> Result<Self, HfltsError> {
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| *w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(HfltsError::BadWeights(sum));
        }
        Ok(CriteriaWeights(weights))
    }

    pub fn uniform() -> Self {
        CriteriaWeights([1.0 / CRITERIA_COUNT as f64; CRITERIA_COUNT])
    }

    pub fn as_array(&self) -> [f64; CRITERIA_COUNT] {
        self.0
    }
}

impl Default for CriteriaWeights {
    fn default() -> Self {
        Self::uniform()
    }
}

/// Min/max bounds per criterion over a node population, used by
/// [`standardize`].
#[derive(Clone, Copy, Debug)]
pub struct CriteriaBounds {
    pub min: [f64; CRITERIA_COUNT],
    pub max: [f64; CRITERIA_COUNT],
}

impl CriteriaBounds {
    /// Collects bounds from raw criterion rows. Returns `None` for an empty
    /// population.
    pub fn from_rows<'a, I>(rows: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a [f64; CRITERIA_COUNT]>,
    {
        let mut bounds: Option<CriteriaBounds> = None;
        for row in rows {
            let b = bounds.get_or_insert(CriteriaBounds {
                min: *row,
                max: *row,
            });
            for (j, value) in row.iter().enumerate() {
                b.min[j] = b.min[j].min(*value);
                b.max[j] = b.max[j].max(*value);
            }
        }
        bounds
    }
}

/// Min-max scaling of one value against population bounds; a constant
/// population maps to 0.5.
pub fn min_max_scale(value: f64, min: f64, max: f64) -> f64 {
    if max > min {
        ((value - min) / (max - min)).clamp(0.0, 1.0)
    } else {
        0.5
    }
}

/// Scales a raw criterion row into a [`CriteriaVector`] using population
/// bounds.
pub fn standardize(raw: &[f64; CRITERIA_COUNT], bounds: &CriteriaBounds) -> CriteriaVector {
    let mut values = [0.0; CRITERIA_COUNT];
    for (j, value) in values.iter_mut().enumerate() {
        *value = min_max_scale(raw[j], bounds.min[j], bounds.max[j]);
    }
    CriteriaVector::new(values).expect("min-max scaling stays in [0, 1]")
}

/// Node state evaluation driving the aggregation mode.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Optimistic,
    Pessimistic,
}

impl Status {
    pub fn aggregation_mode(self) -> AggregationMode {
        match self {
            Status::Optimistic => AggregationMode::Optimistic,
            Status::Pessimistic => AggregationMode::Pessimistic,
        }
    }
}

/// Thresholds for [`evaluate_status`].
#[derive(Clone, Copy, Debug)]
pub struct StatusThresholds {
    /// Gain-degree threshold, typically the closed-neighborhood mean.
    pub gain_threshold: f64,
    /// Half of the population's maximum energy welfare.
    pub energy_welfare_half_max: f64,
}

/// Classifies a node as optimistic when both its gain degree and energy
/// welfare reach their thresholds, pessimistic otherwise.
///
/// Boundary values count as reaching the threshold; mixed outcomes resolve
/// to pessimistic.
pub fn evaluate_status(
    gain_degree: f64,
    energy_welfare: f64,
    thresholds: &StatusThresholds,
) -> Status {
    if gain_degree >= thresholds.gain_threshold
        && energy_welfare >= thresholds.energy_welfare_half_max
    {
        Status::Optimistic
    } else {
        Status::Pessimistic
    }
}

/// How criterion weights enter the ranking.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WeightMode {
    /// Component-wise interval aggregation; weights unused.
    #[default]
    Unweighted,
    /// Weighted mean of per-criterion possibility ranks.
    Weighted,
}

/// Outcome of a role decision.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Decision {
    /// Possibility rank per alternative, in [`ALTERNATIVES`] order.
    pub ranks: [f64; 3],
    /// Argmax alternative; ties break toward the earlier alternative.
    pub role: Alternative,
}

/// The complete role-decision pipeline.
#[derive(Clone, Copy, Debug, Default)]
pub struct DecisionEngine {
    pub weights: CriteriaWeights,
    pub weight_mode: WeightMode,
}

impl DecisionEngine {
    pub fn new(weights: CriteriaWeights, weight_mode: WeightMode) -> Self {
        DecisionEngine {
            weights,
            weight_mode,
        }
    }

    /// Decides a role from measured criteria: builds the expression matrix,
    /// expands it, and ranks the alternatives under the status's
    /// aggregation mode.
    pub fn decide(&self, criteria: &CriteriaVector, status: Status) -> Decision {
        let matrix = ExpressionMatrix::from_criteria(criteria);
        self.decide_with_matrix(&matrix, status)
            .expect("matrices built from criteria always transform")
    }

    /// Decides a role from an explicit expression matrix.
    pub fn decide_with_matrix(
        &self,
        matrix: &ExpressionMatrix,
        status: Status,
    ) -> Result<Decision, HfltsError> {
        let envelopes = matrix.transform()?.envelopes();
        let mode = status.aggregation_mode();
        let mut ranks = [0.0; 3];
        for alt in ALTERNATIVES {
            let cuts: Vec<NumericInterval> =
                envelopes.row(alt).iter().map(|iv| iv.one_cut()).collect();
            ranks[alt.index()] = match self.weight_mode {
                WeightMode::Unweighted => possibility_rank(aggregate_intervals(&cuts, mode)),
                WeightMode::Weighted => {
                    let w = self.weights.as_array();
                    cuts.iter()
                        .zip(w.iter())
                        .map(|(cut, weight)| weight * possibility_rank(*cut))
                        .sum()
                }
            };
        }
        let mut best = Alternative::ClusterHead;
        for alt in ALTERNATIVES {
            if ranks[alt.index()] > ranks[best.index()] {
                best = alt;
            }
        }
        Ok(Decision { ranks, role: best })
    }
}
