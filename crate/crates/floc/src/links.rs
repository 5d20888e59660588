//! Opportunistic links: RF energy transfer, gain degree, routing cost,
//! time-frequency coupling, link connectivity, the opportunistic connection
//! graph, min-cost routing, and the hop/link-quality criteria.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::error::{FlocError, Result};
use crate::network::{distance, ScheduleState};

/// RF power-transfer constants.
#[derive(Clone, Copy, Debug)]
pub struct RfTransferParams {
    /// Energy conversion efficiency in (0, 1).
    pub eta1: f64,
    /// Power-splitting ratio between energy and data in (0, 1).
    pub mu: f64,
    /// Propagation constant of the environment.
    pub beta1: f64,
    /// Path-loss exponent, at least 2.
    pub alpha1: f64,
    /// Per-node transmit signal power (W).
    pub signal_power: f64,
}

impl RfTransferParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.eta1,
            self.mu,
            self.beta1,
            self.alpha1,
            self.signal_power,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("rf transfer parameters must be finite"));
        }
        if !(self.eta1 > 0.0 && self.eta1 < 1.0) {
            return Err(FlocError::config("conversion efficiency must be in (0, 1)"));
        }
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(FlocError::config("power-splitting ratio must be in (0, 1)"));
        }
        if self.beta1 <= 0.0 {
            return Err(FlocError::config("propagation constant must be positive"));
        }
        if self.alpha1 < 2.0 {
            return Err(FlocError::config("path-loss exponent must be at least 2"));
        }
        if self.signal_power <= 0.0 {
            return Err(FlocError::config("signal power must be positive"));
        }
        Ok(())
    }
}

impl Default for RfTransferParams {
    fn default() -> Self {
        RfTransferParams {
            eta1: 0.7,
            mu: 0.5,
            beta1: 1.0,
            alpha1: 2.0,
            signal_power: 0.1,
        }
    }
}

/// Energy available at a node: harvested gain plus remaining battery.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct NodeEnergyAccount {
    pub gained: f64,
    pub battery: f64,
}

impl NodeEnergyAccount {
    pub fn total(&self) -> f64 {
        self.gained + self.battery
    }
}

/// Energy one node can transfer to a neighbor at `d` meters: the split
/// signal power through the squared channel gain `(beta1 * d^-alpha1)^2`.
pub fn energy_transfer(d: f64, p: &RfTransferParams) -> Result<f64> {
    if d <= 0.0 {
        return Err(FlocError::domain(format!(
            "transfer distance {d} not positive (singular channel gain)"
        )));
    }
    let gain = p.beta1 * d.powf(-p.alpha1);
    Ok(p.eta1 * p.mu * p.signal_power * gain * gain)
}

/// Total energy a node can harvest from its awake neighbors at the given
/// distances; an empty neighborhood yields 0.
pub fn gain_degree(neighbor_distances: &[f64], p: &RfTransferParams) -> Result<f64> {
    let mut total = 0.0;
    for d in neighbor_distances {
        total += energy_transfer(*d, p)?;
    }
    Ok(total)
}

/// Cost of moving data over a link: the link's transmission energy divided
/// by the endpoints' combined available energy. A zero denominator marks
/// the link unusable (infinite cost).
pub fn data_routing_cost(link_energy: f64, total_i: f64, total_j: f64) -> f64 {
    let denominator = total_i + total_j;
    if denominator > 0.0 {
        link_energy / denominator
    } else {
        f64::INFINITY
    }
}

/// Time-frequency coupling of two schedules: the product of each side's
/// transition ratio times awake fraction.
pub fn time_frequency(a: &ScheduleState, b: &ScheduleState, collection_period: f64) -> Result<f64> {
    Ok(schedule_factor(a, collection_period)? * schedule_factor(b, collection_period)?)
}

/// Sink variant: the sink is always awake, so only the node's own factor
/// remains.
pub fn time_frequency_to_sink(a: &ScheduleState, collection_period: f64) -> Result<f64> {
    schedule_factor(a, collection_period)
}

fn schedule_factor(s: &ScheduleState, collection_period: f64) -> Result<f64> {
    if s.max_transition_count == 0 {
        return Err(FlocError::domain("transition budget must be positive"));
    }
    if collection_period <= 0.0 {
        return Err(FlocError::domain("collection period must be positive"));
    }
    let transitions = f64::from(s.transition_count) / f64::from(s.max_transition_count);
    Ok(transitions * (s.working_time / collection_period))
}

/// Affine blend of routing cost and time-frequency coupling.
pub fn link_connectivity(dr_cost: f64, tf: f64, alpha2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha2) {
        return Err(FlocError::config(format!(
            "connectivity weight {alpha2} outside [0, 1]"
        )));
    }
    Ok(alpha2 * dr_cost + (1.0 - alpha2) * tf)
}

/// Raw expected hop count from a position to the sink: the ceiling of the
/// distance in short-range units, at least 1.
pub fn expected_optimal_hops(position: (f64, f64), sink: (f64, f64), short_range: f64) -> f64 {
    (distance(position, sink) / short_range).ceil().max(1.0)
}

/// Raw link quality: mean signal-to-noise ratio over the neighbor
/// distances, 0 for an isolated node.
pub fn link_quality(
    neighbor_distances: &[f64],
    rf: &RfTransferParams,
    noise_floor: f64,
) -> Result<f64> {
    if noise_floor <= 0.0 {
        return Err(FlocError::config("noise floor must be positive"));
    }
    if neighbor_distances.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for d in neighbor_distances {
        if *d <= 0.0 {
            return Err(FlocError::domain(format!(
                "neighbor distance {d} not positive"
            )));
        }
        let gain = rf.beta1 * d.powf(-rf.alpha1);
        total += rf.signal_power * gain * gain / noise_floor;
    }
    Ok(total / neighbor_distances.len() as f64)
}

/// Attributes of one opportunistic link.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct LinkInfo {
    pub distance: f64,
    /// Transmission energy of one packet over this link (J).
    pub tx_energy: f64,
    /// Data routing cost; may be infinite for unusable links.
    pub routing_cost: f64,
    pub time_frequency: f64,
    pub connectivity: f64,
}

/// Undirected graph of opportunistic connections, including the sink.
#[derive(Clone, Debug, Default)]
pub struct OpportunisticGraph {
    adjacency: BTreeMap<usize, BTreeMap<usize, LinkInfo>>,
}

impl OpportunisticGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_node(&mut self, id: usize) {
        self.adjacency.entry(id).or_default();
    }

    pub fn insert_link(&mut self, a: usize, b: usize, info: LinkInfo) {
        self.adjacency.entry(a).or_default().insert(b, info);
        self.adjacency.entry(b).or_default().insert(a, info);
    }

    pub fn contains(&self, id: usize) -> bool {
        self.adjacency.contains_key(&id)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn link(&self, a: usize, b: usize) -> Option<&LinkInfo> {
        self.adjacency.get(&a).and_then(|m| m.get(&b))
    }

    pub fn neighbors_of(&self, id: usize) -> impl Iterator<Item = (usize, &LinkInfo)> + '_ {
        self.adjacency
            .get(&id)
            .into_iter()
            .flat_map(|m| m.iter().map(|(k, v)| (*k, v)))
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency.get(&id).map_or(0, |m| m.len())
    }

    pub fn link_count(&self) -> usize {
        self.adjacency.values().map(|m| m.len()).sum::<usize>() / 2
    }

    /// Mean link connectivity over a node's incident links, 0 if isolated.
    pub fn mean_connectivity(&self, id: usize) -> f64 {
        let Some(edges) = self.adjacency.get(&id) else {
            return 0.0;
        };
        if edges.is_empty() {
            return 0.0;
        }
        edges.values().map(|l| l.connectivity).sum::<f64>() / edges.len() as f64
    }

    /// The graph restricted to nodes allowed by `keep`.
    pub fn restricted(&self, keep: impl Fn(usize) -> bool) -> OpportunisticGraph {
        let mut out = OpportunisticGraph::new();
        for (id, edges) in &self.adjacency {
            if !keep(*id) {
                continue;
            }
            out.insert_node(*id);
            for (other, info) in edges {
                if keep(*other) {
                    out.adjacency.entry(*id).or_default().insert(*other, *info);
                }
            }
        }
        out
    }
}

/// A routing result: the visited node sequence (endpoints included) and the
/// summed routing cost. The degenerate route from a node to itself has an
/// empty path and zero cost.
#[derive(Clone, PartialEq, Debug)]
pub struct Route {
    pub path: Vec<usize>,
    pub cost: f64,
}

/// Least-total-cost path between two graph nodes over usable links.
///
/// Deterministic: the frontier pops by `(cost, id)`, so equal-cost
/// alternatives resolve toward lower ids. Returns `None` when `dst` is
/// unreachable.
pub fn min_cost_route(graph: &OpportunisticGraph, src: usize, dst: usize) -> Option<Route> {
    if !graph.contains(src) || !graph.contains(dst) {
        return None;
    }
    if src == dst {
        return Some(Route {
            path: Vec::new(),
            cost: 0.0,
        });
    }

    #[derive(PartialEq)]
    struct Entry {
        cost: f64,
        id: usize,
    }
    impl Eq for Entry {}
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            // Reversed for a min-heap; ties pop the lower id first.
            other
                .cost
                .total_cmp(&self.cost)
                .then_with(|| other.id.cmp(&self.id))
        }
    }
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }

    let mut best: BTreeMap<usize, f64> = BTreeMap::new();
    let mut predecessor: BTreeMap<usize, usize> = BTreeMap::new();
    let mut settled: BTreeSet<usize> = BTreeSet::new();
    let mut heap = BinaryHeap::new();
    best.insert(src, 0.0);
    heap.push(Entry { cost: 0.0, id: src });

    while let Some(Entry { cost, id }) = heap.pop() {
        if settled.contains(&id) {
            continue;
        }
        settled.insert(id);
        if id == dst {
            break;
        }
        for (next, info) in graph.neighbors_of(id) {
            if settled.contains(&next) || !info.routing_cost.is_finite() {
                continue;
            }
            let candidate = cost + info.routing_cost;
            let improves = match best.get(&next) {
                Some(current) => {
                    candidate < *current || (candidate == *current && id < predecessor[&next])
                }
                None => true,
            };
            if improves {
                best.insert(next, candidate);
                predecessor.insert(next, id);
                heap.push(Entry {
                    cost: candidate,
                    id: next,
                });
            }
        }
    }

    let total = *best.get(&dst)?;
    if !settled.contains(&dst) {
        return None;
    }
    let mut path = vec![dst];
    let mut cursor = dst;
    while cursor != src {
        cursor = predecessor[&cursor];
        path.push(cursor);
    }
    path.reverse();
    Some(Route { path, cost: total })
}

/// Shortest-path tree toward `root`: next hop on the min-cost route for
/// every node that can reach it. This is the spanning routing structure
/// used to funnel traffic to the sink.
pub fn spanning_tree_to(graph: &OpportunisticGraph, root: usize) -> BTreeMap<usize, usize> {
    let mut next_hop = BTreeMap::new();
    for id in graph.node_ids() {
        if id == root {
            continue;
        }
        if let Some(route) = min_cost_route(graph, id, root) {
            if route.path.len() >= 2 {
                next_hop.insert(id, route.path[1]);
            }
        }
    }
    next_hop
}
