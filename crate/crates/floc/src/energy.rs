//! First-order radio energy model: transmit, receive, sense, and the
//! per-round costs of cluster members and cluster heads.

use crate::error::{FlocError, Result};

/// How the cluster-head forwarding multiplier is read.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ForwardingInterpretation {
    /// `total_nodes / compression_ratio`, exactly as written.
    #[default]
    Literal,
    /// `cluster_size / compression_ratio`, avoiding the double count of
    /// forwarding volume across cluster heads.
    PerCluster,
}

/// Radio energy constants.
#[derive(Clone, Copy, Debug)]
pub struct EnergyParams {
    /// Electronics energy per bit (J/bit).
    pub e_elec: f64,
    /// Free-space amplifier coefficient (J/bit/m^2).
    pub eps_fs: f64,
    /// Multi-path amplifier coefficient (J/bit/m^4).
    pub eps_mp: f64,
    /// Crossover distance between the amplifier regimes (m).
    pub d_0: f64,
    /// Communication-to-computation ratio; aggregation costs
    /// `e_elec / r_cc` per bit.
    pub r_cc: f64,
    /// Compression ratio in (0, 1].
    pub r_compression: f64,
    /// Payload size per packet (bits).
    pub packet_bits: f64,
    /// Forwarding-multiplier reading for cluster heads.
    pub forwarding: ForwardingInterpretation,
}

impl EnergyParams {
    /// Crossover distance implied by the amplifier coefficients.
    pub fn derived_d0(eps_fs: f64, eps_mp: f64) -> f64 {
        (eps_fs / eps_mp).sqrt()
    }

    /// Aggregation energy per bit.
    pub fn aggregation_energy(&self) -> f64 {
        self.e_elec / self.r_cc
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.e_elec,
            self.eps_fs,
            self.eps_mp,
            self.d_0,
            self.r_cc,
            self.r_compression,
            self.packet_bits,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("radio parameters must be finite"));
        }
        if self.e_elec <= 0.0 || self.eps_fs <= 0.0 || self.eps_mp <= 0.0 {
            return Err(FlocError::config("radio coefficients must be positive"));
        }
        if self.d_0 <= 0.0 {
            return Err(FlocError::config("crossover distance must be positive"));
        }
        if self.r_cc <= 0.0 {
            return Err(FlocError::config(
                "communication-to-computation ratio must be positive",
            ));
        }
        if !(self.r_compression > 0.0 && self.r_compression <= 1.0) {
            return Err(FlocError::config("compression ratio must be in (0, 1]"));
        }
        if self.packet_bits <= 0.0 {
            return Err(FlocError::config("packet size must be positive"));
        }
        Ok(())
    }
}

impl Default for EnergyParams {
    fn default() -> Self {
        let eps_fs = 50e-9;
        let eps_mp = 10e-12;
        EnergyParams {
            e_elec: 50e-9,
            eps_fs,
            eps_mp,
            d_0: Self::derived_d0(eps_fs, eps_mp),
            r_cc: 100.0,
            r_compression: 0.25,
            packet_bits: 8000.0,
            forwarding: ForwardingInterpretation::Literal,
        }
    }
}

/// Cluster shape feeding the cluster-head cost.
#[derive(Clone, Copy, Debug)]
pub struct ClusterEnergyContext {
    /// Nodes in the network.
    pub total_nodes: usize,
    /// Clusters in the network.
    pub cluster_count: usize,
    /// Working nodes in this cluster, head included.
    pub cluster_size: f64,
}

impl ClusterEnergyContext {
    /// Balanced clusters: every cluster holds `total / clusters` nodes.
    pub fn balanced(total_nodes: usize, cluster_count: usize) -> Result<Self> {
        if cluster_count == 0 || cluster_count > total_nodes {
            return Err(FlocError::domain(format!(
                "cluster count {cluster_count} outside 1..={total_nodes}"
            )));
        }
        Ok(ClusterEnergyContext {
            total_nodes,
            cluster_count,
            cluster_size: total_nodes as f64 / cluster_count as f64,
        })
    }

    /// A cluster with an explicit member count (head excluded).
    pub fn with_members(total_nodes: usize, cluster_count: usize, members: usize) -> Result<Self> {
        if cluster_count == 0 {
            return Err(FlocError::domain("cluster count must be positive"));
        }
        Ok(ClusterEnergyContext {
            total_nodes,
            cluster_count,
            cluster_size: members as f64 + 1.0,
        })
    }
}

fn check_nonnegative(bits: f64, distance: f64) -> Result<()> {
    if bits <= 0.0 {
        return Err(FlocError::domain(format!(
            "packet size {bits} not positive"
        )));
    }
    if distance < 0.0 {
        return Err(FlocError::domain(format!("distance {distance} negative")));
    }
    Ok(())
}

/// Energy to transmit `bits` over `distance`: electronics plus the
/// free-space amplifier below the crossover distance, the multi-path
/// amplifier at or above it.
pub fn tx_energy(bits: f64, distance: f64, p: &EnergyParams) -> Result<f64> {
    check_nonnegative(bits, distance)?;
    let electronics = p.e_elec * bits;
    let dd = distance * distance;
    if distance < p.d_0 {
        Ok(electronics + p.eps_fs * bits * dd)
    } else {
        Ok(electronics + p.eps_mp * bits * dd * dd)
    }
}

/// Energy to receive `bits`: electronics only.
pub fn rx_energy(bits: f64, p: &EnergyParams) -> Result<f64> {
    check_nonnegative(bits, 0.0)?;
    Ok(p.e_elec * bits)
}

/// Energy to sense `bits`; identical to the receive electronics cost.
pub fn sense_energy(bits: f64, p: &EnergyParams) -> Result<f64> {
    rx_energy(bits, p)
}

/// Per-round energy of a cluster member: sense once, transmit once to its
/// head.
pub fn cm_round_energy(bits: f64, distance_to_head: f64, p: &EnergyParams) -> Result<f64> {
    Ok(sense_energy(bits, p)? + tx_energy(bits, distance_to_head, p)?)
}

/// Per-round energy of a cluster head: sense, receive from each member,
/// aggregate the cluster's data, and forward the compressed volume with the
/// multi-path amplifier toward the next hop.
pub fn ch_round_energy(
    ctx: &ClusterEnergyContext,
    bits: f64,
    distance_to_next: f64,
    p: &EnergyParams,
) -> Result<f64> {
    check_nonnegative(bits, distance_to_next)?;
    if ctx.cluster_count == 0 {
        return Err(FlocError::domain("cluster count must be positive"));
    }
    let sense = p.e_elec * bits;
    let receive = (ctx.cluster_size - 1.0) * p.e_elec * bits;
    let aggregate = ctx.cluster_size * bits * p.aggregation_energy();
    let forward_count = match p.forwarding {
        ForwardingInterpretation::Literal => ctx.total_nodes as f64 / p.r_compression,
        ForwardingInterpretation::PerCluster => ctx.cluster_size / p.r_compression,
    };
    let d2 = distance_to_next * distance_to_next;
    let forward = forward_count * p.e_elec * bits + forward_count * p.eps_mp * bits * d2 * d2;
    Ok(sense + receive + aggregate + forward)
}
