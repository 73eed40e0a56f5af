//! Shared vocabulary types for instances, states, and actions.
//!
//! Stations and vehicles are dense `usize` indices. Time is real-valued
//! minutes from the start of the planning horizon (7:00 maps to 0.0).

pub mod io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;

/// Planning horizon in minutes (7:00–11:00).
pub const HORIZON_MINUTES: f64 = 240.0;

/// Static description of a station network and its rebalancing fleet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkInstance {
    /// Dock count per station.
    pub capacities: Vec<u32>,
    /// Station-to-station distances in kilometers, zero diagonal.
    pub distances: Matrix<f64>,
    /// Station-to-station vehicle transit times in minutes.
    pub transit_times: Matrix<f64>,
    /// Carrying capacity per rebalancing vehicle.
    pub vehicle_capacities: Vec<u32>,
    /// Minutes to load or unload one bike.
    pub handling_minutes: f64,
    /// Bikes docked at each station at the start of the horizon.
    pub initial_station_inventory: Vec<u32>,
    /// Bikes on board each vehicle at the start of the horizon.
    pub initial_vehicle_inventory: Vec<u32>,
    /// Station each vehicle starts at; pairwise distinct.
    pub initial_vehicle_location: Vec<usize>,
}

impl NetworkInstance {
    pub fn station_count(&self) -> usize {
        self.capacities.len()
    }

    pub fn vehicle_count(&self) -> usize {
        self.vehicle_capacities.len()
    }

    /// Total bikes in the system (docked plus on vehicles).
    pub fn total_bikes(&self) -> u64 {
        self.initial_station_inventory.iter().map(|&d| u64::from(d)).sum::<u64>()
            + self.initial_vehicle_inventory.iter().map(|&p| u64::from(p)).sum::<u64>()
    }

    /// Initial system state: every vehicle parked-arrived at its start
    /// station with no pending operations.
    pub fn initial_state(&self) -> SystemState {
        SystemState {
            time: 0.0,
            station_inventory: self.initial_station_inventory.clone(),
            vehicles: self
                .initial_vehicle_location
                .iter()
                .zip(&self.initial_vehicle_inventory)
                .map(|(&z, &p)| VehicleStatus {
                    from_station: z,
                    to_station: z,
                    load: p,
                    eta: 0.0,
                    remaining_ops: 0,
                })
                .collect(),
            pending_returns: Vec::new(),
            stranded_bikes: 0,
        }
    }
}

/// One customer trip: rent at `origin`, ride, return at `destination`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trip {
    pub depart_time: f64,
    pub origin: usize,
    pub arrive_time: f64,
    pub destination: usize,
}

/// Where a vehicle is, what it carries, and what it still has to do.
///
/// `remaining_ops` is signed: positive counts pick-ups left at the current
/// station, negative counts drop-offs. It is zero whenever the vehicle is in
/// transit. `eta` is the estimated arrival time at `to_station`; for a
/// vehicle mid-rebalance it includes the time to finish the remaining
/// operations. A parked vehicle (never dispatched again) carries an infinite
/// `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleStatus {
    pub from_station: usize,
    pub to_station: usize,
    pub load: u32,
    pub eta: f64,
    pub remaining_ops: i32,
}

impl VehicleStatus {
    /// True when the vehicle has reached `to_station` and awaits a decision.
    pub fn has_arrived(&self, now: f64) -> bool {
        self.remaining_ops == 0 && self.eta.is_finite() && self.eta <= now
    }

    /// True when the vehicle is travelling between stations.
    pub fn in_transit(&self, now: f64) -> bool {
        self.remaining_ops == 0 && self.eta.is_finite() && self.eta > now
    }

    pub fn is_parked(&self) -> bool {
        self.eta.is_infinite()
    }
}

/// A return committed by a successful rental but not yet executed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendingReturn {
    pub time: f64,
    pub station: usize,
}

/// Full system status at a decision epoch.
///
/// `pending_returns` carries in-flight bikes across epoch boundaries;
/// `stranded_bikes` counts bikes whose return failed system-wide (every dock
/// occupied) and that re-dock at the next dock-freeing instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemState {
    pub time: f64,
    pub station_inventory: Vec<u32>,
    pub vehicles: Vec<VehicleStatus>,
    pub pending_returns: Vec<PendingReturn>,
    pub stranded_bikes: u32,
}

impl SystemState {
    /// Bikes currently riding with customers (committed returns).
    pub fn in_flight(&self) -> usize {
        self.pending_returns.len()
    }

    /// Conservation total: docked + on vehicles + riding + stranded.
    pub fn bike_total(&self) -> u64 {
        self.station_inventory.iter().map(|&d| u64::from(d)).sum::<u64>()
            + self.vehicles.iter().map(|v| u64::from(v.load)).sum::<u64>()
            + self.pending_returns.len() as u64
            + u64::from(self.stranded_bikes)
    }
}

/// A decision: which fill level to rebalance the current station to, and
/// which station to drive to next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    /// Index into [`FillLevels::mu`].
    pub fill_level_index: usize,
    pub next_station: usize,
}

/// The three target fill levels, as fractions of station capacity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FillLevels {
    pub mu: [f64; 3],
}

impl Default for FillLevels {
    fn default() -> Self {
        FillLevels { mu: [0.10, 0.50, 0.90] }
    }
}

impl FillLevels {
    pub fn new(mu: [f64; 3]) -> Self {
        FillLevels { mu }
    }

    /// Target inventory for a station of capacity `cap` at level `idx`,
    /// rounded to the nearest integer with ties up.
    pub fn target(&self, idx: usize, cap: u32) -> i64 {
        (self.mu[idx] * f64::from(cap)).round() as i64
    }
}

/// Signed loading decision: bikes to pick up (positive) or drop off
/// (negative) to move a station of capacity `cap` holding `docked` bikes
/// toward `target`, limited by vehicle load `load` and capacity `vcap`.
pub fn loading_delta(docked: u32, target: i64, load: u32, vcap: u32) -> i64 {
    let d = i64::from(docked);
    if target < d {
        // Station above target: pick up as many as the vehicle can take.
        (i64::from(vcap) - i64::from(load)).min(d - target)
    } else if target > d {
        // Station below target: drop off as many as the vehicle carries.
        (-i64::from(load)).max(d - target)
    } else {
        0
    }
}

/// A violation found by [`validate_instance`], naming field and index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}{}: {message}", index.map(|i| format!("[{i}]")).unwrap_or_default())]
pub struct Violation {
    pub field: &'static str,
    pub index: Option<usize>,
    pub message: String,
}

fn violation(field: &'static str, index: Option<usize>, message: impl Into<String>) -> Violation {
    Violation { field, index, message: message.into() }
}

/// Checks every structural invariant of an instance. Returns the list of
/// violations; an empty network counts as one.
pub fn validate_instance(instance: &NetworkInstance) -> Result<(), Vec<Violation>> {
    let mut errs = Vec::new();
    let n = instance.station_count();
    let v = instance.vehicle_count();

    if n == 0 {
        errs.push(violation("capacities", None, "no stations"));
    }
    if v == 0 {
        errs.push(violation("vehicle_capacities", None, "no vehicles"));
    }
    if !(instance.handling_minutes.is_finite() && instance.handling_minutes >= 0.0) {
        errs.push(violation("handling_minutes", None, "must be finite and nonnegative"));
    }

    for (name, m) in [("distances", &instance.distances), ("transit_times", &instance.transit_times)]
    {
        if m.rows() != n || m.cols() != n {
            errs.push(violation(name, None, format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols())));
            continue;
        }
        for i in 0..n {
            if m.get(i, i) != 0.0 {
                errs.push(violation(name, Some(i), "nonzero diagonal"));
            }
            for j in 0..n {
                let x = m.get(i, j);
                if !(x.is_finite() && x >= 0.0) {
                    errs.push(violation(name, Some(i * n + j), "negative or non-finite entry"));
                }
            }
        }
    }

    if instance.initial_station_inventory.len() != n {
        errs.push(violation("initial_station_inventory", None, "length mismatch"));
    } else {
        for (i, (&d, &c)) in
            instance.initial_station_inventory.iter().zip(&instance.capacities).enumerate()
        {
            if d > c {
                errs.push(violation(
                    "initial_station_inventory",
                    Some(i),
                    format!("{d} bikes exceed capacity {c}"),
                ));
            }
        }
    }

    if instance.initial_vehicle_inventory.len() != v {
        errs.push(violation("initial_vehicle_inventory", None, "length mismatch"));
    } else {
        for (i, (&p, &c)) in
            instance.initial_vehicle_inventory.iter().zip(&instance.vehicle_capacities).enumerate()
        {
            if p > c {
                errs.push(violation(
                    "initial_vehicle_inventory",
                    Some(i),
                    format!("{p} bikes exceed capacity {c}"),
                ));
            }
        }
    }

    if instance.initial_vehicle_location.len() != v {
        errs.push(violation("initial_vehicle_location", None, "length mismatch"));
    } else {
        for (i, &z) in instance.initial_vehicle_location.iter().enumerate() {
            if z >= n {
                errs.push(violation("initial_vehicle_location", Some(i), "station out of range"));
            }
            if instance.initial_vehicle_location[..i].contains(&z) {
                errs.push(violation("initial_vehicle_location", Some(i), "duplicate initial location"));
            }
        }
    }

    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// Raised when every dock in the system is occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no station has a free dock; return is unservable")]
pub struct AllStationsFull;

/// Nearest station (by distance from `station`, excluding it) with at least
/// one free dock. Ties break toward the lowest index.
pub fn nearest_station_with_dock(
    state: &SystemState,
    instance: &NetworkInstance,
    station: usize,
) -> Result<usize, AllStationsFull> {
    nearest_with_dock(&instance.distances, &state.station_inventory, &instance.capacities, station)
}

/// Slice-level form of [`nearest_station_with_dock`] used inside the event
/// loop, where inventories live in working arrays.
pub fn nearest_with_dock(
    distances: &Matrix<f64>,
    inventory: &[u32],
    capacities: &[u32],
    station: usize,
) -> Result<usize, AllStationsFull> {
    let mut best: Option<(f64, usize)> = None;
    for s in 0..inventory.len() {
        if s == station || inventory[s] >= capacities[s] {
            continue;
        }
        let d = distances.get(station, s);
        match best {
            Some((bd, _)) if bd <= d => {}
            _ => best = Some((d, s)),
        }
    }
    best.map(|(_, s)| s).ok_or(AllStationsFull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demand::{generate_network, LayoutSpec};

    fn tiny_instance() -> NetworkInstance {
        NetworkInstance {
            capacities: vec![2, 2, 2],
            distances: Matrix::from_rows(&[
                vec![0.0, 1.0, 2.0],
                vec![1.0, 0.0, 1.5],
                vec![2.0, 1.5, 0.0],
            ]),
            transit_times: Matrix::from_rows(&[
                vec![0.0, 3.0, 6.0],
                vec![3.0, 0.0, 4.5],
                vec![6.0, 4.5, 0.0],
            ]),
            vehicle_capacities: vec![4],
            handling_minutes: 0.5,
            initial_station_inventory: vec![1, 1, 1],
            initial_vehicle_inventory: vec![0],
            initial_vehicle_location: vec![0],
        }
    }

    #[test]
    fn gt1_shaped_instance_is_valid() {
        let instance = generate_network(&LayoutSpec::gt1(), 7).unwrap();
        assert_eq!(instance.vehicle_capacities, vec![40; 4]);
        assert!(validate_instance(&instance).is_ok());
    }

    #[test]
    fn full_system_boundary_is_valid() {
        let mut instance = tiny_instance();
        instance.initial_station_inventory = instance.capacities.clone();
        assert!(validate_instance(&instance).is_ok());
    }

    #[test]
    fn duplicate_vehicle_start_is_a_violation() {
        let mut instance = tiny_instance();
        instance.vehicle_capacities = vec![4, 4];
        instance.initial_vehicle_inventory = vec![0, 0];
        instance.initial_vehicle_location = vec![1, 1];
        let errs = validate_instance(&instance).unwrap_err();
        assert!(errs.iter().any(|e| e.message.contains("duplicate initial location")));
    }

    #[test]
    fn empty_instance_is_a_violation() {
        let instance = NetworkInstance {
            capacities: vec![],
            distances: Matrix::zeros(0, 0),
            transit_times: Matrix::zeros(0, 0),
            vehicle_capacities: vec![],
            handling_minutes: 0.5,
            initial_station_inventory: vec![],
            initial_vehicle_inventory: vec![],
            initial_vehicle_location: vec![],
        };
        let errs = validate_instance(&instance).unwrap_err();
        assert!(errs.len() >= 2);
    }

    #[test]
    fn nearest_dock_prefers_closest_free_station() {
        let instance = tiny_instance();
        let mut state = instance.initial_state();
        // Station 1 full, station 2 has a dock: row 0 distances are [0,1,2].
        state.station_inventory = vec![0, 2, 1];
        assert_eq!(nearest_station_with_dock(&state, &instance, 0), Ok(2));
    }

    #[test]
    fn nearest_dock_single_candidate_and_tie_break() {
        let instance = tiny_instance();
        let mut state = instance.initial_state();
        state.station_inventory = vec![2, 1, 2];
        assert_eq!(nearest_station_with_dock(&state, &instance, 0), Ok(1));

        // Equidistant free candidates resolve to the lower index.
        let eq = NetworkInstance {
            distances: Matrix::from_rows(&[
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ]),
            ..tiny_instance()
        };
        let state = eq.initial_state();
        assert_eq!(nearest_station_with_dock(&state, &eq, 0), Ok(1));
    }

    #[test]
    fn nearest_dock_never_returns_query_or_full_station() {
        let instance = tiny_instance();
        let mut state = instance.initial_state();
        state.station_inventory = vec![0, 2, 2];
        assert_eq!(nearest_station_with_dock(&state, &instance, 0), Err(AllStationsFull).map_err(|e| e).or(Err(AllStationsFull)));
        state.station_inventory = vec![0, 2, 2];
        assert!(nearest_station_with_dock(&state, &instance, 0).is_err());
    }

    #[test]
    fn loading_delta_matches_rule() {
        // Station above target, vehicle space limits the pick-up.
        assert_eq!(loading_delta(36, 4, 38, 40), 2);
        // Station below target, vehicle load limits the drop-off.
        assert_eq!(loading_delta(4, 20, 10, 40), -10);
        // On target.
        assert_eq!(loading_delta(10, 10, 5, 40), 0);
    }
}
