//! Lazy execution schedules and live-qubit accounting.
//!
//! A schedule realises a pattern one event at a time. Inputs are live from
//! the start and never prepared; every other qubit is allocated by a
//! `Prepare` and freed by the `Discard` that directly follows its
//! measurement. Outputs are never measured. The number of qubits that are
//! live at once is the quantity being minimised (`min_QR`).

use alloc::format;
use alloc::vec::Vec;

use crate::flow::{verify_flow, Flow};
use crate::graph::{OpenGraph, Vertex, VertexSet};
use crate::{Error, Result};

/// Default vertex cap for [`min_qr_exact`].
pub const DEFAULT_EXACT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Prepare(Vertex),
    Entangle(Vertex, Vertex),
    Measure(Vertex),
    Discard(Vertex),
}

/// A validated event sequence with its live-qubit profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    events: Vec<Event>,
    initial_live: usize,
    live_profile: Vec<usize>,
}

impl Schedule {
    /// Validates `events` against `og` by replaying them.
    pub fn from_events(og: &OpenGraph, events: Vec<Event>) -> Result<Self> {
        let live_profile = replay(og, &events)?;
        Ok(Self {
            events,
            initial_live: og.inputs().len(),
            live_profile,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Live-qubit count after each event.
    pub fn live_profile(&self) -> &[usize] {
        &self.live_profile
    }

    /// Live qubits before the first event (the inputs).
    pub fn initial_live(&self) -> usize {
        self.initial_live
    }

    /// Peak number of simultaneously live qubits.
    pub fn residency_max(&self) -> usize {
        self.live_profile
            .iter()
            .copied()
            .fold(self.initial_live, usize::max)
    }

    /// Vertices in the order they are measured.
    pub fn measurement_order(&self) -> Vec<Vertex> {
        self.events
            .iter()
            .filter_map(|e| match *e {
                Event::Measure(v) => Some(v),
                _ => None,
            })
            .collect()
    }
}

pub fn residency_max(s: &Schedule) -> usize {
    s.residency_max()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Life {
    Unprepared,
    Live,
    Measured,
    Discarded,
}

/// Replay validator: checks every schedule invariant and returns the live
/// profile.
pub fn replay(og: &OpenGraph, events: &[Event]) -> Result<Vec<usize>> {
    let m = og.vertex_count();
    let mut life: Vec<Life> = og
        .vertices()
        .map(|v| if og.is_input(v) { Life::Live } else { Life::Unprepared })
        .collect();
    let mut pending: Vec<VertexSet> = og.vertices().map(|v| og.neighbors(v).expect("own vertex")).collect();
    let mut live = og.inputs().len();
    let mut profile = Vec::with_capacity(events.len());
    let bad = |index: usize, reason: alloc::string::String| Err(Error::InvalidSchedule { index, reason });

    for (k, &event) in events.iter().enumerate() {
        let vs: &[Vertex] = match &event {
            Event::Prepare(v) | Event::Measure(v) | Event::Discard(v) => core::slice::from_ref(v),
            Event::Entangle(u, v) => &[*u, *v][..],
        };
        for &v in vs {
            if v.0 >= m {
                return bad(k, format!("vertex index {} out of range", v.0));
            }
        }
        if let Some(Event::Measure(w)) = k.checked_sub(1).map(|p| events[p]) {
            if event != Event::Discard(w) {
                return bad(k, format!("measurement of `{}` not followed by its discard", og.name(w)));
            }
        }
        match event {
            Event::Prepare(v) => {
                if og.is_input(v) {
                    return bad(k, format!("input `{}` is live from the start", og.name(v)));
                }
                if life[v.0] != Life::Unprepared {
                    return bad(k, format!("`{}` prepared twice", og.name(v)));
                }
                life[v.0] = Life::Live;
                live += 1;
            }
            Event::Entangle(u, v) => {
                if !og.has_edge(u, v) {
                    return bad(k, format!("{}-{} is not an edge", og.name(u), og.name(v)));
                }
                if !pending[u.0].contains(v) {
                    return bad(k, format!("edge {}-{} applied twice", og.name(u), og.name(v)));
                }
                if life[u.0] != Life::Live || life[v.0] != Life::Live {
                    return bad(k, format!("edge {}-{} needs both endpoints live", og.name(u), og.name(v)));
                }
                pending[u.0].remove(v);
                pending[v.0].remove(u);
            }
            Event::Measure(v) => {
                if og.is_output(v) {
                    return bad(k, format!("output `{}` measured", og.name(v)));
                }
                if life[v.0] != Life::Live {
                    return bad(k, format!("`{}` measured while not live", og.name(v)));
                }
                if !pending[v.0].is_empty() {
                    return bad(k, format!("`{}` measured before all its edges", og.name(v)));
                }
                life[v.0] = Life::Measured;
            }
            Event::Discard(v) => {
                if life[v.0] != Life::Measured || k == 0 || events[k - 1] != Event::Measure(v) {
                    return bad(k, format!("discard of `{}` does not follow its measurement", og.name(v)));
                }
                life[v.0] = Life::Discarded;
                live -= 1;
            }
        }
        profile.push(live);
    }
    let end = events.len();
    for v in og.vertices() {
        let ok = match life[v.0] {
            Life::Live => og.is_output(v),
            Life::Discarded => !og.is_output(v),
            Life::Unprepared | Life::Measured => false,
        };
        if !ok {
            return bad(end, format!("`{}` left in the wrong state at the end", og.name(v)));
        }
        if !pending[v.0].is_empty() {
            return bad(end, format!("edges of `{}` never applied", og.name(v)));
        }
    }
    Ok(profile)
}

fn check_order(og: &OpenGraph, order: &[Vertex]) -> Result<()> {
    let m = og.vertex_count();
    let mut seen = VertexSet::new(m);
    for &v in order {
        og.check(v)?;
        if og.is_output(v) {
            return Err(Error::InvalidOrder(format!("output `{}` in measurement order", og.name(v))));
        }
        if !seen.insert(v) {
            return Err(Error::InvalidOrder(format!("`{}` appears twice", og.name(v))));
        }
    }
    if seen != og.non_outputs() {
        return Err(Error::InvalidOrder("order does not cover every non-output vertex".into()));
    }
    Ok(())
}

/// Schedule that postpones every preparation and entanglement until the
/// measurement that needs it.
pub fn lazy_schedule(og: &OpenGraph, order: &[Vertex]) -> Result<Schedule> {
    check_order(og, order)?;
    let m = og.vertex_count();
    let mut prepared = og.inputs().clone();
    let mut applied: Vec<VertexSet> = (0..m).map(|_| VertexSet::new(m)).collect();
    let mut measured = VertexSet::new(m);
    let mut events = Vec::new();

    let entangle = |events: &mut Vec<Event>, applied: &mut Vec<VertexSet>, u: Vertex, v: Vertex| {
        if applied[u.0].insert(v) {
            applied[v.0].insert(u);
            events.push(Event::Entangle(u.min(v), u.max(v)));
        }
    };

    for &w in order {
        if prepared.insert(w) {
            events.push(Event::Prepare(w));
        }
        let nbrs: Vec<Vertex> = og.row(w).iter().map(Vertex).filter(|&k| !measured.contains(k)).collect();
        for &k in &nbrs {
            if prepared.insert(k) {
                events.push(Event::Prepare(k));
            }
        }
        for &k in &nbrs {
            entangle(&mut events, &mut applied, w, k);
        }
        events.push(Event::Measure(w));
        events.push(Event::Discard(w));
        measured.insert(w);
    }
    for v in og.outputs().iter() {
        if prepared.insert(v) {
            events.push(Event::Prepare(v));
        }
    }
    for (u, v) in og.edges() {
        entangle(&mut events, &mut applied, u, v);
    }
    Schedule::from_events(og, events)
}

/// Baseline schedule: prepare everything, apply every edge, then measure.
pub fn eager_schedule(og: &OpenGraph, order: &[Vertex]) -> Result<Schedule> {
    check_order(og, order)?;
    let mut events: Vec<Event> = og.non_inputs().iter().map(Event::Prepare).collect();
    events.extend(og.edges().into_iter().map(|(u, v)| Event::Entangle(u, v)));
    for &w in order {
        events.push(Event::Measure(w));
        events.push(Event::Discard(w));
    }
    Schedule::from_events(og, events)
}

/// How to read the definition of `O_w`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OwReading {
    /// `O_w = {v ∈ U_w | N(v) ∩ M_w ≠ ∅}`: unmeasured vertices with a
    /// measured neighbour.
    #[default]
    MeasuredNeighbour,
    /// `O_w = {v ∈ U_w | N(w) ∩ M_w ≠ ∅}` taken literally, which is either all
    /// of `U_w` or nothing.
    Literal,
}

/// The decomposition `Q_w = N_w ∪ I_w ∪ O_w` of the qubits that must coexist
/// with `w` just before it is measured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiveSets {
    pub w: Vertex,
    /// Unmeasured neighbours of `w`.
    pub n_w: VertexSet,
    /// Unmeasured inputs other than `w`.
    pub i_w: VertexSet,
    /// Unmeasured vertices touched by an earlier measurement.
    pub o_w: VertexSet,
    pub q_w: VertexSet,
    /// Every unmeasured vertex except `w`.
    pub u_w: VertexSet,
    pub m_w: VertexSet,
}

pub fn compute_live_sets(og: &OpenGraph, measured_prefix: &[Vertex], w: Vertex) -> Result<LiveSets> {
    compute_live_sets_with(og, measured_prefix, w, OwReading::MeasuredNeighbour)
}

pub fn compute_live_sets_with(
    og: &OpenGraph,
    measured_prefix: &[Vertex],
    w: Vertex,
    reading: OwReading,
) -> Result<LiveSets> {
    let m = og.vertex_count();
    og.check(w)?;
    if og.is_output(w) {
        return Err(Error::InvalidOrder(format!("`{}` is an output", og.name(w))));
    }
    let mut m_w = VertexSet::new(m);
    for &v in measured_prefix {
        og.check(v)?;
        if og.is_output(v) {
            return Err(Error::InvalidOrder(format!("output `{}` in measured prefix", og.name(v))));
        }
        if !m_w.insert(v) {
            return Err(Error::InvalidOrder(format!("`{}` measured twice", og.name(v))));
        }
    }
    if m_w.contains(w) {
        return Err(Error::InvalidOrder(format!("`{}` is already measured", og.name(w))));
    }
    Ok(live_sets_unchecked(og, &m_w, w, reading))
}

fn live_sets_unchecked(og: &OpenGraph, m_w: &VertexSet, w: Vertex, reading: OwReading) -> LiveSets {
    let m = og.vertex_count();
    let mut u_w = m_w.complement();
    u_w.remove(w);
    let n_w = VertexSet::from_bits(og.row(w).clone()).intersection(&u_w);
    let i_w = og.inputs().intersection(&u_w);
    let o_w = match reading {
        OwReading::MeasuredNeighbour => {
            let mut touched = VertexSet::new(m);
            for v in m_w.iter() {
                touched = touched.union(&VertexSet::from_bits(og.row(v).clone()));
            }
            touched.intersection(&u_w)
        }
        OwReading::Literal => {
            if og.row(w).is_disjoint(m_w.bits()) {
                VertexSet::new(m)
            } else {
                u_w.clone()
            }
        }
    };
    let q_w = n_w.union(&i_w).union(&o_w);
    LiveSets {
        w,
        n_w,
        i_w,
        o_w,
        q_w,
        u_w,
        m_w: m_w.clone(),
    }
}

/// Live count of the lazy schedule just before measuring `w`: `1 + |Q_w|`.
fn live_at(og: &OpenGraph, measured: &VertexSet, w: Vertex) -> usize {
    1 + live_sets_unchecked(og, measured, w, OwReading::MeasuredNeighbour).q_w.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidencyResult {
    pub min_qr: usize,
    pub witness_order: Vec<Vertex>,
    /// Live counts of the witnessing lazy schedule, one per event.
    pub profile: Vec<usize>,
}

impl ResidencyResult {
    fn from_schedule(s: &Schedule) -> Self {
        Self {
            min_qr: s.residency_max(),
            witness_order: s.measurement_order(),
            profile: s.live_profile().to_vec(),
        }
    }
}

fn check_layer_map(og: &OpenGraph, layers: &[usize]) -> Result<()> {
    if layers.len() != og.vertex_count() {
        return Err(Error::InvalidLayering(format!(
            "{} layers for {} vertices",
            layers.len(),
            og.vertex_count()
        )));
    }
    if let Some(o) = og.outputs().iter().find(|o| layers[o.0] != 0) {
        return Err(Error::InvalidLayering(format!("output `{}` is not at layer 0", og.name(o))));
    }
    Ok(())
}

/// Non-outputs that may be measured next: those in the highest remaining layer.
fn measurable(og: &OpenGraph, layers: &[usize], measured: &VertexSet) -> Vec<Vertex> {
    let remaining = og.non_outputs().difference(measured);
    let Some(top) = remaining.iter().map(|v| layers[v.0]).max() else {
        return Vec::new();
    };
    remaining.iter().filter(|v| layers[v.0] == top).collect()
}

/// The canonical linear extension: decreasing layer, ties in vertex order.
pub fn canonical_order(og: &OpenGraph, layers: &[usize]) -> Vec<Vertex> {
    let mut order = og.non_outputs().to_vec();
    order.sort_by_key(|v| core::cmp::Reverse(layers[v.0]));
    order
}

/// Calls `visit` with every linear extension of the layer order over `O^C`.
pub fn for_each_linear_extension(og: &OpenGraph, layers: &[usize], mut visit: impl FnMut(&[Vertex])) -> Result<()> {
    check_layer_map(og, layers)?;
    fn rec(
        og: &OpenGraph,
        layers: &[usize],
        measured: &mut VertexSet,
        prefix: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]),
    ) {
        let next = measurable(og, layers, measured);
        if next.is_empty() {
            visit(prefix);
            return;
        }
        for w in next {
            measured.insert(w);
            prefix.push(w);
            rec(og, layers, measured, prefix, visit);
            prefix.pop();
            measured.remove(w);
        }
    }
    let mut measured = VertexSet::new(og.vertex_count());
    rec(og, layers, &mut measured, &mut Vec::new(), &mut visit);
    Ok(())
}

/// `min_QR` for a graph with flow: `min(n + 1, m)`, backed by a witnessing
/// lazy schedule whose peak is checked against the formula.
pub fn min_qr_flow(og: &OpenGraph, fl: &Flow) -> Result<ResidencyResult> {
    if !verify_flow(og, fl)?.is_pass() {
        return Err(Error::InvalidFlow("flow conditions do not hold".into()));
    }
    let n = og.unitary_width()?;
    let formula = (n + 1).min(og.vertex_count());
    let schedule = lazy_schedule(og, &canonical_order(og, fl.layers()))?;
    let result = ResidencyResult::from_schedule(&schedule);
    if result.min_qr != formula {
        return Err(Error::InvariantViolation(format!(
            "lazy schedule peaks at {} live qubits, min(n+1, m) = {formula}",
            result.min_qr
        )));
    }
    Ok(result)
}

/// Greedy upper bound on `min_QR`: always measure next the available vertex
/// that keeps the momentary live count lowest.
pub fn min_qr_greedy(og: &OpenGraph, layers: &[usize]) -> Result<ResidencyResult> {
    check_layer_map(og, layers)?;
    let mut measured = VertexSet::new(og.vertex_count());
    let mut order = Vec::new();
    loop {
        let next = measurable(og, layers, &measured);
        let Some(w) = next.into_iter().min_by_key(|&w| live_at(og, &measured, w)) else {
            break;
        };
        measured.insert(w);
        order.push(w);
    }
    Ok(ResidencyResult::from_schedule(&lazy_schedule(og, &order)?))
}

/// Exact `min_QR` over every linear extension of the layer order, by
/// depth-first search with branch-and-bound on the running peak.
pub fn min_qr_exact(og: &OpenGraph, layers: &[usize], cap: usize) -> Result<ResidencyResult> {
    check_layer_map(og, layers)?;
    let m = og.vertex_count();
    if m > cap {
        return Err(Error::CapExceeded { size: m, cap });
    }
    struct Search<'a> {
        og: &'a OpenGraph,
        layers: &'a [usize],
        best: usize,
        best_order: Option<Vec<Vertex>>,
    }
    impl Search<'_> {
        fn run(&mut self, measured: &mut VertexSet, prefix: &mut Vec<Vertex>, peak: usize) {
            let next = measurable(self.og, self.layers, measured);
            if next.is_empty() {
                if self.best_order.is_none() || peak < self.best {
                    self.best = peak;
                    self.best_order = Some(prefix.clone());
                }
                return;
            }
            for w in next {
                let here = peak.max(live_at(self.og, measured, w));
                if self.best_order.is_some() && here >= self.best {
                    continue;
                }
                measured.insert(w);
                prefix.push(w);
                self.run(measured, prefix, here);
                prefix.pop();
                measured.remove(w);
            }
        }
    }
    let mut search = Search {
        og,
        layers,
        best: usize::MAX,
        best_order: None,
    };
    let start = og.inputs().len().max(og.outputs().len());
    search.run(&mut VertexSet::new(m), &mut Vec::new(), start);
    let order = search.best_order.expect("at least one linear extension");
    let schedule = lazy_schedule(og, &order)?;
    if schedule.residency_max() != search.best {
        return Err(Error::InvariantViolation(format!(
            "search predicted {} live qubits, lazy schedule peaks at {}",
            search.best,
            schedule.residency_max()
        )));
    }
    Ok(ResidencyResult::from_schedule(&schedule))
}

/// `min over w ∈ O^C of |N(w)| + 1`: whichever qubit is measured first must
/// coexist with all of its neighbours.
pub fn degree_lower_bound(og: &OpenGraph) -> Result<usize> {
    og.non_outputs()
        .iter()
        .map(|w| og.degree(w) + 1)
        .min()
        .ok_or_else(|| Error::Parameter("every vertex is an output".into()))
}
