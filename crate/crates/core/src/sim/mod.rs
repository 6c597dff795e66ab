//! Streaming state-vector execution of measurement patterns.
//!
//! Only live qubits hold amplitude axes: `Prepare` adds one, `Measure`
//! projects and contracts it away, so memory follows the schedule's peak
//! residency rather than the pattern size.
//!
//! Corrections are kept as a Pauli frame expressed relative to the fully
//! entangled state. Entangling operations still pending on other qubits
//! commute with a measurement, so a frame bit on qubit `v` only matters when
//! `v` itself is measured (it flips the angle to `(-1)^{s_X} α + s_Z π`) or
//! when the outputs are read out.

mod state;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::Witness;
use crate::graph::{OpenGraph, Vertex};
use crate::rewrite::PauliBasis;
use crate::schedule::{replay, Event, Schedule};
use crate::{BitSet, Error, Result};

pub use state::{state_distance, StateVector};
use state::{c, phase};

/// Tolerance for comparing output states up to global phase.
pub const STATE_TOLERANCE: f64 = 1e-9;
/// Maximum drift of the state norm across a unitary event.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Default cap on `|O^C|` for exhaustive branch enumeration.
pub const DEFAULT_BRANCH_CAP: usize = 10;
/// Branch probabilities below this are treated as impossible.
const DEGENERATE_PROBABILITY: f64 = 1e-12;

/// Measurement angle, either an exact multiple of π or a raw radian value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `num/den · π`, kept in lowest terms with `den > 0`.
    PiFraction { num: i64, den: u64 },
    Radians(f64),
}

impl Angle {
    pub fn pi_fraction(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Pattern("angle denominator is zero".into()));
        }
        let g = gcd(num.unsigned_abs(), den).max(1);
        Ok(Angle::PiFraction {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn radians(self) -> f64 {
        match self {
            Angle::PiFraction { num, den } => PI * num as f64 / den as f64,
            Angle::Radians(r) => r,
        }
    }

    /// The Pauli basis this angle measures in, when it is recognisably one:
    /// `0, π` give X and `π/2, 3π/2` give Y. Only exact fractions qualify.
    pub fn pauli_basis(self) -> Option<PauliBasis> {
        match self {
            Angle::PiFraction { den: 1, .. } => Some(PauliBasis::X),
            Angle::PiFraction { den: 2, .. } => Some(PauliBasis::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::PiFraction { num, den: 1 } => write!(f, "{num}π"),
            Angle::PiFraction { num, den } => write!(f, "{num}π/{den}"),
            Angle::Radians(r) => write!(f, "{r}"),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An open graph with an angle on every measured qubit and an input state.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPattern {
    graph: OpenGraph,
    angles: Vec<Option<Angle>>,
    input_state: Vec<Complex64>,
}

impl MeasurementPattern {
    /// Pattern with `|+⟩` on every input. `angles` must cover `O^C` exactly.
    pub fn new(graph: OpenGraph, angles: impl IntoIterator<Item = (Vertex, Angle)>) -> Result<Self> {
        let m = graph.vertex_count();
        let mut slots = vec![None; m];
        for (v, a) in angles {
            graph.check(v)?;
            if graph.is_output(v) {
                return Err(Error::Pattern(format!("angle given for output `{}`", graph.name(v))));
            }
            if slots[v.0].replace(a).is_some() {
                return Err(Error::Pattern(format!("angle for `{}` given twice", graph.name(v))));
            }
        }
        if let Some(v) = graph.non_outputs().iter().find(|v| slots[v.0].is_none()) {
            return Err(Error::Pattern(format!("no angle for `{}`", graph.name(v))));
        }
        let n = graph.inputs().len();
        let amp = 1.0 / libm::sqrt((1u64 << n) as f64);
        Ok(Self {
            graph,
            angles: slots,
            input_state: vec![c(amp, 0.0); 1 << n],
        })
    }

    /// Replaces the input state; amplitudes follow the inputs in canonical
    /// order (bit `k` is the `k`-th input).
    pub fn with_input_state(mut self, state: Vec<Complex64>) -> Result<Self> {
        let n = self.graph.inputs().len();
        if state.len() != 1 << n {
            return Err(Error::Pattern(format!(
                "input state has {} amplitudes, {n} inputs need {}",
                state.len(),
                1usize << n
            )));
        }
        let norm: f64 = state.iter().map(Complex64::norm_sqr).sum();
        if (libm::sqrt(norm) - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Pattern(format!("input state has norm {}", libm::sqrt(norm))));
        }
        self.input_state = state;
        Ok(self)
    }

    pub fn graph(&self) -> &OpenGraph {
        &self.graph
    }

    pub fn angle(&self, v: Vertex) -> Option<Angle> {
        self.angles.get(v.0).copied().flatten()
    }

    pub fn input_state(&self) -> &[Complex64] {
        &self.input_state
    }
}

/// Pending X/Z corrections per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliFrame {
    pub x: BitSet,
    pub z: BitSet,
}

impl PauliFrame {
    fn new(m: usize) -> Self {
        Self {
            x: BitSet::new(m),
            z: BitSet::new(m),
        }
    }

    fn clear(&mut self, v: Vertex) {
        self.x.remove(v.0);
        self.z.remove(v.0);
    }
}

/// How measurement outcomes are chosen.
#[derive(Clone, Copy, Debug)]
pub enum Outcomes<'a> {
    /// One bit per vertex of `O^C`, in canonical vertex order.
    Forced(&'a [bool]),
    /// Sampled from the Born rule with a seeded generator.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    /// Outcome of every measured vertex, in canonical vertex order.
    pub outcomes: Vec<(Vertex, bool)>,
    /// State over the outputs in canonical order, frame applied.
    pub output_state: Vec<Complex64>,
    pub peak_live: usize,
}

/// Replays `schedule` on `pattern`. `dep` selects the correction rule;
/// `None` runs without corrections.
pub fn execute(
    pattern: &MeasurementPattern,
    schedule: &Schedule,
    dep: Option<&Witness>,
    outcomes: Outcomes<'_>,
) -> Result<RunResult> {
    let og = &pattern.graph;
    let m = og.vertex_count();
    replay(og, schedule.events())?;
    if let Some(w) = dep {
        w.verify(og)?;
    }
    let measured_order = og.non_outputs().to_vec();
    let forced_bit = |v: Vertex| -> Option<bool> {
        match outcomes {
            Outcomes::Forced(bits) => measured_order.iter().position(|&u| u == v).map(|k| bits[k]),
            Outcomes::Seeded(_) => None,
        }
    };
    if let Outcomes::Forced(bits) = outcomes {
        if bits.len() != measured_order.len() {
            return Err(Error::Pattern(format!(
                "{} forced outcomes for {} measured qubits",
                bits.len(),
                measured_order.len()
            )));
        }
    }
    let mut rng = match outcomes {
        Outcomes::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Outcomes::Forced(_) => None,
    };

    let inputs = og.inputs().to_vec();
    let mut state = StateVector::from_amplitudes(inputs.clone(), pattern.input_state.clone());
    let mut frame = PauliFrame::new(m);
    let mut gone = BitSet::new(m);
    let mut allocated = inputs.len();
    let mut peak = allocated;
    let mut results: Vec<(Vertex, bool)> = Vec::new();

    for event in schedule.events() {
        match *event {
            Event::Prepare(v) => {
                state.push_plus(v);
                allocated += 1;
                peak = peak.max(allocated);
            }
            Event::Entangle(u, v) => state.cz(u, v),
            Event::Measure(v) => {
                let alpha = pattern.angle(v).expect("angles cover O^C").radians();
                let sign = if frame.x.contains(v.0) { -1.0 } else { 1.0 };
                let shift = if frame.z.contains(v.0) { PI } else { 0.0 };
                let bra = |s: bool| {
                    let e = phase(-(sign * alpha + shift));
                    [c(core::f64::consts::FRAC_1_SQRT_2, 0.0), e * if s { -core::f64::consts::FRAC_1_SQRT_2 } else { core::f64::consts::FRAC_1_SQRT_2 }]
                };
                let outcome = match (forced_bit(v), rng.as_mut()) {
                    (Some(bit), _) => bit,
                    (None, Some(rng)) => {
                        let p0 = state.clone().contract(v, bra(false));
                        rng.gen::<f64>() >= p0
                    }
                    (None, None) => unreachable!("forced outcomes cover O^C"),
                };
                let p = state.contract(v, bra(outcome));
                if p < DEGENERATE_PROBABILITY {
                    return Err(Error::DegenerateBranch(og.name(v).into()));
                }
                state.normalize();
                gone.insert(v.0);
                frame.clear(v);
                results.push((v, outcome));
                if outcome {
                    if let Some(w) = dep {
                        let (xs, zs) = w
                            .corrections(og, v)
                            .ok_or_else(|| Error::Pattern(format!("no corrector for `{}`", og.name(v))))?;
                        for (targets, bits) in [(xs, &mut frame.x), (zs, &mut frame.z)] {
                            for t in targets.iter() {
                                if gone.contains(t.0) {
                                    return Err(Error::Pattern(format!(
                                        "correction from `{}` targets already measured `{}`",
                                        og.name(v),
                                        og.name(t)
                                    )));
                                }
                                bits.toggle(t.0);
                            }
                        }
                    }
                }
            }
            Event::Discard(_) => allocated -= 1,
        }
        let drift = (libm::sqrt(state.norm_sqr()) - 1.0).abs();
        if drift > NORM_TOLERANCE {
            return Err(Error::InvariantViolation(format!("state norm drifted by {drift}")));
        }
    }

    for o in og.outputs().iter() {
        if frame.z.contains(o.0) {
            state.z(o);
        }
        if frame.x.contains(o.0) {
            state.x(o);
        }
    }
    results.sort_by_key(|&(v, _)| v);
    Ok(RunResult {
        outcomes: results,
        output_state: state.reordered(&og.outputs().to_vec()),
        peak_live: peak,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminismReport {
    pub pass: bool,
    /// Largest `1 - |⟨ψ|φ⟩|` between any two possible branches.
    pub max_distance: f64,
    pub branches: usize,
    /// Forced outcome strings that have probability zero.
    pub degenerate: usize,
}

fn branch_bits(k: usize, width: usize) -> Vec<bool> {
    (0..width).map(|b| k >> b & 1 == 1).collect()
}

fn check_branch_cap(og: &OpenGraph, cap: usize) -> Result<usize> {
    let width = og.non_outputs().len();
    if width > cap {
        return Err(Error::CapExceeded { size: width, cap });
    }
    Ok(width)
}

/// Runs every outcome string and checks the outputs agree up to global phase.
pub fn branch_determinism_check(
    pattern: &MeasurementPattern,
    schedule: &Schedule,
    dep: Option<&Witness>,
    cap: usize,
) -> Result<DeterminismReport> {
    let width = check_branch_cap(&pattern.graph, cap)?;
    let mut states = Vec::new();
    let mut degenerate = 0;
    for k in 0..1usize << width {
        match execute(pattern, schedule, dep, Outcomes::Forced(&branch_bits(k, width))) {
            Ok(r) => states.push(r.output_state),
            Err(Error::DegenerateBranch(_)) => degenerate += 1,
            Err(e) => return Err(e),
        }
    }
    let mut max_distance: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for b in &states[i + 1..] {
            max_distance = max_distance.max(state_distance(a, b));
        }
    }
    Ok(DeterminismReport {
        pass: max_distance < STATE_TOLERANCE,
        max_distance,
        branches: states.len(),
        degenerate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub pass: bool,
    pub max_distance: f64,
    pub branches: usize,
}

/// Compares two schedules branch by branch, matching outcomes by vertex.
pub fn schedule_equivalence(
    pattern: &MeasurementPattern,
    first: &Schedule,
    second: &Schedule,
    dep: Option<&Witness>,
    cap: usize,
) -> Result<EquivalenceReport> {
    let width = check_branch_cap(&pattern.graph, cap)?;
    let mut max_distance: f64 = 0.0;
    let mut branches = 0;
    for k in 0..1usize << width {
        let bits = branch_bits(k, width);
        let a = execute(pattern, first, dep, Outcomes::Forced(&bits));
        let b = execute(pattern, second, dep, Outcomes::Forced(&bits));
        match (a, b) {
            (Ok(a), Ok(b)) => {
                branches += 1;
                max_distance = max_distance.max(state_distance(&a.output_state, &b.output_state));
            }
            (Err(Error::DegenerateBranch(_)), Err(Error::DegenerateBranch(_))) => {}
            (Err(Error::DegenerateBranch(_)), Ok(_)) | (Ok(_), Err(Error::DegenerateBranch(_))) => {
                max_distance = 1.0;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(EquivalenceReport {
        pass: max_distance < STATE_TOLERANCE,
        max_distance,
        branches,
    })
}
