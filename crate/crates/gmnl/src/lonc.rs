//! Local operations and neighbour communication on a directed path.
//!
//! Three pieces live here: the two-round cluster-preparation protocol
//! executed at graph level (with an optional state-vector cross-check), a
//! validator for synchronous one-way traces, and a brute-force maximizer of
//! correlator functionals over deterministic strategies in which party i
//! sees the inputs of the t nearest upstream parties.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inequality::CorrelatorFunctional;
use crate::multigraph::Multigraph;
use crate::sim::{graph_state, lc_local_clifford_qubit, PureState};

/// A qubit in the preparation protocol: vertex (node, reg) with reg ∈ {1, 2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QubitId {
    pub node: usize,
    pub reg: usize,
}

impl std::fmt::Display for QubitId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.node, self.reg)
    }
}

/// Local gate payloads. Connect/disconnect are both CZ; the single-qubit
/// rotations realize local complementation at graph level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    Cz(QubitId, QubitId),
    /// exp(−iπX/4)
    XRot(QubitId),
    /// exp(iπZ/4)
    ZRot(QubitId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Local(Gate),
    Send { qubit: QubitId, to: usize },
}

/// One trace entry: protocol step tag, acting party, and the operation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TraceEvent {
    pub step: usize,
    pub actor: usize,
    pub kind: EventKind,
}

/// Ordered event log plus the initial qubit ownership.
#[derive(Clone, Debug)]
pub struct LoncTrace {
    pub parties: usize,
    pub initial_owners: Vec<(QubitId, usize)>,
    pub events: Vec<TraceEvent>,
}

impl LoncTrace {
    /// Audit export: one row per event with the step tag as the round label.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .events
            .iter()
            .map(|e| match e.kind {
                EventKind::Local(Gate::Cz(a, b)) => serde_json::json!({
                    "round": e.step, "actor": e.actor, "kind": "cz",
                    "qubits": [a.to_string(), b.to_string()],
                }),
                EventKind::Local(Gate::XRot(q)) => serde_json::json!({
                    "round": e.step, "actor": e.actor, "kind": "x_rot",
                    "qubit": q.to_string(),
                }),
                EventKind::Local(Gate::ZRot(q)) => serde_json::json!({
                    "round": e.step, "actor": e.actor, "kind": "z_rot",
                    "qubit": q.to_string(),
                }),
                EventKind::Send { qubit, to } => serde_json::json!({
                    "round": e.step, "actor": e.actor, "kind": "send",
                    "qubit": qubit.to_string(), "to": to,
                }),
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Validation outcome: the send-round count and any discipline violations.
#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub valid: bool,
    pub rounds: usize,
    pub sends_per_round: Vec<usize>,
    pub violations: Vec<String>,
}

/// Check direction (i → i+1 only), synchronous grouping of sends (ownership
/// within a send round is judged against the pre-round snapshot), and that
/// local operations touch only qubits their actor owns. Violations are
/// reported, not raised.
pub fn validate_trace(trace: &LoncTrace, max_rounds: usize) -> TraceReport {
    let mut owner: std::collections::BTreeMap<QubitId, usize> =
        trace.initial_owners.iter().copied().collect();
    let mut violations = Vec::new();
    let mut sends_per_round = Vec::new();

    let mut idx = 0;
    let events = &trace.events;
    while idx < events.len() {
        match events[idx].kind {
            EventKind::Local(gate) => {
                let actor = events[idx].actor;
                let touched: Vec<QubitId> = match gate {
                    Gate::Cz(a, b) => vec![a, b],
                    Gate::XRot(q) | Gate::ZRot(q) => vec![q],
                };
                for q in touched {
                    match owner.get(&q) {
                        Some(&o) if o == actor => {}
                        Some(&o) => violations.push(format!(
                            "step {}: party {actor} acts on {q} owned by {o}",
                            events[idx].step
                        )),
                        None => violations
                            .push(format!("step {}: unknown qubit {q}", events[idx].step)),
                    }
                }
                idx += 1;
            }
            EventKind::Send { .. } => {
                // A maximal consecutive run of sends forms one synchronous round.
                let snapshot = owner.clone();
                let mut sent_here: Vec<QubitId> = Vec::new();
                let mut count = 0;
                while idx < events.len() {
                    let ev = &events[idx];
                    let EventKind::Send { qubit, to } = ev.kind else {
                        break;
                    };
                    if to != ev.actor + 1 {
                        violations.push(format!(
                            "step {}: send {} → {} is not to the next party",
                            ev.step, ev.actor, to
                        ));
                    }
                    if to > trace.parties {
                        violations.push(format!("step {}: destination {to} out of range", ev.step));
                    }
                    match snapshot.get(&qubit) {
                        Some(&o) if o == ev.actor => {}
                        _ => violations.push(format!(
                            "step {}: party {} sends {qubit} it does not own",
                            ev.step, ev.actor
                        )),
                    }
                    if sent_here.contains(&qubit) {
                        violations
                            .push(format!("step {}: {qubit} sent twice in one round", ev.step));
                    }
                    sent_here.push(qubit);
                    owner.insert(qubit, to);
                    count += 1;
                    idx += 1;
                }
                sends_per_round.push(count);
            }
        }
    }
    let rounds = sends_per_round.len();
    if rounds > max_rounds {
        violations.push(format!("{rounds} send rounds exceed the budget {max_rounds}"));
    }
    TraceReport {
        valid: violations.is_empty(),
        rounds,
        sends_per_round,
        violations,
    }
}

/// Result of running the preparation protocol.
#[derive(Clone, Debug)]
pub struct ClusterPreparation {
    pub trace: LoncTrace,
    /// Final graph over all 2N−1 vertices.
    pub final_graph: Multigraph,
    /// Spine qubits (i, 1) for i = 0 … N−1, in path order.
    pub spine: Vec<QubitId>,
    pub isolated: Vec<QubitId>,
    /// Induced graph on the spine; equals the N-path when the protocol ran
    /// correctly.
    pub spine_graph: Multigraph,
    pub state_check: Option<StateCheckReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StateCheckReport {
    /// max_v |⟨path-graph-state ⊗ v | ψ⟩| over unit vectors v on the
    /// isolated qubits: 1 when the spine factor is exactly the cluster state.
    pub overlap: f64,
    pub pass: bool,
}

/// Vertex index of a protocol qubit: (0,1) ↦ 0, (i,1) ↦ 2i−1, (i,2) ↦ 2i.
fn qubit_index(q: QubitId) -> usize {
    if q.node == 0 {
        0
    } else {
        2 * q.node - 2 + q.reg
    }
}

/// Run the seven-step preparation of the N-qubit cluster state with two
/// one-way send rounds. Party i starts with qubits (i,1), (i,2); party 1
/// additionally holds (0,1); party N starts empty. Connect/disconnect are
/// CZ edge toggles and the step-4 local complementations realize the spine
/// edges. With `state_check` the circuit is also run on the state vector
/// (2N−1 ≤ 13 qubits) and compared against the cluster state up to local
/// phases on the isolated qubits.
pub fn prepare_cluster_protocol(n: usize, state_check: bool) -> Result<ClusterPreparation> {
    if n < 2 {
        return Err(Error::TooFewParties { min: 2, got: n });
    }
    let qubits = 2 * n - 1;
    if state_check && qubits > 13 {
        return Err(Error::InvalidParameter(format!(
            "state check limited to 13 qubits, protocol needs {qubits}"
        )));
    }

    let q = |node: usize, reg: usize| QubitId { node, reg };
    let mut initial_owners = vec![(q(0, 1), 1)];
    for i in 1..n {
        initial_owners.push((q(i, 1), i));
        initial_owners.push((q(i, 2), i));
    }

    let mut graph = Multigraph::edgeless(qubits, 2)?;
    let mut psi = state_check.then(|| PureState::plus_states(qubits, 2).unwrap());
    let mut events = Vec::new();

    let toggle = |graph: &mut Multigraph, psi: &mut Option<PureState>, a: QubitId, b: QubitId| {
        graph.add_edge(qubit_index(a), qubit_index(b), 1).unwrap();
        if let Some(state) = psi.as_mut() {
            state.apply_cz(qubit_index(a), qubit_index(b), 1);
        }
    };

    // Step 1: each party links its register pair; party 1 links (0,1)–(1,1).
    for i in 1..n {
        toggle(&mut graph, &mut psi, q(i, 1), q(i, 2));
        events.push(TraceEvent {
            step: 1,
            actor: i,
            kind: EventKind::Local(Gate::Cz(q(i, 1), q(i, 2))),
        });
    }
    toggle(&mut graph, &mut psi, q(0, 1), q(1, 1));
    events.push(TraceEvent {
        step: 1,
        actor: 1,
        kind: EventKind::Local(Gate::Cz(q(0, 1), q(1, 1))),
    });

    // Step 2: first synchronous round — every (i,2) moves one step right.
    for i in 1..n {
        events.push(TraceEvent {
            step: 2,
            actor: i,
            kind: EventKind::Send { qubit: q(i, 2), to: i + 1 },
        });
    }

    // Step 3: link the received qubit to the local spine qubit.
    for i in 2..n {
        toggle(&mut graph, &mut psi, q(i, 1), q(i - 1, 2));
        events.push(TraceEvent {
            step: 3,
            actor: i,
            kind: EventKind::Local(Gate::Cz(q(i, 1), q(i - 1, 2))),
        });
    }

    // Step 4: local complementation at every (i,2); its neighbours are
    // (i,1) and — except at the end of the line — (i+1,1), so this creates
    // the spine edges.
    for i in 1..n {
        let v = qubit_index(q(i, 2));
        let lc_unitaries = lc_local_clifford_qubit(&graph, v)?;
        if let Some(state) = psi.as_mut() {
            for (site, u) in lc_unitaries.iter().enumerate() {
                state.apply_single(site, u);
            }
        }
        graph = graph.local_complementation(v)?;
        events.push(TraceEvent {
            step: 4,
            actor: i + 1,
            kind: EventKind::Local(Gate::XRot(q(i, 2))),
        });
        events.push(TraceEvent {
            step: 4,
            actor: i,
            kind: EventKind::Local(Gate::ZRot(q(i, 1))),
        });
        if i + 1 < n {
            events.push(TraceEvent {
                step: 4,
                actor: i + 1,
                kind: EventKind::Local(Gate::ZRot(q(i + 1, 1))),
            });
        }
    }

    // Step 5: undo the step-3 links.
    for i in 2..n {
        toggle(&mut graph, &mut psi, q(i, 1), q(i - 1, 2));
        events.push(TraceEvent {
            step: 5,
            actor: i,
            kind: EventKind::Local(Gate::Cz(q(i, 1), q(i - 1, 2))),
        });
    }

    // Step 6: second synchronous round — every (i,1) moves one step right.
    for i in 1..n {
        events.push(TraceEvent {
            step: 6,
            actor: i,
            kind: EventKind::Send { qubit: q(i, 1), to: i + 1 },
        });
    }

    // Step 7: detach the carrier qubits; the spine path remains.
    for i in 2..=n {
        toggle(&mut graph, &mut psi, q(i - 1, 1), q(i - 1, 2));
        events.push(TraceEvent {
            step: 7,
            actor: i,
            kind: EventKind::Local(Gate::Cz(q(i - 1, 1), q(i - 1, 2))),
        });
    }

    let spine: Vec<QubitId> = std::iter::once(q(0, 1))
        .chain((1..n).map(|i| q(i, 1)))
        .collect();
    let isolated: Vec<QubitId> = (1..n).map(|i| q(i, 2)).collect();

    // Induced spine graph in path order.
    let mut spine_edges = Vec::new();
    for (a_pos, a) in spine.iter().enumerate() {
        for (b_pos, b) in spine.iter().enumerate().skip(a_pos + 1) {
            let w = graph.weight(qubit_index(*a), qubit_index(*b));
            if w != 0 {
                spine_edges.push((a_pos, b_pos, w as u64));
            }
        }
    }
    let spine_graph = Multigraph::new(n, 2, &spine_edges)?;

    let state_check = match psi {
        None => None,
        Some(state) => Some(state_overlap_report(&state, &spine, &isolated, n)?),
    };

    Ok(ClusterPreparation {
        trace: LoncTrace { parties: n, initial_owners, events },
        final_graph: graph,
        spine,
        isolated,
        spine_graph,
        state_check,
    })
}

/// Overlap of the final state with (N-path cluster state on the spine) ⊗
/// (anything on the isolated qubits): reshape into a spine × isolated
/// matrix M and take ‖M†·g‖, the best overlap over unit vectors on the
/// isolated side.
fn state_overlap_report(
    state: &PureState,
    spine: &[QubitId],
    isolated: &[QubitId],
    n: usize,
) -> Result<StateCheckReport> {
    let target = graph_state(&Multigraph::line(n, 2)?)?;
    let qubits = spine.len() + isolated.len();
    let spine_idx: Vec<usize> = spine.iter().map(|&q| qubit_index(q)).collect();
    let iso_idx: Vec<usize> = isolated.iter().map(|&q| qubit_index(q)).collect();
    let iso_dim = 1usize << isolated.len();
    let mut w = vec![num_complex::Complex64::new(0.0, 0.0); iso_dim];
    for (flat, amp) in state.amplitudes().iter().enumerate() {
        let bit = |site: usize| (flat >> (qubits - 1 - site)) & 1;
        let mut s = 0;
        for &site in &spine_idx {
            s = (s << 1) | bit(site);
        }
        let mut v = 0;
        for &site in &iso_idx {
            v = (v << 1) | bit(site);
        }
        w[v] += target.amplitudes()[s].conj() * amp;
    }
    let overlap = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(StateCheckReport { overlap, pass: overlap >= 1.0 - crate::NORM_TOL })
}

// ---------------------------------------------------------------------------
// Brute-force strategy optimization
// ---------------------------------------------------------------------------

/// Maximum of a correlator functional over all deterministic strategies in
/// which party i (1-based) outputs ±1 as a function of the inputs of
/// parties max(1, i−t) … i. Shared randomness cannot beat a deterministic
/// maximum of a linear functional, so this bounds the randomized model too.
///
/// `alphabets[p]` lists the admissible settings of party p (0-based); a
/// party whose setting never varies carries a singleton alphabet. Every
/// party visible to a functional term must have its input determined — by
/// the term itself or by a singleton alphabet.
pub fn brute_force_lonc_max(
    functional: &CorrelatorFunctional,
    n: usize,
    t: usize,
    alphabets: &[Vec<usize>],
) -> Result<f64> {
    if alphabets.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} alphabets for {n} parties",
            alphabets.len()
        )));
    }
    if alphabets.iter().any(Vec::is_empty) {
        return Err(Error::InvalidParameter("empty input alphabet".into()));
    }

    // Visible upstream windows (0-based party indexing internally).
    let visible: Vec<Vec<usize>> = (0..n)
        .map(|i| (i.saturating_sub(t)..=i).collect())
        .collect();

    // Table sizes and enumeration budget.
    let table_sizes: Vec<usize> = visible
        .iter()
        .map(|vis| vis.iter().map(|&p| alphabets[p].len()).product())
        .collect();
    let mut budget = 1f64;
    for &ts in &table_sizes {
        if ts > 63 {
            return Err(Error::EnumerationBudget(f64::INFINITY));
        }
        budget *= (1u64 << ts) as f64;
        if budget > 1e8 {
            return Err(Error::EnumerationBudget(budget));
        }
    }

    // Validate terms: settings admissible and all visible inputs determined.
    for (_, factors) in &functional.terms {
        let mut fixed: Vec<Option<usize>> = vec![None; n];
        for &(p, s) in factors {
            if p >= n {
                return Err(Error::PartyOutOfRange(p, n));
            }
            if !alphabets[p].contains(&s) {
                return Err(Error::AmbiguousFunctional(format!(
                    "setting {s} of party {p} is outside its alphabet"
                )));
            }
            if fixed[p].is_some() {
                return Err(Error::ConflictingSettings(p));
            }
            fixed[p] = Some(s);
        }
        for &(p, _) in factors {
            for &up in &visible[p] {
                if fixed[up].is_none() && alphabets[up].len() > 1 {
                    return Err(Error::AmbiguousFunctional(format!(
                        "party {up} feeds a term party but its input varies and is unfixed"
                    )));
                }
            }
        }
    }

    // Pre-resolve each term: the full input tuple and the term's parties.
    struct Prepared {
        coefficient: f64,
        parties: Vec<usize>,
        inputs: Vec<usize>,
    }
    let prepared: Vec<Prepared> = functional
        .terms
        .iter()
        .map(|(coefficient, factors)| {
            let mut inputs: Vec<usize> = alphabets.iter().map(|a| a[0]).collect();
            for &(p, s) in factors {
                inputs[p] = s;
            }
            Prepared {
                coefficient: *coefficient,
                parties: factors.iter().map(|&(p, _)| p).collect(),
                inputs,
            }
        })
        .collect();

    // Table index of party p's visible inputs under a full input tuple.
    let table_index = |p: usize, inputs: &[usize]| -> usize {
        let mut idx = 0;
        for &up in &visible[p] {
            let slot = alphabets[up]
                .iter()
                .position(|&s| s == inputs[up])
                .expect("validated above");
            idx = idx * alphabets[up].len() + slot;
        }
        idx
    };

    // Odometer over all strategy tuples; each strategy is a sign table
    // packed into a u64 (bit set = output −1).
    let mut tables = vec![0u64; n];
    let mut best = f64::NEG_INFINITY;
    loop {
        let mut value = 0.0;
        for term in &prepared {
            let mut sign = 1i32;
            for &p in &term.parties {
                if (tables[p] >> table_index(p, &term.inputs)) & 1 == 1 {
                    sign = -sign;
                }
            }
            value += term.coefficient * sign as f64;
        }
        best = best.max(value);

        // Advance the odometer.
        let mut carry = true;
        for (p, table) in tables.iter_mut().enumerate() {
            if !carry {
                break;
            }
            *table += 1;
            if *table == (1u64 << table_sizes[p]) {
                *table = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    Ok(best)
}

/// Input alphabets for the GHZ-line scenario: party 1 chooses between
/// settings {0, 1}, the middle parties always measure setting 1, and the
/// last party chooses among {0, 1, 2}.
pub fn ghz_line_lonc_alphabets(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|p| {
            if p == 0 {
                vec![0, 1]
            } else if p == n - 1 {
                vec![0, 1, 2]
            } else {
                vec![1]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::ghz_line_functional;

    #[test]
    fn protocol_builds_the_path_for_small_n() {
        for n in 2..=12usize {
            let prep = prepare_cluster_protocol(n, false).unwrap();
            let report = validate_trace(&prep.trace, 2);
            assert!(report.valid, "N = {n}: {:?}", report.violations);
            assert_eq!(report.rounds, 2, "N = {n}");
            assert_eq!(report.sends_per_round, vec![n - 1, n - 1]);
            assert_eq!(prep.spine_graph, Multigraph::line(n, 2).unwrap(), "N = {n}");
            for q in &prep.isolated {
                let v = qubit_index(*q);
                assert_eq!(prep.final_graph.degree(v).unwrap(), 0, "N = {n}, {q}");
            }
        }
        assert!(prepare_cluster_protocol(1, false).is_err());
    }

    #[test]
    fn protocol_state_check_small_n() {
        for n in [2usize, 3, 4] {
            let prep = prepare_cluster_protocol(n, true).unwrap();
            let check = prep.state_check.unwrap();
            assert!(check.pass, "N = {n}: overlap {}", check.overlap);
        }
        // Beyond 13 qubits the state check refuses to run.
        assert!(prepare_cluster_protocol(8, true).is_err());
        assert!(prepare_cluster_protocol(8, false).is_ok());
    }

    #[test]
    fn validator_flags_direction_and_budget() {
        let q = |node: usize, reg: usize| QubitId { node, reg };
        // Backwards send.
        let trace = LoncTrace {
            parties: 3,
            initial_owners: vec![(q(1, 1), 2)],
            events: vec![TraceEvent {
                step: 1,
                actor: 2,
                kind: EventKind::Send { qubit: q(1, 1), to: 1 },
            }],
        };
        let report = validate_trace(&trace, 2);
        assert!(!report.valid);
        assert!(report.violations[0].contains("not to the next party"));

        // Three send phases against a budget of two.
        let mut events = Vec::new();
        for step in [1usize, 3, 5] {
            events.push(TraceEvent {
                step,
                actor: step,
                kind: EventKind::Send { qubit: q(step, 1), to: step + 1 },
            });
            events.push(TraceEvent {
                step: step + 1,
                actor: step + 1,
                kind: EventKind::Local(Gate::XRot(q(step, 1))),
            });
        }
        let trace = LoncTrace {
            parties: 6,
            initial_owners: vec![(q(1, 1), 1), (q(3, 1), 3), (q(5, 1), 5)],
            events,
        };
        let report = validate_trace(&trace, 2);
        assert_eq!(report.rounds, 3);
        assert!(!report.valid);

        // Acting on an unowned qubit.
        let trace = LoncTrace {
            parties: 2,
            initial_owners: vec![(q(1, 1), 1)],
            events: vec![TraceEvent {
                step: 1,
                actor: 2,
                kind: EventKind::Local(Gate::ZRot(q(1, 1))),
            }],
        };
        assert!(!validate_trace(&trace, 2).valid);
    }

    #[test]
    fn trace_json_has_one_row_per_event() {
        let prep = prepare_cluster_protocol(3, false).unwrap();
        let json = prep.trace.to_json();
        assert_eq!(json.as_array().unwrap().len(), prep.trace.events.len());
    }

    #[test]
    fn brute_force_ghz_line_bounds() {
        // t < n−1 caps the functional at 4; t = n−1 lets the input of the
        // first party reach the last one and the algebraic maximum 6 appears.
        for (n, t, expect) in [
            (3usize, 1usize, 4.0),
            (4, 1, 4.0),
            (4, 2, 4.0),
            (3, 2, 6.0),
        ] {
            let f = ghz_line_functional(n).unwrap();
            let max =
                brute_force_lonc_max(&f, n, t, &ghz_line_lonc_alphabets(n)).unwrap();
            assert_eq!(max, expect, "n = {n}, t = {t}");
        }
    }

    #[test]
    fn brute_force_monotone_in_t() {
        let n = 4;
        let f = ghz_line_functional(n).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for t in 0..=3 {
            let max = brute_force_lonc_max(&f, n, t, &ghz_line_lonc_alphabets(n)).unwrap();
            assert!(max >= prev, "t = {t}");
            prev = max;
        }
    }

    #[test]
    fn brute_force_input_validation() {
        let f = ghz_line_functional(4).unwrap();
        // Middle parties with free inputs upstream of the last party are
        // ambiguous: the term cannot be evaluated under leaking.
        let free_middles: Vec<Vec<usize>> =
            vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1, 2]];
        assert!(matches!(
            brute_force_lonc_max(&f, 4, 2, &free_middles),
            Err(Error::AmbiguousFunctional(_))
        ));
        // Budget blow-up is reported rather than attempted.
        let wide: Vec<Vec<usize>> = (0..6).map(|_| (0..8).collect()).collect();
        let wide_f = CorrelatorFunctional {
            terms: vec![(1.0, vec![(0, 0), (5, 0)])],
            bound: 1.0,
        };
        assert!(matches!(
            brute_force_lonc_max(&wide_f, 6, 3, &wide),
            Err(Error::EnumerationBudget(_))
        ));
    }
}
