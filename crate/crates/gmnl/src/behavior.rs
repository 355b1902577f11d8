//! Behaviors: conditional outcome tables p(a⃗ | x⃗) over setting tuples.
//!
//! A behavior is the bridge between states and inequalities: quantum states
//! with measurement settings produce behaviors, and every Bell-type
//! functional in this crate is evaluated on a behavior, so hand-built
//! no-signalling boxes share the code path with quantum statistics.
//! Outcomes are exponents a with the physical outcome ω^a; a product of
//! outcomes equal to ω^t is the linear event Σ cᵢ·aᵢ ≡ t (mod d).

use std::collections::BTreeMap;

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{omega_pow, outcome_distribution, Assignment, Observable, PureState};

/// Measurement scenario: per-party setting counts and the outcome dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    d: usize,
    settings: Vec<usize>,
}

impl Scenario {
    pub fn new(d: usize, settings: Vec<usize>) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension(d));
        }
        if settings.is_empty() || settings.contains(&0) {
            return Err(Error::InvalidParameter(
                "every party needs at least one setting".into(),
            ));
        }
        Ok(Scenario { d, settings })
    }

    pub fn parties(&self) -> usize {
        self.settings.len()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn setting_counts(&self) -> &[usize] {
        &self.settings
    }

    pub fn setting_count(&self, party: usize) -> usize {
        self.settings[party]
    }

    fn check_party(&self, party: usize) -> Result<()> {
        if party < self.parties() {
            Ok(())
        } else {
            Err(Error::PartyOutOfRange(party, self.parties()))
        }
    }

    fn check_setting(&self, party: usize, setting: usize) -> Result<()> {
        self.check_party(party)?;
        if setting < self.settings[party] {
            Ok(())
        } else {
            Err(Error::SettingOutOfRange {
                party,
                setting,
                count: self.settings[party],
            })
        }
    }

    /// Flat index of a full setting tuple (party 0 most significant).
    pub fn setting_index(&self, x: &[usize]) -> usize {
        debug_assert_eq!(x.len(), self.parties());
        x.iter()
            .zip(&self.settings)
            .fold(0, |acc, (&xi, &c)| acc * c + xi)
    }

    pub fn setting_tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.settings
            .iter()
            .map(|&c| 0..c)
            .multi_cartesian_product()
    }

    pub fn outcome_tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.parties())
            .map(|_| 0..self.d)
            .multi_cartesian_product()
    }

    fn outcome_count(&self) -> usize {
        self.d.pow(self.parties() as u32)
    }

    fn setting_tuple_count(&self) -> usize {
        self.settings.iter().product()
    }
}

/// Conditional outcome table p(a⃗ | x⃗). Outcome tuples are flattened base-d
/// with party 0 as the most significant digit.
#[derive(Clone, Debug)]
pub struct Behavior {
    scenario: Scenario,
    table: Vec<Vec<f64>>,
}

impl Behavior {
    pub fn new(scenario: Scenario, table: Vec<Vec<f64>>) -> Result<Self> {
        if table.len() != scenario.setting_tuple_count() {
            return Err(Error::MalformedBehavior(format!(
                "{} setting rows for {} setting tuples",
                table.len(),
                scenario.setting_tuple_count()
            )));
        }
        for row in &table {
            if row.len() != scenario.outcome_count() {
                return Err(Error::MalformedBehavior(
                    "outcome row length does not match d^n".into(),
                ));
            }
            if row.iter().any(|&p| p < -1e-12) {
                return Err(Error::MalformedBehavior("negative probability".into()));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::MalformedBehavior(format!(
                    "conditional distribution sums to {sum}"
                )));
            }
        }
        Ok(Behavior { scenario, table })
    }

    /// Uniformly random outcomes for every setting tuple.
    pub fn uniform(scenario: Scenario) -> Self {
        let rows = scenario.setting_tuple_count();
        let cols = scenario.outcome_count();
        Behavior {
            scenario,
            table: vec![vec![1.0 / cols as f64; cols]; rows],
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn prob(&self, x: &[usize], a: &[usize]) -> f64 {
        let row = self.scenario.setting_index(x);
        let col = a.iter().fold(0, |acc, &ai| acc * self.scenario.d + ai);
        self.table[row][col]
    }

    fn row(&self, x: &[usize]) -> &[f64] {
        &self.table[self.scenario.setting_index(x)]
    }

    fn decode_outcome(&self, mut flat: usize) -> Vec<usize> {
        let n = self.scenario.parties();
        let mut a = vec![0; n];
        for slot in (0..n).rev() {
            a[slot] = flat % self.scenario.d;
            flat /= self.scenario.d;
        }
        a
    }

    /// Σ_a ω^{Σ powerᵢ·aᵢ} p(a⃗|x⃗) for the given (party, setting, power)
    /// term, marginalizing unreferenced parties. Every choice of settings for
    /// the unreferenced parties is evaluated; a spread above 1e−6 means the
    /// marginal is setting-dependent and the behavior is rejected as
    /// signalling.
    pub fn correlator(&self, term: &[(usize, usize, u32)]) -> Result<Complex64> {
        self.check_term(term, false)?;
        let values = self.for_each_completion(term, |row| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (flat, &p) in row.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let a = self.decode_outcome(flat);
                let phase: i64 = term
                    .iter()
                    .map(|&(party, _, power)| power as i64 * a[party] as i64)
                    .sum();
                acc += omega_pow(self.scenario.d, phase) * p;
            }
            acc
        })?;
        let first = values[0];
        let spread = values
            .iter()
            .map(|v| (v - first).norm())
            .fold(0.0, f64::max);
        if spread > 1e-6 {
            return Err(Error::SignallingDetected(spread));
        }
        Ok(first)
    }

    /// P(Σ powerᵢ·aᵢ ≡ target mod d) under the given settings, marginalizing
    /// unreferenced parties with the same setting-independence check as
    /// [`Behavior::correlator`].
    pub fn event_probability(&self, term: &[(usize, usize, u32)], target: u32) -> Result<f64> {
        self.check_term(term, true)?;
        let d = self.scenario.d as i64;
        let values = self.for_each_completion(term, |row| {
            let mut acc = 0.0;
            for (flat, &p) in row.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let a = self.decode_outcome(flat);
                let phase: i64 = term
                    .iter()
                    .map(|&(party, _, power)| power as i64 * a[party] as i64)
                    .sum();
                if phase.rem_euclid(d) == target as i64 {
                    acc += p;
                }
            }
            acc
        })?;
        let first = values[0];
        let spread = values
            .iter()
            .map(|v| (v - first).abs())
            .fold(0.0, f64::max);
        if spread > 1e-6 {
            return Err(Error::SignallingDetected(spread));
        }
        Ok(first)
    }

    fn check_term(&self, term: &[(usize, usize, u32)], allow_zero_power: bool) -> Result<()> {
        let mut seen = vec![false; self.scenario.parties()];
        for &(party, setting, power) in term {
            self.scenario.check_setting(party, setting)?;
            if seen[party] {
                return Err(Error::ConflictingSettings(party));
            }
            seen[party] = true;
            let max = self.scenario.d as u32;
            let ok = if allow_zero_power {
                power < max
            } else {
                power >= 1 && power < max
            };
            if !ok {
                return Err(Error::BadPower(power as u64, self.scenario.d));
            }
        }
        Ok(())
    }

    /// Evaluate `f` on the conditional row of every completion of the term's
    /// settings over the unreferenced parties.
    fn for_each_completion<T>(
        &self,
        term: &[(usize, usize, u32)],
        f: impl Fn(&[f64]) -> T,
    ) -> Result<Vec<T>> {
        let n = self.scenario.parties();
        let mut fixed: Vec<Option<usize>> = vec![None; n];
        for &(party, setting, _) in term {
            fixed[party] = Some(setting);
        }
        let free: Vec<usize> = (0..n).filter(|&p| fixed[p].is_none()).collect();
        let mut x = vec![0; n];
        if free.is_empty() {
            for (p, s) in fixed.iter().enumerate() {
                x[p] = s.unwrap_or(0);
            }
            return Ok(vec![f(self.row(&x))]);
        }
        let choices = free
            .iter()
            .map(|&p| 0..self.scenario.settings[p])
            .multi_cartesian_product();
        let mut out = Vec::new();
        for combo in choices {
            for (p, s) in fixed.iter().enumerate() {
                if let Some(s) = s {
                    x[p] = *s;
                }
            }
            for (slot, &p) in free.iter().enumerate() {
                x[p] = combo[slot];
            }
            out.push(f(self.row(&x)));
        }
        Ok(out)
    }

    /// Post-select on the event Σ powerᵢ·aᵢ ≡ target (mod d) measured with
    /// the given settings on the conditioning parties. The result is a
    /// behavior on the remaining parties (original party order preserved).
    pub fn condition(&self, cond: &[(usize, usize, u32)], target: u32) -> Result<Behavior> {
        self.check_term(cond, true)?;
        let n = self.scenario.parties();
        let mut cond_setting: Vec<Option<usize>> = vec![None; n];
        for &(party, setting, _) in cond {
            cond_setting[party] = Some(setting);
        }
        let survivors: Vec<usize> = (0..n).filter(|&p| cond_setting[p].is_none()).collect();
        if survivors.is_empty() {
            return Err(Error::InvalidParameter(
                "conditioning on every party leaves no behavior".into(),
            ));
        }
        let new_scenario = Scenario::new(
            self.scenario.d,
            survivors.iter().map(|&p| self.scenario.settings[p]).collect(),
        )?;
        let d = self.scenario.d;
        let mut table = Vec::with_capacity(new_scenario.setting_tuple_count());
        for xs in new_scenario.setting_tuples() {
            let mut x = vec![0; n];
            for (p, s) in cond_setting.iter().enumerate() {
                if let Some(s) = s {
                    x[p] = *s;
                }
            }
            for (slot, &p) in survivors.iter().enumerate() {
                x[p] = xs[slot];
            }
            let row = self.row(&x);
            let mut new_row = vec![0.0; new_scenario.outcome_count()];
            let mut event_prob = 0.0;
            for (flat, &p) in row.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let a = self.decode_outcome(flat);
                let phase: i64 = cond
                    .iter()
                    .map(|&(party, _, power)| power as i64 * a[party] as i64)
                    .sum();
                if phase.rem_euclid(d as i64) != target as i64 {
                    continue;
                }
                event_prob += p;
                let col = survivors.iter().fold(0, |acc, &sp| acc * d + a[sp]);
                new_row[col] += p;
            }
            if event_prob < 1e-9 {
                return Err(Error::ZeroProbabilityCondition(event_prob));
            }
            for v in &mut new_row {
                *v /= event_prob;
            }
            table.push(new_row);
        }
        Behavior::new(new_scenario, table)
    }

    /// Check every marginal-invariance constraint: for each party, the
    /// marginal on the other parties must not depend on that party's setting.
    /// Returns whether the behavior passes at `tol` and the worst deviation.
    pub fn is_no_signalling(&self, tol: f64) -> (bool, f64) {
        let n = self.scenario.parties();
        let d = self.scenario.d;
        let mut worst = 0.0f64;
        for p in 0..n {
            if self.scenario.settings[p] < 2 {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&q| q != p).collect();
            let rest_count = d.pow(others.len() as u32);
            let combos = others
                .iter()
                .map(|&q| 0..self.scenario.settings[q])
                .multi_cartesian_product();
            for combo in combos {
                let mut reference: Option<Vec<f64>> = None;
                for s in 0..self.scenario.settings[p] {
                    let mut x = vec![0; n];
                    x[p] = s;
                    for (slot, &q) in others.iter().enumerate() {
                        x[q] = combo[slot];
                    }
                    let mut marg = vec![0.0; rest_count];
                    for (flat, &v) in self.row(&x).iter().enumerate() {
                        let a = self.decode_outcome(flat);
                        let col = others.iter().fold(0, |acc, &q| acc * d + a[q]);
                        marg[col] += v;
                    }
                    match &reference {
                        None => reference = Some(marg),
                        Some(r) => {
                            for (a, b) in r.iter().zip(&marg) {
                                worst = worst.max((a - b).abs());
                            }
                        }
                    }
                }
            }
        }
        (worst <= tol, worst)
    }
}

/// Statistics of measuring `settings[p][x]` on party p of a pure state.
pub fn quantum_behavior(psi: &PureState, settings: &[Vec<Observable>]) -> Result<Behavior> {
    quantum_behavior_mixed(psi, 1.0, settings)
}

/// Statistics on ρ(η) = η|ψ⟩⟨ψ| + (1−η) 𝟙/d^n. The white-noise part of a
/// product measurement factorizes into eigenspace ranks, so the table is
/// the exact convex mixture.
pub fn quantum_behavior_mixed(
    psi: &PureState,
    eta: f64,
    settings: &[Vec<Observable>],
) -> Result<Behavior> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "visibility {eta} outside [0, 1]"
        )));
    }
    if settings.len() != psi.parties() {
        return Err(Error::ScenarioMismatch(format!(
            "{} setting lists for {} parties",
            settings.len(),
            psi.parties()
        )));
    }
    let d = psi.dimension();
    for list in settings {
        for o in list {
            if o.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: o.dim() });
            }
        }
    }
    let scenario = Scenario::new(d, settings.iter().map(Vec::len).collect())?;
    let mut table = Vec::with_capacity(scenario.setting_tuple_count());
    for x in scenario.setting_tuples() {
        let assign = Assignment::from_pairs(
            x.iter()
                .enumerate()
                .map(|(p, &s)| (p, settings[p][s].clone())),
        );
        let dist = outcome_distribution(psi, &assign)?;
        let mut row = dist.raw().to_vec();
        if eta < 1.0 {
            let mut noise = vec![1.0; row.len()];
            for (flat, v) in noise.iter_mut().enumerate() {
                let mut rest = flat;
                for p in (0..scenario.parties()).rev() {
                    let a = rest % d;
                    rest /= d;
                    *v *= settings[p][x[p]].outcome_multiplicity(a) / d as f64;
                }
            }
            for (q, nz) in row.iter_mut().zip(noise) {
                *q = eta * *q + (1.0 - eta) * nz;
            }
        }
        table.push(row);
    }
    Behavior::new(scenario, table)
}

/// JSON interchange format:
/// `{"parties": n, "d": d, "settings": [...], "p": {"x₀,x₁,…": [probs]}}`.
#[derive(Serialize, Deserialize)]
pub struct BehaviorFile {
    pub parties: usize,
    pub d: usize,
    pub settings: Vec<usize>,
    pub p: BTreeMap<String, Vec<f64>>,
}

impl BehaviorFile {
    pub fn from_behavior(b: &Behavior) -> Self {
        let mut p = BTreeMap::new();
        for x in b.scenario.setting_tuples() {
            let key = x.iter().map(ToString::to_string).join(",");
            p.insert(key, b.row(&x).to_vec());
        }
        BehaviorFile {
            parties: b.scenario.parties(),
            d: b.scenario.dimension(),
            settings: b.scenario.settings.clone(),
            p,
        }
    }

    pub fn to_behavior(&self) -> Result<Behavior> {
        let scenario = Scenario::new(self.d, self.settings.clone())?;
        let mut table = vec![Vec::new(); scenario.setting_tuple_count()];
        for (key, row) in &self.p {
            let x: Vec<usize> = key
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::MalformedBehavior(format!("bad setting key `{key}`")))
                })
                .collect::<Result<_>>()?;
            if x.len() != scenario.parties() {
                return Err(Error::MalformedBehavior(format!(
                    "setting key `{key}` has wrong arity"
                )));
            }
            for (&xi, &c) in x.iter().zip(scenario.setting_counts()) {
                if xi >= c {
                    return Err(Error::MalformedBehavior(format!(
                        "setting key `{key}` out of range"
                    )));
                }
            }
            table[scenario.setting_index(&x)] = row.clone();
        }
        if table.iter().any(Vec::is_empty) {
            return Err(Error::MalformedBehavior("missing setting tuples".into()));
        }
        Behavior::new(scenario, table)
    }
}
