//! The Bell-type functionals violated by cluster, caterpillar and GHZ
//! states, the CGLMP inequality and its monogamy relation, and the
//! measurement families that realize the quantum violations.
//!
//! Every evaluation takes a [`Behavior`], so hand-built no-signalling boxes
//! and quantum statistics share one code path; `*_settings` constructors
//! provide the measurement families for building the quantum behaviors.

use num_complex::Complex64;
use serde::Serialize;

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::multigraph::{is_prime, CaterpillarLabeling, Multigraph};
use crate::sim::{fourier, pauli_x, pauli_z, phase_u, Observable};
#[cfg(test)]
use crate::sim::Matrix;
use crate::NORM_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = "<=")]
    Leq,
    #[serde(rename = ">=")]
    Geq,
}

/// Outcome of evaluating one inequality: the achieved value against the
/// bound. `margin` is how far the value lies beyond the bound in the
/// violating direction (positive means violated).
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub bound: f64,
    pub direction: Direction,
    pub violated: bool,
    pub margin: f64,
    pub settings: String,
    pub tol: f64,
}

impl InequalityReport {
    pub fn evaluate(
        name: &str,
        lhs: f64,
        bound: f64,
        direction: Direction,
        settings: &str,
        tol: f64,
    ) -> Self {
        let margin = match direction {
            Direction::Leq => lhs - bound,
            Direction::Geq => bound - lhs,
        };
        InequalityReport {
            name: name.to_string(),
            lhs,
            bound,
            direction,
            violated: margin > tol,
            margin,
            settings: settings.to_string(),
            tol,
        }
    }
}

/// Linear combination of ±1-observable correlators with a classical bound.
#[derive(Clone, Debug)]
pub struct CorrelatorFunctional {
    pub terms: Vec<(f64, Vec<(usize, usize)>)>, // (coefficient, [(party, setting)])
    pub bound: f64,
}

/// Evaluate a correlator functional on a d = 2 behavior.
pub fn evaluate_functional(b: &Behavior, f: &CorrelatorFunctional) -> Result<f64> {
    if b.scenario().dimension() != 2 {
        return Err(Error::NotDichotomic(b.scenario().dimension()));
    }
    let mut acc = 0.0;
    for (coef, factors) in &f.terms {
        let term: Vec<(usize, usize, u32)> = factors.iter().map(|&(p, s)| (p, s, 1)).collect();
        acc += coef * b.correlator(&term)?.re;
    }
    Ok(acc)
}

fn real_correlator(b: &Behavior, term: &[(usize, usize, u32)]) -> Result<f64> {
    Ok(b.correlator(term)?.re)
}

// ---------------------------------------------------------------------------
// Four-partite cluster inequality
// ---------------------------------------------------------------------------

/// 2⟨A₀B₀⟩ + 2⟨C₀D₂⟩ + 2⟨A₁B₁D₂⟩ + I^{BCD} ≤ 8, with
/// I^{BCD} = ⟨C₀D₀⟩ + ⟨C₀D₁⟩ + ⟨B₀C₁D₀⟩ − ⟨B₀C₁D₁⟩.
/// Parties are ordered A, B, C, D; D has three settings.
pub fn theorem1_lhs(b: &Behavior, tol: f64) -> Result<InequalityReport> {
    let sc = b.scenario();
    if sc.dimension() != 2 || sc.parties() != 4 {
        return Err(Error::ScenarioMismatch("four qubit parties required".into()));
    }
    if sc.setting_counts() != [2, 2, 2, 3] {
        return Err(Error::ScenarioMismatch(format!(
            "setting counts {:?}, expected [2, 2, 2, 3]",
            sc.setting_counts()
        )));
    }
    let (a, bb, c, d) = (0, 1, 2, 3);
    let e = |term: &[(usize, usize, u32)]| real_correlator(b, term);
    let i_bcd = e(&[(c, 0, 1), (d, 0, 1)])?
        + e(&[(c, 0, 1), (d, 1, 1)])?
        + e(&[(bb, 0, 1), (c, 1, 1), (d, 0, 1)])?
        - e(&[(bb, 0, 1), (c, 1, 1), (d, 1, 1)])?;
    let lhs = 2.0 * e(&[(a, 0, 1), (bb, 0, 1)])?
        + 2.0 * e(&[(c, 0, 1), (d, 2, 1)])?
        + 2.0 * e(&[(a, 1, 1), (bb, 1, 1), (d, 2, 1)])?
        + i_bcd;
    Ok(InequalityReport::evaluate(
        "four_cluster_gmnl",
        lhs,
        8.0,
        Direction::Leq,
        "A,B,C: {Z, X}; D: {(Z+X)/√2, (Z−X)/√2, Z}",
        tol,
    ))
}

/// Measurement family for [`theorem1_lhs`]: A, B, C get {Z, X} and D gets
/// {(Z+X)/√2, (Z−X)/√2, Z}.
pub fn theorem1_settings() -> Vec<Vec<Observable>> {
    let z = pauli_z(2).unwrap();
    let x = pauli_x(2).unwrap();
    let zx = |sign: f64| {
        let m = z
            .matrix()
            .add(&x.matrix().scale(Complex64::new(sign, 0.0)))
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        Observable::new(m).unwrap()
    };
    vec![
        vec![z.clone(), x.clone()],
        vec![z.clone(), x.clone()],
        vec![z.clone(), x.clone()],
        vec![zx(1.0), zx(-1.0), z],
    ]
}

// ---------------------------------------------------------------------------
// Caterpillar inequality
// ---------------------------------------------------------------------------

/// The caterpillar functional with bound 2(2N − L). Party [L−1, 0] has
/// three settings; every other party two. Setting s of party [i, j] is the
/// printed measurement label `A_{[i,j];s}`.
pub fn caterpillar_lhs(
    b: &Behavior,
    lab: &CaterpillarLabeling,
    tol: f64,
) -> Result<InequalityReport> {
    let l = lab.spine_len();
    let n = lab.vertex_count();
    if l < 3 {
        return Err(Error::ScenarioMismatch(format!("spine length {l} < 3")));
    }
    let sc = b.scenario();
    if sc.dimension() != 2 || sc.parties() != n {
        return Err(Error::ScenarioMismatch(format!(
            "behavior has {} parties of dimension {}, labeling has {}",
            sc.parties(),
            sc.dimension(),
            n
        )));
    }
    let legs = lab.leg_counts();
    let pivot = lab.vertex(l - 1, 0).unwrap();
    for p in 0..n {
        let want = if p == pivot { 3 } else { 2 };
        if sc.setting_count(p) != want {
            return Err(Error::ScenarioMismatch(format!(
                "party {p} has {} settings, expected {want}",
                sc.setting_count(p)
            )));
        }
    }
    // Labeling consistency: the leg sums n_{k+2} over k ∈ (0, L−3) cover
    // every leg exactly once.
    let covered: usize = (0..=l - 3).map(|k| legs[k + 1]).sum();
    assert_eq!(covered, n - l, "leg bookkeeping broke");

    let v = |i: usize, j: usize| lab.vertex(i, j).unwrap();
    let e = |term: &[(usize, usize, u32)]| real_correlator(b, term);

    // Tail block: ⟨A_{[L−1];1}A_{[L];1}⟩ + ⟨A_{[L−2];0}A_{[L−1];1}A_{[L];0}·legs⟩
    //           − ⟨A_{[L−1];2}A_{[L];1}⟩ + ⟨A_{[L−2];0}A_{[L−1];2}A_{[L];0}·legs⟩
    let with_legs = |setting: usize| -> Vec<(usize, usize, u32)> {
        let mut t = vec![
            (v(l - 2, 0), 0, 1),
            (v(l - 1, 0), setting, 1),
            (v(l, 0), 0, 1),
        ];
        for j in 1..=legs[l - 2] {
            t.push((v(l - 1, j), 0, 1));
        }
        t
    };
    let tail = e(&[(v(l - 1, 0), 1, 1), (v(l, 0), 1, 1)])? + e(&with_legs(1))?
        - e(&[(v(l - 1, 0), 2, 1), (v(l, 0), 1, 1)])?
        + e(&with_legs(2))?;

    let mut lhs = tail;
    for k in 0..=l - 3 {
        let mut t: Vec<(usize, usize, u32)> = Vec::new();
        if k >= 1 {
            t.push((v(k, 0), 0, 1));
        }
        t.push((v(k + 1, 0), 1, 1));
        for j in 1..=legs[k] {
            t.push((v(k + 1, j), 0, 1));
        }
        t.push((v(k + 2, 0), 0, 1));
        lhs += 2.0 * e(&t)?;
        for leg in 1..=legs[k + 1] {
            lhs += 4.0 * e(&[(v(k + 2, 0), 0, 1), (v(k + 2, leg), 1, 1)])?;
        }
    }
    lhs += 2.0 * e(&[(v(l - 1, 0), 0, 1), (v(l, 0), 1, 1)])?;

    let bound = 2.0 * (2 * n - l) as f64;
    Ok(InequalityReport::evaluate(
        "caterpillar_gmnl",
        lhs,
        bound,
        Direction::Leq,
        "all parties {Z, X} except [L−1,0]: {Z, (X+Z)/√2, (X−Z)/√2}",
        tol,
    ))
}

/// Measurement family for the caterpillar inequality: every party {Z, X},
/// the pivot [L−1, 0] gets {Z, (X+Z)/√2, (X−Z)/√2}.
pub fn caterpillar_settings(lab: &CaterpillarLabeling) -> Vec<Vec<Observable>> {
    let z = pauli_z(2).unwrap();
    let x = pauli_x(2).unwrap();
    let xz = |sign: f64| {
        let m = x
            .matrix()
            .add(&z.matrix().scale(Complex64::new(sign, 0.0)))
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        Observable::new(m).unwrap()
    };
    let pivot = lab.vertex(lab.spine_len() - 1, 0).unwrap();
    (0..lab.vertex_count())
        .map(|p| {
            if p == pivot {
                vec![z.clone(), xz(1.0), xz(-1.0)]
            } else {
                vec![z.clone(), x.clone()]
            }
        })
        .collect()
}

/// Caterpillar graph, labeling, and behavior at visibility η in one call.
pub fn caterpillar_behavior(legs: &[usize], eta: f64) -> Result<(CaterpillarLabeling, Behavior)> {
    let g = Multigraph::caterpillar(2, legs)?;
    let lab = g.classify_caterpillar()?;
    let psi = crate::sim::graph_state(&g)?;
    let settings = caterpillar_settings(&lab);
    let b = crate::behavior::quantum_behavior_mixed(&psi, eta, &settings)?;
    Ok((lab, b))
}

/// Critical visibility (2N − L)/(2N − L + √2 − 1): above it the caterpillar
/// inequality is violated by ρ(η).
pub fn noise_threshold(n: usize, l: usize) -> Result<f64> {
    if l < 3 || n < l {
        return Err(Error::InvalidParameter(format!(
            "need L ≥ 3 and N ≥ L, got N = {n}, L = {l}"
        )));
    }
    let m = (2 * n - l) as f64;
    Ok(m / (m + std::f64::consts::SQRT_2 - 1.0))
}

// ---------------------------------------------------------------------------
// CGLMP and monogamy
// ---------------------------------------------------------------------------

/// The d-outcome CGLMP functional
/// I = Σ_k k [P(a_m = ω^k a_n)₍₁,₁₎ + P(a_n = ω^{k+1} a_m)₍₂,₁₎
///          + P(a_m = ω^k a_n)₍₂,₂₎ + P(a_n = ω^k a_m)₍₁,₂₎]
/// with explicit setting indices `(m₁, m₂)` and `(n₁, n₂)` for the two
/// parties. Classically I ≥ d − 1; quantum strategies go below.
pub fn cglmp_value_with_settings(
    b: &Behavior,
    m: usize,
    n: usize,
    m_settings: (usize, usize),
    n_settings: (usize, usize),
) -> Result<f64> {
    if m == n {
        return Err(Error::ScenarioMismatch("parties m and n must differ".into()));
    }
    let d = b.scenario().dimension();
    let inv = d as u32 - 1;
    let (m1, m2) = m_settings;
    let (n1, n2) = n_settings;
    // P(a_first − a_second ≡ k) under the two parties' given settings.
    let p_diff = |fp: usize, fs: usize, sp: usize, ss: usize, k: usize| {
        b.event_probability(&[(fp, fs, 1), (sp, ss, inv)], k as u32)
    };
    let mut total = 0.0;
    for k in 1..d {
        total += k as f64
            * (p_diff(m, m1, n, n1, k)?
                + p_diff(n, n1, m, m2, (k + 1) % d)?
                + p_diff(m, m2, n, n2, k)?
                + p_diff(n, n2, m, m1, k)?);
    }
    Ok(total)
}

/// [`cglmp_value_with_settings`] with the first two settings of each party.
pub fn cglmp_value(b: &Behavior, m: usize, n: usize) -> Result<f64> {
    cglmp_value_with_settings(b, m, n, (0, 1), (0, 1))
}

/// Monogamy relation I_{m,n} + d(1 − P(guess)) ≥ d − 1, where the guess event
/// is the linear outcome relation Σ powerᵢ·aᵢ ≡ target (mod d) over any set
/// of parties (typically: a third party's outcome matches party n's).
#[allow(clippy::too_many_arguments)]
pub fn monogamy_lhs(
    b: &Behavior,
    m: usize,
    n: usize,
    m_settings: (usize, usize),
    n_settings: (usize, usize),
    guess_event: &[(usize, usize, u32)],
    guess_target: u32,
    tol: f64,
) -> Result<InequalityReport> {
    let d = b.scenario().dimension() as f64;
    let cglmp = cglmp_value_with_settings(b, m, n, m_settings, n_settings)?;
    let p_guess = b.event_probability(guess_event, guess_target)?;
    let lhs = cglmp + d * (1.0 - p_guess);
    Ok(InequalityReport::evaluate(
        "cglmp_monogamy",
        lhs,
        d - 1.0,
        Direction::Geq,
        "CGLMP pair plus linear guessing event",
        tol,
    ))
}

/// ⟨M₁M₂⟩ ≥ ⟨M₁M₃⟩ + ⟨M₂M₃⟩ − 1 for ±1 observables readable from one joint
/// distribution. Each Mᵢ is a product over (party, setting) factors; all
/// referenced settings must be jointly measurable.
pub fn lemma1_check(
    b: &Behavior,
    m1: &[(usize, usize)],
    m2: &[(usize, usize)],
    m3: &[(usize, usize)],
) -> Result<bool> {
    if b.scenario().dimension() != 2 {
        return Err(Error::NotDichotomic(b.scenario().dimension()));
    }
    let mut merged: std::collections::BTreeMap<usize, usize> = Default::default();
    for &(p, s) in m1.iter().chain(m2).chain(m3) {
        if let Some(&prev) = merged.get(&p) {
            if prev != s {
                return Err(Error::ConflictingSettings(p));
            }
        } else {
            merged.insert(p, s);
        }
    }
    let pair = |a: &[(usize, usize)], c: &[(usize, usize)]| -> Result<f64> {
        // The product M_a·M_c reduces to the symmetric difference of supports.
        let mut count: std::collections::BTreeMap<usize, usize> = Default::default();
        for &(p, _) in a.iter().chain(c) {
            *count.entry(p).or_insert(0) += 1;
        }
        let term: Vec<(usize, usize, u32)> = count
            .iter()
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(&p, _)| (p, merged[&p], 1))
            .collect();
        if term.is_empty() {
            return Ok(1.0); // M² = 1
        }
        real_correlator(b, &term)
    };
    let lhs = pair(m1, m2)?;
    let rhs = pair(m1, m3)? + pair(m2, m3)? - 1.0;
    Ok(lhs >= rhs - NORM_TOL)
}

// ---------------------------------------------------------------------------
// GHZ on a line
// ---------------------------------------------------------------------------

/// ⟨A₁⁽¹⁾…A₁⁽ⁿ⁾⟩ + ⟨A₁⁽¹⁾…A₂⁽ⁿ⁾⟩ + ⟨A₀⁽¹⁾A₁⁽ⁿ⁾⟩ − ⟨A₀⁽¹⁾A₂⁽ⁿ⁾⟩
/// + 2⟨A₀⁽¹⁾A₀⁽ⁿ⁾⟩ ≤ 4 under t < n−1 rounds of one-way communication.
pub fn ghz_line_functional(n: usize) -> Result<CorrelatorFunctional> {
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let all_x = |last: usize| -> Vec<(usize, usize)> {
        (0..n - 1).map(|p| (p, 1)).chain([(n - 1, last)]).collect()
    };
    Ok(CorrelatorFunctional {
        terms: vec![
            (1.0, all_x(1)),
            (1.0, all_x(2)),
            (1.0, vec![(0, 0), (n - 1, 1)]),
            (-1.0, vec![(0, 0), (n - 1, 2)]),
            (2.0, vec![(0, 0), (n - 1, 0)]),
        ],
        bound: 4.0,
    })
}

pub fn ghz_line_lhs(b: &Behavior, tol: f64) -> Result<InequalityReport> {
    let n = b.scenario().parties();
    let f = ghz_line_functional(n)?;
    if b.scenario().setting_count(0) < 2 || b.scenario().setting_count(n - 1) < 3 {
        return Err(Error::ScenarioMismatch(
            "need two settings on the first party and three on the last".into(),
        ));
    }
    let lhs = evaluate_functional(b, &f)?;
    Ok(InequalityReport::evaluate(
        "ghz_line",
        lhs,
        f.bound,
        Direction::Leq,
        "A⁽¹⁾, middles: {Z, X}; A⁽ⁿ⁾: {Z, (X+Z)/√2, (X−Z)/√2}",
        tol,
    ))
}

/// Measurement family for [`ghz_line_lhs`]: setting 1 is X everywhere,
/// setting 0 is Z, and the last party's settings 1, 2 are (X±Z)/√2.
pub fn ghz_line_settings(n: usize) -> Result<Vec<Vec<Observable>>> {
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let z = pauli_z(2).unwrap();
    let x = pauli_x(2).unwrap();
    let xz = |sign: f64| {
        let m = x
            .matrix()
            .add(&z.matrix().scale(Complex64::new(sign, 0.0)))
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        Observable::new(m).unwrap()
    };
    Ok((0..n)
        .map(|p| {
            if p == n - 1 {
                vec![z.clone(), xz(1.0), xz(-1.0)]
            } else {
                vec![z.clone(), x.clone()]
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Observable families
// ---------------------------------------------------------------------------

/// CGLMP pair observables for the maximally entangled state: the m-side
/// measures U_α X† U_α† and the n-side U_β X U_β†. The base parameters are
/// α = (0, 1/2), β = (1/4, −1/4); the shifted set α = (1/4, 3/4),
/// β = (0, −1/2) gives the same violation with the first n-setting equal
/// to X.
pub fn cglmp_pair_observables(
    d: usize,
    shifted: bool,
) -> Result<(Vec<Observable>, Vec<Observable>)> {
    let (alpha, beta) = if shifted {
        ([0.25, 0.75], [0.0, -0.5])
    } else {
        ([0.0, 0.5], [0.25, -0.25])
    };
    let xd = pauli_x(d)?;
    let mut m_side = Vec::new();
    let mut n_side = Vec::new();
    for j in 0..2 {
        let ua = phase_u(d, alpha[j])?;
        let ub = phase_u(d, beta[j])?;
        m_side.push(Observable::new(
            ua.mul(&xd.matrix().dagger()).mul(&ua.dagger()),
        )?);
        n_side.push(Observable::new(ub.mul(xd.matrix()).mul(&ub.dagger()))?);
    }
    Ok((m_side, n_side))
}

/// Settings for the qudit cluster check: bulk parties {Z, X}, party N−1
/// gets {Z, F·M₁·F†, F·M₂·F†} and party N {N₁, N₂}, where (M, N) is the
/// shifted CGLMP pair — so N₁ = X and the conditioned pair violates CGLMP.
pub fn cluster_qudit_settings(n: usize, d: usize) -> Result<Vec<Vec<Observable>>> {
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let f = fourier(d)?;
    let (m_side, n_side) = cglmp_pair_observables(d, true)?;
    let z = pauli_z(d)?;
    let x = pauli_x(d)?;
    let mut settings: Vec<Vec<Observable>> =
        (0..n - 2).map(|_| vec![z.clone(), x.clone()]).collect();
    settings.push(vec![
        z.clone(),
        m_side[0].conjugated(&f)?,
        m_side[1].conjugated(&f)?,
    ]);
    settings.push(n_side);
    Ok(settings)
}

/// Settings for the qudit GHZ check: party 1 gets {F†·M₁·F, F†·M₂·F},
/// party 2 gets {Z, F·N₁·F†, F·N₂·F†} with (M, N) the base CGLMP pair, and
/// every other party {Z, X}. The first setting of party 1 equals Z.
pub fn ghz_qudit_settings(n: usize, d: usize) -> Result<Vec<Vec<Observable>>> {
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let f = fourier(d)?;
    let fd = f.dagger();
    let (m_side, n_side) = cglmp_pair_observables(d, false)?;
    let z = pauli_z(d)?;
    let x = pauli_x(d)?;
    let mut settings = vec![
        vec![m_side[0].conjugated(&fd)?, m_side[1].conjugated(&fd)?],
        vec![
            z.clone(),
            n_side[0].conjugated(&f)?,
            n_side[1].conjugated(&f)?,
        ],
    ];
    for _ in 2..n {
        settings.push(vec![z.clone(), x.clone()]);
    }
    Ok(settings)
}

/// Named observable families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObservableFamily {
    CglmpBase,
    CglmpShifted,
    ClusterQudit,
    GhzQudit,
    Theorem1Qubit,
    CaterpillarQubit,
    GhzLineQubit,
}

/// Look up a family by name. `d` is validated against the family (the three
/// qubit families require d = 2).
pub fn observable_family(name: &str, d: usize) -> Result<ObservableFamily> {
    use ObservableFamily::*;
    let fam = match name {
        "cglmp_base" => CglmpBase,
        "cglmp_shifted" => CglmpShifted,
        "cluster_qudit" => ClusterQudit,
        "ghz_qudit" => GhzQudit,
        "theorem1_qubit" => Theorem1Qubit,
        "caterpillar_qubit" => CaterpillarQubit,
        "ghz_line_qubit" => GhzLineQubit,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    if matches!(fam, Theorem1Qubit | CaterpillarQubit | GhzLineQubit) && d != 2 {
        return Err(Error::RequiresQubits(d));
    }
    Ok(fam)
}

// ---------------------------------------------------------------------------
// Qudit cluster and GHZ verification
// ---------------------------------------------------------------------------

/// Result of the conditional-CGLMP check on |C_N^d⟩.
#[derive(Clone, Debug, Serialize)]
pub struct QuditClusterReport {
    pub n: usize,
    pub d: usize,
    pub conditional_cglmp: f64,
    pub classical_bound: f64,
    pub cglmp_violated: bool,
    /// P(a_{i;0}·a_{i+1;1}·a_{i+2;0} = 1) for i = 0 … N−3 (a_{0;0} := 1).
    pub stabilizer_probs: Vec<f64>,
    /// P(a_{N−1;0}·a_{N;1} = 1).
    pub last_pair_prob: f64,
    pub probabilities_exact: bool,
    pub pass: bool,
    pub tol: f64,
}

/// Build |C_N^d⟩, measure the cluster family, and check that the stabilizer
/// outcome products are deterministic while the CGLMP value conditioned on
/// a_{N−2;0} = 1 dips below d − 1. Requires prime d.
pub fn verify_qudit_cluster(n: usize, d: usize, tol: f64) -> Result<QuditClusterReport> {
    if !is_prime(d) {
        return Err(Error::NonPrimeDimension(d));
    }
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let g = Multigraph::line(n, d)?;
    let psi = crate::sim::graph_state(&g)?;
    let settings = cluster_qudit_settings(n, d)?;
    let b = crate::behavior::quantum_behavior(&psi, &settings)?;

    let mut stabilizer_probs = Vec::new();
    for i in 0..=n - 3 {
        // Printed parties i, i+1, i+2 (1-based) at settings (0, 1, 0);
        // for i = 0 the first factor is the constant 1.
        let mut term: Vec<(usize, usize, u32)> = Vec::new();
        if i >= 1 {
            term.push((i - 1, 0, 1));
        }
        term.push((i, 1, 1));
        term.push((i + 1, 0, 1));
        stabilizer_probs.push(b.event_probability(&term, 0)?);
    }
    let last_pair_prob = b.event_probability(&[(n - 2, 0, 1), (n - 1, 0, 1)], 0)?;

    let conditioned = b.condition(&[(n - 3, 0, 1)], 0)?;
    let shift = |p: usize| if p > n - 3 { p - 1 } else { p };
    let conditional_cglmp =
        cglmp_value_with_settings(&conditioned, shift(n - 2), shift(n - 1), (1, 2), (0, 1))?;

    let classical_bound = d as f64 - 1.0;
    let cglmp_violated = conditional_cglmp < classical_bound - tol;
    let probabilities_exact = stabilizer_probs
        .iter()
        .chain([&last_pair_prob])
        .all(|&p| (p - 1.0).abs() <= NORM_TOL);
    Ok(QuditClusterReport {
        n,
        d,
        conditional_cglmp,
        classical_bound,
        cglmp_violated,
        stabilizer_probs,
        last_pair_prob,
        probabilities_exact,
        pass: cglmp_violated && probabilities_exact,
        tol,
    })
}

/// Result of the conditional-CGLMP check on |GHZ_N^d⟩.
#[derive(Clone, Debug, Serialize)]
pub struct QuditGhzReport {
    pub n: usize,
    pub d: usize,
    pub conditional_cglmp: f64,
    pub classical_bound: f64,
    pub cglmp_violated: bool,
    /// P(a_{1;1} = a_{2;0}) followed by P(a_{i;0} = a_{i+1;0}) for i ≥ 2.
    pub correlation_probs: Vec<f64>,
    pub correlations_exact: bool,
    pub pass: bool,
    pub tol: f64,
}

/// Build |GHZ_N^d⟩, measure the GHZ family, and check the perfect outcome
/// correlations plus the CGLMP violation conditioned on the X-outcome
/// product of parties 3 … N being 1. Works for every d ≥ 2.
pub fn verify_qudit_ghz(n: usize, d: usize, tol: f64) -> Result<QuditGhzReport> {
    if n < 3 {
        return Err(Error::TooFewParties { min: 3, got: n });
    }
    let psi = crate::sim::ghz_state(n, d)?;
    let settings = ghz_qudit_settings(n, d)?;
    let b = crate::behavior::quantum_behavior(&psi, &settings)?;
    let inv = d as u32 - 1;

    let mut correlation_probs = vec![b.event_probability(&[(0, 0, 1), (1, 0, inv)], 0)?];
    for i in 2..n {
        // Printed parties i, i+1 measured with Z; equality is a − a′ ≡ 0.
        correlation_probs.push(b.event_probability(&[(i - 1, 0, 1), (i, 0, inv)], 0)?);
    }

    let cond: Vec<(usize, usize, u32)> = (2..n).map(|p| (p, 1, 1)).collect();
    let conditioned = b.condition(&cond, 0)?;
    let conditional_cglmp = cglmp_value_with_settings(&conditioned, 0, 1, (0, 1), (1, 2))?;

    let classical_bound = d as f64 - 1.0;
    let cglmp_violated = conditional_cglmp < classical_bound - tol;
    let correlations_exact = correlation_probs
        .iter()
        .all(|&p| (p - 1.0).abs() <= NORM_TOL);
    Ok(QuditGhzReport {
        n,
        d,
        conditional_cglmp,
        classical_bound,
        cglmp_violated,
        correlation_probs,
        correlations_exact,
        pass: cglmp_violated && correlations_exact,
        tol,
    })
}

/// The quantum caterpillar value exceeds the bound by exactly 2√2 − 2 at
/// full visibility; the acceptance checks pin this constant.
pub fn caterpillar_quantum_margin() -> f64 {
    2.0 * std::f64::consts::SQRT_2 - 2.0
}
