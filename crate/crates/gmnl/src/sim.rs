//! Exact dense state-vector simulation for qudits.
//!
//! States are complex amplitude vectors indexed base-d with party 0 as the
//! most significant digit. Observables are unitaries with O^d = 𝟙, so
//! outcomes are the d-th roots of unity ω^a reported as exponents a. The
//! eigenprojectors are recovered in closed form as
//! P_a = (1/d) Σ_k ω^{−ak} O^k, which handles degenerate spectra (Z^w with
//! gcd(w, d) ≠ 1) without any numerical eigendecomposition.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::NORM_TOL;

/// Refuse states with more amplitudes than this.
pub const AMPLITUDE_CAP: usize = 1 << 22;

/// ω^k for ω = exp(2πi/d), with the exponent reduced mod d first.
/// Quarter turns (multiples of π/2) are returned exactly, so qubit and
/// ququart phases never pick up rounding noise.
pub fn omega_pow(d: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(d as i64) as usize;
    if (4 * k).is_multiple_of(d) {
        return match (4 * k / d) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
}

/// Small dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    e: Vec<Complex64>,
}

impl Matrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut e = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                e.push(f(i, j));
            }
        }
        Matrix { dim, e }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix::from_fn(self.dim, |i, j| {
            (0..self.dim).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }

    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix::from_fn(self.dim, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn scale(&self, c: Complex64) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| c * self.get(i, j))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn approx_eq(&self, rhs: &Matrix, tol: f64) -> bool {
        self.dim == rhs.dim
            && self
                .e
                .iter()
                .zip(&rhs.e)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.dagger()).approx_eq(&Matrix::identity(self.dim), tol)
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut out = Matrix::identity(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// Generalized Pauli X: the cyclic shift Σ |j+1⟩⟨j|.
pub fn pauli_x_matrix(d: usize) -> Matrix {
    Matrix::from_fn(d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Generalized Pauli Z: the phase matrix Σ ω^j |j⟩⟨j|.
pub fn pauli_z_matrix(d: usize) -> Matrix {
    Matrix::from_fn(d, |i, j| {
        if i == j {
            omega_pow(d, i as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Discrete Fourier transform (1/√d) Σ ω^{ij} |i⟩⟨j|. The 1/√d factor makes
/// it unitary so it can act as a local basis change.
pub fn fourier(d: usize) -> Result<Matrix> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let norm = 1.0 / (d as f64).sqrt();
    Ok(Matrix::from_fn(d, |i, j| {
        omega_pow(d, (i * j) as i64) * norm
    }))
}

/// Phase unitary U_χ = Σ ω^{jχ} |j⟩⟨j| for real χ.
pub fn phase_u(d: usize, chi: f64) -> Result<Matrix> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    Ok(Matrix::from_fn(d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, 2.0 * PI * i as f64 * chi / d as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// A d-outcome observable: a unitary with O^d = 𝟙, measured by projecting on
/// the eigenspaces of the eigenvalues ω^a. Outcomes are the exponents a.
#[derive(Clone, Debug)]
pub struct Observable {
    mat: Matrix,
    projectors: Vec<Matrix>,
}

impl Observable {
    pub fn new(mat: Matrix) -> Result<Self> {
        let d = mat.dim();
        if d < 2 {
            return Err(Error::BadDimension(d));
        }
        if !mat.is_unitary(NORM_TOL) {
            return Err(Error::NotUnitary);
        }
        if !mat.pow(d).approx_eq(&Matrix::identity(d), NORM_TOL) {
            return Err(Error::NotRootOfUnity);
        }
        // P_a = (1/d) Σ_k ω^{-ak} O^k
        let powers: Vec<Matrix> = (0..d).map(|k| mat.pow(k)).collect();
        let mut projectors = Vec::with_capacity(d);
        for a in 0..d {
            let mut p = Matrix::from_fn(d, |_, _| Complex64::new(0.0, 0.0));
            for (k, m) in powers.iter().enumerate() {
                p = p.add(&m.scale(omega_pow(d, -(a as i64 * k as i64))));
            }
            projectors.push(p.scale(Complex64::new(1.0 / d as f64, 0.0)));
        }
        // The projectors resolve the identity and reconstruct the matrix.
        let mut sum = Matrix::from_fn(d, |_, _| Complex64::new(0.0, 0.0));
        let mut rec = sum.clone();
        for (a, p) in projectors.iter().enumerate() {
            sum = sum.add(p);
            rec = rec.add(&p.scale(omega_pow(d, a as i64)));
        }
        debug_assert!(sum.approx_eq(&Matrix::identity(d), 1e-8));
        debug_assert!(rec.approx_eq(&mat, 1e-8));
        Ok(Observable { mat, projectors })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn projector(&self, a: usize) -> &Matrix {
        &self.projectors[a]
    }

    /// Rank of the eigenspace for outcome a (0 when ω^a is not in the spectrum).
    pub fn outcome_multiplicity(&self, a: usize) -> f64 {
        self.projectors[a].trace().re
    }

    /// O^k as an observable (outcomes scale accordingly).
    pub fn pow(&self, k: usize) -> Result<Observable> {
        Observable::new(self.mat.pow(k % self.dim()))
    }

    /// O^{-1} = O†; measuring it relabels each outcome by its inverse.
    pub fn inverse(&self) -> Result<Observable> {
        Observable::new(self.mat.dagger())
    }

    /// U O U† for a unitary U.
    pub fn conjugated(&self, u: &Matrix) -> Result<Observable> {
        if !u.is_unitary(NORM_TOL) {
            return Err(Error::NotUnitary);
        }
        Observable::new(u.mul(&self.mat).mul(&u.dagger()))
    }
}

/// Generalized Pauli X as an observable.
pub fn pauli_x(d: usize) -> Result<Observable> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    Observable::new(pauli_x_matrix(d))
}

/// Generalized Pauli Z as an observable.
pub fn pauli_z(d: usize) -> Result<Observable> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    Observable::new(pauli_z_matrix(d))
}

/// Partial assignment of observables to parties; unassigned parties are
/// untouched (identity).
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    map: BTreeMap<usize, Observable>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment { map: BTreeMap::new() }
    }

    pub fn with(mut self, party: usize, obs: Observable) -> Self {
        self.map.insert(party, obs);
        self
    }

    pub fn insert(&mut self, party: usize, obs: Observable) {
        self.map.insert(party, obs);
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Observable)>) -> Self {
        Assignment { map: pairs.into_iter().collect() }
    }

    pub fn parties(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Observable)> {
        self.map.iter().map(|(&p, o)| (p, o))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn validate(&self, state: &PureState) -> Result<()> {
        for (p, o) in self.iter() {
            if p >= state.parties() {
                return Err(Error::PartyOutOfRange(p, state.parties()));
            }
            if o.dim() != state.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: state.dimension(),
                    got: o.dim(),
                });
            }
        }
        Ok(())
    }
}

/// Dense pure state of n qudits of dimension d. Party 0 is the most
/// significant base-d digit of the amplitude index.
#[derive(Clone, Debug)]
pub struct PureState {
    d: usize,
    n: usize,
    amp: Vec<Complex64>,
}

impl PureState {
    pub fn from_amplitudes(n: usize, d: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_cap(n, d)?;
        let len = d.pow(n as u32);
        if amp.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: amp.len() });
        }
        let state = PureState { d, n, amp };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::MalformedBehavior(format!(
                "state norm {norm} is not 1"
            )));
        }
        Ok(state)
    }

    /// (F|0⟩)^{⊗n}: the uniform superposition.
    pub fn plus_states(n: usize, d: usize) -> Result<Self> {
        check_cap(n, d)?;
        let len = d.pow(n as u32);
        let a = 1.0 / (len as f64).sqrt();
        Ok(PureState { d, n, amp: vec![Complex64::new(a, 0.0); len] })
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amp {
                *a /= norm;
            }
        }
    }

    /// Base-d digit of `index` at `party`.
    pub fn digit(&self, index: usize, party: usize) -> usize {
        let shift = self.d.pow((self.n - 1 - party) as u32);
        index / shift % self.d
    }

    /// Apply a single-site operator in place.
    pub fn apply_single(&mut self, party: usize, m: &Matrix) {
        assert_eq!(m.dim(), self.d);
        assert!(party < self.n);
        let stride = self.d.pow((self.n - 1 - party) as u32);
        let block = stride * self.d;
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.d];
        let mut base = 0;
        while base < self.amp.len() {
            for off in 0..stride {
                for (k, s) in scratch.iter_mut().enumerate() {
                    *s = self.amp[base + off + k * stride];
                }
                for i in 0..self.d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k, s) in scratch.iter().enumerate() {
                        acc += m.get(i, k) * s;
                    }
                    self.amp[base + off + i * stride] = acc;
                }
            }
            base += block;
        }
    }

    /// Apply CZ^w between two parties: phase ω^{w·k_i·k_j}.
    pub fn apply_cz(&mut self, i: usize, j: usize, w: u32) {
        assert!(i < self.n && j < self.n && i != j);
        if w == 0 {
            return;
        }
        for idx in 0..self.amp.len() {
            let ki = self.digit(idx, i) as i64;
            let kj = self.digit(idx, j) as i64;
            self.amp[idx] *= omega_pow(self.d, w as i64 * ki * kj);
        }
    }

    /// Apply every observable of an assignment (as operators, no measurement).
    pub fn apply_assignment(&self, assign: &Assignment) -> Result<PureState> {
        assign.validate(self)?;
        let mut out = self.clone();
        for (p, o) in assign.iter() {
            out.apply_single(p, o.matrix());
        }
        Ok(out)
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        assert_eq!(self.amp.len(), other.amp.len());
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩| — global-phase-insensitive overlap.
    pub fn overlap_modulus(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }

    /// Debug export: amplitudes as [re, im] pairs.
    pub fn to_json_amplitudes(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.amp
                .iter()
                .map(|a| serde_json::json!([a.re, a.im]))
                .collect(),
        )
    }
}

fn check_cap(n: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    if n == 0 {
        return Err(Error::TooFewParties { min: 1, got: 0 });
    }
    let mut size: usize = 1;
    for _ in 0..n {
        size = size
            .checked_mul(d)
            .filter(|&s| s <= AMPLITUDE_CAP)
            .ok_or(Error::MemoryCap { n, d })?;
    }
    Ok(())
}

/// The graph state of a multigraph: CZ^{Γij} factors on (F|0⟩)^{⊗n}. The
/// stabilizer equations g_i|G⟩ = |G⟩ are asserted before returning, so the
/// construction is self-verifying.
pub fn graph_state(g: &Multigraph) -> Result<PureState> {
    let mut psi = PureState::plus_states(g.vertex_count(), g.dimension())?;
    for (i, j, w) in g.edges() {
        psi.apply_cz(i, j, w);
    }
    for i in 0..g.vertex_count() {
        let stab = stabilizer_operator(g, i)?;
        let moved = psi.apply_assignment(&stab)?;
        let dev = psi
            .amplitudes()
            .iter()
            .zip(moved.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(
            dev <= NORM_TOL,
            "stabilizer equation {i} violated by {dev:.3e}"
        );
    }
    Ok(psi)
}

/// The stabilizer g_i = X_i Π_j Z_j^{Γij} as a per-site assignment.
pub fn stabilizer_operator(g: &Multigraph, i: usize) -> Result<Assignment> {
    if i >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(i, g.vertex_count()));
    }
    let d = g.dimension();
    let mut assign = Assignment::new().with(i, pauli_x(d)?);
    for j in 0..g.vertex_count() {
        let w = g.weight(i, j);
        if j != i && w != 0 {
            assign.insert(j, pauli_z(d)?.pow(w as usize)?);
        }
    }
    Ok(assign)
}

/// The four-qubit cluster state in the rotated local basis
/// (|0000⟩ + |0011⟩ + |1100⟩ − |1111⟩)/2.
pub fn c4_state() -> PureState {
    let mut amp = vec![Complex64::new(0.0, 0.0); 16];
    amp[0b0000] = Complex64::new(0.5, 0.0);
    amp[0b0011] = Complex64::new(0.5, 0.0);
    amp[0b1100] = Complex64::new(0.5, 0.0);
    amp[0b1111] = Complex64::new(-0.5, 0.0);
    PureState { d: 2, n: 4, amp }
}

/// |GHZ_n^d⟩ = (1/√d) Σ_j |j⟩^{⊗n}.
pub fn ghz_state(n: usize, d: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::TooFewParties { min: 2, got: n });
    }
    check_cap(n, d)?;
    let len = d.pow(n as u32);
    let mut amp = vec![Complex64::new(0.0, 0.0); len];
    let a = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        let mut idx = 0;
        for _ in 0..n {
            idx = idx * d + j;
        }
        amp[idx] = Complex64::new(a, 0.0);
    }
    Ok(PureState { d, n, amp })
}

/// ⟨ψ| ⊗O |ψ⟩ with identity on unassigned parties.
pub fn expectation(psi: &PureState, assign: &Assignment) -> Result<Complex64> {
    let moved = psi.apply_assignment(assign)?;
    Ok(psi.inner(&moved))
}

/// Expectation on ρ(η) = η|ψ⟩⟨ψ| + (1−η) 𝟙/d^n:
/// η⟨ψ|O|ψ⟩ + (1−η) Π tr(O_i)/d.
pub fn expectation_mixed(psi: &PureState, eta: f64, assign: &Assignment) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "visibility {eta} outside [0, 1]"
        )));
    }
    let pure = expectation(psi, assign)?;
    let mut mixed = Complex64::new(1.0, 0.0);
    for (_, o) in assign.iter() {
        mixed *= o.matrix().trace() / psi.dimension() as f64;
    }
    Ok(pure * eta + mixed * (1.0 - eta))
}

/// Joint outcome distribution of the assigned observables.
#[derive(Clone, Debug)]
pub struct OutcomeDistribution {
    d: usize,
    parties: Vec<usize>,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Measured parties in ascending order; outcome tuples follow this order.
    pub fn parties(&self) -> &[usize] {
        &self.parties
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn prob(&self, outcomes: &[usize]) -> f64 {
        assert_eq!(outcomes.len(), self.parties.len());
        let mut idx = 0;
        for &a in outcomes {
            idx = idx * self.d + a;
        }
        self.probs[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let m = self.parties.len();
        (0..self.probs.len()).map(move |flat| {
            let mut tup = vec![0; m];
            let mut rest = flat;
            for slot in (0..m).rev() {
                tup[slot] = rest % self.d;
                rest /= self.d;
            }
            (tup, self.probs[flat])
        })
    }

    pub fn raw(&self) -> &[f64] {
        &self.probs
    }
}

/// Measure the assigned observables jointly; probability of an exponent
/// tuple is the squared norm of the projection onto the joint eigenspace.
pub fn outcome_distribution(psi: &PureState, assign: &Assignment) -> Result<OutcomeDistribution> {
    if assign.is_empty() {
        return Err(Error::InvalidParameter(
            "outcome distribution needs at least one measured party".into(),
        ));
    }
    assign.validate(psi)?;
    let d = psi.dimension();
    let parties: Vec<usize> = assign.parties().collect();
    let observables: Vec<&Observable> = assign.iter().map(|(_, o)| o).collect();
    let mut probs = vec![0.0; d.pow(parties.len() as u32)];
    let mut flat = 0;
    project_rec(psi, &parties, &observables, 0, &mut flat, &mut probs);
    let total: f64 = probs.iter().sum();
    assert!(
        (total - 1.0).abs() <= NORM_TOL,
        "outcome probabilities sum to {total}"
    );
    Ok(OutcomeDistribution { d, parties, probs })
}

fn project_rec(
    v: &PureState,
    parties: &[usize],
    obs: &[&Observable],
    level: usize,
    flat: &mut usize,
    out: &mut Vec<f64>,
) {
    if level == parties.len() {
        out[*flat] = v.norm().powi(2);
        *flat += 1;
        return;
    }
    let d = v.dimension();
    for a in 0..d {
        let mut w = v.clone();
        w.apply_single(parties[level], obs[level].projector(a));
        // A branch of negligible weight contributes nothing anywhere below;
        // leave its slots at zero.
        if w.amplitudes().iter().map(|c| c.norm_sqr()).sum::<f64>() < 1e-30 {
            *flat += d.pow((parties.len() - level - 1) as u32);
            continue;
        }
        project_rec(&w, parties, obs, level + 1, flat, out);
    }
}

/// Per-site unitaries realizing local complementation at `v` on a qubit
/// graph state: exp(−iπX/4) at v and exp(iπZ/4) at each neighbour. Applying
/// them to |G⟩ gives |LC_v(G)⟩ up to a global phase.
pub fn lc_local_clifford_qubit(g: &Multigraph, v: usize) -> Result<Vec<Matrix>> {
    if g.dimension() != 2 {
        return Err(Error::RequiresQubits(g.dimension()));
    }
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(v, g.vertex_count()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // exp(-iπX/4) = (𝟙 - iX)/√2, exp(iπZ/4) = (𝟙 + iZ)/√2
    let sqrt_mix = Matrix::from_fn(2, |i, j| {
        if i == j {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, -s)
        }
    });
    let sqrt_iz = Matrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => Complex64::new(s, s),
        (1, 1) => Complex64::new(s, -s),
        _ => Complex64::new(0.0, 0.0),
    });
    let neigh = g.neighbourhood(v)?;
    Ok((0..g.vertex_count())
        .map(|u| {
            if u == v {
                sqrt_mix.clone()
            } else if neigh.contains(&u) {
                sqrt_iz.clone()
            } else {
                Matrix::identity(2)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_matrices() {
        let x = pauli_x(2).unwrap();
        assert_eq!(x.matrix().get(0, 1), c(1.0, 0.0));
        assert_eq!(x.matrix().get(1, 0), c(1.0, 0.0));
        let z = pauli_z(2).unwrap();
        assert_eq!(z.matrix().get(0, 0), c(1.0, 0.0));
        assert_eq!(z.matrix().get(1, 1), c(-1.0, 0.0));

        let z3 = pauli_z(3).unwrap();
        for j in 0..3 {
            assert!((z3.matrix().get(j, j) - omega_pow(3, j as i64)).norm() < 1e-12);
        }
        assert!(pauli_x(1).is_err());
    }

    #[test]
    fn weyl_commutation() {
        // Z·X = ω·X·Z for d = 3 (direct matrix multiplication).
        let d = 3;
        let zx = pauli_z_matrix(d).mul(&pauli_x_matrix(d));
        let xz_shifted = pauli_x_matrix(d).mul(&pauli_z_matrix(d)).scale(omega_pow(d, 1));
        assert!(zx.approx_eq(&xz_shifted, 1e-12));
    }

    #[test]
    fn fourier_and_phase() {
        let f2 = fourier(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f2.get(0, 0) - c(s, 0.0)).norm() < 1e-12);
        assert!((f2.get(1, 1) - c(-s, 0.0)).norm() < 1e-12);

        let u = phase_u(2, 0.5).unwrap();
        assert!((u.get(0, 0) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((u.get(1, 1) - c(0.0, 1.0)).norm() < 1e-12);

        let f3 = fourier(3).unwrap();
        assert!(f3.is_unitary(1e-12));
        // F† X† F = Z
        let fxf = f3.dagger().mul(&pauli_x_matrix(3).dagger()).mul(&f3);
        assert!(fxf.approx_eq(&pauli_z_matrix(3), 1e-12));
    }

    #[test]
    fn projectors_handle_degenerate_spectra() {
        // Z² for d = 4 has eigenvalues {1, ω²} with multiplicity 2 each.
        let o = pauli_z(4).unwrap().pow(2).unwrap();
        assert!((o.outcome_multiplicity(0) - 2.0).abs() < 1e-9);
        assert!((o.outcome_multiplicity(1) - 0.0).abs() < 1e-9);
        assert!((o.outcome_multiplicity(2) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn graph_state_single_edge() {
        let g = Multigraph::line(2, 2).unwrap();
        let psi = graph_state(&g).unwrap();
        let expect = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in psi.amplitudes().iter().zip(expect) {
            assert!((a - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn graph_state_edgeless_qutrits() {
        let g = Multigraph::edgeless(3, 3).unwrap();
        let psi = graph_state(&g).unwrap();
        let a = 1.0 / 27f64.sqrt();
        for amp in psi.amplitudes() {
            assert!((amp - c(a, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn four_path_satisfies_line_stabilizers() {
        // X Z I I, Z X Z I, I Z X Z, I I Z X all fix the 4-path graph state.
        let g = Multigraph::line(4, 2).unwrap();
        let psi = graph_state(&g).unwrap();
        for i in 0..4 {
            let stab = stabilizer_operator(&g, i).unwrap();
            let val = expectation(&psi, &stab).unwrap();
            assert!((val - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn stabilizer_operator_shapes() {
        let g = Multigraph::line(2, 2).unwrap();
        let s0 = stabilizer_operator(&g, 0).unwrap();
        let parties: Vec<_> = s0.parties().collect();
        assert_eq!(parties, vec![0, 1]);
        assert!(s0
            .iter()
            .find(|(p, _)| *p == 0)
            .unwrap()
            .1
            .matrix()
            .approx_eq(&pauli_x_matrix(2), 1e-12));
        assert!(s0
            .iter()
            .find(|(p, _)| *p == 1)
            .unwrap()
            .1
            .matrix()
            .approx_eq(&pauli_z_matrix(2), 1e-12));

        // Caterpillar spine interior: Z X Z with a Z per leg.
        let g = Multigraph::caterpillar(2, &[0, 2, 0]).unwrap();
        let s1 = stabilizer_operator(&g, 1).unwrap();
        assert_eq!(s1.len(), 5);
        assert!(stabilizer_operator(&g, 9).is_err());
    }

    #[test]
    fn c4_state_amplitudes() {
        let psi = c4_state();
        assert!((psi.amplitudes()[0] - c(0.5, 0.0)).norm() < 1e-12);
        assert!((psi.amplitudes()[0b1111] - c(-0.5, 0.0)).norm() < 1e-12);
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        // Stabilized by Z Z I I, X X Z I, I Z X X, I I Z Z.
        let z = || pauli_z(2).unwrap();
        let x = || pauli_x(2).unwrap();
        let stabs = [
            Assignment::from_pairs([(0, z()), (1, z())]),
            Assignment::from_pairs([(0, x()), (1, x()), (2, z())]),
            Assignment::from_pairs([(1, z()), (2, x()), (3, x())]),
            Assignment::from_pairs([(2, z()), (3, z())]),
        ];
        for s in &stabs {
            let val = expectation(&psi, s).unwrap();
            assert!((val - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn ghz_states() {
        let psi = ghz_state(3, 2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi.amplitudes()[0] - c(s, 0.0)).norm() < 1e-12);
        assert!((psi.amplitudes()[7] - c(s, 0.0)).norm() < 1e-12);

        // g_j = Z_{j-1} Z_j^{-1} and g_1 = X...X stabilize it.
        for d in [2usize, 3, 5] {
            let psi = ghz_state(3, d).unwrap();
            let z = pauli_z(d).unwrap();
            for j in 1..3 {
                let s = Assignment::from_pairs([
                    (j - 1, z.clone()),
                    (j, z.inverse().unwrap()),
                ]);
                assert!((expectation(&psi, &s).unwrap() - c(1.0, 0.0)).norm() < 1e-9);
            }
            let xs = Assignment::from_pairs((0..3).map(|p| (p, pauli_x(d).unwrap())));
            assert!((expectation(&psi, &xs).unwrap() - c(1.0, 0.0)).norm() < 1e-9);
        }

        // n = 2, d = 2 is the EPR pair.
        let phi = ghz_state(2, 2).unwrap();
        assert!((phi.amplitudes()[0b00].re - s).abs() < 1e-12);
        assert!((phi.amplitudes()[0b11].re - s).abs() < 1e-12);
        assert!(ghz_state(1, 2).is_err());
    }

    #[test]
    fn expectation_examples() {
        let psi = c4_state();
        let zz = Assignment::from_pairs([(0, pauli_z(2).unwrap()), (1, pauli_z(2).unwrap())]);
        assert!((expectation(&psi, &zz).unwrap() - c(1.0, 0.0)).norm() < 1e-9);

        let ghz = ghz_state(3, 2).unwrap();
        let z_z = Assignment::from_pairs([(0, pauli_z(2).unwrap()), (2, pauli_z(2).unwrap())]);
        assert!((expectation(&ghz, &z_z).unwrap() - c(1.0, 0.0)).norm() < 1e-9);
        let z__ = Assignment::new().with(0, pauli_z(2).unwrap());
        assert!(expectation(&ghz, &z__).unwrap().norm() < 1e-9);

        // Dimension mismatch is rejected.
        let bad = Assignment::new().with(0, pauli_z(3).unwrap());
        assert!(expectation(&ghz, &bad).is_err());
    }

    #[test]
    fn expectation_mixed_interpolates() {
        let g = Multigraph::caterpillar(2, &[0, 1, 0]).unwrap();
        let psi = graph_state(&g).unwrap();
        let stab = stabilizer_operator(&g, 1).unwrap();
        let pure = expectation(&psi, &stab).unwrap();
        assert!((pure - c(1.0, 0.0)).norm() < 1e-9);

        let at_eta = expectation_mixed(&psi, 0.9, &stab).unwrap();
        assert!((at_eta - c(0.9, 0.0)).norm() < 1e-9);

        let full = expectation_mixed(&psi, 1.0, &stab).unwrap();
        assert!((full - pure).norm() < 1e-12);

        // η = 0 with a traceless observable gives 0.
        let zero = expectation_mixed(&psi, 0.0, &stab).unwrap();
        assert!(zero.norm() < 1e-12);

        assert!(expectation_mixed(&psi, 1.5, &stab).is_err());
    }

    #[test]
    fn outcome_distribution_examples() {
        // φ+ measured in Z ⊗ Z: perfectly correlated.
        let phi = ghz_state(2, 2).unwrap();
        let zz = Assignment::from_pairs([(0, pauli_z(2).unwrap()), (1, pauli_z(2).unwrap())]);
        let dist = outcome_distribution(&phi, &zz).unwrap();
        assert!((dist.prob(&[0, 0]) - 0.5).abs() < 1e-9);
        assert!((dist.prob(&[1, 1]) - 0.5).abs() < 1e-9);
        assert!(dist.prob(&[0, 1]).abs() < 1e-12);

        // GHZ measured in X X X: even outcome parity.
        let ghz = ghz_state(3, 2).unwrap();
        let xs = Assignment::from_pairs((0..3).map(|p| (p, pauli_x(2).unwrap())));
        let dist = outcome_distribution(&ghz, &xs).unwrap();
        let p_even: f64 = dist
            .iter()
            .filter(|(tup, _)| tup.iter().sum::<usize>() % 2 == 0)
            .map(|(_, p)| p)
            .sum();
        assert!((p_even - 1.0).abs() < 1e-9);

        // Z X Z on the first three parties of the 4-path graph state: the
        // parity is fixed by the stabilizer Z X Z 𝟙.
        let g = Multigraph::line(4, 2).unwrap();
        let psi = graph_state(&g).unwrap();
        let zxz = Assignment::from_pairs([
            (0, pauli_z(2).unwrap()),
            (1, pauli_x(2).unwrap()),
            (2, pauli_z(2).unwrap()),
        ]);
        let dist = outcome_distribution(&psi, &zxz).unwrap();
        let p_even: f64 = dist
            .iter()
            .filter(|(tup, _)| tup.iter().sum::<usize>() % 2 == 0)
            .map(|(_, p)| p)
            .sum();
        assert!((p_even - 1.0).abs() < 1e-9);

        // On the rotated-basis state the equivalent check measures X X Z.
        let c4 = c4_state();
        let xxz = Assignment::from_pairs([
            (0, pauli_x(2).unwrap()),
            (1, pauli_x(2).unwrap()),
            (2, pauli_z(2).unwrap()),
        ]);
        let dist = outcome_distribution(&c4, &xxz).unwrap();
        let p_even: f64 = dist
            .iter()
            .filter(|(tup, _)| tup.iter().sum::<usize>() % 2 == 0)
            .map(|(_, p)| p)
            .sum();
        assert!((p_even - 1.0).abs() < 1e-9);

        assert!(outcome_distribution(&c4, &Assignment::new()).is_err());
    }

    #[test]
    fn expectation_matches_distribution_average() {
        // ⟨O⟩ = Σ_a ω^{Σa} p(a): the two evaluation paths agree.
        let g = Multigraph::caterpillar(3, &[0, 1, 0]).unwrap();
        let psi = graph_state(&g).unwrap();
        let assign = Assignment::from_pairs([
            (0, pauli_z(3).unwrap()),
            (1, pauli_x(3).unwrap()),
            (3, pauli_z(3).unwrap()),
        ]);
        let direct = expectation(&psi, &assign).unwrap();
        let dist = outcome_distribution(&psi, &assign).unwrap();
        let averaged: Complex64 = dist
            .iter()
            .map(|(tup, p)| omega_pow(3, tup.iter().sum::<usize>() as i64) * p)
            .sum();
        assert!((direct - averaged).norm() < 1e-9);
    }

    #[test]
    fn lc_clifford_realizes_local_complementation() {
        // 3-path complemented at the centre becomes the star/triangle pair.
        for (edges, v) in [
            (vec![(0usize, 1usize, 1u64), (1, 2, 1)], 1usize),
            (vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)], 1),
            (vec![], 0),
        ] {
            let g = Multigraph::new(4.min(edges.len() + 2).max(3), 2, &edges).unwrap();
            let target = graph_state(&g.local_complementation(v).unwrap()).unwrap();
            let mut moved = graph_state(&g).unwrap();
            for (site, u) in lc_local_clifford_qubit(&g, v).unwrap().iter().enumerate() {
                moved.apply_single(site, u);
            }
            assert!(
                (moved.overlap_modulus(&target) - 1.0).abs() < 1e-9,
                "edges {edges:?} vertex {v}"
            );
        }
        let g = Multigraph::line(3, 3).unwrap();
        assert!(matches!(
            lc_local_clifford_qubit(&g, 0),
            Err(Error::RequiresQubits(3))
        ));
    }

    #[test]
    fn memory_cap_enforced() {
        assert!(matches!(
            PureState::plus_states(23, 2),
            Err(Error::MemoryCap { .. })
        ));
        assert!(PureState::plus_states(22, 2).is_ok());
    }
}
