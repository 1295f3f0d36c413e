//! Frequency-domain solution of a `CircuitGraph`: complex nodal admittance
//! analysis with distributed-line two-port stamps, S-parameters referenced to
//! each port's impedance, and evaluation at real or complex frequency.
//!
//! Time convention is e^{+iωt} throughout: a capacitor stamps +iωC.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netlist::{CircuitGraph, ElementKind, NodeId, TlineParams, GROUND};
use crate::scalar::{real, Real, C};

mod linalg;

pub use linalg::CMatrix;
use linalg::{lu_factor, LuFactors};

/// Complex evaluation frequency in ordinary-frequency units: the s-plane
/// point ω = 2π(f − i·σ/2), with `f` in Hz and the decay parameter `σ` in Hz.
///
/// With the e^{+iωt} convention a passive network's poles sit in the upper
/// half of the ω plane, i.e. at negative σ; a pole with σ = -κ corresponds to
/// a mode of full width κ (Hz) in |S21|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFrequency<T> {
    /// Oscillation frequency f (Hz).
    pub frequency: T,
    /// Decay parameter σ (Hz).
    pub decay: T,
}

impl<T: Real> ComplexFrequency<T> {
    pub fn real_frequency(frequency: T) -> Self {
        Self {
            frequency,
            decay: T::zero(),
        }
    }

    /// ω = 2π(f − i·σ/2) in rad/s.
    pub fn omega(&self) -> C<T> {
        let two_pi = real::<T>(2.0) * T::PI();
        Complex::new(
            two_pi * self.frequency,
            -T::PI() * self.decay,
        )
    }

    pub fn from_omega(omega: C<T>) -> Self {
        let two_pi = real::<T>(2.0) * T::PI();
        Self {
            frequency: omega.re / two_pi,
            decay: -omega.im / T::PI(),
        }
    }
}

/// Angular frequency for a real frequency in Hz.
pub fn angular<T: Real>(frequency_hz: T) -> C<T> {
    Complex::new(real::<T>(2.0) * T::PI() * frequency_hz, T::zero())
}

/// Symmetric two-port admittance of a line segment: y21 = y12, y22 = y11.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlineY<T> {
    pub y11: C<T>,
    pub y12: C<T>,
}

/// Telegrapher two-port admittance of a uniform segment at complex ω:
/// Y11 = Y0·coth(γl), Y12 = −Y0/sinh(γl), with γ = sqrt(zs·yp) and
/// Y0 = sqrt(yp/zs) for zs = R + iωL, yp = G + iωC per unit length.
///
/// γl is reduced modulo iπ before evaluating coth/csch, and a three-term
/// Laurent expansion takes over within 1e-6 of the poles at γl = iπn, so the
/// stamp stays accurate through half-wave resonances. Taking both square
/// roots of zs and yp separately makes the result independent of the branch
/// either root lands on, which keeps S(f) continuous across the sweep.
pub fn tline_two_port_admittance<T: Real>(
    segment: &TlineParams<T>,
    omega: C<T>,
) -> Result<TlineY<T>> {
    if omega.norm_sqr() == T::zero() {
        return Err(Error::DegenerateDc);
    }
    let i = Complex::new(T::zero(), T::one());
    let zs = Complex::new(segment.series_loss_per_m, T::zero()) + i * omega * segment.inductance_per_m;
    let yp = Complex::new(segment.shunt_loss_per_m, T::zero()) + i * omega * segment.capacitance_per_m;
    let sqrt_zs = zs.sqrt();
    let sqrt_yp = yp.sqrt();
    let z0 = sqrt_zs / sqrt_yp;
    let u = sqrt_zs * sqrt_yp * segment.length;

    // Reduce u by the iπ periodicity of coth/csch: u = iπn + δ.
    let n = (u.im / T::PI()).round();
    let delta = Complex::new(u.re, u.im - n * T::PI());
    let odd = (n.to_f64_lossy() as i64) % 2 != 0;

    let mag2 = delta.norm_sqr();
    if mag2 == T::zero() {
        return Err(Error::Singular {
            frequency_hz: (omega.re / (real::<T>(2.0) * T::PI())).to_f64_lossy(),
        });
    }
    let (coth_d, csch_d) = if mag2 < real::<T>(1e-12) {
        // |δ| < 1e-6: Laurent expansion about the pole.
        let inv = delta.inv();
        let d2 = delta * delta;
        let coth = inv + delta * (d2.scale(-real::<T>(1.0 / 45.0)) + real::<T>(1.0 / 3.0));
        let csch = inv - delta * (d2.scale(-real::<T>(7.0 / 360.0)) + real::<T>(1.0 / 6.0));
        (coth, csch)
    } else {
        let sh = delta.sinh();
        let ch = delta.cosh();
        (ch / sh, sh.inv())
    };
    let sign = if odd { -T::one() } else { T::one() };
    // coth is iπ-periodic; sinh flips sign on odd multiples.
    Ok(TlineY {
        y11: coth_d / z0,
        y12: -csch_d.scale(sign) / z0,
    })
}

/// Nodal admittance matrix over the non-ground nodes, plus the node order
/// that indexes its rows and columns.
#[derive(Debug, Clone)]
pub struct NodalMatrix<T> {
    matrix: CMatrix<T>,
    nodes: Vec<NodeId>,
}

impl<T: Real> NodalMatrix<T> {
    pub fn dimension(&self) -> usize {
        self.matrix.dimension()
    }

    pub fn entry(&self, row: usize, col: usize) -> C<T> {
        self.matrix.at(row, col)
    }

    pub fn node_order(&self) -> &[NodeId] {
        &self.nodes
    }
}

/// Sums the element stamps of `graph` at complex ω into the nodal admittance
/// matrix over non-ground nodes (ascending node id order).
pub fn assemble_nodal_matrix<T: Real>(
    graph: &CircuitGraph<T>,
    omega: C<T>,
) -> Result<NodalMatrix<T>> {
    if omega.norm_sqr() == T::zero() {
        return Err(Error::DegenerateDc);
    }
    let nodes = graph.interior_nodes();
    let index_of = |n: NodeId| -> Option<usize> {
        if n == GROUND {
            None
        } else {
            nodes.binary_search(&n).ok()
        }
    };
    let mut m = CMatrix::zeros(nodes.len());
    let i = Complex::new(T::zero(), T::one());
    for el in graph.elements() {
        let (ia, ib) = (index_of(el.a), index_of(el.b));
        match &el.kind {
            ElementKind::TlineSegment(seg) => {
                let y = tline_two_port_admittance(seg, omega)?;
                if let Some(a) = ia {
                    m.add(a, a, y.y11);
                }
                if let Some(b) = ib {
                    m.add(b, b, y.y11);
                }
                if let (Some(a), Some(b)) = (ia, ib) {
                    m.add(a, b, y.y12);
                    m.add(b, a, y.y12);
                }
            }
            ElementKind::Capacitor(cap) => {
                stamp_admittance(&mut m, ia, ib, i * omega * *cap);
            }
            ElementKind::Inductor(henry) => {
                stamp_admittance(&mut m, ia, ib, (i * omega * *henry).inv());
            }
            ElementKind::Resistor(ohm) => {
                stamp_admittance(&mut m, ia, ib, Complex::new(T::one() / *ohm, T::zero()));
            }
        }
    }
    Ok(NodalMatrix { matrix: m, nodes })
}

fn stamp_admittance<T: Real>(
    m: &mut CMatrix<T>,
    ia: Option<usize>,
    ib: Option<usize>,
    y: C<T>,
) {
    if let Some(a) = ia {
        m.add(a, a, y);
    }
    if let Some(b) = ib {
        m.add(b, b, y);
    }
    if let (Some(a), Some(b)) = (ia, ib) {
        m.add(a, b, -y);
        m.add(b, a, -y);
    }
}

/// Per-frequency outcome of a sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Ok,
    /// The nodal matrix was exactly singular; the point was re-solved at
    /// ω(1 + 1e-9 i) and kept.
    PerturbedSingular,
    /// The solve failed even after perturbation; the matrix entries are NaN.
    Failed,
}

/// Frequency-indexed complex scattering matrices, referenced to each port's
/// impedance. Matrices are n×n row-major with ports in ascending port-number
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct SParameterSweep<T> {
    frequencies: Vec<T>,
    matrices: Vec<Vec<C<T>>>,
    reference_impedances: Vec<T>,
    status: Vec<PointStatus>,
}

impl<T: Real> SParameterSweep<T> {
    pub fn new(
        frequencies: Vec<T>,
        matrices: Vec<Vec<C<T>>>,
        reference_impedances: Vec<T>,
        status: Vec<PointStatus>,
    ) -> Result<Self> {
        let n = reference_impedances.len();
        if matrices.len() != frequencies.len() || status.len() != frequencies.len() {
            return Err(Error::Validation(
                "sweep arrays must have one entry per frequency".into(),
            ));
        }
        if matrices.iter().any(|m| m.len() != n * n) {
            return Err(Error::Validation(format!(
                "scattering matrices must be {n}x{n}"
            )));
        }
        for w in frequencies.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Validation(
                    "frequencies must be strictly ascending".into(),
                ));
            }
        }
        Ok(Self {
            frequencies,
            matrices,
            reference_impedances,
            status,
        })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn n_ports(&self) -> usize {
        self.reference_impedances.len()
    }

    pub fn frequencies(&self) -> &[T] {
        &self.frequencies
    }

    pub fn reference_impedances(&self) -> &[T] {
        &self.reference_impedances
    }

    pub fn status(&self) -> &[PointStatus] {
        &self.status
    }

    pub fn matrix(&self, point: usize) -> &[C<T>] {
        &self.matrices[point]
    }

    /// S_ij at a sweep point, with 1-based port numbers i, j.
    pub fn s(&self, point: usize, i: usize, j: usize) -> C<T> {
        let n = self.n_ports();
        self.matrices[point][(i - 1) * n + (j - 1)]
    }
}

struct Solver<'g, T> {
    graph: &'g CircuitGraph<T>,
    nodes: Vec<NodeId>,
    port_rows: Vec<usize>,
    port_z: Vec<T>,
}

impl<'g, T: Real> Solver<'g, T> {
    fn new(graph: &'g CircuitGraph<T>) -> Result<Self> {
        if graph.port_count() == 0 {
            return Err(Error::Validation("graph has no ports".into()));
        }
        let nodes = graph.interior_nodes();
        let mut port_rows = Vec::with_capacity(graph.port_count());
        let mut port_z = Vec::with_capacity(graph.port_count());
        for p in graph.ports() {
            let row = nodes
                .binary_search(&p.node)
                .map_err(|_| Error::Validation(format!("port {} node is ground or missing", p.index)))?;
            port_rows.push(row);
            port_z.push(p.reference_impedance);
        }
        Ok(Self {
            graph,
            nodes,
            port_rows,
            port_z,
        })
    }

    /// Admittance matrix with port terminations added on the diagonal;
    /// `skip_port` (index into the port list) leaves one port unterminated.
    fn terminated_matrix(&self, omega: C<T>, skip_port: Option<usize>) -> Result<CMatrix<T>> {
        let assembled = assemble_nodal_matrix(self.graph, omega)?;
        let mut m = assembled.matrix;
        for (k, (&row, &z)) in self.port_rows.iter().zip(&self.port_z).enumerate() {
            if Some(k) == skip_port {
                continue;
            }
            m.add(row, row, Complex::new(T::one() / z, T::zero()));
        }
        Ok(m)
    }

    fn factor(&self, omega: C<T>, skip_port: Option<usize>) -> Result<LuFactors<T>> {
        let m = self.terminated_matrix(omega, skip_port)?;
        lu_factor(m).map_err(|_| Error::Singular {
            frequency_hz: (omega.re / (real::<T>(2.0) * T::PI())).to_f64_lossy(),
        })
    }

    /// Full port S-matrix at complex ω (row-major n_ports × n_ports).
    ///
    /// Ports are terminated in their reference impedances; port j is excited
    /// by a matched source (Norton current 1/Z_j for a 1 V source), and
    /// S_ij = 2 sqrt(Z_j / Z_i) V_i − δ_ij.
    fn s_matrix(&self, omega: C<T>) -> Result<Vec<C<T>>> {
        let n_ports = self.port_rows.len();
        let lu = self.factor(omega, None)?;
        let dim = self.nodes.len();
        let mut s = vec![Complex::new(T::zero(), T::zero()); n_ports * n_ports];
        let mut rhs = vec![Complex::new(T::zero(), T::zero()); dim];
        for j in 0..n_ports {
            rhs.iter_mut().for_each(|v| *v = Complex::new(T::zero(), T::zero()));
            rhs[self.port_rows[j]] = Complex::new(T::one() / self.port_z[j], T::zero());
            lu.solve_in_place(&mut rhs);
            for i in 0..n_ports {
                let scale = (self.port_z[j] / self.port_z[i]).sqrt();
                let mut sij = rhs[self.port_rows[i]].scale(real::<T>(2.0) * scale);
                if i == j {
                    sij -= Complex::new(T::one(), T::zero());
                }
                s[i * n_ports + j] = sij;
            }
        }
        Ok(s)
    }

    /// S-matrix with the singular-point perturbation fallback.
    fn s_matrix_with_retry(&self, omega: C<T>) -> (Vec<C<T>>, PointStatus) {
        match self.s_matrix(omega) {
            Ok(s) => (s, PointStatus::Ok),
            Err(Error::Singular { .. }) => {
                let perturbed = omega * Complex::new(T::one(), real::<T>(1e-9));
                match self.s_matrix(perturbed) {
                    Ok(s) => (s, PointStatus::PerturbedSingular),
                    Err(_) => (self.nan_matrix(), PointStatus::Failed),
                }
            }
            Err(_) => (self.nan_matrix(), PointStatus::Failed),
        }
    }

    fn nan_matrix(&self) -> Vec<C<T>> {
        let n = self.port_rows.len();
        vec![Complex::new(T::nan(), T::nan()); n * n]
    }
}

/// Sweeps the S-parameters of `graph` over the given real frequencies (Hz).
///
/// Points are independent solves and run in parallel on the current rayon
/// pool; results are gathered in frequency order. A singular point is
/// re-solved at ω(1 + 1e-9 i) and flagged; a point that still fails is
/// flagged and filled with NaN, and the sweep continues.
pub fn compute_s_parameters<T: Real>(
    graph: &CircuitGraph<T>,
    frequencies: &[T],
) -> Result<SParameterSweep<T>> {
    let solver = Solver::new(graph)?;
    let results: Vec<(Vec<C<T>>, PointStatus)> = frequencies
        .par_iter()
        .map(|&f| solver.s_matrix_with_retry(angular(f)))
        .collect();
    let mut matrices = Vec::with_capacity(results.len());
    let mut status = Vec::with_capacity(results.len());
    for (m, st) in results {
        matrices.push(m);
        status.push(st);
    }
    SParameterSweep::new(
        frequencies.to_vec(),
        matrices,
        solver.port_z.iter().map(|&z| z).collect(),
        status,
    )
}

/// S-matrix of `graph` at a single complex frequency (row-major, ports in
/// ascending port-number order). No singular-point fallback is applied.
pub fn s_matrix_at<T: Real>(graph: &CircuitGraph<T>, omega: C<T>) -> Result<Vec<C<T>>> {
    Solver::new(graph)?.s_matrix(omega)
}

/// Input impedance seen at `port_index` (1-based) with every other port
/// terminated in its reference impedance.
pub fn input_impedance<T: Real>(
    graph: &CircuitGraph<T>,
    port_index: usize,
    omega: C<T>,
) -> Result<C<T>> {
    let solver = Solver::new(graph)?;
    let k = solver
        .port_rows
        .iter()
        .enumerate()
        .find(|(i, _)| graph.ports()[*i].index == port_index)
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Validation(format!("no port {port_index}")))?;
    let lu = solver.factor(omega, Some(k))?;
    let mut rhs = vec![Complex::new(T::zero(), T::zero()); solver.nodes.len()];
    rhs[solver.port_rows[k]] = Complex::new(T::one(), T::zero());
    lu.solve_in_place(&mut rhs);
    Ok(rhs[solver.port_rows[k]])
}

/// Impedance at the node of `port_index` with **all** ports terminated,
/// evaluated at complex ω. Its poles are the complex resonances of the
/// terminated network, which is what the pole search iterates on.
pub fn terminated_node_impedance<T: Real>(
    graph: &CircuitGraph<T>,
    port_index: usize,
    omega: C<T>,
) -> Result<C<T>> {
    let solver = Solver::new(graph)?;
    let k = solver
        .port_rows
        .iter()
        .enumerate()
        .find(|(i, _)| graph.ports()[*i].index == port_index)
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Validation(format!("no port {port_index}")))?;
    let lu = solver.factor(omega, None)?;
    let mut rhs = vec![Complex::new(T::zero(), T::zero()); solver.nodes.len()];
    rhs[solver.port_rows[k]] = Complex::new(T::one(), T::zero());
    lu.solve_in_place(&mut rhs);
    Ok(rhs[solver.port_rows[k]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{build_coupled_nanowire_circuit, CoupledResonatorParams};
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn lossless_segment(length: f64, ll: f64, cl: f64) -> TlineParams<f64> {
        TlineParams::lossless(length, ll, cl)
    }

    /// Segment with electrical length βl at 1 GHz using Z0 = 100 Ω.
    fn segment_with_beta_l(beta_l: f64) -> (TlineParams<f64>, Complex64, f64) {
        let f = 1e9;
        let omega = 2.0 * PI * f;
        let z0 = 100.0_f64;
        let v = 1e8;
        let ll = z0 / v;
        let cl = 1.0 / (z0 * v);
        let beta = omega * (ll * cl).sqrt();
        (lossless_segment(beta_l / beta, ll, cl), angular(f), z0)
    }

    #[test]
    fn quarter_wave_stamp_identities() {
        let (seg, omega, z0) = segment_with_beta_l(PI / 2.0);
        let y = tline_two_port_admittance(&seg, omega).unwrap();
        let y0 = 1.0 / z0;
        assert!(y.y11.norm() < 1e-12 * y0, "y11 = {:?}", y.y11);
        assert_relative_eq!(y.y12.im, y0, max_relative = 1e-12);
        assert!(y.y12.re.abs() < 1e-12 * y0);
    }

    #[test]
    fn eighth_wave_stamp_identities() {
        let (seg, omega, z0) = segment_with_beta_l(PI / 4.0);
        let y = tline_two_port_admittance(&seg, omega).unwrap();
        let y0 = 1.0 / z0;
        // Y11 = -i Y0 cot(π/4) = -i Y0; Y12 = +i sqrt(2) Y0.
        assert_relative_eq!(y.y11.im, -y0, max_relative = 1e-12);
        assert!(y.y11.re.abs() < 1e-12 * y0);
        assert_relative_eq!(y.y12.im, 2.0_f64.sqrt() * y0, max_relative = 1e-12);
    }

    #[test]
    fn near_half_wave_matches_laurent_oracle() {
        // βl = π − 1e-9: the stamp must match the Laurent expansion about the
        // pole to 1e-6 relative.
        let eps = 1e-9;
        let (seg, omega, z0) = segment_with_beta_l(PI - eps);
        let y = tline_two_port_admittance(&seg, omega).unwrap();
        let y0 = 1.0 / z0;
        // δ = i(βl − π) = -i eps; coth(δ) = 1/δ + δ/3; csch(δ) = 1/δ − δ/6.
        let delta = Complex64::new(0.0, -eps);
        let coth = delta.inv() + delta / 3.0 - delta.powi(3) / 45.0;
        let csch = delta.inv() - delta / 6.0 + delta.powi(3) * (7.0 / 360.0);
        let y11_oracle = coth * y0;
        let y12_oracle = csch * y0; // -(-1)·csch/z0 for the odd multiple
        assert_relative_eq!(y.y11.im, y11_oracle.im, max_relative = 1e-6);
        assert_relative_eq!(y.y12.im, y12_oracle.im, max_relative = 1e-6);
        assert!(y.y11.norm() > 1e7 * y0, "should be near-singular");
    }

    #[test]
    fn dc_is_rejected() {
        let seg = lossless_segment(1e-3, 1e-6, 1e-10);
        assert!(matches!(
            tline_two_port_admittance(&seg, Complex64::new(0.0, 0.0)),
            Err(Error::DegenerateDc)
        ));
    }

    #[test]
    fn single_shunt_capacitor_matrix() {
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(NodeId(1), GROUND, ElementKind::Capacitor(1e-15));
        g.add_port(1, NodeId(1), 50.0);
        let omega = angular(10e9);
        let nm = assemble_nodal_matrix(&g, omega).unwrap();
        assert_eq!(nm.dimension(), 1);
        let expected = omega.im * 1e-15;
        assert_relative_eq!(nm.entry(0, 0).im, expected, max_relative = 1e-15);
        assert!(nm.entry(0, 0).re.abs() < 1e-30);
    }

    #[test]
    fn single_segment_matrix_is_its_own_stamp() {
        let seg = lossless_segment(100e-6, 1.2e-3, 40e-12);
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(NodeId(1), NodeId(2), ElementKind::TlineSegment(seg));
        g.add_element(NodeId(2), GROUND, ElementKind::Resistor(50.0));
        g.add_port(1, NodeId(1), 50.0);
        let omega = angular(5e9);
        let nm = assemble_nodal_matrix(&g, omega).unwrap();
        let y = tline_two_port_admittance(&seg, omega).unwrap();
        assert_eq!(nm.dimension(), 2);
        assert_relative_eq!(nm.entry(0, 0).im, y.y11.im, max_relative = 1e-15);
        assert_relative_eq!(nm.entry(0, 1).im, y.y12.im, max_relative = 1e-15);
        assert_relative_eq!(nm.entry(1, 0).im, y.y12.im, max_relative = 1e-15);
    }

    #[test]
    fn reference_four_port_matrix_symmetric() {
        let g =
            build_coupled_nanowire_circuit(&CoupledResonatorParams::<f64>::reference_design())
                .unwrap();
        let nm = assemble_nodal_matrix(&g, angular(10e9)).unwrap();
        assert_eq!(nm.dimension(), g.node_count() - 1);
        for r in 0..nm.dimension() {
            for c in 0..r {
                let d = (nm.entry(r, c) - nm.entry(c, r)).norm();
                assert!(d < 1e-12, "asymmetry at ({r},{c}): {d}");
            }
        }
    }

    #[test]
    fn series_capacitor_transmission_matches_formula() {
        let c = 1e-15;
        let z0 = 50.0;
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(NodeId(1), NodeId(2), ElementKind::Capacitor(c));
        g.add_port(1, NodeId(1), z0);
        g.add_port(2, NodeId(2), z0);
        let f = 10e9;
        let sweep = compute_s_parameters(&g, &[f]).unwrap();
        let s21 = sweep.s(0, 2, 1);
        let zc = Complex64::new(0.0, -1.0 / (2.0 * PI * f * c));
        let expected = (2.0 * z0) / (Complex64::new(2.0 * z0, 0.0) + zc);
        assert_relative_eq!(s21.norm(), expected.norm(), max_relative = 1e-12);
        // ~6.3e-3 at these values.
        assert!((s21.norm() - 6.3e-3).abs() < 2e-4);
        // Reciprocity and symmetry of the 2-port.
        assert_relative_eq!(sweep.s(0, 1, 2).norm(), s21.norm(), max_relative = 1e-12);
    }

    #[test]
    fn quarter_wave_transformer_matches_unequal_ports() {
        // Z_c = sqrt(50·200) between a 50 Ω port and a 200 Ω port: matched at
        // the design frequency.
        let z_src = 50.0_f64;
        let z_load = 200.0;
        let zc = (z_src * z_load).sqrt();
        let v = 1e8;
        let ll = zc / v;
        let cl = 1.0 / (zc * v);
        let f = 1e9;
        let quarter = v / (4.0 * f);
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(
            NodeId(1),
            NodeId(2),
            ElementKind::TlineSegment(lossless_segment(quarter, ll, cl)),
        );
        g.add_port(1, NodeId(1), z_src);
        g.add_port(2, NodeId(2), z_load);
        let sweep = compute_s_parameters(&g, &[f]).unwrap();
        assert!(
            sweep.s(0, 1, 1).norm() < 1e-4,
            "|S11| = {}",
            sweep.s(0, 1, 1).norm()
        );
        // Reciprocity with unequal reference impedances.
        assert_relative_eq!(
            sweep.s(0, 2, 1).re,
            sweep.s(0, 1, 2).re,
            epsilon = 1e-9
        );
        assert_relative_eq!(
            sweep.s(0, 2, 1).im,
            sweep.s(0, 1, 2).im,
            epsilon = 1e-9
        );
        // Lossless: |S11|² + |S21|² = 1.
        let p = sweep.s(0, 1, 1).norm_sqr() + sweep.s(0, 2, 1).norm_sqr();
        assert_relative_eq!(p, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn quarter_wave_input_impedance_transforms_load() {
        let zc = 5500.0;
        let z_load = 50.0;
        let v = 1e8;
        let f = 1e9;
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(
            NodeId(1),
            NodeId(2),
            ElementKind::TlineSegment(lossless_segment(v / (4.0 * f), zc / v, 1.0 / (zc * v))),
        );
        g.add_port(1, NodeId(1), 50.0);
        g.add_port(2, NodeId(2), z_load);
        let z_in = input_impedance(&g, 1, angular(f)).unwrap();
        let expected = zc * zc / z_load;
        assert_relative_eq!(z_in.norm(), expected, max_relative = 1e-3);
        assert!((z_in.norm() - 605e3).abs() < 0.001 * 605e3);
    }

    #[test]
    fn half_wave_input_impedance_repeats_load() {
        let zc = 250.0;
        let z_load = 50.0;
        let v = 1e8;
        let f = 1e9;
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(
            NodeId(1),
            NodeId(2),
            ElementKind::TlineSegment(lossless_segment(v / (2.0 * f), zc / v, 1.0 / (zc * v))),
        );
        g.add_port(1, NodeId(1), 50.0);
        g.add_port(2, NodeId(2), z_load);
        let z_in = input_impedance(&g, 1, angular(f)).unwrap();
        assert_relative_eq!(z_in.re, z_load, max_relative = 1e-5);
        assert!(z_in.im.abs() < 1e-3 * z_load);
    }

    #[test]
    fn open_quarter_wave_looks_like_short() {
        // Open-ended line (port 2 absent): βl -> π/2 makes |Z_in| -> 0.
        let zc = 5500.0;
        let v = 1e8;
        let f = 1e9;
        let mut g: CircuitGraph<f64> = CircuitGraph::new();
        g.add_element(
            NodeId(1),
            NodeId(2),
            ElementKind::TlineSegment(lossless_segment(v / (4.0 * f), zc / v, 1.0 / (zc * v))),
        );
        // Keep node 2 connected to ground through a huge resistor so the
        // graph stays valid while the end is effectively open.
        g.add_element(NodeId(2), GROUND, ElementKind::Resistor(1e12));
        g.add_port(1, NodeId(1), 50.0);
        let z_in = input_impedance(&g, 1, angular(f)).unwrap();
        assert!(z_in.norm() < 0.2, "|Z_in| = {}", z_in.norm());
    }

    #[test]
    fn cascade_consistency_two_segments_equal_one() {
        let ll = 1.2e-3;
        let cl = 40e-12;
        let (a, b) = (60e-6, 90e-6);
        let make = |segments: &[f64]| {
            let mut g: CircuitGraph<f64> = CircuitGraph::new();
            let mut n = 1;
            for &len in segments {
                g.add_element(
                    NodeId(n),
                    NodeId(n + 1),
                    ElementKind::TlineSegment(lossless_segment(len, ll, cl)),
                );
                n += 1;
            }
            g.add_port(1, NodeId(1), 50.0);
            g.add_port(2, NodeId(n), 50.0);
            g
        };
        let split = make(&[a, b]);
        let whole = make(&[a + b]);
        let freqs: Vec<f64> = crate::scalar::linspace(2e9, 14e9, 41);
        let s_split = compute_s_parameters(&split, &freqs).unwrap();
        let s_whole = compute_s_parameters(&whole, &freqs).unwrap();
        for pt in 0..freqs.len() {
            for i in 1..=2 {
                for j in 1..=2 {
                    let d = (s_split.s(pt, i, j) - s_whole.s(pt, i, j)).norm();
                    assert!(d < 1e-9, "cascade mismatch {d} at point {pt} S{i}{j}");
                }
            }
        }
    }

    #[test]
    fn reference_sweep_is_reciprocal_and_passive() {
        let g =
            build_coupled_nanowire_circuit(&CoupledResonatorParams::<f64>::reference_design())
                .unwrap();
        let freqs: Vec<f64> = crate::scalar::linspace(2e9, 14e9, 101);
        let sweep = compute_s_parameters(&g, &freqs).unwrap();
        assert!(sweep.status().iter().all(|s| *s == PointStatus::Ok));
        let n = sweep.n_ports();
        for pt in 0..sweep.len() {
            for i in 1..=n {
                for j in 1..=n {
                    let d = (sweep.s(pt, i, j) - sweep.s(pt, j, i)).norm();
                    assert!(d < 1e-9, "non-reciprocal at pt {pt}: {d}");
                }
            }
            // Passivity via the spectral norm of S (power iteration on SᴴS).
            let norm = spectral_norm(sweep.matrix(pt), n);
            assert!(norm <= 1.0 + 1e-9, "‖S‖₂ = {norm} at pt {pt}");
        }
    }

    #[test]
    fn frequency_continuity_away_from_poles() {
        let g =
            build_coupled_nanowire_circuit(&CoupledResonatorParams::<f64>::reference_design())
                .unwrap();
        let f0 = 9.0e9;
        let deltas = [1e5, 1e4, 1e3];
        let mut jumps = Vec::new();
        for &d in &deltas {
            let sweep = compute_s_parameters(&g, &[f0, f0 + d]).unwrap();
            let jump = (sweep.s(1, 2, 1) - sweep.s(0, 2, 1)).norm();
            jumps.push(jump);
        }
        // |S(f+δ) − S(f)| shrinks with δ: no branch-cut jumps.
        assert!(jumps[1] < jumps[0] && jumps[2] < jumps[1], "jumps = {jumps:?}");
        assert!(jumps[2] < 1e-4);
    }

    /// Largest singular value of a dense complex matrix via power iteration.
    pub(crate) fn spectral_norm(m: &[Complex64], n: usize) -> f64 {
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + i as f64 * 0.3, 0.2 * i as f64))
            .collect();
        let norm = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = norm(&v);
        v.iter_mut().for_each(|z| *z /= scale);
        let mut sigma = 0.0;
        for _ in 0..200 {
            // w = S v; u = Sᴴ w.
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for r in 0..n {
                for c in 0..n {
                    w[r] += m[r * n + c] * v[c];
                }
            }
            let mut u = vec![Complex64::new(0.0, 0.0); n];
            for r in 0..n {
                for c in 0..n {
                    u[c] += m[r * n + c].conj() * w[r];
                }
            }
            let u_norm = norm(&u);
            if u_norm == 0.0 {
                return 0.0;
            }
            sigma = u_norm.sqrt();
            u.iter_mut().for_each(|z| *z /= u_norm);
            v = u;
        }
        sigma
    }
}
