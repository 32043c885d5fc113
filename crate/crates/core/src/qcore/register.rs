use std::fmt;

use nalgebra::DMatrix;

use super::operators::{hermitian_part, DensityOperator, UnitaryOperator, C64};
use crate::{Error, Result};

/// Default register capacity in qubits (4096 × 4096 matrices).
pub const DEFAULT_MAX_QUBITS: usize = 12;

/// Names a tensor factor of a register.
///
/// `Ancilla(k)` is the physical environment qubit `E_k` (1-based). `Memory` and
/// `Fresh` name the fixed slots of the memory-embedded representation, whose
/// contents change identity as states are swapped through them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    System,
    Ancilla(usize),
    Memory(usize),
    Fresh(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::System => write!(f, "S"),
            Label::Ancilla(k) => write!(f, "E{k}"),
            Label::Memory(k) => write!(f, "M{k}"),
            Label::Fresh(k) => write!(f, "F{k}"),
        }
    }
}

/// Kronecker product `a ⊗ b` under the default capacity.
pub fn tensor_product(a: &DensityOperator, b: &DensityOperator) -> Result<DensityOperator> {
    tensor_product_within(a, b, DEFAULT_MAX_QUBITS)
}

pub fn tensor_product_within(
    a: &DensityOperator,
    b: &DensityOperator,
    max_qubits: usize,
) -> Result<DensityOperator> {
    let required = a.num_qubits() + b.num_qubits();
    if required > max_qubits {
        return Err(Error::Capacity {
            required,
            max: max_qubits,
        });
    }
    Ok(DensityOperator::from_matrix_unchecked(
        a.matrix().kronecker(b.matrix()),
    ))
}

/// Full-register index offsets for every assignment of the qubits at
/// `positions`, with `positions[0]` as the most significant bit.
fn offsets(n: usize, positions: &[usize]) -> Vec<usize> {
    let m = positions.len();
    (0..1usize << m)
        .map(|k| {
            positions
                .iter()
                .enumerate()
                .filter(|(b, _)| (k >> (m - 1 - b)) & 1 == 1)
                .fold(0, |acc, (_, &p)| acc | 1 << (n - 1 - p))
        })
        .collect()
}

/// Compact index of the qubits at `positions` within full index `i`.
fn extract(n: usize, i: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0, |acc, &p| (acc << 1) | ((i >> (n - 1 - p)) & 1))
}

/// A density operator whose tensor factors are bound to physical qubits.
///
/// The first label is the most significant qubit of the matrix index.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledRegister {
    state: DensityOperator,
    labels: Vec<Label>,
}

impl LabeledRegister {
    pub fn new(state: DensityOperator, labels: Vec<Label>) -> Result<Self> {
        if state.dim() != 1usize << labels.len() {
            return Err(Error::Argument(format!(
                "{} labels for a state of dimension {}",
                labels.len(),
                state.dim()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Argument(format!("duplicate label {l}")));
            }
        }
        Ok(Self { state, labels })
    }

    pub fn single(label: Label, state: DensityOperator) -> Result<Self> {
        Self::new(state, vec![label])
    }

    /// Builds `s₁ ⊗ s₂ ⊗ …` from labelled factors.
    pub fn product(factors: &[(Label, DensityOperator)], max_qubits: usize) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Argument("empty product".into()))?;
        let mut reg = Self::new(first.1.clone(), vec![first.0])?;
        for (label, state) in rest {
            reg = reg.append(*label, state, max_qubits)?;
        }
        Ok(reg)
    }

    pub fn state(&self) -> &DensityOperator {
        &self.state
    }

    pub fn into_state(self) -> DensityOperator {
        self.state
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }

    pub fn position(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::Argument(format!("unknown label {label}")))
    }

    fn positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut pos = Vec::with_capacity(labels.len());
        for &l in labels {
            let p = self.position(l)?;
            if pos.contains(&p) {
                return Err(Error::Argument(format!("label {l} listed twice")));
            }
            pos.push(p);
        }
        Ok(pos)
    }

    /// Splits into sorted positions of `part` and of its complement.
    fn bipartition(&self, part: &[Label]) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut a = self.positions(part)?;
        a.sort_unstable();
        let b: Vec<usize> = (0..self.labels.len()).filter(|p| !a.contains(p)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::Argument(
                "a bipartition needs both sides non-empty".into(),
            ));
        }
        Ok((a, b))
    }

    /// `self ⊗ state`, with the new factor labelled `label`.
    pub fn append(&self, label: Label, state: &DensityOperator, max_qubits: usize) -> Result<Self> {
        if self.contains(label) {
            return Err(Error::Argument(format!("duplicate label {label}")));
        }
        if state.num_qubits() != 1 {
            return Err(Error::Argument("append takes a single-qubit factor".into()));
        }
        let joint = tensor_product_within(&self.state, state, max_qubits)?;
        let mut labels = self.labels.clone();
        labels.push(label);
        Self::new(joint, labels)
    }

    /// Reduced state on `keep`; the result lists the kept labels in their
    /// original register order.
    pub fn partial_trace(&self, keep: &[Label]) -> Result<LabeledRegister> {
        if keep.is_empty() {
            return Err(Error::Argument(
                "partial trace must keep at least one label".into(),
            ));
        }
        let mut kept = self.positions(keep)?;
        kept.sort_unstable();
        let n = self.labels.len();
        let traced: Vec<usize> = (0..n).filter(|p| !kept.contains(p)).collect();
        let labels: Vec<Label> = kept.iter().map(|&p| self.labels[p]).collect();
        if traced.is_empty() {
            return Ok(self.clone());
        }
        let keep_off = offsets(n, &kept);
        let trace_off = offsets(n, &traced);
        let full = self.state.matrix();
        let dk = keep_off.len();
        let out = DMatrix::from_fn(dk, dk, |i, j| {
            trace_off
                .iter()
                .map(|&t| full[(keep_off[i] | t, keep_off[j] | t)])
                .sum::<C64>()
        });
        Self::new(
            DensityOperator::from_matrix_unchecked(hermitian_part(&out)),
            labels,
        )
    }

    /// Traces out the listed labels.
    pub fn trace_out(&self, drop: &[Label]) -> Result<LabeledRegister> {
        self.positions(drop)?;
        let keep: Vec<Label> = self
            .labels
            .iter()
            .copied()
            .filter(|l| !drop.contains(l))
            .collect();
        self.partial_trace(&keep)
    }

    /// Single-factor marginal.
    pub fn marginal(&self, label: Label) -> Result<DensityOperator> {
        Ok(self.partial_trace(&[label])?.into_state())
    }

    /// Conjugates the state by `u` acting on `targets` (in `u`'s qubit order)
    /// and identity elsewhere.
    pub fn apply_on(&self, targets: &[Label], u: &UnitaryOperator) -> Result<LabeledRegister> {
        if u.dim() != 1usize << targets.len() {
            return Err(Error::Argument(format!(
                "unitary of dimension {} on {} target qubits",
                u.dim(),
                targets.len()
            )));
        }
        let target_pos = self.positions(targets)?;
        let n = self.labels.len();
        let rest_pos: Vec<usize> = (0..n).filter(|p| !target_pos.contains(p)).collect();
        let t_off = offsets(n, &target_pos);
        let r_off = offsets(n, &rest_pos);
        let dim = self.state.dim();
        let k = t_off.len();
        let um = u.matrix();

        // Column-major storage: entry (i, j) lives at j * dim + i.
        let mut data: Vec<C64> = self.state.matrix().as_slice().to_vec();
        let mut buf = vec![C64::new(0.0, 0.0); k];

        // ρ ← U ρ
        for col in 0..dim {
            let base = col * dim;
            for &r in &r_off {
                for (b, slot) in buf.iter_mut().enumerate() {
                    *slot = data[base + (r | t_off[b])];
                }
                for a in 0..k {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..k {
                        acc += um[(a, b)] * buf[b];
                    }
                    data[base + (r | t_off[a])] = acc;
                }
            }
        }
        // ρ ← ρ U†
        for row in 0..dim {
            for &r in &r_off {
                for (b, slot) in buf.iter_mut().enumerate() {
                    *slot = data[(r | t_off[b]) * dim + row];
                }
                for a in 0..k {
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..k {
                        acc += buf[b] * um[(a, b)].conj();
                    }
                    data[(r | t_off[a]) * dim + row] = acc;
                }
            }
        }
        let out = DMatrix::from_vec(dim, dim, data);
        Ok(Self {
            state: DensityOperator::from_matrix_unchecked(hermitian_part(&out)),
            labels: self.labels.clone(),
        })
    }

    /// Replaces the state by the product of its marginals on `part` and on the
    /// complement, keeping the label order.
    pub fn decorrelate(&self, part: &[Label]) -> Result<LabeledRegister> {
        let (a_pos, b_pos) = self.bipartition(part)?;
        let a_labels: Vec<Label> = a_pos.iter().map(|&p| self.labels[p]).collect();
        let b_labels: Vec<Label> = b_pos.iter().map(|&p| self.labels[p]).collect();
        let rho_a = self.partial_trace(&a_labels)?;
        let rho_b = self.partial_trace(&b_labels)?;
        let (ma, mb) = (rho_a.state.matrix(), rho_b.state.matrix());
        let n = self.labels.len();
        let dim = self.state.dim();
        let ia: Vec<usize> = (0..dim).map(|i| extract(n, i, &a_pos)).collect();
        let ib: Vec<usize> = (0..dim).map(|i| extract(n, i, &b_pos)).collect();
        let out = DMatrix::from_fn(dim, dim, |i, j| ma[(ia[i], ia[j])] * mb[(ib[i], ib[j])]);
        Ok(Self {
            state: DensityOperator::from_matrix_unchecked(out),
            labels: self.labels.clone(),
        })
    }

    /// `S(ρ_A) + S(ρ_B) − S(ρ_AB)` for the cut `part | complement`.
    pub fn mutual_information(&self, part: &[Label]) -> Result<f64> {
        let (a_pos, b_pos) = self.bipartition(part)?;
        let a: Vec<Label> = a_pos.iter().map(|&p| self.labels[p]).collect();
        let b: Vec<Label> = b_pos.iter().map(|&p| self.labels[p]).collect();
        let s_a = super::von_neumann_entropy(self.partial_trace(&a)?.state());
        let s_b = super::von_neumann_entropy(self.partial_trace(&b)?.state());
        let s_ab = super::von_neumann_entropy(&self.state);
        Ok(s_a + s_b - s_ab)
    }

    /// Replaces the factor `label` by `state`, discarding its correlations.
    pub fn refresh(&self, label: Label, state: &DensityOperator) -> Result<LabeledRegister> {
        self.position(label)?;
        let others: Vec<Label> = self
            .labels
            .iter()
            .copied()
            .filter(|&l| l != label)
            .collect();
        if others.is_empty() {
            return Self::single(label, state.clone());
        }
        let rest = self.partial_trace(&others)?;
        let appended = rest.append(label, state, self.labels.len())?;
        appended.permuted_to(&self.labels)
    }

    /// Reorders the tensor factors to follow `order`.
    pub fn permuted_to(&self, order: &[Label]) -> Result<LabeledRegister> {
        if order.len() != self.labels.len() {
            return Err(Error::Argument("permutation must list every label".into()));
        }
        let src_pos = self.positions(order)?;
        if src_pos.iter().zip(0..).all(|(&s, t)| s == t) {
            return Ok(self.clone());
        }
        let n = self.labels.len();
        let dim = self.state.dim();
        // New index bit for slot t comes from old position src_pos[t].
        let map: Vec<usize> = (0..dim).map(|i| extract(n, i, &src_pos)).collect();
        // map[old] = new; invert to gather.
        let mut inv = vec![0usize; dim];
        for (old, &new) in map.iter().enumerate() {
            inv[new] = old;
        }
        let m = self.state.matrix();
        let out = DMatrix::from_fn(dim, dim, |i, j| m[(inv[i], inv[j])]);
        Self::new(DensityOperator::from_matrix_unchecked(out), order.to_vec())
    }
}
