//! Dense state-vector simulation of programs, and circuit-unitary
//! composition for equivalence testing.
//!
//! Conventions shared with the document model: memory qubit 1 is the
//! most-significant bit of the basis index, and gate input 1 is the
//! most-significant bit of a gate's local index. A `StateVector` of n qubits
//! holds all 2^n amplitudes; n is capped at [`MAX_QUBITS`].

use crate::matrix::{conjugate_transpose, realize_matrix, CMatrix, MatrixError};
use crate::model::{
    effective_measure_targets, resolve_register, Circuit, ExecuteTarget, Gate, MapSource, Operation,
    OperationTarget, Prepare, Program, ProgramAction, RegisterError,
};
use crate::validate::{validate, Finding, Severity, ValidateOptions};
use crate::xml::{DocumentSet, ResolveError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use thiserror::Error;

/// Largest simulatable memory: 2^24 amplitudes.
pub const MAX_QUBITS: u32 = 24;
/// Largest circuit [`circuit_unitary`] will compose densely.
pub const MAX_UNITARY_SIZE: u32 = 10;
/// Deepest allowed circuit-in-circuit nesting.
pub const MAX_DEPTH: u32 = 16;
/// Probability tolerance: outcomes this close to certain skip the RNG.
const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SimError {
    #[error("validation found {} error(s); first: {}", errors.len(), first_message(errors))]
    ValidationFailed { errors: Vec<Finding> },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("fixed-value maps cannot be executed")]
    FixedValueMapUnsupported,
    #[error("executing a program from a program is not supported")]
    SubProgramUnsupported,
    #[error("memory of {0} qubits exceeds the {MAX_QUBITS}-qubit limit")]
    MemoryTooLarge(u32),
    #[error("matrix is {rows}x{cols} but {targets} target(s) require {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        targets: usize,
        expected: usize,
    },
    #[error("target qubit {0} appears more than once")]
    DuplicateTarget(u32),
    #[error("target qubit {target} is outside the {qubits}-qubit state")]
    TargetOutOfRange { target: u32, qubits: u32 },
    #[error("input {0} of the applied target is not mapped")]
    UnmappedInput(u32),
    #[error("circuit of size {0} exceeds the {MAX_UNITARY_SIZE}-qubit dense-unitary limit")]
    CircuitTooLarge(u32),
    #[error("nested circuit references exceed depth {MAX_DEPTH}")]
    NestedCircuitDepthExceeded,
    #[error("register size {register} does not match circuit size {circuit}")]
    ExecuteSizeMismatch { register: u32, circuit: u32 },
    #[error("prepare value: {0}")]
    PrepareValue(String),
    #[error("initial qubit state: {0}")]
    InitialState(String),
    #[error(transparent)]
    Matrix(MatrixError),
    #[error(transparent)]
    Register(#[from] RegisterError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

fn first_message(errors: &[Finding]) -> String {
    errors
        .first()
        .map(|f| f.message.clone())
        .unwrap_or_default()
}

impl From<MatrixError> for SimError {
    fn from(err: MatrixError) -> Self {
        match err {
            MatrixError::UnboundParameter(name) => SimError::UnboundParameter(name),
            other => SimError::Matrix(other),
        }
    }
}

// ---------------------------------------------------------------------------
// State vector
// ---------------------------------------------------------------------------

/// A pure n-qubit state: 2^n complex amplitudes, qubit 1 = MSB.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: u32,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros state |0…0⟩.
    pub fn zero(qubits: u32) -> Result<Self, SimError> {
        if qubits > MAX_QUBITS {
            return Err(SimError::MemoryTooLarge(qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amplitudes })
    }

    /// The computational basis state with the given index (qubit 1 = MSB).
    pub fn basis(qubits: u32, index: usize) -> Result<Self, SimError> {
        let mut state = StateVector::zero(qubits)?;
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Σ|amplitude|² — 1 within tolerance for any valid state.
    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: u32) -> usize {
        1usize << (self.qubits - qubit)
    }

    /// Probability of reading 1 on the given qubit.
    pub fn probability_of_one(&self, qubit: u32) -> f64 {
        let mask = self.mask(qubit);
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(index, _)| index & mask != 0)
            .map(|(_, amp)| amp.norm_sqr())
            .sum()
    }

    /// Applies a 2^k unitary to k target qubits; `targets[i]` carries gate
    /// input i+1, so the first target is the MSB of the gate's local index.
    pub fn apply_gate(&mut self, matrix: &CMatrix, targets: &[u32]) -> Result<(), SimError> {
        apply_to_amplitudes(&mut self.amplitudes, self.qubits, matrix, targets)
    }

    /// Flips one qubit (a classical X), used by prepare.
    fn flip(&mut self, qubit: u32) {
        let mask = self.mask(qubit);
        for index in 0..self.amplitudes.len() {
            if index & mask == 0 {
                self.amplitudes.swap(index, index | mask);
            }
        }
    }

    /// Projects onto `qubit = bit` and renormalizes. The caller guarantees
    /// the outcome has non-zero probability.
    fn collapse(&mut self, qubit: u32, bit: u8) {
        let mask = self.mask(qubit);
        let mut kept = 0.0;
        for (index, amp) in self.amplitudes.iter_mut().enumerate() {
            let is_one = u8::from(index & mask != 0);
            if is_one != bit {
                *amp = Complex64::new(0.0, 0.0);
            } else {
                kept += amp.norm_sqr();
            }
        }
        debug_assert!(kept > 0.0, "collapsed to an impossible outcome");
        let scale = 1.0 / kept.sqrt();
        for amp in &mut self.amplitudes {
            *amp *= scale;
        }
    }

    /// Measures one qubit: samples an outcome, collapses to it.
    fn measure(&mut self, qubit: u32, rng: &mut CountingRng) -> u8 {
        let p_one = self.probability_of_one(qubit);
        let outcome = u8::from(rng.sample_bool(p_one));
        self.collapse(qubit, outcome);
        outcome
    }

    /// Forces one qubit to a classical bit: measure, then flip when the
    /// outcome disagrees (the measure-then-conditional-X prepare idiom).
    fn force(&mut self, qubit: u32, bit: u8, rng: &mut CountingRng) {
        let outcome = self.measure(qubit, rng);
        if outcome != bit {
            self.flip(qubit);
        }
    }
}

/// Core gather/apply/scatter over a raw amplitude buffer, shared by
/// [`StateVector::apply_gate`] and the unitary composer.
fn apply_to_amplitudes(
    amplitudes: &mut [Complex64],
    qubits: u32,
    matrix: &CMatrix,
    targets: &[u32],
) -> Result<(), SimError> {
    let k = targets.len();
    let local_dim = 1usize << k;
    if matrix.nrows() != local_dim || matrix.ncols() != local_dim {
        return Err(SimError::DimensionMismatch {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
            targets: k,
            expected: local_dim,
        });
    }
    // Global bit position of each target; input 1 (targets[0]) is the MSB of
    // the local index.
    let mut shifts = Vec::with_capacity(k);
    for (i, &target) in targets.iter().enumerate() {
        if target < 1 || target > qubits {
            return Err(SimError::TargetOutOfRange {
                target,
                qubits,
            });
        }
        if targets[..i].contains(&target) {
            return Err(SimError::DuplicateTarget(target));
        }
        shifts.push(qubits - target);
    }
    let target_mask: usize = shifts.iter().map(|&s| 1usize << s).sum();

    // Global index of local basis state `local` relative to a base index.
    let spread = |local: usize| -> usize {
        let mut bits = 0usize;
        for (i, &shift) in shifts.iter().enumerate() {
            if local & (1 << (k - 1 - i)) != 0 {
                bits |= 1 << shift;
            }
        }
        bits
    };
    let offsets: Vec<usize> = (0..local_dim).map(spread).collect();

    let mut gathered = vec![Complex64::new(0.0, 0.0); local_dim];
    for base in 0..amplitudes.len() {
        if base & target_mask != 0 {
            continue;
        }
        for (local, offset) in offsets.iter().enumerate() {
            gathered[local] = amplitudes[base | offset];
        }
        for (row, offset) in offsets.iter().enumerate() {
            let mut sum = Complex64::new(0.0, 0.0);
            for (col, &value) in gathered.iter().enumerate() {
                sum += matrix[(row, col)] * value;
            }
            amplitudes[base | offset] = sum;
        }
    }
    Ok(())
}

/// A seeded RNG that counts how many genuinely random draws were made, so a
/// run can report whether its outcome was deterministic.
struct CountingRng {
    rng: ChaCha8Rng,
    draws: usize,
}

impl CountingRng {
    fn new(seed: u64) -> Self {
        CountingRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// Bernoulli draw; certain outcomes (p ≈ 0 or 1) skip the RNG entirely.
    fn sample_bool(&mut self, p: f64) -> bool {
        if p <= TOLERANCE {
            return false;
        }
        if p >= 1.0 - TOLERANCE {
            return true;
        }
        self.draws += 1;
        self.rng.gen_bool(p.clamp(0.0, 1.0))
    }
}

// ---------------------------------------------------------------------------
// Program execution
// ---------------------------------------------------------------------------

/// How the final measurement is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Collapse each measured qubit with the seeded RNG.
    Sample,
    /// Report the joint outcome distribution of the measured qubits.
    Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub mode: RunMode,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            mode: RunMode::Sample,
        }
    }
}

/// Whether any amplitude-level randomness influenced a sampled record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordMode {
    Sampled { seed: u64 },
    Deterministic,
}

/// The sampled bits of a run, one per effective measure target, in target
/// order (ascending for the classic programs).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    /// (1-based memory index, measured bit).
    pub bits: Vec<(u32, u8)>,
    pub mode: RecordMode,
}

/// The joint outcome distribution over the effective measure targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    /// 1-based memory indexes, in measurement order.
    pub targets: Vec<u32>,
    /// (bit pattern, probability), ascending by pattern; the first target is
    /// the pattern's MSB. Zero-probability patterns are omitted.
    pub outcomes: Vec<(u64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunOutcome {
    Sample(MeasurementRecord),
    Distribution(Distribution),
}

/// Runs a program against the set it was loaded from: validate, prepare,
/// execute every action in order, then measure the effective targets.
pub fn run_program(
    program: &Program,
    set: &DocumentSet,
    options: &RunOptions,
) -> Result<RunOutcome, SimError> {
    if program.memory.size > MAX_QUBITS {
        return Err(SimError::MemoryTooLarge(program.memory.size));
    }
    let errors: Vec<Finding> = validate(set, &ValidateOptions::strict())
        .into_iter()
        .filter(|f| f.severity == Severity::Error)
        .collect();
    if !errors.is_empty() {
        return Err(SimError::ValidationFailed { errors });
    }

    let mut rng = CountingRng::new(options.seed);
    let mut state = initial_state(program)?;
    if let Some(prepare) = &program.memory.prepare {
        let all: Vec<u32> = (1..=program.memory.size).collect();
        apply_prepare(&mut state, prepare, &all, &mut rng)?;
    }

    for action in &program.actions {
        match action {
            ProgramAction::Execute(execute) => {
                let window = resolve_register(
                    &execute.register,
                    program.memory.size,
                    &program.registers,
                )?;
                if let Some(prepare) = &execute.register.prepare {
                    apply_prepare(&mut state, prepare, &window, &mut rng)?;
                }
                match &execute.target {
                    ExecuteTarget::Circuit(circuit) => {
                        run_circuit(&mut state, circuit, &window, set, false, 0)?;
                    }
                    ExecuteTarget::CircuitRef(reference) => {
                        let circuit = set.resolve_circuit(reference)?;
                        if window.len() != circuit.size as usize {
                            return Err(SimError::ExecuteSizeMismatch {
                                register: execute.register.size,
                                circuit: circuit.size,
                            });
                        }
                        run_circuit(&mut state, circuit, &window, set, false, 0)?;
                    }
                    ExecuteTarget::ProgramRef(_) => return Err(SimError::SubProgramUnsupported),
                }
            }
            ProgramAction::Measure(measure) => {
                let window = resolve_register(
                    &measure.register,
                    program.memory.size,
                    &program.registers,
                )?;
                for qubit in window {
                    state.measure(qubit, &mut rng);
                }
            }
        }
    }

    let targets = effective_measure_targets(program)?;
    match options.mode {
        RunMode::Sample => {
            let bits = targets
                .iter()
                .map(|&qubit| (qubit, state.measure(qubit, &mut rng)))
                .collect();
            let mode = if rng.draws == 0 {
                RecordMode::Deterministic
            } else {
                RecordMode::Sampled { seed: options.seed }
            };
            Ok(RunOutcome::Sample(MeasurementRecord { bits, mode }))
        }
        RunMode::Distribution => Ok(RunOutcome::Distribution(joint_distribution(
            &state, &targets,
        ))),
    }
}

/// Builds the initial product state from the memory's explicit qubit states
/// (default |0⟩ per qubit).
fn initial_state(program: &Program) -> Result<StateVector, SimError> {
    let n = program.memory.size;
    if program.memory.qubits.is_empty() {
        return StateVector::zero(n);
    }
    let one = Complex64::new(1.0, 0.0);
    let nil = Complex64::new(0.0, 0.0);
    let mut pairs = vec![(one, nil); n as usize];
    let empty = HashMap::new();
    let mut position = 0u32;
    for state in &program.memory.qubits {
        position = state.index.unwrap_or(position + 1);
        if position < 1 || position > n {
            return Err(SimError::InitialState(format!(
                "qubit {position} is outside memory of size {n}"
            )));
        }
        let zero = state
            .zero
            .resolve(&empty)
            .map_err(|e| SimError::InitialState(e.to_string()))?;
        let one = state
            .one
            .resolve(&empty)
            .map_err(|e| SimError::InitialState(e.to_string()))?;
        pairs[position as usize - 1] = (zero, one);
    }
    let mut amplitudes = vec![one];
    for &(zero, one) in &pairs {
        let mut next = Vec::with_capacity(amplitudes.len() * 2);
        for &amp in &amplitudes {
            next.push(amp * zero);
            next.push(amp * one);
        }
        amplitudes = next;
    }
    Ok(StateVector {
        qubits: n,
        amplitudes,
    })
}

/// Applies a prepare block: each qubit set names positions within `window`
/// (1-based) and a classical value 0 or 1 to force them to.
fn apply_prepare(
    state: &mut StateVector,
    prepare: &Prepare,
    window: &[u32],
    rng: &mut CountingRng,
) -> Result<(), SimError> {
    let empty = HashMap::new();
    for set in &prepare.sets {
        let value = set
            .value
            .resolve(&empty)
            .map_err(|e| SimError::PrepareValue(e.to_string()))?;
        let bit = if value.norm() <= TOLERANCE {
            0u8
        } else if (value - Complex64::new(1.0, 0.0)).norm() <= TOLERANCE {
            1u8
        } else {
            return Err(SimError::PrepareValue(format!(
                "value {value} is not a classical 0 or 1"
            )));
        };
        for &index in &set.indexes {
            let qubit = *window
                .get(index as usize - 1)
                .ok_or_else(|| SimError::PrepareValue(format!(
                    "prepared qubit {index} is outside the register"
                )))?;
            state.force(qubit, bit, rng);
        }
    }
    Ok(())
}

/// Runs a circuit on the memory qubits `window` (circuit qubit i ↦
/// window[i-1]). `reverse` plays the steps backwards with each operation
/// adjointed.
fn run_circuit(
    state: &mut StateVector,
    circuit: &Circuit,
    window: &[u32],
    set: &DocumentSet,
    reverse: bool,
    depth: u32,
) -> Result<(), SimError> {
    if depth > MAX_DEPTH {
        return Err(SimError::NestedCircuitDepthExceeded);
    }
    let steps: Vec<_> = if reverse {
        circuit.steps.iter().rev().collect()
    } else {
        circuit.steps.iter().collect()
    };
    for step in steps {
        for operation in &step.operations {
            let targets = operation_targets(operation, window)?;
            let effective_reverse = operation.reverse != reverse;
            match resolve_operation_target(operation, set)? {
                ResolvedTarget::Gate(gate) => {
                    let matrix = operation_matrix(gate, operation, effective_reverse)?;
                    state.apply_gate(&matrix, &targets)?;
                }
                ResolvedTarget::Circuit(sub) => {
                    run_circuit(state, sub, &targets, set, effective_reverse, depth + 1)?;
                }
            }
        }
    }
    Ok(())
}

enum ResolvedTarget<'a> {
    Gate(&'a Gate),
    Circuit(&'a Circuit),
}

fn resolve_operation_target<'a>(
    operation: &'a Operation,
    set: &'a DocumentSet,
) -> Result<ResolvedTarget<'a>, SimError> {
    match &operation.target {
        OperationTarget::Gate(inline) => Ok(ResolvedTarget::Gate(inline)),
        OperationTarget::GateRef(reference) => Ok(ResolvedTarget::Gate(set.resolve_gate(reference)?)),
        OperationTarget::CircuitRef(reference) => {
            Ok(ResolvedTarget::Circuit(set.resolve_circuit(reference)?))
        }
    }
}

/// The memory qubits an operation acts on, ordered by gate input: entry i
/// carries input i+1.
fn operation_targets(operation: &Operation, window: &[u32]) -> Result<Vec<u32>, SimError> {
    let mut by_input: Vec<Option<u32>> = vec![None; operation.maps.len()];
    for map in &operation.maps {
        let qubit = match map.source {
            MapSource::Qubit(q) => q,
            MapSource::Fixed(_) => return Err(SimError::FixedValueMapUnsupported),
        };
        let memory = *window
            .get(qubit as usize - 1)
            .ok_or(SimError::TargetOutOfRange {
                target: qubit,
                qubits: window.len() as u32,
            })?;
        let slot = map.input as usize - 1;
        if map.input < 1 || slot >= by_input.len() {
            return Err(SimError::UnmappedInput(map.input));
        }
        by_input[slot] = Some(memory);
    }
    by_input
        .into_iter()
        .enumerate()
        .map(|(i, slot)| slot.ok_or(SimError::UnmappedInput(i as u32 + 1)))
        .collect()
}

/// Realizes the matrix an operation applies, honoring parameter bindings and
/// the reverse (adjoint) flag.
fn operation_matrix(gate: &Gate, operation: &Operation, reverse: bool) -> Result<CMatrix, SimError> {
    let bindings: HashMap<String, f64> = operation
        .bindings
        .iter()
        .map(|b| (b.name.clone(), b.value))
        .collect();
    let matrix = realize_matrix(&gate.transformation, &bindings)?;
    if reverse {
        Ok(conjugate_transpose(&matrix)?)
    } else {
        Ok(matrix)
    }
}

/// The joint distribution of the target qubits in the current state.
fn joint_distribution(state: &StateVector, targets: &[u32]) -> Distribution {
    let n = state.qubits();
    let mut probabilities: HashMap<u64, f64> = HashMap::new();
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut pattern = 0u64;
        for (i, &target) in targets.iter().enumerate() {
            if index & (1usize << (n - target)) != 0 {
                pattern |= 1u64 << (targets.len() - 1 - i);
            }
        }
        *probabilities.entry(pattern).or_insert(0.0) += p;
    }
    let mut outcomes: Vec<(u64, f64)> = probabilities
        .into_iter()
        .filter(|(_, p)| *p > 1e-12)
        .collect();
    outcomes.sort_by_key(|(pattern, _)| *pattern);
    Distribution {
        targets: targets.to_vec(),
        outcomes,
    }
}

// ---------------------------------------------------------------------------
// Circuit unitary composition
// ---------------------------------------------------------------------------

/// Composes the dense unitary of a circuit: the product of its step matrices
/// with later steps multiplying on the left. `bindings` supplies ambient
/// parameter values; operation-level bindings override them.
pub fn circuit_unitary(
    circuit: &Circuit,
    set: &DocumentSet,
    bindings: &HashMap<String, f64>,
) -> Result<CMatrix, SimError> {
    compose_unitary(circuit, set, bindings, false, 0)
}

fn compose_unitary(
    circuit: &Circuit,
    set: &DocumentSet,
    bindings: &HashMap<String, f64>,
    reverse: bool,
    depth: u32,
) -> Result<CMatrix, SimError> {
    if circuit.size > MAX_UNITARY_SIZE {
        return Err(SimError::CircuitTooLarge(circuit.size));
    }
    if depth > MAX_DEPTH {
        return Err(SimError::NestedCircuitDepthExceeded);
    }
    let n = circuit.size;
    let dimension = 1usize << n;
    let mut unitary = CMatrix::eye(dimension);
    let window: Vec<u32> = (1..=n).collect();
    let steps: Vec<_> = if reverse {
        circuit.steps.iter().rev().collect()
    } else {
        circuit.steps.iter().collect()
    };
    let mut column = vec![Complex64::new(0.0, 0.0); dimension];
    for step in steps {
        for operation in &step.operations {
            let targets = operation_targets(operation, &window)?;
            let effective_reverse = operation.reverse != reverse;
            let matrix = match resolve_operation_target(operation, set)? {
                ResolvedTarget::Gate(gate) => {
                    let mut merged = bindings.clone();
                    for binding in &operation.bindings {
                        merged.insert(binding.name.clone(), binding.value);
                    }
                    let realized = realize_matrix(&gate.transformation, &merged)?;
                    if effective_reverse {
                        conjugate_transpose(&realized)?
                    } else {
                        realized
                    }
                }
                ResolvedTarget::Circuit(sub) => {
                    compose_unitary(sub, set, bindings, effective_reverse, depth + 1)?
                }
            };
            // Multiply the expanded operation onto every column of the
            // accumulated unitary.
            for col in 0..dimension {
                for (row, value) in column.iter_mut().enumerate() {
                    *value = unitary[(row, col)];
                }
                apply_to_amplitudes(&mut column, n, &matrix, &targets)?;
                for (row, value) in column.iter().enumerate() {
                    unitary[(row, col)] = *value;
                }
            }
        }
    }
    Ok(unitary)
}
