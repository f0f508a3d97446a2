//! Helpers shared by the integration suite: fixture loading, adder test
//! programs, and independent oracles the simulator is checked against.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qisxml::genadder::generate_adder;
use qisxml::matrix::CMatrix;
use qisxml::model::{
    ComplexValue, Execute, ExecuteTarget, Identification, MapSource, Memory, OperationTarget,
    Prepare, Program, ProgramAction, QubitSet, Reference, Register,
};
use qisxml::sim::{run_program, RunOptions, RunOutcome};
use qisxml::xml::{Document, DocumentSet};

pub fn fixture_path(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(relative)
}

pub fn read_fixture(relative: &str) -> String {
    std::fs::read_to_string(fixture_path(relative))
        .unwrap_or_else(|err| panic!("fixture {relative}: {err}"))
}

/// The standard library plus a generated `adder{bits}` circuit document,
/// registered under the file name that makes the bare id resolve.
pub fn set_with_adder(bits: i64) -> DocumentSet {
    let mut set = DocumentSet::with_stdlib();
    let library = generate_adder(bits).expect("adder width is positive");
    set.add_document(
        Document::Circuits(library),
        Some(&format!("adder{bits}.xml")),
    )
    .expect("adder library loads");
    set
}

/// A program preparing `a` and `b` onto the adder's input qubits (bit `i` of
/// the first addend at memory qubit `3i+1`, of the second at `3i+2`) and
/// measuring all memory.
pub fn adder_program(bits: u32, a: u64, b: u64) -> Program {
    let memory = 3 * bits;
    let mut indexes = Vec::new();
    for bit in 0..bits {
        if a >> bit & 1 == 1 {
            indexes.push(3 * bit + 1);
        }
        if b >> bit & 1 == 1 {
            indexes.push(3 * bit + 2);
        }
    }
    let prepare = (!indexes.is_empty()).then(|| Prepare {
        sets: vec![QubitSet {
            indexes,
            value: ComplexValue::real(1.0),
        }],
    });
    Program {
        identification: Identification::new(&format!("add_{a}_{b}")),
        name: None,
        description: None,
        memory: Memory::sized(memory),
        registers: Vec::new(),
        actions: vec![ProgramAction::Execute(Execute {
            register: Register {
                identification: None,
                size: memory,
                selectors: Vec::new(),
                prepare,
            },
            target: ExecuteTarget::CircuitRef(Reference::new(&format!("adder{bits}"))),
        })],
    }
}

/// Runs a program in the default sample mode and returns the measured bits.
pub fn run_bits(program: &Program, set: &DocumentSet) -> Vec<(u32, u8)> {
    match run_program(program, set, &RunOptions::default()).expect("program runs") {
        RunOutcome::Sample(record) => record.bits,
        RunOutcome::Distribution(_) => unreachable!("sample mode returns a record"),
    }
}

/// The truth-table expectation for a clean ripple-carry addition: the first
/// addend's bits survive on their wires, sum bits land on the middle wires,
/// helper wires return to zero and the last one carries the overflow.
pub fn classical_adder_bits(bits: u32, a: u64, b: u64) -> Vec<(u32, u8)> {
    let sum = a + b;
    let mut expected = Vec::new();
    for bit in 0..bits {
        expected.push((3 * bit + 1, (a >> bit & 1) as u8));
        expected.push((3 * bit + 2, (sum >> bit & 1) as u8));
        let helper = if bit + 1 == bits {
            (sum >> bits & 1) as u8
        } else {
            0
        };
        expected.push((3 * bit + 3, helper));
    }
    expected
}

/// Applies a circuit of `C-NOT`/`TOFFOLI` references to classical bits,
/// flipping array entries directly — a second opinion fully independent of
/// the amplitude machinery. `bits[i]` holds memory qubit `i+1`.
pub fn classical_circuit_walk(set: &DocumentSet, circuit_id: &str, bits: &mut [u8]) {
    let circuit = set
        .resolve_circuit(&Reference::new(circuit_id))
        .expect("circuit resolves");
    for step in &circuit.steps {
        for operation in &step.operations {
            let mut by_input: Vec<(u32, u32)> = operation
                .maps
                .iter()
                .map(|map| match map.source {
                    MapSource::Qubit(qubit) => (map.input, qubit),
                    MapSource::Fixed(_) => panic!("adders do not use fixed inputs"),
                })
                .collect();
            by_input.sort_unstable();
            let wire = |slot: usize| (by_input[slot].1 - 1) as usize;
            let id = match &operation.target {
                OperationTarget::GateRef(reference) => reference.id.as_str(),
                _ => panic!("adders reference gates by id"),
            };
            match id {
                "C-NOT" => {
                    if bits[wire(0)] == 1 {
                        bits[wire(1)] ^= 1;
                    }
                }
                "TOFFOLI" => {
                    if bits[wire(0)] == 1 && bits[wire(1)] == 1 {
                        bits[wire(2)] ^= 1;
                    }
                }
                other => panic!("unexpected gate {other} in an adder"),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force matrix oracles
// ---------------------------------------------------------------------------

/// Kronecker product, built entry by entry.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = CMatrix::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// The controlled-not permutation on `qubits` wires with 1-based `control`
/// and `target` (qubit 1 is the most significant bit of the basis index).
pub fn cnot_embedded(qubits: u32, control: u32, target: u32) -> CMatrix {
    let dim = 1usize << qubits;
    let control_mask = 1usize << (qubits - control);
    let target_mask = 1usize << (qubits - target);
    let mut out = CMatrix::zeros((dim, dim));
    for column in 0..dim {
        let row = if column & control_mask != 0 {
            column ^ target_mask
        } else {
            column
        };
        out[(row, column)] = Complex64::new(1.0, 0.0);
    }
    out
}

pub fn hadamard_matrix() -> CMatrix {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    CMatrix::from_shape_vec((2, 2), vec![h, h, h, -h]).expect("2x2 shape")
}

pub fn pauli_x_matrix() -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    CMatrix::from_shape_vec((2, 2), vec![zero, one, one, zero]).expect("2x2 shape")
}

/// Largest absolute entry of `a - b`.
pub fn matrix_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "comparing matrices of equal shape");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
