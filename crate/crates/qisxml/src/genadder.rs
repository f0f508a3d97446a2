//! Ripple-carry adder circuit generation.
//!
//! Port of the classic `genadder_xml` generator: for N input bits it emits a
//! circuit library (id `genadder`) holding one anonymous circuit over 3N
//! qubits — for each bit position an input A, an input B that doubles as the
//! sum output, and an ancilla (the last ancilla is the carry out). The
//! recursion ripples the carry upward with Toffoli/C-NOT pairs, then
//! uncomputes every ancilla on the way back down, so the adder leaves no
//! garbage. Gate count is 7N−6 for N ≥ 2; one operation per step.

use crate::model::{Circuit, CircuitLibrary, Identification, Map, Operation, Step, WireLabel};
use thiserror::Error;

/// Identification of the generated library.
pub const LIBRARY_ID: &str = "genadder";

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum GenAdderError {
    #[error("number of bits must be positive: {0}")]
    BadWidth(i64),
}

/// Generates the N-bit ripple-carry adder as a one-circuit library.
pub fn generate_adder(num_bits: i64) -> Result<CircuitLibrary, GenAdderError> {
    if num_bits < 1 {
        return Err(GenAdderError::BadWidth(num_bits));
    }
    let n = num_bits as u32;

    let mut inputs = Vec::new();
    for i in 0..n {
        inputs.push(WireLabel {
            qubit: 3 * i + 1,
            name: format!("InputA{i}"),
        });
        inputs.push(WireLabel {
            qubit: 3 * i + 2,
            name: format!("InputB{i}"),
        });
        inputs.push(WireLabel {
            qubit: 3 * i + 3,
            name: format!("Ancillary{i}"),
        });
    }
    let mut outputs: Vec<WireLabel> = (0..n)
        .map(|i| WireLabel {
            qubit: 3 * i + 2,
            name: format!("Sum{i}"),
        })
        .collect();
    outputs.push(WireLabel {
        qubit: 3 * n,
        name: "CarryOut".to_string(),
    });

    let mut builder = Builder::default();
    generate_gates(&mut builder, num_bits, 0);

    let circuit = Circuit {
        identification: None,
        size: 3 * n,
        name: None,
        description: None,
        inputs,
        outputs,
        steps: builder.steps,
    };
    Ok(CircuitLibrary {
        identification: Some(Identification::new(LIBRARY_ID)),
        circuits: vec![circuit],
    })
}

/// Accumulates one-operation steps; a pending comment attaches to the next
/// emitted step.
#[derive(Default)]
struct Builder {
    steps: Vec<Step>,
    pending_comment: Option<String>,
}

impl Builder {
    fn comment(&mut self, text: String) {
        self.pending_comment = Some(text);
    }

    /// C-NOT on 0-based qubits; no-op when the control is negative (the
    /// generator's way of dropping gates that fall off the low end).
    fn cnot(&mut self, control: i64, target: i64) {
        if control < 0 {
            return;
        }
        self.push(Operation::applying_gate(
            "C-NOT",
            vec![
                Map::qubit(control as u32 + 1, 1),
                Map::qubit(target as u32 + 1, 2),
            ],
        ));
    }

    /// Toffoli on 0-based qubits; no-op when either control is negative.
    fn c2not(&mut self, control1: i64, control2: i64, target: i64) {
        if control1 < 0 || control2 < 0 {
            return;
        }
        self.push(Operation::applying_gate(
            "TOFFOLI",
            vec![
                Map::qubit(control1 as u32 + 1, 1),
                Map::qubit(control2 as u32 + 1, 2),
                Map::qubit(target as u32 + 1, 3),
            ],
        ));
    }

    fn push(&mut self, operation: Operation) {
        self.steps.push(Step {
            comment: self.pending_comment.take(),
            operations: vec![operation],
        });
    }
}

/// The adder recursion over 0-based qubits. Bit `b` owns qubits 3b (input A),
/// 3b+1 (input B / sum) and 3b+2 (ancilla / carry); qubit 3b−1 is the carry
/// rippling in from the bit below.
fn generate_gates(builder: &mut Builder, num_bits: i64, bit: i64) {
    let s = 3 * bit;
    builder.comment(format!("sum bit {bit}"));
    builder.c2not(s, s + 1, s + 2);
    builder.cnot(s, s + 1);
    builder.c2not(s - 1, s + 1, s + 2);
    if num_bits > 1 {
        generate_gates(builder, num_bits - 1, bit + 1);
    }
    if num_bits > 1 || bit > 0 {
        builder.comment(format!("finish bit {bit}"));
    }
    if num_bits > 1 {
        builder.c2not(s - 1, s + 1, s + 2);
        builder.c2not(s, s + 1, s + 2);
        builder.cnot(s, s + 2);
    }
    builder.cnot(s - 1, s + 1);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MapSource, OperationTarget};
    use crate::validate::{validate, Severity, ValidateOptions};
    use crate::xml::{Document, DocumentSet};

    /// Flattens a generated circuit to (gate id, mapped qubits in input
    /// order), 1-based.
    fn gate_list(library: &CircuitLibrary) -> Vec<(String, Vec<u32>)> {
        library.circuits[0]
            .steps
            .iter()
            .map(|step| {
                assert_eq!(step.operations.len(), 1);
                let op = &step.operations[0];
                let id = match &op.target {
                    OperationTarget::GateRef(reference) => reference.id.clone(),
                    other => panic!("expected a gate reference, got {other:?}"),
                };
                let mut maps: Vec<(u32, u32)> = op
                    .maps
                    .iter()
                    .map(|map| match map.source {
                        MapSource::Qubit(q) => (map.input, q),
                        MapSource::Fixed(_) => panic!("adder never emits fixed maps"),
                    })
                    .collect();
                maps.sort_unstable();
                (id, maps.into_iter().map(|(_, q)| q).collect())
            })
            .collect()
    }

    fn toffoli(a: u32, b: u32, c: u32) -> (String, Vec<u32>) {
        ("TOFFOLI".to_string(), vec![a, b, c])
    }

    fn cnot(a: u32, b: u32) -> (String, Vec<u32>) {
        ("C-NOT".to_string(), vec![a, b])
    }

    #[test]
    fn one_bit_adder_is_a_toffoli_then_a_cnot() {
        let library = generate_adder(1).unwrap();
        let circuit = &library.circuits[0];
        assert_eq!(circuit.size, 3);
        assert_eq!(gate_list(&library), vec![toffoli(1, 2, 3), cnot(1, 2)]);
    }

    #[test]
    fn two_bit_adder_matches_the_published_step_sequence() {
        let library = generate_adder(2).unwrap();
        let circuit = &library.circuits[0];
        assert_eq!(circuit.size, 6);
        assert_eq!(
            gate_list(&library),
            vec![
                toffoli(1, 2, 3),
                cnot(1, 2),
                toffoli(4, 5, 6),
                cnot(4, 5),
                toffoli(3, 5, 6),
                cnot(3, 5),
                toffoli(1, 2, 3),
                cnot(1, 3),
            ]
        );
        let comments: Vec<(usize, &str)> = circuit
            .steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.comment.as_deref().map(|c| (i + 1, c)))
            .collect();
        assert_eq!(
            comments,
            vec![
                (1, "sum bit 0"),
                (3, "sum bit 1"),
                (6, "finish bit 1"),
                (7, "finish bit 0"),
            ]
        );
        let labels: Vec<(u32, &str)> = circuit
            .inputs
            .iter()
            .map(|l| (l.qubit, l.name.as_str()))
            .collect();
        assert_eq!(
            labels,
            vec![
                (1, "InputA0"),
                (2, "InputB0"),
                (3, "Ancillary0"),
                (4, "InputA1"),
                (5, "InputB1"),
                (6, "Ancillary1"),
            ]
        );
        let outputs: Vec<(u32, &str)> = circuit
            .outputs
            .iter()
            .map(|l| (l.qubit, l.name.as_str()))
            .collect();
        assert_eq!(outputs, vec![(2, "Sum0"), (5, "Sum1"), (6, "CarryOut")]);
    }

    #[test]
    fn three_bit_adder_matches_the_published_gate_listing() {
        // Oracle: the generator's published textual output for N=3, with
        // inp0=1, sum0=2, anc0=3, inp1=4, sum1=5, anc1=6, inp2=7, sum2=8,
        // carryOut=9.
        let expected = vec![
            toffoli(1, 2, 3), // c2not(inp0, sum0, anc0)
            cnot(1, 2),       // cnot(inp0, sum0)
            toffoli(4, 5, 6), // c2not(inp1, sum1, anc1)
            cnot(4, 5),       // cnot(inp1, sum1)
            toffoli(3, 5, 6), // c2not(anc0, sum1, anc1)
            toffoli(7, 8, 9), // c2not(inp2, sum2, carryOut)
            cnot(7, 8),       // cnot(inp2, sum2)
            toffoli(6, 8, 9), // c2not(anc1, sum2, carryOut)
            cnot(6, 8),       // cnot(anc1, sum2)
            toffoli(3, 5, 6), // c2not(anc0, sum1, anc1)
            toffoli(4, 5, 6), // c2not(inp1, sum1, anc1)
            cnot(4, 6),       // cnot(inp1, anc1)
            cnot(3, 5),       // cnot(anc0, sum1)
            toffoli(1, 2, 3), // c2not(inp0, sum0, anc0)
            cnot(1, 3),       // cnot(inp0, anc0)
        ];
        let library = generate_adder(3).unwrap();
        assert_eq!(gate_list(&library), expected);
        let comments: Vec<(usize, &str)> = library.circuits[0]
            .steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.comment.as_deref().map(|c| (i + 1, c)))
            .collect();
        assert_eq!(
            comments,
            vec![
                (1, "sum bit 0"),
                (3, "sum bit 1"),
                (6, "sum bit 2"),
                (9, "finish bit 2"),
                (10, "finish bit 1"),
                (14, "finish bit 0"),
            ]
        );
    }

    #[test]
    fn gate_and_qubit_counts_follow_the_closed_forms() {
        for n in 2..=10 {
            let library = generate_adder(n).unwrap();
            let circuit = &library.circuits[0];
            assert_eq!(circuit.size as i64, 3 * n, "qubits for N={n}");
            assert_eq!(circuit.steps.len() as i64, 7 * n - 6, "gates for N={n}");
            assert_eq!(circuit.inputs.len() as i64, 3 * n);
            assert_eq!(circuit.outputs.len() as i64, n + 1);
        }
    }

    #[test]
    fn zero_or_negative_widths_are_rejected() {
        assert_eq!(generate_adder(0), Err(GenAdderError::BadWidth(0)));
        assert_eq!(generate_adder(-3), Err(GenAdderError::BadWidth(-3)));
    }

    #[test]
    fn generated_circuits_validate_without_errors() {
        let mut set = DocumentSet::with_stdlib();
        set.add_document(
            Document::Circuits(generate_adder(4).unwrap()),
            Some("adder4.xml"),
        )
        .unwrap();
        let findings = validate(&set, &ValidateOptions::strict());
        assert!(
            findings.iter().all(|f| f.severity != Severity::Error),
            "unexpected errors: {findings:?}"
        );
    }
}
