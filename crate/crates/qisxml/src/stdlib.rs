//! The built-in gate and circuit libraries.
//!
//! Both libraries are ordinary QIS-XML documents embedded in the binary and
//! parsed once on first use, so everything the toolchain ships with goes
//! through the same reader as user documents.

use std::sync::OnceLock;

use crate::model::{Circuit, CircuitLibrary, Gate, GateLibrary};
use crate::xml::{parse_document, Document};

/// Library id carried by [`builtin_gates`].
pub const GATE_LIBRARY_ID: &str = "core-gates";
/// Library id carried by [`builtin_circuits`].
pub const CIRCUIT_LIBRARY_ID: &str = "core-circuits";

const GATES_XML: &str = include_str!("stdlib/gates.xml");
const CIRCUITS_XML: &str = include_str!("stdlib/circuits.xml");

/// The standard gate library: Hadamard, the Pauli gates, phase gates,
/// square-root-of-NOT, the controlled gates, swap, Toffoli, Fredkin and the
/// parameterized shift and Deutsch gates.
pub fn builtin_gates() -> &'static GateLibrary {
    static LIBRARY: OnceLock<GateLibrary> = OnceLock::new();
    LIBRARY.get_or_init(|| match parse_document(GATES_XML) {
        Ok(Document::Gates(library)) => library,
        other => panic!("embedded gate library failed to parse: {other:?}"),
    })
}

/// The standard circuit library: gate-equivalent circuits (NOT from two
/// square roots, C-NOT from Hadamard and controlled-Z, Toffoli from one- and
/// two-qubit gates) and a three-qubit phase flip encoder.
pub fn builtin_circuits() -> &'static CircuitLibrary {
    static LIBRARY: OnceLock<CircuitLibrary> = OnceLock::new();
    LIBRARY.get_or_init(|| match parse_document(CIRCUITS_XML) {
        Ok(Document::Circuits(library)) => library,
        other => panic!("embedded circuit library failed to parse: {other:?}"),
    })
}

/// Looks up a built-in gate by id.
pub fn find_gate(id: &str) -> Option<&'static Gate> {
    builtin_gates()
        .gates
        .iter()
        .find(|gate| gate.identification.id == id)
}

/// Looks up a built-in circuit by id.
pub fn find_circuit(id: &str) -> Option<&'static Circuit> {
    builtin_circuits()
        .circuits
        .iter()
        .find(|circuit| circuit.id() == Some(id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_library_parses_and_is_complete() {
        let ids: Vec<&str> = builtin_gates()
            .gates
            .iter()
            .map(|gate| gate.identification.id.as_str())
            .collect();
        assert_eq!(
            ids,
            [
                "H", "I", "X", "Y", "Z", "S", "SHIFT", "SQRT-NOT", "T", "C-NOT", "C-S", "C-T",
                "C-Z", "SWAP", "TOFFOLI", "FREDKIN", "DEUTSCH"
            ]
        );
        assert_eq!(
            builtin_gates().identification.as_ref().map(|i| i.id.as_str()),
            Some(GATE_LIBRARY_ID)
        );
    }

    #[test]
    fn circuit_library_parses_and_is_complete() {
        let ids: Vec<Option<&str>> = builtin_circuits()
            .circuits
            .iter()
            .map(Circuit::id)
            .collect();
        assert_eq!(
            ids,
            [
                Some("not_equivalent"),
                Some("three_qubit_phase_flip"),
                Some("cnot_equivalent"),
                Some("toffoli_equivalent")
            ]
        );
    }

    #[test]
    fn find_gate_matches_ids() {
        assert_eq!(find_gate("TOFFOLI").unwrap().name, "Toffoli");
        assert_eq!(find_gate("C-NOT").unwrap().nickname.as_deref(), Some("C-NOT"));
        assert!(find_gate("H").unwrap().nickname.is_none());
        assert!(find_gate("NO-SUCH-GATE").is_none());
    }

    #[test]
    fn parameterized_gates_declare_their_parameters() {
        for id in ["SHIFT", "DEUTSCH"] {
            let gate = find_gate(id).unwrap();
            assert_eq!(gate.parameters.len(), 1, "{id}");
            assert_eq!(gate.parameters[0].name, "theta", "{id}");
        }
    }
}
