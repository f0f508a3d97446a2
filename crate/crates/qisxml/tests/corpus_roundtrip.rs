//! The hand-transcribed XML corpus must parse completely, survive a
//! serialize/parse round trip with an identical model, and carry the
//! documented content.

mod common;

use common::{fixture_path, read_fixture};
use qisxml::genadder::generate_adder;
use qisxml::model::RegisterSelector;
use qisxml::xml::{
    parse_document, parse_fragment, write_document, write_fragment, Document, DocumentSet,
};

/// Every corpus file with a full document root.
const DOCUMENTS: &[&str] = &[
    "corpus/gate_pauli_z.xml",
    "corpus/gate_phase_shift.xml",
    "corpus/gate_hadamard.xml",
    "corpus/gate_cnot.xml",
    "corpus/gate_controlled_phase.xml",
    "corpus/gate_fredkin.xml",
    "corpus/gate_phase_shift_symbolic.xml",
    "corpus/gate_deutsch.xml",
    "corpus/circuit_not_equivalent.xml",
    "corpus/circuit_phase_flip.xml",
    "corpus/program_two_plus_one.xml",
    "corpus/adder2_library.xml",
    "corpus/program_six_plus_seven.xml",
    "shor9_broken.xml",
];

/// Corpus files holding a standalone element rather than a document root.
const FRAGMENTS: &[&str] = &[
    "corpus/transformation_toffoli.xml",
    "corpus/transformation_hadamard.xml",
    "corpus/register_prepare.xml",
];

#[test]
fn every_corpus_file_parses() {
    for file in DOCUMENTS {
        parse_document(&read_fixture(file)).unwrap_or_else(|err| panic!("{file}: {err}"));
    }
    for file in FRAGMENTS {
        parse_fragment(&read_fixture(file)).unwrap_or_else(|err| panic!("{file}: {err}"));
    }
}

#[test]
fn documents_round_trip_at_model_level() {
    for file in DOCUMENTS {
        let first = parse_document(&read_fixture(file)).expect(file);
        let written = write_document(&first);
        let second = parse_document(&written)
            .unwrap_or_else(|err| panic!("{file}: canonical output stopped parsing: {err}"));
        assert_eq!(first, second, "{file} changed across serialize/parse");
    }
}

#[test]
fn fragments_round_trip_at_model_level() {
    for file in FRAGMENTS {
        let first = parse_fragment(&read_fixture(file)).expect(file);
        let written = write_fragment(&first);
        let second = parse_fragment(&written)
            .unwrap_or_else(|err| panic!("{file}: canonical output stopped parsing: {err}"));
        assert_eq!(first, second, "{file} changed across serialize/parse");
    }
}

#[test]
fn the_adder_library_file_carries_the_documented_shape() {
    let document = parse_document(&read_fixture("corpus/adder2_library.xml")).unwrap();
    let Document::Circuits(library) = &document else {
        panic!("adder library is a circuit library");
    };
    assert_eq!(library.identification.as_ref().unwrap().id, "genadder");
    let circuit = &library.circuits[0];
    assert_eq!(circuit.size, 6);
    assert_eq!(circuit.steps.len(), 8);
    assert_eq!(circuit.inputs.len(), 6);
    assert_eq!(circuit.outputs.len(), 3);
    let inputs: Vec<&str> = circuit.inputs.iter().map(|l| l.name.as_str()).collect();
    assert_eq!(
        inputs,
        [
            "InputA0",
            "InputB0",
            "Ancillary0",
            "InputA1",
            "InputB1",
            "Ancillary1"
        ]
    );
}

#[test]
fn the_adder_library_file_equals_the_generated_circuit() {
    let document = parse_document(&read_fixture("corpus/adder2_library.xml")).unwrap();
    let Document::Circuits(transcribed) = document else {
        panic!("adder library is a circuit library");
    };
    let generated = generate_adder(2).unwrap();
    assert_eq!(
        transcribed, generated,
        "generator output diverged from the published 2-bit adder"
    );
}

#[test]
fn the_two_plus_one_program_carries_the_documented_content() {
    let document = parse_document(&read_fixture("corpus/program_two_plus_one.xml")).unwrap();
    let Document::Programs(library) = &document else {
        panic!("program document expected");
    };
    let program = &library.programs[0];
    assert_eq!(program.identification.id, "two_plus_one");
    assert_eq!(program.name.as_deref(), Some("Two plus One"));
    assert_eq!(program.memory.size, 6);
    let executes: Vec<_> = program.executes().collect();
    assert_eq!(executes.len(), 1);
    let prepare = executes[0].register.prepare.as_ref().unwrap();
    assert_eq!(prepare.sets[0].indexes, vec![2, 4]);
    assert_eq!(prepare.sets[0].value.numeric().unwrap().re, 1.0);
}

#[test]
fn the_six_plus_seven_program_measures_the_result_wires() {
    let document = parse_document(&read_fixture("corpus/program_six_plus_seven.xml")).unwrap();
    let Document::Programs(library) = &document else {
        panic!("program document expected");
    };
    let program = &library.programs[0];
    assert_eq!(program.memory.size, 15);
    let measures: Vec<_> = program.measures().collect();
    assert_eq!(measures.len(), 1);
    let indexes: Vec<u32> = measures[0]
        .register
        .selectors
        .iter()
        .map(|selector| match selector {
            RegisterSelector::Index(index) => *index,
            other => panic!("plain indexes expected, got {other:?}"),
        })
        .collect();
    assert_eq!(indexes, vec![2, 5, 8, 11, 14, 15]);
}

#[test]
fn duplicate_entity_ids_across_files_are_rejected() {
    let mut set = DocumentSet::new();
    set.add_file(fixture_path("corpus/gate_cnot.xml")).unwrap();
    let again = set.add_file(fixture_path("corpus/gate_cnot.xml"));
    assert!(again.is_err(), "second C-NOT definition must be rejected");
}

#[test]
fn corpus_programs_keep_their_comments_out_of_the_model() {
    // Leading and inline XML comments are tolerated everywhere; only the
    // step-attached circuit comments are data.
    let document = parse_document(&read_fixture("corpus/program_six_plus_seven.xml")).unwrap();
    let Document::Programs(library) = &document else {
        panic!("program document expected");
    };
    let prepare = library.programs[0]
        .executes()
        .next()
        .unwrap()
        .register
        .prepare
        .as_ref()
        .unwrap();
    assert_eq!(prepare.sets[0].indexes, vec![4, 7, 2, 5, 8]);
}

#[test]
fn the_broken_symbolic_cell_survives_verbatim() {
    // One corpus gate carries a symbolic expression with an unbalanced
    // parenthesis; the model must preserve the text exactly rather than
    // repair or reject it.
    let document = parse_document(&read_fixture("corpus/gate_phase_shift_symbolic.xml")).unwrap();
    let Document::Gates(library) = &document else {
        panic!("gate document expected");
    };
    let gate = &library.gates[0];
    assert_eq!(gate.parameters[0].name, "θ");
    let cell = &gate.transformation.cells[1];
    assert_eq!(cell.value.symbolic[0].expression, "e^(2πiθ");
}
