//! QCL compiler output checks: structure of the two-plus-one translation,
//! byte determinism, and a semantic cross-check that interprets the emitted
//! source and compares it against the classical adder oracle.

mod common;

use common::{adder_program, classical_adder_bits, fixture_path, set_with_adder};
use qisxml::qcl::{compile_qcl, run_qcl_subset};
use qisxml::xml::DocumentSet;

fn compile_two_plus_one() -> String {
    let mut set = set_with_adder(2);
    set.add_file(fixture_path("corpus/program_two_plus_one.xml"))
        .unwrap();
    let program = set.find_program("two_plus_one").unwrap().clone();
    compile_qcl(&program, &set).unwrap()
}

#[test]
fn two_plus_one_compiles_to_the_expected_structure() {
    let source = compile_two_plus_one();

    let steps = source.matches("// STEP ").count();
    assert_eq!(steps, 8, "one block per adder step:\n{source}");

    // Memory allocation and the base register alias come first.
    assert!(source.contains("qureg memory[6];"), "{source}");
    assert!(source.contains("qureg register0001 = memory;"), "{source}");

    // Preparation flips the 0-based bits 1 and 3 (inputs A=2, B=1).
    assert!(source.contains("measure register0001[1],value;"), "{source}");
    assert!(
        source.contains("if value != 1 { X(register0001[1]); }"),
        "{source}"
    );
    assert!(source.contains("measure register0001[3],value;"), "{source}");
    assert!(
        source.contains("if value != 1 { X(register0001[3]); }"),
        "{source}"
    );

    // The first step is a Toffoli on qubits 1..3: a three-wire sub-register
    // and a doubly controlled NOT.
    assert!(
        source.contains("qureg register0002 = register0001[0]&register0001[1]&register0001[2];"),
        "{source}"
    );
    assert!(
        source.contains("CNot(register0002[2], register0002[0] & register0002[1]);"),
        "{source}"
    );

    // All memory qubits are contiguous, so measurement compiles to a loop.
    assert!(source.contains("for i=0 to 5{"), "{source}");
    assert!(source.contains("    measure memory[i],value;"), "{source}");
    assert!(source.contains("    print i,\"=\",value;"), "{source}");
}

#[test]
fn compilation_is_byte_deterministic() {
    let first = compile_two_plus_one();
    for _ in 0..3 {
        assert_eq!(first, compile_two_plus_one());
    }
}

#[test]
fn compiled_adders_interpret_to_the_classical_sums() {
    // Close the loop: compile each 2-bit addition to QCL, run the emitted
    // source through the subset interpreter, and compare with the oracle.
    let set = set_with_adder(2);
    for a in 0..4u64 {
        for b in 0..4u64 {
            let program = adder_program(2, a, b);
            let source = compile_qcl(&program, &set).unwrap();
            let interpreted = run_qcl_subset(&source).unwrap();
            let expected: Vec<(u32, u8)> = classical_adder_bits(2, a, b)
                .into_iter()
                .map(|(qubit, bit)| (qubit - 1, bit)) // interpreter reports 0-based
                .collect();
            assert_eq!(interpreted, expected, "{a} + {b}");
        }
    }
}

#[test]
fn two_plus_one_interprets_to_three() {
    let source = compile_two_plus_one();
    let bits = run_qcl_subset(&source).unwrap();
    assert_eq!(
        bits,
        vec![(0, 0), (1, 1), (2, 0), (3, 1), (4, 1), (5, 0)],
        "memory dump after 2 + 1"
    );
}

#[test]
fn non_contiguous_measures_unroll_instead_of_looping() {
    let mut set = set_with_adder(5);
    set.add_file(fixture_path("corpus/program_six_plus_seven.xml"))
        .unwrap();
    let program = set.find_program("six_plus_seven").unwrap().clone();
    let source = compile_qcl(&program, &set).unwrap();
    assert!(
        !source.contains("for i=0 to"),
        "scattered targets must not loop:\n{source}"
    );
    for qubit in [1u32, 4, 7, 10, 13, 14] {
        assert!(
            source.contains(&format!("measure memory[{qubit}],value;")),
            "missing qubit {qubit}:\n{source}"
        );
        assert!(
            source.contains(&format!("print {qubit},\"=\",value;")),
            "missing print for qubit {qubit}:\n{source}"
        );
    }
}

#[test]
fn compiling_a_program_with_a_dangling_circuit_fails() {
    let mut set = DocumentSet::with_stdlib();
    set.add_file(fixture_path("corpus/program_two_plus_one.xml"))
        .unwrap();
    let program = set.find_program("two_plus_one").unwrap().clone();
    assert!(
        compile_qcl(&program, &set).is_err(),
        "adder2 is not loaded, compilation must fail"
    );
}
