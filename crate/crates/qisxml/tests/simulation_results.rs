//! End-to-end simulator checks: the two published adder runs, exhaustive
//! small-adder sweeps against independent classical oracles, agreement
//! between sampling and distribution modes, and seed reproducibility.

mod common;

use common::{
    adder_program, classical_adder_bits, classical_circuit_walk, fixture_path, run_bits,
    set_with_adder,
};
use qisxml::model::{
    Circuit, Execute, ExecuteTarget, Identification, Map, Memory, Operation, Program,
    ProgramAction, Register, Step,
};
use qisxml::sim::{run_program, RecordMode, RunMode, RunOptions, RunOutcome};
use qisxml::xml::DocumentSet;

fn load_program(set: &mut DocumentSet, fixture: &str, id: &str) -> Program {
    set.add_file(fixture_path(fixture)).unwrap();
    set.find_program(id).unwrap().clone()
}

#[test]
fn two_plus_one_reproduces_the_published_memory_dump() {
    let mut set = set_with_adder(2);
    let program = load_program(&mut set, "corpus/program_two_plus_one.xml", "two_plus_one");
    let outcome = run_program(&program, &set, &RunOptions::default()).unwrap();
    let RunOutcome::Sample(record) = outcome else {
        panic!("sample mode expected");
    };
    // Memory map: 1 = A bit 0, 2 = B/sum bit 0, 3 = helper, 4 = A bit 1,
    // 5 = B/sum bit 1, 6 = carry out. 2 + 1 = 3 -> sum bits 2 and 5 set.
    assert_eq!(
        record.bits,
        vec![(1, 0), (2, 1), (3, 0), (4, 1), (5, 1), (6, 0)]
    );
    assert_eq!(record.mode, RecordMode::Deterministic);
}

#[test]
fn six_plus_seven_reproduces_the_published_register_readout() {
    let mut set = set_with_adder(5);
    let program = load_program(&mut set, "corpus/program_six_plus_seven.xml", "six_plus_seven");
    let outcome = run_program(&program, &set, &RunOptions::default()).unwrap();
    let RunOutcome::Sample(record) = outcome else {
        panic!("sample mode expected");
    };
    // The program measures the sum wires 2,5,8,11,14 plus the carry 15;
    // 6 + 7 = 13 = 0b01101 reads out LSB-first across the sum wires.
    assert_eq!(
        record.bits,
        vec![(2, 1), (5, 0), (8, 1), (11, 1), (14, 0), (15, 0)]
    );

    let mut decoded: u64 = 0;
    for (place, (_, bit)) in record.bits.iter().enumerate() {
        decoded += (*bit as u64) << place;
    }
    assert_eq!(decoded, 13);
}

#[test]
fn six_plus_seven_full_memory_dump_sets_the_published_qubits() {
    let mut set = set_with_adder(5);
    let mut program =
        load_program(&mut set, "corpus/program_six_plus_seven.xml", "six_plus_seven");
    // Dropping the Measure action falls back to dumping all memory qubits.
    program
        .actions
        .retain(|action| matches!(action, ProgramAction::Execute(_)));
    let outcome = run_program(&program, &set, &RunOptions::default()).unwrap();
    let RunOutcome::Sample(record) = outcome else {
        panic!("sample mode expected");
    };
    assert_eq!(record.bits.len(), 15);
    let ones: Vec<u32> = record
        .bits
        .iter()
        .filter(|(_, bit)| *bit == 1)
        .map(|(qubit, _)| *qubit)
        .collect();
    assert_eq!(ones, vec![2, 4, 7, 8, 11]);
}

#[test]
fn adders_match_the_truth_table_oracle_exhaustively() {
    for bits in [2u32, 3] {
        let set = set_with_adder(bits as i64);
        for a in 0..(1u64 << bits) {
            for b in 0..(1u64 << bits) {
                let program = adder_program(bits, a, b);
                let measured = run_bits(&program, &set);
                let expected = classical_adder_bits(bits, a, b);
                assert_eq!(measured, expected, "adder{bits}: {a} + {b}");
            }
        }
    }
}

#[test]
fn adders_match_the_gate_level_bit_walker_exhaustively() {
    // Second oracle: walk the generated circuit step by step applying
    // controlled bit flips classically, with no amplitude machinery shared
    // with the simulator.
    for bits in [2u32, 3] {
        let set = set_with_adder(bits as i64);
        let circuit_id = format!("adder{bits}");
        for a in 0..(1u64 << bits) {
            for b in 0..(1u64 << bits) {
                let mut classical = vec![0u8; (3 * bits) as usize];
                for i in 0..bits {
                    classical[(3 * i) as usize] = ((a >> i) & 1) as u8;
                    classical[(3 * i + 1) as usize] = ((b >> i) & 1) as u8;
                }
                classical_circuit_walk(&set, &circuit_id, &mut classical);

                let program = adder_program(bits, a, b);
                let measured = run_bits(&program, &set);
                let walked: Vec<(u32, u8)> = classical
                    .iter()
                    .enumerate()
                    .map(|(i, bit)| (i as u32 + 1, *bit))
                    .collect();
                assert_eq!(measured, walked, "adder{bits}: {a} + {b}");
            }
        }
    }
}

#[test]
fn sampling_agrees_with_the_distribution_on_classical_programs() {
    let set = set_with_adder(2);
    for a in 0..4u64 {
        for b in 0..4u64 {
            let program = adder_program(2, a, b);
            let sampled = run_bits(&program, &set);

            let options = RunOptions {
                seed: 0,
                mode: RunMode::Distribution,
            };
            let RunOutcome::Distribution(distribution) =
                run_program(&program, &set, &options).unwrap()
            else {
                panic!("distribution mode expected");
            };
            assert_eq!(distribution.outcomes.len(), 1, "{a} + {b} is deterministic");
            let (pattern, probability) = distribution.outcomes[0];
            assert!((probability - 1.0).abs() < 1e-9);

            // The first target holds the pattern's most significant bit.
            let width = distribution.targets.len();
            let from_pattern: Vec<(u32, u8)> = distribution
                .targets
                .iter()
                .enumerate()
                .map(|(position, target)| {
                    let bit = ((pattern >> (width - 1 - position)) & 1) as u8;
                    (*target, bit)
                })
                .collect();
            assert_eq!(from_pattern, sampled, "{a} + {b}");
        }
    }
}

/// A program putting `qubits` memory qubits through one layer of Hadamards.
fn superposition_program(qubits: u32) -> Program {
    let mut circuit = Circuit {
        identification: None,
        name: None,
        description: None,
        size: qubits,
        inputs: Vec::new(),
        outputs: Vec::new(),
        steps: Vec::new(),
    };
    let mut step = Step {
        comment: None,
        operations: Vec::new(),
    };
    for qubit in 1..=qubits {
        step.operations
            .push(Operation::applying_gate("H", vec![Map::qubit(qubit, 1)]));
    }
    circuit.steps.push(step);

    Program {
        identification: Identification::new("coin_flips"),
        name: None,
        description: None,
        memory: Memory::sized(qubits),
        registers: Vec::new(),
        actions: vec![ProgramAction::Execute(Execute {
            register: Register::full(qubits),
            target: ExecuteTarget::Circuit(Box::new(circuit)),
        })],
    }
}

#[test]
fn identical_seeds_reproduce_identical_samples() {
    let set = DocumentSet::with_stdlib();
    let program = superposition_program(4);
    for seed in [0u64, 1, 17, 0xDEAD_BEEF] {
        let options = RunOptions {
            seed,
            mode: RunMode::Sample,
        };
        let first = run_program(&program, &set, &options).unwrap();
        let second = run_program(&program, &set, &options).unwrap();
        assert_eq!(first, second, "seed {seed} must be reproducible");
        let RunOutcome::Sample(record) = first else {
            panic!("sample mode expected");
        };
        assert_eq!(record.mode, RecordMode::Sampled { seed });
    }
}

#[test]
fn different_seeds_explore_different_outcomes() {
    // With 4 Hadamard qubits a single outcome has probability 1/16; across
    // 64 seeds at least two distinct samples are overwhelmingly certain.
    let set = DocumentSet::with_stdlib();
    let program = superposition_program(4);
    let mut seen = std::collections::HashSet::new();
    for seed in 0..64u64 {
        let options = RunOptions {
            seed,
            mode: RunMode::Sample,
        };
        let RunOutcome::Sample(record) = run_program(&program, &set, &options).unwrap() else {
            panic!("sample mode expected");
        };
        seen.insert(record.bits);
    }
    assert!(seen.len() > 1, "every seed produced the same sample");
}

#[test]
fn superposition_distribution_is_uniform() {
    let set = DocumentSet::with_stdlib();
    let program = superposition_program(3);
    let options = RunOptions {
        seed: 0,
        mode: RunMode::Distribution,
    };
    let RunOutcome::Distribution(distribution) = run_program(&program, &set, &options).unwrap()
    else {
        panic!("distribution mode expected");
    };
    assert_eq!(distribution.targets, vec![1, 2, 3]);
    assert_eq!(distribution.outcomes.len(), 8);
    let mut total = 0.0;
    for (pattern, probability) in &distribution.outcomes {
        assert!(*pattern < 8);
        assert!((probability - 0.125).abs() < 1e-9, "pattern {pattern}");
        total += probability;
    }
    // The library Hadamard stores 1/sqrt(2) to nine decimal places, so the
    // eight summed probabilities drift slightly past the usual tolerance.
    assert!((total - 1.0).abs() < 1e-8);
}

#[test]
fn sampled_outcomes_follow_the_distribution_support() {
    // Every sampled outcome must be inside the distribution's support.
    let set = DocumentSet::with_stdlib();
    let program = superposition_program(3);
    let options = RunOptions {
        seed: 0,
        mode: RunMode::Distribution,
    };
    let RunOutcome::Distribution(distribution) = run_program(&program, &set, &options).unwrap()
    else {
        panic!("distribution mode expected");
    };
    let support: std::collections::HashSet<u64> =
        distribution.outcomes.iter().map(|(p, _)| *p).collect();

    for seed in 0..32u64 {
        let options = RunOptions {
            seed,
            mode: RunMode::Sample,
        };
        let RunOutcome::Sample(record) = run_program(&program, &set, &options).unwrap() else {
            panic!("sample mode expected");
        };
        let mut pattern: u64 = 0;
        for (_, bit) in &record.bits {
            pattern = (pattern << 1) | u64::from(*bit);
        }
        assert!(support.contains(&pattern), "seed {seed} left the support");
    }
}
