//! Compilation of programs to QCL-dialect source text, plus a tiny classical
//! interpreter for the emitted subset used to cross-check the simulator.
//!
//! The emitted dialect follows the classic generated shape: a header banner,
//! `int i; int value;`, a `qureg memory[N];` allocation, one aliased register
//! per execute with its prepare block, a fresh concatenated `qureg` per
//! operation, and a final measurement block. Gates with encodings are C-NOT,
//! TOFFOLI (as a doubly-controlled `CNot`), X, and H; `reverse` operations
//! take the `!` adjoint prefix.

use crate::model::{
    effective_measure_targets, resolve_register, Circuit, ExecuteTarget, MapSource, Operation,
    OperationTarget, Prepare, Program, ProgramAction, RegisterError,
};
use crate::validate::TOLERANCE;
use crate::xml::{DocumentSet, ResolveError};
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

/// Deepest allowed circuit-in-circuit inlining.
pub const MAX_DEPTH: u32 = 16;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CompileError {
    #[error("gate `{0}` has no QCL encoding")]
    UnsupportedGate(String),
    #[error("executing a program from a program is not supported")]
    SubProgramUnsupported,
    #[error("fixed-value maps cannot be compiled")]
    FixedValueMapUnsupported,
    #[error("input {0} of the applied target is not mapped")]
    UnmappedInput(u32),
    #[error("nested circuit references exceed depth {MAX_DEPTH}")]
    NestedCircuitDepthExceeded,
    #[error("prepare value: {0}")]
    PrepareValue(String),
    #[error("initial qubit states other than |0> cannot be compiled: {0}")]
    InitialStateUnsupported(String),
    #[error(transparent)]
    Register(#[from] RegisterError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// The deterministic generated-register name for a 1-based counter value.
pub fn fresh_register_name(counter: u32) -> String {
    format!("register{counter:04}")
}

struct Emitter {
    lines: Vec<String>,
    counter: u32,
}

impl Emitter {
    fn new() -> Self {
        Emitter {
            lines: Vec::new(),
            counter: 0,
        }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn blank(&mut self) {
        self.lines.push(String::new());
    }

    fn fresh(&mut self) -> String {
        self.counter += 1;
        fresh_register_name(self.counter)
    }

    fn finish(self) -> String {
        self.lines.join("\n") + "\n"
    }
}

/// Compiles a program into QCL-dialect source. The program is expected to
/// validate with zero errors; compilation is deterministic, so identical
/// inputs produce byte-identical output.
pub fn compile_qcl(program: &Program, set: &DocumentSet) -> Result<String, CompileError> {
    check_initial_states(program)?;
    let mut e = Emitter::new();
    e.line("// =====");
    e.line("// QIS-XML QCL Compiler");
    e.line("// =====");
    e.blank();
    e.line("int i;");
    e.line("int value;");
    e.line("// Allocate program memory");
    e.line(format!("qureg memory[{}];", program.memory.size));

    if let Some(prepare) = &program.memory.prepare {
        e.blank();
        e.line("// PREPARE");
        emit_prepare(&mut e, prepare, "memory")?;
    }

    for action in &program.actions {
        let ProgramAction::Execute(execute) = action else {
            continue;
        };
        let window = resolve_register(&execute.register, program.memory.size, &program.registers)?;
        e.blank();
        e.line("// REGISTER");
        let base = e.fresh();
        let full: Vec<u32> = (1..=program.memory.size).collect();
        if window == full {
            e.line(format!("qureg {base} = memory;"));
        } else {
            let concat: Vec<String> = window
                .iter()
                .map(|&qubit| format!("memory[{}]", qubit - 1))
                .collect();
            e.line(format!("qureg {base} = {};", concat.join("&")));
        }
        if let Some(prepare) = &execute.register.prepare {
            e.line("// PREPARE");
            emit_prepare(&mut e, prepare, &base)?;
        }
        e.blank();
        match &execute.target {
            ExecuteTarget::Circuit(circuit) => {
                emit_circuit(&mut e, circuit, &base, set, false, 0, circuit.id())?;
            }
            ExecuteTarget::CircuitRef(reference) => {
                let circuit = set.resolve_circuit(reference)?;
                emit_circuit(&mut e, circuit, &base, set, false, 0, Some(&reference.id))?;
            }
            ExecuteTarget::ProgramRef(_) => return Err(CompileError::SubProgramUnsupported),
        }
    }

    let targets = effective_measure_targets(program)?;
    e.blank();
    e.line("// MEASUREMENT");
    emit_measurement(&mut e, &targets);
    Ok(e.finish())
}

/// Explicit initial qubit states cannot be expressed in the target dialect;
/// only the default |0> is accepted.
fn check_initial_states(program: &Program) -> Result<(), CompileError> {
    let empty = HashMap::new();
    let mut position = 0u32;
    for state in &program.memory.qubits {
        position = state.index.unwrap_or(position + 1);
        let resolve = |value: &crate::model::ComplexValue| {
            value
                .resolve(&empty)
                .map_err(|e| CompileError::InitialStateUnsupported(e.to_string()))
        };
        let zero = resolve(&state.zero)?;
        let one = resolve(&state.one)?;
        if (zero - Complex64::new(1.0, 0.0)).norm() > TOLERANCE || one.norm() > TOLERANCE {
            return Err(CompileError::InitialStateUnsupported(format!(
                "qubit {position} starts in a non-default state"
            )));
        }
    }
    Ok(())
}

/// Emits the measure-then-conditional-X block forcing each prepared qubit to
/// its classical value. `base` names the register the 1-based indexes select
/// within.
fn emit_prepare(e: &mut Emitter, prepare: &Prepare, base: &str) -> Result<(), CompileError> {
    let empty = HashMap::new();
    for set in &prepare.sets {
        let value = set
            .value
            .resolve(&empty)
            .map_err(|err| CompileError::PrepareValue(err.to_string()))?;
        let bit = if value.norm() <= TOLERANCE {
            0u8
        } else if (value - Complex64::new(1.0, 0.0)).norm() <= TOLERANCE {
            1u8
        } else {
            return Err(CompileError::PrepareValue(format!(
                "value {value} is not a classical 0 or 1"
            )));
        };
        e.line(format!("i = {bit};"));
        for &index in &set.indexes {
            let k = index - 1;
            e.line(format!("measure {base}[{k}],value;"));
            e.line(format!("if value != {bit} {{ X({base}[{k}]); }}"));
        }
    }
    Ok(())
}

/// Emits a circuit: a `// CIRCUIT` header, then one block per step and
/// operation. `reverse` plays steps backwards with each operation adjointed.
fn emit_circuit(
    e: &mut Emitter,
    circuit: &Circuit,
    base: &str,
    set: &DocumentSet,
    reverse: bool,
    depth: u32,
    label: Option<&str>,
) -> Result<(), CompileError> {
    if depth > MAX_DEPTH {
        return Err(CompileError::NestedCircuitDepthExceeded);
    }
    match label {
        Some(id) => e.line(format!("// CIRCUIT {id}")),
        None => e.line("// CIRCUIT"),
    }
    let steps: Vec<_> = if reverse {
        circuit.steps.iter().rev().collect()
    } else {
        circuit.steps.iter().collect()
    };
    for (index, step) in steps.iter().enumerate() {
        if index > 0 {
            e.blank();
        }
        e.line(format!("// STEP {}", index + 1));
        for (op_index, operation) in step.operations.iter().enumerate() {
            e.line(format!("// OPERATION {}", op_index + 1));
            emit_operation(e, operation, base, set, reverse, depth)?;
        }
    }
    Ok(())
}

fn emit_operation(
    e: &mut Emitter,
    operation: &Operation,
    base: &str,
    set: &DocumentSet,
    reverse: bool,
    depth: u32,
) -> Result<(), CompileError> {
    let qubits = input_ordered_qubits(operation)?;
    let name = e.fresh();
    let concat: Vec<String> = qubits
        .iter()
        .map(|&qubit| format!("{base}[{}]", qubit - 1))
        .collect();
    e.line(format!("qureg {name} = {};", concat.join("&")));
    let effective_reverse = operation.reverse != reverse;
    match &operation.target {
        OperationTarget::Gate(gate) => {
            e.line(gate_statement(&gate.identification.id, &name, effective_reverse)?);
        }
        OperationTarget::GateRef(reference) => {
            set.resolve_gate(reference)?;
            e.line(gate_statement(&reference.id, &name, effective_reverse)?);
        }
        OperationTarget::CircuitRef(reference) => {
            let sub = set.resolve_circuit(reference)?;
            emit_circuit(e, sub, &name, set, effective_reverse, depth + 1, Some(&reference.id))?;
        }
    }
    Ok(())
}

/// The circuit qubits an operation touches, ordered by gate input.
fn input_ordered_qubits(operation: &Operation) -> Result<Vec<u32>, CompileError> {
    let mut by_input: Vec<Option<u32>> = vec![None; operation.maps.len()];
    for map in &operation.maps {
        let qubit = match map.source {
            MapSource::Qubit(q) => q,
            MapSource::Fixed(_) => return Err(CompileError::FixedValueMapUnsupported),
        };
        let slot = map.input as usize;
        if slot < 1 || slot > by_input.len() {
            return Err(CompileError::UnmappedInput(map.input));
        }
        by_input[slot - 1] = Some(qubit);
    }
    by_input
        .into_iter()
        .enumerate()
        .map(|(i, slot)| slot.ok_or(CompileError::UnmappedInput(i as u32 + 1)))
        .collect()
}

/// The one-line QCL statement applying a gate to the fresh register `r`.
/// Argument spacing follows the classic generated shapes: the Toffoli keeps
/// a spaced control concatenation, the plain C-NOT keeps none.
fn gate_statement(gate_id: &str, r: &str, reverse: bool) -> Result<String, CompileError> {
    let prefix = if reverse { "!" } else { "" };
    let body = match gate_id {
        "C-NOT" => format!("CNot({r}[1],{r}[0])"),
        "TOFFOLI" => format!("CNot({r}[2], {r}[0] & {r}[1])"),
        "X" => format!("X({r}[0])"),
        "H" => format!("H({r}[0])"),
        other => return Err(CompileError::UnsupportedGate(other.to_string())),
    };
    Ok(format!("{prefix}{body};"))
}

/// Emits the final measurement: a `for` loop when the 0-based targets form a
/// contiguous ascending run, per-index statements otherwise.
fn emit_measurement(e: &mut Emitter, targets: &[u32]) {
    let zero_based: Vec<u32> = targets.iter().map(|&t| t - 1).collect();
    let contiguous = zero_based.len() > 1
        && zero_based
            .windows(2)
            .all(|pair| pair[1] == pair[0] + 1);
    if contiguous {
        e.line(format!(
            "for i={} to {}{{",
            zero_based[0],
            zero_based[zero_based.len() - 1]
        ));
        e.line("    measure memory[i],value;");
        e.line("    print i,\"=\",value;");
        e.line("}");
    } else {
        for index in zero_based {
            e.line(format!("measure memory[{index}],value;"));
            e.line(format!("print {index},\"=\",value;"));
        }
    }
}

// ---------------------------------------------------------------------------
// Classical interpreter for the emitted subset
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QclRunError {
    #[error("cannot parse statement: {0}")]
    Syntax(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("index {index} is outside register `{register}`")]
    OutOfRange { register: String, index: usize },
    #[error("statement is not classical: {0}")]
    Unsupported(String),
}

/// Runs the classical subset the compiler emits — register aliasing,
/// `measure`, conditional `X`, singly- and doubly-controlled `CNot`, and the
/// final measurement block — on plain bits, returning the printed
/// `(index, bit)` pairs. Statements that need amplitudes (such as `H`) are
/// rejected; it exists to cross-check compiled programs against the
/// simulator without the external QCL toolchain.
pub fn run_qcl_subset(source: &str) -> Result<Vec<(u32, u8)>, QclRunError> {
    let mut machine = Machine::default();
    let lines: Vec<&str> = source
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with("//"))
        .collect();
    let mut cursor = 0;
    while cursor < lines.len() {
        let line = lines[cursor];
        if let Some(header) = line.strip_prefix("for ") {
            let (variable, start, end) = parse_for_header(header, line)?;
            let mut body = Vec::new();
            cursor += 1;
            while cursor < lines.len() && lines[cursor] != "}" {
                body.push(lines[cursor]);
                cursor += 1;
            }
            if cursor == lines.len() {
                return Err(QclRunError::Syntax("unterminated for loop".to_string()));
            }
            for value in start..=end {
                machine.variables.insert(variable.clone(), value);
                for statement in &body {
                    machine.execute(statement)?;
                }
            }
        } else {
            machine.execute(line)?;
        }
        cursor += 1;
    }
    Ok(machine.output)
}

fn parse_for_header(header: &str, line: &str) -> Result<(String, i64, i64), QclRunError> {
    // Shape: `i=0 to 5{`
    let header = header.trim().trim_end_matches('{').trim();
    let (assignment, end) = header
        .split_once(" to ")
        .ok_or_else(|| QclRunError::Syntax(line.to_string()))?;
    let (variable, start) = assignment
        .split_once('=')
        .ok_or_else(|| QclRunError::Syntax(line.to_string()))?;
    let start: i64 = start
        .trim()
        .parse()
        .map_err(|_| QclRunError::Syntax(line.to_string()))?;
    let end: i64 = end
        .trim()
        .parse()
        .map_err(|_| QclRunError::Syntax(line.to_string()))?;
    Ok((variable.trim().to_string(), start, end))
}

#[derive(Default)]
struct Machine {
    /// Bits of the allocated memory.
    memory: Vec<u8>,
    /// Register name → the memory indexes it aliases.
    registers: HashMap<String, Vec<usize>>,
    /// Classical integer variables (`i`, `value`).
    variables: HashMap<String, i64>,
    output: Vec<(u32, u8)>,
}

impl Machine {
    fn execute(&mut self, statement: &str) -> Result<(), QclRunError> {
        let statement = statement.trim();
        if statement.starts_with("int ") {
            return Ok(());
        }
        if let Some(rest) = statement.strip_prefix("qureg ") {
            return self.declare(rest.trim_end_matches(';'), statement);
        }
        if let Some(rest) = statement.strip_prefix("measure ") {
            return self.measure(rest.trim_end_matches(';'), statement);
        }
        if let Some(rest) = statement.strip_prefix("if ") {
            return self.conditional(rest, statement);
        }
        if let Some(rest) = statement.strip_prefix("print ") {
            return self.print(rest.trim_end_matches(';'), statement);
        }
        let body = statement.strip_prefix('!').unwrap_or(statement);
        if let Some(args) = call_arguments(body, "CNot") {
            return self.cnot(&args, statement);
        }
        if let Some(args) = call_arguments(body, "X") {
            let [target] = args.as_slice() else {
                return Err(QclRunError::Syntax(statement.to_string()));
            };
            let index = self.lvalue(target, statement)?;
            self.memory[index] ^= 1;
            return Ok(());
        }
        if let Some((name, value)) = statement.trim_end_matches(';').split_once('=') {
            let name = name.trim();
            if !name.contains(['[', '(']) {
                let value: i64 = value
                    .trim()
                    .parse()
                    .map_err(|_| QclRunError::Syntax(statement.to_string()))?;
                self.variables.insert(name.to_string(), value);
                return Ok(());
            }
        }
        if call_arguments(body, "H").is_some() {
            return Err(QclRunError::Unsupported(statement.to_string()));
        }
        Err(QclRunError::Syntax(statement.to_string()))
    }

    /// `memory[N]`, `name = memory`, or `name = base[i]&base[j]…`.
    fn declare(&mut self, rest: &str, statement: &str) -> Result<(), QclRunError> {
        if let Some((name, expression)) = rest.split_once('=') {
            let name = name.trim().to_string();
            let expression = expression.trim();
            let indexes = if expression == "memory" {
                (0..self.memory.len()).collect()
            } else {
                let mut indexes = Vec::new();
                for part in expression.split('&') {
                    indexes.push(self.lvalue(part.trim(), statement)?);
                }
                indexes
            };
            self.registers.insert(name, indexes);
            return Ok(());
        }
        // Allocation: `memory[N]`.
        let (name, size) = parse_indexed(rest).ok_or_else(|| {
            QclRunError::Syntax(statement.to_string())
        })?;
        if name != "memory" {
            return Err(QclRunError::Syntax(statement.to_string()));
        }
        let size: usize = size
            .parse()
            .map_err(|_| QclRunError::Syntax(statement.to_string()))?;
        self.memory = vec![0; size];
        Ok(())
    }

    /// `reg[k],value` — read a bit into `value`.
    fn measure(&mut self, rest: &str, statement: &str) -> Result<(), QclRunError> {
        let (place, destination) = rest
            .split_once(',')
            .ok_or_else(|| QclRunError::Syntax(statement.to_string()))?;
        let index = self.lvalue(place.trim(), statement)?;
        let bit = self.memory[index];
        self.variables
            .insert(destination.trim().to_string(), i64::from(bit));
        Ok(())
    }

    /// `value != N { X(reg[k]); }`.
    fn conditional(&mut self, rest: &str, statement: &str) -> Result<(), QclRunError> {
        let (condition, block) = rest
            .split_once('{')
            .ok_or_else(|| QclRunError::Syntax(statement.to_string()))?;
        let (name, expected) = condition
            .split_once("!=")
            .ok_or_else(|| QclRunError::Syntax(statement.to_string()))?;
        let actual = *self.variables.get(name.trim()).unwrap_or(&0);
        let expected: i64 = expected
            .trim()
            .parse()
            .map_err(|_| QclRunError::Syntax(statement.to_string()))?;
        if actual != expected {
            let body = block.trim_end_matches(['}', ' ']).trim();
            self.execute(body)?;
        }
        Ok(())
    }

    /// `k,"=",value` — record one measured bit.
    fn print(&mut self, rest: &str, statement: &str) -> Result<(), QclRunError> {
        let mut parts = rest.split(',');
        let index = parts
            .next()
            .ok_or_else(|| QclRunError::Syntax(statement.to_string()))?
            .trim();
        let index = self.evaluate(index, statement)?;
        let value = *self.variables.get("value").unwrap_or(&0);
        self.output.push((index as u32, value as u8));
        Ok(())
    }

    /// `CNot(target, control)` or `CNot(target, c1 & c2)`.
    fn cnot(&mut self, args: &[String], statement: &str) -> Result<(), QclRunError> {
        let [target, controls] = args else {
            return Err(QclRunError::Syntax(statement.to_string()));
        };
        let target = self.lvalue(target, statement)?;
        let mut all_set = true;
        for control in controls.split('&') {
            let index = self.lvalue(control.trim(), statement)?;
            all_set &= self.memory[index] == 1;
        }
        if all_set {
            self.memory[target] ^= 1;
        }
        Ok(())
    }

    /// Resolves `reg[expr]` to a memory index.
    fn lvalue(&self, place: &str, statement: &str) -> Result<usize, QclRunError> {
        let (name, index) =
            parse_indexed(place).ok_or_else(|| QclRunError::Syntax(statement.to_string()))?;
        let position = self.evaluate(index, statement)? as usize;
        if name == "memory" {
            if position >= self.memory.len() {
                return Err(QclRunError::OutOfRange {
                    register: name.to_string(),
                    index: position,
                });
            }
            return Ok(position);
        }
        let register = self
            .registers
            .get(name)
            .ok_or_else(|| QclRunError::UnknownRegister(name.to_string()))?;
        register
            .get(position)
            .copied()
            .ok_or_else(|| QclRunError::OutOfRange {
                register: name.to_string(),
                index: position,
            })
    }

    /// A literal integer or a variable name.
    fn evaluate(&self, expression: &str, statement: &str) -> Result<i64, QclRunError> {
        let expression = expression.trim();
        if let Ok(value) = expression.parse() {
            return Ok(value);
        }
        self.variables
            .get(expression)
            .copied()
            .ok_or_else(|| QclRunError::Syntax(statement.to_string()))
    }
}

/// Splits `Name(a,b,…)` into its arguments when the line is a call of `name`.
fn call_arguments(statement: &str, name: &str) -> Option<Vec<String>> {
    let rest = statement.strip_prefix(name)?;
    let rest = rest.strip_prefix('(')?;
    let rest = rest.trim_end_matches(';').strip_suffix(')')?;
    Some(rest.split(',').map(|arg| arg.trim().to_string()).collect())
}

/// Splits `name[index]` into its parts.
fn parse_indexed(place: &str) -> Option<(&str, &str)> {
    let open = place.find('[')?;
    let close = place.rfind(']')?;
    Some((place[..open].trim(), &place[open + 1..close]))
}
