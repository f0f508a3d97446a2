//! Semantic validation of a loaded document set.
//!
//! [`validate`] walks every entity of a [`DocumentSet`] and returns a list of
//! [`Finding`]s — problems are data, not failures. [`report_text`] renders a
//! plain-text circuit report with the findings merged in at the step and
//! operation they belong to.
//!
//! Documents loaded from `builtin:` URIs (the embedded standard libraries)
//! are trusted: they participate in reference resolution but are not
//! themselves walked for findings, so reports stay focused on user documents.

use crate::matrix::{realize_matrix, unitarity_defect, MAX_REALIZE_SIZE};
use crate::model::{
    Circuit, ExecuteTarget, Gate, Map, MapSource, Memory, Operation, OperationTarget, Prepare,
    Program, ProgramAction, Register, RegisterError, UnitaryTransformation, resolve_register,
};
use crate::symexpr::ExprError;
use crate::model::ValueError;
use crate::xml::{DocumentSet, ResolveError, SourceDocument};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Entrywise tolerance shared by the normalization and unitarity checks.
pub const TOLERANCE: f64 = 1e-9;

/// Memory sizes above this draw a warning: a state vector no simulator here
/// will hold.
pub const MEMORY_LIMIT: u32 = 24;

/// Registered finding codes. Every [`Finding::code`] is one of these.
pub mod codes {
    /// A memory qubit state with |α|² + |β|² ≠ 1.
    pub const QUBIT_NORMALIZATION: &str = "qubit-normalization";
    /// A transformation cell row/column outside the 2^size matrix.
    pub const CELL_RANGE: &str = "cell-range";
    /// An operation map naming a qubit outside the circuit.
    pub const MAP_QUBIT_RANGE: &str = "map-qubit-range";
    /// An operation map naming an input outside the applied gate or circuit.
    pub const MAP_INPUT_RANGE: &str = "map-input-range";
    /// The same qubit mapped twice in a step, or the same input twice in an
    /// operation.
    pub const DUPLICATE_MAPPING: &str = "duplicate-mapping";
    /// A step leaving some circuit qubits unmapped (warning).
    pub const UNMAPPED_QUBITS: &str = "unmapped-qubits";
    /// A gate/circuit/program/register reference that resolves to nothing.
    pub const DANGLING_REFERENCE: &str = "dangling-reference";
    /// An execute whose register size differs from the circuit it runs.
    pub const EXECUTE_SIZE_MISMATCH: &str = "execute-size-mismatch";
    /// A register or memory qubit index outside its containing scope.
    pub const INDEX_RANGE: &str = "index-range";
    /// A realized matrix failing U·U† = I (strict-unitary mode only).
    pub const UNITARITY: &str = "unitarity";

    /// A cell (or multiplier) value that cannot be evaluated.
    pub const CELL_VALUE: &str = "cell-value";
    /// The same matrix cell listed twice.
    pub const DUPLICATE_CELL: &str = "duplicate-cell";
    /// An operation leaving some target inputs unmapped.
    pub const MISSING_INPUT: &str = "missing-input";
    /// A prepare value that is not a classical 0 or 1.
    pub const PREPARE_VALUE: &str = "prepare-value";
    /// A memory qubit state that cannot be evaluated.
    pub const QUBIT_VALUE: &str = "qubit-value";
    /// A reference matching more than one entity.
    pub const AMBIGUOUS_REFERENCE: &str = "ambiguous-reference";
    /// A register whose selectors expand to a different size than declared.
    pub const REGISTER_SIZE_MISMATCH: &str = "register-size-mismatch";
    /// Register references forming a cycle.
    pub const REGISTER_CYCLE: &str = "register-cycle";
    /// A symbolic cell using a parameter the gate does not declare.
    pub const PARAMETER_DECLARATION: &str = "parameter-declaration";
    /// A program memory too large to simulate (warning).
    pub const MEMORY_LIMIT: &str = "memory-limit";
}

/// How bad a finding is. `Error` blocks simulation and compilation;
/// `Warning` is informational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => write!(f, "Warning"),
            Severity::Error => write!(f, "ERROR"),
        }
    }
}

/// The kind of entity a finding is located in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Gate,
    Circuit,
    Program,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityKind::Gate => write!(f, "gate"),
            EntityKind::Circuit => write!(f, "circuit"),
            EntityKind::Program => write!(f, "program"),
        }
    }
}

/// Where a finding sits: library id / entity / step number / operation
/// number. For programs the step slot counts actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Location {
    pub library: Option<String>,
    pub kind: EntityKind,
    /// Entity id; `None` for anonymous circuits.
    pub entity: Option<String>,
    /// 1-based step (circuits) or action (programs) number.
    pub step: Option<usize>,
    /// 1-based operation number within the step.
    pub operation: Option<usize>,
}

impl Location {
    fn entity(library: Option<&str>, kind: EntityKind, entity: Option<&str>) -> Self {
        Location {
            library: library.map(str::to_string),
            kind,
            entity: entity.map(str::to_string),
            step: None,
            operation: None,
        }
    }

    fn at_step(&self, step: usize) -> Self {
        Location {
            step: Some(step),
            operation: None,
            ..self.clone()
        }
    }

    fn at_operation(&self, step: usize, operation: usize) -> Self {
        Location {
            step: Some(step),
            operation: Some(operation),
            ..self.clone()
        }
    }

    fn entity_name(&self) -> &str {
        self.entity.as_deref().unwrap_or("(anonymous)")
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(library) = &self.library {
            write!(f, "{library} / ")?;
        }
        write!(f, "{} {}", self.kind, self.entity_name())?;
        if let Some(step) = self.step {
            let slot = match self.kind {
                EntityKind::Program => "action",
                _ => "step",
            };
            write!(f, " / {slot} {step}")?;
        }
        if let Some(operation) = self.operation {
            write!(f, " / operation {operation}")?;
        }
        Ok(())
    }
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub severity: Severity,
    /// One of the [`codes`] constants.
    pub code: &'static str,
    pub message: String,
    pub location: Location,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.severity, self.message, self.location)
    }
}

/// Options for [`validate`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Also check that every realizable non-parameterized transformation is
    /// unitary within [`TOLERANCE`]. Parameterized gates are exempt (they
    /// cannot be realized without bindings).
    pub strict_unitary: bool,
}

impl ValidateOptions {
    pub fn strict() -> Self {
        ValidateOptions {
            strict_unitary: true,
        }
    }
}

/// Counts `(errors, warnings)` in a findings list.
pub fn counts(findings: &[Finding]) -> (usize, usize) {
    let errors = findings
        .iter()
        .filter(|f| f.severity == Severity::Error)
        .count();
    (errors, findings.len() - errors)
}

/// True when the set holds no `Error`-severity finding.
pub fn is_error_free(findings: &[Finding]) -> bool {
    counts(findings).0 == 0
}

fn is_builtin(document: &SourceDocument) -> bool {
    document
        .uri
        .as_deref()
        .is_some_and(|uri| uri.starts_with("builtin:"))
}

/// Validates every entity in the set, in document order. Problems come back
/// as findings; the call itself cannot fail.
pub fn validate(set: &DocumentSet, options: &ValidateOptions) -> Vec<Finding> {
    let mut findings = Vec::new();
    for document in set.documents() {
        if is_builtin(document) {
            continue;
        }
        for library in &document.instance.gate_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for gate in &library.gates {
                let location = Location::entity(
                    library_id,
                    EntityKind::Gate,
                    Some(&gate.identification.id),
                );
                check_gate(gate, &location, options, &mut findings);
            }
        }
        for library in &document.instance.circuit_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for circuit in &library.circuits {
                let location = Location::entity(library_id, EntityKind::Circuit, circuit.id());
                check_circuit(set, circuit, &location, options, &mut findings);
            }
        }
        for library in &document.instance.program_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for program in &library.programs {
                let location = Location::entity(
                    library_id,
                    EntityKind::Program,
                    Some(&program.identification.id),
                );
                check_program(set, program, &location, options, &mut findings);
            }
        }
    }
    findings
}

fn error(code: &'static str, message: String, location: Location) -> Finding {
    Finding {
        severity: Severity::Error,
        code,
        message,
        location,
    }
}

fn warning(code: &'static str, message: String, location: Location) -> Finding {
    Finding {
        severity: Severity::Warning,
        code,
        message,
        location,
    }
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

fn check_gate(gate: &Gate, location: &Location, options: &ValidateOptions, out: &mut Vec<Finding>) {
    let declared: Vec<&str> = gate.parameters.iter().map(|p| p.name.as_str()).collect();
    check_transformation(&gate.transformation, &declared, location, options, out);
}

fn check_transformation(
    transformation: &UnitaryTransformation,
    declared_parameters: &[&str],
    location: &Location,
    options: &ValidateOptions,
    out: &mut Vec<Finding>,
) {
    let before = out.len();
    // Probe bindings: any neutral value shows whether the cell evaluates at
    // all and whether it only uses declared parameters.
    let probe: HashMap<String, f64> = declared_parameters
        .iter()
        .map(|name| (name.to_string(), 0.5))
        .collect();
    let dimension: u64 = if transformation.size >= 32 {
        u64::MAX
    } else {
        1u64 << transformation.size
    };
    let dimension_text = if transformation.size >= 32 {
        format!("2^{}", transformation.size)
    } else {
        dimension.to_string()
    };

    if let Some(multiplier) = &transformation.multiplier {
        if let Err(err) = multiplier.resolve(&probe) {
            out.push(value_finding(
                "Multiplier",
                err,
                declared_parameters,
                location,
            ));
        }
    }

    let mut seen = HashSet::new();
    for cell in &transformation.cells {
        if cell.row < 1
            || cell.col < 1
            || u64::from(cell.row) > dimension
            || u64::from(cell.col) > dimension
        {
            out.push(error(
                codes::CELL_RANGE,
                format!(
                    "Cell ({},{}) is outside the {dimension_text}x{dimension_text} matrix.",
                    cell.row, cell.col
                ),
                location.clone(),
            ));
            continue;
        }
        if !seen.insert((cell.row, cell.col)) {
            out.push(error(
                codes::DUPLICATE_CELL,
                format!("Cell ({},{}) is listed more than once.", cell.row, cell.col),
                location.clone(),
            ));
        }
        if let Err(err) = cell.value.resolve(&probe) {
            out.push(value_finding(
                &format!("Cell ({},{})", cell.row, cell.col),
                err,
                declared_parameters,
                location,
            ));
        }
    }

    // Strict unitarity, only for gates that realized cleanly and take no
    // parameters.
    if options.strict_unitary
        && declared_parameters.is_empty()
        && out.len() == before
        && transformation.size <= MAX_REALIZE_SIZE
    {
        if let Ok(matrix) = realize_matrix(transformation, &HashMap::new()) {
            let defect = unitarity_defect(&matrix);
            if defect > TOLERANCE {
                out.push(error(
                    codes::UNITARITY,
                    format!("Transformation is not unitary (defect {defect:.2e})."),
                    location.clone(),
                ));
            }
        }
    }
}

/// Classifies a [`ValueError`] on a cell or multiplier: an undeclared
/// parameter is a declaration problem, anything else an evaluation problem.
fn value_finding(
    subject: &str,
    err: ValueError,
    declared_parameters: &[&str],
    location: &Location,
) -> Finding {
    if let ValueError::Expression {
        source: ExprError::UnboundParameter(ref name),
        ..
    } = err
    {
        if !declared_parameters.contains(&name.as_str()) {
            return error(
                codes::PARAMETER_DECLARATION,
                format!("{subject} uses undeclared parameter `{name}`."),
                location.clone(),
            );
        }
    }
    error(
        codes::CELL_VALUE,
        format!("{subject} value cannot be evaluated: {err}."),
        location.clone(),
    )
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

/// What an operation applies, as far as validation needs to know.
struct TargetInfo {
    /// "Gate" or "Circuit" — the word used in range messages.
    kind_word: &'static str,
    size: u32,
}

fn check_circuit(
    set: &DocumentSet,
    circuit: &Circuit,
    location: &Location,
    options: &ValidateOptions,
    out: &mut Vec<Finding>,
) {
    for (step_index, step) in circuit.steps.iter().enumerate() {
        let step_no = step_index + 1;

        // A step should address every qubit of its circuit (identity wires
        // included) — the classic report warns when it does not.
        let covered: HashSet<u32> = step
            .operations
            .iter()
            .flat_map(|op| op.maps.iter().filter_map(Map::source_qubit))
            .collect();
        if !(1..=circuit.size).all(|qubit| covered.contains(&qubit)) {
            out.push(warning(
                codes::UNMAPPED_QUBITS,
                "Not all qubits have been mapped.".to_string(),
                location.at_step(step_no),
            ));
        }

        let mut step_qubits: HashSet<u32> = HashSet::new();
        for (op_index, operation) in step.operations.iter().enumerate() {
            let op_location = location.at_operation(step_no, op_index + 1);
            check_operation(
                set,
                circuit,
                operation,
                &mut step_qubits,
                &op_location,
                options,
                out,
            );
        }
    }
}

fn check_operation(
    set: &DocumentSet,
    circuit: &Circuit,
    operation: &Operation,
    step_qubits: &mut HashSet<u32>,
    location: &Location,
    options: &ValidateOptions,
    out: &mut Vec<Finding>,
) {
    let target = describe_target(set, operation, location, options, out);

    let mut seen_inputs: HashSet<u32> = HashSet::new();
    let mut input_out_of_range = false;
    for (map_index, map) in operation.maps.iter().enumerate() {
        if let MapSource::Qubit(qubit) = map.source {
            if qubit < 1 || qubit > circuit.size {
                out.push(error(
                    codes::MAP_QUBIT_RANGE,
                    format!("Map {map_index} qubit={qubit} is out of Circuit range."),
                    location.clone(),
                ));
            } else if !step_qubits.insert(qubit) {
                out.push(error(
                    codes::DUPLICATE_MAPPING,
                    format!("Qubit {qubit} is mapped more than once in this step."),
                    location.clone(),
                ));
            }
        }
        if let Some(target) = &target {
            if map.input < 1 || map.input > target.size {
                out.push(error(
                    codes::MAP_INPUT_RANGE,
                    format!(
                        "Map {map_index} input={} is out of {} range.",
                        map.input, target.kind_word
                    ),
                    location.clone(),
                ));
                input_out_of_range = true;
                continue;
            }
        }
        if !seen_inputs.insert(map.input) {
            out.push(error(
                codes::DUPLICATE_MAPPING,
                format!("Input {} is mapped more than once.", map.input),
                location.clone(),
            ));
        }
    }

    // Input coverage — suppressed when an input was out of range: the primal
    // problem is the bad index, not the hole it leaves.
    if let Some(target) = &target {
        if !input_out_of_range && !(1..=target.size).all(|input| seen_inputs.contains(&input)) {
            out.push(error(
                codes::MISSING_INPUT,
                format!(
                    "Not all {} inputs have been mapped.",
                    target.kind_word.to_lowercase()
                ),
                location.clone(),
            ));
        }
    }
}

/// Resolves the operation target, reporting dangling or ambiguous references.
/// Inline gate definitions are themselves validated in place.
fn describe_target(
    set: &DocumentSet,
    operation: &Operation,
    location: &Location,
    options: &ValidateOptions,
    out: &mut Vec<Finding>,
) -> Option<TargetInfo> {
    match &operation.target {
        OperationTarget::Gate(inline) => {
            check_gate(inline, location, options, out);
            Some(TargetInfo {
                kind_word: "Gate",
                size: inline.size(),
            })
        }
        OperationTarget::GateRef(reference) => match set.resolve_gate(reference) {
            Ok(gate) => Some(TargetInfo {
                kind_word: "Gate",
                size: gate.size(),
            }),
            Err(err) => {
                out.push(resolution_finding("Gate", &reference.id, err, location));
                None
            }
        },
        OperationTarget::CircuitRef(reference) => match set.resolve_circuit(reference) {
            Ok(sub) => Some(TargetInfo {
                kind_word: "Circuit",
                size: sub.size,
            }),
            Err(err) => {
                out.push(resolution_finding("Circuit", &reference.id, err, location));
                None
            }
        },
    }
}

fn resolution_finding(
    kind_word: &str,
    id: &str,
    err: ResolveError,
    location: &Location,
) -> Finding {
    match err {
        ResolveError::NotFound { .. } => error(
            codes::DANGLING_REFERENCE,
            format!("{kind_word} reference `{id}` does not resolve."),
            location.clone(),
        ),
        ResolveError::Ambiguous { count, .. } => error(
            codes::AMBIGUOUS_REFERENCE,
            format!("{kind_word} reference `{id}` is ambiguous ({count} matches)."),
            location.clone(),
        ),
    }
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

fn check_program(
    set: &DocumentSet,
    program: &Program,
    location: &Location,
    options: &ValidateOptions,
    out: &mut Vec<Finding>,
) {
    check_memory(&program.memory, location, out);
    for register in &program.registers {
        check_register(register, &program.memory, &program.registers, location, out);
    }
    for (action_index, action) in program.actions.iter().enumerate() {
        let action_location = location.at_step(action_index + 1);
        match action {
            ProgramAction::Execute(execute) => {
                check_register(
                    &execute.register,
                    &program.memory,
                    &program.registers,
                    &action_location,
                    out,
                );
                match &execute.target {
                    ExecuteTarget::Circuit(inline) => {
                        if execute.register.size != inline.size {
                            out.push(execute_size_mismatch(
                                execute.register.size,
                                inline.size,
                                &action_location,
                            ));
                        }
                        let inline_location =
                            Location::entity(location.library.as_deref(), EntityKind::Circuit, inline.id());
                        check_circuit(set, inline, &inline_location, options, out);
                    }
                    ExecuteTarget::CircuitRef(reference) => match set.resolve_circuit(reference) {
                        Ok(circuit) => {
                            if execute.register.size != circuit.size {
                                out.push(execute_size_mismatch(
                                    execute.register.size,
                                    circuit.size,
                                    &action_location,
                                ));
                            }
                        }
                        Err(err) => out.push(resolution_finding(
                            "Circuit",
                            &reference.id,
                            err,
                            &action_location,
                        )),
                    },
                    ExecuteTarget::ProgramRef(reference) => {
                        if let Err(err) = set.resolve_program(reference) {
                            out.push(resolution_finding(
                                "Program",
                                &reference.id,
                                err,
                                &action_location,
                            ));
                        }
                    }
                }
            }
            ProgramAction::Measure(measure) => {
                check_register(
                    &measure.register,
                    &program.memory,
                    &program.registers,
                    &action_location,
                    out,
                );
            }
        }
    }
}

fn execute_size_mismatch(register: u32, circuit: u32, location: &Location) -> Finding {
    error(
        codes::EXECUTE_SIZE_MISMATCH,
        format!("Execute register size {register} does not match circuit size {circuit}."),
        location.clone(),
    )
}

fn check_memory(memory: &Memory, location: &Location, out: &mut Vec<Finding>) {
    if memory.size > MEMORY_LIMIT {
        out.push(warning(
            codes::MEMORY_LIMIT,
            format!(
                "Memory of {} qubits exceeds the {MEMORY_LIMIT}-qubit simulation limit.",
                memory.size
            ),
            location.clone(),
        ));
    }
    let empty = HashMap::new();
    let mut position = 0u32;
    for state in &memory.qubits {
        position = state.index.unwrap_or(position + 1);
        let qubit = position;
        if qubit < 1 || qubit > memory.size {
            out.push(error(
                codes::INDEX_RANGE,
                format!("Qubit {qubit} is outside memory of size {}.", memory.size),
                location.clone(),
            ));
            continue;
        }
        match (state.zero.resolve(&empty), state.one.resolve(&empty)) {
            (Ok(zero), Ok(one)) => {
                let total = zero.norm_sqr() + one.norm_sqr();
                if (total - 1.0).abs() > TOLERANCE {
                    out.push(error(
                        codes::QUBIT_NORMALIZATION,
                        format!("Qubit {qubit} total probability {total} is not equal to 1."),
                        location.clone(),
                    ));
                }
            }
            (Err(err), _) | (_, Err(err)) => {
                out.push(error(
                    codes::QUBIT_VALUE,
                    format!("Qubit {qubit} state cannot be evaluated: {err}."),
                    location.clone(),
                ));
            }
        }
    }
    if let Some(prepare) = &memory.prepare {
        check_prepare(prepare, memory.size, "memory", location, out);
    }
}

fn check_register(
    register: &Register,
    memory: &Memory,
    named: &[Register],
    location: &Location,
    out: &mut Vec<Finding>,
) {
    match resolve_register(register, memory.size, named) {
        Ok(_) => {}
        Err(RegisterError::SizeMismatch { expected, actual }) => out.push(error(
            codes::REGISTER_SIZE_MISMATCH,
            format!("Register resolves to {actual} qubit(s) but declares size {expected}."),
            location.clone(),
        )),
        Err(RegisterError::IndexOutOfMemory { index, memory_size }) => out.push(error(
            codes::INDEX_RANGE,
            format!("Register qubit {index} is outside memory of size {memory_size}."),
            location.clone(),
        )),
        Err(RegisterError::DanglingReference(id)) => out.push(error(
            codes::DANGLING_REFERENCE,
            format!("Register reference `{id}` does not resolve."),
            location.clone(),
        )),
        Err(RegisterError::CircularReference(id)) => out.push(error(
            codes::REGISTER_CYCLE,
            format!("Register reference `{id}` is part of a reference cycle."),
            location.clone(),
        )),
    }
    if let Some(prepare) = &register.prepare {
        check_prepare(prepare, register.size, "register", location, out);
    }
}

fn check_prepare(
    prepare: &Prepare,
    bound: u32,
    scope_word: &str,
    location: &Location,
    out: &mut Vec<Finding>,
) {
    let empty = HashMap::new();
    for set in &prepare.sets {
        for &index in &set.indexes {
            if index < 1 || index > bound {
                out.push(error(
                    codes::INDEX_RANGE,
                    format!("Prepare qubit {index} is outside {scope_word} of size {bound}."),
                    location.clone(),
                ));
            }
        }
        match set.value.resolve(&empty) {
            Ok(value) => {
                let zero = value.norm() <= TOLERANCE;
                let one = (value - num_complex::Complex64::new(1.0, 0.0)).norm() <= TOLERANCE;
                if !zero && !one {
                    out.push(error(
                        codes::PREPARE_VALUE,
                        format!("Prepare value {value} is not a classical 0 or 1."),
                        location.clone(),
                    ));
                }
            }
            Err(err) => out.push(error(
                codes::PREPARE_VALUE,
                format!("Prepare value cannot be evaluated: {err}."),
                location.clone(),
            )),
        }
    }
}

// ---------------------------------------------------------------------------
// Text report
// ---------------------------------------------------------------------------

/// Renders the classic plain-text validation report: every user circuit in
/// full (header, name, description, steps, operations) with findings merged
/// in where they occurred; gates and programs appear when they have findings.
pub fn report_text(set: &DocumentSet, findings: &[Finding]) -> String {
    let mut blocks: Vec<String> = Vec::new();
    for document in set.documents() {
        if is_builtin(document) {
            continue;
        }
        for library in &document.instance.gate_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for gate in &library.gates {
                let location = Location::entity(
                    library_id,
                    EntityKind::Gate,
                    Some(&gate.identification.id),
                );
                let gate_findings = findings_at(findings, &location);
                if gate_findings.is_empty() {
                    continue;
                }
                let mut lines = vec![format!(
                    "Gate {}, Size {}",
                    gate.identification.id,
                    gate.size()
                )];
                for finding in gate_findings {
                    lines.push(finding_line(finding));
                }
                blocks.push(lines.join("\n"));
            }
        }
        for library in &document.instance.circuit_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for circuit in &library.circuits {
                let location = Location::entity(library_id, EntityKind::Circuit, circuit.id());
                blocks.push(circuit_block(set, circuit, &location, findings));
            }
        }
        for library in &document.instance.program_libraries {
            let library_id = library.identification.as_ref().map(|i| i.id.as_str());
            for program in &library.programs {
                let location = Location::entity(
                    library_id,
                    EntityKind::Program,
                    Some(&program.identification.id),
                );
                let program_findings = findings_at(findings, &location);
                if program_findings.is_empty() {
                    continue;
                }
                blocks.push(program_block(program, &location, program_findings));
            }
        }
    }
    if blocks.is_empty() {
        String::new()
    } else {
        blocks.join("\n\n") + "\n"
    }
}

/// Findings located in the given entity (any step/operation), in order.
fn findings_at<'a>(findings: &'a [Finding], entity: &Location) -> Vec<&'a Finding> {
    findings
        .iter()
        .filter(|finding| {
            finding.location.library == entity.library
                && finding.location.kind == entity.kind
                && finding.location.entity == entity.entity
        })
        .collect()
}

fn finding_line(finding: &Finding) -> String {
    format!("{}: {}", finding.severity, finding.message)
}

fn circuit_block(
    set: &DocumentSet,
    circuit: &Circuit,
    location: &Location,
    findings: &[Finding],
) -> String {
    let here = findings_at(findings, location);
    let mut lines = vec![format!(
        "Circuit {}, Size {}, {} step(s)",
        location.entity_name(),
        circuit.size,
        circuit.steps.len()
    )];
    if let Some(name) = &circuit.name {
        lines.push(name.clone());
    }
    if let Some(description) = &circuit.description {
        lines.push(description.clone());
    }
    for finding in here.iter().filter(|f| f.location.step.is_none()) {
        lines.push(finding_line(finding));
    }
    for (step_index, step) in circuit.steps.iter().enumerate() {
        let step_no = step_index + 1;
        lines.push(format!(
            "Step {step_no}, {} operation(s)",
            step.operations.len()
        ));
        for finding in here
            .iter()
            .filter(|f| f.location.step == Some(step_no) && f.location.operation.is_none())
        {
            lines.push(finding_line(finding));
        }
        for (op_index, operation) in step.operations.iter().enumerate() {
            let op_no = op_index + 1;
            lines.push(operation_line(set, op_no, operation));
            for finding in here
                .iter()
                .filter(|f| {
                    f.location.step == Some(step_no) && f.location.operation == Some(op_no)
                })
            {
                lines.push(finding_line(finding));
            }
        }
    }
    lines.join("\n")
}

/// One report line per operation: number, gate name, short label, map list.
fn operation_line(set: &DocumentSet, op_no: usize, operation: &Operation) -> String {
    let (name, label) = match &operation.target {
        OperationTarget::Gate(inline) => {
            (inline.name.clone(), inline.short_label().to_string())
        }
        OperationTarget::GateRef(reference) => match set.resolve_gate(reference) {
            Ok(gate) => (gate.name.clone(), gate.short_label().to_string()),
            Err(_) => (reference.id.clone(), "?".to_string()),
        },
        OperationTarget::CircuitRef(reference) => match set.resolve_circuit(reference) {
            Ok(sub) => (
                sub.name.clone().unwrap_or_else(|| reference.id.clone()),
                reference.id.clone(),
            ),
            Err(_) => (reference.id.clone(), "?".to_string()),
        },
    };
    let maps = operation
        .maps
        .iter()
        .map(|map| match map.source {
            MapSource::Qubit(qubit) => format!("{qubit}={}", map.input),
            MapSource::Fixed(bit) => format!("*{bit}={}", map.input),
        })
        .collect::<Vec<_>>()
        .join(",");
    let reverse = if operation.reverse { " (reverse)" } else { "" };
    format!("{op_no}: {name} ({label}) [{maps}]{reverse}")
}

fn program_block(program: &Program, location: &Location, findings: Vec<&Finding>) -> String {
    let mut lines = vec![format!(
        "Program {}, Memory {}, {} action(s)",
        location.entity_name(),
        program.memory.size,
        program.actions.len()
    )];
    for finding in findings.iter().filter(|f| f.location.step.is_none()) {
        lines.push(finding_line(finding));
    }
    for action_no in 1..=program.actions.len() {
        let here: Vec<&&Finding> = findings
            .iter()
            .filter(|f| f.location.step == Some(action_no))
            .collect();
        if here.is_empty() {
            continue;
        }
        lines.push(format!("Action {action_no}"));
        for finding in here {
            lines.push(finding_line(finding));
        }
    }
    lines.join("\n")
}
