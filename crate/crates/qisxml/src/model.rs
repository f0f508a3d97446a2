//! The QIS-XML document model.
//!
//! These types mirror the vocabulary of the QIS-XML format: [`Gate`]s carry
//! sparse unitary transformations, [`Circuit`]s wire gates (and other
//! circuits) onto qubits step by step, and [`Program`]s bind circuits to a
//! quantum memory with preparation and measurement registers. Libraries group
//! entities of one kind; an [`Instance`] bundles libraries of all kinds.
//!
//! Conventions used throughout the crate:
//!
//! * Qubits, gate inputs, matrix rows and columns are **1-based**, matching
//!   the documents themselves.
//! * Qubit 1 (and gate input 1) is the **most significant** bit of a basis
//!   index: a 3-qubit register reading |q1 q2 q3⟩ = |110⟩ denotes basis state
//!   6, i.e. matrix row/column 7.
//! * Unlisted matrix cells are zero; a transformation's matrix is
//!   2^size × 2^size.

use crate::symexpr;
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

/// A complex value given numerically (`r`/`i` attributes), symbolically
/// (formula text per syntax flavour), or both.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexValue {
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub symbolic: Vec<Symbolic>,
}

/// One symbolic rendering of a value, tagged with its syntax flavour
/// (typically `html` or `odf`).
#[derive(Debug, Clone, PartialEq)]
pub struct Symbolic {
    pub syntax: String,
    pub expression: String,
}

impl ComplexValue {
    pub fn real(re: f64) -> Self {
        ComplexValue {
            re: Some(re),
            ..Default::default()
        }
    }

    pub fn imaginary(im: f64) -> Self {
        ComplexValue {
            im: Some(im),
            ..Default::default()
        }
    }

    pub fn new(re: f64, im: f64) -> Self {
        ComplexValue {
            re: Some(re),
            im: Some(im),
            symbolic: Vec::new(),
        }
    }

    pub fn with_symbolic(mut self, syntax: &str, expression: &str) -> Self {
        self.symbolic.push(Symbolic {
            syntax: syntax.to_string(),
            expression: expression.to_string(),
        });
        self
    }

    /// The numeric value when either numeric attribute is present; absent
    /// attributes default to zero.
    pub fn numeric(&self) -> Option<Complex64> {
        if self.re.is_none() && self.im.is_none() {
            return None;
        }
        Some(Complex64::new(
            self.re.unwrap_or(0.0),
            self.im.unwrap_or(0.0),
        ))
    }

    /// True when no numeric part and no symbolic form is present.
    pub fn is_empty(&self) -> bool {
        self.re.is_none() && self.im.is_none() && self.symbolic.is_empty()
    }

    /// Resolves the value to a number under `bindings`.
    ///
    /// Numeric attributes win outright. Otherwise the symbolic forms are
    /// tried in document order, restricted to the formula syntaxes this crate
    /// evaluates (`html` and `odf`); the first form that parses decides the
    /// value (its evaluation errors, e.g. unbound parameters, are reported
    /// rather than skipped). A value with neither representation is an error.
    pub fn resolve(&self, bindings: &HashMap<String, f64>) -> Result<Complex64, ValueError> {
        if let Some(z) = self.numeric() {
            return Ok(z);
        }
        let mut last_parse_error = None;
        for form in &self.symbolic {
            if !form.syntax.eq_ignore_ascii_case("html") && !form.syntax.eq_ignore_ascii_case("odf")
            {
                continue;
            }
            match symexpr::parse_expr(&form.expression) {
                Ok(expr) => {
                    return symexpr::eval(&expr, bindings).map_err(|source| {
                        ValueError::Expression {
                            expression: form.expression.clone(),
                            source,
                        }
                    })
                }
                Err(err) => last_parse_error = Some((form.expression.clone(), err)),
            }
        }
        match last_parse_error {
            Some((expression, source)) => Err(ValueError::Expression { expression, source }),
            None => Err(ValueError::NoValue),
        }
    }
}

/// Errors resolving a [`ComplexValue`] to a number.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ValueError {
    #[error("value has neither numeric attributes nor an evaluable symbolic form")]
    NoValue,
    #[error("in expression `{expression}`: {source}")]
    Expression {
        expression: String,
        source: symexpr::ExprError,
    },
}

/// One non-zero cell of a transformation matrix (1-based row and column).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell {
    pub row: u32,
    pub col: u32,
    pub value: ComplexValue,
}

/// A sparse 2^size × 2^size matrix with an optional common multiplier.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryTransformation {
    /// Number of qubits the transformation acts on.
    pub size: u32,
    /// Factor applied to every listed cell (e.g. 1/√2 for Hadamard).
    pub multiplier: Option<ComplexValue>,
    pub cells: Vec<MatrixCell>,
}

impl UnitaryTransformation {
    /// The matrix dimension 2^size. Only meaningful for sizes a dense matrix
    /// could hold; callers bound `size` before allocating.
    pub fn dimension(&self) -> usize {
        1usize << self.size
    }
}

/// The initial amplitudes of one memory qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    /// 1-based position in the memory; absent means "next position".
    pub index: Option<u32>,
    pub zero: ComplexValue,
    pub one: ComplexValue,
}

/// Identifies an entity: an id, optionally qualified by the maintaining
/// agency and a version.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Identification {
    pub id: String,
    pub agency: Option<String>,
    pub version: Option<String>,
}

impl Identification {
    pub fn new(id: &str) -> Self {
        Identification {
            id: id.to_string(),
            agency: None,
            version: None,
        }
    }
}

/// A reference to an entity elsewhere in the document set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Reference {
    pub id: String,
    /// Narrows the search to a library with this id.
    pub library_id: Option<String>,
    pub agency_id: Option<String>,
    pub version: Option<String>,
    /// Informational source location; narrows to documents loaded from it.
    pub uri: Option<String>,
}

impl Reference {
    pub fn new(id: &str) -> Self {
        Reference {
            id: id.to_string(),
            ..Default::default()
        }
    }
}

/// A named parameter a gate's symbolic cells may refer to.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameter {
    pub name: String,
    pub description: Option<String>,
}

/// How a drawing should depict a gate.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderHint {
    /// Gate inputs drawn as control dots.
    pub control_inputs: Vec<u32>,
    /// Glyph for the non-control inputs.
    pub target_glyph: TargetGlyph,
    /// Short label for box glyphs; defaults to nickname or id.
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetGlyph {
    /// Labelled square box (the default look).
    Box,
    /// ⊕ as on NOT-style targets.
    Oplus,
    /// × as on swap wires.
    SwapCross,
    /// Filled dot (symmetric controlled-phase style).
    Dot,
}

/// A quantum gate: metadata plus its unitary transformation.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub identification: Identification,
    pub name: String,
    pub nickname: Option<String>,
    pub description: Option<String>,
    pub parameters: Vec<Parameter>,
    pub transformation: UnitaryTransformation,
    pub render_hint: Option<RenderHint>,
}

impl Gate {
    /// Number of qubits the gate acts on.
    pub fn size(&self) -> u32 {
        self.transformation.size
    }

    /// The label a report or drawing should use alongside the full name.
    pub fn short_label(&self) -> &str {
        self.nickname.as_deref().unwrap_or(&self.identification.id)
    }
}

/// Connects one gate/circuit input either to a circuit qubit or to a fixed
/// classical bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Map {
    /// 1-based input of the operation's target.
    pub input: u32,
    pub source: MapSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapSource {
    /// 1-based qubit of the enclosing circuit.
    Qubit(u32),
    /// A constant 0 or 1 fed into the input.
    Fixed(u8),
}

impl Map {
    pub fn qubit(qubit: u32, input: u32) -> Self {
        Map {
            input,
            source: MapSource::Qubit(qubit),
        }
    }

    /// The mapped circuit qubit, when the source is a qubit.
    pub fn source_qubit(&self) -> Option<u32> {
        match self.source {
            MapSource::Qubit(q) => Some(q),
            MapSource::Fixed(_) => None,
        }
    }
}

/// What an operation applies: a gate given inline, or a gate/circuit
/// referenced by id.
#[derive(Debug, Clone, PartialEq)]
pub enum OperationTarget {
    Gate(Box<Gate>),
    GateRef(Reference),
    CircuitRef(Reference),
}

/// Binds a value to a named parameter of the applied gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterBinding {
    pub name: String,
    pub value: f64,
}

/// One application of a gate or sub-circuit within a step.
#[derive(Debug, Clone, PartialEq)]
pub struct Operation {
    pub maps: Vec<Map>,
    pub target: OperationTarget,
    /// Apply the adjoint (conjugate transpose / reversed sub-circuit).
    pub reverse: bool,
    pub bindings: Vec<ParameterBinding>,
}

impl Operation {
    pub fn applying_gate(reference: &str, maps: Vec<Map>) -> Self {
        Operation {
            maps,
            target: OperationTarget::GateRef(Reference::new(reference)),
            reverse: false,
            bindings: Vec::new(),
        }
    }
}

/// One time slice of a circuit; its operations act on disjoint qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Step {
    /// Free-text annotation (persisted as an XML comment before the step).
    pub comment: Option<String>,
    pub operations: Vec<Operation>,
}

/// Names a circuit qubit on the input or output side.
#[derive(Debug, Clone, PartialEq)]
pub struct WireLabel {
    pub qubit: u32,
    pub name: String,
}

/// A quantum circuit: an ordered list of steps over `size` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub identification: Option<Identification>,
    pub size: u32,
    pub name: Option<String>,
    pub description: Option<String>,
    pub inputs: Vec<WireLabel>,
    pub outputs: Vec<WireLabel>,
    pub steps: Vec<Step>,
}

impl Circuit {
    /// The id, when the circuit carries one.
    pub fn id(&self) -> Option<&str> {
        self.identification.as_ref().map(|ident| ident.id.as_str())
    }
}

/// Selects qubits for a register, in document order.
#[derive(Debug, Clone, PartialEq)]
pub enum RegisterSelector {
    /// One 1-based memory qubit.
    Index(u32),
    /// An inclusive 1-based range.
    Range { start: u32, end: u32 },
    /// Include another register's qubits.
    Ref(Reference),
}

/// Prepares selected qubits to a classical basis value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Prepare {
    pub sets: Vec<QubitSet>,
}

/// A group of qubit indexes prepared to the same value. Indexes are relative
/// to the enclosing scope: memory qubits in a [`Memory`] prepare, register
/// positions in a [`Register`] prepare.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitSet {
    pub indexes: Vec<u32>,
    pub value: ComplexValue,
}

/// A view of `size` memory qubits, with optional preparation.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    pub identification: Option<Identification>,
    pub size: u32,
    pub selectors: Vec<RegisterSelector>,
    pub prepare: Option<Prepare>,
}

impl Register {
    /// A register over memory qubits 1..=size.
    pub fn full(size: u32) -> Self {
        Register {
            identification: None,
            size,
            selectors: Vec::new(),
            prepare: None,
        }
    }
}

/// The quantum memory a program runs against.
#[derive(Debug, Clone, PartialEq)]
pub struct Memory {
    pub identification: Option<Identification>,
    pub name: Option<String>,
    pub size: u32,
    /// Explicit initial qubit states (defaults to |0⟩ everywhere).
    pub qubits: Vec<QubitState>,
    pub prepare: Option<Prepare>,
}

impl Memory {
    pub fn sized(size: u32) -> Self {
        Memory {
            identification: None,
            name: None,
            size,
            qubits: Vec::new(),
            prepare: None,
        }
    }
}

/// What an execute action runs on its register.
#[derive(Debug, Clone, PartialEq)]
pub enum ExecuteTarget {
    Circuit(Box<Circuit>),
    CircuitRef(Reference),
    ProgramRef(Reference),
}

/// Runs a circuit (or program) on a register of memory qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Execute {
    pub register: Register,
    pub target: ExecuteTarget,
}

/// Measures a register of memory qubits in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    pub register: Register,
}

/// Program actions in document order.
#[derive(Debug, Clone, PartialEq)]
pub enum ProgramAction {
    Execute(Execute),
    Measure(Measure),
}

/// A complete quantum program: memory, named registers, and an action list.
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub identification: Identification,
    pub name: Option<String>,
    pub description: Option<String>,
    pub memory: Memory,
    /// Registers declared at program level, referable from actions.
    pub registers: Vec<Register>,
    pub actions: Vec<ProgramAction>,
}

impl Program {
    pub fn executes(&self) -> impl Iterator<Item = &Execute> {
        self.actions.iter().filter_map(|action| match action {
            ProgramAction::Execute(e) => Some(e),
            ProgramAction::Measure(_) => None,
        })
    }

    pub fn measures(&self) -> impl Iterator<Item = &Measure> {
        self.actions.iter().filter_map(|action| match action {
            ProgramAction::Measure(m) => Some(m),
            ProgramAction::Execute(_) => None,
        })
    }
}

/// A library of gates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateLibrary {
    pub identification: Option<Identification>,
    pub gates: Vec<Gate>,
}

/// A library of circuits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircuitLibrary {
    pub identification: Option<Identification>,
    pub circuits: Vec<Circuit>,
}

/// A library of programs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProgramLibrary {
    pub identification: Option<Identification>,
    pub programs: Vec<Program>,
}

/// A bundle of libraries — the top-level "instance" document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Instance {
    pub identification: Option<Identification>,
    pub gate_libraries: Vec<GateLibrary>,
    pub circuit_libraries: Vec<CircuitLibrary>,
    pub program_libraries: Vec<ProgramLibrary>,
}

// ---------------------------------------------------------------------------
// Register resolution
// ---------------------------------------------------------------------------

/// Errors expanding a register to concrete memory qubits.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RegisterError {
    #[error("register resolves to {actual} qubit(s), but declares size {expected}")]
    SizeMismatch { expected: u32, actual: usize },
    #[error("register qubit {index} is outside memory of size {memory_size}")]
    IndexOutOfMemory { index: u32, memory_size: u32 },
    #[error("register reference `{0}` does not resolve")]
    DanglingReference(String),
    #[error("register reference `{0}` is part of a reference cycle")]
    CircularReference(String),
}

/// Expands `register` to the 1-based memory qubits it denotes, in selector
/// order. A register with no selectors denotes qubits `1..=size`.
/// `named` supplies the program-level registers that `RegisterRef` selectors
/// may point to.
pub fn resolve_register(
    register: &Register,
    memory_size: u32,
    named: &[Register],
) -> Result<Vec<u32>, RegisterError> {
    let mut trail = Vec::new();
    let indexes = expand_register(register, named, &mut trail)?;
    if indexes.len() != register.size as usize {
        return Err(RegisterError::SizeMismatch {
            expected: register.size,
            actual: indexes.len(),
        });
    }
    for &index in &indexes {
        if index < 1 || index > memory_size {
            return Err(RegisterError::IndexOutOfMemory { index, memory_size });
        }
    }
    Ok(indexes)
}

fn expand_register(
    register: &Register,
    named: &[Register],
    trail: &mut Vec<String>,
) -> Result<Vec<u32>, RegisterError> {
    if register.selectors.is_empty() {
        return Ok((1..=register.size).collect());
    }
    let mut indexes = Vec::with_capacity(register.size as usize);
    for selector in &register.selectors {
        match selector {
            RegisterSelector::Index(index) => indexes.push(*index),
            RegisterSelector::Range { start, end } => {
                if start <= end {
                    indexes.extend(*start..=*end);
                }
            }
            RegisterSelector::Ref(reference) => {
                if trail.iter().any(|seen| seen == &reference.id) {
                    return Err(RegisterError::CircularReference(reference.id.clone()));
                }
                let target = named
                    .iter()
                    .find(|candidate| {
                        candidate
                            .identification
                            .as_ref()
                            .is_some_and(|ident| ident.id == reference.id)
                    })
                    .ok_or_else(|| RegisterError::DanglingReference(reference.id.clone()))?;
                trail.push(reference.id.clone());
                indexes.extend(expand_register(target, named, trail)?);
                trail.pop();
            }
        }
    }
    Ok(indexes)
}

/// The memory qubits a program's measurements cover: the union of its measure
/// registers in action order (first occurrence wins), or all of memory when
/// the program declares no measurement.
pub fn effective_measure_targets(program: &Program) -> Result<Vec<u32>, RegisterError> {
    let mut targets = Vec::new();
    for measure in program.measures() {
        for index in resolve_register(&measure.register, program.memory.size, &program.registers)? {
            if !targets.contains(&index) {
                targets.push(index);
            }
        }
    }
    if targets.is_empty() {
        targets.extend(1..=program.memory.size);
    }
    Ok(targets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_value_numeric_defaults_missing_part_to_zero() {
        assert_eq!(
            ComplexValue::real(1.0).numeric(),
            Some(Complex64::new(1.0, 0.0))
        );
        assert_eq!(
            ComplexValue::imaginary(1.0).numeric(),
            Some(Complex64::new(0.0, 1.0))
        );
        assert_eq!(ComplexValue::default().numeric(), None);
    }

    #[test]
    fn resolve_prefers_numeric_over_symbolic() {
        let value = ComplexValue::real(1.0).with_symbolic("html", "2");
        assert_eq!(
            value.resolve(&HashMap::new()).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn resolve_skips_unevaluable_syntaxes() {
        // The odf flavour here happens to parse; a MathML form would not.
        let value = ComplexValue {
            re: None,
            im: None,
            symbolic: vec![
                Symbolic {
                    syntax: "mathml".to_string(),
                    expression: "<mfrac>1</mfrac>".to_string(),
                },
                Symbolic {
                    syntax: "odf".to_string(),
                    expression: "1/sqrt(2)".to_string(),
                },
            ],
        };
        let got = value.resolve(&HashMap::new()).unwrap();
        assert!((got.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn resolve_reports_missing_value() {
        assert_eq!(
            ComplexValue::default().resolve(&HashMap::new()),
            Err(ValueError::NoValue)
        );
    }

    #[test]
    fn resolve_first_parseable_symbolic_wins() {
        let value = ComplexValue {
            re: None,
            im: None,
            symbolic: vec![
                Symbolic {
                    syntax: "html".to_string(),
                    expression: "e^(2&#960;i&#952;".to_string(), // malformed
                },
                Symbolic {
                    syntax: "odf".to_string(),
                    expression: "0.5".to_string(),
                },
            ],
        };
        assert_eq!(
            value.resolve(&HashMap::new()).unwrap(),
            Complex64::new(0.5, 0.0)
        );
    }

    #[test]
    fn empty_register_defaults_to_identity_selection() {
        let register = Register::full(6);
        assert_eq!(
            resolve_register(&register, 6, &[]).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
    }

    #[test]
    fn selectors_expand_in_document_order() {
        let register = Register {
            identification: None,
            size: 5,
            selectors: vec![
                RegisterSelector::Index(5),
                RegisterSelector::Range { start: 2, end: 3 },
                RegisterSelector::Index(1),
                RegisterSelector::Index(4),
            ],
            prepare: None,
        };
        assert_eq!(
            resolve_register(&register, 6, &[]).unwrap(),
            vec![5, 2, 3, 1, 4]
        );
    }

    #[test]
    fn size_mismatch_is_detected() {
        let register = Register {
            size: 3,
            selectors: vec![RegisterSelector::Index(1)],
            ..Register::full(3)
        };
        assert_eq!(
            resolve_register(&register, 6, &[]),
            Err(RegisterError::SizeMismatch {
                expected: 3,
                actual: 1
            })
        );
    }

    #[test]
    fn out_of_memory_index_is_detected() {
        let register = Register::full(6);
        assert_eq!(
            resolve_register(&register, 3, &[]),
            Err(RegisterError::IndexOutOfMemory {
                index: 4,
                memory_size: 3
            })
        );
    }

    #[test]
    fn register_references_resolve_against_named_registers() {
        let named = vec![Register {
            identification: Some(Identification::new("low")),
            size: 2,
            selectors: vec![RegisterSelector::Range { start: 1, end: 2 }],
            prepare: None,
        }];
        let register = Register {
            identification: None,
            size: 3,
            selectors: vec![
                RegisterSelector::Ref(Reference::new("low")),
                RegisterSelector::Index(6),
            ],
            prepare: None,
        };
        assert_eq!(
            resolve_register(&register, 6, &named).unwrap(),
            vec![1, 2, 6]
        );
    }

    #[test]
    fn register_reference_cycle_is_detected() {
        let named = vec![
            Register {
                identification: Some(Identification::new("a")),
                size: 1,
                selectors: vec![RegisterSelector::Ref(Reference::new("b"))],
                prepare: None,
            },
            Register {
                identification: Some(Identification::new("b")),
                size: 1,
                selectors: vec![RegisterSelector::Ref(Reference::new("a"))],
                prepare: None,
            },
        ];
        let register = Register {
            identification: None,
            size: 1,
            selectors: vec![RegisterSelector::Ref(Reference::new("a"))],
            prepare: None,
        };
        assert_eq!(
            resolve_register(&register, 6, &named),
            Err(RegisterError::CircularReference("a".to_string()))
        );
    }

    #[test]
    fn dangling_register_reference_is_detected() {
        let register = Register {
            identification: None,
            size: 1,
            selectors: vec![RegisterSelector::Ref(Reference::new("nowhere"))],
            prepare: None,
        };
        assert_eq!(
            resolve_register(&register, 6, &[]),
            Err(RegisterError::DanglingReference("nowhere".to_string()))
        );
    }

    #[test]
    fn measure_targets_union_in_order_without_duplicates() {
        let program = Program {
            identification: Identification::new("p"),
            name: None,
            description: None,
            memory: Memory::sized(6),
            registers: Vec::new(),
            actions: vec![
                ProgramAction::Measure(Measure {
                    register: Register {
                        identification: None,
                        size: 2,
                        selectors: vec![
                            RegisterSelector::Index(5),
                            RegisterSelector::Index(2),
                        ],
                        prepare: None,
                    },
                }),
                ProgramAction::Measure(Measure {
                    register: Register {
                        identification: None,
                        size: 2,
                        selectors: vec![
                            RegisterSelector::Index(2),
                            RegisterSelector::Index(6),
                        ],
                        prepare: None,
                    },
                }),
            ],
        };
        assert_eq!(effective_measure_targets(&program).unwrap(), vec![5, 2, 6]);
    }

    #[test]
    fn measure_targets_default_to_whole_memory() {
        let program = Program {
            identification: Identification::new("p"),
            name: None,
            description: None,
            memory: Memory::sized(3),
            registers: Vec::new(),
            actions: Vec::new(),
        };
        assert_eq!(effective_measure_targets(&program).unwrap(), vec![1, 2, 3]);
    }
}
