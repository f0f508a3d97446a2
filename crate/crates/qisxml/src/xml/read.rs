//! The QIS-XML reader.

use crate::model::*;
use crate::xml::{is_qis_namespace, Document as QisDocument, NS_CIRCUIT, NS_GATE, NS_INSTANCE, NS_PROGRAM};
use roxmltree::Node;
use thiserror::Error;

/// Errors turning XML text into the document model.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("malformed XML: {0}")]
    Malformed(String),
    #[error("unsupported root element `{0}`")]
    UnknownRoot(String),
    #[error("`{element}` is missing required {what}")]
    Missing { element: String, what: String },
    #[error("bad attribute {attribute}=\"{value}\" on `{element}`: {message}")]
    BadAttribute {
        element: String,
        attribute: String,
        value: String,
        message: String,
    },
    #[error("`{element}`: {message}")]
    Invalid { element: String, message: String },
}

type Result<T> = std::result::Result<T, ParseError>;

fn missing(node: Node, what: &str) -> ParseError {
    ParseError::Missing {
        element: node.tag_name().name().to_string(),
        what: what.to_string(),
    }
}

fn invalid(node: Node, message: impl Into<String>) -> ParseError {
    ParseError::Invalid {
        element: node.tag_name().name().to_string(),
        message: message.into(),
    }
}

fn unknown_child(parent: Node, child: Node) -> ParseError {
    invalid(
        parent,
        format!("unknown element `{}`", child.tag_name().name()),
    )
}

/// Element children that belong to the QIS vocabulary (no namespace or one of
/// the module namespaces). Foreign-namespace elements are skipped.
fn qis_elements<'a, 'input>(node: Node<'a, 'input>) -> impl Iterator<Item = Node<'a, 'input>> {
    node.children()
        .filter(|child| child.is_element() && is_qis_namespace(child.tag_name().namespace()))
}

fn local<'a>(node: Node<'a, '_>) -> &'a str {
    node.tag_name().name()
}

fn req_attr<'a>(node: Node<'a, '_>, name: &str) -> Result<&'a str> {
    node.attribute(name)
        .ok_or_else(|| missing(node, &format!("attribute @{name}")))
}

fn parse_u32(node: Node, name: &str, value: &str) -> Result<u32> {
    value.trim().parse().map_err(|_| ParseError::BadAttribute {
        element: local(node).to_string(),
        attribute: name.to_string(),
        value: value.to_string(),
        message: "expected a non-negative integer".to_string(),
    })
}

fn req_u32_attr(node: Node, name: &str) -> Result<u32> {
    parse_u32(node, name, req_attr(node, name)?)
}

fn opt_u32_attr(node: Node, name: &str) -> Result<Option<u32>> {
    node.attribute(name)
        .map(|value| parse_u32(node, name, value))
        .transpose()
}

fn opt_f64_attr(node: Node, name: &str) -> Result<Option<f64>> {
    match node.attribute(name) {
        None => Ok(None),
        Some(value) => value
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ParseError::BadAttribute {
                element: local(node).to_string(),
                attribute: name.to_string(),
                value: value.to_string(),
                message: "expected a number".to_string(),
            }),
    }
}

fn bool_attr(node: Node, name: &str) -> Result<bool> {
    match node.attribute(name) {
        None => Ok(false),
        Some("true") | Some("1") => Ok(true),
        Some("false") | Some("0") => Ok(false),
        Some(other) => Err(ParseError::BadAttribute {
            element: local(node).to_string(),
            attribute: name.to_string(),
            value: other.to_string(),
            message: "expected true or false".to_string(),
        }),
    }
}

fn text_of(node: Node) -> String {
    node.text().unwrap_or("").to_string()
}

fn text_u32(node: Node) -> Result<u32> {
    let text = text_of(node);
    text.trim()
        .parse()
        .map_err(|_| invalid(node, format!("expected an integer, found `{}`", text.trim())))
}

// ---------------------------------------------------------------------------
// Reusable pieces
// ---------------------------------------------------------------------------

fn parse_identification(node: Node) -> Result<Identification> {
    // Attribute style: <Identification id="H" agency=".." version=".."/>
    if let Some(id) = node.attribute("id") {
        return Ok(Identification {
            id: id.to_string(),
            agency: node.attribute("agency").map(str::to_string),
            version: node.attribute("version").map(str::to_string),
        });
    }
    // Element style: <r:Identification><r:ID>H</r:ID>…</r:Identification>
    let mut identification = Identification::default();
    let mut has_id = false;
    for child in qis_elements(node) {
        match local(child) {
            "ID" => {
                identification.id = text_of(child).trim().to_string();
                has_id = true;
            }
            "Agency" => identification.agency = Some(text_of(child).trim().to_string()),
            "Version" => identification.version = Some(text_of(child).trim().to_string()),
            _ => return Err(unknown_child(node, child)),
        }
    }
    if !has_id {
        return Err(missing(node, "an id"));
    }
    Ok(identification)
}

fn parse_reference(node: Node) -> Result<Reference> {
    if let Some(id) = node.attribute("id") {
        return Ok(Reference {
            id: id.to_string(),
            library_id: node.attribute("libraryId").map(str::to_string),
            agency_id: node
                .attribute("agencyId")
                .or_else(|| node.attribute("agency"))
                .map(str::to_string),
            version: node.attribute("version").map(str::to_string),
            uri: node.attribute("uri").map(str::to_string),
        });
    }
    let mut reference = Reference::default();
    let mut has_id = false;
    for child in qis_elements(node) {
        match local(child) {
            "ID" => {
                reference.id = text_of(child).trim().to_string();
                has_id = true;
            }
            "LibraryID" => reference.library_id = Some(text_of(child).trim().to_string()),
            "AgencyID" | "Agency" => reference.agency_id = Some(text_of(child).trim().to_string()),
            "Version" => reference.version = Some(text_of(child).trim().to_string()),
            "URI" => reference.uri = Some(text_of(child).trim().to_string()),
            _ => return Err(unknown_child(node, child)),
        }
    }
    if !has_id {
        return Err(missing(node, "an id"));
    }
    Ok(reference)
}

/// Reads the numeric/symbolic complex value carried by `node` (`@r`, `@i`
/// attributes and `Symbolic` children).
fn parse_complex_of(node: Node) -> Result<ComplexValue> {
    let mut value = ComplexValue {
        re: opt_f64_attr(node, "r")?,
        im: opt_f64_attr(node, "i")?,
        symbolic: Vec::new(),
    };
    for child in qis_elements(node) {
        match local(child) {
            "Symbolic" => value.symbolic.push(Symbolic {
                syntax: req_attr(child, "syntax")?.to_string(),
                expression: text_of(child),
            }),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(value)
}

fn parse_qubit_state(node: Node) -> Result<QubitState> {
    let mut zero = None;
    let mut one = None;
    for child in qis_elements(node) {
        match local(child) {
            "Zero" => zero = Some(parse_complex_of(child)?),
            "One" => one = Some(parse_complex_of(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(QubitState {
        index: opt_u32_attr(node, "index")?,
        zero: zero.ok_or_else(|| missing(node, "a Zero amplitude"))?,
        one: one.ok_or_else(|| missing(node, "a One amplitude"))?,
    })
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

fn parse_transformation(node: Node) -> Result<UnitaryTransformation> {
    let size = req_u32_attr(node, "size")?;
    let mut multiplier = None;
    let mut cells = Vec::new();
    for child in qis_elements(node) {
        match local(child) {
            "Multiplier" => multiplier = Some(parse_complex_of(child)?),
            "Cell" => cells.push(MatrixCell {
                row: req_u32_attr(child, "row")?,
                col: req_u32_attr(child, "col")?,
                value: parse_complex_of(child)?,
            }),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(UnitaryTransformation {
        size,
        multiplier,
        cells,
    })
}

fn parse_render_hint(node: Node) -> Result<RenderHint> {
    let control_inputs = match node.attribute("controls") {
        None => Vec::new(),
        Some(list) => list
            .split_whitespace()
            .map(|item| parse_u32(node, "controls", item))
            .collect::<Result<Vec<u32>>>()?,
    };
    let target_glyph = match node.attribute("target") {
        None | Some("box") => TargetGlyph::Box,
        Some("oplus") => TargetGlyph::Oplus,
        Some("swap-cross") => TargetGlyph::SwapCross,
        Some("dot") => TargetGlyph::Dot,
        Some(other) => {
            return Err(ParseError::BadAttribute {
                element: local(node).to_string(),
                attribute: "target".to_string(),
                value: other.to_string(),
                message: "expected box, oplus, swap-cross or dot".to_string(),
            })
        }
    };
    Ok(RenderHint {
        control_inputs,
        target_glyph,
        label: node.attribute("label").map(str::to_string),
    })
}

fn parse_gate(node: Node) -> Result<Gate> {
    let mut identification = None;
    let mut name = None;
    let mut nickname = None;
    let mut description = None;
    let mut parameters = Vec::new();
    let mut transformation = None;
    let mut render_hint = None;
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => identification = Some(parse_identification(child)?),
            "Name" => name = Some(text_of(child)),
            "Nickname" => nickname = Some(text_of(child)),
            "Description" => description = Some(text_of(child)),
            "Parameter" => parameters.push(parse_parameter(child)?),
            "Transformation" => transformation = Some(parse_transformation(child)?),
            "Render" => render_hint = Some(parse_render_hint(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Gate {
        identification: identification.ok_or_else(|| missing(node, "an Identification"))?,
        name: name.ok_or_else(|| missing(node, "a Name"))?,
        nickname,
        description,
        parameters,
        transformation: transformation.ok_or_else(|| missing(node, "a Transformation"))?,
        render_hint,
    })
}

fn parse_parameter(node: Node) -> Result<Parameter> {
    let mut name = None;
    let mut description = None;
    for child in qis_elements(node) {
        match local(child) {
            "Name" => name = Some(text_of(child)),
            "Description" => description = Some(text_of(child)),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Parameter {
        name: name.ok_or_else(|| missing(node, "a Name"))?,
        description,
    })
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

fn parse_map(node: Node) -> Result<Map> {
    let input = req_u32_attr(node, "input")?;
    let qubit = opt_u32_attr(node, "qubit")?;
    let fixed_attr = node.attribute("value").or_else(|| node.attribute("fixedValue"));
    let source = match (qubit, fixed_attr) {
        (Some(_), Some(_)) => {
            return Err(invalid(node, "has both a qubit and a fixed value"));
        }
        (Some(qubit), None) => MapSource::Qubit(qubit),
        (None, Some(bit)) => match bit.trim() {
            "0" => MapSource::Fixed(0),
            "1" => MapSource::Fixed(1),
            other => {
                return Err(ParseError::BadAttribute {
                    element: local(node).to_string(),
                    attribute: "value".to_string(),
                    value: other.to_string(),
                    message: "expected 0 or 1".to_string(),
                })
            }
        },
        (None, None) => {
            return Err(invalid(node, "must name a qubit or give a fixed value"));
        }
    };
    Ok(Map { input, source })
}

/// Is this prototype-style `<Gate>` element just a wrapper around a
/// `<GateRef>`?
fn as_gate_ref_wrapper<'a, 'input>(node: Node<'a, 'input>) -> Option<Node<'a, 'input>> {
    let children: Vec<Node> = qis_elements(node).collect();
    match children.as_slice() {
        [only] if local(*only) == "GateRef" => Some(*only),
        _ => None,
    }
}

fn parse_operation(node: Node) -> Result<Operation> {
    let reverse = bool_attr(node, "reverse")?;
    let mut maps = Vec::new();
    let mut bindings = Vec::new();
    let mut target: Option<OperationTarget> = None;
    let set_target = |node: Node, new: OperationTarget, target: &mut Option<OperationTarget>| {
        if target.is_some() {
            return Err(invalid(node, "has more than one gate/circuit target"));
        }
        *target = Some(new);
        Ok(())
    };
    for child in qis_elements(node) {
        match local(child) {
            "Map" => maps.push(parse_map(child)?),
            "GateRef" => set_target(
                node,
                OperationTarget::GateRef(parse_reference(child)?),
                &mut target,
            )?,
            "CircuitRef" => set_target(
                node,
                OperationTarget::CircuitRef(parse_reference(child)?),
                &mut target,
            )?,
            "Gate" => {
                let parsed = match as_gate_ref_wrapper(child) {
                    Some(reference) => OperationTarget::GateRef(parse_reference(reference)?),
                    None => OperationTarget::Gate(Box::new(parse_gate(child)?)),
                };
                set_target(node, parsed, &mut target)?;
            }
            "ParameterBinding" => bindings.push(ParameterBinding {
                name: req_attr(child, "name")?.to_string(),
                value: opt_f64_attr(child, "value")?
                    .ok_or_else(|| missing(child, "attribute @value"))?,
            }),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Operation {
        maps,
        target: target.ok_or_else(|| missing(node, "a gate or circuit target"))?,
        reverse,
        bindings,
    })
}

fn parse_step(node: Node, comment: Option<String>) -> Result<Step> {
    let mut operations = Vec::new();
    for child in qis_elements(node) {
        match local(child) {
            "Operation" => operations.push(parse_operation(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Step {
        comment,
        operations,
    })
}

fn parse_wire_label(node: Node) -> Result<WireLabel> {
    let qubit = req_u32_attr(node, "qubit")?;
    let mut name = None;
    for child in qis_elements(node) {
        match local(child) {
            "Name" => name = Some(text_of(child)),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(WireLabel {
        qubit,
        name: name.ok_or_else(|| missing(node, "a Name"))?,
    })
}

fn parse_circuit(node: Node) -> Result<Circuit> {
    let mut circuit = Circuit {
        identification: None,
        size: req_u32_attr(node, "size")?,
        name: None,
        description: None,
        inputs: Vec::new(),
        outputs: Vec::new(),
        steps: Vec::new(),
    };
    // An XML comment immediately before a <Step> becomes the step's comment.
    let mut pending_comment: Option<String> = None;
    for child in node.children() {
        if child.is_comment() {
            let text = child.text().unwrap_or("").trim().to_string();
            pending_comment = (!text.is_empty()).then_some(text);
            continue;
        }
        if !child.is_element() {
            continue;
        }
        if !is_qis_namespace(child.tag_name().namespace()) {
            pending_comment = None;
            continue;
        }
        match local(child) {
            "Step" => {
                let comment = pending_comment.take();
                circuit.steps.push(parse_step(child, comment)?);
                continue;
            }
            "Identification" => circuit.identification = Some(parse_identification(child)?),
            "Name" => circuit.name = Some(text_of(child)),
            "Description" => circuit.description = Some(text_of(child)),
            "Input" => circuit.inputs.push(parse_wire_label(child)?),
            "Output" => circuit.outputs.push(parse_wire_label(child)?),
            _ => return Err(unknown_child(node, child)),
        }
        pending_comment = None;
    }
    Ok(circuit)
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

fn parse_register(node: Node) -> Result<Register> {
    let mut register = Register {
        identification: None,
        size: req_u32_attr(node, "size")?,
        selectors: Vec::new(),
        prepare: None,
    };
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => register.identification = Some(parse_identification(child)?),
            "QubitIndex" => register
                .selectors
                .push(RegisterSelector::Index(text_u32(child)?)),
            "QubitRange" => {
                let mut start = None;
                let mut end = None;
                for bound in qis_elements(child) {
                    match local(bound) {
                        "StartQubit" => start = Some(text_u32(bound)?),
                        "EndQubit" => end = Some(text_u32(bound)?),
                        _ => return Err(unknown_child(child, bound)),
                    }
                }
                register.selectors.push(RegisterSelector::Range {
                    start: start.ok_or_else(|| missing(child, "a StartQubit"))?,
                    end: end.ok_or_else(|| missing(child, "an EndQubit"))?,
                });
            }
            "RegisterReference" | "RegisterRef" => register
                .selectors
                .push(RegisterSelector::Ref(parse_reference(child)?)),
            "Prepare" => register.prepare = Some(parse_prepare(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(register)
}

fn parse_prepare(node: Node) -> Result<Prepare> {
    let mut prepare = Prepare::default();
    for child in qis_elements(node) {
        match local(child) {
            "QubitSet" => {
                let mut indexes = Vec::new();
                let mut value = None;
                for item in qis_elements(child) {
                    match local(item) {
                        "QubitIndex" => indexes.push(text_u32(item)?),
                        "Value" => value = Some(parse_complex_of(item)?),
                        _ => return Err(unknown_child(child, item)),
                    }
                }
                prepare.sets.push(QubitSet {
                    indexes,
                    value: value.ok_or_else(|| missing(child, "a Value"))?,
                });
            }
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(prepare)
}

fn parse_memory(node: Node) -> Result<Memory> {
    let mut memory = Memory::sized(req_u32_attr(node, "size")?);
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => memory.identification = Some(parse_identification(child)?),
            "Name" => memory.name = Some(text_of(child)),
            "Qubit" => memory.qubits.push(parse_qubit_state(child)?),
            "Prepare" => memory.prepare = Some(parse_prepare(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(memory)
}

fn parse_execute(node: Node) -> Result<Execute> {
    let mut register = None;
    let mut target: Option<ExecuteTarget> = None;
    let set_target = |node: Node, new: ExecuteTarget, target: &mut Option<ExecuteTarget>| {
        if target.is_some() {
            return Err(invalid(node, "has more than one circuit/program target"));
        }
        *target = Some(new);
        Ok(())
    };
    for child in qis_elements(node) {
        match local(child) {
            "Register" => register = Some(parse_register(child)?),
            "Circuit" => set_target(
                node,
                ExecuteTarget::Circuit(Box::new(parse_circuit(child)?)),
                &mut target,
            )?,
            "CircuitRef" => set_target(
                node,
                ExecuteTarget::CircuitRef(parse_reference(child)?),
                &mut target,
            )?,
            "ProgramRef" => set_target(
                node,
                ExecuteTarget::ProgramRef(parse_reference(child)?),
                &mut target,
            )?,
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Execute {
        register: register.ok_or_else(|| missing(node, "a Register"))?,
        target: target.ok_or_else(|| missing(node, "a circuit or program target"))?,
    })
}

fn parse_program(node: Node) -> Result<Program> {
    let mut identification = None;
    let mut name = None;
    let mut description = None;
    let mut memory = None;
    let mut registers = Vec::new();
    let mut actions = Vec::new();
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => identification = Some(parse_identification(child)?),
            "Name" => name = Some(text_of(child)),
            "Description" => description = Some(text_of(child)),
            "Memory" => memory = Some(parse_memory(child)?),
            "Register" => registers.push(parse_register(child)?),
            "Execute" => actions.push(ProgramAction::Execute(parse_execute(child)?)),
            "Measure" => actions.push(ProgramAction::Measure(Measure {
                register: {
                    let mut register = None;
                    for item in qis_elements(child) {
                        match local(item) {
                            "Register" => register = Some(parse_register(item)?),
                            _ => return Err(unknown_child(child, item)),
                        }
                    }
                    register.ok_or_else(|| missing(child, "a Register"))?
                },
            })),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(Program {
        identification: identification.ok_or_else(|| missing(node, "an Identification"))?,
        name,
        description,
        memory: memory.ok_or_else(|| missing(node, "a Memory"))?,
        registers,
        actions,
    })
}

// ---------------------------------------------------------------------------
// Libraries and documents
// ---------------------------------------------------------------------------

fn parse_gate_library(node: Node) -> Result<GateLibrary> {
    let mut library = GateLibrary::default();
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => library.identification = Some(parse_identification(child)?),
            "Gate" => library.gates.push(parse_gate(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(library)
}

fn parse_circuit_library(node: Node) -> Result<CircuitLibrary> {
    let mut library = CircuitLibrary::default();
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => library.identification = Some(parse_identification(child)?),
            "Circuit" => library.circuits.push(parse_circuit(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(library)
}

fn parse_program_library(node: Node) -> Result<ProgramLibrary> {
    let mut library = ProgramLibrary::default();
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => library.identification = Some(parse_identification(child)?),
            "Program" => library.programs.push(parse_program(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    Ok(library)
}

/// Accepts both the modular `i:Instance` (library children) and the prototype
/// `QIS` root (bare gates and circuits), producing one [`Instance`].
fn parse_instance(node: Node) -> Result<Instance> {
    let mut instance = Instance::default();
    let mut loose_gates = Vec::new();
    let mut loose_circuits = Vec::new();
    let mut loose_programs = Vec::new();
    for child in qis_elements(node) {
        match local(child) {
            "Identification" => instance.identification = Some(parse_identification(child)?),
            "GateLibrary" => instance.gate_libraries.push(parse_gate_library(child)?),
            "CircuitLibrary" => instance
                .circuit_libraries
                .push(parse_circuit_library(child)?),
            "ProgramLibrary" => instance
                .program_libraries
                .push(parse_program_library(child)?),
            "Gate" => loose_gates.push(parse_gate(child)?),
            "Circuit" => loose_circuits.push(parse_circuit(child)?),
            "Program" => loose_programs.push(parse_program(child)?),
            _ => return Err(unknown_child(node, child)),
        }
    }
    if !loose_gates.is_empty() {
        instance.gate_libraries.push(GateLibrary {
            identification: None,
            gates: loose_gates,
        });
    }
    if !loose_circuits.is_empty() {
        instance.circuit_libraries.push(CircuitLibrary {
            identification: None,
            circuits: loose_circuits,
        });
    }
    if !loose_programs.is_empty() {
        instance.program_libraries.push(ProgramLibrary {
            identification: None,
            programs: loose_programs,
        });
    }
    Ok(instance)
}

/// Parses a complete QIS-XML document.
pub fn parse_document(text: &str) -> Result<QisDocument> {
    let tree =
        roxmltree::Document::parse(text).map_err(|err| ParseError::Malformed(err.to_string()))?;
    let root = tree.root_element();
    let namespace = root.tag_name().namespace();
    let name = local(root);
    match (namespace, name) {
        (Some(NS_INSTANCE), "Instance") | (None, "QIS") => {
            Ok(QisDocument::Instance(parse_instance(root)?))
        }
        (Some(NS_GATE) | None, "GateLibrary") => {
            Ok(QisDocument::Gates(parse_gate_library(root)?))
        }
        (Some(NS_CIRCUIT) | None, "CircuitLibrary") => {
            Ok(QisDocument::Circuits(parse_circuit_library(root)?))
        }
        (Some(NS_PROGRAM) | None, "ProgramLibrary") => {
            Ok(QisDocument::Programs(parse_program_library(root)?))
        }
        (Some(NS_PROGRAM) | None, "Program") => Ok(QisDocument::Programs(ProgramLibrary {
            identification: None,
            programs: vec![parse_program(root)?],
        })),
        (Some(NS_GATE) | None, "Gate") => Ok(QisDocument::Gates(GateLibrary {
            identification: None,
            gates: vec![parse_gate(root)?],
        })),
        (Some(NS_CIRCUIT) | None, "Circuit") => Ok(QisDocument::Circuits(CircuitLibrary {
            identification: None,
            circuits: vec![parse_circuit(root)?],
        })),
        _ => Err(ParseError::UnknownRoot(name.to_string())),
    }
}

/// A standalone model fragment parsed outside a document root — handy for
/// embedding snippets in tests and tools.
#[derive(Debug, Clone, PartialEq)]
pub enum Fragment {
    Gate(Gate),
    Circuit(Circuit),
    Program(Program),
    Transformation(UnitaryTransformation),
    Register(Register),
}

/// Parses a single `Gate`, `Circuit`, `Program`, `Transformation` or
/// `Register` element.
pub fn parse_fragment(text: &str) -> Result<Fragment> {
    let tree =
        roxmltree::Document::parse(text).map_err(|err| ParseError::Malformed(err.to_string()))?;
    let root = tree.root_element();
    match local(root) {
        "Gate" => Ok(Fragment::Gate(parse_gate(root)?)),
        "Circuit" => Ok(Fragment::Circuit(parse_circuit(root)?)),
        "Program" => Ok(Fragment::Program(parse_program(root)?)),
        "Transformation" => Ok(Fragment::Transformation(parse_transformation(root)?)),
        "Register" => Ok(Fragment::Register(parse_register(root)?)),
        other => Err(ParseError::UnknownRoot(other.to_string())),
    }
}
