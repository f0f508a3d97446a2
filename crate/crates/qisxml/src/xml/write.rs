//! The canonical QIS-XML writer.
//!
//! Output always uses the modular, namespaced vocabulary with one module per
//! prefix (`i`, `g`, `c`, `p`, `r`), tab indentation and an XML declaration.

use crate::model::*;
use crate::xml::{
    Document as QisDocument, Fragment, NS_CIRCUIT, NS_GATE, NS_INSTANCE, NS_PROGRAM, NS_REUSABLE,
};

const NS_XSI: &str = "http://www.w3.org/2001/XMLSchema-instance";

struct XmlWriter {
    out: String,
    depth: usize,
}

impl XmlWriter {
    fn new() -> Self {
        XmlWriter {
            out: String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"),
            depth: 0,
        }
    }

    fn line(&mut self, content: &str) {
        for _ in 0..self.depth {
            self.out.push('\t');
        }
        self.out.push_str(content);
        self.out.push('\n');
    }

    /// Writes `<tag_and_attrs>` and indents.
    fn open(&mut self, tag_and_attrs: &str) {
        self.line(&format!("<{tag_and_attrs}>"));
        self.depth += 1;
    }

    fn close(&mut self, tag: &str) {
        self.depth -= 1;
        self.line(&format!("</{tag}>"));
    }

    /// Writes `<tag_and_attrs/>`.
    fn empty(&mut self, tag_and_attrs: &str) {
        self.line(&format!("<{tag_and_attrs}/>"));
    }

    /// Writes `<tag>text</tag>` on one line.
    fn text_element(&mut self, tag: &str, text: &str) {
        self.line(&format!("<{tag}>{}</{tag}>", escape_text(text)));
    }

    fn comment(&mut self, text: &str) {
        // "--" is not allowed inside an XML comment.
        let safe = text.replace("--", "- -");
        self.line(&format!("<!-- {} -->", safe.trim()));
    }
}

fn escape_text(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn escape_attr(text: &str) -> String {
    escape_text(text).replace('"', "&quot;")
}

fn attr(name: &str, value: &str) -> String {
    format!(" {name}=\"{}\"", escape_attr(value))
}

fn number(value: f64) -> String {
    value.to_string()
}

// ---------------------------------------------------------------------------
// Reusable pieces
// ---------------------------------------------------------------------------

fn write_identification(w: &mut XmlWriter, identification: &Identification) {
    w.open("r:Identification");
    w.text_element("r:ID", &identification.id);
    if let Some(agency) = &identification.agency {
        w.text_element("r:Agency", agency);
    }
    if let Some(version) = &identification.version {
        w.text_element("r:Version", version);
    }
    w.close("r:Identification");
}

/// Writes a reference element such as `c:GateRef` in the element style
/// (`<c:GateRef><r:ID>H</r:ID></c:GateRef>`).
fn write_reference(w: &mut XmlWriter, tag: &str, reference: &Reference) {
    w.open(tag);
    w.text_element("r:ID", &reference.id);
    if let Some(library_id) = &reference.library_id {
        w.text_element("r:LibraryID", library_id);
    }
    if let Some(agency_id) = &reference.agency_id {
        w.text_element("r:AgencyID", agency_id);
    }
    if let Some(version) = &reference.version {
        w.text_element("r:Version", version);
    }
    if let Some(uri) = &reference.uri {
        w.text_element("r:URI", uri);
    }
    w.close(tag);
}

fn complex_attrs(value: &ComplexValue) -> String {
    let mut attrs = String::new();
    if let Some(re) = value.re {
        attrs.push_str(&attr("r", &number(re)));
    }
    if let Some(im) = value.im {
        attrs.push_str(&attr("i", &number(im)));
    }
    attrs
}

/// Writes an element carrying a complex value: numeric parts as `@r`/`@i`,
/// symbolic forms as `Symbolic` children in the same module as the parent.
fn write_complex_element(w: &mut XmlWriter, tag: &str, extra_attrs: &str, value: &ComplexValue) {
    let module = tag.split(':').next().unwrap_or("r");
    let head = format!("{tag}{extra_attrs}{}", complex_attrs(value));
    if value.symbolic.is_empty() {
        w.empty(&head);
        return;
    }
    w.open(&head);
    for symbolic in &value.symbolic {
        w.line(&format!(
            "<{module}:Symbolic{}>{}</{module}:Symbolic>",
            attr("syntax", &symbolic.syntax),
            escape_text(&symbolic.expression)
        ));
    }
    w.close(tag);
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

fn write_transformation(
    w: &mut XmlWriter,
    transformation: &UnitaryTransformation,
    root_attrs: &str,
) {
    w.open(&format!(
        "g:Transformation{}{root_attrs}",
        attr("size", &transformation.size.to_string())
    ));
    if let Some(multiplier) = &transformation.multiplier {
        write_complex_element(w, "g:Multiplier", "", multiplier);
    }
    for cell in &transformation.cells {
        let position = format!(
            "{}{}",
            attr("row", &cell.row.to_string()),
            attr("col", &cell.col.to_string())
        );
        write_complex_element(w, "g:Cell", &position, &cell.value);
    }
    w.close("g:Transformation");
}

fn glyph_name(glyph: TargetGlyph) -> &'static str {
    match glyph {
        TargetGlyph::Box => "box",
        TargetGlyph::Oplus => "oplus",
        TargetGlyph::SwapCross => "swap-cross",
        TargetGlyph::Dot => "dot",
    }
}

fn write_render_hint(w: &mut XmlWriter, hint: &RenderHint) {
    let mut attrs = String::new();
    if !hint.control_inputs.is_empty() {
        let list = hint
            .control_inputs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        attrs.push_str(&attr("controls", &list));
    }
    attrs.push_str(&attr("target", glyph_name(hint.target_glyph)));
    if let Some(label) = &hint.label {
        attrs.push_str(&attr("label", label));
    }
    w.empty(&format!("g:Render{attrs}"));
}

fn write_gate(w: &mut XmlWriter, gate: &Gate, root_attrs: &str) {
    w.open(&format!("g:Gate{root_attrs}"));
    write_identification(w, &gate.identification);
    w.text_element("g:Name", &gate.name);
    if let Some(nickname) = &gate.nickname {
        w.text_element("g:Nickname", nickname);
    }
    if let Some(description) = &gate.description {
        w.text_element("g:Description", description);
    }
    for parameter in &gate.parameters {
        w.open("g:Parameter");
        w.text_element("g:Name", &parameter.name);
        if let Some(description) = &parameter.description {
            w.text_element("g:Description", description);
        }
        w.close("g:Parameter");
    }
    write_transformation(w, &gate.transformation, "");
    if let Some(hint) = &gate.render_hint {
        write_render_hint(w, hint);
    }
    w.close("g:Gate");
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

fn write_map(w: &mut XmlWriter, map: &Map) {
    let source = match map.source {
        MapSource::Qubit(qubit) => attr("qubit", &qubit.to_string()),
        MapSource::Fixed(bit) => attr("value", &bit.to_string()),
    };
    w.empty(&format!(
        "c:Map{source}{}",
        attr("input", &map.input.to_string())
    ));
}

fn write_operation(w: &mut XmlWriter, operation: &Operation) {
    let reverse = if operation.reverse {
        attr("reverse", "true")
    } else {
        String::new()
    };
    w.open(&format!("c:Operation{reverse}"));
    for map in &operation.maps {
        write_map(w, map);
    }
    match &operation.target {
        OperationTarget::Gate(gate) => write_gate(w, gate, ""),
        OperationTarget::GateRef(reference) => write_reference(w, "c:GateRef", reference),
        OperationTarget::CircuitRef(reference) => write_reference(w, "c:CircuitRef", reference),
    }
    for binding in &operation.bindings {
        w.empty(&format!(
            "c:ParameterBinding{}{}",
            attr("name", &binding.name),
            attr("value", &number(binding.value))
        ));
    }
    w.close("c:Operation");
}

fn write_wire_label(w: &mut XmlWriter, tag: &str, label: &WireLabel) {
    w.open(&format!("{tag}{}", attr("qubit", &label.qubit.to_string())));
    w.text_element("r:Name", &label.name);
    w.close(tag);
}

fn write_circuit(w: &mut XmlWriter, circuit: &Circuit, root_attrs: &str) {
    w.open(&format!(
        "c:Circuit{}{root_attrs}",
        attr("size", &circuit.size.to_string())
    ));
    if let Some(identification) = &circuit.identification {
        write_identification(w, identification);
    }
    if let Some(name) = &circuit.name {
        w.text_element("c:Name", name);
    }
    if let Some(description) = &circuit.description {
        w.text_element("c:Description", description);
    }
    for input in &circuit.inputs {
        write_wire_label(w, "r:Input", input);
    }
    for output in &circuit.outputs {
        write_wire_label(w, "r:Output", output);
    }
    for step in &circuit.steps {
        if let Some(comment) = &step.comment {
            w.comment(comment);
        }
        w.open("c:Step");
        for operation in &step.operations {
            write_operation(w, operation);
        }
        w.close("c:Step");
    }
    w.close("c:Circuit");
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

fn write_prepare(w: &mut XmlWriter, prepare: &Prepare) {
    w.open("p:Prepare");
    for set in &prepare.sets {
        w.open("p:QubitSet");
        for index in &set.indexes {
            w.text_element("p:QubitIndex", &index.to_string());
        }
        write_complex_element(w, "p:Value", "", &set.value);
        w.close("p:QubitSet");
    }
    w.close("p:Prepare");
}

fn write_register(w: &mut XmlWriter, register: &Register, root_attrs: &str) {
    let head = format!(
        "p:Register{}{root_attrs}",
        attr("size", &register.size.to_string())
    );
    if register.identification.is_none()
        && register.selectors.is_empty()
        && register.prepare.is_none()
    {
        w.empty(&head);
        return;
    }
    w.open(&head);
    if let Some(identification) = &register.identification {
        write_identification(w, identification);
    }
    for selector in &register.selectors {
        match selector {
            RegisterSelector::Index(index) => {
                w.text_element("p:QubitIndex", &index.to_string());
            }
            RegisterSelector::Range { start, end } => {
                w.open("p:QubitRange");
                w.text_element("p:StartQubit", &start.to_string());
                w.text_element("p:EndQubit", &end.to_string());
                w.close("p:QubitRange");
            }
            RegisterSelector::Ref(reference) => {
                write_reference(w, "p:RegisterReference", reference);
            }
        }
    }
    if let Some(prepare) = &register.prepare {
        write_prepare(w, prepare);
    }
    w.close("p:Register");
}

fn write_memory(w: &mut XmlWriter, memory: &Memory) {
    let head = format!("p:Memory{}", attr("size", &memory.size.to_string()));
    if memory.identification.is_none()
        && memory.name.is_none()
        && memory.qubits.is_empty()
        && memory.prepare.is_none()
    {
        w.empty(&head);
        return;
    }
    w.open(&head);
    if let Some(identification) = &memory.identification {
        write_identification(w, identification);
    }
    if let Some(name) = &memory.name {
        w.text_element("p:Name", name);
    }
    for qubit in &memory.qubits {
        let index = match qubit.index {
            Some(index) => attr("index", &index.to_string()),
            None => String::new(),
        };
        w.open(&format!("p:Qubit{index}"));
        write_complex_element(w, "r:Zero", "", &qubit.zero);
        write_complex_element(w, "r:One", "", &qubit.one);
        w.close("p:Qubit");
    }
    if let Some(prepare) = &memory.prepare {
        write_prepare(w, prepare);
    }
    w.close("p:Memory");
}

fn write_execute(w: &mut XmlWriter, execute: &Execute) {
    w.open("p:Execute");
    write_register(w, &execute.register, "");
    match &execute.target {
        ExecuteTarget::Circuit(circuit) => write_circuit(w, circuit, ""),
        ExecuteTarget::CircuitRef(reference) => write_reference(w, "p:CircuitRef", reference),
        ExecuteTarget::ProgramRef(reference) => write_reference(w, "p:ProgramRef", reference),
    }
    w.close("p:Execute");
}

fn write_program_element(w: &mut XmlWriter, program: &Program, root_attrs: &str) {
    w.open(&format!("p:Program{root_attrs}"));
    write_identification(w, &program.identification);
    if let Some(name) = &program.name {
        w.text_element("p:Name", name);
    }
    if let Some(description) = &program.description {
        w.text_element("p:Description", description);
    }
    write_memory(w, &program.memory);
    for register in &program.registers {
        write_register(w, register, "");
    }
    for action in &program.actions {
        match action {
            ProgramAction::Execute(execute) => write_execute(w, execute),
            ProgramAction::Measure(measure) => {
                w.open("p:Measure");
                write_register(w, &measure.register, "");
                w.close("p:Measure");
            }
        }
    }
    w.close("p:Program");
}

// ---------------------------------------------------------------------------
// Libraries and documents
// ---------------------------------------------------------------------------

fn gate_ns() -> String {
    format!(
        "{}{}",
        attr("xmlns:g", NS_GATE),
        attr("xmlns:r", NS_REUSABLE)
    )
}

fn circuit_ns() -> String {
    format!("{}{}", attr("xmlns:c", NS_CIRCUIT), gate_ns())
}

fn program_ns() -> String {
    format!("{}{}", attr("xmlns:p", NS_PROGRAM), circuit_ns())
}

fn xsi_ns() -> String {
    attr("xmlns:xsi", NS_XSI)
}

fn write_gate_library_element(w: &mut XmlWriter, library: &GateLibrary, root_attrs: &str) {
    w.open(&format!("g:GateLibrary{root_attrs}"));
    if let Some(identification) = &library.identification {
        write_identification(w, identification);
    }
    for gate in &library.gates {
        write_gate(w, gate, "");
    }
    w.close("g:GateLibrary");
}

fn write_circuit_library_element(w: &mut XmlWriter, library: &CircuitLibrary, root_attrs: &str) {
    w.open(&format!("c:CircuitLibrary{root_attrs}"));
    if let Some(identification) = &library.identification {
        write_identification(w, identification);
    }
    for circuit in &library.circuits {
        write_circuit(w, circuit, "");
    }
    w.close("c:CircuitLibrary");
}

fn write_program_library_element(w: &mut XmlWriter, library: &ProgramLibrary, root_attrs: &str) {
    w.open(&format!("p:ProgramLibrary{root_attrs}"));
    if let Some(identification) = &library.identification {
        write_identification(w, identification);
    }
    for program in &library.programs {
        write_program_element(w, program, "");
    }
    w.close("p:ProgramLibrary");
}

/// Serializes a gate library as a standalone document.
pub fn write_gate_library(library: &GateLibrary) -> String {
    let mut w = XmlWriter::new();
    write_gate_library_element(&mut w, library, &format!("{}{}", gate_ns(), xsi_ns()));
    w.out
}

/// Serializes a circuit library as a standalone document.
pub fn write_circuit_library(library: &CircuitLibrary) -> String {
    let mut w = XmlWriter::new();
    write_circuit_library_element(&mut w, library, &format!("{}{}", circuit_ns(), xsi_ns()));
    w.out
}

/// Serializes a program library as a standalone document.
pub fn write_program_library(library: &ProgramLibrary) -> String {
    let mut w = XmlWriter::new();
    write_program_library_element(&mut w, library, &format!("{}{}", program_ns(), xsi_ns()));
    w.out
}

/// Serializes a single program as a standalone document.
pub fn write_program(program: &Program) -> String {
    let mut w = XmlWriter::new();
    write_program_element(&mut w, program, &format!("{}{}", program_ns(), xsi_ns()));
    w.out
}

/// Serializes an instance bundling several libraries.
pub fn write_instance(instance: &Instance) -> String {
    let mut w = XmlWriter::new();
    let root_attrs = format!(
        "{}{}{}",
        attr("xmlns:i", NS_INSTANCE),
        program_ns(),
        xsi_ns()
    );
    w.open(&format!("i:Instance{root_attrs}"));
    if let Some(identification) = &instance.identification {
        write_identification(&mut w, identification);
    }
    for library in &instance.gate_libraries {
        write_gate_library_element(&mut w, library, "");
    }
    for library in &instance.circuit_libraries {
        write_circuit_library_element(&mut w, library, "");
    }
    for library in &instance.program_libraries {
        write_program_library_element(&mut w, library, "");
    }
    w.close("i:Instance");
    w.out
}

/// Serializes any document in canonical form.
pub fn write_document(document: &QisDocument) -> String {
    match document {
        QisDocument::Instance(instance) => write_instance(instance),
        QisDocument::Gates(library) => write_gate_library(library),
        QisDocument::Circuits(library) => write_circuit_library(library),
        QisDocument::Programs(library) => write_program_library(library),
    }
}

/// Serializes a standalone model fragment as its own single-root document.
pub fn write_fragment(fragment: &Fragment) -> String {
    let mut w = XmlWriter::new();
    match fragment {
        Fragment::Gate(gate) => {
            write_gate(&mut w, gate, &format!("{}{}", gate_ns(), xsi_ns()));
        }
        Fragment::Circuit(circuit) => {
            write_circuit(&mut w, circuit, &format!("{}{}", circuit_ns(), xsi_ns()));
        }
        Fragment::Program(program) => {
            write_program_element(&mut w, program, &format!("{}{}", program_ns(), xsi_ns()));
        }
        Fragment::Transformation(transformation) => {
            write_transformation(&mut w, transformation, &gate_ns());
        }
        Fragment::Register(register) => {
            let ns = format!(
                "{}{}",
                attr("xmlns:p", NS_PROGRAM),
                attr("xmlns:r", NS_REUSABLE)
            );
            write_register(&mut w, register, &ns);
        }
    }
    w.out
}
