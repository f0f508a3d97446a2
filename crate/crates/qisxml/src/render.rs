//! SVG circuit/gate diagrams and HTML reports (gate catalog, validation).
//!
//! All geometry is fixed by [`Layout`] so output is deterministic and golden-
//! testable. Emitted SVG uses a small element subset (`line`, `rect`,
//! `circle`, `text`, `g`) and tags drawing roles with `class` attributes so
//! tests and stylesheets can address them.

use crate::model::{Circuit, Gate, Map, MapSource, Operation, OperationTarget, TargetGlyph};
use crate::validate::{report_text, Finding, Severity};
use crate::xml::{DocumentSet, ResolveError};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Fixed drawing geometry, in SVG user units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    /// Vertical distance between adjacent wires.
    pub wire_spacing: f64,
    /// Horizontal width of one step column.
    pub column_width: f64,
    /// Side length of a gate box glyph.
    pub gate_box: f64,
    /// Outer margin on every side.
    pub margin: f64,
}

impl Default for Layout {
    fn default() -> Self {
        Layout {
            wire_spacing: 40.0,
            column_width: 60.0,
            gate_box: 32.0,
            margin: 20.0,
        }
    }
}

/// Width reserved for wire labels on a side that has any.
const LABEL_GUTTER: f64 = 100.0;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RenderError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Formats a coordinate: integral values print without a fraction.
fn num(value: f64) -> String {
    if value.fract() == 0.0 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

struct Svg {
    lines: Vec<String>,
}

impl Svg {
    fn open(width: f64, height: f64, title: &str) -> Self {
        let lines = vec![
            r#"<?xml version="1.0" encoding="UTF-8"?>"#.to_string(),
            format!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
                w = num(width),
                h = num(height)
            ),
            format!("\t<title>{}</title>", escape(title)),
        ];
        Svg { lines }
    }

    fn line(&mut self, text: String) {
        self.lines.push(text);
    }

    fn finish(mut self) -> String {
        self.lines.push("</svg>".to_string());
        self.lines.join("\n") + "\n"
    }
}

/// What one operation draws: resolved just far enough for geometry.
struct GlyphPlan {
    /// Wires carrying control dots.
    control_wires: Vec<u32>,
    /// Wires carrying the target glyph.
    target_wires: Vec<u32>,
    glyph: TargetGlyph,
    label: String,
    /// Fixed-value inputs, in map order.
    fixed: Vec<u8>,
    reverse: bool,
}

fn plan_operation(operation: &Operation, set: &DocumentSet) -> Result<GlyphPlan, RenderError> {
    let mut fixed = Vec::new();
    let mut wires_by_input: HashMap<u32, u32> = HashMap::new();
    for map in &operation.maps {
        match map.source {
            MapSource::Qubit(qubit) => {
                wires_by_input.insert(map.input, qubit);
            }
            MapSource::Fixed(bit) => fixed.push(bit),
        }
    }
    let ordered_wires = |inputs: &mut dyn Iterator<Item = u32>| -> Vec<u32> {
        let mut wires: Vec<u32> = inputs.filter_map(|i| wires_by_input.get(&i).copied()).collect();
        wires.sort_unstable();
        wires
    };
    let plan = match &operation.target {
        OperationTarget::CircuitRef(reference) => {
            set.resolve_circuit(reference)?;
            GlyphPlan {
                control_wires: vec![],
                target_wires: ordered_wires(&mut wires_by_input.keys().copied()),
                glyph: TargetGlyph::Box,
                label: reference.id.clone(),
                fixed,
                reverse: operation.reverse,
            }
        }
        target => {
            let gate: &Gate = match target {
                OperationTarget::Gate(inline) => inline,
                OperationTarget::GateRef(reference) => set.resolve_gate(reference)?,
                OperationTarget::CircuitRef(_) => unreachable!(),
            };
            match &gate.render_hint {
                Some(hint) => {
                    let controls =
                        ordered_wires(&mut hint.control_inputs.iter().copied());
                    let targets = ordered_wires(
                        &mut (1..=gate.size()).filter(|i| !hint.control_inputs.contains(i)),
                    );
                    GlyphPlan {
                        control_wires: controls,
                        target_wires: targets,
                        glyph: hint.target_glyph,
                        label: hint
                            .label
                            .clone()
                            .unwrap_or_else(|| gate.short_label().to_string()),
                        fixed,
                        reverse: operation.reverse,
                    }
                }
                None => GlyphPlan {
                    control_wires: vec![],
                    target_wires: ordered_wires(&mut wires_by_input.keys().copied()),
                    glyph: TargetGlyph::Box,
                    label: gate.short_label().to_string(),
                    fixed,
                    reverse: operation.reverse,
                },
            }
        }
    };
    Ok(plan)
}

/// Renders a circuit as a standalone SVG: one labeled wire per qubit, one
/// column per step, operations drawn from their gates' render hints. Nested
/// circuit references draw as one labeled box without recursing into their
/// contents.
pub fn render_circuit_svg(circuit: &Circuit, set: &DocumentSet) -> Result<String, RenderError> {
    let layout = Layout::default();
    let n = circuit.size.max(1);
    let steps = circuit.steps.len();
    let left_gutter = if circuit.inputs.is_empty() { 0.0 } else { LABEL_GUTTER };
    let right_gutter = if circuit.outputs.is_empty() { 0.0 } else { LABEL_GUTTER };
    let body = layout.column_width * steps.max(1) as f64;
    let x_start = layout.margin + left_gutter;
    let x_end = x_start + body;
    let width = x_end + right_gutter + layout.margin;
    let height = layout.margin * 2.0 + layout.wire_spacing * n as f64;
    let wire_y = |qubit: u32| layout.margin + layout.wire_spacing * (qubit as f64 - 0.5);

    let title = match circuit.id() {
        Some(id) => format!("Circuit {id}"),
        None => "Circuit".to_string(),
    };
    let mut svg = Svg::open(width, height, &title);

    for qubit in 1..=circuit.size {
        let y = wire_y(qubit);
        svg.line(format!(
            "\t<line class=\"wire\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            num(x_start),
            num(y),
            num(x_end),
            num(y)
        ));
    }
    for label in &circuit.inputs {
        svg.line(format!(
            "\t<text class=\"input-label\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
            num(x_start - 6.0),
            num(wire_y(label.qubit) + 4.0),
            escape(&label.name)
        ));
    }
    for label in &circuit.outputs {
        svg.line(format!(
            "\t<text class=\"output-label\" x=\"{}\" y=\"{}\">{}</text>",
            num(x_end + 6.0),
            num(wire_y(label.qubit) + 4.0),
            escape(&label.name)
        ));
    }

    for (step_index, step) in circuit.steps.iter().enumerate() {
        let x_center = x_start + layout.column_width * (step_index as f64 + 0.5);
        for operation in &step.operations {
            let plan = plan_operation(operation, set)?;
            draw_operation(&mut svg, &layout, &plan, x_center, step_index + 1, &wire_y);
        }
    }
    Ok(svg.finish())
}

/// Renders one gate as its single-column representation over `size` wires,
/// with the gate's full name as a caption underneath.
pub fn render_gate_svg(gate: &Gate) -> String {
    let layout = Layout::default();
    let n = gate.size();
    let caption_strip = 28.0;
    let width = layout.margin * 2.0 + layout.column_width;
    let height = layout.margin * 2.0 + layout.wire_spacing * n as f64 + caption_strip;
    let wire_y = |qubit: u32| layout.margin + layout.wire_spacing * (qubit as f64 - 0.5);
    let x_start = layout.margin;
    let x_end = x_start + layout.column_width;
    let x_center = x_start + layout.column_width / 2.0;

    let mut svg = Svg::open(width, height, &format!("Gate {}", gate.identification.id));
    for qubit in 1..=n {
        let y = wire_y(qubit);
        svg.line(format!(
            "\t<line class=\"wire\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            num(x_start),
            num(y),
            num(x_end),
            num(y)
        ));
    }
    let operation = Operation {
        maps: (1..=n).map(|i| Map::qubit(i, i)).collect(),
        target: OperationTarget::Gate(Box::new(gate.clone())),
        reverse: false,
        bindings: vec![],
    };
    let set = DocumentSet::new();
    let plan = plan_operation(&operation, &set).expect("inline gates always plan");
    draw_operation(&mut svg, &layout, &plan, x_center, 1, &wire_y);
    svg.line(format!(
        "\t<text class=\"caption\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        num(width / 2.0),
        num(height - layout.margin / 2.0),
        escape(&gate.name)
    ));
    svg.finish()
}

fn draw_operation(
    svg: &mut Svg,
    layout: &Layout,
    plan: &GlyphPlan,
    x_center: f64,
    column: usize,
    wire_y: &dyn Fn(u32) -> f64,
) {
    let half_box = layout.gate_box / 2.0;
    let mut body = String::new();
    let all_wires: Vec<u32> = plan
        .control_wires
        .iter()
        .chain(plan.target_wires.iter())
        .copied()
        .collect();
    let y_top_wire = all_wires.iter().copied().min().map(wire_y);

    // Vertical connector across everything the operation touches.
    if let (Some(&min), Some(&max)) = (all_wires.iter().min(), all_wires.iter().max()) {
        if min != max && (!plan.control_wires.is_empty() || plan.glyph != TargetGlyph::Box) {
            let _ = writeln!(
                body,
                "\t\t<line class=\"connector\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
                num(wire_y(min)),
                num(wire_y(max)),
                x = num(x_center)
            );
        }
    }
    for &wire in &plan.control_wires {
        let _ = writeln!(
            body,
            "\t\t<circle class=\"control\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
            num(x_center),
            num(wire_y(wire))
        );
    }
    match plan.glyph {
        TargetGlyph::Oplus => {
            for &wire in &plan.target_wires {
                let y = wire_y(wire);
                let _ = writeln!(
                    body,
                    "\t\t<g class=\"target-oplus\">\n\t\t\t<circle cx=\"{x}\" cy=\"{y}\" r=\"10\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t\t<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t\t<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t</g>",
                    x = num(x_center),
                    y = num(y),
                    y0 = num(y - 10.0),
                    y1 = num(y + 10.0),
                    x0 = num(x_center - 10.0),
                    x1 = num(x_center + 10.0)
                );
            }
        }
        TargetGlyph::SwapCross => {
            for &wire in &plan.target_wires {
                let y = wire_y(wire);
                let _ = writeln!(
                    body,
                    "\t\t<g class=\"target-swap\">\n\t\t\t<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t\t<line x1=\"{x0}\" y1=\"{y1}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t</g>",
                    x0 = num(x_center - 8.0),
                    x1 = num(x_center + 8.0),
                    y0 = num(y - 8.0),
                    y1 = num(y + 8.0)
                );
            }
        }
        TargetGlyph::Dot => {
            for &wire in &plan.target_wires {
                let _ = writeln!(
                    body,
                    "\t\t<circle class=\"target-dot\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
                    num(x_center),
                    num(wire_y(wire))
                );
            }
        }
        TargetGlyph::Box => {
            if let (Some(&min), Some(&max)) =
                (plan.target_wires.iter().min(), plan.target_wires.iter().max())
            {
                let y_top = wire_y(min) - half_box;
                let box_height = wire_y(max) - wire_y(min) + layout.gate_box;
                let _ = writeln!(
                    body,
                    "\t\t<rect class=\"gate-box\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>",
                    num(x_center - half_box),
                    num(y_top),
                    num(layout.gate_box),
                    num(box_height)
                );
                let _ = writeln!(
                    body,
                    "\t\t<text class=\"gate-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                    num(x_center),
                    num((wire_y(min) + wire_y(max)) / 2.0 + 4.0),
                    escape(&plan.label)
                );
            }
        }
    }
    // Fixed-value inputs: short stub segments stacked above the glyph.
    if let Some(y_top) = y_top_wire {
        for (index, bit) in plan.fixed.iter().enumerate() {
            let y = y_top - half_box - 8.0 - 14.0 * index as f64;
            let _ = writeln!(
                body,
                "\t\t<g class=\"stub\">\n\t\t\t<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"1\"/>\n\t\t\t<text x=\"{xt}\" y=\"{yt}\">{bit}</text>\n\t\t</g>",
                x0 = num(x_center - 10.0),
                x1 = num(x_center + 10.0),
                y = num(y),
                xt = num(x_center + 14.0),
                yt = num(y + 4.0)
            );
        }
        if plan.reverse {
            let _ = writeln!(
                body,
                "\t\t<text class=\"dagger\" x=\"{}\" y=\"{}\">\u{2020}</text>",
                num(x_center + half_box + 2.0),
                num(y_top - half_box + 6.0)
            );
        }
    }
    svg.line(format!(
        "\t<g class=\"operation\" data-column=\"{column}\">\n{}\t</g>",
        body
    ));
}

// ---------------------------------------------------------------------------
// HTML reports
// ---------------------------------------------------------------------------

const HTML_STYLE: &str = "\
body { font-family: sans-serif; margin: 2em; }
section { margin-bottom: 2em; }
table.matrix { border-collapse: collapse; }
table.matrix td { border: 1px solid #999; padding: 4px 10px; text-align: center; }
p.multiplier { font-style: italic; }
p.error { color: #b00020; font-weight: bold; }
p.warning { color: #8a6d00; }
p.step { font-weight: bold; }
";

fn html_page(title: &str, body: &str) -> String {
    format!(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n<title>{}</title>\n<style>\n{}</style>\n</head>\n<body>\n{}</body>\n</html>\n",
        escape(title),
        HTML_STYLE,
        body
    )
}

/// The display string for one matrix cell: the html-syntax symbolic form
/// verbatim when present, any other symbolic form next, the numeric value
/// otherwise.
fn cell_display(value: &crate::model::ComplexValue) -> String {
    if let Some(form) = value
        .symbolic
        .iter()
        .find(|form| form.syntax.eq_ignore_ascii_case("html"))
    {
        return form.expression.clone();
    }
    if let Some(form) = value.symbolic.first() {
        return form.expression.clone();
    }
    let re = value.re.unwrap_or(0.0);
    let im = value.im.unwrap_or(0.0);
    format_complex(re, im)
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        return format!("{re}");
    }
    let imaginary = if im == 1.0 {
        "i".to_string()
    } else if im == -1.0 {
        "-i".to_string()
    } else {
        format!("{im}i")
    };
    if re == 0.0 {
        return imaginary;
    }
    if imaginary.starts_with('-') {
        format!("{re}{imaginary}")
    } else {
        format!("{re}+{imaginary}")
    }
}

/// One-line summary of an operation for circuit listings: label plus the
/// input-ordered qubits (fixed inputs shown as `*bit`).
fn operation_summary(operation: &Operation, set: &DocumentSet) -> String {
    let label = match &operation.target {
        OperationTarget::Gate(gate) => gate.short_label().to_string(),
        OperationTarget::GateRef(reference) => match set.resolve_gate(reference) {
            Ok(gate) => gate.short_label().to_string(),
            Err(_) => reference.id.clone(),
        },
        OperationTarget::CircuitRef(reference) => reference.id.clone(),
    };
    let mut maps: Vec<&Map> = operation.maps.iter().collect();
    maps.sort_by_key(|map| map.input);
    let args: Vec<String> = maps
        .iter()
        .map(|map| match map.source {
            MapSource::Qubit(q) => q.to_string(),
            MapSource::Fixed(bit) => format!("*{bit}"),
        })
        .collect();
    let suffix = if operation.reverse { "\u{2020}" } else { "" };
    format!("{label}{suffix} [{}]", args.join(","))
}

/// Renders the gate catalog: one section per gate with its metadata and full
/// 2^n x 2^n matrix (symbolic entries preferred), then one section per
/// circuit with step/operation summaries.
pub fn report_html(set: &DocumentSet) -> String {
    let mut body = String::new();
    body.push_str("<h1>Gate catalog</h1>\n");
    for gate in set.gates() {
        let _ = writeln!(
            body,
            "<section class=\"gate\" id=\"gate-{}\">",
            escape(&gate.identification.id)
        );
        let _ = writeln!(
            body,
            "<h2>{} ({})</h2>",
            escape(&gate.name),
            escape(gate.short_label())
        );
        if let Some(description) = &gate.description {
            let _ = writeln!(body, "<p class=\"description\">{}</p>", escape(description));
        }
        if !gate.parameters.is_empty() {
            let names: Vec<String> = gate
                .parameters
                .iter()
                .map(|p| escape(&p.name))
                .collect();
            let _ = writeln!(body, "<p class=\"parameters\">Parameters: {}</p>", names.join(", "));
        }
        if let Some(multiplier) = &gate.transformation.multiplier {
            let _ = writeln!(
                body,
                "<p class=\"multiplier\">Common multiplier: {}</p>",
                escape(&cell_display(multiplier))
            );
        }
        let dimension = gate.transformation.dimension();
        let mut cells: HashMap<(u32, u32), &crate::model::ComplexValue> = HashMap::new();
        for cell in &gate.transformation.cells {
            cells.insert((cell.row, cell.col), &cell.value);
        }
        body.push_str("<table class=\"matrix\">\n");
        for row in 1..=dimension as u32 {
            body.push_str("<tr>");
            for col in 1..=dimension as u32 {
                let text = match cells.get(&(row, col)) {
                    Some(value) => escape(&cell_display(value)),
                    None => "0".to_string(),
                };
                let _ = write!(body, "<td>{text}</td>");
            }
            body.push_str("</tr>\n");
        }
        body.push_str("</table>\n</section>\n");
    }
    let circuits: Vec<&Circuit> = set.circuits().collect();
    if !circuits.is_empty() {
        body.push_str("<h1>Circuits</h1>\n");
        for circuit in circuits {
            let heading = match circuit.id() {
                Some(id) => format!("Circuit {id}"),
                None => "Circuit".to_string(),
            };
            let _ = writeln!(body, "<section class=\"circuit\">\n<h2>{}</h2>", escape(&heading));
            if let Some(name) = &circuit.name {
                let _ = writeln!(body, "<p class=\"name\">{}</p>", escape(name));
            }
            let _ = writeln!(
                body,
                "<p>Size {}, {} step(s)</p>",
                circuit.size,
                circuit.steps.len()
            );
            body.push_str("<ol>\n");
            for step in &circuit.steps {
                let summaries: Vec<String> = step
                    .operations
                    .iter()
                    .map(|operation| operation_summary(operation, set))
                    .collect();
                let _ = writeln!(body, "<li>{}</li>", escape(&summaries.join("; ")));
            }
            body.push_str("</ol>\n</section>\n");
        }
    }
    html_page("Gate catalog", &body)
}

fn plural(count: usize, word: &str) -> String {
    if count == 1 {
        format!("{count} {word}")
    } else {
        format!("{count} {word}s")
    }
}

/// Renders findings as an HTML report mirroring the text layout, with errors
/// and warnings visually distinct and a leading summary count line.
pub fn report_validation_html(set: &DocumentSet, findings: &[Finding]) -> String {
    let errors = findings.iter().filter(|f| f.severity == Severity::Error).count();
    let warnings = findings.iter().filter(|f| f.severity == Severity::Warning).count();
    let mut body = String::new();
    body.push_str("<h1>Validation report</h1>\n");
    let _ = writeln!(
        body,
        "<p class=\"summary\">{}, {}</p>",
        plural(errors, "error"),
        plural(warnings, "warning")
    );
    let text = report_text(set, findings);
    for block in text.split("\n\n") {
        let block = block.trim_end();
        if block.is_empty() {
            continue;
        }
        body.push_str("<section>\n");
        for (index, line) in block.lines().enumerate() {
            let class = if index == 0 {
                None
            } else if line.starts_with("ERROR:") {
                Some("error")
            } else if line.starts_with("Warning:") {
                Some("warning")
            } else if line.starts_with("Step ") || line.starts_with("Action ") {
                Some("step")
            } else {
                Some("detail")
            };
            match class {
                None => {
                    let _ = writeln!(body, "<h2>{}</h2>", escape(line));
                }
                Some(class) => {
                    let _ = writeln!(body, "<p class=\"{class}\">{}</p>", escape(line));
                }
            }
        }
        body.push_str("</section>\n");
    }
    html_page("Validation report", &body)
}
