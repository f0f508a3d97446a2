//! Reading and writing QIS-XML documents, and resolving references across a
//! set of loaded documents.
//!
//! Two document styles are accepted on input:
//!
//! * the modular, namespaced style with library roots (`g:GateLibrary`,
//!   `c:CircuitLibrary`, `p:ProgramLibrary`, `i:Instance`, or a bare
//!   `p:Program`), and
//! * the earlier prototype style: unnamespaced `Gate`, `Circuit` or `QIS`
//!   roots with attribute-form identifications (`<Identification id="H"/>`)
//!   and gate references wrapped in a `Gate` element
//!   (`<Gate><GateRef id="H"/></Gate>`).
//!
//! Both parse into the same document model. Output is always the modular
//! namespaced style.

mod read;
mod write;

pub use read::{parse_document, parse_fragment, Fragment, ParseError};
pub use write::{
    write_circuit_library, write_document, write_fragment, write_gate_library, write_instance,
    write_program, write_program_library,
};

use crate::model::{
    Circuit, CircuitLibrary, Gate, GateLibrary, Instance, Program, ProgramLibrary, Reference,
};
use std::path::Path;
use thiserror::Error;

/// Namespace URI of the instance module.
pub const NS_INSTANCE: &str = "qis:instance:1_0";
/// Namespace URI of the gate module.
pub const NS_GATE: &str = "qis:gate:1_0";
/// Namespace URI of the circuit module.
pub const NS_CIRCUIT: &str = "qis:circuit:1_0";
/// Namespace URI of the program module.
pub const NS_PROGRAM: &str = "qis:program:1_0";
/// Namespace URI of the reusable-components module.
pub const NS_REUSABLE: &str = "qis:reusable:1_0";

/// True when `namespace` is one of the QIS module namespaces (or absent, for
/// prototype-style documents).
pub(crate) fn is_qis_namespace(namespace: Option<&str>) -> bool {
    matches!(
        namespace,
        None | Some(NS_INSTANCE) | Some(NS_GATE) | Some(NS_CIRCUIT) | Some(NS_PROGRAM)
            | Some(NS_REUSABLE)
    )
}

/// A parsed document, preserving which root element it came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Instance(Instance),
    Gates(GateLibrary),
    Circuits(CircuitLibrary),
    Programs(ProgramLibrary),
}

impl Document {
    /// Normalizes any document into an [`Instance`] (library documents become
    /// an instance holding that one library).
    pub fn into_instance(self) -> Instance {
        match self {
            Document::Instance(instance) => instance,
            Document::Gates(library) => Instance {
                gate_libraries: vec![library],
                ..Default::default()
            },
            Document::Circuits(library) => Instance {
                circuit_libraries: vec![library],
                ..Default::default()
            },
            Document::Programs(library) => Instance {
                program_libraries: vec![library],
                ..Default::default()
            },
        }
    }
}

/// Errors loading documents into a [`DocumentSet`].
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("duplicate {kind} identification `{id}` across the document set")]
    DuplicateId { kind: &'static str, id: String },
}

/// Errors resolving a reference against a [`DocumentSet`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ResolveError {
    #[error("no {kind} matches reference `{id}`")]
    NotFound { kind: &'static str, id: String },
    #[error("reference `{id}` is ambiguous: {count} {kind}s match")]
    Ambiguous {
        kind: &'static str,
        id: String,
        count: usize,
    },
}

/// One loaded document with its source location (used to narrow references
/// carrying a `URI` and to label validation reports).
#[derive(Debug, Clone, PartialEq)]
pub struct SourceDocument {
    pub uri: Option<String>,
    pub instance: Instance,
}

/// A collection of loaded documents that references resolve against.
#[derive(Debug, Clone, Default)]
pub struct DocumentSet {
    documents: Vec<SourceDocument>,
}

impl DocumentSet {
    pub fn new() -> Self {
        DocumentSet::default()
    }

    /// A set preloaded with the built-in gate and circuit libraries.
    pub fn with_stdlib() -> Self {
        let mut set = DocumentSet::new();
        set.add_document(
            Document::Gates(crate::stdlib::builtin_gates().clone()),
            Some("builtin:gates"),
        )
        .expect("built-in gate library ids are unique");
        set.add_document(
            Document::Circuits(crate::stdlib::builtin_circuits().clone()),
            Some("builtin:circuits"),
        )
        .expect("built-in circuit library ids are unique");
        set
    }

    /// The loaded documents, in load order.
    pub fn documents(&self) -> &[SourceDocument] {
        &self.documents
    }

    /// Adds a parsed document. Fails when an entity identification (id,
    /// agency, version) of the same kind is already present.
    pub fn add_document(&mut self, document: Document, uri: Option<&str>) -> Result<(), LoadError> {
        let instance = document.into_instance();
        self.check_duplicates(&instance)?;
        self.documents.push(SourceDocument {
            uri: uri.map(str::to_string),
            instance,
        });
        Ok(())
    }

    /// Reads and parses one file into the set.
    pub fn add_file(&mut self, path: impl AsRef<Path>) -> Result<(), LoadError> {
        let path = path.as_ref();
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: display.clone(),
            source,
        })?;
        let document = parse_document(&text).map_err(|source| LoadError::Parse {
            path: display.clone(),
            source,
        })?;
        self.add_document(document, Some(&display))
    }

    fn check_duplicates(&self, incoming: &Instance) -> Result<(), LoadError> {
        let dup = |kind: &'static str, id: &str| LoadError::DuplicateId {
            kind,
            id: id.to_string(),
        };
        for gate in gates_of(incoming) {
            if self
                .gates()
                .chain(gates_of(incoming).take_while(|g| !std::ptr::eq(*g, gate)))
                .any(|g| g.identification == gate.identification)
            {
                return Err(dup("gate", &gate.identification.id));
            }
        }
        for circuit in circuits_of(incoming) {
            let Some(identification) = &circuit.identification else {
                continue;
            };
            if self
                .circuits()
                .chain(circuits_of(incoming).take_while(|c| !std::ptr::eq(*c, circuit)))
                .any(|c| c.identification.as_ref() == Some(identification))
            {
                return Err(dup("circuit", &identification.id));
            }
        }
        for program in programs_of(incoming) {
            if self
                .programs()
                .chain(programs_of(incoming).take_while(|p| !std::ptr::eq(*p, program)))
                .any(|p| p.identification == program.identification)
            {
                return Err(dup("program", &program.identification.id));
            }
        }
        Ok(())
    }

    /// All gate libraries in load/document order.
    pub fn gate_libraries(&self) -> impl Iterator<Item = (&SourceDocument, &GateLibrary)> {
        self.documents
            .iter()
            .flat_map(|doc| doc.instance.gate_libraries.iter().map(move |lib| (doc, lib)))
    }

    /// All circuit libraries in load/document order.
    pub fn circuit_libraries(&self) -> impl Iterator<Item = (&SourceDocument, &CircuitLibrary)> {
        self.documents.iter().flat_map(|doc| {
            doc.instance
                .circuit_libraries
                .iter()
                .map(move |lib| (doc, lib))
        })
    }

    /// All program libraries in load/document order.
    pub fn program_libraries(&self) -> impl Iterator<Item = (&SourceDocument, &ProgramLibrary)> {
        self.documents.iter().flat_map(|doc| {
            doc.instance
                .program_libraries
                .iter()
                .map(move |lib| (doc, lib))
        })
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.gate_libraries().flat_map(|(_, lib)| lib.gates.iter())
    }

    pub fn circuits(&self) -> impl Iterator<Item = &Circuit> {
        self.circuit_libraries()
            .flat_map(|(_, lib)| lib.circuits.iter())
    }

    pub fn programs(&self) -> impl Iterator<Item = &Program> {
        self.program_libraries()
            .flat_map(|(_, lib)| lib.programs.iter())
    }

    /// Resolves a gate reference.
    pub fn resolve_gate(&self, reference: &Reference) -> Result<&Gate, ResolveError> {
        let candidates: Vec<&Gate> = self
            .gate_libraries()
            .filter(|(doc, lib)| reference_scopes_library(reference, doc, lib.identification.as_ref()))
            .flat_map(|(_, lib)| lib.gates.iter())
            .filter(|gate| identification_matches(reference, &gate.identification))
            .collect();
        finish_resolution("gate", reference, candidates)
    }

    /// Resolves a circuit reference. A reference whose id matches no circuit
    /// directly may still adopt an *anonymous* circuit: either its id matches
    /// the identification of the circuit library holding it (generated
    /// libraries often identify the library, not the circuit inside it), or it
    /// matches the file-name stem of the document the circuit was loaded from
    /// (generated circuit files are commonly referenced by the name they were
    /// saved under — `adder2` for `adder2.xml`).
    pub fn resolve_circuit(&self, reference: &Reference) -> Result<&Circuit, ResolveError> {
        let direct: Vec<&Circuit> = self
            .circuit_libraries()
            .filter(|(doc, lib)| reference_scopes_library(reference, doc, lib.identification.as_ref()))
            .flat_map(|(_, lib)| lib.circuits.iter())
            .filter(|circuit| {
                circuit
                    .identification
                    .as_ref()
                    .is_some_and(|ident| identification_matches(reference, ident))
            })
            .collect();
        if !direct.is_empty() {
            return finish_resolution("circuit", reference, direct);
        }
        let adopted: Vec<&Circuit> = self
            .circuit_libraries()
            .filter(|(doc, _)| match &reference.uri {
                Some(uri) => doc.uri.as_deref() == Some(uri.as_str()),
                None => true,
            })
            .filter(|(doc, lib)| {
                lib.identification
                    .as_ref()
                    .is_some_and(|ident| identification_matches(reference, ident))
                    || document_stem_matches(reference, doc)
            })
            .flat_map(|(_, lib)| lib.circuits.iter())
            .filter(|circuit| circuit.identification.is_none())
            .collect();
        finish_resolution("circuit", reference, adopted)
    }

    /// Resolves a program reference.
    pub fn resolve_program(&self, reference: &Reference) -> Result<&Program, ResolveError> {
        let candidates: Vec<&Program> = self
            .program_libraries()
            .filter(|(doc, lib)| reference_scopes_library(reference, doc, lib.identification.as_ref()))
            .flat_map(|(_, lib)| lib.programs.iter())
            .filter(|program| identification_matches(reference, &program.identification))
            .collect();
        finish_resolution("program", reference, candidates)
    }

    /// Finds a program by bare id (convenience for command-line entry points).
    pub fn find_program(&self, id: &str) -> Result<&Program, ResolveError> {
        self.resolve_program(&Reference::new(id))
    }
}

fn gates_of(instance: &Instance) -> impl Iterator<Item = &Gate> {
    instance.gate_libraries.iter().flat_map(|lib| lib.gates.iter())
}

fn circuits_of(instance: &Instance) -> impl Iterator<Item = &Circuit> {
    instance
        .circuit_libraries
        .iter()
        .flat_map(|lib| lib.circuits.iter())
}

fn programs_of(instance: &Instance) -> impl Iterator<Item = &Program> {
    instance
        .program_libraries
        .iter()
        .flat_map(|lib| lib.programs.iter())
}

/// Does an entity identification satisfy a reference? The id must match;
/// agency and version narrow the match only when the reference states them.
fn identification_matches(
    reference: &Reference,
    identification: &crate::model::Identification,
) -> bool {
    if identification.id != reference.id {
        return false;
    }
    if let Some(agency) = &reference.agency_id {
        if identification.agency.as_deref() != Some(agency.as_str()) {
            return false;
        }
    }
    if let Some(version) = &reference.version {
        if identification.version.as_deref() != Some(version.as_str()) {
            return false;
        }
    }
    true
}

/// True when a bare reference (no agency/version/library qualifiers) names the
/// document itself: its id equals the file-name stem of the document's URI.
fn document_stem_matches(reference: &Reference, document: &SourceDocument) -> bool {
    if reference.agency_id.is_some() || reference.version.is_some() || reference.library_id.is_some()
    {
        return false;
    }
    document
        .uri
        .as_deref()
        .and_then(|uri| Path::new(uri).file_stem())
        .and_then(|stem| stem.to_str())
        .is_some_and(|stem| stem == reference.id)
}

/// Library- and document-level narrowing (`LibraryID`, `URI`).
fn reference_scopes_library(
    reference: &Reference,
    document: &SourceDocument,
    library: Option<&crate::model::Identification>,
) -> bool {
    if let Some(library_id) = &reference.library_id {
        if library.map(|ident| ident.id.as_str()) != Some(library_id.as_str()) {
            return false;
        }
    }
    if let Some(uri) = &reference.uri {
        if document.uri.as_deref() != Some(uri.as_str()) {
            return false;
        }
    }
    true
}

fn finish_resolution<'a, T>(
    kind: &'static str,
    reference: &Reference,
    candidates: Vec<&'a T>,
) -> Result<&'a T, ResolveError> {
    match candidates.len() {
        0 => Err(ResolveError::NotFound {
            kind,
            id: reference.id.clone(),
        }),
        1 => Ok(candidates[0]),
        count => Err(ResolveError::Ambiguous {
            kind,
            id: reference.id.clone(),
            count,
        }),
    }
}

/// Loads `paths` into a fresh set, optionally preloading the built-in
/// libraries.
pub fn load_documents(
    paths: &[impl AsRef<Path>],
    include_stdlib: bool,
) -> Result<DocumentSet, LoadError> {
    let mut set = if include_stdlib {
        DocumentSet::with_stdlib()
    } else {
        DocumentSet::new()
    };
    for path in paths {
        set.add_file(path)?;
    }
    Ok(set)
}
