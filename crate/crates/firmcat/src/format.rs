//! A line-oriented text format for finite categories and their structure.
//!
//! A document declares objects and morphisms by name, lists the composition
//! table explicitly, and optionally carries monoidal, restriction, and
//! corestriction sections gated by flags on the `format` line. The parser
//! reports the first problem it finds with its line and column; the
//! serializer emits a canonical form (declarations sorted by name, one
//! statement per line) so that equal data produces byte-identical files.
//!
//! Composition entries are written `compose g f = h`, declaring that `g`
//! after `f` equals `h`: the same right-to-left order as the mathematical
//! notation, with `f` applying first.

use std::collections::{HashMap, HashSet};

use crate::fincat::{FinCategory, MorId, ObjId};
use crate::monoidal::MonoidalData;
use crate::restriction::{CorestrictionData, RestrictionData};
use crate::{CategoryData, Error};

/// The format version this module reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Problems found while reading a document. Parsing stops at the first one.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    /// A statement is malformed; line and column point at the offending
    /// token. Document-level problems (a flagged section that never
    /// appears) anchor to the `format` line.
    #[error("line {line}, column {col}: {message}")]
    Parse {
        /// 1-based line of the offending token.
        line: usize,
        /// 1-based column of the offending token.
        col: usize,
        /// What went wrong.
        message: String,
    },
    /// A statement refers to a name no earlier statement declared.
    #[error("line {line}: reference to undeclared name `{name}`")]
    DanglingReference {
        /// 1-based line of the reference.
        line: usize,
        /// The unknown name.
        name: String,
    },
    /// A name or keyed statement appears twice.
    #[error("line {line}: duplicate declaration of `{name}`")]
    DuplicateDeclaration {
        /// 1-based line of the second occurrence.
        line: usize,
        /// The repeated name or statement key.
        name: String,
    },
    /// A composable pair has no `compose` entry.
    #[error("no composition entry for the composable pair `{g}` after `{f}`")]
    IncompleteComposition {
        /// Name of the morphism applied second.
        g: String,
        /// Name of the morphism applied first.
        f: String,
    },
}

/// The `format` line: version plus which optional sections the document
/// carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DocumentHeader {
    /// Format version; currently always [`FORMAT_VERSION`].
    pub version: u32,
    /// Whether the document carries unit, tensor, and coherence statements.
    pub monoidal: bool,
    /// Whether the monoidal section includes `sigma` statements.
    pub braided: bool,
    /// Whether every morphism has a `restrict` statement.
    pub restriction: bool,
    /// Whether every morphism has a `corestrict` statement.
    pub corestriction: bool,
}

/// A named morphism declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl {
    /// The morphism's name.
    pub name: String,
    /// Name of the domain object.
    pub dom: String,
    /// Name of the codomain object.
    pub cod: String,
}

/// The monoidal statements of a document, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonoidalSection {
    /// Name of the unit object.
    pub unit: String,
    /// `tensor_obj a b = c` entries as `(a, b, c)`.
    pub tensor_obj: Vec<(String, String, String)>,
    /// `tensor_mor f g = h` entries as `(f, g, h)`.
    pub tensor_mor: Vec<(String, String, String)>,
    /// `lambda a = f` entries as `(a, f)`.
    pub lambda: Vec<(String, String)>,
    /// `rho a = f` entries as `(a, f)`.
    pub rho: Vec<(String, String)>,
    /// `alpha a b c = f` entries as `(a, b, c, f)`.
    pub alpha: Vec<(String, String, String, String)>,
    /// `sigma a b = f` entries as `(a, b, f)`; present iff braided.
    pub sigma: Option<Vec<(String, String, String)>>,
}

/// A parsed category document: named declarations plus optional structure
/// sections, exactly as flagged in the header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDocument {
    /// Version and section flags.
    pub header: DocumentHeader,
    /// Object names, in file order.
    pub objects: Vec<String>,
    /// Morphism declarations, in file order.
    pub morphisms: Vec<MorphismDecl>,
    /// `compose g f = h` entries as `(g, f, h)`, meaning `g` after `f`.
    pub compose: Vec<(String, String, String)>,
    /// The monoidal section, present iff the header flags it.
    pub monoidal: Option<MonoidalSection>,
    /// `restrict f = g` entries as `(f, g)`, present iff flagged.
    pub restriction: Option<Vec<(String, String)>>,
    /// `corestrict f = g` entries as `(f, g)`, present iff flagged.
    pub corestriction: Option<Vec<(String, String)>>,
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 0usize;
    let mut start: Option<(usize, usize)> = None;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch == '#' {
            if let Some((c0, b0)) = start.take() {
                out.push((c0, &line[b0..byte]));
            }
            return out;
        }
        if ch.is_whitespace() {
            if let Some((c0, b0)) = start.take() {
                out.push((c0, &line[b0..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c0, b0)) = start {
        out.push((c0, &line[b0..]));
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

struct Parser {
    header: Option<DocumentHeader>,
    format_line: usize,
    objects: Vec<String>,
    object_ix: HashMap<String, usize>,
    morphisms: Vec<MorphismDecl>,
    mor_ix: HashMap<String, usize>,
    compose: Vec<(String, String, String)>,
    compose_seen: HashSet<(usize, usize)>,
    unit: Option<String>,
    tensor_obj: Vec<(String, String, String)>,
    tensor_obj_seen: HashSet<(usize, usize)>,
    tensor_mor: Vec<(String, String, String)>,
    tensor_mor_seen: HashSet<(usize, usize)>,
    lambda: Vec<(String, String)>,
    lambda_seen: HashSet<usize>,
    rho: Vec<(String, String)>,
    rho_seen: HashSet<usize>,
    alpha: Vec<(String, String, String, String)>,
    alpha_seen: HashSet<(usize, usize, usize)>,
    sigma: Vec<(String, String, String)>,
    sigma_seen: HashSet<(usize, usize)>,
    restrict: Vec<(String, String)>,
    restrict_seen: HashSet<usize>,
    corestrict: Vec<(String, String)>,
    corestrict_seen: HashSet<usize>,
}

fn perr(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, col, message: message.into() }
}

impl Parser {
    fn new() -> Self {
        Parser {
            header: None,
            format_line: 1,
            objects: Vec::new(),
            object_ix: HashMap::new(),
            morphisms: Vec::new(),
            mor_ix: HashMap::new(),
            compose: Vec::new(),
            compose_seen: HashSet::new(),
            unit: None,
            tensor_obj: Vec::new(),
            tensor_obj_seen: HashSet::new(),
            tensor_mor: Vec::new(),
            tensor_mor_seen: HashSet::new(),
            lambda: Vec::new(),
            lambda_seen: HashSet::new(),
            rho: Vec::new(),
            rho_seen: HashSet::new(),
            alpha: Vec::new(),
            alpha_seen: HashSet::new(),
            sigma: Vec::new(),
            sigma_seen: HashSet::new(),
            restrict: Vec::new(),
            restrict_seen: HashSet::new(),
            corestrict: Vec::new(),
            corestrict_seen: HashSet::new(),
        }
    }

    fn object(&self, line: usize, tok: (usize, &str)) -> Result<usize, FormatError> {
        self.object_ix.get(tok.1).copied().ok_or_else(|| FormatError::DanglingReference {
            line,
            name: tok.1.to_string(),
        })
    }

    fn morphism(&self, line: usize, tok: (usize, &str)) -> Result<usize, FormatError> {
        self.mor_ix.get(tok.1).copied().ok_or_else(|| FormatError::DanglingReference {
            line,
            name: tok.1.to_string(),
        })
    }

    fn expect_shape(
        line: usize,
        toks: &[(usize, &str)],
        len: usize,
        literals: &[(usize, &str)],
        shape: &str,
    ) -> Result<(), FormatError> {
        if toks.len() != len {
            return Err(perr(line, toks[0].0, format!("expected `{shape}`")));
        }
        for &(ix, lit) in literals {
            if toks[ix].1 != lit {
                return Err(perr(line, toks[ix].0, format!("expected `{lit}` in `{shape}`")));
            }
        }
        Ok(())
    }

    fn format_statement(&mut self, line: usize, toks: &[(usize, &str)]) -> Result<(), FormatError> {
        if toks.len() < 2 {
            return Err(perr(line, toks[0].0, "expected `format <version> [flags]`"));
        }
        if toks[1].1.parse::<u32>() != Ok(FORMAT_VERSION) {
            return Err(perr(
                line,
                toks[1].0,
                format!("unsupported format version `{}`, expected {FORMAT_VERSION}", toks[1].1),
            ));
        }
        let mut header = DocumentHeader {
            version: FORMAT_VERSION,
            monoidal: false,
            braided: false,
            restriction: false,
            corestriction: false,
        };
        for &(col, flag) in &toks[2..] {
            let slot = match flag {
                "monoidal" => &mut header.monoidal,
                "braided" => &mut header.braided,
                "restriction" => &mut header.restriction,
                "corestriction" => &mut header.corestriction,
                other => {
                    return Err(perr(line, col, format!("unknown structure flag `{other}`")))
                }
            };
            if *slot {
                return Err(perr(line, col, format!("structure flag `{flag}` repeated")));
            }
            *slot = true;
        }
        if header.braided && !header.monoidal {
            return Err(perr(line, toks[0].0, "the braided flag requires the monoidal flag"));
        }
        self.header = Some(header);
        self.format_line = line;
        Ok(())
    }

    fn statement(&mut self, line: usize, toks: &[(usize, &str)]) -> Result<(), FormatError> {
        let header = self.header.expect("format statement parsed first");
        let keyword = toks[0];
        let need_flag = |on: bool, flag: &str| -> Result<(), FormatError> {
            if on {
                Ok(())
            } else {
                Err(perr(
                    line,
                    keyword.0,
                    format!("statement `{}` requires the {flag} flag", keyword.1),
                ))
            }
        };
        match keyword.1 {
            "format" => Err(perr(line, keyword.0, "format declared twice")),
            "object" => {
                Self::expect_shape(line, toks, 2, &[], "object <name>")?;
                let name = toks[1].1;
                if !valid_name(name) {
                    return Err(perr(line, toks[1].0, format!("invalid name `{name}`")));
                }
                if self.object_ix.contains_key(name) {
                    return Err(FormatError::DuplicateDeclaration { line, name: name.into() });
                }
                self.object_ix.insert(name.to_string(), self.objects.len());
                self.objects.push(name.to_string());
                Ok(())
            }
            "morphism" => {
                Self::expect_shape(
                    line,
                    toks,
                    6,
                    &[(2, ":"), (4, "->")],
                    "morphism <name> : <dom> -> <cod>",
                )?;
                let name = toks[1].1;
                if !valid_name(name) {
                    return Err(perr(line, toks[1].0, format!("invalid name `{name}`")));
                }
                if self.mor_ix.contains_key(name) {
                    return Err(FormatError::DuplicateDeclaration { line, name: name.into() });
                }
                self.object(line, toks[3])?;
                self.object(line, toks[5])?;
                self.mor_ix.insert(name.to_string(), self.morphisms.len());
                self.morphisms.push(MorphismDecl {
                    name: name.to_string(),
                    dom: toks[3].1.to_string(),
                    cod: toks[5].1.to_string(),
                });
                Ok(())
            }
            "compose" => {
                Self::expect_shape(line, toks, 5, &[(3, "=")], "compose <g> <f> = <h>")?;
                let g = self.morphism(line, toks[1])?;
                let f = self.morphism(line, toks[2])?;
                self.morphism(line, toks[4])?;
                if self.morphisms[f].cod != self.morphisms[g].dom {
                    return Err(perr(
                        line,
                        toks[1].0,
                        format!("`{}` after `{}` is not composable", toks[1].1, toks[2].1),
                    ));
                }
                if !self.compose_seen.insert((g, f)) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("compose {} {}", toks[1].1, toks[2].1),
                    });
                }
                self.compose.push((toks[1].1.into(), toks[2].1.into(), toks[4].1.into()));
                Ok(())
            }
            "unit" => {
                need_flag(header.monoidal, "monoidal")?;
                Self::expect_shape(line, toks, 2, &[], "unit <object>")?;
                self.object(line, toks[1])?;
                if self.unit.is_some() {
                    return Err(FormatError::DuplicateDeclaration { line, name: "unit".into() });
                }
                self.unit = Some(toks[1].1.to_string());
                Ok(())
            }
            "tensor_obj" => {
                need_flag(header.monoidal, "monoidal")?;
                Self::expect_shape(line, toks, 5, &[(3, "=")], "tensor_obj <a> <b> = <c>")?;
                let a = self.object(line, toks[1])?;
                let b = self.object(line, toks[2])?;
                self.object(line, toks[4])?;
                if !self.tensor_obj_seen.insert((a, b)) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("tensor_obj {} {}", toks[1].1, toks[2].1),
                    });
                }
                self.tensor_obj.push((toks[1].1.into(), toks[2].1.into(), toks[4].1.into()));
                Ok(())
            }
            "tensor_mor" => {
                need_flag(header.monoidal, "monoidal")?;
                Self::expect_shape(line, toks, 5, &[(3, "=")], "tensor_mor <f> <g> = <h>")?;
                let f = self.morphism(line, toks[1])?;
                let g = self.morphism(line, toks[2])?;
                self.morphism(line, toks[4])?;
                if !self.tensor_mor_seen.insert((f, g)) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("tensor_mor {} {}", toks[1].1, toks[2].1),
                    });
                }
                self.tensor_mor.push((toks[1].1.into(), toks[2].1.into(), toks[4].1.into()));
                Ok(())
            }
            "lambda" | "rho" => {
                need_flag(header.monoidal, "monoidal")?;
                let shape =
                    if keyword.1 == "lambda" { "lambda <a> = <f>" } else { "rho <a> = <f>" };
                Self::expect_shape(line, toks, 4, &[(2, "=")], shape)?;
                let a = self.object(line, toks[1])?;
                self.morphism(line, toks[3])?;
                let (seen, list) = if keyword.1 == "lambda" {
                    (&mut self.lambda_seen, &mut self.lambda)
                } else {
                    (&mut self.rho_seen, &mut self.rho)
                };
                if !seen.insert(a) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("{} {}", keyword.1, toks[1].1),
                    });
                }
                list.push((toks[1].1.into(), toks[3].1.into()));
                Ok(())
            }
            "alpha" => {
                need_flag(header.monoidal, "monoidal")?;
                Self::expect_shape(line, toks, 6, &[(4, "=")], "alpha <a> <b> <c> = <f>")?;
                let a = self.object(line, toks[1])?;
                let b = self.object(line, toks[2])?;
                let cc = self.object(line, toks[3])?;
                self.morphism(line, toks[5])?;
                if !self.alpha_seen.insert((a, b, cc)) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("alpha {} {} {}", toks[1].1, toks[2].1, toks[3].1),
                    });
                }
                self.alpha.push((
                    toks[1].1.into(),
                    toks[2].1.into(),
                    toks[3].1.into(),
                    toks[5].1.into(),
                ));
                Ok(())
            }
            "sigma" => {
                need_flag(header.braided, "braided")?;
                Self::expect_shape(line, toks, 5, &[(3, "=")], "sigma <a> <b> = <f>")?;
                let a = self.object(line, toks[1])?;
                let b = self.object(line, toks[2])?;
                self.morphism(line, toks[4])?;
                if !self.sigma_seen.insert((a, b)) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("sigma {} {}", toks[1].1, toks[2].1),
                    });
                }
                self.sigma.push((toks[1].1.into(), toks[2].1.into(), toks[4].1.into()));
                Ok(())
            }
            "restrict" | "corestrict" => {
                let (flag_on, flag, seen, list) = if keyword.1 == "restrict" {
                    (header.restriction, "restriction", &mut self.restrict_seen, &mut self.restrict)
                } else {
                    (
                        header.corestriction,
                        "corestriction",
                        &mut self.corestrict_seen,
                        &mut self.corestrict,
                    )
                };
                if !flag_on {
                    return Err(perr(
                        line,
                        keyword.0,
                        format!("statement `{}` requires the {flag} flag", keyword.1),
                    ));
                }
                let shape = if keyword.1 == "restrict" {
                    "restrict <f> = <g>"
                } else {
                    "corestrict <f> = <g>"
                };
                Self::expect_shape(line, toks, 4, &[(2, "=")], shape)?;
                let f = self
                    .mor_ix
                    .get(toks[1].1)
                    .copied()
                    .ok_or_else(|| FormatError::DanglingReference {
                        line,
                        name: toks[1].1.to_string(),
                    })?;
                if self.mor_ix.get(toks[3].1).is_none() {
                    return Err(FormatError::DanglingReference {
                        line,
                        name: toks[3].1.to_string(),
                    });
                }
                if !seen.insert(f) {
                    return Err(FormatError::DuplicateDeclaration {
                        line,
                        name: format!("{} {}", keyword.1, toks[1].1),
                    });
                }
                list.push((toks[1].1.into(), toks[3].1.into()));
                Ok(())
            }
            other => Err(perr(line, keyword.0, format!("unknown statement `{other}`"))),
        }
    }

    fn doc_error(&self, message: String) -> FormatError {
        perr(self.format_line, 1, message)
    }

    fn finish(self) -> Result<CategoryDocument, FormatError> {
        let header = self
            .header
            .ok_or_else(|| perr(1, 1, "empty document: missing `format` statement"))?;

        for (g, gd) in self.morphisms.iter().enumerate() {
            for (f, fd) in self.morphisms.iter().enumerate() {
                if fd.cod == gd.dom && !self.compose_seen.contains(&(g, f)) {
                    return Err(FormatError::IncompleteComposition {
                        g: gd.name.clone(),
                        f: fd.name.clone(),
                    });
                }
            }
        }

        let n_obj = self.objects.len();
        let n_mor = self.morphisms.len();
        let monoidal = if header.monoidal {
            if self.unit.is_none() {
                return Err(self.doc_error("monoidal flag set but no unit declared".into()));
            }
            if self.tensor_obj.len() != n_obj * n_obj {
                return Err(self.doc_error(format!(
                    "monoidal flag set but only {} of {} tensor_obj entries declared",
                    self.tensor_obj.len(),
                    n_obj * n_obj
                )));
            }
            if self.tensor_mor.len() != n_mor * n_mor {
                return Err(self.doc_error(format!(
                    "monoidal flag set but only {} of {} tensor_mor entries declared",
                    self.tensor_mor.len(),
                    n_mor * n_mor
                )));
            }
            if self.lambda.len() != n_obj || self.rho.len() != n_obj {
                return Err(self.doc_error("monoidal flag set but unitor entries are missing".into()));
            }
            if self.alpha.len() != n_obj * n_obj * n_obj {
                return Err(self.doc_error("monoidal flag set but alpha entries are missing".into()));
            }
            if header.braided && self.sigma.len() != n_obj * n_obj {
                return Err(self.doc_error("braided flag set but sigma entries are missing".into()));
            }
            Some(MonoidalSection {
                unit: self.unit.clone().expect("checked above"),
                tensor_obj: self.tensor_obj.clone(),
                tensor_mor: self.tensor_mor.clone(),
                lambda: self.lambda.clone(),
                rho: self.rho.clone(),
                alpha: self.alpha.clone(),
                sigma: header.braided.then(|| self.sigma.clone()),
            })
        } else {
            None
        };
        let restriction = if header.restriction {
            if self.restrict.len() != n_mor {
                return Err(self.doc_error(format!(
                    "restriction flag set but only {} of {n_mor} restrict entries declared",
                    self.restrict.len()
                )));
            }
            Some(self.restrict.clone())
        } else {
            None
        };
        let corestriction = if header.corestriction {
            if self.corestrict.len() != n_mor {
                return Err(self.doc_error(format!(
                    "corestriction flag set but only {} of {n_mor} corestrict entries declared",
                    self.corestrict.len()
                )));
            }
            Some(self.corestrict.clone())
        } else {
            None
        };

        Ok(CategoryDocument {
            header,
            objects: self.objects,
            morphisms: self.morphisms,
            compose: self.compose,
            monoidal,
            restriction,
            corestriction,
        })
    }
}

/// Parses a document, stopping at the first problem. Blank lines are
/// skipped and `#` starts a comment anywhere on a line. The first statement
/// must be the `format` line; every name must be declared before use.
pub fn parse(text: &str) -> Result<CategoryDocument, FormatError> {
    let mut p = Parser::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        if p.header.is_none() {
            if toks[0].1 != "format" {
                return Err(perr(
                    line,
                    toks[0].0,
                    "first statement must be `format <version> [flags]`",
                ));
            }
            p.format_statement(line, &toks)?;
        } else {
            p.statement(line, &toks)?;
        }
    }
    p.finish()
}

/// Serializes a document in canonical form: a fixed header comment, the
/// `format` line, then every section with its statements sorted by name.
/// Parsing the output yields a document equal to the canonicalized input,
/// so `serialize` is idempotent across a parse round trip.
pub fn serialize(doc: &CategoryDocument) -> String {
    let mut out = String::new();
    out.push_str("# Finite category description.\n");
    out.push_str("# `compose g f = h` declares that g after f equals h; f applies first.\n");
    out.push_str(&format!("format {}", doc.header.version));
    for (on, flag) in [
        (doc.header.monoidal, "monoidal"),
        (doc.header.braided, "braided"),
        (doc.header.restriction, "restriction"),
        (doc.header.corestriction, "corestriction"),
    ] {
        if on {
            out.push(' ');
            out.push_str(flag);
        }
    }
    out.push('\n');

    let mut objects = doc.objects.clone();
    objects.sort();
    if !objects.is_empty() {
        out.push('\n');
    }
    for o in &objects {
        out.push_str(&format!("object {o}\n"));
    }

    let mut morphisms = doc.morphisms.clone();
    morphisms.sort_by(|a, b| a.name.cmp(&b.name));
    if !morphisms.is_empty() {
        out.push('\n');
    }
    for m in &morphisms {
        out.push_str(&format!("morphism {} : {} -> {}\n", m.name, m.dom, m.cod));
    }

    let mut compose = doc.compose.clone();
    compose.sort();
    if !compose.is_empty() {
        out.push('\n');
    }
    for (g, f, h) in &compose {
        out.push_str(&format!("compose {g} {f} = {h}\n"));
    }

    if let Some(sec) = &doc.monoidal {
        out.push('\n');
        out.push_str(&format!("unit {}\n", sec.unit));
        let mut tobj = sec.tensor_obj.clone();
        tobj.sort();
        for (a, b, c) in &tobj {
            out.push_str(&format!("tensor_obj {a} {b} = {c}\n"));
        }
        let mut tmor = sec.tensor_mor.clone();
        tmor.sort();
        for (f, g, h) in &tmor {
            out.push_str(&format!("tensor_mor {f} {g} = {h}\n"));
        }
        let mut lambda = sec.lambda.clone();
        lambda.sort();
        for (a, f) in &lambda {
            out.push_str(&format!("lambda {a} = {f}\n"));
        }
        let mut rho = sec.rho.clone();
        rho.sort();
        for (a, f) in &rho {
            out.push_str(&format!("rho {a} = {f}\n"));
        }
        let mut alpha = sec.alpha.clone();
        alpha.sort();
        for (a, b, c, f) in &alpha {
            out.push_str(&format!("alpha {a} {b} {c} = {f}\n"));
        }
        if let Some(sigma) = &sec.sigma {
            let mut sigma = sigma.clone();
            sigma.sort();
            for (a, b, f) in &sigma {
                out.push_str(&format!("sigma {a} {b} = {f}\n"));
            }
        }
    }

    if let Some(entries) = &doc.restriction {
        let mut entries = entries.clone();
        entries.sort();
        out.push('\n');
        for (f, g) in &entries {
            out.push_str(&format!("restrict {f} = {g}\n"));
        }
    }
    if let Some(entries) = &doc.corestriction {
        let mut entries = entries.clone();
        entries.sort();
        out.push('\n');
        for (f, g) in &entries {
            out.push_str(&format!("corestrict {f} = {g}\n"));
        }
    }
    out
}

/// Names a category's parts `o0..` and `m0..` and lays the tables out as a
/// canonical document, with sections matching whatever structure is
/// present.
pub fn document_from_data(data: &CategoryData) -> CategoryDocument {
    let c = &data.cat;
    let on = |a: ObjId| format!("o{a}");
    let mn = |f: MorId| format!("m{f}");

    let mut objects: Vec<String> = c.objects().map(on).collect();
    objects.sort();
    let mut morphisms: Vec<MorphismDecl> = c
        .morphisms()
        .map(|f| MorphismDecl { name: mn(f), dom: on(c.dom(f)), cod: on(c.cod(f)) })
        .collect();
    morphisms.sort_by(|a, b| a.name.cmp(&b.name));
    let mut compose = Vec::new();
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                compose.push((mn(g), mn(f), mn(h)));
            }
        }
    }
    compose.sort();

    let monoidal = data.monoidal.as_ref().map(|m| {
        let mut tensor_obj = Vec::new();
        let mut tensor_mor = Vec::new();
        let mut lambda = Vec::new();
        let mut rho = Vec::new();
        let mut alpha = Vec::new();
        for a in c.objects() {
            for b in c.objects() {
                tensor_obj.push((on(a), on(b), on(m.tensor_obj(a, b))));
                for d in c.objects() {
                    alpha.push((on(a), on(b), on(d), mn(m.alpha(a, b, d))));
                }
            }
            lambda.push((on(a), mn(m.lambda(a))));
            rho.push((on(a), mn(m.rho(a))));
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                tensor_mor.push((mn(f), mn(g), mn(m.tensor_mor(f, g))));
            }
        }
        let sigma = m.has_braiding().then(|| {
            let mut sigma = Vec::new();
            for a in c.objects() {
                for b in c.objects() {
                    sigma.push((
                        on(a),
                        on(b),
                        mn(m.sigma(a, b).expect("braiding present")),
                    ));
                }
            }
            sigma.sort();
            sigma
        });
        tensor_obj.sort();
        tensor_mor.sort();
        lambda.sort();
        rho.sort();
        alpha.sort();
        MonoidalSection {
            unit: on(m.unit()),
            tensor_obj,
            tensor_mor,
            lambda,
            rho,
            alpha,
            sigma,
        }
    });

    let restriction = data.restriction.as_ref().map(|r| {
        let mut entries: Vec<(String, String)> =
            c.morphisms().map(|f| (mn(f), mn(r.bar(f)))).collect();
        entries.sort();
        entries
    });
    let corestriction = data.corestriction.as_ref().map(|h| {
        let mut entries: Vec<(String, String)> =
            c.morphisms().map(|f| (mn(f), mn(h.hat(f)))).collect();
        entries.sort();
        entries
    });

    CategoryDocument {
        header: DocumentHeader {
            version: FORMAT_VERSION,
            monoidal: data.monoidal.is_some(),
            braided: data.monoidal.as_ref().is_some_and(MonoidalData::has_braiding),
            restriction: data.restriction.is_some(),
            corestriction: data.corestriction.is_some(),
        },
        objects,
        morphisms,
        compose,
        monoidal,
        restriction,
        corestriction,
    }
}

fn named_tables<T: Copy>(
    fill: &mut [Option<T>],
    what: &str,
) -> Result<Vec<T>, Error> {
    fill.iter()
        .map(|slot| {
            slot.ok_or_else(|| Error::MalformedTables(format!("document misses a {what} entry")))
        })
        .collect()
}

/// Compiles a document back to tables, deriving identities from the
/// composition section and validating the result through the checked
/// constructors. Names become dense indices in document order.
pub fn document_to_data(doc: &CategoryDocument) -> Result<CategoryData, Error> {
    let n_obj = doc.objects.len();
    let n_mor = doc.morphisms.len();
    let mut object_ix = HashMap::new();
    for (i, name) in doc.objects.iter().enumerate() {
        if object_ix.insert(name.as_str(), i).is_some() {
            return Err(Error::MalformedTables(format!("duplicate object name `{name}`")));
        }
    }
    let mut mor_ix = HashMap::new();
    for (i, decl) in doc.morphisms.iter().enumerate() {
        if mor_ix.insert(decl.name.as_str(), i).is_some() {
            return Err(Error::MalformedTables(format!(
                "duplicate morphism name `{}`",
                decl.name
            )));
        }
    }
    let obj = |name: &str| -> Result<ObjId, Error> {
        object_ix
            .get(name)
            .copied()
            .ok_or_else(|| Error::MalformedTables(format!("undeclared object `{name}`")))
    };
    let mor = |name: &str| -> Result<MorId, Error> {
        mor_ix
            .get(name)
            .copied()
            .ok_or_else(|| Error::MalformedTables(format!("undeclared morphism `{name}`")))
    };

    let mut dom = Vec::with_capacity(n_mor);
    let mut cod = Vec::with_capacity(n_mor);
    for decl in &doc.morphisms {
        dom.push(obj(&decl.dom)?);
        cod.push(obj(&decl.cod)?);
    }
    let mut table: Vec<Option<MorId>> = vec![None; n_mor * n_mor];
    for (g, f, h) in &doc.compose {
        table[mor(g)? * n_mor + mor(f)?] = Some(mor(h)?);
    }
    let mut identity = Vec::with_capacity(n_obj);
    for a in 0..n_obj {
        let found = (0..n_mor).find(|&f| {
            dom[f] == a
                && cod[f] == a
                && (0..n_mor).all(|g| {
                    (cod[g] != a || table[f * n_mor + g] == Some(g))
                        && (dom[g] != a || table[g * n_mor + f] == Some(g))
                })
        });
        identity.push(found.ok_or_else(|| {
            Error::MalformedTables(format!(
                "object `{}` has no identity morphism",
                doc.objects[a]
            ))
        })?);
    }
    let cat = FinCategory::new(n_obj, dom, cod, identity, table)?;

    let monoidal = match &doc.monoidal {
        None => None,
        Some(sec) => {
            let unit = obj(&sec.unit)?;
            let mut tobj: Vec<Option<ObjId>> = vec![None; n_obj * n_obj];
            for (a, b, c) in &sec.tensor_obj {
                tobj[obj(a)? * n_obj + obj(b)?] = Some(obj(c)?);
            }
            let mut tmor: Vec<Option<MorId>> = vec![None; n_mor * n_mor];
            for (f, g, h) in &sec.tensor_mor {
                tmor[mor(f)? * n_mor + mor(g)?] = Some(mor(h)?);
            }
            let mut lambda: Vec<Option<MorId>> = vec![None; n_obj];
            for (a, f) in &sec.lambda {
                lambda[obj(a)?] = Some(mor(f)?);
            }
            let mut rho: Vec<Option<MorId>> = vec![None; n_obj];
            for (a, f) in &sec.rho {
                rho[obj(a)?] = Some(mor(f)?);
            }
            let mut alpha: Vec<Option<MorId>> = vec![None; n_obj * n_obj * n_obj];
            for (a, b, c, f) in &sec.alpha {
                alpha[(obj(a)? * n_obj + obj(b)?) * n_obj + obj(c)?] = Some(mor(f)?);
            }
            let sigma = match &sec.sigma {
                None => None,
                Some(entries) => {
                    let mut sigma: Vec<Option<MorId>> = vec![None; n_obj * n_obj];
                    for (a, b, f) in entries {
                        sigma[obj(a)? * n_obj + obj(b)?] = Some(mor(f)?);
                    }
                    Some(named_tables(&mut sigma, "sigma")?)
                }
            };
            Some(MonoidalData::new(
                &cat,
                unit,
                named_tables(&mut tobj, "tensor_obj")?,
                named_tables(&mut tmor, "tensor_mor")?,
                named_tables(&mut lambda, "lambda")?,
                named_tables(&mut rho, "rho")?,
                named_tables(&mut alpha, "alpha")?,
                sigma,
            )?)
        }
    };

    let restriction = match &doc.restriction {
        None => None,
        Some(entries) => {
            let mut bar: Vec<Option<MorId>> = vec![None; n_mor];
            for (f, g) in entries {
                bar[mor(f)?] = Some(mor(g)?);
            }
            Some(RestrictionData::new(&cat, named_tables(&mut bar, "restrict")?)?)
        }
    };
    let corestriction = match &doc.corestriction {
        None => None,
        Some(entries) => {
            let mut hat: Vec<Option<MorId>> = vec![None; n_mor];
            for (f, g) in entries {
                hat[mor(f)?] = Some(mor(g)?);
            }
            Some(CorestrictionData::new(&cat, named_tables(&mut hat, "corestrict")?)?)
        }
    };

    Ok(CategoryData { cat, monoidal, restriction, corestriction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{chain_semilattice, depressing_downsets, from_semilattice};
    use crate::iso::{find_isomorphism, StructureFlags, DEFAULT_SEARCH_BUDGET};

    const TERMINAL: &str = "\
format 1
object o0
morphism m0 : o0 -> o0
compose m0 m0 = m0
";

    #[test]
    fn terminal_document_parses_and_compiles() {
        let doc = parse(TERMINAL).unwrap();
        assert_eq!(doc.objects, vec!["o0"]);
        assert_eq!(doc.morphisms.len(), 1);
        let data = document_to_data(&doc).unwrap();
        assert_eq!(data.cat.n_objects(), 1);
        assert_eq!(data.cat.n_morphisms(), 1);
        assert!(data.monoidal.is_none());
    }

    #[test]
    fn missing_compose_line_names_the_pair() {
        let text = "format 1\nobject o0\nmorphism m0 : o0 -> o0\n";
        assert_eq!(
            parse(text),
            Err(FormatError::IncompleteComposition { g: "m0".into(), f: "m0".into() })
        );
    }

    #[test]
    fn references_must_be_declared_first() {
        let text = "format 1\nobject o0\nmorphism m0 : o0 -> o1\n";
        assert_eq!(
            parse(text),
            Err(FormatError::DanglingReference { line: 3, name: "o1".into() })
        );
    }

    #[test]
    fn duplicates_are_rejected() {
        let text = "format 1\nobject o0\nobject o0\n";
        assert_eq!(
            parse(text),
            Err(FormatError::DuplicateDeclaration { line: 3, name: "o0".into() })
        );
    }

    #[test]
    fn errors_carry_line_and_column() {
        let text = "format 1\nobject o0\n  frobnicate o0\n";
        assert_eq!(
            parse(text),
            Err(FormatError::Parse {
                line: 3,
                col: 3,
                message: "unknown statement `frobnicate`".into()
            })
        );
    }

    #[test]
    fn structure_statements_need_their_flag() {
        let text = "format 1\nobject o0\nmorphism m0 : o0 -> o0\ncompose m0 m0 = m0\nrestrict m0 = m0\n";
        assert!(matches!(parse(text), Err(FormatError::Parse { line: 5, .. })));
    }

    #[test]
    fn non_composable_entries_are_rejected() {
        let text = "\
format 1
object o0
object o1
morphism m0 : o0 -> o0
morphism m1 : o1 -> o1
compose m1 m0 = m0
";
        assert!(matches!(parse(text), Err(FormatError::Parse { line: 6, .. })));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(){
        let text = "# leading\n\nformat 1  # trailing\n\nobject o0 # named\nmorphism m0 : o0 -> o0\ncompose m0 m0 = m0\n";
        assert!(parse(text).is_ok());
    }

    #[test]
    fn round_trip_is_identity_on_canonical_documents() {
        let chain = chain_semilattice(3).unwrap();
        for data in [from_semilattice(&chain), depressing_downsets(&chain)] {
            let doc = document_from_data(&data);
            let text = serialize(&doc);
            let back = parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn compiled_document_matches_the_source_data() {
        let chain = chain_semilattice(2).unwrap();
        let data = depressing_downsets(&chain);
        let doc = document_from_data(&data);
        let rebuilt = document_to_data(&parse(&serialize(&doc)).unwrap()).unwrap();
        assert_eq!(rebuilt.cat.n_morphisms(), data.cat.n_morphisms());
        assert!(rebuilt.restriction.is_some());
        assert!(rebuilt.corestriction.is_some());
        let found = find_isomorphism(
            &rebuilt,
            &data,
            StructureFlags::all(),
            DEFAULT_SEARCH_BUDGET,
        )
        .unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn serializer_emits_the_compose_convention() {
        let chain = chain_semilattice(2).unwrap();
        let text = serialize(&document_from_data(&from_semilattice(&chain)));
        assert!(text.contains("f applies first"));
        assert!(text.starts_with("# Finite category description.\n"));
    }
}
