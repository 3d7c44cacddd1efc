//! Loader for the YAML subset used by asset files.
//!
//! Produces an untyped tree of raw scalars (no YAML type resolution), with
//! line numbers. Anchors, aliases, tags and multi-document streams are
//! rejected.

use std::fmt;

use yaml_rust2::parser::{Event, MarkedEventReceiver, Parser};
use yaml_rust2::scanner::{Marker, TScalarStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarStyle {
    Plain,
    Quoted,
    Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Scalar { text: String, style: ScalarStyle, line: usize },
    Seq { items: Vec<Node>, line: usize },
    Map { entries: Vec<MapEntry>, line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub key: String,
    pub line: usize,
    pub value: Node,
}

impl Node {
    pub fn line(&self) -> usize {
        match self {
            Node::Scalar { line, .. } | Node::Seq { line, .. } | Node::Map { line, .. } => *line,
        }
    }

    /// A plain empty value (`key:`, `~`, `null`) or a quoted blank string.
    pub fn is_empty_scalar(&self) -> bool {
        match self {
            Node::Scalar { text, style: ScalarStyle::Plain, .. } => {
                matches!(text.as_str(), "" | "~" | "null" | "Null" | "NULL")
            }
            Node::Scalar { text, .. } => text.trim().is_empty(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YamlError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for YamlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for YamlError {}

enum Frame {
    Seq { items: Vec<Node>, line: usize },
    Map { entries: Vec<MapEntry>, key: Option<(String, usize)>, line: usize },
}

#[derive(Default)]
struct TreeBuilder {
    stack: Vec<Frame>,
    root: Option<Node>,
    documents: usize,
    error: Option<YamlError>,
}

impl TreeBuilder {
    fn fail(&mut self, line: usize, message: &str) {
        if self.error.is_none() {
            self.error = Some(YamlError { line, message: message.to_owned() });
        }
    }

    fn attach(&mut self, node: Node) {
        match self.stack.last_mut() {
            None => self.root = Some(node),
            Some(Frame::Seq { items, .. }) => items.push(node),
            Some(Frame::Map { entries, key, .. }) => match key.take() {
                Some((k, line)) => entries.push(MapEntry { key: k, line, value: node }),
                None => match node {
                    Node::Scalar { text, line, .. } => *key = Some((text, line)),
                    other => self.fail(other.line(), "mapping keys must be scalars"),
                },
            },
        }
    }
}

impl MarkedEventReceiver for TreeBuilder {
    fn on_event(&mut self, ev: Event, mark: Marker) {
        if self.error.is_some() {
            return;
        }
        let line = mark.line();
        match ev {
            Event::DocumentStart => {
                self.documents += 1;
                if self.documents > 1 {
                    self.fail(line, "multiple documents in one file are not supported");
                }
            }
            Event::Alias(_) => self.fail(line, "aliases are not supported"),
            Event::Scalar(_, _, anchor, _) | Event::SequenceStart(anchor, _) | Event::MappingStart(anchor, _)
                if anchor > 0 =>
            {
                self.fail(line, "anchors are not supported")
            }
            Event::Scalar(_, _, _, Some(_)) | Event::SequenceStart(_, Some(_)) | Event::MappingStart(_, Some(_)) => {
                self.fail(line, "tags are not supported")
            }
            Event::Scalar(text, style, _, None) => {
                let style = match style {
                    TScalarStyle::Plain => ScalarStyle::Plain,
                    TScalarStyle::SingleQuoted | TScalarStyle::DoubleQuoted => ScalarStyle::Quoted,
                    TScalarStyle::Literal | TScalarStyle::Folded => ScalarStyle::Block,
                };
                self.attach(Node::Scalar { text, style, line });
            }
            Event::SequenceStart(..) => self.stack.push(Frame::Seq { items: Vec::new(), line }),
            Event::MappingStart(..) => self.stack.push(Frame::Map { entries: Vec::new(), key: None, line }),
            Event::SequenceEnd | Event::MappingEnd => {
                let node = match self.stack.pop() {
                    Some(Frame::Seq { items, line }) => Node::Seq { items, line },
                    Some(Frame::Map { entries, line, .. }) => Node::Map { entries, line },
                    None => return,
                };
                self.attach(node);
            }
            Event::Nothing | Event::StreamStart | Event::StreamEnd | Event::DocumentEnd => {}
        }
    }
}

/// Parses one document. `Ok(None)` for an empty stream.
pub fn load(text: &str) -> Result<Option<Node>, YamlError> {
    let mut builder = TreeBuilder::default();
    let mut parser = Parser::new_from_str(text);
    if let Err(e) = parser.load(&mut builder, true) {
        return Err(YamlError { line: e.marker().line(), message: e.info().to_owned() });
    }
    match builder.error {
        Some(e) => Err(e),
        None => Ok(builder.root),
    }
}
