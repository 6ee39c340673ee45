//! Selector subset: type, `.class`, `#id`, compounds of those, and the
//! descendant combinator. Everything else is rejected.

use std::str::FromStr;

use super::{NodeId, SvgDoc, SvgNode};
use crate::error::SvgError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Compound {
    tag: Option<String>,
    ids: Vec<String>,
    classes: Vec<String>,
}

impl Compound {
    fn matches(&self, node: &SvgNode) -> bool {
        self.tag.as_ref().is_none_or(|t| *t == node.tag)
            && self.ids.iter().all(|id| node.id.as_deref() == Some(id.as_str()))
            && self.classes.iter().all(|c| node.has_class(c))
    }
}

/// A parsed selector: compounds joined by descendant combinators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    chain: Vec<Compound>,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '-' || c == '_' || !c.is_ascii()
}

impl FromStr for Selector {
    type Err = SvgError;

    fn from_str(sel: &str) -> Result<Self, SvgError> {
        let invalid = |reason: String| SvgError::InvalidSelector { selector: sel.to_string(), reason };
        let mut chain = Vec::new();
        for token in sel.split_whitespace() {
            let mut compound = Compound::default();
            let mut chars = token.char_indices().peekable();
            let read_ident = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
                let mut s = String::new();
                while let Some((_, c)) = chars.peek().copied().filter(|(_, c)| is_ident_char(*c)) {
                    s.push(c);
                    chars.next();
                }
                s
            };
            if chars.peek().is_some_and(|(_, c)| is_ident_char(*c)) {
                compound.tag = Some(read_ident(&mut chars));
            }
            while let Some((pos, c)) = chars.next() {
                let name = read_ident(&mut chars);
                if name.is_empty() && matches!(c, '.' | '#') {
                    return Err(invalid(format!("empty name after `{c}` at byte {pos}")));
                }
                match c {
                    '.' => compound.classes.push(name),
                    '#' => compound.ids.push(name),
                    other => return Err(invalid(format!("unsupported syntax `{other}` at byte {pos}"))),
                }
            }
            chain.push(compound);
        }
        if chain.is_empty() {
            return Err(invalid("empty selector".into()));
        }
        Ok(Selector { chain })
    }
}

impl Selector {
    pub fn parse(sel: &str) -> Result<Self, SvgError> {
        sel.parse()
    }

    pub fn matches(&self, doc: &SvgDoc, id: NodeId) -> bool {
        let (last, rest) = self.chain.split_last().expect("non-empty chain");
        if !last.matches(doc.node(id)) {
            return false;
        }
        // Greedy right-to-left matching is exact when every combinator is "descendant".
        let mut pending = rest.iter().rev().peekable();
        for ancestor in doc.ancestors(id) {
            match pending.peek() {
                Some(c) if c.matches(doc.node(ancestor)) => {
                    pending.next();
                }
                Some(_) => {}
                None => break,
            }
        }
        pending.peek().is_none()
    }

    pub fn select(&self, doc: &SvgDoc) -> Vec<NodeId> {
        doc.node_ids().filter(|id| self.matches(doc, *id)).collect()
    }
}

/// All elements matching `sel`, in document order.
pub fn query_selector(doc: &SvgDoc, sel: &str) -> Result<Vec<NodeId>, SvgError> {
    Ok(Selector::parse(sel)?.select(doc))
}
