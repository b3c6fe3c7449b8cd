//! Line-oriented labelling documents.
//!
//! ```text
//! # a 5-cycle with two isolates
//! C5: 1, 2, 3, 5, 8
//! I: 9, 13
//! ```
//!
//! One line per component (`C<n>:` or `P<n>:` followed by `n` labels in
//! cyclic or path order) and at most one `I:` line with the isolates.
//! Labels are decimal and unbounded. `#` starts a comment.

use std::fmt::Write as _;

use sumlabel_core::{Component, Label, SchemeLabelling};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct DocumentError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> DocumentError {
    DocumentError { line, message: message.into() }
}

fn parse_component(head: &str) -> Option<Component> {
    let (kind, order) = head.split_at(1.min(head.len()));
    let order: usize = order.parse().ok()?;
    match kind {
        "C" | "c" if order >= 3 => Some(Component::Cycle(order)),
        "P" | "p" if order >= 2 => Some(Component::Path(order)),
        _ => None,
    }
}

fn parse_labels(body: &str, line: usize) -> Result<Vec<Label>, DocumentError> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Label>().map_err(|_| err(line, format!("`{t}` is not a decimal label")))
        })
        .collect()
}

pub fn parse(text: &str) -> Result<SchemeLabelling, DocumentError> {
    let mut out = SchemeLabelling::default();
    let mut seen_isolates = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, body) = content.split_once(':').ok_or_else(|| err(line, "expected `<kind>: <labels>`"))?;
        let head = head.trim();
        let labels = parse_labels(body, line)?;
        if head.eq_ignore_ascii_case("I") {
            if seen_isolates {
                return Err(err(line, "more than one isolate line"));
            }
            seen_isolates = true;
            out.isolates = labels;
            continue;
        }
        let component = parse_component(head).ok_or_else(|| err(line, format!("`{head}` is not C<n> (n >= 3) or P<n> (n >= 2)")))?;
        if labels.len() != component.order() {
            return Err(err(line, format!("{component} needs {} labels, found {}", component.order(), labels.len())));
        }
        out.components.push((component, labels));
    }
    if out.components.is_empty() {
        return Err(err(text.lines().count().max(1), "no components"));
    }
    Ok(out)
}

fn join(labels: &[Label]) -> String {
    labels.iter().map(Label::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render(labelling: &SchemeLabelling) -> String {
    let mut out = String::new();
    for (c, labels) in &labelling.components {
        writeln!(out, "{c}: {}", join(labels)).expect("write to string");
    }
    writeln!(out, "I: {}", join(&labelling.isolates)).expect("write to string");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sumlabel_core::labels;

    #[test]
    fn round_trip() {
        let text = "# triangle\nC3: 1, 4, 3\nP2: 20,32 # path\n\nI: 5, 7\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.components[0], (Component::Cycle(3), labels(&[1, 4, 3])));
        assert_eq!(doc.isolates, labels(&[5, 7]));
        assert_eq!(parse(&render(&doc)).unwrap(), doc);
        assert_eq!(render(&doc), "C3: 1, 4, 3\nP2: 20, 32\nI: 5, 7\n");
    }

    #[test]
    fn big_labels() {
        let doc = parse("P2: 123456789012345678901234567890, 2\nI:\n").unwrap();
        assert_eq!(doc.components[0].1[0].to_string(), "123456789012345678901234567890");
        assert!(doc.isolates.is_empty());
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse("C3: 1, 2\n").unwrap_err().line, 1);
        assert_eq!(parse("C3: 1, 2, 3\nX4: 1\n").unwrap_err().line, 2);
        assert_eq!(parse("C2: 1, 2\n").unwrap_err().line, 1);
        assert_eq!(parse("C3: 1, -2, 3\n").unwrap_err().line, 1);
        assert!(parse("# nothing\n").is_err());
        assert_eq!(parse("C3: 1,2,3\nI: 4\nI: 5\n").unwrap_err().line, 3);
    }
}
