use std::fmt;
use std::sync::Arc;

use crate::message::Message;
use crate::time::SimTime;

/// Kind of a recorded simulation event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Lifetime expired; the messages are the emitted output.
    Output,
    /// Internal transition, recorded right after its output.
    Internal,
    /// Bag delivery; the messages are the delivered bag.
    External,
    /// Protocol notice: a partial bag, a dropped output and the like.
    Warning,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Output => "output",
            Self::Internal => "internal",
            Self::External => "external",
            Self::Warning => "warning",
        })
    }
}

/// One recorded event.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub time: SimTime,
    /// Full component path, e.g. `forest.fis.defuzz`.
    pub component: Arc<str>,
    pub kind: EventKind,
    pub messages: Vec<Message>,
    /// Free-form text for warnings.
    pub note: Option<String>,
}

/// Chronological record of everything the kernel did. Entry times never
/// decrease.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn record(&mut self, entry: TraceEntry) {
        debug_assert!(
            self.entries.last().is_none_or(|last| last.time <= entry.time),
            "trace times must not decrease"
        );
        self.entries.push(entry);
    }

    /// Tab-separated text form, one event per line:
    /// `<time>\t<component-path>\t<kind>\t<port>=<value> ...`
    /// Warning lines carry their note in the last field. The field order is
    /// stable, so equal traces produce byte-equal text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&entry.time.to_string());
            out.push('\t');
            out.push_str(&entry.component);
            out.push('\t');
            out.push_str(&entry.kind.to_string());
            out.push('\t');
            match entry.kind {
                EventKind::Warning => {
                    if let Some(note) = &entry.note {
                        out.push_str(note);
                    }
                }
                _ => {
                    for (i, message) in entry.messages.iter().enumerate() {
                        if i > 0 {
                            out.push(' ');
                        }
                        out.push_str(&message.port);
                        out.push('=');
                        out.push_str(&message.value.to_string());
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
