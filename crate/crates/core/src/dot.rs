//! Small helpers for emitting Graphviz DOT text.

use std::fmt::Write;

/// Quotes an identifier or label for DOT.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Line-oriented DOT builder with fixed indentation.
pub(crate) struct Dot {
    buf: String,
    depth: usize,
}

impl Dot {
    pub fn digraph(name: &str) -> Self {
        let mut d = Self { buf: String::new(), depth: 0 };
        d.open(&format!("digraph {}", quote(name)));
        d
    }

    pub fn line(&mut self, text: &str) {
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
        self.buf.push_str(text);
        self.buf.push('\n');
    }

    pub fn open(&mut self, head: &str) {
        self.line(&format!("{head} {{"));
        self.depth += 1;
    }

    pub fn close(&mut self) {
        self.depth -= 1;
        self.line("}");
    }

    pub fn node(&mut self, id: &str, attrs: &[(&str, &str)]) {
        let mut s = quote(id);
        push_attrs(&mut s, attrs);
        self.line(&s);
    }

    pub fn edge(&mut self, from: &str, to: &str, attrs: &[(&str, &str)]) {
        let mut s = format!("{} -> {}", quote(from), quote(to));
        push_attrs(&mut s, attrs);
        self.line(&s);
    }

    pub fn finish(mut self) -> String {
        while self.depth > 0 {
            self.close();
        }
        self.buf
    }
}

fn push_attrs(s: &mut String, attrs: &[(&str, &str)]) {
    if attrs.is_empty() {
        s.push(';');
        return;
    }
    s.push_str(" [");
    for (i, (k, v)) in attrs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{k}={}", quote(v));
    }
    s.push_str("];");
}
