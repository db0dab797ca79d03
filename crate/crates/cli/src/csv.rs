//! Minimal CSV writer: comma separated, LF endings, no quoting.

/// Shortest representation that parses back to the same `f64`. Negative
/// zero prints as `0.0`.
pub fn float(x: f64) -> String {
    if x == 0.0 {
        "0.0".to_string()
    } else {
        format!("{x:?}")
    }
}

#[derive(Debug, Default)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: impl IntoIterator<Item = S>) -> Self {
        let mut t = Table::default();
        t.row(header);
        t
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: impl IntoIterator<Item = S>) {
        for (k, f) in fields.into_iter().enumerate() {
            if k > 0 {
                self.text.push(',');
            }
            self.text.push_str(f.as_ref());
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
