//! Line-oriented `key = value` parser used by the setup and raw-counts file
//! formats. `#` starts a comment; blank lines are skipped.

use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct KvFile {
    entries: Vec<(String, String, usize)>,
}

impl KvFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty key or value".into(),
                });
            }
            entries.push((key, value, line_no));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &'static str) -> Option<(&str, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }

    pub fn require(&self, key: &'static str) -> Result<(&str, usize)> {
        self.get(key).ok_or(Error::MissingKey(key))
    }

    /// Required key parsed as `f64` (scientific notation accepted).
    pub fn require_f64(&self, key: &'static str) -> Result<f64> {
        let (value, line) = self.require(key)?;
        value.parse::<f64>().map_err(|_| Error::Parse {
            line,
            message: format!("`{key}` is not a number: `{value}`"),
        })
    }

    /// Required key parsed as a nonnegative integer count.
    pub fn require_u64(&self, key: &'static str) -> Result<u64> {
        let (value, line) = self.require(key)?;
        value.parse::<u64>().map_err(|_| Error::Parse {
            line,
            message: format!("`{key}` is not a nonnegative integer: `{value}`"),
        })
    }
}
