//! Finite sequence prefixes and the sequence file format.
//!
//! File format: the first line is `p=<modulus>`; the remaining lines hold
//! whitespace-separated decimal residues in `[0, p)`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::TruncatedSeries;

/// Symbols written per line by [`SequencePrefix::to_file_string`].
const SYMBOLS_PER_LINE: usize = 32;

/// `(s_0, …, s_{N−1})` over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequencePrefix {
    field: PrimeField,
    symbols: Vec<u64>,
}

impl SequencePrefix {
    /// Rejects symbols outside `[0, p)`.
    pub fn from_residues(field: PrimeField, symbols: Vec<u64>) -> Result<Self> {
        if let Some((i, &v)) = symbols.iter().enumerate().find(|(_, &v)| v >= field.p64()) {
            return Err(Error::RangeError(format!(
                "symbol {v} at index {i} is not a residue mod {}",
                field.modulus()
            )));
        }
        Ok(SequencePrefix { field, symbols })
    }

    pub fn from_elements(field: PrimeField, symbols: &[FieldElement]) -> Result<Self> {
        let mut out = Vec::with_capacity(symbols.len());
        for s in symbols {
            if s.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), s.field().modulus()));
            }
            out.push(s.value() as u64);
        }
        Ok(SequencePrefix {
            field,
            symbols: out,
        })
    }

    pub(crate) fn from_reduced(field: PrimeField, symbols: Vec<u64>) -> Self {
        debug_assert!(symbols.iter().all(|&v| v < field.p64()));
        SequencePrefix { field, symbols }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> Option<FieldElement> {
        self.symbols.get(i).map(|&v| self.field.element(v))
    }

    /// The first `n` symbols.
    pub fn prefix(&self, n: usize) -> SequencePrefix {
        SequencePrefix {
            field: self.field,
            symbols: self.symbols[..n.min(self.len())].to_vec(),
        }
    }

    /// Whether `s_0 = … = s_{n−1} = 0`.
    pub fn is_zero_through(&self, n: usize) -> bool {
        self.symbols[..n.min(self.len())].iter().all(|&v| v == 0)
    }

    /// The generating function `G(x) mod x^N`, `N` the prefix length.
    pub fn series(&self) -> TruncatedSeries {
        TruncatedSeries::from_prefix(self)
    }

    pub(crate) fn push(&mut self, v: u64) {
        self.symbols.push(self.field.reduce(v));
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("p={}\n", self.field.modulus());
        for chunk in self.symbols.chunks(SYMBOLS_PER_LINE) {
            let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing `p=<modulus>` header".into(),
        })?;
        let trimmed = header.trim_start();
        let indent = header.len() - trimmed.len();
        let value = trimmed
            .trim_end()
            .strip_prefix("p=")
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: indent + 1,
                message: "expected `p=<modulus>`".into(),
            })?;
        let p: u64 = value.parse().map_err(|_| Error::Parse {
            line: 1,
            column: indent + 3,
            message: format!("invalid modulus `{value}`"),
        })?;
        let field = PrimeField::new(p).map_err(|e| Error::Parse {
            line: 1,
            column: indent + 3,
            message: e.to_string(),
        })?;
        let mut symbols = Vec::new();
        for (idx, line) in lines {
            let mut col = 0;
            for token in line.split_whitespace() {
                // byte offset of this token within the line
                let start = line[col..].find(token).unwrap() + col;
                col = start + token.len();
                let v: u64 = token.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    column: start + 1,
                    message: format!("invalid symbol `{token}`"),
                })?;
                if v >= p {
                    return Err(Error::Parse {
                        line: idx + 1,
                        column: start + 1,
                        message: format!("symbol {v} is out of range [0, {p})"),
                    });
                }
                symbols.push(v);
            }
        }
        Ok(SequencePrefix { field, symbols })
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_file(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }
}

impl TruncatedSeries {
    /// `G(x) = Σ s_i x^i mod x^N`.
    pub fn from_prefix(s: &SequencePrefix) -> Self {
        TruncatedSeries::new(s.field(), s.symbols().to_vec())
    }
}
