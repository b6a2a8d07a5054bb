use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BivariatePoly, TruncatedSeries};
use crate::sequence::SequencePrefix;

/// How an extension ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ExtensionStatus {
    /// Every requested symbol was uniquely determined.
    Complete,
    /// Several symbols keep `h(x, G(x))` vanishing at this position.
    Ambiguous {
        position: usize,
        candidates: Vec<u64>,
    },
    /// No symbol does.
    Inconsistent { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    /// The input prefix followed by the appended symbols.
    pub sequence: SequencePrefix,
    pub appended: Vec<u64>,
    #[serde(flatten)]
    pub status: ExtensionStatus,
}

/// Extends `s` by up to `count` symbols, each chosen as the unique `c` with
/// `h(x, G(x) + c x^N) ≡ 0 mod x^{N+1}`. Stops early when the choice is not
/// unique.
pub fn extend_sequence(h: &BivariatePoly, s: &SequencePrefix, count: usize) -> Result<Extension> {
    if h.field() != s.field() {
        return Err(Error::FieldMismatch(
            h.field().modulus(),
            s.field().modulus(),
        ));
    }
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let residual = h.eval_at_series(&TruncatedSeries::from_prefix(s))?;
    if let Some(i) = residual.order() {
        return Err(Error::PrerequisiteViolated(format!(
            "h(x, G(x)) has a nonzero coefficient at x^{i}"
        )));
    }
    let field = s.field();
    let mut seq = s.clone();
    let mut appended = Vec::new();
    for _ in 0..count {
        let position = seq.len();
        let mut candidates = Vec::new();
        for c in field.residues() {
            let mut trial = seq.clone();
            trial.push(c);
            let value = h.eval_at_series(&TruncatedSeries::from_prefix(&trial))?;
            if value.coeffs()[position] == 0 {
                candidates.push(c);
            }
        }
        match candidates.as_slice() {
            [c] => {
                seq.push(*c);
                appended.push(*c);
            }
            [] => {
                return Ok(Extension {
                    sequence: seq,
                    appended,
                    status: ExtensionStatus::Inconsistent { position },
                })
            }
            _ => {
                return Ok(Extension {
                    sequence: seq,
                    appended,
                    status: ExtensionStatus::Ambiguous {
                        position,
                        candidates,
                    },
                })
            }
        }
    }
    Ok(Extension {
        sequence: seq,
        appended,
        status: ExtensionStatus::Complete,
    })
}
