use std::fmt;

use crate::decision::{CriteriaVector, CRITERIA_COUNT};
use crate::expression::{Alternative, GrammarExpression, ALTERNATIVES};
use crate::term::{anchors, Hflts, LinguisticTerm, TermInterval};
use crate::HfltsError;

/// Direction a criterion pulls an alternative's assessment.
///
/// `Benefit` slots want the measured value to be exceeded (`greater than`
/// the lower anchor), `Cost` slots want to stay under it (`lower than` the
/// upper anchor), `Neutral` slots hold the measured band (`between` the
/// anchors).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotKind {
    Benefit,
    Cost,
    Neutral,
}

/// Per-alternative slot kinds mirroring the reference role matrix: a
/// cluster head is favored by high gain, energy welfare, link connectivity
/// and link quality and by low thermal entropy and hop count; a member
/// holds mid-range bands except for link connectivity; a relay mixes both.
const ROLE_TEMPLATE: [[SlotKind; CRITERIA_COUNT]; 3] = [
    [
        SlotKind::Benefit,
        SlotKind::Benefit,
        SlotKind::Cost,
        SlotKind::Benefit,
        SlotKind::Cost,
        SlotKind::Neutral,
    ],
    [
        SlotKind::Neutral,
        SlotKind::Neutral,
        SlotKind::Neutral,
        SlotKind::Benefit,
        SlotKind::Neutral,
        SlotKind::Neutral,
    ],
    [
        SlotKind::Benefit,
        SlotKind::Neutral,
        SlotKind::Cost,
        SlotKind::Benefit,
        SlotKind::Cost,
        SlotKind::Neutral,
    ],
];

/// 3 alternatives x 6 criteria of comparative linguistic expressions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpressionMatrix {
    cells: [[GrammarExpression; CRITERIA_COUNT]; 3],
}

impl ExpressionMatrix {
    pub fn new(cells: [[GrammarExpression; CRITERIA_COUNT]; 3]) -> Self {
        ExpressionMatrix { cells }
    }

    pub fn cell(&self, alternative: Alternative, criterion: usize) -> &GrammarExpression {
        &self.cells[alternative.index()][criterion]
    }

    pub fn row(&self, alternative: Alternative) -> &[GrammarExpression; CRITERIA_COUNT] {
        &self.cells[alternative.index()]
    }

    /// The built-in reference matrix over the seven-term scale.
    pub fn reference() -> Self {
        let text = "\
greater than h, greater than h, lower than m, greater than h, lower than m, between h and p
between l and h, between vl and h, between l and vh, greater than m, between l and vh, between m and vh
greater than l, between vl and h, lower than h, greater than m, lower than m, between h and p";
        Self::parse(text).expect("reference matrix parses")
    }

    /// Builds the per-node matrix from measured criterion values.
    ///
    /// For each slot the anchors are the terms adjacent to the measured
    /// value; the slot kind then picks the comparative form. Comparatives
    /// that would be empty at the scale boundary degrade to the boundary
    /// singleton.
    pub fn from_criteria(criteria: &CriteriaVector) -> Self {
        let values = criteria.as_array();
        let mut rows: Vec<[GrammarExpression; CRITERIA_COUNT]> = Vec::with_capacity(3);
        for template_row in ROLE_TEMPLATE.iter() {
            let mut row = [GrammarExpression::Single(LinguisticTerm::MEDIUM); CRITERIA_COUNT];
            for (j, kind) in template_row.iter().enumerate() {
                let (lo, hi) = anchors(values[j]).expect("criteria are validated to [0, 1]");
                row[j] = match kind {
                    SlotKind::Benefit => match lo.succ() {
                        Some(_) => GrammarExpression::GreaterThan(lo),
                        None => GrammarExpression::Single(lo),
                    },
                    SlotKind::Cost => match hi.pred() {
                        Some(_) => GrammarExpression::LowerThan(hi),
                        None => GrammarExpression::Single(hi),
                    },
                    SlotKind::Neutral => {
                        if lo == hi {
                            GrammarExpression::Single(lo)
                        } else {
                            GrammarExpression::Between(lo, hi)
                        }
                    }
                };
            }
            rows.push(row);
        }
        ExpressionMatrix {
            cells: [rows[0], rows[1], rows[2]],
        }
    }

    /// Parses a matrix from text: three non-comment lines of six
    /// comma-separated expressions (rows: CH, CM, Relay).
    pub fn parse(text: &str) -> Result<Self, HfltsError> {
        let mut rows: Vec<[GrammarExpression; CRITERIA_COUNT]> = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = trimmed.split(',').collect();
            if cells.len() != CRITERIA_COUNT {
                return Err(HfltsError::MatrixParse {
                    line: line_no + 1,
                    message: format!("expected {CRITERIA_COUNT} cells, found {}", cells.len()),
                });
            }
            let mut row = [GrammarExpression::Single(LinguisticTerm::MEDIUM); CRITERIA_COUNT];
            for (j, cell) in cells.iter().enumerate() {
                row[j] = GrammarExpression::parse(cell).map_err(|e| HfltsError::MatrixParse {
                    line: line_no + 1,
                    message: e.to_string(),
                })?;
            }
            rows.push(row);
        }
        if rows.len() != 3 {
            return Err(HfltsError::MatrixParse {
                line: text.lines().count(),
                message: format!("expected 3 rows, found {}", rows.len()),
            });
        }
        Ok(ExpressionMatrix {
            cells: [rows[0], rows[1], rows[2]],
        })
    }

    /// Expands every cell into its hesitant term set.
    pub fn transform(&self) -> Result<HfltsMatrix, HfltsError> {
        let mut rows: Vec<[Hflts; CRITERIA_COUNT]> = Vec::with_capacity(3);
        for row in self.cells.iter() {
            let mut out = [Hflts::singleton(LinguisticTerm::MEDIUM); CRITERIA_COUNT];
            for (j, expr) in row.iter().enumerate() {
                out[j] = expr.transform()?;
            }
            rows.push(out);
        }
        Ok(HfltsMatrix {
            cells: [rows[0], rows[1], rows[2]],
        })
    }
}

impl fmt::Display for ExpressionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (alt, row) in ALTERNATIVES.iter().zip(self.cells.iter()) {
            write!(f, "{:>5}:", alt.name())?;
            for (j, expr) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, " {expr}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// 3 x 6 matrix of hesitant term sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HfltsMatrix {
    cells: [[Hflts; CRITERIA_COUNT]; 3],
}

impl HfltsMatrix {
    pub fn cell(&self, alternative: Alternative, criterion: usize) -> &Hflts {
        &self.cells[alternative.index()][criterion]
    }

    pub fn row(&self, alternative: Alternative) -> &[Hflts; CRITERIA_COUNT] {
        &self.cells[alternative.index()]
    }

    /// Takes the envelope of every cell.
    pub fn envelopes(&self) -> EnvelopeMatrix {
        let mut rows: Vec<[TermInterval; CRITERIA_COUNT]> = Vec::with_capacity(3);
        for row in self.cells.iter() {
            let mut out = [Hflts::singleton(LinguisticTerm::MEDIUM).envelope(); CRITERIA_COUNT];
            for (j, set) in row.iter().enumerate() {
                out[j] = set.envelope();
            }
            rows.push(out);
        }
        EnvelopeMatrix {
            cells: [rows[0], rows[1], rows[2]],
        }
    }
}

impl fmt::Display for HfltsMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (alt, row) in ALTERNATIVES.iter().zip(self.cells.iter()) {
            write!(f, "{:>5}:", alt.name())?;
            for (j, set) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, " {set}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// 3 x 6 matrix of term envelopes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnvelopeMatrix {
    cells: [[TermInterval; CRITERIA_COUNT]; 3],
}

impl EnvelopeMatrix {
    pub fn cell(&self, alternative: Alternative, criterion: usize) -> &TermInterval {
        &self.cells[alternative.index()][criterion]
    }

    pub fn row(&self, alternative: Alternative) -> &[TermInterval; CRITERIA_COUNT] {
        &self.cells[alternative.index()]
    }
}

impl fmt::Display for EnvelopeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (alt, row) in ALTERNATIVES.iter().zip(self.cells.iter()) {
            write!(f, "{:>5}:", alt.name())?;
            for (j, iv) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, " {iv}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_matrix_round_trips_through_display_cells() {
        let m = ExpressionMatrix::reference();
        assert_eq!(
            m.cell(Alternative::ClusterHead, 0).to_string(),
            "greater than h"
        );
        assert_eq!(
            m.cell(Alternative::ClusterMember, 1).to_string(),
            "between vl and h"
        );
        assert_eq!(m.cell(Alternative::Relay, 2).to_string(), "lower than h");
    }

    #[test]
    fn parse_rejects_wrong_shape() {
        assert!(ExpressionMatrix::parse("greater than h").is_err());
        let short_row = "m, m, m, m, m\nm, m, m, m, m, m\nm, m, m, m, m, m";
        assert!(ExpressionMatrix::parse(short_row).is_err());
    }

    #[test]
    fn from_criteria_on_peak_values_uses_singleton_anchors() {
        let criteria = CriteriaVector::new([0.5; CRITERIA_COUNT]).unwrap();
        let m = ExpressionMatrix::from_criteria(&criteria);
        // Benefit slot: strictly above the medium anchor.
        assert_eq!(
            m.cell(Alternative::ClusterHead, 0).to_string(),
            "greater than m"
        );
        // Neutral slot with equal anchors degrades to the singleton.
        assert_eq!(m.cell(Alternative::ClusterMember, 0).to_string(), "m");
    }

    #[test]
    fn from_criteria_boundary_values_do_not_produce_empty_sets() {
        let high = CriteriaVector::new([1.0; CRITERIA_COUNT]).unwrap();
        let low = CriteriaVector::new([0.0; CRITERIA_COUNT]).unwrap();
        for criteria in [high, low] {
            let m = ExpressionMatrix::from_criteria(&criteria);
            assert!(m.transform().is_ok());
        }
    }
}
