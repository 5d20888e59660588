use std::fmt;

use crate::term::{Hflts, LinguisticTerm, TERM_COUNT};
use crate::HfltsError;

/// The three node roles, in ranking-tie-break order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Alternative {
    ClusterHead,
    ClusterMember,
    Relay,
}

/// All alternatives in tie-break order.
pub const ALTERNATIVES: [Alternative; 3] = [
    Alternative::ClusterHead,
    Alternative::ClusterMember,
    Alternative::Relay,
];

impl Alternative {
    pub fn index(self) -> usize {
        match self {
            Alternative::ClusterHead => 0,
            Alternative::ClusterMember => 1,
            Alternative::Relay => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alternative::ClusterHead => "CH",
            Alternative::ClusterMember => "CM",
            Alternative::Relay => "Relay",
        }
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A comparative linguistic expression over the term scale.
///
/// The comparative forms are strict: `greater than h` expands to the terms
/// strictly above `h`, and `lower than m` to the terms strictly below `m`.
/// `between` is inclusive on both anchors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrammarExpression {
    Single(LinguisticTerm),
    GreaterThan(LinguisticTerm),
    LowerThan(LinguisticTerm),
    Between(LinguisticTerm, LinguisticTerm),
}

impl GrammarExpression {
    /// Builds a `between` expression, validating anchor order.
    pub fn between(lo: LinguisticTerm, hi: LinguisticTerm) -> Result<Self, HfltsError> {
        if lo > hi {
            return Err(HfltsError::ReversedAnchors(
                lo.label().to_string(),
                hi.label().to_string(),
            ));
        }
        Ok(GrammarExpression::Between(lo, hi))
    }

    /// Expands the expression into its hesitant term set.
    pub fn transform(&self) -> Result<Hflts, HfltsError> {
        match *self {
            GrammarExpression::Single(t) => Ok(Hflts::singleton(t)),
            GrammarExpression::GreaterThan(t) => match t.succ() {
                Some(next) => Hflts::new(next, LinguisticTerm::new(TERM_COUNT)?),
                None => Err(HfltsError::EmptyTransform(self.to_string())),
            },
            GrammarExpression::LowerThan(t) => match t.pred() {
                Some(prev) => Hflts::new(LinguisticTerm::new(1)?, prev),
                None => Err(HfltsError::EmptyTransform(self.to_string())),
            },
            GrammarExpression::Between(lo, hi) => Hflts::new(lo, hi),
        }
    }

    /// Parses the surface syntax: `greater than h`, `lower than m`,
    /// `between l and h` (also `between l & h`), or a bare term label.
    pub fn parse(text: &str) -> Result<Self, HfltsError> {
        let trimmed = text.trim();
        let lowered = trimmed.to_lowercase();
        if let Some(rest) = lowered.strip_prefix("greater than ") {
            return Ok(GrammarExpression::GreaterThan(LinguisticTerm::parse(rest)?));
        }
        if let Some(rest) = lowered.strip_prefix("lower than ") {
            return Ok(GrammarExpression::LowerThan(LinguisticTerm::parse(rest)?));
        }
        if let Some(rest) = lowered.strip_prefix("between ") {
            let (a, b) = rest
                .split_once(" and ")
                .or_else(|| rest.split_once(" & "))
                .or_else(|| rest.split_once('&'))
                .ok_or_else(|| HfltsError::BadTermLabel(trimmed.to_string()))?;
            return GrammarExpression::between(
                LinguisticTerm::parse(a)?,
                LinguisticTerm::parse(b)?,
            );
        }
        Ok(GrammarExpression::Single(LinguisticTerm::parse(trimmed)?))
    }
}

impl fmt::Display for GrammarExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarExpression::Single(t) => write!(f, "{t}"),
            GrammarExpression::GreaterThan(t) => write!(f, "greater than {t}"),
            GrammarExpression::LowerThan(t) => write!(f, "lower than {t}"),
            GrammarExpression::Between(lo, hi) => write!(f, "between {lo} and {hi}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn term(label: &str) -> LinguisticTerm {
        LinguisticTerm::parse(label).unwrap()
    }

    #[test]
    fn greater_than_is_strict() {
        let set = GrammarExpression::GreaterThan(term("h"))
            .transform()
            .unwrap();
        assert_eq!(set.to_string(), "{vh, p}");
    }

    #[test]
    fn lower_than_is_strict() {
        let set = GrammarExpression::LowerThan(term("m")).transform().unwrap();
        assert_eq!(set.to_string(), "{el, vl, l}");
    }

    #[test]
    fn between_is_inclusive() {
        let set = GrammarExpression::between(term("l"), term("h"))
            .unwrap()
            .transform()
            .unwrap();
        assert_eq!(set.to_string(), "{l, m, h}");
    }

    #[test]
    fn boundary_comparatives_are_empty() {
        assert!(GrammarExpression::GreaterThan(term("p"))
            .transform()
            .is_err());
        assert!(GrammarExpression::LowerThan(term("el"))
            .transform()
            .is_err());
    }

    #[test]
    fn parse_round_trips_surface_syntax() {
        for text in [
            "greater than h",
            "lower than m",
            "between l and h",
            "between vl and h",
            "m",
        ] {
            let expr = GrammarExpression::parse(text).unwrap();
            assert_eq!(expr.to_string(), text);
        }
        // Ampersand and underscore spellings normalize to the canonical form.
        let expr = GrammarExpression::parse("between v_l & h").unwrap();
        assert_eq!(expr.to_string(), "between vl and h");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(GrammarExpression::parse("wildly high").is_err());
        assert!(GrammarExpression::parse("between h").is_err());
        assert!(GrammarExpression::parse("between h and l").is_err());
    }

    proptest! {
        // Every valid expression expands to a consecutive run whose envelope
        // bounds are the expression's implied extremes.
        #[test]
        fn transform_yields_consecutive_run(kind in 0..4, a in 1u8..=7, b in 1u8..=7) {
            let (lo, hi) = (a.min(b), a.max(b));
            let expr = match kind {
                0 => GrammarExpression::Single(LinguisticTerm::new(lo).unwrap()),
                1 => GrammarExpression::GreaterThan(LinguisticTerm::new(lo).unwrap()),
                2 => GrammarExpression::LowerThan(LinguisticTerm::new(hi).unwrap()),
                _ => GrammarExpression::between(
                    LinguisticTerm::new(lo).unwrap(),
                    LinguisticTerm::new(hi).unwrap(),
                ).unwrap(),
            };
            if let Ok(set) = expr.transform() {
                let indices: Vec<u8> = set.terms().map(|t| t.index()).collect();
                for w in indices.windows(2) {
                    prop_assert_eq!(w[1], w[0] + 1);
                }
                let env = set.envelope();
                match expr {
                    GrammarExpression::Single(t) => {
                        prop_assert_eq!(env.lower, t);
                        prop_assert_eq!(env.upper, t);
                    }
                    GrammarExpression::GreaterThan(t) => {
                        prop_assert_eq!(env.lower.index(), t.index() + 1);
                        prop_assert_eq!(env.upper.index(), 7);
                    }
                    GrammarExpression::LowerThan(t) => {
                        prop_assert_eq!(env.lower.index(), 1);
                        prop_assert_eq!(env.upper.index(), t.index() - 1);
                    }
                    GrammarExpression::Between(x, y) => {
                        prop_assert_eq!(env.lower, x);
                        prop_assert_eq!(env.upper, y);
                    }
                }
            }
        }
    }
}
