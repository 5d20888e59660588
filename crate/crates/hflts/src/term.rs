use std::fmt;

use crate::HfltsError;

/// Number of terms on the linguistic scale.
pub const TERM_COUNT: u8 = 7;

/// One term of the seven-step linguistic scale, ordered from
/// `el` (extremely low) to `p` (perfect).
///
/// Terms carry a 1-based index; the triangular membership peaks are
/// uniformly spaced on `[0, 1]` at `(index - 1) / 6`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinguisticTerm(u8);

impl LinguisticTerm {
    pub const EXTREMELY_LOW: LinguisticTerm = LinguisticTerm(1);
    pub const VERY_LOW: LinguisticTerm = LinguisticTerm(2);
    pub const LOW: LinguisticTerm = LinguisticTerm(3);
    pub const MEDIUM: LinguisticTerm = LinguisticTerm(4);
    pub const HIGH: LinguisticTerm = LinguisticTerm(5);
    pub const VERY_HIGH: LinguisticTerm = LinguisticTerm(6);
    pub const PERFECT: LinguisticTerm = LinguisticTerm(7);

    pub fn new(index: u8) -> Result<Self, HfltsError> {
        if (1..=TERM_COUNT).contains(&index) {
            Ok(LinguisticTerm(index))
        } else {
            Err(HfltsError::BadTermIndex(index))
        }
    }

    /// 1-based position on the scale.
    pub fn index(self) -> u8 {
        self.0
    }

    /// Short label as used in expression surface syntax.
    pub fn label(self) -> &'static str {
        match self.0 {
            1 => "el",
            2 => "vl",
            3 => "l",
            4 => "m",
            5 => "h",
            6 => "vh",
            _ => "p",
        }
    }

    /// Peak of the term's triangular membership function on `[0, 1]`.
    pub fn peak(self) -> f64 {
        f64::from(self.0 - 1) / f64::from(TERM_COUNT - 1)
    }

    /// Triangular membership degree of `value` for this term.
    ///
    /// Triangles have half-width `1/6`; only adjacent terms overlap, so the
    /// memberships of the covering terms sum to 1 everywhere on `[0, 1]`.
    pub fn membership(self, value: f64) -> f64 {
        let half_width = 1.0 / f64::from(TERM_COUNT - 1);
        let offset = (value - self.peak()).abs();
        if offset >= half_width {
            0.0
        } else {
            1.0 - offset / half_width
        }
    }

    /// Parses a term label. Accepts the underscored spellings
    /// (`v_l`, `v_h`) that appear in written matrices.
    pub fn parse(label: &str) -> Result<Self, HfltsError> {
        let normalized: String = label
            .trim()
            .chars()
            .filter(|c| *c != '_')
            .flat_map(|c| c.to_lowercase())
            .collect();
        match normalized.as_str() {
            "el" => Ok(Self::EXTREMELY_LOW),
            "vl" => Ok(Self::VERY_LOW),
            "l" => Ok(Self::LOW),
            "m" => Ok(Self::MEDIUM),
            "h" => Ok(Self::HIGH),
            "vh" => Ok(Self::VERY_HIGH),
            "p" => Ok(Self::PERFECT),
            _ => Err(HfltsError::BadTermLabel(label.to_string())),
        }
    }

    pub fn succ(self) -> Option<Self> {
        Self::new(self.0 + 1).ok()
    }

    pub fn pred(self) -> Option<Self> {
        if self.0 > 1 {
            Some(LinguisticTerm(self.0 - 1))
        } else {
            None
        }
    }

    /// All seven terms in scale order.
    pub fn all() -> impl Iterator<Item = LinguisticTerm> {
        (1..=TERM_COUNT).map(LinguisticTerm)
    }
}

impl fmt::Display for LinguisticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Memberships of `value` on the linguistic scale.
///
/// Returns the covering terms in scale order with their membership degrees.
/// There is one entry when `value` sits exactly on a peak, two otherwise,
/// and the degrees always sum to 1.
pub fn value_to_terms(value: f64) -> Result<Vec<(LinguisticTerm, f64)>, HfltsError> {
    if !(0.0..=1.0).contains(&value) {
        return Err(HfltsError::ValueOutOfRange(value));
    }
    let scaled = value * f64::from(TERM_COUNT - 1);
    let lower_index = (scaled.floor() as u8).min(TERM_COUNT - 1);
    let fraction = scaled - f64::from(lower_index);
    let lower = LinguisticTerm(lower_index + 1);
    if fraction == 0.0 {
        Ok(vec![(lower, 1.0)])
    } else {
        let upper = LinguisticTerm(lower_index + 2);
        Ok(vec![(lower, 1.0 - fraction), (upper, fraction)])
    }
}

/// Adjacent anchor terms around `value`: the covering terms of
/// [`value_to_terms`], collapsed to an ordered pair (equal on exact peaks).
pub fn anchors(value: f64) -> Result<(LinguisticTerm, LinguisticTerm), HfltsError> {
    let covering = value_to_terms(value)?;
    let lower = covering[0].0;
    let upper = covering.last().expect("nonempty").0;
    Ok((lower, upper))
}

/// A hesitant fuzzy linguistic term set: a nonempty run of consecutive terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Hflts {
    lower: LinguisticTerm,
    upper: LinguisticTerm,
}

impl Hflts {
    pub fn new(lower: LinguisticTerm, upper: LinguisticTerm) -> Result<Self, HfltsError> {
        if lower > upper {
            return Err(HfltsError::ReversedAnchors(
                lower.label().to_string(),
                upper.label().to_string(),
            ));
        }
        Ok(Hflts { lower, upper })
    }

    pub fn singleton(term: LinguisticTerm) -> Self {
        Hflts {
            lower: term,
            upper: term,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = LinguisticTerm> {
        (self.lower.0..=self.upper.0).map(LinguisticTerm)
    }

    pub fn len(&self) -> usize {
        usize::from(self.upper.0 - self.lower.0) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, term: LinguisticTerm) -> bool {
        self.lower <= term && term <= self.upper
    }

    /// Envelope: the interval spanned by the minimum and maximum member.
    pub fn envelope(&self) -> TermInterval {
        TermInterval {
            lower: self.lower,
            upper: self.upper,
        }
    }
}

impl fmt::Display for Hflts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, term) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{term}")?;
        }
        write!(f, "}}")
    }
}

/// Closed interval of linguistic terms, `lower <= upper`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TermInterval {
    pub lower: LinguisticTerm,
    pub upper: LinguisticTerm,
}

impl TermInterval {
    pub fn new(lower: LinguisticTerm, upper: LinguisticTerm) -> Result<Self, HfltsError> {
        if lower > upper {
            return Err(HfltsError::ReversedAnchors(
                lower.label().to_string(),
                upper.label().to_string(),
            ));
        }
        Ok(TermInterval { lower, upper })
    }

    /// 1-cut of the interval: the peak positions of its boundary terms.
    pub fn one_cut(&self) -> crate::NumericInterval {
        crate::NumericInterval {
            lower: self.lower.peak(),
            upper: self.upper.peak(),
        }
    }
}

impl fmt::Display for TermInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn peaks_are_uniform() {
        let peaks: Vec<f64> = LinguisticTerm::all().map(|t| t.peak()).collect();
        assert_eq!(peaks[0], 0.0);
        assert_eq!(peaks[3], 0.5);
        assert_eq!(peaks[6], 1.0);
        for w in peaks.windows(2) {
            assert!((w[1] - w[0] - 1.0 / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn value_on_peak_maps_to_single_term() {
        let covering = value_to_terms(0.5).unwrap();
        assert_eq!(covering, vec![(LinguisticTerm::MEDIUM, 1.0)]);
        let covering = value_to_terms(0.0).unwrap();
        assert_eq!(covering, vec![(LinguisticTerm::EXTREMELY_LOW, 1.0)]);
        let covering = value_to_terms(1.0).unwrap();
        assert_eq!(covering, vec![(LinguisticTerm::PERFECT, 1.0)]);
    }

    #[test]
    fn value_between_peaks_splits_membership() {
        // 0.25 is halfway between the peaks of vl (1/6) and l (2/6).
        let covering = value_to_terms(0.25).unwrap();
        assert_eq!(covering.len(), 2);
        assert_eq!(covering[0].0, LinguisticTerm::VERY_LOW);
        assert_eq!(covering[1].0, LinguisticTerm::LOW);
        assert!((covering[0].1 - 0.5).abs() < 1e-12);
        assert!((covering[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_value_rejected() {
        assert!(value_to_terms(-0.1).is_err());
        assert!(value_to_terms(1.1).is_err());
    }

    #[test]
    fn membership_matches_value_to_terms() {
        for value in [0.0, 0.1, 0.25, 1.0 / 3.0, 0.49, 0.5, 0.75, 0.99, 1.0] {
            for (term, weight) in value_to_terms(value).unwrap() {
                assert!((term.membership(value) - weight).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parse_accepts_underscored_labels() {
        assert_eq!(
            LinguisticTerm::parse("v_l").unwrap(),
            LinguisticTerm::VERY_LOW
        );
        assert_eq!(
            LinguisticTerm::parse("V_H").unwrap(),
            LinguisticTerm::VERY_HIGH
        );
        assert!(LinguisticTerm::parse("zz").is_err());
    }

    #[test]
    fn envelope_of_run_is_its_bounds() {
        let set = Hflts::new(LinguisticTerm::EXTREMELY_LOW, LinguisticTerm::LOW).unwrap();
        let env = set.envelope();
        assert_eq!(env.lower, LinguisticTerm::EXTREMELY_LOW);
        assert_eq!(env.upper, LinguisticTerm::LOW);
        assert_eq!(set.to_string(), "{el, vl, l}");
        assert_eq!(env.to_string(), "[el, l]");
    }

    #[test]
    fn singleton_envelope_is_degenerate() {
        let set = Hflts::singleton(LinguisticTerm::MEDIUM);
        let env = set.envelope();
        assert_eq!(env.lower, env.upper);
        assert_eq!(env.to_string(), "[m, m]");
    }

    #[test]
    fn one_cut_takes_peak_positions() {
        let iv = TermInterval::new(LinguisticTerm::VERY_HIGH, LinguisticTerm::PERFECT).unwrap();
        let cut = iv.one_cut();
        assert_eq!(cut.lower, 5.0 / 6.0);
        assert_eq!(cut.upper, 1.0);

        let degenerate =
            TermInterval::new(LinguisticTerm::EXTREMELY_LOW, LinguisticTerm::EXTREMELY_LOW)
                .unwrap();
        assert_eq!(degenerate.one_cut().lower, 0.0);
        assert_eq!(degenerate.one_cut().upper, 0.0);

        let full =
            TermInterval::new(LinguisticTerm::EXTREMELY_LOW, LinguisticTerm::PERFECT).unwrap();
        assert_eq!(full.one_cut().lower, 0.0);
        assert_eq!(full.one_cut().upper, 1.0);
    }

    proptest! {
        #[test]
        fn coverage_weights_sum_to_one(value in 0.0f64..=1.0) {
            let covering = value_to_terms(value).unwrap();
            let total: f64 = covering.iter().map(|(_, w)| w).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(covering.len() <= 2);
        }

        #[test]
        fn one_cut_is_ordered_unit_interval(lo in 1u8..=7, span in 0u8..=6) {
            let hi = (lo + span).min(7);
            let iv = TermInterval::new(
                LinguisticTerm::new(lo).unwrap(),
                LinguisticTerm::new(hi).unwrap(),
            )
            .unwrap();
            let cut = iv.one_cut();
            prop_assert!(0.0 <= cut.lower);
            prop_assert!(cut.lower <= cut.upper);
            prop_assert!(cut.upper <= 1.0);
        }
    }
}
