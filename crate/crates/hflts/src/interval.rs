use std::fmt;

use crate::HfltsError;

/// Closed numeric interval inside `[0, 1]`, the 1-cut of a term envelope.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct NumericInterval {
    pub lower: f64,
    pub upper: f64,
}

impl NumericInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self, HfltsError> {
        if lower > upper {
            return Err(HfltsError::ReversedInterval(lower, upper));
        }
        Ok(NumericInterval { lower, upper })
    }
}

impl fmt::Display for NumericInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.4}, {:.4}]", self.lower, self.upper)
    }
}

/// Component-wise interval aggregation across criteria.
///
/// `Optimistic` keeps the best case (maximum of lower bounds, maximum of
/// upper bounds); `Pessimistic` keeps the worst case (component-wise
/// minimum).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AggregationMode {
    Optimistic,
    Pessimistic,
}

/// Aggregates per-criterion intervals into a single interval for one
/// alternative. Empty input yields the degenerate `[0, 0]`.
pub fn aggregate_intervals(
    intervals: &[NumericInterval],
    mode: AggregationMode,
) -> NumericInterval {
    let mut iter = intervals.iter();
    let Some(first) = iter.next() else {
        return NumericInterval {
            lower: 0.0,
            upper: 0.0,
        };
    };
    let mut acc = *first;
    for iv in iter {
        match mode {
            AggregationMode::Optimistic => {
                acc.lower = acc.lower.max(iv.lower);
                acc.upper = acc.upper.max(iv.upper);
            }
            AggregationMode::Pessimistic => {
                acc.lower = acc.lower.min(iv.lower);
                acc.upper = acc.upper.min(iv.upper);
            }
        }
    }
    acc
}

/// Possibility degree that the interval dominates the full unit interval:
/// `max(1 - max((1 - lower) / (upper - lower + 1), 0), 0)`.
///
/// Equals 1 exactly when `lower` is 1 and grows with `lower` for a fixed
/// `upper`.
pub fn possibility_rank(interval: NumericInterval) -> f64 {
    let ratio = (1.0 - interval.lower) / (interval.upper - interval.lower + 1.0);
    (1.0 - ratio.max(0.0)).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lower: f64, upper: f64) -> NumericInterval {
        NumericInterval::new(lower, upper).unwrap()
    }

    #[test]
    fn rank_hand_values() {
        assert!((possibility_rank(iv(1.0, 1.0)) - 1.0).abs() < 1e-12);
        assert!((possibility_rank(iv(0.0, 1.0)) - 0.5).abs() < 1e-12);
        assert!((possibility_rank(iv(5.0 / 6.0, 1.0)) - 6.0 / 7.0).abs() < 1e-12);
        assert_eq!(possibility_rank(iv(0.0, 0.0)), 0.0);
    }

    #[test]
    fn optimistic_takes_component_wise_max() {
        // Intervals from the reference matrix's first row.
        let row = [
            iv(5.0 / 6.0, 1.0),
            iv(5.0 / 6.0, 1.0),
            iv(0.0, 1.0 / 3.0),
            iv(5.0 / 6.0, 1.0),
            iv(0.0, 1.0 / 3.0),
            iv(2.0 / 3.0, 1.0),
        ];
        let agg = aggregate_intervals(&row, AggregationMode::Optimistic);
        assert_eq!(agg, iv(5.0 / 6.0, 1.0));
        let agg = aggregate_intervals(&row, AggregationMode::Pessimistic);
        assert_eq!(agg, iv(0.0, 1.0 / 3.0));
    }

    #[test]
    fn identical_intervals_aggregate_to_themselves() {
        let row = [iv(0.25, 0.5); 6];
        for mode in [AggregationMode::Optimistic, AggregationMode::Pessimistic] {
            assert_eq!(aggregate_intervals(&row, mode), iv(0.25, 0.5));
        }
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(NumericInterval::new(0.7, 0.3).is_err());
    }

    proptest! {
        #[test]
        fn rank_is_monotone_in_lower_bound(a in 0.0f64..=1.0, b in 0.0f64..=1.0, u in 0.0f64..=1.0) {
            let (lo1, lo2) = (a.min(b), a.max(b));
            let upper = u.max(lo2);
            let r1 = possibility_rank(iv(lo1, upper));
            let r2 = possibility_rank(iv(lo2, upper));
            prop_assert!(r2 >= r1 - 1e-15);
        }

        #[test]
        fn rank_is_one_iff_lower_is_one(lo in 0.0f64..=1.0) {
            let r = possibility_rank(iv(lo, 1.0));
            if lo == 1.0 {
                prop_assert_eq!(r, 1.0);
            } else {
                prop_assert!(r < 1.0);
            }
            prop_assert!((0.0..=1.0).contains(&r));
        }
    }
}
