//! Cell-for-cell checks of the built-in reference role matrix through the
//! whole pipeline: expressions -> term sets -> envelopes -> ranking.

use hflts::{
    possibility_rank, Alternative, DecisionEngine, ExpressionMatrix, NumericInterval, Status,
    ALTERNATIVES,
};

const EXPECTED_EXPRESSIONS: [[&str; 6]; 3] = [
    [
        "greater than h",
        "greater than h",
        "lower than m",
        "greater than h",
        "lower than m",
        "between h and p",
    ],
    [
        "between l and h",
        "between vl and h",
        "between l and vh",
        "greater than m",
        "between l and vh",
        "between m and vh",
    ],
    [
        "greater than l",
        "between vl and h",
        "lower than h",
        "greater than m",
        "lower than m",
        "between h and p",
    ],
];

const EXPECTED_TERM_SETS: [[&str; 6]; 3] = [
    [
        "{vh, p}",
        "{vh, p}",
        "{el, vl, l}",
        "{vh, p}",
        "{el, vl, l}",
        "{h, vh, p}",
    ],
    [
        "{l, m, h}",
        "{vl, l, m, h}",
        "{l, m, h, vh}",
        "{h, vh, p}",
        "{l, m, h, vh}",
        "{m, h, vh}",
    ],
    [
        "{m, h, vh, p}",
        "{vl, l, m, h}",
        "{el, vl, l, m}",
        "{h, vh, p}",
        "{el, vl, l}",
        "{h, vh, p}",
    ],
];

const EXPECTED_ENVELOPES: [[&str; 6]; 3] = [
    [
        "[vh, p]", "[vh, p]", "[el, l]", "[vh, p]", "[el, l]", "[h, p]",
    ],
    [
        "[l, h]", "[vl, h]", "[l, vh]", "[h, p]", "[l, vh]", "[m, vh]",
    ],
    [
        "[m, p]", "[vl, h]", "[el, m]", "[h, p]", "[el, l]", "[h, p]",
    ],
];

#[test]
fn expressions_match_all_18_cells() {
    let matrix = ExpressionMatrix::reference();
    for alt in ALTERNATIVES {
        for (j, expected) in EXPECTED_EXPRESSIONS[alt.index()].iter().enumerate() {
            assert_eq!(
                matrix.cell(alt, j).to_string(),
                *expected,
                "expression cell ({alt}, c{})",
                j + 1
            );
        }
    }
}

#[test]
fn term_sets_match_all_18_cells() {
    let transformed = ExpressionMatrix::reference().transform().unwrap();
    for alt in ALTERNATIVES {
        for (j, expected) in EXPECTED_TERM_SETS[alt.index()].iter().enumerate() {
            assert_eq!(
                transformed.cell(alt, j).to_string(),
                *expected,
                "term set cell ({alt}, c{})",
                j + 1
            );
        }
    }
}

#[test]
fn envelopes_match_all_18_cells() {
    let envelopes = ExpressionMatrix::reference()
        .transform()
        .unwrap()
        .envelopes();
    for alt in ALTERNATIVES {
        for (j, expected) in EXPECTED_ENVELOPES[alt.index()].iter().enumerate() {
            assert_eq!(
                envelopes.cell(alt, j).to_string(),
                *expected,
                "envelope cell ({alt}, c{})",
                j + 1
            );
        }
    }
}

#[test]
fn optimistic_ranking_puts_cluster_head_first() {
    let matrix = ExpressionMatrix::reference();
    let decision = DecisionEngine::default()
        .decide_with_matrix(&matrix, Status::Optimistic)
        .unwrap();
    let ch = decision.ranks[Alternative::ClusterHead.index()];
    assert!((ch - 6.0 / 7.0).abs() < 1e-12);
    assert!(ch > decision.ranks[Alternative::ClusterMember.index()]);
    assert!(ch > decision.ranks[Alternative::Relay.index()]);
    assert_eq!(decision.role, Alternative::ClusterHead);
}

#[test]
fn pessimistic_ranking_prefers_role_change() {
    let matrix = ExpressionMatrix::reference();
    let decision = DecisionEngine::default()
        .decide_with_matrix(&matrix, Status::Pessimistic)
        .unwrap();
    // Worst-case row aggregates: CH collapses to its low-band slots while
    // CM keeps a mid band, so the member role wins.
    let ch = decision.ranks[Alternative::ClusterHead.index()];
    let cm = decision.ranks[Alternative::ClusterMember.index()];
    assert!(cm > ch);
    assert_eq!(decision.role, Alternative::ClusterMember);
}

#[test]
fn optimistic_row_aggregates_match_hand_intervals() {
    // Row-wise component maxima of the reference envelopes' 1-cuts.
    let envelopes = ExpressionMatrix::reference()
        .transform()
        .unwrap()
        .envelopes();
    let cuts: Vec<NumericInterval> = envelopes
        .row(Alternative::ClusterHead)
        .iter()
        .map(|iv| iv.one_cut())
        .collect();
    let agg = hflts::aggregate_intervals(&cuts, hflts::AggregationMode::Optimistic);
    assert!((agg.lower - 5.0 / 6.0).abs() < 1e-15);
    assert!((agg.upper - 1.0).abs() < 1e-15);
    assert!((possibility_rank(agg) - 6.0 / 7.0).abs() < 1e-12);
}
