use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::cnf::color_var;
use super::exhaustive::exhaustive_search;
use super::{
    check_coloring, encode_cnf, sat_solve, ArrowResult, ArrowStats, Budget, CheckOutcome,
    Hypergraph, RamseyError, SatOutcome, Verdict,
};
use crate::colorings::ColorAssignment;
use crate::par::Parallelism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Sat,
    /// Exhaustive when the coloring count fits the budget, SAT otherwise.
    Auto,
}

/// Decides `C -> (B)^A_r` on the copy hypergraph.
///
/// Each hint is checked first; a hint with no monochromatic edge settles
/// the instance as `Fails`. Budget exhaustion yields `Unknown`.
pub fn arrow_decide(
    graph: &Hypergraph,
    r: u32,
    method: Method,
    hints: &[ColorAssignment],
    budget: &Budget,
    mode: Parallelism,
) -> Result<ArrowResult, RamseyError> {
    let start = Instant::now();
    let mut stats = ArrowStats {
        a_copies: graph.vertices(),
        b_copies: graph.num_edges(),
        ..ArrowStats::default()
    };
    let finish = |verdict, witness, mut stats: ArrowStats| {
        stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(ArrowResult {
            verdict,
            witness,
            stats,
        })
    };
    if r == 0 {
        return Err(RamseyError::Precondition(
            "at least one color is required".into(),
        ));
    }
    for h in hints {
        if h.r != r {
            return Err(RamseyError::Precondition(format!(
                "hint uses {} colors, instance {r}",
                h.r
            )));
        }
        stats.colorings_examined += 1;
        if check_coloring(graph, h, mode)? == CheckOutcome::NoMonoCopy {
            stats.method = "hint".into();
            return finish(Verdict::Fails, Some(h.clone()), stats);
        }
    }
    let fits = (r as u64)
        .checked_pow(graph.vertices().saturating_sub(1) as u32)
        .is_some_and(|t| t <= budget.max_colorings);
    let use_sat = match method {
        Method::Exhaustive => false,
        Method::Sat => true,
        Method::Auto => !fits,
    };
    if !use_sat {
        stats.method = "exhaustive".into();
        if !fits {
            return finish(
                Verdict::Unknown(format!(
                    "{r}^{} colorings exceed budget",
                    graph.vertices().saturating_sub(1)
                )),
                None,
                stats,
            );
        }
        let out = exhaustive_search(graph, r, budget.max_colorings, mode)?;
        stats.colorings_examined += out.examined;
        return match out.witness {
            Some(labels) => finish(Verdict::Fails, Some(ColorAssignment { r, labels }), stats),
            None => finish(Verdict::Holds, None, stats),
        };
    }
    stats.method = "sat".into();
    let f = match encode_cnf(graph, r, 1, budget.max_variables) {
        Ok(f) => f,
        Err(RamseyError::Budget {
            what,
            needed,
            limit,
        }) => {
            return finish(
                Verdict::Unknown(format!("{what}: {needed} > {limit}")),
                None,
                stats,
            )
        }
        Err(e) => return Err(e),
    };
    let (outcome, decisions) = sat_solve(&f, budget.max_decisions);
    stats.sat_decisions = decisions;
    match outcome {
        SatOutcome::Unsat => finish(Verdict::Holds, None, stats),
        SatOutcome::Unknown => finish(
            Verdict::Unknown(format!("{decisions} SAT decisions")),
            None,
            stats,
        ),
        SatOutcome::Sat(model) => {
            let ru = r as usize;
            let labels = (0..graph.vertices())
                .map(|v| {
                    (0..ru)
                        .find(|&c| model[color_var(v, c, ru) as usize - 1])
                        .expect("at-least-one clause") as u32
                })
                .collect();
            let witness = ColorAssignment { r, labels };
            debug_assert_eq!(
                check_coloring(graph, &witness, mode)?,
                CheckOutcome::NoMonoCopy
            );
            finish(Verdict::Fails, Some(witness), stats)
        }
    }
}
