use serde::{Deserialize, Serialize};

use super::cnf::color_var;
use super::{encode_cnf, sat_solve, Budget, Hypergraph, RamseyError, SatOutcome};
use crate::colorings::ColorAssignment;

/// One finite `C` tested for the degree, with optional known colorings.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub label: String,
    pub graph: Hypergraph,
    pub hints: Vec<ColorAssignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationDegree {
    pub label: String,
    pub a_copies: usize,
    pub b_copies: usize,
    /// Largest `t` for which some coloring is known to use more than `t`
    /// colors on every B-copy.
    pub t_known: u32,
    /// Whether `t_known + 1` colors are certified unavoidable.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub r: u32,
    /// Least degree any tested `C` could certify; `None` if no `C` has a B-copy.
    pub lower: Option<u32>,
    /// Least degree some tested `C` does certify.
    pub upper: Option<u32>,
    pub truncations: Vec<TruncationDegree>,
}

/// Bounds the r-color Ramsey degree restricted to the listed truncations.
///
/// For each `C`, `t` is raised while `encode_cnf(t)` is satisfiable; the
/// first unsatisfiable `t` shows every coloring is `t`-chromatic on some
/// B-copy, so this `C` certifies degree `t`.
pub fn ramsey_degree_bounds(
    truncations: &[Truncation],
    r: u32,
    budget: &Budget,
) -> Result<DegreeBounds, RamseyError> {
    if r == 0 {
        return Err(RamseyError::Precondition(
            "at least one color is required".into(),
        ));
    }
    let mut out = Vec::new();
    for tr in truncations {
        let g = &tr.graph;
        let mut t_known = 0;
        for h in &tr.hints {
            if let Some(&m) = g.chromatic_counts(h)?.iter().min() {
                t_known = t_known.max(m.saturating_sub(1));
            }
        }
        let mut exact = false;
        if g.num_edges() > 0 {
            loop {
                let t = t_known + 1;
                if t >= r {
                    exact = true;
                    break;
                }
                let f = match encode_cnf(g, r, t, budget.max_variables) {
                    Ok(f) => f,
                    Err(RamseyError::Budget { .. }) => break,
                    Err(e) => return Err(e),
                };
                match sat_solve(&f, budget.max_decisions).0 {
                    SatOutcome::Sat(model) => {
                        let ru = r as usize;
                        let labels = (0..g.vertices())
                            .map(|v| {
                                (0..ru)
                                    .find(|&c| model[color_var(v, c, ru) as usize - 1])
                                    .unwrap_or(0) as u32
                            })
                            .collect();
                        let counts = g.chromatic_counts(&ColorAssignment { r, labels })?;
                        let m = counts.into_iter().min().unwrap_or(0);
                        debug_assert!(m > t);
                        t_known = m - 1;
                    }
                    SatOutcome::Unsat => {
                        exact = true;
                        break;
                    }
                    SatOutcome::Unknown => break,
                }
            }
        }
        out.push(TruncationDegree {
            label: tr.label.clone(),
            a_copies: g.vertices(),
            b_copies: g.num_edges(),
            t_known,
            exact,
        });
    }
    let live = || out.iter().filter(|d| d.b_copies > 0);
    let lower = live().map(|d| d.t_known + 1).min();
    let upper = live().filter(|d| d.exact).map(|d| d.t_known + 1).min();
    Ok(DegreeBounds {
        r,
        lower,
        upper,
        truncations: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(label: &str, g: Hypergraph) -> Vec<Truncation> {
        vec![Truncation {
            label: label.into(),
            graph: g,
            hints: Vec::new(),
        }]
    }

    #[test]
    fn a_equals_b_has_degree_one() {
        let g = Hypergraph::new(5, (0..5).map(|i| vec![i])).unwrap();
        for r in 1..4 {
            let d = ramsey_degree_bounds(&single("A=B", g.clone()), r, &Budget::default()).unwrap();
            assert_eq!((d.lower, d.upper), (Some(1), Some(1)));
        }
    }

    #[test]
    fn one_edge_of_three_needs_two_colors() {
        let g = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let d = ramsey_degree_bounds(&single("plane", g.clone()), 2, &Budget::default()).unwrap();
        assert_eq!((d.lower, d.upper), (Some(2), Some(2)));
        let d = ramsey_degree_bounds(&single("plane", g), 5, &Budget::default()).unwrap();
        assert_eq!((d.lower, d.upper), (Some(3), Some(3)));
    }

    #[test]
    fn no_b_copies_gives_no_bounds() {
        let g = Hypergraph::new(3, Vec::<Vec<u32>>::new()).unwrap();
        let d = ramsey_degree_bounds(&single("empty", g), 2, &Budget::default()).unwrap();
        assert_eq!((d.lower, d.upper), (None, None));
    }
}
