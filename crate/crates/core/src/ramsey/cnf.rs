use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Hypergraph, RamseyError};

/// Clauses over variables `1..=num_vars`, literals as signed integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    /// Meaning of variable `i + 1`.
    pub manifest: Vec<VarMeaning>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarMeaning {
    /// A-copy `copy` takes `color`.
    Color { copy: u32, color: u32 },
    /// `color` occurs on B-copy `edge`.
    EdgeColor { edge: u32, color: u32 },
}

impl CnfFormula {
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").expect("string write");
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn manifest_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num_vars": self.num_vars,
            "num_clauses": self.clauses.len(),
            "variables": self
                .manifest
                .iter()
                .enumerate()
                .map(|(i, m)| serde_json::json!({ "var": i + 1, "meaning": m }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// Variable of "copy `v` has color `c`".
pub(crate) fn color_var(v: usize, c: usize, r: usize) -> i32 {
    (v * r + c + 1) as i32
}

/// Satisfiable iff some r-coloring uses more than `t` colors on every
/// edge. For `t = 1`, each edge gets one clause per color forbidding that
/// color on all of it. For larger `t`, auxiliary `y_{e,c}` imply that
/// color `c` occurs on edge `e`, and every set of `r - t` colors must
/// contain a true `y`.
pub fn encode_cnf(
    graph: &Hypergraph,
    r: u32,
    t: u32,
    max_variables: u64,
) -> Result<CnfFormula, RamseyError> {
    if t < 1 || r < 1 {
        return Err(RamseyError::Precondition(
            "encode_cnf needs t >= 1 and r >= 1".into(),
        ));
    }
    let r = r as usize;
    let n = graph.vertices();
    let aux = if t > 1 && (t as usize) < r {
        graph.num_edges() * r
    } else {
        0
    };
    let total = (n * r + aux) as u64;
    if total > max_variables || total > i32::MAX as u64 {
        return Err(RamseyError::Budget {
            what: "variables",
            needed: total.to_string(),
            limit: max_variables,
        });
    }
    let mut manifest = Vec::with_capacity(total as usize);
    for v in 0..n {
        for c in 0..r {
            manifest.push(VarMeaning::Color {
                copy: v as u32,
                color: c as u32,
            });
        }
    }
    let mut clauses = Vec::new();
    for v in 0..n {
        clauses.push((0..r).map(|c| color_var(v, c, r)).collect());
        for c in 0..r {
            for d in c + 1..r {
                clauses.push(vec![-color_var(v, c, r), -color_var(v, d, r)]);
            }
        }
    }
    let t = t as usize;
    if t >= r {
        // more than r colors is impossible
        for _ in graph.edges() {
            clauses.push(Vec::new());
        }
    } else if t == 1 {
        for e in graph.edges() {
            for c in 0..r {
                clauses.push(e.iter().map(|&v| -color_var(v as usize, c, r)).collect());
            }
        }
    } else {
        let y0 = n * r;
        let subsets = combinations(r, r - t);
        for (ei, e) in graph.edges().enumerate() {
            for c in 0..r {
                manifest.push(VarMeaning::EdgeColor {
                    edge: ei as u32,
                    color: c as u32,
                });
            }
            let y = |c: usize| (y0 + ei * r + c + 1) as i32;
            for c in 0..r {
                let mut clause = vec![-y(c)];
                clause.extend(e.iter().map(|&v| color_var(v as usize, c, r)));
                clauses.push(clause);
            }
            for s in &subsets {
                clauses.push(s.iter().map(|&c| y(c)).collect());
            }
        }
    }
    Ok(CnfFormula {
        num_vars: total as u32,
        clauses,
        manifest,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_copy_instance_counts() {
        let g = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let f = encode_cnf(&g, 2, 1, 100).unwrap();
        assert_eq!(f.num_vars, 6);
        assert_eq!(f.clauses.len(), 8);
        assert!(f.to_dimacs().starts_with("p cnf 6 8\n"));
        assert_eq!(f.manifest[3], VarMeaning::Color { copy: 1, color: 1 });
    }

    #[test]
    fn higher_threshold_adds_auxiliaries() {
        let g = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let f = encode_cnf(&g, 4, 2, 100).unwrap();
        assert_eq!(f.num_vars, 12 + 4);
        // 3 ALO + 3*6 AMO + 4 implications + C(4,2) subset clauses
        assert_eq!(f.clauses.len(), 3 + 18 + 4 + 6);
        assert_eq!(f.manifest[12], VarMeaning::EdgeColor { edge: 0, color: 0 });
        let f = encode_cnf(&g, 2, 2, 100).unwrap();
        assert!(f.clauses.iter().any(|c| c.is_empty()));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Hypergraph::new(10, [vec![0]]).unwrap();
        assert!(matches!(
            encode_cnf(&g, 3, 1, 20),
            Err(RamseyError::Budget { .. })
        ));
        assert!(encode_cnf(&g, 3, 0, 100).is_err());
    }
}
