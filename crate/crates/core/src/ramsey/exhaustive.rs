use super::{Hypergraph, RamseyError};
use crate::par::{find_map_first, Parallelism};

const TARGET_TASKS: u64 = 64;

pub struct ExhaustiveOutcome {
    /// First defeating coloring in enumeration order.
    pub witness: Option<Vec<u32>>,
    pub examined: u64,
}

/// Searches all r-colorings for one with no monochromatic edge.
///
/// Vertex 0 is pinned to color 0 (relabeling colors preserves defeat).
/// The remaining vertices are split into a high block fixed per task and a
/// low block walked in reflected r-ary Gray order, so each step recolors a
/// single vertex and updates only its incident edge counts.
pub fn exhaustive_search(
    graph: &Hypergraph,
    r: u32,
    max_colorings: u64,
    mode: Parallelism,
) -> Result<ExhaustiveOutcome, RamseyError> {
    if r == 0 {
        return Err(RamseyError::Precondition(
            "at least one color is required".into(),
        ));
    }
    let n = graph.vertices();
    if n == 0 {
        let defeated = graph.num_edges() == 0;
        return Ok(ExhaustiveOutcome {
            witness: defeated.then(Vec::new),
            examined: 1,
        });
    }
    let free = n - 1;
    let total = (r as u64)
        .checked_pow(free as u32)
        .filter(|&t| t <= max_colorings)
        .ok_or_else(|| RamseyError::Budget {
            what: "colorings",
            needed: format!("{r}^{free}"),
            limit: max_colorings,
        })?;
    let mut high = 0;
    while high < free && (r as u64).pow(high as u32) < TARGET_TASKS {
        high += 1;
    }
    let low = free - high;
    let tasks: Vec<u64> = (0..(r as u64).pow(high as u32)).collect();
    let per_task = (r as u64).pow(low as u32);
    let (inc_start, inc_edges) = graph.incidence();
    let ctx = Ctx {
        graph,
        r: r as usize,
        low,
        inc_start: &inc_start,
        inc_edges: &inc_edges,
    };
    let found = find_map_first(mode, &tasks, |&t| {
        ctx.run_task(t).map(|(labels, steps)| (t, labels, steps))
    });
    Ok(match found {
        Some((t, labels, steps)) => ExhaustiveOutcome {
            witness: Some(labels),
            examined: t * per_task + steps,
        },
        None => ExhaustiveOutcome {
            witness: None,
            examined: total,
        },
    })
}

struct Ctx<'a> {
    graph: &'a Hypergraph,
    r: usize,
    low: usize,
    inc_start: &'a [usize],
    inc_edges: &'a [u32],
}

impl Ctx<'_> {
    /// Walks one task; returns the defeating coloring and the number of
    /// colorings visited up to and including it.
    fn run_task(&self, task: u64) -> Option<(Vec<u32>, u64)> {
        let n = self.graph.vertices();
        let r = self.r;
        let mut labels = vec![0u32; n];
        let mut rest = task;
        for label in labels.iter_mut().skip(1 + self.low) {
            *label = (rest % r as u64) as u32;
            rest /= r as u64;
        }
        let ne = self.graph.num_edges();
        let mut counts = vec![0u32; ne * r];
        let mut mono = 0usize;
        for e in 0..ne {
            let edge = self.graph.edge(e);
            for &v in edge {
                counts[e * r + labels[v as usize] as usize] += 1;
            }
            let len = edge.len() as u32;
            if len == 0 || (0..r).any(|c| counts[e * r + c] == len) {
                mono += 1;
            }
        }
        let mut dir = vec![1i8; self.low];
        let mut steps = 1u64;
        loop {
            if mono == 0 {
                return Some((labels, steps));
            }
            // next reflected Gray step over vertices 1..=low
            let mut j = 0;
            let (v, to) = loop {
                if j == self.low {
                    return None;
                }
                let cur = labels[1 + j] as i32;
                let q = cur + dir[j] as i32;
                if q >= 0 && q < r as i32 {
                    break (1 + j, q as u32);
                }
                dir[j] = -dir[j];
                j += 1;
            };
            let from = labels[v] as usize;
            labels[v] = to;
            for &e in &self.inc_edges[self.inc_start[v]..self.inc_start[v + 1]] {
                let e = e as usize;
                let len = self.graph.edge(e).len() as u32;
                let base = e * r;
                if counts[base + from] == len {
                    mono -= 1;
                }
                counts[base + from] -= 1;
                counts[base + to as usize] += 1;
                if counts[base + to as usize] == len {
                    mono += 1;
                }
            }
            steps += 1;
        }
    }
}
