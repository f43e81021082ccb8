use serde::{Deserialize, Serialize};

use super::RamseyError;
use crate::colorings::ColorAssignment;
use crate::par::{find_map_first, Parallelism};

/// Edges stored contiguously; each edge is a sorted, duplicate-free list
/// of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    vertices: usize,
    edge_start: Vec<usize>,
    members: Vec<u32>,
}

impl Hypergraph {
    pub fn new(
        vertices: usize,
        edges: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self, RamseyError> {
        let mut edge_start = vec![0];
        let mut members = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if let Some(&v) = e.last() {
                if v as usize >= vertices {
                    return Err(RamseyError::Precondition(format!(
                        "edge member {v} out of range for {vertices} vertices"
                    )));
                }
            }
            members.extend(e);
            edge_start.push(members.len());
        }
        Ok(Self {
            vertices,
            edge_start,
            members,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_start.len() - 1
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.members[self.edge_start[i]..self.edge_start[i + 1]]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.num_edges()).map(|i| self.edge(i))
    }

    pub fn incidences(&self) -> usize {
        self.members.len()
    }

    /// Vertex-to-edge incidence in the same compressed layout.
    pub(crate) fn incidence(&self) -> (Vec<usize>, Vec<u32>) {
        let mut deg = vec![0usize; self.vertices + 1];
        for &v in &self.members {
            deg[v as usize + 1] += 1;
        }
        for i in 0..self.vertices {
            deg[i + 1] += deg[i];
        }
        let mut fill = deg.clone();
        let mut out = vec![0u32; self.members.len()];
        for e in 0..self.num_edges() {
            for &v in self.edge(e) {
                out[fill[v as usize]] = e as u32;
                fill[v as usize] += 1;
            }
        }
        (deg, out)
    }

    /// Number of distinct labels on each edge.
    pub fn chromatic_counts(&self, coloring: &ColorAssignment) -> Result<Vec<u32>, RamseyError> {
        self.check_len(coloring)?;
        Ok(self
            .edges()
            .map(|e| {
                let mask = e.iter().fold(0u128, |m, &v| {
                    m | 1u128 << coloring.labels[v as usize].min(127)
                });
                mask.count_ones()
            })
            .collect())
    }

    fn check_len(&self, coloring: &ColorAssignment) -> Result<(), RamseyError> {
        if coloring.labels.len() != self.vertices {
            return Err(RamseyError::PartialColoring {
                got: coloring.labels.len(),
                expected: self.vertices,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    /// First edge, in index order, whose members share `label`.
    Monochromatic {
        edge: usize,
        label: u32,
    },
    NoMonoCopy,
}

const CHECK_CHUNK: usize = 4096;

/// Scans every edge for one whose vertices all carry the same label. An
/// empty edge counts as monochromatic with label 0.
pub fn check_coloring(
    graph: &Hypergraph,
    coloring: &ColorAssignment,
    mode: Parallelism,
) -> Result<CheckOutcome, RamseyError> {
    graph.check_len(coloring)?;
    let labels = &coloring.labels;
    let mono = |e: usize| -> Option<u32> {
        let edge = graph.edge(e);
        let Some(&first) = edge.first() else {
            return Some(0);
        };
        let l = labels[first as usize];
        edge.iter().all(|&v| labels[v as usize] == l).then_some(l)
    };
    let chunks: Vec<(usize, usize)> = (0..graph.num_edges())
        .step_by(CHECK_CHUNK)
        .map(|s| (s, (s + CHECK_CHUNK).min(graph.num_edges())))
        .collect();
    Ok(find_map_first(mode, &chunks, |&(s, t)| {
        (s..t).find_map(|e| mono(e).map(|label| CheckOutcome::Monochromatic { edge: e, label }))
    })
    .unwrap_or(CheckOutcome::NoMonoCopy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_examples() {
        let g = Hypergraph::new(3, [vec![0, 1], vec![2, 1]]).unwrap();
        assert_eq!(g.edge(1), &[1, 2]);
        let c = ColorAssignment {
            r: 2,
            labels: vec![0, 1, 0],
        };
        assert_eq!(
            check_coloring(&g, &c, Parallelism::Sequential).unwrap(),
            CheckOutcome::NoMonoCopy
        );
        let c = ColorAssignment {
            r: 2,
            labels: vec![1, 1, 1],
        };
        assert_eq!(
            check_coloring(&g, &c, Parallelism::Parallel).unwrap(),
            CheckOutcome::Monochromatic { edge: 0, label: 1 }
        );
        let short = ColorAssignment {
            r: 2,
            labels: vec![0],
        };
        assert!(matches!(
            check_coloring(&g, &short, Parallelism::Sequential),
            Err(RamseyError::PartialColoring {
                got: 1,
                expected: 3
            })
        ));
        assert_eq!(
            g.chromatic_counts(&ColorAssignment {
                r: 2,
                labels: vec![0, 1, 1]
            })
            .unwrap(),
            vec![2, 1]
        );
    }

    #[test]
    fn incidence_is_transpose() {
        let g = Hypergraph::new(4, [vec![0, 1, 3], vec![1, 2], vec![3]]).unwrap();
        let (start, edges) = g.incidence();
        assert_eq!(&edges[start[1]..start[2]], &[0, 1]);
        assert_eq!(&edges[start[3]..start[4]], &[0, 2]);
        assert!(Hypergraph::new(2, [vec![2]]).is_err());
    }
}
