//! Canonical labelling by individualization and refinement.
//!
//! Every leaf of the search tree (a discrete ordered partition) induces a
//! relabelling; the certificate is the lexicographically smallest relabelled
//! adjacency matrix over all leaves. There is no automorphism pruning, so the
//! cost grows with the automorphism group. That is fine for the graphs this
//! crate classifies (at most a few thousand leaves on 16 vertices).

use std::fmt;

use super::graph::Graph;
use crate::error::{Error, Result};

/// Largest supported order; each vertex fits in one `u64` mask.
pub const MAX_CANON_ORDER: usize = 64;

/// Certificate of an isomorphism class: equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    rows: &'a [u64],
    best: Option<Vec<u64>>,
    best_order: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode> {
    let (code, _) = canonical_labeling(g)?;
    Ok(code)
}

/// Returns the certificate and the vertex order realising it
/// (`order[k]` is the original vertex placed at position `k`).
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalCode, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::SizeExceeded { what: "vertex count for canonical labelling", got: n, limit: MAX_CANON_ORDER });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v).first().copied().unwrap_or(0)).collect();
    let mut search = Search { rows: &rows, best: None, best_order: Vec::new() };
    if n > 0 {
        let cells = refine(&rows, vec![(0..n).collect()]);
        search.descend(cells);
    }
    let mut bytes = Vec::with_capacity(1 + 8 * n);
    bytes.push(n as u8);
    for w in search.best.unwrap_or_default() {
        bytes.extend_from_slice(&w.to_be_bytes());
    }
    Ok((CanonicalCode(bytes), search.best_order))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

impl Search<'_> {
    fn descend(&mut self, cells: Cells) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            self.leaf(&cells);
            return;
        };
        for &x in &cells[t] {
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![x]);
            next.push(cells[t].iter().copied().filter(|&y| y != x).collect());
            next.extend_from_slice(&cells[t + 1..]);
            let next = refine(self.rows, next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let n = order.len();
        let mut pos = [0usize; MAX_CANON_ORDER];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        // Rows in MSB-first order so u64 comparison is lexicographic on bits.
        let code: Vec<u64> = order
            .iter()
            .map(|&v| {
                let mut w = 0u64;
                let mut r = self.rows[v];
                while r != 0 {
                    let u = r.trailing_zeros() as usize;
                    r &= r - 1;
                    w |= 1u64 << (63 - pos[u]);
                }
                w
            })
            .collect();
        debug_assert_eq!(code.len(), n);
        if self.best.as_ref().is_none_or(|b| code < *b) {
            self.best = Some(code);
            self.best_order = order;
        }
    }
}

fn mask_of(cell: &[usize]) -> u64 {
    cell.iter().fold(0u64, |m, &v| m | 1 << v)
}

/// Equitable refinement: split every cell by neighbour counts into each
/// splitter cell until stable. Sub-cells are ordered by ascending count, so
/// the result depends only on the structure, not on vertex names.
fn refine(rows: &[u64], mut cells: Cells) -> Cells {
    let mut i = 0;
    while i < cells.len() {
        let wmask = mask_of(&cells[i]);
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell.iter().map(|&v| ((rows[v] & wmask).count_ones(), v)).collect();
            keyed.sort_unstable();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|&(_, v)| v).collect());
                    start = k;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                split = true;
            }
        }
        cells = next;
        if split {
            i = 0;
        } else {
            i += 1;
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::ops::complete_bipartite;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)))
    }

    #[test]
    fn relabelled_c4_agrees() {
        let g = complete_bipartite(2, 2);
        let h = g.relabel(&[3, 1, 0, 2]);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_eq!(canonical_form(&cycle(4)).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn cycle_and_path_differ() {
        assert_ne!(canonical_form(&cycle(5)).unwrap(), canonical_form(&path(5)).unwrap());
        // same edge count, different structure
        let p4_plus = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]);
        assert_ne!(canonical_form(&cycle(5)).unwrap(), canonical_form(&p4_plus).unwrap());
    }

    #[test]
    fn labeling_reproduces_code() {
        let g = path(6);
        let (code, order) = canonical_labeling(&g).unwrap();
        let mut perm = vec![0; 6];
        for (k, &v) in order.iter().enumerate() {
            perm[v] = k;
        }
        let relabelled = g.relabel(&perm);
        assert_eq!(canonical_labeling(&relabelled).unwrap().0, code);
    }

    #[test]
    fn empty_and_oversized() {
        assert_eq!(canonical_form(&Graph::empty(0)).unwrap(), canonical_form(&Graph::empty(0)).unwrap());
        assert_ne!(canonical_form(&Graph::empty(1)).unwrap(), canonical_form(&Graph::empty(2)).unwrap());
        assert!(matches!(canonical_form(&Graph::empty(65)), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn two_regular_graphs_on_six_vertices() {
        let c6 = cycle(6);
        let two_c3 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&c6, &two_c3).unwrap());
        assert!(is_isomorphic(&c6, &c6.relabel(&[5, 3, 1, 0, 2, 4])).unwrap());
    }
}
