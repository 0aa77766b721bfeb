//! Elementary constructions and structural queries.

use std::collections::BTreeMap;
use std::fmt;

use super::graph::{Graph, VertexSet};

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    assert!(a >= 1 && b >= 1, "complete_bipartite needs positive class sizes");
    let mut g = Graph::empty(a + b);
    for i in 0..a {
        for j in a..a + b {
            g.add_edge(i, j);
        }
    }
    g
}

/// Block-diagonal union; vertex offsets follow the order of `parts`.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::order).sum();
    let mut g = Graph::empty(n);
    let mut offset = 0;
    for p in parts {
        for (a, b) in p.edges() {
            g.add_edge(offset + a, offset + b);
        }
        offset += p.order();
    }
    g
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let mut h = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                h.add_edge(a, b);
            }
        }
    }
    h
}

/// Adds vertex `n` adjacent exactly to `attach`.
pub fn add_apex(g: &Graph, attach: &VertexSet) -> Graph {
    let n = g.order();
    assert!(attach.universe() == n, "attach set must live on the vertices of g");
    let mut h = Graph::empty(n + 1);
    for (a, b) in g.edges() {
        h.add_edge(a, b);
    }
    for v in attach.iter() {
        h.add_edge(v, n);
    }
    h
}

/// Restriction to `s`, renumbered in increasing original order.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Graph {
    let keep: Vec<usize> = s.iter().collect();
    let mut h = Graph::empty(keep.len());
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                h.add_edge(i, j);
            }
        }
    }
    h
}

/// Seidel switching with respect to the two-partition `{u, V \ u}`.
pub fn seidel_switch(g: &Graph, u: &VertexSet) -> Graph {
    let n = g.order();
    assert!(u.universe() == n, "switching set must live on the vertices of g");
    let mut h = g.clone();
    for a in 0..n {
        let ina = u.contains(a);
        for b in a + 1..n {
            if ina != u.contains(b) {
                h.set_edge(a, b, !g.has_edge(a, b));
            }
        }
    }
    h
}

/// Replaces vertex `i` by `sizes[i]` pairwise non-adjacent copies.
pub fn coclique_extension(g: &Graph, sizes: &[usize]) -> Graph {
    assert_eq!(sizes.len(), g.order(), "one size per vertex");
    assert!(sizes.iter().all(|&s| s >= 1), "sizes must be positive");
    let mut start = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        start.push(total);
        total += s;
    }
    let mut h = Graph::empty(total);
    for (a, b) in g.edges() {
        for x in start[a]..start[a] + sizes[a] {
            for y in start[b]..start[b] + sizes[b] {
                h.add_edge(x, y);
            }
        }
    }
    h
}

/// Multiset of valencies, ascending by valency.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valencies(pub Vec<(usize, usize)>);

impl Valencies {
    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&(_, c)| c).sum()
    }

    pub fn count_of(&self, d: usize) -> usize {
        self.0.iter().find(|&&(x, _)| x == d).map_or(0, |&(_, c)| c)
    }
}

impl fmt::Display for Valencies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}^({c})")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Valencies {
    type Err = String;

    /// Parses `d1^(m1),d2^(m2),...`; whitespace around items is ignored.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out: BTreeMap<usize, usize> = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (d, rest) = item.split_once("^(").ok_or_else(|| format!("bad valency item {item:?}"))?;
            let m = rest.strip_suffix(')').ok_or_else(|| format!("bad valency item {item:?}"))?;
            let d: usize = d.trim().parse().map_err(|_| format!("bad valency {d:?}"))?;
            let m: usize = m.trim().parse().map_err(|_| format!("bad multiplicity {m:?}"))?;
            *out.entry(d).or_default() += m;
        }
        Ok(Valencies(out.into_iter().collect()))
    }
}

pub fn valency_histogram(g: &Graph) -> Valencies {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in g.degrees() {
        *counts.entry(d).or_default() += 1;
    }
    Valencies(counts.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub connected: bool,
    pub bipartite: bool,
    pub regular: bool,
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let mut seen = VertexSet::empty(n);
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.len() == n
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let cv = color[v].unwrap();
            for w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        stack.push(w);
                    }
                    Some(cw) if cw == cv => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn classify(g: &Graph) -> Classification {
    Classification {
        connected: is_connected(g),
        bipartite: is_bipartite(g),
        regular: valency_histogram(g).distinct() <= 1,
    }
}

/// Vertex sets of the connected components, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    let mut seen = VertexSet::empty(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VertexSet::empty(n);
        let mut stack = vec![s];
        seen.insert(s);
        comp.insert(s);
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen.contains(w) {
                    seen.insert(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}
