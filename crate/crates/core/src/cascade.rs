//! Finite cascades, multifilters and contours.
//!
//! A cascade is a rooted tree; node 0 is the estuary. Every non-maximal node
//! carries a filter on its list of children, stored as a kernel over child
//! positions. On a finite tree the contour recursion bottoms out at leaves,
//! and a node's contour kernel is the union of the contour kernels of the
//! children in its kernel.

use crate::error::{Error, Result};
use crate::family::{FamilyOfSets, Filter, ProductIndex, Relation, Subset};

/// Node cap for every cascade value.
pub const MAX_NODES: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub children: Vec<usize>,
    /// Kernel over child positions; `None` exactly for maximal nodes.
    pub filter: Option<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cascade {
    nodes: Vec<Node>,
}

impl Cascade {
    pub fn new(nodes: Vec<Node>) -> Result<Self> {
        if nodes.len() > MAX_NODES {
            return Err(Error::NodeCap);
        }
        if nodes.is_empty() {
            return Err(Error::InvalidCascade("no estuary".into()));
        }
        let mut parent = vec![None; nodes.len()];
        for (v, node) in nodes.iter().enumerate() {
            for &c in &node.children {
                if c == 0 || c >= nodes.len() {
                    return Err(Error::InvalidCascade(format!("node {v} has invalid child {c}")));
                }
                if parent[c].replace(v).is_some() {
                    return Err(Error::InvalidCascade(format!("node {c} has two parents")));
                }
            }
            match (&node.filter, node.children.len()) {
                (None, 0) => {}
                (Some(k), m) if m > 0 => {
                    if k.ground_size() != m {
                        return Err(Error::InvalidCascade(format!(
                            "filter at node {v} lives on {} points but the node has {m} children",
                            k.ground_size()
                        )));
                    }
                }
                (None, _) => return Err(Error::InvalidCascade(format!("interior node {v} has no filter"))),
                (Some(_), _) => return Err(Error::InvalidCascade(format!("maximal node {v} carries a filter"))),
            }
        }
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidCascade(format!("node {v} is reached twice")));
            }
            stack.extend(&nodes[v].children);
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidCascade(format!("node {v} is not reachable from the estuary")));
        }
        if nodes[0].children.is_empty() {
            return Err(Error::InvalidCascade("the estuary must have successors".into()));
        }
        Ok(Cascade { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].children.is_empty()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// `r(w) = 0` on maximal nodes, `sup (r(v) + 1)` over successors otherwise.
    pub fn rank_of(&self, v: usize) -> usize {
        self.nodes[v].children.iter().map(|&c| self.rank_of(c) + 1).max().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(0)
    }
}

/// A cascade with labels on every non-root node, into an `n`-point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multifilter {
    cascade: Cascade,
    labels: Vec<usize>,
    n: usize,
}

/// Contour filter with the contour kernel of every node.
#[derive(Clone, Debug)]
pub struct ContourResult {
    pub filter: Filter,
    pub trace: Vec<Subset>,
}

impl PartialEq for ContourResult {
    fn eq(&self, other: &Self) -> bool {
        self.filter == other.filter
    }
}

impl Multifilter {
    /// `labels[v]` for `v ≥ 1`; `labels[0]` is ignored.
    pub fn new(cascade: Cascade, labels: Vec<usize>, n: usize) -> Result<Self> {
        if labels.len() != cascade.len() {
            return Err(Error::InvalidCascade(format!(
                "{} labels for {} nodes",
                labels.len(),
                cascade.len()
            )));
        }
        if let Some((v, &l)) = labels.iter().enumerate().skip(1).find(|(_, &l)| l >= n) {
            return Err(Error::InvalidCascade(format!("label {l} of node {v} outside a {n}-point ground")));
        }
        Ok(Multifilter { cascade, labels, n })
    }

    pub fn cascade(&self) -> &Cascade {
        &self.cascade
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.cascade.rank()
    }

    pub fn contour(&self) -> ContourResult {
        let mut trace = vec![Subset::empty(self.n); self.cascade.len()];
        self.fill(0, &mut trace);
        ContourResult { filter: Filter::principal(trace[0]), trace }
    }

    fn fill(&self, v: usize, trace: &mut [Subset]) -> Subset {
        let node = &self.cascade.nodes[v];
        let k = match node.filter {
            None => Subset::singleton(self.n, self.labels[v]),
            Some(kernel) => {
                let mut acc = Subset::empty(self.n);
                for (pos, &c) in node.children.iter().enumerate() {
                    let ck = self.fill(c, trace);
                    if kernel.contains(pos) {
                        acc = acc.union(ck);
                    }
                }
                acc
            }
        };
        trace[v] = k;
        k
    }

    /// The restriction to the subtree rooted at an interior node `v`, renumbered.
    pub fn subtree(&self, v: usize) -> Result<Multifilter> {
        let mut map = vec![usize::MAX; self.cascade.len()];
        let mut order = vec![v];
        let mut i = 0;
        while i < order.len() {
            let w = order[i];
            map[w] = i;
            order.extend(&self.cascade.nodes[w].children);
            i += 1;
        }
        let nodes = order
            .iter()
            .map(|&w| {
                let node = &self.cascade.nodes[w];
                Node { children: node.children.iter().map(|&c| map[c]).collect(), filter: node.filter }
            })
            .collect();
        let labels = order.iter().map(|&w| if w == v { 0 } else { self.labels[w] }).collect();
        Multifilter::new(Cascade::new(nodes)?, labels, self.n)
    }

    /// Same cascade with interior labels replaced.
    pub fn relabel_interior(&self, mut pick: impl FnMut(usize) -> usize) -> Multifilter {
        let labels = (0..self.cascade.len())
            .map(|v| if v != 0 && !self.cascade.is_leaf(v) { pick(v) % self.n } else { self.labels[v] })
            .collect();
        Multifilter { cascade: self.cascade.clone(), labels, n: self.n }
    }
}

/// `∫_F G = ⋁_{F∈F} ⋀_{x∈F} G(x)`; on a finite set its kernel is
/// `⋃_{x∈ker F} ker G(x)`.
pub fn contour_along(f: Filter, g: &[Filter]) -> Result<Filter> {
    if g.len() != f.ground_size() {
        return Err(Error::GroundMismatch { left: f.ground_size(), right: g.len() });
    }
    let m = g.first().map_or(0, |h| h.ground_size());
    if let Some(h) = g.iter().find(|h| h.ground_size() != m) {
        return Err(Error::GroundMismatch { left: m, right: h.ground_size() });
    }
    let mut k = Subset::empty(m);
    for x in f.kernel().iter() {
        k = k.union(g[x].kernel());
    }
    Ok(Filter::principal(k))
}

/// Given `J` on `X × Y` and `Φ` on `X`, a multifilter on `Y` whose contour is
/// `J(∫Φ)`. Each leaf labeled `x` is replaced according to the row `J(x)`: a
/// single point relabels it, several points turn it into a node carrying the
/// principal filter of all its new children, and an empty row turns it into a
/// node with one child and the degenerate filter.
pub fn contour_compose(index: ProductIndex, j: Filter, phi: &Multifilter) -> Result<Multifilter> {
    if index.left != phi.ground_size() || index.size() != j.ground_size() {
        return Err(Error::GroundMismatch { left: index.size(), right: j.ground_size() });
    }
    let m = index.right;
    let rel = Relation::from_product_set(index, j.kernel())?;
    let old = phi.cascade.nodes();
    let mut nodes: Vec<Node> = old.to_vec();
    let mut labels: Vec<usize> = vec![0; old.len()];
    for v in 1..old.len() {
        if !old[v].children.is_empty() {
            labels[v] = phi.labels[v] % m;
            continue;
        }
        let row = rel.row(phi.labels[v]);
        match row.len() {
            1 => labels[v] = row.iter().next().unwrap_or(0),
            0 => {
                let leaf = push_leaf(&mut nodes, &mut labels, 0)?;
                nodes[v] = Node { children: vec![leaf], filter: Some(Subset::empty(1)) };
            }
            k => {
                let mut children = Vec::with_capacity(k);
                for y in row.iter() {
                    children.push(push_leaf(&mut nodes, &mut labels, y)?);
                }
                nodes[v] = Node { children, filter: Some(Subset::full(k)) };
            }
        }
    }
    let out = Multifilter::new(Cascade::new(nodes)?, labels, m)?;
    let expected = rel.image(phi.contour().filter);
    let got = out.contour().filter;
    if got != expected {
        return Err(Error::Internal(format!("composed contour {got:?} differs from {expected:?}")));
    }
    Ok(out)
}

fn push_leaf(nodes: &mut Vec<Node>, labels: &mut Vec<usize>, label: usize) -> Result<usize> {
    if nodes.len() >= MAX_NODES {
        return Err(Error::NodeCap);
    }
    nodes.push(Node { children: vec![], filter: None });
    labels.push(label);
    Ok(nodes.len() - 1)
}

/// Cascade shapes with at most `max_nodes` nodes and a non-maximal estuary,
/// as child-count lists in preorder, children ordered.
pub fn shapes(max_nodes: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 2..=max_nodes.min(MAX_NODES) {
        for s in trees_of_size(size) {
            if s[0] > 0 {
                out.push(s);
            }
        }
    }
    out
}

fn trees_of_size(size: usize) -> Vec<Vec<usize>> {
    if size == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for parts in crate::classes::compositions(size - 1) {
        let mut partial: Vec<Vec<usize>> = vec![vec![parts.len()]];
        for &p in &parts {
            let subs = trees_of_size(p);
            partial = partial
                .iter()
                .flat_map(|pre| {
                    subs.iter().map(move |s| {
                        let mut v = pre.clone();
                        v.extend(s);
                        v
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

/// Builds the node list of a preorder child-count shape with all filters
/// set to `None`; interior filters must be filled in by the caller.
pub fn shape_nodes(shape: &[usize]) -> Vec<Node> {
    let mut nodes: Vec<Node> = shape.iter().map(|_| Node { children: vec![], filter: None }).collect();
    let mut next = 1;
    fn walk(shape: &[usize], v: usize, next: &mut usize, nodes: &mut [Node]) {
        for _ in 0..shape[v] {
            let c = *next;
            *next += 1;
            nodes[v].children.push(c);
            walk(shape, c, next, nodes);
        }
    }
    walk(shape, 0, &mut next, &mut nodes);
    nodes
}

/// Contour along `F` computed from families: each infimum is the
/// intersection of member families and the supremum is the filter generated
/// by their union.
pub fn contour_along_by_families(f: Filter, g: &[Filter]) -> Filter {
    let m = g.first().map_or(0, |h| h.ground_size());
    let mut generated: Vec<Subset> = Vec::new();
    for big_f in f.as_family().members() {
        let meet: Vec<Subset> = Subset::all(m)
            .filter(|s| big_f.iter().all(|x| g[x].contains(*s)))
            .collect();
        generated.extend(meet);
    }
    let mut closed = generated.clone();
    loop {
        let mut grew = false;
        let snapshot = closed.clone();
        for a in &snapshot {
            for b in &snapshot {
                let c = a.intersection(*b);
                if !closed.contains(&c) {
                    closed.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let fam = FamilyOfSets::up_close(m, closed).expect("one ground");
    fam.as_filter().expect("a filter on a finite set is principal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, idx: &[usize]) -> Subset {
        Subset::from_indices(n, idx.iter().copied()).unwrap()
    }

    fn two_level() -> Multifilter {
        // root -> {1, 2}; 1 -> leaves {3, 4}; 2 leaf
        let nodes = vec![
            Node { children: vec![1, 2], filter: Some(s(2, &[0, 1])) },
            Node { children: vec![3, 4], filter: Some(s(2, &[1])) },
            Node { children: vec![], filter: None },
            Node { children: vec![], filter: None },
            Node { children: vec![], filter: None },
        ];
        Multifilter::new(Cascade::new(nodes).unwrap(), vec![0, 0, 2, 0, 1], 3).unwrap()
    }

    #[test]
    fn contour_along_examples() {
        let f = Filter::principal(s(2, &[0, 1]));
        let g = [Filter::principal(s(4, &[2])), Filter::principal(s(4, &[3]))];
        assert_eq!(contour_along(f, &g).unwrap(), Filter::principal(s(4, &[2, 3])));
        assert_eq!(contour_along_by_families(f, &g), Filter::principal(s(4, &[2, 3])));
        let h = Filter::principal(s(3, &[1, 2]));
        assert_eq!(contour_along(f, &[h, h]).unwrap(), h);
        assert_eq!(contour_along(Filter::point(2, 1), &g).unwrap(), g[1]);
    }

    #[test]
    fn two_level_recursion() {
        let phi = two_level();
        assert_eq!(phi.rank(), 2);
        let c = phi.contour();
        assert_eq!(c.filter.kernel(), s(3, &[1, 2]));
        assert_eq!(c.trace[1], s(3, &[1]));
        let inner = phi.subtree(1).unwrap();
        assert_eq!(inner.contour().filter.kernel(), s(3, &[1]));
    }

    #[test]
    fn interior_labels_do_not_matter() {
        let phi = two_level();
        assert_eq!(phi.relabel_interior(|v| v * 7).contour(), phi.contour());
    }

    #[test]
    fn compose_with_identity_relation() {
        let phi = two_level();
        let idx = ProductIndex::new(3, 3).unwrap();
        let diag = (0..3).fold(Subset::empty(9), |acc, x| acc.with(idx.pair(x, x)));
        let out = contour_compose(idx, Filter::principal(diag), &phi).unwrap();
        assert_eq!(out.contour().filter, phi.contour().filter);
    }

    #[test]
    fn compose_expands_and_empties_leaves() {
        let phi = two_level();
        let idx = ProductIndex::new(3, 2).unwrap();
        // 0 -> {}, 1 -> {0,1}, 2 -> {1}
        let k = Subset::empty(6).with(idx.pair(1, 0)).with(idx.pair(1, 1)).with(idx.pair(2, 1));
        let out = contour_compose(idx, Filter::principal(k), &phi).unwrap();
        assert_eq!(out.contour().filter.kernel(), Subset::full(2));
        assert!(out.cascade().len() > phi.cascade().len());
    }

    #[test]
    fn validation() {
        let leaf = || Node { children: vec![], filter: None };
        assert!(matches!(Cascade::new(vec![leaf()]), Err(Error::InvalidCascade(_))));
        let bad = vec![Node { children: vec![1], filter: Some(s(2, &[0])) }, leaf()];
        assert!(Cascade::new(bad).is_err());
        let twice = vec![Node { children: vec![1, 1], filter: Some(s(2, &[0])) }, leaf()];
        assert!(Cascade::new(twice).is_err());
        let nodes = (0..32).map(|_| leaf()).collect();
        assert_eq!(Cascade::new(nodes).unwrap_err(), Error::NodeCap);
    }

    #[test]
    fn shape_counts() {
        // ordered trees on k nodes are counted by Catalan numbers
        let count = |k: usize| trees_of_size(k).len();
        assert_eq!((1..=7).map(count).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(shapes(7).len(), 1 + 2 + 5 + 14 + 42 + 132);
        let nodes = shape_nodes(&[2, 0, 1, 0]);
        assert_eq!(nodes[0].children, vec![1, 2]);
        assert_eq!(nodes[2].children, vec![3]);
    }
}
