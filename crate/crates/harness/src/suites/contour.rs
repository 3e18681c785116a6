//! The contour-composition suite.

use convkit_core::cascade::{contour_compose, shape_nodes, shapes, Cascade, Multifilter};
use convkit_core::{Filter, ProductIndex, Subset};

use super::{par, Bounds};
use crate::enumerate;
use crate::oracle;
use crate::report::Tally;

/// Largest cascade in the suite.
pub const MAX_NODES: usize = 7;
/// Size of the second factor `Y` in `J ⊆ X × Y`.
pub const TARGET_POINTS: usize = 2;

/// Every multifilter of a shape into `n` points: all interior kernels and all
/// leaf labels. Interior labels play no part in contours and stay at 0.
pub fn multifilters(shape: &[usize], n: usize) -> Vec<Multifilter> {
    let base = shape_nodes(shape);
    // one digit per interior node (its kernel) and per leaf (its label)
    let radix: Vec<usize> = base
        .iter()
        .enumerate()
        .map(|(v, node)| if node.children.is_empty() { if v == 0 { 1 } else { n } } else { 1 << node.children.len() })
        .collect();
    let mut digits = vec![0usize; radix.len()];
    let mut out = Vec::new();
    loop {
        let nodes = base
            .iter()
            .zip(&digits)
            .map(|(node, &d)| {
                let mut node = node.clone();
                if !node.children.is_empty() {
                    node.filter = Some(Subset::raw(node.children.len(), d as u32));
                }
                node
            })
            .collect();
        let labels = base.iter().zip(&digits).map(|(node, &d)| if node.children.is_empty() { d } else { 0 }).collect();
        let cascade = Cascade::new(nodes).expect("enumerated shapes are cascades");
        out.push(Multifilter::new(cascade, labels, n).expect("labels are in range"));
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            return out;
        }
    }
}

/// Work units: one per ground size and cascade shape.
pub fn contour_units(max_points: usize, max_nodes: usize) -> Vec<(usize, Vec<usize>)> {
    let shapes = shapes(max_nodes);
    (1..=max_points.min(enumerate::EXHAUSTIVE_MAX))
        .flat_map(|n| shapes.iter().map(move |s| (n, s.clone())))
        .collect()
}

/// One instance per multifilter, covering every `J` on `X × Y`.
pub fn contour_compose_suite(b: &Bounds) -> Vec<Tally> {
    let units = contour_units(b.max_points, MAX_NODES);
    par(&units, |(n, shape)| {
        let (n, m) = (*n, TARGET_POINTS);
        let index = ProductIndex::new(n, m).expect("small product");
        let mut t = Tally::default();
        for phi in multifilters(shape, n) {
            let Some(inner) = oracle::contour(&phi).kernel() else {
                t.fail(format!("contour of {shape:?} is not a filter"));
                continue;
            };
            let mut bad = None;
            for j in Subset::all(index.size()) {
                let expected = inner
                    .iter()
                    .flat_map(|x| (0..m).filter(move |&y| j.contains(index.pair(x, y))))
                    .fold(Subset::empty(m), |acc, y| acc.with(y));
                let ok = match contour_compose(index, Filter::principal(j), &phi) {
                    Ok(out) => out.contour().filter.kernel() == expected,
                    Err(_) => false,
                };
                if !ok {
                    bad = Some(j);
                    break;
                }
            }
            t.check(bad.is_none(), || {
                format!("shape {shape:?} labels {:?} J={:?}", phi.labels(), bad.map(|j| j.bits()))
            });
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multifilter_counts() {
        // root with two leaves: 4 kernels, 3 × 3 labels
        assert_eq!(multifilters(&[2, 0, 0], 3).len(), 36);
        // chain of three: 2 × 2 kernels, 2 labels
        assert_eq!(multifilters(&[1, 1, 0], 2).len(), 8);
    }

    #[test]
    fn small_suite_holds() {
        let b = Bounds::default().with_max_points(1);
        let tallies = contour_compose_suite(&b);
        assert!(tallies.iter().all(|t| t.outcomes.iter().all(|o| *o == convkit_core::Outcome::Holds)));
    }
}
