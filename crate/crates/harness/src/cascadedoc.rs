//! Cascade documents for `contour eval`.
//!
//! ```json
//! {"points": ["a", "b", "c"],
//!  "cascade": {"filter": [0, 1], "children": [
//!     {"label": "a"},
//!     {"label": "b", "filter": [0], "children": [{"label": "c"}, {"label": "a"}]}]}}
//! ```
//!
//! A node with children carries `filter`, the kernel of its filter as child
//! positions. Leaves carry a `label`; on other non-root nodes it is optional.

use std::path::Path;

use convkit_core::cascade::{Cascade, ContourResult, Multifilter, Node};
use convkit_core::{GroundSet, Subset};
use serde::Deserialize;

use crate::error::{HarnessError, Result};
use crate::spacedoc::{file_label, strip_position, Ctx};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    label: Option<String>,
    filter: Option<Vec<usize>>,
    #[serde(default)]
    children: Vec<RawNode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    points: Vec<String>,
    cascade: RawNode,
}

pub struct CascadeDoc {
    pub ground: GroundSet,
    pub multifilter: Multifilter,
}

impl CascadeDoc {
    /// The contour and an indented per-node trace.
    pub fn render(&self) -> String {
        let ContourResult { filter, trace } = self.multifilter.contour();
        let g = &self.ground;
        let mut out = format!("contour: {}↑\n", g.render(filter.kernel()));
        let nodes = self.multifilter.cascade().nodes();
        let labels = self.multifilter.labels();
        fn walk(v: usize, depth: usize, nodes: &[Node], labels: &[usize], trace: &[Subset], g: &GroundSet, out: &mut String) {
            let name = if v == 0 { "∅".to_string() } else { g.name(labels[v]).to_string() };
            let filter = match nodes[v].filter {
                Some(k) => format!(" filter {:?}", k.iter().collect::<Vec<_>>()),
                None => String::new(),
            };
            out.push_str(&format!("{}{name}{filter} → {}↑\n", "  ".repeat(depth + 1), g.render(trace[v])));
            for &c in &nodes[v].children {
                walk(c, depth + 1, nodes, labels, trace, g, out);
            }
        }
        walk(0, 0, nodes, labels, &trace, g, &mut out);
        out
    }
}

pub fn parse(src: &str, path: Option<&Path>) -> Result<CascadeDoc> {
    let ctx = Ctx { src, file: file_label(path) };
    let raw: RawDoc = serde_json::from_str(src).map_err(|e| ctx.err((e.line(), e.column()), strip_position(&e)))?;
    let ground = GroundSet::new(raw.points.iter().map(String::as_str))
        .map_err(|e| ctx.err(ctx.locate("points", "points", 0), e.to_string()))?;
    let mut nodes = Vec::new();
    let mut labels = Vec::new();
    let mut leaves_seen = 0;
    flatten(&ctx, &ground, &raw.cascade, true, &mut nodes, &mut labels, &mut leaves_seen)?;
    let cascade = Cascade::new(nodes).map_err(|e| ctx.err(ctx.locate("cascade", "cascade", 0), e.to_string()))?;
    let multifilter = Multifilter::new(cascade, labels, ground.len())
        .map_err(|e| ctx.err(ctx.locate("cascade", "cascade", 0), e.to_string()))?;
    Ok(CascadeDoc { ground, multifilter })
}

pub fn load(path: &Path) -> Result<CascadeDoc> {
    let src = std::fs::read_to_string(path)
        .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })?;
    parse(&src, Some(path))
}

fn flatten(
    ctx: &Ctx,
    ground: &GroundSet,
    raw: &RawNode,
    root: bool,
    nodes: &mut Vec<Node>,
    labels: &mut Vec<usize>,
    leaves_seen: &mut usize,
) -> Result<usize> {
    let here = ctx.locate("cascade", if raw.children.is_empty() { "label" } else { "filter" }, *leaves_seen);
    let label = match (&raw.label, root) {
        (Some(_), true) => return Err(ctx.err(ctx.locate("cascade", "label", 0), "the root carries no label")),
        (Some(name), false) => ground.index_of(name).map_err(|_| {
            ctx.err(ctx.locate("cascade", name, 0), format!("unknown point `{name}`"))
        })?,
        (None, false) if raw.children.is_empty() => return Err(ctx.err(here, "a leaf needs a label")),
        (None, _) => 0,
    };
    let v = nodes.len();
    nodes.push(Node { children: vec![], filter: None });
    labels.push(label);
    if raw.children.is_empty() {
        *leaves_seen += 1;
        if raw.filter.is_some() {
            return Err(ctx.err(ctx.locate("cascade", "filter", 0), "a leaf carries no filter"));
        }
        if root {
            return Err(ctx.err(here, "the root needs children"));
        }
        return Ok(v);
    }
    let k = raw.children.len();
    let positions = raw.filter.as_ref().ok_or_else(|| ctx.err(here, "a node with children needs a filter"))?;
    let kernel = Subset::from_indices(k, positions.iter().copied())
        .map_err(|_| ctx.err(here, format!("filter positions {positions:?} outside {k} children")))?;
    let mut children = Vec::with_capacity(k);
    for c in &raw.children {
        children.push(flatten(ctx, ground, c, false, nodes, labels, leaves_seen)?);
    }
    nodes[v] = Node { children, filter: Some(kernel) };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_contour() {
        let src = r#"{"points": ["a", "b", "c"],
            "cascade": {"filter": [0, 1], "children": [
                {"label": "a"},
                {"label": "b", "filter": [0], "children": [{"label": "c"}, {"label": "a"}]}]}}"#;
        let doc = parse(src, None).unwrap();
        let r = doc.multifilter.contour();
        assert_eq!(r.filter.kernel().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(doc.render().starts_with("contour: {a,c}↑"));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse(r#"{"points": ["a"], "cascade": {"filter": [], "children": [{"label": "q"}]}}"#, None),
            Err(HarnessError::Doc { .. })
        ));
        assert!(matches!(parse(r#"{"points": ["a"], "cascade": {"label": "a"}}"#, None), Err(HarnessError::Doc { .. })));
        assert!(matches!(
            parse(r#"{"points": ["a"], "cascade": {"filter": [3], "children": [{"label": "a"}]}}"#, None),
            Err(HarnessError::Doc { .. })
        ));
    }
}
