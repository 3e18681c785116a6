//! The SpaceDoc file format.
//!
//! ```json
//! {"points": ["a", "b"], "pointlim": {"a": ["a"], "b": ["a", "b"]},
//!  "maps": [{"name": "f", "to": "other.json", "graph": {"a": "x", "b": ["x", "y"]}}]}
//! ```
//!
//! `to` is a path relative to the document or an inline document. A graph
//! value that is a list makes the map a relation. Every error carries the line
//! and column of the offending token.

use std::fmt;
use std::marker::PhantomData;
use std::path::Path;
use std::sync::Arc;

use convkit_core::{FiniteSpace, GroundSet, Relation, Subset};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::json;

use crate::error::{HarnessError, Result};

/// Key-value pairs in file order; a repeated key is a parse error.
#[derive(Debug)]
struct Entries<T>(Vec<(String, T)>);

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Entries<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Entries<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object keyed by point name")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some(k) = map.next_key::<String>()? {
                    if out.iter().any(|(e, _)| *e == k) {
                        return Err(de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    out.push((k, map.next_value()?));
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Target {
    Path(String),
    Inline(Box<RawDoc>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    to: Target,
    graph: Entries<OneOrMany>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    points: Vec<String>,
    pointlim: Entries<Vec<String>>,
    #[serde(default)]
    maps: Vec<RawMap>,
}

#[derive(Clone, Debug)]
pub struct MapDoc {
    pub name: String,
    pub target: FiniteSpace,
    pub graph: Relation,
}

impl MapDoc {
    /// The graph as `f[x]`, when every point has exactly one image.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        self.graph.as_map().ok()
    }
}

#[derive(Clone, Debug)]
pub struct SpaceDoc {
    pub space: FiniteSpace,
    pub maps: Vec<MapDoc>,
}

impl SpaceDoc {
    pub fn map(&self, name: &str) -> Result<&MapDoc> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| HarnessError::Usage(format!("no map named `{name}`")))
    }
}

pub(crate) struct Ctx<'a> {
    pub(crate) src: &'a str,
    pub(crate) file: String,
}

impl Ctx<'_> {
    pub(crate) fn err(&self, (line, column): (usize, usize), message: impl Into<String>) -> HarnessError {
        HarnessError::Doc { file: self.file.clone(), line, column, message: message.into() }
    }

    /// Position of the `nth` quoted occurrence of `needle` at or after the
    /// quoted key `section`, 1-based.
    pub(crate) fn locate(&self, section: &str, needle: &str, nth: usize) -> (usize, usize) {
        let start = self.src.find(&format!("\"{section}\"")).unwrap_or(0);
        let quoted = format!("\"{needle}\"");
        let mut at = start;
        let mut found = None;
        for _ in 0..=nth {
            match self.src[at..].find(&quoted) {
                Some(p) => {
                    found = Some(at + p);
                    at += p + quoted.len();
                }
                None => break,
            }
        }
        let offset = found.unwrap_or(start);
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }
}

pub(crate) fn file_label(path: Option<&Path>) -> String {
    path.map(|p| format!("{}: ", p.display())).unwrap_or_default()
}

/// Parses a document. `path` resolves relative `to` references and labels errors.
pub fn parse(src: &str, path: Option<&Path>) -> Result<SpaceDoc> {
    let ctx = Ctx { src, file: file_label(path) };
    let raw: RawDoc = serde_json::from_str(src).map_err(|e| ctx.err((e.line(), e.column()), strip_position(&e)))?;
    build(&ctx, raw, path, 0)
}

pub fn load(path: &Path) -> Result<SpaceDoc> {
    let src = std::fs::read_to_string(path)
        .map_err(|source| HarnessError::Io { path: path.display().to_string(), source })?;
    parse(&src, Some(path))
}

pub(crate) fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

fn build(ctx: &Ctx, raw: RawDoc, path: Option<&Path>, depth: usize) -> Result<SpaceDoc> {
    let space = build_space(ctx, &raw)?;
    let mut maps: Vec<MapDoc> = Vec::new();
    for (i, m) in raw.maps.into_iter().enumerate() {
        if maps.iter().any(|e| e.name == m.name) {
            return Err(ctx.err(ctx.locate("maps", &m.name, 1), format!("duplicate map name `{}`", m.name)));
        }
        let target = match m.to {
            Target::Inline(doc) => build(ctx, *doc, path, depth + 1)?.space,
            Target::Path(p) => {
                if depth > 8 {
                    return Err(ctx.err(ctx.locate("maps", &p, 0), "map targets nest too deeply"));
                }
                let full = path.and_then(Path::parent).map_or_else(|| p.clone().into(), |d| d.join(&p));
                load(&full)?.space
            }
        };
        let graph = build_graph(ctx, &space, &target, &m.name, m.graph, i)?;
        maps.push(MapDoc { name: m.name, target, graph });
    }
    Ok(SpaceDoc { space, maps })
}

fn build_space(ctx: &Ctx, raw: &RawDoc) -> Result<FiniteSpace> {
    if raw.points.is_empty() {
        return Err(ctx.err(ctx.locate("points", "points", 0), "a space needs at least one point"));
    }
    for (i, p) in raw.points.iter().enumerate() {
        if raw.points[..i].contains(p) {
            return Err(ctx.err(ctx.locate("points", p, 1), format!("duplicate point name `{p}`")));
        }
    }
    let ground = Arc::new(GroundSet::new(raw.points.iter().cloned())?);
    let n = ground.len();
    let mut pointlim: Vec<Option<Subset>> = vec![None; n];
    for (key, targets) in &raw.pointlim.0 {
        let x = ground
            .index_of(key)
            .map_err(|_| ctx.err(ctx.locate("pointlim", key, 0), format!("unknown point `{key}`")))?;
        let mut l = Subset::empty(n);
        for t in targets {
            let y = ground
                .index_of(t)
                .map_err(|_| ctx.err(ctx.locate("pointlim", t, 0), format!("unknown point `{t}`")))?;
            l = l.with(y);
        }
        if !l.contains(x) {
            return Err(ctx.err(
                ctx.locate("pointlim", key, 0),
                format!("point `{key}` is not in its own point-limit set"),
            ));
        }
        pointlim[x] = Some(l);
    }
    let pointlim = pointlim
        .into_iter()
        .enumerate()
        .map(|(x, l)| {
            l.ok_or_else(|| {
                ctx.err(ctx.locate("pointlim", "pointlim", 0), format!("missing point-limit set for `{}`", ground.name(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSpace::new(ground, pointlim)?)
}

fn build_graph(
    ctx: &Ctx,
    dom: &FiniteSpace,
    cod: &FiniteSpace,
    name: &str,
    graph: Entries<OneOrMany>,
    index: usize,
) -> Result<Relation> {
    let (gx, gy) = (dom.ground(), cod.ground());
    let mut rows: Vec<Option<Subset>> = vec![None; gx.len()];
    let at = |needle: &str| ctx.locate("graph", needle, index);
    for (key, value) in graph.0 {
        let x = gx.index_of(&key).map_err(|_| ctx.err(at(&key), format!("unknown point `{key}` in map `{name}`")))?;
        let names = match value {
            OneOrMany::One(s) => vec![s],
            OneOrMany::Many(v) => v,
        };
        let mut row = Subset::empty(gy.len());
        for t in names {
            let y = gy.index_of(&t).map_err(|_| ctx.err(at(&t), format!("unknown target point `{t}` in map `{name}`")))?;
            row = row.with(y);
        }
        rows[x] = Some(row);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(x, r)| r.ok_or_else(|| ctx.err(at("graph"), format!("map `{name}` has no value at `{}`", gx.name(x)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Relation::from_rows(gy.len(), rows)?)
}

fn space_json(space: &FiniteSpace) -> serde_json::Value {
    let g = space.ground();
    let pointlim: serde_json::Map<String, serde_json::Value> = (0..space.n())
        .map(|x| {
            let names: Vec<&str> = space.pointlim(x).iter().map(|y| g.name(y)).collect();
            (g.name(x).to_string(), json!(names))
        })
        .collect();
    json!({ "points": g.names(), "pointlim": pointlim })
}

/// One-line document for a space.
pub fn dump(space: &FiniteSpace) -> String {
    space_json(space).to_string()
}

/// One-line document for a space carrying one relation into an inline target.
pub fn dump_with_relation(xi: &FiniteSpace, tau: &FiniteSpace, name: &str, r: &Relation) -> String {
    let (gx, gy) = (xi.ground(), tau.ground());
    let graph: serde_json::Map<String, serde_json::Value> = (0..xi.n())
        .map(|x| {
            let row = r.row(x);
            let value = match row.len() {
                1 => json!(gy.name(row.iter().next().unwrap_or(0))),
                _ => json!(row.iter().map(|y| gy.name(y)).collect::<Vec<_>>()),
            };
            (gx.name(x).to_string(), value)
        })
        .collect();
    let mut doc = space_json(xi);
    doc["maps"] = json!([{ "name": name, "to": space_json(tau), "graph": graph }]);
    doc.to_string()
}

pub fn dump_with_map(xi: &FiniteSpace, tau: &FiniteSpace, name: &str, f: &[usize]) -> String {
    let r = Relation::from_map(tau.n(), f).expect("map into the target");
    dump_with_relation(xi, tau, name, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let xi = FiniteSpace::from_masks(&[0b001, 0b011, 0b110]).unwrap();
        let tau = FiniteSpace::from_masks(&[0b01, 0b11]).unwrap();
        let text = dump_with_map(&xi, &tau, "f", &[0, 1, 1]);
        let doc = parse(&text, None).unwrap();
        assert_eq!(doc.space, xi);
        assert_eq!(doc.maps[0].target, tau);
        assert_eq!(doc.maps[0].as_map(), Some(vec![0, 1, 1]));
    }

    #[test]
    fn rejects_with_positions() {
        let dup = "{\"points\": [\"a\",\n \"a\"], \"pointlim\": {}}";
        match parse(dup, None) {
            Err(HarnessError::Doc { line, column, message, .. }) => {
                assert_eq!((line, column), (2, 2));
                assert!(message.contains("duplicate"));
            }
            other => panic!("{other:?}"),
        }
        let uncentered = "{\"points\": [\"a\", \"b\"],\n\"pointlim\": {\"a\": [\"a\"], \"b\": [\"a\"]}}";
        assert!(matches!(parse(uncentered, None), Err(HarnessError::Doc { line: 2, .. })));
        let unknown = "{\"points\": [\"a\"], \"pointlim\": {\"a\": [\"z\"]}}";
        assert!(matches!(parse(unknown, None), Err(HarnessError::Doc { line: 1, column: 38, .. })));
        let dup_key = "{\"points\": [\"a\"], \"pointlim\": {\"a\": [\"a\"], \"a\": [\"a\"]}}";
        assert!(matches!(parse(dup_key, None), Err(HarnessError::Doc { .. })));
        assert!(matches!(parse("{\"points\": [", None), Err(HarnessError::Doc { line: 1, .. })));
    }

    #[test]
    fn relations_from_lists() {
        let src = r#"{"points":["a"],"pointlim":{"a":["a"]},
            "maps":[{"name":"r","to":{"points":["x","y"],"pointlim":{"x":["x"],"y":["y"]}},"graph":{"a":["x","y"]}}]}"#;
        let doc = parse(src, None).unwrap();
        assert_eq!(doc.map("r").unwrap().graph.row(0).len(), 2);
        assert_eq!(doc.map("r").unwrap().as_map(), None);
    }
}
