//! JSON documents for chain complexes, simplicial sets, simplicial abelian
//! groups and simplicial maps.
//!
//! Every loader validates the decoded object (d∘d = 0, simplicial
//! identities) and reports failures with the offending field path.
//! Serializers emit a canonical form: keys in degree order, every stored
//! differential present, two-space indentation.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::chain::{ChainComplex, Int, IntMatrix};
use crate::error::{Error, Result};
use crate::simpab::SimplicialAbGroup;
use crate::simpset::{SimplexRef, SimplicialMap, SimplicialSet};

/// What a document decodes to.
#[derive(Clone, Debug)]
pub enum Document {
    Complex(ChainComplex),
    Space(SimplicialSet),
    Group(SimplicialAbGroup),
    Map(SimplicialMap),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "chain complex",
            Document::Space(_) => "simplicial set",
            Document::Group(_) => "simplicial abelian group",
            Document::Map(_) => "simplicial map",
        }
    }
}

fn field_err(path: &str, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("field {}: {}", path, what))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| field_err(&join(path, key), "missing"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{}.{}", path, key)
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| field_err(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(path, "expected an array"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| field_err(path, "expected an integer"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| field_err(path, "expected a nonnegative integer"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| field_err(path, "expected a string"))
}

fn parse_int(v: &Value, path: &str) -> Result<Int> {
    if let Some(i) = v.as_i64() {
        return Ok(Int::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.parse::<Int>().map_err(|_| field_err(path, "expected an integer"));
    }
    Err(field_err(path, "expected an integer"))
}

fn int_value(v: &Int) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => Value::String(v.to_string()),
    }
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<IntMatrix> {
    let arr = as_array(v, path)?;
    if arr.len() != rows {
        return Err(field_err(path, format!("expected {} rows, got {}", rows, arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in arr.iter().enumerate() {
        let rpath = format!("{}[{}]", path, i);
        let r = as_array(row, &rpath)?;
        if r.len() != cols {
            return Err(field_err(&rpath, format!("expected {} columns, got {}", cols, r.len())));
        }
        for (j, e) in r.iter().enumerate() {
            data.push(parse_int(e, &format!("{}[{}]", rpath, j))?);
        }
    }
    IntMatrix::from_vec(rows, cols, data)
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int_value).collect())).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Prefixes an identity violation with the object kind.
fn invalid(kind: &str, e: Error) -> Error {
    match e {
        Error::Identity(m) => Error::Identity(format!("{}: {}", kind, m)),
        other => other,
    }
}

// ---------------------------------------------------------------- complexes

pub fn complex_from_value(v: &Value) -> Result<ChainComplex> {
    as_object(v, "<root>")?;
    let min = as_i64(get(v, "min", "")?, "min")?;
    let max = as_i64(get(v, "max", "")?, "max")?;
    if max < min {
        return Err(field_err("max", format!("{} is below min {}", max, min)));
    }
    let ranks_v = as_object(get(v, "ranks", "")?, "ranks")?;
    let mut ranks = vec![0usize; (max - min + 1) as usize];
    for (k, r) in ranks_v {
        let path = format!("ranks.{}", k);
        let deg: i64 = k.parse().map_err(|_| field_err(&path, "key is not an integer degree"))?;
        if deg < min || deg > max {
            return Err(field_err(&path, format!("degree outside {}..={}", min, max)));
        }
        ranks[(deg - min) as usize] = as_usize(r, &path)?;
    }
    let mut diffs: Vec<IntMatrix> = (0..ranks.len())
        .map(|k| IntMatrix::zeros(if k == 0 { 0 } else { ranks[k - 1] }, ranks[k]))
        .collect();
    if let Some(d) = v.get("d") {
        for (k, m) in as_object(d, "d")? {
            let path = format!("d.{}", k);
            let deg: i64 = k.parse().map_err(|_| field_err(&path, "key is not an integer degree"))?;
            if deg <= min || deg > max {
                return Err(field_err(&path, format!("differential must leave a degree in {}..={}", min + 1, max)));
            }
            let idx = (deg - min) as usize;
            diffs[idx] = parse_matrix(m, ranks[idx - 1], ranks[idx], &path)?;
        }
    }
    ChainComplex::new(min, ranks, diffs).map_err(|e| invalid("chain complex", e))
}

pub fn complex_to_value(c: &ChainComplex) -> Value {
    let mut ranks = Map::new();
    let mut d = Map::new();
    for n in c.degrees() {
        ranks.insert(n.to_string(), json!(c.rank(n)));
        if n > c.min_deg() {
            d.insert(n.to_string(), matrix_value(&c.d(n)));
        }
    }
    json!({"min": c.min_deg(), "max": c.max_deg(), "ranks": ranks, "d": d})
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    complex_from_value(&parse_json(text)?)
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    pretty(&complex_to_value(c))
}

// --------------------------------------------------------- simplicial sets

pub fn space_from_value(v: &Value) -> Result<SimplicialSet> {
    as_object(v, "<root>")?;
    let pointed = get(v, "pointed", "")?.as_bool().ok_or_else(|| field_err("pointed", "expected a boolean"))?;
    let cells = as_object(get(v, "cells", "")?, "cells")?;
    let faces = match v.get("faces") {
        Some(f) => as_object(f, "faces")?.clone(),
        None => Map::new(),
    };
    let mut by_dim: BTreeMap<usize, (&str, &Vec<Value>)> = BTreeMap::new();
    for (k, list) in cells {
        let path = format!("cells.{}", k);
        let dim: usize = k.parse().map_err(|_| field_err(&path, "key is not a dimension"))?;
        by_dim.insert(dim, (k.as_str(), as_array(list, &path)?));
    }
    let mut b = SimplicialSet::builder();
    for (dim, (key, list)) in by_dim {
        for (i, name_v) in list.iter().enumerate() {
            let path = format!("cells.{}[{}]", key, i);
            let name = as_str(name_v, &path)?;
            let refs = if dim == 0 {
                if faces.get(name).is_some_and(|f| !f.as_array().is_some_and(Vec::is_empty)) {
                    return Err(field_err(&format!("faces.{}", name), "a vertex has no faces"));
                }
                Vec::new()
            } else {
                let fpath = format!("faces.{}", name);
                let list = as_array(faces.get(name).ok_or_else(|| field_err(&fpath, "missing"))?, &fpath)?;
                list.iter()
                    .enumerate()
                    .map(|(j, r)| {
                        let p = format!("{}[{}]", fpath, j);
                        crate::simpset::set::parse_ref_with(as_str(r, &p)?, |n| b.cell(n)).map_err(|e| field_err(&p, e))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            b.add_cell(dim, name, refs).map_err(|e| field_err(&path, e))?;
        }
    }
    for name in faces.keys() {
        if b.cell(name).is_none() {
            return Err(field_err(&format!("faces.{}", name), "not a declared cell"));
        }
    }
    match (pointed, v.get("basepoint")) {
        (true, Some(bp)) => {
            let name = as_str(bp, "basepoint")?;
            match b.cell(name) {
                Some(c) if c.dim == 0 => b.set_basepoint(name),
                _ => return Err(field_err("basepoint", format!("{:?} is not a declared 0-cell", name))),
            }
        }
        (true, None) => return Err(field_err("basepoint", "missing for a pointed set")),
        (false, Some(bp)) if !bp.is_null() => return Err(field_err("basepoint", "given for an unpointed set")),
        _ => {}
    }
    b.build().map_err(|e| invalid("simplicial set", e))
}

pub fn space_to_value(x: &SimplicialSet) -> Value {
    let mut cells = Map::new();
    let mut faces = Map::new();
    for (dim, &count) in x.cell_counts().iter().enumerate() {
        let names: Vec<Value> = x.cells(dim).map(|c| json!(x.name(c))).collect();
        debug_assert_eq!(names.len(), count);
        cells.insert(dim.to_string(), Value::Array(names));
        for c in x.cells(dim).filter(|_| dim > 0) {
            faces.insert(x.name(c).to_string(), Value::Array(x.faces_of(c).iter().map(|f| json!(x.format_ref(f))).collect()));
        }
    }
    let mut out = Map::new();
    out.insert("pointed".into(), json!(x.is_pointed()));
    if let Some(bp) = x.basepoint() {
        out.insert("basepoint".into(), json!(x.name(bp)));
    }
    out.insert("cells".into(), Value::Object(cells));
    out.insert("faces".into(), Value::Object(faces));
    Value::Object(out)
}

pub fn parse_space(text: &str) -> Result<SimplicialSet> {
    space_from_value(&parse_json(text)?)
}

pub fn space_to_json(x: &SimplicialSet) -> String {
    pretty(&space_to_value(x))
}

// ------------------------------------------------ simplicial abelian groups

pub fn group_from_value(v: &Value) -> Result<SimplicialAbGroup> {
    as_object(v, "<root>")?;
    let trunc = as_usize(get(v, "D", "")?, "D")?;
    let ranks_v = as_object(get(v, "ranks", "")?, "ranks")?;
    let mut ranks = vec![None; trunc + 1];
    for (k, r) in ranks_v {
        let path = format!("ranks.{}", k);
        let n: usize = k.parse().map_err(|_| field_err(&path, "key is not a level"))?;
        if n > trunc {
            return Err(field_err(&path, format!("level above D = {}", trunc)));
        }
        ranks[n] = Some(as_usize(r, &path)?);
    }
    let ranks: Vec<usize> = ranks
        .into_iter()
        .enumerate()
        .map(|(n, r)| r.ok_or_else(|| field_err(&format!("ranks.{}", n), "missing")))
        .collect::<Result<_>>()?;
    let structure = |key: &str, lo: usize, hi: usize, count: &dyn Fn(usize) -> usize, target: &dyn Fn(usize) -> usize| -> Result<Vec<Vec<IntMatrix>>> {
        let obj = as_object(get(v, key, "")?, key)?;
        let mut out: Vec<Vec<Option<IntMatrix>>> = (0..=trunc).map(|n| vec![None; if n >= lo && n <= hi { count(n) } else { 0 }]).collect();
        for (k, m) in obj {
            let path = format!("{}.{}", key, k);
            let (n, i) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| field_err(&path, "key must be \"n,i\""))?;
            if n < lo || n > hi || i >= count(n) {
                return Err(field_err(&path, "index outside the truncation"));
            }
            out[n][i] = Some(parse_matrix(m, ranks[target(n)], ranks[n], &path)?);
        }
        let mut levels = Vec::new();
        for (n, level) in out.into_iter().enumerate() {
            if n < lo || n > hi {
                levels.push(Vec::new());
                continue;
            }
            levels.push(
                level
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| m.ok_or_else(|| field_err(&format!("{}.{},{}", key, n, i), "missing")))
                    .collect::<Result<_>>()?,
            );
        }
        Ok(levels)
    };
    let face = structure("face", 1, trunc, &|n| n + 1, &|n| n - 1)?;
    let mut degen = if trunc == 0 { Vec::new() } else { structure("degen", 0, trunc - 1, &|n| n + 1, &|n| n + 1)? };
    degen.truncate(trunc);
    SimplicialAbGroup::new(trunc, ranks, face, degen).map_err(|e| invalid("simplicial abelian group", e))
}

pub fn group_to_value(a: &SimplicialAbGroup) -> Value {
    let d = a.trunc_dim();
    let mut ranks = Map::new();
    let mut face = Map::new();
    let mut degen = Map::new();
    for n in 0..=d {
        ranks.insert(n.to_string(), json!(a.rank(n)));
        for i in (0..=n).filter(|_| n > 0) {
            face.insert(format!("{},{}", n, i), matrix_value(a.face(n, i)));
        }
        for j in (0..=n).filter(|_| n < d) {
            degen.insert(format!("{},{}", n, j), matrix_value(a.degen(n, j)));
        }
    }
    json!({"D": d, "ranks": ranks, "face": face, "degen": degen})
}

pub fn parse_group(text: &str) -> Result<SimplicialAbGroup> {
    group_from_value(&parse_json(text)?)
}

pub fn group_to_json(a: &SimplicialAbGroup) -> String {
    pretty(&group_to_value(a))
}

// ----------------------------------------------------------- simplicial maps

/// `{"source": <set>, "target": <set>, "images": {"<cell>": "<ref>"}}`.
pub fn map_from_value(v: &Value) -> Result<SimplicialMap> {
    as_object(v, "<root>")?;
    let source = space_from_value(get(v, "source", "")?).map_err(|e| nest("source", e))?;
    let target = space_from_value(get(v, "target", "")?).map_err(|e| nest("target", e))?;
    let images = as_object(get(v, "images", "")?, "images")?;
    for name in images.keys() {
        if source.cell(name).is_none() {
            return Err(field_err(&format!("images.{}", name), "not a source cell"));
        }
    }
    let mut table = Vec::new();
    for (dim, _) in source.cell_counts().iter().enumerate() {
        let mut level = Vec::new();
        for c in source.cells(dim) {
            let path = format!("images.{}", source.name(c));
            let text = as_str(images.get(source.name(c)).ok_or_else(|| field_err(&path, "missing"))?, &path)?;
            let r: SimplexRef = target.parse_ref(text).map_err(|e| field_err(&path, e))?;
            if r.dim() != dim {
                return Err(field_err(&path, format!("image has dimension {}, expected {}", r.dim(), dim)));
            }
            level.push(r);
        }
        table.push(level);
    }
    SimplicialMap::from_images(&source, &target, table).map_err(|e| invalid("simplicial map", e))
}

fn nest(prefix: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(m.replacen("field ", &format!("field {}.", prefix), 1)),
        other => other,
    }
}

pub fn map_to_value(f: &SimplicialMap) -> Value {
    let x = f.source();
    let mut images = Map::new();
    for c in x.all_cells() {
        images.insert(x.name(c).to_string(), json!(f.target().format_ref(f.image(c))));
    }
    json!({"source": space_to_value(x), "target": space_to_value(f.target()), "images": images})
}

pub fn parse_map(text: &str) -> Result<SimplicialMap> {
    map_from_value(&parse_json(text)?)
}

pub fn map_to_json(f: &SimplicialMap) -> String {
    pretty(&map_to_value(f))
}

// ------------------------------------------------------------------ sniffing

/// Decodes any of the four document kinds, told apart by their keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "<root>")?;
    if obj.contains_key("images") {
        map_from_value(&v).map(Document::Map)
    } else if obj.contains_key("cells") || obj.contains_key("pointed") {
        space_from_value(&v).map(Document::Space)
    } else if obj.contains_key("D") {
        group_from_value(&v).map(Document::Group)
    } else if obj.contains_key("min") || obj.contains_key("ranks") {
        complex_from_value(&v).map(Document::Complex)
    } else {
        Err(Error::Parse("document matches none of the complex, simplicial set, group or map schemas".into()))
    }
}

pub fn document_to_json(d: &Document) -> String {
    match d {
        Document::Complex(c) => complex_to_json(c),
        Document::Space(x) => space_to_json(x),
        Document::Group(a) => group_to_json(a),
        Document::Map(f) => map_to_json(f),
    }
}

/// Re-serializes a document in canonical form.
pub fn canonical(text: &str) -> Result<String> {
    parse_document(text).map(|d| document_to_json(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::simpab::dold_kan_k;
    use crate::simpset::{standard_space, StandardSpace};

    const BOUNDARY: &str = r#"{"pointed": false, "cells": {"0": ["a","b","c"], "1": ["ab","ac","bc"]},
        "faces": {"ab": ["b","a"], "ac": ["c","a"], "bc": ["c","b"]}}"#;

    #[test]
    fn boundary_sample_loads() {
        let x = parse_space(BOUNDARY).unwrap();
        assert_eq!(x.cell_counts(), vec![3, 3]);
        assert!(!x.is_pointed());
    }

    #[test]
    fn complex_round_trip() {
        let doc = r#"{"min":0,"max":1,"ranks":{"0":1,"1":1},"d":{"1":[[2]]}}"#;
        let c = parse_complex(doc).unwrap();
        assert_eq!(homology(&c, 0).to_string(), "Z/2");
        let once = complex_to_json(&c);
        assert_eq!(canonical(&once).unwrap(), once);
        assert_eq!(parse_complex(&once).unwrap(), c);
    }

    #[test]
    fn dd_violation_names_degree() {
        let doc = r#"{"min":0,"max":2,"ranks":{"0":1,"1":1,"2":1},"d":{"1":[[1]],"2":[[1]]}}"#;
        let e = parse_complex(doc).unwrap_err();
        assert!(matches!(&e, Error::Identity(m) if m.contains("d(1)·d(2)")), "{}", e);
    }

    #[test]
    fn field_diagnostics() {
        let e = parse_complex(r#"{"min":0,"max":1,"ranks":{"0":1,"1":1},"d":{"1":[[1,2]]}}"#).unwrap_err();
        assert!(e.to_string().contains("d.1[0]"), "{}", e);
        let e = parse_space(r#"{"pointed": true, "cells": {"0": ["a"]}}"#).unwrap_err();
        assert!(e.to_string().contains("basepoint"), "{}", e);
        let e = parse_complex("{\"min\": 0,\n \"max\": }").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{}", e);
    }

    #[test]
    fn space_and_group_round_trip() {
        for kind in [StandardSpace::Sphere(2), StandardSpace::Boundary(3), StandardSpace::Point] {
            let x = standard_space(kind).unwrap();
            let text = space_to_json(&x);
            let y = parse_space(&text).unwrap();
            assert_eq!(space_to_json(&y), text);
        }
        let a = dold_kan_k(&ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[3])), 3);
        let text = group_to_json(&a);
        assert_eq!(parse_group(&text).unwrap(), a);
        assert_eq!(canonical(&text).unwrap(), text);
    }

    #[test]
    fn map_round_trip() {
        let s1 = standard_space(StandardSpace::Sphere(1)).unwrap();
        let f = SimplicialMap::identity(&s1);
        let text = map_to_json(&f);
        assert!(matches!(parse_document(&text).unwrap(), Document::Map(g) if g == f));
    }
}
