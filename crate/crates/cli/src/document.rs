//! JSON documents for groupoids, group tables, point maps and morphisms.
//!
//! Serialization is canonical: object keys are sorted, `units` and `mul`
//! follow the order of `elements`, and output ends with a newline.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};

use brandt::structured::{GroupGroupoid, VectorSpaceGroupoid};
use brandt::{FiniteGroupoid, GroupTable, GroupoidMorphism, GroupoidTables, Quasipermutation};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

type LabelMap = BTreeMap<String, String>;
type Table = BTreeMap<String, LabelMap>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroupoid {
    pub format_version: u32,
    #[serde(default = "plain")]
    pub kind: String,
    pub elements: Vec<String>,
    pub units: Vec<String>,
    pub alpha: LabelMap,
    pub beta: LabelMap,
    pub inv: LabelMap,
    pub mul: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_labels: Option<LabelMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega0: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar0: Option<Table>,
}

fn plain() -> String {
    "plain".into()
}

/// A parsed groupoid document together with its kind-specific payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Plain(FiniteGroupoid),
    Quasiperm { groupoid: FiniteGroupoid, degree: usize },
    GroupGroupoid(GroupGroupoid),
    VectorSpace(VectorSpaceGroupoid),
}

fn parse_err(field: impl Into<String>, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{}: {msg}", field.into()))
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Deterministic pretty JSON with sorted keys.
fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

struct Labels<'a> {
    index: HashMap<&'a str, usize>,
}

impl<'a> Labels<'a> {
    fn new(labels: &'a [String], field: &str) -> Result<Self, CliError> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(parse_err(format!("{field}[{i}]"), format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { index })
    }

    fn get(&self, label: &str, field: &str) -> Result<usize, CliError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| parse_err(field, format!("unknown label `{label}`")))
    }

    /// A total map over `keys`, given as labels.
    fn total(&self, map: &LabelMap, keys: &[String], field: &str) -> Result<Vec<usize>, CliError> {
        let domain: HashSet<&String> = keys.iter().collect();
        for k in map.keys() {
            if !domain.contains(k) {
                return Err(parse_err(format!("{field}.{k}"), "key is not in the domain"));
            }
        }
        keys.iter()
            .map(|k| {
                let v = map
                    .get(k)
                    .ok_or_else(|| parse_err(format!("{field}.{k}"), "missing entry"))?;
                self.get(v, &format!("{field}.{k}"))
            })
            .collect()
    }
}

/// Dense table `rows[a][b]` over `keys` from a nested label map.
fn dense(table: &Table, keys: &[String], values: &Labels<'_>, field: &str) -> Result<Vec<Vec<usize>>, CliError> {
    for k in table.keys() {
        if !keys.contains(k) {
            return Err(parse_err(format!("{field}.{k}"), "row label is not in the domain"));
        }
    }
    keys.iter()
        .map(|a| {
            let row = table
                .get(a)
                .ok_or_else(|| parse_err(format!("{field}.{a}"), "missing row"))?;
            values.total(row, keys, &format!("{field}.{a}"))
        })
        .collect()
}

fn sparse(rows: impl Fn(usize, usize) -> usize, keys: &[String], values: &[String]) -> Table {
    keys.iter()
        .enumerate()
        .map(|(a, ka)| {
            let row = keys
                .iter()
                .enumerate()
                .map(|(b, kb)| (kb.clone(), values[rows(a, b)].clone()))
                .collect();
            (ka.clone(), row)
        })
        .collect()
}

fn groupoid_from_raw(raw: &RawGroupoid) -> Result<FiniteGroupoid, CliError> {
    if raw.format_version != FORMAT_VERSION {
        return Err(parse_err(
            "format_version",
            format!("unsupported version {} (expected {FORMAT_VERSION})", raw.format_version),
        ));
    }
    if raw.elements.is_empty() {
        return Err(parse_err("elements", "element list is empty"));
    }
    let labels = Labels::new(&raw.elements, "elements")?;
    let units = raw
        .units
        .iter()
        .enumerate()
        .map(|(i, u)| labels.get(u, &format!("units[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if units.is_empty() {
        return Err(parse_err("units", "unit list is empty"));
    }
    let alpha = labels.total(&raw.alpha, &raw.elements, "alpha")?;
    let beta = labels.total(&raw.beta, &raw.elements, "beta")?;
    let inv = labels.total(&raw.inv, &raw.elements, "inv")?;
    let mut seen = HashMap::new();
    let mut mul = Vec::with_capacity(raw.mul.len());
    for (i, [x, y, z]) in raw.mul.iter().enumerate() {
        let field = format!("mul[{i}]");
        let t = (labels.get(x, &field)?, labels.get(y, &field)?, labels.get(z, &field)?);
        if let Some(j) = seen.insert((t.0, t.1), i) {
            return Err(parse_err(field, format!("product {x}·{y} already given at mul[{j}]")));
        }
        mul.push(t);
    }
    let base_labels = match &raw.base_labels {
        None => None,
        Some(b) => {
            let unit_labels = raw.units.clone();
            for k in b.keys() {
                if !unit_labels.contains(k) {
                    return Err(parse_err(format!("base_labels.{k}"), "key is not a unit"));
                }
            }
            Some(
                unit_labels
                    .iter()
                    .map(|u| {
                        b.get(u)
                            .cloned()
                            .ok_or_else(|| parse_err(format!("base_labels.{u}"), "missing entry"))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
    };
    FiniteGroupoid::from_tables(GroupoidTables {
        labels: raw.elements.clone(),
        units,
        alpha,
        beta,
        inv,
        mul,
        base_labels,
    })
    .map_err(|e| CliError::Parse(e.to_string()))
}

fn unit_labels(g: &FiniteGroupoid) -> Vec<String> {
    g.units().iter().map(|&u| g.label(u).to_string()).collect()
}

fn raw_from_groupoid(g: &FiniteGroupoid, kind: &str) -> RawGroupoid {
    let l = |x: usize| g.label(x).to_string();
    let map = |f: &dyn Fn(usize) -> usize| g.elements().map(|x| (l(x), l(f(x)))).collect::<LabelMap>();
    let mul = g
        .elements()
        .flat_map(|x| g.row(x).iter().map(move |&(y, z)| [l(x), l(y), l(z)]))
        .collect();
    RawGroupoid {
        format_version: FORMAT_VERSION,
        kind: kind.into(),
        elements: g.labels().to_vec(),
        units: unit_labels(g),
        alpha: map(&|x| g.source(x)),
        beta: map(&|x| g.target(x)),
        inv: map(&|x| g.inverse(x)),
        mul,
        base_labels: g
            .base_labels()
            .map(|b| g.units().iter().zip(b).map(|(&u, name)| (l(u), name.clone())).collect()),
        degree: None,
        omega: None,
        omega0: None,
        p: None,
        scalar: None,
        scalar0: None,
    }
}

fn require<'a, T>(field: &'a Option<T>, name: &str, kind: &str) -> Result<&'a T, CliError> {
    field
        .as_ref()
        .ok_or_else(|| parse_err(name, format!("required for kind `{kind}`")))
}

fn forbid<T>(field: &Option<T>, name: &str, kind: &str) -> Result<(), CliError> {
    match field {
        Some(_) => Err(parse_err(name, format!("not allowed for kind `{kind}`"))),
        None => Ok(()),
    }
}

fn group_groupoid_from_raw(raw: &RawGroupoid, g: FiniteGroupoid) -> Result<GroupGroupoid, CliError> {
    let kind = raw.kind.as_str();
    let units = unit_labels(&g);
    let el = Labels::new(&raw.elements, "elements")?;
    let un = Labels::new(&units, "units")?;
    let rows = dense(require(&raw.omega, "omega", kind)?, &raw.elements, &el, "omega")?;
    let rows0 = dense(require(&raw.omega0, "omega0", kind)?, &units, &un, "omega0")?;
    let omega = GroupTable::from_rows(raw.elements.clone(), rows).map_err(|e| parse_err("omega", e))?;
    let omega0 = GroupTable::from_rows(g.base(), rows0).map_err(|e| parse_err("omega0", e))?;
    GroupGroupoid::new(g, omega, omega0).map_err(|e| CliError::Parse(e.to_string()))
}

fn scalar_rows(table: &Table, p: u32, keys: &[String], values: &Labels<'_>, field: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let scalars: Vec<String> = (0..p).map(|k| k.to_string()).collect();
    for k in table.keys() {
        if !scalars.contains(k) {
            return Err(parse_err(format!("{field}.{k}"), format!("scalar is not in GF({p})")));
        }
    }
    scalars
        .iter()
        .map(|k| {
            let row = table
                .get(k)
                .ok_or_else(|| parse_err(format!("{field}.{k}"), "missing scalar row"))?;
            values.total(row, keys, &format!("{field}.{k}"))
        })
        .collect()
}

impl Document {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        match self {
            Document::Plain(g) | Document::Quasiperm { groupoid: g, .. } => g,
            Document::GroupGroupoid(gg) => &gg.carrier,
            Document::VectorSpace(v) => &v.gg.carrier,
        }
    }

    pub fn into_groupoid(self) -> FiniteGroupoid {
        match self {
            Document::Plain(g) | Document::Quasiperm { groupoid: g, .. } => g,
            Document::GroupGroupoid(gg) => gg.carrier,
            Document::VectorSpace(v) => v.gg.carrier,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Plain(_) => "plain",
            Document::Quasiperm { .. } => "quasiperm",
            Document::GroupGroupoid(_) => "group-groupoid",
            Document::VectorSpace(_) => "vsg",
        }
    }

    pub fn from_raw(raw: &RawGroupoid) -> Result<Self, CliError> {
        let g = groupoid_from_raw(raw)?;
        let kind = raw.kind.as_str();
        match kind {
            "plain" | "quasiperm" => {
                for (f, name) in [(&raw.omega, "omega"), (&raw.omega0, "omega0"), (&raw.scalar, "scalar"), (&raw.scalar0, "scalar0")] {
                    forbid(f, name, kind)?;
                }
                forbid(&raw.p, "p", kind)?;
                if kind == "plain" {
                    forbid(&raw.degree, "degree", kind)?;
                    return Ok(Document::Plain(g));
                }
                let degree = *require(&raw.degree, "degree", kind)?;
                for (i, l) in raw.elements.iter().enumerate() {
                    Quasipermutation::parse(degree, l).map_err(|e| parse_err(format!("elements[{i}]"), e))?;
                }
                Ok(Document::Quasiperm { groupoid: g, degree })
            }
            "group-groupoid" => {
                forbid(&raw.degree, "degree", kind)?;
                forbid(&raw.p, "p", kind)?;
                forbid(&raw.scalar, "scalar", kind)?;
                forbid(&raw.scalar0, "scalar0", kind)?;
                Ok(Document::GroupGroupoid(group_groupoid_from_raw(raw, g)?))
            }
            "vsg" => {
                forbid(&raw.degree, "degree", kind)?;
                let p = *require(&raw.p, "p", kind)?;
                let units = unit_labels(&g);
                let el = Labels::new(&raw.elements, "elements")?;
                let un = Labels::new(&units, "units")?;
                let phi = scalar_rows(require(&raw.scalar, "scalar", kind)?, p, &raw.elements, &el, "scalar")?;
                let phi0 = scalar_rows(require(&raw.scalar0, "scalar0", kind)?, p, &units, &un, "scalar0")?;
                let gg = group_groupoid_from_raw(raw, g)?;
                let v = VectorSpaceGroupoid::new(gg, p, phi, phi0).map_err(|e| parse_err("p", e))?;
                Ok(Document::VectorSpace(v))
            }
            other => Err(parse_err("kind", format!("unknown kind `{other}`"))),
        }
    }

    pub fn to_raw(&self) -> RawGroupoid {
        let mut raw = raw_from_groupoid(self.groupoid(), self.kind());
        let gg = match self {
            Document::Plain(_) => return raw,
            Document::Quasiperm { degree, .. } => {
                raw.degree = Some(*degree);
                return raw;
            }
            Document::GroupGroupoid(gg) => gg,
            Document::VectorSpace(v) => &v.gg,
        };
        let g = &gg.carrier;
        let units = unit_labels(g);
        raw.omega = Some(sparse(|a, b| gg.omega.op(a, b), g.labels(), g.labels()));
        raw.omega0 = Some(sparse(|a, b| gg.omega0.op(a, b), &units, &units));
        if let Document::VectorSpace(v) = self {
            raw.p = Some(v.field.characteristic());
            let rows = |phi: &[Vec<usize>], values: &[String]| -> Table {
                phi.iter()
                    .enumerate()
                    .map(|(k, row)| {
                        let m = row.iter().enumerate().map(|(x, &y)| (values[x].clone(), values[y].clone())).collect();
                        (k.to_string(), m)
                    })
                    .collect()
            };
            raw.scalar = Some(rows(&v.phi, g.labels()));
            raw.scalar0 = Some(rows(&v.phi0, &units));
        }
        raw
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawGroupoid = serde_json::from_str(text).map_err(json_err)?;
        Self::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        canonical(&self.to_raw())
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?).map_err(|e| e.in_file(path))
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// A standalone group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    pub format_version: u32,
    pub elements: Vec<String>,
    pub table: Table,
}

pub fn parse_group(text: &str) -> Result<GroupTable, CliError> {
    let raw: RawGroup = serde_json::from_str(text).map_err(json_err)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(parse_err("format_version", format!("unsupported version {}", raw.format_version)));
    }
    if raw.elements.is_empty() {
        return Err(parse_err("elements", "element list is empty"));
    }
    let labels = Labels::new(&raw.elements, "elements")?;
    let rows = dense(&raw.table, &raw.elements, &labels, "table")?;
    GroupTable::from_rows(raw.elements.clone(), rows).map_err(|e| parse_err("table", e))
}

pub fn group_to_json(t: &GroupTable) -> String {
    canonical(&RawGroup {
        format_version: FORMAT_VERSION,
        elements: t.labels().to_vec(),
        table: sparse(|a, b| t.op(a, b), t.labels(), t.labels()),
    })
}

/// The map `X → M` of an induced groupoid, as ordered `[point, base]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPointMap {
    pub format_version: u32,
    pub map: Vec<[String; 2]>,
}

pub fn parse_point_map(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let raw: RawPointMap = serde_json::from_str(text).map_err(json_err)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(parse_err("format_version", format!("unsupported version {}", raw.format_version)));
    }
    if raw.map.is_empty() {
        return Err(parse_err("map", "point map is empty"));
    }
    let mut seen = HashMap::new();
    for (i, [x, _]) in raw.map.iter().enumerate() {
        if let Some(j) = seen.insert(x.clone(), i) {
            return Err(parse_err(format!("map[{i}]"), format!("point `{x}` already mapped at map[{j}]")));
        }
    }
    Ok(raw.map.into_iter().map(|[x, m]| (x, m)).collect())
}

/// A groupoid given by a path (relative to the referring file) or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Path(String),
    Inline(Box<RawGroupoid>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub format_version: u32,
    pub domain: Source,
    pub codomain: Source,
    pub f: LabelMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f0: Option<LabelMap>,
}

fn load_source(src: &Source, dir: &Path, field: &str) -> Result<FiniteGroupoid, CliError> {
    match src {
        Source::Path(p) => {
            let path: PathBuf = dir.join(p);
            Ok(Document::read(&path)?.into_groupoid())
        }
        Source::Inline(raw) => Document::from_raw(raw)
            .map(Document::into_groupoid)
            .map_err(|e| e.prefixed(field)),
    }
}

/// Parses a morphism document; relative paths resolve against `dir`.
///
/// A missing `f0` is read off `f` on the units.
pub fn parse_morphism(text: &str, dir: &Path) -> Result<GroupoidMorphism, CliError> {
    let raw: RawMorphism = serde_json::from_str(text).map_err(json_err)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(parse_err("format_version", format!("unsupported version {}", raw.format_version)));
    }
    let g = load_source(&raw.domain, dir, "domain")?;
    let h = load_source(&raw.codomain, dir, "codomain")?;
    let targets = Labels::new(h.labels(), "codomain.elements")?;
    let map = targets.total(&raw.f, g.labels(), "f")?;
    let unit_map = match &raw.f0 {
        Some(f0) => targets.total(f0, &unit_labels(&g), "f0")?,
        None => g.units().iter().map(|&u| map[u]).collect(),
    };
    GroupoidMorphism::new(g, h, map, unit_map).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn read_morphism(path: &Path) -> Result<GroupoidMorphism, CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_morphism(&read_text(path)?, dir).map_err(|e| e.in_file(path))
}

pub fn morphism_to_json(m: &GroupoidMorphism) -> String {
    let (g, h) = (m.domain(), m.codomain());
    let f = g.elements().map(|x| (g.label(x).to_string(), h.label(m.apply(x)).to_string())).collect();
    let f0 = g
        .units()
        .iter()
        .zip(m.unit_map())
        .map(|(&u, &v)| (g.label(u).to_string(), h.label(v).to_string()))
        .collect();
    canonical(&RawMorphism {
        format_version: FORMAT_VERSION,
        domain: Source::Inline(Box::new(raw_from_groupoid(g, "plain"))),
        codomain: Source::Inline(Box::new(raw_from_groupoid(h, "plain"))),
        f,
        f0: Some(f0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use brandt::constructions::{cyclic_group, pair_groupoid};
    use brandt::quasiperm::symmetric_groupoid;
    use brandt::structured::{pair_group_groupoid, pair_vector_space_groupoid};

    fn round_trip(d: &Document) {
        let text = d.to_json();
        let back = Document::parse(&text).unwrap();
        assert_eq!(&back, d);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn every_kind_round_trips() {
        round_trip(&Document::Plain(pair_groupoid(3).unwrap()));
        round_trip(&Document::Quasiperm {
            groupoid: symmetric_groupoid(2).unwrap().groupoid,
            degree: 2,
        });
        round_trip(&Document::GroupGroupoid(pair_group_groupoid(&cyclic_group(3).unwrap()).unwrap()));
        round_trip(&Document::VectorSpace(pair_vector_space_groupoid(2, 1).unwrap()));
    }

    #[test]
    fn key_and_triple_order_is_canonical() {
        let text = r#"{"mul": [["e","e","e"]], "units": ["e"], "inv": {"e": "e"},
            "beta": {"e": "e"}, "alpha": {"e": "e"}, "elements": ["e"], "format_version": 1}"#;
        let d = Document::parse(text).unwrap();
        let out = d.to_json();
        let keys: Vec<&str> = out.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(out.contains("\"kind\": \"plain\""));
    }

    #[test]
    fn empty_elements_is_a_parse_error() {
        let text = r#"{"format_version": 1, "elements": [], "units": [], "alpha": {}, "beta": {}, "inv": {}, "mul": []}"#;
        let e = Document::parse(text).unwrap_err();
        assert!(matches!(e, CliError::Parse(_)));
        assert!(e.to_string().contains("elements"));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let base = pair_groupoid(2).unwrap();
        let mut raw = Document::Plain(base).to_raw();
        raw.mul[1][2] = "nope".into();
        let e = Document::from_raw(&raw).unwrap_err().to_string();
        assert!(e.contains("mul[1]") && e.contains("nope"), "{e}");

        let mut raw = Document::Plain(pair_groupoid(2).unwrap()).to_raw();
        let dup = raw.mul[0].clone();
        raw.mul.push(dup);
        let e = Document::from_raw(&raw).unwrap_err().to_string();
        assert!(e.contains("already given"), "{e}");

        let e = Document::parse("{\n  \"format_version\": 1,\n  oops\n}").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut v = serde_json::to_value(Document::Plain(pair_groupoid(1).unwrap()).to_raw()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(Document::parse(&v.to_string()).is_err());
    }

    #[test]
    fn group_documents_round_trip() {
        let t = cyclic_group(4).unwrap();
        let text = group_to_json(&t);
        assert_eq!(parse_group(&text).unwrap(), t);
    }

    #[test]
    fn inline_morphisms_round_trip() {
        let z4 = brandt::constructions::from_group(&cyclic_group(4).unwrap()).unwrap();
        let z2 = brandt::constructions::from_group(&cyclic_group(2).unwrap()).unwrap();
        let m = GroupoidMorphism::from_element_map(z4, z2, vec![0, 1, 0, 1]).unwrap();
        let text = morphism_to_json(&m);
        let back = parse_morphism(&text, Path::new(".")).unwrap();
        assert_eq!(back.map(), m.map());
        assert_eq!(morphism_to_json(&back), text);
    }
}
