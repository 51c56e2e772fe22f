//! Command implementations. Each returns the text for standard output or a
//! [`CliError`] carrying the report and the exit code.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use brandt::constructions::{
    cyclic_group, direct_product, disjoint_union, from_group, induced_groupoid, left_translation_groupoid,
    null_groupoid, pair_groupoid, whitney_sum,
};
use brandt::morphisms::correspondence_check;
use brandt::quasiperm::{alternating_groupoid, symmetric_groupoid, DEFAULT_DEGREE_BOUND};
use brandt::structured::{
    pair_group_groupoid, pair_vector_space_groupoid, validate_group_groupoid, validate_group_groupoid_by_morphisms,
    validate_vector_space_groupoid, validate_vector_space_groupoid_by_definition,
};
use brandt::subgroupoids::enumerate_subgroupoids;
use brandt::{count_formulas, enumerated_counts, CountsBig, FiniteGroupoid, GroupoidMorphism, Quasipermutation, ValidationReport};

use crate::document::{parse_group, parse_point_map, read_morphism, read_text, Document};
use crate::error::CliError;

pub type Output = Result<String, CliError>;

fn section(out: &mut String, name: &str, r: &ValidationReport) -> bool {
    if r.passed() {
        let _ = writeln!(out, "{name}: pass");
    } else {
        let _ = writeln!(out, "{name}: FAIL");
        for v in r.violations() {
            let _ = writeln!(out, "  {v}");
        }
    }
    r.passed()
}

fn finish(mut out: String, ok: bool) -> Output {
    out.push_str(if ok { "verdict: PASS\n" } else { "verdict: FAIL\n" });
    if ok {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn quasiperm_report(g: &FiniteGroupoid, degree: usize) -> Result<ValidationReport, CliError> {
    let mut r = ValidationReport::new();
    let perms = g
        .labels()
        .iter()
        .map(|l| Quasipermutation::parse(degree, l))
        .collect::<Result<Vec<_>, _>>()?;
    let mut by_domain: HashMap<&[usize], usize> = HashMap::new();
    for p in &perms {
        *by_domain.entry(p.domain()).or_default() += 1;
    }
    for x in g.elements() {
        for &(y, z) in g.row(x) {
            if perms[x].then(&perms[y])?.as_ref() != Some(&perms[z]) {
                r.push(
                    brandt::Rule::Composability,
                    vec![x, y],
                    format!("{}·{} = {} does not match composition of maps", g.label(x), g.label(y), g.label(z)),
                );
            }
        }
        let range = perms[x].range();
        if g.row(x).len() != by_domain.get(range.as_slice()).copied().unwrap_or(0) {
            r.push(
                brandt::Rule::Composability,
                vec![x],
                format!("products of {} do not cover the maps defined on its range", g.label(x)),
            );
        }
    }
    Ok(r)
}

pub fn verify(path: &Path) -> Output {
    let doc = Document::read(path)?;
    let g = doc.groupoid();
    let mut out = format!("kind: {}\ntype: {}\n", doc.kind(), g.groupoid_type());
    let mut ok = section(&mut out, "groupoid axioms", &g.validate());
    match &doc {
        Document::Plain(_) => {}
        Document::Quasiperm { degree, .. } => {
            ok &= section(&mut out, "quasipermutation products", &quasiperm_report(g, *degree)?);
        }
        Document::GroupGroupoid(gg) => {
            ok &= section(&mut out, "group-groupoid laws", &validate_group_groupoid(gg)?);
            ok &= section(&mut out, "group-groupoid morphisms", &validate_group_groupoid_by_morphisms(gg)?);
        }
        Document::VectorSpace(v) => {
            ok &= section(&mut out, "vector space groupoid laws", &validate_vector_space_groupoid(v)?);
            ok &= section(
                &mut out,
                "vector space groupoid definition",
                &validate_vector_space_groupoid_by_definition(v)?,
            );
        }
    }
    finish(out, ok)
}

#[derive(Clone, Debug)]
pub enum Build {
    Pair(usize),
    Null(usize),
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Union(Vec<PathBuf>),
    Product(PathBuf, PathBuf),
    Whitney(PathBuf, PathBuf),
    Induced(PathBuf, PathBuf),
    Cayley(PathBuf),
    PairGg(PathBuf),
    PairVsg(u32, usize),
}

fn load(path: &Path) -> Result<FiniteGroupoid, CliError> {
    Ok(Document::read(path)?.into_groupoid())
}

pub fn build(what: &Build) -> Output {
    let doc = match what {
        Build::Pair(n) => Document::Plain(pair_groupoid(*n)?),
        Build::Null(k) => Document::Plain(null_groupoid(&(1..=*k).map(|i| i.to_string()).collect::<Vec<_>>())?),
        Build::Cyclic(n) => Document::Plain(from_group(&cyclic_group(*n)?)?),
        Build::Symmetric(n) => Document::Quasiperm {
            groupoid: symmetric_groupoid(*n)?.groupoid,
            degree: *n,
        },
        Build::Alternating(n) => Document::Quasiperm {
            groupoid: alternating_groupoid(*n)?.groupoid,
            degree: *n,
        },
        Build::Union(paths) => {
            let gs = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            Document::Plain(disjoint_union(&gs.iter().collect::<Vec<_>>())?)
        }
        Build::Product(a, b) => Document::Plain(direct_product(&load(a)?, &load(b)?)?),
        Build::Whitney(a, b) => Document::Plain(whitney_sum(&load(a)?, &load(b)?)?),
        Build::Induced(g, map) => {
            let points = parse_point_map(&read_text(map)?).map_err(|e| e.in_file(map))?;
            Document::Plain(induced_groupoid(&load(g)?, &points)?.groupoid)
        }
        Build::Cayley(g) => Document::Plain(left_translation_groupoid(&load(g)?)?.groupoid),
        Build::PairGg(t) => {
            let table = parse_group(&read_text(t)?).map_err(|e| e.in_file(t))?;
            Document::GroupGroupoid(pair_group_groupoid(&table)?)
        }
        Build::PairVsg(p, dim) => Document::VectorSpace(pair_vector_space_groupoid(*p, *dim)?),
    };
    Ok(doc.to_json())
}

fn join<'a>(labels: impl IntoIterator<Item = &'a str>) -> String {
    labels.into_iter().collect::<Vec<_>>().join(", ")
}

pub fn analyze(path: &Path) -> Output {
    let doc = Document::read(path)?;
    let g = doc.groupoid();
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", doc.kind());
    let _ = writeln!(out, "type: {}", g.groupoid_type());
    let _ = writeln!(out, "transitive: {}", if g.is_transitive() { "yes" } else { "no" });
    let _ = writeln!(out, "units: {}", join(g.units().iter().map(|&u| g.label(u))));
    if g.has_base_labels() {
        let _ = writeln!(out, "base: {}", g.base().join(", "));
    }
    let _ = writeln!(out, "isotropy group orders:");
    for &u in g.units() {
        let _ = writeln!(out, "  {}: {}", g.label(u), g.hom_set(u, u).len());
    }
    let _ = writeln!(out, "|Is|: {}", g.isotropy_bundle().len());
    Ok(out)
}

pub fn subgroupoids(path: &Path, normal_only: bool) -> Output {
    let g = load(path)?;
    let all = enumerate_subgroupoids(&g, normal_only)?;
    let mut out = format!(
        "{} {}subgroupoids of a groupoid of type {}\n",
        all.len(),
        if normal_only { "normal " } else { "" },
        g.groupoid_type()
    );
    for h in &all {
        let mut flags = Vec::new();
        if h.is_wide() {
            flags.push("wide");
        }
        if h.is_normal() {
            flags.push("normal");
        }
        let _ = writeln!(
            out,
            "({};{})  {{{}}}  {}",
            h.len(),
            h.units().len(),
            join(h.labels()),
            flags.join(" ")
        );
    }
    Ok(out)
}

pub fn counts(n: usize, formulas_only: bool) -> Output {
    let f: CountsBig = count_formulas(n)?;
    let enumerated = if formulas_only {
        None
    } else if n > DEFAULT_DEGREE_BOUND {
        return Err(CliError::SizeBound(format!(
            "enumeration is limited to degree {DEFAULT_DEGREE_BOUND}; use --formulas-only for n = {n}"
        )));
    } else {
        Some(enumerated_counts(n, DEFAULT_DEGREE_BOUND)?)
    };
    let rows = [
        ("|S_n|", Some(&f.symmetric), enumerated.as_ref().map(|e| e.symmetric)),
        ("|S_n,0|", Some(&f.symmetric_units), enumerated.as_ref().map(|e| e.symmetric_units)),
        ("|Is(S_n)|", Some(&f.symmetric_isotropy), enumerated.as_ref().map(|e| e.symmetric_isotropy)),
        ("|A_n|", f.alternating.as_ref(), enumerated.as_ref().and_then(|e| e.alternating)),
        ("|A_n,0|", f.alternating_units.as_ref(), enumerated.as_ref().and_then(|e| e.alternating_units)),
        ("|Is(A_n)|", f.alternating_isotropy.as_ref(), enumerated.as_ref().and_then(|e| e.alternating_isotropy)),
    ];
    let mut out = format!("n = {n}\n{:<11} {:>20} {:>12}  status\n", "quantity", "formula", "enumerated");
    let mut ok = true;
    for (name, formula, listed) in rows {
        let Some(formula) = formula else {
            let _ = writeln!(out, "{name:<11} {:>20} {:>12}  undefined for n < 2", "-", "-");
            continue;
        };
        let (listed, status) = match listed {
            None => ("-".to_string(), "formula only"),
            Some(v) if v.to_string() == formula.to_string() => (v.to_string(), "match"),
            Some(v) => {
                ok = false;
                (v.to_string(), "MISMATCH")
            }
        };
        let _ = writeln!(out, "{name:<11} {:>20} {listed:>12}  {status}", formula.to_string());
    }
    if ok {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum MorphismQuery {
    Verify,
    Strong,
    Kernel,
    Image,
    Correspondence,
}

fn strong_morphism(m: &GroupoidMorphism) -> Result<(), CliError> {
    match m.strong_witness() {
        None => Ok(()),
        Some((x, y)) => Err(CliError::Failed(format!(
            "morphism is not strong: f({0})·f({1}) is defined but {0}·{1} is not\n",
            m.domain().label(x),
            m.domain().label(y)
        ))),
    }
}

fn valid_morphism(m: &GroupoidMorphism) -> Result<(), CliError> {
    let r = m.validate();
    if r.passed() {
        Ok(())
    } else {
        let mut out = String::new();
        section(&mut out, "morphism axioms", &r);
        finish(out, false).map(|_| ())
    }
}

pub fn morphism(query: MorphismQuery, path: &Path) -> Output {
    let m = read_morphism(path)?;
    let (g, h) = (m.domain(), m.codomain());
    let mut out = format!("{} -> {}\n", g.groupoid_type(), h.groupoid_type());
    match query {
        MorphismQuery::Verify => {
            let ok = section(&mut out, "morphism axioms", &m.validate());
            if ok {
                let _ = writeln!(out, "injective: {}", m.is_injective());
                let _ = writeln!(out, "surjective: {}", m.is_surjective());
                let _ = writeln!(out, "strong: {}", m.is_strong());
            }
            finish(out, ok)
        }
        MorphismQuery::Strong => {
            valid_morphism(&m)?;
            match m.strong_witness() {
                None => {
                    out.push_str("strong: yes\n");
                    Ok(out)
                }
                Some((x, y)) => {
                    let _ = writeln!(
                        out,
                        "strong: no\nwitness: ({}, {}): f({0})·f({1}) = {}·{} is defined but {0}·{1} is not",
                        g.label(x),
                        g.label(y),
                        h.label(m.apply(x)),
                        h.label(m.apply(y))
                    );
                    Err(CliError::Failed(out))
                }
            }
        }
        MorphismQuery::Kernel => {
            valid_morphism(&m)?;
            let k = m.kernel()?;
            let _ = writeln!(out, "kernel: {{{}}}", join(k.labels()));
            let _ = writeln!(out, "size: {}", k.len());
            let _ = writeln!(out, "normal: {}", if k.is_normal() { "yes" } else { "no" });
            Ok(out)
        }
        MorphismQuery::Image => {
            valid_morphism(&m)?;
            strong_morphism(&m)?;
            let img = m.full_image()?;
            let _ = writeln!(out, "image: {{{}}}", join(img.labels()));
            let _ = writeln!(out, "type: ({};{})", img.len(), img.units().len());
            let _ = writeln!(out, "wide: {}", if img.is_wide() { "yes" } else { "no" });
            Ok(out)
        }
        MorphismQuery::Correspondence => {
            valid_morphism(&m)?;
            strong_morphism(&m)?;
            let r = correspondence_check(&m)?;
            let _ = writeln!(out, "subgroupoids over the kernel: {}", r.over_kernel);
            let _ = writeln!(out, "wide subgroupoids of the codomain: {}", r.codomain_wide);
            let _ = writeln!(out, "normal subgroupoids over the kernel: {}", r.normal_over_kernel);
            let _ = writeln!(out, "normal subgroupoids of the codomain: {}", r.codomain_normal);
            let _ = writeln!(out, "all subgroupoids of the codomain: {}", r.codomain_all);
            let _ = writeln!(out, "bijection: {}", r.bijection);
            let _ = writeln!(out, "normal bijection: {}", r.normal_bijection);
            for f in &r.failures {
                let _ = writeln!(out, "  {f}");
            }
            finish(out, r.passed())
        }
    }
}
