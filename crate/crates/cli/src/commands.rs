use std::fmt::Write as _;
use std::path::Path;

use descoh_core::algebra::{all_subgroups, ElementMap, FiniteGroup, FiniteMonoid, Subgroup};
use descoh_core::cohomology::{h0, h1 as h1_classes};
use descoh_core::crosscheck::{default_catalog, run_verification_suite, Status, SuiteOptions};
use descoh_core::descent::{desc1 as desc1_classes, kernel_of_cocycle};
use descoh_core::document::{ActionSpec, AlgebraSpec, CatalogSpec, SubgroupSpec, SCHEMA_VERSION};
use descoh_core::factorization::{
    b_orbits_of_complements, complements as find_complements, fac as fac_records, fac_classes,
};
use serde_json::{json, Value};

use crate::{read_document, Context, Failure, Format, Output};

/// Table output spells out maps and subgroups up to this order.
const SHOW_MAP_UP_TO: usize = 64;

type CmdResult = Result<Output, Failure>;

fn labels(m: &FiniteMonoid, h: &Subgroup) -> Vec<String> {
    h.elements().map(|a| m.label(a)).collect()
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn document(command: &str, mut body: Value) -> String {
    let fields = body.as_object_mut().expect("command documents are objects");
    fields.insert("schema_version".into(), json!(SCHEMA_VERSION));
    fields.insert("command".into(), json!(command));
    let mut text = serde_json::to_string_pretty(&body).expect("JSON values serialize");
    text.push('\n');
    text
}

fn render(ctx: &Context, command: &str, body: Value, table: impl FnOnce() -> String) -> String {
    match ctx.format {
        Format::Json => document(command, body),
        Format::Table => table(),
    }
}

fn load_group(ctx: &Context, path: &Path) -> Result<FiniteGroup, Failure> {
    let spec: AlgebraSpec = read_document(path)?;
    Ok(spec.build_group(&ctx.limits)?)
}

fn structure(m: &FiniteMonoid) -> &'static str {
    if m.is_group() {
        "group"
    } else {
        "monoid"
    }
}

pub fn validate(ctx: &Context, path: &Path) -> CmdResult {
    let spec: AlgebraSpec = read_document(path)?;
    Ok(match spec.build(&ctx.limits) {
        Ok(m) => {
            let body = json!({
                "valid": true,
                "structure": structure(&m),
                "order": m.order(),
                "commutative": m.is_commutative(),
            });
            let text = render(ctx, "validate", body, || {
                let comm = if m.is_commutative() {
                    "commutative "
                } else {
                    ""
                };
                format!("{comm}{} of order {}\n", structure(&m), m.order())
            });
            Output {
                text,
                success: true,
            }
        }
        Err(e) => {
            let body = json!({ "valid": false, "error": e.to_string() });
            let text = render(ctx, "validate", body, || format!("invalid: {e}\n"));
            Output {
                text,
                success: false,
            }
        }
    })
}

pub fn subgroups(ctx: &Context, path: &Path) -> CmdResult {
    let a = load_group(ctx, path)?;
    let subs = all_subgroups(&a, &ctx.limits)?;
    let listed: Vec<Value> = subs
        .iter()
        .enumerate()
        .map(|(i, h)| json!({ "index": i, "order": h.order(), "elements": labels(&a, h) }))
        .collect();
    let body = json!({ "group_order": a.order(), "subgroups": listed });
    let text = render(ctx, "subgroups", body, || {
        let mut out = format!(
            "{} subgroups of a group of order {}\n",
            subs.len(),
            a.order()
        );
        for (i, h) in subs.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i:>4}  order {:<4} {}",
                h.order(),
                set_text(&labels(&a, h))
            );
        }
        out
    });
    Ok(Output {
        text,
        success: true,
    })
}

pub fn complements(ctx: &Context, path: &Path, selector: &SubgroupSpec) -> CmdResult {
    let a = load_group(ctx, path)?;
    let b = selector.resolve(&a, &ctx.limits)?;
    let set = find_complements(&a, &b, &ctx.limits)?;
    let orbits = b_orbits_of_complements(&set, &ctx.limits);
    let mut class_of = vec![0; set.members.len()];
    for (c, members) in orbits.classes().iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let listed: Vec<Value> = set
        .members
        .iter()
        .zip(&class_of)
        .map(|(x, c)| json!({ "class": c, "elements": labels(&a, x) }))
        .collect();
    let body = json!({
        "group_order": a.order(),
        "subgroup": labels(&a, &b),
        "complement_count": set.members.len(),
        "class_count": orbits.class_count(),
        "complements": listed,
    });
    let text = render(ctx, "complements", body, || {
        if set.members.is_empty() {
            return "no complements\n".to_string();
        }
        let mut out = format!(
            "{} complement(s) in {} class(es) under conjugation by B = {}\n",
            set.members.len(),
            orbits.class_count(),
            set_text(&labels(&a, &b))
        );
        for (x, c) in set.members.iter().zip(&class_of) {
            let _ = writeln!(out, "[class {c}] {}", set_text(&labels(&a, x)));
        }
        out
    });
    Ok(Output {
        text,
        success: true,
    })
}

/// `a -> q(a)` spelled with element labels.
fn map_text(q: &ElementMap) -> String {
    let pairs: Vec<String> = q
        .domain()
        .elements()
        .map(|a| {
            format!(
                "{} -> {}",
                q.domain().label(a),
                q.codomain().label(q.apply(a))
            )
        })
        .collect();
    pairs.join(", ")
}

pub fn desc1(ctx: &Context, path: &Path, selector: &SubgroupSpec) -> CmdResult {
    let a = load_group(ctx, path)?;
    let b = selector.resolve(&a, &ctx.limits)?;
    let b_group = a.subgroup_as_group(&b);
    let iota = ElementMap::inclusion(&b_group).expect("restricted group");
    let classes = desc1_classes(&iota, None, &ctx.limits)?;
    let mut rows = Vec::new();
    for (c, members) in classes.partition.classes().iter().enumerate() {
        let rep = classes.partition.representative(c);
        rows.push((members.len(), rep, kernel_of_cocycle(rep)?));
    }
    let listed: Vec<Value> = rows
        .iter()
        .map(|(size, rep, kernel)| {
            json!({
                "size": size,
                "representative": rep.values(),
                "kernel": labels(&a, kernel),
            })
        })
        .collect();
    let body = json!({
        "group_order": a.order(),
        "subgroup": labels(&a, &b),
        "cocycle_count": classes.cocycles().len(),
        "class_count": classes.len(),
        "classes": listed,
    });
    let text = render(ctx, "desc1", body, || {
        let b_text = if b.order() <= SHOW_MAP_UP_TO {
            set_text(&labels(&a, &b))
        } else {
            format!("a subgroup of order {}", b.order())
        };
        let mut out = format!(
            "Desc1: {} class(es), {} cocycle(s), B = {b_text}\n",
            classes.len(),
            classes.cocycles().len(),
        );
        for (c, (size, rep, kernel)) in rows.iter().enumerate() {
            let _ = writeln!(
                out,
                "class {c}: {size} cocycle(s), kernel {}",
                set_text(&labels(&a, kernel))
            );
            if a.order() <= SHOW_MAP_UP_TO {
                let _ = writeln!(out, "  q: {}", map_text(rep.map()));
            }
        }
        out
    });
    Ok(Output {
        text,
        success: true,
    })
}

pub fn fac(ctx: &Context, path: &Path) -> CmdResult {
    let a = load_group(ctx, path)?;
    let records = fac_records(&a, &ctx.limits)?;
    let classes = fac_classes(&a, &records);
    let listed: Vec<Value> = records
        .iter()
        .map(|r| json!({ "b": labels(&a, &r.b), "x": labels(&a, &r.x) }))
        .collect();
    let body = json!({
        "group_order": a.order(),
        "fac_count": records.len(),
        "factorizations": listed,
        "class_count": classes.class_count(),
        "classes": classes.classes(),
    });
    let text = render(ctx, "fac", body, || {
        let mut out = format!("FAC: {} factorization(s)\n", records.len());
        for (i, r) in records.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i:>4}  B = {}  X = {}",
                set_text(&labels(&a, &r.b)),
                set_text(&labels(&a, &r.x))
            );
        }
        let _ = writeln!(out, "Fac: {} class(es)", classes.class_count());
        for (c, members) in classes.classes().iter().enumerate() {
            let ids: Vec<String> = members.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "class {c}: {}", ids.join(" "));
        }
        out
    });
    Ok(Output {
        text,
        success: true,
    })
}

pub fn h1(ctx: &Context, path: &Path) -> CmdResult {
    let spec: ActionSpec = read_document(path)?;
    let action = spec.build(&ctx.limits)?;
    let target = action.target();
    let fixed = h0(&action);
    let classes = h1_classes(&action, &ctx.limits)?;
    let listed: Vec<Value> = classes
        .partition
        .classes()
        .iter()
        .enumerate()
        .map(|(c, members)| {
            json!({
                "size": members.len(),
                "base": classes.base_class == Some(c),
                "representative": classes.partition.representative(c).values(),
            })
        })
        .collect();
    let body = json!({
        "h0": labels(target, &fixed),
        "cocycle_count": classes.cocycles().len(),
        "h1_count": classes.len(),
        "classes": listed,
    });
    let text = render(ctx, "h1", body, || {
        let mut out = format!(
            "H0: {} (order {})\nH1: {} class(es), {} cocycle(s)\n",
            set_text(&labels(target, &fixed)),
            fixed.order(),
            classes.len(),
            classes.cocycles().len()
        );
        for (c, members) in classes.partition.classes().iter().enumerate() {
            let base = if classes.base_class == Some(c) {
                " (base)"
            } else {
                ""
            };
            let rep = classes.partition.representative(c);
            let _ = writeln!(
                out,
                "class {c}{base}: {} cocycle(s), q: {}",
                members.len(),
                map_text(rep.map())
            );
        }
        out
    });
    Ok(Output {
        text,
        success: true,
    })
}

pub fn verify(ctx: &Context, path: Option<&Path>, dump: bool) -> CmdResult {
    let catalog = match path {
        Some(p) => {
            let catalog: CatalogSpec = read_document(p)?;
            if catalog.schema_version != SCHEMA_VERSION {
                return Err(Failure::Input(format!(
                    "{}: schema version {} is not supported (expected {SCHEMA_VERSION})",
                    p.display(),
                    catalog.schema_version
                )));
            }
            catalog
        }
        None => default_catalog(),
    };
    if dump {
        let mut text = serde_json::to_string_pretty(&catalog).expect("catalogs serialize");
        text.push('\n');
        return Ok(Output {
            text,
            success: true,
        });
    }
    let options = SuiteOptions {
        limits: ctx.limits.clone(),
        timings: ctx.timings,
    };
    let report = run_verification_suite(&catalog, &options);
    let failed = report.failures().count();
    let text = match ctx.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
            text.push('\n');
            text
        }
        Format::Table => {
            let mut out = String::new();
            for r in &report.records {
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                };
                let _ = write!(out, "{status}  {}  {}", r.instance, r.theorem_id);
                if let Some(ms) = r.elapsed_ms {
                    let _ = write!(out, "  ({ms} ms)");
                }
                if let Some(w) = &r.witness {
                    let _ = write!(out, "\n      {w}");
                }
                out.push('\n');
            }
            let _ = writeln!(out, "{} check(s), {failed} failed", report.records.len());
            out
        }
    };
    Ok(Output {
        text,
        success: failed == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use descoh_core::exec::Limits;

    #[test]
    fn documents_carry_schema_and_command() {
        let text = document("fac", json!({ "fac_count": 0 }));
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(value["command"], json!("fac"));
    }

    #[test]
    fn verify_empty_catalog() {
        let ctx = Context {
            format: Format::Table,
            limits: Limits::default(),
            timings: false,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.json");
        std::fs::write(&path, r#"{"schema_version":1,"entries":[]}"#).unwrap();
        let out = verify(&ctx, Some(&path), false).unwrap();
        assert!(out.success);
        assert_eq!(out.text, "0 check(s), 0 failed\n");
    }
}
