//! Report rendering: the exact character-table document, normal-subgroup
//! listings, relative-degree summaries, suite reports in human and
//! structured form, and hunt-mode output. All structured output is
//! byte-deterministic for a fixed corpus and configuration; timings are
//! suppressed there so consecutive runs compare equal.

use serde::Serialize;

use crate::chartab::character_table;
use crate::classes::conjugacy_classes;
use crate::corpus::BuiltGroup;
use crate::error::Result;
use crate::group::PermGroup;
use crate::reldeg::irr_rel;
use crate::structure::normal_subgroups;
use crate::verify::{HuntRow, Status, SuiteReport};

pub const SCHEMA: &str = "chardeg-report/1";

#[derive(Serialize)]
struct TableDoc {
    schema: &'static str,
    group: String,
    order: u64,
    degree: usize,
    class_count: usize,
    exponent: u64,
    dixon_prime: u64,
    classes: Vec<ClassDoc>,
    power_maps: std::collections::BTreeMap<u64, Vec<usize>>,
    rows: Vec<RowDoc>,
}

#[derive(Serialize)]
struct ClassDoc {
    index: usize,
    size: usize,
    rep_order: u64,
    rep_word: String,
    rep_cycles: String,
    inverse_class: usize,
}

#[derive(Serialize)]
struct RowDoc {
    degree: u64,
    values: Vec<(u64, Vec<String>)>,
}

/// The exact table document: class sizes, representative words, power maps,
/// and every value as a (conductor, coefficient array) pair.
pub fn render_table(group: &PermGroup) -> Result<String> {
    let table = character_table(group)?;
    let cd = &table.class_data;
    let classes = (0..cd.class_count())
        .map(|k| ClassDoc {
            index: k,
            size: cd.sizes[k],
            rep_order: cd.rep_orders[k],
            rep_word: group.word(cd.representatives[k]),
            rep_cycles: group.perm(cd.representatives[k]).cycle_string(),
            inverse_class: cd.inverse_map[k],
        })
        .collect();
    let rows = table
        .rows
        .iter()
        .zip(&table.degrees)
        .map(|(row, &degree)| RowDoc {
            degree,
            values: row
                .iter()
                .map(|v| {
                    (
                        v.conductor(),
                        v.coeffs().iter().map(|c| c.to_string()).collect(),
                    )
                })
                .collect(),
        })
        .collect();
    let doc = TableDoc {
        schema: SCHEMA,
        group: group.name().to_string(),
        order: group.order()? as u64,
        degree: group.degree(),
        class_count: cd.class_count(),
        exponent: table.exponent,
        dixon_prime: table.dixon_prime,
        classes,
        power_maps: cd.power_maps.iter().map(|(k, v)| (*k, v.clone())).collect(),
        rows,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("table serialization"))
}

/// Normal subgroups of a group: orders, indexes, member counts, generators.
pub fn render_normals(built: &BuiltGroup) -> Result<String> {
    let group = &built.group;
    let normals = normal_subgroups(group)?;
    let order = group.order()?;
    let mut out = String::new();
    out.push_str(&format!(
        "group {}  order {}  normal subgroups {}\n",
        group.name(),
        order,
        normals.len()
    ));
    for h in &normals {
        let tag = built
            .tagged
            .iter()
            .find(|(_, t)| t.members() == h.members())
            .map(|(name, _)| name.as_str())
            .unwrap_or("-");
        let words = h.generator_words();
        out.push_str(&format!(
            "  order {:>6}  index {:>6}  tag {:<8} generators [{}]\n",
            h.order(),
            order / h.order(),
            tag,
            words.join(", ")
        ));
    }
    Ok(out)
}

/// Relative degree sets for the chosen normal subgroups.
pub fn render_reldeg(built: &BuiltGroup, only: Option<&str>) -> Result<String> {
    let group = &built.group;
    let table = character_table(group)?;
    let mut out = String::new();
    out.push_str(&format!("group {}  order {}\n", group.name(), group.order()?));
    let chosen: Vec<(String, crate::subgroup::SubgroupHandle)> = if let Some(name) = only {
        let handle = built
            .tagged
            .iter()
            .find(|(t, _)| t == name)
            .map(|(t, h)| (t.clone(), h.clone()))
            .ok_or_else(|| crate::error::Error::UnknownBuiltin(format!("normal tag {name}")))?;
        vec![handle]
    } else {
        let normals = normal_subgroups(group)?;
        let names = crate::verify::normal_names(built, &normals);
        names.into_iter().zip(normals).collect()
    };
    for (name, handle) in chosen {
        let data = irr_rel(&table, &handle)?;
        let degrees: Vec<String> = data.degrees.iter().map(u64::to_string).collect();
        out.push_str(&format!(
            "  normal {:<8} order {:>6}  members {:>3}  cd(G|N) = {{{}}}",
            name,
            handle.order(),
            data.members.len(),
            degrees.join(", ")
        ));
        match (data.min(), data.max()) {
            (Some(min), Some(max)) => out.push_str(&format!("  min {min}  max {max}\n")),
            _ => out.push_str("  (empty)\n"),
        }
    }
    Ok(out)
}

// -------------------------------------------------------------------
// Suite reports
// -------------------------------------------------------------------

#[derive(Serialize)]
struct ReportDoc {
    schema: &'static str,
    config: ConfigDoc,
    groups: Vec<GroupDoc>,
    outcomes: Vec<OutcomeDoc>,
    aggregate: AggregateDoc,
}

#[derive(Serialize)]
struct ConfigDoc {
    theorems: Vec<&'static str>,
    normal_selection: &'static str,
    max_order: Option<u64>,
    guards: crate::guards::Guards,
}

#[derive(Serialize)]
struct GroupDoc {
    name: String,
    order: u64,
    degree: usize,
    class_count: Option<usize>,
    exponent: Option<u64>,
    dixon_prime: Option<u64>,
}

#[derive(Serialize)]
struct OutcomeDoc {
    theorem: &'static str,
    group: String,
    normal: NormalDoc,
    status: &'static str,
    detail: Vec<(String, String)>,
    millis: u64,
}

#[derive(Serialize)]
struct NormalDoc {
    name: String,
    order: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct AggregateDoc {
    pass: u64,
    fail: u64,
    inapplicable: u64,
    skipped: u64,
}

/// Structured suite report. Millisecond timings are zeroed so that two
/// identical runs serialize to identical bytes.
pub fn render_suite_structured(report: &SuiteReport) -> String {
    let doc = ReportDoc {
        schema: SCHEMA,
        config: ConfigDoc {
            theorems: report.config.theorems.iter().map(|t| t.as_str()).collect(),
            normal_selection: if report.config.tagged_only { "tagged" } else { "all" },
            max_order: report.config.max_order,
            guards: report.config.guards,
        },
        groups: report
            .groups
            .iter()
            .map(|g| GroupDoc {
                name: g.name.clone(),
                order: g.order,
                degree: g.degree,
                class_count: g.classes,
                exponent: g.exponent,
                dixon_prime: g.dixon_prime,
            })
            .collect(),
        outcomes: report
            .outcomes
            .iter()
            .map(|o| OutcomeDoc {
                theorem: o.theorem.as_str(),
                group: o.group.clone(),
                normal: NormalDoc {
                    name: o.normal_name.clone(),
                    order: o.normal_order,
                    generators: o.normal_generators.clone(),
                },
                status: o.status.as_str(),
                detail: o.detail.clone(),
                millis: 0,
            })
            .collect(),
        aggregate: AggregateDoc {
            pass: report.aggregate.pass,
            fail: report.aggregate.fail,
            inapplicable: report.aggregate.inapplicable,
            skipped: report.aggregate.skipped,
        },
    };
    serde_json::to_string_pretty(&doc).expect("report serialization")
}

/// Human suite report: one aligned block per theorem, then the aggregate.
pub fn render_suite_human(report: &SuiteReport) -> String {
    let mut out = String::new();
    for &id in &report.config.theorems {
        let rows: Vec<_> = report.outcomes.iter().filter(|o| o.theorem == id).collect();
        if rows.is_empty() {
            continue;
        }
        out.push_str(&format!("{}  {}\n", id.as_str(), id.statement()));
        for o in rows {
            let note = o
                .detail
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join("  ");
            out.push_str(&format!(
                "  {:<12} {:<10} |N|={:<6} {:<13} {:>5}ms  {}\n",
                o.group,
                o.normal_name,
                o.normal_order,
                o.status.as_str(),
                o.millis,
                note
            ));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "aggregate: pass {}  fail {}  inapplicable {}  skipped {}\n",
        report.aggregate.pass,
        report.aggregate.fail,
        report.aggregate.inapplicable,
        report.aggregate.skipped
    ));
    out
}

// -------------------------------------------------------------------
// Hunt output
// -------------------------------------------------------------------

#[derive(Serialize)]
struct HuntDoc {
    schema: &'static str,
    rows: Vec<HuntRowDoc>,
}

#[derive(Serialize)]
struct HuntRowDoc {
    group: String,
    group_solvable: bool,
    normal: String,
    normal_order: usize,
    degree_count: usize,
    derived_length: u32,
    fitting_height: u32,
    height_ok: bool,
    quadratic_ok: bool,
    linear_ok: Option<bool>,
}

pub fn render_hunt_structured(rows: &[HuntRow]) -> String {
    let doc = HuntDoc {
        schema: SCHEMA,
        rows: rows
            .iter()
            .map(|r| HuntRowDoc {
                group: r.group.clone(),
                group_solvable: r.group_solvable,
                normal: r.normal_name.clone(),
                normal_order: r.normal_order,
                degree_count: r.degree_count,
                derived_length: r.derived_length,
                fitting_height: r.fitting_height,
                height_ok: r.height_ok,
                quadratic_ok: r.quadratic_ok,
                linear_ok: r.linear_ok,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("hunt serialization")
}

pub fn render_hunt_human(rows: &[HuntRow]) -> String {
    let mut out = String::new();
    out.push_str("group        normal     |N|     n   dl   h   h<=n  dl<=n(n+1)/2  dl<=3n\n");
    for r in rows {
        let linear = match r.linear_ok {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        out.push_str(&format!(
            "{:<12} {:<10} {:>5} {:>4} {:>4} {:>3}   {:<5} {:<13} {}\n",
            r.group,
            r.normal_name,
            r.normal_order,
            r.degree_count,
            r.derived_length,
            r.fitting_height,
            if r.height_ok { "yes" } else { "NO" },
            if r.quadratic_ok { "yes" } else { "NO" },
            linear
        ));
    }
    out
}

/// The corpus listing for the `corpus` subcommand.
pub fn render_corpus() -> String {
    let mut out = String::new();
    out.push_str("name        order  family        note\n");
    for e in crate::corpus::corpus() {
        out.push_str(&format!(
            "{:<11} {:>5}  {:<13} {}\n",
            e.name, e.expected_order, e.family, e.note
        ));
    }
    out
}

/// Conjugacy class summary used by tests and the table document.
pub fn class_summary(group: &PermGroup) -> Result<Vec<(usize, u64)>> {
    let cd = conjugacy_classes(group)?;
    Ok((0..cd.class_count())
        .map(|k| (cd.sizes[k], cd.rep_orders[k]))
        .collect())
}

/// Exit codes shared between the CLI and its tests.
pub mod exit_codes {
    /// Some check failed (a defect by construction).
    pub const FAIL: i32 = 1;
    /// Bad input: unknown builtin, malformed file, unknown theorem.
    pub const INPUT: i32 = 2;
    /// A resource guard stopped the computation.
    pub const GUARD: i32 = 3;
}

/// Decide the process exit code for an error.
pub fn exit_code_for(err: &crate::error::Error) -> i32 {
    if err.is_guard() {
        exit_codes::GUARD
    } else {
        exit_codes::INPUT
    }
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}
