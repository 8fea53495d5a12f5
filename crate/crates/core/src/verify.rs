//! Executable checks for structural statements about relative character
//! degrees. Every check evaluates one statement on one (group, normal
//! subgroup) pair with a three-valued outcome plus a guard marker:
//! Inapplicable when the hypothesis fails, Pass when hypothesis and
//! conclusion hold, Fail with a replayable witness otherwise, and Skipped
//! when a resource guard blocks the required quantification. Since every
//! checked statement is a proved theorem, a Fail is always a defect in the
//! engine, which turns the whole suite into an integration oracle.

use std::sync::Arc;
use std::time::Instant;

use crate::arith::{p_part, prime_divisors};
use crate::chartab::{character_table, induce, CharacterTable};
use crate::corpus::BuiltGroup;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::guards::Guards;
use crate::reldeg::{cd_rel_mod, irr_rel, reducing_sections, RelativeDegreeData};
use crate::structure::{
    chief_sections_within, derived_length, derived_subgroup, enumerate_subgroups,
    fitting_height, fitting_subgroup, is_nilpotent, is_normal_in, is_p_solvable,
    nilpotent_residual, normal_p_complement, normal_subgroups, normal_subgroups_within,
    o_p_residual, section_is_abelian, sylow_subgroup,
};
use crate::subgroup::SubgroupHandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    T3_1,
    C3_2,
    C3_3,
    T4_1,
    L4_2,
    C4_3,
    C4_4,
    T4_5,
    L4_6,
    L5_1,
    L5_2,
    T5_3,
    TB,
    TC,
    TD,
    T6_1,
    T6_2,
    C6_3,
}

impl TheoremId {
    pub fn all() -> Vec<TheoremId> {
        use TheoremId::*;
        vec![
            T3_1, C3_2, C3_3, T4_1, L4_2, C4_3, C4_4, T4_5, L4_6, L5_1, L5_2, T5_3, TB, TC, TD,
            T6_1, T6_2, C6_3,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        use TheoremId::*;
        match self {
            T3_1 => "T3.1",
            C3_2 => "C3.2",
            C3_3 => "C3.3",
            T4_1 => "T4.1",
            L4_2 => "L4.2",
            C4_3 => "C4.3",
            C4_4 => "C4.4",
            T4_5 => "T4.5",
            L4_6 => "L4.6",
            L5_1 => "L5.1",
            L5_2 => "L5.2",
            T5_3 => "T5.3",
            TB => "TB",
            TC => "TC",
            TD => "TD",
            T6_1 => "T6.1",
            T6_2 => "T6.2",
            C6_3 => "C6.3",
        }
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        TheoremId::all()
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }

    /// One-line statement of what is being checked.
    pub fn statement(&self) -> &'static str {
        use TheoremId::*;
        match self {
            T3_1 => "with an abelian normal p-complement in N, characters of minimal degree p-part kill N', and cd(G|N') is a proper subset of cd(G|N)",
            C3_2 => "|cd(G|N)| <= 1 forces dl(N) <= |cd(G|N)|, so N is abelian",
            C3_3 => "nilpotent N satisfies dl(N) <= |cd(G|N)|",
            T4_1 => "for max-degree members of Irr(G|N), N meet ker is nilpotent, and abelian chief factors over subgroups of it are nilpotent",
            L4_2 => "K normal with K meet V(chi) inside ker(chi) forces K inside ker(chi)",
            C4_3 => "for solvable nontrivial N, max cd(G|N) dies modulo the Fitting subgroup",
            C4_4 => "solvable N has fitting height at most n and derived length at most n(n+1)/2, n = |cd(G|N)|",
            T4_5 => "solvable G bounds dl(N) by 3|cd(G|N)|",
            L4_6 => "normal M inside N with p-group Fitting subgroup is a p-group when max cd(G|N) survives modulo M'",
            L5_1 => "subgroups of index at most min cd(G|N) contain N; strictly smaller index puts N inside the derived subgroup",
            L5_2 => "a G-invariant character of N with order and degree prime to p lies under some character of p'-degree",
            T5_3 => "|cd(G|N)| = 2 with N solvable forces dl(N) <= 2",
            TB => "|cd(G|N)| <= 2 forces N solvable with dl(N) <= |cd(G|N)|",
            TC => "G p-solvable for all p dividing |N| and |cd(G|N)| = 3 force dl(N) <= 3",
            TD => "if some prime divides every member of cd(G|N'), then N has a normal p-complement",
            T6_1 => "an exceptional reducing p-section for a minimal-degree character forces p = 2, even minimal degree, at least three degrees, and for exactly three: two powers of two, one odd, N/X abelian",
            T6_2 => "K normal with normal Sylow p-subgroup E, O^p(K) = K, three degrees, and min cd(G|N) in cd(G|E) force N/E abelian and E' central in K",
            C6_3 => "solvable G with min cd(G|N) odd or |N| odd keeps that minimum out of cd(G|M), M the nilpotent residual",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "Pass",
            Status::Fail => "Fail",
            Status::Inapplicable => "Inapplicable",
            Status::Skipped => "Skipped",
        }
    }
}

/// Key-value detail attached to an outcome; for a Fail it is a complete
/// witness of the violation.
pub type Detail = Vec<(String, String)>;

pub struct TheoremOutcome {
    pub theorem: TheoremId,
    pub group: String,
    pub normal_name: String,
    pub normal_order: usize,
    pub normal_generators: Vec<String>,
    pub status: Status,
    pub detail: Detail,
    pub millis: u64,
}

/// Everything the checkers share for one (group, normal subgroup) pair.
pub struct PairContext {
    pub group: PermGroup,
    pub table: Arc<CharacterTable>,
    pub normal: SubgroupHandle,
    pub rel: RelativeDegreeData,
}

impl PairContext {
    pub fn new(group: &PermGroup, normal: &SubgroupHandle) -> Result<PairContext> {
        let table = character_table(group)?;
        let rel = irr_rel(&table, normal)?;
        Ok(PairContext {
            group: group.clone(),
            table,
            normal: normal.clone(),
            rel,
        })
    }
}

fn detail(pairs: &[(&str, String)]) -> Detail {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn degrees_text(degrees: &[u64]) -> String {
    let inner: Vec<String> = degrees.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Evaluate one check on one pair.
pub fn check_theorem(id: TheoremId, ctx: &PairContext) -> Result<(Status, Detail)> {
    use TheoremId::*;
    match id {
        T3_1 => check_t3_1(ctx),
        C3_2 => check_c3_2(ctx),
        C3_3 => check_c3_3(ctx),
        T4_1 => check_t4_1(ctx),
        L4_2 => check_l4_2(ctx),
        C4_3 => check_c4_3(ctx),
        C4_4 => check_c4_4(ctx),
        T4_5 => check_t4_5(ctx),
        L4_6 => check_l4_6(ctx),
        L5_1 => check_l5_1(ctx),
        L5_2 => check_l5_2(ctx),
        T5_3 => check_t5_3(ctx),
        TB => check_tb(ctx),
        TC => check_tc(ctx),
        TD => check_td(ctx),
        T6_1 => check_t6_1(ctx),
        T6_2 => check_t6_2(ctx),
        C6_3 => check_c6_3(ctx),
    }
}

fn check_t3_1(ctx: &PairContext) -> Result<(Status, Detail)> {
    if ctx.rel.is_empty() {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    }
    // primes for which N has an abelian normal p-complement
    let mut applicable = Vec::new();
    for p in prime_divisors(ctx.group.order()? as u64) {
        if let Some(witness) = normal_p_complement(&ctx.normal, p)? {
            if derived_subgroup(&witness)?.is_trivial() {
                applicable.push(p);
            }
        }
    }
    if applicable.is_empty() {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "no abelian normal p-complement".into())]),
        ));
    }
    let derived = derived_subgroup(&ctx.normal)?;
    for &p in &applicable {
        let min_part = ctx
            .rel
            .members
            .iter()
            .map(|&r| p_part(ctx.table.degrees[r], p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap();
        for &row in &ctx.rel.members {
            if p_part(ctx.table.degrees[row], p)? != min_part {
                continue;
            }
            if !ctx.table.character(row).kernel_contains(&derived) {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("prime", p.to_string()),
                        ("row", row.to_string()),
                        ("degree", ctx.table.degrees[row].to_string()),
                        ("violation", "minimizer does not kill the derived subgroup".into()),
                    ]),
                ));
            }
        }
    }
    // strictness of the degree-set inclusion
    let rel_derived = irr_rel(&ctx.table, &derived)?;
    let subset = rel_derived
        .degrees
        .iter()
        .all(|d| ctx.rel.degrees.contains(d));
    if !subset || rel_derived.degrees == ctx.rel.degrees {
        return Ok((
            Status::Fail,
            detail(&[
                ("cd(G|N')", degrees_text(&rel_derived.degrees)),
                ("cd(G|N)", degrees_text(&ctx.rel.degrees)),
                ("violation", "degree set not a proper subset".into()),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[
            ("primes", applicable.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            ("cd(G|N')", degrees_text(&rel_derived.degrees)),
            ("cd(G|N)", degrees_text(&ctx.rel.degrees)),
        ]),
    ))
}

fn check_c3_2(ctx: &PairContext) -> Result<(Status, Detail)> {
    let n = ctx.rel.degree_count();
    if n > 1 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", format!("|cd(G|N)| = {n} exceeds 1"))]),
        ));
    }
    let dl = derived_length(&ctx.normal)?;
    match dl {
        Some(d) if d as usize <= n => Ok((
            Status::Pass,
            detail(&[("dl", d.to_string()), ("n", n.to_string())]),
        )),
        _ => Ok((
            Status::Fail,
            detail(&[
                ("dl", format!("{dl:?}")),
                ("n", n.to_string()),
                ("violation", "derived length bound fails".into()),
            ]),
        )),
    }
}

fn check_c3_3(ctx: &PairContext) -> Result<(Status, Detail)> {
    if !is_nilpotent(&ctx.normal)? {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "N is not nilpotent".into())]),
        ));
    }
    let n = ctx.rel.degree_count();
    let dl = derived_length(&ctx.normal)?.expect("nilpotent groups are solvable");
    if dl as usize <= n {
        Ok((
            Status::Pass,
            detail(&[("dl", dl.to_string()), ("n", n.to_string())]),
        ))
    } else {
        Ok((
            Status::Fail,
            detail(&[
                ("dl", dl.to_string()),
                ("n", n.to_string()),
                ("violation", "derived length exceeds the degree count".into()),
            ]),
        ))
    }
}

fn check_t4_1(ctx: &PairContext) -> Result<(Status, Detail)> {
    let Some(max) = ctx.rel.max() else {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    };
    let whole = SubgroupHandle::whole_group(&ctx.group)?;
    let sections = chief_sections_within(&ctx.group, &whole)?;
    for row in ctx.rel.members_of_degree(max) {
        let chi = ctx.table.character(row);
        let kernel = chi.kernel()?;
        let inter = ctx.normal.intersection(&kernel)?;
        if !is_nilpotent(&inter)? {
            return Ok((
                Status::Fail,
                detail(&[
                    ("row", row.to_string()),
                    ("degree", max.to_string()),
                    ("intersection_order", inter.order().to_string()),
                    ("violation", "N meet ker(chi) is not nilpotent".into()),
                ]),
            ));
        }
        for (below, above) in &sections {
            if !section_is_abelian(below, above) || !inter.contains_subgroup(below) {
                continue;
            }
            if !is_nilpotent(above)? {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("row", row.to_string()),
                        ("chief_below", below.order().to_string()),
                        ("chief_above", above.order().to_string()),
                        ("violation", "abelian chief factor head is not nilpotent".into()),
                    ]),
                ));
            }
        }
    }
    Ok((
        Status::Pass,
        detail(&[("max_degree", max.to_string())]),
    ))
}

fn check_l4_2(ctx: &PairContext) -> Result<(Status, Detail)> {
    let normals = normal_subgroups(&ctx.group)?;
    let mut instances = 0u64;
    for row in 0..ctx.table.rows.len() {
        let chi = ctx.table.character(row);
        let kernel = chi.kernel()?;
        let vanishing = chi.vanishing_off()?;
        for k in &normals {
            let meet = k.intersection(&vanishing)?;
            if kernel.contains_subgroup(&meet) {
                instances += 1;
                if !kernel.contains_subgroup(k) {
                    return Ok((
                        Status::Fail,
                        detail(&[
                            ("row", row.to_string()),
                            ("K_order", k.order().to_string()),
                            ("V_order", vanishing.order().to_string()),
                            ("violation", "K meet V inside ker but K not inside ker".into()),
                        ]),
                    ));
                }
            }
        }
    }
    Ok((Status::Pass, detail(&[("instances", instances.to_string())])))
}

fn check_c4_3(ctx: &PairContext) -> Result<(Status, Detail)> {
    if ctx.normal.is_trivial() || derived_length(&ctx.normal)?.is_none() {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "N trivial or not solvable".into())]),
        ));
    }
    let max = ctx.rel.max().expect("nontrivial N has members");
    let fit = fitting_subgroup(&ctx.normal)?;
    let modded = cd_rel_mod(&ctx.table, &ctx.normal, &fit)?;
    if modded.contains(&max) {
        return Ok((
            Status::Fail,
            detail(&[
                ("max", max.to_string()),
                ("cd_mod_fitting", degrees_text(&modded)),
                ("violation", "maximum survives modulo the Fitting subgroup".into()),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[
            ("max", max.to_string()),
            ("fitting_order", fit.order().to_string()),
            ("cd_mod_fitting", degrees_text(&modded)),
        ]),
    ))
}

fn check_c4_4(ctx: &PairContext) -> Result<(Status, Detail)> {
    let Some(dl) = derived_length(&ctx.normal)? else {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "N is not solvable".into())]),
        ));
    };
    let n = ctx.rel.degree_count() as u32;
    let h = fitting_height(&ctx.normal)?;
    let quadratic = n * (n + 1) / 2;
    if h > n || dl > quadratic {
        return Ok((
            Status::Fail,
            detail(&[
                ("n", n.to_string()),
                ("h", h.to_string()),
                ("dl", dl.to_string()),
                ("violation", "fitting height or derived length bound fails".into()),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[
            ("n", n.to_string()),
            ("h", h.to_string()),
            ("dl", dl.to_string()),
            ("quadratic_bound", quadratic.to_string()),
        ]),
    ))
}

fn check_t4_5(ctx: &PairContext) -> Result<(Status, Detail)> {
    if !crate::structure::is_solvable(&ctx.group)? {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "G is not solvable".into())]),
        ));
    }
    let n = ctx.rel.degree_count() as u32;
    let dl = derived_length(&ctx.normal)?
        .ok_or_else(|| Error::Defect("subgroup of a solvable group is not solvable".into()))?;
    if dl > 3 * n {
        return Ok((
            Status::Fail,
            detail(&[
                ("n", n.to_string()),
                ("dl", dl.to_string()),
                ("violation", "linear bound fails".into()),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[("n", n.to_string()), ("dl", dl.to_string()), ("bound", (3 * n).to_string())]),
    ))
}

fn check_l4_6(ctx: &PairContext) -> Result<(Status, Detail)> {
    let Some(max) = ctx.rel.max() else {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    };
    let mut applicable = 0u64;
    for m in normal_subgroups_within(&ctx.group, &ctx.normal)? {
        let fit = fitting_subgroup(&m)?;
        let candidate_primes: Vec<u64> = if fit.is_trivial() {
            prime_divisors(ctx.group.order()? as u64)
        } else {
            let ps = prime_divisors(fit.order() as u64);
            if ps.len() == 1 {
                ps
            } else {
                Vec::new() // Fitting subgroup not a p-group for any p
            }
        };
        if candidate_primes.is_empty() {
            continue;
        }
        let m_derived = derived_subgroup(&m)?;
        let modded = cd_rel_mod(&ctx.table, &ctx.normal, &m_derived)?;
        if !modded.contains(&max) {
            continue;
        }
        for p in candidate_primes {
            applicable += 1;
            if !crate::structure::is_p_group(&m, p) {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("M_order", m.order().to_string()),
                        ("prime", p.to_string()),
                        ("violation", "M is not a p-group".into()),
                    ]),
                ));
            }
        }
    }
    if applicable == 0 {
        Ok((
            Status::Inapplicable,
            detail(&[("reason", "no normal M satisfies the hypothesis".into())]),
        ))
    } else {
        Ok((Status::Pass, detail(&[("instances", applicable.to_string())])))
    }
}

fn check_l5_1(ctx: &PairContext) -> Result<(Status, Detail)> {
    let Some(min) = ctx.rel.min() else {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    };
    let subgroups = match enumerate_subgroups(&ctx.group) {
        Ok(s) => s,
        Err(e) if e.is_guard() => {
            return Ok((
                Status::Skipped,
                detail(&[("reason", format!("subgroup enumeration guard: {e}"))]),
            ));
        }
        Err(e) => return Err(e),
    };
    let order = ctx.group.order()?;
    for h in &subgroups {
        let index = (order / h.order()) as u64;
        if index <= min && !h.contains_subgroup(&ctx.normal) {
            return Ok((
                Status::Fail,
                detail(&[
                    ("subgroup_order", h.order().to_string()),
                    ("index", index.to_string()),
                    ("min", min.to_string()),
                    ("violation", "N not inside a subgroup of small index".into()),
                ]),
            ));
        }
        if index < min && !derived_subgroup(h)?.contains_subgroup(&ctx.normal) {
            return Ok((
                Status::Fail,
                detail(&[
                    ("subgroup_order", h.order().to_string()),
                    ("index", index.to_string()),
                    ("min", min.to_string()),
                    ("violation", "N not inside the derived subgroup".into()),
                ]),
            ));
        }
    }
    Ok((
        Status::Pass,
        detail(&[
            ("min", min.to_string()),
            ("subgroups", subgroups.len().to_string()),
        ]),
    ))
}

fn check_l5_2(ctx: &PairContext) -> Result<(Status, Detail)> {
    let sub = ctx.normal.as_group();
    let sub_table = character_table(&sub)?;
    let sub_cd = &sub_table.class_data;
    let gen_ids = ctx.group.generator_ids()?;
    let group_primes = prime_divisors(ctx.group.order()? as u64);
    if group_primes.is_empty() {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "trivial group".into())]),
        ));
    }
    let mut instances = 0u64;
    for row in 0..sub_table.rows.len() {
        let alpha = sub_table.character(row);
        // invariance under the generators is invariance under the group
        let invariant = gen_ids.iter().all(|&g| {
            sub_cd.representatives.iter().all(|&local| {
                let x = ctx.normal.parent_id(local);
                let moved = ctx.normal.local_id(ctx.group.conj(x, g));
                alpha.values()[sub_cd.class_of[moved as usize]]
                    == alpha.values()[sub_cd.class_of[local as usize]]
            })
        });
        if !invariant {
            continue;
        }
        let (_, det_ord) = alpha.det_order()?;
        let induced = induce(&ctx.normal, &alpha.to_class_function())?;
        let constituents = induced.constituents()?;
        for &p in &group_primes {
            if (det_ord * alpha.degree()) % p == 0 {
                continue;
            }
            instances += 1;
            let has_p_prime_degree = constituents
                .iter()
                .any(|&(r, _)| ctx.table.degrees[r] % p != 0);
            if !has_p_prime_degree {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("alpha_row", row.to_string()),
                        ("alpha_degree", alpha.degree().to_string()),
                        ("prime", p.to_string()),
                        ("violation", "no constituent of p'-degree over alpha".into()),
                    ]),
                ));
            }
        }
    }
    if instances == 0 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "no invariant character with coprime order and degree".into())]),
        ));
    }
    Ok((Status::Pass, detail(&[("instances", instances.to_string())])))
}

fn check_t5_3(ctx: &PairContext) -> Result<(Status, Detail)> {
    if ctx.rel.degree_count() != 2 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", format!("|cd(G|N)| = {}", ctx.rel.degree_count()))]),
        ));
    }
    let Some(dl) = derived_length(&ctx.normal)? else {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "N is not solvable".into())]),
        ));
    };
    if dl <= 2 {
        Ok((Status::Pass, detail(&[("dl", dl.to_string())])))
    } else {
        Ok((
            Status::Fail,
            detail(&[("dl", dl.to_string()), ("violation", "metabelian bound fails".into())]),
        ))
    }
}

fn check_tb(ctx: &PairContext) -> Result<(Status, Detail)> {
    let n = ctx.rel.degree_count();
    if n > 2 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", format!("|cd(G|N)| = {n} exceeds 2"))]),
        ));
    }
    match derived_length(&ctx.normal)? {
        Some(dl) if dl as usize <= n => Ok((
            Status::Pass,
            detail(&[("dl", dl.to_string()), ("n", n.to_string())]),
        )),
        Some(dl) => Ok((
            Status::Fail,
            detail(&[
                ("dl", dl.to_string()),
                ("n", n.to_string()),
                ("violation", "derived length exceeds degree count".into()),
            ]),
        )),
        None => Ok((
            Status::Fail,
            detail(&[
                ("n", n.to_string()),
                ("violation", "N is not solvable".into()),
            ]),
        )),
    }
}

fn check_tc(ctx: &PairContext) -> Result<(Status, Detail)> {
    if ctx.rel.degree_count() != 3 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", format!("|cd(G|N)| = {}", ctx.rel.degree_count()))]),
        ));
    }
    for p in prime_divisors(ctx.normal.order() as u64) {
        if !is_p_solvable(&ctx.group, p)? {
            return Ok((
                Status::Inapplicable,
                detail(&[("reason", format!("G is not {p}-solvable"))]),
            ));
        }
    }
    match derived_length(&ctx.normal)? {
        Some(dl) if dl <= 3 => Ok((Status::Pass, detail(&[("dl", dl.to_string())]))),
        other => Ok((
            Status::Fail,
            detail(&[
                ("dl", format!("{other:?}")),
                ("violation", "derived length bound fails".into()),
            ]),
        )),
    }
}

fn check_td(ctx: &PairContext) -> Result<(Status, Detail)> {
    let derived = derived_subgroup(&ctx.normal)?;
    let rel_derived = irr_rel(&ctx.table, &derived)?;
    let mut applicable = Vec::new();
    for p in prime_divisors(ctx.group.order()? as u64) {
        // vacuously true when cd(G|N') is empty
        if rel_derived.degrees.iter().all(|&d| d % p == 0) {
            applicable.push(p);
            if normal_p_complement(&ctx.normal, p)?.is_none() {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("prime", p.to_string()),
                        ("cd(G|N')", degrees_text(&rel_derived.degrees)),
                        ("O^p_order", o_p_residual(&ctx.normal, p)?.order().to_string()),
                        ("violation", "no normal p-complement".into()),
                    ]),
                ));
            }
        }
    }
    if applicable.is_empty() {
        return Ok((
            Status::Inapplicable,
            detail(&[
                ("reason", "no prime divides every member".into()),
                ("cd(G|N')", degrees_text(&rel_derived.degrees)),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[
            ("primes", applicable.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            ("cd(G|N')", degrees_text(&rel_derived.degrees)),
        ]),
    ))
}

fn check_t6_1(ctx: &PairContext) -> Result<(Status, Detail)> {
    let Some(min) = ctx.rel.min() else {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    };
    let mut exceptional = Vec::new();
    for row in ctx.rel.members_of_degree(min) {
        for sec in reducing_sections(&ctx.table, &ctx.normal, row)? {
            if !sec.exceptional {
                continue;
            }
            let p = sec.prime.expect("exceptional sections are abelian");
            if !is_p_solvable(&ctx.group, p)? {
                continue;
            }
            exceptional.push((row, sec));
        }
    }
    if exceptional.is_empty() {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "no exceptional reducing section at minimal degree".into())]),
        ));
    }
    let count = ctx.rel.degree_count();
    for (row, sec) in &exceptional {
        let p = sec.prime.unwrap();
        let mut violations = Vec::new();
        if p != 2 {
            violations.push("section prime is not 2");
        }
        if min % 2 != 0 {
            violations.push("minimal degree is odd");
        }
        if count < 3 {
            violations.push("fewer than three degrees");
        }
        if count == 3 {
            let odd: Vec<u64> = ctx.rel.degrees.iter().copied().filter(|d| d % 2 == 1).collect();
            let powers: Vec<u64> = ctx
                .rel
                .degrees
                .iter()
                .copied()
                .filter(|d| d.is_power_of_two())
                .collect();
            if odd.len() != 1 || powers.len() != 2 {
                violations.push("degrees are not two powers of two and an odd number");
            }
            // N/X abelian
            let n_derived = derived_subgroup(&ctx.normal)?;
            if !sec.above.contains_subgroup(&n_derived) {
                violations.push("N/X is not abelian");
            }
        }
        if !violations.is_empty() {
            return Ok((
                Status::Fail,
                detail(&[
                    ("row", row.to_string()),
                    ("X_order", sec.above.order().to_string()),
                    ("Y_order", sec.below.order().to_string()),
                    ("prime", p.to_string()),
                    ("violation", violations.join("; ")),
                ]),
            ));
        }
    }
    let (row, sec) = &exceptional[0];
    Ok((
        Status::Pass,
        detail(&[
            ("instances", exceptional.len().to_string()),
            ("row", row.to_string()),
            ("X_order", sec.above.order().to_string()),
            ("Y_order", sec.below.order().to_string()),
            ("degrees", degrees_text(&ctx.rel.degrees)),
        ]),
    ))
}

fn check_t6_2(ctx: &PairContext) -> Result<(Status, Detail)> {
    if ctx.rel.degree_count() != 3 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", format!("|cd(G|N)| = {}", ctx.rel.degree_count()))]),
        ));
    }
    let min = ctx.rel.min().unwrap();
    let mut instances = 0u64;
    for k in normal_subgroups_within(&ctx.group, &ctx.normal)? {
        if k.is_trivial() {
            continue;
        }
        for p in prime_divisors(k.order() as u64) {
            if !is_p_solvable(&ctx.group, p)? {
                continue;
            }
            let sylow = sylow_subgroup(&k, p)?;
            if !is_normal_in(&sylow, &k) {
                continue;
            }
            if o_p_residual(&k, p)?.order() != k.order() {
                continue;
            }
            if !sylow.is_normal() {
                return Err(Error::Defect(
                    "unique Sylow subgroup of a normal subgroup must be normal".into(),
                ));
            }
            let rel_sylow = irr_rel(&ctx.table, &sylow)?;
            if !rel_sylow.degrees.contains(&min) {
                continue;
            }
            instances += 1;
            let n_derived = derived_subgroup(&ctx.normal)?;
            let e_derived = derived_subgroup(&sylow)?;
            let center_k = k.center()?;
            let abelian_quotient = sylow.contains_subgroup(&n_derived);
            let central = center_k.contains_subgroup(&e_derived);
            if !abelian_quotient || !central {
                return Ok((
                    Status::Fail,
                    detail(&[
                        ("K_order", k.order().to_string()),
                        ("E_order", sylow.order().to_string()),
                        ("prime", p.to_string()),
                        (
                            "violation",
                            format!(
                                "N/E abelian: {abelian_quotient}, E' central in K: {central}"
                            ),
                        ),
                    ]),
                ));
            }
        }
    }
    if instances == 0 {
        Ok((
            Status::Inapplicable,
            detail(&[("reason", "no normal K satisfies the hypothesis".into())]),
        ))
    } else {
        Ok((Status::Pass, detail(&[("instances", instances.to_string())])))
    }
}

fn check_c6_3(ctx: &PairContext) -> Result<(Status, Detail)> {
    if !crate::structure::is_solvable(&ctx.group)? {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "G is not solvable".into())]),
        ));
    }
    let Some(min) = ctx.rel.min() else {
        return Ok((Status::Inapplicable, detail(&[("reason", "Irr(G|N) is empty".into())])));
    };
    if min % 2 == 0 && ctx.normal.order() % 2 == 0 {
        return Ok((
            Status::Inapplicable,
            detail(&[("reason", "neither the minimum nor |N| is odd".into())]),
        ));
    }
    let residual = nilpotent_residual(&ctx.normal)?;
    let rel_residual = irr_rel(&ctx.table, &residual)?;
    if rel_residual.degrees.contains(&min) {
        return Ok((
            Status::Fail,
            detail(&[
                ("min", min.to_string()),
                ("residual_order", residual.order().to_string()),
                ("cd(G|M)", degrees_text(&rel_residual.degrees)),
                ("violation", "minimum survives on the nilpotent residual".into()),
            ]),
        ));
    }
    Ok((
        Status::Pass,
        detail(&[
            ("min", min.to_string()),
            ("residual_order", residual.order().to_string()),
            ("cd(G|M)", degrees_text(&rel_residual.degrees)),
        ]),
    ))
}

// ---------------------------------------------------------------------
// Suite runner
// ---------------------------------------------------------------------

#[derive(Clone)]
pub struct SuiteConfig {
    pub theorems: Vec<TheoremId>,
    /// Evaluate only the tagged normal subgroups instead of all of them.
    pub tagged_only: bool,
    /// Drop corpus entries above this order.
    pub max_order: Option<u64>,
    pub jobs: usize,
    pub guards: Guards,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            theorems: TheoremId::all(),
            tagged_only: false,
            max_order: None,
            jobs: 1,
            guards: Guards::default(),
        }
    }
}

pub struct GroupInfo {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub classes: Option<usize>,
    pub exponent: Option<u64>,
    pub dixon_prime: Option<u64>,
}

#[derive(Default, Debug, PartialEq, Eq)]
pub struct Aggregate {
    pub pass: u64,
    pub fail: u64,
    pub inapplicable: u64,
    pub skipped: u64,
}

pub struct SuiteReport {
    pub config: SuiteConfig,
    pub groups: Vec<GroupInfo>,
    pub outcomes: Vec<TheoremOutcome>,
    pub aggregate: Aggregate,
}

impl SuiteReport {
    pub fn has_failures(&self) -> bool {
        self.aggregate.fail > 0
    }
}

/// Deterministic names for normal subgroups in reports: the tag when the
/// member set matches a tagged subgroup, otherwise `n<order>` with a
/// positional suffix for repeated orders.
pub fn normal_names(built: &BuiltGroup, normals: &[SubgroupHandle]) -> Vec<String> {
    let mut names = Vec::with_capacity(normals.len());
    let mut by_order: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let group_order = built.group.order().unwrap_or(0);
    for h in normals {
        if let Some((tag, _)) = built
            .tagged
            .iter()
            .find(|(_, t)| t.members() == h.members())
        {
            names.push(tag.clone());
            continue;
        }
        if h.order() == 1 {
            names.push("1".into());
            continue;
        }
        if h.order() == group_order {
            names.push("G".into());
            continue;
        }
        let seen = by_order.entry(h.order()).or_insert(0);
        *seen += 1;
        if *seen == 1 {
            names.push(format!("n{}", h.order()));
        } else {
            names.push(format!("n{}.{}", h.order(), *seen));
        }
    }
    names
}

/// Evaluate the configured checks on every (group, normal subgroup) pair.
/// Guard exceedances and per-entry errors become Skipped outcomes; the
/// suite itself never aborts on them.
pub fn run_suite(entries: &[BuiltGroup], config: &SuiteConfig) -> SuiteReport {
    let selected: Vec<&BuiltGroup> = entries
        .iter()
        .filter(|b| {
            config
                .max_order
                .map(|cap| b.group.order().map(|o| o as u64 <= cap).unwrap_or(true))
                .unwrap_or(true)
        })
        .collect();

    let jobs = config.jobs.max(1);
    let mut per_group: Vec<Option<(GroupInfo, Vec<TheoremOutcome>)>> =
        (0..selected.len()).map(|_| None).collect();
    if jobs <= 1 {
        for (i, built) in selected.iter().enumerate() {
            per_group[i] = Some(evaluate_group(built, config));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots = std::sync::Mutex::new(&mut per_group);
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(selected.len().max(1)) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= selected.len() {
                        break;
                    }
                    let result = evaluate_group(selected[i], config);
                    slots.lock().unwrap()[i] = Some(result);
                });
            }
        });
    }

    let mut groups = Vec::new();
    let mut outcomes = Vec::new();
    for slot in per_group.into_iter().flatten() {
        groups.push(slot.0);
        outcomes.extend(slot.1);
    }
    let mut aggregate = Aggregate::default();
    for o in &outcomes {
        match o.status {
            Status::Pass => aggregate.pass += 1,
            Status::Fail => aggregate.fail += 1,
            Status::Inapplicable => aggregate.inapplicable += 1,
            Status::Skipped => aggregate.skipped += 1,
        }
    }
    SuiteReport {
        config: config.clone(),
        groups,
        outcomes,
        aggregate,
    }
}

fn evaluate_group(built: &BuiltGroup, config: &SuiteConfig) -> (GroupInfo, Vec<TheoremOutcome>) {
    let group = &built.group;
    let mut info = GroupInfo {
        name: group.name().to_string(),
        order: group.order().map(|o| o as u64).unwrap_or(0),
        degree: group.degree(),
        classes: None,
        exponent: None,
        dixon_prime: None,
    };
    if let Ok(table) = character_table(group) {
        info.classes = Some(table.class_count());
        info.exponent = Some(table.exponent);
        info.dixon_prime = Some(table.dixon_prime);
    }

    let normals: Vec<SubgroupHandle> = if config.tagged_only {
        built.tagged.iter().map(|(_, h)| h.clone()).collect()
    } else {
        match normal_subgroups(group) {
            Ok(n) => n,
            Err(e) => {
                let outcomes = config
                    .theorems
                    .iter()
                    .map(|&id| TheoremOutcome {
                        theorem: id,
                        group: group.name().to_string(),
                        normal_name: "?".into(),
                        normal_order: 0,
                        normal_generators: Vec::new(),
                        status: Status::Skipped,
                        detail: detail(&[("reason", format!("normal subgroups unavailable: {e}"))]),
                        millis: 0,
                    })
                    .collect();
                return (info, outcomes);
            }
        }
    };
    let names = normal_names(built, &normals);

    let mut outcomes = Vec::new();
    for (n, name) in normals.iter().zip(&names) {
        let ctx = PairContext::new(group, n);
        for &id in &config.theorems {
            let start = Instant::now();
            let (status, det) = match &ctx {
                Ok(ctx) => match check_theorem(id, ctx) {
                    Ok(r) => r,
                    Err(e) if e.is_guard() => (
                        Status::Skipped,
                        detail(&[("reason", format!("guard: {e}"))]),
                    ),
                    Err(e) => (
                        Status::Skipped,
                        detail(&[("reason", format!("error: {e}"))]),
                    ),
                },
                Err(e) if e.is_guard() => (
                    Status::Skipped,
                    detail(&[("reason", format!("guard: {e}"))]),
                ),
                Err(e) => (
                    Status::Skipped,
                    detail(&[("reason", format!("error: {e}"))]),
                ),
            };
            outcomes.push(TheoremOutcome {
                theorem: id,
                group: group.name().to_string(),
                normal_name: name.clone(),
                normal_order: n.order(),
                normal_generators: n.generator_words(),
                status,
                detail: det,
                millis: start.elapsed().as_millis() as u64,
            });
        }
    }
    (info, outcomes)
}

// ---------------------------------------------------------------------
// Hunt mode: quantitative bound data over the corpus
// ---------------------------------------------------------------------

pub struct HuntRow {
    pub group: String,
    pub group_solvable: bool,
    pub normal_name: String,
    pub normal_order: usize,
    /// n = |cd(G|N)|
    pub degree_count: usize,
    pub derived_length: u32,
    pub fitting_height: u32,
    /// h(N) <= n
    pub height_ok: bool,
    /// dl(N) <= n(n+1)/2
    pub quadratic_ok: bool,
    /// dl(N) <= 3n, asserted when G is solvable
    pub linear_ok: Option<bool>,
}

/// For every pair with solvable N: the triple (n, dl, h) and the literal
/// bound checks. The linear bound applies only under a solvable group.
pub fn hunt(entries: &[BuiltGroup]) -> Result<Vec<HuntRow>> {
    let mut rows = Vec::new();
    for built in entries {
        let group = &built.group;
        let table = match character_table(group) {
            Ok(t) => t,
            Err(e) if e.is_guard() => continue,
            Err(e) => return Err(e),
        };
        let group_solvable = crate::structure::is_solvable(group)?;
        let normals = normal_subgroups(group)?;
        let names = normal_names(built, &normals);
        for (n, name) in normals.iter().zip(&names) {
            let Some(dl) = derived_length(n)? else {
                continue;
            };
            let h = fitting_height(n)?;
            let count = irr_rel(&table, n)?.degree_count();
            let quadratic = (count * (count + 1) / 2) as u32;
            rows.push(HuntRow {
                group: group.name().to_string(),
                group_solvable,
                normal_name: name.clone(),
                normal_order: n.order(),
                degree_count: count,
                derived_length: dl,
                fitting_height: h,
                height_ok: h <= count as u32,
                quadratic_ok: dl <= quadratic,
                linear_ok: group_solvable.then_some(dl <= 3 * count as u32),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin_group;

    fn pair(group_name: &str, order: usize) -> PairContext {
        let built = builtin_group(group_name, Guards::default()).unwrap();
        let normals = normal_subgroups(&built.group).unwrap();
        let n = normals.iter().find(|h| h.order() == order).unwrap().clone();
        PairContext::new(&built.group, &n).unwrap()
    }

    #[test]
    fn c3_2_passes_on_q8_center() {
        let ctx = pair("q8", 2);
        assert_eq!(ctx.rel.degrees, vec![2]);
        let (status, _) = check_c3_2(&ctx).unwrap();
        assert_eq!(status, Status::Pass);
    }

    #[test]
    fn tb_is_inapplicable_for_a5_in_s5() {
        let ctx = pair("s5", 60);
        assert_eq!(ctx.rel.degrees, vec![4, 5, 6]);
        let (status, _) = check_tb(&ctx).unwrap();
        assert_eq!(status, Status::Inapplicable);
        // solvability-gated checks also refuse the pair
        let (status, _) = check_c4_4(&ctx).unwrap();
        assert_eq!(status, Status::Inapplicable);
        let (status, _) = check_t4_5(&ctx).unwrap();
        assert_eq!(status, Status::Inapplicable);
    }

    #[test]
    fn td_example_outcomes() {
        // N abelian: hypothesis vacuous for every prime, conclusion holds
        let ctx = pair("s4", 4);
        let (status, _) = check_td(&ctx).unwrap();
        assert_eq!(status, Status::Pass);
        // N = G = S4: cd(G|N') = cd(G|A4) = {2, 3} admits no common prime
        let ctx = pair("s4", 24);
        let (status, _) = check_td(&ctx).unwrap();
        assert_eq!(status, Status::Inapplicable);
        // N = A4: cd(G|V4) = {3}, so 3 divides every member and A4 indeed
        // has the normal 3-complement V4
        let ctx = pair("s4", 12);
        let (status, _) = check_td(&ctx).unwrap();
        assert_eq!(status, Status::Pass);
    }

    #[test]
    fn tc_passes_on_s4_itself() {
        let ctx = pair("s4", 24);
        assert_eq!(ctx.rel.degrees, vec![1, 2, 3]);
        let (status, _) = check_tc(&ctx).unwrap();
        assert_eq!(status, Status::Pass);
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::all() {
            assert_eq!(TheoremId::parse(id.as_str()).unwrap(), id);
        }
        assert!(TheoremId::parse("T9.9").is_err());
    }
}
