//! The group file format: a single TOML document with a name, a degree,
//! generator rows as 1-based image arrays, and optionally named normal
//! subgroups given by generator rows of their own.
//!
//! ```toml
//! name = "s3"
//! degree = 3
//! generators = [[2, 3, 1], [2, 1, 3]]
//!
//! [[normal_subgroups]]
//! name = "a3"
//! generators = [[2, 3, 1]]
//! ```

use serde::Deserialize;

use crate::corpus::BuiltGroup;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::guards::Guards;
use crate::perm::Permutation;
use crate::subgroup::generated_subgroup;

#[derive(Deserialize)]
struct GroupDoc {
    name: String,
    degree: u64,
    generators: Vec<Vec<u64>>,
    #[serde(default)]
    normal_subgroups: Vec<SubgroupDoc>,
}

#[derive(Deserialize)]
struct SubgroupDoc {
    name: String,
    generators: Vec<Vec<u64>>,
}

/// Parse a group file. Generator rows keep their order; tagged subgroups
/// are verified to be normal.
pub fn parse_group(text: &str, guards: Guards) -> Result<BuiltGroup> {
    let doc: GroupDoc =
        toml::from_str(text).map_err(|e| Error::MalformedGroupFile(e.to_string()))?;
    if doc.degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let degree = doc.degree as usize;
    let gens = parse_rows(&doc.generators, degree)?;
    let group = PermGroup::new(doc.name, degree, gens, guards)?;
    let mut tagged = Vec::new();
    for sub in doc.normal_subgroups {
        let perms = parse_rows(&sub.generators, degree)?;
        let ids = perms
            .iter()
            .map(|p| group.id_of(p).map_err(|_| Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        let handle = generated_subgroup(&group, &ids)?;
        if !handle.is_normal() {
            return Err(Error::NotNormal);
        }
        tagged.push((sub.name, handle));
    }
    Ok(BuiltGroup { group, tagged })
}

fn parse_rows(rows: &[Vec<u64>], degree: usize) -> Result<Vec<Permutation>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| Permutation::from_one_based(row, degree, i + 1))
        .collect()
}

/// Emit a group (and its tagged normal subgroups) in the group file format.
/// Parsing the result reproduces the generator arrays exactly.
pub fn emit_group(built: &BuiltGroup) -> String {
    let mut out = String::new();
    let group = &built.group;
    out.push_str(&format!("name = {:?}\n", group.name()));
    out.push_str(&format!("degree = {}\n", group.degree()));
    out.push_str(&format!(
        "generators = [{}]\n",
        group
            .generators()
            .iter()
            .map(row_text)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for (tag, handle) in &built.tagged {
        out.push_str("\n[[normal_subgroups]]\n");
        out.push_str(&format!("name = {tag:?}\n"));
        let rows: Vec<String> = handle
            .generator_ids()
            .iter()
            .map(|&id| row_text(group.perm(id)))
            .collect();
        out.push_str(&format!("generators = [{}]\n", rows.join(", ")));
    }
    out
}

fn row_text(p: &Permutation) -> String {
    let entries: Vec<String> = p.one_based_images().iter().map(u64::to_string).collect();
    format!("[{}]", entries.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3() {
        let text = r#"
name = "s3"
degree = 3
generators = [[2, 3, 1], [2, 1, 3]]

[[normal_subgroups]]
name = "a3"
generators = [[2, 3, 1]]
"#;
        let built = parse_group(text, Guards::default()).unwrap();
        assert_eq!(built.group.order().unwrap(), 6);
        assert_eq!(built.tagged.len(), 1);
        assert_eq!(built.tagged[0].0, "a3");
        assert_eq!(built.tagged[0].1.order(), 3);
    }

    #[test]
    fn parses_trivial_group() {
        let text = "name = \"trivial\"\ndegree = 1\ngenerators = []\n";
        let built = parse_group(text, Guards::default()).unwrap();
        assert_eq!(built.group.order().unwrap(), 1);
    }

    #[test]
    fn rejects_non_bijective_rows_with_position() {
        let text = "name = \"bad\"\ndegree = 4\ngenerators = [[2, 1, 3, 3]]\n";
        match parse_group(text, Guards::default()) {
            Err(Error::NotABijection { row, point }) => {
                assert_eq!(row, 1);
                assert_eq!(point, 3);
            }
            other => panic!("expected bijection error, got {:?}", other.err()),
        }
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(
            parse_group("degree = ", Guards::default()),
            Err(Error::MalformedGroupFile(_))
        ));
        assert!(matches!(
            parse_group("name = \"g\"\ndegree = 3\ngenerators = [[1, 2]]\n", Guards::default()),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            parse_group("name = \"g\"\ndegree = 0\ngenerators = []\n", Guards::default()),
            Err(Error::ZeroDegree)
        ));
    }

    #[test]
    fn rejects_non_normal_tagged_subgroups() {
        let text = r#"
name = "s3"
degree = 3
generators = [[2, 3, 1], [2, 1, 3]]

[[normal_subgroups]]
name = "bad"
generators = [[2, 1, 3]]
"#;
        assert!(matches!(
            parse_group(text, Guards::default()),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn emit_then_parse_round_trips_generators() {
        for name in ["s4", "gl23", "berger216", "q8"] {
            let built = crate::corpus::builtin_group(name, Guards::default()).unwrap();
            let text = emit_group(&built);
            let re = parse_group(&text, Guards::default()).unwrap();
            assert_eq!(re.group.name(), built.group.name());
            assert_eq!(re.group.generators(), built.group.generators());
            assert_eq!(re.tagged.len(), built.tagged.len());
            for ((ta, ha), (tb, hb)) in re.tagged.iter().zip(&built.tagged) {
                assert_eq!(ta, tb);
                assert_eq!(ha.order(), hb.order());
            }
        }
    }
}
