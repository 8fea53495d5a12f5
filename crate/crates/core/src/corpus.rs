//! The built-in group corpus: families at desk scale plus a few specific
//! groups with distinguished normal subgroups tagged by name.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::guards::Guards;
use crate::perm::Permutation;
use crate::subgroup::{generated_subgroup, SubgroupHandle};

/// A constructed builtin with its tagged normal subgroups.
pub struct BuiltGroup {
    pub group: PermGroup,
    pub tagged: Vec<(String, SubgroupHandle)>,
}

/// Catalog metadata for one corpus entry.
pub struct CorpusEntry {
    pub name: &'static str,
    pub family: &'static str,
    pub params: &'static [u64],
    pub expected_order: u64,
    pub note: &'static str,
}

/// The corpus, in canonical order. Orders range from 1 to 720.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries = vec![CorpusEntry {
        name: "trivial",
        family: "cyclic",
        params: &[1],
        expected_order: 1,
        note: "the one-element group",
    }];
    macro_rules! entry {
        ($name:expr, $family:expr, $params:expr, $order:expr, $note:expr) => {
            entries.push(CorpusEntry {
                name: $name,
                family: $family,
                params: $params,
                expected_order: $order,
                note: $note,
            });
        };
    }
    entry!("c2", "cyclic", &[2], 2, "cyclic");
    entry!("c3", "cyclic", &[3], 3, "cyclic");
    entry!("c4", "cyclic", &[4], 4, "cyclic");
    entry!("c5", "cyclic", &[5], 5, "cyclic");
    entry!("c6", "cyclic", &[6], 6, "cyclic");
    entry!("c7", "cyclic", &[7], 7, "cyclic");
    entry!("c8", "cyclic", &[8], 8, "cyclic");
    entry!("c9", "cyclic", &[9], 9, "cyclic");
    entry!("c10", "cyclic", &[10], 10, "cyclic");
    entry!("c11", "cyclic", &[11], 11, "cyclic");
    entry!("c12", "cyclic", &[12], 12, "cyclic");
    entry!("d6", "dihedral", &[3], 6, "symmetries of the triangle");
    entry!("d8", "dihedral", &[4], 8, "symmetries of the square");
    entry!("d10", "dihedral", &[5], 10, "dihedral");
    entry!("d12", "dihedral", &[6], 12, "dihedral");
    entry!("d14", "dihedral", &[7], 14, "dihedral");
    entry!("d16", "dihedral", &[8], 16, "dihedral");
    entry!("d18", "dihedral", &[9], 18, "dihedral");
    entry!("d20", "dihedral", &[10], 20, "dihedral");
    entry!("d22", "dihedral", &[11], 22, "dihedral");
    entry!("d24", "dihedral", &[12], 24, "dihedral");
    entry!("d26", "dihedral", &[13], 26, "dihedral");
    entry!("d28", "dihedral", &[14], 28, "dihedral");
    entry!("d30", "dihedral", &[15], 30, "dihedral");
    entry!("d32", "dihedral", &[16], 32, "dihedral");
    entry!("q8", "quaternion", &[8], 8, "quaternion units, regular action");
    entry!("q16", "quaternion", &[16], 16, "generalized quaternion");
    entry!("q32", "quaternion", &[32], 32, "generalized quaternion");
    entry!("ea4", "elementary", &[2, 2], 4, "elementary abelian");
    entry!("ea8", "elementary", &[2, 3], 8, "elementary abelian");
    entry!("ea9", "elementary", &[3, 2], 9, "elementary abelian");
    entry!("ea27", "elementary", &[3, 3], 27, "elementary abelian");
    entry!("s3", "symmetric", &[3], 6, "symmetric group");
    entry!("s4", "symmetric", &[4], 24, "symmetric group");
    entry!("s5", "symmetric", &[5], 120, "symmetric group");
    entry!("s6", "symmetric", &[6], 720, "symmetric group");
    entry!("a4", "alternating", &[4], 12, "alternating group");
    entry!("a5", "alternating", &[5], 60, "smallest nonabelian simple group");
    entry!(
        "sl23",
        "sl23",
        &[],
        24,
        "determinant-one 2x2 matrices over F3 on the 8 nonzero vectors"
    );
    entry!(
        "gl23",
        "gl23",
        &[],
        48,
        "invertible 2x2 matrices over F3 on the 8 nonzero vectors"
    );
    entry!(
        "es27",
        "extraspecial27",
        &[],
        27,
        "extraspecial group of order 27 and exponent 3, affine action on 9 points"
    );
    entry!(
        "berger216",
        "berger216",
        &[],
        216,
        "quaternion group acting faithfully on the extraspecial group of order 27, regular on its elements"
    );
    entry!("agl1_5", "agl1", &[5], 20, "affine maps x -> ax + b over F5");
    entry!("agl1_7", "agl1", &[7], 42, "affine maps over F7");
    entry!("agl1_11", "agl1", &[11], 110, "affine maps over F11");
    entry!("agl1_13", "agl1", &[13], 156, "affine maps over F13");
    entry!("s3xs3", "s3xs3", &[], 36, "direct square of s3");
    entry!("q8xc3", "q8xc3", &[], 24, "direct product");
    entry!("c3wrc2", "c3wrc2", &[], 18, "wreath product, two blocks of three");
    entries
}

pub fn corpus_names() -> Vec<&'static str> {
    corpus().iter().map(|e| e.name).collect()
}

/// Build a corpus group by its catalog name, verifying the expected order
/// and the normality of every tagged subgroup.
pub fn builtin_group(name: &str, guards: Guards) -> Result<BuiltGroup> {
    let entry = corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    let built = construct(entry.name, entry.family, entry.params, guards)?;
    let order = built.group.order()? as u64;
    if order != entry.expected_order {
        return Err(Error::Defect(format!(
            "builtin {} has order {} but the catalog expects {}",
            entry.name, order, entry.expected_order
        )));
    }
    for (tag, h) in &built.tagged {
        if !h.is_normal() {
            return Err(Error::Defect(format!(
                "tagged subgroup {tag} of {} is not normal",
                entry.name
            )));
        }
    }
    Ok(built)
}

/// Build a group family member under an arbitrary display name.
pub fn construct(
    name: &str,
    family: &str,
    params: &[u64],
    guards: Guards,
) -> Result<BuiltGroup> {
    match family {
        "cyclic" => {
            let n = one_param(family, params)?;
            if n == 0 {
                return Err(Error::InvalidBuiltinParams("cyclic(0)".into()));
            }
            let degree = n as usize;
            let gens = if n == 1 { vec![] } else { vec![cycle_perm(degree)] };
            plain(name, degree.max(1), gens, guards)
        }
        "dihedral" => {
            let n = one_param(family, params)?;
            if n < 3 {
                return Err(Error::InvalidBuiltinParams(format!("dihedral({n})")));
            }
            let degree = n as usize;
            let rotation = cycle_perm(degree);
            let reflection: Vec<u16> = (0..degree).map(|i| (degree - 1 - i) as u16).collect();
            let mut built = plain(
                name,
                degree,
                vec![rotation.clone(), perm(reflection)],
                guards,
            )?;
            tag_by_perms(&mut built, "rot", &[rotation])?;
            Ok(built)
        }
        "quaternion" => {
            let order = one_param(family, params)?;
            if order < 8 || order.count_ones() != 1 {
                return Err(Error::InvalidBuiltinParams(format!("quaternion({order})")));
            }
            let m = (order / 2) as usize;
            // points s + m t for a^s b^t; right multiplication by a and b
            let mut a = vec![0u16; 2 * m];
            let mut b = vec![0u16; 2 * m];
            for s in 0..m {
                a[s] = ((s + 1) % m) as u16;
                a[m + s] = (m + (s + m - 1) % m) as u16;
                b[s] = (m + s) as u16;
                b[m + s] = ((s + m / 2) % m) as u16;
            }
            plain(name, 2 * m, vec![perm(a), perm(b)], guards)
        }
        "elementary" => {
            let (p, k) = two_params(family, params)?;
            if !is_prime(p) || k == 0 {
                return Err(Error::InvalidBuiltinParams(format!("elementary({p},{k})")));
            }
            let degree = (p * k) as usize;
            let gens = (0..k)
                .map(|block| {
                    let mut images: Vec<u16> = (0..degree as u16).collect();
                    let base = (block * p) as usize;
                    for i in 0..p as usize {
                        images[base + i] = (base + (i + 1) % p as usize) as u16;
                    }
                    perm(images)
                })
                .collect();
            plain(name, degree, gens, guards)
        }
        "symmetric" => {
            let n = one_param(family, params)?;
            if n == 0 {
                return Err(Error::InvalidBuiltinParams("symmetric(0)".into()));
            }
            let degree = n as usize;
            let mut gens = Vec::new();
            if n >= 2 {
                let mut t: Vec<u16> = (0..degree as u16).collect();
                t.swap(0, 1);
                gens.push(perm(t));
            }
            if n >= 3 {
                gens.push(cycle_perm(degree));
            }
            let mut built = plain(name, degree, gens, guards)?;
            if n >= 3 {
                // the rotation and a 3-cycle generate the alternating subgroup
                let alt = alternating_gens(degree);
                tag_by_perms(&mut built, &format!("a{n}"), &alt)?;
            }
            if n == 4 {
                tag_by_perms(&mut built, "v4", &v4_gens())?;
            }
            Ok(built)
        }
        "alternating" => {
            let n = one_param(family, params)?;
            if n < 3 {
                return Err(Error::InvalidBuiltinParams(format!("alternating({n})")));
            }
            let degree = n as usize;
            let mut built = plain(name, degree, alternating_gens(degree), guards)?;
            if n == 4 {
                tag_by_perms(&mut built, "v4", &v4_gens())?;
            }
            Ok(built)
        }
        "sl23" => {
            let gens = vec![mat_perm([1, 1, 0, 1]), mat_perm([0, 2, 1, 0])];
            let mut built = plain(name, 8, gens, guards)?;
            tag_by_perms(&mut built, "q8", &[mat_perm([0, 2, 1, 0]), mat_perm([1, 1, 1, 2])])?;
            tag_by_perms(&mut built, "z", &[mat_perm([2, 0, 0, 2])])?;
            Ok(built)
        }
        "gl23" => {
            let gens = vec![
                mat_perm([1, 1, 0, 1]),
                mat_perm([0, 2, 1, 0]),
                mat_perm([2, 0, 0, 1]),
            ];
            let mut built = plain(name, 8, gens, guards)?;
            tag_by_perms(
                &mut built,
                "sl23",
                &[mat_perm([1, 1, 0, 1]), mat_perm([0, 2, 1, 0])],
            )?;
            tag_by_perms(&mut built, "q8", &[mat_perm([0, 2, 1, 0]), mat_perm([1, 1, 1, 2])])?;
            tag_by_perms(&mut built, "z", &[mat_perm([2, 0, 0, 2])])?;
            Ok(built)
        }
        "extraspecial27" => {
            // affine maps (i,j) -> (i + a, j + b i + c) over F3 on 9 points
            let x = heis_point_perm(|i, j| (add3(i, 1), j));
            let y = heis_point_perm(|i, j| (i, add3(j, i)));
            let z = heis_point_perm(|i, j| (i, add3(j, 1)));
            let mut built = plain(name, 9, vec![x, y], guards)?;
            tag_by_perms(&mut built, "z", &[z])?;
            Ok(built)
        }
        "berger216" => berger216(name, guards),
        "agl1" => {
            let p = one_param(family, params)?;
            if !is_prime(p) {
                return Err(Error::InvalidBuiltinParams(format!("agl1({p})")));
            }
            let degree = p as usize;
            let translation = cycle_perm(degree);
            let g = primitive_root_mod(p);
            let scaling: Vec<u16> = (0..p).map(|x| ((x * g) % p) as u16).collect();
            let mut built = plain(name, degree, vec![translation.clone(), perm(scaling)], guards)?;
            tag_by_perms(&mut built, &format!("c{p}"), &[translation])?;
            Ok(built)
        }
        "s3xs3" => {
            let gens = vec![
                embed(6, 0, &cycle_perm(3)),
                embed(6, 0, &perm(vec![1, 0, 2])),
                embed(6, 3, &cycle_perm(3)),
                embed(6, 3, &perm(vec![1, 0, 2])),
            ];
            plain(name, 6, gens, guards)
        }
        "q8xc3" => {
            let q8 = construct("q8", "quaternion", &[8], guards)?;
            let gens: Vec<Permutation> = q8
                .group
                .generators()
                .iter()
                .map(|g| embed(11, 0, g))
                .chain(std::iter::once(embed(11, 8, &cycle_perm(3))))
                .collect();
            plain(name, 11, gens, guards)
        }
        "c3wrc2" => {
            let gens = vec![
                embed(6, 0, &cycle_perm(3)),
                embed(6, 3, &cycle_perm(3)),
                perm(vec![3, 4, 5, 0, 1, 2]),
            ];
            plain(name, 6, gens, guards)
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

fn one_param(family: &str, params: &[u64]) -> Result<u64> {
    if params.len() != 1 {
        return Err(Error::InvalidBuiltinParams(format!(
            "{family} takes one parameter"
        )));
    }
    Ok(params[0])
}

fn two_params(family: &str, params: &[u64]) -> Result<(u64, u64)> {
    if params.len() != 2 {
        return Err(Error::InvalidBuiltinParams(format!(
            "{family} takes two parameters"
        )));
    }
    Ok((params[0], params[1]))
}

fn plain(name: &str, degree: usize, gens: Vec<Permutation>, guards: Guards) -> Result<BuiltGroup> {
    Ok(BuiltGroup {
        group: PermGroup::new(name, degree, gens, guards)?,
        tagged: Vec::new(),
    })
}

/// Trusted constructor for internally generated image arrays.
fn perm(images: Vec<u16>) -> Permutation {
    Permutation::from_images(images, 0).expect("builtin permutation")
}

/// The n-cycle moving point i to i+1.
fn cycle_perm(degree: usize) -> Permutation {
    perm((0..degree).map(|i| ((i + 1) % degree) as u16).collect())
}

/// Standard generators of the alternating group on `degree >= 3` points.
fn alternating_gens(degree: usize) -> Vec<Permutation> {
    let three_cycle = {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        v[0] = 1;
        v[1] = 2;
        v[2] = 0;
        perm(v)
    };
    if degree == 3 {
        return vec![three_cycle];
    }
    let big = if degree % 2 == 1 {
        cycle_perm(degree)
    } else {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for i in 1..degree {
            v[i] = (1 + (i % (degree - 1))) as u16;
        }
        perm(v)
    };
    vec![three_cycle, big]
}

fn v4_gens() -> Vec<Permutation> {
    vec![perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])]
}

/// Embed a permutation into a larger degree at a point offset.
fn embed(degree: usize, offset: usize, p: &Permutation) -> Permutation {
    let mut images: Vec<u16> = (0..degree as u16).collect();
    for (i, &img) in p.images().iter().enumerate() {
        images[offset + i] = offset as u16 + img;
    }
    perm(images)
}

fn tag_by_perms(built: &mut BuiltGroup, tag: &str, gens: &[Permutation]) -> Result<()> {
    let ids = gens
        .iter()
        .map(|g| built.group.id_of(g))
        .collect::<Result<Vec<_>>>()?;
    let handle = generated_subgroup(&built.group, &ids)?;
    built.tagged.push((tag.to_string(), handle));
    Ok(())
}

/// Action of an invertible matrix [[a, b], [c, d]] over F3 on the eight
/// nonzero column vectors, listed in lexicographic order.
fn mat_perm(m: [u64; 4]) -> Permutation {
    let points: Vec<(u64, u64)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&(x, y)| (x, y) != (0, 0))
        .collect();
    let index = |x: u64, y: u64| points.iter().position(|&p| p == (x, y)).unwrap() as u16;
    let images: Vec<u16> = points
        .iter()
        .map(|&(x, y)| index((m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3))
        .collect();
    perm(images)
}

fn add3(a: u64, b: u64) -> u64 {
    (a + b) % 3
}

/// Permutation of the 9 points (i, j) of F3 x F3 under a coordinate map.
fn heis_point_perm(f: impl Fn(u64, u64) -> (u64, u64)) -> Permutation {
    let images: Vec<u16> = (0..9)
        .map(|idx| {
            let (i, j) = (idx / 3, idx % 3);
            let (ni, nj) = f(i, j);
            (ni * 3 + nj) as u16
        })
        .collect();
    perm(images)
}

/// The group of order 216: the extraspecial group of order 27 and exponent 3
/// in its regular action on its own 27 elements, extended by the quaternion
/// group acting through determinant-one maps on the two non-central
/// coordinates, with the compensating quadratic twist on the center.
fn berger216(name: &str, guards: Guards) -> Result<BuiltGroup> {
    // element (a, b, c) with product (a1,b1,c1)(a2,b2,c2) =
    // (a1+a2, b1+b2, c1+c2+b1*a2); index = 9a + 3b + c
    let point = |a: u64, b: u64, c: u64| (9 * a + 3 * b + c) as u16;
    let regular = |x: u64, y: u64, z: u64| {
        let images: Vec<u16> = (0..27)
            .map(|idx: u64| {
                let (a, b, c) = (idx / 9, (idx / 3) % 3, idx % 3);
                point(add3(a, x), add3(b, y), (c + z + b * x) % 3)
            })
            .collect();
        perm(images)
    };
    let rho_x = regular(1, 0, 0);
    let rho_y = regular(0, 1, 0);
    let rho_z = regular(0, 0, 1);
    // automorphism from a determinant-one matrix [[al, be], [ga, de]]:
    // (a, b) -> (al a + be b, ga a + de b), with the center twisted by the
    // quadratic form q(a, b) = 2 ga al a^2 + ga be a b + 2 de be b^2
    let auto = |m: [u64; 4]| {
        let [al, be, ga, de] = m;
        let images: Vec<u16> = (0..27)
            .map(|idx: u64| {
                let (a, b, c) = (idx / 9, (idx / 3) % 3, idx % 3);
                let na = (al * a + be * b) % 3;
                let nb = (ga * a + de * b) % 3;
                let q = (2 * ga * al * a * a + ga * be * a * b + 2 * de * be * b * b) % 3;
                point(na, nb, (c + q) % 3)
            })
            .collect();
        perm(images)
    };
    let phi_i = auto([0, 2, 1, 0]);
    let phi_j = auto([1, 1, 1, 2]);
    let group = PermGroup::new(
        name,
        27,
        vec![rho_x.clone(), rho_y.clone(), phi_i, phi_j],
        guards,
    )?;
    let mut built = BuiltGroup {
        group,
        tagged: Vec::new(),
    };
    tag_by_perms(&mut built, "heis27", &[rho_x, rho_y])?;
    tag_by_perms(&mut built, "z3", &[rho_z])?;
    Ok(built)
}

fn primitive_root_mod(p: u64) -> u64 {
    let factors = crate::arith::prime_divisors(p - 1);
    'cand: for g in 2..p {
        for &f in &factors {
            if pow_mod(g, (p - 1) / f, p) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    1
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_corpus_entry_builds_at_its_expected_order() {
        for entry in corpus() {
            let built = builtin_group(entry.name, Guards::default()).unwrap();
            assert_eq!(
                built.group.order().unwrap() as u64,
                entry.expected_order,
                "order of {}",
                entry.name
            );
        }
    }

    #[test]
    fn unknown_builtin_is_reported() {
        assert!(matches!(
            builtin_group("nope", Guards::default()),
            Err(Error::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(construct("s0", "symmetric", &[0], Guards::default()).is_err());
        assert!(construct("c0", "cyclic", &[0], Guards::default()).is_err());
        assert!(construct("d4", "dihedral", &[2], Guards::default()).is_err());
        assert!(construct("q4", "quaternion", &[4], Guards::default()).is_err());
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let g = construct("c1", "cyclic", &[1], Guards::default()).unwrap();
        assert_eq!(g.group.order().unwrap(), 1);
    }

    #[test]
    fn gl23_catalog_facts() {
        let built = builtin_group("gl23", Guards::default()).unwrap();
        assert_eq!(built.group.order().unwrap(), 48);
        assert_eq!(built.group.degree(), 8);
        let tags: Vec<(&str, usize)> = built
            .tagged
            .iter()
            .map(|(t, h)| (t.as_str(), h.order()))
            .collect();
        assert_eq!(tags, vec![("sl23", 24), ("q8", 8), ("z", 2)]);
        for (_, h) in &built.tagged {
            assert!(h.is_normal());
        }
    }

    #[test]
    fn berger216_catalog_facts() {
        let built = builtin_group("berger216", Guards::default()).unwrap();
        assert_eq!(built.group.order().unwrap(), 216);
        assert_eq!(built.group.degree(), 27);
        let n27 = &built.tagged.iter().find(|(t, _)| t == "heis27").unwrap().1;
        assert_eq!(n27.order(), 27);
        assert!(n27.is_normal());
        // the tagged subgroup is nonabelian of exponent 3
        let parent = &built.group;
        assert!(n27
            .members()
            .iter()
            .all(|&x| parent.element_order(x) == 1 || parent.element_order(x) == 3));
        let dl = crate::structure::derived_length(n27).unwrap();
        assert_eq!(dl, Some(2));
    }

    #[test]
    fn quaternion_groups_have_unique_involution() {
        for (name, order) in [("q8", 8usize), ("q16", 16), ("q32", 32)] {
            let built = builtin_group(name, Guards::default()).unwrap();
            let g = &built.group;
            assert_eq!(g.order().unwrap(), order);
            let involutions = (0..order as u32)
                .filter(|&x| g.element_order(x) == 2)
                .count();
            assert_eq!(involutions, 1, "{name}");
        }
    }

    #[test]
    fn es27_is_extraspecial_of_exponent_three() {
        let built = builtin_group("es27", Guards::default()).unwrap();
        let g = &built.group;
        assert_eq!(g.order().unwrap(), 27);
        assert!(g
            .elements()
            .unwrap()
            .order()
            .eq(&27));
        assert!((0..27u32).all(|x| g.element_order(x) == 1 || g.element_order(x) == 3));
        let whole = SubgroupHandle::whole_group(g).unwrap();
        let center = whole.center().unwrap();
        let derived = crate::structure::derived_subgroup(&whole).unwrap();
        assert_eq!(center.order(), 3);
        assert_eq!(derived.members(), center.members());
    }

    #[test]
    fn agl_groups_are_frobenius_of_order_p_times_p_minus_1() {
        for (name, p) in [("agl1_5", 5u64), ("agl1_7", 7), ("agl1_11", 11), ("agl1_13", 13)] {
            let built = builtin_group(name, Guards::default()).unwrap();
            assert_eq!(built.group.order().unwrap() as u64, p * (p - 1));
        }
    }
}
