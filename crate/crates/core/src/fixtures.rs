//! Named groups, modules, short exact sequences and Lie algebras, so that
//! suites and the command line run with no hand-written input.

use crate::abgroups::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::group_cohomology::{FiniteGroup, GModule, GMorphism, ModuleSes};
use crate::intlinalg::IntMatrix;
use crate::lie_cohomology::LieAlgebra;

/// Names accepted by [`group`].
pub const GROUP_NAMES: &[&str] = &["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "V4", "S3"];

/// Module names accepted by [`module`], for groups where they make sense.
pub const MODULE_NAMES: &[&str] = &[
    "Ztriv", "Zsign", "Z2triv", "Z3triv", "Z4triv", "Z2sign", "Z3sign", "Zrot", "Z3rot", "regular",
];

pub const LIE_NAMES: &[&str] = &["ab1", "ab2", "ab3", "sl2", "aff2", "heis3"];

pub fn group(name: &str) -> Result<FiniteGroup> {
    match name {
        "V4" => Ok(FiniteGroup::klein()),
        "S3" => Ok(symmetric3()),
        _ => {
            let m = name
                .strip_prefix('Z')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&m| (1..=8).contains(&m))
                .ok_or_else(|| Error::InvalidInput(format!("unknown group `{name}`")))?;
            Ok(FiniteGroup::cyclic(m))
        }
    }
}

fn symmetric3() -> FiniteGroup {
    // permutations of {0, 1, 2} as images, identity first
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let idx = |p: [usize; 3]| {
        perms
            .iter()
            .position(|&q| q == p)
            .expect("closed under composition")
    };
    let mut table = Vec::with_capacity(36);
    for a in &perms {
        for b in &perms {
            table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
        }
    }
    FiniteGroup::new(6, table).expect("S3 is a group")
}

/// `±1` for each element under a surjection onto `Z/2`, when there is a canonical one.
pub fn sign_character(g: &FiniteGroup, name: &str) -> Result<Vec<i64>> {
    let n = g.order();
    match name {
        "V4" => Ok((0..4).map(|x| if x / 2 == 0 { 1 } else { -1 }).collect()),
        "S3" => Ok((0..6).map(|x| if x < 3 { 1 } else { -1 }).collect()),
        _ if n % 2 == 0 && g.element_order(1) == n => {
            Ok((0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect())
        }
        _ => Err(Error::InvalidInput(format!("{name} has no sign character"))),
    }
}

fn rotation(m: usize) -> Option<IntMatrix> {
    let rows: &[Vec<i64>] = match m {
        2 => &[vec![-1, 0], vec![0, -1]],
        3 => &[vec![0, -1], vec![1, -1]],
        4 => &[vec![0, -1], vec![1, 0]],
        6 => &[vec![1, -1], vec![1, 0]],
        _ => return None,
    };
    Some(IntMatrix::from_i64_rows(rows, 2))
}

/// A module over the named group.
pub fn module(group_name: &str, name: &str) -> Result<GModule> {
    let g = group(group_name)?;
    let n = g.order();
    let cyclic = group_name.starts_with('Z');
    let coeff = |s: &str| -> Result<FgAbelianGroup> {
        if s.is_empty() {
            return Ok(FgAbelianGroup::free(1));
        }
        let m: u64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown module `{name}`")))?;
        if m < 2 {
            return Err(Error::InvalidInput(format!("unknown module `{name}`")));
        }
        Ok(FgAbelianGroup::cyclic(m))
    };
    if name == "regular" {
        let action = (0..n)
            .map(|x| {
                let mut p = IntMatrix::zeros(n, n);
                for y in 0..n {
                    p[(g.mul(x, y), y)] = 1.into();
                }
                p
            })
            .collect();
        return GModule::new(&g, FgAbelianGroup::free(n), action);
    }
    let body = name
        .strip_prefix('Z')
        .ok_or_else(|| Error::InvalidInput(format!("unknown module `{name}`")))?;
    if let Some(c) = body.strip_suffix("triv") {
        return Ok(GModule::trivial(&g, coeff(c)?));
    }
    if let Some(c) = body.strip_suffix("sign") {
        return GModule::signed(&g, coeff(c)?, &sign_character(&g, group_name)?);
    }
    if let Some(c) = body.strip_suffix("rot") {
        let t = rotation(n)
            .filter(|_| cyclic)
            .ok_or_else(|| Error::InvalidInput(format!("{group_name} has no rotation module")))?;
        let base = coeff(c)?;
        return GModule::cyclic_action(&g, FgAbelianGroup::direct_sum(&[&base, &base]), &t);
    }
    Err(Error::InvalidInput(format!("unknown module `{name}`")))
}

/// Pairs over groups of order at most four with modules of rank at most two;
/// rank two only over groups of order at most three.
pub fn corpus() -> Vec<(String, GModule)> {
    let mut out = Vec::new();
    for gname in ["Z1", "Z2", "Z3", "Z4", "V4"] {
        for mname in [
            "Ztriv", "Z2triv", "Z3triv", "Zsign", "Z2sign", "Z3sign", "Zrot", "Z3rot",
        ] {
            let Ok(m) = module(gname, mname) else {
                continue;
            };
            if m.rank() == 2 && m.group().order() > 3 {
                continue;
            }
            // sign modules with coefficients where −1 = 1 repeat the trivial ones
            if mname == "Z2sign" {
                continue;
            }
            out.push((format!("{gname}/{mname}"), m));
        }
    }
    out
}

/// `0 → A →(×k) B → C → 0` between rank-one modules with the same action.
pub fn scalar_ses(a: &GModule, b: &GModule, c: &GModule, k: i64) -> Result<ModuleSes> {
    let i = GMorphism::new(a, b, IntMatrix::from_i64_rows(&[vec![k]], 1))?;
    let p = GMorphism::new(b, c, IntMatrix::identity(1))?;
    ModuleSes::new(i, p)
}

/// `Z → Z → Z/m` and three nonsplit sequences of finite modules over the named group.
pub fn ses_corpus(group_name: &str) -> Result<Vec<(String, ModuleSes)>> {
    let g = group(group_name)?;
    let m = g.order().max(2);
    let triv = |a: FgAbelianGroup| GModule::trivial(&g, a);
    let z = triv(FgAbelianGroup::free(1));
    let cyc = |k: u64| triv(FgAbelianGroup::cyclic(k));
    Ok(vec![
        (
            format!("Z-x{m}-Z-Z{m}"),
            scalar_ses(&z, &z, &cyc(m as u64), m as i64)?,
        ),
        ("Z2-Z4-Z2".into(), scalar_ses(&cyc(2), &cyc(4), &cyc(2), 2)?),
        ("Z3-Z9-Z3".into(), scalar_ses(&cyc(3), &cyc(9), &cyc(3), 3)?),
        ("Z2-Z8-Z4".into(), scalar_ses(&cyc(2), &cyc(8), &cyc(4), 4)?),
    ])
}

pub fn lie_algebra(name: &str) -> Result<LieAlgebra> {
    match name {
        "sl2" => Ok(LieAlgebra::sl2()),
        "aff2" => Ok(LieAlgebra::affine_line()),
        "heis3" => Ok(LieAlgebra::heisenberg()),
        _ => name
            .strip_prefix("ab")
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&d| (1..=6).contains(&d))
            .map(LieAlgebra::abelian)
            .ok_or_else(|| Error::InvalidInput(format!("unknown Lie algebra `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_cohomology::cohomology;

    #[test]
    fn every_group_name_resolves() {
        for name in GROUP_NAMES {
            group(name).unwrap();
        }
        assert!(group("Z9").is_err());
        assert!(!group("S3").unwrap().is_abelian());
    }

    #[test]
    fn named_modules() {
        assert_eq!(
            module("Z2", "Z2triv")
                .unwrap()
                .underlying()
                .structure()
                .1
                .len(),
            1
        );
        assert!(module("Z3", "Zsign").is_err());
        assert_eq!(
            module("S3", "Zsign").unwrap().action(3).clone(),
            IntMatrix::from_i64_rows(&[vec![-1]], 1)
        );
        assert_eq!(module("Z3", "Zrot").unwrap().rank(), 2);
        assert_eq!(module("V4", "regular").unwrap().rank(), 4);
        assert_eq!(
            cohomology(&module("Z2", "Z2triv").unwrap(), 2)
                .unwrap()
                .structure(),
            (0, vec![2.into()])
        );
    }

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c
            .iter()
            .all(|(_, m)| m.rank() <= 2 && m.group().order() <= 4));
        assert!(c
            .iter()
            .any(|(_, m)| !m.is_trivial_action() && m.rank() == 2));
        assert!(ses_corpus("V4").unwrap().len() == 4);
    }
}
