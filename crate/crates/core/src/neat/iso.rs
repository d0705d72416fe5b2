//! Maps between matrix algebras of different dimensions: restriction onto a
//! neat reduct, and the relativized reduct cut out by column witnesses.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::atomset::AtomSet;
use crate::constructions::hh::BinForb;
use crate::constructions::matrices::{basic_matrices, BasicMatrices, Matrix};
use crate::error::{Error, Result};
use crate::neat::nr::nr;
use crate::neat::rd::rd_rho;
use crate::neat::report::{CertificateLevel, TransformReport};
use crate::neat::rl::rl_x;

fn check_dims(msmall: usize, mbig: usize) -> Result<()> {
    if !(3 <= msmall && msmall < mbig && mbig <= 4) {
        return Err(Error::Parameter(format!(
            "need 3 <= small < big <= 4, got small={msmall}, big={mbig}"
        )));
    }
    Ok(())
}

fn bin_params(bin: &BinForb) -> serde_json::Value {
    json!({ "n": bin.n, "r": bin.r, "psi": bin.psi })
}

/// Big-matrix indices grouped by their top-left `k x k` block.
fn by_restriction(big: &BasicMatrices, k: usize, keep: impl Fn(usize) -> bool) -> HashMap<Matrix, Vec<usize>> {
    let mut out: HashMap<Matrix, Vec<usize>> = HashMap::new();
    for f in (0..big.matrices.len()).filter(|&f| keep(f)) {
        out.entry(big.restrict(f, k)).or_default().push(f);
    }
    out
}

/// `X -> {f : f restricted to the small square is in X}` from the small
/// matrix algebra onto `Nr` of the big one.
pub fn restriction_iso(msmall: usize, mbig: usize, bin: &BinForb) -> Result<TransformReport> {
    check_dims(msmall, mbig)?;
    let small = basic_matrices(msmall, bin)?;
    let big = basic_matrices(mbig, bin)?;
    let (ns, nb) = (small.matrices.len(), big.matrices.len());
    let groups = by_restriction(&big, msmall, |_| true);
    let image_of_atom: Vec<AtomSet> = small
        .matrices
        .iter()
        .map(|g| AtomSet::from_indices(nb, groups.get(g).into_iter().flatten().copied()))
        .collect();
    let image = |x: &AtomSet| {
        let mut out = AtomSet::empty(nb);
        for g in x.iter() {
            out.union_with(&image_of_atom[g]);
        }
        out
    };
    let gamma: Vec<usize> = (0..msmall).collect();
    let q = nr(&big.structure, &gamma, false)?;
    let params = json!({
        "small": msmall,
        "big": mbig,
        "bin": bin_params(bin),
        "small_atoms": ns,
        "big_atoms": nb,
        "classes": q.frame.class_count(),
    });
    let fail = |msg: String| Ok(TransformReport::new("iso-check", params.clone(), CertificateLevel::AtomsAdditive, Some(msg)));

    if let Some(c) = q.report.counterexample {
        return fail(format!("quotient certificate: {c}"));
    }
    let mut hit = vec![false; q.frame.class_count()];
    for (g, img) in image_of_atom.iter().enumerate() {
        let p = q.frame.project(img);
        if img.is_empty() || p.count() != 1 || q.frame.lift(&p) != *img {
            return fail(format!("{} does not map onto a single class", small.structure.label(g)));
        }
        let c = p.iter().next().expect("one class");
        if hit[c] {
            return fail(format!("{} shares its class with another atom", small.structure.label(g)));
        }
        hit[c] = true;
    }
    if let Some(c) = hit.iter().position(|h| !h) {
        return fail(format!("class of {} is not an image", big.structure.label(q.frame.classes[c][0])));
    }
    let (ss, bs) = (&small.structure, &big.structure);
    for j in 0..msmall {
        for k in 0..msmall {
            if image(ss.diag_set(j, k)) != *bs.diag_set(j, k) {
                return fail(format!("d{j}{k} is not preserved"));
            }
        }
    }
    for g in 0..ns {
        let x = AtomSet::singleton(ns, g);
        for j in 0..msmall {
            if image(&ss.cyl_raw(j, &x)) != bs.cyl_raw(j, &image_of_atom[g]) {
                return fail(format!("c{j} is not preserved at {}", ss.label(g)));
            }
            for k in j + 1..msmall {
                let a = image(&ss.transp_raw(j, k, &x).expect("polyadic"));
                if a != bs.transp_raw(j, k, &image_of_atom[g]).expect("polyadic") {
                    return fail(format!("s[{j},{k}] is not preserved at {}", ss.label(g)));
                }
            }
        }
    }
    Ok(TransformReport::new("iso-check", params, CertificateLevel::AtomsAdditive, None))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativizationWitness {
    /// Big matrices whose every extra column has an `Id` entry in the small rows.
    pub x: Vec<usize>,
    pub x_size: usize,
    /// `c_i x . c_j x = x` for all distinct small `i, j`.
    pub cylinder_meets: bool,
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
    pub report: TransformReport,
}

/// The witness element over the big matrix algebra and the map
/// `S -> {f in x : f restricted to the small square is in S}` into
/// `Rl_x Rd_small` of the big algebra, with every property checked on atoms.
pub fn rl_x_witness(mbig: usize, msmall: usize, bin: &BinForb) -> Result<RelativizationWitness> {
    check_dims(msmall, mbig)?;
    let small = basic_matrices(msmall, bin)?;
    let big = basic_matrices(mbig, bin)?;
    let (ns, nb) = (small.matrices.len(), big.matrices.len());
    let in_x = |f: usize| {
        let m = &big.matrices[f];
        (msmall..mbig).all(|l| (0..msmall).any(|i| m[i * mbig + l] == 0))
    };
    let x = AtomSet::from_indices(nb, (0..nb).filter(|&f| in_x(f)));
    let bs = &big.structure;
    let cylinder_meets = (0..msmall).all(|i| {
        (0..msmall)
            .filter(|&j| j != i)
            .all(|j| bs.cyl_raw(i, &x).intersection(&bs.cyl_raw(j, &x)) == x)
    });

    let rho: Vec<usize> = (0..msmall).collect();
    let rd = rd_rho(bs, &rho)?;
    let rl = rl_x(&rd, &rd.element_from_set(x.clone())?)?;
    let groups = by_restriction(&big, msmall, |f| x.contains(f));
    let image_of_atom: Vec<AtomSet> = small
        .matrices
        .iter()
        .map(|g| AtomSet::from_indices(nb, groups.get(g).into_iter().flatten().copied()))
        .collect();
    let image = |y: &AtomSet| {
        let mut out = AtomSet::empty(nb);
        for g in y.iter() {
            out.union_with(&image_of_atom[g]);
        }
        out
    };

    let ss = &small.structure;
    let mut problems = Vec::new();
    let mut homomorphism = true;
    'hom: for j in 0..msmall {
        for k in 0..msmall {
            if image(ss.diag_set(j, k)) != rd.diag_set(j, k).intersection(&x) {
                problems.push(format!("d{j}{k} is not preserved"));
                homomorphism = false;
                break 'hom;
            }
        }
        for g in 0..ns {
            let lhs = image(&ss.cyl_raw(j, &AtomSet::singleton(ns, g)));
            let relative = rl.embed(&rl.structure.element_from_set(
                rl.structure.cyl_raw(j, rl.restrict(&image_of_atom[g])?.members()),
            )?);
            if lhs != relative {
                problems.push(format!("c{j} is not preserved at {}", ss.label(g)));
                homomorphism = false;
                break 'hom;
            }
        }
    }
    let empty = (0..ns).find(|&g| image_of_atom[g].is_empty());
    let injective = empty.is_none();
    if let Some(g) = empty {
        problems.push(format!("{} has an empty image", ss.label(g)));
    }
    let wide = (0..ns).find(|&g| image_of_atom[g].count() > 1);
    let surjective = wide.is_none() && image(&AtomSet::full(ns)) == x;
    if let Some(g) = wide {
        problems.push(format!(
            "{} maps to {} atoms of the relativized algebra",
            ss.label(g),
            image_of_atom[g].count()
        ));
    }
    if !cylinder_meets {
        problems.push("c_i x . c_j x differs from x".into());
    }
    let params = json!({
        "small": msmall,
        "big": mbig,
        "bin": bin_params(bin),
        "small_atoms": ns,
        "x_size": x.count(),
    });
    let report = TransformReport::new(
        "rl-witness",
        params,
        CertificateLevel::AtomsAdditive,
        problems.into_iter().next(),
    );
    Ok(RelativizationWitness {
        x: x.to_vec(),
        x_size: x.count(),
        cylinder_meets,
        homomorphism,
        injective,
        surjective,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::hh::{bin_forb, PsiBound};

    #[test]
    fn restriction_is_an_isomorphism_onto_the_neat_reduct() {
        // four points over two colour groups: Bin(4, 1) with one colour each
        let bin = bin_forb(4, 1, PsiBound::Cap(1)).unwrap();
        let r = restriction_iso(3, 4, &bin).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert_eq!(r.params["small_atoms"], r.params["classes"]);
    }

    #[test]
    fn too_few_colour_groups_break_the_quotient() {
        // Bin(3, 1) has two groups; four points cannot always be amalgamated
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        let r = restriction_iso(3, 4, &bin).unwrap();
        assert!(!r.passed);
        assert_eq!(r.params["small_atoms"], 61);
        assert!(r.counterexample.unwrap().starts_with("quotient certificate"));
    }

    #[test]
    fn witness_element() {
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        let w = rl_x_witness(4, 3, &bin).unwrap();
        let big = basic_matrices(4, &bin).unwrap();
        assert!(w.x.contains(&big.identity_matrix()));
        // independent filter: some entry of the last column above the diagonal is Id
        let count = big.matrices.iter().filter(|m| m[3] == 0 || m[7] == 0 || m[11] == 0).count();
        assert_eq!(w.x_size, count);
        assert!(w.injective);
    }

    #[test]
    fn cylinder_meet_law_fails_on_a_clone() {
        let bin = bin_forb(4, 1, PsiBound::Cap(1)).unwrap();
        let big = basic_matrices(4, &bin).unwrap();
        let w = rl_x_witness(4, 3, &bin).unwrap();
        assert!(!w.cylinder_meets);
        assert!(!w.report.passed);
        let a = bin.ra.atom_index("a^0(0,0)").unwrap();
        // 0, 1, 2 coincide and 3 sits at distance a from all of them
        let mut f = vec![0; 16];
        for p in 0..3 {
            f[p * 4 + 3] = a;
            f[3 * 4 + p] = a;
        }
        let fi = big.matrix_index(&f).unwrap();
        assert!(!w.x.contains(&fi));
        // re-pointing row 0 or row 1 at 3 puts the result in x
        for i in 0..2 {
            let mut g = f.clone();
            for p in (0..4).filter(|&p| p != i) {
                let v = if p == 3 { 0 } else { a };
                g[i * 4 + p] = v;
                g[p * 4 + i] = v;
            }
            assert!(w.x.contains(&big.matrix_index(&g).unwrap()));
        }
        // the map is not a homomorphism: c0 of the constant-Id atom gains clones of 0
        assert!(!w.homomorphism);
    }

    #[test]
    fn dimension_contract() {
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        assert!(restriction_iso(3, 3, &bin).is_err());
        assert!(rl_x_witness(5, 3, &bin).is_err());
    }
}
