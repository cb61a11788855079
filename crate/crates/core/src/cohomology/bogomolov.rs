use serde::Serialize;

use super::cayley::{bicyclic_subgroups, CayleyGroup, DEFAULT_COHOMOLOGY_BOUND};
use super::cochain::{restrict, Cochain2};
use super::model::{CocycleModel, CohomologyModule, TrivialityWitness};
use super::modlat::{quotient, relations, HowellForm};
use crate::error::{Error, Result};

/// Vanishing of one cocycle's restriction to one bicyclic subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingWitness {
    /// Element indices of the subgroup, ascending.
    pub subgroup: Vec<usize>,
    /// Witness over the subgroup's own indexing (position in `subgroup`).
    pub witness: TrivialityWitness,
}

/// A class in the kernel, with evidence that it restricts trivially to every bicyclic subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelCertificate {
    pub order: i64,
    pub cocycle: Cochain2,
    pub witnesses: Vec<VanishingWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BogomolovReport {
    pub order: usize,
    pub h2: CohomologyModule,
    pub b0: CohomologyModule,
    pub bicyclic_count: usize,
    pub maximal_bicyclic_count: usize,
    pub certificates: Vec<KernelCertificate>,
}

/// Bicyclic subgroups not properly contained in another bicyclic subgroup.
pub fn maximal_bicyclic_subgroups(group: &CayleyGroup) -> Vec<Vec<usize>> {
    let all = bicyclic_subgroups(group);
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.binary_search(x).is_ok());
    all.iter()
        .filter(|s| !all.iter().any(|t| t.len() > s.len() && contains(t, s)))
        .cloned()
        .collect()
}

fn check_bound(group: &CayleyGroup) -> Result<()> {
    if group.order() > DEFAULT_COHOMOLOGY_BOUND {
        return Err(Error::CohomologyBound {
            order: group.order(),
            bound: DEFAULT_COHOMOLOGY_BOUND,
        });
    }
    Ok(())
}

/// `H²(G, Q/Z)`, computed as `Z²(G, Z/N) / (B² + δ Hom(G, Z/N))` with `N = |G|`.
pub fn h2_qz(group: &CayleyGroup) -> Result<CohomologyModule> {
    check_bound(group)?;
    let n = group.order() as i64;
    let model = CocycleModel::new(group, n);
    let h2 = model.h2();
    Ok(CohomologyModule {
        modulus: n,
        invariant_factors: h2.summands.iter().map(|s| s.order).collect(),
        basis: h2.summands.iter().map(|s| model.expand(&s.element)).collect(),
    })
}

/// Restriction to the subgroup on `elements`, returned with the subgroup's own table.
pub fn restrict_cocycle(group: &CayleyGroup, elements: &[usize], c: &Cochain2) -> Result<(CayleyGroup, Cochain2)> {
    let (sub, map) = group.subgroup(elements)?;
    let r = restrict(c, &map);
    Ok((sub, r))
}

/// A witness that `c` is zero in `H²(G, Q/Z)`, or `None` if its class is nonzero.
pub fn triviality_witness(group: &CayleyGroup, c: &Cochain2) -> Result<Option<TrivialityWitness>> {
    if c.order() != group.order() {
        return Err(Error::Invalid("cochain and group have different orders".into()));
    }
    if !c.is_cocycle(group) {
        return Err(Error::Invalid("cochain is not a cocycle".into()));
    }
    let model = CocycleModel::new(group, c.modulus());
    Ok(model.triviality_witness(c))
}

pub fn bogomolov_multiplier(group: &CayleyGroup) -> Result<CohomologyModule> {
    Ok(bogomolov_report(group)?.b0)
}

/// `B0(G)`: classes of `H²(G, Q/Z)` restricting to zero on every bicyclic subgroup.
pub fn bogomolov_report(group: &CayleyGroup) -> Result<BogomolovReport> {
    check_bound(group)?;
    let n = group.order() as i64;
    let model = CocycleModel::new(group, n);
    let h2 = model.h2();
    let h2_module = CohomologyModule {
        modulus: n,
        invariant_factors: h2.summands.iter().map(|s| s.order).collect(),
        basis: h2.summands.iter().map(|s| model.expand(&s.element)).collect(),
    };
    let bicyclic_count = bicyclic_subgroups(group).len();
    let maximal = maximal_bicyclic_subgroups(group);
    let s = h2.summands.len();

    // Generators (in H² coordinates) of the classes restricting trivially so far.
    let mut kernel: Vec<Vec<i64>> = (0..s).map(|i| (0..s).map(|j| i64::from(i == j)).collect()).collect();
    let cocycle_of = |coeffs: &[i64]| {
        let mut coords = vec![0; model.width()];
        for (c, summand) in coeffs.iter().zip(&h2.summands) {
            for (x, y) in coords.iter_mut().zip(&summand.element) {
                *x = (*x + c * y) % n;
            }
        }
        model.expand(&coords)
    };
    for set in &maximal {
        if kernel.is_empty() {
            break;
        }
        let (sub, map) = group.subgroup(set)?;
        let sub_model = CocycleModel::new(&sub, n);
        let restricted: Vec<Vec<i64>> = kernel
            .iter()
            .map(|k| sub_model.coordinates(&restrict(&cocycle_of(k), &map)))
            .collect();
        let (cob, homs) = sub_model.trivial_generators();
        let mut trivial = cob;
        trivial.extend(
            homs.iter()
                .map(|phi| sub_model.coordinates(&super::cochain::bockstein(&sub, phi, n))),
        );
        let rel = relations(&restricted, &trivial, sub_model.width(), n);
        kernel = rel
            .iter()
            .map(|y| {
                let mut v = vec![0; s];
                for (yi, k) in y.iter().zip(&kernel) {
                    for (a, b) in v.iter_mut().zip(k) {
                        *a = (*a + yi * b) % n;
                    }
                }
                v
            })
            .collect();
        let mut h = HowellForm::new(s, n);
        for k in &kernel {
            h.insert(k);
        }
        kernel = h.rows();
    }

    let zero_classes: Vec<Vec<i64>> = (0..s)
        .map(|i| {
            let mut v = vec![0; s];
            v[i] = h2.summands[i].order;
            v
        })
        .collect();
    let b0_summands = quotient(&kernel, &zero_classes, s, n);
    let mut certificates = Vec::new();
    let mut basis = Vec::new();
    for summand in &b0_summands {
        let cocycle = cocycle_of(&summand.element);
        let mut witnesses = Vec::new();
        for set in &maximal {
            let (sub, map) = group.subgroup(set)?;
            let sub_model = CocycleModel::new(&sub, n);
            let witness = sub_model
                .triviality_witness(&restrict(&cocycle, &map))
                .expect("kernel class restricts nontrivially");
            witnesses.push(VanishingWitness {
                subgroup: set.clone(),
                witness,
            });
        }
        basis.push(cocycle.clone());
        certificates.push(KernelCertificate {
            order: summand.order,
            cocycle,
            witnesses,
        });
    }
    let b0 = CohomologyModule {
        modulus: n,
        invariant_factors: b0_summands.iter().map(|s| s.order).collect(),
        basis,
    };
    Ok(BogomolovReport {
        order: group.order(),
        h2: h2_module,
        b0,
        bicyclic_count,
        maximal_bicyclic_count: maximal.len(),
        certificates,
    })
}

/// Independently re-checks a certificate: the cocycle identity on `G`, that its class is
/// nonzero, that every bicyclic subgroup lies in a witnessed one, and every witness.
pub fn verify_certificate(group: &CayleyGroup, cert: &KernelCertificate) -> bool {
    let n = cert.cocycle.modulus();
    if cert.cocycle.order() != group.order() || !cert.cocycle.is_cocycle(group) {
        return false;
    }
    if CocycleModel::new(group, n).triviality_witness(&cert.cocycle).is_some() {
        return false;
    }
    let covered = bicyclic_subgroups(group).iter().all(|b| {
        cert.witnesses
            .iter()
            .any(|w| b.iter().all(|x| w.subgroup.binary_search(x).is_ok()))
    });
    covered
        && cert.witnesses.iter().all(|w| match group.subgroup(&w.subgroup) {
            Ok((sub, map)) => w.witness.evaluate(&sub, n) == Some(restrict(&cert.cocycle, &map)),
            Err(_) => false,
        })
}
