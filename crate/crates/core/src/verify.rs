//! The full invariant suite for one group and each of its normal subgroups.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::GroupAnalysis;
use crate::clifford::{self, build_g_char_table_with_delta, choose_delta_random};
use crate::error::TheoremError;
use crate::io::{parse_cyclo, render_cyclo};
use crate::oracle::prime_divisors;
use crate::theorems::{self, Status};

/// Checks that a randomly chosen alternative Δ leaves the relation B
/// multiset, the Lin_G cells, Mcd, Lcd and `[N,G]` unchanged.
pub fn delta_invariance(an: &GroupAnalysis, i: usize, seed: u64) -> Result<bool, TheoremError> {
    let tg = an.table();
    let base = an.g_table(i)?;
    let delta = choose_delta_random(tg, &base.cells, seed);
    let alt = build_g_char_table_with_delta(tg, an.normal(i), base.cells.clone(), delta)?;
    let alt_rows = clifford::clifford_oracle(tg, &alt, an.normal_table(i)?)?;
    clifford::check_against_oracle(&alt, &alt_rows)?;
    let lin_cells = |gt: &clifford::GCharTable| -> BTreeSet<usize> {
        clifford::lin_g_from_table(gt).into_iter().map(|j| clifford::cell_of(gt, gt.delta[j])).collect()
    };
    Ok(clifford::cell_profile(base)? == clifford::cell_profile(&alt)?
        && lin_cells(base) == lin_cells(&alt)
        && clifford::lcd_from_table(base)? == clifford::lcd_from_table(&alt)?
        && clifford::mcd(an.clifford_rows(i)?) == clifford::mcd(&alt_rows)
        && clifford::commutator_from_table(tg, base) == clifford::commutator_from_table(tg, &alt))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeStatus {
    pub p: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalReport {
    pub index: usize,
    pub order: usize,
    pub k: usize,
    pub lambda: Vec<u64>,
    pub lin_g: usize,
    pub commutator_order: usize,
    pub lcd: Vec<u64>,
    pub mcd: Vec<u64>,
    pub hypercentral_length: Option<usize>,
    pub nilpotent: bool,
    pub solvable: bool,
    pub g_invariant_nmi: bool,
    pub thompson: Vec<PrimeStatus>,
    pub taketa: Status,
    pub fratt: Status,
    pub delta_invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub classes: usize,
    pub table_exact: bool,
    pub values_round_trip: bool,
    pub p_elements_agree: bool,
    pub nmi: bool,
    pub nmi_structure: Status,
    pub normals: Vec<NormalReport>,
    /// Theorem checks that applied and failed.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_group(an: &GroupAnalysis, seed: u64) -> Result<VerifyReport, TheoremError> {
    let g = an.group();
    let tg = an.table();
    let mut failures = Vec::new();
    let table_exact = tg.verify().is_ok();
    if !table_exact {
        failures.push("character table orthogonality".to_string());
    }
    let values_round_trip = tg.values().iter().flatten().all(|v| parse_cyclo(&render_cyclo(v)).as_ref() == Ok(v));
    if !values_round_trip {
        failures.push("E(n) round trip of table values".to_string());
    }
    let mut p_elements_agree = true;
    for p in prime_divisors(g.order()) {
        p_elements_agree &= theorems::p_elements_from_table(tg, p)? == theorems::p_elements_by_order(tg, p);
    }
    if !p_elements_agree {
        failures.push("p-element classes".to_string());
    }
    let nmi = theorems::is_nmi_group(an)?.holds();
    let nmi_structure = theorems::nmi_structure_check(an)?.status;
    if nmi_structure == Status::Fails {
        failures.push("nMI nilpotency bound".to_string());
    }
    let mut normals = Vec::new();
    for i in 0..an.normals().len() {
        let n = an.normal(i);
        let gt = an.g_table(i)?;
        let rows = an.clifford_rows(i)?;
        let bracket = clifford::commutator_from_table(tg, gt);
        let lin_g = clifford::lin_g_from_table(gt).len();
        if n.order() / bracket.order() != lin_g {
            failures.push(format!("N{i}: |N:[N,G]| = |Lin_G(N)|"));
        }
        let mut thompson = Vec::new();
        for p in prime_divisors(n.order()) {
            theorems::s_of_n(an, i, p)?;
            let status = theorems::thompson_check(an, i, p)?.status;
            if status == Status::Fails {
                failures.push(format!("N{i}: Thompson variant at p = {p}"));
            }
            thompson.push(PrimeStatus { p, status });
        }
        let taketa = theorems::taketa_check(an, i)?.status;
        if taketa == Status::Fails {
            failures.push(format!("N{i}: Taketa containment"));
        }
        let fratt = theorems::fratt_check(an, i)?.status;
        if fratt == Status::Fails {
            failures.push(format!("N{i}: Frattini containment"));
        }
        let g_invariant_nmi = theorems::is_g_invariant_nmi_subgroup(an, i)?.holds();
        if nmi && !g_invariant_nmi {
            failures.push(format!("N{i}: normal subgroup of an nMI-group is G-invariant nMI"));
        }
        let delta_invariant = delta_invariance(an, i, seed)?;
        if !delta_invariant {
            failures.push(format!("N{i}: invariance under an alternative Δ"));
        }
        normals.push(NormalReport {
            index: i,
            order: n.order(),
            k: gt.k(),
            lambda: gt.lambda_diag.clone(),
            lin_g,
            commutator_order: bracket.order(),
            lcd: clifford::lcd_from_table(gt)?.into_iter().collect(),
            mcd: clifford::mcd(rows).into_iter().collect(),
            hypercentral_length: crate::subgroup::hypercentral_g_length(g, n)?.length(),
            nilpotent: theorems::nilpotent_from_table(an, i)?.holds(),
            solvable: theorems::solvable_from_table(an, i)?.holds(),
            g_invariant_nmi,
            thompson,
            taketa,
            fratt,
            delta_invariant,
        });
    }
    Ok(VerifyReport {
        classes: tg.len(),
        table_exact,
        values_round_trip,
        p_elements_agree,
        nmi,
        nmi_structure,
        normals,
        failures,
    })
}
