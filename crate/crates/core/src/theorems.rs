//! Detectors and theorem checks on top of the character table of `G`.
//!
//! Each check runs a table path (values of `G`'s table only) and, where one
//! exists, an independent oracle path (element computations or tables of
//! subgroups). A disagreement is reported as an error, never resolved.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::analysis::GroupAnalysis;
use crate::chartab::CharacterTable;
use crate::clifford::{self, classes_in, lambda_entry, lcd_from_table, lin_g_from_table, relation_b};
use crate::cyclotomic::{congruent_mod_p, Cyclotomic};
use crate::error::TheoremError;
use crate::oracle::{
    frattini, is_p_element, is_solvable, nilpotency_class, normal_p_complement, o_p, o_p_prime, p_part,
    prime_divisors, SubgroupSummary,
};
use crate::subgroup::{commutator, hypercentral_g_length, lower_central_g_series, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Flag(bool),
    Count(u64),
    Counts(Vec<u64>),
    Subgroup(SubgroupSummary),
    Subgroups(Vec<SubgroupSummary>),
    Pairs(Vec<LinearPair>),
    Text(String),
}

impl From<bool> for Evidence {
    fn from(b: bool) -> Self {
        Evidence::Flag(b)
    }
}

impl From<u64> for Evidence {
    fn from(n: u64) -> Self {
        Evidence::Count(n)
    }
}

impl From<usize> for Evidence {
    fn from(n: usize) -> Self {
        Evidence::Count(n as u64)
    }
}

impl From<Vec<u64>> for Evidence {
    fn from(v: Vec<u64>) -> Self {
        Evidence::Counts(v)
    }
}

impl From<Vec<usize>> for Evidence {
    fn from(v: Vec<usize>) -> Self {
        Evidence::Counts(v.into_iter().map(|x| x as u64).collect())
    }
}

impl From<&BTreeSet<u64>> for Evidence {
    fn from(v: &BTreeSet<u64>) -> Self {
        Evidence::Counts(v.iter().copied().collect())
    }
}

impl From<&Subgroup> for Evidence {
    fn from(h: &Subgroup) -> Self {
        Evidence::Subgroup(h.into())
    }
}

impl From<String> for Evidence {
    fn from(s: String) -> Self {
        Evidence::Text(s)
    }
}

impl From<&str> for Evidence {
    fn from(s: &str) -> Self {
        Evidence::Text(s.to_string())
    }
}

/// Named pieces of evidence, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness(Vec<(String, Evidence)>);

impl Witness {
    pub fn push(&mut self, key: &str, value: impl Into<Evidence>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Evidence> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn count(&self, key: &str) -> Option<u64> {
        match self.get(key)? {
            Evidence::Count(n) => Some(*n),
            _ => None,
        }
    }

    pub fn counts(&self, key: &str) -> Option<&[u64]> {
        match self.get(key)? {
            Evidence::Counts(v) => Some(v),
            _ => None,
        }
    }

    pub fn entries(&self) -> &[(String, Evidence)] {
        &self.0
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Witness,
    /// Outcome of the independent path, when there is one.
    pub cross_check: Option<bool>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    fn decided(holds: bool, witness: Witness, cross_check: Option<bool>, what: &str) -> Result<Self, TheoremError> {
        if cross_check.is_some_and(|c| c != holds) {
            return Err(TheoremError::PathDisagreement(what.to_string()));
        }
        let status = if holds { Status::Holds } else { Status::Fails };
        Ok(Verdict { status, witness, cross_check })
    }

    fn not_applicable(witness: Witness) -> Self {
        Verdict { status: Status::NotApplicable, witness, cross_check: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `Irr(G|λ) = {χ}`.
    CharacterPair,
    /// `Irr(G|θ) = Irr(G|λ)` for `θ ∈ Irr(N)`.
    GCharacterPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearPair {
    /// Index of `H` in the normal-subgroup list.
    pub normal_index: usize,
    pub subgroup: SubgroupSummary,
    /// Row of `λ` in the table of `H`.
    pub lambda_row: usize,
    /// Row of `χ` in the table of `G`, or of `θ` in the table of `N`.
    pub target: usize,
    pub kind: PairKind,
}

fn p_element_mask(tg: &CharacterTable, rows: &[usize], quotient_order: usize, p: usize) -> Result<Vec<bool>, TheoremError> {
    let power = p_part(quotient_order, p) as u64;
    let congruence = |a: &Cyclotomic, b: &Cyclotomic| {
        congruent_mod_p(a, b, p as u64).map_err(|e| TheoremError::CongruenceFailed(e.to_string()))
    };
    let mut mask = Vec::with_capacity(tg.classes().count());
    for c in 0..tg.classes().count() {
        let mut all = true;
        for &r in rows {
            if !congruence(&tg.value(r, c).pow(power), tg.value(r, 0))? {
                all = false;
                break;
            }
        }
        mask.push(all);
    }
    Ok(mask)
}

/// Classes of p-elements, read off `χ(x)^{|G|_p} ≡ χ(1) (mod p)` for every row.
pub fn p_elements_from_table(tg: &CharacterTable, p: usize) -> Result<Vec<usize>, TheoremError> {
    let rows: Vec<usize> = (0..tg.len()).collect();
    let mask = p_element_mask(tg, &rows, tg.group().order(), p)?;
    Ok((0..mask.len()).filter(|&c| mask[c]).collect())
}

/// Classes of p-elements by element order.
pub fn p_elements_by_order(tg: &CharacterTable, p: usize) -> Vec<usize> {
    (0..tg.classes().count()).filter(|&c| is_p_element(tg.group(), tg.classes().rep(c), p)).collect()
}

fn class_total(tg: &CharacterTable, classes: &[usize]) -> usize {
    classes.iter().map(|&c| tg.class_size(c)).sum()
}

/// Whether `T/K` is nilpotent, for normal subgroups given as class sets,
/// using only rows of `G` with `K` in their kernel: every Sylow subgroup
/// of `T/K` is normal exactly when it has `|T/K|_p` p-elements.
fn quotient_is_nilpotent(tg: &CharacterTable, top: &[usize], bottom: &[usize]) -> Result<bool, TheoremError> {
    let k = class_total(tg, bottom);
    let q = class_total(tg, top) / k;
    let rows = tg.rows_containing_in_kernel(bottom);
    let g_over_k = tg.group().order() / k;
    for p in prime_divisors(q) {
        let mask = p_element_mask(tg, &rows, g_over_k, p)?;
        let count = top.iter().filter(|&&c| mask[c]).map(|&c| tg.class_size(c)).sum::<usize>() / k;
        if count != p_part(q, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal subgroups of `G` as class sets: every intersection of kernels.
pub fn normal_subgroups_from_table(tg: &CharacterTable) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert((0..tg.classes().count()).collect());
    for r in 0..tg.len() {
        let ker = tg.kernel_classes(r);
        let next: Vec<Vec<usize>> =
            found.iter().map(|s| s.iter().copied().filter(|c| ker.contains(c)).collect()).collect();
        found.extend(next);
    }
    let mut list: Vec<Vec<usize>> = found.into_iter().collect();
    list.sort_by_key(|s| (class_total(tg, s), s.clone()));
    list
}

pub fn nilpotent_from_table(an: &GroupAnalysis, i: usize) -> Result<Verdict, TheoremError> {
    let tg = an.table();
    let n = an.normal(i);
    let inside = classes_in(tg, n);
    let mut witness = Witness::default();
    let mut counts = Vec::new();
    let mut sylows = Vec::new();
    let primes = prime_divisors(n.order());
    for &p in &primes {
        let mask = p_element_mask(tg, &(0..tg.len()).collect::<Vec<_>>(), tg.group().order(), p)?;
        counts.push(inside.iter().filter(|&&c| mask[c]).map(|&c| tg.class_size(c)).sum::<usize>());
        sylows.push(p_part(n.order(), p));
    }
    let holds = counts == sylows;
    witness.push("primes", primes);
    witness.push("p_element_counts", counts);
    witness.push("sylow_orders", sylows);
    let cross = nilpotency_class(an.group(), n).is_some();
    Verdict::decided(holds, witness, Some(cross), "nilpotency of N")
}

/// Descends through nilpotent residuals, all found among the table's
/// normal subgroups; `N` is solvable when the descent reaches 1.
pub fn solvable_from_table(an: &GroupAnalysis, i: usize) -> Result<Verdict, TheoremError> {
    let tg = an.table();
    let normals = normal_subgroups_from_table(tg);
    let mut top = classes_in(tg, an.normal(i));
    let mut series = vec![class_total(tg, &top)];
    let holds = loop {
        if top == [0] {
            break true;
        }
        let mut residual = top.clone();
        for k in normals.iter().filter(|k| k.iter().all(|c| top.contains(c))) {
            if quotient_is_nilpotent(tg, &top, k)? {
                residual.retain(|c| k.contains(c));
            }
        }
        if residual == top {
            break false;
        }
        top = residual;
        series.push(class_total(tg, &top));
    };
    let mut witness = Witness::default();
    witness.push("nilpotent_residual_orders", series);
    let cross = is_solvable(an.group(), an.normal(i));
    Verdict::decided(holds, witness, Some(cross), "solvability of N")
}

/// Order of the linear character `det θ`, from Newton's identities on the
/// power sums `θ(x^s)`.
pub fn determinant_order(tn: &CharacterTable, r: usize) -> Result<u64, TheoremError> {
    let d = tn.degree(r) as usize;
    let maps: Vec<Vec<usize>> = (1..=d).map(|s| tn.power_map(s as i64)).collect();
    let mut order = 1u64;
    for c in 0..tn.classes().count() {
        let sums: Vec<&Cyclotomic> = maps.iter().map(|m| tn.value(r, m[c])).collect();
        let mut elementary = vec![Cyclotomic::one()];
        for k in 1..=d {
            let mut acc = Cyclotomic::zero();
            for i in 1..=k {
                let term = &elementary[k - i] * sums[i - 1];
                acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            elementary.push(acc.divide_int(k as i64).map_err(|_| TheoremError::NotRootOfUnity)?);
        }
        let o = elementary[d].root_of_unity_order().ok_or(TheoremError::NotRootOfUnity)?;
        order = order.lcm(&o);
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SOfN {
    pub p: usize,
    /// Rows θ of Irr(N) with `p ∤ θ(1)` and `p ∤ o(θ)`.
    pub s_rows: Vec<usize>,
    pub s_value: u64,
    /// Linear G-invariant rows with `p ∤ o(θ)`.
    pub sg_rows: Vec<usize>,
    pub o_p_order: usize,
    /// `|N : [G,N] O^{p'}(N)|`.
    pub sg_index: usize,
}

/// `s(N) = Σ_{θ ∈ S(N)} θ(1)²`, checked against `|O^p(N)| (mod p)`, and
/// `|S_G(N)| = |N : [G,N] O^{p'}(N)|`.
pub fn s_of_n(an: &GroupAnalysis, i: usize, p: usize) -> Result<SOfN, TheoremError> {
    let g = an.group();
    let n = an.normal(i);
    let nt = an.normal_table(i)?;
    let tn = &nt.table;
    let pu = p as u64;
    let mut s_rows = Vec::new();
    let mut sg_rows = Vec::new();
    for r in 0..tn.len() {
        let o = determinant_order(tn, r)?;
        if tn.degree(r) == 1 {
            let index = (n.order() / tn.kernel_of(r).order()) as u64;
            if o != index {
                return Err(TheoremError::PathDisagreement(format!("o(θ) of linear row {r}")));
            }
        }
        if tn.degree(r) % pu != 0 && o % pu != 0 {
            s_rows.push(r);
            if tn.degree(r) == 1 && nt.inertia_order[r] == g.order() {
                sg_rows.push(r);
            }
        }
    }
    let s_value: u64 = s_rows.iter().map(|&r| tn.degree(r) * tn.degree(r)).sum();
    let o_p_order = o_p(g, n, p).order();
    if (o_p_order as i128 - s_value as i128).rem_euclid(p as i128) != 0 {
        return Err(TheoremError::CongruenceFailed(format!("|O^p(N)| = {o_p_order} against s(N) = {s_value} mod {p}")));
    }
    let below = commutator(g, &Subgroup::whole(g), n).join(g, &o_p_prime(g, n, p));
    let sg_index = n.order() / below.order();
    if sg_rows.len() != sg_index {
        return Err(TheoremError::CongruenceFailed(format!("|S_G(N)| = {} against index {sg_index}", sg_rows.len())));
    }
    Ok(SOfN { p, s_rows, s_value, sg_rows, o_p_order, sg_index })
}

/// If `p` divides `θ̂(1)` for every minimal G-invariant character outside
/// Lin_G(N), then `N` has a normal p-complement.
pub fn thompson_check(an: &GroupAnalysis, i: usize, p: usize) -> Result<Verdict, TheoremError> {
    let g = an.group();
    let n = an.normal(i);
    let gt = an.g_table(i)?;
    let rows = an.clifford_rows(i)?;
    let lin = lin_g_from_table(gt);
    let pu = p as u64;
    let mut offending = None;
    for j in (0..gt.k()).filter(|j| !lin.contains(j)) {
        // p | θ̂(1) iff p | θ̂(1)θ(1), since θ(1) divides θ̂(1).
        if relation_b(gt, j)? % pu != 0 {
            offending.get_or_insert(j);
        }
    }
    let oracle_offending = rows
        .iter()
        .enumerate()
        .find(|(_, r)| !(r.t == 1 && r.theta_deg == 1) && r.min_char_deg % pu != 0)
        .map(|(j, _)| j);
    if offending.is_some() != oracle_offending.is_some() {
        return Err(TheoremError::PathDisagreement("Thompson predicate".into()));
    }
    let mut witness = Witness::default();
    witness.push("p", p);
    witness.push("min_char_degrees", rows.iter().map(|r| r.min_char_deg).collect::<Vec<_>>());
    if let Some(j) = offending {
        witness.push("offending_row", gt.delta[j]);
        witness.push("offending_min_char_degree", rows[j].min_char_deg);
        return Ok(Verdict::not_applicable(witness));
    }
    let complement = normal_p_complement(g, n, p);
    if let Some(c) = &complement {
        witness.push("complement", c);
    }
    let residual = o_p(g, n, p);
    let cross = residual.order() == n.order() / p_part(n.order(), p);
    Verdict::decided(complement.is_some(), witness, Some(cross), "normal p-complement")
}

/// For each linear G-invariant λ of the table of normal subgroup `h`, the
/// rows of `G` lying over it.
fn lin_g_supports(an: &GroupAnalysis, h: usize) -> Result<Vec<(usize, Vec<usize>)>, TheoremError> {
    let tg = an.table();
    let nt = an.normal_table(h)?;
    let order = an.group().order();
    let mut out = Vec::new();
    for lambda in 0..nt.table.len() {
        if nt.table.degree(lambda) != 1 || nt.inertia_order[lambda] != order {
            continue;
        }
        let support =
            (0..tg.len()).filter(|&chi| !clifford::scaled_restriction_pairing(tg, nt, chi, lambda).is_zero()).collect();
        out.push((lambda, support));
    }
    Ok(out)
}

fn pair(an: &GroupAnalysis, h: usize, lambda_row: usize, target: usize, kind: PairKind) -> LinearPair {
    LinearPair { normal_index: h, subgroup: an.normal(h).into(), lambda_row, target, kind }
}

/// Definition path: first normal `H` (ascending) and linear G-invariant
/// `λ ∈ Irr(H)` with `Irr(G|λ) = {χ}`.
pub fn find_linear_pair(an: &GroupAnalysis, chi: usize) -> Result<Option<LinearPair>, TheoremError> {
    for h in 0..an.normals().len() {
        for (lambda, support) in lin_g_supports(an, h)? {
            if support == [chi] {
                return Ok(Some(pair(an, h, lambda, chi, PairKind::CharacterPair)));
            }
        }
    }
    Ok(None)
}

/// Table path: first normal `H` with `[G,H] ⊆ ker χ` and Λ entry `|G|`.
pub fn linear_pair_from_table(an: &GroupAnalysis, chi: usize) -> Result<Option<usize>, TheoremError> {
    let tg = an.table();
    let ker = tg.kernel_classes(chi);
    for h in 0..an.normals().len() {
        let gt = an.g_table(h)?;
        let bracket = clifford::commutator_from_table(tg, gt);
        if classes_in(tg, &bracket).iter().all(|c| ker.contains(c))
            && lambda_entry(tg, gt, chi) == an.group().order() as u64
        {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// `χ(1)² = |G:H|` and `χ` vanishes off `H`.
fn fully_ramified(an: &GroupAnalysis, chi: usize, h: usize) -> bool {
    let tg = an.table();
    let hs = an.normal(h);
    let d = tg.degree(chi) as usize;
    d * d * hs.order() == an.group().order()
        && (0..tg.classes().count()).all(|c| hs.contains(tg.classes().rep(c)) || tg.value(chi, c).is_zero())
}

pub fn is_nmi_group(an: &GroupAnalysis) -> Result<Verdict, TheoremError> {
    let tg = an.table();
    let supports: Vec<Vec<(usize, Vec<usize>)>> =
        (0..an.normals().len()).map(|h| lin_g_supports(an, h)).collect::<Result<_, _>>()?;
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    let mut table_all = true;
    for chi in 0..tg.len() {
        let found = supports.iter().enumerate().find_map(|(h, list)| {
            list.iter().find(|(_, s)| s == &[chi]).map(|&(lambda, _)| pair(an, h, lambda, chi, PairKind::CharacterPair))
        });
        let table = linear_pair_from_table(an, chi)?;
        if found.is_some() != table.is_some() {
            return Err(TheoremError::PathDisagreement(format!("linear character pair for row {chi}")));
        }
        match found {
            Some(p) => {
                if !fully_ramified(an, chi, p.normal_index) {
                    return Err(TheoremError::PathDisagreement(format!("full ramification of row {chi}")));
                }
                pairs.push(p);
            }
            None => {
                unpaired.push(chi);
                table_all = false;
            }
        }
    }
    let holds = unpaired.is_empty();
    let mut witness = Witness::default();
    witness.push("characters", tg.len());
    if let Some(&first) = unpaired.first() {
        witness.push("unpaired_rows", unpaired);
        witness.push("first_unpaired_degree", tg.degree(first));
        witness.push("normal_subgroups_searched", an.normals().len());
    }
    witness.push("pairs", Evidence::Pairs(pairs));
    Verdict::decided(holds, witness, Some(table_all), "nMI detection")
}

/// Whether `λ^N = m θ̂` for some positive integer `m`.
fn induced_is_multiple(an: &GroupAnalysis, h: usize, lambda: usize, n_idx: usize, theta: usize) -> Result<bool, TheoremError> {
    let g = an.group();
    let nh = an.normal_table(h)?;
    let nn = an.normal_table(n_idx)?;
    let hs = an.normal(h);
    let n = an.normal(n_idx);
    let tn = &nn.table;
    let orbit = &nn.orbits[nn.orbit_of[theta]];
    let mut induced = Vec::with_capacity(tn.classes().count());
    for c in 0..tn.classes().count() {
        let x = nn.embedding[tn.classes().rep(c)];
        let mut acc = Cyclotomic::zero();
        for &y in n.elements() {
            let z = g.conj(x, y);
            if hs.contains(z) {
                acc += nh.table.value_at(lambda, nh.local(z).expect("z lies in H"));
            }
        }
        induced.push(acc.divide_int(hs.order() as i64).map_err(|e| TheoremError::CongruenceFailed(e.to_string()))?);
    }
    let hat: Vec<Cyclotomic> = (0..tn.classes().count())
        .map(|c| orbit.iter().fold(Cyclotomic::zero(), |acc, &t| &acc + tn.value(t, c)))
        .collect();
    let top = induced[0].to_i64().expect("degrees are integers");
    let bottom = hat[0].to_i64().expect("degrees are integers");
    if top % bottom != 0 {
        return Ok(false);
    }
    let m = top / bottom;
    Ok(induced.iter().zip(&hat).all(|(a, b)| *a == b.scale_int(m)))
}

pub fn is_g_invariant_nmi_subgroup(an: &GroupAnalysis, i: usize) -> Result<Verdict, TheoremError> {
    let tg = an.table();
    let n = an.normal(i);
    let nn = an.normal_table(i)?;
    let gt_n = an.g_table(i)?;
    let below: Vec<usize> = (0..an.normals().len()).filter(|&h| an.normal(h).is_subset(n)).collect();
    let supports: Vec<(usize, Vec<(usize, Vec<usize>)>)> =
        below.iter().map(|&h| Ok((h, lin_g_supports(an, h)?))).collect::<Result<_, TheoremError>>()?;
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    let mut table_all = true;
    for orbit in &nn.orbits {
        let theta = orbit[0];
        let over: Vec<usize> = (0..tg.len())
            .filter(|&chi| !clifford::scaled_restriction_pairing(tg, nn, chi, theta).is_zero())
            .collect();
        let mut found = None;
        for (h, list) in &supports {
            for (lambda, support) in list {
                let same = support == &over;
                if same != induced_is_multiple(an, *h, *lambda, i, theta)? {
                    return Err(TheoremError::PathDisagreement(format!(
                        "Irr(G|θ) = Irr(G|λ) against λ^N = mθ̂ for θ row {theta}"
                    )));
                }
                if same && found.is_none() {
                    found = Some(pair(an, *h, *lambda, theta, PairKind::GCharacterPair));
                }
            }
        }
        // Table path: the cell of χ over θ must equal its cell for some H
        // where χ lies over Lin_G(H).
        let cell = &gt_n.cells[clifford::cell_of(gt_n, over[0])];
        if cell != &over {
            return Err(TheoremError::PathDisagreement(format!("cell of θ row {theta}")));
        }
        let chi = over[0];
        let mut table_found = false;
        for &h in &below {
            let gt_h = an.g_table(h)?;
            let d = tg.degree(chi);
            if lambda_entry(tg, gt_h, chi) == gt_h.n_order() * d * d && &gt_h.cells[clifford::cell_of(gt_h, chi)] == cell {
                let bracket = clifford::commutator_from_table(tg, gt_h);
                let ker = tg.kernel_classes(chi);
                if !classes_in(tg, &bracket).iter().all(|c| ker.contains(c)) {
                    return Err(TheoremError::PathDisagreement(format!("[G,H] ⊆ ker χ for row {chi}")));
                }
                table_found = true;
                break;
            }
        }
        if found.is_some() != table_found {
            return Err(TheoremError::PathDisagreement(format!("linear G-character pair for θ row {theta}")));
        }
        match found {
            Some(p) => pairs.extend(orbit.iter().map(|&t| LinearPair { target: t, ..p.clone() })),
            None => {
                unpaired.extend(orbit.iter().copied());
                table_all = false;
            }
        }
    }
    pairs.sort_by_key(|p| p.target);
    unpaired.sort();
    let holds = unpaired.is_empty();
    let mut witness = Witness::default();
    witness.push("irr_n", nn.table.len());
    if !holds {
        witness.push("unpaired_theta_rows", unpaired);
    }
    witness.push("pairs", Evidence::Pairs(pairs));
    Verdict::decided(holds, witness, Some(table_all), "G-invariant nMI detection")
}

/// `Γ^{j+1}_G(N) ⊆ ker θ̂` for each θ whose leader degree is the j-th
/// smallest element of `lcd`; plus hypercentrality with `l_G(N) ≤ |lcd|`.
fn taketa_holds(an: &GroupAnalysis, i: usize, lcd: &BTreeSet<u64>, leaders: &[u64]) -> Result<bool, TheoremError> {
    let g = an.group();
    let n = an.normal(i);
    let tg = an.table();
    let gt = an.g_table(i)?;
    let series = lower_central_g_series(g, n)?;
    let sorted: Vec<u64> = lcd.iter().copied().collect();
    for (j, &f) in leaders.iter().enumerate() {
        let pos = sorted.iter().position(|&x| x == f).expect("leader degrees lie in Lcd") + 1;
        let term = series.terms.get(pos).unwrap_or(series.last());
        let kernel = tg.kernel_of(gt.delta[j]).intersection(g, n);
        if !term.is_subset(&kernel) {
            return Ok(false);
        }
    }
    let l = hypercentral_g_length(g, n)?.length();
    Ok(l.is_some_and(|l| l <= sorted.len()))
}

pub fn taketa_check(an: &GroupAnalysis, i: usize) -> Result<Verdict, TheoremError> {
    let g = an.group();
    let n = an.normal(i);
    let gnmi = is_g_invariant_nmi_subgroup(an, i)?;
    let mut witness = Witness::default();
    if !gnmi.holds() {
        witness.push("g_invariant_nmi", false);
        return Ok(Verdict::not_applicable(witness));
    }
    let gt = an.g_table(i)?;
    let rows = an.clifford_rows(i)?;
    let lcd = lcd_from_table(gt)?;
    let leaders: Vec<u64> = (0..gt.k()).map(|j| relation_b(gt, j)).collect::<Result<_, _>>()?;
    let holds = taketa_holds(an, i, &lcd, &leaders)?;
    let oracle_lcd = clifford::lcd(rows);
    let oracle_leaders: Vec<u64> = rows.iter().map(|r| r.leader_deg).collect();
    let cross = taketa_holds(an, i, &oracle_lcd, &oracle_leaders)?;
    let series = lower_central_g_series(g, n)?;
    witness.push("lcd", &lcd);
    witness.push("mcd", &clifford::mcd(rows));
    witness.push("lower_series_orders", series.terms.iter().map(Subgroup::order).collect::<Vec<_>>());
    if let Some(l) = hypercentral_g_length(g, n)?.length() {
        witness.push("length", l);
    }
    witness.push("bound", lcd.len());
    Verdict::decided(holds, witness, Some(cross), "Taketa containment")
}

pub fn nmi_structure_check(an: &GroupAnalysis) -> Result<Verdict, TheoremError> {
    let g = an.group();
    let tg = an.table();
    let nmi = is_nmi_group(an)?;
    let mut witness = Witness::default();
    if !nmi.holds() {
        witness.push("nmi", false);
        return Ok(Verdict::not_applicable(witness));
    }
    let degrees: Vec<u64> = tg.degrees().iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let whole = Subgroup::whole(g);
    let series = lower_central_g_series(g, &whole)?;
    let mut contained = true;
    for r in 0..tg.len() {
        let pos = degrees.iter().position(|&d| d == tg.degree(r)).unwrap() + 1;
        let term = series.terms.get(pos).unwrap_or(series.last());
        if !term.is_subset(&tg.kernel_of(r)) {
            contained = false;
        }
    }
    let class = nilpotency_class(g, &whole);
    let holds = contained && class.is_some_and(|c| c <= degrees.len());
    witness.push("degrees", degrees.clone());
    if let Some(c) = class {
        witness.push("class", c);
    }
    witness.push("degree_count", degrees.len());
    let cross = hypercentral_g_length(g, &whole)?.length().is_some_and(|l| l <= degrees.len());
    Verdict::decided(holds, witness, Some(cross && contained), "nMI nilpotency bound")
}

/// `[G,N] ⊆ Φ(G) ∩ N` for hypercentral `N`; evaluated for every `N`.
pub fn fratt_check(an: &GroupAnalysis, i: usize) -> Result<Verdict, TheoremError> {
    let g = an.group();
    let n = an.normal(i);
    let bracket = commutator(g, &Subgroup::whole(g), n);
    let phi = frattini(g)?;
    let target = phi.intersection(g, n);
    let contained = bracket.is_subset(&target);
    let length = hypercentral_g_length(g, n)?;
    let mut witness = Witness::default();
    witness.push("commutator", &bracket);
    witness.push("frattini", &phi);
    witness.push("contained", contained);
    witness.push("hypercentral", length.length().is_some());
    let from_table = clifford::commutator_from_table(an.table(), an.g_table(i)?);
    if from_table != bracket {
        return Err(TheoremError::PathDisagreement("[G,N]".into()));
    }
    if length.length().is_none() {
        return Ok(Verdict::not_applicable(witness));
    }
    Verdict::decided(contained, witness, None, "Frattini containment")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle::hypercenter;

    fn analysis(g: &crate::group::FiniteGroup) -> GroupAnalysis {
        GroupAnalysis::new(g).unwrap()
    }

    fn q16() -> (GroupAnalysis, usize) {
        let an = analysis(&corpus::dicyclic(4));
        let q8 = Subgroup::generated(an.group(), [2, 8]);
        let i = an.index_of(&q8).unwrap();
        (an, i)
    }

    #[test]
    fn p_elements_match_orders() {
        for g in corpus::standard() {
            let an = analysis(&g);
            for p in prime_divisors(g.order()) {
                assert_eq!(p_elements_from_table(an.table(), p).unwrap(), p_elements_by_order(an.table(), p), "{}", g.name());
            }
        }
        let s3 = analysis(&corpus::symmetric(3));
        let three = p_elements_from_table(s3.table(), 3).unwrap();
        assert_eq!(three.iter().map(|&c| s3.table().class_size(c)).sum::<usize>(), 3);
    }

    #[test]
    fn nilpotency_and_solvability() {
        let s4 = analysis(&corpus::symmetric(4));
        let a4 = s4.normals().iter().position(|n| n.order() == 12).unwrap();
        assert!(!nilpotent_from_table(&s4, a4).unwrap().holds());
        assert!(solvable_from_table(&s4, a4).unwrap().holds());
        let (an, i) = q16();
        assert!(nilpotent_from_table(&an, i).unwrap().holds());
        let sl = analysis(&corpus::sl2_3());
        let whole = sl.whole_index();
        assert!(!nilpotent_from_table(&sl, whole).unwrap().holds());
        assert!(solvable_from_table(&sl, whole).unwrap().holds());
    }

    #[test]
    fn table_normal_subgroups_match() {
        for g in corpus::standard() {
            let an = analysis(&g);
            let from_table = normal_subgroups_from_table(an.table());
            assert_eq!(from_table.len(), an.normals().len(), "{}", g.name());
        }
    }

    #[test]
    fn determinant_of_q8_two_dimensional_rep() {
        // a ↦ diag(i, -i), b ↦ [[0, -1], [1, 0]] over Z[i], entries as E(4) powers.
        let g = corpus::dicyclic(2);
        let tg = character_table(&g);
        type M = [[Cyclotomic; 2]; 2];
        let z = Cyclotomic::zero;
        let i4 = |k| Cyclotomic::root_of_unity(4, k);
        let mul = |x: &M, y: &M| -> M {
            let mut out: M = [[z(), z()], [z(), z()]];
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = &(&x[r][0] * &y[0][c]) + &(&x[r][1] * &y[1][c]);
                }
            }
            out
        };
        let a: M = [[i4(1), z()], [z(), i4(3)]];
        let b: M = [[z(), Cyclotomic::from_int(-1)], [Cyclotomic::one(), z()]];
        let one: M = [[Cyclotomic::one(), z()], [z(), Cyclotomic::one()]];
        let mut rep: Vec<Option<M>> = vec![None; g.order()];
        rep[0] = Some(one);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for (gen, m) in [(1, &a), (4, &b)] {
                let y = g.mul(x, gen);
                if rep[y].is_none() {
                    rep[y] = Some(mul(rep[x].as_ref().unwrap(), m));
                    frontier.push(y);
                }
            }
        }
        let r = (0..tg.len()).find(|&r| tg.degree(r) == 2).unwrap();
        for x in g.elements() {
            let m = rep[x].as_ref().unwrap();
            assert_eq!(&(&m[0][0] + &m[1][1]), tg.value_at(r, x));
            assert_eq!(&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]), Cyclotomic::one());
        }
        assert_eq!(determinant_order(&tg, r).unwrap(), 1);
        assert_eq!(determinant_order(&tg, 0).unwrap(), 1);
    }

    fn character_table(g: &crate::group::FiniteGroup) -> CharacterTable {
        crate::chartab::character_table(g).unwrap()
    }

    #[test]
    fn s_of_n_everywhere() {
        for g in corpus::standard() {
            let an = analysis(&g);
            for i in 0..an.normals().len() {
                for p in prime_divisors(g.order().max(2)) {
                    s_of_n(&an, i, p).unwrap();
                }
            }
        }
    }

    #[test]
    fn thompson_on_dicyclic_120() {
        let an = analysis(&corpus::dicyclic(30));
        let i = an
            .normals()
            .iter()
            .position(|n| n.order() == 20 && crate::subgroup::commutator(an.group(), n, n).is_trivial())
            .unwrap();
        let v = thompson_check(&an, i, 2).unwrap();
        assert!(v.holds());
        match v.witness.get("complement") {
            Some(Evidence::Subgroup(s)) => assert_eq!(s.order, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn thompson_sweep() {
        for g in corpus::standard() {
            let an = analysis(&g);
            for i in 0..an.normals().len() {
                for p in prime_divisors(an.normal(i).order()) {
                    assert_ne!(thompson_check(&an, i, p).unwrap().status, Status::Fails, "{}", g.name());
                }
            }
        }
    }

    #[test]
    fn nmi_detection() {
        let (an, i) = q16();
        assert!(!is_nmi_group(&an).unwrap().holds());
        // The faithful degree-2 row of Q8 sits over the sign character of
        // the centre, which is linear, invariant and fully ramified.
        let q8 = analysis(&corpus::dicyclic(2));
        let v = is_nmi_group(&q8).unwrap();
        assert!(v.holds());
        let chi = (0..q8.table().len()).find(|&r| q8.table().degree(r) == 2).unwrap();
        assert_eq!(find_linear_pair(&q8, chi).unwrap().unwrap().subgroup.order, 2);
        let v = is_nmi_group(&analysis(&corpus::abelian2(2, 2))).unwrap();
        assert!(v.holds());
        assert!(is_g_invariant_nmi_subgroup(&an, i).unwrap().holds());
    }

    #[test]
    fn abelian_pairs_use_the_whole_group() {
        let an = analysis(&corpus::cyclic(4));
        for chi in 0..4 {
            let p = find_linear_pair(&an, chi).unwrap().unwrap();
            assert_eq!(p.subgroup.order, 4);
        }
    }

    #[test]
    fn taketa_on_q16() {
        let (an, i) = q16();
        let v = taketa_check(&an, i).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness.count("length"), Some(3));
        assert_eq!(v.witness.counts("lcd"), Some(&[1, 2, 4][..]));
        assert_eq!(v.witness.counts("mcd"), Some(&[1, 2][..]));
    }

    #[test]
    fn fratt_on_d18() {
        let an = analysis(&corpus::dihedral(9));
        let phi = frattini(an.group()).unwrap();
        let i = an.index_of(&phi).unwrap();
        let v = fratt_check(&an, i).unwrap();
        assert_eq!(v.status, Status::NotApplicable);
        assert_eq!(v.witness.get("contained"), Some(&Evidence::Flag(true)));
        let z = an.index_of(&crate::subgroup::centre(an.group())).unwrap();
        assert!(fratt_check(&an, z).unwrap().holds());
    }

    #[test]
    fn sweeps_over_the_corpus() {
        for g in corpus::standard() {
            let an = analysis(&g);
            let nmi = is_nmi_group(&an).unwrap();
            if g.is_abelian() {
                assert!(nmi.holds());
            }
            assert_ne!(nmi_structure_check(&an).unwrap().status, Status::Fails);
            for i in 0..an.normals().len() {
                assert_eq!(
                    nilpotent_from_table(&an, i).unwrap().cross_check,
                    Some(nilpotency_class(&g, an.normal(i)).is_some())
                );
                solvable_from_table(&an, i).unwrap();
                assert_ne!(taketa_check(&an, i).unwrap().status, Status::Fails, "{}", g.name());
                assert_ne!(fratt_check(&an, i).unwrap().status, Status::Fails, "{}", g.name());
                if nmi.holds() {
                    assert!(is_g_invariant_nmi_subgroup(&an, i).unwrap().holds());
                }
            }
            assert!(hypercenter(&g).is_normal());
        }
    }
}
