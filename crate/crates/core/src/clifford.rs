//! G-character tables of normal subgroups and Clifford data.
//!
//! The table path here reads only the character table of `G`. The oracle
//! path computes Irr(N) separately and works out orbits, inertia indices
//! and ramification numbers from their definitions.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::chartab::dixon::{inv_mod, is_prime, pow_mod, primitive_root};
use crate::chartab::{character_table, CharacterTable};
use crate::cyclotomic::{CycloSum, Cyclotomic};
use crate::error::{CliffordError, GroupError};
use crate::group::{ClassPartition, Elem, FiniteGroup};
use crate::subgroup::Subgroup;

/// Orbits of `N` under conjugation by `G`.
pub fn g_classes(g: &FiniteGroup, n: &Subgroup) -> Result<ClassPartition, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    Ok(ClassPartition::orbits(g, n.elements().iter().copied()))
}

/// Ambient class indices whose classes make up `N`, ascending.
pub fn classes_in(tg: &CharacterTable, n: &Subgroup) -> Vec<usize> {
    (0..tg.classes().count()).filter(|&c| n.contains(tg.classes().rep(c))).collect()
}

/// Rows of `tg` grouped by sharing a constituent on `N`; cells are sorted
/// and ordered by their smallest row.
pub fn equivalence_classes_wrt(tg: &CharacterTable, n: &Subgroup) -> Result<Vec<Vec<usize>>, CliffordError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal.into());
    }
    let inside = classes_in(tg, n);
    let k = tg.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for r in 0..k {
        for s in r + 1..k {
            if find(&mut parent, r) == find(&mut parent, s) {
                continue;
            }
            if !tg.scaled_restricted_inner_product(r, s, &inside).is_zero() {
                let (a, b) = (find(&mut parent, r), find(&mut parent, s));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of: HashMap<usize, usize> = HashMap::new();
    for r in 0..k {
        let root = find(&mut parent, r);
        let idx = *cell_of.entry(root).or_insert_with(|| {
            cells.push(Vec::new());
            cells.len() - 1
        });
        cells[idx].push(r);
    }
    if cells.len() != inside.len() {
        return Err(CliffordError::CellCountMismatch { cells: cells.len(), classes: inside.len() });
    }
    Ok(cells)
}

/// One row per cell: smallest degree, then smallest index; the trivial
/// character's cell first, the rest by representative degree and index.
pub fn choose_delta(tg: &CharacterTable, cells: &[Vec<usize>]) -> Vec<usize> {
    let mut delta: Vec<usize> =
        cells.iter().map(|cell| *cell.iter().min_by_key(|&&r| (tg.degree(r), r)).unwrap()).collect();
    delta.sort_by_key(|&r| (r != 0, tg.degree(r), r));
    delta
}

/// A seeded random representative per cell, keeping the trivial character.
pub fn choose_delta_random(tg: &CharacterTable, cells: &[Vec<usize>], seed: u64) -> Vec<usize> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut delta: Vec<usize> = cells
        .iter()
        .map(|cell| if cell.contains(&0) { 0 } else { *cell.choose(&mut rng).unwrap() })
        .collect();
    delta.sort_by_key(|&r| (r != 0, tg.degree(r), r));
    delta
}

/// `X` with `D` and `Λ = X D X̄ᵗ` for one choice of representatives `Δ`.
#[derive(Clone, Debug)]
pub struct GCharTable {
    pub normal: Subgroup,
    /// G-classes of N, numbered as by [`g_classes`].
    pub g_classes: ClassPartition,
    /// Ambient class of each G-class of N.
    pub ambient_class: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
    pub delta: Vec<usize>,
    pub x: Vec<Vec<Cyclotomic>>,
    pub d: Vec<u64>,
    pub lambda: Vec<Vec<Cyclotomic>>,
    pub lambda_diag: Vec<u64>,
    /// `χ_i(1)` for each Δ row.
    pub chi_degrees: Vec<u64>,
}

impl GCharTable {
    pub fn k(&self) -> usize {
        self.delta.len()
    }

    pub fn n_order(&self) -> u64 {
        self.normal.order() as u64
    }
}

pub fn build_g_char_table(tg: &CharacterTable, n: &Subgroup) -> Result<GCharTable, CliffordError> {
    let cells = equivalence_classes_wrt(tg, n)?;
    let delta = choose_delta(tg, &cells);
    build_g_char_table_with_delta(tg, n, cells, delta)
}

pub fn build_g_char_table_with_delta(
    tg: &CharacterTable,
    n: &Subgroup,
    cells: Vec<Vec<usize>>,
    delta: Vec<usize>,
) -> Result<GCharTable, CliffordError> {
    let g = tg.group();
    let gcl = g_classes(g, n)?;
    let ambient_class: Vec<usize> =
        (0..gcl.count()).map(|j| tg.classes().class_of(gcl.rep(j)).unwrap()).collect();
    let k = delta.len();
    let x: Vec<Vec<Cyclotomic>> =
        delta.iter().map(|&r| ambient_class.iter().map(|&c| tg.value(r, c).clone()).collect()).collect();
    let d: Vec<u64> = (0..gcl.count()).map(|j| gcl.size(j) as u64).collect();
    let mut lambda = vec![vec![Cyclotomic::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            lambda[i][j] = tg.weighted_pairing(
                (0..k).map(|l| (d[l] as i64, tg.root_sum(delta[i], ambient_class[l]), tg.root_sum(delta[j], ambient_class[l]))),
            );
            if i != j && !lambda[i][j].is_zero() {
                return Err(CliffordError::LambdaNotDiagonal(i, j));
            }
        }
    }
    let lambda_diag = (0..k)
        .map(|i| {
            lambda[i][i]
                .to_i64()
                .filter(|&v| v > 0)
                .map(|v| v as u64)
                .ok_or(CliffordError::LambdaNotPositiveInteger(i))
        })
        .collect::<Result<Vec<u64>, _>>()?;
    if lambda_diag[0] != n.order() as u64 {
        return Err(CliffordError::LambdaNotPositiveInteger(0));
    }
    if !x_is_nonsingular(tg, &delta, &ambient_class) {
        return Err(CliffordError::SingularX);
    }
    let chi_degrees = delta.iter().map(|&r| tg.degree(r)).collect();
    Ok(GCharTable { normal: n.clone(), g_classes: gcl, ambient_class, cells, delta, x, d, lambda, lambda_diag, chi_degrees })
}

fn det_mod(mut m: Vec<Vec<u64>>, q: u64) -> u64 {
    let k = m.len();
    let mut det = 1u64;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            det = (q - det) % q;
        }
        det = det * m[c][c] % q;
        let inv = inv_mod(m[c][c], q);
        for r in c + 1..k {
            if m[r][c] != 0 {
                let f = m[r][c] * inv % q;
                for j in c..k {
                    m[r][j] = (m[r][j] + q - f * m[c][j] % q) % q;
                }
            }
        }
    }
    det
}

/// `det X ≠ 0`, shown by mapping `Z[ζ_e] → F_q` for primes `q ≡ 1 (mod e)`:
/// a nonzero image proves a nonzero determinant.
fn x_is_nonsingular(tg: &CharacterTable, delta: &[usize], ambient_class: &[usize]) -> bool {
    let e = tg.exponent() as u64;
    let mut q = e + 1;
    let mut tried = 0;
    while tried < 6 {
        if q > 2 && is_prime(q) {
            tried += 1;
            let root = pow_mod(primitive_root(q), (q - 1) / e, q);
            let m: Vec<Vec<u64>> = delta
                .iter()
                .map(|&r| {
                    ambient_class
                        .iter()
                        .map(|&c| {
                            tg.root_sum(r, c).iter().fold(0u64, |acc, &(t, coef)| {
                                let coef = coef.rem_euclid(q as i64) as u64;
                                (acc + coef * pow_mod(root, t as u64, q)) % q
                            })
                        })
                        .collect()
                })
                .collect();
            if det_mod(m, q) != 0 {
                return true;
            }
        }
        q += e;
    }
    exact_det_nonzero(tg, delta, ambient_class)
}

fn exact_det_nonzero(tg: &CharacterTable, delta: &[usize], ambient_class: &[usize]) -> bool {
    let mut m: Vec<Vec<Cyclotomic>> =
        delta.iter().map(|&r| ambient_class.iter().map(|&c| tg.value(r, c).clone()).collect()).collect();
    let k = m.len();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else { return false };
        m.swap(p, c);
        let inv = m[c][c].inverse().unwrap();
        for r in c + 1..k {
            if !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for j in c..k {
                    let sub = &f * &m[c][j];
                    m[r][j] = &m[r][j] - &sub;
                }
            }
        }
    }
    true
}

/// `Σ_j |n_j^G| |χ(n_j)|²` for any ambient row χ: the Λ diagonal entry a
/// Δ containing χ would have.
pub fn lambda_entry(tg: &CharacterTable, gt: &GCharTable, row: usize) -> u64 {
    let v = tg.weighted_pairing(
        gt.ambient_class.iter().zip(&gt.d).map(|(&c, &d)| (d as i64, tg.root_sum(row, c), tg.root_sum(row, c))),
    );
    v.to_i64().expect("norms are rational integers") as u64
}

/// Index of the cell containing `row`.
pub fn cell_of(gt: &GCharTable, row: usize) -> usize {
    gt.cells.iter().position(|c| c.contains(&row)).expect("cells partition the rows")
}

/// `λ_i / |N|`, which equals `e_i² t_i`.
pub fn relation_a(gt: &GCharTable, i: usize) -> Result<u64, CliffordError> {
    let n = gt.n_order();
    if gt.lambda_diag[i] % n != 0 {
        return Err(CliffordError::NonIntegral { relation: 'A', row: i });
    }
    Ok(gt.lambda_diag[i] / n)
}

/// `|N| χ_i(1)² / λ_i`, which equals `t_i θ_i(1)²` and `θ̂_i(1) θ_i(1)`.
pub fn relation_b(gt: &GCharTable, i: usize) -> Result<u64, CliffordError> {
    let top = gt.n_order() * gt.chi_degrees[i] * gt.chi_degrees[i];
    if top % gt.lambda_diag[i] != 0 {
        return Err(CliffordError::NonIntegral { relation: 'B', row: i });
    }
    Ok(top / gt.lambda_diag[i])
}

/// Δ positions whose constituent lies in Lin_G(N): `λ_i = |N| χ_i(1)²`.
pub fn lin_g_from_table(gt: &GCharTable) -> Vec<usize> {
    (0..gt.k()).filter(|&i| gt.lambda_diag[i] == gt.n_order() * gt.chi_degrees[i] * gt.chi_degrees[i]).collect()
}

/// Leader degrees `θ(1) θ̂(1)` read from relation B.
pub fn lcd_from_table(gt: &GCharTable) -> Result<BTreeSet<u64>, CliffordError> {
    (0..gt.k()).map(|i| relation_b(gt, i)).collect()
}

/// Relation B over all Δ rows, sorted. Unlike the λ diagonal, which carries
/// the ramification `e_i` of the chosen representative, this depends only on
/// the cells.
pub fn cell_profile(gt: &GCharTable) -> Result<Vec<u64>, CliffordError> {
    let mut v = (0..gt.k()).map(|i| relation_b(gt, i)).collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    Ok(v)
}

/// `[N, G]` as the intersection of `ker χ ∩ N` over Δ rows above Lin_G(N).
pub fn commutator_from_table(tg: &CharacterTable, gt: &GCharTable) -> Subgroup {
    let mut keep: Vec<usize> = gt.ambient_class.clone();
    for i in lin_g_from_table(gt) {
        let r = gt.delta[i];
        keep.retain(|&c| tg.value(r, c) == tg.value(r, 0));
    }
    Subgroup::from_classes(tg.group(), tg.classes(), keep).expect("intersections of kernels are subgroups")
}

/// The character table of `N` as a group, with the action of `G` on Irr(N).
#[derive(Clone, Debug)]
pub struct NormalTable {
    pub table: CharacterTable,
    /// Local index → ambient element.
    pub embedding: Vec<Elem>,
    local: HashMap<Elem, usize>,
    /// Orbits of G on Irr(N), each sorted, ordered by smallest row.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// `|I_G(θ)|` for every row θ of Irr(N).
    pub inertia_order: Vec<usize>,
}

impl NormalTable {
    pub fn local(&self, x: Elem) -> Option<usize> {
        self.local.get(&x).copied()
    }

    /// Class of Irr(N)'s table containing the ambient element `x`.
    pub fn class_of(&self, x: Elem) -> usize {
        self.table.classes().class_of(self.local[&x]).unwrap()
    }
}

pub fn normal_table(g: &FiniteGroup, n: &Subgroup) -> Result<NormalTable, CliffordError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal.into());
    }
    let (ng, embedding) = n.as_group(g, format!("{}|N{}", g.name(), n.order()));
    let table = character_table(&ng)?;
    let local: HashMap<Elem, usize> = embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let kn = table.len();
    let classes = table.classes();
    let row_index: HashMap<&[Cyclotomic], usize> = (0..kn).map(|r| (table.row(r), r)).collect();
    // Permutations of N's classes induced by conjugation, with multiplicity.
    let mut perms: HashMap<Vec<usize>, usize> = HashMap::new();
    for h in g.elements() {
        let perm: Vec<usize> = (0..kn)
            .map(|c| {
                let y = g.mul(g.mul(h, embedding[classes.rep(c)]), g.inv(h));
                classes.class_of(local[&y]).unwrap()
            })
            .collect();
        *perms.entry(perm).or_insert(0) += 1;
    }
    let mut perms: Vec<(Vec<usize>, usize)> = perms.into_iter().collect();
    perms.sort();
    let mut inertia_order = vec![0usize; kn];
    let mut images: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); kn];
    for r in 0..kn {
        for (perm, count) in &perms {
            let conj: Vec<Cyclotomic> = perm.iter().map(|&c| table.value(r, c).clone()).collect();
            let s = *row_index.get(conj.as_slice()).ok_or(CliffordError::ActionMismatch)?;
            images[r].insert(s);
            if s == r {
                inertia_order[r] += count;
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; kn];
    let mut orbits = Vec::new();
    for r in 0..kn {
        if orbit_of[r] == usize::MAX {
            let orbit: Vec<usize> = images[r].iter().copied().collect();
            for &s in &orbit {
                orbit_of[s] = orbits.len();
            }
            orbits.push(orbit);
        }
    }
    for r in 0..kn {
        if g.order() / inertia_order[r] != orbits[orbit_of[r]].len() {
            return Err(CliffordError::ActionMismatch);
        }
    }
    Ok(NormalTable { table, embedding, local, orbits, orbit_of, inertia_order })
}

/// Clifford data of one Δ row, computed from Irr(N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordRow {
    pub t: u64,
    pub e: u64,
    pub theta_row: usize,
    pub theta_deg: u64,
    pub orbit: Vec<usize>,
    pub min_char_deg: u64,
    pub leader_deg: u64,
}

/// `|N| [χ_N, θ]` for an ambient row χ and a row θ of Irr(N).
pub fn scaled_restriction_pairing(tg: &CharacterTable, nt: &NormalTable, chi: usize, theta: usize) -> Cyclotomic {
    let tn = &nt.table;
    let mut acc = CycloSum::new(tg.exponent());
    for c in 0..tn.len() {
        let x = nt.embedding[tn.classes().rep(c)];
        acc.add_product(tn.class_size(c) as i64, tg.value_at(chi, x), &tn.value(theta, c).conj());
    }
    acc.finish()
}

pub fn clifford_oracle(tg: &CharacterTable, gt: &GCharTable, nt: &NormalTable) -> Result<Vec<CliffordRow>, CliffordError> {
    let n = gt.n_order() as i64;
    if nt.orbits.len() != gt.k() {
        return Err(CliffordError::CellCountMismatch { cells: gt.k(), classes: nt.orbits.len() });
    }
    let tn = &nt.table;
    let mut rows = Vec::with_capacity(gt.k());
    for &chi in &gt.delta {
        let mults: Vec<i64> = (0..tn.len())
            .map(|th| {
                let v = scaled_restriction_pairing(tg, nt, chi, th);
                v.to_i64().filter(|m| m % n == 0).map(|m| m / n).ok_or(CliffordError::ActionMismatch)
            })
            .collect::<Result<_, _>>()?;
        let theta = mults.iter().position(|&m| m != 0).ok_or(CliffordError::ActionMismatch)?;
        let e = mults[theta];
        let orbit = nt.orbits[nt.orbit_of[theta]].clone();
        for (th, &m) in mults.iter().enumerate() {
            let expected = if orbit.contains(&th) { e } else { 0 };
            if m != expected {
                return Err(CliffordError::PathDisagreement(format!("restriction of row {chi} is not e times an orbit sum")));
            }
        }
        let t = orbit.len() as u64;
        let theta_deg = tn.degree(theta);
        rows.push(CliffordRow {
            t,
            e: e as u64,
            theta_row: theta,
            theta_deg,
            orbit,
            min_char_deg: t * theta_deg,
            leader_deg: t * theta_deg * theta_deg,
        });
    }
    Ok(rows)
}

/// Checks every relation tying the table path to the oracle path.
pub fn check_against_oracle(gt: &GCharTable, rows: &[CliffordRow]) -> Result<(), CliffordError> {
    let n = gt.n_order();
    for (i, row) in rows.iter().enumerate() {
        let disagree = |what: &str| Err(CliffordError::PathDisagreement(format!("{what} for row {i}")));
        if gt.chi_degrees[i] != row.t * row.e * row.theta_deg {
            return disagree("χ(1) = t e θ(1)");
        }
        if gt.lambda_diag[i] != n * row.t * row.e * row.e {
            return disagree("λ = |N| t e²");
        }
        if relation_a(gt, i)? != row.e * row.e * row.t {
            return disagree("relation A");
        }
        if relation_b(gt, i)? != row.t * row.theta_deg * row.theta_deg {
            return disagree("relation B");
        }
        if relation_b(gt, i)? != row.leader_deg {
            return disagree("leader degree");
        }
    }
    let lin_oracle: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].t == 1 && rows[i].theta_deg == 1).collect();
    if lin_oracle != lin_g_from_table(gt) {
        return Err(CliffordError::PathDisagreement("Lin_G(N)".into()));
    }
    let lcd_oracle: BTreeSet<u64> = rows.iter().map(|r| r.leader_deg).collect();
    if lcd_oracle != lcd_from_table(gt)? {
        return Err(CliffordError::PathDisagreement("Lcd_G(N)".into()));
    }
    Ok(())
}

pub fn mcd(rows: &[CliffordRow]) -> BTreeSet<u64> {
    rows.iter().map(|r| r.min_char_deg).collect()
}

pub fn lcd(rows: &[CliffordRow]) -> BTreeSet<u64> {
    rows.iter().map(|r| r.leader_deg).collect()
}
