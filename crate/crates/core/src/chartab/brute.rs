//! Slow independent route to Irr(G) for small groups: induce linear
//! characters of cyclic subgroups, multiply, and peel off constituents.

use super::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::group::{ClassPartition, FiniteGroup};

fn inner(g: &FiniteGroup, classes: &ClassPartition, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for c in 0..classes.count() {
        acc += &(&a[c] * &b[c].conj()).scale_int(classes.size(c) as i64);
    }
    acc.divide_int(g.order() as i64).unwrap()
}

fn induced_from_cyclic(g: &FiniteGroup, classes: &ClassPartition, x: usize, j: i64) -> Vec<Cyclotomic> {
    let m = g.elem_order(x);
    let mut power_of = vec![None; g.order()];
    let mut y = 0;
    for k in 0..m {
        power_of[y] = Some(k as i64);
        y = g.mul(y, x);
    }
    (0..classes.count())
        .map(|c| {
            let rep = classes.rep(c);
            let mut acc = Cyclotomic::zero();
            for h in g.elements() {
                if let Some(k) = power_of[g.conj(rep, h)] {
                    acc += &Cyclotomic::root_of_unity(m as u32, j * k);
                }
            }
            acc.divide_int(m as i64).unwrap()
        })
        .collect()
}

/// Irreducible characters as value rows over `classes`, sorted.
pub(crate) fn irreducible_rows(g: &FiniteGroup, classes: &ClassPartition) -> Vec<Vec<Cyclotomic>> {
    let k = classes.count();
    let squares: Vec<usize> = (0..k).map(|c| classes.class_of(g.mul(classes.rep(c), classes.rep(c))).unwrap()).collect();
    let mut irr: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut pending: Vec<Vec<Cyclotomic>> = vec![vec![Cyclotomic::one(); k]];
    for x in g.elements() {
        for j in 0..g.elem_order(x) as i64 {
            pending.push(induced_from_cyclic(g, classes, x, j));
        }
    }
    let mut round = 0;
    while irr.len() < k && round < 8 {
        round += 1;
        let mut leftovers = Vec::new();
        for psi in pending.drain(..) {
            let mut rest = psi;
            for chi in &irr {
                let m = inner(g, classes, &rest, chi);
                if !m.is_zero() {
                    rest = rest.iter().zip(chi).map(|(r, c)| r - &(&m * c)).collect();
                }
            }
            if rest.iter().all(Cyclotomic::is_zero) {
                continue;
            }
            if inner(g, classes, &rest, &rest) == Cyclotomic::one() {
                let rest = if rest[0].to_i64().unwrap() < 0 { rest.iter().map(|v| -v).collect() } else { rest };
                irr.push(rest);
            } else {
                leftovers.push(rest);
            }
        }
        leftovers.sort();
        leftovers.dedup();
        // A norm-one virtual character is ± an irreducible one.
        for a in &leftovers {
            for b in &leftovers {
                let diff: Vec<Cyclotomic> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if a != b && inner(g, classes, &diff, &diff) == Cyclotomic::one() {
                    pending.push(diff);
                }
            }
        }
        pending.extend(leftovers);
        let snapshot = irr.clone();
        for a in &snapshot {
            for b in &snapshot {
                pending.push(a.iter().zip(b).map(|(x, y)| x * y).collect());
            }
            let sq: Vec<Cyclotomic> = (0..k).map(|c| &a[c] * &a[c]).collect();
            let sym: Vec<Cyclotomic> = (0..k).map(|c| (&sq[c] + &a[squares[c]]).divide_int(2).unwrap()).collect();
            let alt: Vec<Cyclotomic> = (0..k).map(|c| (&sq[c] - &a[squares[c]]).divide_int(2).unwrap()).collect();
            pending.push(sym);
            pending.push(alt);
        }
    }
    assert_eq!(irr.len(), k, "oracle did not find every irreducible of {}", g.name());
    irr.sort();
    irr
}

/// The regular character decomposes as `Σ χ(1) χ` over the table's rows.
pub(crate) fn regular_character_check(t: &CharacterTable) {
    let g = t.group();
    let k = t.len();
    let regular: Vec<Cyclotomic> =
        (0..k).map(|c| Cyclotomic::from_int(if c == 0 { g.order() as i64 } else { 0 })).collect();
    let mut rest = regular;
    for r in 0..k {
        let m = inner(g, t.classes(), &rest, t.row(r));
        assert_eq!(m, Cyclotomic::from_int(t.degree(r) as i64));
        rest = rest.iter().zip(t.row(r)).map(|(a, b)| a - &(&m * b)).collect();
    }
    assert!(rest.iter().all(Cyclotomic::is_zero));
}
