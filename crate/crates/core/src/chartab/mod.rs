//! Irreducible character tables: construction, verification, quotients
//! and kernels.

pub(crate) mod dixon;
#[cfg(test)]
pub(crate) mod brute;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::Cyclotomic;
use crate::error::{GroupError, TableError};
use crate::group::{conjugacy_classes, power_class_map, ClassPartition, Elem, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::oracle::prime_divisors;
use crate::subgroup::{quotient, Subgroup};

pub use dixon::{class_constants, dixon_prime, ClassAlgebra};

/// A value written as `Σ c ζ_e^t` over the table's exponent `e`.
pub type RootSum = Vec<(u32, i64)>;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ClassPartition,
    values: Vec<Vec<Cyclotomic>>,
    sums: Vec<Vec<RootSum>>,
    degrees: Vec<u64>,
    exponent: u32,
    inverse_class: Vec<usize>,
    power_maps: BTreeMap<u64, Vec<usize>>,
}

impl CharacterTable {
    /// Assemble and verify a table from exact values; rows are put in
    /// canonical order.
    pub fn from_values(
        group: FiniteGroup,
        classes: ClassPartition,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self, TableError> {
        let e = group.exponent() as u32;
        let sums = values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let vec = v.exponent_vector(e).ok_or_else(|| {
                            TableError::VerificationFailed(format!("value {v} is not an integral element of Q(E({e}))"))
                        })?;
                        Ok(vec.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(t, c)| (t as u32, c)).collect())
                    })
                    .collect::<Result<Vec<RootSum>, TableError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::assemble(group, classes, values, sums)
    }

    fn assemble(
        group: FiniteGroup,
        classes: ClassPartition,
        values: Vec<Vec<Cyclotomic>>,
        sums: Vec<Vec<RootSum>>,
    ) -> Result<Self, TableError> {
        let k = classes.count();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(TableError::VerificationFailed(format!("table is not {k} x {k}")));
        }
        let degrees = values
            .iter()
            .map(|row| {
                row[0]
                    .to_i64()
                    .filter(|&d| d > 0)
                    .map(|d| d as u64)
                    .ok_or_else(|| TableError::VerificationFailed("degree is not a positive integer".into()))
            })
            .collect::<Result<Vec<u64>, _>>()?;
        let order = canonical_row_order(&values, &degrees);
        let values: Vec<Vec<Cyclotomic>> = order.iter().map(|&r| values[r].clone()).collect();
        let sums: Vec<Vec<RootSum>> = order.iter().map(|&r| sums[r].clone()).collect();
        let degrees: Vec<u64> = order.iter().map(|&r| degrees[r]).collect();
        let inverse_class = power_class_map(&group, &classes, -1);
        let mut power_maps = BTreeMap::new();
        for p in prime_divisors(group.order()) {
            power_maps.insert(p as u64, power_class_map(&group, &classes, p as i64));
        }
        let table = CharacterTable {
            exponent: group.exponent() as u32,
            group,
            classes,
            values,
            sums,
            degrees,
            inverse_class,
            power_maps,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    /// Number of rows, which equals the number of classes.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.values[row][class]
    }

    pub fn row(&self, row: usize) -> &[Cyclotomic] {
        &self.values[row]
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    /// `χ_row(x)` for an element `x`.
    pub fn value_at(&self, row: usize, x: Elem) -> &Cyclotomic {
        &self.values[row][self.classes.class_of(x).expect("classes cover the group")]
    }

    pub fn root_sum(&self, row: usize, class: usize) -> &RootSum {
        &self.sums[row][class]
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.degrees[row]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes.size(class)
    }

    pub fn centralizer_order(&self, class: usize) -> usize {
        self.group.order() / self.classes.size(class)
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// Class of `rep(c)^s` for every class `c`.
    pub fn power_map(&self, s: i64) -> Vec<usize> {
        if s >= 0 {
            if let Some(m) = self.power_maps.get(&(s as u64)) {
                return m.clone();
            }
        }
        power_class_map(&self.group, &self.classes, s)
    }

    /// Rows that are constant on every class in `classes`, i.e. whose
    /// kernel contains those classes.
    pub fn rows_containing_in_kernel(&self, classes: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&r| classes.iter().all(|&c| self.values[r][c] == self.values[r][0]))
            .collect()
    }

    /// Classes in the kernel of `row`.
    pub fn kernel_classes(&self, row: usize) -> Vec<usize> {
        (0..self.classes.count()).filter(|&c| self.values[row][c] == self.values[row][0]).collect()
    }

    /// `ker χ = {x : χ(x) = χ(1)}`, a normal subgroup.
    pub fn kernel_of(&self, row: usize) -> Subgroup {
        Subgroup::from_classes(&self.group, &self.classes, self.kernel_classes(row))
            .expect("kernels are subgroups")
    }

    /// `Σ_c w_c f(c) conj(g(c))` for root-sum valued class functions.
    pub fn weighted_pairing<'a>(
        &self,
        terms: impl IntoIterator<Item = (i64, &'a RootSum, &'a RootSum)>,
    ) -> Cyclotomic {
        let e = self.exponent as usize;
        let mut acc = vec![0i128; e];
        for (w, a, b) in terms {
            for &(t, x) in a {
                for &(u, y) in b {
                    let idx = (t as usize + e - u as usize) % e;
                    acc[idx] += w as i128 * x as i128 * y as i128;
                }
            }
        }
        Cyclotomic::from_exponents(self.exponent, acc.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    /// `|G| [χ_r, χ_s]` over the whole group.
    pub fn scaled_inner_product(&self, r: usize, s: usize) -> Cyclotomic {
        self.weighted_pairing(
            (0..self.len()).map(|c| (self.classes.size(c) as i64, &self.sums[r][c], &self.sums[s][c])),
        )
    }

    /// `|N| [χ_r|N, χ_s|N]` where `classes` are the classes making up `N`.
    pub fn scaled_restricted_inner_product(&self, r: usize, s: usize, classes: &[usize]) -> Cyclotomic {
        self.weighted_pairing(
            classes.iter().map(|&c| (self.classes.size(c) as i64, &self.sums[r][c], &self.sums[s][c])),
        )
    }

    /// Exact row and column orthogonality plus the degree identities.
    pub fn verify(&self) -> Result<(), TableError> {
        let k = self.len();
        let n = self.group.order() as i64;
        let fail = |msg: String| Err(TableError::VerificationFailed(msg));
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n as u64 {
            return fail("sum of squared degrees differs from |G|".into());
        }
        if self.values[0].iter().any(|v| *v != Cyclotomic::one()) {
            return fail("row 0 is not the trivial character".into());
        }
        for (r, &d) in self.degrees.iter().enumerate() {
            if n as u64 % d != 0 {
                return fail(format!("degree of row {r} does not divide |G|"));
            }
        }
        for r in 0..k {
            for s in r..k {
                let expected = if r == s { n } else { 0 };
                if self.scaled_inner_product(r, s) != Cyclotomic::from_int(expected) {
                    return fail(format!("rows {r} and {s} are not orthogonal"));
                }
            }
        }
        for i in 0..k {
            for j in i..k {
                let sum = self.weighted_pairing((0..k).map(|r| (1, &self.sums[r][i], &self.sums[r][j])));
                let expected = if i == j { self.centralizer_order(i) as i64 } else { 0 };
                if sum != Cyclotomic::from_int(expected) {
                    return fail(format!("columns {i} and {j} are not orthogonal"));
                }
            }
        }
        Ok(())
    }
}

/// Trivial row first, then by degree, then lexicographically by values.
fn canonical_row_order(values: &[Vec<Cyclotomic>], degrees: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    let is_trivial = |r: usize| values[r].iter().all(|v| *v == Cyclotomic::one());
    order.sort_by(|&a, &b| {
        (!is_trivial(a), degrees[a], &values[a]).cmp(&(!is_trivial(b), degrees[b], &values[b]))
    });
    order
}

/// The character table of `g`, by the Dixon method.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, TableError> {
    character_table_capped(g, DEFAULT_ORDER_CAP)
}

pub fn character_table_capped(g: &FiniteGroup, cap: usize) -> Result<CharacterTable, TableError> {
    if g.order() > cap {
        return Err(GroupError::OrderCapExceeded { cap }.into());
    }
    let classes = conjugacy_classes(g);
    let (values, sums) = dixon::irreducible_values(g, &classes)?;
    CharacterTable::assemble(g.clone(), classes, values, sums)
}

/// Table of `G/M` from the rows of `table` whose kernel contains `M`.
pub fn quotient_table(table: &CharacterTable, m: &Subgroup) -> Result<CharacterTable, TableError> {
    let g = table.group();
    let (q, proj) = quotient(g, m)?;
    let q_classes = conjugacy_classes(&q);
    let m_classes: Vec<usize> = (0..table.classes().count())
        .filter(|&c| m.contains(table.classes().rep(c)))
        .collect();
    let rows = table.rows_containing_in_kernel(&m_classes);
    let mut preimage = vec![usize::MAX; q.order()];
    for x in g.elements().rev() {
        preimage[proj[x]] = x;
    }
    let lifted: Vec<usize> = (0..q_classes.count())
        .map(|c| table.classes().class_of(preimage[q_classes.rep(c)]).unwrap())
        .collect();
    let values: Vec<Vec<Cyclotomic>> =
        rows.iter().map(|&r| lifted.iter().map(|&c| table.value(r, c).clone()).collect()).collect();
    CharacterTable::from_values(q, q_classes, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::subgroup::{centre, normal_subgroups};

    fn int_row(t: &CharacterTable, r: usize) -> Vec<i64> {
        t.row(r).iter().map(|v| v.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_tables() {
        let t = character_table(&corpus::trivial()).unwrap();
        assert_eq!(t.len(), 1);
        let c4 = character_table(&corpus::cyclic(4)).unwrap();
        assert_eq!(c4.degrees(), &[1, 1, 1, 1]);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(c4.value(r, c).pow(4), Cyclotomic::one());
            }
        }
        let s3 = character_table(&corpus::symmetric(3)).unwrap();
        assert_eq!(s3.degrees(), &[1, 1, 2]);
        // Classes: identity, 3-cycles (size 2), transpositions (size 3).
        assert_eq!(s3.classes().sizes(), vec![1, 2, 3]);
        assert_eq!(int_row(&s3, 2), vec![2, -1, 0]);
        let q16 = character_table(&corpus::dicyclic(4)).unwrap();
        assert_eq!(q16.degrees(), &[1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn tables_match_the_induction_oracle() {
        for g in corpus::standard().into_iter().filter(|g| g.order() <= 24) {
            let t = character_table(&g).unwrap();
            let oracle = brute::irreducible_rows(&g, t.classes());
            let mut ours: Vec<Vec<Cyclotomic>> = t.values().to_vec();
            ours.sort();
            assert_eq!(ours, oracle, "{}", g.name());
            brute::regular_character_check(&t);
        }
    }

    #[test]
    fn corpus_tables_verify() {
        for g in corpus::standard() {
            let t = character_table(&g).unwrap();
            assert_eq!(t.len(), t.classes().count());
            for c in 0..t.len() {
                let col0 = t.weighted_pairing((0..t.len()).map(|r| (1, t.root_sum(r, c), t.root_sum(r, c))));
                assert_eq!(col0, Cyclotomic::from_int(t.centralizer_order(c) as i64));
            }
        }
    }

    #[test]
    fn kernels() {
        let s3 = character_table(&corpus::symmetric(3)).unwrap();
        assert_eq!(s3.kernel_of(0).order(), 6);
        assert_eq!(s3.kernel_of(1).order(), 3);
        let q16 = character_table(&corpus::dicyclic(4)).unwrap();
        for r in 4..7 {
            let k = q16.kernel_of(r);
            assert!(k.is_normal());
            let faithful = k.is_trivial();
            let brute_faithful = q16
                .group()
                .elements()
                .skip(1)
                .all(|x| *q16.value_at(r, x) != Cyclotomic::from_int(2));
            assert_eq!(faithful, brute_faithful);
        }
        assert!((4..7).any(|r| q16.kernel_of(r).is_trivial()));
    }

    #[test]
    fn quotient_tables() {
        let s3 = character_table(&corpus::symmetric(3)).unwrap();
        let normals = normal_subgroups(s3.group()).unwrap();
        let t = quotient_table(&s3, &normals[0]).unwrap();
        assert_eq!(t.values(), s3.values());
        let t = quotient_table(&s3, &normals[1]).unwrap();
        assert_eq!(t.degrees(), &[1, 1]);
        let q16 = character_table(&corpus::dicyclic(4)).unwrap();
        let t = quotient_table(&q16, &centre(q16.group())).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        for g in corpus::standard() {
            let t = character_table(&g).unwrap();
            for m in normal_subgroups(&g).unwrap() {
                let m_classes: Vec<usize> =
                    (0..t.len()).filter(|&c| m.contains(t.classes().rep(c))).collect();
                let q = quotient_table(&t, &m).unwrap();
                assert_eq!(q.len(), t.rows_containing_in_kernel(&m_classes).len());
            }
        }
    }

    #[test]
    fn power_maps() {
        let q16 = character_table(&corpus::dicyclic(4)).unwrap();
        assert_eq!(q16.power_map(1), (0..7).collect::<Vec<_>>());
        assert_eq!(q16.power_map(0), vec![0; 7]);
        assert_eq!(q16.power_map(2), power_class_map(q16.group(), q16.classes(), 2));
    }
}
