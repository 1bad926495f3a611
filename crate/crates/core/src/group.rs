//! Finite groups stored as full multiplication tables, plus conjugacy classes.
//!
//! Element `0` is always the identity. Products use the left-to-right
//! convention: for permutation groups `x * y` applies `x` first.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};

use crate::error::{GroupError, Line};

/// Default upper bound on group orders accepted by enumerating operations.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Orders up to this bound get a full associativity check on construction.
const FULL_ASSOCIATIVITY_LIMIT: usize = 512;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 200_000;

/// Index of an element inside its group.
pub type Elem = usize;

/// A validated finite group given by its Cayley table.
///
/// Cloning is cheap: the tables are shared.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Arc<[u32]>,
    inv: Arc<[u32]>,
    elem_orders: Arc<[u32]>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from an `n x n` table of element indices.
    ///
    /// Row and column 0 must be the identity row and column.
    pub fn from_cayley(table: &[Vec<usize>], name: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RaggedRow { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
                }
                mul.push(v as u32);
            }
        }
        Self::from_flat(n, mul, name.into())
    }

    fn from_flat(n: usize, mul: Vec<u32>, name: String) -> Result<Self, GroupError> {
        for x in 0..n {
            if mul[x] as usize != x {
                return Err(GroupError::NoIdentity { line: Line::Column, index: x });
            }
            if mul[x * n] as usize != x {
                return Err(GroupError::NoIdentity { line: Line::Row, index: x });
            }
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let v = mul[r * n + c] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatinSquare { line: Line::Row, index: r });
                }
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = mul[r * n + c] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatinSquare { line: Line::Column, index: c });
                }
            }
        }
        check_associative(n, &mul)?;

        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            inv[x] = row.iter().position(|&v| v == 0).expect("latin square row contains identity") as u32;
        }
        let mut elem_orders = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = mul[y * n + x] as usize;
                k += 1;
            }
            elem_orders[x] = k;
        }
        Ok(FiniteGroup {
            name,
            order: n,
            mul: mul.into(),
            inv: inv.into(),
            elem_orders: elem_orders.into(),
        })
    }

    /// Enumerates the closure of a set of permutations by breadth-first products.
    pub fn from_permutations(
        gens: &[Permutation],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
        let gens: Vec<Permutation> = gens.iter().map(|g| g.extended(degree)).collect();
        let identity = Permutation::identity(degree);

        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(identity, 0);
        // parent[j] = (i, s) with elements[j] = elements[i] * gens[s]
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let prod = elements[i].then(g);
                let j = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= cap {
                            return Err(GroupError::OrderCapExceeded { cap });
                        }
                        index.insert(prod.clone(), j as u32);
                        elements.push(prod);
                        parent.push((i as u32, s as u32));
                        queue.push_back(j);
                        j as u32
                    }
                };
                right.push(j);
            }
        }
        let n = elements.len();
        let k = gens.len();
        // right[i * k + s] = index(elements[i] * gens[s]); BFS visits i in index order.
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            mul[i * n] = i as u32;
            for j in 1..n {
                let (pj, s) = parent[j];
                let left = mul[i * n + pj as usize] as usize;
                mul[i * n + j] = right[left * k + s as usize];
            }
        }
        Self::from_flat(n, mul, name.into())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as Elem
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.elem_orders[a] as usize
    }

    /// `g^-1 x g`
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `x^s` for any integer `s`, reduced modulo the order of `x`.
    pub fn pow(&self, x: Elem, s: i64) -> Elem {
        let o = self.elem_order(x) as i64;
        let mut e = s.rem_euclid(o);
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elem_orders.iter().fold(1usize, |acc, &o| acc.lcm(&(o as usize)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The Cayley table as nested rows.
    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }
}

fn check_associative(n: usize, mul: &[u32]) -> Result<(), GroupError> {
    let m = |a: usize, b: usize| mul[a * n + b] as usize;
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for a in 1..n {
            for b in 1..n {
                let ab = m(a, b);
                for c in 1..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0f_a55 ^ n as u64);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

/// A permutation of `{0, .., m-1}` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Images of `0..m`; fails unless the list is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::NotAPermutation);
            }
        }
        Ok(Permutation(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Builds a permutation from disjoint cycles on the points `1..=degree`.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree || std::mem::replace(&mut touched[pt - 1], true) {
                    return Err(GroupError::NotAPermutation);
                }
                let next = cycle[(pos + 1) % cycle.len()];
                images[pt - 1] = next - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, pt: usize) -> usize {
        self.0.get(pt).map_or(pt, |&v| v as usize)
    }

    fn extended(&self, degree: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Permutation(v)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&p| other.image(p as usize) as u32).collect())
    }
}

/// A partition of a conjugation-invariant set of elements into orbits.
///
/// Class 0 holds the identity; the remaining classes are ordered by size and
/// then by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    class_of: Vec<u32>,
    members: Vec<Vec<Elem>>,
}

const OUTSIDE: u32 = u32::MAX;

impl ClassPartition {
    /// Orbits of `domain` under conjugation by all of `g`. The domain must be
    /// closed under conjugation and contain the identity.
    pub fn orbits(g: &FiniteGroup, domain: impl IntoIterator<Item = Elem>) -> Self {
        let mut class_of = vec![OUTSIDE; g.order()];
        let mut in_domain = vec![false; g.order()];
        let mut domain: Vec<Elem> = domain.into_iter().collect();
        domain.sort_unstable();
        for &x in &domain {
            in_domain[x] = true;
        }
        let mut members: Vec<Vec<Elem>> = Vec::new();
        let mut assigned = vec![false; g.order()];
        for &x in &domain {
            if assigned[x] {
                continue;
            }
            let mut orbit = Vec::new();
            for h in g.elements() {
                let y = g.conj(x, h);
                debug_assert!(in_domain[y], "domain not closed under conjugation");
                if !assigned[y] {
                    assigned[y] = true;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        members.sort_by(|a, b| {
            let ka = (a[0] != 0, a.len(), a[0]);
            let kb = (b[0] != 0, b.len(), b[0]);
            ka.cmp(&kb)
        });
        for (c, m) in members.iter().enumerate() {
            for &x in m {
                class_of[x] = c as u32;
            }
        }
        ClassPartition { class_of, members }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Class index of `x`, or `None` when `x` is outside the partitioned set.
    pub fn class_of(&self, x: Elem) -> Option<usize> {
        match self.class_of[x] {
            OUTSIDE => None,
            c => Some(c as usize),
        }
    }

    /// Smallest member of class `c`.
    pub fn rep(&self, c: usize) -> Elem {
        self.members[c][0]
    }

    pub fn reps(&self) -> Vec<Elem> {
        self.members.iter().map(|m| m[0]).collect()
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn members(&self, c: usize) -> &[Elem] {
        &self.members[c]
    }

    /// Number of elements covered by the partition.
    pub fn total(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }
}

/// Conjugacy classes of `g`.
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassPartition {
    ClassPartition::orbits(g, g.elements())
}

/// Maps each class `c` to the class of `rep(c)^s`.
pub fn power_class_map(g: &FiniteGroup, classes: &ClassPartition, s: i64) -> Vec<usize> {
    (0..classes.count())
        .map(|c| {
            let image = classes
                .class_of(g.pow(classes.rep(c), s))
                .expect("powers stay inside a conjugation-closed set");
            debug_assert!(classes
                .members(c)
                .iter()
                .all(|&x| classes.class_of(g.pow(x, s)) == Some(image)));
            image
        })
        .collect()
}
