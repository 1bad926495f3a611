//! Subgroups as sorted element sets, and the series built from them.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::GroupError;
use crate::group::{conjugacy_classes, ClassPartition, Elem, FiniteGroup, DEFAULT_ORDER_CAP};

/// A subgroup of some ambient group, identified by its sorted element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elems: Vec<Elem>,
    mask: FixedBitSet,
    gens: Vec<Elem>,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order first, then lexicographic element sets.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.len().cmp(&other.elems.len()).then_with(|| self.elems.cmp(&other.elems))
    }
}

fn closure(g: &FiniteGroup, gens: &[Elem]) -> (Vec<Elem>, FixedBitSet) {
    let mut mask = FixedBitSet::with_capacity(g.order());
    let mut elems = vec![0];
    mask.insert(0);
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i];
        for &s in gens {
            let y = g.mul(e, s);
            if !mask.put(y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    (elems, mask)
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(0);
        Subgroup { elems: vec![0], mask, gens: Vec::new(), normal: true }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut sub = Subgroup::generated(g, g.elements());
        sub.normal = true;
        sub
    }

    /// Subgroup generated by `candidates`. Candidates already inside the
    /// running closure are skipped, so the kept generators form a small
    /// generating set.
    pub fn generated(g: &FiniteGroup, candidates: impl IntoIterator<Item = Elem>) -> Self {
        let mut gens: Vec<Elem> = Vec::new();
        let (mut elems, mut mask) = closure(g, &gens);
        for c in candidates {
            if !mask.contains(c) {
                gens.push(c);
                (elems, mask) = closure(g, &gens);
            }
        }
        let normal = gens.iter().all(|&s| g.elements().all(|x| mask.contains(g.conj(s, x))));
        Subgroup { elems, mask, gens, normal }
    }

    /// Wraps an element set that is known to be a subgroup; returns `None`
    /// if it is not closed under multiplication.
    pub fn from_elements(g: &FiniteGroup, elems: impl IntoIterator<Item = Elem>) -> Option<Self> {
        let mut mask = FixedBitSet::with_capacity(g.order());
        for x in elems {
            mask.insert(x);
        }
        if !mask.contains(0) {
            return None;
        }
        let sub = Subgroup::generated(g, mask.ones());
        (sub.mask == mask).then_some(sub)
    }

    /// Union of the given classes, when that union is a subgroup.
    pub fn from_classes(
        g: &FiniteGroup,
        classes: &ClassPartition,
        which: impl IntoIterator<Item = usize>,
    ) -> Option<Self> {
        let elems: Vec<Elem> = which.into_iter().flat_map(|c| classes.members(c).to_vec()).collect();
        Subgroup::from_elements(g, elems)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    /// A small generating set, in the order the generators were kept.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.contains(x)
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        let mut sub = Subgroup::generated(g, mask.ones());
        sub.normal |= self.normal && other.normal;
        sub
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut sub =
            Subgroup::generated(g, self.gens.iter().chain(other.gens.iter()).copied());
        sub.normal |= self.normal && other.normal;
        sub
    }

    /// The subgroup as a group in its own right, with the embedding
    /// `local index -> ambient element`.
    pub fn as_group(&self, g: &FiniteGroup, name: impl Into<String>) -> (FiniteGroup, Vec<Elem>) {
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in self.elems.iter().enumerate() {
            local[x] = i;
        }
        let table: Vec<Vec<usize>> = self
            .elems
            .iter()
            .map(|&a| self.elems.iter().map(|&b| local[g.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_cayley(&table, name).expect("subgroup tables are valid groups");
        (group, self.elems.clone())
    }
}

/// `[A, B]`, the subgroup generated by all `a^-1 b^-1 a b`.
pub fn commutator(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut comms = FixedBitSet::with_capacity(g.order());
    for &x in a.elements() {
        for &y in b.elements() {
            comms.insert(g.commutator(x, y));
        }
    }
    let mut sub = Subgroup::generated(g, comms.ones());
    sub.normal |= a.normal && b.normal;
    sub
}

/// Center of `g`.
pub fn centre(g: &FiniteGroup) -> Subgroup {
    let elems = g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)));
    let mut sub = Subgroup::generated(g, elems);
    sub.normal = true;
    sub
}

/// All normal subgroups, sorted by order then element set.
///
/// Every normal subgroup is a join of normal closures of conjugacy
/// classes, so joining found subgroups with one class at a time reaches
/// them all.
pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    normal_subgroups_capped(g, DEFAULT_ORDER_CAP)
}

pub fn normal_subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    let classes = conjugacy_classes(g);
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut found = vec![Subgroup::trivial(g)];
    seen.insert(vec![0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for c in 1..classes.count() {
            let h = &found[i];
            if h.contains(classes.rep(c)) {
                continue;
            }
            let candidates: Vec<Elem> =
                h.gens.iter().copied().chain(classes.members(c).iter().copied()).collect();
            let joined = Subgroup::generated(g, candidates);
            debug_assert!(joined.normal);
            if seen.insert(joined.elems.clone()) {
                found.push(joined);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Orders above this bound are refused by the exhaustive subgroup search.
pub const SUBGROUP_SEARCH_CAP: usize = 1024;

/// Every subgroup of `g`, by joining found subgroups with cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > SUBGROUP_SEARCH_CAP {
        return Err(GroupError::OrderCapExceeded { cap: SUBGROUP_SEARCH_CAP });
    }
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let mut seen_cyclic: HashSet<Vec<Elem>> = HashSet::new();
    for x in g.elements().skip(1) {
        if seen_cyclic.insert(Subgroup::generated(g, [x]).elems) {
            cyclic_gens.push(x);
        }
    }
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([vec![0]]);
    let mut found = vec![Subgroup::trivial(g)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &x in &cyclic_gens {
            let h = &found[i];
            if h.contains(x) {
                continue;
            }
            let joined = Subgroup::generated(g, h.gens.iter().copied().chain([x]));
            if seen.insert(joined.elems.clone()) {
                found.push(joined);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// A chain of subgroups, each normal in the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSeries {
    pub terms: Vec<Subgroup>,
}

impl GSeries {
    pub fn last(&self) -> &Subgroup {
        self.terms.last().expect("series are never empty")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `N = Γ¹ ⊇ Γ² = [Γ¹, G] ⊇ ...` until the terms stop changing.
pub fn lower_central_g_series(g: &FiniteGroup, n: &Subgroup) -> Result<GSeries, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let whole = Subgroup::whole(g);
    let mut terms = vec![n.clone()];
    loop {
        let next = commutator(g, terms.last().unwrap(), &whole);
        if &next == terms.last().unwrap() {
            break;
        }
        terms.push(next);
    }
    Ok(GSeries { terms })
}

/// `1 = Z⁰ ⊆ Z¹ ⊆ ...` with `Z^{i+1}/Z^i = Z(G/Z^i) ∩ N/Z^i`; the last term
/// is the G-hypercenter of `N`.
pub fn upper_central_g_series(g: &FiniteGroup, n: &Subgroup) -> Result<GSeries, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let mut terms = vec![Subgroup::trivial(g)];
    loop {
        let current = terms.last().unwrap();
        let next_elems: Vec<Elem> = n
            .elements()
            .iter()
            .copied()
            .filter(|&x| g.elements().all(|y| current.contains(g.commutator(x, y))))
            .collect();
        let mut next = Subgroup::from_elements(g, next_elems).expect("upper central terms are subgroups");
        next.normal = true;
        if &next == current {
            break;
        }
        terms.push(next);
    }
    Ok(GSeries { terms })
}

/// Hypercentral G-length of a normal subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypercentralLength {
    Length(usize),
    NotHypercentral,
}

impl HypercentralLength {
    pub fn length(self) -> Option<usize> {
        match self {
            HypercentralLength::Length(k) => Some(k),
            HypercentralLength::NotHypercentral => None,
        }
    }
}

/// Least `k` with `Γ^{k+1} = 1`, cross-checked against the least `k` with
/// `Z^k = N` from the upper series.
pub fn hypercentral_g_length(g: &FiniteGroup, n: &Subgroup) -> Result<HypercentralLength, GroupError> {
    let lower = lower_central_g_series(g, n)?;
    let upper = upper_central_g_series(g, n)?;
    let from_lower = lower.last().is_trivial().then(|| lower.len() - 1);
    let from_upper = (upper.last() == n).then(|| upper.len() - 1);
    assert_eq!(from_lower, from_upper, "lower and upper central G-series disagree");
    Ok(match from_lower {
        Some(k) => HypercentralLength::Length(k),
        None => HypercentralLength::NotHypercentral,
    })
}

/// `G / M` with cosets numbered by their smallest member, plus the
/// projection `element -> coset`.
pub fn quotient(g: &FiniteGroup, m: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    if !m.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &y in m.elements() {
            coset_of[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let name = format!("{}/{}", g.name(), m.order());
    let q = FiniteGroup::from_cayley(&table, name)?;
    Ok((q, coset_of))
}
