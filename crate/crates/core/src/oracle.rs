//! Element-level ground truth that the table-side criteria are checked against.

use serde::Serialize;

use crate::error::GroupError;
use crate::group::{Elem, FiniteGroup};
use crate::subgroup::{all_subgroups, commutator, upper_central_g_series, Subgroup};

pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n % p == 0 && n > 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_p_element(g: &FiniteGroup, x: Elem, p: usize) -> bool {
    p_part(g.elem_order(x), p) == g.elem_order(x)
}

pub fn is_p_prime_element(g: &FiniteGroup, x: Elem, p: usize) -> bool {
    g.elem_order(x) % p != 0
}

/// `O^p(N)`: generated by the p'-elements of `N`.
pub fn o_p(g: &FiniteGroup, n: &Subgroup, p: usize) -> Subgroup {
    Subgroup::generated(g, n.elements().iter().copied().filter(|&x| is_p_prime_element(g, x, p)))
}

/// `O^{p'}(N)`: generated by the p-elements of `N`.
pub fn o_p_prime(g: &FiniteGroup, n: &Subgroup, p: usize) -> Subgroup {
    Subgroup::generated(g, n.elements().iter().copied().filter(|&x| is_p_element(g, x, p)))
}

/// The normal p-complement of `N`, if any: the p'-elements of `N` when they
/// form a subgroup of order `|N| / |N|_p`.
pub fn normal_p_complement(g: &FiniteGroup, n: &Subgroup, p: usize) -> Option<Subgroup> {
    let p_primes: Vec<Elem> =
        n.elements().iter().copied().filter(|&x| is_p_prime_element(g, x, p)).collect();
    if p_primes.len() != n.order() / p_part(n.order(), p) {
        return None;
    }
    Subgroup::from_elements(g, p_primes)
}

/// Intersection of the maximal subgroups of `g`.
pub fn frattini(g: &FiniteGroup) -> Result<Subgroup, GroupError> {
    let subs = all_subgroups(g)?;
    let proper: Vec<&Subgroup> = subs.iter().filter(|h| h.order() < g.order()).collect();
    let mut result = Subgroup::whole(g);
    for h in &proper {
        let maximal = !proper.iter().any(|k| k.order() > h.order() && h.is_subset(k));
        if maximal {
            result = result.intersection(g, h);
        }
    }
    Ok(result)
}

/// Nilpotency class of `N` from its own lower central series, or `None`
/// when the series stalls above the identity.
pub fn nilpotency_class(g: &FiniteGroup, n: &Subgroup) -> Option<usize> {
    let mut term = n.clone();
    let mut class = 0;
    while !term.is_trivial() {
        let next = commutator(g, &term, n);
        if next == term {
            return None;
        }
        term = next;
        class += 1;
    }
    Some(class)
}

pub fn is_solvable(g: &FiniteGroup, n: &Subgroup) -> bool {
    let mut term = n.clone();
    while !term.is_trivial() {
        let next = commutator(g, &term, &term);
        if next == term {
            return false;
        }
        term = next;
    }
    true
}

/// Hypercenter of `g`: the last term of its upper central series.
pub fn hypercenter(g: &FiniteGroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    upper_central_g_series(g, &whole).expect("G is normal in itself").last().clone()
}

#[derive(Clone, Debug)]
pub struct StructuralOracles {
    pub o_p: Subgroup,
    pub o_p_prime: Subgroup,
    pub normal_p_complement: Option<Subgroup>,
    pub frattini: Subgroup,
    pub nilpotency_class: Option<usize>,
    pub is_solvable: bool,
    pub sylow_p_order: usize,
}

impl StructuralOracles {
    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }

    pub fn has_normal_p_complement(&self) -> bool {
        self.normal_p_complement.is_some()
    }
}

pub fn structural_oracles(g: &FiniteGroup, n: &Subgroup, p: usize) -> Result<StructuralOracles, GroupError> {
    Ok(StructuralOracles {
        o_p: o_p(g, n, p),
        o_p_prime: o_p_prime(g, n, p),
        normal_p_complement: normal_p_complement(g, n, p),
        frattini: frattini(g)?,
        nilpotency_class: nilpotency_class(g, n),
        is_solvable: is_solvable(g, n),
        sylow_p_order: p_part(n.order(), p),
    })
}

/// Shape of a subgroup for reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<Elem>,
}

impl From<&Subgroup> for SubgroupSummary {
    fn from(h: &Subgroup) -> Self {
        SubgroupSummary { order: h.order(), generators: h.generators().to_vec() }
    }
}
