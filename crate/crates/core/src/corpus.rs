//! Builders for the standard small groups used throughout the tests.
//!
//! Presentation-based groups use the normal form `a^i b^j`, numbered
//! `i + |a| * j`, so element indices are predictable.

use crate::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};

fn from_rule(n: usize, name: String, rule: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| rule(a, b)).collect()).collect();
    FiniteGroup::from_cayley(&table, name).expect("builder produces a valid group")
}

pub fn trivial() -> FiniteGroup {
    cyclic(1).with_name("1")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    from_rule(n, format!("C{n}"), |a, b| (a + b) % n)
}

/// `C_m x C_n`, element `(i, j)` stored at `i * n + j`.
pub fn abelian2(m: usize, n: usize) -> FiniteGroup {
    from_rule(m * n, format!("C{m}xC{n}"), |a, b| {
        let (i, j) = (a / n + b / n, a % n + b % n);
        (i % m) * n + j % n
    })
}

/// Dihedral group of order `2n`: `<a, b | a^n, b^2, b a b = a^-1>`.
pub fn dihedral(n: usize) -> FiniteGroup {
    from_rule(2 * n, format!("D{}", 2 * n), |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        if j == 0 {
            (i + k) % n + n * l
        } else {
            (i + n - k) % n + n * (1 - l)
        }
    })
}

/// Dicyclic group of order `4m`: `<a, b | a^(2m), b^2 = a^m, b^-1 a b = a^-1>`.
///
/// `dicyclic(2)` is Q8 and `dicyclic(4)` is Q16.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let n = 2 * m;
    let name = match m {
        2 => "Q8".to_string(),
        4 => "Q16".to_string(),
        _ => format!("Dic{}", 4 * m),
    };
    from_rule(2 * n, name, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        match (j, l) {
            (0, _) => (i + k) % n + n * l,
            (1, 0) => (i + n - k) % n + n,
            _ => (i + n - k + m) % n,
        }
    })
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(&[vec![1, 2]], n).unwrap());
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(&[(1..=n).collect()], n).unwrap());
    }
    FiniteGroup::from_permutations(&gens, format!("S{n}"), DEFAULT_ORDER_CAP).unwrap()
}

pub fn alternating(n: usize) -> FiniteGroup {
    let gens: Vec<Permutation> = (3..=n)
        .map(|k| Permutation::from_cycles(&[vec![1, 2, k]], n).unwrap())
        .collect();
    FiniteGroup::from_permutations(&gens, format!("A{n}"), DEFAULT_ORDER_CAP).unwrap()
}

/// `SL(2, 3)`, built from its 24 matrices over `F_3` with the identity first.
pub fn sl2_3() -> FiniteGroup {
    let mut mats: Vec<[u8; 4]> = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    if (a * d + 9 - (b * c) % 3) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    mats.swap(0, id);
    let mul = |x: &[u8; 4], y: &[u8; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let index = |m: [u8; 4]| mats.iter().position(|x| *x == m).unwrap();
    from_rule(24, "SL(2,3)".to_string(), |a, b| index(mul(&mats[a], &mats[b])))
}

/// The programmatic part of the test corpus, smallest first.
pub fn standard() -> Vec<FiniteGroup> {
    vec![
        trivial(),
        cyclic(2),
        cyclic(4),
        abelian2(2, 2),
        cyclic(9),
        cyclic(20),
        symmetric(3),
        dihedral(4),
        dicyclic(2),
        dihedral(5),
        alternating(4),
        dihedral(6),
        dicyclic(4),
        dihedral(8),
        dihedral(9),
        sl2_3(),
        symmetric(4),
        dicyclic(30),
    ]
}
