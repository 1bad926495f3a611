//! Burnside–Dixon: central characters as common eigenvectors of the class
//! matrices over `F_p`, lifted back to cyclotomic values.

use num_bigint::BigInt;
use num_traits::One;

use super::RootSum;
use crate::cyclotomic::Cyclotomic;
use crate::error::TableError;
use crate::group::{power_class_map, ClassPartition, FiniteGroup};

/// Structure constants `a[i][j][k]` of the class sums: `C_i C_j = Σ a_ijk C_k`.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    k: usize,
    constants: Vec<u32>,
}

impl ClassAlgebra {
    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.constants[(i * self.k + j) * self.k + l]
    }
}

/// `a_ijk = #{(x, y) ∈ C_i × C_j : x y = z}` for the representative `z` of `C_k`.
pub fn class_constants(g: &FiniteGroup, classes: &ClassPartition) -> ClassAlgebra {
    let k = classes.count();
    let mut constants = vec![0u32; k * k * k];
    let reps = classes.reps();
    for i in 0..k {
        for &x in classes.members(i) {
            let xi = g.inv(x);
            for (l, &z) in reps.iter().enumerate() {
                let j = classes.class_of(g.mul(xi, z)).unwrap();
                constants[(i * k + j) * k + l] += 1;
            }
        }
    }
    ClassAlgebra { k, constants }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2⌈√|G|⌉`.
pub fn dixon_prime(g: &FiniteGroup) -> u64 {
    let e = g.exponent() as u64;
    let n = g.order() as u64;
    let mut root = (n as f64).sqrt() as u64;
    while root * root < n {
        root += 1;
    }
    while root > 0 && (root - 1) * (root - 1) >= n {
        root -= 1;
    }
    let bound = 2 * root;
    let mut p = e + 1;
    while p <= bound || !is_prime(p) {
        p += e;
    }
    p
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of a square matrix over `F_p`.
fn null_space(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Split `space` (rows are basis vectors) into eigenspaces of `matrix`.
fn split(space: Vec<Vec<u64>>, matrix: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>, TableError> {
    let mut basis = space;
    let pivots = rref(&mut basis, p);
    let d = basis.len();
    let k = matrix.len();
    // R[b][a] = coefficient of basis b in M w_a.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|w| (0..k).map(|row| matrix[row].iter().zip(w).map(|(m, x)| m * x % p).sum::<u64>() % p).collect())
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d).map(|b| (0..d).map(|a| images[a][pivots[b]]).collect()).collect();
    let mut pieces = Vec::new();
    let mut covered = 0;
    for lambda in 0..p {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|b| (0..d).map(|a| (restricted[b][a] + if a == b { p - lambda } else { 0 }) % p).collect())
            .collect();
        let kernel = null_space(shifted, p);
        if kernel.is_empty() {
            continue;
        }
        covered += kernel.len();
        let piece: Vec<Vec<u64>> = kernel
            .iter()
            .map(|c| (0..k).map(|x| (0..d).map(|a| c[a] * basis[a][x] % p).sum::<u64>() % p).collect())
            .collect();
        pieces.push(piece);
        if covered == d {
            break;
        }
    }
    if covered != d {
        return Err(TableError::VerificationFailed("class matrix is not diagonalizable mod p".into()));
    }
    Ok(pieces)
}

pub(super) fn irreducible_values(
    g: &FiniteGroup,
    classes: &ClassPartition,
) -> Result<(Vec<Vec<Cyclotomic>>, Vec<Vec<RootSum>>), TableError> {
    let k = classes.count();
    let algebra = class_constants(g, classes);
    let p = dixon_prime(g);
    let order = g.order() as u64;
    let e = g.exponent() as u64;

    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for i in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let matrix: Vec<Vec<u64>> =
            (0..k).map(|j| (0..k).map(|l| algebra.get(i, j, l) as u64 % p).collect()).collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(s, &matrix, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(TableError::VerificationFailed("common eigenspaces did not split".into()));
    }

    let sizes = classes.sizes();
    let inverse = power_class_map(g, classes, -1);
    let powers: Vec<Vec<usize>> = (0..e).map(|s| power_class_map(g, classes, s as i64)).collect();
    let theta = pow_mod(primitive_root(p), (p - 1) / e, p);
    let e_inv = inv_mod(e % p, p);

    let mut values = Vec::with_capacity(k);
    let mut sums = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(TableError::VerificationFailed("central character vanishes at 1".into()));
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let s: u64 = (0..k)
            .map(|j| omega[j] * omega[inverse[j]] % p * inv_mod(sizes[j] as u64 % p, p) % p)
            .sum::<u64>()
            % p;
        let d2 = order % p * inv_mod(s, p) % p;
        let degree = (1..=p / 2)
            .find(|x| x * x % p == d2)
            .ok_or_else(|| TableError::VerificationFailed("degree has no square root mod p".into()))?;
        let modular: Vec<u64> =
            (0..k).map(|j| degree * omega[j] % p * inv_mod(sizes[j] as u64 % p, p) % p).collect();
        let mut row = Vec::with_capacity(k);
        let mut row_sums = Vec::with_capacity(k);
        for j in 0..k {
            let mut mult = Vec::new();
            let mut total = 0;
            for t in 0..e {
                let mut acc = 0u64;
                for s in 0..e {
                    let exp = (e * e - s * t) % e;
                    acc = (acc + modular[powers[s as usize][j]] * pow_mod(theta, exp, p)) % p;
                }
                let m = acc * e_inv % p;
                if m > degree {
                    return Err(TableError::VerificationFailed("eigenvalue multiplicity out of range".into()));
                }
                total += m;
                if m != 0 {
                    mult.push((t as u32, m as i64));
                }
            }
            if total != degree {
                return Err(TableError::VerificationFailed("eigenvalue multiplicities do not sum to the degree".into()));
            }
            let mut coeffs = vec![BigInt::from(0); e as usize];
            for &(t, m) in &mult {
                coeffs[t as usize] = BigInt::from(m);
            }
            row.push(Cyclotomic::from_exponents(e as u32, coeffs, BigInt::one()));
            row_sums.push(mult);
        }
        values.push(row);
        sums.push(row_sums);
    }
    Ok((values, sums))
}
