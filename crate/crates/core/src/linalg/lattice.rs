use super::jordan::char_poly;
use super::matrix::ZMatrix;
use crate::arith::cyclotomic::cyclotomic_order_unchecked;
use crate::arith::{euler_phi, factor_over_rationals, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

fn gram_schmidt(basis: &[Vec<BigInt>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = basis.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<Rational> = basis[i].iter().map(|x| Rational::from_integer(x.clone())).collect();
        for j in 0..i {
            let num: Rational = basis[i]
                .iter()
                .zip(&star[j])
                .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                .sum();
            let m: Rational = if norms[j] == Rational::zero() { Rational::zero() } else { num / &norms[j] };
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &m * sk;
            }
            mu[i][j] = m;
        }
        norms.push(v.iter().map(|x| x * x).sum());
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction (`delta = 3/4`) of linearly independent integer row vectors.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let delta = Rational::new(3.into(), 4.into());
    let (mut mu, mut norms) = gram_schmidt(basis);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qr = Rational::from_integer(q);
                let (lower, upper) = mu.split_at_mut(k);
                for (x, y) in upper[0][..j].iter_mut().zip(&lower[j][..j]) {
                    *x -= &qr * y;
                }
                mu[k][j] -= &qr;
            }
        }
        let lhs = norms[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            (mu, norms) = gram_schmidt(basis);
            k = (k - 1).max(1);
        }
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Makes the first nonzero entry positive.
pub fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
}

fn canonical_order(a: &[BigInt], b: &[BigInt]) -> Ordering {
    norm2(a).cmp(&norm2(b)).then_with(|| b.cmp(a))
}

/// LLL-reduced basis of `{v in Z^cols : m v = 0}`, sign-normalized and sorted
/// by squared length. Empty when the kernel is trivial.
pub fn integer_kernel(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    // Each column carries its image under `m` and its coordinates.
    let mut image: Vec<Vec<BigInt>> = (0..cols).map(|j| m.column(j)).collect();
    let mut coords: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        for j in pivot + 1..cols {
            if image[j][r].is_zero() {
                continue;
            }
            let a = image[pivot][r].clone();
            let b = image[j][r].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let combine = |p: &[BigInt], q: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
                let new_p = p.iter().zip(q).map(|(x, y)| &s * x + &t * y).collect();
                let new_q = p.iter().zip(q).map(|(x, y)| &ag * y - &bg * x).collect();
                (new_p, new_q)
            };
            let (ip, iq) = combine(&image[pivot], &image[j]);
            image[pivot] = ip;
            image[j] = iq;
            let (cp, cq) = combine(&coords[pivot], &coords[j]);
            coords[pivot] = cp;
            coords[j] = cq;
        }
        if !image[pivot][r].is_zero() {
            pivot += 1;
        }
    }
    let mut kernel: Vec<Vec<BigInt>> = coords.split_off(pivot);
    lll_reduce(&mut kernel);
    for v in kernel.iter_mut() {
        normalize_sign(v);
    }
    kernel.sort_by(|a, b| canonical_order(a, b));
    kernel
}

/// `lcm { n : phi(n) <= l }`, the exponent of every finite-order element of `GL_l(Z)`.
pub fn default_max_period(l: usize) -> u64 {
    let l = l as u64;
    (1..=2 * l * l + 2)
        .filter(|&n| euler_phi(n) <= l)
        .fold(1u64, |acc, n| acc.lcm(&n))
}

/// Smallest `m <= max_period` with a nonzero integer `w` such that `(a2^T)^m w = w`.
///
/// `(a2^T)^m - I` is singular exactly when some eigenvalue is an `m`-th root
/// of unity, so the least such `m` is the least order among the cyclotomic
/// factors of the characteristic polynomial.
pub fn fixed_character(a2: &ZMatrix, max_period: u64) -> Result<Option<(Vec<BigInt>, u64)>> {
    if !a2.is_square() {
        return Err(Error::NotSquare { rows: a2.rows(), cols: a2.cols() });
    }
    if a2.determinant()?.is_zero() {
        return Err(Error::DominanceViolation("torus matrix is singular".into()));
    }
    let cp = char_poly(&a2.to_rational())?;
    let order = factor_over_rationals(&cp)?
        .factors
        .iter()
        .filter_map(|(f, _)| cyclotomic_order_unchecked(&f.monic()))
        .min();
    let Some(m) = order.filter(|&m| m <= max_period) else {
        return Ok(None);
    };
    let t = a2.transpose().pow(m)?;
    let shifted = t.sub(&ZMatrix::identity(t.rows()))?;
    Ok(integer_kernel(&shifted).into_iter().next().map(|w| (w, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> ZMatrix {
        ZMatrix::from_i64(rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&z(&[vec![2, -1]])), vec![v(&[1, 2])]);
        assert!(integer_kernel(&z(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).is_empty());
        assert_eq!(integer_kernel(&z(&[vec![0, 0], vec![0, 0]])), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // A basis of the full kernel lattice of a primitive row has that row as cross product.
        let k = integer_kernel(&z(&[vec![6, 10, 15]]));
        assert_eq!(k.len(), 2);
        let cross = [
            &k[0][1] * &k[1][2] - &k[0][2] * &k[1][1],
            &k[0][2] * &k[1][0] - &k[0][0] * &k[1][2],
            &k[0][0] * &k[1][1] - &k[0][1] * &k[1][0],
        ];
        let mut cross = cross.to_vec();
        normalize_sign(&mut cross);
        assert_eq!(cross, v(&[6, 10, 15]));
    }

    #[test]
    fn lll_shortens() {
        let mut b = vec![v(&[1, 1, 1]), v(&[-1, 0, 2]), v(&[3, 5, 6])];
        lll_reduce(&mut b);
        assert!(b.iter().all(|r| norm2(r) <= BigInt::from(5)));
    }

    #[test]
    fn fixed_character_examples() {
        assert_eq!(fixed_character(&z(&[vec![1, 1], vec![0, 1]]), 12).unwrap(), Some((v(&[0, 1]), 1)));
        assert_eq!(fixed_character(&z(&[vec![0, -1], vec![1, 0]]), 12).unwrap(), Some((v(&[1, 0]), 4)));
        assert_eq!(fixed_character(&z(&[vec![2]]), 12).unwrap(), None);
        assert!(fixed_character(&z(&[vec![0]]), 12).is_err());
    }

    #[test]
    fn default_periods() {
        assert_eq!(default_max_period(1), 2);
        assert_eq!(default_max_period(2), 12);
    }
}
