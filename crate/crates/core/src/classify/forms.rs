//! Linear forms with coefficients in a coefficient field: left Jordan chains
//! of a rational matrix and their norms.

use crate::arith::{Rational, UnivariatePoly};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::symbolic::{Coeff, CoeffRing, MPoly, VarSpace};
use std::sync::Arc;

type Vector = Vec<Coeff>;

fn is_zero_vec(ring: &CoeffRing, v: &[Coeff]) -> bool {
    v.iter().all(|c| ring.is_zero(c))
}

/// `a^T - lambda I` over `ring`.
fn shifted_transpose(a: &QMatrix, ring: &CoeffRing, lambda: &Coeff) -> Vec<Vector> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = ring.from_rational(a.get(j, i).clone());
                    if i == j { ring.sub(&c, lambda) } else { c }
                })
                .collect()
        })
        .collect()
}

fn mat_vec(ring: &CoeffRing, m: &[Vector], v: &[Coeff]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect()
}

fn mat_mul(ring: &CoeffRing, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ring.zero(), |acc, (x, brow)| ring.add(&acc, &ring.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

fn mat_pow(ring: &CoeffRing, m: &[Vector], e: usize) -> Vec<Vector> {
    let n = m.len();
    let mut acc: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    for _ in 0..e {
        acc = mat_mul(ring, &acc, m);
    }
    acc
}

/// Reduced row echelon form over a field; returns the pivot columns.
fn echelon(ring: &CoeffRing, m: &mut [Vector]) -> Result<Vec<usize>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !ring.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = ring
            .inv(&m[r][c])
            .ok_or_else(|| Error::Unsupported("coefficient ring is not a field".into()))?;
        let pivot: Vector = m[r].iter().map(|x| ring.mul(x, &inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !ring.is_zero(&row[c]) {
                let f = row[c].clone();
                for (t, pv) in row.iter_mut().zip(&pivot) {
                    *t = ring.sub(t, &ring.mul(&f, pv));
                }
            }
        }
        m[r] = pivot;
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

fn nullspace(ring: &CoeffRing, m: &[Vector]) -> Result<Vec<Vector>> {
    let n = m.first().map_or(0, Vec::len);
    let mut e = m.to_vec();
    let pivots = echelon(ring, &mut e)?;
    let free = (0..n).filter(|c| !pivots.contains(c));
    Ok(free
        .map(|f| {
            let mut v = vec![ring.zero(); n];
            v[f] = ring.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(&e[row][f]);
            }
            v
        })
        .collect())
}

fn rank(ring: &CoeffRing, vecs: &[Vector]) -> Result<usize> {
    let mut m = vecs.to_vec();
    Ok(echelon(ring, &mut m)?.len())
}

/// Left Jordan chains of `a` for the eigenvalue `lambda`, one per entry of
/// `sizes` (descending). Each chain `l_1, ..., l_s` satisfies
/// `l_i a = lambda l_i + l_{i+1}` and `l_s a = lambda l_s`.
///
/// `ring` must be a field containing `lambda`.
pub(crate) fn left_chains(
    a: &QMatrix,
    ring: &CoeffRing,
    lambda: &Coeff,
    sizes: &[usize],
) -> Result<Vec<Vec<Vector>>> {
    let n = a.rows();
    let nil = shifted_transpose(a, ring, lambda);
    let mut bottoms: Vec<Vector> = Vec::new();
    let mut chains = Vec::new();
    let mut distinct = sizes.to_vec();
    distinct.dedup();
    for &s in &distinct {
        let wanted = sizes.iter().filter(|&&x| x == s).count();
        let ns = mat_pow(ring, &nil, s);
        let ns1 = mat_pow(ring, &nil, s - 1);
        let units = (0..n).map(|i| {
            let mut e = vec![ring.zero(); n];
            e[i] = ring.one();
            e
        });
        let candidates: Vec<Vector> = units
            .filter(|e| is_zero_vec(ring, &mat_vec(ring, &ns, e)))
            .chain(nullspace(ring, &ns)?)
            .collect();
        let mut found = 0;
        for top in candidates {
            if found == wanted {
                break;
            }
            let bottom = mat_vec(ring, &ns1, &top);
            if is_zero_vec(ring, &bottom) {
                continue;
            }
            let mut trial = bottoms.clone();
            trial.push(bottom.clone());
            if rank(ring, &trial)? < trial.len() {
                continue;
            }
            bottoms.push(bottom);
            let mut chain = vec![top];
            for _ in 1..s {
                let next = mat_vec(ring, &nil, chain.last().unwrap());
                chain.push(next);
            }
            chains.push(chain);
            found += 1;
        }
        if found < wanted {
            return Err(Error::Unsupported("Jordan chain construction failed".into()));
        }
    }
    Ok(chains)
}

/// `sum_i coeffs[i] * x_i` on `space`.
pub(crate) fn linear_form(space: VarSpace, ring: &Arc<CoeffRing>, coeffs: &[Coeff]) -> MPoly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .fold(MPoly::zero(space, ring), |acc, (i, c)| {
            acc.add(&MPoly::var(space, ring, i).scale(c))
        })
}

/// Image of `c` under the map sending the generator of `from` (a ring with at
/// most one generator) to generator `t` of `to`.
pub(crate) fn embed_coeff(c: &Coeff, from: &CoeffRing, to: &CoeffRing, t: Option<usize>) -> Coeff {
    match t {
        Some(t) if !from.is_rationals() => {
            to.eval_poly(&UnivariatePoly::from_coeffs(c.clone()), &to.generator(t))
        }
        _ => to.from_rational(c[0].clone()),
    }
}

/// Determinant by fraction-free elimination.
fn determinant(mut m: Vec<Vec<MPoly>>, space: VarSpace, ring: &Arc<CoeffRing>) -> MPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = MPoly::one(space, ring);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return MPoly::zero(space, ring);
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("fraction-free step is exact");
            }
        }
        prev = m[k][k].clone();
    }
    if sign { prev.neg() } else { prev }
}

/// Norm to the rationals of the linear form `sum_i coeffs[i](a) x_i`, where
/// `field` has a single generator: the product of its conjugates, as a
/// polynomial with rational coefficients.
pub(crate) fn norm_form(space: VarSpace, field: &CoeffRing, coeffs: &[Coeff]) -> MPoly {
    let q = CoeffRing::rationals();
    let d = field.dim();
    let gen = field.generator(0);
    let basis: Vec<Coeff> = (0..d).map(|j| field.pow(&gen, j as u32)).collect();
    // Column j holds the coordinates of form * a^j.
    let m: Vec<Vec<MPoly>> = (0..d)
        .map(|r| {
            basis
                .iter()
                .map(|aj| {
                    coeffs.iter().enumerate().fold(MPoly::zero(space, &q), |acc, (i, c)| {
                        let entry: Rational = field.mul(c, aj)[r].clone();
                        acc.add(&MPoly::var(space, &q, i).scale_rational(&entry))
                    })
                })
                .collect()
        })
        .collect();
    determinant(m, space, &q)
}
