use super::matrix::QMatrix;
use crate::algebraic::AlgebraicNumber;
use crate::arith::{factor_over_rationals, Rational, UnivariatePoly};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Monic characteristic polynomial `det(xI - a)`.
pub fn char_poly(a: &QMatrix) -> Result<UnivariatePoly> {
    let mut c = a.berkowitz()?;
    c.reverse();
    Ok(UnivariatePoly::from_coeffs(c))
}

/// Jordan data attached to one irreducible factor of the characteristic polynomial.
#[derive(Clone, Debug)]
pub struct JordanFactor {
    pub factor: UnivariatePoly,
    /// Sizes of the blocks belonging to each root of `factor`, descending.
    pub block_sizes: Vec<usize>,
    /// One root of `factor`; the others are its conjugates.
    pub representative: AlgebraicNumber,
}

impl JordanFactor {
    pub fn conjugates(&self) -> usize {
        self.factor.degree() as usize
    }
}

#[derive(Clone, Debug)]
pub struct JordanStructure {
    pub factors: Vec<JordanFactor>,
}

impl JordanStructure {
    pub fn dimension(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.conjugates() * f.block_sizes.iter().sum::<usize>())
            .sum()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.factors.iter().all(|f| f.block_sizes.iter().all(|&s| s == 1))
    }

    pub fn all_rational(&self) -> bool {
        self.factors.iter().all(|f| f.factor.degree() == 1)
    }
}

/// Block sizes for every irreducible factor, from the ranks of `m(a)^j`.
/// Factors are ordered by degree then coefficients; sizes are descending.
pub fn jordan_structure(a: &QMatrix) -> Result<JordanStructure> {
    let cp = char_poly(a)?;
    if cp.coeff(0).is_zero() {
        return Err(Error::DominanceViolation("matrix is singular".into()));
    }
    let n = a.rows();
    let mut factors = Vec::new();
    for (m, mult) in factor_over_rationals(&cp)?.factors {
        let m = m.monic();
        let deg = m.degree() as usize;
        let b = a.eval_poly(&m)?;
        let mut ranks = vec![n];
        let mut pw = QMatrix::identity(n);
        for _ in 0..mult {
            pw = pw.mul(&b)?;
            ranks.push(pw.rank());
        }
        // at_least[j] = number of blocks of size >= j + 1
        let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / deg).collect();
        let mut block_sizes = Vec::new();
        for (j, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            block_sizes.extend(std::iter::repeat_n(j + 1, cnt - next));
        }
        block_sizes.sort_unstable_by(|x, y| y.cmp(x));
        let representative = AlgebraicNumber::roots_of(&m)?.remove(0);
        factors.push(JordanFactor { factor: m, block_sizes, representative });
    }
    Ok(JordanStructure { factors })
}

/// A rational Jordan block: eigenvalue and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBlock {
    pub eigenvalue: Rational,
    pub size: usize,
}

/// For a matrix with only rational eigenvalues, returns `P` and the blocks of
/// `J = P^-1 a P` (upper Jordan form, blocks in the order of
/// [`jordan_structure`]). `None` if some eigenvalue is irrational.
pub fn rational_jordan_basis(a: &QMatrix) -> Result<Option<(QMatrix, Vec<RationalBlock>)>> {
    let js = jordan_structure(a)?;
    if !js.all_rational() {
        return Ok(None);
    }
    let n = a.rows();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut blocks = Vec::new();
    for f in &js.factors {
        let lambda = -f.factor.coeff(0);
        let nil = a.sub(&QMatrix::identity(n).scale(&lambda))?;
        let mut bottoms: Vec<Vec<Rational>> = Vec::new();
        let mut sizes = f.block_sizes.clone();
        sizes.dedup();
        for &s in &sizes {
            let wanted = f.block_sizes.iter().filter(|&&x| x == s).count();
            let ns = nil.pow(s as u64)?;
            let ns1 = nil.pow(s as u64 - 1)?;
            let kernel = ns.nullspace();
            let units = (0..n).map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            });
            let candidates: Vec<Vec<Rational>> = units
                .filter(|e| ns.mul_vec(e).map(|v| v.iter().all(Zero::is_zero)).unwrap_or(false))
                .chain(kernel)
                .collect();
            let mut found = 0;
            for v in candidates {
                if found == wanted {
                    break;
                }
                let bottom = ns1.mul_vec(&v)?;
                if bottom.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut trial = bottoms.clone();
                trial.push(bottom.clone());
                if QMatrix::from_columns(&trial)?.rank() < trial.len() {
                    continue;
                }
                bottoms.push(bottom);
                let mut chain = vec![v];
                for _ in 1..s {
                    let next = nil.mul_vec(chain.last().unwrap())?;
                    chain.push(next);
                }
                chain.reverse();
                columns.extend(chain);
                blocks.push(RationalBlock { eigenvalue: lambda.clone(), size: s });
                found += 1;
            }
            if found < wanted {
                return Err(Error::Unsupported("Jordan chain construction failed".into()));
            }
        }
    }
    Ok(Some((QMatrix::from_columns(&columns)?, blocks)))
}

/// The Jordan matrix described by a list of rational blocks.
pub fn jordan_matrix(blocks: &[RationalBlock]) -> QMatrix {
    let n = blocks.iter().map(|b| b.size).sum();
    let mut j = QMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.size {
            j.set(at + i, at + i, b.eigenvalue.clone());
            if i + 1 < b.size {
                j.set(at + i, at + i + 1, Rational::one());
            }
        }
        at += b.size;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64(rows).unwrap()
    }

    /// Cofactor expansion of `det(xI - a)` with polynomial entries.
    fn cofactor_char_poly(a: &QMatrix) -> UnivariatePoly {
        fn det(m: &[Vec<UnivariatePoly>]) -> UnivariatePoly {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = UnivariatePoly::zero();
            for c in 0..m.len() {
                let minor: Vec<Vec<UnivariatePoly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][c] * &det(&minor);
                acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
        let n = a.rows();
        let m: Vec<Vec<UnivariatePoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UnivariatePoly::constant(-a.get(i, j).clone());
                        if i == j {
                            &c + &UnivariatePoly::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        det(&m)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&q(&[vec![2, 0], vec![0, 3]])).unwrap(), UnivariatePoly::from_ints(&[6, -5, 1]));
        assert_eq!(char_poly(&q(&[vec![0, 1], vec![1, 1]])).unwrap(), UnivariatePoly::from_ints(&[-1, -1, 1]));
        assert_eq!(char_poly(&q(&[vec![0, -1], vec![1, 0]])).unwrap(), UnivariatePoly::from_ints(&[1, 0, 1]));
        let m = q(&[vec![1, 2, 0, -1], vec![3, -1, 4, 2], vec![0, 5, 2, 1], vec![7, 0, -3, 1]]);
        assert_eq!(char_poly(&m).unwrap(), cofactor_char_poly(&m));
    }

    #[test]
    fn jordan_examples() {
        let js = jordan_structure(&q(&[vec![2, 0], vec![0, 2]])).unwrap();
        assert_eq!(js.factors[0].block_sizes, vec![1, 1]);
        let js = jordan_structure(&q(&[vec![2, 1], vec![0, 2]])).unwrap();
        assert_eq!(js.factors[0].block_sizes, vec![2]);
        let js = jordan_structure(&q(&[vec![2, 1, 0], vec![0, 2, 1], vec![0, 0, 2]])).unwrap();
        assert_eq!(js.factors[0].block_sizes, vec![3]);
        assert!(matches!(
            jordan_structure(&q(&[vec![0, 1], vec![0, 0]])),
            Err(Error::DominanceViolation(_))
        ));
    }

    #[test]
    fn jordan_basis_conjugates_to_jordan_form() {
        let a = q(&[vec![3, 1, 0], vec![-1, 1, 0], vec![1, 1, 2]]);
        let (p, blocks) = rational_jordan_basis(&a).unwrap().unwrap();
        let j = p.inverse().unwrap().mul(&a).unwrap().mul(&p).unwrap();
        assert_eq!(j, jordan_matrix(&blocks));
        assert_eq!(blocks.iter().map(|b| b.size).sum::<usize>(), 3);
    }

    #[test]
    fn jordan_input_gives_identity_basis() {
        let a = q(&[vec![5, 0, 0], vec![0, 2, 1], vec![0, 0, 2]]);
        let (p, blocks) = rational_jordan_basis(&a).unwrap().unwrap();
        assert!(p.is_identity());
        assert_eq!(blocks[1], RationalBlock { eigenvalue: rat(2), size: 2 });
        let b = q(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert!(rational_jordan_basis(&b).unwrap().unwrap().0.is_identity());
    }

    #[test]
    fn irrational_eigenvalues_have_no_rational_basis() {
        assert!(rational_jordan_basis(&q(&[vec![0, 1], vec![1, 1]])).unwrap().is_none());
    }
}
