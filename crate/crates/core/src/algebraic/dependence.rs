use super::number::{product_of_powers, AlgebraicNumber};
use crate::arith::primes::{coprime_base, exponents_over};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, lll_reduce, normalize_sign, ZMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer exponents `c`, not all zero, with `prod nums[i]^c[i] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DependenceWitness(Vec<i64>);

impl DependenceWitness {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.iter().all(|&c| c == 0) {
            return Err(Error::InvalidWitness("all exponents are zero".into()));
        }
        Ok(Self(exponents))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    /// Exact check that the product of powers equals one.
    pub fn holds_for(&self, nums: &[AlgebraicNumber]) -> Result<bool> {
        Ok(product_of_powers(nums, &self.0)?.is_one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Dependent(DependenceWitness),
    /// Certified: no nontrivial relation exists.
    Independent,
    /// No relation with entries bounded by the search bound.
    IndependentUpToBound,
}

impl Dependence {
    pub fn witness(&self) -> Option<&DependenceWitness> {
        match self {
            Dependence::Dependent(w) => Some(w),
            _ => None,
        }
    }
}

const WEIGHTS: [u32; 4] = [16, 24, 32, 40];
const BRUTE_FORCE_BUDGET: u64 = 20_000;

/// Decides whether `nums` satisfy a multiplicative relation. All-rational
/// input gets an exact answer; otherwise relations with entries up to `bound`
/// are searched and each candidate is verified exactly before it is returned.
pub fn multiplicative_dependence(nums: &[AlgebraicNumber], bound: u32) -> Result<Dependence> {
    if nums.iter().any(AlgebraicNumber::is_zero) {
        return Err(Error::ZeroInput);
    }
    let rationals: Vec<Option<Rational>> = nums.iter().map(AlgebraicNumber::as_rational).collect();
    if rationals.iter().all(Option::is_some) {
        let qs: Vec<Rational> = rationals.into_iter().flatten().collect();
        return rational_dependence(&qs);
    }
    for (i, a) in nums.iter().enumerate() {
        if let Some(n) = a.is_root_of_unity()? {
            let mut c = vec![0; nums.len()];
            c[i] = n as i64;
            return Ok(Dependence::Dependent(DependenceWitness(c)));
        }
    }
    let rational_idx: Vec<usize> = (0..nums.len()).filter(|&i| rationals[i].is_some()).collect();
    if rational_idx.len() > 1 {
        let qs: Vec<Rational> = rational_idx.iter().map(|&i| rationals[i].clone().unwrap()).collect();
        if let Dependence::Dependent(w) = rational_dependence(&qs)? {
            let mut c = vec![0; nums.len()];
            for (&i, &e) in rational_idx.iter().zip(w.exponents()) {
                c[i] = e;
            }
            return Ok(Dependence::Dependent(DependenceWitness(c)));
        }
    }
    let logs = log_coordinates(nums)?;
    for w in WEIGHTS {
        for c in lattice_candidates(&logs, w, bound) {
            if let Some(found) = verified(nums, c)? {
                return Ok(Dependence::Dependent(found));
            }
        }
    }
    for c in brute_force_candidates(&logs, bound) {
        if let Some(found) = verified(nums, c)? {
            return Ok(Dependence::Dependent(found));
        }
    }
    Ok(Dependence::IndependentUpToBound)
}

fn verified(nums: &[AlgebraicNumber], mut c: Vec<i64>) -> Result<Option<DependenceWitness>> {
    if c.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    let w = DependenceWitness(c);
    Ok(w.holds_for(nums)?.then_some(w))
}

/// Exact relation lattice of nonzero rationals, via exponents over a coprime
/// base plus a sign coordinate taken mod 2.
fn rational_dependence(qs: &[Rational]) -> Result<Dependence> {
    let r = qs.len();
    let parts: Vec<BigInt> = qs.iter().flat_map(|q| [q.numer().clone(), q.denom().clone()]).collect();
    let base = coprime_base(&parts);
    let mut rows = vec![vec![BigInt::zero(); r + 1]; base.len() + 1];
    for (i, q) in qs.iter().enumerate() {
        let num = exponents_over(q.numer(), &base).expect("coprime base covers inputs");
        let den = exponents_over(q.denom(), &base).expect("coprime base covers inputs");
        for j in 0..base.len() {
            rows[j][i] = BigInt::from(num[j] - den[j]);
        }
        if q.is_negative() {
            rows[base.len()][i] = BigInt::one();
        }
    }
    // Slack column: sum of sign bits must be even.
    rows[base.len()][r] = BigInt::from(-2);
    let kernel = integer_kernel(&ZMatrix::from_rows(rows)?);
    let mut relations: Vec<Vec<BigInt>> = kernel.into_iter().map(|mut v| {
        v.truncate(r);
        v
    }).collect();
    if relations.is_empty() {
        return Ok(Dependence::Independent);
    }
    lll_reduce(&mut relations);
    let shortest = relations
        .into_iter()
        .map(|mut v| {
            normalize_sign(&mut v);
            v
        })
        .min_by(|a, b| {
            let na: BigInt = a.iter().map(|x| x * x).sum();
            let nb: BigInt = b.iter().map(|x| x * x).sum();
            na.cmp(&nb).then_with(|| b.cmp(a))
        })
        .unwrap();
    let c = shortest
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Unsupported("relation exponent overflows i64".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dependence::Dependent(DependenceWitness(c)))
}

/// `(log|a|, arg a)` for each input.
fn log_coordinates(nums: &[AlgebraicNumber]) -> Result<Vec<(f64, f64)>> {
    let w = Rational::new(BigInt::one(), BigInt::one() << 64u32);
    nums.iter()
        .map(|a| {
            let z = a.refine(&w)?.approx();
            Ok((z.norm().ln(), z.arg()))
        })
        .collect()
}

fn lattice_candidates(logs: &[(f64, f64)], weight_bits: u32, bound: u32) -> Vec<Vec<i64>> {
    let r = logs.len();
    let w = 2f64.powi(weight_bits as i32);
    let mut basis: Vec<Vec<BigInt>> = logs
        .iter()
        .enumerate()
        .map(|(i, &(lg, ar))| {
            let mut row: Vec<BigInt> = (0..r).map(|j| BigInt::from((i == j) as i64)).collect();
            row.push(BigInt::from((w * lg).round() as i64));
            row.push(BigInt::from((w * ar).round() as i64));
            row
        })
        .collect();
    let mut turn = vec![BigInt::zero(); r + 1];
    turn.push(BigInt::from((w * std::f64::consts::TAU).round() as i64));
    basis.push(turn);
    lll_reduce(&mut basis);
    basis
        .into_iter()
        .filter_map(|v| {
            let c: Option<Vec<i64>> = v[..r].iter().map(|x| x.to_i64()).collect();
            c.filter(|c| c.iter().any(|&x| x != 0) && c.iter().all(|x| x.unsigned_abs() <= bound as u64))
        })
        .collect()
}

fn numerically_trivial(logs: &[(f64, f64)], c: &[i64]) -> bool {
    let (mut lg, mut ar) = (0.0, 0.0);
    for (&(l, a), &e) in logs.iter().zip(c) {
        lg += e as f64 * l;
        ar += e as f64 * a;
    }
    let turns = ar / std::f64::consts::TAU;
    lg.abs() < 1e-6 && (turns - turns.round()).abs() < 1e-6
}

/// Exponent vectors in a small box, first nonzero entry positive, that pass
/// a floating-point filter.
fn brute_force_candidates(logs: &[(f64, f64)], bound: u32) -> Vec<Vec<i64>> {
    let r = logs.len() as u32;
    let mut half = 0i64;
    while half < bound as i64 && (2 * (half + 1) as u64 + 1).saturating_pow(r) <= BRUTE_FORCE_BUDGET {
        half += 1;
    }
    let mut out = Vec::new();
    let mut c = vec![-half; r as usize];
    loop {
        if c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) && numerically_trivial(logs, &c) {
            out.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == c.len() {
                return out;
            }
            if c[i] < half {
                c[i] += 1;
                break;
            }
            c[i] = -half;
            i += 1;
        }
    }
}
