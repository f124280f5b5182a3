//! Rank tests on monomial evaluation matrices along an orbit.

use crate::arith::modp::{inv_mod, mul_mod, pow_mod, reduce_bigint};
use crate::arith::primes::random_prime_62;
use crate::arith::Rational;
use crate::classify::{CoordinateSystem, WitnessPoint};
use crate::error::{Error, Result};
use crate::linalg::rational_jordan_basis;
use crate::symbolic::{evaluate_orbit, CoeffRing, GroupEndomorphism, MPoly, Monomial, OrbitPoint, TorusCoords, VarSpace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// How the rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// The vanishing polynomial was evaluated exactly at every sampled point.
    Exact,
    /// Elimination modulo random 62-bit primes. Full rank modulo a prime
    /// implies full rank over the rationals; a vanishing polynomial reported
    /// with this method was checked modulo further primes only.
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityOutcome {
    FullRank,
    /// Primitive integer polynomial, positive leading coefficient, vanishing
    /// at every sampled orbit point.
    VanishingPolynomial(MPoly),
    /// Rank deficient modulo every test prime, but no kernel vector could be
    /// reconstructed and confirmed.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub degree: u32,
    pub steps: usize,
    pub outcome: DensityOutcome,
    pub matrix_rank: usize,
    pub monomial_count: usize,
    pub method: RankMethod,
}

#[derive(Clone, Debug)]
pub struct DensityOptions {
    /// Largest monomial value, in bits, for which a vanishing polynomial is
    /// checked by exact evaluation.
    pub bit_budget: u64,
    pub seed: u64,
    /// Number of random primes for the modular rank.
    pub primes: usize,
}

/// Primes tried after the first `primes` before giving up on a kernel vector.
const MAX_EXTRA_PRIMES: usize = 40;

impl Default for DensityOptions {
    fn default() -> Self {
        Self { bit_budget: 1_000_000, seed: 0x0b17_5eed, primes: 3 }
    }
}

/// All exponent vectors in `n` variables of total degree at most `d`, in
/// increasing graded order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Orbit start in original coordinates.
fn start_point(phi: &GroupEndomorphism, alpha: &WitnessPoint) -> Result<OrbitPoint> {
    let space = phi.space();
    if alpha.additive.len() != space.additive || alpha.torus.len() != space.torus {
        return Err(Error::DimensionMismatch(format!(
            "witness has {} + {} coordinates, map acts on {} + {}",
            alpha.additive.len(),
            alpha.torus.len(),
            space.additive,
            space.torus
        )));
    }
    let mut p = alpha.to_orbit_point()?;
    if alpha.coordinate_system == CoordinateSystem::JordanCoordinates && space.additive > 0 {
        let (basis, _) = rational_jordan_basis(phi.additive())?.ok_or_else(|| {
            Error::Unsupported("Jordan coordinates need rational eigenvalues".into())
        })?;
        p.additive = basis.mul_vec(&p.additive)?;
    }
    Ok(p)
}

fn bits(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Upper bound on the size of any monomial value of degree `d` at `p`.
fn point_bits(p: &OrbitPoint, d: u32) -> u64 {
    let add: u64 = p.additive.iter().map(bits).sum();
    let torus: u64 = match &p.torus {
        TorusCoords::Values(v) => v.iter().map(bits).sum(),
        TorusCoords::Exponents { primes, exps } => exps
            .iter()
            .flatten()
            .zip(primes.iter().cycle())
            .map(|(e, &pr)| {
                let log = 64 - pr.leading_zeros() as u64;
                e.abs().to_u64().unwrap_or(u64::MAX / 4).saturating_mul(log)
            })
            .fold(0u64, u64::saturating_add),
    };
    add.saturating_add(torus).saturating_mul(d as u64)
}

fn exact_coordinates(p: &OrbitPoint) -> Result<Vec<Rational>> {
    let mut out = p.additive.clone();
    match &p.torus {
        TorusCoords::Values(v) => out.extend(v.iter().cloned()),
        TorusCoords::Exponents { primes, exps } => {
            for row in exps {
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for (e, &pr) in row.iter().zip(primes) {
                    let k = e.abs().to_u32().ok_or_else(|| Error::Unsupported("exponent too large".into()))?;
                    let f = num_traits::pow(BigInt::from(pr), k as usize);
                    if e.is_negative() {
                        den *= f;
                    } else {
                        num *= f;
                    }
                }
                out.push(Rational::new(num, den));
            }
        }
    }
    Ok(out)
}

fn modular_coordinates(p: &OrbitPoint, q: u64) -> Option<Vec<u64>> {
    let rational = |x: &Rational| -> Option<u64> {
        let d = reduce_bigint(x.denom(), q);
        (d != 0).then(|| mul_mod(reduce_bigint(x.numer(), q), inv_mod(d, q), q))
    };
    let mut out: Vec<u64> = p.additive.iter().map(rational).collect::<Option<_>>()?;
    match &p.torus {
        TorusCoords::Values(v) => out.extend(v.iter().map(rational).collect::<Option<Vec<_>>>()?),
        TorusCoords::Exponents { primes, exps } => {
            for row in exps {
                let mut acc = 1u64;
                for (e, &pr) in row.iter().zip(primes) {
                    // pr^e with e reduced modulo the group order q - 1
                    let r = e.mod_floor(&BigInt::from(q - 1)).to_u64().expect("reduced");
                    acc = mul_mod(acc, pow_mod(pr % q, r, q), q);
                }
                out.push(acc);
            }
        }
    }
    Some(out)
}

fn monomial_row_mod(coords: &[u64], monomials: &[Monomial], q: u64) -> Vec<u64> {
    monomials
        .iter()
        .map(|m| {
            m.0.iter()
                .zip(coords)
                .fold(1u64, |acc, (&e, &c)| mul_mod(acc, pow_mod(c, e as u64, q), q))
        })
        .collect()
}

/// Reduced row echelon form modulo `q`; returns the pivot columns.
fn rref_mod(m: &mut [Vec<u64>], q: u64) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = inv_mod(m[r][c], q);
        let pivot: Vec<u64> = m[r].iter().map(|&x| mul_mod(x, inv, q)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x = (*x + q - mul_mod(f, pv, q)) % q;
                }
            }
        }
        m[r] = pivot;
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Kernel vector with the first free column set to one, modulo `q`.
fn first_kernel_mod(m: &[Vec<u64>], pivots: &[usize], cols: usize, q: u64) -> Option<Vec<u64>> {
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![0u64; cols];
    v[free] = 1;
    for (row, &p) in pivots.iter().enumerate() {
        if p < free {
            v[p] = (q - m[row][free]) % q;
        }
    }
    Some(v)
}

/// `x` with `x = r mod m` and `|num|, den <= sqrt(m / 2)`, if it exists.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Scales to a primitive integer vector whose last nonzero entry is positive.
fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = if g.is_zero() { x } else { x / &g };
            if sign { -y } else { y }
        })
        .collect()
}

fn polynomial(space: VarSpace, monomials: &[Monomial], coeffs: &[BigInt]) -> MPoly {
    let ring = CoeffRing::rationals();
    monomials.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).fold(MPoly::zero(space, &ring), |acc, (m, c)| {
        acc.add(&MPoly::term(space, &ring, m.clone(), ring.from_rational(Rational::from_integer(c.clone()))))
    })
}

/// Rank test on the orbit points with the given indices.
fn density_on_indices(
    phi: &GroupEndomorphism,
    alpha: &WitnessPoint,
    degree: u32,
    indices: &[usize],
    steps: usize,
    opts: &DensityOptions,
) -> Result<DensityReport> {
    let space = phi.space();
    let monomials = monomials_up_to(space.len(), degree);
    let count = monomials.len();
    if indices.len() < count {
        return Err(Error::InsufficientSamples { needed: count, got: indices.len() });
    }
    let start = start_point(phi, alpha)?;
    let last = indices.iter().copied().max().unwrap_or(0);
    let orbit = evaluate_orbit(phi, &start, last)?;
    let points: Vec<&OrbitPoint> = indices.iter().map(|&i| &orbit[i]).collect();
    let report = |outcome, matrix_rank, method| DensityReport {
        degree,
        steps,
        outcome,
        matrix_rank,
        monomial_count: count,
        method,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draw_modular = |rng: &mut ChaCha8Rng| -> (u64, Vec<Vec<u64>>) {
        loop {
            let q = random_prime_62(rng);
            let rows: Option<Vec<Vec<u64>>> = points
                .iter()
                .map(|p| modular_coordinates(p, q).map(|c| monomial_row_mod(&c, &monomials, q)))
                .collect();
            if let Some(rows) = rows {
                return (q, rows);
            }
        }
    };
    let exact_ok = points.iter().all(|p| point_bits(p, degree) <= opts.bit_budget);
    let warmup = opts.primes.max(1);
    let mut best: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for round in 0..warmup + MAX_EXTRA_PRIMES {
        let (q, mut rows) = draw_modular(&mut rng);
        let pivots = rref_mod(&mut rows, q);
        if pivots.len() == count {
            return Ok(report(DensityOutcome::FullRank, count, RankMethod::Modular));
        }
        // Reduction can only lose rank or push pivots right, so the largest
        // rank with the earliest pivots is the one over the rationals.
        let better = best.as_ref().is_none_or(|b| {
            pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b)
        });
        let same = best.as_ref() == Some(&pivots);
        let v = first_kernel_mod(&rows, &pivots, count, q).expect("deficient rank has a free column");
        if better {
            residues = v.iter().map(|&x| BigInt::from(x)).collect();
            modulus = BigInt::from(q);
            best = Some(pivots);
        } else if same {
            let qb = BigInt::from(q);
            let inv = BigInt::from(inv_mod(reduce_bigint(&modulus, q), q));
            for (r, &x) in residues.iter_mut().zip(&v) {
                // r' = r + modulus * ((x - r) / modulus mod q)
                let diff = (BigInt::from(x) - &*r).mod_floor(&qb);
                *r = &*r + &modulus * ((diff * &inv).mod_floor(&qb));
            }
            modulus *= qb;
        } else {
            continue;
        }
        if round + 1 < warmup {
            continue;
        }
        let Some(kernel) = residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect::<Option<Vec<Rational>>>()
        else {
            continue;
        };
        let rank = best.as_ref().map_or(0, Vec::len);
        let coeffs = primitive_integer(&kernel);
        let poly = polynomial(space, &monomials, &coeffs);
        if exact_ok {
            let vanishes = points.iter().try_fold(true, |ok, p| {
                Ok::<_, Error>(ok && poly.eval_rational(&exact_coordinates(p)?).is_some_and(|v| v.is_zero()))
            })?;
            if vanishes {
                return Ok(report(DensityOutcome::VanishingPolynomial(poly), rank, RankMethod::Exact));
            }
            continue;
        }
        let confirmed = (0..warmup).all(|_| {
            let (q, rows) = draw_modular(&mut rng);
            let c: Vec<u64> = coeffs.iter().map(|x| reduce_bigint(x, q)).collect();
            rows.iter().all(|row| row.iter().zip(&c).fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, q)) % q) == 0)
        });
        if confirmed {
            return Ok(report(DensityOutcome::VanishingPolynomial(poly), rank, RankMethod::Modular));
        }
    }
    Ok(report(DensityOutcome::Inconclusive, best.map_or(0, |b| b.len()), RankMethod::Modular))
}

/// Evaluates all monomials of degree at most `degree` at the orbit points
/// `0..=steps` of `alpha` and reports the column rank of that matrix.
pub fn density_check(phi: &GroupEndomorphism, alpha: &WitnessPoint, degree: u32, steps: usize) -> Result<DensityReport> {
    density_check_with(phi, alpha, degree, steps, &DensityOptions::default())
}

pub fn density_check_with(
    phi: &GroupEndomorphism,
    alpha: &WitnessPoint,
    degree: u32,
    steps: usize,
    opts: &DensityOptions,
) -> Result<DensityReport> {
    let indices: Vec<usize> = (0..=steps).collect();
    density_on_indices(phi, alpha, degree, &indices, steps, opts)
}

/// [`density_check`] restricted to the orbit indices `start, start + stride,
/// ...` up to `steps`, once per `(start, stride)` progression.
pub fn suffix_density_check(
    phi: &GroupEndomorphism,
    alpha: &WitnessPoint,
    degree: u32,
    progressions: &[(usize, usize)],
    steps: usize,
) -> Result<Vec<DensityReport>> {
    let opts = DensityOptions::default();
    progressions
        .iter()
        .map(|&(start, stride)| {
            if stride == 0 {
                return Err(Error::InvalidWitness("progression stride must be positive".into()));
            }
            let indices: Vec<usize> = (start..=steps).step_by(stride).collect();
            density_on_indices(phi, alpha, degree, &indices, steps, &opts)
        })
        .collect()
}
