use super::builders::{build_invariant_case2, build_invariant_case3, orient, power_product, BlockRef};
use super::forms::{embed_coeff, left_chains, linear_form, norm_form};
use super::{Caveat, CoordinateSystem, FibrationWitness, Provenance, Verdict, VerdictKind, WitnessPoint};
use crate::algebraic::{multiplicative_dependence, AlgebraicNumber, Dependence};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{jordan_structure, rational_jordan_basis, JordanFactor, QMatrix};
use crate::symbolic::{Coeff, CoeffRing, MPoly, MultiRationalFunction, VarSpace};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Arc;

type Chain = Vec<Vec<Coeff>>;

/// Verdict together with the data the product classification needs.
pub(crate) struct AdditiveOutcome {
    pub verdict: Verdict,
    /// Eigenvalues whose independence was tested.
    pub eigenvalues: Vec<AlgebraicNumber>,
    /// `+-` norms of all eigenvalues.
    pub norms: Vec<Rational>,
}

struct Factor {
    data: JordanFactor,
    roots: Vec<AlgebraicNumber>,
    /// `Q` for a rational eigenvalue, otherwise `Q(a) = Q[a]/(factor)`.
    field: Arc<CoeffRing>,
    /// The eigenvalue as an element of `field`.
    lambda: Coeff,
}

/// One Jordan block over the algebraic closure.
#[derive(Clone, Copy, Debug)]
struct Slot {
    factor: usize,
    root: usize,
    block: usize,
    size: usize,
}

/// Conjugate eigenvalues used as generators of a tensor coefficient ring.
#[derive(Default)]
struct Generators {
    keys: Vec<(usize, usize)>,
}

impl Generators {
    fn index(&mut self, factors: &[Factor], s: &Slot) -> Option<usize> {
        if factors[s.factor].field.is_rationals() {
            return None;
        }
        let key = (s.factor, s.root);
        Some(self.keys.iter().position(|k| *k == key).unwrap_or_else(|| {
            self.keys.push(key);
            self.keys.len() - 1
        }))
    }

    fn ring(&self, factors: &[Factor]) -> Result<Arc<CoeffRing>> {
        CoeffRing::new(self.keys.iter().map(|&(f, _)| factors[f].data.factor.clone()).collect())
    }

    fn numbers(&self, factors: &[Factor]) -> Vec<AlgebraicNumber> {
        self.keys.iter().map(|&(f, r)| factors[f].roots[r].clone()).collect()
    }
}

struct Analysis<'a> {
    a: &'a QMatrix,
    factors: Vec<Factor>,
    slots: Vec<Slot>,
    chains: HashMap<usize, Vec<Chain>>,
}

impl<'a> Analysis<'a> {
    fn new(a: &'a QMatrix) -> Result<Self> {
        let js = jordan_structure(a)?;
        let mut factors = Vec::new();
        let mut slots = Vec::new();
        for (fi, data) in js.factors.into_iter().enumerate() {
            let (field, lambda, roots) = if data.factor.degree() == 1 {
                let q = CoeffRing::rationals();
                let lambda = q.from_rational(-data.factor.coeff(0));
                (q, lambda, vec![data.representative.clone()])
            } else {
                let field = CoeffRing::new(vec![data.factor.clone()])?;
                let lambda = field.generator(0);
                (field, lambda, AlgebraicNumber::roots_of(&data.factor)?)
            };
            for root in 0..roots.len() {
                for (block, &size) in data.block_sizes.iter().enumerate() {
                    slots.push(Slot { factor: fi, root, block, size });
                }
            }
            factors.push(Factor { data, roots, field, lambda });
        }
        Ok(Self { a, factors, slots, chains: HashMap::new() })
    }

    fn space(&self) -> VarSpace {
        VarSpace::new(self.a.rows(), 0)
    }

    fn eigenvalue(&self, s: &Slot) -> AlgebraicNumber {
        self.factors[s.factor].roots[s.root].clone()
    }

    fn chains(&mut self, factor: usize) -> Result<&[Chain]> {
        if !self.chains.contains_key(&factor) {
            let f = &self.factors[factor];
            let c = left_chains(self.a, &f.field, &f.lambda, &f.data.block_sizes)?;
            self.chains.insert(factor, c);
        }
        Ok(&self.chains[&factor])
    }

    /// The form with coefficients `coeffs` (in the factor's field) on `ring`.
    fn form(&self, s: &Slot, coeffs: &[Coeff], ring: &Arc<CoeffRing>, t: Option<usize>) -> MPoly {
        let f = &self.factors[s.factor];
        let c: Vec<Coeff> = coeffs.iter().map(|c| embed_coeff(c, &f.field, ring, t)).collect();
        linear_form(self.space(), ring, &c)
    }

    fn case3(&mut self, s: Slot) -> Result<FibrationWitness> {
        let mut gens = Generators::default();
        let t = gens.index(&self.factors, &s);
        let ring = gens.ring(&self.factors)?;
        let chain = self.chains(s.factor)?[s.block].clone();
        let f = &self.factors[s.factor];
        let lambda = embed_coeff(&f.lambda, &f.field, &ring, t);
        let jordan = build_invariant_case3(VarSpace::new(s.size, 0), &ring, &lambda, s.size, 0)?;
        let forms: Vec<MPoly> = chain.iter().map(|l| self.form(&s, l, &ring, t)).collect();
        Ok(FibrationWitness { function: pull_back(&jordan, &forms)?, generators: gens.numbers(&self.factors) })
    }

    fn case2(&mut self, s1: Slot, s2: Slot) -> Result<FibrationWitness> {
        let c1 = self.chains(s1.factor)?[s1.block].clone();
        let c2 = self.chains(s2.factor)?[s2.block].clone();
        // The block whose top form starts at the earlier coordinate comes first.
        let lead = |c: &Chain| c[0].iter().position(|x| x.iter().any(|q| !q.is_zero()));
        let (s1, s2, c1, c2) = if lead(&c2) < lead(&c1) { (s2, s1, c2, c1) } else { (s1, s2, c1, c2) };
        let mut gens = Generators::default();
        let t1 = gens.index(&self.factors, &s1);
        let t2 = gens.index(&self.factors, &s2);
        let ring = gens.ring(&self.factors)?;
        let (f1, f2) = (&self.factors[s1.factor], &self.factors[s2.factor]);
        let first = BlockRef { eigenvalue: embed_coeff(&f1.lambda, &f1.field, &ring, t1), offset: 0 };
        let second = BlockRef { eigenvalue: embed_coeff(&f2.lambda, &f2.field, &ring, t2), offset: 2 };
        let jordan = build_invariant_case2(VarSpace::new(4, 0), &ring, &first, &second)?;
        let forms: Vec<MPoly> = c1
            .iter()
            .map(|l| self.form(&s1, l, &ring, t1))
            .chain(c2.iter().map(|l| self.form(&s2, l, &ring, t2)))
            .collect();
        Ok(FibrationWitness { function: pull_back(&jordan, &forms)?, generators: gens.numbers(&self.factors) })
    }

    /// `prod_i l_i^c_i` over the eigen-covectors of the chosen blocks. When a
    /// relation uses all conjugates of a block with one exponent, their
    /// product is replaced by the rational norm form.
    fn monomial(&mut self, chosen: &[Slot], exponents: &[i64]) -> Result<FibrationWitness> {
        let mut c = exponents.to_vec();
        orient(&mut c);
        for s in chosen {
            self.chains(s.factor)?;
        }
        let bottom = |this: &Self, s: &Slot| -> Vec<Coeff> {
            this.chains[&s.factor][s.block].last().expect("nonempty chain").clone()
        };
        let mut by_block: HashMap<(usize, usize), Vec<i64>> = HashMap::new();
        for (s, &e) in chosen.iter().zip(&c) {
            by_block.entry((s.factor, s.block)).or_default().push(e);
        }
        let uniform = |s: &Slot| -> bool {
            let degree = self.factors[s.factor].roots.len();
            let es = &by_block[&(s.factor, s.block)];
            degree > 1 && es.len() == degree && es.iter().all(|&e| e == es[0])
        };
        enum Piece {
            Rational(MPoly),
            Conjugate(Slot),
        }
        let mut gens = Generators::default();
        let mut pieces = Vec::new();
        let mut normed = Vec::new();
        let q = CoeffRing::rationals();
        for (s, &e) in chosen.iter().zip(&c) {
            if e == 0 {
                continue;
            }
            let f = &self.factors[s.factor];
            if f.field.is_rationals() {
                pieces.push((Piece::Rational(self.form(s, &bottom(self, s), &q, None)), e));
            } else if uniform(s) {
                if !normed.contains(&(s.factor, s.block)) {
                    normed.push((s.factor, s.block));
                    pieces.push((Piece::Rational(norm_form(self.space(), &f.field, &bottom(self, s))), e));
                }
            } else {
                gens.index(&self.factors, s);
                pieces.push((Piece::Conjugate(*s), e));
            }
        }
        let ring = gens.ring(&self.factors)?;
        let factors = pieces
            .into_iter()
            .map(|(p, e)| {
                let base = match p {
                    Piece::Rational(m) => m.with_ring(&ring)?,
                    Piece::Conjugate(s) => {
                        let t = gens.keys.iter().position(|k| *k == (s.factor, s.root));
                        self.form(&s, &bottom(self, &s), &ring, t)
                    }
                };
                Ok((base, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FibrationWitness { function: power_product(&factors)?, generators: gens.numbers(&self.factors) })
    }

    fn dense_point(&self) -> Result<Vec<Rational>> {
        let k = self.a.rows();
        let ones = vec![Rational::one(); k];
        if let Some((p, _)) = rational_jordan_basis(self.a)? {
            return p.mul_vec(&ones);
        }
        cyclic_vector(self.a)
    }
}

fn pull_back(f: &MultiRationalFunction, forms: &[MPoly]) -> Result<MultiRationalFunction> {
    MultiRationalFunction::new(f.numerator().substitute(forms), f.denominator().substitute(forms))
}

/// A rational vector `v` with `v, a v, ..., a^(k-1) v` linearly independent.
fn cyclic_vector(a: &QMatrix) -> Result<Vec<Rational>> {
    let k = a.rows();
    let is_cyclic = |v: &[Rational]| -> Result<bool> {
        let mut cols = vec![v.to_vec()];
        for _ in 1..k {
            let next = a.mul_vec(cols.last().unwrap())?;
            cols.push(next);
        }
        Ok(QMatrix::from_columns(&cols)?.rank() == k)
    };
    let powers = (0..6u32).map(|t| (1..=k as i64).map(|i| Rational::from_integer(i.pow(t).into())).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random = (0..256).map(|_| (0..k).map(|_| Rational::from_integer(rng.gen_range(-9..=9).into())).collect());
    for v in powers.chain(random).collect::<Vec<Vec<Rational>>>() {
        if v.iter().any(|x: &Rational| !x.is_zero()) && is_cyclic(&v)? {
            return Ok(v);
        }
    }
    Err(Error::Unsupported("no cyclic vector found".into()))
}

fn dependence_caveat(d: &Dependence, bound: u32) -> Vec<Caveat> {
    match d {
        Dependence::IndependentUpToBound => vec![Caveat::EigenvaluesIndependentUpToBound(bound)],
        _ => Vec::new(),
    }
}

pub(crate) fn analyze(a1: &QMatrix, bound: u32) -> Result<AdditiveOutcome> {
    if !a1.is_square() {
        return Err(Error::NotSquare { rows: a1.rows(), cols: a1.cols() });
    }
    let mut an = Analysis::new(a1)?;
    let norms: Vec<Rational> = an
        .factors
        .iter()
        .map(|f| {
            let c = f.data.factor.coeff(0);
            if f.data.factor.degree() % 2 == 0 { c } else { -c }
        })
        .collect();
    let fibration = |w: FibrationWitness, provenance: Provenance, caveats: Vec<Caveat>| Verdict {
        kind: VerdictKind::Fibration(w),
        provenance,
        caveats,
    };
    let dense = |point: Vec<Rational>, caveats: Vec<Caveat>| Verdict {
        kind: VerdictKind::Dense(WitnessPoint {
            additive: point,
            torus: Vec::new(),
            coordinate_system: CoordinateSystem::OriginalCoordinates,
        }),
        provenance: Provenance::DenseAdditive,
        caveats,
    };
    if a1.rows() == 0 {
        return Ok(AdditiveOutcome { verdict: dense(Vec::new(), Vec::new()), eigenvalues: Vec::new(), norms });
    }
    let slots = an.slots.clone();
    if let Some(&s) = slots.iter().find(|s| s.size >= 3) {
        let w = an.case3(s)?;
        return Ok(AdditiveOutcome { verdict: fibration(w, Provenance::Case3, Vec::new()), eigenvalues: Vec::new(), norms });
    }
    let pairs: Vec<Slot> = slots.iter().copied().filter(|s| s.size == 2).collect();
    if pairs.len() >= 2 {
        let w = an.case2(pairs[0], pairs[1])?;
        return Ok(AdditiveOutcome { verdict: fibration(w, Provenance::Case2, Vec::new()), eigenvalues: Vec::new(), norms });
    }
    // Remaining blocks have size one, except possibly a single block of size two.
    let chosen: Vec<Slot> = pairs.iter().chain(slots.iter().filter(|s| s.size == 1)).copied().collect();
    let eigenvalues: Vec<AlgebraicNumber> = chosen.iter().map(|s| an.eigenvalue(s)).collect();
    let provenance = if pairs.is_empty() { Provenance::DiagonalMonomial } else { Provenance::Case1 };
    let dep = multiplicative_dependence(&eigenvalues, bound)?;
    let verdict = match &dep {
        Dependence::Dependent(w) => fibration(an.monomial(&chosen, w.exponents())?, provenance, Vec::new()),
        _ => dense(an.dense_point()?, dependence_caveat(&dep, bound)),
    };
    Ok(AdditiveOutcome { verdict, eigenvalues, norms })
}

/// Classifies the additive map `x -> a1 x` on its own.
pub fn classify_additive(a1: &QMatrix, bound: u32) -> Result<Verdict> {
    Ok(analyze(a1, bound)?.verdict)
}
