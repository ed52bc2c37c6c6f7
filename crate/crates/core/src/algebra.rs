//! The quantum complete intersection
//! `A = k<x_1,…,x_c> / (x_i^n, x_i x_j - q x_j x_i  for i < j)`
//! over a [`FieldCtx`] whose `q` is a primitive `n'`-th root of unity.
//!
//! The monomial basis `x_1^{a_1} … x_c^{a_c}` (all exponents `< n`) is kept
//! sorted by total degree, then lex with earlier variables first.  Normal
//! ordering fixes the sign convention used everywhere in this crate:
//!
//! `x^a · x^b = q^{-s} x^{a+b}` with `s = Σ_{i<j} a_j b_i`,
//!
//! i.e. each factor of `b` with a smaller index crossing a factor of `a` with a
//! larger one contributes one inverse power of `q`.  The left regular
//! representation built from this rule satisfies `X_i X_j = q X_j X_i` for
//! `i < j`, which is what `validate_module` checks for every module.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::{inverse, Matrix};
use crate::module::ModuleRep;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    /// Exponent of each generator, all `< n`.
    pub exps: Vec<u16>,
}

impl Monomial {
    pub fn one(c: usize) -> Monomial {
        Monomial { exps: vec![0; c] }
    }

    pub fn generator(c: usize, i: usize) -> Monomial {
        let mut exps = vec![0u16; c];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&x| x as usize).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraParams {
    pub field: FieldCtx,
    pub c: usize,
    pub n: u64,
    /// `n^c`, the k-dimension of the algebra.
    pub dim: usize,
}

/// A candidate homogeneous automorphism `x_j -> Σ_i E[i][j] x_i`, together
/// with the verdict of relation checking.
#[derive(Debug, Clone)]
pub struct AutomorphismSpec {
    pub matrix: Matrix,
    pub valid: bool,
}

impl AutomorphismSpec {
    pub fn new(alg: &AlgebraParams, matrix: Matrix) -> AutomorphismSpec {
        let valid = alg.validate_automorphism(&matrix).is_ok();
        AutomorphismSpec { matrix, valid }
    }

    pub fn diagonal(alg: &AlgebraParams, diag: &[FieldElem]) -> AutomorphismSpec {
        let mut m = Matrix::zeros(alg.c, alg.c);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        AutomorphismSpec::new(alg, m)
    }
}

impl AlgebraParams {
    pub fn new(field: FieldCtx, c: usize) -> Result<AlgebraParams> {
        if c == 0 {
            return Err(Error::Unsupported("need at least one generator".into()));
        }
        let dim = (field.n as u128).checked_pow(c as u32).filter(|&d| d <= 1 << 24);
        let Some(dim) = dim else {
            return Err(Error::Unsupported(format!(
                "algebra dimension {}^{c} too large",
                field.n
            )));
        };
        let n = field.n;
        Ok(AlgebraParams {
            field,
            c,
            n,
            dim: dim as usize,
        })
    }

    /// Largest power of the radical that is nonzero is `c(n-1)`; the Loewy
    /// length is one more.
    pub fn loewy_length(&self) -> usize {
        self.c * (self.n as usize - 1) + 1
    }

    pub fn socle_monomial(&self) -> Monomial {
        Monomial {
            exps: vec![(self.n - 1) as u16; self.c],
        }
    }

    /// All monomials, sorted by total degree, then lex with `x_1` weighted
    /// heaviest (so `x_1^2` precedes `x_1 x_2` precedes `x_2^2`).
    pub fn monomial_basis(&self) -> Vec<Monomial> {
        let mut all = Vec::with_capacity(self.dim);
        let mut exps = vec![0u16; self.c];
        loop {
            all.push(Monomial { exps: exps.clone() });
            let mut i = self.c;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < self.n as u16 {
                    break;
                }
                exps[i] = 0;
            }
            if exps.iter().all(|&x| x == 0) {
                break;
            }
        }
        all.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| b.exps.cmp(&a.exps))
        });
        all
    }

    pub fn basis_index(&self) -> BTreeMap<Monomial, usize> {
        self.monomial_basis()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect()
    }

    /// Normal-ordered product of two basis monomials.
    ///
    /// `None` when some exponent reaches `n` (the product is zero in the
    /// algebra); otherwise the power of `q` picked up plus the exponent sum.
    pub fn monomial_mul(&self, a: &Monomial, b: &Monomial) -> Option<(i64, Monomial)> {
        let mut exps = Vec::with_capacity(self.c);
        for (&x, &y) in a.exps.iter().zip(&b.exps) {
            let s = x + y;
            if s >= self.n as u16 {
                return None;
            }
            exps.push(s);
        }
        let mut crossings: i64 = 0;
        for i in 0..self.c {
            for j in (i + 1)..self.c {
                crossings += a.exps[j] as i64 * b.exps[i] as i64;
            }
        }
        Some((-crossings, Monomial { exps }))
    }

    /// Phase of the normal-ordered product as a field element.
    pub fn mul_phase(&self, qexp: i64) -> FieldElem {
        self.field.q_pow(qexp)
    }

    /// Left-multiplication matrices `[X_1, …, X_c]` on the monomial basis.
    pub fn regular_representation(&self) -> Vec<Matrix> {
        let basis = self.monomial_basis();
        let index = self.basis_index();
        let mut mats = Vec::with_capacity(self.c);
        for i in 0..self.c {
            let gen = Monomial::generator(self.c, i);
            let mut m = Matrix::zeros(self.dim, self.dim);
            for (col, b) in basis.iter().enumerate() {
                if let Some((qexp, prod)) = self.monomial_mul(&gen, b) {
                    m.set(index[&prod], col, self.mul_phase(qexp));
                }
            }
            mats.push(m);
        }
        mats
    }

    /// The subquotient `r^s / r^t` of the regular module, with the monomials
    /// of degree in `[s, t)` as basis.
    pub fn radical_quotient_module(&self, s: usize, t: usize) -> Result<ModuleRep> {
        let ll = self.loewy_length();
        if s >= t || t > ll {
            return Err(Error::BadRange(format!(
                "need 0 <= s < t <= {ll}, got s={s}, t={t}"
            )));
        }
        let basis: Vec<Monomial> = self
            .monomial_basis()
            .into_iter()
            .filter(|m| (s..t).contains(&m.degree()))
            .collect();
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let d = basis.len();
        let mut mats = Vec::with_capacity(self.c);
        for i in 0..self.c {
            let gen = Monomial::generator(self.c, i);
            let mut m = Matrix::zeros(d, d);
            for (col, b) in basis.iter().enumerate() {
                if let Some((qexp, prod)) = self.monomial_mul(&gen, b) {
                    if prod.degree() < t {
                        m.set(index[&prod], col, self.mul_phase(qexp));
                    }
                }
            }
            mats.push(m);
        }
        Ok(ModuleRep {
            alg: self.clone(),
            d,
            mats,
        })
    }

    /// Checks that `x_j -> Σ_i E[i][j] x_i` preserves the defining relations:
    /// the matrix must be invertible, each image must be `n`-nilpotent, and the
    /// images must `q`-commute.  All checks run inside the faithful regular
    /// representation.
    pub fn validate_automorphism(&self, e_mat: &Matrix) -> Result<()> {
        if e_mat.rows != self.c || e_mat.cols != self.c {
            return Err(Error::InvalidAutomorphism(format!(
                "matrix is {}x{}, need {}x{}",
                e_mat.rows, e_mat.cols, self.c, self.c
            )));
        }
        if e_mat.data.iter().any(|&x| !self.field.is_valid(FieldElem(x))) {
            return Err(Error::InvalidAutomorphism("entry outside the field".into()));
        }
        if inverse(e_mat, &self.field).is_none() {
            return Err(Error::InvalidAutomorphism("matrix is singular".into()));
        }
        let reg = self.regular_representation();
        let f = &self.field;
        let images: Vec<Matrix> = (0..self.c)
            .map(|j| {
                let mut acc = Matrix::zeros(self.dim, self.dim);
                for (i, l) in reg.iter().enumerate() {
                    acc = acc.add(&l.scale(e_mat.at(i, j), f), f);
                }
                acc
            })
            .collect();
        for (j, y) in images.iter().enumerate() {
            if !y.pow(self.n as u32, f).is_zero() {
                return Err(Error::InvalidAutomorphism(format!(
                    "image of x_{} is not {}-nilpotent",
                    j + 1,
                    self.n
                )));
            }
        }
        for i in 0..self.c {
            for j in (i + 1)..self.c {
                let lhs = images[i].mul(&images[j], f);
                let rhs = images[j].mul(&images[i], f).scale(f.q, f);
                if lhs != rhs {
                    return Err(Error::InvalidAutomorphism(format!(
                        "images of x_{} and x_{} do not q-commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Diagonal Nakayama automorphism `x_i -> q^{m_i} x_i`, found by solving
    /// the Frobenius identity `pi(ab) = pi(b * nu(a))` by exhaustive search
    /// over the exponent tuples, where `pi` reads off the coefficient of the
    /// socle monomial.
    ///
    /// Returns the automorphism and the exponents `m_i` (reduced mod `n'`).
    pub fn nakayama_automorphism(&self) -> Result<(AutomorphismSpec, Vec<u64>)> {
        let np = self.field.n_prime;
        let socle = self.socle_monomial();
        // complementary pairs (a, b) with a + b = socle
        let pairs: Vec<(Monomial, Monomial)> = self
            .monomial_basis()
            .into_iter()
            .map(|a| {
                let b = Monomial {
                    exps: a
                        .exps
                        .iter()
                        .zip(&socle.exps)
                        .map(|(&x, &s)| s - x)
                        .collect(),
                };
                (a, b)
            })
            .collect();
        let mut found: Option<Vec<u64>> = None;
        let mut counter = vec![0u64; self.c];
        'outer: loop {
            let ok = pairs.iter().all(|(a, b)| {
                let (pa, _) = self.monomial_mul(a, b).expect("complementary pair");
                let (pb, _) = self.monomial_mul(b, a).expect("complementary pair");
                let twist: i64 = counter
                    .iter()
                    .zip(&a.exps)
                    .map(|(&m, &f)| m as i64 * f as i64)
                    .sum();
                self.mul_phase(pa) == self.field.mul(self.field.q_pow(twist), self.mul_phase(pb))
            });
            if ok {
                found = Some(counter.clone());
                break;
            }
            // next exponent tuple
            for slot in counter.iter_mut() {
                *slot += 1;
                if *slot < np {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
        let exps = found.ok_or(Error::InconsistentForm)?;
        let diag: Vec<FieldElem> = exps
            .iter()
            .map(|&m| self.field.q_pow(m as i64))
            .collect();
        let spec = AutomorphismSpec::diagonal(self, &diag);
        if !spec.valid {
            return Err(Error::InconsistentForm);
        }
        Ok((spec, exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn alg(p: u64, e: u32, n: u64, c: usize) -> AlgebraParams {
        AlgebraParams::new(make_field(p, e, n).unwrap(), c).unwrap()
    }

    #[test]
    fn basis_order_c2_n2() {
        let a = alg(3, 1, 2, 2);
        let basis = a.monomial_basis();
        let exps: Vec<Vec<u16>> = basis.iter().map(|m| m.exps.clone()).collect();
        assert_eq!(
            exps,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            "1, x, y, xy"
        );
    }

    #[test]
    fn basis_order_degree2_c3() {
        let a = alg(7, 1, 3, 3);
        let deg2: Vec<Vec<u16>> = a
            .monomial_basis()
            .into_iter()
            .filter(|m| m.degree() == 2)
            .map(|m| m.exps)
            .collect();
        assert_eq!(
            deg2,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
    }

    #[test]
    fn regular_representation_satisfies_relations() {
        for (p, n, c) in [(7u64, 3u64, 2usize), (3, 2, 2), (5, 2, 3), (7, 3, 3)] {
            let a = alg(p, 1, n, c);
            let f = &a.field;
            let reg = a.regular_representation();
            for x in &reg {
                assert!(x.pow(n as u32, f).is_zero(), "X^n = 0 at p={p} n={n} c={c}");
            }
            for i in 0..c {
                for j in (i + 1)..c {
                    let lhs = reg[i].mul(&reg[j], f);
                    let rhs = reg[j].mul(&reg[i], f).scale(f.q, f);
                    assert_eq!(lhs, rhs, "q-commutation at p={p} n={n} c={c}");
                }
            }
        }
    }

    #[test]
    fn left_multiplication_phases() {
        // c = 2, n = 2, q = -1 over GF(3): x·y = xy but y·x = -xy
        let a = alg(3, 1, 2, 2);
        let reg = a.regular_representation();
        // basis: 1, x, y, xy at indices 0..3
        assert_eq!(reg[0].at(3, 2), FieldElem(1), "x·y = xy");
        assert_eq!(reg[1].at(3, 1), FieldElem(2), "y·x = -xy");
    }

    #[test]
    fn radical_quotient_dimensions() {
        let a = alg(7, 1, 3, 2);
        assert_eq!(a.loewy_length(), 5);
        assert_eq!(a.radical_quotient_module(0, 3).unwrap().d, 6, "A/r^3");
        assert_eq!(a.radical_quotient_module(0, 5).unwrap().d, 9, "A itself");
        assert_eq!(a.radical_quotient_module(1, 2).unwrap().d, 2, "r/r^2");
        assert!(matches!(
            a.radical_quotient_module(2, 2),
            Err(Error::BadRange(_))
        ));
        assert!(matches!(
            a.radical_quotient_module(0, 6),
            Err(Error::BadRange(_))
        ));
    }

    #[test]
    fn radical_quotient_is_valid_module() {
        for (p, n, c) in [(7u64, 3u64, 2usize), (3, 2, 2), (5, 2, 3)] {
            let a = alg(p, 1, n, c);
            let ll = a.loewy_length();
            for s in 0..ll.min(3) {
                for t in (s + 1)..=ll {
                    let m = a.radical_quotient_module(s, t).unwrap();
                    m.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn automorphism_validation() {
        // q = 2 over GF(7), n = 3: diagonal maps pass, swaps fail
        let a = alg(7, 1, 3, 2);
        let diag = AutomorphismSpec::diagonal(&a, &[FieldElem(3), FieldElem(5)]);
        assert!(diag.valid);
        let swap = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            a.validate_automorphism(&swap),
            Err(Error::InvalidAutomorphism(_))
        ));
        let singular = Matrix::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert!(matches!(
            a.validate_automorphism(&singular),
            Err(Error::InvalidAutomorphism(_))
        ));

        // q = -1 over GF(3), n = 2: the swap and the (1,1;1,-1) map both work
        let b = alg(3, 1, 2, 2);
        assert!(b.validate_automorphism(&swap).is_ok());
        let hadamard = Matrix::from_rows(vec![vec![1, 1], vec![1, 2]]);
        assert!(b.validate_automorphism(&hadamard).is_ok());
    }

    #[test]
    fn nakayama_satisfies_frobenius_identity() {
        // independent oracle: multiply basis monomials through the regular
        // representation and read off the socle coefficient
        for (p, n, c) in [(7u64, 3u64, 2usize), (3, 2, 2), (5, 2, 3)] {
            let a = alg(p, 1, n, c);
            let f = &a.field;
            let (spec, exps) = a.nakayama_automorphism().unwrap();
            assert!(spec.valid);
            let reg = a.regular_representation();
            let basis = a.monomial_basis();
            let index = a.basis_index();
            let socle_ix = index[&a.socle_monomial()];
            let action = |m: &Monomial, v: &Matrix| -> Matrix {
                let mut out = v.clone();
                for i in (0..c).rev() {
                    for _ in 0..m.exps[i] {
                        out = reg[i].mul(&out, f);
                    }
                }
                out
            };
            let unit = Matrix::column(
                &(0..a.dim).map(|i| u64::from(i == 0)).collect::<Vec<_>>(),
            );
            for mb in &basis {
                for ma in &basis {
                    // pi(a b)
                    let ab = action(ma, &action(mb, &unit));
                    let lhs = ab.at(socle_ix, 0);
                    // pi(b nu(a)) with nu diagonal
                    let twist: i64 = exps
                        .iter()
                        .zip(&ma.exps)
                        .map(|(&m, &x)| m as i64 * x as i64)
                        .sum();
                    let ba = action(mb, &action(ma, &unit));
                    let rhs = f.mul(f.q_pow(twist), ba.at(socle_ix, 0));
                    assert_eq!(lhs, rhs, "p={p} n={n} c={c} a={ma:?} b={mb:?}");
                }
            }
        }
    }

    #[test]
    fn nakayama_exponents_frozen() {
        let a = alg(7, 1, 3, 2);
        let (_, exps) = a.nakayama_automorphism().unwrap();
        assert_eq!(exps, vec![2, 1], "nu(x) = q^2 x, nu(y) = q y");
        let b = alg(3, 1, 3, 2); // commutative: n' = 1
        let (spec, exps) = b.nakayama_automorphism().unwrap();
        assert_eq!(exps, vec![0, 0]);
        assert_eq!(spec.matrix, Matrix::identity(2));
    }
}
