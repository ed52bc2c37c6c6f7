//! Sparse homogeneous polynomials over GF(p^e).
//!
//! Terms are kept sorted in graded-lex order (equal degree throughout a
//! homogeneous polynomial, so the order is plain lex on exponent tuples,
//! largest first).  Coefficients are packed field encodings.
//!
//! [`binary_form_gcd`] computes the gcd of a family of binary forms by
//! dehomogenizing on the `x_2 = 1` chart, running Euclid on univariates, and
//! re-homogenizing with the common power of `x_2` restored.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    pub nvars: usize,
    pub degree: usize,
    /// Sorted lex-descending on exponent tuples; no zero coefficients.
    pub terms: Vec<(Vec<u16>, FieldElem)>,
}

impl HomogPoly {
    pub fn zero(nvars: usize, degree: usize) -> HomogPoly {
        HomogPoly {
            nvars,
            degree,
            terms: Vec::new(),
        }
    }

    /// Single-term polynomial; the exponents must sum to `degree`.
    pub fn monomial(nvars: usize, exps: Vec<u16>, coeff: FieldElem) -> HomogPoly {
        assert_eq!(exps.len(), nvars);
        let degree = exps.iter().map(|&x| x as usize).sum();
        let terms = if coeff.0 == 0 { Vec::new() } else { vec![(exps, coeff)] };
        HomogPoly {
            nvars,
            degree,
            terms,
        }
    }

    /// The variable `x_i` as a degree-1 form.
    pub fn variable(nvars: usize, i: usize) -> HomogPoly {
        let mut exps = vec![0u16; nvars];
        exps[i] = 1;
        HomogPoly::monomial(nvars, exps, FieldElem(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    fn check_compat(&self, other: &HomogPoly, op: &str) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "{op}: ({} vars, deg {}) vs ({} vars, deg {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogPoly, f: &FieldCtx) -> Result<HomogPoly> {
        self.check_compat(other, "add")?;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = if i == self.terms.len() {
                false
            } else if j == other.terms.len() {
                true
            } else {
                // lex-descending: larger tuple first
                match self.terms[i].0.cmp(&other.terms[j].0) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => {
                        let c = f.add(self.terms[i].1, other.terms[j].1);
                        if c.0 != 0 {
                            terms.push((self.terms[i].0.clone(), c));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                }
            };
            if pick {
                terms.push(self.terms[i].clone());
                i += 1;
            } else {
                terms.push(other.terms[j].clone());
                j += 1;
            }
        }
        Ok(HomogPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn neg(&self, f: &FieldCtx) -> HomogPoly {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = f.neg(t.1);
        }
        out
    }

    pub fn sub(&self, other: &HomogPoly, f: &FieldCtx) -> Result<HomogPoly> {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, s: FieldElem, f: &FieldCtx) -> HomogPoly {
        if s.0 == 0 {
            return HomogPoly::zero(self.nvars, self.degree);
        }
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = f.mul(t.1, s);
        }
        out
    }

    pub fn mul(&self, other: &HomogPoly, f: &FieldCtx) -> Result<HomogPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DegreeMismatch(format!(
                "mul: {} vars vs {} vars",
                self.nvars, other.nvars
            )));
        }
        let degree = self.degree + other.degree;
        let mut map: std::collections::BTreeMap<Vec<u16>, FieldElem> = Default::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                let c = f.mul(*ca, *cb);
                let slot = map.entry(exps).or_insert(FieldElem(0));
                *slot = f.add(*slot, c);
            }
        }
        let mut terms: Vec<(Vec<u16>, FieldElem)> =
            map.into_iter().filter(|(_, c)| c.0 != 0).collect();
        terms.reverse(); // BTreeMap iterates ascending; we keep descending
        Ok(HomogPoly {
            nvars: self.nvars,
            degree,
            terms,
        })
    }

    pub fn eval(&self, point: &[FieldElem], f: &FieldCtx) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = FieldElem(0);
        for (exps, coeff) in &self.terms {
            let mut term = *coeff;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = f.mul(term, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    /// Divides the leading coefficient out; no-op on zero.
    pub fn monic(&self, f: &FieldCtx) -> HomogPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lead)) => self.scale(f.inv(*lead).unwrap(), f),
        }
    }
}

/// Terms as `c*l1^2*l2`, joined with ` + `; coefficients print as packed
/// encodings.  The zero polynomial prints as `0`.
impl std::fmt::Display for HomogPoly {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return out.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, coeff)| {
                let mut parts = Vec::new();
                if coeff.0 != 1 || exps.iter().all(|&x| x == 0) {
                    parts.push(coeff.0.to_string());
                }
                for (i, &x) in exps.iter().enumerate() {
                    match x {
                        0 => {}
                        1 => parts.push(format!("l{}", i + 1)),
                        _ => parts.push(format!("l{}^{}", i + 1, x)),
                    }
                }
                parts.join("*")
            })
            .collect();
        out.write_str(&rendered.join(" + "))
    }
}

// --- univariate helpers for the binary gcd ---------------------------------

fn upoly_trim(v: &mut Vec<FieldElem>) {
    while v.last().map_or(false, |c| c.0 == 0) {
        v.pop();
    }
}

fn upoly_rem(mut a: Vec<FieldElem>, b: &[FieldElem], f: &FieldCtx) -> Vec<FieldElem> {
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).unwrap();
    while a.len() > db {
        let da = a.len() - 1;
        let factor = f.mul(a[da], lead_inv);
        if factor.0 != 0 {
            for i in 0..=db {
                let t = f.sub(a[da - db + i], f.mul(factor, b[i]));
                a[da - db + i] = t;
            }
        }
        a.pop();
        upoly_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn upoly_gcd(mut a: Vec<FieldElem>, mut b: Vec<FieldElem>, f: &FieldCtx) -> Vec<FieldElem> {
    upoly_trim(&mut a);
    upoly_trim(&mut b);
    while !b.is_empty() {
        let r = upoly_rem(a, &b, f);
        a = b;
        b = r;
    }
    a
}

/// Gcd of a family of binary forms, monic-normalized.
///
/// Errors with [`Error::AllZero`] if every input is zero; inputs must all have
/// `nvars == 2`.  A constant result certifies that the forms have no common
/// projective zero over any extension.
pub fn binary_form_gcd(polys: &[HomogPoly], f: &FieldCtx) -> Result<HomogPoly> {
    for p in polys {
        if p.nvars != 2 {
            return Err(Error::DegreeMismatch(format!(
                "binary gcd needs 2 variables, got {}",
                p.nvars
            )));
        }
    }
    let nonzero: Vec<&HomogPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }

    // dehomogenize on x2 = 1; track the factored-out power of x2
    let mut acc_univ: Option<Vec<FieldElem>> = None;
    let mut acc_x2 = usize::MAX;
    for p in nonzero {
        let mut coeffs = vec![FieldElem(0); p.degree + 1];
        for (exps, c) in &p.terms {
            coeffs[exps[0] as usize] = *c;
        }
        let max_x1 = p
            .terms
            .iter()
            .map(|(e, _)| e[0] as usize)
            .max()
            .unwrap();
        coeffs.truncate(max_x1 + 1);
        let x2_mult = p.degree - max_x1;
        acc_x2 = acc_x2.min(x2_mult);
        acc_univ = Some(match acc_univ {
            None => coeffs,
            Some(prev) => upoly_gcd(prev, coeffs, f),
        });
        if acc_x2 == 0 && acc_univ.as_ref().map_or(false, |u| u.len() == 1) {
            break; // gcd is already constant
        }
    }
    let univ = acc_univ.unwrap();
    let mut terms = Vec::new();
    let deg_u = univ.len() - 1;
    for (j, &c) in univ.iter().enumerate().rev() {
        if c.0 != 0 {
            terms.push((vec![j as u16, (deg_u - j + acc_x2) as u16], c));
        }
    }
    let out = HomogPoly {
        nvars: 2,
        degree: deg_u + acc_x2,
        terms,
    };
    Ok(out.monic(f))
}
