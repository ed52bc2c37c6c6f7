//! Rank-based certificates on two-generator algebras: the rank property of a
//! module along each axis, the equivalence with the Betti-number drop, the
//! descent step through cosyzygies, and the resulting classification of
//! syzygies of the trivial module.
//!
//! Everything here is for `c = 2`, written with `x` for the first generator
//! and `y` for the second.  Restricted to `k[x]`, a module of constant
//! stable Jordan type `[1]` or `[n-1]` splits into one nonprojective Jordan
//! chain and a free part; the rank property asks whether `y`-multiplication
//! moves the chain generator as far as possible:
//!
//! * stable type `[1]`: the generator `a` lies outside `rad M` and
//!   `y^{n-1} a != 0`;
//! * stable type `[n-1]`: `y^{n-1} x^{n-2} a != 0`;
//!
//! with the mirrored conditions along `y`.  A positive classification walks
//! the module through (co)syzygies down to the trivial module, which is a
//! proof in itself; the hypothesis checks are used to certify refusals.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::homology::{find_isomorphism, hom_space, projective_cover, split_free, syzygy,
    IsoVerdict};
use crate::jordan::{check_constant, CjtMethod};
use crate::matrix::{jordan_chains, Matrix, SpanAcc};
use crate::module::ModuleRep;
use crate::algebra::AutomorphismSpec;

const AXIS_NAMES: [&str; 2] = ["x", "y"];

/// The single nonprojective Jordan chain of the restriction to one axis.
#[derive(Debug, Clone)]
pub struct AxisComponent {
    /// 0 for `x`, 1 for `y`.
    pub axis: usize,
    /// Chain length; `n` would be free, so this is in `1..n`.
    pub length: usize,
    /// Chain head `a`: the component is spanned by `a, xa, …`.
    pub generator: Vec<u64>,
}

fn two_generators(m: &ModuleRep) -> Result<()> {
    if m.alg.c != 2 {
        return Err(Error::PreconditionUnmet(format!(
            "rank properties are defined for two generators, algebra has {}",
            m.alg.c
        )));
    }
    Ok(())
}

/// Finds the generator of the nonprojective component of the restriction to
/// `k[x]` (axis 0) or `k[y]` (axis 1).
pub fn nonprojective_generator(m: &ModuleRep, axis: usize) -> Result<AxisComponent> {
    two_generators(m)?;
    let f = &m.alg.field;
    let n = m.alg.n as usize;
    let chains = jordan_chains(&m.mats[axis], f)?;
    let mut nonfree: Vec<&Vec<Vec<u64>>> = chains.iter().filter(|ch| ch.len() < n).collect();
    match nonfree.len() {
        1 => {
            let chain = nonfree.pop().expect("one chain");
            Ok(AxisComponent {
                axis,
                length: chain.len(),
                generator: chain[0].clone(),
            })
        }
        count => Err(Error::NotSingleNonprojective {
            axis: AXIS_NAMES[axis],
            detail: format!(
                "restriction splits into {count} nonprojective chains and {} free ones",
                chains.len() - count
            ),
        }),
    }
}

fn radical_span(m: &ModuleRep) -> SpanAcc {
    let f = &m.alg.field;
    let mut acc = SpanAcc::new(m.d);
    for x in &m.mats {
        for c in 0..m.d {
            let col: Vec<u64> = (0..m.d).map(|r| x.at(r, c).0).collect();
            acc.insert(&col, f);
        }
    }
    acc
}

fn apply_powers(m: &ModuleRep, x_pow: u32, y_pow: u32, v: &[u64]) -> Vec<u64> {
    let f = &m.alg.field;
    let col = Matrix::column(v);
    let out = m.mats[1]
        .pow(y_pow, f)
        .mul(&m.mats[0].pow(x_pow, f), f)
        .mul(&col, f);
    out.data.clone()
}

fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// The two axis conditions for explicitly chosen generators, so that
/// independence of the generator choice can be exercised directly.
pub fn rp_conditions(m: &ModuleRep, a: &AxisComponent, b: &AxisComponent) -> (bool, bool) {
    let n = m.alg.n as u32;
    let f = &m.alg.field;
    let rad = radical_span(m);
    let rpx = if a.length == 1 {
        !rad.contains(&a.generator, f) && !is_zero_vec(&apply_powers(m, 0, n - 1, &a.generator))
    } else {
        !is_zero_vec(&apply_powers(m, n - 2, n - 1, &a.generator))
    };
    let rpy = if b.length == 1 {
        !rad.contains(&b.generator, f) && !is_zero_vec(&apply_powers(m, n - 1, 0, &b.generator))
    } else {
        !is_zero_vec(&apply_powers(m, n - 1, n - 2, &b.generator))
    };
    (rpx, rpy)
}

#[derive(Debug, Clone)]
pub struct RpReport {
    /// Length of the nonprojective chains: 1 or `n - 1`.
    pub stable_length: usize,
    pub rpx: bool,
    pub rpy: bool,
    /// Both axis properties together.
    pub rp: bool,
    pub beta0: usize,
    pub beta_minus1: usize,
}

/// Evaluates the rank property on both axes, with the Betti ranks around
/// degree zero for comparison.
pub fn check_rp(m: &ModuleRep) -> Result<RpReport> {
    two_generators(m)?;
    let n = m.alg.n as usize;
    let a = nonprojective_generator(m, 0)?;
    let b = nonprojective_generator(m, 1)?;
    if a.length != b.length {
        return Err(Error::PreconditionUnmet(format!(
            "axis chain lengths differ: {} over k[x], {} over k[y]",
            a.length, b.length
        )));
    }
    if a.length != 1 && a.length != n - 1 {
        return Err(Error::PreconditionUnmet(format!(
            "stable type must be [1] or [{}], the chain has length {}",
            n - 1,
            a.length
        )));
    }
    let (rpx, rpy) = rp_conditions(m, &a, &b);
    let beta0 = projective_cover(m)?.rank;
    let beta_minus1 = projective_cover(&syzygy(m, -1)?)?.rank;
    Ok(RpReport {
        stable_length: a.length,
        rpx,
        rpy,
        rp: rpx && rpy,
        beta0,
        beta_minus1,
    })
}

#[derive(Debug, Clone)]
pub struct RanksEquivalence {
    pub beta0: usize,
    pub beta_minus1: usize,
    /// `beta0 > beta_minus1`.
    pub cond_betti: bool,
    /// `a` outside the radical and `ya != 0` (type `[1]`) or
    /// `y x^{n-2} a != 0` (type `[n-1]`), for the `k[x]` generator `a`.
    pub cond_x: bool,
    /// The mirrored condition for the `k[y]` generator.
    pub cond_y: bool,
    /// Whether all three conditions agree.
    pub consistent: bool,
}

/// Evaluates the three equivalent single-step rank conditions side by side.
pub fn ranks_equivalence(m: &ModuleRep) -> Result<RanksEquivalence> {
    two_generators(m)?;
    let n = m.alg.n as u32;
    let a = nonprojective_generator(m, 0)?;
    let b = nonprojective_generator(m, 1)?;
    let rad = radical_span(m);
    let f = &m.alg.field;
    let cond_x = !rad.contains(&a.generator, f)
        && if a.length == 1 {
            !is_zero_vec(&apply_powers(m, 0, 1, &a.generator))
        } else {
            !is_zero_vec(&apply_powers(m, n - 2, 1, &a.generator))
        };
    let cond_y = !rad.contains(&b.generator, f)
        && if b.length == 1 {
            !is_zero_vec(&apply_powers(m, 1, 0, &b.generator))
        } else {
            !is_zero_vec(&apply_powers(m, 1, n - 2, &b.generator))
        };
    let beta0 = projective_cover(m)?.rank;
    let beta_minus1 = projective_cover(&syzygy(m, -1)?)?.rank;
    let cond_betti = beta0 > beta_minus1;
    Ok(RanksEquivalence {
        beta0,
        beta_minus1,
        cond_betti,
        cond_x,
        cond_y,
        consistent: cond_betti == cond_x && cond_x == cond_y,
    })
}

#[derive(Debug, Clone)]
pub enum DescentStep {
    /// The cosyzygy is one-dimensional, hence the trivial module.
    IsomorphicToK,
    /// The cosyzygy satisfies the rank property; descent continues.
    SatisfiesRp(Box<RpReport>),
    /// The cosyzygy neither is trivial nor keeps the property.
    Violation(String),
}

/// One reduction step: passes to the first cosyzygy and reports what became
/// of the rank property.
pub fn rp_descent_step(m: &ModuleRep) -> Result<(ModuleRep, DescentStep)> {
    two_generators(m)?;
    let next = syzygy(m, -1)?;
    if next.d == 1 {
        return Ok((next, DescentStep::IsomorphicToK));
    }
    let step = match check_rp(&next) {
        Ok(report) if report.rp => DescentStep::SatisfiesRp(Box::new(report)),
        Ok(report) => DescentStep::Violation(format!(
            "cosyzygy loses the rank property: rpx = {}, rpy = {}",
            report.rpx, report.rpy
        )),
        Err(err) => DescentStep::Violation(format!("cosyzygy is out of scope: {err}")),
    };
    Ok((next, step))
}

#[derive(Debug, Clone)]
pub enum SyzygyClass {
    /// Walking (co)syzygies reached the trivial module, proving
    /// `M = Omega^index(k)`.
    SyzygyOfK { index: i64 },
    /// A necessary condition fails, proving the module is no syzygy of `k`.
    NotSyzygyOfK { reason: String },
    /// Neither a proof nor a refutation was found.
    NotCertified { reason: String },
}

/// The two diagonal twists whose self-isomorphism characterizes syzygies of
/// the trivial module: `x -> x, y -> q^{-1} y` and `x -> q x, y -> y`.
pub fn characteristic_twists(m: &ModuleRep) -> (AutomorphismSpec, AutomorphismSpec) {
    let f = &m.alg.field;
    let qinv = f.inv(f.q).expect("q is a unit");
    let psi = AutomorphismSpec::diagonal(&m.alg, &[FieldElem(1), qinv]);
    let phi = AutomorphismSpec::diagonal(&m.alg, &[f.q, FieldElem(1)]);
    (psi, phi)
}

/// Decides whether the module is a syzygy of the trivial module.
///
/// A positive answer is reached constructively: the module is walked through
/// syzygies or cosyzygies, strictly shrinking, until the trivial module
/// appears.  Refutations come from certified failures of the necessary
/// conditions (free summands, non-constant type, wrong stable type, stable
/// endomorphism ring too large, twists provably not self-isomorphic).
pub fn classify_syzygy_of_k(m: &ModuleRep, seed: u64) -> Result<SyzygyClass> {
    two_generators(m)?;
    if m.d == 0 {
        return Ok(SyzygyClass::NotSyzygyOfK {
            reason: "the zero module is no syzygy".into(),
        });
    }
    let (free_rank, _) = split_free(m)?;
    if free_rank > 0 {
        return Ok(SyzygyClass::NotSyzygyOfK {
            reason: format!("module has a free summand of rank {free_rank}"),
        });
    }
    if m.d == 1 {
        return Ok(SyzygyClass::SyzygyOfK { index: 0 });
    }
    // constant stable type [1] or [n-1]
    let verdict = match check_constant(m, CjtMethod::Symbolic) {
        Ok(v) => v,
        Err(Error::MethodUnavailable(_)) => check_constant(m, CjtMethod::Exhaustive)?,
        Err(err) => return Err(err),
    };
    if !verdict.constant {
        return Ok(SyzygyClass::NotSyzygyOfK {
            reason: format!("Jordan type is not constant over {}", verdict.certified_over),
        });
    }
    let stable = verdict
        .jordan_type
        .expect("constant verdict carries a type")
        .stable();
    let n = m.alg.n as usize;
    let single = stable.blocks() == 1;
    let length_ok = single
        && stable
            .mults
            .iter()
            .enumerate()
            .any(|(i, &mult)| mult == 1 && (i + 1 == 1 || i + 1 == n - 1));
    if !length_ok {
        return Ok(SyzygyClass::NotSyzygyOfK {
            reason: format!(
                "constant stable type {} is not a single block [1] or [{}]",
                stable,
                n - 1
            ),
        });
    }
    let endo = hom_space(m, m)?;
    if endo.stable_dim != 1 {
        return Ok(SyzygyClass::NotSyzygyOfK {
            reason: format!(
                "stable endomorphism space has dimension {}",
                endo.stable_dim
            ),
        });
    }
    let (psi, phi) = characteristic_twists(m);
    for (name, aut) in [("psi", &psi), ("phi", &phi)] {
        match find_isomorphism(&m.twist(aut)?, m, seed)? {
            IsoVerdict::Isomorphic { .. } => {}
            IsoVerdict::NotIsomorphic { reason } => {
                return Ok(SyzygyClass::NotSyzygyOfK {
                    reason: format!("{name}-twist is not isomorphic: {reason}"),
                });
            }
            IsoVerdict::NotCertified { trials } => {
                return Ok(SyzygyClass::NotCertified {
                    reason: format!(
                        "{name}-twist isomorphism not found in {trials} trials"
                    ),
                });
            }
        }
    }
    // walk in the shrinking direction until the trivial module appears
    let down = syzygy(m, -1)?;
    let up = syzygy(m, 1)?;
    let (dir, mut cur): (i64, ModuleRep) = if down.d < m.d {
        (-1, down)
    } else if up.d < m.d {
        (1, up)
    } else {
        return Ok(SyzygyClass::NotCertified {
            reason: "neither syzygy nor cosyzygy shrinks the module".into(),
        });
    };
    let mut steps = 1i64;
    let limit = 2 * m.d as i64;
    let mut last = m.d;
    loop {
        if cur.d == 1 {
            // reached k after `steps` moves in direction `dir`, so the
            // module itself is the opposite syzygy of k
            return Ok(SyzygyClass::SyzygyOfK {
                index: -dir * steps,
            });
        }
        if cur.d >= last || steps >= limit {
            return Ok(SyzygyClass::NotCertified {
                reason: format!("walk stalled at dimension {} after {steps} steps", cur.d),
            });
        }
        last = cur.d;
        cur = syzygy(&cur, dir)?;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use crate::field::make_field;
    use crate::jordan::scan_types;
    use crate::module::sample_module_point;

    fn alg(p: u64, e: u32, n: u64, c: usize) -> AlgebraParams {
        AlgebraParams::new(make_field(p, e, n).unwrap(), c).unwrap()
    }

    fn a732() -> AlgebraParams {
        alg(7, 1, 3, 2)
    }

    #[test]
    fn generator_of_the_trivial_module() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let comp = nonprojective_generator(&k, 0).unwrap();
        assert_eq!(comp.length, 1);
        assert_eq!(comp.generator, vec![1]);
        // A / rad^3 restricts to chains of lengths 1, 2, 3: two nonprojective
        let m = a.radical_quotient_module(0, 3).unwrap();
        assert!(matches!(
            nonprojective_generator(&m, 0),
            Err(Error::NotSingleNonprojective { axis: "x", .. })
        ));
    }

    #[test]
    fn trivial_module_fails_rp() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let report = check_rp(&k).unwrap();
        assert_eq!(report.stable_length, 1);
        assert!(!report.rpx && !report.rpy && !report.rp);
        assert_eq!((report.beta0, report.beta_minus1), (1, 1));
    }

    #[test]
    fn syzygies_of_k_satisfy_rp() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        for i in 1..=3i64 {
            let s = syzygy(&k, i).unwrap();
            let report = check_rp(&s).unwrap();
            assert!(report.rp, "syzygy {i} satisfies the rank property");
            assert!(report.beta0 > report.beta_minus1, "syzygy {i} Betti drop");
            let expect_len = if i % 2 == 0 { 1 } else { 2 };
            assert_eq!(report.stable_length, expect_len);
        }
    }

    #[test]
    fn betti_drop_equivalence_on_syzygies_and_k() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let eq = ranks_equivalence(&k).unwrap();
        assert!(eq.consistent);
        assert!(!eq.cond_betti);
        for i in [-2i64, -1, 1, 2, 3] {
            let s = syzygy(&k, i).unwrap();
            let eq = ranks_equivalence(&s).unwrap();
            assert!(eq.consistent, "equivalence at syzygy {i}");
            // positive syzygies shrink toward k, cosyzygies grow
            assert_eq!(eq.cond_betti, i > 0, "direction at syzygy {i}");
        }
    }

    #[test]
    fn descent_steps_reach_k() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let s1 = syzygy(&k, 1).unwrap();
        let (next, step) = rp_descent_step(&s1).unwrap();
        assert_eq!(next.d, 1);
        assert!(matches!(step, DescentStep::IsomorphicToK));
        let s3 = syzygy(&k, 3).unwrap();
        let (next, step) = rp_descent_step(&s3).unwrap();
        assert_eq!(next.d, syzygy(&k, 2).unwrap().d);
        match step {
            DescentStep::SatisfiesRp(report) => assert!(report.rp),
            other => panic!("expected continued descent, got {other:?}"),
        }
    }

    #[test]
    fn classification_recovers_the_index() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        for i in [-2i64, -1, 0, 1, 2, 3] {
            let s = syzygy(&k, i).unwrap();
            match classify_syzygy_of_k(&s, 11).unwrap() {
                SyzygyClass::SyzygyOfK { index } => assert_eq!(index, i, "at syzygy {i}"),
                other => panic!("syzygy {i} not recognized: {other:?}"),
            }
        }
    }

    #[test]
    fn classification_refuses_counterexamples() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let free = ModuleRep::free(&a, 1);
        match classify_syzygy_of_k(&free, 0).unwrap() {
            SyzygyClass::NotSyzygyOfK { reason } => {
                assert!(reason.contains("free summand"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
        let kk = k.direct_sum(&k).unwrap();
        match classify_syzygy_of_k(&kk, 0).unwrap() {
            SyzygyClass::NotSyzygyOfK { reason } => {
                // constant type [1]^2 fails the single-block requirement
                assert!(reason.contains("stable type"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
        let quotient = a.radical_quotient_module(0, 3).unwrap();
        match classify_syzygy_of_k(&quotient, 0).unwrap() {
            SyzygyClass::NotSyzygyOfK { reason } => {
                assert!(reason.contains("stable type"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
        // x acts by zero, y by one Jordan block: not of constant type
        let d = a.n as usize;
        let mut y = crate::matrix::Matrix::zeros(d, d);
        for r in 1..d {
            y.set(r, r - 1, FieldElem(1));
        }
        let axis = ModuleRep {
            alg: a.clone(),
            d,
            mats: vec![crate::matrix::Matrix::zeros(d, d), y],
        };
        match classify_syzygy_of_k(&axis, 0).unwrap() {
            SyzygyClass::NotSyzygyOfK { reason } => {
                assert!(reason.contains("not constant"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twists_are_self_isomorphisms_on_syzygies() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let s2 = syzygy(&k, 2).unwrap();
        let (psi, phi) = characteristic_twists(&s2);
        for aut in [&psi, &phi] {
            assert!(aut.valid);
            let twisted = s2.twist(aut).unwrap();
            assert!(matches!(
                find_isomorphism(&twisted, &s2, 5).unwrap(),
                IsoVerdict::Isomorphic { .. }
            ));
        }
    }

    #[test]
    fn sampled_modules_classify_without_panicking() {
        let a = a732();
        for seed in 0..8u64 {
            let m = sample_module_point(&a, 4, seed).unwrap();
            let class = classify_syzygy_of_k(&m, seed).unwrap();
            if let SyzygyClass::SyzygyOfK { index } = class {
                let expect = syzygy(&ModuleRep::simple(&a), index).unwrap();
                assert_eq!(expect.d, 4, "seed {seed} claims syzygy {index}");
            }
        }
    }

    #[test]
    fn scan_confirms_type_parity_of_syzygies() {
        let a = a732();
        let k = ModuleRep::simple(&a);
        let s2 = syzygy(&k, 2).unwrap();
        let report = scan_types(&s2, 1).unwrap();
        assert!(report.is_constant());
        assert_eq!(report.classes[0].jordan_type.stable().compact(), "[1]");
    }
}
