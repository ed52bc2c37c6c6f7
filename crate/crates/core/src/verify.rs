//! Grid-driven verification harness: builds a module corpus over a grid of
//! algebra configurations and runs the full battery of cross-checks that
//! gates a release.  Every check returns a pass/fail outcome with a short
//! detail line; a failing check names the offending module and point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraParams, AutomorphismSpec};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldElem};
use crate::homology::{
    ar_translate, betti_sequence, complexity_estimate, find_isomorphism, hom_space,
    projective_cover, split_free, syzygy, syzygy_type_prediction, IsoVerdict,
};
use crate::jordan::{
    check_constant, generic_rank_profile, minor_polys, partition_from_ranks, point_types,
    scan_types, CjtMethod,
};
use crate::matrix::{inverse, jordan_chains, rank, Matrix};
use crate::module::{sample_module_point, JordanType, ModuleRep};
use crate::rank_property::{
    characteristic_twists, check_rp, classify_syzygy_of_k, nonprojective_generator,
    ranks_equivalence, rp_conditions, rp_descent_step, AxisComponent, DescentStep, SyzygyClass,
};

#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    pub p: u64,
    pub e_max: u32,
    pub n: u64,
    pub c: usize,
}

impl GridPoint {
    pub fn label(&self) -> String {
        format!("(p={}, e<={}, n={}, c={})", self.p, self.e_max, self.n, self.c)
    }
}

/// The release grid: two 2-generator algebras and one 3-generator algebra.
pub fn default_grid() -> Vec<GridPoint> {
    vec![
        GridPoint { p: 3, e_max: 3, n: 2, c: 2 },
        GridPoint { p: 7, e_max: 3, n: 3, c: 2 },
        GridPoint { p: 5, e_max: 2, n: 2, c: 3 },
    ]
}

pub fn algebra_at(gp: &GridPoint) -> Result<AlgebraParams> {
    AlgebraParams::new(make_field(gp.p, 1, gp.n)?, gp.c)
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn fail(msg: String) -> Error {
    Error::CheckFailed(msg)
}

fn outcome(name: &'static str, r: Result<String>) -> CheckOutcome {
    match r {
        Ok(detail) => CheckOutcome { name, pass: true, detail },
        Err(Error::CheckFailed(detail)) => CheckOutcome { name, pass: false, detail },
        Err(err) => CheckOutcome { name, pass: false, detail: err.to_string() },
    }
}

fn jordan_block(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for r in 1..d {
        m.set(r, r - 1, FieldElem(1));
    }
    m
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn add_types(a: &JordanType, b: &JordanType) -> JordanType {
    let mults = a
        .mults
        .iter()
        .zip(&b.mults)
        .map(|(&x, &y)| x + y)
        .collect();
    JordanType::new(a.n, mults)
}

/// Stable type with block sizes mirrored: `[a]` becomes `[n - a]`.
fn reversed_stable(jt: &JordanType) -> JordanType {
    let n = jt.n as usize;
    let mut mults = vec![0usize; n];
    for i in 0..n - 1 {
        mults[i] = jt.mults[n - 2 - i];
    }
    JordanType::new(jt.n, mults)
}

/// Corpus of labeled modules over the base field of a grid point.
pub fn build_corpus(a: &AlgebraParams) -> Result<Vec<(String, ModuleRep)>> {
    let n = a.n as usize;
    let ll = a.loewy_length();
    let k = ModuleRep::simple(a);
    let free = ModuleRep::free(a, 1);
    let ar2 = a.radical_quotient_module(0, 2)?;
    let ar3 = a.radical_quotient_module(0, 3.min(ll))?;
    let rad = a.radical_quotient_module(1, ll)?;
    let o1k = syzygy(&k, 1)?;
    let mut corpus = vec![
        ("k".to_string(), k.clone()),
        ("A".to_string(), free),
        ("A/r2".to_string(), ar2),
        ("A/r3".to_string(), ar3.clone()),
        ("rad".to_string(), rad),
        ("O1k".to_string(), o1k.clone()),
        ("O2k".to_string(), syzygy(&k, 2)?),
        ("O-1k".to_string(), syzygy(&k, -1)?),
        ("sum-k-A".to_string(), k.direct_sum(&ModuleRep::free(a, 1))?),
        ("sum-k-O1k".to_string(), k.direct_sum(&o1k)?),
    ];
    // x acts by zero and the last generator by one full Jordan block
    let mut axis_mats = vec![Matrix::zeros(n, n); a.c];
    axis_mats[a.c - 1] = jordan_block(n);
    let axis = ModuleRep { alg: a.clone(), d: n, mats: axis_mats };
    axis.validate()?;
    corpus.push(("axis".to_string(), axis));
    // x acts by the 2-dimensional nilpotent block, everything else by zero
    let mut pair_mats = vec![Matrix::zeros(2, 2); a.c];
    pair_mats[0] = jordan_block(2);
    let pair = ModuleRep { alg: a.clone(), d: 2, mats: pair_mats };
    pair.validate()?;
    corpus.push(("pair".to_string(), pair));
    if a.c == 2 {
        let o1q = syzygy(&ar3, 1)?;
        if o1q.d > 0 {
            corpus.push(("O1(A/r3)".to_string(), o1q));
        }
        corpus.push(("sample-d3".to_string(), sample_module_point(a, 3, 11)?));
        corpus.push(("sample-d4".to_string(), sample_module_point(a, 4, 12)?));
    }
    Ok(corpus)
}

fn expected_quotient_type(n: u64, c: usize) -> JordanType {
    let mut mults = vec![0usize; n as usize];
    if n >= 3 {
        mults[0] = c * (c - 1) / 2;
        mults[1] = c - 1;
        mults[2] = 1;
    } else {
        mults[0] = (c - 1) * (c - 2) / 2;
        mults[1] = c;
    }
    JordanType::new(n, mults)
}

/// Trivial, free, and third-radical-quotient modules have their known types
/// at every point of every scanned extension.
pub fn check_golden_types(grid: &[GridPoint]) -> CheckOutcome {
    outcome("golden types", (|| {
        let mut scans = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let n = gp.n as usize;
            let k = ModuleRep::simple(&a);
            let free = ModuleRep::free(&a, 1);
            let ar3 = a.radical_quotient_module(0, 3.min(a.loewy_length()))?;
            let mut free_type = vec![0usize; n];
            free_type[n - 1] = (gp.n as usize).pow(gp.c as u32 - 1);
            let cases = [
                ("k", &k, JordanType::new(gp.n, {
                    let mut m = vec![0; n];
                    m[0] = 1;
                    m
                })),
                ("A", &free, JordanType::new(gp.n, free_type)),
                ("A/r3", &ar3, expected_quotient_type(gp.n, gp.c)),
            ];
            for e in 1..=gp.e_max {
                for (label, m, want) in &cases {
                    let rep = scan_types(m, e)?;
                    if !rep.is_constant() || rep.classes[0].jordan_type != *want {
                        return Err(fail(format!(
                            "{} {label} at e={e}: expected {} everywhere, got {} classes, first {}",
                            gp.label(),
                            want,
                            rep.classes.len(),
                            rep.classes[0].jordan_type
                        )));
                    }
                    scans += 1;
                }
            }
        }
        Ok(format!("{} grid points, {scans} scans", grid.len()))
    })())
}

/// Dimension count, direct-sum additivity, and dual invariance of the type,
/// at every scanned point.
pub fn check_type_identities(grid: &[GridPoint]) -> CheckOutcome {
    outcome("type identities", (|| {
        let mut points = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let corpus = build_corpus(&a)?;
            let e = gp.e_max.min(2);
            for (label, m) in &corpus {
                if m.d == 0 {
                    continue;
                }
                let pts = point_types(m, e)?;
                let dual = m.dual();
                let dual_pts = point_types(&dual, e)?;
                for ((lambda, jt), (_, jt_dual)) in pts.iter().zip(&dual_pts) {
                    if jt.dim() != m.d {
                        return Err(fail(format!(
                            "{} {label}: type {} at {:?} sums to {} instead of {}",
                            gp.label(), jt, lambda, jt.dim(), m.d
                        )));
                    }
                    if jt != jt_dual {
                        return Err(fail(format!(
                            "{} {label}: dual type {} differs from {} at {:?}",
                            gp.label(), jt_dual, jt, lambda
                        )));
                    }
                    points += 1;
                }
            }
            let find = |want: &str| -> &ModuleRep {
                &corpus.iter().find(|(l, _)| l == want).expect("corpus label").1
            };
            for (la, lb) in [("k", "A"), ("k", "O1k"), ("A/r3", "axis")] {
                let (ma, mb) = (find(la), find(lb));
                let sum = ma.direct_sum(mb)?;
                let pa = point_types(ma, e)?;
                let pb = point_types(mb, e)?;
                let ps = point_types(&sum, e)?;
                for (((lambda, ja), (_, jb)), (_, js)) in pa.iter().zip(&pb).zip(&ps) {
                    if add_types(ja, jb) != *js {
                        return Err(fail(format!(
                            "{} {la}+{lb}: sum type {} is not {} + {} at {:?}",
                            gp.label(), js, ja, jb, lambda
                        )));
                    }
                }
            }
        }
        Ok(format!("{points} pointwise identities"))
    })())
}

/// Sums of constant-type modules are constant with the added type; a sum
/// with a non-constant summand is never constant.
pub fn check_sum_constancy(grid: &[GridPoint]) -> CheckOutcome {
    outcome("sum constancy", (|| {
        let Some(gp) = grid.iter().find(|g| g.c == 2 && g.n >= 3).or(grid.first()) else {
            return Err(fail("empty grid".into()));
        };
        let a = algebra_at(gp)?;
        let corpus = build_corpus(&a)?;
        let pick = |want: &str| -> &ModuleRep {
            &corpus.iter().find(|(l, _)| l == want).expect("corpus label").1
        };
        let constant_pool = ["k", "A", "A/r2", "A/r3", "O1k", "O-1k"];
        let varying_pool = ["axis", "pair"];
        let e = gp.e_max.min(2);
        let mut part_types = std::collections::BTreeMap::new();
        for label in constant_pool {
            let rep = scan_types(pick(label), e)?;
            if !rep.is_constant() {
                return Err(fail(format!("pool module {label} is not constant")));
            }
            part_types.insert(label, rep.classes[0].jordan_type.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for trial in 0..50 {
            let parts = 2 + trial % 2;
            let with_varying = trial % 5 >= 3;
            let mut labels = Vec::new();
            for slot in 0..parts {
                if with_varying && slot == 0 {
                    labels.push(varying_pool[rng.gen_range(0..varying_pool.len())]);
                } else {
                    labels.push(constant_pool[rng.gen_range(0..constant_pool.len())]);
                }
            }
            let mut sum = pick(labels[0]).clone();
            for label in &labels[1..] {
                sum = sum.direct_sum(pick(label))?;
            }
            let rep = scan_types(&sum, e)?;
            if with_varying {
                if rep.is_constant() {
                    return Err(fail(format!(
                        "sum {labels:?} is constant despite a varying summand"
                    )));
                }
            } else {
                let want = labels[1..].iter().fold(part_types[labels[0]].clone(), |acc, l| {
                    add_types(&acc, &part_types[l])
                });
                if !rep.is_constant() || rep.classes[0].jordan_type != want {
                    return Err(fail(format!(
                        "sum {labels:?} should be constant of type {want}"
                    )));
                }
            }
        }
        Ok(format!("50 sums over {}", scan_types(pick("k"), e)?.field))
    })())
}

/// No sampled or constructed module of dimension `2..=n` is ever certified
/// as a constant single-block type; every refutation carries a witness pair.
pub fn check_single_block(grid: &[GridPoint]) -> CheckOutcome {
    outcome("no short single-block type", (|| {
        let mut tested = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            if gp.c == 2 {
                let dims: Vec<usize> = (2..=gp.n as usize).collect();
                let per_dim = 200 / dims.len();
                for &d in &dims {
                    for seed in 0..per_dim as u64 {
                        let m = sample_module_point(&a, d, seed)?;
                        let v = check_constant(&m, CjtMethod::Symbolic)?;
                        if v.constant {
                            let jt = v.jordan_type.expect("constant verdict");
                            if jt.blocks() == 1 {
                                return Err(fail(format!(
                                    "{} sampled d={d} seed={seed}: certified single block {}",
                                    gp.label(), jt
                                )));
                            }
                        } else if v.witness.is_none() {
                            return Err(fail(format!(
                                "{} sampled d={d} seed={seed}: refuted without witness",
                                gp.label()
                            )));
                        }
                        tested += 1;
                    }
                }
            } else {
                // scalar multiples of one conjugated nilpotent block
                let f = &a.field;
                let mut rng = ChaCha8Rng::seed_from_u64(31);
                for _ in 0..200 {
                    let s = loop {
                        let cand = Matrix::from_rows(vec![
                            vec![rng.gen_range(0..f.size()), rng.gen_range(0..f.size())],
                            vec![rng.gen_range(0..f.size()), rng.gen_range(0..f.size())],
                        ]);
                        if rank(&cand, f) == 2 {
                            break cand;
                        }
                    };
                    let nil = s.mul(&jordan_block(2), f).mul(&inverse(&s, f).expect("invertible"), f);
                    let mats = (0..a.c)
                        .map(|_| nil.scale(FieldElem(rng.gen_range(0..f.size())), f))
                        .collect();
                    let m = ModuleRep { alg: a.clone(), d: 2, mats };
                    m.validate()?;
                    let v = check_constant(&m, CjtMethod::Exhaustive)?;
                    if v.constant {
                        let jt = v.jordan_type.expect("constant verdict");
                        if jt.blocks() == 1 {
                            return Err(fail(format!(
                                "{} constructed pencil: certified single block {}",
                                gp.label(), jt
                            )));
                        }
                    } else if v.witness.is_none() {
                        return Err(fail(format!(
                            "{} constructed pencil: refuted without witness",
                            gp.label()
                        )));
                    }
                    tested += 1;
                }
            }
        }
        Ok(format!("{tested} modules of dimension 2..=n"))
    })())
}

/// The first syzygy of every constant-type corpus module has exactly the
/// predicted reversed type, and higher syzygy types alternate by parity.
pub fn check_syzygy_prediction(grid: &[GridPoint]) -> CheckOutcome {
    outcome("syzygy type prediction", (|| {
        let mut checked = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let corpus = build_corpus(&a)?;
            for (label, m) in &corpus {
                if m.d == 0 {
                    continue;
                }
                let rep = scan_types(m, 1)?;
                if !rep.is_constant() {
                    continue;
                }
                let jt = rep.classes[0].jordan_type.clone();
                let cover = projective_cover(m)?;
                let om = syzygy(m, 1)?;
                let predicted = syzygy_type_prediction(&jt, cover.rank, gp.c);
                if om.d == 0 {
                    if !predicted.is_zero() {
                        return Err(fail(format!(
                            "{} {label}: zero syzygy but predicted {}",
                            gp.label(), predicted
                        )));
                    }
                } else {
                    let srep = scan_types(&om, 1)?;
                    if !srep.is_constant() || srep.classes[0].jordan_type != predicted {
                        return Err(fail(format!(
                            "{} {label}: syzygy type {} differs from predicted {}",
                            gp.label(), srep.classes[0].jordan_type, predicted
                        )));
                    }
                }
                checked += 1;
            }
            // stable types alternate between the type and its reversal
            for label in ["k", "A/r3"] {
                let m = &corpus.iter().find(|(l, _)| l == label).expect("corpus label").1;
                if split_free(m)?.0 > 0 {
                    continue;
                }
                let base = scan_types(m, 1)?.classes[0].jordan_type.stable();
                for i in -2i64..=2 {
                    let s = syzygy(m, i)?;
                    if s.d == 0 {
                        continue;
                    }
                    let srep = scan_types(&s, 1)?;
                    let want = if i.rem_euclid(2) == 0 {
                        base.clone()
                    } else {
                        reversed_stable(&base)
                    };
                    let got = srep.classes[0].jordan_type.stable();
                    if !srep.is_constant() || got != want {
                        return Err(fail(format!(
                            "{} {label}: syzygy {i} stable type {got}, expected {want}",
                            gp.label()
                        )));
                    }
                }
            }
        }
        Ok(format!("{checked} first-syzygy predictions"))
    })())
}

/// Betti windows of non-free constant-type modules grow with complexity
/// exactly the number of generators; free modules report zero.
pub fn check_complexity(grid: &[GridPoint]) -> CheckOutcome {
    outcome("complexity windows", (|| {
        let mut windows = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let k = ModuleRep::simple(&a);
            let ar2 = a.radical_quotient_module(0, 2)?;
            let ar3 = a.radical_quotient_module(0, 3.min(a.loewy_length()))?;
            let mut targets: Vec<(&str, ModuleRep)> = vec![("k", k), ("A/r2", ar2)];
            if split_free(&ar3)?.0 == 0 {
                targets.push(("A/r3", ar3));
            }
            for (label, m) in &targets {
                let betti = betti_sequence(m, 9)?;
                let est = complexity_estimate(&betti)?;
                if !est.exact || est.complexity != gp.c {
                    return Err(fail(format!(
                        "{} {label}: betti {betti:?} gave complexity {} (exact: {}), expected {}",
                        gp.label(), est.complexity, est.exact, gp.c
                    )));
                }
                windows += 1;
            }
            let betti = betti_sequence(&ModuleRep::free(&a, 1), 9)?;
            let est = complexity_estimate(&betti)?;
            if est.complexity != 0 {
                return Err(fail(format!(
                    "{} free module has complexity {}",
                    gp.label(), est.complexity
                )));
            }
            windows += 1;
        }
        Ok(format!("{windows} Betti windows of length 9"))
    })())
}

/// The symbolic constancy certificate agrees with exhaustive scans over
/// the first three extensions, minor counts match the binomial formula, and
/// no positive constant rank occurs with fewer minors than generators.
pub fn check_symbolic_agreement(grid: &[GridPoint]) -> CheckOutcome {
    outcome("symbolic agreement", (|| {
        let mut agreed = 0usize;
        for gp in grid.iter().filter(|g| g.c == 2) {
            let a = algebra_at(gp)?;
            let corpus = build_corpus(&a)?;
            for (label, m) in &corpus {
                if m.d == 0 || m.d > 12 {
                    continue;
                }
                let sym = check_constant(m, CjtMethod::Symbolic)?;
                let mut varying_seen = false;
                for e in 1..=3u32 {
                    let rep = scan_types(m, e)?;
                    if sym.constant {
                        let want = sym.jordan_type.as_ref().expect("constant verdict");
                        if !rep.is_constant() || rep.classes[0].jordan_type != *want {
                            return Err(fail(format!(
                                "{} {label}: symbolic constant {want} but e={e} scan disagrees",
                                gp.label()
                            )));
                        }
                    } else if !rep.is_constant() {
                        varying_seen = true;
                    }
                }
                if !sym.constant && !varying_seen {
                    return Err(fail(format!(
                        "{} {label}: symbolic refutation without a scan witness up to e=3",
                        gp.label()
                    )));
                }
                let (profile, _) = generic_rank_profile(m)?;
                for (i, &g) in profile.iter().enumerate() {
                    if g == 0 {
                        continue;
                    }
                    let count = binom(m.d, g).saturating_mul(binom(m.d, g));
                    let minors = minor_polys(m, i as u32 + 1, g)?;
                    if minors.len() as u128 != count {
                        return Err(fail(format!(
                            "{} {label}: power {} has {} minors, expected {count}",
                            gp.label(), i + 1, minors.len()
                        )));
                    }
                    if count < gp.c as u128 {
                        return Err(fail(format!(
                            "{} {label}: constant rank {g} with only {count} minors",
                            gp.label()
                        )));
                    }
                }
                agreed += 1;
            }
        }
        Ok(format!("{agreed} modules, three extensions each"))
    })())
}

fn type_multiset(m: &ModuleRep) -> Result<Vec<JordanType>> {
    let mut types: Vec<JordanType> = point_types(m, 1)?.into_iter().map(|(_, jt)| jt).collect();
    types.sort();
    Ok(types)
}

/// Twisting along a validated algebra automorphism permutes the points, so
/// the multiset of types is unchanged; non-diagonal substitutions are
/// rejected whenever `q` is not `1` or `-1`.
pub fn check_twist_invariance(grid: &[GridPoint]) -> CheckOutcome {
    outcome("twist invariance", (|| {
        let mut twists = 0usize;
        let mut rejections = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let f = &a.field;
            let corpus = build_corpus(&a)?;
            let mut rng = ChaCha8Rng::seed_from_u64(37);
            let targets = if gp.c == 2 { ["O1k", "A/r3", "axis"] } else { ["rad", "A/r3", "axis"] };
            for label in targets {
                let m = &corpus.iter().find(|(l, _)| l == label).expect("corpus label").1;
                let base = type_multiset(m)?;
                for _ in 0..3 {
                    let diag: Vec<FieldElem> = (0..gp.c)
                        .map(|_| FieldElem(rng.gen_range(1..f.size())))
                        .collect();
                    let aut = AutomorphismSpec::diagonal(&a, &diag);
                    if !aut.valid {
                        return Err(fail(format!(
                            "{} rejected a diagonal substitution", gp.label()
                        )));
                    }
                    let twisted = m.twist(&aut)?;
                    if type_multiset(&twisted)? != base {
                        return Err(fail(format!(
                            "{} {label}: diagonal twist changed the type multiset",
                            gp.label()
                        )));
                    }
                    twists += 1;
                }
                // cyclic generator permutation, valid only when q = q^{-1}
                let mut perm = Matrix::zeros(gp.c, gp.c);
                for j in 0..gp.c {
                    perm.set((j + 1) % gp.c, j, FieldElem(1));
                }
                let aut = AutomorphismSpec::new(&a, perm);
                if aut.valid {
                    let twisted = m.twist(&aut)?;
                    if type_multiset(&twisted)? != base {
                        return Err(fail(format!(
                            "{} {label}: permutation twist changed the type multiset",
                            gp.label()
                        )));
                    }
                    twists += 1;
                }
            }
            let minus_one = f.neg(f.one());
            if f.q != f.one() && f.q != minus_one {
                for _ in 0..500 {
                    let mut e_mat = Matrix::zeros(gp.c, gp.c);
                    for r in 0..gp.c {
                        for cidx in 0..gp.c {
                            e_mat.set(r, cidx, FieldElem(rng.gen_range(0..f.size())));
                        }
                    }
                    let r = rng.gen_range(0..gp.c);
                    let cidx = (r + 1 + rng.gen_range(0..gp.c - 1)) % gp.c;
                    e_mat.set(r, cidx, FieldElem(rng.gen_range(1..f.size())));
                    if a.validate_automorphism(&e_mat).is_ok() {
                        return Err(fail(format!(
                            "{} accepted a non-diagonal substitution with q of order > 2",
                            gp.label()
                        )));
                    }
                    rejections += 1;
                }
            }
        }
        Ok(format!("{twists} twists preserved, {rejections} rejections"))
    })())
}

/// The translate of every module without free summands has the same stable
/// type at every point.
pub fn check_translate_types(grid: &[GridPoint]) -> CheckOutcome {
    outcome("translate stable types", (|| {
        let mut modules = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            let corpus = build_corpus(&a)?;
            for (label, m) in &corpus {
                if m.d == 0 || split_free(m)?.0 > 0 {
                    continue;
                }
                let tau = ar_translate(m)?;
                let pts = point_types(m, 1)?;
                let tau_pts = point_types(&tau, 1)?;
                for ((lambda, jt), (_, jt_tau)) in pts.iter().zip(&tau_pts) {
                    if jt.stable() != jt_tau.stable() {
                        return Err(fail(format!(
                            "{} {label}: stable type {} became {} at {:?}",
                            gp.label(), jt.stable(), jt_tau.stable(), lambda
                        )));
                    }
                }
                modules += 1;
            }
        }
        Ok(format!("{modules} translates compared pointwise"))
    })())
}

fn perturbed(m: &ModuleRep, comp: &AxisComponent, rng: &mut ChaCha8Rng) -> AxisComponent {
    let f = &m.alg.field;
    let n = m.alg.n as u32;
    let pow = if comp.length == 1 { n - 1 } else { 1 };
    let r: Vec<u64> = (0..m.d).map(|_| rng.gen_range(0..f.size())).collect();
    let shift = m.mats[comp.axis].pow(pow, f).mul(&Matrix::column(&r), f);
    let generator = comp
        .generator
        .iter()
        .zip(&shift.data)
        .map(|(&g, &s)| f.add(FieldElem(g), FieldElem(s)).0)
        .collect();
    AxisComponent { axis: comp.axis, length: comp.length, generator }
}

/// The rank-property suite on the 2-generator grid points: equivalence of
/// the three rank conditions, the Betti drop, descent through cosyzygies,
/// and recovery of the syzygy index; `n = 2` points run the forward
/// conditions only.
pub fn check_rank_suite(grid: &[GridPoint]) -> CheckOutcome {
    outcome("rank property suite", (|| {
        let mut notes = Vec::new();
        let Some(gp) = grid.iter().find(|g| g.c == 2 && g.n == 3) else {
            if !grid.iter().any(|g| g.c == 2 && g.n == 2) {
                return Ok("skipped (no 2-generator grid point)".into());
            }
            notes.push("classification walk skipped (no n = 3 grid point)".into());
            rank_suite_n2(grid, &mut notes)?;
            return Ok(notes.join("; "));
        };
        let a = algebra_at(gp)?;
        let k = ModuleRep::simple(&a);
        let omk: Vec<(i64, ModuleRep)> =
            (-3..=6).map(|i| Ok((i, syzygy(&k, i)?))).collect::<Result<_>>()?;
        for (i, m) in &omk {
            let endo = hom_space(m, m)?;
            if endo.stable_dim != 1 {
                return Err(fail(format!(
                    "syzygy {i}: stable endomorphism dimension {}", endo.stable_dim
                )));
            }
        }
        let mut in_scope = 0usize;
        let mut skipped = 0usize;
        let mut rp_corpus: Vec<(String, ModuleRep)> = omk
            .iter()
            .filter(|(i, _)| (-2..=3).contains(i))
            .map(|(i, m)| (format!("syzygy {i}"), m.clone()))
            .collect();
        rp_corpus.push(("A/r3".into(), a.radical_quotient_module(0, 3)?));
        rp_corpus.push(("sample-d3".into(), sample_module_point(&a, 3, 11)?));
        rp_corpus.push(("sample-d4".into(), sample_module_point(&a, 4, 12)?));
        for (label, m) in &rp_corpus {
            match ranks_equivalence(m) {
                Ok(eq) => {
                    if !eq.consistent {
                        return Err(fail(format!(
                            "{label}: conditions disagree (betti {}, x {}, y {})",
                            eq.cond_betti, eq.cond_x, eq.cond_y
                        )));
                    }
                    in_scope += 1;
                }
                Err(Error::NotSingleNonprojective { .. }) | Err(Error::PreconditionUnmet(_)) => {
                    skipped += 1;
                }
                Err(err) => return Err(err),
            }
            match check_rp(m) {
                Ok(report) => {
                    if (report.rpx || report.rpy) && report.beta0 <= report.beta_minus1 {
                        return Err(fail(format!(
                            "{label}: rank property holds but beta_0 = {} <= beta_-1 = {}",
                            report.beta0, report.beta_minus1
                        )));
                    }
                }
                Err(Error::NotSingleNonprojective { .. }) | Err(Error::PreconditionUnmet(_)) => {}
                Err(err) => return Err(err),
            }
        }
        for i in 1..=4i64 {
            let m = &omk.iter().find(|(j, _)| *j == i).expect("syzygy range").1;
            let report = check_rp(m)?;
            if !report.rp {
                return Err(fail(format!("syzygy {i} does not satisfy the rank property")));
            }
        }
        for i in 1..=6i64 {
            let mut cur = omk.iter().find(|(j, _)| *j == i).expect("syzygy range").1.clone();
            for step in 1..=i {
                let (next, verdict) = rp_descent_step(&cur)?;
                match verdict {
                    DescentStep::Violation(reason) => {
                        return Err(fail(format!(
                            "descent from syzygy {i} violated at step {step}: {reason}"
                        )));
                    }
                    DescentStep::IsomorphicToK => {
                        if step != i {
                            return Err(fail(format!(
                                "descent from syzygy {i} reached k at step {step}"
                            )));
                        }
                    }
                    DescentStep::SatisfiesRp(_) => {
                        if step == i {
                            return Err(fail(format!(
                                "descent from syzygy {i} missed k at step {step}"
                            )));
                        }
                    }
                }
                cur = next;
            }
        }
        for i in 0..=6i64 {
            let m = &omk.iter().find(|(j, _)| *j == i).expect("syzygy range").1;
            match classify_syzygy_of_k(m, 3)? {
                SyzygyClass::SyzygyOfK { index } if index == i => {}
                other => {
                    return Err(fail(format!("syzygy {i} classified as {other:?}")));
                }
            }
        }
        let corpus = build_corpus(&a)?;
        for label in ["A/r3", "axis", "pair"] {
            let m = &corpus.iter().find(|(l, _)| l == label).expect("corpus label").1;
            if let SyzygyClass::SyzygyOfK { index } = classify_syzygy_of_k(m, 3)? {
                return Err(fail(format!("{label} misclassified as syzygy {index}")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for i in [1i64, 2] {
            let m = &omk.iter().find(|(j, _)| *j == i).expect("syzygy range").1;
            let base_a = nonprojective_generator(m, 0)?;
            let base_b = nonprojective_generator(m, 1)?;
            let base = rp_conditions(m, &base_a, &base_b);
            for round in 0..20 {
                let alt_a = perturbed(m, &base_a, &mut rng);
                let alt_b = perturbed(m, &base_b, &mut rng);
                if rp_conditions(m, &alt_a, &alt_b) != base {
                    return Err(fail(format!(
                        "syzygy {i}: generator re-choice {round} changed the verdict"
                    )));
                }
            }
        }
        notes.push(format!(
            "n=3 suite: {in_scope} equivalences, {skipped} out-of-scope modules"
        ));
        rank_suite_n2(grid, &mut notes)?;
        Ok(notes.join("; "))
    })())
}

/// Forward conditions at `n = 2` points, where the classification walk is
/// out of scope: constant stable type `[1]`, one-dimensional stable
/// endomorphisms, and the diagonal twist self-isomorphisms.
fn rank_suite_n2(grid: &[GridPoint], notes: &mut Vec<String>) -> Result<()> {
    for gp2 in grid.iter().filter(|g| g.c == 2 && g.n == 2) {
        let a2 = algebra_at(gp2)?;
        let k2 = ModuleRep::simple(&a2);
        for i in 0..=3i64 {
            let m = syzygy(&k2, i)?;
            let rep = scan_types(&m, gp2.e_max.min(2))?;
            let stable = rep.classes[0].jordan_type.stable();
            if !rep.is_constant() || stable.blocks() != 1 || stable.mults[0] != 1 {
                return Err(fail(format!(
                    "{} syzygy {i}: stable type {} is not [1]",
                    gp2.label(), stable
                )));
            }
            if hom_space(&m, &m)?.stable_dim != 1 {
                return Err(fail(format!(
                    "{} syzygy {i}: stable endomorphism dimension != 1",
                    gp2.label()
                )));
            }
            let (psi, phi) = characteristic_twists(&m);
            for aut in [&psi, &phi] {
                match find_isomorphism(&m.twist(aut)?, &m, 3)? {
                    IsoVerdict::Isomorphic { .. } => {}
                    other => {
                        return Err(fail(format!(
                            "{} syzygy {i}: twist self-isomorphism failed: {other:?}",
                            gp2.label()
                        )));
                    }
                }
            }
        }
        notes.push(format!(
            "{}: classification walk out of scope for n = 2, forward conditions pass",
            gp2.label()
        ));
    }
    Ok(())
}

/// Partition reconstruction round-trips against explicit Jordan chains, and
/// the cosyzygy of the syzygy recovers every free-summand-free module.
pub fn check_engine_consistency(grid: &[GridPoint]) -> CheckOutcome {
    outcome("engine consistency", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..200usize {
            let gp = &grid[trial % grid.len()];
            let f = make_field(gp.p, 1, gp.n)?;
            let count = rng.gen_range(1..=5);
            let mut parts: Vec<usize> =
                (0..count).map(|_| rng.gen_range(1..=gp.n as usize)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let d: usize = parts.iter().sum();
            let mut mat = Matrix::zeros(d, d);
            let mut offset = 0;
            for &part in &parts {
                for r in 1..part {
                    mat.set(offset + r, offset + r - 1, FieldElem(1));
                }
                offset += part;
            }
            let ranks: Vec<usize> =
                (1..gp.n).map(|i| rank(&mat.pow(i as u32, &f), &f)).collect();
            let jt = partition_from_ranks(d, &ranks, gp.n)?;
            let mut expected = vec![0usize; gp.n as usize];
            for &part in &parts {
                expected[part - 1] += 1;
            }
            if jt.mults != expected {
                return Err(fail(format!(
                    "partition {parts:?}: reconstructed {:?} from ranks {ranks:?}",
                    jt.mults
                )));
            }
            let mut chain_lengths: Vec<usize> =
                jordan_chains(&mat, &f)?.iter().map(|ch| ch.len()).collect();
            chain_lengths.sort_unstable_by(|a, b| b.cmp(a));
            if chain_lengths != parts {
                return Err(fail(format!(
                    "partition {parts:?}: chains gave {chain_lengths:?}"
                )));
            }
        }
        let mut roundtrips = 0usize;
        for gp in grid {
            let a = algebra_at(gp)?;
            for (label, m) in &build_corpus(&a)? {
                if m.d == 0 || split_free(m)?.0 > 0 {
                    continue;
                }
                let rt = syzygy(&syzygy(m, 1)?, -1)?;
                match find_isomorphism(&rt, m, 23)? {
                    IsoVerdict::Isomorphic { .. } => roundtrips += 1,
                    other => {
                        return Err(fail(format!(
                            "{} {label}: cosyzygy of syzygy is not the module: {other:?}",
                            gp.label()
                        )));
                    }
                }
            }
        }
        Ok(format!("200 partitions, {roundtrips} resolution round-trips"))
    })())
}

/// Bad parameters are rejected: a `q` of the wrong order, module JSON
/// carrying it, and matrices violating the commutation relation.
pub fn check_parameter_rejection(grid: &[GridPoint]) -> CheckOutcome {
    outcome("parameter rejection", (|| {
        let mut rejected = 0usize;
        if make_field(7, 1, 3)?.with_q(FieldElem(3)).is_ok() {
            return Err(fail("q of order 6 accepted for n' = 3".into()));
        }
        rejected += 1;
        if make_field(3, 1, 2)?.with_q(FieldElem(1)).is_ok() {
            return Err(fail("q = 1 accepted for n' = 2".into()));
        }
        rejected += 1;
        let bad = r#"{"p":7,"e":1,"n":3,"c":2,"q":3,"d":1,"matrices":[[0],[0]]}"#;
        if ModuleRep::from_json_str(bad).is_ok() {
            return Err(fail("module JSON with a non-primitive q accepted".into()));
        }
        rejected += 1;
        for gp in grid.iter().filter(|g| g.c == 2 && g.n >= 3) {
            let a = algebra_at(gp)?;
            let m = syzygy(&ModuleRep::simple(&a), 1)?;
            let swapped = ModuleRep {
                alg: m.alg.clone(),
                d: m.d,
                mats: vec![m.mats[1].clone(), m.mats[0].clone()],
            };
            if swapped.validate().is_ok() {
                return Err(fail(format!(
                    "{} accepted swapped generator matrices", gp.label()
                )));
            }
            rejected += 1;
        }
        Ok(format!("{rejected} invalid inputs rejected"))
    })())
}

/// Runs every check on the grid, in release order.
pub fn run_all(grid: &[GridPoint]) -> Vec<CheckOutcome> {
    vec![
        check_golden_types(grid),
        check_type_identities(grid),
        check_sum_constancy(grid),
        check_single_block(grid),
        check_syzygy_prediction(grid),
        check_complexity(grid),
        check_symbolic_agreement(grid),
        check_twist_invariance(grid),
        check_translate_types(grid),
        check_rank_suite(grid),
        check_engine_consistency(grid),
        check_parameter_rejection(grid),
    ]
}
