//! Minimal projective covers, syzygies in both directions, Betti sequences,
//! Hom-spaces with their projectively-factoring part, isomorphism search,
//! and the Auslander-Reiten translate.
//!
//! The algebra is self-injective, so projective = injective = free;
//! cosyzygies are computed as duals of syzygies of the dual, and every free
//! submodule splits off, which is what [`split_free`] exploits.

use crate::config::guards;
use crate::error::{Error, Result};
use crate::field::{make_field, FieldElem};
use crate::jordan::field_name;
use crate::matrix::{kernel_basis, kron, rank, solve, unvec, Matrix, SpanAcc};
use crate::module::{JordanType, ModuleRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A minimal projective cover `A^rank -> M`.
#[derive(Debug, Clone)]
pub struct Cover {
    /// The free module `A^rank`.
    pub source: ModuleRep,
    /// The covering map, `dim M` rows by `rank * dim A` columns.
    pub map: Matrix,
    pub rank: usize,
}

/// Minimal projective cover: one free generator per basis vector of
/// `M / rad M`.
pub fn projective_cover(m: &ModuleRep) -> Result<Cover> {
    let f = &m.alg.field;
    let d = m.d;
    // radical = sum of the generator images
    let mut rad = SpanAcc::new(d);
    for x in &m.mats {
        for c in 0..d {
            let col: Vec<u64> = (0..d).map(|r| x.at(r, c).0).collect();
            rad.insert(&col, f);
        }
    }
    // lift a basis of the top through standard vectors
    let mut tops = Vec::new();
    for j in 0..d {
        let mut v = vec![0u64; d];
        v[j] = 1;
        if rad.insert(&v, f) {
            tops.push(j);
        }
    }
    let r = tops.len();
    let source = ModuleRep::free(&m.alg, r);
    let basis = m.alg.monomial_basis();
    let adim = m.alg.dim;
    let mut map = Matrix::zeros(d, r * adim);
    for (block, &top) in tops.iter().enumerate() {
        for (t, mono) in basis.iter().enumerate() {
            let act = m.monomial_action(mono);
            for row in 0..d {
                map.set(row, block * adim + t, act.at(row, top));
            }
        }
    }
    if rank(&map, f) != d {
        return Err(Error::Validation(
            "cover map is not surjective; the input is not a module".into(),
        ));
    }
    Ok(Cover {
        source,
        map,
        rank: r,
    })
}

fn submodule_on_columns(parent: &ModuleRep, cols: &Matrix) -> ModuleRep {
    let f = &parent.alg.field;
    let mats = parent
        .mats
        .iter()
        .map(|x| {
            let image = x.mul(cols, f);
            solve(cols, &image, f).expect("columns span a submodule")
        })
        .collect();
    ModuleRep {
        alg: parent.alg.clone(),
        d: cols.cols,
        mats,
    }
}

fn syzygy_once(m: &ModuleRep) -> Result<ModuleRep> {
    let cover = projective_cover(m)?;
    let guard = guards().dim_max;
    if cover.source.d > guard {
        return Err(Error::SizeGuardExceeded {
            dim: cover.source.d,
            guard,
        });
    }
    let f = &m.alg.field;
    let ker = kernel_basis(&cover.map, f);
    Ok(submodule_on_columns(&cover.source, &ker))
}

fn cosyzygy_once(m: &ModuleRep) -> Result<ModuleRep> {
    Ok(syzygy_once(&m.dual())?.dual())
}

/// `i`-th syzygy for `i > 0`, `(-i)`-th cosyzygy for `i < 0`, the module
/// itself for `i = 0`.  Each step is minimal, so no free summands appear.
pub fn syzygy(m: &ModuleRep, i: i64) -> Result<ModuleRep> {
    let mut cur = m.clone();
    for _ in 0..i.unsigned_abs() {
        cur = if i > 0 {
            syzygy_once(&cur)?
        } else {
            cosyzygy_once(&cur)?
        };
    }
    Ok(cur)
}

/// Splits off the largest free direct summand.
///
/// The image of the socle operator `X_1^{n-1} … X_c^{n-1}` meets exactly the
/// free summands, so its rank is the free rank; the complement is the
/// quotient by the split free submodule.
pub fn split_free(m: &ModuleRep) -> Result<(usize, ModuleRep)> {
    let f = &m.alg.field;
    let soc = m.monomial_action(&m.alg.socle_monomial());
    let pivots = {
        let mut w = soc.clone();
        crate::matrix::rref(&mut w, f)
    };
    let r = pivots.len();
    if r == 0 {
        return Ok((0, m.clone()));
    }
    let adim = m.alg.dim;
    let basis = m.alg.monomial_basis();
    // free submodule generated by the pivot preimages
    let mut cols = Matrix::zeros(m.d, r * adim);
    for (block, &gen_col) in pivots.iter().enumerate() {
        for (t, mono) in basis.iter().enumerate() {
            let act = m.monomial_action(mono);
            for row in 0..m.d {
                cols.set(row, block * adim + t, act.at(row, gen_col));
            }
        }
    }
    if rank(&cols, f) != r * adim {
        return Err(Error::Validation(
            "socle generators do not span a free submodule".into(),
        ));
    }
    // change of basis [free part | extension]; the free part is invariant,
    // so the quotient action is the lower-right block
    let mut acc = SpanAcc::new(m.d);
    for c in 0..cols.cols {
        let col: Vec<u64> = (0..m.d).map(|row| cols.at(row, c).0).collect();
        acc.insert(&col, f);
    }
    let mut ext = Vec::new();
    for j in 0..m.d {
        let mut v = vec![0u64; m.d];
        v[j] = 1;
        if acc.insert(&v, f) {
            ext.push(j);
        }
    }
    let qd = m.d - r * adim;
    assert_eq!(ext.len(), qd);
    let mut change = Matrix::zeros(m.d, m.d);
    for c in 0..cols.cols {
        for row in 0..m.d {
            change.set(row, c, cols.at(row, c));
        }
    }
    for (j, &col) in ext.iter().enumerate() {
        change.set(col, cols.cols + j, FieldElem(1));
    }
    let inv = crate::matrix::inverse(&change, f).expect("basis change is invertible");
    let mats = m
        .mats
        .iter()
        .map(|x| {
            let conj = inv.mul(x, f).mul(&change, f);
            let mut block = Matrix::zeros(qd, qd);
            for rr in 0..qd {
                for cc in 0..qd {
                    block.set(rr, cc, conj.at(cols.cols + rr, cols.cols + cc));
                }
            }
            block
        })
        .collect();
    let complement = ModuleRep {
        alg: m.alg.clone(),
        d: qd,
        mats,
    };
    complement.validate()?;
    Ok((r, complement))
}

/// Ranks of the minimal free resolution, `betti[i]` covering the `i`-th
/// syzygy.
pub fn betti_sequence(m: &ModuleRep, count: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = m.clone();
    for _ in 0..count {
        if cur.d == 0 {
            out.push(0);
            continue;
        }
        let cover = projective_cover(&cur)?;
        out.push(cover.rank);
        let guard = guards().dim_max;
        if cover.source.d > guard {
            return Err(Error::SizeGuardExceeded {
                dim: cover.source.d,
                guard,
            });
        }
        let f = cur.alg.field.clone();
        let ker = kernel_basis(&cover.map, &f);
        cur = submodule_on_columns(&cover.source, &ker);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityEstimate {
    /// Polynomial rate: 0 for an eventually zero sequence, `g + 1` when the
    /// entries grow like a degree-`g` polynomial.
    pub complexity: usize,
    /// Whether finite differences vanished exactly on the window.
    pub exact: bool,
}

/// Growth rate of a Betti sequence from a finite window.
///
/// The sequence is split by parity because the resolutions here are
/// quasi-polynomial with period two; each class is tested by exact finite
/// differences, with a log-ratio estimate as fallback.
pub fn complexity_estimate(betti: &[usize]) -> Result<ComplexityEstimate> {
    if betti.len() < 6 {
        return Err(Error::TooFewEntries(betti.len()));
    }
    let l = betti.len();
    if betti[l - 1] == 0 && betti[l - 2] == 0 {
        return Ok(ComplexityEstimate {
            complexity: 0,
            exact: true,
        });
    }
    let exact_rate = |window: &[usize]| -> Option<usize> {
        let mut worst = 0usize;
        for parity in 0..2 {
            let class: Vec<i64> = window
                .iter()
                .skip(parity)
                .step_by(2)
                .map(|&x| x as i64)
                .collect();
            let mut diffs = class;
            let mut k = 0;
            loop {
                if diffs.iter().all(|&x| x == 0) {
                    break;
                }
                if diffs.len() < 2 {
                    return None;
                }
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
                k += 1;
            }
            worst = worst.max(k);
        }
        Some(worst)
    };
    // low-degree transients are normal; trim the shortest prefix that
    // leaves an exact quasi-polynomial window
    for drop in 0..=l - 6 {
        if let Some(k) = exact_rate(&betti[drop..]) {
            return Ok(ComplexityEstimate {
                complexity: k,
                exact: true,
            });
        }
    }
    // log-ratio fallback on tail pair sums
    let a = (betti[l - 1] + betti[l - 2]) as f64;
    let b = ((betti[l - 3] + betti[l - 4]) as f64).max(1.0);
    let ia = (l as f64 - 1.5).max(2.0);
    let ib = (l as f64 - 3.5).max(1.0);
    let deg = ((a.ln() - b.ln()) / (ia.ln() - ib.ln())).round().max(0.0) as usize;
    Ok(ComplexityEstimate {
        complexity: deg + 1,
        exact: false,
    })
}

/// Predicted Jordan type of the syzygy of a module whose type at a point is
/// `jt`, covered by `rank` free generators: the stable part reverses
/// (`[i]` becomes `[n - i]`) and the projective part fills up the dimension.
pub fn syzygy_type_prediction(jt: &JordanType, rank: usize, c: usize) -> JordanType {
    let n = jt.n as usize;
    let mut mults = vec![0usize; n];
    for i in 1..n {
        mults[n - i - 1] = jt.mults[i - 1];
    }
    let per_point = rank * (n as usize).pow(c as u32 - 1);
    mults[n - 1] = per_point - jt.blocks();
    JordanType::new(jt.n, mults)
}

/// Hom-space between modules over the same algebra, with the dimension of
/// the subspace of maps factoring through a projective.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub dim: usize,
    pub factoring_dim: usize,
    /// Dimension in the stable category: `dim - factoring_dim`.
    pub stable_dim: usize,
    /// Matrices `target.d` by `source.d`.
    pub basis: Vec<Matrix>,
}

fn hom_basis(m: &ModuleRep, n: &ModuleRep) -> Vec<Matrix> {
    let f = &m.alg.field;
    let (dm, dn) = (m.d, n.d);
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let im = Matrix::identity(dm);
    let inn = Matrix::identity(dn);
    let mut system: Option<Matrix> = None;
    for (xm, xn) in m.mats.iter().zip(&n.mats) {
        let block = kron(&im, xn, f).sub(&kron(&xm.transpose(), &inn, f), f);
        system = Some(match system {
            None => block,
            Some(s) => s.vstack(&block),
        });
    }
    let basis = kernel_basis(&system.expect("c >= 1"), f);
    (0..basis.cols)
        .map(|b| {
            let col: Vec<FieldElem> = (0..basis.rows)
                .map(|r| FieldElem(basis.at(r, b).0))
                .collect();
            unvec(&col, dn, dm)
        })
        .collect()
}

pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace> {
    if m.alg != n.alg {
        return Err(Error::AlgebraMismatch("hom_space"));
    }
    let f = &m.alg.field;
    let basis = hom_basis(m, n);
    let dim = basis.len();
    if dim == 0 {
        return Ok(HomSpace {
            dim: 0,
            factoring_dim: 0,
            stable_dim: 0,
            basis,
        });
    }
    // maps factoring through a projective: compose Hom(M, A) with the
    // copy-wise inclusions into the cover of N
    let free_one = ModuleRep::free(&m.alg, 1);
    let through = hom_basis(m, &free_one);
    let cover = projective_cover(n)?;
    let adim = m.alg.dim;
    let mut acc = SpanAcc::new(n.d * m.d);
    let mut factoring_dim = 0;
    for j in 0..cover.rank {
        let copy_cols: Vec<usize> = (j * adim..(j + 1) * adim).collect();
        let pi_j = cover.map.select_cols(&copy_cols);
        for h in &through {
            let composite = pi_j.mul(h, f);
            let flat: Vec<u64> = (0..m.d)
                .flat_map(|c| (0..n.d).map(move |r| (r, c)))
                .map(|(r, c)| composite.at(r, c).0)
                .collect();
            if acc.insert(&flat, f) {
                factoring_dim += 1;
            }
        }
    }
    Ok(HomSpace {
        dim,
        factoring_dim,
        stable_dim: dim - factoring_dim,
        basis,
    })
}

#[derive(Debug, Clone)]
pub enum IsoVerdict {
    /// An invertible intertwiner was found, possibly over an extension;
    /// an extension witness still certifies isomorphism over the base field.
    Isomorphic { field: String, map: Matrix },
    /// Structurally impossible.
    NotIsomorphic { reason: String },
    /// Random search failed; not a proof of non-isomorphism.
    NotCertified { trials: usize },
}

/// Searches for an isomorphism by drawing random combinations of a Hom-basis
/// over the base field and small extensions.  Deterministic in `seed`.
pub fn find_isomorphism(m: &ModuleRep, n: &ModuleRep, seed: u64) -> Result<IsoVerdict> {
    if m.alg != n.alg {
        return Err(Error::AlgebraMismatch("find_isomorphism"));
    }
    if m.d != n.d {
        return Ok(IsoVerdict::NotIsomorphic {
            reason: format!("dimensions differ: {} vs {}", m.d, n.d),
        });
    }
    if m.d == 0 {
        return Ok(IsoVerdict::Isomorphic {
            field: field_name(&m.alg.field),
            map: Matrix::zeros(0, 0),
        });
    }
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic {
            reason: "no homomorphisms at all".into(),
        });
    }
    let base = &m.alg.field;
    let degrees: Vec<u32> = if base.e == 1 { vec![1, 2, 3] } else { vec![base.e] };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = 0;
    const TRIALS_PER_FIELD: usize = 17;
    for &e_t in &degrees {
        let target = if e_t == base.e {
            base.clone()
        } else {
            make_field(base.p, e_t, base.n)?.with_q(base.q)?
        };
        for _ in 0..TRIALS_PER_FIELD {
            trials += 1;
            let mut combo = Matrix::zeros(m.d, m.d);
            for h in &basis {
                let coeff = FieldElem(rng.gen_range(0..target.size()));
                if coeff.0 == 0 {
                    continue;
                }
                combo = combo.add(&h.scale(coeff, &target), &target);
            }
            if rank(&combo, &target) == m.d {
                return Ok(IsoVerdict::Isomorphic {
                    field: field_name(&target),
                    map: combo,
                });
            }
        }
    }
    Ok(IsoVerdict::NotCertified { trials })
}

/// Auslander-Reiten translate: twist by the Nakayama automorphism, then take
/// the second syzygy.  Refused for modules with a free summand, which the
/// translate is not defined on.
pub fn ar_translate(m: &ModuleRep) -> Result<ModuleRep> {
    if m.d == 0 {
        return Ok(m.clone());
    }
    let f = &m.alg.field;
    let soc = m.monomial_action(&m.alg.socle_monomial());
    let free_rank = rank(&soc, f);
    if free_rank > 0 {
        return Err(Error::FreeSummand(free_rank));
    }
    let (aut, _) = m.alg.nakayama_automorphism()?;
    let twisted = m.twist(&aut)?;
    syzygy(&twisted, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use crate::jordan::{check_constant, jordan_type_at, scan_types, CjtMethod};

    fn alg(p: u64, e: u32, n: u64, c: usize) -> AlgebraParams {
        AlgebraParams::new(make_field(p, e, n).unwrap(), c).unwrap()
    }

    #[test]
    fn cover_of_the_trivial_module() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let cover = projective_cover(&k).unwrap();
        assert_eq!(cover.rank, 1);
        assert_eq!(cover.map.rows, 1);
        assert_eq!(cover.map.cols, 9);
        // only the identity monomial hits k
        assert_eq!(cover.map.at(0, 0), FieldElem(1));
        for t in 1..9 {
            assert_eq!(cover.map.at(0, t), FieldElem(0));
        }
    }

    #[test]
    fn cover_map_intertwines() {
        let a = alg(3, 1, 2, 2);
        let m = a.radical_quotient_module(0, 2).unwrap();
        let cover = projective_cover(&m).unwrap();
        let f = &a.field;
        for i in 0..2 {
            let lhs = m.mats[i].mul(&cover.map, f);
            let rhs = cover.map.mul(&cover.source.mats[i], f);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn first_syzygy_of_k() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let s = syzygy(&k, 1).unwrap();
        assert_eq!(s.d, 8);
        s.validate().unwrap();
        let report = scan_types(&s, 1).unwrap();
        assert!(report.is_constant());
        assert_eq!(report.classes[0].jordan_type.compact(), "[2] [3]^2");
    }

    #[test]
    fn syzygy_of_free_vanishes() {
        let a = alg(7, 1, 3, 2);
        let free = ModuleRep::free(&a, 2);
        let s = syzygy(&free, 1).unwrap();
        assert_eq!(s.d, 0);
    }

    #[test]
    fn syzygy_type_formula_matches_computation() {
        let a = alg(7, 1, 3, 2);
        let m = a.radical_quotient_module(0, 3).unwrap();
        let jt = jordan_type_at(&m, &[FieldElem(1), FieldElem(1)]).unwrap();
        assert_eq!(jt.compact(), "[1] [2] [3]");
        let cover = projective_cover(&m).unwrap();
        let predicted = syzygy_type_prediction(&jt, cover.rank, 2);
        let s = syzygy(&m, 1).unwrap();
        let actual = jordan_type_at(&s, &[FieldElem(1), FieldElem(1)]).unwrap();
        assert_eq!(predicted, actual);
        assert_eq!(actual.compact(), "[1] [2]");
    }

    #[test]
    fn cosyzygy_undoes_syzygy() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let s = syzygy(&k, 1).unwrap();
        let back = syzygy(&s, -1).unwrap();
        assert_eq!(back.d, 1);
        let jt = jordan_type_at(&back, &[FieldElem(1), FieldElem(0)]).unwrap();
        assert_eq!(jt.compact(), "[1]");
    }

    #[test]
    fn split_free_detects_summands() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let free = ModuleRep::free(&a, 1);
        let (r, rest) = split_free(&k).unwrap();
        assert_eq!((r, rest.d), (0, 1));
        let (r, rest) = split_free(&free).unwrap();
        assert_eq!((r, rest.d), (1, 0));
        let mixed = k.direct_sum(&free).unwrap().direct_sum(&free).unwrap();
        let (r, rest) = split_free(&mixed).unwrap();
        assert_eq!((r, rest.d), (2, 1));
        let jt = jordan_type_at(&rest, &[FieldElem(2), FieldElem(3)]).unwrap();
        assert_eq!(jt.compact(), "[1]");
    }

    #[test]
    fn betti_numbers_of_k() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        assert_eq!(betti_sequence(&k, 6).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let c3 = alg(5, 1, 2, 3);
        let k3 = ModuleRep::simple(&c3);
        assert_eq!(
            betti_sequence(&k3, 8).unwrap(),
            vec![1, 3, 6, 10, 15, 21, 28, 36]
        );
    }

    #[test]
    fn complexity_from_betti_windows() {
        let est = complexity_estimate(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(est, ComplexityEstimate { complexity: 2, exact: true });
        let est = complexity_estimate(&[1, 3, 6, 10, 15, 21, 28, 36]).unwrap();
        assert_eq!(est, ComplexityEstimate { complexity: 3, exact: true });
        let est = complexity_estimate(&[4, 4, 4, 4, 4, 4]).unwrap();
        assert_eq!(est, ComplexityEstimate { complexity: 1, exact: true });
        let est = complexity_estimate(&[1, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(est, ComplexityEstimate { complexity: 0, exact: true });
        assert!(matches!(
            complexity_estimate(&[1, 2, 3]),
            Err(Error::TooFewEntries(3))
        ));
        // geometric growth is flagged as inexact
        let est = complexity_estimate(&[1, 2, 4, 8, 16, 32, 64, 128]).unwrap();
        assert!(!est.exact);
    }

    #[test]
    fn hom_dimensions() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let free = ModuleRep::free(&a, 1);
        let kk = hom_space(&k, &k).unwrap();
        assert_eq!((kk.dim, kk.factoring_dim, kk.stable_dim), (1, 0, 1));
        let ka = hom_space(&k, &free).unwrap();
        assert_eq!((ka.dim, ka.factoring_dim, ka.stable_dim), (1, 1, 0));
        let ak = hom_space(&free, &k).unwrap();
        assert_eq!((ak.dim, ak.factoring_dim, ak.stable_dim), (1, 1, 0));
        let aa = hom_space(&free, &free).unwrap();
        assert_eq!(aa.dim, 9);
        assert_eq!(aa.stable_dim, 0);
    }

    #[test]
    fn stable_endomorphisms_of_syzygies_of_k() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let s1 = syzygy(&k, 1).unwrap();
        let e1 = hom_space(&s1, &s1).unwrap();
        assert_eq!(e1.stable_dim, 1);
        let s2 = syzygy(&k, 2).unwrap();
        let e2 = hom_space(&s2, &s2).unwrap();
        assert_eq!(e2.stable_dim, 1);
    }

    #[test]
    fn isomorphism_search() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let free = ModuleRep::free(&a, 1);
        let left = k.direct_sum(&free).unwrap();
        let right = free.direct_sum(&k).unwrap();
        match find_isomorphism(&left, &right, 0).unwrap() {
            IsoVerdict::Isomorphic { map, field } => {
                assert_eq!(field, "GF(7)");
                assert_eq!(rank(&map, &a.field), 10);
            }
            other => panic!("expected isomorphism, got {other:?}"),
        }
        match find_isomorphism(&k, &free, 0).unwrap() {
            IsoVerdict::NotIsomorphic { .. } => {}
            other => panic!("expected dimension mismatch, got {other:?}"),
        }
        // round trip through the stable category
        let back = syzygy(&syzygy(&k, 1).unwrap(), -1).unwrap();
        assert!(matches!(
            find_isomorphism(&k, &back, 0).unwrap(),
            IsoVerdict::Isomorphic { .. }
        ));
    }

    #[test]
    fn ar_translate_of_k_is_the_second_syzygy() {
        let a = alg(7, 1, 3, 2);
        let k = ModuleRep::simple(&a);
        let tau = ar_translate(&k).unwrap();
        let s2 = syzygy(&k, 2).unwrap();
        assert_eq!(tau.d, s2.d);
        assert!(matches!(
            find_isomorphism(&tau, &s2, 0).unwrap(),
            IsoVerdict::Isomorphic { .. }
        ));
    }

    #[test]
    fn ar_translate_refuses_free_summands() {
        let a = alg(7, 1, 3, 2);
        let free = ModuleRep::free(&a, 1);
        assert!(matches!(ar_translate(&free), Err(Error::FreeSummand(1))));
        let mixed = ModuleRep::simple(&a).direct_sum(&free).unwrap();
        assert!(matches!(ar_translate(&mixed), Err(Error::FreeSummand(1))));
    }

    #[test]
    fn ar_translate_preserves_stable_constant_type() {
        let a = alg(7, 1, 3, 2);
        let m = a.radical_quotient_module(0, 3).unwrap();
        let tau = ar_translate(&m).unwrap();
        let v = check_constant(&tau, CjtMethod::Exhaustive).unwrap();
        assert!(v.constant);
        assert_eq!(
            v.jordan_type.unwrap().stable().compact(),
            "[1] [2]"
        );
    }
}
