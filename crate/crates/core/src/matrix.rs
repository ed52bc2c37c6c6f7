//! Dense matrices over GF(p^e) with exact Gaussian elimination.
//!
//! Entries are packed field encodings ([`FieldElem`] values as raw `u64`),
//! stored row-major.  Every operation takes the [`FieldCtx`] explicitly; a
//! matrix is plain data.
//!
//! The elimination core has a fast path for prime fields: rows are kept
//! unreduced during updates (products of reduced values accumulate without
//! overflow for the sizes this crate works at) and reduced only when a row
//! becomes a pivot row or at the end.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(nn: usize) -> Matrix {
        let mut m = Matrix::zeros(nn, nn);
        for i in 0..nn {
            m.data[i * nn + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Column vector from a slice.
    pub fn column(v: &[u64]) -> Matrix {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FieldElem {
        FieldElem(self.data[r * self.cols + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v.0;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn col_vec(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.data[r * self.cols + c]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = f.add(FieldElem(*x), FieldElem(y)).0;
        }
        out
    }

    pub fn sub(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = f.sub(FieldElem(*x), FieldElem(y)).0;
        }
        out
    }

    pub fn scale(&self, s: FieldElem, f: &FieldCtx) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = f.mul(FieldElem(*x), s).0;
        }
        out
    }

    pub fn mul(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        if f.e == 1 {
            let p = f.p;
            for r in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.data[r * self.cols + k];
                    if a == 0 {
                        continue;
                    }
                    let src = &other.data[k * other.cols..(k + 1) * other.cols];
                    let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d += a * s;
                    }
                }
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for d in dst.iter_mut() {
                    *d %= p;
                }
            }
        } else {
            for r in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.at(r, k);
                    if a.0 == 0 {
                        continue;
                    }
                    for c in 0..other.cols {
                        let cur = out.at(r, c);
                        out.set(r, c, f.add(cur, f.mul(a, other.at(k, c))));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, f: &FieldCtx) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Puts `other`'s columns to the right of `self`'s.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            out.data[r * cols + self.cols..(r + 1) * cols]
                .copy_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        out
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Maps entries into another field context with the same characteristic.
    ///
    /// Valid when the target extends a prime source field: constants keep
    /// their packed form.
    pub fn lift(&self, src: &FieldCtx, dst: &FieldCtx) -> Matrix {
        assert_eq!(src.p, dst.p);
        assert!(src.e == dst.e || src.e == 1, "only prime fields embed");
        self.clone()
    }
}

/// Kronecker product under the column-major vec convention:
/// `kron(m, n) vec(Y) = vec(N Y M^T)`.
pub fn kron(a: &Matrix, b: &Matrix, f: &FieldCtx) -> Matrix {
    let mut out = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let av = a.at(ia, ja);
            if av.0 == 0 {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    let v = f.mul(av, b.at(ib, jb));
                    out.set(ia * b.rows + ib, ja * b.cols + jb, v);
                }
            }
        }
    }
    out
}

/// Inverse of the column-major vec: `v[c * rows + r]` becomes entry `(r, c)`.
pub fn unvec(v: &[FieldElem], rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, v[c * rows + r]);
        }
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, f: &FieldCtx) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut row = 0;
    if f.e == 1 {
        let p = f.p;
        for col in 0..cols {
            if row == rows {
                break;
            }
            // find a pivot; entries may be unreduced
            let mut sel = None;
            for r in row..rows {
                if m.data[r * cols + col] % p != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            for c in 0..cols {
                m.data.swap(row * cols + c, sel * cols + c);
            }
            // normalize the pivot row (also reduces it)
            let inv = f.inv(FieldElem(m.data[row * cols + col] % p)).unwrap().0;
            for c in col..cols {
                m.data[row * cols + c] = (m.data[row * cols + c] % p) * inv % p;
            }
            // eliminate everywhere else; factors come reduced, the pivot row is
            // reduced, so updates stay far below overflow
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let factor = m.data[r * cols + col] % p;
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                let (head, tail) = m.data.split_at_mut(row.max(r) * cols);
                let (prow, trow) = if row < r {
                    (&head[row * cols..row * cols + cols], &mut tail[..cols])
                } else {
                    (&tail[..cols], &mut head[r * cols..r * cols + cols])
                };
                for (t, &s) in trow.iter_mut().zip(prow).skip(col) {
                    *t += neg * s;
                }
            }
            pivots.push(col);
            row += 1;
        }
        for x in m.data.iter_mut() {
            *x %= p;
        }
    } else {
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(sel) = (row..rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.data.swap(row * cols + c, sel * cols + c);
            }
            let inv = f.inv(m.at(row, col)).unwrap();
            for c in col..cols {
                let v = f.mul(m.at(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let factor = m.at(r, col);
                if factor.0 == 0 {
                    continue;
                }
                for c in col..cols {
                    let v = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    pivots
}

pub fn rank(m: &Matrix, f: &FieldCtx) -> usize {
    let mut work = m.clone();
    rref(&mut work, f).len()
}

/// Basis of the right kernel, returned as the columns of a `cols x nullity`
/// matrix.
pub fn kernel_basis(m: &Matrix, f: &FieldCtx) -> Matrix {
    let mut work = m.clone();
    let pivots = rref(&mut work, f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(m.cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        out.data[fc * free.len() + j] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let v = work.at(r, fc);
            out.data[pc * free.len() + j] = f.neg(v).0;
        }
    }
    out
}

/// Basis of the column space: the original columns at pivot positions.
pub fn image_basis(m: &Matrix, f: &FieldCtx) -> Matrix {
    let mut work = m.clone();
    let pivots = rref(&mut work, f);
    m.select_cols(&pivots)
}

/// Solves `a * x = b` for all columns of `b` at once; `None` if inconsistent.
pub fn solve(a: &Matrix, b: &Matrix, f: &FieldCtx) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows);
    let mut aug = a.hstack(b);
    let pivots = rref(&mut aug, f);
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Matrix::zeros(a.cols, b.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.data[pc * b.cols + j] = aug.data[r * aug.cols + a.cols + j];
        }
    }
    Some(x)
}

pub fn inverse(m: &Matrix, f: &FieldCtx) -> Option<Matrix> {
    assert_eq!(m.rows, m.cols);
    let sol = solve(m, &Matrix::identity(m.rows), f)?;
    if m.mul(&sol, f) == Matrix::identity(m.rows) {
        Some(sol)
    } else {
        None
    }
}

/// Incremental span with membership testing, kept in reduced form.
pub struct SpanAcc {
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SpanAcc {
    pub fn new(dim: usize) -> SpanAcc {
        SpanAcc {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns the residual.
    fn residual(&self, v: &[u64], f: &FieldCtx) -> Vec<u64> {
        let mut w: Vec<u64> = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = FieldElem(w[pc]);
            if factor.0 == 0 {
                continue;
            }
            for (t, &s) in w.iter_mut().zip(row) {
                *t = f.sub(FieldElem(*t), f.mul(factor, FieldElem(s))).0;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64], f: &FieldCtx) -> bool {
        self.residual(v, f).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[u64], f: &FieldCtx) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.residual(v, f);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(FieldElem(w[pc])).unwrap();
        for t in w.iter_mut() {
            *t = f.mul(FieldElem(*t), inv).0;
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Inserts every column of `m`.
    pub fn insert_cols(&mut self, m: &Matrix, f: &FieldCtx) {
        for c in 0..m.cols {
            self.insert(&m.col_vec(c), f);
        }
    }
}

/// Jordan chains of a nilpotent matrix.
///
/// Returns one `Vec` per chain, head first: for a head `v` of height `h` the
/// chain is `v, Xv, …, X^{h-1}v`.  Chain heights, as a multiset, are the
/// Jordan block sizes.
pub fn jordan_chains(x: &Matrix, f: &FieldCtx) -> Result<Vec<Vec<Vec<u64>>>> {
    assert_eq!(x.rows, x.cols);
    let d = x.rows;
    if d == 0 {
        return Ok(Vec::new());
    }
    // kernel filtration K_1 ⊆ K_2 ⊆ …
    let mut kernels: Vec<Matrix> = Vec::new();
    let mut power = x.clone();
    loop {
        let k = kernel_basis(&power, f);
        let done = k.cols == d;
        kernels.push(k);
        if done {
            break;
        }
        if kernels.len() > d {
            return Err(Error::Validation("matrix is not nilpotent".into()));
        }
        power = power.mul(x, f);
    }
    let height = kernels.len();

    let mut chains: Vec<Vec<Vec<u64>>> = Vec::new();
    // vectors of height exactly j+1 obtained by pushing higher chains down
    let mut carried: Vec<Vec<u64>> = Vec::new();
    for j in (1..=height).rev() {
        let mut span = SpanAcc::new(d);
        if j >= 2 {
            span.insert_cols(&kernels[j - 2], f);
        }
        let mut next_carried: Vec<Vec<u64>> = Vec::new();
        for v in &carried {
            span.insert(v, f);
            next_carried.push(v.clone());
        }
        // extend by new heads inside K_j
        let kj = &kernels[j - 1];
        for cix in 0..kj.cols {
            let cand = kj.col_vec(cix);
            if span.insert(&cand, f) {
                let mut chain = vec![cand.clone()];
                let mut cur = Matrix::column(&cand);
                for _ in 1..j {
                    cur = x.mul(&cur, f);
                    chain.push(cur.col_vec(0));
                }
                next_carried.push(cand);
                chains.push(chain);
            }
        }
        // push everything at this height down one step for the next level
        carried = next_carried
            .iter()
            .map(|v| x.mul(&Matrix::column(v), f).col_vec(0))
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
    }
    let total: usize = chains.iter().map(Vec::len).sum();
    if total != d {
        return Err(Error::Validation(format!(
            "jordan chains cover {total} of {d} dimensions"
        )));
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf(p: u64) -> FieldCtx {
        make_field(p, 1, 2).unwrap()
    }

    #[test]
    fn rank_and_kernel_gf7() {
        let f = make_field(7, 1, 3).unwrap();
        // rows are multiples: rank 1
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank(&m, &f), 1);
        let k = kernel_basis(&m, &f);
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k, &f).is_zero());
        let im = image_basis(&m, &f);
        assert_eq!(im.cols, 1);
    }

    #[test]
    fn solve_and_inverse() {
        let f = gf(5);
        let a = Matrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let inv = inverse(&a, &f).unwrap();
        assert_eq!(a.mul(&inv, &f), Matrix::identity(2));
        let b = Matrix::from_rows(vec![vec![1], vec![0]]);
        let x = solve(&a, &b, &f).unwrap();
        assert_eq!(a.mul(&x, &f), b);
        // inconsistent system
        let sing = Matrix::from_rows(vec![vec![1, 1], vec![2, 2]]);
        let bad = Matrix::from_rows(vec![vec![0], vec![1]]);
        assert!(solve(&sing, &bad, &f).is_none());
    }

    #[test]
    fn extension_field_rank() {
        let f = make_field(3, 2, 2).unwrap();
        // (z  1; 1  z^-1) has rank 1: second row = z^-1 * first
        let z = 3u64;
        let zinv = f.inv(FieldElem(z)).unwrap().0;
        let m = Matrix::from_rows(vec![vec![z, 1], vec![1, zinv]]);
        assert_eq!(rank(&m, &f), 1);
    }

    #[test]
    fn jordan_chain_heights_match_block_sizes() {
        let f = make_field(7, 1, 3).unwrap();
        // block-diagonal nilpotent with blocks 3, 2, 1
        let mut x = Matrix::zeros(6, 6);
        x.set(1, 0, FieldElem(1));
        x.set(2, 1, FieldElem(1));
        x.set(4, 3, FieldElem(1));
        let chains = jordan_chains(&x, &f).unwrap();
        let mut heights: Vec<usize> = chains.iter().map(Vec::len).collect();
        heights.sort_unstable();
        assert_eq!(heights, vec![1, 2, 3]);
        // conjugating must not change the heights
        let s = Matrix::from_rows(vec![
            vec![1, 2, 0, 3, 0, 1],
            vec![0, 1, 4, 0, 2, 0],
            vec![0, 0, 1, 1, 0, 5],
            vec![0, 0, 0, 1, 6, 0],
            vec![0, 0, 0, 0, 1, 2],
            vec![0, 0, 0, 0, 0, 1],
        ]);
        let sinv = inverse(&s, &f).unwrap();
        let y = s.mul(&x, &f).mul(&sinv, &f);
        let chains = jordan_chains(&y, &f).unwrap();
        let mut heights: Vec<usize> = chains.iter().map(Vec::len).collect();
        heights.sort_unstable();
        assert_eq!(heights, vec![1, 2, 3]);
    }

    #[test]
    fn span_acc_membership() {
        let f = gf(7);
        let mut acc = SpanAcc::new(3);
        assert!(acc.insert(&[1, 2, 3], &f));
        assert!(!acc.insert(&[2, 4, 6], &f));
        assert!(acc.insert(&[0, 1, 0], &f));
        assert!(acc.contains(&[1, 3, 3], &f));
        assert!(!acc.contains(&[0, 0, 1], &f));
    }
}
