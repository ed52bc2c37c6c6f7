//! Exact arithmetic in GF(p^e) together with the root-of-unity data that a
//! quantum complete intersection needs.
//!
//! A [`FieldCtx`] bundles
//! - the prime `p` and extension degree `e`,
//! - the monic minimal polynomial of the generator `z` (degree `e`),
//! - the nilpotency degree `n` of the algebra generators,
//! - `n' = n / gcd(n, p)` and a fixed primitive `n'`-th root of unity `q`.
//!
//! Elements are stored packed: a coefficient vector `(c_0, …, c_{e-1})` in the
//! basis `1, z, …, z^{e-1}` is encoded as the integer `Σ c_i p^i`.  The packed
//! form keeps elements `Copy`, which keeps dense matrices flat; `coeffs` /
//! `from_coeffs` convert to the explicit little-endian vector at the
//! serialization boundary.
//!
//! All choices are deterministic: the minimal polynomial is the first
//! irreducible candidate in increasing packed order, and `q` is the smallest
//! element (in packed order) of multiplicative order exactly `n'`.

use crate::error::{Error, Result};

/// One element of GF(p^e), packed as `Σ c_i p^i` for coefficients `c_i < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u64);

/// Field context: GF(p^e) plus the quantum parameters `n`, `n'`, `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub p: u64,
    pub e: u32,
    /// Monic minimal polynomial of `z`, low degree first, length `e + 1`.
    pub min_poly: Vec<u64>,
    pub n: u64,
    pub n_prime: u64,
    /// Fixed primitive `n_prime`-th root of unity.
    pub q: FieldElem,
    size: u64,
    /// `z^{e+k}` reduced mod `min_poly`, for `k = 0 .. e-2`.
    zred: Vec<Vec<u64>>,
}

const MAX_EXT_DEGREE: u32 = 8;
const MAX_FIELD_SIZE: u64 = 1 << 40;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// --- dense polynomials over GF(p), used only for the minimal-polynomial search ---

fn poly_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    // f is monic
    let df = f.len() - 1;
    while a.len() > df {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - df;
        if lead != 0 {
            for i in 0..=df {
                let sub = (lead * f[i]) % p;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
        poly_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut prod);
    poly_rem(prod, f, p)
}

fn poly_pow_mod(base: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, f, p);
        }
        b = poly_mul_mod(&b, &b, f, p);
        k >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // make b monic before taking the remainder
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = mod_inv_prime(lead, p);
            for x in b.iter_mut() {
                *x = (*x * inv) % p;
            }
        }
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv_prime(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut r = 1u64;
    let mut b = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = (r * b) % p;
        }
        b = (b * b) % p;
        k >>= 1;
    }
    r
}

/// Rabin irreducibility test for a monic degree-`e` polynomial over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = (f.len() - 1) as u64;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^e) mod f, computed by iterating the Frobenius e times
    let mut frob = x.clone();
    for _ in 0..e {
        frob = poly_pow_mod(&frob, p, f, p);
    }
    // x^(p^e) == x required
    let mut diff = frob.clone();
    sub_poly(&mut diff, &x, p);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(e/r)) - x, f) == 1 for each prime r | e
    for r in prime_factors(e) {
        let mut g = x.clone();
        for _ in 0..(e / r) {
            g = poly_pow_mod(&g, p, f, p);
        }
        sub_poly(&mut g, &x, p);
        let d = poly_gcd(f.to_vec(), g, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

fn sub_poly(a: &mut Vec<u64>, b: &[u64], p: u64) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, &x) in b.iter().enumerate() {
        a[i] = (a[i] + p - x) % p;
    }
    poly_trim(a);
}

/// Builds GF(p^e) with nilpotency degree `n`: derives `n' = n / gcd(n, p)`,
/// checks `n' | p^e - 1`, and fixes the canonical primitive root `q`.
pub fn make_field(p: u64, e: u32, n: u64) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || e > MAX_EXT_DEGREE {
        return Err(Error::Unsupported(format!(
            "extension degree {e} out of range 1..={MAX_EXT_DEGREE}"
        )));
    }
    if n < 2 {
        return Err(Error::Unsupported(format!("nilpotency degree {n} must be >= 2")));
    }
    let size = p
        .checked_pow(e)
        .filter(|&s| s <= MAX_FIELD_SIZE)
        .ok_or_else(|| Error::Unsupported(format!("field GF({p}^{e}) too large")))?;

    let min_poly = find_min_poly(p, e);
    let n_prime = n / gcd(n, p);
    if n_prime > 1 && (size - 1) % n_prime != 0 {
        return Err(Error::NoPrimitiveRoot { p, e, n_prime });
    }

    let mut ctx = FieldCtx {
        p,
        e,
        min_poly,
        n,
        n_prime,
        q: FieldElem(1),
        size,
        zred: Vec::new(),
    };
    ctx.zred = ctx.build_zred();
    ctx.q = ctx
        .smallest_of_order(n_prime)
        .ok_or(Error::NoPrimitiveRoot { p, e, n_prime })?;
    Ok(ctx)
}

/// First irreducible monic polynomial of degree `e` in increasing packed order
/// of the non-leading coefficients.
fn find_min_poly(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    let size = p.pow(e);
    for m in 0..size {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut v = m;
        for _ in 0..e {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)");
}

impl FieldCtx {
    fn build_zred(&self) -> Vec<Vec<u64>> {
        let e = self.e as usize;
        if e < 2 {
            return Vec::new();
        }
        let p = self.p;
        // z^e = -(c_0 + c_1 z + ... + c_{e-1} z^{e-1})
        let mut cur: Vec<u64> = self.min_poly[..e].iter().map(|&c| (p - c % p) % p).collect();
        let mut out = vec![cur.clone()];
        for _ in 1..(e - 1) {
            // multiply by z: shift, then reduce the overflowing z^e coefficient
            let top = cur[e - 1];
            let mut next = vec![0u64; e];
            for i in (1..e).rev() {
                next[i] = cur[i - 1];
            }
            if top != 0 {
                for i in 0..e {
                    next[i] = (next[i] + top * out[0][i]) % p;
                }
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    /// Number of elements, `p^e`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Element from a residue of the prime field.
    pub fn from_u64(&self, v: u64) -> FieldElem {
        FieldElem(v % self.p)
    }

    pub fn is_valid(&self, a: FieldElem) -> bool {
        a.0 < self.size
    }

    /// Little-endian coefficient vector of length `e` in the basis `1, z, …`.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Packs a little-endian coefficient vector of length `e`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.e as usize {
            return Err(Error::LengthMismatch {
                expected: self.e as usize,
                got: coeffs.len(),
            });
        }
        let mut acc = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::Unsupported(format!(
                    "coefficient {c} at position {i} is not a residue mod {}",
                    self.p
                )));
            }
            acc += c * self.p.pow(i as u32);
        }
        Ok(FieldElem(acc))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut m = 1u64;
        for _ in 0..self.e {
            out += ((x % p + y % p) % p) * m;
            m *= p;
            x /= p;
            y /= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.e == 1 {
            return FieldElem((self.p - a.0 % self.p) % self.p);
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u64;
        let mut m = 1u64;
        for _ in 0..self.e {
            out += ((p - x % p) % p) * m;
            m *= p;
            x /= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            return FieldElem((a.0 * b.0) % self.p);
        }
        let e = self.e as usize;
        let p = self.p;
        let mut da = [0u64; MAX_EXT_DEGREE as usize];
        let mut db = [0u64; MAX_EXT_DEGREE as usize];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..e {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut acc = [0u64; 2 * MAX_EXT_DEGREE as usize];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                acc[i + j] += da[i] * db[j];
            }
        }
        for k in ((e)..=(2 * e - 2)).rev() {
            let c = acc[k] % p;
            if c != 0 {
                let red = &self.zred[k - e];
                for t in 0..e {
                    acc[t] += c * red[t];
                }
            }
            acc[k] = 0;
        }
        let mut out = 0u64;
        let mut m = 1u64;
        for item in acc.iter().take(e) {
            out += (item % p) * m;
            m *= p;
        }
        FieldElem(out)
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut acc = self.one();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { p: self.p, e: self.e });
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { p: self.p, e: self.e });
        }
        let mut ord = self.size - 1;
        for r in prime_factors(self.size - 1) {
            while ord % r == 0 && self.pow(a, ord / r).0 == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn smallest_of_order(&self, target: u64) -> Option<FieldElem> {
        if target == 1 {
            return Some(self.one());
        }
        (1..self.size)
            .map(FieldElem)
            .find(|&a| self.order(a).map_or(false, |o| o == target))
    }

    /// `q^k` for a signed exponent, reducing mod the order `n'`.
    pub fn q_pow(&self, k: i64) -> FieldElem {
        let np = self.n_prime as i64;
        let r = ((k % np) + np) % np;
        self.pow(self.q, r as u64)
    }

    /// Same field data with `q` replaced by `q^{-1}` (the opposite-orientation
    /// parameter used by dual modules).
    pub fn opposite(&self) -> FieldCtx {
        let mut out = self.clone();
        out.q = self.pow(self.q, self.n_prime.saturating_sub(1).max(1));
        if self.n_prime == 1 {
            out.q = self.one();
        }
        out
    }

    /// Same field with an explicitly chosen `q`; the order must be exactly `n'`.
    pub fn with_q(&self, q: FieldElem) -> Result<FieldCtx> {
        let ok = if self.n_prime == 1 {
            q.0 == 1
        } else {
            self.is_valid(q) && q.0 != 0 && self.order(q)? == self.n_prime
        };
        if !ok {
            return Err(Error::NoPrimitiveRoot {
                p: self.p,
                e: self.e,
                n_prime: self.n_prime,
            });
        }
        let mut out = self.clone();
        out.q = q;
        Ok(out)
    }

    /// GF(p^{e2}) with the same `p`, `n`, and `q`.
    ///
    /// Only a prime base field can be extended here (scans construct their
    /// extensions from prime-field modules); constants embed with unchanged
    /// packing, so `q` carries over verbatim.
    pub fn extend(&self, e2: u32) -> Result<FieldCtx> {
        if e2 == self.e {
            return Ok(self.clone());
        }
        if self.e != 1 {
            return Err(Error::Unsupported(
                "can only extend a prime base field".into(),
            ));
        }
        let mut ext = make_field(self.p, e2, self.n)?;
        ext = ext.with_q(self.q)?;
        Ok(ext)
    }
}

// --- serialization helpers -------------------------------------------------

/// JSON form of an element: a plain integer over a prime field, a length-`e`
/// little-endian array otherwise.
pub fn elem_to_value(ctx: &FieldCtx, a: FieldElem) -> serde_json::Value {
    if ctx.e == 1 {
        serde_json::Value::from(a.0)
    } else {
        serde_json::Value::from(ctx.coeffs(a))
    }
}

pub fn elem_from_value(ctx: &FieldCtx, v: &serde_json::Value) -> Result<FieldElem> {
    match v {
        serde_json::Value::Number(num) => {
            let raw = num
                .as_u64()
                .ok_or_else(|| Error::Json(format!("element {num} is not a nonnegative integer")))?;
            if ctx.e == 1 {
                if raw >= ctx.p {
                    return Err(Error::Json(format!("residue {raw} out of range mod {}", ctx.p)));
                }
                Ok(FieldElem(raw))
            } else {
                Err(Error::Json(
                    "extension-field element must be a coefficient array".into(),
                ))
            }
        }
        serde_json::Value::Array(items) => {
            let coeffs: Vec<u64> = items
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| Error::Json(format!("bad coefficient {x}")))
                })
                .collect::<Result<_>>()?;
            ctx.from_coeffs(&coeffs)
        }
        other => Err(Error::Json(format!("bad field element {other}"))),
    }
}
