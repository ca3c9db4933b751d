//! Finite fields GF(p^m) with exact, table-driven arithmetic.
//!
//! Elements are integer codes in `0..q`. The element whose polynomial
//! representative over F_p is `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` has code
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`; for prime fields the code is the
//! residue itself. Code 0 is the additive identity and code 1 the
//! multiplicative identity.
//!
//! For extension fields the reducing polynomial is chosen deterministically:
//! the monic irreducible polynomial of degree m whose coefficient vector,
//! read as a base-p integer (constant term least significant), is smallest.
//! Two constructions of GF(q) therefore always agree element by element.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// Largest supported field order; construction fails above it.
pub const MAX_FIELD_ORDER: usize = 256;

/// A concrete finite field GF(p^m) with full arithmetic tables.
///
/// Immutable after construction; share freely across threads.
#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: usize,
    /// Coefficients of the reducing polynomial, constant term first,
    /// length m + 1. `None` for prime fields.
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `powers[x * q + k] = x^k` for k in `0..q`, with `0^0 = 1`.
    powers: Vec<u8>,
    /// Inverse of the evaluation matrix `powers`: maps the value vector of a
    /// one-variable function (indexed by element code) to its coefficients.
    interp: Vec<u8>,
}

impl core::fmt::Debug for Field {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is deterministic in q, so the order pins the field.
        self.q == other.q
    }
}

impl Eq for Field {}

/// Builds GF(q) for a prime power `q` in `2..=256`.
pub fn make_field(q: u64) -> Result<Field> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
    if q as usize > MAX_FIELD_ORDER {
        return Err(Error::SizeLimitExceeded {
            what: "field order above 256",
        });
    }
    let q = q as usize;

    let modulus: Option<Vec<u64>> = if m == 1 {
        None
    } else {
        Some(smallest_irreducible(p, m))
    };

    // Element add/mul through the polynomial representation.
    let decode = |code: usize| -> Vec<u64> {
        let mut c = code as u64;
        (0..m).map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
    };
    let encode = |coeffs: &[u64]| -> u8 {
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * p + c;
        }
        code as u8
    };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for x in 0..q {
        let xc = decode(x);
        for y in 0..q {
            let yc = decode(y);
            let sum: Vec<u64> = xc.iter().zip(&yc).map(|(&a, &b)| (a + b) % p).collect();
            add[x * q + y] = encode(&sum);
            let mut prod = poly_mul(&xc, &yc, p);
            if let Some(md) = &modulus {
                prod = poly_rem(&prod, md, p);
            }
            prod.resize(m as usize, 0);
            mul[x * q + y] = encode(&prod);
        }
    }

    let mut neg = vec![0u8; q];
    for x in 0..q {
        let y = (0..q).find(|&y| add[x * q + y] == 0).unwrap();
        neg[x] = y as u8;
    }
    let mut inv = vec![0u8; q];
    for x in 1..q {
        let y = (1..q).find(|&y| mul[x * q + y] == 1).unwrap();
        inv[x] = y as u8;
    }

    let mut powers = vec![0u8; q * q];
    for x in 0..q {
        powers[x * q] = 1;
        for k in 1..q {
            let prev = powers[x * q + k - 1] as usize;
            powers[x * q + k] = mul[prev * q + x];
        }
    }

    let interp = invert_matrix(&powers, q, &add, &mul, &neg, &inv);

    Ok(Field {
        p,
        m,
        q,
        modulus: modulus.map(|md| md.iter().map(|&c| c as u8).collect()),
        add,
        mul,
        neg,
        inv,
        powers,
        interp,
    })
}

impl Field {
    /// Field order q = p^m.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Prime characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree m.
    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// Reducing polynomial coefficients (constant first), `None` for m = 1.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    /// All element codes in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|c| c as u8)
    }

    pub fn add(&self, x: u8, y: u8) -> u8 {
        debug_assert!((x as usize) < self.q && (y as usize) < self.q);
        self.add[x as usize * self.q + y as usize]
    }

    pub fn sub(&self, x: u8, y: u8) -> u8 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u8, y: u8) -> u8 {
        debug_assert!((x as usize) < self.q && (y as usize) < self.q);
        self.mul[x as usize * self.q + y as usize]
    }

    pub fn neg(&self, x: u8) -> u8 {
        debug_assert!((x as usize) < self.q);
        self.neg[x as usize]
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, x: u8) -> Result<u8> {
        if x == 0 {
            return Err(Error::DivisionByZero);
        }
        debug_assert!((x as usize) < self.q);
        Ok(self.inv[x as usize])
    }

    /// `x^e` with the empty-product convention `x^0 = 1` (including x = 0).
    pub fn pow(&self, x: u8, e: u64) -> u8 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        // Nonzero elements have multiplicative order dividing q - 1.
        let mut r = (e % (self.q as u64 - 1)) as usize;
        if r == 0 {
            r = self.q - 1;
        }
        self.powers[x as usize * self.q + r]
    }

    /// `x^k` for `k < q`, straight from the power table.
    pub(crate) fn pow_small(&self, x: u8, k: usize) -> u8 {
        debug_assert!(k < self.q);
        self.powers[x as usize * self.q + k]
    }

    /// Evaluation matrix: row r lists `r^0, r^1, ..., r^(q-1)`.
    pub(crate) fn eval_matrix(&self) -> &[u8] {
        &self.powers
    }

    /// Inverse of the evaluation matrix (one-variable interpolation).
    pub(crate) fn interp_matrix(&self) -> &[u8] {
        &self.interp
    }

    /// Base-p coefficient vector (length m) of an element code.
    pub fn decode(&self, code: u8) -> Vec<u8> {
        let mut c = code as u64;
        (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d as u8
            })
            .collect()
    }

    /// Inverse of [`Field::decode`].
    pub fn encode(&self, coeffs: &[u8]) -> Result<u8> {
        if coeffs.len() != self.m as usize {
            return Err(Error::DimensionMismatch);
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c as u64 >= self.p {
                return Err(Error::InvalidElement {
                    code: c as u64,
                    q: self.p,
                });
            }
            code = code * self.p + c as u64;
        }
        Ok(code as u8)
    }

    /// Checks that a code denotes an element of this field.
    pub fn check_code(&self, code: u8) -> Result<()> {
        if (code as usize) < self.q {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                code: code as u64,
                q: self.q as u64,
            })
        }
    }
}

/// Splits q into (p, m) with p prime, if q = p^m for some m >= 1.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

// --- dense polynomial arithmetic over F_p, used only during construction ---

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` divided by monic `d` (coefficients low-to-high).
fn poly_rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (j, &c) in d.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + (p - lead % p) * c) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients spell `index`
/// in base p, constant term least significant.
fn monic_from_index(index: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut c = index;
    let mut coeffs: Vec<u64> = (0..deg)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect();
    coeffs.push(1);
    coeffs
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = (poly.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = p.pow(d);
        for idx in 0..count {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for idx in 0..count {
        let candidate = monic_from_index(idx, m, p);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Gauss-Jordan inversion of a q x q matrix over the field described by the
/// given operation tables.
fn invert_matrix(a: &[u8], q: usize, add: &[u8], mul: &[u8], neg: &[u8], inv: &[u8]) -> Vec<u8> {
    let fadd = |x: u8, y: u8| add[x as usize * q + y as usize];
    let fmul = |x: u8, y: u8| mul[x as usize * q + y as usize];
    let fsub = |x: u8, y: u8| fadd(x, neg[y as usize]);

    let mut work = a.to_vec();
    let mut out = vec![0u8; q * q];
    for i in 0..q {
        out[i * q + i] = 1;
    }
    for col in 0..q {
        let pivot_row = (col..q)
            .find(|&r| work[r * q + col] != 0)
            .expect("evaluation matrix is invertible");
        if pivot_row != col {
            for j in 0..q {
                work.swap(pivot_row * q + j, col * q + j);
                out.swap(pivot_row * q + j, col * q + j);
            }
        }
        let scale = inv[work[col * q + col] as usize];
        for j in 0..q {
            work[col * q + j] = fmul(work[col * q + j], scale);
            out[col * q + j] = fmul(out[col * q + j], scale);
        }
        for r in 0..q {
            if r == col {
                continue;
            }
            let factor = work[r * q + col];
            if factor == 0 {
                continue;
            }
            for j in 0..q {
                work[r * q + j] = fsub(work[r * q + j], fmul(factor, work[col * q + j]));
                out[r * q + j] = fsub(out[r * q + j], fmul(factor, out[col * q + j]));
            }
        }
    }
    out
}
