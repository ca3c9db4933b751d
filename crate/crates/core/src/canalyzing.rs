//! Canalyzing structure: detection, divisibility-based decomposition, family
//! membership, and construction of family members.
//!
//! A function is `<i:a:b>` canalyzing when fixing `x_i = a` forces the output
//! `b` whatever the other inputs do. Equivalently `f = (x_i - a) Q + b` for a
//! quotient `Q` whose degree in `x_i` is at most q - 2; detection works on
//! the truth table (restriction scan) while [`decompose`] recovers `Q` by
//! synthetic division of the ANF, giving two independent routes to the same
//! predicate.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::field::Field;
use crate::function::{AnfPolynomial, TruthTable};
use crate::mix::hash64;
use crate::Result;

/// One canalyzing witness `<i:a:b>`: variable index (1-based), canalyzing
/// input, canalyzed output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    pub var: usize,
    pub input: u8,
    pub output: u8,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}:{}:{}>", self.var, self.input, self.output)
    }
}

/// One of the eight canalyzing families: each of variable, input, and output
/// is either pinned or a wildcard.
///
/// Renders as `i=<k|*>,a=<c|*>,b=<c|*>`, e.g. `i=*,a=0,b=*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub var: Option<usize>,
    pub input: Option<u8>,
    pub output: Option<u8>,
}

impl FamilySpec {
    pub const fn new(var: Option<usize>, input: Option<u8>, output: Option<u8>) -> Self {
        FamilySpec { var, input, output }
    }

    /// The fully wild family: all canalyzing functions.
    pub const fn any() -> Self {
        FamilySpec::new(None, None, None)
    }

    /// The fully pinned family of one triple.
    pub const fn exact(var: usize, input: u8, output: u8) -> Self {
        FamilySpec::new(Some(var), Some(input), Some(output))
    }

    /// The eight family shapes with pinned components `i=1, a=0, b=0`, in
    /// canonical order: (i,a,b), (i,*,b), (i,a,*), (*,a,b), (i,*,*), (*,a,*),
    /// (*,*,b), (*,*,*).
    pub const fn canonical_shapes() -> [FamilySpec; 8] {
        [
            FamilySpec::new(Some(1), Some(0), Some(0)),
            FamilySpec::new(Some(1), None, Some(0)),
            FamilySpec::new(Some(1), Some(0), None),
            FamilySpec::new(None, Some(0), Some(0)),
            FamilySpec::new(Some(1), None, None),
            FamilySpec::new(None, Some(0), None),
            FamilySpec::new(None, None, Some(0)),
            FamilySpec::new(None, None, None),
        ]
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.var.is_none_or(|i| i == t.var)
            && self.input.is_none_or(|a| a == t.input)
            && self.output.is_none_or(|b| b == t.output)
    }

    /// Checks pinned components against a concrete field order and arity.
    pub fn validate(&self, q: u64, n: u64) -> Result<()> {
        if let Some(i) = self.var {
            if i < 1 || i as u64 > n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: n as usize,
                });
            }
        }
        for code in [self.input, self.output].into_iter().flatten() {
            if code as u64 >= q {
                return Err(Error::InvalidElement {
                    code: code as u64,
                    q,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.var {
            Some(i) => write!(f, "i={i},")?,
            None => write!(f, "i=*,")?,
        }
        match self.input {
            Some(a) => write!(f, "a={a},")?,
            None => write!(f, "a=*,")?,
        }
        match self.output {
            Some(b) => write!(f, "b={b}"),
            None => write!(f, "b=*"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let mut parts = s.split(',');
        let var = parse_component(parts.next(), "i")?;
        let input = parse_component(parts.next(), "a")?;
        let output = parse_component(parts.next(), "b")?;
        if parts.next().is_some() {
            return Err(Error::InvalidFamily("expected exactly three components"));
        }
        let var = match var {
            None => None,
            Some(v) if v >= 1 => Some(v as usize),
            Some(_) => return Err(Error::InvalidFamily("variable index must be >= 1")),
        };
        let to_code = |v: Option<u64>| -> Result<Option<u8>> {
            match v {
                None => Ok(None),
                Some(c) if c <= u8::MAX as u64 => Ok(Some(c as u8)),
                Some(c) => Err(Error::InvalidElement { code: c, q: 256 }),
            }
        };
        Ok(FamilySpec::new(var, to_code(input)?, to_code(output)?))
    }
}

fn parse_component(part: Option<&str>, key: &'static str) -> Result<Option<u64>> {
    let part = part.ok_or(Error::InvalidFamily("expected i=..,a=..,b=.."))?;
    let value = part
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or(Error::InvalidFamily("components must be i=, a=, b= in order"))?;
    if value == "*" {
        return Ok(None);
    }
    value
        .parse::<u64>()
        .map(Some)
        .map_err(|_| Error::InvalidFamily("component must be a nonnegative integer or *"))
}

/// `Some(b)` when the restriction `x_{axis+1} = a` of the value vector is
/// constantly `b`. Scans in place and short-circuits on the first mismatch.
pub(crate) fn restriction_constant(q: usize, values: &[u8], axis: usize, a: u8) -> Option<u8> {
    let stride = q.pow(axis as u32);
    let block = stride * q;
    let first = values[a as usize * stride];
    for base in (0..values.len()).step_by(block) {
        let start = base + a as usize * stride;
        for off in 0..stride {
            if values[start + off] != first {
                return None;
            }
        }
    }
    Some(first)
}

/// True when fixing `x_i = a` forces output `b`.
pub fn is_canalyzing(f: &TruthTable, i: usize, a: u8, b: u8) -> Result<bool> {
    check_var(f, i)?;
    f.field().check_code(a)?;
    f.field().check_code(b)?;
    Ok(restriction_constant(f.q(), f.values(), i - 1, a) == Some(b))
}

/// All canalyzing triples of `f`, sorted by `(i, a, b)`. For each `(i, a)`
/// the forced output is read off the restriction, so no scan over `b`.
pub fn triples(f: &TruthTable) -> Vec<Triple> {
    let q = f.q();
    let mut out = Vec::new();
    for i in 1..=f.n() {
        for a in 0..q as u16 {
            if let Some(b) = restriction_constant(q, f.values(), i - 1, a as u8) {
                out.push(Triple {
                    var: i,
                    input: a as u8,
                    output: b,
                });
            }
        }
    }
    out
}

/// Membership in a family: some triple of `f` matches every pinned component.
pub fn member(f: &TruthTable, spec: &FamilySpec) -> Result<bool> {
    spec.validate(f.q() as u64, f.n() as u64)?;
    Ok(member_values(f.field(), f.n(), f.values(), spec))
}

/// Membership on a raw value vector; shared with the brute-force counter.
/// Stops at the first pinned restriction that comes out constant with an
/// acceptable output.
pub(crate) fn member_values(field: &Field, n: usize, values: &[u8], spec: &FamilySpec) -> bool {
    let q = field.q();
    let hit = |i: usize, a: u8| match restriction_constant(q, values, i - 1, a) {
        Some(b) => spec.output.is_none_or(|want| want == b),
        None => false,
    };
    let vars = match spec.var {
        Some(i) => i..=i,
        None => 1..=n,
    };
    for i in vars {
        match spec.input {
            Some(a) => {
                if hit(i, a) {
                    return true;
                }
            }
            None => {
                for a in 0..q {
                    if hit(i, a as u8) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Recovers the quotient `Q` with `f = (x_i - a) Q + b` by synthetic
/// division of the ANF of `f - b` along axis `i`; fails with
/// [`Error::NotCanalyzing`] when any line leaves a remainder.
pub fn decompose(f: &TruthTable, i: usize, a: u8, b: u8) -> Result<AnfPolynomial> {
    check_var(f, i)?;
    f.field().check_code(a)?;
    f.field().check_code(b)?;
    let field = Arc::clone(f.field());
    let q = field.q();
    let mut coeffs = f.to_anf().coeffs().to_vec();
    coeffs[0] = field.sub(coeffs[0], b);

    let stride = q.pow((i - 1) as u32);
    let block = stride * q;
    let mut line = vec![0u8; q];
    for base in (0..coeffs.len()).step_by(block) {
        for off in 0..stride {
            let start = base + off;
            for (r, slot) in line.iter_mut().enumerate() {
                *slot = coeffs[start + r * stride];
            }
            // Divide the one-variable polynomial on this line by (x - a):
            // quotient degree q - 2, remainder must vanish.
            let mut carry = 0u8;
            for j in (0..q).rev() {
                let cur = field.add(line[j], field.mul(a, carry));
                if j > 0 {
                    coeffs[start + (j - 1) * stride] = cur;
                } else if cur != 0 {
                    return Err(Error::NotCanalyzing);
                }
                carry = cur;
            }
            coeffs[start + (q - 1) * stride] = 0;
        }
    }
    AnfPolynomial::new(field, f.n(), coeffs)
}

/// Builds the member of the intersection of `<i:a_j:b_j>` families given by
/// a quotient polynomial: computes the Newton coefficients `A_0..A_{k-1}`
/// pinned by the pairs and returns the table of
/// `Q * prod_j (x_i - a_j) + sum_t A_t * prod_{j<=t} (x_i - a_j)`.
///
/// The quotient must satisfy `deg_i(Q) <= q - k - 1`; with k = q pairs it
/// must be the zero polynomial and the result is the unique interpolant.
pub fn construct_multi(i: usize, pairs: &[(u8, u8)], quotient: &AnfPolynomial) -> Result<TruthTable> {
    let field = Arc::clone(quotient.field());
    let q = field.q();
    let n = quotient.n();
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let k = pairs.len();
    if k > q {
        return Err(Error::TooManyPairs {
            given: k,
            q: q as u64,
        });
    }
    let mut seen = vec![false; q];
    for &(a, b) in pairs {
        field.check_code(a)?;
        field.check_code(b)?;
        if seen[a as usize] {
            return Err(Error::DuplicateInputValues);
        }
        seen[a as usize] = true;
    }
    let max_deg = q as i64 - k as i64 - 1;
    if !quotient.is_zero() && quotient.degree_in(i)? > max_deg {
        return Err(Error::QuotientDegreeTooHigh { max: max_deg });
    }

    // Forward substitution for the Newton coefficients: A_t is pinned by
    // requiring output b_{t+1} at x_i = a_{t+1}.
    let mut newton = Vec::with_capacity(k);
    for (t, &(at, bt)) in pairs.iter().enumerate() {
        if t == 0 {
            newton.push(bt);
            continue;
        }
        let mut partial = 0u8; // sum of earlier Newton terms at x_i = a_t
        let mut prod = 1u8; // prod_{j<=s} (a_t - a_j), grown incrementally
        for (s, &coeff) in newton.iter().enumerate() {
            if s > 0 {
                prod = field.mul(prod, field.sub(at, pairs[s - 1].0));
            }
            partial = field.add(partial, field.mul(coeff, prod));
        }
        let denom = field.mul(prod, field.sub(at, pairs[t - 1].0));
        let a_t = field.mul(field.sub(bt, partial), field.inv(denom)?);
        newton.push(a_t);
    }

    // Both the full product and the Newton tail depend on x_i alone.
    let mut full_prod = vec![1u8; q];
    let mut tail = vec![0u8; q];
    for x in 0..q {
        let xc = x as u8;
        let mut prod = 1u8;
        for (t, &a_t) in newton.iter().enumerate() {
            if t > 0 {
                prod = field.mul(prod, field.sub(xc, pairs[t - 1].0));
            }
            tail[x] = field.add(tail[x], field.mul(a_t, prod));
        }
        if k > 0 {
            prod = field.mul(prod, field.sub(xc, pairs[k - 1].0));
        }
        full_prod[x] = prod;
    }

    let q_table = quotient.to_table();
    let stride = q.pow((i - 1) as u32);
    let values: Vec<u8> = q_table
        .values()
        .iter()
        .enumerate()
        .map(|(idx, &qv)| {
            let x = idx / stride % q;
            field.add(field.mul(qv, full_prod[x]), tail[x])
        })
        .collect();
    TruthTable::new(field, n, values)
}

/// Draws a uniform member of the pinned family `<i:a:b>`: the admissible
/// quotient coefficients (exponent of `x_i` at most q - 2) are filled from
/// the seeded stream in increasing index order, draw `t` being
/// `hash64(seed, t) mod q`. Distinct quotients give distinct members, so a
/// uniform quotient is a uniform member.
pub fn sample(field: &Arc<Field>, n: usize, triple: Triple, seed: u64) -> Result<TruthTable> {
    let q = field.q();
    let mut quotient = AnfPolynomial::zero(Arc::clone(field), n)?;
    if triple.var < 1 || triple.var > n {
        return Err(Error::IndexOutOfRange {
            index: triple.var,
            n,
        });
    }
    let stride = q.pow((triple.var - 1) as u32);
    let mut coeffs = quotient.coeffs().to_vec();
    let mut t = 0u64;
    for (idx, slot) in coeffs.iter_mut().enumerate() {
        if idx / stride % q <= q - 2 {
            *slot = (hash64(seed, t) % q as u64) as u8;
            t += 1;
        }
    }
    quotient = AnfPolynomial::new(Arc::clone(field), n, coeffs)?;
    construct_multi(triple.var, &[(triple.input, triple.output)], &quotient)
}

fn check_var(f: &TruthTable, i: usize) -> Result<()> {
    if i >= 1 && i <= f.n() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, n: f.n() })
    }
}
