//! Exact cardinalities of the eight canalyzing families.
//!
//! Every family has a closed-form count obtained by inclusion-exclusion over
//! the pinned-triple families, evaluated here in exact big-integer
//! arithmetic, plus an independent brute-force count that enumerates the
//! whole function space and tests membership from the definition. The two
//! must agree wherever the space is enumerable.
//!
//! Formulas that sum over bounded compositions are restructured so that
//! every intermediate value is an integer: the factorial quotients
//! `q!/(t_1!...t_q!(q-k)!)` become `C(q,k) * multinomial(k; t_1..t_q)`. No
//! rational or floating-point value appears anywhere.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use num_bigint::{BigInt, BigUint};

use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::canalyzing::{member_values, FamilySpec};
use crate::error::Error;
use crate::field::{make_field, prime_power, Field};
use crate::function::{digits_of, increment_table, table_space_size};
use crate::Result;

/// Formula evaluation refuses exponents `q^n` above this.
pub const MAX_FORMULA_EXPONENT: u64 = 1 << 26;

/// Composition-sum formulas refuse to enumerate more tuples than this.
const MAX_ENUM_TERMS: u128 = 1 << 27;

/// Tighter budget for the multinomial sums, whose per-tuple work is heavier.
const MAX_MULTINOMIAL_TERMS: u64 = 1 << 22;

/// Upper limit for the identity evaluation (the double sum is O(n^2)).
const MAX_IDENTITY_N: u64 = 1 << 13;

/// Which closed-form formula produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    Lemma32,
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Cor2,
}

impl FormulaId {
    /// Formula used for a family shape, keyed by which components are pinned.
    pub fn for_family(spec: &FamilySpec) -> FormulaId {
        match (
            spec.var.is_some(),
            spec.input.is_some(),
            spec.output.is_some(),
        ) {
            (true, true, true) => FormulaId::Lemma32,
            (true, false, true) => FormulaId::Thm1,
            (true, true, false) => FormulaId::Cor1,
            (false, true, true) => FormulaId::Thm2,
            (true, false, false) => FormulaId::Thm4,
            (false, true, false) => FormulaId::Cor2,
            (false, false, true) => FormulaId::Thm3,
            (false, false, false) => FormulaId::Thm5,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FormulaId::Lemma32 => "Lemma 3.2",
            FormulaId::Thm1 => "Thm 1",
            FormulaId::Cor1 => "Cor. 1",
            FormulaId::Thm2 => "Thm 2",
            FormulaId::Thm3 => "Thm 3",
            FormulaId::Thm4 => "Thm 4",
            FormulaId::Thm5 => "Thm 5",
            FormulaId::Cor2 => "Cor. 2",
        }
    }
}

/// A single counting result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub family: FamilySpec,
    pub q: u64,
    pub n: u64,
    pub formula: BigUint,
    pub brute: Option<BigUint>,
    pub id: FormulaId,
}

impl CountReport {
    /// True unless a brute count is present and disagrees.
    pub fn consistent(&self) -> bool {
        self.brute.as_ref().is_none_or(|b| *b == self.formula)
    }
}

fn require_prime_power(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower { q })
}

fn require_arity(n: u64) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: 1, n: 0 })
    }
}

fn exponent_guard() -> Error {
    Error::SizeLimitExceeded {
        what: "formula exponent q^n",
    }
}

/// `q^n` as a machine integer, guarded by [`MAX_FORMULA_EXPONENT`].
fn checked_qn(q: u64, n: u64) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..n {
        acc = acc
            .checked_mul(q)
            .filter(|&v| v <= MAX_FORMULA_EXPONENT)
            .ok_or_else(exponent_guard)?;
    }
    Ok(acc)
}

/// `q^e` as a big integer, with `e` checked against the guard.
fn pow_q(q: u64, e: u64) -> Result<BigUint> {
    if e > MAX_FORMULA_EXPONENT {
        return Err(exponent_guard());
    }
    Ok(Pow::pow(BigUint::from(q), e as u32))
}

/// Binomial coefficient with the convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

// --- bounded compositions ---------------------------------------------------

/// Lexicographically smallest tuple of `parts` entries in `0..=bound`
/// summing to `total`, or `None` when infeasible.
fn first_composition(total: u64, parts: usize, bound: u64) -> Option<Vec<u64>> {
    if parts == 0 {
        return (total == 0).then(Vec::new);
    }
    if total > bound.checked_mul(parts as u64)? {
        return None;
    }
    let mut tuple = vec![0u64; parts];
    fill_minimal(&mut tuple, 0, total, bound);
    Some(tuple)
}

/// Rewrites `tuple[from..]` to the lexicographically smallest suffix with
/// the given sum. Caller guarantees feasibility.
fn fill_minimal(tuple: &mut [u64], from: usize, mut total: u64, bound: u64) {
    let parts = tuple.len();
    for (j, slot) in tuple.iter_mut().enumerate().skip(from) {
        let capacity_after = bound * (parts - 1 - j) as u64;
        let here = total.saturating_sub(capacity_after);
        *slot = here;
        total -= here;
    }
    debug_assert_eq!(total, 0);
}

/// Advances to the lexicographic successor with the same sum; false at the end.
fn advance_composition(tuple: &mut [u64], bound: u64) -> bool {
    let parts = tuple.len();
    if parts <= 1 {
        return false;
    }
    let mut suffix_sum = tuple[parts - 1];
    for j in (0..parts - 1).rev() {
        let here = tuple[j];
        if here < bound && suffix_sum >= 1 && suffix_sum - 1 <= bound * (parts - 1 - j) as u64 {
            tuple[j] = here + 1;
            fill_minimal(tuple, j + 1, suffix_sum - 1, bound);
            return true;
        }
        suffix_sum += here;
    }
    false
}

/// Streams every tuple of `parts` entries in `0..=bound` with the given sum,
/// in lexicographic order, each exactly once.
pub fn bounded_compositions(total: u64, parts: usize, bound: u64) -> BoundedCompositions {
    BoundedCompositions {
        state: first_composition(total, parts, bound),
        bound,
    }
}

pub struct BoundedCompositions {
    state: Option<Vec<u64>>,
    bound: u64,
}

impl Iterator for BoundedCompositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.state.take()?;
        let mut next = current.clone();
        if advance_composition(&mut next, self.bound) {
            self.state = Some(next);
        }
        Some(current)
    }
}

/// Non-allocating visitor over the same tuples.
fn for_each_composition(total: u64, parts: usize, bound: u64, mut f: impl FnMut(&[u64])) {
    let Some(mut tuple) = first_composition(total, parts, bound) else {
        return;
    };
    loop {
        f(&tuple);
        if !advance_composition(&mut tuple, bound) {
            return;
        }
    }
}

// --- signed accumulator of c * q^e terms --------------------------------------

#[derive(Default)]
struct CoefAcc {
    small: i128,
    big: BigInt,
}

/// Collects signed coefficients per exponent so the expensive big-integer
/// powers are taken once per distinct exponent, not once per tuple.
#[derive(Default)]
struct SignedPowAcc {
    terms: BTreeMap<u64, CoefAcc>,
}

impl SignedPowAcc {
    fn add_u128(&mut self, e: u64, c: u128, negative: bool) {
        let entry = self.terms.entry(e).or_default();
        if c <= i128::MAX as u128 {
            let signed = if negative { -(c as i128) } else { c as i128 };
            if let Some(v) = entry.small.checked_add(signed) {
                entry.small = v;
                return;
            }
        }
        let mut b = BigInt::from(c);
        if negative {
            b = -b;
        }
        entry.big += b;
    }

    fn add_big(&mut self, e: u64, c: BigUint, negative: bool) {
        let entry = self.terms.entry(e).or_default();
        let mut b = BigInt::from(c);
        if negative {
            b = -b;
        }
        entry.big += b;
    }

    fn total(self, q: u64) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (e, coef) in self.terms {
            let c = BigInt::from(coef.small) + coef.big;
            if c.is_zero() {
                continue;
            }
            acc += c * BigInt::from(pow_q(q, e)?);
        }
        Ok(acc)
    }
}

// --- the eight closed forms ----------------------------------------------------

/// Exact size of the family selected by `spec`, dispatching on which
/// components are pinned. The value does not depend on the pinned values
/// themselves, only on the shape.
pub fn count_formula(spec: &FamilySpec, q: u64, n: u64) -> Result<CountReport> {
    require_prime_power(q)?;
    require_arity(n)?;
    spec.validate(q, n)?;
    let id = FormulaId::for_family(spec);
    let points = checked_qn(q, n)?;
    let sub = points / q; // q^(n-1)
    let formula = match id {
        FormulaId::Lemma32 => pow_q(q, points - sub)?,
        FormulaId::Cor1 => pow_q(q, points - sub + 1)?,
        FormulaId::Thm1 => {
            // q^(q^n) - (q^(q^(n-1)) - 1)^q
            let whole = pow_q(q, points)?;
            let inner = pow_q(q, sub)? - BigUint::one();
            whole - Pow::pow(inner, q as u32)
        }
        FormulaId::Thm2 => to_count(union_over_variables(q, n)?),
        FormulaId::Cor2 => to_count(union_over_variables(q, n)? * BigInt::from(q)),
        FormulaId::Thm3 => to_count(union_over_cells(q, n, CellSum::SharedOutput)?),
        FormulaId::Thm4 => to_count(union_over_input_output_cells(q, sub)?),
        FormulaId::Thm5 => {
            // Selections inside one variable reduce to the fixed-variable sum
            // (times n for the variable choice); selections spread over
            // several variables are the bounded tuples with every entry
            // below the selection size. The two classes are disjoint.
            let concentrated = BigInt::from(n) * union_over_input_output_cells(q, sub)?;
            let spread = union_over_cells(q, n, CellSum::SpreadAnyOutput)?;
            to_count(concentrated + spread)
        }
    };
    Ok(CountReport {
        family: *spec,
        q,
        n,
        formula,
        brute: None,
        id,
    })
}

fn to_count(value: BigInt) -> BigUint {
    value
        .to_biguint()
        .expect("inclusion-exclusion family counts are nonnegative")
}

/// `sum_{k=1..n} (-1)^(k-1) C(n,k) q^((q-1)^k q^(n-k))`.
fn union_over_variables(q: u64, n: u64) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for k in 1..=n {
        let e = checked_exponent_vars(q, n, k)?;
        let term = BigInt::from(binomial(n, k)) * BigInt::from(pow_q(q, e)?);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `(q-1)^k * q^(n-k)`, checked against the exponent guard.
fn checked_exponent_vars(q: u64, n: u64, k: u64) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc
            .checked_mul(q - 1)
            .filter(|&v| v <= MAX_FORMULA_EXPONENT)
            .ok_or_else(exponent_guard)?;
    }
    for _ in 0..n - k {
        acc = acc
            .checked_mul(q)
            .filter(|&v| v <= MAX_FORMULA_EXPONENT)
            .ok_or_else(exponent_guard)?;
    }
    Ok(acc)
}

/// Which per-variable selections a cell sum ranges over.
enum CellSum {
    /// One shared output: entries `0..=q`, every tuple of the given sum.
    SharedOutput,
    /// Arbitrary outputs, spread over several variables: entries capped at
    /// `k - 1` so no single variable carries the whole selection, and the
    /// whole sum picks up a factor q for the choice of the shared output.
    SpreadAnyOutput,
}

/// Inclusion-exclusion over selections of (variable, input) cells:
/// `sum_{k>=1} (-1)^(k-1) sum_{k_1+..+k_n=k} prod_j C(q,k_j) * q^(prod_j (q-k_j))`.
fn union_over_cells(q: u64, n: u64, mode: CellSum) -> Result<BigInt> {
    ensure_enumeration_budget(q, n)?;
    let parts = n as usize;
    let row = BinomialRow::new(q);
    let multiplier = match mode {
        CellSum::SharedOutput => 1u64,
        CellSum::SpreadAnyOutput => q,
    };
    let mut acc = SignedPowAcc::default();
    let top = n.checked_mul(q).ok_or_else(exponent_guard)?;
    for k in 1..=top {
        let bound = match mode {
            CellSum::SharedOutput => q,
            CellSum::SpreadAnyOutput => (k - 1).min(q),
        };
        let negative = k % 2 == 0;
        for_each_composition(k, parts, bound, |tuple| {
            let mut exponent = 1u64;
            for &kj in tuple {
                exponent *= q - kj;
            }
            let fast = row
                .product_u128(tuple)
                .and_then(|c| c.checked_mul(multiplier as u128));
            match fast {
                Some(c) => acc.add_u128(exponent, c, negative),
                None => {
                    let c = row.product_big(tuple) * BigUint::from(multiplier);
                    acc.add_big(exponent, c, negative);
                }
            }
        });
    }
    acc.total(q)
}

/// Inclusion-exclusion over (input, output) cells of one fixed variable:
/// `sum_{k=1..q} (-1)^(k-1) C(q,k) M_k q^((q-k) q^(n-1))` where `M_k` sums
/// `multinomial(k; t_1..t_q)` over bounded compositions of k.
fn union_over_input_output_cells(q: u64, sub: u64) -> Result<BigInt> {
    ensure_multinomial_budget(q)?;
    let pascal = PascalTriangle::new(q);
    let mut acc = BigInt::zero();
    for k in 1..=q {
        let mut inner = BigUint::zero();
        for_each_composition(k, q as usize, q, |tuple| {
            inner += pascal.multinomial(k, tuple);
        });
        let term =
            BigInt::from(binomial(q, k) * inner * pow_q(q, (q - k) * sub)?);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

fn ensure_enumeration_budget(q: u64, n: u64) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(q as u128 + 1)
            .filter(|&v| v <= MAX_ENUM_TERMS)
            .ok_or(Error::SizeLimitExceeded {
                what: "composition enumeration (q+1)^n",
            })?;
    }
    Ok(())
}

fn ensure_multinomial_budget(q: u64) -> Result<()> {
    // Total tuples across k = 1..q is C(2q, q) - 1.
    if binomial(2 * q, q) > BigUint::from(MAX_MULTINOMIAL_TERMS) {
        return Err(Error::SizeLimitExceeded {
            what: "multinomial enumeration C(2q, q)",
        });
    }
    Ok(())
}

/// Row `C(q, 0..=q)` with a u128 fast path.
struct BinomialRow {
    big: Vec<BigUint>,
    small: Option<Vec<u128>>,
}

impl BinomialRow {
    fn new(q: u64) -> Self {
        let mut big = Vec::with_capacity(q as usize + 1);
        big.push(BigUint::one());
        for j in 1..=q {
            let next = &big[(j - 1) as usize] * BigUint::from(q - j + 1) / BigUint::from(j);
            big.push(next);
        }
        let small = big.iter().map(|b| b.to_u128()).collect();
        BinomialRow { big, small }
    }

    fn product_u128(&self, tuple: &[u64]) -> Option<u128> {
        let small = self.small.as_ref()?;
        let mut acc: u128 = 1;
        for &kj in tuple {
            acc = acc.checked_mul(small[kj as usize])?;
        }
        Some(acc)
    }

    fn product_big(&self, tuple: &[u64]) -> BigUint {
        let mut acc = BigUint::one();
        for &kj in tuple {
            acc *= &self.big[kj as usize];
        }
        acc
    }
}

/// Binomials `C(a, b)` for all `a <= q`, for exact multinomials.
struct PascalTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl PascalTriangle {
    fn new(q: u64) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(q as usize + 1);
        for a in 0..=q as usize {
            let mut row = vec![BigUint::one(); a + 1];
            for b in 1..a {
                row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
            }
            rows.push(row);
        }
        PascalTriangle { rows }
    }

    /// `k! / (t_1! ... t_q!)` as a product of binomials of the remainders.
    fn multinomial(&self, k: u64, tuple: &[u64]) -> BigUint {
        let mut rem = k as usize;
        let mut acc = BigUint::one();
        for &t in tuple {
            if t == 0 {
                continue;
            }
            acc *= &self.rows[rem][t as usize];
            rem -= t as usize;
        }
        acc
    }
}

// --- intersection counts --------------------------------------------------------

/// Size of the intersection of `<i:a_j:b>` over k distinct inputs with one
/// shared output: `q^(q^n - k q^(n-1))`; 1 when k = q.
pub fn count_intersection_inputs(q: u64, n: u64, k: u64) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    if k > q {
        return Err(Error::TooManyPairs {
            given: k as usize,
            q,
        });
    }
    let points = checked_qn(q, n)?;
    let sub = points / q;
    pow_q(q, points - k * sub)
}

/// Size of the intersection of `<i_j:a:b>` over k distinct variables with
/// one shared input and output: `q^((q-1)^k q^(n-k))`.
pub fn count_intersection_vars(q: u64, n: u64, k: u64) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    if k > n {
        return Err(Error::IndexOutOfRange {
            index: k as usize,
            n: n as usize,
        });
    }
    checked_qn(q, n)?;
    let e = checked_exponent_vars(q, n, k)?;
    pow_q(q, e)
}

/// Mixed intersection with `k_i` pinned inputs on variable i and one shared
/// output: `q^((q-k_1)(q-k_2)...(q-k_n))`. All-zero parts impose nothing and
/// give the whole space.
pub fn count_intersection_grid(q: u64, n: u64, parts: &[u64]) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    if parts.len() as u64 != n {
        return Err(Error::DimensionMismatch);
    }
    checked_qn(q, n)?;
    let mut e = 1u64;
    for &k in parts {
        if k > q {
            return Err(Error::TooManyPairs {
                given: k as usize,
                q,
            });
        }
        e *= q - k; // at most q^n, which is already guarded
    }
    pow_q(q, e)
}

/// Size of the intersection of `<i:a_j:b_j>` over k distinct inputs with
/// arbitrary outputs: `q^((q-k) q^(n-1))`.
pub fn count_intersection_pairs(q: u64, n: u64, k: u64) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    if k > q {
        return Err(Error::TooManyPairs {
            given: k as usize,
            q,
        });
    }
    let points = checked_qn(q, n)?;
    let sub = points / q;
    pow_q(q, (q - k) * sub)
}

/// Size of the intersection for groups of distinct inputs sharing one output
/// per group: `q^((q - k_1 - ... - k_r) q^(n-1))`. Depends only on the total
/// number of pinned inputs.
pub fn count_intersection_grouped(q: u64, n: u64, groups: &[u64]) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    let mut total = 0u64;
    for &k in groups {
        total = total.checked_add(k).ok_or(Error::TooManyPairs {
            given: usize::MAX,
            q,
        })?;
    }
    if total > q {
        return Err(Error::TooManyPairs {
            given: total as usize,
            q,
        });
    }
    count_intersection_pairs(q, n, total)
}

// --- assorted exact quantities ------------------------------------------------

/// `n (q^(q-1) - 1)`: the stated count of one-essential-variable canalyzing
/// functions with a pinned canalyzed output. Reported verbatim; functions
/// canalyzing to several outputs keep it from matching plain enumeration, so
/// no brute-force twin exists for it.
pub fn count_single_essential(q: u64, n: u64) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    let per_var = pow_q(q, q - 1)? - BigUint::one();
    Ok(per_var * BigUint::from(n))
}

/// The reduced q = 2 expression for the number of canalyzing functions:
/// `-4n + sum_{1<=k<=n} (-1)^(k+1) C(n,k) 2^(k+1) 2^(2^(n-k))` plus the
/// signed double sum whose closed form is `2((-1)^n + n)`.
pub fn boolean_specialization(n: u64) -> Result<BigUint> {
    require_arity(n)?;
    // The k = 1 term carries 2^(2^(n-1)); n <= 27 keeps it under the guard.
    if n > 27 {
        return Err(exponent_guard());
    }
    let mut acc = BigInt::from(-4i64) * BigInt::from(n);
    for k in 1..=n {
        let e = 1u64
            .checked_shl((n - k) as u32)
            .filter(|&v| v <= MAX_FORMULA_EXPONENT)
            .ok_or_else(exponent_guard)?;
        let term = BigInt::from(binomial(n, k) * pow_q(2, k + 1)? * pow_q(2, e)?);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let (lhs, _) = identity_sides(n)?;
    acc += lhs;
    Ok(to_count(acc))
}

/// Both sides of the combinatorial identity
/// `sum_{3<=k<=2n} (-1)^(k-1) sum_{1<=t<=k/2} C(n,t) C(n-t,k-2t) 2^(k-2t+1)
///  = 2((-1)^n + n)`.
/// The left side is an empty sum for n = 1.
pub fn identity_sides(n: u64) -> Result<(BigInt, BigInt)> {
    require_arity(n)?;
    if n > MAX_IDENTITY_N {
        return Err(Error::SizeLimitExceeded {
            what: "identity evaluation order n",
        });
    }
    let mut lhs = BigInt::zero();
    for k in 3..=2 * n {
        let mut inner = BigUint::zero();
        for t in 1..=k / 2 {
            if t > n {
                break;
            }
            inner += binomial(n, t) * binomial(n - t, k - 2 * t) * pow_q(2, k - 2 * t + 1)?;
        }
        if k % 2 == 1 {
            lhs += BigInt::from(inner);
        } else {
            lhs -= BigInt::from(inner);
        }
    }
    let sign = if n.is_multiple_of(2) { 1i64 } else { -1 };
    let rhs = BigInt::from(2) * (BigInt::from(sign) + BigInt::from(n));
    Ok((lhs, rhs))
}

/// Leading-term approximation of a family count: a small coefficient times
/// `q^((q-1) q^(n-1))`. Exact, not just asymptotic, for the `<i:a:b>` and
/// `<i:a:*>` families.
pub fn asymptote(spec: &FamilySpec, q: u64, n: u64) -> Result<BigUint> {
    require_prime_power(q)?;
    require_arity(n)?;
    spec.validate(q, n)?;
    let points = checked_qn(q, n)?;
    let sub = points / q;
    let coefficient = match (
        spec.var.is_some(),
        spec.input.is_some(),
        spec.output.is_some(),
    ) {
        (true, true, true) => BigUint::one(),
        (true, true, false) | (true, false, true) => BigUint::from(q),
        (false, true, true) => BigUint::from(n),
        (true, false, false) => BigUint::from(q) * BigUint::from(q),
        (false, true, false) | (false, false, true) => BigUint::from(n) * BigUint::from(q),
        (false, false, false) => BigUint::from(n) * BigUint::from(q) * BigUint::from(q),
    };
    Ok(coefficient * pow_q(q, points - sub)?)
}

/// Exact ratio `count / asymptote` for a family.
pub fn asymptote_ratio(spec: &FamilySpec, q: u64, n: u64) -> Result<ExactRatio> {
    let count = count_formula(spec, q, n)?.formula;
    let approx = asymptote(spec, q, n)?;
    ExactRatio::new(count, approx)
}

/// `n q^2 q^((q-1) q^(n-1))`, an upper bound for the all-wild family.
pub fn upper_bound(q: u64, n: u64) -> Result<BigUint> {
    asymptote(&FamilySpec::any(), q, n)
}

/// Checks the all-wild count against [`upper_bound`].
pub fn upper_bound_check(q: u64, n: u64) -> Result<bool> {
    let count = count_formula(&FamilySpec::any(), q, n)?.formula;
    Ok(count <= upper_bound(q, n)?)
}

/// A reduced nonnegative rational with exact decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRatio {
    numer: BigUint,
    denom: BigUint,
}

impl ExactRatio {
    pub fn new(numer: BigUint, denom: BigUint) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = numer.gcd(&denom);
        Ok(ExactRatio {
            numer: &numer / &g,
            denom: &denom / &g,
        })
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_one(&self) -> bool {
        self.numer == self.denom
    }

    /// True when `|self - 1| < |other - 1|`, compared exactly.
    pub fn closer_to_one_than(&self, other: &ExactRatio) -> bool {
        let gap_self = if self.numer >= self.denom {
            &self.numer - &self.denom
        } else {
            &self.denom - &self.numer
        };
        let gap_other = if other.numer >= other.denom {
            &other.numer - &other.denom
        } else {
            &other.denom - &other.numer
        };
        gap_self * &other.denom < gap_other * &self.denom
    }

    /// Decimal rendering with the requested number of fractional digits,
    /// rounded half to even. The underlying value stays exact.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten = BigUint::from(10u32);
        let (mut int_part, mut rem) = self.numer.div_rem(&self.denom);
        let mut frac = Vec::with_capacity(digits);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(&self.denom);
            frac.push(d.to_u8().unwrap());
            rem = r;
        }
        let doubled: BigUint = &rem << 1u32;
        let round_up = match doubled.cmp(&self.denom) {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Less => false,
            core::cmp::Ordering::Equal => {
                let last_even = frac
                    .last()
                    .map(|&d| d % 2 == 0)
                    .unwrap_or_else(|| (&int_part % 2u32).is_zero());
                !last_even
            }
        };
        if round_up {
            let mut carried = true;
            for d in frac.iter_mut().rev() {
                if *d == 9 {
                    *d = 0;
                } else {
                    *d += 1;
                    carried = false;
                    break;
                }
            }
            if carried {
                int_part += 1u32;
            }
        }
        let mut out = int_part.to_str_radix(10);
        if digits > 0 {
            out.push('.');
            for d in frac {
                out.push((b'0' + d) as char);
            }
        }
        out
    }
}

// --- brute force ------------------------------------------------------------------

/// Counts family members by enumerating every function and testing
/// membership from the definition. Independent of every closed form.
pub fn count_brute(spec: &FamilySpec, q: u64, n: u64) -> Result<BigUint> {
    let total = table_space_size(q, n)?;
    let field = make_field(q)?;
    let count = count_brute_range(&field, n as usize, spec, 0, total)?;
    Ok(BigUint::from(count))
}

/// Brute-force count over the enumeration indices `start..end`. Disjoint
/// ranges sum to the full count, which makes worker parallelism a matter of
/// splitting the index range.
pub fn count_brute_range(
    field: &Field,
    n: usize,
    spec: &FamilySpec,
    start: u64,
    end: u64,
) -> Result<u64> {
    let q = field.q() as u64;
    let total = table_space_size(q, n as u64)?;
    spec.validate(q, n as u64)?;
    let end = end.min(total);
    let start = start.min(end);
    let len = (field.q()).pow(n as u32);
    let mut values = digits_of(start, field.q(), len);
    let mut count = 0u64;
    for _ in start..end {
        if member_values(field, n, &values, spec) {
            count += 1;
        }
        increment_table(&mut values, field.q());
    }
    Ok(count)
}

/// Splits `0..total` into at most `workers` contiguous ranges of nearly
/// equal size. Deterministic, so summed chunk counts do not depend on the
/// worker count.
pub fn chunk_ranges(total: u64, workers: usize) -> Vec<(u64, u64)> {
    let workers = workers.max(1) as u64;
    let size = total.div_ceil(workers);
    if size == 0 {
        return Vec::new();
    }
    (0..workers)
        .map_while(|j| {
            let start = j.checked_mul(size)?;
            (start < total).then(|| (start, (start + size).min(total)))
        })
        .collect()
}

/// Convenience: formula and brute force side by side.
pub fn count_both(spec: &FamilySpec, q: u64, n: u64) -> Result<CountReport> {
    let mut report = count_formula(spec, q, n)?;
    report.brute = Some(count_brute(spec, q, n)?);
    Ok(report)
}
