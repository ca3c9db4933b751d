//! Functions `F_q^n -> F_q` as truth tables and ANF coefficient vectors.
//!
//! Both representations share one index encoding: the point (or exponent
//! tuple) `(x_1, ..., x_n)` maps to `sum x_i * q^(i-1)`, so `x_1` varies
//! fastest. A truth table stores the value at every point in that order; an
//! ANF polynomial stores the coefficient of `x_1^{k_1} ... x_n^{k_n}` at the
//! index of `(k_1, ..., k_n)`. The ANF with every exponent below q is unique,
//! so coefficient vectors compare like values.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Field;
use crate::Result;

/// Single-function operations refuse tables longer than this.
pub const MAX_POINTS: usize = 1 << 24;

/// Function-space enumeration refuses more than this many tables.
pub const MAX_TABLES: u64 = 1 << 40;

/// Index of a point (or exponent tuple) in canonical order.
pub fn point_index(q: usize, point: &[u8]) -> usize {
    let mut idx = 0usize;
    for &c in point.iter().rev() {
        idx = idx * q + c as usize;
    }
    idx
}

/// Point with the given canonical index.
pub fn index_point(q: usize, n: usize, mut index: usize) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let c = index % q;
            index /= q;
            c as u8
        })
        .collect()
}

fn checked_points(q: usize, n: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..n {
        len = len
            .checked_mul(q)
            .filter(|&l| l <= MAX_POINTS)
            .ok_or(Error::SizeLimitExceeded {
                what: "q^n points per function",
            })?;
    }
    Ok(len)
}

/// A function given by its full value vector.
#[derive(Debug, Clone)]
pub struct TruthTable {
    field: Arc<Field>,
    n: usize,
    values: Vec<u8>,
}

impl PartialEq for TruthTable {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.n == other.n && self.values == other.values
    }
}

impl Eq for TruthTable {}

impl TruthTable {
    pub fn new(field: Arc<Field>, n: usize, values: Vec<u8>) -> Result<Self> {
        let len = checked_points(field.q(), n)?;
        if values.len() != len {
            return Err(Error::DimensionMismatch);
        }
        for &v in &values {
            field.check_code(v)?;
        }
        Ok(TruthTable { field, n, values })
    }

    /// The constant function `b`.
    pub fn constant(field: Arc<Field>, n: usize, b: u8) -> Result<Self> {
        field.check_code(b)?;
        let len = checked_points(field.q(), n)?;
        Ok(TruthTable {
            field,
            n,
            values: vec![b; len],
        })
    }

    /// Builds a table by evaluating `f` at every point in canonical order.
    pub fn from_fn(field: Arc<Field>, n: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let q = field.q();
        let len = checked_points(q, n)?;
        let mut point = vec![0u8; n];
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            values.push(f(&point));
            increment_point(&mut point, q);
        }
        TruthTable::new(field, n, values)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Value at a point.
    pub fn value_at(&self, point: &[u8]) -> Result<u8> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch);
        }
        for &c in point {
            self.field.check_code(c)?;
        }
        Ok(self.values[point_index(self.q(), point)])
    }

    /// `Some(b)` when the function is constantly `b`.
    pub fn constant_value(&self) -> Option<u8> {
        let first = self.values[0];
        self.values.iter().all(|&v| v == first).then_some(first)
    }

    /// The (n-1)-variable function obtained by fixing `x_i = a`.
    pub fn restrict(&self, i: usize, a: u8) -> Result<TruthTable> {
        self.check_var(i)?;
        self.field.check_code(a)?;
        let q = self.q();
        let stride = q.pow((i - 1) as u32);
        let block = stride * q;
        let mut out = Vec::with_capacity(self.values.len() / q);
        for base in (0..self.values.len()).step_by(block) {
            let start = base + a as usize * stride;
            out.extend_from_slice(&self.values[start..start + stride]);
        }
        Ok(TruthTable {
            field: Arc::clone(&self.field),
            n: self.n - 1,
            values: out,
        })
    }

    /// True when some setting of the other variables lets `x_i` change the
    /// output, i.e. two restrictions of `x_i` differ.
    pub fn is_essential(&self, i: usize) -> Result<bool> {
        self.check_var(i)?;
        let q = self.q();
        let stride = q.pow((i - 1) as u32);
        let block = stride * q;
        for base in (0..self.values.len()).step_by(block) {
            for off in 0..stride {
                let first = self.values[base + off];
                for r in 1..q {
                    if self.values[base + r * stride + off] != first {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Sorted indices of all essential variables.
    pub fn essential_variables(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.is_essential(i).unwrap())
            .collect()
    }

    /// The unique ANF with all exponents below q.
    pub fn to_anf(&self) -> AnfPolynomial {
        let mut coeffs = self.values.clone();
        let interp = self.field.interp_matrix();
        for axis in 0..self.n {
            apply_axis(&self.field, &mut coeffs, axis, interp);
        }
        AnfPolynomial {
            field: Arc::clone(&self.field),
            n: self.n,
            coeffs,
        }
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }
}

/// A function in algebraic normal form.
#[derive(Debug, Clone)]
pub struct AnfPolynomial {
    field: Arc<Field>,
    n: usize,
    coeffs: Vec<u8>,
}

impl PartialEq for AnfPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for AnfPolynomial {}

impl AnfPolynomial {
    pub fn new(field: Arc<Field>, n: usize, coeffs: Vec<u8>) -> Result<Self> {
        let len = checked_points(field.q(), n)?;
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch);
        }
        for &c in &coeffs {
            field.check_code(c)?;
        }
        Ok(AnfPolynomial { field, n, coeffs })
    }

    pub fn zero(field: Arc<Field>, n: usize) -> Result<Self> {
        let len = checked_points(field.q(), n)?;
        Ok(AnfPolynomial {
            field,
            n,
            coeffs: vec![0; len],
        })
    }

    /// Sums terms `(coeff, exponents)` into a polynomial; repeated exponent
    /// tuples add in F_q.
    pub fn from_terms(field: Arc<Field>, n: usize, terms: &[(u8, &[u8])]) -> Result<Self> {
        let q = field.q();
        let mut poly = AnfPolynomial::zero(field, n)?;
        for (coeff, exps) in terms {
            poly.field.check_code(*coeff)?;
            if exps.len() != n {
                return Err(Error::DimensionMismatch);
            }
            for &k in *exps {
                poly.field.check_code(k)?;
            }
            let idx = point_index(q, exps);
            poly.coeffs[idx] = poly.field.add(poly.coeffs[idx], *coeff);
        }
        Ok(poly)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Direct evaluation of the coefficient sum at one point. Independent of
    /// the axis-transform path, which makes it a useful cross-check.
    pub fn eval(&self, point: &[u8]) -> Result<u8> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch);
        }
        for &c in point {
            self.field.check_code(c)?;
        }
        let q = self.q();
        let f = &*self.field;
        let mut acc = 0u8;
        for (idx, &coeff) in self.coeffs.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut term = coeff;
            let mut rest = idx;
            for &x in point {
                let k = rest % q;
                rest /= q;
                if k != 0 {
                    term = f.mul(term, f.pow_small(x, k));
                }
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    /// The value vector of this polynomial.
    pub fn to_table(&self) -> TruthTable {
        let mut values = self.coeffs.clone();
        let eval = self.field.eval_matrix();
        for axis in 0..self.n {
            apply_axis(&self.field, &mut values, axis, eval);
        }
        TruthTable {
            field: Arc::clone(&self.field),
            n: self.n,
            values,
        }
    }

    /// Largest total degree of a term with nonzero coefficient; -1 for the
    /// zero polynomial.
    pub fn degree(&self) -> i64 {
        let q = self.q();
        let mut best: i64 = -1;
        for (idx, &coeff) in self.coeffs.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut total = 0i64;
            let mut rest = idx;
            while rest > 0 {
                total += (rest % q) as i64;
                rest /= q;
            }
            best = best.max(total);
        }
        best
    }

    /// Largest exponent of `x_i` over nonzero terms; 0 when `x_i` does not
    /// appear (in particular for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> Result<i64> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        let q = self.q();
        let stride = q.pow((i - 1) as u32);
        let mut best = 0i64;
        for (idx, &coeff) in self.coeffs.iter().enumerate() {
            if coeff != 0 {
                best = best.max((idx / stride % q) as i64);
            }
        }
        Ok(best)
    }
}

/// Applies a q x q matrix along one axis of the coefficient/value cube:
/// every line in direction `axis` is replaced by `matrix * line`.
fn apply_axis(field: &Field, data: &mut [u8], axis: usize, matrix: &[u8]) {
    let q = field.q();
    let stride = q.pow(axis as u32);
    let block = stride * q;
    let mut line = vec![0u8; q];
    let mut out = vec![0u8; q];
    for base in (0..data.len()).step_by(block) {
        for off in 0..stride {
            let start = base + off;
            for (r, slot) in line.iter_mut().enumerate() {
                *slot = data[start + r * stride];
            }
            for (k, slot) in out.iter_mut().enumerate() {
                let row = &matrix[k * q..(k + 1) * q];
                let mut acc = 0u8;
                for r in 0..q {
                    if line[r] != 0 && row[r] != 0 {
                        acc = field.add(acc, field.mul(row[r], line[r]));
                    }
                }
                *slot = acc;
            }
            for (k, &v) in out.iter().enumerate() {
                data[start + k * stride] = v;
            }
        }
    }
}

fn increment_point(point: &mut [u8], q: usize) {
    for c in point.iter_mut() {
        if (*c as usize) + 1 < q {
            *c += 1;
            return;
        }
        *c = 0;
    }
}

/// Number of functions `q^(q^n)`, guarded by [`MAX_TABLES`].
pub fn table_space_size(q: u64, n: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::NotPrimePower { q });
    }
    let err = Error::SizeLimitExceeded {
        what: "q^(q^n) functions to enumerate",
    };
    // q^(q^n) <= 2^40 forces q^n <= 40, so both powers stay tiny.
    let mut points = 1u64;
    for _ in 0..n {
        points = points.checked_mul(q).filter(|&v| v <= 64).ok_or(err.clone())?;
    }
    let mut total = 1u64;
    for _ in 0..points {
        total = total
            .checked_mul(q)
            .filter(|&v| v <= MAX_TABLES)
            .ok_or(err.clone())?;
    }
    Ok(total)
}

/// Streams every function `F_q^n -> F_q` exactly once, in lexicographic
/// order of the value vector.
pub fn iterate_tables(field: &Arc<Field>, n: usize) -> Result<TableIter> {
    let total = table_space_size(field.q() as u64, n as u64)?;
    iterate_tables_range(field, n, 0, total)
}

/// Streams the functions with enumeration indices in `start..end`. Disjoint
/// ranges partition the space, so independent workers can each take one.
pub fn iterate_tables_range(field: &Arc<Field>, n: usize, start: u64, end: u64) -> Result<TableIter> {
    let total = table_space_size(field.q() as u64, n as u64)?;
    let end = end.min(total);
    let start = start.min(end);
    let len = checked_points(field.q(), n)?;
    Ok(TableIter {
        field: Arc::clone(field),
        n,
        next: start,
        end,
        values: digits_of(start, field.q(), len),
    })
}

/// Value vector of the function with a given enumeration index: the vector
/// read left to right is the index written in base q, most significant first.
pub(crate) fn digits_of(index: u64, q: usize, len: usize) -> Vec<u8> {
    let mut values = vec![0u8; len];
    let mut rest = index;
    for slot in values.iter_mut().rev() {
        *slot = (rest % q as u64) as u8;
        rest /= q as u64;
    }
    values
}

/// Advances a value vector to the next function in enumeration order.
pub(crate) fn increment_table(values: &mut [u8], q: usize) {
    for slot in values.iter_mut().rev() {
        if (*slot as usize) + 1 < q {
            *slot += 1;
            return;
        }
        *slot = 0;
    }
}

/// Iterator over a contiguous slice of the function space.
pub struct TableIter {
    field: Arc<Field>,
    n: usize,
    next: u64,
    end: u64,
    values: Vec<u8>,
}

impl Iterator for TableIter {
    type Item = TruthTable;

    fn next(&mut self) -> Option<TruthTable> {
        if self.next >= self.end {
            return None;
        }
        let table = TruthTable {
            field: Arc::clone(&self.field),
            n: self.n,
            values: self.values.clone(),
        };
        increment_table(&mut self.values, self.field.q());
        self.next += 1;
        Some(table)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::make_field;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(make_field(q).unwrap())
    }

    #[test]
    fn index_encoding_round_trips() {
        for q in [2usize, 3, 5] {
            for n in 0..=3 {
                let len = q.pow(n as u32);
                for idx in 0..len {
                    let p = index_point(q, n, idx);
                    assert_eq!(point_index(q, &p), idx);
                }
            }
        }
    }

    #[test]
    fn eval_zero_polynomial() {
        let f = field(5);
        let z = AnfPolynomial::zero(Arc::clone(&f), 2).unwrap();
        assert_eq!(z.eval(&[3, 4]).unwrap(), 0);
        assert_eq!(z.degree(), -1);
        assert_eq!(z.degree_in(1).unwrap(), 0);
    }

    #[test]
    fn eval_square_mod_three() {
        let f = field(3);
        let p = AnfPolynomial::from_terms(Arc::clone(&f), 1, &[(1, &[2])]).unwrap();
        assert_eq!(p.eval(&[2]).unwrap(), 1);
        assert_eq!(p.to_table().values(), &[0, 1, 1]);
    }

    /// 2(x1-3)^3(x1-2)x2 + 1 over F_5, expanded to ANF.
    pub(crate) fn five_state_example() -> AnfPolynomial {
        let f = field(5);
        AnfPolynomial::from_terms(
            Arc::clone(&f),
            3,
            &[
                (1, &[0, 0, 0]),
                (3, &[0, 1, 0]),
                (3, &[1, 1, 0]),
                (3, &[3, 1, 0]),
                (2, &[4, 1, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn five_state_example_matches_its_factored_form() {
        let p = five_state_example();
        let f = Arc::clone(p.field());
        let factored = TruthTable::from_fn(Arc::clone(&f), 3, |x| {
            let d3 = f.sub(x[0], 3);
            let d2 = f.sub(x[0], 2);
            let prod = f.mul(f.mul(f.mul(f.pow_small(d3, 3), d2), x[1]), 2);
            f.add(prod, 1)
        })
        .unwrap();
        assert_eq!(p.to_table(), factored);
        assert_eq!(p.eval(&[3, 4, 0]).unwrap(), 1);
        assert_eq!(p.degree(), 5);
        assert_eq!(p.degree_in(1).unwrap(), 4);
        assert_eq!(p.degree_in(2).unwrap(), 1);
        assert_eq!(p.degree_in(3).unwrap(), 0);
        assert_eq!(p.to_table().essential_variables(), vec![1, 2]);
    }

    #[test]
    fn and_table_conversions() {
        let f = field(2);
        let and = TruthTable::new(Arc::clone(&f), 2, vec![0, 0, 0, 1]).unwrap();
        let anf = and.to_anf();
        // Single term x1*x2.
        assert_eq!(anf.coeffs(), &[0, 0, 0, 1]);
        assert_eq!(anf.to_table(), and);

        let x1 = TruthTable::new(Arc::clone(&f), 1, vec![0, 1]).unwrap();
        assert_eq!(x1.to_anf().coeffs(), &[0, 1]);
    }

    #[test]
    fn constant_table_has_degree_zero_anf() {
        let f = field(5);
        let c = TruthTable::constant(Arc::clone(&f), 2, 3).unwrap();
        let anf = c.to_anf();
        assert_eq!(anf.degree(), 0);
        let mut expected = [0u8; 25];
        expected[0] = 3;
        assert_eq!(anf.coeffs(), &expected[..]);
        assert_eq!(anf.to_table(), c);
    }

    #[test]
    fn restriction_examples() {
        let f = field(2);
        let and = TruthTable::new(Arc::clone(&f), 2, vec![0, 0, 0, 1]).unwrap();
        let r0 = and.restrict(1, 0).unwrap();
        assert_eq!(r0.values(), &[0, 0]);
        let r1 = and.restrict(1, 1).unwrap();
        assert_eq!(r1.values(), &[0, 1]);
        assert!(and.restrict(3, 0).is_err());

        // Restricting the one remaining variable leaves a 0-variable table.
        let point = r1.restrict(1, 1).unwrap();
        assert_eq!(point.n(), 0);
        assert_eq!(point.values(), &[1]);
    }

    #[test]
    fn five_state_example_restriction_is_constant() {
        let table = five_state_example().to_table();
        let r = table.restrict(1, 3).unwrap();
        assert_eq!(r.constant_value(), Some(1));
    }

    #[test]
    fn essential_variables_of_xor_and_constants() {
        let f = field(2);
        let xor = TruthTable::new(Arc::clone(&f), 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(xor.essential_variables(), vec![1, 2]);
        let c = TruthTable::constant(Arc::clone(&f), 2, 1).unwrap();
        assert!(c.essential_variables().is_empty());
    }

    #[test]
    fn enumeration_counts_and_order() {
        let f2 = field(2);
        assert_eq!(iterate_tables(&f2, 1).unwrap().count(), 4);
        assert_eq!(iterate_tables(&f2, 2).unwrap().count(), 16);
        let f3 = field(3);
        assert_eq!(iterate_tables(&f3, 2).unwrap().count(), 19683);

        // Lexicographic in the value vector.
        let mut it = iterate_tables(&f2, 1).unwrap();
        assert_eq!(it.next().unwrap().values(), &[0, 0]);
        assert_eq!(it.next().unwrap().values(), &[0, 1]);
        assert_eq!(it.next().unwrap().values(), &[1, 0]);
        assert_eq!(it.next().unwrap().values(), &[1, 1]);
    }

    #[test]
    fn enumeration_ranges_partition() {
        let f3 = field(3);
        let whole: Vec<_> = iterate_tables(&f3, 1).unwrap().collect();
        let mut parts: Vec<_> = iterate_tables_range(&f3, 1, 0, 10).unwrap().collect();
        parts.extend(iterate_tables_range(&f3, 1, 10, 27).unwrap());
        assert_eq!(whole, parts);
    }

    #[test]
    fn enumeration_limit() {
        assert!(table_space_size(2, 5).is_ok());
        assert!(table_space_size(3, 3).is_err());
        assert!(table_space_size(5, 2).is_err());
        let f = field(5);
        assert!(iterate_tables(&f, 2).is_err());
    }
}
