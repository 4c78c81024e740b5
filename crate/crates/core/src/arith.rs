//! Exact integer and rational arithmetic plus a small integer linear algebra
//! kernel (determinants, Smith normal form, 3x3 rational solves).
//!
//! All integer work is carried out in `i128` with checked operations; an
//! overflow is reported as [`ArithError::Overflow`] and never wraps.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of an empty list")]
    EmptyList,
    #[error("expected a positive integer, got {0}")]
    NonPositive(i128),
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("singular matrix")]
    Singular,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;

pub(crate) fn add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(ArithError::Overflow)
}

pub(crate) fn sub(x: i128, y: i128) -> Result<i128> {
    x.checked_sub(y).ok_or(ArithError::Overflow)
}

pub(crate) fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(ArithError::Overflow)
}

pub(crate) fn mul_all(values: &[i128]) -> Result<i128> {
    values.iter().try_fold(1i128, |acc, &v| mul(acc, v))
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(x: i128, y: i128) -> i128 {
    let (mut x, mut y) = (x.unsigned_abs(), y.unsigned_abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    // values in this crate are far below 2^127, so the cast back is lossless
    x as i128
}

pub fn gcd_list(values: &[i128]) -> Result<i128> {
    if values.is_empty() {
        return Err(ArithError::EmptyList);
    }
    Ok(values.iter().fold(0, |acc, &v| gcd(acc, v)))
}

pub fn lcm2(x: i128, y: i128) -> Result<i128> {
    if x < 1 {
        return Err(ArithError::NonPositive(x));
    }
    if y < 1 {
        return Err(ArithError::NonPositive(y));
    }
    mul(x / gcd(x, y), y)
}

/// Exact reduced fraction with positive denominator.
///
/// Operator impls panic on overflow; the `checked_*` methods report it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(ArithError::Overflow)?;
            den = den.checked_neg().ok_or(ArithError::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub fn integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i128 {
        -(-self.num).div_euclid(self.den)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let g = gcd(self.den, rhs.den);
        let num = add(mul(self.num, rhs.den / g)?, mul(rhs.num, self.den / g)?)?;
        Rational::new(num, mul(self.den, rhs.den / g)?)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        Rational::new(
            mul(self.num / g1, rhs.num / g2)?,
            mul(self.den / g2, rhs.den / g1)?,
        )
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        self.checked_mul(rhs.recip()?)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Rational {
            num: self.num.checked_neg().ok_or(ArithError::Overflow)?,
            den: self.den,
        })
    }

    pub fn recip(self) -> Result<Self> {
        Rational::new(self.den, self.num)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive so cross-multiplication preserves order
        let lhs = mul(self.num, other.den).expect("rational comparison overflow");
        let rhs = mul(other.num, self.den).expect("rational comparison overflow");
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! rational_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("rational {}: {e}", stringify!($method)))
            }
        }
    };
}

rational_op!(Add, add, checked_add);
rational_op!(Sub, sub, checked_sub);
rational_op!(Mul, mul, checked_mul);
rational_op!(Div, div, checked_div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.checked_neg().expect("rational negation overflow")
    }
}

/// Renders as `num/den`, always with an explicit denominator (`2/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

/// Dense row-major integer matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(ArithError::Shape {
                    expected_rows: rows.len(),
                    expected_cols: cols,
                    rows: rows.len(),
                    cols: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i128]>>(cols: &[C]) -> Result<Self> {
        Ok(IntMatrix::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Submatrix built from the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut m = IntMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: i128) -> Result<()> {
        for j in 0..self.cols {
            let v = add(self.get(target, j), mul(factor, self.get(source, j))?)?;
            self.set(target, j, v);
        }
        Ok(())
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: i128) -> Result<()> {
        for i in 0..self.rows {
            let v = add(self.get(i, target), mul(factor, self.get(i, source))?)?;
            self.set(i, target, v);
        }
        Ok(())
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(ArithError::Shape {
                expected_rows: self.rows,
                expected_cols: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m.get(k, k) == 0 {
                match (k + 1..n).find(|&i| m.get(i, k) != 0) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            let pivot = m.get(k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = sub(mul(pivot, m.get(i, j))?, mul(m.get(i, k), m.get(k, j))?)?;
                    m.set(i, j, v / prev);
                }
                m.set(i, k, 0);
            }
            prev = pivot;
        }
        mul(sign, m.get(n - 1, n - 1))
    }
}

pub fn det3(m: &IntMatrix) -> Result<i128> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(ArithError::Shape {
            expected_rows: 3,
            expected_cols: 3,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let e = |i, j| m.get(i, j);
    let minor = |j1: usize, j2: usize| sub(mul(e(1, j1), e(2, j2))?, mul(e(1, j2), e(2, j1))?);
    let t0 = mul(e(0, 0), minor(1, 2)?)?;
    let t1 = mul(e(0, 1), minor(0, 2)?)?;
    let t2 = mul(e(0, 2), minor(0, 1)?)?;
    add(sub(t0, t1)?, t2)
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix.
///
/// `invariant_factors` has `min(rows, cols)` entries, trailing zeros for
/// the rank deficiency. The cokernel of the column span is
/// `Z^(rows - rank) x Z/d_1 x ... x Z/d_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<i128>,
    pub rank: usize,
    pub rows: usize,
}

impl SmithForm {
    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank
    }

    /// Order of the torsion part of the cokernel.
    pub fn cokernel_torsion(&self) -> Result<i128> {
        mul_all(&self.invariant_factors[..self.rank])
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a.get(i, j) != 0)
            .min_by_key(|&(i, j)| a.get(i, j).unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);

        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_euclid(p);
                if q != 0 {
                    a.add_row_multiple(i, t, -q)?;
                }
                if a.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_euclid(p);
                if q != 0 {
                    a.add_col_multiple(j, t, -q)?;
                }
                if a.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the rest of the block by the pivot
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a.get(i, j) % p != 0);
                match bad {
                    Some((i, _)) => {
                        a.add_row_multiple(t, i, 1)?;
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remainder in row/column t onto the diagonal
            let next = (t..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a.get(i, j) != 0)
                .min_by_key(|&(i, j)| a.get(i, j).unsigned_abs())
                .expect("pivot is nonzero");
            a.swap_rows(t, next.0);
            a.swap_cols(t, next.1);
        }
        t += 1;
    }
    let invariant_factors: Vec<i128> = (0..n).map(|i| a.get(i, i).abs()).collect();
    let rank = invariant_factors.iter().filter(|&&d| d != 0).count();
    Ok(SmithForm {
        invariant_factors,
        rank,
        rows,
    })
}

/// Solves `<u, m_j> = rhs_j` for each column `m_j` of a 3x3 matrix, i.e.
/// `m^T u = rhs`, by Cramer's rule.
pub fn solve3(m: &IntMatrix, rhs: [i128; 3]) -> Result<[Rational; 3]> {
    let mt = m.transpose();
    let det = det3(&mt)?;
    if det == 0 {
        return Err(ArithError::Singular);
    }
    let mut out = [Rational::ZERO; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut mk = mt.clone();
        for (i, &r) in rhs.iter().enumerate() {
            mk.set(i, k, r);
        }
        *slot = Rational::new(det3(&mk)?, det)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn gcd_list_examples() {
        assert_eq!(gcd_list(&[2, 2]), Ok(2));
        assert_eq!(gcd_list(&[0, 0]), Ok(0));
        let (a, b, c) = (1i128, 0i128, -2i128);
        assert_eq!(gcd_list(&[2 * a + 1, a - b, -c]), Ok(1));
        assert_eq!(gcd_list(&[-6, 4]), Ok(2));
        assert_eq!(gcd_list(&[]), Err(ArithError::EmptyList));
    }

    #[test]
    fn lcm2_examples() {
        assert_eq!(lcm2(1, 1), Ok(1));
        assert_eq!(lcm2(1, 4), Ok(4));
        assert_eq!(lcm2(6, 4), Ok(12));
        assert_eq!(lcm2(0, 4), Err(ArithError::NonPositive(0)));
        assert_eq!(lcm2(3, -1), Err(ArithError::NonPositive(-1)));
    }

    #[test]
    fn det3_examples() {
        assert_eq!(det3(&IntMatrix::identity(3)), Ok(1));
        // [v1, v3, v4] and [v2, v3, v4] of the Picard number one matrix with (a, b) = (0, -2)
        let plus = IntMatrix::from_columns(&[[-1, -1, 0], [2, 0, 1], [0, 2, 1]]).unwrap();
        assert_eq!(det3(&plus), Ok(4));
        let minus = IntMatrix::from_columns(&[[-1, -1, -2], [2, 0, 1], [0, 2, 1]]).unwrap();
        assert_eq!(det3(&minus), Ok(-4));
        assert!(matches!(
            det3(&IntMatrix::zeros(2, 3)),
            Err(ArithError::Shape { .. })
        ));
    }

    #[test]
    fn smith_examples() {
        let z = smith_normal_form(&IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z.invariant_factors, vec![0, 0]);
        assert_eq!(z.rank, 0);

        let d = IntMatrix::from_rows(&[[2, 0], [0, 6]]).unwrap();
        assert_eq!(smith_normal_form(&d).unwrap().invariant_factors, vec![2, 6]);

        let d = IntMatrix::from_rows(&[[6, 0], [0, 4]]).unwrap();
        assert_eq!(smith_normal_form(&d).unwrap().invariant_factors, vec![2, 12]);

        // transpose of the Picard number one matrix with (a, b) = (0, -2)
        let p = IntMatrix::from_rows(&[[-1, -1, 2, 0], [-1, -1, 0, 2], [0, -2, 1, 1]]).unwrap();
        let s = smith_normal_form(&p.transpose()).unwrap();
        assert_eq!(s.invariant_factors, vec![1, 1, 4]);
        assert_eq!(s.rank, 3);
        assert_eq!(s.cokernel_free_rank(), 1);
        assert_eq!(s.cokernel_torsion(), Ok(4));
    }

    #[test]
    fn solve3_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(
            solve3(&id, [1, 2, 3]).unwrap(),
            [r(1, 1), r(2, 1), r(3, 1)]
        );
        let plus = IntMatrix::from_columns(&[[-1, -1, 0], [2, 0, 1], [0, 2, 1]]).unwrap();
        assert_eq!(
            solve3(&plus, [0, 1, 1]).unwrap(),
            [Rational::ZERO, Rational::ZERO, Rational::ONE]
        );
        // minus cone for (a, b) = (0, -2): u = (1, 1, -1), integral
        let minus = IntMatrix::from_columns(&[[-1, -1, -2], [2, 0, 1], [0, 2, 1]]).unwrap();
        let u = solve3(&minus, [0, 1, 1]).unwrap();
        assert_eq!(u, [Rational::ONE, Rational::ONE, r(-1, 1)]);
        let singular = IntMatrix::from_columns(&[[1, 0, 0], [2, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(solve3(&singular, [1, 1, 1]), Err(ArithError::Singular));
    }

    #[test]
    fn rational_basics() {
        assert_eq!(r(2, -4), r(-1, 2));
        assert_eq!(r(-1, 2).denom(), 2);
        assert_eq!(r(7, 2).floor(), 3);
        assert_eq!(r(-7, 2).floor(), -4);
        assert_eq!(r(-7, 2).ceil(), -3);
        assert_eq!(r(-3, 4).ceil(), 0);
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
        assert_eq!(Rational::new(1, 0), Err(ArithError::DivisionByZero));
        assert_eq!(Rational::ZERO.recip(), Err(ArithError::DivisionByZero));
        assert_eq!("-8/6".parse::<Rational>(), Ok(r(-4, 3)));
        assert_eq!("5".parse::<Rational>(), Ok(r(5, 1)));
        assert_eq!(r(2, 1).to_string(), "2/1");
        let big = Rational::integer(i128::MAX);
        assert_eq!(big.checked_add(big), Err(ArithError::Overflow));
    }

    #[test]
    fn bareiss_matches_det3() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [-1, 3, -1], [0, -1, 2]]).unwrap();
        assert_eq!(m.determinant(), det3(&m));
        assert_eq!(m.determinant(), Ok(8));
        let z = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(z.determinant(), Ok(-1));
    }

    fn det_by_permutations(m: &IntMatrix) -> i128 {
        const PERMS: [([usize; 3], i128); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        PERMS
            .iter()
            .map(|(p, s)| s * m.get(0, p[0]) * m.get(1, p[1]) * m.get(2, p[2]))
            .sum()
    }

    /// Determinantal divisors of a 3x3 matrix: gcd of all k x k minors.
    fn determinantal_divisors(m: &IntMatrix) -> [i128; 3] {
        let mut d1 = 0;
        for i in 0..3 {
            for j in 0..3 {
                d1 = gcd(d1, m.get(i, j));
            }
        }
        let mut d2 = 0;
        for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
            for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
                d2 = gcd(d2, m.get(r1, c1) * m.get(r2, c2) - m.get(r1, c2) * m.get(r2, c1));
            }
        }
        [d1, d2, det_by_permutations(m).abs()]
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-9i128..=9, 9).prop_map(|v| {
            IntMatrix::from_rows(&[&v[0..3], &v[3..6], &v[6..9]]).unwrap()
        })
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i128..1000, 1i128..1000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn det3_matches_permutation_expansion(m in small_matrix()) {
            prop_assert_eq!(det3(&m).unwrap(), det_by_permutations(&m));
            prop_assert_eq!(m.determinant().unwrap(), det_by_permutations(&m));
        }

        #[test]
        fn smith_matches_determinantal_divisors(m in small_matrix()) {
            let s = smith_normal_form(&m).unwrap();
            let f = &s.invariant_factors;
            for k in 0..2 {
                if f[k] != 0 {
                    prop_assert_eq!(f[k + 1] % f[k], 0);
                } else {
                    prop_assert_eq!(f[k + 1], 0);
                }
            }
            let dd = determinantal_divisors(&m);
            let mut prefix = 1;
            for k in 0..3 {
                prefix *= f[k];
                prop_assert_eq!(prefix, dd[k]);
            }
            prop_assert_eq!(s.rank, f.iter().filter(|&&x| x != 0).count());
        }

        #[test]
        fn solve3_reproduces_rhs(m in small_matrix(), rhs in proptest::array::uniform3(-20i128..20)) {
            prop_assume!(det3(&m).unwrap() != 0);
            let u = solve3(&m, rhs).unwrap();
            for j in 0..3 {
                let col = m.column(j);
                let dot = (0..3).fold(Rational::ZERO, |acc, i| acc + u[i] * Rational::integer(col[i]));
                prop_assert_eq!(dot, Rational::integer(rhs[j]));
            }
        }

        #[test]
        fn rational_field_laws(x in small_rational(), y in small_rational(), z in small_rational()) {
            prop_assert_eq!((x + y) - y, x);
            if !x.is_zero() {
                prop_assert_eq!(x * x.recip().unwrap(), Rational::ONE);
            }
            prop_assert_eq!(x.denom() > 0, true);
            prop_assert_eq!(gcd(x.numer(), x.denom()), 1);
            // total order: transitivity and antisymmetry
            if x <= y && y <= z { prop_assert!(x <= z); }
            if x <= y && y <= x { prop_assert_eq!(x, y); }
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
