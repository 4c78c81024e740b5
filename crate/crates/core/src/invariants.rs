//! Geometric invariants of a surface: class group, local class group
//! orders, local Gorenstein indices, degree, log canonicity, Picard index
//! and the resolution graphs of the singular points.
//!
//! Each quantity has a closed form on the matrix parameters; most also
//! have a second closed form on η, and the class group and local
//! Gorenstein indices have lattice oracles (Smith form, linear solve).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd_list, lcm2, smith_normal_form, solve3, ArithError, IntMatrix, Rational};
use crate::kaehler;
use crate::series::{self, DefiningMatrix, Rho, SeriesError, SeriesKey, Tag};

/// Fixed points carrying local data: the elliptic points `x+`, `x-` and
/// the hyperbolic points `x0`, `x1`, `x2` on the arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    #[serde(rename = "x+")]
    XPlus,
    #[serde(rename = "x-")]
    XMinus,
    #[serde(rename = "x0")]
    X0,
    #[serde(rename = "x1")]
    X1,
    #[serde(rename = "x2")]
    X2,
}

impl Point {
    pub fn label(self) -> &'static str {
        match self {
            Point::XPlus => "x+",
            Point::XMinus => "x-",
            Point::X0 => "x0",
            Point::X1 => "x1",
            Point::X2 => "x2",
        }
    }

    pub fn from_label(s: &str) -> Option<Point> {
        [Point::XPlus, Point::XMinus, Point::X0, Point::X1, Point::X2]
            .into_iter()
            .find(|p| p.label() == s)
    }

    /// Points present for a given Picard number.
    pub fn all(rho: Rho) -> &'static [Point] {
        match rho {
            Rho::One => &[Point::XPlus, Point::XMinus, Point::X0],
            Rho::Two => &[Point::XPlus, Point::XMinus, Point::X0, Point::X1],
            Rho::Three => &[Point::XPlus, Point::XMinus, Point::X0, Point::X1, Point::X2],
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassGroup {
    pub free_rank: usize,
    pub torsion_order: i128,
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        if self.torsion_order > 1 {
            write!(f, " x Z/{}", self.torsion_order)?;
        }
        Ok(())
    }
}

fn wide(m: &DefiningMatrix) -> (i128, i128, i128, i128) {
    (m.a as i128, m.b as i128, m.c as i128, m.d as i128)
}

pub fn class_group(m: &DefiningMatrix) -> ClassGroup {
    let (a, b, c, d) = wide(m);
    let g = |v: &[i128]| gcd_list(v).expect("non-empty");
    match m.rho {
        Rho::One => ClassGroup { free_rank: 1, torsion_order: 2 * g(&[2 * a + 2, a - b]) },
        Rho::Two => ClassGroup { free_rank: 2, torsion_order: g(&[2 * a + 1, a - b, -c]) },
        Rho::Three => ClassGroup { free_rank: 3, torsion_order: g(&[a, b, c, d]) },
    }
}

/// Cokernel of the transposed defining matrix via Smith normal form.
pub fn class_group_oracle(m: &DefiningMatrix) -> Result<ClassGroup, ArithError> {
    let s = smith_normal_form(&m.expand().transpose())?;
    Ok(ClassGroup {
        free_rank: s.cokernel_free_rank(),
        torsion_order: s.cokernel_torsion()?,
    })
}

/// Orders of the local class groups at every fixed point.
pub fn local_orders(m: &DefiningMatrix) -> BTreeMap<Point, i64> {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let values: Vec<i64> = match m.rho {
        Rho::One => vec![4 * a + 4, -4 * b - 4, a - b],
        Rho::Two => vec![1 + 2 * a, -1 - 2 * b - 2 * c, a - b, -c],
        Rho::Three => vec![a, -b - c - d, a - b, -c, -d],
    };
    Point::all(m.rho).iter().copied().zip(values).collect()
}

/// Local Gorenstein indices of `x+` and `x-` together with the branch of
/// the case split that produced them (1 or 2, the series tag indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GorensteinSplit {
    pub iota_plus: i64,
    pub plus_index: u8,
    pub iota_minus: i64,
    pub minus_index: u8,
}

impl GorensteinSplit {
    pub fn tag(&self) -> Tag {
        Tag::from_indices(self.plus_index, self.minus_index)
    }
}

pub fn local_gorenstein_split(m: &DefiningMatrix) -> GorensteinSplit {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    // (value, branch) for the plus and minus side
    let (plus, minus) = match m.rho {
        Rho::One => {
            let p = if a % 2 == 0 { (a + 1, 1) } else { (2 * a + 2, 2) };
            let n = if b % 2 == 0 { (-b - 1, 1) } else { (-2 * b - 2, 2) };
            (p, n)
        }
        Rho::Two => {
            let split = |v: i64| if v % 3 == 0 { (v / 3, 2) } else { (v, 1) };
            (split(2 * a + 1), split(-(2 * b + 2 * c + 1)))
        }
        Rho::Three => {
            let split = |v: i64| if v % 2 == 0 { (v / 2, 2) } else { (v, 1) };
            (split(a), split(-(b + c + d)))
        }
    };
    GorensteinSplit {
        iota_plus: plus.0,
        plus_index: plus.1,
        iota_minus: minus.0,
        minus_index: minus.1,
    }
}

/// `(ι⁺, ι⁻)` by the closed-form case split.
pub fn local_gorenstein(m: &DefiningMatrix) -> (i64, i64) {
    let s = local_gorenstein_split(m);
    (s.iota_plus, s.iota_minus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// Column indices spanning the cone of `x+` or `x-`.
pub fn cone_rays(rho: Rho, side: Side) -> [usize; 3] {
    match (rho, side) {
        (Rho::One, Side::Plus) => [0, 2, 3],
        (Rho::One, Side::Minus) => [1, 2, 3],
        (_, Side::Plus) => [0, 2, 4],
        (Rho::Two, Side::Minus) => [1, 3, 4],
        (Rho::Three, Side::Minus) => [1, 3, 5],
    }
}

/// Local Gorenstein index as the denominator of the linear form that
/// evaluates the anticanonical divisor `D_3 + ... + D_n` on the cone.
pub fn local_gorenstein_oracle(m: &DefiningMatrix, side: Side) -> Result<i128, ArithError> {
    let rays = cone_rays(m.rho, side);
    let cone = m.expand().select_columns(&rays);
    // anticanonical coefficient: 0 on the first arm, 1 elsewhere
    let rhs = rays.map(|j| if j < 2 { 0 } else { 1 });
    let u = solve3(&cone, rhs)?;
    u.iter().try_fold(1, |acc, q| lcm2(acc, q.denom()))
}

fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d).expect("denominator is nonzero for valid matrices")
}

/// Anticanonical self-intersection.
pub fn degree(m: &DefiningMatrix) -> Rational {
    let (a, b, c, d) = wide(m);
    match m.rho {
        Rho::One => rat(1, a + 1) - rat(1, b + 1),
        Rho::Two => rat(9, 4 * a + 2) - rat(9, 2 + 4 * b + 4 * c),
        Rho::Three => rat(4, a) - rat(4, b + c + d),
    }
}

/// Per-side weights of the η forms: `(w⁺, w⁻)` with `w = 1` or `2` for
/// ρ = 1, 3 and `1` or `3` for ρ = 2.
fn eta_weights(key: &SeriesKey) -> (i128, i128) {
    let w = |index: u8| match (key.rho(), index) {
        (_, 1) => 1,
        (Rho::Two, _) => 3,
        _ => 2,
    };
    (w(key.tag().plus_index()), w(key.tag().minus_index()))
}

fn eta_wide(key: &SeriesKey) -> (i128, i128, i128, i128) {
    (
        key.iota_plus as i128,
        key.iota_minus as i128,
        key.c.unwrap_or(0) as i128,
        key.d.unwrap_or(0) as i128,
    )
}

pub fn degree_from_eta(key: &SeriesKey) -> Rational {
    let (ip, im, _, _) = eta_wide(key);
    let (wp, wm) = eta_weights(key);
    match key.rho() {
        // 1/ι or 2/ι per side
        Rho::One => rat(wp, ip) + rat(wm, im),
        // 9/(2ι) on unweighted sides, 3/(2ι) on weighted ones
        Rho::Two => rat(9 / wp, 2 * ip) + rat(9 / wm, 2 * im),
        // 4/ι or 2/ι
        Rho::Three => rat(4 / wp, ip) + rat(4 / wm, im),
    }
}

/// Minimal log discrepancy over the exceptional curves at `x±`.
pub fn log_canonicity(m: &DefiningMatrix) -> Rational {
    let (_, b, c, d) = wide(m);
    match m.rho {
        Rho::One => rat(1, -b - 1),
        Rho::Two => rat(3, -2 * b - 2 * c - 1),
        Rho::Three => rat(2, -b - c - d),
    }
}

pub fn log_canonicity_from_eta(key: &SeriesKey) -> Rational {
    let (_, im, _, _) = eta_wide(key);
    let minus_two = key.tag().minus_index() == 2;
    let num = match (key.rho(), minus_two) {
        (Rho::One, false) => 1,
        (Rho::One, true) => 2,
        (Rho::Two, false) => 3,
        (Rho::Two, true) => 1,
        (Rho::Three, false) => 2,
        (Rho::Three, true) => 1,
    };
    rat(num, im)
}

/// Index of the Picard group in the class group (Springer's formula).
pub fn picard_index(m: &DefiningMatrix) -> Result<i128, ArithError> {
    let (a, b, c, d) = wide(m);
    let (num, den) = match m.rho {
        Rho::One => (
            arith::mul_all(&[-8, a + 1, b + 1, a - b])?,
            gcd_list(&[2 * a + 2, a - b])?,
        ),
        Rho::Two => (
            arith::mul_all(&[c, 1 + 2 * a, 1 + 2 * b + 2 * c, a - b])?,
            gcd_list(&[1 + 2 * a, a - b, c])?,
        ),
        Rho::Three => (
            arith::mul_all(&[-a, c, d, b + c + d, a - b])?,
            gcd_list(&[a, b, c, d])?,
        ),
    };
    Ok(num / den)
}

pub fn picard_index_from_eta(key: &SeriesKey) -> Result<i128, ArithError> {
    let (ip, im, c, d) = eta_wide(key);
    let (wp, wm) = eta_weights(key);
    let (num, den) = match key.rho() {
        Rho::One => {
            let (lead, sum, g) = match key.tag() {
                Tag::S11 => (8, ip + im, 2 * ip),
                Tag::S12 => (4, 2 * ip + im, 4 * ip),
                Tag::S21 => (4, ip + 2 * im, 2 * ip),
                Tag::S22 => (2, ip + im, 2 * ip),
            };
            (arith::mul_all(&[lead, ip, im, sum])?, gcd_list(&[g, sum])?)
        }
        Rho::Two => (
            arith::mul_all(&[-wp * wm, c, ip, im, wp * ip + wm * im + 2 * c])?,
            gcd_list(&[2 * wp * ip, wp * ip + wm * im, 2 * c])?,
        ),
        Rho::Three => (
            arith::mul_all(&[wp * wm, c, d, ip, im, wp * ip + wm * im + c + d])?,
            gcd_list(&[wp * ip, wm * im, c, d])?,
        ),
    };
    Ok(num / den)
}

/// Weighted chains of exceptional curves over each fixed point; an empty
/// chain marks a smooth point.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResolutionGraph {
    pub chains: BTreeMap<Point, Vec<i64>>,
}

impl ResolutionGraph {
    pub fn chain(&self, p: Point) -> Option<&[i64]> {
        self.chains.get(&p).map(Vec::as_slice)
    }
}

/// Chain `[-2]^flank, w, [-2]^flank`, or empty when `w = -1`.
fn elliptic_chain(w: i64, left: usize, right: usize) -> Vec<i64> {
    if w == -1 {
        return Vec::new();
    }
    let mut chain = vec![-2; left];
    chain.push(w);
    chain.extend(std::iter::repeat_n(-2, right));
    chain
}

fn minus_two_chain(len: i64) -> Vec<i64> {
    vec![-2; len.max(0) as usize]
}

/// Resolution chains over the fixed points, in terms of η.
pub fn resolution_graph(key: &SeriesKey) -> Result<ResolutionGraph, SeriesError> {
    key.check()?;
    let (ip, im) = (key.iota_plus, key.iota_minus);
    let (c, d) = (key.c.unwrap_or(0), key.d.unwrap_or(0));
    let (wp, wm) = eta_weights(key);
    let (wp, wm) = (wp as i64, wm as i64);
    let mut chains = BTreeMap::new();
    match key.rho() {
        Rho::One => {
            // central weights -1 - ι (w = 1) or -1 - ι/2 (w = 2)
            chains.insert(Point::XPlus, elliptic_chain(-1 - ip / wp, 1, 1));
            chains.insert(Point::XMinus, elliptic_chain(-1 - im / wm, 1, 1));
            chains.insert(Point::X0, minus_two_chain(ip / wp + im / wm - 1));
        }
        Rho::Two => {
            let (ap, am) = ((wp * ip + 1) / 2, (wm * im + 1) / 2);
            chains.insert(Point::XPlus, elliptic_chain(-ap, 1, 0));
            chains.insert(Point::XMinus, elliptic_chain(-am, 1, 0));
            chains.insert(Point::X0, minus_two_chain(ap + am + c - 2));
            chains.insert(Point::X1, minus_two_chain(-c - 1));
        }
        Rho::Three => {
            chains.insert(Point::XPlus, elliptic_chain(-wp * ip, 0, 0));
            chains.insert(Point::XMinus, elliptic_chain(-wm * im, 0, 0));
            chains.insert(Point::X0, minus_two_chain(wp * ip + wm * im + c + d - 1));
            chains.insert(Point::X1, minus_two_chain(-c - 1));
            chains.insert(Point::X2, minus_two_chain(-d - 1));
        }
    }
    Ok(ResolutionGraph { chains })
}

/// Determinant of the negated intersection matrix of a chain: tridiagonal
/// with diagonal `-w_i` and off-diagonal `-1`. The empty chain gives 1.
pub fn chain_determinant(chain: &[i64]) -> Result<i128, ArithError> {
    let n = chain.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &w) in chain.iter().enumerate() {
        m.set(i, i, -(w as i128));
        if i + 1 < n {
            m.set(i, i + 1, -1);
            m.set(i + 1, i, -1);
        }
    }
    m.determinant()
}

/// Local class group orders with the local Gorenstein indices of `x±`;
/// the remaining points have local Gorenstein index 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub orders: BTreeMap<Point, i64>,
    pub iota_plus: i64,
    pub iota_minus: i64,
}

impl LocalData {
    pub fn compute(m: &DefiningMatrix) -> Self {
        let (iota_plus, iota_minus) = local_gorenstein(m);
        LocalData {
            orders: local_orders(m),
            iota_plus,
            iota_minus,
        }
    }

    pub fn gorenstein_index(&self, p: Point) -> i64 {
        match p {
            Point::XPlus => self.iota_plus,
            Point::XMinus => self.iota_minus,
            _ => 1,
        }
    }
}

/// All invariants of one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRecord {
    pub key: SeriesKey,
    pub matrix: DefiningMatrix,
    pub class_group: ClassGroup,
    pub local: LocalData,
    pub gorenstein_index: i64,
    pub degree: Rational,
    pub log_canonicity: Rational,
    pub picard_index: i128,
    pub ke: bool,
    pub resolution: ResolutionGraph,
}

impl SurfaceRecord {
    pub fn from_key(key: &SeriesKey) -> Result<Self, RecordError> {
        let matrix = series::matrix_from_eta(key)?;
        Ok(SurfaceRecord {
            key: *key,
            matrix,
            class_group: class_group(&matrix),
            local: LocalData::compute(&matrix),
            gorenstein_index: key.iota(),
            degree: degree(&matrix),
            log_canonicity: log_canonicity(&matrix),
            picard_index: picard_index(&matrix)?,
            ke: kaehler::is_ke_family(key),
            resolution: resolution_graph(key)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Names of the per-Picard-number bounds violated by a record.
pub fn bound_violations(r: &SurfaceRecord) -> Vec<&'static str> {
    let iota = r.gorenstein_index as i128;
    let i = |n: i128| Rational::integer(n);
    let inv = rat(1, iota);
    let k2 = r.degree;
    let eps = r.log_canonicity;
    let p = r.picard_index;
    let (deg_lo, deg_hi, eps_sq, pic_hi) = match r.key.rho() {
        Rho::One => (i(2) * inv, i(1) + i(4) * inv, 4, 8 * iota * iota),
        Rho::Two => (
            i(3) * inv,
            rat(9, 2) + rat(9, 2) * inv,
            9,
            // (27/2) ι³ (3ι - 1) is an integer: ι odd forces 3ι - 1 even
            27 * iota.pow(3) * (3 * iota - 1) / 2,
        ),
        Rho::Three => (
            i(4) * inv,
            i(4) + i(4) * inv,
            4,
            2 * iota * iota * (4 * iota - 1).pow(2) * (2 * iota - 1),
        ),
    };
    let mut out = Vec::new();
    if k2 < deg_lo {
        out.push("degree lower bound");
    }
    if k2 > deg_hi {
        out.push("degree upper bound");
    }
    if eps < inv {
        out.push("log canonicity lower bound");
    }
    if eps * eps * i(iota) > i(eps_sq) {
        out.push("log canonicity upper bound");
    }
    if p < iota {
        out.push("Picard index lower bound");
    }
    if p > pic_hi {
        out.push("Picard index upper bound");
    }
    out
}

/// Names of the divisibility and positivity laws violated by a record.
pub fn divisibility_violations(r: &SurfaceRecord) -> Vec<&'static str> {
    let mut out = Vec::new();
    let (ip, im) = (r.local.iota_plus, r.local.iota_minus);
    if lcm2(ip as i128, im as i128).ok() != Some(r.gorenstein_index as i128) {
        out.push("iota = lcm(iota+, iota-)");
    }
    if r.local.orders[&Point::XPlus] % ip != 0 {
        out.push("iota+ | cl(x+)");
    }
    if r.local.orders[&Point::XMinus] % im != 0 {
        out.push("iota- | cl(x-)");
    }
    if r.picard_index % r.gorenstein_index as i128 != 0 {
        out.push("iota | picard index");
    }
    if !r.degree.is_positive() {
        out.push("degree > 0");
    }
    if !r.log_canonicity.is_positive() || r.log_canonicity > Rational::ONE {
        out.push("0 < log canonicity <= 1");
    }
    out
}
