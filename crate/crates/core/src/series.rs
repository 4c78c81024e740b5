//! The twelve series of normal-form defining matrices, indexed by Picard
//! number, a series tag and the local Gorenstein data η.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, IntMatrix, Rational};
use crate::canon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("Gorenstein index must be positive, got {0}")]
    NonPositiveIota(i64),
    #[error("Picard number must be 1, 2 or 3, got {0}")]
    BadRho(i64),
    #[error("unknown series tag {0:?}")]
    BadTag(String),
    #[error("{key} is not a member of its series: {reason}")]
    NotMember { key: String, reason: &'static str },
}

/// Picard number of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rho {
    One,
    Two,
    Three,
}

impl Rho {
    pub const ALL: [Rho; 3] = [Rho::One, Rho::Two, Rho::Three];

    pub fn value(self) -> u8 {
        match self {
            Rho::One => 1,
            Rho::Two => 2,
            Rho::Three => 3,
        }
    }

    /// Number of columns of the defining matrix.
    pub fn columns(self) -> usize {
        self.value() as usize + 3
    }
}

impl TryFrom<i64> for Rho {
    type Error = SeriesError;

    fn try_from(v: i64) -> Result<Self, SeriesError> {
        match v {
            1 => Ok(Rho::One),
            2 => Ok(Rho::Two),
            3 => Ok(Rho::Three),
            _ => Err(SeriesError::BadRho(v)),
        }
    }
}

impl FromStr for Rho {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        let v = s
            .trim()
            .parse::<i64>()
            .map_err(|_| SeriesError::BadRho(0))?;
        Rho::try_from(v)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Series tag `S_ij`; the first index refers to `x+`, the second to `x-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    S11,
    S12,
    S21,
    S22,
}

impl Tag {
    pub const ALL: [Tag; 4] = [Tag::S11, Tag::S12, Tag::S21, Tag::S22];

    pub fn plus_index(self) -> u8 {
        match self {
            Tag::S11 | Tag::S12 => 1,
            Tag::S21 | Tag::S22 => 2,
        }
    }

    pub fn minus_index(self) -> u8 {
        match self {
            Tag::S11 | Tag::S21 => 1,
            Tag::S12 | Tag::S22 => 2,
        }
    }

    pub fn from_indices(plus: u8, minus: u8) -> Tag {
        match (plus, minus) {
            (1, 1) => Tag::S11,
            (1, _) => Tag::S12,
            (_, 1) => Tag::S21,
            _ => Tag::S22,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::S11 => "s11",
            Tag::S12 => "s12",
            Tag::S21 => "s21",
            Tag::S22 => "s22",
        }
    }
}

impl FromStr for Tag {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s11" => Ok(Tag::S11),
            "s12" => Ok(Tag::S12),
            "s21" => Ok(Tag::S21),
            "s22" => Ok(Tag::S22),
            _ => Err(SeriesError::BadTag(s.to_string())),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesId {
    pub rho: Rho,
    pub tag: Tag,
}

impl SeriesId {
    pub fn new(rho: Rho, tag: Tag) -> Self {
        SeriesId { rho, tag }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(rho={})", self.tag, self.rho)
    }
}

/// One member η of a series. `c` is present for ρ ≥ 2, `d` for ρ = 3.
///
/// Derived ordering is `(series, iota_plus, iota_minus, c, d)`, the
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesKey {
    pub series: SeriesId,
    pub iota_plus: i64,
    pub iota_minus: i64,
    pub c: Option<i64>,
    pub d: Option<i64>,
}

impl fmt::Display for SeriesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {}", self.series, self.iota_plus, self.iota_minus)?;
        for v in [self.c, self.d].into_iter().flatten() {
            write!(f, ", {v}")?;
        }
        f.write_str(")")
    }
}

impl SeriesKey {
    pub fn new(series: SeriesId, iota_plus: i64, iota_minus: i64, c: Option<i64>, d: Option<i64>) -> Self {
        SeriesKey {
            series,
            iota_plus,
            iota_minus,
            c,
            d,
        }
    }

    pub fn rho(&self) -> Rho {
        self.series.rho
    }

    pub fn tag(&self) -> Tag {
        self.series.tag
    }

    /// Gorenstein index `lcm(ι⁺, ι⁻)`; only meaningful for positive ι±.
    pub fn iota(&self) -> i64 {
        let g = gcd(self.iota_plus as i128, self.iota_minus as i128).max(1) as i64;
        self.iota_plus / g * self.iota_minus
    }

    /// Checks the membership predicate of the key's series.
    pub fn check(&self) -> Result<(), SeriesError> {
        let fail = |reason| {
            Err(SeriesError::NotMember {
                key: self.to_string(),
                reason,
            })
        };
        let (ip, im) = (self.iota_plus, self.iota_minus);
        if ip < 1 || im < 1 {
            return fail("iota+ and iota- must be positive");
        }
        let (rho, tag) = (self.rho(), self.tag());
        let conds = match (rho, self.c, self.d) {
            (Rho::One, None, None) => Vec::new(),
            (Rho::Two, Some(c), None) => {
                let (lo, hi) = rho2_c_range(tag, ip, im);
                vec![(lo <= c, "c >= 1 - L/2"), (c <= hi, "c <= -L/4")]
            }
            (Rho::Three, Some(c), Some(d)) => vec![
                (-rho3_bound(tag, ip, im) <= 2 * c + d, "-L <= 2c + d"),
                (c <= d, "c <= d"),
                (d <= -1, "d <= -1"),
            ],
            _ => return fail("parameters c, d do not match the Picard number"),
        };
        for (ok, reason) in pair_conditions(rho, tag, ip, im).into_iter().chain(conds) {
            if !ok {
                return fail(reason);
            }
        }
        Ok(())
    }
}

/// Parity, divisibility and ordering conditions on (ι⁺, ι⁻).
fn pair_conditions(rho: Rho, tag: Tag, ip: i64, im: i64) -> Vec<(bool, &'static str)> {
    let odd = |v: i64| v % 2 != 0;
    let div = |m: i64, v: i64| v % m == 0;
    match (rho, tag) {
        (Rho::One, Tag::S11) => vec![
            (odd(ip), "iota+ odd"),
            (odd(im), "iota- odd"),
            (ip <= im, "iota+ <= iota-"),
        ],
        (Rho::One, Tag::S12) => vec![
            (odd(ip), "iota+ odd"),
            (div(4, im), "4 | iota-"),
            (2 * ip <= im, "2 iota+ <= iota-"),
        ],
        (Rho::One, Tag::S21) => vec![
            (div(4, ip), "4 | iota+"),
            (odd(im), "iota- odd"),
            (ip <= 2 * im, "iota+ <= 2 iota-"),
        ],
        (Rho::One, Tag::S22) => vec![
            (div(4, ip), "4 | iota+"),
            (div(4, im), "4 | iota-"),
            (ip <= im, "iota+ <= iota-"),
        ],
        (Rho::Two, _) => {
            let mut conds = vec![(odd(ip), "iota+ odd"), (odd(im), "iota- odd")];
            conds.extend(match tag {
                Tag::S11 => vec![
                    (!div(3, ip), "3 does not divide iota+"),
                    (!div(3, im), "3 does not divide iota-"),
                    (ip <= im, "iota+ <= iota-"),
                ],
                Tag::S12 => vec![
                    (!div(3, ip), "3 does not divide iota+"),
                    (ip <= 3 * im, "iota+ <= 3 iota-"),
                ],
                Tag::S21 => vec![
                    (!div(3, im), "3 does not divide iota-"),
                    (3 * ip <= im, "3 iota+ <= iota-"),
                ],
                Tag::S22 => vec![(ip <= im, "iota+ <= iota-")],
            });
            conds
        }
        (Rho::Three, Tag::S11) => vec![
            (odd(ip), "iota+ odd"),
            (odd(im), "iota- odd"),
            (ip <= im, "iota+ <= iota-"),
        ],
        (Rho::Three, Tag::S12) => vec![(odd(ip), "iota+ odd"), (ip <= 2 * im, "iota+ <= 2 iota-")],
        (Rho::Three, Tag::S21) => vec![(odd(im), "iota- odd"), (2 * ip <= im, "2 iota+ <= iota-")],
        (Rho::Three, Tag::S22) => vec![(ip <= im, "iota+ <= iota-")],
    }
}

fn pair_admissible(series: SeriesId, ip: i64, im: i64) -> bool {
    pair_conditions(series.rho, series.tag, ip, im)
        .iter()
        .all(|(ok, _)| *ok)
}

/// Weighted sum `L` with `1 - L/2 <= c <= -L/4` for ρ = 2.
fn rho2_weight(tag: Tag, ip: i64, im: i64) -> i64 {
    let wp = if tag.plus_index() == 1 { 1 } else { 3 };
    let wm = if tag.minus_index() == 1 { 1 } else { 3 };
    wp * ip + wm * im
}

/// Integer range of `c` for ρ = 2, evaluated exactly over the rationals.
fn rho2_c_range(tag: Tag, ip: i64, im: i64) -> (i64, i64) {
    let l = rho2_weight(tag, ip, im) as i128;
    let lo = Rational::new(2 - l, 2).expect("nonzero denominator").ceil();
    let hi = Rational::new(-l, 4).expect("nonzero denominator").floor();
    (lo as i64, hi as i64)
}

/// Bound `L` with `-L <= 2c + d` for ρ = 3.
fn rho3_bound(tag: Tag, ip: i64, im: i64) -> i64 {
    let wp = tag.plus_index() as i64;
    let wm = tag.minus_index() as i64;
    wp * ip + wm * im
}

/// Normal-form defining matrix stored by its free parameters.
///
/// Unused parameters (`c` for ρ = 1, `d` for ρ ≤ 2) are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DefiningMatrix {
    pub rho: Rho,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl DefiningMatrix {
    pub fn rho1(a: i64, b: i64) -> Self {
        DefiningMatrix { rho: Rho::One, a, b, c: 0, d: 0 }
    }

    pub fn rho2(a: i64, b: i64, c: i64) -> Self {
        DefiningMatrix { rho: Rho::Two, a, b, c, d: 0 }
    }

    pub fn rho3(a: i64, b: i64, c: i64, d: i64) -> Self {
        DefiningMatrix { rho: Rho::Three, a, b, c, d }
    }

    /// Parameters relevant to the Picard number: (a,b), (a,b,c) or (a,b,c,d).
    pub fn params(&self) -> Vec<i64> {
        match self.rho {
            Rho::One => vec![self.a, self.b],
            Rho::Two => vec![self.a, self.b, self.c],
            Rho::Three => vec![self.a, self.b, self.c, self.d],
        }
    }

    pub fn third_row(&self) -> Vec<i64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        match self.rho {
            Rho::One => vec![a, b, 1, 1],
            Rho::Two => vec![a, b, 0, c, 1],
            Rho::Three => vec![a, b, 0, c, 0, d],
        }
    }

    /// The full 3 x (ρ+3) matrix.
    pub fn expand(&self) -> IntMatrix {
        let mut rows: Vec<Vec<i128>> = fixed_rows(self.rho)
            .iter()
            .map(|r| r.to_vec())
            .collect();
        rows.push(self.third_row().into_iter().map(i128::from).collect());
        IntMatrix::from_rows(&rows).expect("rows share one length")
    }
}

impl fmt::Display for DefiningMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(|v| v.to_string()).collect();
        write!(f, "rho={} ({})", self.rho, p.join(", "))
    }
}

/// First two rows of the defining matrix for each Picard number.
pub fn fixed_rows(rho: Rho) -> [&'static [i128]; 2] {
    match rho {
        Rho::One => [&[-1, -1, 2, 0], &[-1, -1, 0, 2]],
        Rho::Two => [&[-1, -1, 1, 1, 0], &[-1, -1, 0, 0, 2]],
        Rho::Three => [&[-1, -1, 1, 1, 0, 0], &[-1, -1, 0, 0, 1, 1]],
    }
}

/// Ordered divisor pairs `(ι⁺, ι⁻)` of `iota` with `lcm = iota`.
pub fn divisor_pairs(iota: i64) -> Vec<(i64, i64)> {
    let divisors: Vec<i64> = (1..=iota).filter(|k| iota % k == 0).collect();
    let mut out = Vec::new();
    for &p in &divisors {
        for &m in &divisors {
            if p / gcd(p as i128, m as i128) as i64 * m == iota {
                out.push((p, m));
            }
        }
    }
    out
}

/// Calls `f` on every η of the series at Gorenstein index `iota`, in order.
pub fn for_each_eta(series: SeriesId, iota: i64, mut f: impl FnMut(SeriesKey)) -> Result<(), SeriesError> {
    if iota < 1 {
        return Err(SeriesError::NonPositiveIota(iota));
    }
    let tag = series.tag;
    for (ip, im) in divisor_pairs(iota) {
        if !pair_admissible(series, ip, im) {
            continue;
        }
        match series.rho {
            Rho::One => f(SeriesKey::new(series, ip, im, None, None)),
            Rho::Two => {
                let (lo, hi) = rho2_c_range(tag, ip, im);
                for c in lo..=hi {
                    f(SeriesKey::new(series, ip, im, Some(c), None));
                }
            }
            Rho::Three => {
                let l = rho3_bound(tag, ip, im);
                // c <= d <= -1 with 2c + d >= -L forces 2c - 1 >= -L
                let c_lo = Rational::new((1 - l) as i128, 2).expect("nonzero").ceil() as i64;
                for c in c_lo..=-1 {
                    for d in c.max(-l - 2 * c)..=-1 {
                        f(SeriesKey::new(series, ip, im, Some(c), Some(d)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// All η of the series at Gorenstein index `iota`, ascending in (ι⁺, ι⁻, c, d).
pub fn enumerate_eta(series: SeriesId, iota: i64) -> Result<Vec<SeriesKey>, SeriesError> {
    let mut out = Vec::new();
    for_each_eta(series, iota, |k| out.push(k))?;
    Ok(out)
}

/// The defining matrix attached to a series member.
pub fn matrix_from_eta(key: &SeriesKey) -> Result<DefiningMatrix, SeriesError> {
    key.check()?;
    Ok(matrix_from_eta_unchecked(key))
}

/// [`matrix_from_eta`] without the membership check; for keys produced by
/// the enumerators.
pub fn matrix_from_eta_unchecked(key: &SeriesKey) -> DefiningMatrix {
    let (ip, im) = (key.iota_plus, key.iota_minus);
    let plus_two = key.tag().plus_index() == 2;
    let minus_two = key.tag().minus_index() == 2;
    match key.rho() {
        Rho::One => {
            let a = if plus_two { ip / 2 - 1 } else { ip - 1 };
            let b = if minus_two { -im / 2 - 1 } else { -im - 1 };
            DefiningMatrix::rho1(a, b)
        }
        Rho::Two => {
            let c = key.c.unwrap_or(0);
            let a = if plus_two { (3 * ip - 1) / 2 } else { (ip - 1) / 2 };
            let b = if minus_two { -(3 * im + 1) / 2 - c } else { -(im + 1) / 2 - c };
            DefiningMatrix::rho2(a, b, c)
        }
        Rho::Three => {
            let (c, d) = (key.c.unwrap_or(0), key.d.unwrap_or(0));
            let a = if plus_two { 2 * ip } else { ip };
            let b = if minus_two { -2 * im - c - d } else { -im - c - d };
            DefiningMatrix::rho3(a, b, c, d)
        }
    }
}

/// All surfaces of Picard number `rho` and Gorenstein index `iota`, ordered
/// by series tag and then η.
pub fn enumerate_all(rho: Rho, iota: i64) -> Result<Vec<(SeriesKey, DefiningMatrix)>, SeriesError> {
    let mut out = Vec::new();
    for tag in Tag::ALL {
        for_each_eta(SeriesId::new(rho, tag), iota, |k| {
            out.push((k, matrix_from_eta_unchecked(&k)));
        })?;
    }
    debug_assert!(out.iter().all(|(_, m)| canon::validate(m).is_ok()));
    Ok(out)
}
