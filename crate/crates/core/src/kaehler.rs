//! Kähler–Einstein test via barycenters of the moment polygons of the
//! special toric degenerations, and the explicit KE families.

use crate::arith::Rational;
use crate::series::{DefiningMatrix, Rho, SeriesKey, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Barycenter {
    pub kappa: u8,
    pub x: Rational,
    pub y: Rational,
}

/// Degeneration indices κ with a normal central fiber.
pub fn special_kappas(rho: Rho) -> &'static [u8] {
    match rho {
        Rho::One => &[1, 2],
        Rho::Two => &[2],
        Rho::Three => &[0, 1, 2],
    }
}

fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d).expect("denominator is nonzero for valid matrices")
}

/// Closed-form barycenters of the special moment polygons.
pub fn barycenters(m: &DefiningMatrix) -> Vec<Barycenter> {
    let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
    match m.rho {
        Rho::One => {
            let den = (1 + a) * (1 + b);
            let x = rat(-(2 + a + b), 3 * den);
            let y = rat(a * b - 1, 6 * den);
            special_kappas(m.rho)
                .iter()
                .map(|&kappa| Barycenter { kappa, x, y })
                .collect()
        }
        Rho::Two => {
            let k = rat(a + b + c + 1, (2 * a + 1) * (2 * b + 2 * c + 1));
            vec![Barycenter {
                kappa: 2,
                x: Rational::integer(-2) * k,
                y: -k,
            }]
        }
        Rho::Three => {
            let s = b + c + d;
            let x = rat(-2 * (a + s), 3 * a * s);
            let den = 3 * (a - s) * s;
            let y0 = rat((b + 2 * c + 2 * d - a) * b + (c + a + d) * (c + d), den);
            let y1 = rat(-((b + d + 2 * c - a) * (b + d) + (a + c) * c), den);
            let y2 = rat(-((b + c + 2 * d - a) * (b + c) + (a + d) * d), den);
            [(0, y0), (1, y1), (2, y2)]
                .into_iter()
                .map(|(kappa, y)| Barycenter { kappa, x, y })
                .collect()
        }
    }
}

fn ke_condition(bs: &[Barycenter]) -> bool {
    bs.iter().all(|b| b.x.is_zero() && b.y.is_positive())
}

/// Barycenter criterion: every special barycenter lies on the positive
/// second axis.
pub fn is_ke_oracle(m: &DefiningMatrix) -> bool {
    ke_condition(&barycenters(m))
}

/// Membership in the explicit KE families.
pub fn is_ke_family(key: &SeriesKey) -> bool {
    let balanced = key.iota_plus == key.iota_minus && matches!(key.tag(), Tag::S11 | Tag::S22);
    match key.rho() {
        Rho::One => balanced,
        Rho::Two => false,
        Rho::Three => {
            let (Some(c), Some(d)) = (key.c, key.d) else {
                return false;
            };
            let iota = key.iota_plus;
            // S11 at ι: -2ι <= 2c+d, c+d <= -ι-1; S22 doubles ι
            let w = if key.tag() == Tag::S22 { 2 } else { 1 };
            balanced && -2 * w * iota <= 2 * c + d && c <= d && d <= -1 && c + d < -w * iota
        }
    }
}

/// Second parameterization of the ρ = 3 KE families, by explicit ranges
/// of `c` and `d`. Agrees with [`is_ke_family`].
pub fn is_ke_family_ranges(key: &SeriesKey) -> bool {
    if key.rho() != Rho::Three {
        return is_ke_family(key);
    }
    if key.iota_plus != key.iota_minus || !matches!(key.tag(), Tag::S11 | Tag::S22) {
        return false;
    }
    let (Some(c), Some(d)) = (key.c, key.d) else {
        return false;
    };
    let iota = key.iota_plus;
    let w = if key.tag() == Tag::S22 { 2 } else { 1 };
    (-w * iota + 1..=-2).contains(&c) && c.max(-2 * w * iota - 2 * c) <= d && d <= -w * iota - 1 - c
}

pub type Point2 = (Rational, Rational);

/// Fano polygon of the κ-th toric degeneration (integral vertices).
pub fn fano_polygon(m: &DefiningMatrix, kappa: u8) -> Vec<(i128, i128)> {
    let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
    match (m.rho, kappa) {
        (Rho::One, _) => vec![(1, -2), (1 + 2 * a, 2), (1 + 2 * b, 2)],
        (Rho::Two, _) => vec![(1, -2), (a, 1), (b + c, 1)],
        (Rho::Three, 0) => vec![(0, 1), (c + d, 1), (b, -1), (a, -1)],
        (Rho::Three, 1) => vec![(a, 1), (b + d, 1), (c, -1), (0, -1)],
        (Rho::Three, _) => vec![(a, 1), (b + c, 1), (d, -1), (0, -1)],
    }
}

fn cross(o: (i128, i128), p: (i128, i128), q: (i128, i128)) -> i128 {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

/// Vertices of the convex hull in counter-clockwise order.
pub fn convex_hull(points: &[(i128, i128)]) -> Vec<(i128, i128)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i128, i128)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i128, i128)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Dual polygon `{u : <u, v> >= -1 for all v in A}`, counter-clockwise.
/// Requires the origin in the interior of `A`.
pub fn moment_polygon(fano: &[(i128, i128)]) -> Vec<Point2> {
    let hull = convex_hull(fano);
    let n = hull.len();
    (0..n)
        .map(|i| {
            let (p, q) = (hull[i], hull[(i + 1) % n]);
            // u with <u, p> = <u, q> = -1
            let det = p.0 * q.1 - p.1 * q.0;
            (rat(-(q.1 - p.1), det), rat(q.0 - p.0, det))
        })
        .collect()
}

/// Area centroid of a simple polygon given in order.
pub fn centroid(poly: &[Point2]) -> Point2 {
    let n = poly.len();
    let mut area2 = Rational::ZERO;
    let (mut cx, mut cy) = (Rational::ZERO, Rational::ZERO);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let w = p.0 * q.1 - q.0 * p.1;
        area2 = area2 + w;
        cx = cx + (p.0 + q.0) * w;
        cy = cy + (p.1 + q.1) * w;
    }
    let six_area = Rational::integer(3) * area2;
    (cx / six_area, cy / six_area)
}

/// Barycenters recomputed from the polygons.
pub fn barycenters_from_polygons(m: &DefiningMatrix) -> Vec<Barycenter> {
    special_kappas(m.rho)
        .iter()
        .map(|&kappa| {
            let (x, y) = centroid(&moment_polygon(&fano_polygon(m, kappa)));
            Barycenter { kappa, x, y }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{enumerate_all, matrix_from_eta, SeriesId};

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn key(rho: Rho, tag: Tag, ip: i64, im: i64, c: Option<i64>, d: Option<i64>) -> SeriesKey {
        SeriesKey::new(SeriesId::new(rho, tag), ip, im, c, d)
    }

    #[test]
    fn barycenter_examples() {
        let b = barycenters(&DefiningMatrix::rho1(0, -2));
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|b| b.x.is_zero() && b.y == r(1, 6)));
        let b = barycenters(&DefiningMatrix::rho1(0, -4));
        assert_eq!(b[0].x, r(-2, 9));
        let b = barycenters(&DefiningMatrix::rho3(3, 1, -2, -2));
        assert_eq!((b[0].kappa, b[0].x, b[0].y), (0, Rational::ZERO, r(1, 9)));
    }

    #[test]
    fn oracle_examples() {
        assert!(is_ke_oracle(&DefiningMatrix::rho1(0, -2)));
        assert!(!is_ke_oracle(&DefiningMatrix::rho1(0, -4)));
        assert!(!is_ke_oracle(&DefiningMatrix::rho2(1, 0, -2)));
        assert!(is_ke_oracle(&DefiningMatrix::rho3(3, 1, -2, -2)));
    }

    #[test]
    fn family_examples() {
        assert!(is_ke_family(&key(Rho::One, Tag::S11, 3, 3, None, None)));
        assert!(!is_ke_family(&key(Rho::One, Tag::S11, 1, 3, None, None)));
        assert!(is_ke_family(&key(Rho::Three, Tag::S11, 3, 3, Some(-2), Some(-2))));
        assert!(!is_ke_family(&key(Rho::Two, Tag::S22, 1, 1, Some(-2), None)));
    }

    #[test]
    fn polygon_centroids_match_closed_forms() {
        for rho in Rho::ALL {
            for iota in 1..=15 {
                for (k, m) in enumerate_all(rho, iota).unwrap() {
                    assert_eq!(barycenters_from_polygons(&m), barycenters(&m), "{k}");
                }
            }
        }
    }

    #[test]
    fn polygon_example_rho2() {
        // dual of conv((1,-2), (a,1), (b+c,1)) for (a,b,c) = (1,0,-2)
        let m = DefiningMatrix::rho2(1, 0, -2);
        let b = moment_polygon(&fano_polygon(&m, 2));
        assert_eq!(b.len(), 3);
        assert!(b.contains(&(Rational::ZERO, r(-1, 1))));
        assert!(b.contains(&(r(-1, 1), Rational::ZERO)));
        assert!(b.contains(&(Rational::ONE, Rational::ONE)));
        assert_eq!(centroid(&b), (Rational::ZERO, Rational::ZERO));
    }

    #[test]
    fn families_match_oracle_and_ranges() {
        for rho in Rho::ALL {
            for iota in 1..=30 {
                for (k, m) in enumerate_all(rho, iota).unwrap() {
                    assert_eq!(is_ke_family(&k), is_ke_oracle(&m), "{k}");
                    assert_eq!(is_ke_family(&k), is_ke_family_ranges(&k), "{k}");
                }
            }
        }
    }

    #[test]
    fn balanced_rho3_matrices_satisfy_d_identity() {
        for iota in (1..=25).step_by(2) {
            for (k, m) in enumerate_all(Rho::Three, iota).unwrap() {
                if k.tag() == Tag::S11 && k.iota_plus == k.iota_minus {
                    assert_eq!(m.d, -m.a - m.b - m.c, "{k}");
                }
            }
        }
    }

    #[test]
    fn rho1_ke_second_coordinate_is_one_sixth() {
        for iota in 1..=60 {
            for (k, m) in enumerate_all(Rho::One, iota).unwrap() {
                if is_ke_family(&k) {
                    assert!(barycenters(&m).iter().all(|b| b.y == r(1, 6)));
                    assert_eq!(matrix_from_eta(&k).unwrap().b, -2 - m.a);
                }
            }
        }
    }
}
