//! Minimal doubled area of a convex lattice polygon with exactly `k`
//! vertices, by exhaustive branch-and-bound.
//!
//! Soundness of the search box: let `P` be a minimal polygon with doubled
//! area `D` and let `T` be a maximal-area triangle on its vertices. No
//! vertex may leave the strip of width `2·dist(vertex, opposite side)`
//! around any side of `T`, otherwise `T` was not maximal. Reducing `T`'s
//! edge pair to Hermite form `(a,0), (b,c)` with `ac <= D`, `0 <= b < a`
//! bounds every vertex by `|x| <= 2a <= 2D`, `|y| <= c <= D`. So some
//! unimodular image of `P` fits, after translation by its lowest-leftmost
//! vertex, in `x ∈ [−4D, 4D]`, `y ∈ [0, 2D]`, and it suffices to scan
//! polygons there whose area does not exceed a known witness.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

type V = (i64, i64);

fn cross(u: V, v: V) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Total angular order on nonzero integer vectors, starting at the positive
/// x-axis and running counterclockwise.
fn angle_cmp(u: V, v: V) -> std::cmp::Ordering {
    let half = |w: V| if w.1 > 0 || (w.1 == 0 && w.0 > 0) { 0u8 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| 0i64.cmp(&cross(u, v)))
}

/// Some convex lattice `k`-gon, as a counterclockwise vertex list. Used to
/// seed the search with an upper bound.
pub fn witness_kgon(k: usize) -> Vec<V> {
    assert!(k >= 3);
    let mut dirs: Vec<V> = if k % 2 == 1 {
        let mut d = vec![(1, 0), (-1, 1), (0, -1)];
        for j in 1..=(k - 3) / 2 {
            d.push((1, j as i64));
            d.push((-1, -(j as i64)));
        }
        d
    } else {
        let mut d = vec![(1, 0), (0, 1), (-1, 0), (0, -1)];
        for j in 1..=(k - 4) / 2 {
            d.push((1, j as i64));
            d.push((-1, -(j as i64)));
        }
        d
    };
    debug_assert_eq!(dirs.len(), k);
    dirs.sort_by(|&u, &v| angle_cmp(u, v));
    let mut verts = Vec::with_capacity(k);
    let mut cur = (0i64, 0i64);
    for d in &dirs {
        verts.push(cur);
        cur = (cur.0 + d.0, cur.1 + d.1);
    }
    debug_assert_eq!(cur, (0, 0));
    verts
}

fn shoelace_doubled(verts: &[V]) -> i64 {
    let k = verts.len();
    let mut s = 0i64;
    for i in 0..k {
        s += cross(verts[i], verts[(i + 1) % k]);
    }
    s.abs()
}

/// Minimal doubled area over all convex lattice polygons with exactly `k`
/// vertices, together with a polygon attaining it. Exhaustive; intended for
/// desk-scale `k` (3..=10).
pub fn min_kgon_doubled_area(k: usize) -> Result<(BigInt, Vec<V>)> {
    if !(3..=10).contains(&k) {
        return Err(Error::InvalidInput("k must be in 3..=10".into()));
    }
    let witness = witness_kgon(k);
    let mut best = shoelace_doubled(&witness);
    let mut best_poly = witness;

    let dstar = best;
    let (x_lo, x_hi) = (-4 * dstar, 4 * dstar);
    let y_hi = 2 * dstar;

    // First vertex v1 after the origin: strictly above the x-axis or on it
    // to the right (origin is the lowest-leftmost vertex).
    let mut stack_verts: Vec<V> = Vec::with_capacity(k);
    let mut y = 0i64;
    while y <= y_hi {
        let mut x = if y == 0 { 1 } else { x_lo };
        while x <= x_hi {
            stack_verts.push((x, y));
            dfs(k, x_lo, x_hi, y_hi, &mut stack_verts, 0, &mut best, &mut best_poly);
            stack_verts.pop();
            x += 1;
        }
        y += 1;
    }
    Ok((BigInt::from(best), best_poly))
}

/// Extends the partial vertex chain `verts` (relative to the origin vertex)
/// by one vertex, pruning on fan area and convexity.
#[allow(clippy::too_many_arguments)]
fn dfs(
    k: usize,
    x_lo: i64,
    x_hi: i64,
    y_hi: i64,
    verts: &mut Vec<V>,
    area: i64,
    best: &mut i64,
    best_poly: &mut Vec<V>,
) {
    let placed = verts.len();
    if placed == k - 1 {
        // close the polygon through the origin
        let vl = verts[placed - 1];
        let e_last = (-vl.0, -vl.1);
        let e_prev = (
            vl.0 - verts[placed - 2].0,
            vl.1 - verts[placed - 2].1,
        );
        let e_first = verts[0];
        if cross(e_prev, e_last) >= 1 && cross(e_last, e_first) >= 1 && area < *best {
            *best = area;
            best_poly.clear();
            best_poly.push((0, 0));
            best_poly.extend_from_slice(verts);
        }
        return;
    }

    let vd = verts[placed - 1];
    let e_prev = if placed >= 2 {
        (vd.0 - verts[placed - 2].0, vd.1 - verts[placed - 2].1)
    } else {
        vd
    };
    // future fan triangles each contribute at least 1
    let remaining_after = (k - 2 - placed) as i64;
    let fan_budget = *best - 1 - area - remaining_after;
    if fan_budget < 1 {
        return;
    }

    // candidates w with vd × w = c lie on a lattice line directed along vd
    let g = vd.0.gcd(&vd.1);
    let (sx, sy) = (vd.0 / g, vd.1 / g);
    let egcd = i64::extended_gcd(&vd.0, &vd.1);
    for c in 1..=fan_budget {
        if c % g != 0 {
            continue;
        }
        let m = c / g;
        // particular solution of vd × w = c
        let mut wx = -egcd.y * m;
        let mut wy = egcd.x * m;
        debug_assert_eq!(cross(vd, (wx, wy)), c);
        // slide into the box along (sx, sy)
        // pick t range so that both coordinates stay inside
        let (t_lo, t_hi) = match t_range(wx, sx, x_lo, x_hi)
            .and_then(|r1| t_range(wy, sy, 0, y_hi).map(|r2| (r1.0.max(r2.0), r1.1.min(r2.1))))
        {
            Some(r) => r,
            None => continue,
        };
        if t_lo > t_hi {
            continue;
        }
        wx += t_lo * sx;
        wy += t_lo * sy;
        let mut t = t_lo;
        while t <= t_hi {
            let w = (wx, wy);
            wx += sx;
            wy += sy;
            t += 1;
            if w.1 == 0 && w.0 <= 0 {
                continue;
            }
            if cross(e_prev, (w.0 - vd.0, w.1 - vd.1)) < 1 {
                continue;
            }
            verts.push(w);
            dfs(k, x_lo, x_hi, y_hi, verts, area + c, best, best_poly);
            verts.pop();
        }
    }
}

/// Integers `t` with `lo <= w + t·s <= hi`, or `None` when impossible.
fn t_range(w: i64, s: i64, lo: i64, hi: i64) -> Option<(i64, i64)> {
    if s == 0 {
        return if w >= lo && w <= hi { Some((i64::MIN / 4, i64::MAX / 4)) } else { None };
    }
    let (a, b) = (lo - w, hi - w);
    let (mut t0, mut t1) = (div_ceil(a, s), div_floor(b, s));
    if s < 0 {
        (t0, t1) = (div_ceil(b, s), div_floor(a, s));
    }
    if t0 > t1 {
        None
    } else {
        Some((t0, t1))
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_convex_kgons() {
        for k in 3..=10 {
            let verts = witness_kgon(k);
            assert_eq!(verts.len(), k);
            for i in 0..k {
                let e1 = (
                    verts[(i + 1) % k].0 - verts[i].0,
                    verts[(i + 1) % k].1 - verts[i].1,
                );
                let e2 = (
                    verts[(i + 2) % k].0 - verts[(i + 1) % k].0,
                    verts[(i + 2) % k].1 - verts[(i + 1) % k].1,
                );
                assert!(cross(e1, e2) > 0, "k={k}: not strictly convex");
            }
        }
    }

    #[test]
    fn minimal_triangle_and_quadrilateral() {
        let (d3, _) = min_kgon_doubled_area(3).unwrap();
        assert_eq!(d3, BigInt::from(1));
        let (d4, _) = min_kgon_doubled_area(4).unwrap();
        assert_eq!(d4, BigInt::from(2));
    }

    #[test]
    fn minimal_pentagon() {
        let (d5, poly) = min_kgon_doubled_area(5).unwrap();
        // search result, recorded: the minimal convex lattice pentagon has
        // doubled area 5 (area 5/2)
        assert_eq!(d5, BigInt::from(5));
        assert_eq!(shoelace_doubled(&poly), 5);
        // the weak cubic bound (k/5)^3
        assert!(d5 >= BigInt::from(1));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(min_kgon_doubled_area(2).is_err());
        assert!(min_kgon_doubled_area(11).is_err());
    }
}
