//! Euler characteristic, orientability, tightness and the recovered
//! intersection matrix of a glued-rectangle surface.
//!
//! Faces of the dual structure are the vertices of the rectangle complex.
//! They are found as orbits of corner flags `(rectangle, side, endpoint)`
//! under two involutions: switching to the other side at the same corner,
//! and crossing a glued side.

use serde::{Deserialize, Serialize};

use super::{build_surface, check_input, CombinatorialSurface, Side, Slot};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub rectangles: Vec<usize>,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    /// Vertices of the dual structure: intersection points.
    pub v: usize,
    /// Edges: arcs of the curves between intersection points.
    pub e: usize,
    /// Faces: complementary disks.
    pub f: usize,
    pub euler: i64,
    /// Sum over components; `None` when not orientable.
    pub genus: Option<i64>,
    pub orientable: bool,
    pub connected: bool,
    pub tight: bool,
    pub filling: bool,
    pub intersection: Vec<Vec<i64>>,
    pub components: Vec<ComponentReport>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn flag(rect: usize, side: usize, end: usize) -> usize {
    8 * rect + 2 * side + end
}

/// Position of each rectangle on a family of curves, with the direction in
/// which the curve crosses it.
fn curve_membership(
    s: &CombinatorialSurface,
    curves: &[Vec<usize>],
    partner: &[(Slot, bool)],
    exit: Side,
    entry: Side,
    family: &str,
) -> Result<Vec<(usize, i8)>> {
    let nrect = s.rectangles.len();
    let mut member: Vec<Option<(usize, i8)>> = vec![None; nrect];
    let glued =
        |r: usize, side: Side, t: usize, other: Side| partner[4 * r + side.index()].0 == Slot { rect: t, side: other };
    for (idx, curve) in curves.iter().enumerate() {
        if curve.is_empty() {
            return Err(Error::precondition(format!("{family} curve {idx} is empty")));
        }
        for (t, &r) in curve.iter().enumerate() {
            let next = curve[(t + 1) % curve.len()];
            if r >= nrect {
                return Err(Error::precondition(format!("{family} curve {idx} leaves the surface")));
            }
            let dir = if glued(r, exit, next, entry) {
                1
            } else if glued(r, entry, next, exit) {
                -1
            } else {
                return Err(Error::precondition(format!(
                    "{family} curve {idx} does not follow the gluing at rectangle {r}"
                )));
            };
            if member[r].replace((idx, dir)).is_some() {
                return Err(Error::precondition(format!(
                    "rectangle {r} lies on two {family} curves"
                )));
            }
        }
    }
    member
        .into_iter()
        .enumerate()
        .map(|(r, m)| m.ok_or_else(|| Error::precondition(format!("rectangle {r} lies on no {family} curve"))))
        .collect()
}

/// Count cells, decide orientability, tightness and filling, and recover
/// the intersection matrix from the curves.
pub fn analyze(s: &CombinatorialSurface) -> Result<SurfaceReport> {
    let partner = s.check_gluing()?;
    let nrect = s.rectangles.len();
    let c = curve_membership(s, &s.c_curves, &partner, Side::Right, Side::Left, "C")?;
    let d = curve_membership(s, &s.d_curves, &partner, Side::Bottom, Side::Top, "D")?;

    // corner flags
    let mut corners = UnionFind::new(8 * nrect);
    for r in 0..nrect {
        for k in 0..4 {
            corners.union(flag(r, k, 0), flag(r, (k + 3) % 4, 1));
            let (other, matching) = partner[4 * r + k];
            for e in 0..2 {
                let e2 = if matching { 1 - e } else { e };
                corners.union(flag(r, k, e), flag(other.rect, other.side.index(), e2));
            }
        }
    }

    // components and orientation
    let mut comps = UnionFind::new(nrect);
    for g in &s.gluing {
        comps.union(g.a.rect, g.b.rect);
    }
    let mut orient: Vec<Option<i8>> = vec![None; nrect];
    let mut orientable = true;
    for start in 0..nrect {
        if orient[start].is_some() {
            continue;
        }
        orient[start] = Some(1);
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            let o = orient[r].expect("visited");
            for k in 0..4 {
                let (other, matching) = partner[4 * r + k];
                let want = if matching { o } else { -o };
                match orient[other.rect] {
                    None => {
                        orient[other.rect] = Some(want);
                        stack.push(other.rect);
                    }
                    Some(x) if x != want => orientable = false,
                    Some(_) => {}
                }
            }
        }
    }

    let mut roots: Vec<usize> = (0..nrect).map(|r| comps.find(r)).collect();
    roots.sort_unstable();
    roots.dedup();
    let mut components = Vec::with_capacity(roots.len());
    for &root in &roots {
        let rects: Vec<usize> = (0..nrect).filter(|&r| comps.find(r) == root).collect();
        let e = s.gluing.iter().filter(|g| comps.find(g.a.rect) == root).count();
        let mut faces: Vec<usize> = rects
            .iter()
            .flat_map(|&r| (0..8).map(move |x| 8 * r + x))
            .map(|fl| corners.find(fl))
            .collect();
        faces.sort_unstable();
        faces.dedup();
        let v = rects.len();
        components.push(ComponentReport {
            euler: v as i64 - e as i64 + faces.len() as i64,
            rectangles: rects,
            v,
            e,
            f: faces.len(),
        });
    }

    let v = nrect;
    let e = s.gluing.len();
    let f: usize = components.iter().map(|c| c.f).sum();
    let euler = v as i64 - e as i64 + f as i64;
    let genus = if orientable {
        let mut g = 0;
        for comp in &components {
            if comp.euler % 2 != 0 || comp.euler > 2 {
                return Err(Error::invariant(format!(
                    "orientable closed component with Euler characteristic {}",
                    comp.euler
                )));
            }
            g += (2 - comp.euler) / 2;
        }
        Some(g)
    } else {
        None
    };

    let nc = s.c_curves.len();
    let nd = s.d_curves.len();
    let mut intersection = vec![vec![0i64; nc]; nd];
    let mut sign: Vec<Vec<Option<i8>>> = vec![vec![None; nc]; nd];
    let mut tight = orientable;
    for r in 0..nrect {
        let (j, dir_c) = c[r];
        let (i, dir_d) = d[r];
        intersection[i][j] += 1;
        let sg = orient[r].expect("visited") * dir_c * dir_d;
        if *sign[i][j].get_or_insert(sg) != sg {
            tight = false;
        }
    }
    // Every rectangle lies on a C and a D curve (checked above), so each
    // complementary region is the disk around one corner orbit. The orbit
    // closes up after alternating the two involutions, hence has even size.
    let mut orbit_size = vec![0usize; 8 * nrect];
    for fl in 0..8 * nrect {
        orbit_size[corners.find(fl)] += 1;
    }
    let filling = nrect > 0 && orbit_size.iter().all(|&k| k % 2 == 0);

    Ok(SurfaceReport {
        v,
        e,
        f,
        euler,
        genus,
        orientable,
        connected: components.len() == 1,
        tight,
        filling,
        intersection,
        components,
    })
}

/// Build the canonical surface for `q` (entries at least 2) and compare its
/// genus with `n^2 - n + 1`.
pub fn genus_formula_check(q: &RatMatrix) -> Result<bool> {
    let qi = check_input(q)?;
    if qi.iter().flatten().any(|&x| x < 2) {
        return Err(Error::precondition("formula out of scope: entries must be at least 2"));
    }
    let n = qi.len() as i64;
    let report = analyze(&build_surface(q, None)?)?;
    Ok(report.connected && report.genus == Some(n * n - n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{Gluing, RoutingPlan};

    fn report(rows: &[&[i64]]) -> SurfaceReport {
        analyze(&build_surface(&RatMatrix::from_i64(rows), None).unwrap()).unwrap()
    }

    #[test]
    fn torus_counts() {
        let r = report(&[&[1]]);
        assert_eq!((r.v, r.e, r.f, r.euler, r.genus), (1, 2, 1, 0, Some(1)));
        assert!(r.orientable && r.tight && r.filling && r.connected);
        assert_eq!(r.intersection, vec![vec![1]]);
    }

    #[test]
    fn small_genera() {
        assert_eq!(report(&[&[2]]).genus, Some(1));
        assert_eq!(report(&[&[3, 2], &[2, 3]]).genus, Some(3));
        assert_eq!(report(&[&[2, 2], &[2, 3]]).genus, Some(3));
        let r = report(&[&[3, 2, 2], &[2, 3, 2], &[2, 2, 3]]);
        assert_eq!(r.genus, Some(7));
        let r = report(&[&[5, 1], &[1, 2]]);
        assert!(r.connected && r.orientable);
        assert_eq!(r.euler, 2 - 2 * r.genus.unwrap());
    }

    #[test]
    fn formula_check() {
        assert!(genus_formula_check(&RatMatrix::from_i64(&[&[2]])).unwrap());
        assert!(genus_formula_check(&RatMatrix::from_i64(&[&[2, 2], &[2, 3]])).unwrap());
        let e = genus_formula_check(&RatMatrix::from_i64(&[&[5, 1], &[1, 2]])).unwrap_err();
        assert!(e.to_string().contains("formula out of scope"));
    }

    #[test]
    fn reversed_gluing_is_detected() {
        let mut s = build_surface(&RatMatrix::from_i64(&[&[2]]), None).unwrap();
        // glue the strip ends with a flip
        let g = s.gluing.iter_mut().find(|g| g.a.side == Side::Right).unwrap();
        *g = Gluing { matching: false, ..*g };
        let r = analyze(&s).unwrap();
        assert!(!r.orientable);
        assert_eq!(r.genus, None);
        assert!(!r.tight);
    }

    #[test]
    fn malformed_gluing_is_rejected() {
        let mut s = build_surface(&RatMatrix::from_i64(&[&[2]]), None).unwrap();
        s.gluing.pop();
        assert!(analyze(&s).is_err());
    }

    #[test]
    fn reordered_plan_keeps_intersections() {
        let qi = vec![vec![2, 3], vec![1, 2]];
        let mut plan = RoutingPlan::canonical(&qi);
        plan.strips[1] = vec![0, 1, 0, 1, 0];
        plan.routes[0] = vec![(1, 2), (0, 0), (1, 0), (0, 1), (1, 1)];
        let q = RatMatrix::from_int_rows(&qi).unwrap();
        let r = analyze(&build_surface(&q, Some(&plan)).unwrap()).unwrap();
        assert_eq!(r.intersection, qi);
        assert!(r.orientable && r.tight);
    }
}
