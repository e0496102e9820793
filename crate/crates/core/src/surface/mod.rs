//! Closed orientable surfaces carrying two tight filling multicurves with a
//! prescribed intersection matrix.
//!
//! The surface is a union of rectangles, one per intersection point of some
//! `D_i` with some `C_j`. `C_j` crosses each of its rectangles from the left
//! side to the right side, `D_i` from the top to the bottom. Right sides are
//! glued to left sides along the strips and bottoms to tops along the
//! routes of the `D` curves.

mod analyze;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

pub use analyze::{analyze, genus_formula_check, ComponentReport, SurfaceReport};

/// Sides in counterclockwise order. Side `k` runs from corner `k` to corner
/// `k + 1`, with corners bottom-left, bottom-right, top-right, top-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub rect: usize,
    pub side: Side,
}

impl Slot {
    fn id(self) -> usize {
        4 * self.rect + self.side.index()
    }
}

/// Two sides identified. `matching` gluings reverse the boundary
/// orientations of the two sides, so coherently oriented rectangles stay
/// coherent across them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: Slot,
    pub b: Slot,
    pub matching: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    /// Index `j` of the strip, i.e. of the curve `C_j`.
    pub strip: usize,
    /// Index `i` of the curve `D_i` through this rectangle.
    pub label: usize,
    /// Position along the strip, from the left.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialSurface {
    pub rectangles: Vec<Rectangle>,
    pub gluing: Vec<Gluing>,
    /// `c_curves[j]`: rectangles crossed by `C_j`, in order.
    pub c_curves: Vec<Vec<usize>>,
    /// `d_curves[i]`: rectangles crossed by `D_i`, in order.
    pub d_curves: Vec<Vec<usize>>,
}

/// Box labels along each strip and the order in which each `D_i` visits
/// its boxes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingPlan {
    /// `strips[j]`: the labels of the boxes on strip `j`, left to right.
    pub strips: Vec<Vec<usize>>,
    /// `routes[i]`: cyclic sequence of `(j, k)`, the `k`-th box labelled `i`
    /// on strip `j` counting from the left.
    pub routes: Vec<Vec<(usize, usize)>>,
}

impl RoutingPlan {
    /// Labels in increasing order along each strip; `D_i` runs through its
    /// boxes on strip 0 left to right, then strip 1, and so on, then closes.
    pub fn canonical(q: &[Vec<i64>]) -> Self {
        let n = q.len();
        let strips = (0..n)
            .map(|j| (0..n).flat_map(|i| std::iter::repeat_n(i, q[i][j] as usize)).collect())
            .collect();
        let routes = (0..n)
            .map(|i| {
                (0..n)
                    .flat_map(|j| (0..q[i][j] as usize).map(move |k| (j, k)))
                    .collect()
            })
            .collect();
        RoutingPlan { strips, routes }
    }

    /// Label multiplicities match `q` and each route visits each of its
    /// boxes exactly once.
    pub fn validate(&self, q: &[Vec<i64>]) -> Result<()> {
        let n = q.len();
        if self.strips.len() != n || self.routes.len() != n {
            return Err(Error::precondition(format!(
                "routing plan must have {n} strips and {n} routes"
            )));
        }
        for (j, strip) in self.strips.iter().enumerate() {
            for i in 0..n {
                let count = strip.iter().filter(|&&l| l == i).count() as i64;
                if count != q[i][j] {
                    return Err(Error::precondition(format!(
                        "strip {j} carries label {i} {count} times, expected {}",
                        q[i][j]
                    )));
                }
            }
            if let Some(l) = strip.iter().find(|&&l| l >= n) {
                return Err(Error::precondition(format!("label {l} out of range on strip {j}")));
            }
        }
        for (i, route) in self.routes.iter().enumerate() {
            let mut seen: Vec<Vec<bool>> = (0..n).map(|j| vec![false; q[i][j] as usize]).collect();
            for &(j, k) in route {
                let slot = seen
                    .get_mut(j)
                    .and_then(|s| s.get_mut(k))
                    .ok_or_else(|| Error::precondition(format!("route {i} visits a missing box ({j}, {k})")))?;
                if *slot {
                    return Err(Error::precondition(format!("route {i} visits box ({j}, {k}) twice")));
                }
                *slot = true;
            }
            if seen.iter().flatten().any(|s| !s) {
                return Err(Error::precondition(format!("route {i} misses some of its boxes")));
            }
        }
        Ok(())
    }
}

/// Check that `q` is a nonsingular square matrix of positive integers.
pub fn check_input(q: &RatMatrix) -> Result<Vec<Vec<i64>>> {
    if !q.is_square() || q.rows() == 0 {
        return Err(Error::precondition("intersection matrix must be nonempty and square"));
    }
    let rows = q
        .to_i64_rows()
        .ok_or_else(|| Error::precondition("intersection matrix must be integral"))?;
    if rows.iter().flatten().any(|&x| x < 1) {
        return Err(Error::precondition("intersection matrix must have positive entries"));
    }
    if num_traits::Zero::is_zero(&q.det()) {
        return Err(Error::precondition("nonsingular required"));
    }
    Ok(rows)
}

/// Build the surface for `q`, with the canonical routing unless a plan is
/// given.
pub fn build_surface(q: &RatMatrix, plan: Option<&RoutingPlan>) -> Result<CombinatorialSurface> {
    let qi = check_input(q)?;
    let n = qi.len();
    let canonical;
    let plan = match plan {
        Some(p) => {
            p.validate(&qi)?;
            p
        }
        None => {
            canonical = RoutingPlan::canonical(&qi);
            &canonical
        }
    };

    let mut rectangles = Vec::new();
    // boxes[j][i]: rectangles labelled i on strip j, left to right
    let mut boxes: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    let mut c_curves = Vec::with_capacity(n);
    for (j, strip) in plan.strips.iter().enumerate() {
        let mut curve = Vec::with_capacity(strip.len());
        for (position, &label) in strip.iter().enumerate() {
            let id = rectangles.len();
            rectangles.push(Rectangle {
                strip: j,
                label,
                position,
            });
            boxes[j][label].push(id);
            curve.push(id);
        }
        c_curves.push(curve);
    }
    let d_curves: Vec<Vec<usize>> = plan
        .routes
        .iter()
        .enumerate()
        .map(|(i, route)| route.iter().map(|&(j, k)| boxes[j][i][k]).collect())
        .collect();

    let mut gluing = Vec::with_capacity(2 * rectangles.len());
    for curve in &c_curves {
        for (t, &r) in curve.iter().enumerate() {
            let next = curve[(t + 1) % curve.len()];
            gluing.push(Gluing {
                a: Slot {
                    rect: r,
                    side: Side::Right,
                },
                b: Slot {
                    rect: next,
                    side: Side::Left,
                },
                matching: true,
            });
        }
    }
    for curve in &d_curves {
        for (t, &r) in curve.iter().enumerate() {
            let next = curve[(t + 1) % curve.len()];
            gluing.push(Gluing {
                a: Slot {
                    rect: r,
                    side: Side::Bottom,
                },
                b: Slot {
                    rect: next,
                    side: Side::Top,
                },
                matching: true,
            });
        }
    }
    let surface = CombinatorialSurface {
        rectangles,
        gluing,
        c_curves,
        d_curves,
    };
    for (j, curve) in surface.c_curves.iter().enumerate() {
        let expected: i64 = (0..n).map(|i| qi[i][j]).sum();
        if curve.len() as i64 != expected {
            return Err(Error::invariant(format!(
                "strip {j} has {} rectangles, expected {expected}",
                curve.len()
            )));
        }
    }
    surface.check_gluing()?;
    Ok(surface)
}

impl CombinatorialSurface {
    /// Partner of every slot; fails unless the gluing is a fixed-point-free
    /// involution covering all slots.
    pub(crate) fn check_gluing(&self) -> Result<Vec<(Slot, bool)>> {
        let total = 4 * self.rectangles.len();
        let mut partner: Vec<Option<(Slot, bool)>> = vec![None; total];
        for g in &self.gluing {
            if g.a.rect >= self.rectangles.len() || g.b.rect >= self.rectangles.len() {
                return Err(Error::precondition("gluing refers to a missing rectangle"));
            }
            if g.a == g.b {
                return Err(Error::precondition("a side is glued to itself"));
            }
            for (s, t) in [(g.a, g.b), (g.b, g.a)] {
                if partner[s.id()].replace((t, g.matching)).is_some() {
                    return Err(Error::precondition(format!(
                        "side {:?} of rectangle {} is glued twice",
                        s.side, s.rect
                    )));
                }
            }
        }
        partner
            .into_iter()
            .enumerate()
            .map(|(id, p)| {
                p.ok_or_else(|| Error::precondition(format!("side {} of rectangle {} is unglued", id % 4, id / 4)))
            })
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.c_curves.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface serializes")
    }

    /// One line per rectangle and per gluing, for external viewers.
    pub fn adjacency_dump(&self) -> String {
        let mut out = String::new();
        for (id, r) in self.rectangles.iter().enumerate() {
            out.push_str(&format!(
                "rect {id} strip {} label {} position {}\n",
                r.strip, r.label, r.position
            ));
        }
        let name = |s: Side| match s {
            Side::Bottom => "bottom",
            Side::Right => "right",
            Side::Top => "top",
            Side::Left => "left",
        };
        for g in &self.gluing {
            out.push_str(&format!(
                "glue {}.{} {}.{}{}\n",
                g.a.rect,
                name(g.a.side),
                g.b.rect,
                name(g.b.side),
                if g.matching { "" } else { " reversed" }
            ));
        }
        out
    }
}
