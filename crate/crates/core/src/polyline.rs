//! Level curves of a cell potential on a two-dimensional grid.
//!
//! Cell `(i, j)` of the lifted plane occupies `[i, i+1] x [j, j+1]` in grid
//! units and carries `F(i, j) = Q(i mod nx, j mod ny) + α · copy`. A face
//! between two cells carries the integer levels `k` with
//! `min F <= k < max F`, drawn with the larger value on the left. Curves are
//! identified up to deck translations, which shift levels by `α · copy`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::grid::Grid;
use crate::homology::CohomologyClass;

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    /// Level index of the first segment, reduced to the fundamental domain.
    pub level: i64,
    /// Lifted vertices in unit coordinates; the last repeats the first up to a lattice vector.
    pub points: Vec<[f64; 2]>,
    /// Lattice displacement between the last and the first point.
    pub homology: [i64; 2],
    pub closed: bool,
}

impl Polyline {
    /// Class dual to the curve, with the side of larger potential as co-orientation.
    pub fn class(&self) -> [i64; 2] {
        [-self.homology[1], self.homology[0]]
    }
}

/// Faces: vertical `V(a, b)` runs from `(a, b)` to `(a, b+1)` between cells
/// `(a-1, b)` and `(a, b)`; horizontal `H(a, b)` runs from `(a, b)` to `(a+1, b)`
/// between cells `(a, b-1)` and `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Axis {
    V,
    H,
}

struct Field<'a> {
    nx: i64,
    ny: i64,
    values: &'a [i64],
    alpha: [i64; 2],
}

impl Field<'_> {
    fn at(&self, i: i64, j: i64) -> i64 {
        let (ci, cj) = (i.div_euclid(self.nx), j.div_euclid(self.ny));
        let idx = (i.rem_euclid(self.nx) + self.nx * j.rem_euclid(self.ny)) as usize;
        self.values[idx] + self.alpha[0] * ci + self.alpha[1] * cj
    }

    /// Values on the (first, second) side: (left, right) for V, (below, above) for H.
    fn sides(&self, axis: Axis, a: i64, b: i64) -> (i64, i64) {
        match axis {
            Axis::V => (self.at(a - 1, b), self.at(a, b)),
            Axis::H => (self.at(a, b - 1), self.at(a, b)),
        }
    }

    fn carries(&self, axis: Axis, a: i64, b: i64, k: i64) -> bool {
        let (x, y) = self.sides(axis, a, b);
        x.min(y) <= k && k < x.max(y)
    }

    /// Start and end points of a face carrying some level.
    fn ends(&self, axis: Axis, a: i64, b: i64) -> ((i64, i64), (i64, i64)) {
        let (x, y) = self.sides(axis, a, b);
        match axis {
            Axis::V if y > x => ((a, b + 1), (a, b)),
            Axis::V => ((a, b), (a, b + 1)),
            Axis::H if y > x => ((a, b), (a + 1, b)),
            Axis::H => ((a + 1, b), (a, b)),
        }
    }

    fn key(&self, axis: Axis, a: i64, b: i64, k: i64) -> (Axis, i64, i64, i64) {
        let (ca, cb) = (a.div_euclid(self.nx), b.div_euclid(self.ny));
        (axis, a.rem_euclid(self.nx), b.rem_euclid(self.ny), k - self.alpha[0] * ca - self.alpha[1] * cb)
    }
}

/// Face incident to corner `p` in direction `d` (0 = E, 1 = N, 2 = W, 3 = S).
fn face_at(p: (i64, i64), d: usize) -> (Axis, i64, i64) {
    match d {
        0 => (Axis::H, p.0, p.1),
        1 => (Axis::V, p.0, p.1),
        2 => (Axis::H, p.0 - 1, p.1),
        _ => (Axis::V, p.0, p.1 - 1),
    }
}

fn direction_from(p: (i64, i64), q: (i64, i64)) -> usize {
    match (q.0 - p.0, q.1 - p.1) {
        (1, 0) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        _ => 3,
    }
}

/// All level curves of `values` over a two-dimensional grid, one per deck orbit.
///
/// At a corner with two outgoing faces the first one clockwise from the
/// incoming face is taken, which pairs saddle segments consistently.
pub fn trace_polylines(grid: &Grid, values: &[i64], alpha: &CohomologyClass) -> Vec<Polyline> {
    let res = grid.resolution();
    let cov = alpha.covector();
    let f = Field { nx: res[0] as i64, ny: res[1] as i64, values, alpha: [cov[0], cov[1]] };
    let mut visited = BTreeSet::new();
    let mut out = Vec::new();
    let unit = |p: (i64, i64)| [p.0 as f64 / f.nx as f64, p.1 as f64 / f.ny as f64];
    for axis in [Axis::V, Axis::H] {
        for b in 0..f.ny {
            for a in 0..f.nx {
                let (x, y) = f.sides(axis, a, b);
                for k in x.min(y)..x.max(y) {
                    let start = f.key(axis, a, b, k);
                    if visited.contains(&start) {
                        continue;
                    }
                    let budget = 4 * (f.nx * f.ny) as usize * (1 + (x - y).unsigned_abs() as usize) + 16;
                    let (s0, _) = f.ends(axis, a, b);
                    let mut points = alloc::vec![unit(s0)];
                    let mut cur = (axis, a, b);
                    let mut closed = false;
                    let mut end = s0;
                    visited.insert(start);
                    for _ in 0..budget {
                        let (s, e) = f.ends(cur.0, cur.1, cur.2);
                        points.push(unit(e));
                        end = e;
                        let incoming = direction_from(e, s);
                        let next = (1..4).map(|t| face_at(e, (incoming + 4 - t) % 4)).find(|&(ax, fa, fb)| {
                            f.carries(ax, fa, fb, k) && f.ends(ax, fa, fb).0 == e
                        });
                        let Some(next) = next else { break };
                        let key = f.key(next.0, next.1, next.2, k);
                        if key == start {
                            closed = true;
                            break;
                        }
                        visited.insert(key);
                        cur = next;
                    }
                    let homology = if closed { [(end.0 - s0.0) / f.nx, (end.1 - s0.1) / f.ny] } else { [0, 0] };
                    out.push(Polyline { level: start.3, points, homology, closed });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nx: usize, ny: usize) -> Grid {
        Grid::new(&[nx, ny]).unwrap()
    }

    #[test]
    fn horizontal_step() {
        // Rows 0..2 at 0, rows 2..4 at 1.
        let values: Vec<i64> = (0..16).map(|i| if i / 4 >= 2 { 1 } else { 0 }).collect();
        let lines = trace_polylines(&grid(4, 4), &values, &CohomologyClass::new(&[0, 1]).unwrap());
        assert_eq!(lines.len(), 1);
        assert!(lines[0].closed);
        assert_eq!(lines[0].homology, [1, 0]);
        assert_eq!(lines[0].class(), [0, 1]);
        assert!(lines[0].points.iter().all(|p| p[1] == 0.5));
    }

    #[test]
    fn vertical_class() {
        let values: Vec<i64> = (0..9).map(|i| if i % 3 >= 1 { 1 } else { 0 }).collect();
        let lines = trace_polylines(&grid(3, 3), &values, &CohomologyClass::new(&[2, 0]).unwrap());
        let total: [i64; 2] = lines.iter().fold([0, 0], |acc, l| [acc[0] + l.class()[0], acc[1] + l.class()[1]]);
        assert_eq!(total, [2, 0]);
        assert!(lines.iter().all(|l| l.closed));
    }

    #[test]
    fn bump_is_contractible() {
        let mut values = alloc::vec![0i64; 25];
        values[12] = 1;
        let lines = trace_polylines(&grid(5, 5), &values, &CohomologyClass::zero(2).unwrap());
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].homology, [0, 0]);
        assert_eq!(lines[0].points.len(), 5);
        // Larger values on the left: counterclockwise around the bump.
        let p = &lines[0].points;
        let area: f64 = p.windows(2).map(|w| w[0][0] * w[1][1] - w[1][0] * w[0][1]).sum();
        assert!(area > 0.0);
    }

    #[test]
    fn saddle_uses_every_segment_once() {
        let values = alloc::vec![0, 1, 1, 0];
        let lines = trace_polylines(&grid(2, 2), &values, &CohomologyClass::zero(2).unwrap());
        let segments: usize = lines.iter().map(|l| l.points.len() - 1).sum();
        assert_eq!(segments, 8);
        assert!(lines.iter().all(|l| l.closed));
    }
}
