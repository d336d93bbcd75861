//! Exact two-agent moving knife.
//!
//! Given agents `i` and `j` and a piece `S`, find a sub-piece that both value
//! at exactly `1/k` of `S`. Two knives `x <= y` sweep `S` keeping
//! `V_i(S ∩ [x, y)) = V_i(S) / k`; along that path `V_j(S ∩ [x, y))` is
//! continuous, and the `k` consecutive windows that tile `S` average to
//! `V_j(S) / k`, so the target value is crossed somewhere. With
//! piecewise-constant densities the path is a polyline in `(x, y)` and `V_j`
//! is linear on each segment, so the crossing is solved for exactly.
//!
//! Exactness relies on the densities being piecewise constant. For general
//! densities this is only the continuous procedure.

use num_traits::{Signed, Zero};

use crate::cake::{equal_split, measure, prefix_cut, Density, Piece};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One vertex of the knife path: the window `S ∩ [left, right)` and agent
/// `j`'s value for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowVertex {
    pub left: Rational,
    pub right: Rational,
    pub value: Rational,
}

/// `V_j` of the sliding window whose `V_i` stays fixed at `V_i(S) / k`,
/// represented by its breakpoints.
#[derive(Debug, Clone)]
pub struct WindowFunction {
    /// Common refinement of both densities' breakpoints and the endpoints of
    /// `S`, from `S.start()` to `S.end()`.
    grid: Vec<Rational>,
    /// Agent `i`'s density per cell, zero outside `S`.
    a: Vec<Rational>,
    b: Vec<Rational>,
    cum_a: Vec<Rational>,
    cum_b: Vec<Rational>,
    width: Rational,
}

impl WindowFunction {
    /// Requires `V_i(S) > 0` and `k >= 1`.
    pub fn new(di: &Density, dj: &Density, k: usize, s: &Piece) -> Self {
        let (start, end) = (
            s.start().expect("non-empty piece"),
            s.end().expect("non-empty"),
        );
        let mut grid: Vec<Rational> = s
            .intervals()
            .iter()
            .flat_map(|iv| [iv.lo().clone(), iv.hi().clone()])
            .chain(di.breakpoints().iter().cloned())
            .chain(dj.breakpoints().iter().cloned())
            .filter(|p| p >= start && p <= end)
            .collect();
        grid.sort();
        grid.dedup();

        let cells = grid.len() - 1;
        let (mut a, mut b) = (Vec::with_capacity(cells), Vec::with_capacity(cells));
        let (mut cum_a, mut cum_b) = (vec![Rational::zero()], vec![Rational::zero()]);
        let mut iv = s.intervals().iter().peekable();
        for c in 0..cells {
            let lo = &grid[c];
            while iv.peek().is_some_and(|i| i.hi() <= lo) {
                iv.next();
            }
            let inside = iv.peek().is_some_and(|i| i.lo() <= lo);
            let (va, vb) = if inside {
                (di.value_at(lo).clone(), dj.value_at(lo).clone())
            } else {
                (Rational::zero(), Rational::zero())
            };
            let len = &grid[c + 1] - lo;
            cum_a.push(&cum_a[c] + &va * &len);
            cum_b.push(&cum_b[c] + &vb * &len);
            a.push(va);
            b.push(vb);
        }
        let width = &cum_a[cells] / Rational::from_integer(k.into());
        debug_assert!(width.is_positive());
        WindowFunction {
            grid,
            a,
            b,
            cum_a,
            cum_b,
            width,
        }
    }

    fn cells(&self) -> usize {
        self.a.len()
    }

    /// Cell whose half-open span contains `x`, or `cells()` at the right end.
    fn cell_right_of(&self, x: &Rational) -> usize {
        self.grid.partition_point(|g| g <= x) - 1
    }

    fn value_b(&self, x: &Rational, c: usize) -> Rational {
        if c == self.cells() {
            return self.cum_b[c].clone();
        }
        &self.cum_b[c] + &self.b[c] * (x - &self.grid[c])
    }

    /// Agent `i`'s window mass; the walk keeps it constant.
    pub fn width(&self) -> &Rational {
        &self.width
    }

    /// All vertices of the knife path, from the leftmost window to the one
    /// ending at the right end of `S`.
    pub fn vertices(&self) -> Vec<WindowVertex> {
        let mut walk = self.walk();
        let mut out = vec![walk.vertex()];
        while walk.advance() {
            out.push(walk.vertex());
        }
        out
    }

    fn walk(&self) -> Walk<'_> {
        let x = self.grid[0].clone();
        let j = self.cum_a.partition_point(|c| *c < self.width);
        let k = j - 1;
        let y = &self.grid[k] + (&self.width - &self.cum_a[k]) / &self.a[k];
        let cy = self.cell_right_of(&y);
        Walk {
            f: self,
            x,
            cx: 0,
            y,
            cy,
        }
    }
}

struct Walk<'a> {
    f: &'a WindowFunction,
    x: Rational,
    cx: usize,
    y: Rational,
    cy: usize,
}

impl Walk<'_> {
    fn value(&self) -> Rational {
        self.f.value_b(&self.y, self.cy) - self.f.value_b(&self.x, self.cx)
    }

    fn vertex(&self) -> WindowVertex {
        WindowVertex {
            left: self.x.clone(),
            right: self.y.clone(),
            value: self.value(),
        }
    }

    /// Moves to the next path vertex; false once the right knife is at the
    /// end of the piece.
    ///
    /// The right knife crosses zero-density stretches first, then the left
    /// one; otherwise both move together at the rate that keeps the window
    /// mass fixed. This order makes the path pass through every window of
    /// the left-to-right tiling, including the last one.
    fn advance(&mut self) -> bool {
        let f = self.f;
        if self.cy == f.cells() {
            return false;
        }
        let zero_right = f.a[self.cy].is_zero();
        if zero_right {
            self.cy += 1;
            self.y = f.grid[self.cy].clone();
        } else if f.a[self.cx].is_zero() {
            self.cx += 1;
            self.x = f.grid[self.cx].clone();
        } else {
            let rate = &f.a[self.cx] / &f.a[self.cy];
            let dx_max = &f.grid[self.cx + 1] - &self.x;
            let dy_max = &f.grid[self.cy + 1] - &self.y;
            let dy_at_dx_max = &rate * &dx_max;
            if dy_at_dx_max <= dy_max {
                self.x = f.grid[self.cx + 1].clone();
                self.cx += 1;
                self.y += dy_at_dx_max;
                if self.y == f.grid[self.cy + 1] {
                    self.cy += 1;
                }
            } else {
                self.x += dy_max / rate;
                self.y = f.grid[self.cy + 1].clone();
                self.cy += 1;
            }
        }
        true
    }
}

/// A sub-piece `P ⊆ S` with `V_i(P) = V_i(S)/k` and `V_j(P) = V_j(S)/k`.
///
/// Returns the first such window along the knife path. If agent `i` gives
/// `S` zero value the cut is made by agent `j` alone, and by length if both
/// do.
pub fn exact_fraction(di: &Density, dj: &Density, k: usize, s: &Piece) -> Result<Piece> {
    assert!(k >= 1, "exact_fraction needs k >= 1");
    if k == 1 || s.is_empty() {
        return Ok(s.clone());
    }
    let kq = Rational::from_integer(k.into());
    let mass_i = measure(di, s);
    if mass_i.is_zero() {
        let mass_j = measure(dj, s);
        let (p, _) = if mass_j.is_zero() {
            prefix_cut(&Density::uniform(), s, &(s.length() / kq))?
        } else {
            prefix_cut(dj, s, &(mass_j / kq))?
        };
        return Ok(p);
    }

    let wf = WindowFunction::new(di, dj, k, s);
    let target = measure(dj, s) / kq;
    let mut walk = wf.walk();
    let mut h = walk.value() - &target;
    loop {
        if h.is_zero() {
            return Ok(s.clip(Some(&walk.x), Some(&walk.y)));
        }
        let (x0, y0) = (walk.x.clone(), walk.y.clone());
        if !walk.advance() {
            return Err(Error::NoCrossing { k });
        }
        let h1 = walk.value() - &target;
        if !h1.is_zero() && h.is_positive() != h1.is_positive() {
            let lambda = &h / (&h - &h1);
            let x = &x0 + &lambda * (&walk.x - &x0);
            let y = &y0 + &lambda * (&walk.y - &y0);
            return Ok(s.clip(Some(&x), Some(&y)));
        }
        h = h1;
    }
}

/// Partitions `S` into `n` pieces, each worth exactly `1/n` of `S` to both
/// agents. Pieces come in extraction order; the last is the remainder.
pub fn austin_cut(di: &Density, dj: &Density, n: usize, s: &Piece) -> Result<Vec<Piece>> {
    assert!(n >= 1, "austin_cut needs n >= 1");
    if measure(di, s).is_zero() {
        return Ok(equal_split(dj, s, n));
    }
    if measure(dj, s).is_zero() {
        return Ok(equal_split(di, s, n));
    }
    let mut out = Vec::with_capacity(n);
    let mut rest = s.clone();
    for k in (2..=n).rev() {
        let p = exact_fraction(di, dj, k, &rest)?;
        rest = rest.difference(&p);
        out.push(p);
    }
    out.push(rest);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn step(bps: &[(i64, i64)], vals: &[(i64, i64)]) -> Density {
        Density::new(
            bps.iter().map(|&(a, b)| ratio(a, b)).collect(),
            vals.iter().map(|&(a, b)| ratio(a, b)).collect(),
        )
        .unwrap()
    }

    fn piece(pairs: &[(i64, i64, i64, i64)]) -> Piece {
        Piece::from_pairs(pairs.iter().map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))).unwrap()
    }

    fn left_heavy() -> Density {
        step(&[(0, 1), (1, 2), (1, 1)], &[(2, 1), (0, 1)])
    }

    #[test]
    fn identical_agents_take_leftmost_half() {
        let u = Density::uniform();
        let p = exact_fraction(&u, &u, 2, &Piece::whole()).unwrap();
        assert_eq!(p, piece(&[(0, 1, 1, 2)]));
    }

    #[test]
    fn sliding_half_window_meets_at_quarter() {
        let p = exact_fraction(&Density::uniform(), &left_heavy(), 2, &Piece::whole()).unwrap();
        assert_eq!(p, piece(&[(1, 4, 3, 4)]));
    }

    #[test]
    fn k_one_is_identity() {
        let s = piece(&[(0, 1, 1, 3), (1, 2, 2, 3)]);
        assert_eq!(
            exact_fraction(&left_heavy(), &Density::uniform(), 1, &s).unwrap(),
            s
        );
        assert_eq!(
            austin_cut(&left_heavy(), &Density::uniform(), 1, &s).unwrap(),
            vec![s]
        );
    }

    #[test]
    fn austin_cut_examples() {
        let u = Density::uniform();
        let quarters = austin_cut(&u, &u, 4, &Piece::whole()).unwrap();
        let want: Vec<Piece> = (0..4).map(|j| piece(&[(j, 4, j + 1, 4)])).collect();
        assert_eq!(quarters, want);

        let halves = austin_cut(&u, &left_heavy(), 2, &Piece::whole()).unwrap();
        assert_eq!(
            halves,
            vec![piece(&[(1, 4, 3, 4)]), piece(&[(0, 1, 1, 4), (3, 4, 1, 1)])]
        );
    }

    #[test]
    fn walk_visits_tiling_windows_across_plateaus() {
        // Agent i has a zero stretch in the middle and at the end.
        let di = step(
            &[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)],
            &[(1, 1), (0, 1), (3, 1), (0, 1)],
        );
        let dj = step(&[(0, 1), (5, 8), (1, 1)], &[(0, 1), (4, 1)]);
        let wf = WindowFunction::new(&di, &dj, 2, &Piece::whole());
        let vs = wf.vertices();
        // Tiling windows: [0, 7/12) and [7/12, 1).
        assert_eq!(
            (vs[0].left.clone(), vs[0].right.clone()),
            (int(0), ratio(7, 12))
        );
        assert!(vs
            .iter()
            .any(|v| v.left == ratio(7, 12) && v.right == int(1)));
        assert_eq!(vs.last().unwrap().right, int(1));
        for v in &vs {
            let w = piece_between(&v.left, &v.right);
            assert_eq!(measure(&di, &w), *wf.width());
            assert_eq!(measure(&dj, &w), v.value);
        }
        let p = exact_fraction(&di, &dj, 2, &Piece::whole()).unwrap();
        assert_eq!(measure(&di, &p), ratio(1, 2));
        assert_eq!(measure(&dj, &p), ratio(3, 4));
    }

    fn piece_between(a: &Rational, b: &Rational) -> Piece {
        Piece::interval(a.clone(), b.clone()).unwrap()
    }

    #[test]
    fn windows_slide_across_gaps() {
        let s = piece(&[(0, 1, 1, 4), (1, 2, 3, 4), (7, 8, 1, 1)]);
        let di = Density::uniform();
        let dj = step(&[(0, 1), (3, 4), (1, 1)], &[(0, 1), (1, 1)]);
        for n in 1..=5 {
            let parts = austin_cut(&di, &dj, n, &s).unwrap();
            assert_eq!(Piece::union_all(&parts), s);
            let nq = Rational::from_integer(n.into());
            for p in &parts {
                assert_eq!(measure(&di, p), measure(&di, &s) / &nq);
                assert_eq!(measure(&dj, p), measure(&dj, &s) / &nq);
            }
        }
    }

    #[test]
    fn degenerate_masses() {
        let zero_left = step(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (1, 1)]);
        let s = piece(&[(0, 1, 1, 2)]);
        // Agent i sees nothing in S: split by j.
        let parts = austin_cut(&zero_left, &left_heavy(), 2, &s).unwrap();
        assert_eq!(parts, vec![piece(&[(0, 1, 1, 4)]), piece(&[(1, 4, 1, 2)])]);
        // Neither agent values S: equal length.
        let parts = austin_cut(&zero_left, &zero_left, 4, &s).unwrap();
        assert_eq!(parts[0], piece(&[(0, 1, 1, 8)]));
        assert_eq!(
            exact_fraction(&zero_left, &zero_left, 2, &s).unwrap(),
            piece(&[(0, 1, 1, 4)])
        );
    }
}
