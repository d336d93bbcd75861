use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::piece::Piece;
use crate::error::{Error, Result};
use crate::rational::{format_rational, serde_str_vec, Rational};

/// Piecewise-constant, non-negative density on `[0, 1)`.
///
/// `values[k]` is the density on `[breakpoints[k], breakpoints[k + 1])`.
/// The total mass is not normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDensity", into = "RawDensity")]
pub struct Density {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    /// `cumulative[k]` is the mass of `[0, breakpoints[k])`.
    cumulative: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawDensity {
    #[serde(with = "serde_str_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_str_vec")]
    values: Vec<Rational>,
}

impl TryFrom<RawDensity> for Density {
    type Error = Error;

    fn try_from(raw: RawDensity) -> Result<Self> {
        Density::new(raw.breakpoints, raw.values)
    }
}

impl From<Density> for RawDensity {
    fn from(d: Density) -> Self {
        RawDensity {
            breakpoints: d.breakpoints,
            values: d.values,
        }
    }
}

impl Density {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDensity(msg));
        if breakpoints.len() < 2 {
            return bad("need at least the breakpoints 0 and 1".into());
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return bad("breakpoints must start at 0 and end at 1".into());
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return bad(format!(
                "breakpoints not strictly increasing at {}",
                format_rational(&w[1])
            ));
        }
        if values.len() + 1 != breakpoints.len() {
            return bad(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            ));
        }
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return bad(format!("negative value {}", format_rational(v)));
        }
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        let mut acc = Rational::zero();
        cumulative.push(acc.clone());
        for (k, v) in values.iter().enumerate() {
            acc += v * (&breakpoints[k + 1] - &breakpoints[k]);
            cumulative.push(acc.clone());
        }
        Ok(Density {
            breakpoints,
            values,
            cumulative,
        })
    }

    /// Density 1 everywhere; its measure is length.
    pub fn uniform() -> Self {
        Density::new(
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one()],
        )
        .expect("uniform density is valid")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn total(&self) -> &Rational {
        self.cumulative.last().expect("non-empty")
    }

    /// Index `k` of the cell `[b_k, b_{k+1})` containing `x`; `x = 1` maps to
    /// the last cell.
    pub(crate) fn cell_of(&self, x: &Rational) -> usize {
        let k = self.breakpoints.partition_point(|b| b <= x);
        k.saturating_sub(1).min(self.values.len() - 1)
    }

    /// Value density at `x` (right-continuous).
    pub fn value_at(&self, x: &Rational) -> &Rational {
        &self.values[self.cell_of(x)]
    }

    /// Mass of `[0, x)`.
    pub fn cdf(&self, x: &Rational) -> Rational {
        let k = self.cell_of(x);
        &self.cumulative[k] + &self.values[k] * (x - &self.breakpoints[k])
    }

    /// Mass of `[lo, hi)`.
    pub fn mass(&self, lo: &Rational, hi: &Rational) -> Rational {
        self.cdf(hi) - self.cdf(lo)
    }

    /// Leftmost `x >= from` with `cdf(x) = level`. Caller guarantees
    /// `cdf(from) <= level <= total()`.
    pub(crate) fn leftmost_at_level(&self, level: &Rational, from: &Rational) -> Rational {
        if self.cdf(from) >= *level {
            return from.clone();
        }
        // First breakpoint whose cumulative mass reaches the level; the cell
        // before it has positive density.
        let j = self.cumulative.partition_point(|c| c < level);
        let k = j - 1;
        &self.breakpoints[k] + (level - &self.cumulative[k]) / &self.values[k]
    }
}

/// `∫_S d`.
pub fn measure(d: &Density, s: &Piece) -> Rational {
    s.intervals()
        .iter()
        .map(|iv| d.mass(iv.lo(), iv.hi()))
        .sum()
}

/// Leftmost positions splitting `s` into consecutive prefixes of masses given
/// by the increasing cumulative `targets`.
fn quantile_points(d: &Density, s: &Piece, targets: &[Rational]) -> Result<Vec<Rational>> {
    let ivs = s.intervals();
    let mut out = Vec::with_capacity(targets.len());
    let mut acc = Rational::zero();
    let mut i = 0;
    let mut current_mass = ivs.first().map(|iv| d.mass(iv.lo(), iv.hi()));
    for t in targets {
        if t.is_negative() {
            return Err(Error::NegativeTarget(format_rational(t)));
        }
        loop {
            match &current_mass {
                None => {
                    return Err(Error::TargetExceedsMeasure {
                        target: format_rational(t),
                        available: format_rational(&acc),
                    })
                }
                Some(m) if &acc + m < *t => {
                    acc += m;
                    i += 1;
                    current_mass = ivs.get(i).map(|iv| d.mass(iv.lo(), iv.hi()));
                }
                Some(_) => break,
            }
        }
        let lo = ivs[i].lo();
        let level = d.cdf(lo) + (t - &acc);
        out.push(d.leftmost_at_level(&level, lo));
    }
    Ok(out)
}

/// Splits `s` into the leftmost sub-piece of mass `t` and the rest.
pub fn prefix_cut(d: &Density, s: &Piece, t: &Rational) -> Result<(Piece, Piece)> {
    if s.is_empty() {
        if t.is_zero() {
            return Ok((Piece::empty(), Piece::empty()));
        }
        if t.is_negative() {
            return Err(Error::NegativeTarget(format_rational(t)));
        }
        return Err(Error::TargetExceedsMeasure {
            target: format_rational(t),
            available: "0/1".into(),
        });
    }
    let x = quantile_points(d, s, std::slice::from_ref(t))?.remove(0);
    Ok((s.clip(None, Some(&x)), s.clip(Some(&x), None)))
}

/// Cuts `s` into `k` left-to-right pieces of equal `d`-mass. A piece of zero
/// mass is split into pieces of equal length instead.
pub fn equal_split(d: &Density, s: &Piece, k: usize) -> Vec<Piece> {
    assert!(k >= 1, "equal_split needs k >= 1");
    if k == 1 {
        return vec![s.clone()];
    }
    let total = measure(d, s);
    if total.is_zero() {
        if s.is_empty() {
            return vec![Piece::empty(); k];
        }
        return equal_split(&Density::uniform(), s, k);
    }
    let share = total / Rational::from_integer(k.into());
    let targets: Vec<Rational> = (1..k)
        .map(|j| &share * Rational::from_integer(j.into()))
        .collect();
    let cuts = quantile_points(d, s, &targets).expect("targets are within the total mass");
    s.split_at(&cuts)
}
