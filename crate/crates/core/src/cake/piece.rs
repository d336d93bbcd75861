use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Half-open subinterval `[lo, hi)` of the cake, never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Requires `0 <= lo < hi <= 1`.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < Rational::zero() || lo >= hi || hi > Rational::one() {
            return Err(Error::InvalidInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// A finite union of disjoint half-open intervals, kept sorted and maximal
/// (touching intervals are merged).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Piece {
    intervals: Vec<Interval>,
}

impl Piece {
    pub fn empty() -> Self {
        Piece::default()
    }

    /// The whole cake `[0, 1)`.
    pub fn whole() -> Self {
        Piece {
            intervals: vec![Interval {
                lo: Rational::zero(),
                hi: Rational::one(),
            }],
        }
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(Piece {
            intervals: vec![Interval::new(lo, hi)?],
        })
    }

    /// Builds a canonical piece from arbitrary (possibly overlapping,
    /// unsorted) intervals.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut v: Vec<Interval> = intervals.into_iter().collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        Piece { intervals: out }
    }

    /// Parses `[lo, hi)` pairs given as rationals and canonicalizes them.
    pub fn from_pairs<I: IntoIterator<Item = (Rational, Rational)>>(pairs: I) -> Result<Self> {
        let ivs = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Piece::from_intervals(ivs))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure.
    pub fn length(&self) -> Rational {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Leftmost point, if any.
    pub fn start(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn end(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }

    /// True when the interval list is sorted, disjoint and maximal.
    pub fn is_canonical(&self) -> bool {
        self.intervals.iter().all(|iv| iv.lo < iv.hi)
            && self.intervals.windows(2).all(|w| w[0].hi < w[1].lo)
    }

    /// True when `p` lies strictly inside one of the intervals, i.e. cutting
    /// at `p` would actually split the piece.
    pub fn splits_at(&self, p: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.hi <= *p);
        self.intervals
            .get(idx)
            .is_some_and(|iv| iv.lo < *p && *p < iv.hi)
    }

    pub fn union(&self, other: &Piece) -> Piece {
        Piece::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn union_all<'a, I: IntoIterator<Item = &'a Piece>>(pieces: I) -> Piece {
        Piece::from_intervals(pieces.into_iter().flat_map(|p| p.intervals.iter().cloned()))
    }

    pub fn intersect(&self, other: &Piece) -> Piece {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].lo).max(&b[j].lo);
            let hi = (&a[i].hi).min(&b[j].hi);
            if lo < hi {
                out.push(Interval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Piece { intervals: out }
    }

    /// `self \ other`.
    pub fn difference(&self, other: &Piece) -> Piece {
        let b = &other.intervals;
        let mut out = Vec::new();
        let mut j = 0;
        for iv in &self.intervals {
            let mut lo = iv.lo.clone();
            while j < b.len() && b[j].hi <= lo {
                j += 1;
            }
            let mut k = j;
            while k < b.len() && b[k].lo < iv.hi {
                if b[k].lo > lo {
                    out.push(Interval {
                        lo: lo.clone(),
                        hi: b[k].lo.clone(),
                    });
                }
                if b[k].hi > lo {
                    lo = b[k].hi.clone();
                }
                if lo >= iv.hi {
                    break;
                }
                k += 1;
            }
            if lo < iv.hi {
                out.push(Interval {
                    lo,
                    hi: iv.hi.clone(),
                });
            }
        }
        Piece { intervals: out }
    }

    /// `self ∩ [lo, hi)`, where a missing bound is unbounded.
    pub fn clip(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Piece {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let a = match lo {
                Some(l) if *l > iv.lo => l,
                _ => &iv.lo,
            };
            let b = match hi {
                Some(h) if *h < iv.hi => h,
                _ => &iv.hi,
            };
            if a < b {
                out.push(Interval {
                    lo: a.clone(),
                    hi: b.clone(),
                });
            }
        }
        Piece { intervals: out }
    }

    /// Splits at the given sorted cut positions into `cuts.len() + 1` pieces.
    pub fn split_at(&self, cuts: &[Rational]) -> Vec<Piece> {
        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut prev: Option<&Rational> = None;
        for c in cuts {
            out.push(self.clip(prev, Some(c)));
            prev = Some(c);
        }
        out.push(self.clip(prev, None));
        out
    }

    pub fn to_pairs(&self) -> Vec<[String; 2]> {
        self.intervals
            .iter()
            .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
            .collect()
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Piece {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let pairs = raw
            .iter()
            .map(|[lo, hi]| Ok((parse_rational(lo)?, parse_rational(hi)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Piece::from_pairs(pairs).map_err(D::Error::custom)
    }
}
