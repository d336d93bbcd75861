#![allow(dead_code)]

use cakenet::rational::ratio;
use cakenet::{Density, Interval, Piece, Rational};
use rand::Rng;

pub fn step(bps: &[(i64, i64)], vals: &[(i64, i64)]) -> Density {
    Density::new(
        bps.iter().map(|&(a, b)| ratio(a, b)).collect(),
        vals.iter().map(|&(a, b)| ratio(a, b)).collect(),
    )
    .unwrap()
}

pub fn piece(pairs: &[(i64, i64, i64, i64)]) -> Piece {
    Piece::from_pairs(pairs.iter().map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))).unwrap()
}

/// Union of up to four random intervals with small denominators; never empty.
pub fn random_piece<R: Rng>(rng: &mut R) -> Piece {
    loop {
        let count = rng.gen_range(1..=4);
        let ivs: Vec<Interval> = (0..count)
            .filter_map(|_| {
                let q = rng.gen_range(2..=16i64);
                let a = rng.gen_range(0..q);
                let b = rng.gen_range(a + 1..=q);
                Interval::new(ratio(a, q), ratio(b, q)).ok()
            })
            .collect();
        let p = Piece::from_intervals(ivs);
        if !p.is_empty() {
            return p;
        }
    }
}

/// Pairwise disjoint and their union is `whole`.
pub fn partitions(parts: &[Piece], whole: &Piece) -> bool {
    let total: Rational = parts.iter().map(Piece::length).sum();
    Piece::union_all(parts) == *whole && total == whole.length()
}
