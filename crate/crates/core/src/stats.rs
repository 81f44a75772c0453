//! Five-number summaries for box plots.
//!
//! Quartiles follow the median-of-halves rule: the sorted sample is split
//! into a lower and an upper half (the middle element of an odd-sized sample
//! belongs to neither) and Q1/Q3 are the medians of those halves.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

fn median_sorted(xs: &[f64]) -> f64 {
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

impl FiveNumber {
    /// `None` on an empty sample.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut xs = values.to_vec();
        xs.sort_by(|a, b| a.total_cmp(b));
        let k = xs.len();
        let (lower, upper) = if k == 1 {
            (&xs[..], &xs[..])
        } else {
            (&xs[..k / 2], &xs[k.div_ceil(2)..])
        };
        Some(Self {
            min: xs[0],
            q1: median_sorted(lower),
            median: median_sorted(&xs),
            q3: median_sorted(upper),
            max: xs[k - 1],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value() {
        let s = FiveNumber::of(&[3.5]).unwrap();
        assert_eq!(
            (s.min, s.q1, s.median, s.q3, s.max),
            (3.5, 3.5, 3.5, 3.5, 3.5)
        );
    }

    #[test]
    fn odd_and_even() {
        let s = FiveNumber::of(&[7.0, 1.0, 3.0, 5.0, 9.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (2.0, 5.0, 8.0));
        let s = FiveNumber::of(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(
            (s.min, s.q1, s.median, s.q3, s.max),
            (1.0, 1.5, 2.5, 3.5, 4.0)
        );
        assert!(FiveNumber::of(&[]).is_none());
    }

    #[test]
    fn constant_sample() {
        let s = FiveNumber::of(&[120.0; 30]).unwrap();
        assert_eq!(
            (s.min, s.q1, s.median, s.q3, s.max),
            (120.0, 120.0, 120.0, 120.0, 120.0)
        );
    }
}
