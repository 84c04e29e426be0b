use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A box `[m_lo, m_hi] × [n_lo, n_hi]` of (m, n) exponents. A box with
/// `lo > hi` in either coordinate is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentWindow {
    pub m_lo: i64,
    pub m_hi: i64,
    pub n_lo: i64,
    pub n_hi: i64,
}

impl ExponentWindow {
    pub const fn new(m_lo: i64, m_hi: i64, n_lo: i64, n_hi: i64) -> Self {
        ExponentWindow { m_lo, m_hi, n_lo, n_hi }
    }

    /// The square `[-r, r]²`.
    pub const fn centered(r: i64) -> Self {
        Self::new(-r, r, -r, r)
    }

    pub const fn empty() -> Self {
        Self::new(0, -1, 0, -1)
    }

    pub fn is_empty(&self) -> bool {
        self.m_lo > self.m_hi || self.n_lo > self.n_hi
    }

    pub fn contains(&self, m: i64, n: i64) -> bool {
        (self.m_lo..=self.m_hi).contains(&m) && (self.n_lo..=self.n_hi).contains(&n)
    }

    pub fn dilate(&self, by: i64) -> Self {
        Self::new(self.m_lo - by, self.m_hi + by, self.n_lo - by, self.n_hi + by)
    }

    /// Grid points, m-major.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.m_lo..=self.m_hi).flat_map(move |m| (self.n_lo..=self.n_hi).map(move |n| (m, n)))
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            ((self.m_hi - self.m_lo + 1) * (self.n_hi - self.n_lo + 1)) as usize
        }
    }
}

impl fmt::Display for ExponentWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m_lo == self.n_lo && self.m_hi == self.n_hi {
            write!(f, "{}:{}", self.m_lo, self.m_hi)
        } else {
            write!(f, "{}:{},{}:{}", self.m_lo, self.m_hi, self.n_lo, self.n_hi)
        }
    }
}

/// Accepts `LO:HI` (same range for m and n) or `MLO:MHI,NLO:NHI`.
impl FromStr for ExponentWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("bad window `{s}` (expected LO:HI or MLO:MHI,NLO:NHI)"));
        let range = |r: &str| -> Result<(i64, i64)> {
            let (lo, hi) = r.split_once(':').ok_or_else(bad)?;
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi.trim().parse().map_err(|_| bad())?;
            Ok((lo, hi))
        };
        let w = match s.split_once(',') {
            Some((ms, ns)) => {
                let (m_lo, m_hi) = range(ms)?;
                let (n_lo, n_hi) = range(ns)?;
                Self::new(m_lo, m_hi, n_lo, n_hi)
            }
            None => {
                let (lo, hi) = range(s)?;
                Self::new(lo, hi, lo, hi)
            }
        };
        if w.is_empty() {
            return Err(Error::InvalidConfig(format!("window `{s}` is empty")));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("-1:1".parse::<ExponentWindow>().unwrap(), ExponentWindow::centered(1));
        assert_eq!(
            "0:2,-1:1".parse::<ExponentWindow>().unwrap(),
            ExponentWindow::new(0, 2, -1, 1)
        );
        assert!("2:1".parse::<ExponentWindow>().is_err());
        assert!("1".parse::<ExponentWindow>().is_err());
    }

    #[test]
    fn grid() {
        let w = ExponentWindow::centered(1);
        assert_eq!(w.points().count(), 9);
        assert_eq!(w.len(), 9);
        assert_eq!(ExponentWindow::empty().points().count(), 0);
        assert_eq!(w.dilate(1), ExponentWindow::centered(2));
    }
}
