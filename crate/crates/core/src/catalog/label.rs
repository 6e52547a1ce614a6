use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{LeftModule, RightModule};
use crate::error::{Error, Result};

/// Families of indecomposable bimodules, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    L,
    V,
    H,
    PI,
    M,
    W,
    N,
    S,
}

impl Kind {
    pub const ALL: [Kind; 8] = [Kind::L, Kind::V, Kind::H, Kind::PI, Kind::M, Kind::W, Kind::N, Kind::S];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::L => "L",
            Kind::V => "V",
            Kind::H => "H",
            Kind::PI => "PI",
            Kind::M => "M",
            Kind::W => "W",
            Kind::N => "N",
            Kind::S => "S",
        }
    }

    pub fn is_ksplit(self) -> bool {
        matches!(self, Kind::L | Kind::V | Kind::H | Kind::PI)
    }
}

/// Name of an isomorphism class of indecomposable bimodules.
///
/// `t` is zero for the k-split kinds. Field order gives the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndecLabel {
    pub kind: Kind,
    pub t: usize,
    pub i: usize,
    pub j: usize,
}

/// Left tensor factor of a k-split label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LeftFactor {
    /// simple `L_i`
    Simple(usize),
    /// projective `A e_i`, `i < n`
    Projective(usize),
}

/// Right tensor factor of a k-split label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RightFactor {
    /// simple right module at `j`
    Simple(usize),
    /// `e_{j+1} A`, supported on columns `j` and `j+1`
    Projective(usize),
}

impl LeftFactor {
    pub fn module(self, n: usize) -> LeftModule {
        match self {
            LeftFactor::Simple(i) => LeftModule::simple(n, i),
            LeftFactor::Projective(i) => LeftModule::projective(n, i),
        }
    }
}

impl RightFactor {
    pub fn module(self, n: usize) -> RightModule {
        match self {
            RightFactor::Simple(j) => RightModule::simple(n, j),
            RightFactor::Projective(j) => RightModule::projective(n, j + 1),
        }
    }
}

impl IndecLabel {
    pub const fn new(kind: Kind, t: usize, i: usize, j: usize) -> Self {
        Self { kind, t, i, j }
    }

    pub const fn l(i: usize, j: usize) -> Self {
        Self::new(Kind::L, 0, i, j)
    }

    pub const fn v(i: usize, j: usize) -> Self {
        Self::new(Kind::V, 0, i, j)
    }

    pub const fn h(i: usize, j: usize) -> Self {
        Self::new(Kind::H, 0, i, j)
    }

    pub const fn pi(i: usize, j: usize) -> Self {
        Self::new(Kind::PI, 0, i, j)
    }

    pub const fn w(t: usize, i: usize, j: usize) -> Self {
        Self::new(Kind::W, t, i, j)
    }

    pub const fn m(t: usize, i: usize, j: usize) -> Self {
        Self::new(Kind::M, t, i, j)
    }

    pub const fn nn(t: usize, i: usize, j: usize) -> Self {
        Self::new(Kind::N, t, i, j)
    }

    pub const fn s(t: usize, i: usize, j: usize) -> Self {
        Self::new(Kind::S, t, i, j)
    }

    /// The regular bimodule `A`.
    pub const fn identity(n: usize) -> Self {
        Self::w(n - 1, 1, 1)
    }

    pub fn is_ksplit(&self) -> bool {
        self.kind.is_ksplit()
    }

    /// Ranges for `t`, `i`, `j`, as inclusive bounds, or `None` if the family is empty.
    fn bounds(kind: Kind, t: usize, n: usize) -> Option<(usize, usize)> {
        // returns (max i, max j); min is always 1
        let lim = |a: usize, b: usize| (a >= 1 && b >= 1).then_some((a, b));
        let sub = |x: usize, y: usize| x.saturating_sub(y);
        match kind {
            Kind::L if t == 0 => lim(n, n),
            Kind::V if t == 0 => lim(sub(n, 1), n),
            Kind::H if t == 0 => lim(n, sub(n, 1)),
            Kind::PI if t == 0 => lim(sub(n, 1), sub(n, 1)),
            Kind::W if t >= 1 && t < n => lim(n - t, n - t),
            Kind::S if t >= 1 && t + 2 <= n => lim(n - t - 1, n - t),
            Kind::N if t >= 1 && t + 2 <= n => lim(n - t, n - t - 1),
            Kind::M if t + 2 <= n => lim(n - t - 1, n - t - 1),
            _ => None,
        }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        match Self::bounds(self.kind, self.t, n) {
            Some((mi, mj)) => (1..=mi).contains(&self.i) && (1..=mj).contains(&self.j),
            None => false,
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.is_valid(n) {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange { label: *self, n })
        }
    }

    /// Every valid label for `n`, in canonical order.
    pub fn all(n: usize) -> Vec<IndecLabel> {
        let mut out = Vec::new();
        for kind in Kind::ALL {
            for t in 0..n.max(1) {
                if let Some((mi, mj)) = Self::bounds(kind, t, n) {
                    for i in 1..=mi {
                        for j in 1..=mj {
                            out.push(Self::new(kind, t, i, j));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            Kind::L => 1,
            Kind::V | Kind::H => 2,
            Kind::PI => 4,
            Kind::W => 2 * self.t + 1,
            Kind::N | Kind::S => 2 * self.t + 2,
            Kind::M => 2 * self.t + 3,
        }
    }

    /// Number of valleys of the action graph. The projective-injective square
    /// is not a string module and is assigned zero.
    pub fn valleys(&self) -> usize {
        match self.kind {
            Kind::W | Kind::M | Kind::N | Kind::S => self.t,
            _ => 0,
        }
    }

    pub fn lsupp(&self) -> (usize, usize) {
        let (i, t) = (self.i, self.t);
        match self.kind {
            Kind::L | Kind::H => (i, i),
            Kind::V | Kind::PI => (i, i + 1),
            Kind::W | Kind::N => (i, i + t),
            Kind::S | Kind::M => (i, i + t + 1),
        }
    }

    pub fn rsupp(&self) -> (usize, usize) {
        let (j, t) = (self.j, self.t);
        match self.kind {
            Kind::L | Kind::V => (j, j),
            Kind::H | Kind::PI => (j, j + 1),
            Kind::W | Kind::S => (j, j + t),
            Kind::N | Kind::M => (j, j + t + 1),
        }
    }

    /// The factors `K`, `N` with `self = K (x)_k N`, for k-split labels.
    pub fn ksplit_factors(&self) -> Result<(LeftFactor, RightFactor)> {
        let (i, j) = (self.i, self.j);
        match self.kind {
            Kind::L => Ok((LeftFactor::Simple(i), RightFactor::Simple(j))),
            Kind::V => Ok((LeftFactor::Projective(i), RightFactor::Simple(j))),
            Kind::H => Ok((LeftFactor::Simple(i), RightFactor::Projective(j))),
            Kind::PI => Ok((LeftFactor::Projective(i), RightFactor::Projective(j))),
            _ => Err(Error::NotKSplit { label: *self }),
        }
    }

    /// The k-split label `K (x)_k N`.
    pub fn from_factors(k: LeftFactor, m: RightFactor) -> Self {
        match (k, m) {
            (LeftFactor::Simple(i), RightFactor::Simple(j)) => Self::l(i, j),
            (LeftFactor::Projective(i), RightFactor::Simple(j)) => Self::v(i, j),
            (LeftFactor::Simple(i), RightFactor::Projective(j)) => Self::h(i, j),
            (LeftFactor::Projective(i), RightFactor::Projective(j)) => Self::pi(i, j),
        }
    }
}

impl fmt::Display for IndecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ksplit() {
            write!(f, "{},{},{}", self.kind.as_str(), self.i, self.j)
        } else {
            write!(f, "{}:{},{},{}", self.kind.as_str(), self.t, self.i, self.j)
        }
    }
}

impl FromStr for IndecLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::LabelParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let (head, rest) = match s_trim.split_once(':') {
            Some((k, rest)) => (k, rest),
            None => s_trim.split_once(',').ok_or_else(|| bad("expected KIND,i,j or KIND:t,i,j"))?,
        };
        let kind = match head.trim() {
            "L" => Kind::L,
            "V" => Kind::V,
            "H" => Kind::H,
            "PI" => Kind::PI,
            "M" => Kind::M,
            "W" => Kind::W,
            "N" => Kind::N,
            "S" => Kind::S,
            other => return Err(bad(&format!("unknown kind {other:?}"))),
        };
        let nums = rest
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        let has_t = s_trim.contains(':');
        match (kind.is_ksplit(), has_t, nums.as_slice()) {
            (true, false, &[i, j]) => Ok(Self::new(kind, 0, i, j)),
            (false, true, &[t, i, j]) => Ok(Self::new(kind, t, i, j)),
            (true, _, _) => Err(bad("k-split kinds take exactly `KIND,i,j`")),
            (false, _, _) => Err(bad("string kinds take exactly `KIND:t,i,j`")),
        }
    }
}

impl IndecLabel {
    /// Parses and range-checks a label for the given `n`.
    pub fn parse_for(s: &str, n: usize) -> Result<Self> {
        let label: Self = s.parse()?;
        label.check(n)?;
        Ok(label)
    }
}

/// Number of indecomposables predicted by the closed formula.
pub fn count_formula(n: usize) -> usize {
    let n = n as i128;
    let v = (4 * n * n * n + 3 * n * n - 7 * n + 3) / 3;
    v as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        let expected = [1, 11, 39, 93, 181, 311];
        for (k, &e) in expected.iter().enumerate() {
            assert_eq!(count_formula(k + 1), e);
        }
    }

    #[test]
    fn counts_by_kind() {
        let count = |n: usize, kind: Kind| IndecLabel::all(n).iter().filter(|l| l.kind == kind).count();
        let n3: Vec<usize> = Kind::ALL.iter().map(|&k| count(3, k)).collect();
        // L V H PI M W N S
        assert_eq!(n3, vec![9, 6, 6, 4, 5, 5, 2, 2]);
        let n2: Vec<usize> = Kind::ALL.iter().map(|&k| count(2, k)).collect();
        assert_eq!(n2, vec![4, 2, 2, 1, 1, 1, 0, 0]);
        assert_eq!(IndecLabel::all(1), vec![IndecLabel::l(1, 1)]);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        for n in 1..=6 {
            let all = IndecLabel::all(n);
            assert_eq!(all.len(), count_formula(n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|l| l.is_valid(n)));
        }
    }

    #[test]
    fn parse_round_trip() {
        for l in IndecLabel::all(4) {
            let s = l.to_string();
            assert_eq!(s.parse::<IndecLabel>().unwrap(), l, "{s}");
        }
        assert_eq!("W:2,1,1".parse::<IndecLabel>().unwrap(), IndecLabel::w(2, 1, 1));
        assert_eq!(" PI, 1 ,2".parse::<IndecLabel>().unwrap(), IndecLabel::pi(1, 2));
        for bad in ["", "X,1,1", "W,1,1", "L:0,1,1", "L,1", "M:1,1", "L,a,1"] {
            assert!(bad.parse::<IndecLabel>().is_err(), "{bad}");
        }
        assert!(IndecLabel::parse_for("W:3,1,1", 3).is_err());
        assert!(IndecLabel::parse_for("W:2,1,1", 3).is_ok());
    }

    #[test]
    fn ranges() {
        assert!(IndecLabel::m(0, 1, 1).is_valid(2));
        assert!(!IndecLabel::nn(1, 1, 1).is_valid(2));
        assert!(IndecLabel::nn(1, 2, 1).is_valid(3));
        assert!(!IndecLabel::nn(1, 1, 2).is_valid(3));
        assert!(IndecLabel::s(1, 1, 2).is_valid(3));
        assert!(!IndecLabel::s(1, 2, 1).is_valid(3));
        assert!(!IndecLabel::l(0, 1).is_valid(3));
    }

    #[test]
    fn factors_round_trip() {
        for l in IndecLabel::all(4).into_iter().filter(IndecLabel::is_ksplit) {
            let (k, m) = l.ksplit_factors().unwrap();
            assert_eq!(IndecLabel::from_factors(k, m), l);
            assert_eq!(k.module(4).dim() * m.module(4).dim(), l.dim());
        }
        assert!(IndecLabel::w(1, 1, 1).ksplit_factors().is_err());
    }
}
