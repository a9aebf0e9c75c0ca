//! O-sequences: Macaulay bounds, admissibility and shape tags.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("sequence must start with 1")]
    BadStart,
    #[error("entries must be positive integers (got `{0}`)")]
    BadEntry(String),
    #[error("empty sequence")]
    Empty,
}

/// `(h_0, …, h_c)` with `h_0 = 1` and every entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OSequence {
    values: Vec<u64>,
}

impl OSequence {
    /// Trailing zeros are trimmed; interior zeros are rejected.
    pub fn new(mut values: Vec<u64>) -> Result<Self, HilbertError> {
        while values.last() == Some(&0) {
            values.pop();
        }
        match values.first() {
            None => return Err(HilbertError::Empty),
            Some(&1) => {}
            Some(_) => return Err(HilbertError::BadStart),
        }
        if values.contains(&0) {
            return Err(HilbertError::BadEntry("0".into()));
        }
        Ok(OSequence { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }
}

impl TryFrom<&[usize]> for OSequence {
    type Error = HilbertError;
    fn try_from(v: &[usize]) -> Result<Self, Self::Error> {
        OSequence::new(v.iter().map(|&x| x as u64).collect())
    }
}

impl FromStr for OSequence {
    type Err = HilbertError;

    /// Comma-separated positive integers, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = t
            .split(',')
            .map(|x| {
                let x = x.trim();
                x.parse::<u64>().map_err(|_| HilbertError::BadEntry(x.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        OSequence::new(values)
    }
}

impl fmt::Display for OSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// The `i`-th Macaulay representation `h = Σ C(a_j, j)` as pairs `(a_j, j)`
/// with `a_i > a_{i−1} > … ≥ j ≥ 1`.
pub fn macaulay_representation(mut h: u64, i: u64) -> Vec<(u64, u64)> {
    assert!(i >= 1, "Macaulay representation needs i ≥ 1");
    let mut out = Vec::new();
    let mut j = i;
    while h > 0 && j >= 1 {
        let mut a = j;
        while binomial(a + 1, j) <= h {
            a += 1;
        }
        h -= binomial(a, j);
        out.push((a, j));
        j -= 1;
    }
    out
}

/// `h^⟨i⟩`, the largest admissible `h_{i+1}` after `h_i = h`.
pub fn macaulay_bound(h: u64, i: u64) -> u64 {
    macaulay_representation(h, i)
        .into_iter()
        .map(|(a, j)| binomial(a + 1, j + 1))
        .sum()
}

/// Macaulay's growth condition `h_{i+1} ≤ h_i^⟨i⟩` for every `i ≥ 1`.
pub fn is_admissible(h: &OSequence) -> bool {
    h.values
        .windows(2)
        .enumerate()
        .skip(1)
        .all(|(i, w)| w[1] <= macaulay_bound(w[0], i as u64))
}

pub fn is_unimodal(h: &OSequence) -> bool {
    let v = &h.values;
    let peak = v.windows(2).take_while(|w| w[0] <= w[1]).count();
    v[peak..].windows(2).all(|w| w[0] >= w[1])
}

pub fn is_symmetric(h: &OSequence) -> bool {
    let v = &h.values;
    v.iter().eq(v.iter().rev())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeTag {
    Stretched,
    AlmostStretched,
    Unimodal,
    Symmetric,
    Admissible,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeTag::Stretched => "stretched",
            ShapeTag::AlmostStretched => "almost_stretched",
            ShapeTag::Unimodal => "unimodal",
            ShapeTag::Symmetric => "symmetric",
            ShapeTag::Admissible => "admissible",
        })
    }
}

/// Stretched: `h_i = 1` for all `i ≥ 2`. Almost stretched: `h_2 = 2` and
/// `h_i ≤ 2` beyond.
pub fn classify_shape(h: &OSequence) -> Vec<ShapeTag> {
    let tail = h.values.get(2..).unwrap_or(&[]);
    let mut tags = Vec::new();
    if tail.iter().all(|&x| x == 1) {
        tags.push(ShapeTag::Stretched);
    }
    if tail.first() == Some(&2) && tail.iter().all(|&x| x <= 2) {
        tags.push(ShapeTag::AlmostStretched);
    }
    if is_unimodal(h) {
        tags.push(ShapeTag::Unimodal);
    }
    if is_symmetric(h) {
        tags.push(ShapeTag::Symmetric);
    }
    if is_admissible(h) {
        tags.push(ShapeTag::Admissible);
    }
    tags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> OSequence {
        s.parse().unwrap()
    }

    #[test]
    fn bounds() {
        for i in 1..10 {
            assert_eq!(macaulay_bound(1, i), 1);
        }
        assert_eq!(macaulay_bound(3, 1), 6);
        assert_eq!(macaulay_bound(1, 2), 1);
        // 5 = C(4,2) − 1 = C(3,2) + C(2,1) → C(4,3) + C(3,2) = 7
        assert_eq!(macaulay_representation(5, 2), [(3, 2), (2, 1)]);
        assert_eq!(macaulay_bound(5, 2), 7);
    }

    #[test]
    fn admissibility() {
        assert!(!is_admissible(&seq("1,3,1,2")));
        for s in ["1,3,1,1", "1,3,2,1", "1,3,3,1", "1,4,1,1", "1,7", "1"] {
            assert!(is_admissible(&seq(s)), "{s}");
        }
    }

    #[test]
    fn representation_round_trip() {
        for i in 1..=5 {
            for h in 1..=100 {
                let rep = macaulay_representation(h, i);
                assert_eq!(rep.iter().map(|&(a, j)| binomial(a, j)).sum::<u64>(), h);
                assert!(rep.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1));
                assert!(rep.iter().all(|&(a, j)| a >= j));
            }
        }
    }

    #[test]
    fn polynomial_ring_prefixes_are_admissible() {
        for n in 1..=4u64 {
            let full: Vec<u64> = (0..6).map(|i| binomial(n + i - 1, i)).collect();
            for len in 1..=full.len() {
                assert!(is_admissible(&OSequence::new(full[..len].to_vec()).unwrap()));
            }
            // one more than the polynomial ring allows is never admissible
            let mut over = full.clone();
            over[2] += 1;
            assert!(!is_admissible(&OSequence::new(over).unwrap()));
        }
    }

    #[test]
    fn shapes() {
        assert!(is_unimodal(&seq("1,3,3,1")));
        assert!(!is_unimodal(&seq("1,3,1,3")));
        assert!(is_unimodal(&seq("1")));
        assert!(is_symmetric(&seq("1,3,3,1")));
        assert!(!is_symmetric(&seq("1,3,3,1,1")));
        assert!(classify_shape(&seq("1,4,1,1")).contains(&ShapeTag::Stretched));
        assert!(classify_shape(&seq("1,3,2,1")).contains(&ShapeTag::AlmostStretched));
        let t = classify_shape(&seq("1,3,3,1"));
        assert!(!t.contains(&ShapeTag::Stretched) && !t.contains(&ShapeTag::AlmostStretched));
    }

    #[test]
    fn parsing() {
        assert_eq!(seq("(1,3,1,2)").values(), [1, 3, 1, 2]);
        assert_eq!(seq("1,3,0").values(), [1, 3]);
        assert_eq!("2,3".parse::<OSequence>(), Err(HilbertError::BadStart));
        assert!("1,x".parse::<OSequence>().is_err());
        assert!("1,0,2".parse::<OSequence>().is_err());
    }
}
