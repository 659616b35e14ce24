use serde::{Deserialize, Serialize};
use std::fmt;

use crate::algebra::HalfInt;
use crate::error::{Error, Result};

/// Parabolic quantum numbers of a hydrogen state, with `n = n1 + n2 + |m| + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel", into = "RawLabel")]
pub struct ParabolicLabel {
    n: u32,
    n1: u32,
    n2: u32,
    m: i32,
}

#[derive(Serialize, Deserialize)]
struct RawLabel {
    n: u32,
    n1: u32,
    n2: u32,
    m: i32,
}

impl TryFrom<RawLabel> for ParabolicLabel {
    type Error = Error;
    fn try_from(r: RawLabel) -> Result<Self> {
        ParabolicLabel::new(r.n, r.n1, r.n2, r.m)
    }
}

impl From<ParabolicLabel> for RawLabel {
    fn from(l: ParabolicLabel) -> Self {
        RawLabel {
            n: l.n,
            n1: l.n1,
            n2: l.n2,
            m: l.m,
        }
    }
}

impl ParabolicLabel {
    pub fn new(n: u32, n1: u32, n2: u32, m: i32) -> Result<Self> {
        let invalid = |reason| Error::InvalidLabel { n, n1, n2, m, reason };
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        if u64::from(n1) + u64::from(n2) + u64::from(m.unsigned_abs()) + 1 != u64::from(n) {
            return Err(invalid("n != n1 + n2 + |m| + 1"));
        }
        Ok(Self { n, n1, n2, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Electric quantum number `q = n1 - n2`.
    pub fn q(&self) -> i32 {
        self.n1 as i32 - self.n2 as i32
    }
}

impl fmt::Display for ParabolicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, n1={}, n2={}, m={:+})", self.n, self.n1, self.n2, self.m)
    }
}

/// Every label of manifold `n`, ordered by descending `q`, then descending `m`,
/// then descending `n1`.
pub fn enumerate_parabolic(n: u32) -> Result<Vec<ParabolicLabel>> {
    if n == 0 {
        return Err(Error::ZeroManifold);
    }
    let top = n as i32 - 1;
    let mut labels = Vec::with_capacity((n * n) as usize);
    for m in -top..=top {
        let rest = (n - 1) - m.unsigned_abs();
        for n1 in 0..=rest {
            labels.push(ParabolicLabel::new(n, n1, rest - n1, m)?);
        }
    }
    labels.sort_by(|a, b| {
        b.q()
            .cmp(&a.q())
            .then(b.m.cmp(&a.m))
            .then(b.n1.cmp(&a.n1))
    });
    Ok(labels)
}

/// `(m1, m2)` of the two commuting spin-(n-1)/2 algebras `(L + A)/2`, `(L - A)/2`:
/// `m1 = (m + q)/2`, `m2 = (m - q)/2`.
pub fn parabolic_to_su2(label: &ParabolicLabel) -> Result<(HalfInt, HalfInt)> {
    let checked = ParabolicLabel::new(label.n, label.n1, label.n2, label.m)?;
    let (m, q) = (checked.m, checked.q());
    Ok((HalfInt::from_twice(m + q), HalfInt::from_twice(m - q)))
}

/// Inverse of [`parabolic_to_su2`].
pub fn su2_to_parabolic(n: u32, m1: HalfInt, m2: HalfInt) -> Result<ParabolicLabel> {
    if n == 0 {
        return Err(Error::ZeroManifold);
    }
    let twice_j = n as i32 - 1;
    let sum = m1 + m2;
    let diff = m1 - m2;
    let in_range = |x: HalfInt| x.twice().abs() <= twice_j && (x.twice() - twice_j) % 2 == 0;
    if !in_range(m1) || !in_range(m2) {
        return Err(Error::InvalidLabel {
            n,
            n1: 0,
            n2: 0,
            m: sum.twice() / 2,
            reason: "m1, m2 outside {-j..j} for j = (n-1)/2",
        });
    }
    let m = sum.twice() / 2;
    let q = diff.twice() / 2;
    let rest = twice_j - m.abs();
    let n1 = ((rest + q) / 2) as u32;
    let n2 = ((rest - q) / 2) as u32;
    ParabolicLabel::new(n, n1, n2, m)
}

/// Spherical label `(l, m)` within a manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalLabel {
    pub l: u32,
    pub m: i32,
}

/// `l = 0..n-1` ascending, `m = l..-l` descending within each `l`.
pub fn enumerate_spherical(n: u32) -> Vec<SphericalLabel> {
    (0..n)
        .flat_map(|l| (-(l as i32)..=l as i32).rev().map(move |m| SphericalLabel { l, m }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_has_single_label() {
        let labels = enumerate_parabolic(1).unwrap();
        assert_eq!(labels, vec![ParabolicLabel::new(1, 0, 0, 0).unwrap()]);
        assert_eq!(parabolic_to_su2(&labels[0]).unwrap(), (HalfInt::ZERO, HalfInt::ZERO));
    }

    #[test]
    fn n2_canonical_order() {
        let got: Vec<(u32, u32, i32)> = enumerate_parabolic(2)
            .unwrap()
            .iter()
            .map(|l| (l.n1(), l.n2(), l.m()))
            .collect();
        assert_eq!(got, vec![(1, 0, 0), (0, 0, 1), (0, 0, -1), (0, 1, 0)]);
    }

    #[test]
    fn su2_examples() {
        let l = ParabolicLabel::new(2, 1, 0, 0).unwrap();
        assert_eq!(parabolic_to_su2(&l).unwrap(), (HalfInt::from_twice(1), HalfInt::from_twice(-1)));
        let l = ParabolicLabel::new(2, 0, 0, 1).unwrap();
        assert_eq!(parabolic_to_su2(&l).unwrap(), (HalfInt::from_twice(1), HalfInt::from_twice(1)));
    }

    #[test]
    fn invalid_labels_rejected() {
        assert!(ParabolicLabel::new(0, 0, 0, 0).is_err());
        assert!(ParabolicLabel::new(3, 1, 0, 0).is_err());
        assert!(enumerate_parabolic(0).is_err());
        assert!(su2_to_parabolic(2, HalfInt::from_twice(3), HalfInt::from_twice(1)).is_err());
        // parity mismatch: n = 2 needs half-odd m1, m2
        assert!(su2_to_parabolic(2, HalfInt::from_int(0), HalfInt::from_twice(1)).is_err());
    }

    #[test]
    fn label_json_validates() {
        let ok: ParabolicLabel = serde_json::from_str(r#"{"n":2,"n1":1,"n2":0,"m":0}"#).unwrap();
        assert_eq!(ok.q(), 1);
        assert!(serde_json::from_str::<ParabolicLabel>(r#"{"n":2,"n1":1,"n2":1,"m":0}"#).is_err());
    }

    #[test]
    fn spherical_labels() {
        let s = enumerate_spherical(2);
        assert_eq!(s.len(), 4);
        assert_eq!(s[0], SphericalLabel { l: 0, m: 0 });
        assert_eq!(s[1], SphericalLabel { l: 1, m: 1 });
    }
}
