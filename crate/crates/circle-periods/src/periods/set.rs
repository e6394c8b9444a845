use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One arithmetic building block of a Sharkovskii tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    /// `{1, 2, 4, 8, ...}`
    PowersOfTwo,
    /// `{2^b * o : b > a, o odd, o >= 3}`
    ValuationAbove(u32),
    /// `{2^level * o : o odd, o >= min_odd}`
    OddMultiplesFrom { level: u32, min_odd: u64 },
    /// `{j : j >= from}`
    AtLeast(u64),
}

impl PatternKind {
    pub fn contains(&self, j: u64) -> bool {
        if j == 0 {
            return false;
        }
        let a = j.trailing_zeros();
        let o = j >> a;
        match *self {
            PatternKind::PowersOfTwo => o == 1,
            PatternKind::ValuationAbove(v) => a > v && o >= 3,
            PatternKind::OddMultiplesFrom { level, min_odd } => a == level && o >= min_odd,
            PatternKind::AtLeast(from) => j >= from,
        }
    }
}

/// `{scale * j : j in kind}`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub scale: u64,
    #[serde(flatten)]
    pub kind: PatternKind,
}

impl Pattern {
    pub fn contains(&self, k: u64) -> bool {
        self.scale > 0 && k.is_multiple_of(self.scale) && self.kind.contains(k / self.scale)
    }
}

/// A set of positive integers: a finite part, an optional tail
/// `S(t) = {t, t+1, ...}` and optional arithmetic patterns.
///
/// Sets built by this crate are kept normalized: the tail threshold is as
/// small as possible and no finite element is covered by the tail or a
/// pattern, so structural equality is set equality for sets without patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSet {
    finite: BTreeSet<u64>,
    tail_from: Option<u64>,
    #[serde(default)]
    patterns: Vec<Pattern>,
}

impl PeriodSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `S(t)`, the successors of `t` including `t`.
    pub fn successors(t: u64) -> Self {
        let mut s = Self { tail_from: Some(t.max(1)), ..Self::default() };
        s.normalize();
        s
    }

    pub fn from_finite<I: IntoIterator<Item = u64>>(items: I) -> Self {
        let mut s = Self { finite: items.into_iter().filter(|&k| k > 0).collect(), ..Self::default() };
        s.normalize();
        s
    }

    pub fn from_parts<I: IntoIterator<Item = u64>>(items: I, tail_from: Option<u64>) -> Self {
        let mut s = Self {
            finite: items.into_iter().filter(|&k| k > 0).collect(),
            tail_from: tail_from.map(|t| t.max(1)),
            patterns: Vec::new(),
        };
        s.normalize();
        s
    }

    pub fn from_pattern(scale: u64, kind: PatternKind) -> Self {
        let mut s = Self::default();
        s.add_pattern(scale, kind);
        s.normalize();
        s
    }

    pub fn add_pattern(&mut self, scale: u64, kind: PatternKind) {
        let p = Pattern { scale, kind };
        if !self.patterns.contains(&p) {
            self.patterns.push(p);
            self.patterns.sort();
        }
    }

    pub fn insert(&mut self, k: u64) {
        if k > 0 {
            self.finite.insert(k);
            self.normalize();
        }
    }

    pub fn finite(&self) -> &BTreeSet<u64> {
        &self.finite
    }

    pub fn tail_from(&self) -> Option<u64> {
        self.tail_from
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn is_cofinite(&self) -> bool {
        self.tail_from.is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.tail_from.is_none() && self.patterns.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        k > 0
            && (self.finite.contains(&k)
                || self.tail_from.is_some_and(|t| k >= t)
                || self.patterns.iter().any(|p| p.contains(k)))
    }

    /// Members in `1..=n`.
    pub fn members_up_to(&self, n: u64) -> BTreeSet<u64> {
        (1..=n).filter(|&k| self.contains(k)).collect()
    }

    /// Number of members in `1..=n`.
    pub fn count_up_to(&self, n: u64) -> u64 {
        (1..=n).filter(|&k| self.contains(k)).count() as u64
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.finite.extend(other.finite.iter().copied());
        s.tail_from = match (self.tail_from, other.tail_from) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for p in &other.patterns {
            s.add_pattern(p.scale, p.kind);
        }
        s.normalize();
        s
    }

    /// `{s * k : k in self}`
    pub fn scaled(&self, s: u64) -> Self {
        assert!(s > 0, "scale must be positive");
        let mut out = Self {
            finite: self.finite.iter().map(|k| k * s).collect(),
            tail_from: None,
            patterns: Vec::new(),
        };
        if let Some(t) = self.tail_from {
            if s == 1 {
                out.tail_from = Some(t);
            } else {
                out.add_pattern(s, PatternKind::AtLeast(t));
            }
        }
        for p in &self.patterns {
            out.add_pattern(p.scale * s, p.kind);
        }
        out.normalize();
        out
    }

    /// Restore the canonical form described on the type.
    pub fn normalize(&mut self) {
        for p in self.patterns.iter_mut() {
            if let (1, PatternKind::AtLeast(t)) = (p.scale, p.kind) {
                self.tail_from = Some(self.tail_from.map_or(t, |u| u.min(t)));
            }
        }
        self.patterns.retain(|p| !(p.scale == 1 && matches!(p.kind, PatternKind::AtLeast(_))));
        if let Some(mut t) = self.tail_from {
            while t > 1 && (self.finite.contains(&(t - 1)) || self.patterns.iter().any(|p| p.contains(t - 1))) {
                t -= 1;
            }
            self.tail_from = Some(t);
            self.finite.retain(|&k| k < t);
            if t == 1 {
                self.patterns.clear();
            }
        }
        let pats = self.patterns.clone();
        self.finite.retain(|&k| !pats.iter().any(|p| p.contains(k)));
    }
}

impl fmt::Display for PeriodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.finite.is_empty() {
            let items: Vec<String> = self.finite.iter().map(|k| k.to_string()).collect();
            parts.push(format!("{{{}}}", items.join(", ")));
        }
        for p in &self.patterns {
            let s = match p.kind {
                PatternKind::PowersOfTwo => "2^N".to_string(),
                PatternKind::ValuationAbove(a) => format!("2^(>{a})*odd>=3"),
                PatternKind::OddMultiplesFrom { level, min_odd } => format!("2^{level}*odd>={min_odd}"),
                PatternKind::AtLeast(t) => format!("S({t})"),
            };
            parts.push(if p.scale == 1 { s } else { format!("{}*({s})", p.scale) });
        }
        if let Some(t) = self.tail_from {
            parts.push(format!("S({t})"));
        }
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{}", parts.join(" U "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_lowers_the_tail() {
        let s = PeriodSet::from_parts([2, 5, 6], Some(7));
        assert_eq!(s, PeriodSet::from_parts([2], Some(5)));
        assert_eq!(s.to_string(), "{2} U S(5)");
    }

    #[test]
    fn union_and_scaling() {
        let a = PeriodSet::from_finite([3]);
        let b = PeriodSet::successors(5);
        let u = a.union(&b);
        assert_eq!(u.finite().iter().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(u.tail_from(), Some(5));
        let s = PeriodSet::successors(1).scaled(2);
        assert!(s.contains(8) && !s.contains(7));
    }

    #[test]
    fn json_shape() {
        let s = PeriodSet::from_parts([3], Some(5));
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"finite": [3], "tail_from": 5, "patterns": []}));
    }
}
