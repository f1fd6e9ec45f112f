//! Euclidean sequences of contact types and the arithmetic built on them.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(m, n)` of a unibranch point: multiplicity `m`, contact order `n` of the
/// tangent line. Always `n > m >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ContactType {
    m: u64,
    n: u64,
}

impl ContactType {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n <= m {
            return Err(Error::InvalidContactType { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn gcd(&self) -> u64 {
        self.m.gcd(&self.n)
    }
}

impl fmt::Display for ContactType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Position `(j, i)` in the resolution chain, `1 <= j <= r`, `1 <= i <= k_j`,
/// ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepIndex {
    pub j: usize,
    pub i: usize,
}

impl StepIndex {
    pub const fn new(j: usize, i: usize) -> Self {
        Self { j, i }
    }
}

impl fmt::Display for StepIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.i)
    }
}

/// `n = l_0 > m = l_1 > ... > l_r = c > l_{r+1} = 0` with quotients
/// `k_j = floor(l_{j-1} / l_j)`.
///
/// `l` is stored with the trailing zero so that `l[r + 1]` is always valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EuclideanSequence {
    n: u64,
    m: u64,
    l: Vec<u64>,
    k: Vec<u64>,
    r: usize,
    c: u64,
}

impl EuclideanSequence {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn ls(&self) -> &[u64] {
        &self.l
    }

    pub fn ks(&self) -> &[u64] {
        &self.k
    }

    /// `l_j` for `0 <= j <= r + 1`.
    pub fn l(&self, j: usize) -> u64 {
        self.l[j]
    }

    /// `k_j` for `1 <= j <= r` (one-based, like the indices of `l`).
    pub fn k(&self, j: usize) -> u64 {
        self.k[j - 1]
    }

    pub fn contact_type(&self) -> ContactType {
        ContactType {
            m: self.m,
            n: self.n,
        }
    }

    /// Number of blow-ups in the chain, `Σ k_j`.
    pub fn total_steps(&self) -> u64 {
        self.k.iter().sum()
    }

    /// Every index of the chain, in order.
    pub fn steps(&self) -> impl Iterator<Item = StepIndex> + '_ {
        (1..=self.r).flat_map(move |j| (1..=self.k(j) as usize).map(move |i| StepIndex::new(j, i)))
    }

    /// The index following `idx`, or `None` after `(r, k_r)` (or outside the chain).
    pub fn next(&self, idx: StepIndex) -> Option<StepIndex> {
        if idx.j == 0 || idx.j > self.r || idx.i == 0 || idx.i as u64 > self.k(idx.j) {
            return None;
        }
        if (idx.i as u64) < self.k(idx.j) {
            Some(StepIndex::new(idx.j, idx.i + 1))
        } else if idx.j < self.r {
            Some(StepIndex::new(idx.j + 1, 1))
        } else {
            None
        }
    }

    /// Rebuilds the sequence from its quotients and gcd by running the
    /// recursion `l_{j-1} = k_j l_j + l_{j+1}` backwards.
    pub fn from_quotients(k: &[u64], c: u64) -> Result<Self> {
        let r = k.len();
        if r == 0 || c == 0 || k.contains(&0) || k[r - 1] < 2 {
            return Err(Error::InternalConsistency(
                "quotients must be positive with k_r >= 2 and c >= 1".into(),
            ));
        }
        let mut l = vec![0u64; r + 2];
        l[r] = c;
        for j in (1..=r).rev() {
            l[j - 1] = k[j - 1] * l[j] + l[j + 1];
        }
        euclidean_sequence(ContactType::new(l[1], l[0])?)
    }
}

impl fmt::Display for EuclideanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.l.iter().map(u64::to_string).collect();
        let ks: Vec<String> = self.k.iter().map(u64::to_string).collect();
        write!(
            f,
            "l = {}, k = [{}], r = {}, c = {}",
            ls.join(" > "),
            ks.join(", "),
            self.r,
            self.c
        )
    }
}

/// Runs the euclidean algorithm on `(m, n)`.
pub fn euclidean_sequence(t: ContactType) -> Result<EuclideanSequence> {
    let ContactType { m, n } = ContactType::new(t.m, t.n)?;
    let mut l = vec![n, m];
    let mut k = Vec::new();
    while *l.last().unwrap() != 0 {
        let len = l.len();
        let (a, b) = (l[len - 2], l[len - 1]);
        k.push(a / b);
        l.push(a % b);
    }
    let r = k.len();
    Ok(EuclideanSequence {
        n,
        m,
        c: l[r],
        l,
        k,
        r,
    })
}

/// Same length and same quotients.
///
/// Also evaluates the fraction test `m n' = m' n`; a disagreement between the
/// two is reported as an internal-consistency defect.
pub fn equivalent(t: ContactType, t2: ContactType) -> Result<bool> {
    let s = euclidean_sequence(t)?;
    let s2 = euclidean_sequence(t2)?;
    let by_quotients = s.r == s2.r && s.k == s2.k;
    let by_fraction = u128::from(t.m) * u128::from(t2.n) == u128::from(t2.m) * u128::from(t.n);
    if by_quotients != by_fraction {
        return Err(Error::InternalConsistency(format!(
            "{t} vs {t2}: quotient test says {by_quotients}, fraction test says {by_fraction}"
        )));
    }
    Ok(by_quotients)
}

/// Expected type at one step of the resolution chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedType {
    pub index: StepIndex,
    /// `l_j`
    pub mult: u64,
    /// `l_{j-1} - (i-1) l_j`
    pub contact: u64,
    /// Set on `(r, k_r)`, where the point is `c`-fold and transverse to
    /// both tracked divisors.
    pub terminal: bool,
}

pub fn predicted_types(s: &EuclideanSequence) -> Vec<PredictedType> {
    s.steps()
        .map(|idx| {
            let lj = s.l(idx.j);
            PredictedType {
                index: idx,
                mult: lj,
                contact: s.l(idx.j - 1) - (idx.i as u64 - 1) * lj,
                terminal: idx.j == s.r && idx.i as u64 == s.k(s.r),
            }
        })
        .collect()
}

/// Both sides of `Σ_{j<=h} k_j l_j l'_j + l_{h+1} l'_h = (l_1 l'_0 | l_0 l'_1)`
/// (the right side depending on the parity of `h`).
///
/// Requires `1 <= h <= min(r, r')` and equal quotients below `h`. Returns an
/// identity failure if the sides differ or if `lhs >= n n'`.
pub fn key_identity(
    s: &EuclideanSequence,
    s2: &EuclideanSequence,
    h: usize,
) -> Result<(u128, u128)> {
    let max = s.r.min(s2.r);
    if h == 0 || h > max {
        return Err(Error::StepOutOfRange { h, max });
    }
    if (1..h).any(|j| s.k(j) != s2.k(j)) {
        return Err(Error::KPrefixMismatch { h });
    }
    let w = |v: u64| u128::from(v);
    let lhs: u128 = (1..=h)
        .map(|j| w(s.k(j)) * w(s.l(j)) * w(s2.l(j)))
        .sum::<u128>()
        + w(s.l(h + 1)) * w(s2.l(h));
    let rhs = if h.is_multiple_of(2) {
        w(s.l(1)) * w(s2.l(0))
    } else {
        w(s.l(0)) * w(s2.l(1))
    };
    if lhs != rhs {
        return Err(Error::IdentityFailure(format!(
            "key identity for {} and {} at h = {h}: {lhs} != {rhs}",
            s.contact_type(),
            s2.contact_type()
        )));
    }
    if lhs >= w(s.n) * w(s2.n) {
        return Err(Error::IdentityFailure(format!(
            "key bound for {} and {} at h = {h}: {lhs} >= {}",
            s.contact_type(),
            s2.contact_type(),
            w(s.n) * w(s2.n)
        )));
    }
    Ok((lhs, rhs))
}
