//! Closed formulas for the δ-invariant and the codimension of the locus of
//! curves with an `(m, n)`-point, the tangent-intersection lower bound, and
//! the oracles they are checked against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid::{equivalent, euclidean_sequence, ContactType, EuclideanSequence};
use crate::polyalgebra::BivarPoly;
use crate::scalar::Scalar;
use crate::Rat;

/// A closed-form value that is an upper bound in general and exact when the
/// point is resolved by the chain, i.e. when `gcd(m, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub m: u64,
    pub n: u64,
    pub c: u64,
    pub delta_bound: u64,
    pub delta_exact: bool,
    pub codim_bound: u64,
    pub codim_exact: bool,
}

/// `Σ k_j l_j (l_j - 1) / 2`: the δ contribution of the chain.
pub fn resolution_sum(s: &EuclideanSequence) -> u128 {
    (1..=s.r())
        .map(|j| {
            let l = u128::from(s.l(j));
            u128::from(s.k(j)) * l * (l - 1) / 2
        })
        .sum()
}

/// `nm - n - m + c`, checked to be even.
fn twice_delta(t: ContactType) -> Result<u128> {
    let (m, n, c) = (u128::from(t.m()), u128::from(t.n()), u128::from(t.gcd()));
    let v = n * m + c - n - m;
    if v % 2 != 0 {
        return Err(Error::IdentityFailure(format!(
            "nm - n - m + c is odd for {t}"
        )));
    }
    Ok(v)
}

fn narrow(v: u128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::InternalConsistency(format!("{v} does not fit in 64 bits")))
}

/// `(nm - n - m + c) / 2`, cross-checked against the resolution sum.
pub fn delta_bound(t: ContactType) -> Result<Bound> {
    let value = twice_delta(t)? / 2;
    let s = euclidean_sequence(t)?;
    let sum = resolution_sum(&s);
    if sum != value {
        return Err(Error::IdentityFailure(format!(
            "resolution sum {sum} differs from (nm - n - m + c)/2 = {value} for {t}"
        )));
    }
    Ok(Bound {
        value: narrow(value)?,
        exact: t.gcd() == 1,
    })
}

/// Checks both summation identities of the sequence:
/// `Σ k_j l_j (l_j - 1) / 2 = (nm - n - m + c) / 2` and
/// `Σ (l_{j-1} - l_{j+1})(l_j - 1) = l_0 l_1 - l_0 - l_1 + l_{r+1} + l_r - l_r l_{r+1}`.
pub fn summation_identities(s: &EuclideanSequence) -> Result<bool> {
    let t = s.contact_type();
    let lhs = resolution_sum(s);
    let rhs = twice_delta(t)? / 2;
    if lhs != rhs {
        return Err(Error::IdentityFailure(format!(
            "first identity for {t}: {lhs} != {rhs}"
        )));
    }
    let l = |j: usize| i128::from(s.l(j));
    let r = s.r();
    let lhs: i128 = (1..=r).map(|j| (l(j - 1) - l(j + 1)) * (l(j) - 1)).sum();
    let rhs = l(0) * l(1) - l(0) - l(1) + l(r + 1) + l(r) - l(r) * l(r + 1);
    if lhs != rhs {
        return Err(Error::IdentityFailure(format!(
            "second identity for {t}: {lhs} != {rhs}"
        )));
    }
    Ok(true)
}

/// `(nm + m + n + c - 2) / 2` for curves of degree `d >= n`; when `c = 1`
/// also checked against `n + (m - 1) + δ`.
pub fn codim_bound(t: ContactType, d: u64) -> Result<Bound> {
    if d < t.n() {
        return Err(Error::DegreeTooSmall {
            degree: d,
            required: t.n(),
        });
    }
    let (m, n, c) = (u128::from(t.m()), u128::from(t.n()), u128::from(t.gcd()));
    let value = (n * m + m + n + c - 2) / 2;
    if c == 1 {
        let decomposed = n + (m - 1) + resolution_sum(&euclidean_sequence(t)?);
        if decomposed != value {
            return Err(Error::IdentityFailure(format!(
                "codimension {value} differs from n + (m - 1) + δ = {decomposed} for {t}"
            )));
        }
    }
    Ok(Bound {
        value: narrow(value)?,
        exact: c == 1,
    })
}

pub fn invariant_report(t: ContactType, d: u64) -> Result<InvariantReport> {
    let delta = delta_bound(t)?;
    let codim = codim_bound(t, d)?;
    Ok(InvariantReport {
        m: t.m(),
        n: t.n(),
        c: t.gcd(),
        delta_bound: delta.value,
        delta_exact: delta.exact,
        codim_bound: codim.value,
        codim_exact: codim.exact,
    })
}

/// Rank of a matrix over an exact field, by Gaussian elimination.
pub fn rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone() / pivot.clone();
            let (top, rest) = rows.split_at_mut(i);
            for (target, p) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *target = target.clone() - factor.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}

/// Number of independent linear conditions imposed on plane curves of
/// degree `d` by having contact order at least `n` with the line `y = 0` at
/// the origin: the rank of `f ↦ [t^i] f(t, 0)`, `0 <= i < n`, on the
/// monomial basis.
pub fn codim_oracle_smooth(n: u64, d: u64) -> Result<u64> {
    if n < 2 || n > d {
        return Err(Error::DegreeTooSmall {
            degree: d,
            required: n,
        });
    }
    let d32 = u32::try_from(d).map_err(|_| Error::InvalidGerm(format!("degree {d} too large")))?;
    let basis: Vec<(u32, u32)> = (0..=d32)
        .flat_map(|s| (0..=s).map(move |j| (s - j, j)))
        .collect();
    let t = BivarPoly::<Rat>::x();
    let zero = BivarPoly::<Rat>::zero();
    let restricted: Vec<BivarPoly<Rat>> = basis
        .iter()
        .map(|&(a, b)| BivarPoly::term(Rat::from_int(1), a, b).substitute(&t, &zero))
        .collect();
    let rows = (0..n as u32)
        .map(|i| restricted.iter().map(|p| p.coeff(i, 0)).collect())
        .collect();
    Ok(rank::<Rat>(rows) as u64)
}

/// Lower bound for `(B·C)_q` when `B` and `C` have equivalent types and are
/// tangent at `q`: `k m' m`, plus `1 + (n' - m')(n - m)` when `m ∤ n`, where
/// `k = floor(n / m)`.
pub fn inverse_bound(t: ContactType, t2: ContactType) -> Result<u64> {
    if !equivalent(t, t2)? {
        return Err(Error::NotEquivalent {
            m: t.m(),
            n: t.n(),
            m2: t2.m(),
            n2: t2.n(),
        });
    }
    let (m, n, m2, n2) = (
        u128::from(t.m()),
        u128::from(t.n()),
        u128::from(t2.m()),
        u128::from(t2.n()),
    );
    let k = n / m;
    let base = k * m2 * m;
    narrow(if n % m == 0 {
        base
    } else {
        base + 1 + (n2 - m2) * (n - m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(m: u64, n: u64) -> ContactType {
        ContactType::new(m, n).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            delta_bound(ty(2, 3)).unwrap(),
            Bound {
                value: 1,
                exact: true
            }
        );
        assert_eq!(
            delta_bound(ty(3, 5)).unwrap(),
            Bound {
                value: 4,
                exact: true
            }
        );
        assert_eq!(
            delta_bound(ty(1, 7)).unwrap(),
            Bound {
                value: 0,
                exact: true
            }
        );
        assert_eq!(
            delta_bound(ty(2, 8)).unwrap(),
            Bound {
                value: 4,
                exact: false
            }
        );
    }

    #[test]
    fn identities_small_grid() {
        for n in 2..=60 {
            for m in 1..n {
                assert!(summation_identities(&euclidean_sequence(ty(m, n)).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim_bound(ty(1, 2), 2).unwrap().value, 2);
        assert_eq!(codim_bound(ty(1, 5), 7).unwrap().value, 5);
        assert_eq!(codim_bound(ty(2, 3), 3).unwrap().value, 5);
        assert_eq!(
            codim_bound(ty(2, 5), 3).unwrap_err().code(),
            "DEGREE_TOO_SMALL"
        );
    }

    #[test]
    fn smooth_oracle() {
        assert_eq!(codim_oracle_smooth(2, 3).unwrap(), 2);
        assert_eq!(codim_oracle_smooth(4, 4).unwrap(), 4);
        assert_eq!(codim_oracle_smooth(2, 2).unwrap(), 2);
        assert!(codim_oracle_smooth(5, 4).is_err());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let r = |v: i64| Rat::from_int(v);
        let rows = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_bound(ty(1, 2), ty(1, 2)).unwrap(), 2);
        assert_eq!(inverse_bound(ty(2, 3), ty(2, 3)).unwrap(), 6);
        assert_eq!(inverse_bound(ty(1, 3), ty(2, 6)).unwrap(), 6);
        assert_eq!(
            inverse_bound(ty(1, 3), ty(1, 2)).unwrap_err().code(),
            "NOT_EQUIVALENT"
        );
    }

    #[test]
    fn report_serializes() {
        let v = serde_json::to_value(invariant_report(ty(3, 5), 5).unwrap()).unwrap();
        assert_eq!(v["delta_bound"], 4);
        assert_eq!(v["codim_bound"], 11);
        assert_eq!(v["codim_exact"], true);
    }
}
