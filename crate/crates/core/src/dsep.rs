//! Level of separability: certificates made of several non-strict hyperplanes.
//!
//! A pathset-side certificate is satisfied by every pathset while every
//! cutset violates at least one of its inequalities. A cutset-side
//! certificate is the same statement for the dual system: its inequalities
//! read the failure indicators `1 - x`, every cutset satisfies all of them
//! and every pathset violates one.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Exact;
use crate::separability::{is_separable, separability_margin, SeparabilityVerdict};
use crate::state::StateWord;
use crate::system::BinarySystem;
use crate::threshold::{Comparison, ThresholdDescription};

/// Component cap for the minimal-`d` search.
pub const DEFAULT_SEARCH_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Pathset,
    Cutset,
}

impl Side {
    pub fn keyword(self) -> &'static str {
        match self {
            Side::Pathset => "pathset",
            Side::Cutset => "cutset",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "pathset" => Some(Side::Pathset),
            "cutset" => Some(Side::Cutset),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Hyperplanes `Σ w_i v_i ≥ a` with `v = x` on the pathset side and `v = 1 - x`
/// on the cutset side. The comparison stored in each description is ignored:
/// certificates are always read non-strictly.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneCertificate<T> {
    pub side: Side,
    pub hyperplanes: Vec<ThresholdDescription<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    /// A state of the included side fails hyperplane `hyperplane` (0-based).
    IncludedViolates {
        state: StateWord,
        hyperplane: usize,
    },
    /// A state of the excluded side satisfies every hyperplane.
    ExcludedSatisfiesAll {
        state: StateWord,
    },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        *self == CertificateCheck::Valid
    }
}

impl<T: Exact> HyperplaneCertificate<T> {
    pub fn d(&self) -> usize {
        self.hyperplanes.len()
    }

    fn satisfies(&self, h: &ThresholdDescription<T>, state: &StateWord) -> bool {
        let read = match self.side {
            Side::Pathset => *state,
            Side::Cutset => state.complement(),
        };
        h.weighted_sum(&read) >= *h.alpha0()
    }

    /// Every hyperplane rescaled to coprime integers.
    pub fn integral(&self) -> Self {
        let hyperplanes = self.hyperplanes.iter().map(integral_hyperplane).collect();
        HyperplaneCertificate {
            side: self.side,
            hyperplanes,
        }
    }
}

fn integral_hyperplane<T: Exact>(h: &ThresholdDescription<T>) -> ThresholdDescription<T> {
    let mut values = h.weights().to_vec();
    values.push(h.alpha0().clone());
    match T::integral_scale(&values) {
        Some(f) => h.scaled(&f).expect("integral scale factors are positive"),
        None => h.clone(),
    }
}

/// Exhaustive check over all `2^N` states.
pub fn verify_certificate<T: Exact>(
    system: &BinarySystem<T>,
    cert: &HyperplaneCertificate<T>,
) -> Result<CertificateCheck> {
    let n = system.component_count();
    if let Some(h) = cert.hyperplanes.iter().find(|h| h.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            actual: h.len(),
        });
    }
    let table = system.truth_table()?;
    for (index, &up) in table.iter().enumerate().rev() {
        let state = StateWord::from_index_unchecked(n, index as u64);
        let included = up == (cert.side == Side::Pathset);
        let failed = cert.hyperplanes.iter().position(|h| !cert.satisfies(h, &state));
        match (included, failed) {
            (true, Some(hyperplane)) => return Ok(CertificateCheck::IncludedViolates { state, hyperplane }),
            (false, None) => return Ok(CertificateCheck::ExcludedSatisfiesAll { state }),
            _ => {}
        }
    }
    Ok(CertificateCheck::Valid)
}

/// One hyperplane `Σ_{j : ω_j = 0} x_j ≥ 1` per mincut `ω`.
pub fn mincut_certificate<T: Exact>(system: &BinarySystem<T>) -> Result<HyperplaneCertificate<T>> {
    if !system.is_monotone()? {
        return Err(Error::Model("mincut certificates need a monotone system".into()));
    }
    let n = system.component_count();
    let hyperplanes = system
        .mincuts()?
        .iter()
        .map(|w| {
            let weights = w.bits().map(|b| if b { T::zero() } else { T::one() }).collect();
            ThresholdDescription::new(weights, T::one(), Comparison::NonStrict)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(hyperplanes.iter().all(|h| h.len() == n));
    Ok(HyperplaneCertificate {
        side: Side::Pathset,
        hyperplanes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparabilityLevel<T> {
    Level {
        d: usize,
        certificate: HyperplaneCertificate<T>,
    },
    /// No certificate with at most `max_d` hyperplanes exists on either side.
    Exceeds { max_d: usize },
}

impl<T> SeparabilityLevel<T> {
    pub fn d(&self) -> Option<usize> {
        match self {
            SeparabilityLevel::Level { d, .. } => Some(*d),
            SeparabilityLevel::Exceeds { .. } => None,
        }
    }
}

pub fn level_of_separability<T: Exact>(system: &BinarySystem<T>, max_d: usize) -> Result<SeparabilityLevel<T>> {
    level_of_separability_capped(system, max_d, DEFAULT_SEARCH_CAP)
}

/// Least `d` over both sides; pathset side wins ties.
pub fn level_of_separability_capped<T: Exact>(
    system: &BinarySystem<T>,
    max_d: usize,
    max_n: usize,
) -> Result<SeparabilityLevel<T>> {
    let n = system.component_count();
    Error::check_size("component count", n, max_n)?;
    if max_d == 0 {
        return Ok(SeparabilityLevel::Exceeds { max_d });
    }
    let found = match is_separable(system)? {
        SeparabilityVerdict::Separable { hyperplane, margin } => Some(HyperplaneCertificate {
            side: Side::Pathset,
            hyperplanes: vec![non_strict(&hyperplane, &margin)?],
        }),
        SeparabilityVerdict::Nonseparable { .. } => {
            let inventory = system.inventory()?;
            let mut pathset_side = CoverSearch::new(Side::Pathset, &inventory.minpaths, &inventory.mincuts, n);
            let mut cutset_side = CoverSearch::new(Side::Cutset, &inventory.minpaths, &inventory.mincuts, n);
            let mut found = None;
            for d in 2..=max_d {
                found = match pathset_side.cover(d)? {
                    Some(c) => Some(c),
                    None => cutset_side.cover(d)?,
                };
                if found.is_some() {
                    break;
                }
            }
            found
        }
    };
    let Some(certificate) = found else {
        return Ok(SeparabilityLevel::Exceeds { max_d });
    };
    let certificate = certificate.integral();
    if !verify_certificate(system, &certificate)?.is_valid() {
        return Err(Error::Witness("constructed certificate does not verify".into()));
    }
    Ok(SeparabilityLevel::Level {
        d: certificate.d(),
        certificate,
    })
}

/// `n·x > α0` with gap `margin` on minpaths, as `n·x ≥ α0 + margin`.
fn non_strict<T: Exact>(h: &ThresholdDescription<T>, margin: &T) -> Result<ThresholdDescription<T>> {
    ThresholdDescription::new(
        h.weights().to_vec(),
        h.alpha0().clone() + margin.clone(),
        Comparison::NonStrict,
    )
}

/// Covers the excluded side's antichain by groups, each separable from the
/// whole included antichain.
struct CoverSearch<'a, T> {
    side: Side,
    included: &'a [StateWord],
    excluded: &'a [StateWord],
    n: usize,
    memo: HashMap<Vec<usize>, Option<ThresholdDescription<T>>>,
}

impl<'a, T: Exact> CoverSearch<'a, T> {
    fn new(side: Side, minpaths: &'a [StateWord], mincuts: &'a [StateWord], n: usize) -> Self {
        let (included, excluded) = match side {
            Side::Pathset => (minpaths, mincuts),
            Side::Cutset => (mincuts, minpaths),
        };
        CoverSearch {
            side,
            included,
            excluded,
            n,
            memo: HashMap::new(),
        }
    }

    /// Hyperplane for the group, in the side's reading, or `None` if the group
    /// cannot be split from the included side.
    fn group_hyperplane(&mut self, group: &[usize]) -> Result<Option<ThresholdDescription<T>>> {
        if let Some(known) = self.memo.get(group) {
            return Ok(known.clone());
        }
        let members: Vec<StateWord> = group.iter().map(|&i| self.excluded[i]).collect();
        let verdict = match self.side {
            Side::Pathset => separability_margin::<T>(self.included, &members, self.n)?,
            Side::Cutset => separability_margin::<T>(&members, self.included, self.n)?,
        };
        let hyperplane = match verdict {
            SeparabilityVerdict::Separable { hyperplane, margin } => Some(match self.side {
                Side::Pathset => non_strict(&hyperplane, &margin)?,
                // Σ n_i (1 - x_i) ≥ 1 - α0 holds on cutsets and fails on the group
                Side::Cutset => ThresholdDescription::new(
                    hyperplane.weights().to_vec(),
                    T::one() - hyperplane.alpha0().clone(),
                    Comparison::NonStrict,
                )?,
            }),
            SeparabilityVerdict::Nonseparable { .. } => None,
        };
        self.memo.insert(group.to_vec(), hyperplane.clone());
        Ok(hyperplane)
    }

    fn cover(&mut self, d: usize) -> Result<Option<HyperplaneCertificate<T>>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        if !self.assign(0, d, &mut groups)? {
            return Ok(None);
        }
        let mut hyperplanes = Vec::with_capacity(groups.len());
        for g in &groups {
            hyperplanes.push(self.group_hyperplane(g)?.expect("groups in a cover are separable"));
        }
        Ok(Some(HyperplaneCertificate {
            side: self.side,
            hyperplanes,
        }))
    }

    /// Places element `next` into an existing group or a fresh one.
    fn assign(&mut self, next: usize, d: usize, groups: &mut Vec<Vec<usize>>) -> Result<bool> {
        if next == self.excluded.len() {
            return Ok(true);
        }
        for g in 0..groups.len() {
            groups[g].push(next);
            let candidate = groups[g].clone();
            if self.group_hyperplane(&candidate)?.is_some() && self.assign(next + 1, d, groups)? {
                return Ok(true);
            }
            groups[g].pop();
        }
        if groups.len() < d {
            groups.push(vec![next]);
            if self.group_hyperplane(&[next])?.is_some() && self.assign(next + 1, d, groups)? {
                return Ok(true);
            }
            groups.pop();
        }
        Ok(false)
    }
}
