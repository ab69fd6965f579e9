//! Closed-form slice counts and the embedded hypercube table.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Realized slice counts of the cyclic polytope `C_d(n)`.
///
/// For `d = 3` this is `{1, …, 2(n-2)}`; otherwise
/// `{a·b + i : a, b ≤ n-1, i ≤ d, a + b = n - i}`.
pub fn cyclic_vss(d: usize, n: usize) -> Result<BTreeSet<usize>> {
    check_cyclic(d, n)?;
    if d == 3 {
        return Ok((1..=2 * (n - 2)).collect());
    }
    let mut out = BTreeSet::new();
    for i in 0..=d {
        let s = n - i;
        for a in 0..=s.min(n - 1) {
            let b = s - a;
            if b < n {
                out.insert(a * b + i);
            }
        }
    }
    out.remove(&0);
    Ok(out)
}

/// Maximum slice count over all `d`-polytopes with `n` vertices.
pub fn nu_max(d: usize, n: usize) -> Result<usize> {
    check_cyclic(d, n)?;
    Ok(if d == 3 {
        2 * (n - 2)
    } else {
        (n / 2) * n.div_ceil(2)
    })
}

fn check_cyclic(d: usize, n: usize) -> Result<()> {
    if d < 3 || n <= d {
        return Err(Error::InvalidInput(format!(
            "need n > d >= 3, got d={d}, n={n}"
        )));
    }
    Ok(())
}

/// Counts below `4d - 9` that a hyperplane can realize on `Q_d`.
fn small_realizable(d: usize) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = (0..d)
        .filter(|&i| i < usize::BITS as usize)
        .map(|i| 1usize << i)
        .collect();
    s.extend([d, 2 * d - 2, 3 * d - 5, 3 * d - 4]);
    s
}

/// Gaps of `Q_d` in `[4d - 10]`.
pub fn hypercube_first_gaps(d: usize) -> Result<BTreeSet<usize>> {
    if d < 4 {
        return Err(Error::InvalidInput(format!(
            "first gaps need d >= 4, got {d}"
        )));
    }
    let hit = small_realizable(d);
    Ok((1..=4 * d - 10).filter(|m| !hit.contains(m)).collect())
}

/// `(d/2)·C(d, d/2) - 1`, a gap of `Q_d` for even `d > 4`.
pub fn hypercube_penultimate_gap(d: usize) -> Result<u128> {
    if d % 2 == 1 || d <= 4 {
        return Err(Error::InvalidInput(format!(
            "penultimate gap needs even d > 4, got {d}"
        )));
    }
    let w = binomial(d, d / 2)
        .and_then(|c| c.checked_mul((d / 2) as u128))
        .ok_or_else(|| Error::InvalidInput(format!("d={d} overflows u128")))?;
    Ok(w - 1)
}

/// `⌈d/2⌉·C(d, ⌊d/2⌋)`: the width of the O'Neil poset and `ν(Q_d)`.
pub fn hypercube_width(d: usize) -> Result<u128> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    binomial(d, d / 2)
        .and_then(|c| c.checked_mul(d.div_ceil(2) as u128))
        .ok_or_else(|| Error::InvalidInput(format!("d={d} overflows u128")))
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc = C(n, i) before the update
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Possible `cv(Q_d, H)` when the lighter side holds exactly `k` vertices.
pub fn small_cut_values(d: usize, k: usize) -> Result<BTreeSet<usize>> {
    if d < 4 {
        return Err(Error::InvalidInput(format!(
            "small cuts need d >= 4, got {d}"
        )));
    }
    Ok(match k {
        0 => (0..d).map(|r| 1usize << r).collect(),
        1 => [d].into(),
        2 => [2 * d - 2].into(),
        3 => [3 * d - 5, 3 * d - 4].into(),
        4 => (6..=9).map(|i| 4 * d - i).collect(),
        _ => return Err(Error::InvalidInput(format!("k must be at most 4, got {k}"))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaleSide {
    Plus,
    Minus,
    On,
}

/// Side of `γ(t)` relative to `aff(γ(p_1), …, γ(p_d))`.
///
/// The parameters cut the line into intervals `I_1 = (-∞, p_1)`, …,
/// `I_{d+1} = (p_d, ∞)`; odd intervals are `Plus`, even ones `Minus`.
pub fn gale_sign_pattern(params: &[Rational], t: &Rational) -> Result<GaleSide> {
    if params.is_empty() || params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "parameters must be strictly increasing".into(),
        ));
    }
    if params.contains(t) {
        return Ok(GaleSide::On);
    }
    let interval = 1 + params.iter().filter(|p| *p < t).count();
    Ok(if interval % 2 == 1 {
        GaleSide::Plus
    } else {
        GaleSide::Minus
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub dim: usize,
    pub nu: usize,
    pub gaps: BTreeSet<usize>,
}

/// Published slice sequences of `Q_2` … `Q_7` (ν and gap set).
const GOLDEN: [(usize, &[usize]); 6] = [
    (2, &[]),
    (6, &[]),
    (12, &[3, 5]),
    (30, &[3, 6, 7, 9]),
    (60, &[3, 5, 7, 9, 11, 12, 59]),
    (140, &[3, 5, 6, 9, 10, 11, 13, 14, 15, 18]),
];

pub fn golden_table(d: usize) -> Result<GoldenRow> {
    if !(2..=7).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "golden table covers 2 <= d <= 7, got {d}"
        )));
    }
    let (nu, gaps) = GOLDEN[d - 2];
    Ok(GoldenRow {
        dim: d,
        nu,
        gaps: gaps.iter().copied().collect(),
    })
}

impl GoldenRow {
    pub fn realized(&self) -> BTreeSet<usize> {
        (1..=self.nu).filter(|m| !self.gaps.contains(m)).collect()
    }
}
