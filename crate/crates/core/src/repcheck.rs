//! Partition combinatorics: Schur module dimensions (hook content formula),
//! the Cauchy identity at the level of dimensions, Littlewood–Richardson
//! coefficients by tableau enumeration, and the column-partition obstruction
//! used to rule out flattening minors from the image of a multiplication map.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts. The empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is an error.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k)`, a single row.
    pub fn row(k: u32) -> Self {
        Partition(if k == 0 { vec![] } else { vec![k] })
    }

    /// `(1^k)`, a single column.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first_part(&self) -> u32 {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count() as u32).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `3,2,1`, `(3,2,1)`, `()` and the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParameter(format!("invalid partition `{s}`")))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All partitions of `d`, parts in decreasing lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the Schur module `S^λ(C^q)`: zero if `λ` has more than `q`
/// rows, else `∏ (q + j − i) / hook(i, j)` over the cells of `λ`.
pub fn schur_dim(lambda: &Partition, q: u32) -> BigUint {
    if lambda.len() > q as usize {
        return BigUint::zero();
    }
    let conj = lambda.conjugate();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            num *= q + j - i as u32;
            let arm = row - j - 1;
            let leg = conj.part(j as usize) - i as u32 - 1;
            den *= arm + leg + 1;
        }
    }
    num / den
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn big_str<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyReport {
    pub d: u32,
    pub m: u32,
    pub q: u32,
    /// `dim S^d(C^m ⊗ C^q) = C(mq + d − 1, d)`.
    #[serde(serialize_with = "big_str")]
    pub lhs: BigUint,
    /// `Σ_{λ ⊢ d} dim S^λ C^m · dim S^λ C^q`.
    #[serde(serialize_with = "big_str")]
    pub rhs: BigUint,
    pub holds: bool,
}

pub fn cauchy_check(d: u32, m: u32, q: u32) -> Result<CauchyReport> {
    if d == 0 || m == 0 || q == 0 {
        return Err(Error::InvalidParameter("d, m and q must be at least 1".into()));
    }
    let lhs = binomial(m as u64 * q as u64 + d as u64 - 1, d as u64);
    let rhs = partitions_of(d).iter().map(|l| schur_dim(l, m) * schur_dim(l, q)).sum();
    Ok(CauchyReport { d, m, q, holds: lhs == rhs, lhs, rhs })
}

/// `c^ν_{λμ}`: the number of semistandard skew tableaux of shape `ν/λ` and
/// content `μ` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    // cells in reading order: rows top to bottom, each row right to left
    let cells: Vec<(usize, u32)> = (0..nu.len())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut fill = vec![Vec::new(); nu.len()];
    for (r, row) in fill.iter_mut().enumerate() {
        *row = vec![0u32; nu.part(r) as usize];
    }
    let mut counts = vec![0u32; mu.len() + 1];
    let mut total = 0;
    lr_fill(&cells, 0, lambda, mu, &mut fill, &mut counts, &mut total);
    total
}

fn lr_fill(
    cells: &[(usize, u32)],
    at: usize,
    lambda: &Partition,
    mu: &Partition,
    fill: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    let Some(&(r, c)) = cells.get(at) else {
        *total += 1;
        return;
    };
    let c = c as usize;
    // rows weakly increase left to right; the right neighbour is already set
    let max = if c + 1 < fill[r].len() { fill[r][c + 1] } else { mu.len() as u32 };
    // columns strictly increase downwards
    let min = if r > 0 && c as u32 >= lambda.part(r - 1) { fill[r - 1][c] + 1 } else { 1 };
    for k in min..=max {
        let ki = k as usize;
        if counts[ki] >= mu.part(ki - 1) || (k > 1 && counts[ki] >= counts[ki - 1]) {
            continue;
        }
        counts[ki] += 1;
        fill[r][c] = k;
        lr_fill(cells, at + 1, lambda, mu, fill, counts, total);
        counts[ki] -= 1;
    }
    fill[r][c] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionViolation {
    pub nu: Partition,
    pub mu: Partition,
    pub coefficient: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub n: u32,
    pub dprime_max: u32,
    /// The column partition `(1^{n²−n+1})` of the flattening minors.
    pub column: Partition,
    /// Its first part is `1 < n`, so it cannot contain `(n)`.
    pub column_excludes_row: bool,
    /// `(ν, μ)` pairs with `c^μ_{(n),ν} > 0` that were examined.
    pub positive_pairs: usize,
    pub violations: Vec<ObstructionViolation>,
    pub holds: bool,
}

/// Checks that every constituent `μ` of `(n) ⊗ ν`, for all `ν ⊢ d' ≤
/// dprime_max`, has `μ₁ ≥ n`, and that the column partition of size
/// `n² − n + 1` has first part below `n`.
pub fn obstruction_check(n: u32, dprime_max: u32) -> Result<ObstructionReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let column = Partition::column((n * n - n + 1) as usize);
    let column_excludes_row = column.first_part() < n;
    let row = Partition::row(n);
    let mut positive_pairs = 0;
    let mut violations = Vec::new();
    for d in 0..=dprime_max {
        let targets = partitions_of(n + d);
        for nu in partitions_of(d) {
            for mu in &targets {
                let c = lr_coefficient(&row, &nu, mu);
                if c == 0 {
                    continue;
                }
                positive_pairs += 1;
                if mu.first_part() < n {
                    violations.push(ObstructionViolation { nu: nu.clone(), mu: mu.clone(), coefficient: c });
                }
            }
        }
    }
    let holds = column_excludes_row && violations.is_empty();
    Ok(ObstructionReport { n, dprime_max, column, column_excludes_row, positive_pairs, violations, holds })
}
