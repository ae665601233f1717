use std::fmt;

use itertools::Itertools;

use super::CodeError;

/// Subsets `A_1 … A_ℓ` of `[n]` (0-based, each sorted) together with the
/// dimension `k` they are tested against.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetTuple {
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetTuple {
    pub fn new(mut sets: Vec<Vec<usize>>, k: usize) -> Self {
        for s in &mut sets {
            s.sort_unstable();
        }
        SetTuple { sets, k }
    }

    pub fn ell(&self) -> usize {
        self.sets.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// `|∩_{j ∈ idx} A_j|`.
    pub fn intersection_size(&self, idx: &[usize]) -> usize {
        let Some((&first, rest)) = idx.split_first() else {
            return 0;
        };
        self.sets[first]
            .iter()
            .filter(|x| rest.iter().all(|&j| self.sets[j].binary_search(x).is_ok()))
            .count()
    }

    /// Parses `1,2;3,4;5,6` (1-based elements, `;` between sets, an empty
    /// string for an empty set).
    pub fn parse(s: &str, k: usize) -> Result<Self, CodeError> {
        let sets = s
            .split(';')
            .map(|part| {
                let part = part.trim();
                if part.is_empty() {
                    return Ok(Vec::new());
                }
                part.split(',')
                    .map(|t| match t.trim().parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(CodeError::Parse(format!("bad set element `{t}`"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SetTuple::new(sets, k))
    }

    fn check_sizes(&self) -> Result<(), CodeError> {
        let total: usize = self.sizes().iter().sum();
        let ell = self.ell();
        if ell == 0 || total != (ell - 1) * self.k || self.sets.iter().any(|s| s.len() > self.k) {
            return Err(CodeError::SizeConstraintViolated(format!(
                "sizes {:?} with k = {}",
                self.sizes(),
                self.k
            )));
        }
        Ok(())
    }
}

/// 1-based, as accepted by [`SetTuple::parse`].
impl fmt::Display for SetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.iter().map(|x| x + 1).join(",")).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Every set partition of `0..ell`, as lists of blocks.
pub fn bell_partitions(ell: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; ell];
    fn rec(i: usize, used: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == labels.len() {
            let mut blocks = vec![Vec::new(); used];
            for (j, &l) in labels.iter().enumerate() {
                blocks[l].push(j);
            }
            out.push(blocks);
            return;
        }
        for l in 0..=used {
            labels[i] = l;
            rec(i + 1, used.max(l + 1), labels, out);
        }
    }
    if ell == 0 {
        return vec![Vec::new()];
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

/// Whether a generic `k × n` matrix has `W_{A_1} ∩ … ∩ W_{A_ℓ} = 0`: every
/// set partition `P_1, …, P_s` of the tuple satisfies
/// `Σ |∩_{j∈P_i} A_j| ≤ (s − 1) k`.
pub fn generically_zero(tuple: &SetTuple) -> Result<bool, CodeError> {
    tuple.check_sizes()?;
    let k = tuple.k;
    if tuple.ell() == 3 {
        // the three nontrivial partitions of a triple
        let ok = tuple.intersection_size(&[0, 1, 2]) == 0
            && tuple.intersection_size(&[0, 1]) + tuple.sets[2].len() <= k
            && tuple.intersection_size(&[0, 2]) + tuple.sets[1].len() <= k
            && tuple.intersection_size(&[1, 2]) + tuple.sets[0].len() <= k;
        return Ok(ok);
    }
    Ok(bell_partitions(tuple.ell()).iter().all(|blocks| {
        let lhs: usize = blocks.iter().map(|b| tuple.intersection_size(b)).sum();
        lhs <= (blocks.len() - 1) * k
    }))
}

/// Size profiles `(s_1, …, s_ℓ)` with `s_i ≤ max_size` and sum `(ℓ−1)k`, in
/// lexicographic order.
pub fn profiles(k: usize, ell: usize, max_size: usize) -> Vec<Vec<usize>> {
    let total = ell.saturating_sub(1) * k;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ell);
    fn rec(remaining: usize, slots: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for s in 0..=max.min(remaining) {
            if remaining - s <= (slots - 1) * max {
                cur.push(s);
                rec(remaining - s, slots - 1, max, cur, out);
                cur.pop();
            }
        }
    }
    rec(total, ell, max_size, &mut cur, &mut out);
    out
}

/// Lexicographic stream of ordered tuples (`A_1` slowest) over one or more
/// size profiles.
pub struct TupleIter {
    n: usize,
    k: usize,
    profiles: Vec<Vec<usize>>,
    profile: usize,
    combos: Vec<Vec<Vec<usize>>>,
    idx: Vec<usize>,
    fresh: bool,
}

impl TupleIter {
    fn load(&mut self) -> bool {
        while self.profile < self.profiles.len() {
            let prof = &self.profiles[self.profile];
            self.combos = prof
                .iter()
                .map(|&s| (0..self.n).combinations(s).collect::<Vec<_>>())
                .collect();
            if self.combos.iter().all(|c| !c.is_empty()) {
                self.idx = vec![0; prof.len()];
                return true;
            }
            self.profile += 1;
        }
        false
    }
}

impl Iterator for TupleIter {
    type Item = SetTuple;

    fn next(&mut self) -> Option<SetTuple> {
        if self.fresh {
            self.fresh = false;
            if !self.load() {
                return None;
            }
        } else {
            if self.profile >= self.profiles.len() {
                return None;
            }
            let mut pos = self.idx.len();
            loop {
                if pos == 0 {
                    self.profile += 1;
                    if !self.load() {
                        return None;
                    }
                    break;
                }
                pos -= 1;
                self.idx[pos] += 1;
                if self.idx[pos] < self.combos[pos].len() {
                    break;
                }
                self.idx[pos] = 0;
            }
        }
        let sets = self.idx.iter().zip(&self.combos).map(|(&i, c)| c[i].clone()).collect();
        Some(SetTuple { sets, k: self.k })
    }
}

/// All ordered tuples of subsets of `[n]` with the given size profile, or
/// with every feasible profile (sizes `≤ k`, sum `(ℓ−1)k`) when `None`.
pub fn enumerate_tuples(n: usize, k: usize, ell: usize, profile: Option<&[usize]>) -> Result<TupleIter, CodeError> {
    let profiles = match profile {
        Some(p) => {
            let total: usize = p.iter().sum();
            if p.len() != ell || ell == 0 || total != (ell - 1) * k || p.iter().any(|&s| s > k || s > n) {
                return Err(CodeError::InfeasibleProfile(p.to_vec()));
            }
            vec![p.to_vec()]
        }
        None => profiles(k, ell, k.min(n)),
    };
    Ok(TupleIter {
        n,
        k,
        profiles,
        profile: 0,
        combos: Vec::new(),
        idx: Vec::new(),
        fresh: true,
    })
}

/// Tuples up to reordering of the sets: sets appear in nondecreasing
/// (size, lexicographic) order. Sizes are capped at `max_size`; with
/// `generic_only` the tuples failing [`generically_zero`] are dropped.
pub fn canonical_tuples(n: usize, k: usize, ell: usize, max_size: usize, generic_only: bool) -> Vec<SetTuple> {
    let max_size = max_size.min(k).min(n);
    let mut out = Vec::new();
    for prof in profiles(k, ell, max_size) {
        if prof.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let combos: Vec<Vec<Vec<usize>>> = prof.iter().map(|&s| (0..n).combinations(s).collect()).collect();
        let mut idx = vec![0usize; ell];
        rec_canonical(&prof, &combos, 0, &mut idx, k, generic_only, &mut out);
    }
    out
}

fn rec_canonical(
    prof: &[usize],
    combos: &[Vec<Vec<usize>>],
    pos: usize,
    idx: &mut Vec<usize>,
    k: usize,
    generic_only: bool,
    out: &mut Vec<SetTuple>,
) {
    if pos == prof.len() {
        let t = SetTuple {
            sets: idx.iter().zip(combos).map(|(&i, c)| c[i].clone()).collect(),
            k,
        };
        if !generic_only || generically_zero(&t).unwrap_or(false) {
            out.push(t);
        }
        return;
    }
    let start = if pos > 0 && prof[pos] == prof[pos - 1] { idx[pos - 1] } else { 0 };
    for i in start..combos[pos].len() {
        idx[pos] = i;
        rec_canonical(prof, combos, pos + 1, idx, k, generic_only, out);
    }
}
