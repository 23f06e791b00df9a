//! Factor rank: rank-1 detection and extraction, residuation-closure
//! candidate generation, exact minimum-rank search with a certificate, and
//! an independent oracle used to cross-validate the search.
//!
//! Over an additively idempotent semiring, `A = X_1 + .. + X_k` with each
//! `X_t` of rank 1 forces every `X_t <= A` (addition is the natural-order
//! maximum), and the sum equals `A` exactly when every nonzero cell of `A`
//! is *tight* in some summand. Each summand can be enlarged to its
//! residuation closure without breaking domination, so minimum
//! decompositions are minimum covers of the nonzero cells by closed
//! dominated rank-1 matrices. [`factor_rank`] searches such covers over the
//! candidates produced by [`candidate_summands`]; [`factor_rank_oracle`]
//! recomputes the rank by an unrelated exhaustive method so the two can be
//! cross-checked.

use std::collections::{BTreeSet, HashSet};

use num::{BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{BasisCell, Matrix};
use crate::semiring::{MaxPlus, SemiringId, Value};

/// Largest dimension accepted by [`factor_rank`]; the search is exact but
/// exponential, sized for desk-scale inputs.
pub const MAX_RANK_DIM: usize = 6;

/// A rank-1 matrix dominated by the target, in outer-product form, with the
/// set of cells where it meets the target exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Candidate {
    b: Vec<Value>,
    c: Vec<Value>,
    product: Matrix,
    tight: BTreeSet<BasisCell>,
}

impl Rank1Candidate {
    pub fn column(&self) -> &[Value] {
        &self.b
    }

    pub fn row(&self) -> &[Value] {
        &self.c
    }

    pub fn product(&self) -> &Matrix {
        &self.product
    }

    pub fn tight_cells(&self) -> &BTreeSet<BasisCell> {
        &self.tight
    }
}

/// Certificate for `r(A) = k`: matrices `B` (`m x k`) and `C` (`k x n`)
/// with `B * C = A`. The zero matrix has `k = 0` and no factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    k: usize,
    left: Option<Matrix>,
    right: Option<Matrix>,
}

impl RankCertificate {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn left(&self) -> Option<&Matrix> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&Matrix> {
        self.right.as_ref()
    }

    /// Re-multiply the factors and compare against `a`.
    pub fn verifies(&self, a: &Matrix) -> bool {
        match (&self.left, &self.right) {
            (None, None) => self.k == 0 && a.is_zero_matrix(),
            (Some(l), Some(r)) => match l.mul(r) {
                Ok(p) => p == *a,
                Err(_) => false,
            },
            _ => false,
        }
    }
}

fn outer(id: SemiringId, b: &[Value], c: &[Value]) -> Result<Matrix> {
    Matrix::from_fn(id, b.len(), c.len(), |i, j| {
        b[i - 1].mul(&c[j - 1]).expect("uniform instance")
    })
}

/// Vectors `b`, `c` with `A = b * c^T`, when `A` has rank 1.
///
/// The support must be a combinatorial rectangle `R x C`; a pivot entry is
/// then factored through every divisor pair, and the rest of each vector is
/// forced by exact division. Complete because `divisor_pairs` is complete
/// for every instance.
pub fn rank_one_factor(a: &Matrix) -> Result<Option<(Vec<Value>, Vec<Value>)>> {
    if a.is_zero_matrix() {
        return Err(Error::ZeroMatrix);
    }
    let id = a.id();
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<usize> = (1..=m)
        .filter(|&i| (1..=n).any(|j| !a.entry(i, j).is_zero()))
        .collect();
    let cols: Vec<usize> = (1..=n)
        .filter(|&j| !a.entry(rows[0], j).is_zero())
        .collect();
    for &i in &rows {
        for j in 1..=n {
            if a.entry(i, j).is_zero() == cols.contains(&j) {
                return Ok(None); // support is not a rectangle
            }
        }
    }

    let (i0, j0) = (rows[0], cols[0]);
    'pairs: for (d, q) in a.entry(i0, j0).divisor_pairs()? {
        let mut c = vec![id.zero(); n];
        for &j in &cols {
            match a.entry(i0, j).exact_div(&d)? {
                Some(v) => c[j - 1] = v,
                None => continue 'pairs,
            }
        }
        let mut b = vec![id.zero(); m];
        for &i in &rows {
            match a.entry(i, j0).exact_div(&q)? {
                Some(v) => b[i - 1] = v,
                None => continue 'pairs,
            }
        }
        if outer(id, &b, &c)? == *a {
            return Ok(Some((b, c)));
        }
    }
    Ok(None)
}

/// Close a seed column vector against `a`: first the greatest row vector
/// `c` with `seed * c <= a`, then the greatest column vector `b` with
/// `b * c <= a`. The result dominates the seed's outer products, stays
/// dominated by `a`, and is a fixed point of this operation.
pub fn galois_closure(a: &Matrix, seed: &[Value]) -> Result<Rank1Candidate> {
    let id = a.id();
    let (m, n) = (a.rows(), a.cols());
    if seed.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "seed length {} vs {m} rows",
            seed.len()
        )));
    }
    if seed.iter().all(Value::is_zero) {
        return Err(Error::ZeroArgument);
    }

    let mut c = Vec::with_capacity(n);
    for q in 1..=n {
        let mut acc: Option<Value> = None;
        for (p, s) in seed.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let r = a.entry(p + 1, q).residual(s)?;
            acc = Some(match acc {
                None => r,
                Some(cur) => cur.meet(&r)?,
            });
        }
        c.push(acc.unwrap_or_else(|| id.zero()));
    }

    let mut b = Vec::with_capacity(m);
    for p in 1..=m {
        let mut acc: Option<Value> = None;
        for (q, cv) in c.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            let r = a.entry(p, q + 1).residual(cv)?;
            acc = Some(match acc {
                None => r,
                Some(cur) => cur.meet(&r)?,
            });
        }
        b.push(acc.unwrap_or_else(|| id.zero()));
    }

    let product = outer(id, &b, &c)?;
    let tight = product
        .cells()
        .filter(|&cell| product.at(cell) == a.at(cell))
        .collect();
    Ok(Rank1Candidate {
        b,
        c,
        product,
        tight,
    })
}

/// Closed rank-1 summand candidates for `a`: one residuation closure per
/// seed, where the seeds mask each column of `a` with every nonempty subset
/// of rows and additionally scale each masked entry through its divisor
/// pairs (only `MaxTimesN` has more than one choice). Deduplicated; no
/// candidate is the zero matrix; every candidate is dominated by `a`.
pub fn candidate_summands(a: &Matrix) -> Result<Vec<Rank1Candidate>> {
    if a.is_zero_matrix() {
        return Ok(Vec::new());
    }
    let id = a.id();
    let (m, n) = (a.rows(), a.cols());

    let mut seeds: HashSet<Vec<Value>> = HashSet::new();
    for j in 1..=n {
        for mask in 1u32..(1 << m) {
            let rows: Vec<usize> = (0..m)
                .filter(|p| mask & (1 << p) != 0 && !a.entry(p + 1, j).is_zero())
                .collect();
            if rows.is_empty() {
                continue;
            }
            let choices: Vec<Vec<Value>> = rows
                .iter()
                .map(|&p| {
                    Ok(a.entry(p + 1, j)
                        .divisor_pairs()?
                        .into_iter()
                        .map(|(d, _)| d)
                        .collect())
                })
                .collect::<Result<_>>()?;
            let total: usize = choices.iter().map(Vec::len).product();
            if seeds.len().saturating_add(total) > 200_000 {
                return Err(Error::ResourceLimit(
                    "candidate seed family too large".into(),
                ));
            }
            let mut picks = vec![0usize; rows.len()];
            loop {
                let mut seed = vec![id.zero(); m];
                for (slot, &p) in rows.iter().enumerate() {
                    seed[p] = choices[slot][picks[slot]].clone();
                }
                seeds.insert(seed);
                // advance the mixed-radix counter
                let mut slot = 0;
                loop {
                    if slot == rows.len() {
                        break;
                    }
                    picks[slot] += 1;
                    if picks[slot] < choices[slot].len() {
                        break;
                    }
                    picks[slot] = 0;
                    slot += 1;
                }
                if slot == rows.len() {
                    break;
                }
            }
        }
    }

    let mut out: Vec<Rank1Candidate> = Vec::new();
    let mut seen: HashSet<(Vec<Value>, Vec<Value>)> = HashSet::new();
    for seed in seeds {
        let cand = galois_closure(a, &seed)?;
        if cand.product.is_zero_matrix() {
            continue;
        }
        if seen.insert((cand.b.clone(), cand.c.clone())) {
            out.push(cand);
        }
    }
    out.sort_by(|x, y| (&x.b, &x.c).cmp(&(&y.b, &y.c)));
    Ok(out)
}

/// Exact factor rank with a certificate, by iterative-deepening search for
/// a minimum tight cover of the nonzero cells by closed candidates.
pub fn factor_rank(a: &Matrix) -> Result<RankCertificate> {
    let bound = a.rows().min(a.cols());
    match factor_rank_bounded(a, bound)? {
        Some(cert) => Ok(cert),
        None => Err(Error::SearchExhausted(format!(
            "no rank-1 cover of size <= {bound} found; candidate family incomplete for\n{a}"
        ))),
    }
}

/// Like [`factor_rank`] but giving up beyond `k_max` summands.
pub fn factor_rank_bounded(a: &Matrix, k_max: usize) -> Result<Option<RankCertificate>> {
    if !a.id().is_totally_ordered_residuated() {
        return Err(Error::UnsupportedDomain(format!(
            "rank search needs a totally ordered residuated instance, got {}",
            a.id()
        )));
    }
    if a.rows() > MAX_RANK_DIM || a.cols() > MAX_RANK_DIM {
        return Err(Error::ResourceLimit(format!(
            "factor_rank supports at most {MAX_RANK_DIM} rows and columns, got {} x {}",
            a.rows(),
            a.cols()
        )));
    }
    if a.is_zero_matrix() {
        return Ok(Some(RankCertificate {
            k: 0,
            left: None,
            right: None,
        }));
    }

    let candidates = candidate_summands(a)?;
    let targets: Vec<BasisCell> = a.cells().filter(|&c| !a.at(c).is_zero()).collect();
    let full: u64 = if targets.len() == 64 {
        u64::MAX
    } else {
        (1u64 << targets.len()) - 1
    };

    // Tight-cell coverage mask per candidate, restricted to nonzero cells.
    let mut masks: Vec<u64> = Vec::with_capacity(candidates.len());
    for cand in &candidates {
        let mut mask = 0u64;
        for (idx, cell) in targets.iter().enumerate() {
            if cand.tight.contains(cell) {
                mask |= 1 << idx;
            }
        }
        masks.push(mask);
    }
    // A candidate whose coverage is contained in another's can always be
    // swapped out of a cover, so only keep the maximal ones.
    let keep: Vec<usize> = (0..candidates.len())
        .filter(|&i| {
            masks[i] != 0
                && !(0..candidates.len()).any(|j| {
                    j != i
                        && (masks[i] & masks[j] == masks[i])
                        && (masks[j] != masks[i] || j < i)
                })
        })
        .collect();

    fn search(
        masks: &[u64],
        order: &[usize],
        covered: u64,
        full: u64,
        depth: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if covered == full {
            return true;
        }
        if depth == 0 {
            return false;
        }
        // branch on the uncovered cell with the fewest covering candidates
        let mut best_bit = None;
        let mut best_count = usize::MAX;
        let mut bit = 0;
        let mut remaining = full & !covered;
        while remaining != 0 {
            if remaining & 1 != 0 {
                let count = order
                    .iter()
                    .filter(|&&i| masks[i] & (1 << bit) != 0)
                    .count();
                if count < best_count {
                    best_count = count;
                    best_bit = Some(bit);
                }
            }
            remaining >>= 1;
            bit += 1;
        }
        let target_bit = match best_bit {
            Some(b) => b,
            None => return false,
        };
        if best_count == 0 {
            return false;
        }
        for &i in order {
            if masks[i] & (1u64 << target_bit) != 0 {
                chosen.push(i);
                if search(masks, order, covered | masks[i], full, depth - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    for k in 1..=k_max {
        let mut chosen = Vec::new();
        if search(&masks, &keep, 0, full, k, &mut chosen) {
            let id = a.id();
            let picked: Vec<&Rank1Candidate> = chosen.iter().map(|&i| &candidates[i]).collect();
            let left = Matrix::from_fn(id, a.rows(), k, |i, t| picked[t - 1].b[i - 1].clone())?;
            let right = Matrix::from_fn(id, k, a.cols(), |t, j| picked[t - 1].c[j - 1].clone())?;
            let cert = RankCertificate {
                k,
                left: Some(left),
                right: Some(right),
            };
            if !cert.verifies(a) {
                return Err(Error::SearchExhausted(
                    "internal: cover did not reproduce the matrix".into(),
                ));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Independent exact rank, for cross-validation.
///
/// Over `B2` this enumerates every pair of 0/1 factor matrices (as
/// multisets of row-mask/column-mask rectangles). Over the other instances
/// it assigns each nonzero cell to one of `k` prospective summands and
/// decides, per summand, whether a rank-1 matrix dominated by `a` can be
/// exactly tight on the assigned cells: a difference-constraint system for
/// the group instances, divisor propagation for `MaxTimesN`. Neither route
/// shares anything with the closure-based search above.
pub fn factor_rank_oracle(a: &Matrix, k_max: usize) -> Result<Option<usize>> {
    if a.is_zero_matrix() {
        return Ok(Some(0));
    }
    match a.id() {
        SemiringId::B2 => {
            if a.rows() > 3 || a.cols() > 3 {
                return Err(Error::ResourceLimit(
                    "B2 oracle enumeration limited to 3 x 3".into(),
                ));
            }
            oracle_b2(a, k_max)
        }
        _ => {
            if a.rows() > 4 || a.cols() > 4 {
                return Err(Error::ResourceLimit(
                    "partition oracle limited to 4 x 4".into(),
                ));
            }
            oracle_partition(a, k_max)
        }
    }
}

fn oracle_b2(a: &Matrix, k_max: usize) -> Result<Option<usize>> {
    let (m, n) = (a.rows(), a.cols());
    let mut target: u32 = 0;
    for (idx, cell) in a.cells().enumerate() {
        if !a.at(cell).is_zero() {
            target |= 1 << idx;
        }
    }
    // Every product B*C over B2 is a union of rectangles, one per inner
    // index: column mask of B times row mask of C.
    let mut rects: Vec<u32> = Vec::new();
    for rowmask in 0u32..(1 << m) {
        for colmask in 0u32..(1 << n) {
            let mut cells = 0u32;
            for i in 0..m {
                if rowmask & (1 << i) != 0 {
                    for j in 0..n {
                        if colmask & (1 << j) != 0 {
                            cells |= 1 << (i * n + j);
                        }
                    }
                }
            }
            rects.push(cells);
        }
    }
    rects.sort_unstable();
    rects.dedup();

    fn combos(rects: &[u32], k: usize, from: usize, acc: u32, target: u32) -> bool {
        if k == 0 {
            return acc == target;
        }
        for (offset, r) in rects[from..].iter().enumerate() {
            if r | target == target && combos(rects, k - 1, from + offset, acc | r, target) {
                return true;
            }
        }
        false
    }

    for k in 1..=k_max {
        if combos(&rects, k, 0, 0, target) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Can some rank-1 matrix dominated by `a` agree with `a` exactly on every
/// cell of `group`?
fn group_feasible(a: &Matrix, group: &[(usize, usize)]) -> Result<bool> {
    match a.id() {
        SemiringId::MaxTimesN => naturals_feasible(a, group),
        SemiringId::MaxPlusZ | SemiringId::MaxTimesQ => constraints_feasible(a, group),
        SemiringId::B2 => {
            // all-ones on the enclosing rectangle must fit under `a`
            let rows: BTreeSet<usize> = group.iter().map(|&(p, _)| p).collect();
            let cols: BTreeSet<usize> = group.iter().map(|&(_, q)| q).collect();
            for &p in &rows {
                for &q in &cols {
                    if a.entry(p + 1, q + 1).is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Positive-rational encoding for the two group instances: `MaxPlusZ`
/// values map through exponent-free bookkeeping (weights are combined
/// additively), `MaxTimesQ` values are used directly (weights combine
/// multiplicatively).
fn constraints_feasible(a: &Matrix, group: &[(usize, usize)]) -> Result<bool> {
    let multiplicative = a.id() == SemiringId::MaxTimesQ;
    let as_weight = |v: &Value| -> Option<BigRational> {
        match v {
            Value::MaxPlus(MaxPlus::NegInf) => None,
            Value::MaxPlus(MaxPlus::Finite(x)) => Some(BigRational::from(x.clone())),
            Value::MaxTimesQ(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(r.clone())
                }
            }
            _ => unreachable!("group instances only"),
        }
    };
    let ident = if multiplicative {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    let combine = |x: &BigRational, y: &BigRational| {
        if multiplicative {
            x * y
        } else {
            x + y
        }
    };
    let negate = |x: &BigRational| {
        if multiplicative {
            x.recip()
        } else {
            -x
        }
    };

    let rows: Vec<usize> = group
        .iter()
        .map(|&(p, _)| p)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cols: Vec<usize> = group
        .iter()
        .map(|&(_, q)| q)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let node = |p: Option<usize>, q: Option<usize>| -> usize {
        match (p, q) {
            (Some(p), None) => rows.iter().position(|&x| x == p).unwrap(),
            (None, Some(q)) => rows.len() + cols.iter().position(|&x| x == q).unwrap(),
            _ => unreachable!(),
        }
    };
    let size = rows.len() + cols.len();
    let mut dist: Vec<Vec<Option<BigRational>>> = vec![vec![None; size]; size];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(ident.clone());
    }
    let mut relax = |u: usize, v: usize, w: BigRational| {
        let slot = &mut dist[u][v];
        if slot.as_ref().map_or(true, |cur| w < *cur) {
            *slot = Some(w);
        }
    };
    // Unknowns: one potential per row (the `b` part) and per column (the
    // negated `c` part). `b_p * c_q <= a[p][q]` reads `x_p - y_q <= a`,
    // an edge y_q -> x_p of weight a; tight cells add the reverse edge.
    for &p in &rows {
        for &q in &cols {
            let w = match as_weight(a.entry(p + 1, q + 1)) {
                Some(w) => w,
                None => return Ok(false), // zero cell inside the rectangle
            };
            relax(node(None, Some(q)), node(Some(p), None), w.clone());
            if group.contains(&(p, q)) {
                relax(node(Some(p), None), node(None, Some(q)), negate(&w));
            }
        }
    }
    for k in 0..size {
        for i in 0..size {
            let Some(dik) = dist[i][k].clone() else {
                continue;
            };
            for j in 0..size {
                let Some(dkj) = dist[k][j].clone() else {
                    continue;
                };
                let through = combine(&dik, &dkj);
                let slot = &mut dist[i][j];
                if slot.as_ref().map_or(true, |cur| through < *cur) {
                    *slot = Some(through);
                }
            }
        }
    }
    Ok((0..size).all(|i| dist[i][i].as_ref().is_none_or(|d| *d >= ident)))
}

fn naturals_feasible(a: &Matrix, group: &[(usize, usize)]) -> Result<bool> {
    let nat = |v: &Value| -> u64 {
        match v {
            Value::MaxTimesN(x) => x.to_u64().expect("desk-scale entries"),
            _ => unreachable!("naturals only"),
        }
    };
    let rows: Vec<usize> = group
        .iter()
        .map(|&(p, _)| p)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cols: Vec<usize> = group
        .iter()
        .map(|&(_, q)| q)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for &p in &rows {
        for &q in &cols {
            if a.entry(p + 1, q + 1).is_zero() {
                return Ok(false);
            }
        }
    }
    // Enumerate b-row values among common divisors of each row's tight
    // cells and propagate the forced c values.
    let mut row_choices: Vec<Vec<u64>> = Vec::new();
    for &p in &rows {
        let vals: Vec<u64> = group
            .iter()
            .filter(|&&(pp, _)| pp == p)
            .map(|&(_, q)| nat(a.entry(p + 1, q + 1)))
            .collect();
        let bound = *vals.iter().min().unwrap();
        let choices: Vec<u64> = (1..=bound)
            .filter(|d| vals.iter().all(|v| v % d == 0))
            .collect();
        if choices.is_empty() {
            return Ok(false);
        }
        row_choices.push(choices);
    }
    let mut picks = vec![0usize; rows.len()];
    loop {
        let b: Vec<u64> = picks
            .iter()
            .zip(&row_choices)
            .map(|(&i, ch)| ch[i])
            .collect();
        let mut c: Vec<Option<u64>> = vec![None; cols.len()];
        let mut ok = true;
        for &(p, q) in group {
            let pi = rows.iter().position(|&x| x == p).unwrap();
            let qi = cols.iter().position(|&x| x == q).unwrap();
            let v = nat(a.entry(p + 1, q + 1)) / b[pi];
            if b[pi] * v != nat(a.entry(p + 1, q + 1)) || c[qi].is_some_and(|cur| cur != v) {
                ok = false;
                break;
            }
            c[qi] = Some(v);
        }
        if ok {
            'dom: for (pi, &p) in rows.iter().enumerate() {
                for (qi, &q) in cols.iter().enumerate() {
                    if let Some(cv) = c[qi] {
                        if b[pi] * cv > nat(a.entry(p + 1, q + 1)) {
                            ok = false;
                            break 'dom;
                        }
                    }
                }
            }
            if ok {
                return Ok(true);
            }
        }
        let mut slot = 0;
        loop {
            if slot == picks.len() {
                return Ok(false);
            }
            picks[slot] += 1;
            if picks[slot] < row_choices[slot].len() {
                break;
            }
            picks[slot] = 0;
            slot += 1;
        }
    }
}

fn oracle_partition(a: &Matrix, k_max: usize) -> Result<Option<usize>> {
    let cells: Vec<(usize, usize)> = a
        .cells()
        .filter(|&c| !a.at(c).is_zero())
        .map(|c| (c.row - 1, c.col - 1))
        .collect();

    fn assign(
        a: &Matrix,
        cells: &[(usize, usize)],
        idx: usize,
        k: usize,
        groups: &mut Vec<Vec<(usize, usize)>>,
    ) -> Result<bool> {
        if idx == cells.len() {
            return Ok(true);
        }
        let cell = cells[idx];
        for gi in 0..groups.len() {
            groups[gi].push(cell);
            if group_feasible(a, &groups[gi])? && assign(a, cells, idx + 1, k, groups)? {
                return Ok(true);
            }
            groups[gi].pop();
        }
        if groups.len() < k {
            groups.push(vec![cell]);
            if group_feasible(a, groups.last().unwrap())? && assign(a, cells, idx + 1, k, groups)?
            {
                return Ok(true);
            }
            groups.pop();
        }
        Ok(false)
    }

    for k in 1..=k_max {
        let mut groups = Vec::new();
        if assign(a, &cells, 0, k, &mut groups)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{b2, mp, mp_inf, mtn};

    #[test]
    fn rank_one_of_all_ones() {
        let a = b2(vec![vec![1, 1], vec![1, 1]]);
        let (b, c) = rank_one_factor(&a).unwrap().unwrap();
        assert_eq!(b, vec![Value::bit(true), Value::bit(true)]);
        assert_eq!(c, vec![Value::bit(true), Value::bit(true)]);
    }

    #[test]
    fn rank_one_max_plus() {
        let a = mp(vec![vec![0, 1], vec![1, 2]]);
        let (b, c) = rank_one_factor(&a).unwrap().unwrap();
        assert_eq!(outer(SemiringId::MaxPlusZ, &b, &c).unwrap(), a);
    }

    #[test]
    fn rank_one_needs_cross_ratio() {
        // 2 * 4 != 3 * 3 over (N, max, *)
        let a = mtn(vec![vec![2, 3], vec![3, 4]]);
        assert!(rank_one_factor(&a).unwrap().is_none());
        let ok = mtn(vec![vec![4, 6], vec![6, 9]]);
        let (b, c) = rank_one_factor(&ok).unwrap().unwrap();
        assert_eq!(outer(SemiringId::MaxTimesN, &b, &c).unwrap(), ok);
    }

    #[test]
    fn rank_one_rejects_zero() {
        assert!(rank_one_factor(&Matrix::zero(SemiringId::B2, 2, 2).unwrap()).is_err());
    }

    #[test]
    fn closure_examples() {
        let a = b2(vec![vec![1, 1], vec![1, 0]]);
        let cand = galois_closure(&a, &[Value::bit(true), Value::bit(true)]).unwrap();
        assert_eq!(cand.product(), &b2(vec![vec![1, 0], vec![1, 0]]));
        let cand2 = galois_closure(&a, &[Value::bit(true), Value::bit(false)]).unwrap();
        assert_eq!(cand2.product(), &b2(vec![vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn closure_reproduces_rank_one_matrices() {
        let a = mp(vec![vec![0, 1], vec![1, 2]]);
        let (b, _) = rank_one_factor(&a).unwrap().unwrap();
        let cand = galois_closure(&a, &b).unwrap();
        assert_eq!(cand.product(), &a);
    }

    #[test]
    fn candidates_are_dominated_fixed_points() {
        for a in [
            mp(vec![vec![0, 1], vec![1, 0]]),
            mp_inf(vec![vec![Some(2), None], vec![Some(0), Some(1)]]),
            mtn(vec![vec![0, 6, 4], vec![5, 1, 2]]),
            b2(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]),
        ] {
            for cand in candidate_summands(&a).unwrap() {
                assert!(cand.product().dominated_by(&a).unwrap());
                let again = galois_closure(&a, cand.column()).unwrap();
                assert_eq!(again.column(), cand.column());
                assert_eq!(again.row(), cand.row());
            }
        }
    }

    #[test]
    fn candidate_products_for_swap_matrix() {
        let a = mp(vec![vec![0, 1], vec![1, 0]]);
        let products: Vec<Matrix> = candidate_summands(&a)
            .unwrap()
            .iter()
            .map(|c| c.product().clone())
            .collect();
        assert!(products.contains(&mp(vec![vec![0, -1], vec![1, 0]])));
        assert!(products.contains(&mp(vec![vec![0, 1], vec![-1, 0]])));
    }

    #[test]
    fn identity_candidates_over_b2() {
        let a = b2(vec![vec![1, 0], vec![0, 1]]);
        let products: Vec<Matrix> = candidate_summands(&a)
            .unwrap()
            .iter()
            .map(|c| c.product().clone())
            .collect();
        assert_eq!(products.len(), 2);
        assert!(products.contains(&b2(vec![vec![1, 0], vec![0, 0]])));
        assert!(products.contains(&b2(vec![vec![0, 0], vec![0, 1]])));
    }

    #[test]
    fn all_ones_single_candidate() {
        let a = b2(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(candidate_summands(&a).unwrap().len(), 1);
    }

    #[test]
    fn factor_rank_examples() {
        assert_eq!(
            factor_rank(&Matrix::zero(SemiringId::MaxPlusZ, 2, 2).unwrap())
                .unwrap()
                .k(),
            0
        );
        assert_eq!(
            factor_rank(&Matrix::identity(SemiringId::B2, 3).unwrap())
                .unwrap()
                .k(),
            3
        );
        assert_eq!(
            factor_rank(&b2(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]))
                .unwrap()
                .k(),
            3
        );
        assert_eq!(factor_rank(&mp(vec![vec![0, 1], vec![1, 0]])).unwrap().k(), 2);
    }

    #[test]
    fn certificates_multiply_back() {
        for a in [
            mp(vec![vec![0, 1, -2], vec![1, 0, 0], vec![-1, 3, 1]]),
            mtn(vec![vec![0, 6, 4], vec![5, 1, 2]]),
        ] {
            let cert = factor_rank(&a).unwrap();
            assert!(cert.verifies(&a));
            assert_eq!(cert.left().unwrap().cols(), cert.k());
        }
    }

    #[test]
    fn oracle_examples() {
        let i2 = Matrix::identity(SemiringId::B2, 2).unwrap();
        assert_eq!(factor_rank_oracle(&i2, 2).unwrap(), Some(2));
        assert_eq!(factor_rank_oracle(&i2, 1).unwrap(), None);
        let a = mtn(vec![vec![4, 6], vec![6, 9]]);
        assert_eq!(factor_rank_oracle(&a, 1).unwrap(), Some(1));
    }

    #[test]
    fn oracle_agrees_on_all_b2_2x3() {
        for bits in 0u32..(1 << 6) {
            let a = Matrix::from_fn(SemiringId::B2, 2, 3, |i, j| {
                Value::bit(bits & (1 << ((i - 1) * 3 + (j - 1))) != 0)
            })
            .unwrap();
            let fast = factor_rank(&a).unwrap().k();
            let slow = factor_rank_oracle(&a, 2).unwrap().unwrap();
            assert_eq!(fast, slow, "disagreement on {a}");
        }
    }

    #[test]
    fn divisor_scaled_seeds_matter_over_naturals() {
        // The row summand (5,1,2) needs a seed scaled down to the unit.
        let a = mtn(vec![vec![0, 6, 4], vec![5, 1, 2]]);
        assert_eq!(factor_rank(&a).unwrap().k(), 2);
        assert_eq!(factor_rank_oracle(&a, 2).unwrap(), Some(2));
    }

    #[test]
    fn rank_respects_transpose() {
        for a in [
            mp(vec![vec![0, 1, 2], vec![1, 0, -3]]),
            mtn(vec![vec![3, 2], vec![3, 0], vec![3, 5]]),
            b2(vec![vec![1, 1, 0], vec![0, 1, 1]]),
        ] {
            assert_eq!(
                factor_rank(&a).unwrap().k(),
                factor_rank(&a.transpose()).unwrap().k()
            );
        }
    }

    #[test]
    fn rank_subadditive() {
        let a = mp(vec![vec![0, 1], vec![1, 0]]);
        let b = mp(vec![vec![2, 2], vec![-1, 0]]);
        let sum = a.add(&b).unwrap();
        assert!(
            factor_rank(&sum).unwrap().k()
                <= factor_rank(&a).unwrap().k() + factor_rank(&b).unwrap().k()
        );
    }

    #[test]
    fn bounded_search_gives_up_cleanly() {
        let i3 = Matrix::identity(SemiringId::B2, 3).unwrap();
        assert!(factor_rank_bounded(&i3, 2).unwrap().is_none());
    }
}
