//! Span membership, linear independence, basis extraction, and dimension
//! for finitely generated subsemimodules of the matrix semimodule.
//!
//! Membership uses the principal (residuation) solution: because addition
//! is the natural-order maximum, any feasible coefficient vector is
//! dominated by the principal one, so `x` lies in the span of `G` exactly
//! when the principal combination reproduces `x`. Bases are unique up to
//! unit scaling and a bijection, which [`basis_correspondence`] computes.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{SemiringId, Value};

/// A finite list of same-shaped generators. The input list must be
/// nonempty; derived bases may be empty (the zero semimodule).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    id: SemiringId,
    rows: usize,
    cols: usize,
    gens: Vec<Matrix>,
}

impl GeneratingSet {
    pub fn new(gens: Vec<Matrix>) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty generating set".into()))?;
        let (id, rows, cols) = (first.id(), first.rows(), first.cols());
        for g in &gens {
            if g.id() != id {
                return Err(Error::SemiringMismatch {
                    left: id,
                    right: g.id(),
                });
            }
            if g.rows() != rows || g.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "{} x {} vs {} x {}",
                    rows,
                    cols,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(GeneratingSet {
            id,
            rows,
            cols,
            gens,
        })
    }

    fn from_parts(id: SemiringId, rows: usize, cols: usize, gens: Vec<Matrix>) -> Self {
        GeneratingSet {
            id,
            rows,
            cols,
            gens,
        }
    }

    pub fn id(&self) -> SemiringId {
        self.id
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn members(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    fn require_shape(&self, x: &Matrix) -> Result<()> {
        if x.id() != self.id {
            return Err(Error::SemiringMismatch {
                left: self.id,
                right: x.id(),
            });
        }
        if x.rows() != self.rows || x.cols() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} x {} vs {} x {}",
                self.rows,
                self.cols,
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The greatest scalar `lambda` with `lambda * g <= x`, or `None` when `g`
/// is the zero matrix (no constraint; such generators contribute nothing).
pub fn principal_coefficient(x: &Matrix, g: &Matrix) -> Result<Option<Value>> {
    if x.id() != g.id() || x.rows() != g.rows() || x.cols() != g.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{} x {} vs {} x {}",
            x.rows(),
            x.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let mut lambda: Option<Value> = None;
    for cell in g.cells() {
        let gv = g.at(cell);
        if gv.is_zero() {
            continue;
        }
        let r = x.at(cell).residual(gv)?;
        lambda = Some(match lambda {
            None => r,
            Some(cur) => cur.meet(&r)?,
        });
    }
    Ok(lambda)
}

/// Result of a span-membership query: the principal coefficients and
/// whether their combination reproduces the target.
#[derive(Clone, Debug)]
pub struct Membership {
    pub is_member: bool,
    pub coefficients: Vec<Value>,
}

/// Decide whether `x` is a linear combination of the generators. Sound and
/// complete over the built-in instances because they are totally ordered
/// and residuated: the principal coefficients dominate every feasible
/// choice, so they witness membership whenever any coefficients do.
pub fn in_span(x: &Matrix, gens: &GeneratingSet) -> Result<Membership> {
    if !gens.id().is_totally_ordered_residuated() {
        return Err(Error::UnsupportedDomain(format!(
            "span membership needs a totally ordered residuated instance, got {}",
            gens.id()
        )));
    }
    gens.require_shape(x)?;
    let mut coeffs = Vec::with_capacity(gens.len());
    let mut sum = Matrix::zero(gens.id(), gens.rows(), gens.cols())?;
    for g in gens.members() {
        let lambda = principal_coefficient(x, g)?.unwrap_or_else(|| gens.id().zero());
        if !lambda.is_zero() {
            sum = sum.add(&g.scale(&lambda)?)?;
        }
        coeffs.push(lambda);
    }
    Ok(Membership {
        is_member: sum == *x,
        coefficients: coeffs,
    })
}

/// A set is dependent when some member lies in the span of the others; a
/// set containing the zero matrix is always dependent.
pub fn is_independent(gens: &GeneratingSet) -> Result<bool> {
    if gens.members().iter().any(Matrix::is_zero_matrix) {
        return Ok(false);
    }
    for (i, x) in gens.members().iter().enumerate() {
        let others: Vec<Matrix> = gens
            .members()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        let rest = GeneratingSet::from_parts(gens.id(), gens.rows(), gens.cols(), others);
        if in_span(x, &rest)?.is_member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The scalar `alpha` with `y = alpha * x`, if one exists (`x` nonzero);
/// unique by cancellativity.
fn scaling_of(y: &Matrix, x: &Matrix) -> Result<Option<Value>> {
    let pivot = match x.cells().find(|c| !x.at(*c).is_zero()) {
        Some(c) => c,
        None => return Err(Error::ZeroMatrix),
    };
    let alpha = match y.at(pivot).exact_div(x.at(pivot))? {
        Some(a) => a,
        None => return Ok(None),
    };
    Ok(if x.scale(&alpha)? == *y {
        Some(alpha)
    } else {
        None
    })
}

/// Greedily shrink `gens` to an independent set spanning the same
/// semimodule. Zero matrices are dropped, unit multiples collapse onto the
/// earliest representative, and remaining members are removed whenever they
/// lie in the span of the rest. The result is canonical up to unit scaling
/// regardless of input order.
pub fn extract_basis(gens: &GeneratingSet) -> Result<GeneratingSet> {
    let mut kept: Vec<Matrix> = Vec::new();
    'outer: for g in gens.members() {
        if g.is_zero_matrix() {
            continue;
        }
        for k in &kept {
            if let Some(alpha) = scaling_of(g, k)? {
                if alpha.is_unit() {
                    continue 'outer;
                }
            }
        }
        kept.push(g.clone());
    }

    let mut idx = 0;
    while idx < kept.len() {
        let others: Vec<Matrix> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let member = if others.is_empty() {
            false
        } else {
            let rest = GeneratingSet::from_parts(gens.id(), gens.rows(), gens.cols(), others);
            in_span(&kept[idx], &rest)?.is_member
        };
        if member {
            kept.remove(idx);
        } else {
            idx += 1;
        }
    }
    Ok(GeneratingSet::from_parts(
        gens.id(),
        gens.rows(),
        gens.cols(),
        kept,
    ))
}

/// Size of an extracted basis; well defined because any two bases of the
/// same finitely generated semimodule have equal cardinality.
pub fn dimension(gens: &GeneratingSet) -> Result<usize> {
    Ok(extract_basis(gens)?.len())
}

/// The bijection pairing each element of one basis with its unique unit
/// multiple in the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCorrespondence {
    /// `(index into b1, index into b2, unit alpha)` with
    /// `b2[j] = alpha * b1[i]`.
    pub pairs: Vec<(usize, usize, Value)>,
}

/// Pair every element of `b1` with its unique unit multiple in `b2`.
/// Fails when the pairing does not exist or is not a bijection, which
/// signals that the inputs were not two bases of the same semimodule.
pub fn basis_correspondence(b1: &GeneratingSet, b2: &GeneratingSet) -> Result<BasisCorrespondence> {
    if b1.len() != b2.len() {
        return Err(Error::NoCorrespondence(format!(
            "sizes differ: {} vs {}",
            b1.len(),
            b2.len()
        )));
    }
    let mut used = vec![false; b2.len()];
    let mut pairs = Vec::with_capacity(b1.len());
    for (i, x) in b1.members().iter().enumerate() {
        let mut found: Option<(usize, Value)> = None;
        for (j, y) in b2.members().iter().enumerate() {
            if let Some(alpha) = scaling_of(y, x)? {
                if alpha.is_unit() {
                    if found.is_some() {
                        return Err(Error::NoCorrespondence(format!(
                            "element {i} has two unit multiples"
                        )));
                    }
                    found = Some((j, alpha));
                }
            }
        }
        let (j, alpha) =
            found.ok_or_else(|| Error::NoCorrespondence(format!("element {i} unmatched")))?;
        if used[j] {
            return Err(Error::NoCorrespondence(format!(
                "element {j} of the second basis matched twice"
            )));
        }
        used[j] = true;
        pairs.push((i, j, alpha));
    }
    Ok(BasisCorrespondence { pairs })
}
