//! The scalar layer: four additively idempotent, multiplicatively
//! cancellative semirings with exact arithmetic.
//!
//! Addition is idempotent (`a + a = a`), which makes the *natural order*
//! `a <= b iff a + b = b` a partial order; on all four built-in instances it
//! is total, so addition is simply the maximum. Multiplication is
//! cancellative on nonzero elements, zero is absorbing, and each instance is
//! zerosumfree and additively unit irreducible. The instances:
//!
//! * `B2` — the two-element Boolean semiring `({0,1}, or, and)`.
//! * `MaxPlusZ` — integers with `-inf`, `(Z ∪ {-inf}, max, +)`.
//! * `MaxTimesQ` — nonnegative rationals, `(Q+, max, ·)`.
//! * `MaxTimesN` — nonnegative integers, `(N, max, ·)`.
//!
//! All payloads are exact (bits, big integers, big rationals); equality and
//! order are decidable, which the rank and operator machinery depends on.

use std::fmt;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Tag identifying one of the built-in semiring instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SemiringId {
    B2,
    MaxPlusZ,
    MaxTimesQ,
    MaxTimesN,
}

impl SemiringId {
    /// Token used in file headers and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            SemiringId::B2 => "b2",
            SemiringId::MaxPlusZ => "maxplus",
            SemiringId::MaxTimesQ => "maxtimes-q",
            SemiringId::MaxTimesN => "maxtimes-n",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "b2" => Some(SemiringId::B2),
            "maxplus" => Some(SemiringId::MaxPlusZ),
            "maxtimes-q" => Some(SemiringId::MaxTimesQ),
            "maxtimes-n" => Some(SemiringId::MaxTimesN),
            _ => None,
        }
    }

    pub fn all() -> [SemiringId; 4] {
        [
            SemiringId::B2,
            SemiringId::MaxPlusZ,
            SemiringId::MaxTimesQ,
            SemiringId::MaxTimesN,
        ]
    }

    /// The additive identity of this instance.
    pub fn zero(self) -> Value {
        match self {
            SemiringId::B2 => Value::B2(false),
            SemiringId::MaxPlusZ => Value::MaxPlus(MaxPlus::NegInf),
            SemiringId::MaxTimesQ => Value::MaxTimesQ(BigRational::zero()),
            SemiringId::MaxTimesN => Value::MaxTimesN(BigUint::zero()),
        }
    }

    /// The multiplicative identity of this instance.
    pub fn one(self) -> Value {
        match self {
            SemiringId::B2 => Value::B2(true),
            SemiringId::MaxPlusZ => Value::MaxPlus(MaxPlus::Finite(BigInt::zero())),
            SemiringId::MaxTimesQ => Value::MaxTimesQ(BigRational::one()),
            SemiringId::MaxTimesN => Value::MaxTimesN(BigUint::one()),
        }
    }

    /// Whether the instance is totally ordered by the natural order and
    /// residuated. The span, basis, and rank algorithms require this and
    /// check it at entry; all four built-in instances qualify.
    pub fn is_totally_ordered_residuated(self) -> bool {
        true
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Integer extended with a bottom element `-inf`, the zero of `MaxPlusZ`.
///
/// The variant order puts `NegInf` below every finite value, so the derived
/// `Ord` agrees with the natural order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaxPlus {
    NegInf,
    Finite(BigInt),
}

/// One exact scalar of a chosen semiring instance.
///
/// The derived `Ord` compares payloads within an instance (where it agrees
/// with the natural order) and by instance tag across instances; the latter
/// is only meaningful for canonical sorting. Use [`Value::leq`] for the
/// natural order, which rejects mixed instances.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    B2(bool),
    MaxPlus(MaxPlus),
    MaxTimesQ(BigRational),
    MaxTimesN(BigUint),
}

impl Value {
    pub fn bit(v: bool) -> Self {
        Value::B2(v)
    }

    /// Finite max-plus integer.
    pub fn int(v: i64) -> Self {
        Value::MaxPlus(MaxPlus::Finite(BigInt::from(v)))
    }

    /// The max-plus bottom element.
    pub fn neg_inf() -> Self {
        Value::MaxPlus(MaxPlus::NegInf)
    }

    pub fn nat(v: u64) -> Self {
        Value::MaxTimesN(BigUint::from(v))
    }

    /// Nonnegative rational `num/den`.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(Value::MaxTimesQ(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn id(&self) -> SemiringId {
        match self {
            Value::B2(_) => SemiringId::B2,
            Value::MaxPlus(_) => SemiringId::MaxPlusZ,
            Value::MaxTimesQ(_) => SemiringId::MaxTimesQ,
            Value::MaxTimesN(_) => SemiringId::MaxTimesN,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == self.id().zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.id().one()
    }

    fn require_same(&self, other: &Self) -> Result<()> {
        if self.id() == other.id() {
            Ok(())
        } else {
            Err(Error::SemiringMismatch {
                left: self.id(),
                right: other.id(),
            })
        }
    }

    /// Idempotent addition; equals the natural-order maximum on every
    /// built-in instance.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        Ok(if self >= other {
            self.clone()
        } else {
            other.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (Value::B2(a), Value::B2(b)) => Value::B2(*a && *b),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => match (a, b) {
                (MaxPlus::NegInf, _) | (_, MaxPlus::NegInf) => Value::MaxPlus(MaxPlus::NegInf),
                (MaxPlus::Finite(x), MaxPlus::Finite(y)) => {
                    Value::MaxPlus(MaxPlus::Finite(x + y))
                }
            },
            (Value::MaxTimesQ(a), Value::MaxTimesQ(b)) => Value::MaxTimesQ(a * b),
            (Value::MaxTimesN(a), Value::MaxTimesN(b)) => Value::MaxTimesN(a * b),
            _ => unreachable!("instance checked above"),
        })
    }

    /// The natural order `a <= b iff a + b = b`; total on every instance.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.require_same(other)?;
        Ok(self <= other)
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Value::B2(v) => *v,
            Value::MaxPlus(v) => !matches!(v, MaxPlus::NegInf),
            Value::MaxTimesQ(v) => !v.is_zero(),
            Value::MaxTimesN(v) => v.is_one(),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(match self {
            Value::B2(_) => Value::B2(true),
            Value::MaxPlus(MaxPlus::Finite(v)) => Value::MaxPlus(MaxPlus::Finite(-v)),
            Value::MaxTimesQ(v) => Value::MaxTimesQ(v.recip()),
            Value::MaxTimesN(_) => Value::MaxTimesN(BigUint::one()),
            Value::MaxPlus(MaxPlus::NegInf) => unreachable!("not a unit"),
        })
    }

    /// The greatest `x` with `x * b <= a` (here `self = a`, `b` nonzero).
    pub fn residual(&self, b: &Self) -> Result<Self> {
        self.require_same(b)?;
        if b.is_zero() {
            return Err(Error::ResidualByZero);
        }
        Ok(match (self, b) {
            // b = 1 is the only nonzero B2 element: greatest x with x <= a.
            (Value::B2(a), Value::B2(_)) => Value::B2(*a),
            (Value::MaxPlus(a), Value::MaxPlus(MaxPlus::Finite(bv))) => match a {
                MaxPlus::NegInf => Value::MaxPlus(MaxPlus::NegInf),
                MaxPlus::Finite(av) => Value::MaxPlus(MaxPlus::Finite(av - bv)),
            },
            (Value::MaxTimesQ(a), Value::MaxTimesQ(bv)) => Value::MaxTimesQ(a / bv),
            (Value::MaxTimesN(a), Value::MaxTimesN(bv)) => Value::MaxTimesN(a / bv),
            _ => unreachable!("instance checked above"),
        })
    }

    /// All factorizations `self = d * q`, complete up to the instance's
    /// structure: every divisor pair over `MaxTimesN`, the single normalized
    /// pair `(self, 1)` where every nonzero element is a unit, and `(1, 1)`
    /// over `B2`.
    pub fn divisor_pairs(&self) -> Result<Vec<(Value, Value)>> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        match self {
            Value::B2(_) => Ok(vec![(Value::B2(true), Value::B2(true))]),
            Value::MaxPlus(_) | Value::MaxTimesQ(_) => {
                Ok(vec![(self.clone(), self.id().one())])
            }
            Value::MaxTimesN(a) => {
                let a64 = a.to_u64().ok_or_else(|| {
                    Error::ResourceLimit(format!("divisor enumeration for {a} too large"))
                })?;
                if a64 > 10_000_000 {
                    return Err(Error::ResourceLimit(format!(
                        "divisor enumeration for {a64} too large"
                    )));
                }
                let mut divs = Vec::new();
                let mut d = 1u64;
                while d * d <= a64 {
                    if a64 % d == 0 {
                        divs.push(d);
                        if d != a64 / d {
                            divs.push(a64 / d);
                        }
                    }
                    d += 1;
                }
                divs.sort_unstable();
                Ok(divs
                    .into_iter()
                    .map(|d| (Value::nat(d), Value::nat(a64 / d)))
                    .collect())
            }
        }
    }

    /// The unique `x` with `d * x = self` if one exists (`d` nonzero);
    /// uniqueness comes from cancellativity.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Value>> {
        let x = self.residual(d)?;
        Ok(if d.mul(&x)? == *self { Some(x) } else { None })
    }

    /// Natural-order minimum of two same-instance values.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        Ok(if self <= other {
            self.clone()
        } else {
            other.clone()
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::B2(v) => write!(f, "{}", if *v { 1 } else { 0 }),
            Value::MaxPlus(MaxPlus::NegInf) => f.write_str("-inf"),
            Value::MaxPlus(MaxPlus::Finite(v)) => write!(f, "{v}"),
            Value::MaxTimesQ(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Value::MaxTimesN(v) => write!(f, "{v}"),
        }
    }
}

/// Parse a single value token of the given instance. Tokens: `0`/`1` for
/// `B2`; a decimal integer or `-inf` for `MaxPlusZ`; a nonnegative `p/q` or
/// integer for `MaxTimesQ`; a nonnegative integer for `MaxTimesN`.
pub fn parse_value(id: SemiringId, token: &str) -> Result<Value> {
    let bad = |msg: String| Error::Parse {
        line: 0,
        col: 0,
        msg,
    };
    match id {
        SemiringId::B2 => match token {
            "0" => Ok(Value::B2(false)),
            "1" => Ok(Value::B2(true)),
            _ => Err(bad(format!("expected 0 or 1, got `{token}`"))),
        },
        SemiringId::MaxPlusZ => {
            if token == "-inf" {
                Ok(Value::neg_inf())
            } else {
                token
                    .parse::<BigInt>()
                    .map(|v| Value::MaxPlus(MaxPlus::Finite(v)))
                    .map_err(|_| bad(format!("expected integer or -inf, got `{token}`")))
            }
        }
        SemiringId::MaxTimesQ => {
            let (num, den) = match token.split_once('/') {
                Some((n, d)) => (n, d),
                None => (token, "1"),
            };
            let n = num
                .parse::<BigInt>()
                .map_err(|_| bad(format!("expected rational, got `{token}`")))?;
            let d = den
                .parse::<BigInt>()
                .map_err(|_| bad(format!("expected rational, got `{token}`")))?;
            if d.is_zero() {
                return Err(bad(format!("zero denominator in `{token}`")));
            }
            let r = BigRational::new(n, d);
            if r < BigRational::zero() {
                return Err(bad(format!("negative value `{token}` not in carrier")));
            }
            Ok(Value::MaxTimesQ(r))
        }
        SemiringId::MaxTimesN => token
            .parse::<BigUint>()
            .map(Value::MaxTimesN)
            .map_err(|_| bad(format!("expected nonnegative integer, got `{token}`"))),
    }
}

/// Outcome of checking one axiom over all tuples from a sample.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-axiom pass/fail report for a semiring instance on a finite sample.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub semiring: SemiringId,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axioms for {}", self.semiring)?;
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(f, "  {:<28} {:>8} cases  {}", c.name, c.cases, status)?;
            for failure in &c.failures {
                writeln!(f, "    counterexample: {failure}")?;
            }
        }
        Ok(())
    }
}

/// The sample each instance is checked on by default. `B2` gets its whole
/// carrier; the infinite instances get small windows that exercise zero,
/// one, units, and non-units.
pub fn default_sample(id: SemiringId) -> Vec<Value> {
    match id {
        SemiringId::B2 => vec![Value::B2(false), Value::B2(true)],
        SemiringId::MaxPlusZ => vec![
            Value::neg_inf(),
            Value::int(-2),
            Value::int(0),
            Value::int(1),
            Value::int(3),
        ],
        SemiringId::MaxTimesQ => vec![
            Value::ratio(0, 1).unwrap(),
            Value::ratio(1, 3).unwrap(),
            Value::ratio(1, 2).unwrap(),
            Value::ratio(1, 1).unwrap(),
            Value::ratio(2, 1).unwrap(),
            Value::ratio(5, 2).unwrap(),
        ],
        SemiringId::MaxTimesN => vec![
            Value::nat(0),
            Value::nat(1),
            Value::nat(2),
            Value::nat(3),
            Value::nat(4),
            Value::nat(6),
        ],
    }
}

/// Check every semiring axiom on all tuples drawn from `sample`, which is
/// extended with `zero` and `one` when missing so the identity, absorption,
/// and zerosumfree checks have something to bite on.
pub fn check_axioms(id: SemiringId, sample: &[Value]) -> Result<AxiomReport> {
    if sample.is_empty() {
        return Err(Error::ZeroArgument);
    }
    let mut elems: Vec<Value> = Vec::new();
    for v in sample {
        if v.id() != id {
            return Err(Error::SemiringMismatch {
                left: id,
                right: v.id(),
            });
        }
        if !elems.contains(v) {
            elems.push(v.clone());
        }
    }
    for special in [id.zero(), id.one()] {
        if !elems.contains(&special) {
            elems.push(special);
        }
    }

    let mut checks = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut(&mut AxiomCheck) -> Result<()>| {
        let mut check = AxiomCheck {
            name,
            cases: 0,
            failures: Vec::new(),
        };
        f(&mut check).map(|()| checks.push(check))
    };

    run("additive idempotency", &mut |c| {
        for a in &elems {
            c.cases += 1;
            if a.add(a)? != *a {
                c.failures.push(format!("a={a}"));
            }
        }
        Ok(())
    })?;
    run("additive commutativity", &mut |c| {
        for a in &elems {
            for b in &elems {
                c.cases += 1;
                if a.add(b)? != b.add(a)? {
                    c.failures.push(format!("a={a}, b={b}"));
                }
            }
        }
        Ok(())
    })?;
    run("additive associativity", &mut |c| {
        for a in &elems {
            for b in &elems {
                for d in &elems {
                    c.cases += 1;
                    if a.add(b)?.add(d)? != a.add(&b.add(d)?)? {
                        c.failures.push(format!("a={a}, b={b}, c={d}"));
                    }
                }
            }
        }
        Ok(())
    })?;
    run("multiplicative commutativity", &mut |c| {
        for a in &elems {
            for b in &elems {
                c.cases += 1;
                if a.mul(b)? != b.mul(a)? {
                    c.failures.push(format!("a={a}, b={b}"));
                }
            }
        }
        Ok(())
    })?;
    run("multiplicative associativity", &mut |c| {
        for a in &elems {
            for b in &elems {
                for d in &elems {
                    c.cases += 1;
                    if a.mul(b)?.mul(d)? != a.mul(&b.mul(d)?)? {
                        c.failures.push(format!("a={a}, b={b}, c={d}"));
                    }
                }
            }
        }
        Ok(())
    })?;
    run("identities", &mut |c| {
        let (zero, one) = (id.zero(), id.one());
        for a in &elems {
            c.cases += 1;
            if a.add(&zero)? != *a || a.mul(&one)? != *a {
                c.failures.push(format!("a={a}"));
            }
        }
        Ok(())
    })?;
    run("distributivity", &mut |c| {
        for a in &elems {
            for b in &elems {
                for d in &elems {
                    c.cases += 1;
                    if a.mul(&b.add(d)?)? != a.mul(b)?.add(&a.mul(d)?)? {
                        c.failures.push(format!("a={a}, b={b}, c={d}"));
                    }
                }
            }
        }
        Ok(())
    })?;
    run("absorption", &mut |c| {
        let zero = id.zero();
        for a in &elems {
            c.cases += 1;
            if a.mul(&zero)? != zero {
                c.failures.push(format!("a={a}"));
            }
        }
        Ok(())
    })?;
    run("zerosumfree", &mut |c| {
        for a in &elems {
            for b in &elems {
                c.cases += 1;
                if a.add(b)?.is_zero() && !(a.is_zero() && b.is_zero()) {
                    c.failures.push(format!("a={a}, b={b}"));
                }
            }
        }
        Ok(())
    })?;
    run("cancellativity", &mut |c| {
        for a in elems.iter().filter(|a| !a.is_zero()) {
            for b in &elems {
                for d in &elems {
                    c.cases += 1;
                    if b.mul(a)? == d.mul(a)? && b != d {
                        c.failures.push(format!("a={a}, b={b}, c={d}"));
                    }
                }
            }
        }
        Ok(())
    })?;
    run("additive unit irreducibility", &mut |c| {
        for a in &elems {
            for b in &elems {
                c.cases += 1;
                if a.add(b)?.is_unit() && !a.is_unit() && !b.is_unit() {
                    c.failures.push(format!("a={a}, b={b}"));
                }
            }
        }
        Ok(())
    })?;
    run("natural order totality", &mut |c| {
        for a in &elems {
            for b in &elems {
                c.cases += 1;
                if !a.leq(b)? && !b.leq(a)? {
                    c.failures.push(format!("a={a}, b={b}"));
                }
            }
        }
        Ok(())
    })?;

    Ok(AxiomReport {
        semiring: id,
        checks,
    })
}
