use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, RECIPROCAL_TOL};

/// Tolerance for comparisons between reciprocal exponents and regularities.
pub const CONDITION_TOL: f64 = 1e-12;

/// Leibniz exponent tuple `(s, p1, q1, p2, q2, r)` in dimension `d`, with
/// `1/r = 1/p_j + 1/q_j` for `j = 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentTuple {
    pub s: f64,
    pub p1: Exponent,
    pub q1: Exponent,
    pub p2: Exponent,
    pub q2: Exponent,
    pub r: Exponent,
    pub dim: usize,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::config(format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    Ok(())
}

fn check_order(s: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("order s must be positive and finite, got {s}")));
    }
    Ok(())
}

impl ExponentTuple {
    pub fn new(s: f64, p1: Exponent, q1: Exponent, p2: Exponent, q2: Exponent, r: Exponent, dim: usize) -> Result<Self> {
        check_order(s)?;
        check_dim(dim)?;
        for (name, e) in [("p1", p1), ("q1", q1), ("p2", p2), ("q2", q2)] {
            if e.recip() > 1.0 + RECIPROCAL_TOL {
                return Err(Error::domain(format!("{name} = {e} is below 1")));
            }
        }
        if r.recip() > 2.0 + RECIPROCAL_TOL {
            return Err(Error::domain(format!("r = {r} is below 1/2")));
        }
        for (j, p, q) in [(1, p1, q1), (2, p2, q2)] {
            if (r.recip() - p.recip() - q.recip()).abs() > RECIPROCAL_TOL {
                return Err(Error::domain(format!(
                    "Hölder relation 1/r = 1/p{j} + 1/q{j} fails: 1/{r} vs 1/{p} + 1/{q}"
                )));
            }
        }
        Ok(ExponentTuple { s, p1, q1, p2, q2, r, dim })
    }

    /// `p1 = p2 = p`, `q1 = q2 = q`.
    pub fn uniform(s: f64, p: Exponent, q: Exponent, r: Exponent, dim: usize) -> Result<Self> {
        Self::new(s, p, q, p, q, r, dim)
    }

    /// `d/r - d`.
    pub fn threshold(&self) -> f64 {
        self.dim as f64 * (self.r.recip() - 1.0)
    }

    /// `p1 = q2` and `q1 = p2`, so swapping `f` and `g` preserves the bound.
    pub fn is_symmetric(&self) -> bool {
        self.p1.approx_eq(self.q2) && self.q1.approx_eq(self.p2)
    }

    pub fn with_order(&self, s: f64) -> Result<Self> {
        Self::new(s, self.p1, self.q1, self.p2, self.q2, self.r, self.dim)
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={},p1={},q1={},p2={},q2={},r={},d={}",
            self.s, self.p1, self.q1, self.p2, self.q2, self.r, self.dim
        )
    }
}

type Pairs = Vec<(String, String)>;

fn parse_pairs(text: &str) -> Result<Pairs> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{t}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn take<T: FromStr>(pairs: &mut Pairs, key: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    match pairs.iter().position(|(k, _)| k == key) {
        Some(i) => {
            let (_, v) = pairs.remove(i);
            v.parse::<T>()
                .map(Some)
                .map_err(|e| Error::Parse(format!("bad value '{v}' for {key}: {e}")))
        }
        None => Ok(None),
    }
}

fn required<T: FromStr>(pairs: &mut Pairs, key: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    take(pairs, key)?.ok_or_else(|| Error::Parse(format!("missing key '{key}'")))
}

fn reject_leftovers(pairs: &Pairs) -> Result<()> {
    match pairs.first() {
        Some((k, _)) => Err(Error::Parse(format!("unknown key '{k}'"))),
        None => Ok(()),
    }
}

/// Parses `s=1,p1=4,q1=4,p2=4,q2=4,r=2[,d=1]`; `p=..,q=..` fill both pairs.
impl FromStr for ExponentTuple {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = parse_pairs(text)?;
        let s: f64 = required(&mut pairs, "s")?;
        let r: Exponent = required(&mut pairs, "r")?;
        let dim: usize = take(&mut pairs, "d")?.unwrap_or(1);
        let p: Option<Exponent> = take(&mut pairs, "p")?;
        let q: Option<Exponent> = take(&mut pairs, "q")?;
        let p1 = take(&mut pairs, "p1")?.or(p);
        let q1 = take(&mut pairs, "q1")?.or(q);
        let p2 = take(&mut pairs, "p2")?.or(p);
        let q2 = take(&mut pairs, "q2")?.or(q);
        reject_leftovers(&pairs)?;
        let get = |v: Option<Exponent>, name: &str| v.ok_or_else(|| Error::Parse(format!("missing key '{name}'")));
        ExponentTuple::new(s, get(p1, "p1")?, get(q1, "q1")?, get(p2, "p2")?, get(q2, "q2")?, r, dim)
    }
}

/// Product-estimate exponents `(s, p, q, r)` in dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductTuple {
    pub s: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub dim: usize,
}

impl ProductTuple {
    pub fn new(s: f64, p: Exponent, q: Exponent, r: Exponent, dim: usize) -> Result<Self> {
        check_order(s)?;
        check_dim(dim)?;
        for (name, e) in [("p", p), ("q", q), ("r", r)] {
            if e.recip() > 1.0 + RECIPROCAL_TOL {
                return Err(Error::domain(format!("{name} = {e} is below 1")));
            }
        }
        Ok(ProductTuple { s, p, q, r, dim })
    }
}

impl fmt::Display for ProductTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={},p={},q={},r={},d={}", self.s, self.p, self.q, self.r, self.dim)
    }
}

/// Parses `s=0.5,p=inf,q=2,r=2[,d=1]`.
impl FromStr for ProductTuple {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = parse_pairs(text)?;
        let s = required(&mut pairs, "s")?;
        let p = required(&mut pairs, "p")?;
        let q = required(&mut pairs, "q")?;
        let r = required(&mut pairs, "r")?;
        let dim = take(&mut pairs, "d")?.unwrap_or(1);
        reject_leftovers(&pairs)?;
        ProductTuple::new(s, p, q, r, dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Manifold {
    Torus,
    Euclidean,
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Manifold::Torus => "torus",
            Manifold::Euclidean => "euclidean",
        })
    }
}

impl FromStr for Manifold {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "torus" => Ok(Manifold::Torus),
            "euclidean" | "r" | "rd" => Ok(Manifold::Euclidean),
            other => Err(Error::Parse(format!("unknown manifold '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    Rejected,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        *self != Verdict::Rejected
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CaseI => "case_i",
            Verdict::CaseII => "case_ii",
            Verdict::CaseIII => "case_iii",
            Verdict::CaseIV => "case_iv",
            Verdict::Rejected => "rejected",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "case_i" => Ok(Verdict::CaseI),
            "case_ii" => Ok(Verdict::CaseII),
            "case_iii" => Ok(Verdict::CaseIII),
            "case_iv" => Ok(Verdict::CaseIV),
            "rejected" => Ok(Verdict::Rejected),
            other => Err(Error::Parse(format!("unknown verdict '{other}'"))),
        }
    }
}

/// One named condition together with whether it holds.
#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub name: &'static str,
    pub satisfied: bool,
    pub detail: String,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.satisfied { "ok" } else { "violated" };
        write!(f, "{} [{}]: {}", self.name, mark, self.detail)
    }
}

fn clause(name: &'static str, satisfied: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name,
        satisfied,
        detail: detail.into(),
    }
}

/// Auxiliary exponents `(q̃, r̃')` of the duality argument, fixed by
/// `1/p' = 1/q + 1/r̃' = 1/q̃ + 1/r'`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witnesses {
    pub q_tilde: Exponent,
    pub r_tilde_dual: Exponent,
    /// Slack of `s/d ≥ 1/q - 1/q̃` and `s/d ≥ 1/r' - 1/r̃'`.
    pub sobolev_slack: [f64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCase {
    pub verdict: Verdict,
    /// On acceptance, the clauses of the matched case (all satisfied);
    /// otherwise every clause that was evaluated.
    pub reasons: Vec<Clause>,
    /// `d/r - d` for Leibniz tuples.
    pub threshold: Option<f64>,
    pub witnesses: Option<Witnesses>,
}

impl ConditionCase {
    pub fn violated(&self) -> impl Iterator<Item = &Clause> {
        self.reasons.iter().filter(|c| !c.satisfied)
    }
}

fn is_one(e: Exponent) -> bool {
    (e.recip() - 1.0).abs() <= CONDITION_TOL
}

fn above_one(e: Exponent) -> bool {
    e.recip() < 1.0 - CONDITION_TOL
}

fn finite(e: Exponent) -> bool {
    e.recip() > CONDITION_TOL
}

fn is_even_integer(s: f64) -> bool {
    let k = (s / 2.0).round();
    k >= 1.0 && (s - 2.0 * k).abs() <= CONDITION_TOL
}

/// Classifies a Leibniz tuple into the non-endpoint case (i), the
/// `L^∞` endpoint (ii) or the `L^1` endpoint (iii).
pub fn check_leibniz_conditions(t: &ExponentTuple) -> ConditionCase {
    let threshold = t.threshold();
    let all_pq = [t.p1, t.q1, t.p2, t.q2];
    let case_i = vec![
        clause(
            "case_i.integrability",
            all_pq.iter().all(|e| above_one(*e)),
            format!("1 < p_j, q_j <= inf for ({}, {}, {}, {})", t.p1, t.q1, t.p2, t.q2),
        ),
        clause(
            "case_i.target_range",
            t.r.recip() < 2.0 - CONDITION_TOL && finite(t.r),
            format!("1/2 < r < inf for r = {}", t.r),
        ),
        clause(
            "case_i.regularity",
            t.s > threshold + CONDITION_TOL || is_even_integer(t.s),
            format!("s > d/r - d = {threshold} or s even, s = {}", t.s),
        ),
    ];
    let case_ii = vec![clause(
        "case_ii.all_infinite",
        all_pq.iter().chain([&t.r]).all(|e| e.is_infinite()),
        "p_j = q_j = r = inf",
    )];
    let case_iii = vec![
        clause(
            "case_iii.p_one",
            is_one(t.p1) && is_one(t.p2),
            format!("p1 = p2 = 1 for ({}, {})", t.p1, t.p2),
        ),
        clause(
            "case_iii.q_equal",
            t.q1.approx_eq(t.q2),
            format!("q1 = q2 for ({}, {})", t.q1, t.q2),
        ),
        clause(
            "case_iii.target_relation",
            (t.r.recip() - 1.0 - t.q1.recip()).abs() <= CONDITION_TOL
                && (t.r.recip() - 1.0 - t.q2.recip()).abs() <= CONDITION_TOL
                && t.r.recip() >= 1.0 - CONDITION_TOL,
            format!("1/r = 1 + 1/q_j with 1/2 <= r <= 1, r = {}", t.r),
        ),
    ];
    let cases = [(Verdict::CaseI, case_i), (Verdict::CaseII, case_ii), (Verdict::CaseIII, case_iii)];
    finish(cases.into_iter().collect(), Vec::new(), Some(threshold), None)
}

fn finish(
    cases: Vec<(Verdict, Vec<Clause>)>,
    base: Vec<Clause>,
    threshold: Option<f64>,
    witnesses: Option<Witnesses>,
) -> ConditionCase {
    let base_ok = base.iter().all(|c| c.satisfied);
    if base_ok {
        if let Some((verdict, clauses)) = cases.iter().find(|(_, c)| c.iter().all(|x| x.satisfied)) {
            let mut reasons = base;
            reasons.extend(clauses.iter().cloned());
            return ConditionCase {
                verdict: *verdict,
                reasons,
                threshold,
                witnesses,
            };
        }
    }
    let mut reasons = base;
    reasons.extend(cases.into_iter().flat_map(|(_, c)| c));
    ConditionCase {
        verdict: Verdict::Rejected,
        reasons,
        threshold,
        witnesses: None,
    }
}

/// Validates the product-estimate conditions and classifies into cases
/// (i)–(iv). Accepted tuples carry the unique witnesses `(q̃, r̃')`.
pub fn check_product_conditions(t: &ProductTuple, manifold: Manifold) -> ConditionCase {
    let (ip, iq, ir) = (t.p.recip(), t.q.recip(), t.r.recip());
    let sd = t.s / t.dim as f64;
    let p_dual = 1.0 - ip;
    let r_dual = 1.0 - ir;
    let mut base = vec![
        clause(
            "sum",
            ip + iq <= ir + sd + CONDITION_TOL,
            format!("1/p + 1/q <= 1/r + s/d: {} <= {}", ip + iq, ir + sd),
        ),
        clause(
            "conjugate",
            iq <= p_dual + CONDITION_TOL && r_dual <= p_dual + CONDITION_TOL,
            format!("q, r' >= p': 1/q = {iq}, 1/r' = {r_dual}, 1/p' = {p_dual}"),
        ),
    ];
    if manifold == Manifold::Euclidean {
        base.push(clause(
            "euclidean_lower_sum",
            ip + iq >= ir - CONDITION_TOL,
            format!("1/p + 1/q >= 1/r: {} >= {ir}", ip + iq),
        ));
    }
    let p_above = above_one(t.p);
    let cases = vec![
        (
            Verdict::CaseI,
            vec![
                clause("case_i.p", p_above, format!("1 < p <= inf, p = {}", t.p)),
                clause(
                    "case_i.q_r",
                    above_one(t.q) && finite(t.q) && above_one(t.r) && finite(t.r),
                    format!("1 < q, r < inf for ({}, {})", t.q, t.r),
                ),
            ],
        ),
        (
            Verdict::CaseII,
            vec![
                clause("case_ii.p_eq_r", p_above && t.p.approx_eq(t.r), format!("1 < p = r <= inf for ({}, {})", t.p, t.r)),
                clause("case_ii.q_inf", t.q.is_infinite(), format!("q = inf, q = {}", t.q)),
            ],
        ),
        (
            Verdict::CaseIII,
            vec![
                clause("case_iii.p", p_above, format!("1 < p <= inf, p = {}", t.p)),
                clause("case_iii.q", finite(t.q), format!("1 <= q < inf, q = {}", t.q)),
                clause("case_iii.r_one", is_one(t.r), format!("r = 1, r = {}", t.r)),
                clause("case_iii.q_dual", (iq - p_dual).abs() <= CONDITION_TOL, format!("q = p', 1/q = {iq}, 1/p' = {p_dual}")),
            ],
        ),
        (
            Verdict::CaseIV,
            vec![
                clause("case_iv.p_r_one", is_one(t.p) && is_one(t.r), format!("p = r = 1 for ({}, {})", t.p, t.r)),
                clause("case_iv.q_inf", t.q.is_infinite(), format!("q = inf, q = {}", t.q)),
            ],
        ),
    ];
    let clamp = |v: f64| if v.abs() <= CONDITION_TOL { 0.0 } else { v };
    let inv_q_tilde = clamp(p_dual - r_dual);
    let inv_r_tilde = clamp(p_dual - iq);
    let witnesses = if inv_q_tilde >= 0.0 && inv_r_tilde >= 0.0 {
        Some(Witnesses {
            q_tilde: Exponent::from_recip(inv_q_tilde).expect("non-negative reciprocal"),
            r_tilde_dual: Exponent::from_recip(inv_r_tilde).expect("non-negative reciprocal"),
            sobolev_slack: [sd - (iq - inv_q_tilde), sd - (r_dual - inv_r_tilde)],
        })
    } else {
        None
    };
    finish(cases, base, None, witnesses)
}
