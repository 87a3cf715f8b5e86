//! Existence / non-existence decisions for both signs of the problem,
//! and the regime table built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ansatz::{choose_case_params, CaseId, ExistenceCase};
use crate::error::{Error, Result};
use crate::kernel::KernelParams;

const TOL: f64 = 1e-12;

fn eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}
fn gt(a: f64, b: f64) -> bool {
    a > b + TOL
}
fn lt(a: f64, b: f64) -> bool {
    a < b - TOL
}
fn ge(a: f64, b: f64) -> bool {
    !lt(a, b)
}
fn le(a: f64, b: f64) -> bool {
    !gt(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "P-")]
    Minus,
    #[serde(rename = "P+")]
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UClass {
    General,
    Bounded,
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub side: Side,
    #[serde(rename = "N")]
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_class: Option<UClass>,
}

impl ProblemParams {
    pub fn plus(n: u32, p: f64, q: f64, alpha: f64, beta: f64) -> Self {
        Self {
            side: Side::Plus,
            n,
            p,
            q,
            alpha,
            beta,
            u_class: None,
        }
    }

    pub fn minus(n: u32, p: f64, q: f64, alpha: f64, beta: f64, u_class: UClass) -> Self {
        Self {
            side: Side::Minus,
            n,
            p,
            q,
            alpha,
            beta,
            u_class: Some(u_class),
        }
    }

    pub fn validate(&self) -> Result<()> {
        KernelParams::new(self.n, self.alpha, self.beta)?;
        if !(self.p > 0.0 && self.p.is_finite() && self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "p = {}, q = {} must be positive and finite",
                self.p, self.q
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Exists,
    NotExists,
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::NotExists => "NotExists",
            Verdict::Open => "Open",
        })
    }
}

pub const EXISTS_NOTE: &str = "existence holds for some sufficiently large lambda > 0";
pub const UNCHARTED: &str = "uncharted";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeDecision {
    pub verdict: Verdict,
    /// The clause credited with the verdict.
    pub clause: String,
    /// Every clause whose hypotheses hold, in evaluation order.
    pub fired: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<ExistenceCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Thresholds (N−α)/(N−2), N/(N−2), (2N−α)/(N−2).
#[derive(Debug, Clone, Copy)]
struct Critical {
    sub: f64,
    crit: f64,
    sum: f64,
}

impl Critical {
    fn of(n: u32, alpha: f64) -> Self {
        let nf = n as f64;
        Self {
            sub: (nf - alpha) / (nf - 2.0),
            crit: nf / (nf - 2.0),
            sum: (2.0 * nf - alpha) / (nf - 2.0),
        }
    }
}

/// Non-existence clauses for the plus sign.
pub fn nonexistence_clauses(x: &ProblemParams) -> Vec<&'static str> {
    let mut out = Vec::new();
    if x.n <= 2 {
        out.push("Thm2(i)");
        return out;
    }
    let Critical { sub, crit, sum } = Critical::of(x.n, x.alpha);
    let (p, q, a, b) = (x.p, x.q, x.alpha, x.beta);
    let small_a = a <= 2.0;
    let strict_a = a < 2.0;
    let pq = p + q;
    if small_a && ge(p, 1.0) && lt(p, sub) {
        out.push("Thm2(ii)");
    }
    if small_a && eq(p, sub) && b >= -1.0 {
        out.push("Thm2(iii)");
    }
    if ge(p, 1.0) && lt(pq, sum) {
        out.push("Thm2(iv)");
    }
    if ge(p, 1.0) && eq(pq, sum) && b > 1.0 / pq - 1.0 {
        out.push("Thm2(v)");
    }
    if strict_a && gt(q, 1.0) && lt(q, sub) {
        out.push("Thm2(vi)");
    }
    if strict_a && eq(q, sub) && b > 1.0 / q - 1.0 {
        out.push("Thm2(vii)");
    }
    if strict_a && eq(p, crit) && eq(q, sub) && b > -2.0 + 1.0 / q {
        out.push("Thm2(viii)");
    }
    if strict_a && eq(p, sub) && eq(q, crit) && b > -2.0 + 1.0 / q {
        out.push("Thm2(ix)");
    }
    out
}

/// Existence clauses for α < N with their construction cases.
pub fn existence_clauses(x: &ProblemParams) -> Vec<(&'static str, CaseId)> {
    let mut out = Vec::new();
    let nf = x.n as f64;
    if x.n < 3 || !(x.alpha < nf) {
        return out;
    }
    let Critical { sub, crit, sum } = Critical::of(x.n, x.alpha);
    let (p, q, b) = (x.p, x.q, x.beta);
    let pq = p + q;
    if gt(p, sub) && gt(q, sub) && gt(pq, sum) {
        let case = if le(p, crit) { CaseId::C1a } else { CaseId::C1b };
        out.push(("Thm3(i)", case));
    }
    if eq(p, sub) && gt(q, crit) && b < -1.0 {
        out.push(("Thm3(ii)", CaseId::C2));
    }
    if gt(p, crit) && eq(q, sub) && b < -1.0 {
        out.push(("Thm3(iii)", CaseId::C3));
    }
    if gt(p, sub) && gt(q, sub) && eq(pq, sum) && b < -1.0 {
        out.push(("Thm3(iv)", CaseId::C4));
    }
    if eq(p, sub) && eq(q, crit) && b < -2.0 {
        out.push(("Thm3(v)", CaseId::C5));
    }
    if eq(p, crit) && eq(q, sub) && b < -2.0 {
        out.push(("Thm3(vi)", CaseId::C6));
    }
    out
}

/// The full-strength kernel α = N: a two-sided criterion for p ≥ 1.
fn full_kernel_clause(x: &ProblemParams) -> Option<(Verdict, Option<CaseId>)> {
    let nf = x.n as f64;
    if x.n < 3 || !eq(x.alpha, nf) || lt(x.p, 1.0) || !(x.beta > 0.0) {
        return None;
    }
    let crit = nf / (nf - 2.0);
    if gt(x.p + x.q, crit) {
        let case = if le(x.p, crit) { CaseId::T41 } else { CaseId::T42 };
        Some((Verdict::Exists, Some(case)))
    } else {
        Some((Verdict::NotExists, None))
    }
}

/// Corollary-style only-if statements for p, q ≥ 1 and α < N.
fn corollary_clause(x: &ProblemParams) -> Option<(&'static str, Verdict)> {
    let nf = x.n as f64;
    if x.n < 3 || !(x.alpha < nf) || lt(x.p, 1.0) || lt(x.q, 1.0) {
        return None;
    }
    let Critical { sub, sum, .. } = Critical::of(x.n, x.alpha);
    let (p, q, b) = (x.p, x.q, x.beta);
    if b < -2.0 {
        let ok = ge(p, sub) && ge(q, sub) && ge(p + q, sum);
        return Some(("Cor1.5(i)", if ok { Verdict::Exists } else { Verdict::NotExists }));
    }
    if b > -1.0 + 1.0 / q {
        let ok = gt(p, sub) && gt(q, sub) && gt(p + q, sum);
        return Some(("Cor1.5(ii)", if ok { Verdict::Exists } else { Verdict::NotExists }));
    }
    None
}

/// Rows of the open-case table whose ranges contain the tuple.
pub fn open_rows(x: &ProblemParams) -> Vec<&'static str> {
    let mut out = Vec::new();
    if x.n < 3 {
        return out;
    }
    let Critical { sub, crit, sum } = Critical::of(x.n, x.alpha);
    let (p, q, a, b) = (x.p, x.q, x.alpha, x.beta);
    let pq = p + q;
    let nf = x.n as f64;
    if gt(p, sub.max(1.0)) && gt(q, sub) && eq(pq, sum) && b >= -1.0 && b <= -1.0 + 1.0 / pq {
        out.push("Table1-row1");
    }
    if ge(p, 1.0) && eq(p, sub) && eq(q, crit) && b >= -2.0 && b <= -2.0 + 1.0 / q {
        out.push("Table1-row2");
    }
    if eq(p, crit) && eq(q, sub) && b >= -2.0 && b <= -2.0 + 1.0 / q {
        out.push("Table1-row3");
    }
    if gt(p, crit) && gt(q, 1.0) && eq(q, sub) && gt(pq, sum) && b >= -1.0 && b <= -1.0 + 1.0 / q {
        out.push("Table1-row4");
    }
    if gt(p, crit) && le(q, 1.0) && eq(pq, sum) && b > a - nf && b <= -1.0 + 1.0 / pq {
        out.push("Table1-row5");
    }
    if gt(p, crit) && le(q, 1.0) && gt(pq, sum) && b > a - nf {
        out.push("Table1-row6");
    }
    out
}

fn decision(verdict: Verdict, clause: &str, fired: Vec<String>) -> RegimeDecision {
    RegimeDecision {
        verdict,
        clause: clause.to_string(),
        fired,
        construction: None,
        note: None,
    }
}

fn with_construction(mut d: RegimeDecision, x: &ProblemParams, case: CaseId) -> Result<RegimeDecision> {
    d.construction = Some(choose_case_params(case, x.n, x.alpha, x.beta, x.p, x.q)?);
    d.note = Some(EXISTS_NOTE.to_string());
    Ok(d)
}

/// Decision for the minus sign, where only non-existence is known.
pub fn classify_pminus(x: &ProblemParams) -> Result<RegimeDecision> {
    x.validate()?;
    let nf = x.n as f64;
    if !(x.alpha > 0.0 && x.alpha < nf) {
        return Err(Error::HypothesisViolated(format!(
            "the minus-sign result needs 0 < alpha < N, got alpha = {}",
            x.alpha
        )));
    }
    let class = x.u_class.unwrap_or(UClass::General);
    let mut fired = Vec::new();
    if ge(x.p, 1.0) {
        fired.push("Thm1(i)".to_string());
    }
    if lt(x.p, 1.0) && class == UClass::Bounded {
        fired.push("Thm1(ii)".to_string());
    }
    if class == UClass::Radial {
        fired.push("Thm1(iii)".to_string());
    }
    Ok(match fired.first().cloned() {
        Some(c) => decision(Verdict::NotExists, &c, fired),
        None => decision(Verdict::Open, UNCHARTED, fired),
    })
}

/// Decision for the plus sign.
pub fn classify_pplus(x: &ProblemParams) -> Result<RegimeDecision> {
    x.validate()?;
    let not = nonexistence_clauses(x);
    let yes = existence_clauses(x);
    let full = full_kernel_clause(x);
    let cor = corollary_clause(x);
    let open = open_rows(x);

    let mut fired: Vec<String> = not.iter().map(|s| s.to_string()).collect();
    if full.is_some() {
        fired.push("Thm4".to_string());
    }
    fired.extend(yes.iter().map(|(s, _)| s.to_string()));
    if let Some((c, _)) = cor {
        fired.push(c.to_string());
    }
    fired.extend(open.iter().map(|s| s.to_string()));

    if x.n <= 2 {
        return Ok(decision(Verdict::NotExists, "Thm2(i)", fired));
    }
    // the full-strength kernel is decided by its own two-sided criterion
    if let Some((v, case)) = full {
        let d = decision(v, "Thm4", fired);
        return match case {
            Some(c) => with_construction(d, x, c),
            None => Ok(d),
        };
    }
    if let Some(c) = not.first() {
        return Ok(decision(Verdict::NotExists, c, fired));
    }
    if let Some((c, case)) = yes.first() {
        return with_construction(decision(Verdict::Exists, c, fired), x, *case);
    }
    if let Some((c, v)) = cor {
        // an Exists here would have been caught by the existence clauses
        if v == Verdict::NotExists {
            return Ok(decision(v, c, fired));
        }
    }
    if let Some(c) = open.first() {
        return Ok(decision(Verdict::Open, c, fired));
    }
    Ok(decision(Verdict::Open, UNCHARTED, fired))
}

pub fn classify(x: &ProblemParams) -> Result<RegimeDecision> {
    match x.side {
        Side::Plus => classify_pplus(x),
        Side::Minus => classify_pminus(x),
    }
}

/// True when a non-existence clause and an existence clause both hold.
pub fn contradiction(x: &ProblemParams) -> bool {
    let no = !nonexistence_clauses(x).is_empty() || matches!(full_kernel_clause(x), Some((Verdict::NotExists, _)));
    let yes = !existence_clauses(x).is_empty() || matches!(full_kernel_clause(x), Some((Verdict::Exists, _)));
    no && yes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlphaRange {
    /// α ∈ [0, 2]
    UpToTwo,
    /// α ∈ [0, 2)
    BelowTwo,
    /// α ∈ [0, N)
    BelowN,
    /// α ∈ [0, N]
    UpToN,
}

impl AlphaRange {
    fn contains(&self, alpha: f64, n: u32) -> bool {
        let nf = n as f64;
        alpha >= 0.0
            && match self {
                AlphaRange::UpToTwo => alpha <= 2.0,
                AlphaRange::BelowTwo => alpha < 2.0,
                AlphaRange::BelowN => alpha < nf,
                AlphaRange::UpToN => alpha <= nf,
            }
    }

    fn label(&self) -> &'static str {
        match self {
            AlphaRange::UpToTwo => "[0, 2]",
            AlphaRange::BelowTwo => "[0, 2)",
            AlphaRange::BelowN => "[0, N)",
            AlphaRange::UpToN => "[0, N]",
        }
    }
}

/// One published row of the regime table.
struct RowSpec {
    p: &'static str,
    q: &'static str,
    sum: &'static str,
    alpha: AlphaRange,
    beta: &'static str,
    verdict: Verdict,
    /// every listed clause must fire
    all_of: &'static [&'static str],
    /// at least one listed clause must fire
    any_of: &'static [&'static str],
    /// representative (p, q, β) at given thresholds, N and α
    pick: fn(&Critical, f64, f64) -> Option<(f64, f64, f64)>,
}

// β strictly between the kernel floor α − N and `top`
fn beta_below(top: f64, floor: f64) -> f64 {
    if floor < top - 1.0 {
        top - 0.5
    } else {
        0.5 * (floor + top)
    }
}

const ROWS: [RowSpec; 26] = [
    RowSpec {
        p: "p < (N-a)/(N-2)",
        q: "q > 0",
        sum: "p+q > 0",
        alpha: AlphaRange::UpToTwo,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(ii)"],
        any_of: &[],
        pick: |c, _, _| (c.sub > 1.0).then_some((0.5 * (1.0 + c.sub), 1.0, 0.0)),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "0 < q < N/(N-2)",
        sum: "p+q < (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iv)"],
        any_of: &[],
        pick: |c, _, _| Some((c.sub, 0.5 * c.crit, 0.0)),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "q = N/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b < -2",
        verdict: Verdict::Exists,
        all_of: &["Thm3(v)"],
        any_of: &[],
        pick: |c, floor, _| Some((c.sub, c.crit, beta_below(-2.0, floor))),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "q = N/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > -2+1/q",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iii)", "Thm2(ix)"],
        any_of: &[],
        pick: |c, _, _| Some((c.sub, c.crit, -0.5)),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "q = N/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "-2 <= b <= -2+1/q",
        verdict: Verdict::Open,
        all_of: &["Table1-row2"],
        any_of: &[],
        pick: |c, _, _| Some((c.sub, c.crit, -2.0 + 0.5 / c.crit)),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "q > N/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b >= -1",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iii)"],
        any_of: &[],
        pick: |c, _, _| Some((c.sub, c.crit + 1.0, 0.0)),
    },
    RowSpec {
        p: "p = (N-a)/(N-2)",
        q: "q > N/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b < -1",
        verdict: Verdict::Exists,
        all_of: &["Thm3(ii)"],
        any_of: &[],
        pick: |c, floor, _| Some((c.sub, c.crit + 1.0, beta_below(-1.0, floor))),
    },
    RowSpec {
        p: "(N-a)/(N-2) < p < N/(N-2)",
        q: "0 < q <= (N-a)/(N-2)",
        sum: "p+q < (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iv)"],
        any_of: &[],
        pick: |c, _, _| Some((0.5 * (c.sub + c.crit), 0.5 * c.sub, 0.0)),
    },
    RowSpec {
        p: "(N-a)/(N-2) < p < N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > -1+1/(p+q)",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(v)"],
        any_of: &[],
        pick: |c, _, _| {
            let p = 0.5 * (c.sub + c.crit);
            Some((p, c.sum - p, 0.0))
        },
    },
    RowSpec {
        p: "(N-a)/(N-2) < p < N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "-1 < b <= -1+1/(p+q)",
        verdict: Verdict::Open,
        all_of: &["Table1-row1"],
        any_of: &[],
        pick: |c, _, _| {
            let p = 0.5 * (c.sub + c.crit);
            Some((p, c.sum - p, -1.0 + 0.5 / c.sum))
        },
    },
    RowSpec {
        p: "(N-a)/(N-2) < p < N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b < -1",
        verdict: Verdict::Exists,
        all_of: &["Thm3(iv)"],
        any_of: &[],
        pick: |c, floor, _| {
            let p = 0.5 * (c.sub + c.crit);
            Some((p, c.sum - p, beta_below(-1.0, floor)))
        },
    },
    RowSpec {
        p: "(N-a)/(N-2) < p < N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > a-N",
        verdict: Verdict::Exists,
        all_of: &["Thm3(i)"],
        any_of: &[],
        pick: |c, _, _| Some((0.5 * (c.sub + c.crit), c.sub + 1.0, 0.0)),
    },
    RowSpec {
        p: "p = N/(N-2)",
        q: "0 < q < (N-a)/(N-2)",
        sum: "p+q < (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iv)"],
        any_of: &[],
        pick: |c, _, _| Some((c.crit, 0.5 * c.sub, 0.0)),
    },
    RowSpec {
        p: "p = N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "b > -2+1/q",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(viii)"],
        any_of: &[],
        pick: |c, _, _| Some((c.crit, c.sub, 0.0)),
    },
    RowSpec {
        p: "p = N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::UpToTwo,
        beta: "-2 <= b <= -2+1/q",
        verdict: Verdict::Open,
        all_of: &["Table1-row3"],
        any_of: &[],
        pick: |c, _, _| Some((c.crit, c.sub, -2.0 + 0.5 / c.sub)),
    },
    RowSpec {
        p: "p = N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::BelowN,
        beta: "b < -2",
        verdict: Verdict::Exists,
        all_of: &["Thm3(vi)"],
        any_of: &[],
        pick: |c, floor, _| Some((c.crit, c.sub, beta_below(-2.0, floor))).filter(|t| t.2 > floor),
    },
    RowSpec {
        p: "p = N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::UpToN,
        beta: "b > a-N",
        verdict: Verdict::Exists,
        all_of: &[],
        any_of: &["Thm3(i)", "Thm4"],
        pick: |c, floor, _| Some((c.crit, c.sub + 1.0, floor.max(0.0) + 1.0)),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "0 < q < (N-a)/(N-2)",
        sum: "p+q < (2N-a)/(N-2)",
        alpha: AlphaRange::BelowN,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(iv)"],
        any_of: &[],
        pick: |c, floor, _| Some((c.crit + 0.25 * c.sub, 0.5 * c.sub, floor.max(0.0))).filter(|t| t.0 >= 1.0),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "0 < q <= 1",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::BelowN,
        beta: "b > -1+1/(p+q)",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(v)"],
        any_of: &[],
        pick: |c, _, _| {
            let q = 0.5 * c.sub.min(1.0);
            Some((c.sum - q, q, 0.0))
        },
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "0 < q <= 1",
        sum: "p+q = (2N-a)/(N-2)",
        alpha: AlphaRange::BelowN,
        beta: "a-N < b <= -1+1/(p+q)",
        verdict: Verdict::Open,
        all_of: &["Table1-row5"],
        any_of: &[],
        pick: |c, floor, _| {
            let q = 0.5 * c.sub.min(1.0);
            Some((c.sum - q, q, 0.5 * (floor + (-1.0 + 1.0 / c.sum))))
        },
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "0 < q <= 1",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::BelowN,
        beta: "b > a-N",
        verdict: Verdict::Open,
        all_of: &["Table1-row6"],
        any_of: &[],
        pick: |c, floor, _| {
            let q = 0.5 * c.sub.min(1.0);
            Some((c.sum + 1.0, q, floor.max(0.0)))
        },
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "1 < q < (N-a)/(N-2)",
        sum: "p+q > 0",
        alpha: AlphaRange::BelowTwo,
        beta: "b > a-N",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(vi)"],
        any_of: &[],
        pick: |c, _, _| Some((c.crit + 1.0, 0.5 * (1.0 + c.sub), 0.0)),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::BelowTwo,
        beta: "b > -1+1/q",
        verdict: Verdict::NotExists,
        all_of: &["Thm2(vii)"],
        any_of: &[],
        pick: |c, _, _| Some((c.sum + 1.0, c.sub, 0.0)),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::BelowTwo,
        beta: "-1 <= b <= -1+1/q",
        verdict: Verdict::Open,
        all_of: &["Table1-row4"],
        any_of: &[],
        pick: |c, _, _| Some((c.sum + 1.0, c.sub, -1.0 + 0.5 / c.sub)),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "q = (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::BelowTwo,
        beta: "b < -1",
        verdict: Verdict::Exists,
        all_of: &["Thm3(iii)"],
        any_of: &[],
        pick: |c, floor, _| Some((c.sum + 1.0, c.sub, beta_below(-1.0, floor))),
    },
    RowSpec {
        p: "p > N/(N-2)",
        q: "q > (N-a)/(N-2)",
        sum: "p+q > (2N-a)/(N-2)",
        alpha: AlphaRange::UpToN,
        beta: "b > a-N",
        verdict: Verdict::Exists,
        all_of: &[],
        any_of: &["Thm3(i)", "Thm4"],
        pick: |c, floor, _| Some((c.crit + 1.0, c.sub + 1.0, floor.max(0.0) + 1.0)),
    },
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub row: usize,
    pub p_range: String,
    pub q_range: String,
    pub sum_range: String,
    pub alpha_range: String,
    pub beta_range: String,
    pub expected_verdict: Verdict,
    pub expected_clauses: Vec<String>,
    pub instance: ProblemParams,
    pub decision: RegimeDecision,
    pub matches: bool,
}

/// Instantiates every row of the regime table at each admissible α sample
/// and classifies the representative tuple.
pub fn emit_regime_table(n: u32, alpha_samples: &[f64]) -> Result<Vec<TableRow>> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let nf = n as f64;
    let mut out = Vec::new();
    for &alpha in alpha_samples {
        if !(0.0..=nf).contains(&alpha) {
            return Err(Error::InvalidAlpha { alpha, n });
        }
        let c = Critical::of(n, alpha);
        for (i, spec) in ROWS.iter().enumerate() {
            if !spec.alpha.contains(alpha, n) {
                continue;
            }
            let Some((p, q, beta)) = (spec.pick)(&c, alpha - nf, alpha) else {
                continue;
            };
            let instance = ProblemParams::plus(n, p, q, alpha, beta);
            if instance.validate().is_err() || lt(p, 1.0) {
                continue;
            }
            let decision = classify_pplus(&instance)?;
            let all_ok = spec.all_of.iter().all(|c| decision.fired.iter().any(|f| f == c));
            let any_ok = spec.any_of.is_empty() || spec.any_of.iter().any(|c| decision.fired.iter().any(|f| f == c));
            let matches = decision.verdict == spec.verdict && all_ok && any_ok;
            let expected: Vec<String> = spec.all_of.iter().chain(spec.any_of).map(|s| s.to_string()).collect();
            out.push(TableRow {
                row: i + 1,
                p_range: spec.p.into(),
                q_range: spec.q.into(),
                sum_range: spec.sum.into(),
                alpha_range: spec.alpha.label().into(),
                beta_range: spec.beta.into(),
                expected_verdict: spec.verdict,
                expected_clauses: expected,
                instance,
                decision,
                matches,
            });
        }
    }
    Ok(out)
}

/// Default α samples: one value inside [0, 2) and the full-strength kernel.
pub fn default_alpha_samples(n: u32) -> Vec<f64> {
    let a = if n == 3 { 0.5 } else { 1.0 };
    vec![a, n as f64]
}

/// Aligned plain-text rendering of the table.
pub fn render_table_text(rows: &[TableRow]) -> String {
    let header = [
        "row", "p", "q", "p+q", "alpha", "beta", "instance (p, q, alpha, beta)", "verdict", "clause", "ok",
    ];
    let body: Vec<[String; 10]> = rows
        .iter()
        .map(|r| {
            let i = &r.instance;
            [
                r.row.to_string(),
                r.p_range.clone(),
                r.q_range.clone(),
                r.sum_range.clone(),
                r.alpha_range.clone(),
                r.beta_range.clone(),
                format!("({:.6}, {:.6}, {}, {:.6})", i.p, i.q, i.alpha, i.beta),
                r.decision.verdict.to_string(),
                r.decision.clause.clone(),
                if r.matches { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut s = line(header.to_vec());
    s.push('\n');
    for row in &body {
        s.push_str(&line(row.iter().map(|c| c.as_str()).collect()));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus(n: u32, p: f64, q: f64, a: f64, b: f64) -> RegimeDecision {
        classify_pplus(&ProblemParams::plus(n, p, q, a, b)).unwrap()
    }

    #[test]
    fn plus_examples() {
        let d = plus(2, 1.0, 1.0, 0.0, 0.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::NotExists, "Thm2(i)"));
        let d = plus(5, 1.0, 2.0, 2.0, 0.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::NotExists, "Thm2(iii)"));
        let d = plus(3, 4.0, 4.0, 0.0, 0.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::Exists, "Thm3(i)"));
        assert_eq!(d.construction.unwrap().case_id, CaseId::C1b);
        let d = plus(3, 2.0, 0.5, 3.0, 1.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::NotExists, "Thm4"));
        let d = plus(3, 2.0, 1.5, 3.0, 1.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::Exists, "Thm4"));
        let d = plus(5, 2.0, 1.0, 2.0, 0.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::Open, "Table1-row6"));
    }

    #[test]
    fn minus_examples() {
        let m = |p: f64, c| classify_pminus(&ProblemParams::minus(3, p, 1.0, 1.0, 0.0, c)).unwrap();
        assert_eq!(m(2.0, UClass::General).clause, "Thm1(i)");
        assert_eq!(m(0.5, UClass::Bounded).clause, "Thm1(ii)");
        assert_eq!(m(0.5, UClass::Radial).clause, "Thm1(iii)");
        assert_eq!(m(0.5, UClass::General).verdict, Verdict::Open);
        let bad = ProblemParams::minus(3, 2.0, 1.0, 0.0, 0.0, UClass::General);
        assert!(matches!(classify_pminus(&bad), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn table_rows_from_text() {
        // at α = 2 the first row is empty: p < 1 is outside the p ≥ 1 clauses
        let d = plus(5, 0.9, 1.0, 2.0, 0.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::Open, UNCHARTED));
        let d = plus(5, 1.0, 2.0, 2.0, -2.0);
        assert_eq!((d.verdict, d.clause.as_str()), (Verdict::Exists, "Thm3(ii)"));
        assert_eq!(d.construction.unwrap().case_id, CaseId::C2);
    }

    #[test]
    fn golden_rows_match() {
        for n in [3u32, 5] {
            let rows = emit_regime_table(n, &default_alpha_samples(n)).unwrap();
            let first: Vec<_> = rows.iter().filter(|r| r.instance.alpha < n as f64).collect();
            assert_eq!(first.len(), 26, "N = {n}");
            for r in &rows {
                assert!(r.matches, "N = {n}, row {}: {:?}", r.row, r.decision);
            }
        }
    }
}
