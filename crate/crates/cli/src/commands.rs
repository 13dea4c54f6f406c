use std::fmt::Write as _;
use std::time::Instant;

use cfperiod_core::classifier::{classify, explain, Classification};
use cfperiod_core::contfrac::{
    check_convergent_bound, convergents, expand_capped, expand_rational, is_reduced, scan_period, scan_surd, CFExpansion,
    DEFAULT_STEP_CAP,
};
use cfperiod_core::places::{growth_check, Place};
use cfperiod_core::polyalg::{circle_profile, factor_k};
use cfperiod_core::qfield::{is_square, rat_to_f64};
use cfperiod_core::recurrence::{rec_min_charpoly, Annihilator, LinRec};
use cfperiod_core::{Error, QuadElem, Rational, Surd};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::job::JobSpec;
use crate::parse::{eval_int_poly, parse_element, parse_int_poly, Value};
use crate::{fmt_sig, CliError, Config};

const CONVERGENTS_SHOWN: usize = 8;

pub fn expand_value(v: &Value) -> Result<CFExpansion, CliError> {
    Ok(match v {
        Value::Rational(r) => expand_rational(r),
        Value::Quad(x) => expand_capped(x, DEFAULT_STEP_CAP)?,
    })
}

/// Expansion, period data and the first convergents with the
/// `|x - p/q| <= 1/(a_{n+1} q^2)` check.
pub fn cmd_cf(expr: &str) -> Result<String, CliError> {
    let v = parse_element(expr)?;
    let e = expand_value(&v)?;
    let mut out = String::new();
    let _ = writeln!(out, "value: {v}");
    let _ = writeln!(out, "expansion: {e}");
    let _ = writeln!(out, "period length: {}", e.period_length());
    let _ = writeln!(out, "preperiod length: {}", e.preperiod.len());
    if let Value::Quad(x) = &v {
        let _ = writeln!(out, "reduced: {}", if is_reduced(x)? { "yes" } else { "no" });
    }
    let _ = writeln!(out, "n,convergent,bound");
    let shown = if e.is_finite() { e.preperiod.len().min(CONVERGENTS_SHOWN) } else { CONVERGENTS_SHOWN };
    for n in 0..shown {
        let c = convergents(&e, n)?;
        let mark = match &v {
            Value::Quad(x) => {
                if check_convergent_bound(x, n)? {
                    "ok"
                } else {
                    "FAIL"
                }
            }
            Value::Rational(_) => "-",
        };
        let _ = writeln!(out, "{n},{c},{mark}");
    }
    Ok(out)
}

fn classification_json(c: &Classification) -> serde_json::Value {
    let mut v = json!({
        "verdict": format!("{:?}", c.verdict),
        "label": c.verdict.to_string(),
        "step": c.step.map(|s| s.to_string()),
        "reason": c.reason,
        "minimal_polynomial": c.evidence.pa_min.as_ref().map(|p| p.render()),
        "p_d": c.evidence.pd.as_ref().map(|p| p.render()),
        "p_s": c.evidence.ps.as_ref().map(|p| p.render()),
    });
    if let (Some(b), Some(s)) = (&c.beta, c.sign) {
        v["beta"] = json!(b.to_string());
        v["sign"] = json!(s);
    }
    if let Some((d, parts)) = &c.split {
        v["d"] = json!(d);
        v["parts"] = parts.iter().map(classification_json).collect();
    }
    v
}

pub fn classify_job(job: &JobSpec) -> Result<Classification, CliError> {
    let r = job.recurrence()?;
    classify(&r).map_err(|e| CliError::Core(e.error))
}

pub fn cmd_classify(job: &JobSpec, as_json: bool) -> Result<String, CliError> {
    let c = classify_job(job)?;
    if as_json {
        let mut v = classification_json(&c);
        v["report"] = json!(explain(&c));
        Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
    } else {
        Ok(explain(&c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Rational,
    /// A coordinate of the term exceeds the configured bit bound.
    TooLarge(u64),
    /// The step cap was hit; the period is at least this long.
    CapExceeded(u64),
}

impl std::fmt::Display for RowStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowStatus::Ok => write!(f, "ok"),
            RowStatus::Rational => write!(f, "rational"),
            RowStatus::TooLarge(b) => write!(f, "skipped: term has {b} bits"),
            RowStatus::CapExceeded(l) => write!(f, "cap: ell >= {l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodRow {
    pub n: i64,
    pub ell: Option<u64>,
    pub preperiod_len: Option<u64>,
    pub a1: Option<BigInt>,
    pub status: RowStatus,
    pub wall_time_ms: Option<f64>,
}

fn term_bits(x: &QuadElem) -> u64 {
    [x.a().numer(), x.a().denom(), x.b().numer(), x.b().denom()].iter().map(|v| v.bits()).max().unwrap_or(0)
}

pub fn scan_row(n: i64, x: &QuadElem, cfg: &Config, timing: bool) -> PeriodRow {
    let start = Instant::now();
    let bits = term_bits(x);
    let mut row = PeriodRow { n, ell: None, preperiod_len: None, a1: None, status: RowStatus::Ok, wall_time_ms: None };
    if bits > cfg.max_bits {
        row.status = RowStatus::TooLarge(bits);
    } else {
        match scan_period(x, DEFAULT_STEP_CAP) {
            Ok(s) => {
                row.ell = Some(s.period_len);
                row.preperiod_len = Some(s.preperiod_len);
                row.a1 = s.a1;
                if x.is_rational() {
                    row.status = RowStatus::Rational;
                }
            }
            Err(Error::StepCapExceeded { lower_bound, .. }) => row.status = RowStatus::CapExceeded(lower_bound),
            Err(e) => unreachable!("scan of a valid element failed: {e}"),
        }
    }
    if timing {
        row.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    row
}

/// `ell(D A_n)` for `n0 <= n <= n1`, scanned in parallel, ordered by `n`.
pub fn period_rows(r: &LinRec, n0: i64, n1: i64, mult: &BigInt, cfg: &Config, timing: bool) -> Vec<PeriodRow> {
    let k = r.field();
    let m = k.rational(Rational::from_integer(mult.clone()));
    let terms: Vec<(i64, QuadElem)> = (n0..=n1).map(|n| (n, &r.term(n) * &m)).collect();
    terms.par_iter().map(|(n, x)| scan_row(*n, x, cfg, timing)).collect()
}

/// Largest `ell` per doubling window `[2^j, 2^(j+1))`; `n <= 0` is its own window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMax {
    pub lo: i64,
    pub hi: i64,
    pub max_ell: u64,
}

pub fn doubling_windows(rows: &[(i64, u64)]) -> Vec<WindowMax> {
    let mut out: Vec<WindowMax> = Vec::new();
    for &(n, ell) in rows {
        let (lo, hi) = if n <= 0 {
            (i64::MIN, 0)
        } else {
            let j = 63 - n.leading_zeros() as i64;
            (1i64 << j, (1i64 << (j + 1)) - 1)
        };
        match out.iter_mut().find(|w| w.lo == lo) {
            Some(w) => w.max_ell = w.max_ell.max(ell),
            None => out.push(WindowMax { lo, hi, max_ell: ell }),
        }
    }
    out.sort_by_key(|w| w.lo);
    out
}

/// Number of windows whose maximum beats every earlier window.
pub fn running_max_increases(windows: &[WindowMax]) -> usize {
    let mut best: Option<u64> = None;
    let mut count = 0;
    for w in windows {
        if let Some(b) = best {
            if w.max_ell > b {
                count += 1;
            }
        }
        best = Some(best.map_or(w.max_ell, |b| b.max(w.max_ell)));
    }
    count
}

fn window_lines(out: &mut String, windows: &[WindowMax]) {
    for w in windows {
        if w.lo == i64::MIN {
            let _ = writeln!(out, "# window n<=0 max_ell={}", w.max_ell);
        } else {
            let _ = writeln!(out, "# window [{}, {}] max_ell={}", w.lo, w.hi, w.max_ell);
        }
    }
    let _ = writeln!(out, "# running max increases: {}", running_max_increases(windows));
}

pub fn render_periods(rows: &[PeriodRow], timing: bool) -> String {
    let mut out = String::from("n,ell,preperiod_len,a1,status");
    out.push_str(if timing { ",wall_time_ms\n" } else { "\n" });
    let opt = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        let a1 = r.a1.as_ref().map(|a| a.to_string()).unwrap_or_default();
        let _ = write!(out, "{},{},{},{},{}", r.n, opt(&r.ell), opt(&r.preperiod_len), a1, r.status);
        if let Some(t) = r.wall_time_ms {
            let _ = write!(out, ",{}", fmt_sig(t));
        }
        out.push('\n');
    }
    let scanned: Vec<(i64, u64)> = rows.iter().filter_map(|r| r.ell.map(|e| (r.n, e))).collect();
    window_lines(&mut out, &doubling_windows(&scanned));
    out
}

pub fn cmd_periods(job: &JobSpec, mult: Option<i64>, timing: bool, cfg: &Config) -> Result<String, CliError> {
    let r = job.recurrence()?;
    let (n0, n1) = job.range()?;
    let m = match mult {
        Some(m) => BigInt::from(m),
        None => BigInt::from(job.option_u64("mult")?.unwrap_or(1)),
    };
    if m.is_zero() {
        return Err(CliError::Usage("multiplier must be nonzero".into()));
    }
    Ok(render_periods(&period_rows(&r, n0, n1, &m, cfg, timing), timing))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `A = alpha^r + alpha^s`, odd `r < s` with `s - r > r`.
    P61,
    /// `A = alpha^r + alpha^(2r)`, even `r`.
    P62,
}

impl std::str::FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Family, CliError> {
        match s {
            "p61" => Ok(Family::P61),
            "p62" => Ok(Family::P62),
            _ => Err(CliError::Usage(format!("unknown family {s:?} (expected p61 or p62)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropsRow {
    pub r: u64,
    pub s: u64,
    pub value: QuadElem,
    pub expansion: CFExpansion,
    pub closed_pre: Vec<BigInt>,
    pub closed_per: Vec<BigInt>,
    /// `-1 < A' < 0` for P61, `0 < A' < 1` for P62.
    pub condition: bool,
    pub matched: bool,
}

fn fmt_closed(pre: &[BigInt], per: &[BigInt]) -> String {
    let per: Vec<String> = per.iter().map(|a| a.to_string()).collect();
    let pre: Vec<String> = pre.iter().map(|a| a.to_string()).collect();
    format!("[{}; ({})]", pre.join(", "), per.join(", "))
}

fn check_unit(alpha: &QuadElem, family: Family) -> Result<(), CliError> {
    let bad = |what: &str| CliError::Core(Error::Precondition(format!("alpha = {alpha}: {what}")));
    if alpha.is_rational() {
        return Err(bad("must be irrational"));
    }
    if alpha.cmp_value(&alpha.field().one()) != std::cmp::Ordering::Greater {
        return Err(bad("must be > 1"));
    }
    if !alpha.integral_denominator().is_one() {
        return Err(bad("must be an algebraic integer"));
    }
    let norm = alpha.norm();
    if family == Family::P61 && norm != -Rational::one() {
        return Err(bad("must have norm -1"));
    }
    if norm.abs() != Rational::one() {
        return Err(bad("must be a unit"));
    }
    Ok(())
}

fn props_row(alpha: &QuadElem, r: u64, s: u64, family: Family) -> Result<PropsRow, CliError> {
    let ar = alpha.pow(r as i64)?;
    let a = &ar + &alpha.pow(s as i64)?;
    let tr = a.trace().to_integer();
    let fl = ar.floor();
    let (closed_pre, closed_per) = match family {
        Family::P61 => (vec![tr.clone()], vec![fl, tr.clone()]),
        Family::P62 => (vec![&tr - 1], vec![BigInt::one(), fl - 2, BigInt::one(), &tr - 2]),
    };
    let conj = a.conj();
    let k = a.field();
    let condition = match family {
        Family::P61 => conj.sign() < 0 && (&conj + &k.one()).sign() > 0,
        Family::P62 => conj.sign() > 0 && (&conj - &k.one()).sign() < 0,
    };
    let expansion = expand_capped(&a, DEFAULT_STEP_CAP)?;
    let matched = expansion.matches(&closed_pre, &closed_per);
    Ok(PropsRow { r, s, value: a, expansion, closed_pre, closed_per, condition, matched })
}

/// Every parameter in range: `(r, s)` with `s <= hi` for P61, even `r` in
/// `lo..=hi` for P62.
pub fn props_rows(alpha: &QuadElem, family: Family, lo: u64, hi: u64) -> Result<Vec<PropsRow>, CliError> {
    check_unit(alpha, family)?;
    let mut out = Vec::new();
    match family {
        Family::P61 => {
            for s in (lo.max(1)..=hi).filter(|s| s % 2 == 1) {
                for r in (1..s).filter(|r| r % 2 == 1 && s - r > *r) {
                    out.push(props_row(alpha, r, s, family)?);
                }
            }
        }
        Family::P62 => {
            for r in (lo.max(2)..=hi).filter(|r| r % 2 == 0) {
                out.push(props_row(alpha, r, 2 * r, family)?);
            }
        }
    }
    Ok(out)
}

pub fn render_props(alpha: &QuadElem, family: Family, rows: &[PropsRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# alpha = {alpha}, family {family:?}");
    if family == Family::P62 {
        let _ = writeln!(out, "# closed form uses floor(alpha^r) - 2 as the second period term");
    }
    let _ = writeln!(out, "r,s,A,expansion,closed_form,ell,condition,match");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},\"{}\",\"{}\",{},{},{}",
            row.r,
            row.s,
            row.value,
            row.expansion,
            fmt_closed(&row.closed_pre, &row.closed_per),
            row.expansion.period_length(),
            if row.condition { "holds" } else { "fails" },
            if row.matched { "pass" } else { "fail" }
        );
    }
    let eligible: Vec<&PropsRow> = rows.iter().filter(|r| r.condition).collect();
    let passed = eligible.iter().filter(|r| r.matched).count();
    let _ = writeln!(out, "# pass {passed}/{} where the condition holds", eligible.len());
    out
}

pub fn cmd_props(alpha: &str, family: Family, lo: u64, hi: u64) -> Result<String, CliError> {
    let alpha = match parse_element(alpha)? {
        Value::Quad(x) => x,
        Value::Rational(_) => return Err(CliError::Core(Error::Precondition("alpha must be irrational".into()))),
    };
    let rows = props_rows(&alpha, family, lo, hi)?;
    Ok(render_props(&alpha, family, &rows))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchinzelFlag {
    Ok,
    Square,
    Negative,
    CapExceeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchinzelRow {
    pub n: i64,
    pub value: BigInt,
    pub ell: Option<u64>,
    pub flag: SchinzelFlag,
}

/// Whether the polynomial meets the hypothesis of the unboundedness theorem
/// for `sqrt f(n)`: odd degree, or even degree with non-square leading term.
pub fn schinzel_hypothesis(coeffs: &[BigInt]) -> (bool, &'static str) {
    let deg = coeffs.len() - 1;
    let lead = coeffs.last().expect("nonzero polynomial");
    if deg == 0 {
        (false, "not covered (constant)")
    } else if deg % 2 == 1 {
        (true, "covered (odd degree)")
    } else if !lead.is_positive() || !is_square(lead) {
        (true, "covered (leading coefficient not a square)")
    } else {
        (false, "not covered (even degree, square leading coefficient)")
    }
}

pub fn schinzel_rows(coeffs: &[BigInt], n0: i64, n1: i64) -> Vec<SchinzelRow> {
    (n0..=n1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let value = eval_int_poly(coeffs, &BigInt::from(n));
            let (ell, flag) = if value.is_negative() {
                (None, SchinzelFlag::Negative)
            } else if is_square(&value) {
                (Some(0), SchinzelFlag::Square)
            } else {
                let s = Surd::new(BigInt::zero(), BigInt::one(), value.clone()).expect("positive non-square");
                match scan_surd(&s, DEFAULT_STEP_CAP) {
                    Ok(p) => (Some(p.period_len), SchinzelFlag::Ok),
                    Err(Error::StepCapExceeded { lower_bound, .. }) => (None, SchinzelFlag::CapExceeded(lower_bound)),
                    Err(e) => unreachable!("scan of sqrt({value}) failed: {e}"),
                }
            };
            SchinzelRow { n, value, ell, flag }
        })
        .collect()
}

pub fn cmd_schinzel(poly: &str, n0: i64, n1: i64) -> Result<String, CliError> {
    let coeffs = parse_int_poly(poly)?;
    let rows = schinzel_rows(&coeffs, n0, n1);
    let mut out = String::new();
    let _ = writeln!(out, "# f = {poly}");
    let _ = writeln!(out, "# hypothesis: {}", schinzel_hypothesis(&coeffs).1);
    let _ = writeln!(out, "n,f(n),ell,running_max,flag");
    let mut best: Option<u64> = None;
    let mut increases = 0;
    for r in &rows {
        if let Some(e) = r.ell {
            if best.is_some_and(|b| e > b) {
                increases += 1;
            }
            best = Some(best.map_or(e, |b| b.max(e)));
        }
        let flag = match &r.flag {
            SchinzelFlag::Ok => "ok".to_string(),
            SchinzelFlag::Square => "square".to_string(),
            SchinzelFlag::Negative => "negative: skipped".to_string(),
            SchinzelFlag::CapExceeded(l) => format!("cap: ell >= {l}"),
        };
        let ell = r.ell.map(|e| e.to_string()).unwrap_or_default();
        let rm = best.map(|e| e.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.value, ell, rm, flag);
    }
    let _ = writeln!(out, "# running max strict increases: {increases}");
    let scanned: Vec<(i64, u64)> = rows.iter().filter_map(|r| r.ell.map(|e| (r.n, e))).collect();
    window_lines(&mut out, &doubling_windows(&scanned));
    Ok(out)
}

fn root_table(r: &LinRec, v: &Place) -> String {
    let mut out = String::new();
    let p = match rec_min_charpoly(r) {
        Ok(Annihilator::Poly(p)) => p,
        _ => return "no characteristic roots".into(),
    };
    let _ = write!(out, "minimal polynomial {} at {v}", p.render());
    if let Ok(f) = factor_k(&p) {
        for (pi, m) in f.factors {
            let prof = circle_profile(&pi).map(|c| c.to_string()).unwrap_or_default();
            let _ = write!(out, "; factor ({})^{m} {prof}", pi.render());
            if let Place::Finite(w) = v {
                if let Ok(mu) = cfperiod_core::places::newton_min_root_ord(&pi, w) {
                    let _ = write!(out, " min root ord {mu}");
                }
            }
        }
    }
    out
}

pub fn cmd_growth(job: &JobSpec, cfg: &Config) -> Result<String, CliError> {
    let r = job.recurrence()?;
    let v = job.place()?;
    let (n0, n1) = job.range()?;
    let eps = job.option_rational("eps")?.unwrap_or_else(|| Rational::new(1.into(), 10.into()));
    let report = match growth_check(&r, &v, &eps, n0, n1, cfg.bits()) {
        Ok(rep) => rep,
        Err(Error::HypothesisViolated(msg)) => {
            return Err(CliError::Hypothesis(format!("{msg}\n{}", root_table(&r, &v))));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "# place: {v}");
    let _ = writeln!(out, "# dominant root: {}", report.dominant);
    let _ = writeln!(out, "# eps: {eps}, checked from n = {}", report.tail_start);
    let _ = writeln!(out, "# result: {}", if report.pass { "pass" } else { "fail" });
    let _ = writeln!(out, "n,log_abs,ord,bound,checked,ok");
    for row in &report.rows {
        let la = row.point.log_abs.as_ref().map(|e| fmt_sig(e.to_f64())).unwrap_or_default();
        let ord = row.point.ord.map(|o| o.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{},{}", row.point.n, la, ord, fmt_sig(row.bound.to_f64()), row.checked, row.ok);
    }
    Ok(out)
}

pub const DEFAULT_SLOPE_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLimit {
    pub slope: f64,
    pub positive: bool,
}

/// Least-squares slope of `value` against `n` over the second half of the
/// points. Empirical estimator, not a proof.
pub fn estimate_log_limit(values: &[(f64, f64)], margin: f64) -> Result<LogLimit, CliError> {
    if values.len() < 16 {
        return Err(CliError::TooFewPoints(values.len()));
    }
    let tail = &values[values.len() / 2..];
    let m = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / m;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(CliError::Usage("all points share the same n".into()));
    }
    let slope = sxy / sxx;
    Ok(LogLimit { slope, positive: slope > margin })
}

/// `(n, log |x_n|)` for a sequence of nonzero field elements.
pub fn log_abs_points(xs: &[(i64, QuadElem)], cfg: &Config) -> Result<Vec<(f64, f64)>, CliError> {
    xs.iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(n, x)| {
            let e = cfperiod_core::numeric::ln_abs_enclosure(x, cfg.bits())?;
            Ok((*n as f64, rat_to_f64(&e.mid())))
        })
        .collect()
}

/// Reads `n,value` lines (a header and `#` comments are skipped).
pub fn cmd_estimate(csv: &str, margin: f64) -> Result<String, CliError> {
    let mut pts = Vec::new();
    for (i, line) in csv.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split(',');
        let (a, b) = (it.next().unwrap_or(""), it.next().unwrap_or(""));
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(n), Ok(v)) => pts.push((n, v)),
            _ if i == 0 => continue,
            _ => {
                return Err(CliError::Parse(crate::ParseError {
                    line: i + 1,
                    column: 1,
                    message: format!("expected n,value; found {line:?}"),
                }))
            }
        }
    }
    let est = estimate_log_limit(&pts, margin)?;
    Ok(format!(
        "# empirical estimator, not a proof\nslope,{}\nmargin,{}\npositive,{}\n",
        fmt_sig(est.slope),
        fmt_sig(margin),
        est.positive
    ))
}

/// Integer-part check used by the acceptance suite: `ell(D (A_n + B_n)) =
/// ell(D A_n)` whenever `D B_n` is an integer.
pub fn shift_invariant(x: &QuadElem, shift: &BigInt) -> Result<bool, CliError> {
    let k = x.field();
    let y = x + &k.rational(Rational::from_integer(shift.clone()));
    Ok(scan_period(x, DEFAULT_STEP_CAP)?.period_len == scan_period(&y, DEFAULT_STEP_CAP)?.period_len)
}
