//! Boundedness classification of period lengths for recurrences over `K`.
//!
//! Everything is read off minimal characteristic polynomials: `P_A` of the
//! sequence, `P_D` of `A_n - A_n'` over `K` and `P_S` of `A_n + A_n'` over `Q`.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::polyalg::{
    circle_profile, factor_k, factor_q, integrality_of_irreducible, is_conjugate_pisot, is_unital, is_unital_q, minpoly_over_q,
    CircleProfile, IntegralityFlags, KPoly, Over, RatPoly,
};
use crate::qfield::QuadElem;
use crate::recurrence::{diff_sum_parts, nondegenerate_rec, rec_min_charpoly, split_degenerate, Annihilator, LinRec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ClassA,
    ClassBb,
    ClassCc,
    ProvenUnbounded,
    DegenerateInput,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ClassA => "class a",
            Verdict::ClassBb => "class b",
            Verdict::ClassCc => "class c (possibly bounded)",
            Verdict::ProvenUnbounded => "unbounded",
            Verdict::DegenerateInput => "degenerate input",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    B1,
    B2,
    B3,
    B4,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}");
        write!(f, "{}.{}", &s[..1], &s[1..])
    }
}

impl std::str::FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Step> {
        Ok(match s {
            "B.1" => Step::B1,
            "B.2" => Step::B2,
            "B.3" => Step::B3,
            "B.4" => Step::B4,
            "C.1" => Step::C1,
            "C.2" => Step::C2,
            "C.3" => Step::C3,
            "C.4" => Step::C4,
            "C.5" => Step::C5,
            "C.6" => Step::C6,
            _ => return Err(Error::Precondition(format!("unknown step tag {s:?}"))),
        })
    }
}

/// An irreducible factor of `P_D` over `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffFactor {
    pub factor: KPoly,
    pub multiplicity: usize,
    pub conj_fixed: bool,
    pub profile: CircleProfile,
    pub conj_profile: CircleProfile,
    pub minpoly: RatPoly,
    pub flags: IntegralityFlags,
}

/// An irreducible factor of `P_S` over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SumFactor {
    pub factor: RatPoly,
    pub multiplicity: usize,
    pub profile: CircleProfile,
    pub flags: IntegralityFlags,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvidenceReport {
    /// `None` for the zero sequence.
    pub pa_min: Option<KPoly>,
    pub degeneracy_orders: Vec<u64>,
    pub pd: Option<KPoly>,
    pub ps: Option<RatPoly>,
    pub pd_factors: Vec<DiffFactor>,
    pub ps_factors: Vec<SumFactor>,
    pub pd_unital: Option<bool>,
    pub pd_pisot: Option<bool>,
    pub ps_unital: Option<bool>,
    /// Unital test after splitting `A_n + A_n'` into non-degenerate parts.
    pub ps_unital_split: Option<(u64, bool)>,
    /// Index of the deciding factor: into `ps_factors` for C.5 and C.6,
    /// into `pd_factors` otherwise.
    pub witness: Option<usize>,
    pub notes: Vec<String>,
}

impl EvidenceReport {
    /// The conjugation-fixed part of the factor list of `P_D`.
    pub fn conj_fixed_factors(&self) -> impl Iterator<Item = &DiffFactor> {
        self.pd_factors.iter().filter(|f| f.conj_fixed)
    }

    /// Checks that every cited factor divides the polynomial it is cited for.
    pub fn verify(&self) -> Result<()> {
        if let Some(pd) = &self.pd {
            for f in &self.pd_factors {
                if !f.factor.pow(f.multiplicity).divides(pd) {
                    return Err(Error::Internal(format!("{} does not divide P_D", f.factor.render())));
                }
            }
        }
        if let Some(ps) = &self.ps {
            for f in &self.ps_factors {
                if !f.factor.pow(f.multiplicity).divides(ps) {
                    return Err(Error::Internal(format!("{} does not divide P_S", f.factor.render())));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub step: Option<Step>,
    pub reason: String,
    pub evidence: EvidenceReport,
    /// `A_0 - A_0'` for class b.
    pub beta: Option<QuadElem>,
    /// Root of `P_D` for class b.
    pub sign: Option<i32>,
    /// Step `d` and per-residue classifications for degenerate input.
    pub split: Option<(u64, Vec<Classification>)>,
}

/// Classification failure together with the evidence gathered so far.
#[derive(Debug)]
pub struct ClassifyError {
    pub error: Error,
    pub partial: EvidenceReport,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.error)
    }
}

impl std::error::Error for ClassifyError {}

impl From<ClassifyError> for Error {
    fn from(e: ClassifyError) -> Error {
        e.error
    }
}

fn outcome(verdict: Verdict, step: Option<Step>, reason: impl Into<String>, evidence: EvidenceReport) -> Classification {
    Classification { verdict, step, reason: reason.into(), evidence, beta: None, sign: None, split: None }
}

pub fn classify(r: &LinRec) -> std::result::Result<Classification, ClassifyError> {
    let mut ev = EvidenceReport::default();
    match run(r, &mut ev) {
        Ok(c) => Ok(c),
        Err(error) => Err(ClassifyError { error, partial: ev }),
    }
}

fn run(r: &LinRec, ev: &mut EvidenceReport) -> Result<Classification> {
    ev.pa_min = match rec_min_charpoly(r)? {
        Annihilator::ZeroSequence => None,
        Annihilator::Poly(p) => Some(p),
    };
    let (ok, orders) = nondegenerate_rec(r, Over::Q)?;
    if !ok {
        ev.degeneracy_orders = orders;
        return degenerate(r, ev);
    }

    let (pd, ps) = diff_sum_parts(r)?;
    ev.ps = ps.poly().cloned();
    let pd = match pd {
        Annihilator::ZeroSequence => {
            return Ok(outcome(Verdict::ClassA, None, "A_n is rational for all n (D = 0)", ev.clone()));
        }
        Annihilator::Poly(p) => p,
    };
    ev.pd = Some(pd.clone());
    gather_diff(&pd, ev)?;
    gather_sum(r, ev)?;
    ev.verify()?;

    if ev.conj_fixed_factors().next().is_some() {
        branch_b(r, &pd, ev)
    } else {
        branch_c(&pd, ev)
    }
}

fn degenerate(r: &LinRec, ev: &mut EvidenceReport) -> Result<Classification> {
    let (d, parts) = split_degenerate(r)?;
    let results: Vec<std::result::Result<Classification, ClassifyError>> = std::thread::scope(|s| {
        let handles: Vec<_> = parts.iter().map(|p| s.spawn(move || classify(p))).collect();
        handles.into_iter().map(|h| h.join().expect("classifier worker panicked")).collect()
    });
    let mut subs = Vec::with_capacity(results.len());
    for (j, res) in results.into_iter().enumerate() {
        match res {
            Ok(c) => subs.push(c),
            Err(e) => {
                ev.notes.push(format!("residue class {j} mod {d} failed"));
                return Err(e.error);
            }
        }
    }
    let mut c = outcome(
        Verdict::DegenerateInput,
        None,
        format!("some ratio of roots is a root of unity; split into {d} subsequences"),
        ev.clone(),
    );
    c.split = Some((d, subs));
    Ok(c)
}

fn gather_diff(pd: &KPoly, ev: &mut EvidenceReport) -> Result<()> {
    for (pi, m) in factor_k(pd)?.factors {
        let conj = pi.conj();
        let minpoly = minpoly_over_q(&pi)?;
        ev.pd_factors.push(DiffFactor {
            conj_fixed: conj == pi,
            profile: circle_profile(&pi)?,
            conj_profile: circle_profile(&conj)?,
            flags: integrality_of_irreducible(&minpoly),
            minpoly,
            factor: pi,
            multiplicity: m,
        });
    }
    ev.pd_unital = Some(is_unital(pd)?);
    ev.pd_pisot = Some(is_conjugate_pisot(pd)?);
    Ok(())
}

fn gather_sum(r: &LinRec, ev: &mut EvidenceReport) -> Result<()> {
    let Some(ps) = ev.ps.clone() else {
        ev.ps_unital = Some(true);
        ev.notes.push("A_n + A_n' vanishes; its root conditions hold vacuously".into());
        return Ok(());
    };
    for (f, m) in factor_q(&ps)?.factors {
        ev.ps_factors.push(SumFactor { profile: circle_profile(&f)?, flags: integrality_of_irreducible(&f), factor: f, multiplicity: m });
    }
    let direct = is_unital_q(&ps)?;
    ev.ps_unital = Some(direct);

    let k = r.field();
    let sum: Vec<QuadElem> = (0..ps.deg() as i64).map(|n| &r.term(n) + &r.term(n).conj()).collect();
    let s = LinRec::from_charpoly(&ps.to_k(k), sum)?;
    if !nondegenerate_rec(&s, Over::Q)?.0 {
        let (d, parts) = split_degenerate(&s)?;
        let mut all = true;
        for p in &parts {
            if let Annihilator::Poly(q) = rec_min_charpoly(p)? {
                all &= q.deg() == 0 || is_unital(&q)?;
            }
        }
        ev.ps_unital_split = Some((d, all));
        if all != direct {
            ev.notes.push(format!("unital test on A_n + A_n' differs after splitting mod {d}: {direct} vs {all}"));
        }
    }
    Ok(())
}

fn ps_unital(ev: &EvidenceReport) -> bool {
    match ev.ps_unital_split {
        Some((_, u)) => u,
        None => ev.ps_unital.unwrap_or(true),
    }
}

/// `Some(+1)` or `Some(-1)` if `p = (X -/+ 1)^m`.
fn plus_minus_one_power(p: &KPoly) -> Option<i32> {
    let k = p.field();
    let m = p.deg();
    for s in [1i64, -1] {
        let lin = KPoly::linear(&k.int(s, 0));
        if *p == lin.pow(m) {
            return Some(s as i32);
        }
    }
    None
}

fn branch_b(r: &LinRec, pd: &KPoly, ev: &mut EvidenceReport) -> Result<Classification> {
    if let Some(i) = ev.pd_factors.iter().position(|f| f.conj_fixed && (f.profile.inside > 0 || f.profile.outside > 0)) {
        ev.witness = Some(i);
        let f = &ev.pd_factors[i];
        let reason =
            format!("conjugation-fixed factor {} has a root of absolute value != 1 {}", f.factor.render(), f.profile);
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::B1), reason, ev.clone()));
    }
    let power = plus_minus_one_power(pd);
    let unital = ps_unital(ev);
    if pd.deg() != 1 {
        if let Some(s) = power {
            if unital {
                let reason = format!("P_D = (X {} 1)^{} with multiplicity >= 2 and A_n + A_n' unital", if s > 0 { "-" } else { "+" }, pd.deg());
                return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::B4), reason, ev.clone()));
            }
            ev.notes.push("P_D is a power of X -/+ 1 and A_n + A_n' is not unital; both B.3 and B.4 conditions are close, B.3 is reported".into());
        }
        if !unital {
            return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::B3), "A_n + A_n' is not unital", ev.clone()));
        }
        let reason = format!("P_D = {} is not of the form (X -/+ 1)^m", pd.render());
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::B2), reason, ev.clone()));
    }
    if !unital {
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::B3), "A_n + A_n' is not unital", ev.clone()));
    }
    let sign = power.ok_or_else(|| Error::Internal("linear conjugation-fixed P_D without a root of modulus 1".into()))?;
    let beta = &r.term(0) - &r.term(0).conj();
    let mut c = outcome(Verdict::ClassBb, None, format!("A_n - A_n' = ({sign})^n * ({beta})"), ev.clone());
    c.beta = Some(beta);
    c.sign = Some(sign);
    Ok(c)
}

fn branch_c(pd: &KPoly, ev: &mut EvidenceReport) -> Result<Classification> {
    if let Some(i) =
        ev.pd_factors.iter().position(|f| f.profile.has_root_at_least_one() && f.conj_profile.has_root_at_least_one())
    {
        ev.witness = Some(i);
        let f = &ev.pd_factors[i];
        let reason = format!(
            "both {} {} and {} {} have a root of absolute value >= 1",
            f.factor.render(),
            f.profile,
            f.factor.conj().render(),
            f.conj_profile
        );
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C1), reason, ev.clone()));
    }
    if let Some(i) = ev.pd_factors.iter().position(|f| f.profile.on > 0) {
        ev.witness = Some(i);
        let f = &ev.pd_factors[i];
        let reason = format!("{} has a root on the unit circle {}", f.factor.render(), f.profile);
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C2), reason, ev.clone()));
    }
    if ev.pd_pisot != Some(true) {
        let reason = format!("P_D = {} is not Pisot", pd.render());
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C3), reason, ev.clone()));
    }
    if ev.pd_unital != Some(true) {
        if let Some(i) = ev.pd_factors.iter().position(|f| !f.flags.is_unit) {
            ev.witness = Some(i);
        }
        let reason = format!("P_D = {} is Pisot but not unital", pd.render());
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C4), reason, ev.clone()));
    }
    if let Some(i) = ev.ps_factors.iter().position(|f| f.profile.has_root_at_least_one() && !f.flags.is_alg_integer) {
        ev.witness = Some(i);
        let reason = format!(
            "A_n + A_n' has a root of absolute value >= 1 that is not an algebraic integer (factor {})",
            ev.ps_factors[i].factor.render()
        );
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C5), reason, ev.clone()));
    }
    if let Some(i) = ev.ps_factors.iter().position(|f| f.profile.has_root_at_most_one() && !f.flags.is_recip_alg_integer) {
        ev.witness = Some(i);
        let reason = format!(
            "A_n + A_n' has a root of absolute value <= 1 that is not the reciprocal of an algebraic integer (factor {})",
            ev.ps_factors[i].factor.render()
        );
        return Ok(outcome(Verdict::ProvenUnbounded, Some(Step::C6), reason, ev.clone()));
    }
    Ok(outcome(
        Verdict::ClassCc,
        None,
        "A_n - A_n' is unital Pisot and the roots of A_n + A_n' satisfy the integrality conditions; possibly bounded",
        ev.clone(),
    ))
}

fn flags_str(f: &IntegralityFlags) -> String {
    format!("integer={} reciprocal_integer={} unit={}", f.is_alg_integer, f.is_recip_alg_integer, f.is_unit)
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn explain_into(c: &Classification, out: &mut String, indent: &str) {
    let ev = &c.evidence;
    let _ = writeln!(out, "{indent}verdict: {}", c.verdict);
    if let Some(s) = c.step {
        let _ = writeln!(out, "{indent}step: {s}");
    }
    let _ = writeln!(out, "{indent}reason: {}", c.reason);
    let pa = ev.pa_min.as_ref().map(|p| p.render()).unwrap_or_else(|| "zero sequence".into());
    let _ = writeln!(out, "{indent}minimal polynomial: {pa}");
    if let Some((d, subs)) = &c.split {
        let orders: Vec<String> = ev.degeneracy_orders.iter().map(|o| o.to_string()).collect();
        let _ = writeln!(out, "{indent}root-of-unity orders: {}", orders.join(", "));
        let _ = writeln!(out, "{indent}d = {d}");
        for (j, s) in subs.iter().enumerate() {
            let _ = writeln!(out, "{indent}part n = {d}m + {j}:");
            explain_into(s, out, &format!("{indent}  "));
        }
        return;
    }
    match &ev.pd {
        None => {
            let _ = writeln!(out, "{indent}P_D: 0 (D = 0)");
        }
        Some(pd) => {
            let _ = writeln!(out, "{indent}P_D: {}", pd.render());
            for f in &ev.pd_factors {
                let _ = writeln!(
                    out,
                    "{indent}  factor ({})^{} {} conj {} {} minpoly {} {}",
                    f.factor.render(),
                    f.multiplicity,
                    if f.conj_fixed { "fixed" } else { "moved" },
                    f.factor.conj().render(),
                    f.profile,
                    f.minpoly.render(),
                    flags_str(&f.flags)
                );
                if !f.conj_fixed {
                    let _ = writeln!(out, "{indent}    conjugate profile {}", f.conj_profile);
                }
            }
            let _ = writeln!(out, "{indent}P_D unital: {}, Pisot: {}", opt_bool(ev.pd_unital), opt_bool(ev.pd_pisot));
        }
    }
    match &ev.ps {
        None => {
            let _ = writeln!(out, "{indent}P_S: 0");
        }
        Some(ps) => {
            let _ = writeln!(out, "{indent}P_S: {}", ps.render());
            for f in &ev.ps_factors {
                let _ = writeln!(
                    out,
                    "{indent}  factor ({})^{} {} {}",
                    f.factor.render(),
                    f.multiplicity,
                    f.profile,
                    flags_str(&f.flags)
                );
            }
        }
    }
    if ev.pd.is_some() {
        let _ = writeln!(out, "{indent}P_S unital: {}", opt_bool(ev.ps_unital));
        if let Some((d, u)) = ev.ps_unital_split {
            let _ = writeln!(out, "{indent}P_S unital after splitting mod {d}: {}", if u { "yes" } else { "no" });
        }
    }
    if let (Some(b), Some(s)) = (&c.beta, c.sign) {
        let _ = writeln!(out, "{indent}beta = {b}, sign = {s:+}");
    }
    for n in &ev.notes {
        let _ = writeln!(out, "{indent}note: {n}");
    }
}

/// Deterministic multi-line report.
pub fn explain(c: &Classification) -> String {
    let mut out = String::new();
    explain_into(c, &mut out, "");
    out
}

impl Classification {
    pub fn tag(&self) -> String {
        match self.step {
            Some(s) => format!("{} {s}", self.verdict),
            None => self.verdict.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{rat, QuadField};

    fn k(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn geo(f: QuadField, a: i64, b: i64) -> LinRec {
        LinRec::geometric(&f.int(a, b), &f.one()).unwrap()
    }

    fn check(r: &LinRec, verdict: Verdict, step: Option<Step>) -> Classification {
        let c = classify(r).unwrap();
        assert_eq!((c.verdict, c.step), (verdict, step), "{r}\n{}", explain(&c));
        c
    }

    #[test]
    fn class_a_and_b() {
        let f5 = k(5);
        let fib = LinRec::rational(f5, &[rat(1, 1), rat(1, 1)], &[rat(0, 1), rat(1, 1)]).unwrap();
        let c = check(&fib, Verdict::ClassA, None);
        assert!(explain(&c).contains("D = 0"));

        let lin = LinRec::new(f5, vec![f5.int(2, 0), f5.int(-1, 0)], vec![f5.int(0, 1), f5.int(1, 1)]).unwrap();
        let c = check(&lin, Verdict::ClassBb, None);
        assert_eq!(c.beta, Some(f5.int(0, 2)));
        assert_eq!(c.sign, Some(1));
        assert_eq!(c.evidence.pd.as_ref().unwrap().deg(), 1);

        let f2 = k(2);
        let alt = LinRec::geometric(&f2.int(-1, 0), &f2.int(0, 1)).unwrap();
        let c = check(&alt, Verdict::ClassBb, None);
        assert_eq!(c.sign, Some(-1));
        assert_eq!(c.beta, Some(f2.int(0, 2)));
    }

    #[test]
    fn b_branch() {
        let f5 = k(5);
        let r = LinRec::geometric(&f5.int(2, 0), &f5.int(0, 1)).unwrap();
        check(&r, Verdict::ProvenUnbounded, Some(Step::B1));

        let sq = LinRec::new(f5, vec![f5.int(3, 0), f5.int(-3, 0), f5.int(1, 0)], vec![f5.int(0, 0), f5.int(0, 1), f5.int(0, 4)])
            .unwrap();
        let c = check(&sq, Verdict::ProvenUnbounded, Some(Step::B4));
        assert_eq!(c.evidence.pd.as_ref().unwrap().render(), KPoly::linear(&f5.one()).pow(3).render());
        assert!(c.evidence.ps.is_none());

        // n sqrt 5 + (1/2)^n: P_D = (X - 1)^2, P_S = X - 1/2
        let half = LinRec::geometric(&f5.rational(rat(1, 2)), &f5.one()).unwrap();
        let nsq = LinRec::new(f5, vec![f5.int(2, 0), f5.int(-1, 0)], vec![f5.int(0, 0), f5.int(0, 1)]).unwrap();
        check(&nsq.add(&half).unwrap(), Verdict::ProvenUnbounded, Some(Step::B3));

        // sqrt 5 (1 + (-1)^n) is degenerate; sqrt 5 + n has P_D = X - 1 and P_S = (X - 1)^2
        // sqrt 5 + 2^n: P_D = X - 1 and P_S = X - 2 unital only if 2 is a unit
        let two = LinRec::geometric(&f5.int(2, 0), &f5.one()).unwrap();
        let c = LinRec::geometric(&f5.one(), &f5.int(0, 1)).unwrap();
        check(&c.add(&two).unwrap(), Verdict::ProvenUnbounded, Some(Step::B3));

        // sqrt 5 + (1+sqrt 2)^n style unit: use the golden ratio square
        let unit = LinRec::rational(f5, &[rat(3, 1), rat(-1, 1)], &[rat(2, 1), rat(3, 1)]).unwrap();
        let c = check(&c.add(&unit).unwrap(), Verdict::ClassBb, None);
        assert_eq!(c.beta, Some(f5.int(0, 2)));

        // P_D = (X - 1)(X + 1) conj-fixed, both roots on the circle, A + A' unital
        let alt = LinRec::geometric(&f5.int(-1, 0), &f5.int(0, 1)).unwrap();
        let plain = LinRec::geometric(&f5.one(), &f5.int(0, 2)).unwrap();
        let r = alt.add(&plain).unwrap();
        let c = classify(&r).unwrap();
        assert_eq!(c.verdict, Verdict::DegenerateInput);
    }

    #[test]
    fn c_branch() {
        let f2 = k(2);
        let c = check(&geo(f2, 1, 1), Verdict::ClassCc, None);
        assert!(c.evidence.ps_factors.iter().all(|f| f.flags.is_unit));
        assert!(explain(&c).contains("possibly bounded"));

        let c = check(&geo(f2, 3, 1), Verdict::ProvenUnbounded, Some(Step::C1));
        let w = &c.evidence.pd_factors[c.evidence.witness.unwrap()];
        assert!(w.profile.has_root_at_least_one() && w.conj_profile.has_root_at_least_one());

        check(&geo(k(3), 1, 1), Verdict::ProvenUnbounded, Some(Step::C4));

        let unit = geo(f2, 1, 1);
        let up = LinRec::geometric(&f2.rational(rat(3, 2)), &f2.one()).unwrap();
        check(&unit.add(&up).unwrap(), Verdict::ProvenUnbounded, Some(Step::C5));
        let down = LinRec::geometric(&f2.rational(rat(2, 3)), &f2.one()).unwrap();
        check(&unit.add(&down).unwrap(), Verdict::ProvenUnbounded, Some(Step::C6));
    }

    #[test]
    fn degenerate_split() {
        let f2 = k(2);
        let r = geo(f2, 0, 1).add(&geo(f2, 1, 1)).unwrap();
        let c = check(&r, Verdict::DegenerateInput, None);
        let (d, parts) = c.split.as_ref().unwrap();
        assert_eq!(*d, 2);
        assert_eq!(parts.len(), 2);
        // A_2n = 2^n + (3+2 sqrt 2)^n, A_2n+1 = sqrt 2 2^n + (1+sqrt 2)(3+2 sqrt 2)^n
        assert_eq!((parts[0].verdict, parts[0].step), (Verdict::ClassCc, None), "{}", explain(&parts[0]));
        assert_eq!((parts[1].verdict, parts[1].step), (Verdict::ProvenUnbounded, Some(Step::B1)));
        let text = explain(&c);
        assert!(text.contains("d = 2") && text.contains("part n = 2m + 1"));
    }

    #[test]
    fn conjugate_and_scaling() {
        let f2 = k(2);
        let f5 = k(5);
        let suite = [
            geo(f2, 1, 1),
            geo(f2, 3, 1),
            LinRec::geometric(&f5.int(2, 0), &f5.int(0, 1)).unwrap(),
            LinRec::new(f5, vec![f5.int(2, 0), f5.int(-1, 0)], vec![f5.int(0, 1), f5.int(1, 1)]).unwrap(),
        ];
        for r in &suite {
            let c = classify(r).unwrap();
            let cc = classify(&r.conj_rec()).unwrap();
            assert_eq!((c.verdict, c.step), (cc.verdict, cc.step), "{r}");
            for m in [2, 3, 6] {
                let s = classify(&r.scaled(&r.field().int(m, 0))).unwrap();
                assert_eq!(c.verdict, s.verdict, "{r} times {m}");
            }
        }
    }

    #[test]
    fn step_tags_round_trip() {
        for s in [Step::B1, Step::B4, Step::C3, Step::C6] {
            assert_eq!(s.to_string().parse::<Step>().unwrap(), s);
        }
        assert_eq!(Step::C1.to_string(), "C.1");
    }
}
