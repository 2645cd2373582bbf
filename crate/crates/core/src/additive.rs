//! Group inverse of a sum `a + b` of square matrices.
//!
//! Each statement is realized as a hypothesis checklist, a condition
//! checklist and a closed-form expression for `(a + b)^#`. Reports keep both
//! lists, the intermediate matrices of the formula and the verdict of an
//! independent oracle.
//!
//! When an element such as `a` has no group inverse, its Drazin inverse is
//! used in the intermediate formulas so that the remaining items can still
//! be evaluated; the failed membership item already makes the report
//! inapplicable.

use serde::Serialize;

use crate::elem::{prod, Ctx, Elem, Inv};
use crate::error::{GinvError, Result};
use crate::ginv::{agree, oracle_group_inverse_scaled, verify_axioms_scaled};
use crate::matrix::{negligible_bound, CMatrix, Tolerance};
use crate::theorem::{find, Check, Named, TheoremId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumGinvReport {
    pub theorem: TheoremId,
    pub hypotheses: Vec<Check>,
    pub conditions: Vec<Check>,
    /// All hypotheses pass.
    pub applicable: bool,
    /// Verdict of the conditions; `None` unless applicable.
    pub decision: Option<bool>,
    /// Closed-form inverse, present only if it also passes the axioms.
    pub inverse: Option<CMatrix>,
    pub trace: Vec<Named>,
    pub oracle_exists: bool,
    /// Inverse agrees with the oracle to [`Tolerance::match_rel`].
    pub oracle_match: Option<bool>,
    pub notes: Vec<String>,
}

impl SumGinvReport {
    pub fn failed_hypotheses(&self) -> Vec<&Check> {
        self.hypotheses.iter().filter(|c| !c.pass).collect()
    }

    pub fn failed_conditions(&self) -> Vec<&Check> {
        self.conditions.iter().filter(|c| !c.pass).collect()
    }

    /// Looks up a hypothesis or condition by name; spacing, braces and
    /// `\pi` vs `π` spellings are ignored.
    pub fn check(&self, name: &str) -> Option<&Check> {
        find(&self.hypotheses, name).or_else(|| find(&self.conditions, name))
    }

    pub fn trace_value(&self, name: &str) -> Option<&CMatrix> {
        self.trace.iter().find(|t| t.name == name).map(|t| &t.value)
    }
}

/// Reports of every statement about `a + b`, in tag order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutoSumReport {
    pub reports: Vec<SumGinvReport>,
    pub oracle_exists: bool,
    pub oracle_inverse: Option<CMatrix>,
    /// All produced inverses agree with each other and with the oracle;
    /// `None` when no statement produced an inverse.
    pub consensus: Option<bool>,
}

impl AutoSumReport {
    pub fn produced(&self) -> impl Iterator<Item = &SumGinvReport> {
        self.reports.iter().filter(|r| r.inverse.is_some())
    }
}

pub(crate) struct Draft {
    pub hypotheses: Vec<Check>,
    pub conditions: Vec<Check>,
    pub candidate: Option<Elem>,
    pub trace: Vec<Named>,
    pub notes: Vec<String>,
}

impl Draft {
    pub fn new() -> Self {
        Draft {
            hypotheses: Vec::new(),
            conditions: Vec::new(),
            candidate: None,
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn trace(&mut self, name: &str, e: &Elem) {
        self.trace.push(Named {
            name: name.to_string(),
            value: e.m.clone(),
        });
    }

    pub fn transposed(mut self) -> Self {
        self.candidate = self.candidate.map(|c| c.t());
        for t in &mut self.trace {
            t.value = t.value.transpose();
        }
        self
    }

    pub fn note_drazin(&mut self, name: &str, inv: &Inv) {
        if !inv.exists {
            self.notes.push(format!(
                "{name} has no group inverse; its Drazin inverse stands in for {name}^# in the trace"
            ));
        }
    }
}

pub(crate) struct Verdict {
    pub applicable: bool,
    pub decision: Option<bool>,
    pub inverse: Option<CMatrix>,
    pub oracle_exists: bool,
    pub oracle_match: Option<bool>,
}

/// Decides applicability and the verdict, checks the candidate against the
/// axioms for `target` and consults the oracle.
pub(crate) fn settle(ctx: &Ctx, target: &Elem, d: &mut Draft) -> Verdict {
    let applicable = d.hypotheses.iter().all(|c| c.pass);
    let decision = applicable.then(|| d.conditions.iter().all(|c| c.pass));
    let mut inverse = None;
    if decision == Some(true) {
        if let Some(c) = d.candidate.take() {
            let check = verify_axioms_scaled(&target.m, target.mag, &c.m, &ctx.tol)
                .expect("candidate has the target's shape");
            if check.verdict {
                inverse = Some(c.m);
            } else {
                d.notes.push(format!(
                    "closed-form candidate fails the group-inverse axioms (residuals {:.3e}, {:.3e}, {:.3e})",
                    check.residuals.outer, check.residuals.commute, check.residuals.inner
                ));
            }
        }
    }
    let oracle = oracle_group_inverse_scaled(&target.m, target.mag, &ctx.tol)
        .expect("square by construction");
    let oracle_match = inverse.as_ref().map(|x| {
        oracle
            .inverse
            .as_ref()
            .is_some_and(|y| agree(y, x, ctx.tol.match_rel()))
    });
    Verdict {
        applicable,
        decision,
        inverse,
        oracle_exists: oracle.exists,
        oracle_match,
    }
}

fn finish(theorem: TheoremId, ctx: &Ctx, target: &Elem, mut d: Draft) -> SumGinvReport {
    let v = settle(ctx, target, &mut d);
    SumGinvReport {
        theorem,
        hypotheses: d.hypotheses,
        conditions: d.conditions,
        applicable: v.applicable,
        decision: v.decision,
        inverse: v.inverse,
        trace: d.trace,
        oracle_exists: v.oracle_exists,
        oracle_match: v.oracle_match,
        notes: d.notes,
    }
}

fn require_pair(a: &CMatrix, b: &CMatrix) -> Result<()> {
    a.require_square()?;
    b.require_square()?;
    if a.shape() != b.shape() {
        return Err(GinvError::DimensionMismatch {
            op: "sum",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

fn idempotent(p: &Elem, tol: &Tolerance) -> Result<()> {
    p.m.require_square()?;
    let r = (&p.sq() - p).m.frobenius_norm();
    if r > negligible_bound(p.mag * p.mag + p.mag, tol) {
        return Err(GinvError::NotIdempotent { residual: r });
    }
    Ok(())
}

fn complement(p: &Elem) -> Elem {
    &Elem::identity(p.n()) - p
}

/// Pierce blocks `(pxp, pxp^π, p^πxp, p^πxp^π)` of `x` with respect to `p`.
pub fn pierce_blocks(x: &CMatrix, p: &CMatrix, tol: &Tolerance) -> Result<[CMatrix; 4]> {
    let (x, p) = (Elem::new(x.clone()), Elem::new(p.clone()));
    idempotent(&p, tol)?;
    if x.m.shape() != p.m.shape() {
        return Err(GinvError::DimensionMismatch {
            op: "pierce_blocks",
            left: x.m.shape(),
            right: p.m.shape(),
        });
    }
    let q = complement(&p);
    Ok([
        prod(&[&p, &x, &p]).m,
        prod(&[&p, &x, &q]).m,
        prod(&[&q, &x, &p]).m,
        prod(&[&q, &x, &q]).m,
    ])
}

/// Group inverse of `x` whose Pierce block `pxp^π` vanishes, from the group
/// inverses of the corners `pxp` and `p^πxp^π`.
pub fn lemma21_ginv(x: &CMatrix, p: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    tol.validate()?;
    let ctx = Ctx::new(tol);
    let (x, p) = (Elem::new(x.clone()), Elem::new(p.clone()));
    idempotent(&p, tol)?;
    if x.m.shape() != p.m.shape() {
        return Err(GinvError::DimensionMismatch {
            op: "lemma21_ginv",
            left: x.m.shape(),
            right: p.m.shape(),
        });
    }
    let q = complement(&p);
    let upper = prod(&[&p, &x, &q]);
    let r = upper.m.frobenius_norm();
    if r > negligible_bound(upper.mag, tol) {
        return Err(GinvError::ShapeViolation { residual: r });
    }
    let a = prod(&[&p, &x, &p]);
    let c = prod(&[&q, &x, &p]);
    let d = prod(&[&q, &x, &q]);

    let mut dr = Draft::new();
    let (ha, ai) = ctx.member("pxp ∈ R^#", &a);
    let (hd, di) = ctx.member("p^πxp^π ∈ R^#", &d);
    dr.hypotheses = vec![ha, hd];
    dr.conditions = vec![ctx.zero("d^πca^π = 0", &prod(&[&di.pi, &c, &ai.pi]))];

    let u = &(&prod(&[&di.pi, &c, &ai.x.sq()]) + &prod(&[&di.x.sq(), &c, &ai.pi]))
        - &prod(&[&di.x, &c, &ai.x]);
    for (name, e) in [
        ("a", &a),
        ("c", &c),
        ("d", &d),
        ("a^#", &ai.x),
        ("d^#", &di.x),
        ("u", &u),
    ] {
        dr.trace(name, e);
    }
    dr.candidate = Some(&(&ai.x + &u) + &di.x);
    Ok(finish(TheoremId::Lem21, &ctx, &x, dr))
}

/// `((pb)^#, (bp^π)^#)` computed as `(pb^#, b^#p^π)`.
pub fn lemma22_corner(b: &CMatrix, p: &CMatrix, tol: &Tolerance) -> Result<(CMatrix, CMatrix)> {
    tol.validate()?;
    let ctx = Ctx::new(tol);
    let (b, p) = (Elem::new(b.clone()), Elem::new(p.clone()));
    idempotent(&p, tol)?;
    require_pair(&b.m, &p.m)?;
    let q = complement(&p);
    let (hb, bi) = ctx.member("b ∈ R^#", &b);
    let hz = ctx.zero("pbp^π = 0", &prod(&[&p, &b, &q]));
    let bq = &b * &q;
    let hq = ctx.member_check("bp^π ∈ R^#", &bq);
    if let Some(failed) = [hb, hz, hq].into_iter().find(|c| !c.pass) {
        return Err(GinvError::HypothesisFailed(failed.name));
    }
    let pb = &p * &b;
    let left = &p * &bi.x;
    let right = &bi.x * &q;
    for (target, x, name) in [(&pb, &left, "pb"), (&bq, &right, "bp^π")] {
        let check = verify_axioms_scaled(&target.m, target.mag, &x.m, tol)?;
        if !check.verdict {
            return Err(GinvError::AxiomsFailed(name.to_string()));
        }
    }
    Ok((left.m, right.m))
}

/// `w^# + b^#a^πb^#a^πbaa^#w^π - b^#a^πbw^# + b^#a^π` for `w = aa^#(a+b)`.
pub(crate) fn assemble_right(
    a: &Elem,
    ag: &Elem,
    api: &Elem,
    b: &Elem,
    bg: &Elem,
    wg: &Elem,
    wpi: &Elem,
) -> Elem {
    let t1 = prod(&[bg, api, bg, api, b, a, ag, wpi]);
    let t2 = prod(&[bg, api, b, wg]);
    let t3 = bg * api;
    &(&(wg + &t1) - &t2) + &t3
}

/// `v^# + v^πaa^#ba^πb^#a^πb^# - v^#ba^πb^# + a^πb^#` for `v = (a+b)aa^#`.
pub(crate) fn assemble_left(
    a: &Elem,
    ag: &Elem,
    api: &Elem,
    b: &Elem,
    bg: &Elem,
    vg: &Elem,
    vpi: &Elem,
) -> Elem {
    let t1 = prod(&[vpi, a, ag, b, api, bg, api, bg]);
    let t2 = prod(&[vg, b, api, bg]);
    let t3 = api * bg;
    &(&(vg + &t1) - &t2) + &t3
}

struct Base {
    a: Elem,
    b: Elem,
    ai: Inv,
    bi: Inv,
    ha: Check,
    hb: Check,
}

impl Base {
    fn new(ctx: &Ctx, a: Elem, b: Elem) -> Self {
        let (ha, ai) = ctx.member("a ∈ R^#", &a);
        let (hb, bi) = ctx.member("b ∈ R^#", &b);
        Base {
            a,
            b,
            ai,
            bi,
            ha,
            hb,
        }
    }

    fn draft(&self) -> Draft {
        let mut d = Draft::new();
        d.hypotheses = vec![self.ha.clone(), self.hb.clone()];
        d.note_drazin("a", &self.ai);
        d.note_drazin("b", &self.bi);
        d
    }

    fn sum(&self) -> Elem {
        &self.a + &self.b
    }

    fn assemble(&self, wg: &Elem, wpi: &Elem) -> Elem {
        assemble_right(
            &self.a,
            &self.ai.x,
            &self.ai.pi,
            &self.b,
            &self.bi.x,
            wg,
            wpi,
        )
    }

    /// `(a + aa^#b)^#` through `s = aa^#b + bb^#a`, pushing `s`, `s^#`,
    /// `s^π`, `w`, `w^#`, `w^π` onto the trace.
    fn candidate_via_s(&self, d: &mut Draft, s: &Elem, si: &Inv) -> Elem {
        let (a, b, ag, bg) = (&self.a, &self.b, &self.ai.x, &self.bi.x);
        let bpi = &self.bi.pi;
        let t = ag * bpi;
        let k = &prod(&[a, b, bg]) - &prod(&[a, ag, b, bg, a]);
        let wg = &(&(&si.x + &t) + &prod(&[&t, &t, &k, &si.pi])) - &prod(&[&t, &k, &si.x]);
        let w = self.w();
        let wpi = &Elem::identity(w.n()) - &(&w * &wg);
        for (name, e) in [
            ("s", s),
            ("s^#", &si.x),
            ("s^π", &si.pi),
            ("w", &w),
            ("w^#", &wg),
            ("w^π", &wpi),
        ] {
            d.trace(name, e);
        }
        self.assemble(&wg, &wpi)
    }

    /// `w = a + aa^#b`.
    fn w(&self) -> Elem {
        &self.a + &prod(&[&self.a, &self.ai.x, &self.b])
    }

    fn s(&self) -> Elem {
        &prod(&[&self.a, &self.ai.x, &self.b]) + &prod(&[&self.b, &self.bi.x, &self.a])
    }

    fn trace_basics(&self, d: &mut Draft) {
        d.trace("a^#", &self.ai.x);
        d.trace("b^#", &self.bi.x);
        d.trace("a^π", &self.ai.pi);
        d.trace("b^π", &self.bi.pi);
    }
}

struct Labels23 {
    hyp: [&'static str; 2],
    cond: [&'static str; 2],
    w: [&'static str; 3],
}

const THM23: Labels23 = Labels23 {
    hyp: ["ba^π ∈ R^#", "aba^π = 0"],
    cond: ["a(1+a^#b) ∈ R^#", "b^πa^πb = 0"],
    w: ["w", "w^#", "w^π"],
};

const COR24: Labels23 = Labels23 {
    hyp: ["a^πb ∈ R^#", "a^πba = 0"],
    cond: ["(1+ba^#)a ∈ R^#", "ba^πb^π = 0"],
    w: ["v", "v^#", "v^π"],
};

fn thm23_draft(ctx: &Ctx, base: &Base, labels: &Labels23) -> Draft {
    let mut d = base.draft();
    let (a, b, ai, bi) = (&base.a, &base.b, &base.ai, &base.bi);
    d.hypotheses
        .push(ctx.member_check(labels.hyp[0], &(b * &ai.pi)));
    d.hypotheses
        .push(ctx.zero(labels.hyp[1], &prod(&[a, b, &ai.pi])));

    let w = base.w();
    let (cw, wi) = ctx.member(labels.cond[0], &w);
    d.conditions.push(cw);
    d.conditions
        .push(ctx.zero(labels.cond[1], &prod(&[&bi.pi, &ai.pi, b])));
    d.note_drazin(labels.w[0], &wi);

    base.trace_basics(&mut d);
    d.trace(labels.w[0], &w);
    d.trace(labels.w[1], &wi.x);
    d.trace(labels.w[2], &wi.pi);
    d.candidate = Some(base.assemble(&wi.x, &wi.pi));
    d
}

fn elems(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<(Ctx, Elem, Elem)> {
    tol.validate()?;
    require_pair(a, b)?;
    Ok((Ctx::new(tol), Elem::new(a.clone()), Elem::new(b.clone())))
}

/// Sum under `a,b,ba^π ∈ R^#` and `aba^π = 0`; conditions
/// `a(1+a^#b) ∈ R^#` and `b^πa^πb = 0`.
pub fn thm23_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let d = thm23_draft(&ctx, &base, &THM23);
    Ok(finish(TheoremId::Thm23, &ctx, &base.sum(), d))
}

/// Mirror image of [`thm23_sum`], evaluated on the transposed pair.
pub fn cor24_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a.t(), b.t());
    let d = thm23_draft(&ctx, &base, &COR24).transposed();
    Ok(finish(TheoremId::Cor24, &ctx, &(&a + &b), d))
}

/// Sum under `a,b,ba^π,ab^π ∈ R^#`, `aba^π = 0`, `bab^π = 0`; conditions
/// `aa^#b+bb^#a ∈ R^#`, `a^πb^πa = 0`, `b^πa^πb = 0`.
pub fn thm25_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let mut d = base.draft();
    let (a, b, ai, bi) = (&base.a, &base.b, &base.ai, &base.bi);
    d.hypotheses.extend([
        ctx.member_check("ba^π ∈ R^#", &(b * &ai.pi)),
        ctx.member_check("ab^π ∈ R^#", &(a * &bi.pi)),
        ctx.zero("aba^π = 0", &prod(&[a, b, &ai.pi])),
        ctx.zero("bab^π = 0", &prod(&[b, a, &bi.pi])),
    ]);
    let s = base.s();
    let (cs, si) = ctx.member("aa^#b+bb^#a ∈ R^#", &s);
    d.conditions.extend([
        cs,
        ctx.zero("a^πb^πa = 0", &prod(&[&ai.pi, &bi.pi, a])),
        ctx.zero("b^πa^πb = 0", &prod(&[&bi.pi, &ai.pi, b])),
    ]);
    base.trace_basics(&mut d);
    d.candidate = Some(base.candidate_via_s(&mut d, &s, &si));
    Ok(finish(TheoremId::Thm25, &ctx, &base.sum(), d))
}

const COR26_NOTE: &str = "over the complex field 2aa^#b ∈ R^# holds exactly when aa^#b ∈ R^# does";

struct Labels26 {
    hyp: [&'static str; 2],
    cond: &'static str,
    note: &'static str,
}

const COR26: Labels26 = Labels26 {
    hyp: ["aa^#b ∈ R^#", "aa^#b = bb^#a"],
    cond: "2aa^#b ∈ R^#",
    note: COR26_NOTE,
};

const COR27: Labels26 = Labels26 {
    hyp: ["baa^# ∈ R^#", "baa^# = abb^#"],
    cond: "2baa^# ∈ R^#",
    note: "over the complex field 2abb^# ∈ R^# holds exactly when abb^# ∈ R^# does",
};

fn cor26_draft(ctx: &Ctx, base: &Base, labels: &Labels26) -> Draft {
    let mut d = base.draft();
    let (a, b, ai, bi) = (&base.a, &base.b, &base.ai, &base.bi);
    let aab = prod(&[a, &ai.x, b]);
    d.hypotheses.push(ctx.member_check(labels.hyp[0], &aab));
    d.hypotheses
        .push(ctx.equal(labels.hyp[1], &aab, &prod(&[b, &bi.x, a])));
    d.conditions
        .push(ctx.member_check(labels.cond, &aab.scaled(2.0)));
    d.notes.push(labels.note.to_string());
    base.trace_basics(&mut d);
    let s = base.s();
    let si = ctx.inv(&s);
    d.candidate = Some(base.candidate_via_s(&mut d, &s, &si));
    d
}

/// Sum under `a,b,aa^#b ∈ R^#` and `aa^#b = bb^#a`; condition `2aa^#b ∈ R^#`.
pub fn cor26_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let d = cor26_draft(&ctx, &base, &COR26);
    Ok(finish(TheoremId::Cor26, &ctx, &base.sum(), d))
}

/// Mirror image of [`cor26_sum`]: `a,b,abb^# ∈ R^#`, `abb^# = baa^#`,
/// condition `2abb^# ∈ R^#`.
///
/// Evaluated on the transposed pair, so the hypothesis and condition items
/// are stated for `baa^#`, which equals `abb^#` whenever the report applies.
pub fn cor27_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a.t(), b.t());
    let d = cor26_draft(&ctx, &base, &COR27).transposed();
    Ok(finish(TheoremId::Cor27, &ctx, &(&a + &b), d))
}

/// `(ab)^# = a^#b^#` under `a,b ∈ R^#`, `a²b = aba`, `b²a = bab`. The
/// report's target is the product `ab`.
pub fn lemma31_product(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let mut d = base.draft();
    push_commutative_like(&ctx, &base, &mut d, false);
    base.trace_basics(&mut d);
    let x = &base.ai.x * &base.bi.x;
    d.trace("a^#b^#", &x);
    d.candidate = Some(x);
    Ok(finish(TheoremId::Lem31, &ctx, &(&base.a * &base.b), d))
}

fn push_commutative_like(ctx: &Ctx, base: &Base, d: &mut Draft, mirrored: bool) {
    let (a, b) = (&base.a, &base.b);
    let (n1, n2) = if mirrored {
        ("ba² = aba", "ab² = bab")
    } else {
        ("a²b = aba", "b²a = bab")
    };
    d.hypotheses
        .push(ctx.equal(n1, &prod(&[a, a, b]), &prod(&[a, b, a])));
    d.hypotheses
        .push(ctx.equal(n2, &prod(&[b, b, a]), &prod(&[b, a, b])));
}

/// Sum under `a,b ∈ R^#`, `a²b = aba`, `b²a = bab`; conditions as in
/// [`thm25_sum`].
pub fn thm32_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let mut d = base.draft();
    push_commutative_like(&ctx, &base, &mut d, false);
    let s = base.s();
    let (cs, si) = ctx.member("aa^#b+bb^#a ∈ R^#", &s);
    let (a, b, ai, bi) = (&base.a, &base.b, &base.ai, &base.bi);
    d.conditions.extend([
        cs,
        ctx.zero("a^πb^πa = 0", &prod(&[&ai.pi, &bi.pi, a])),
        ctx.zero("b^πa^πb = 0", &prod(&[&bi.pi, &ai.pi, b])),
    ]);
    base.trace_basics(&mut d);
    d.candidate = Some(base.candidate_via_s(&mut d, &s, &si));
    Ok(finish(TheoremId::Thm32, &ctx, &base.sum(), d))
}

/// Sum of commuting `a,b ∈ R^#`; condition `aa^#b+bb^#a ∈ R^#`.
pub fn cor33_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let mut d = base.draft();
    d.hypotheses
        .push(ctx.equal("ab = ba", &(&base.a * &base.b), &(&base.b * &base.a)));
    let s = base.s();
    let (cs, si) = ctx.member("aa^#b+bb^#a ∈ R^#", &s);
    d.conditions.push(cs);
    base.trace_basics(&mut d);
    d.candidate = Some(base.candidate_via_s(&mut d, &s, &si));
    Ok(finish(TheoremId::Cor33, &ctx, &base.sum(), d))
}

struct Labels35 {
    cond: [&'static str; 2],
    trace: [&'static str; 5],
    mirrored: bool,
}

const THM35: Labels35 = Labels35 {
    cond: ["1+a^#b ∈ R^#", "b^πa^πb = 0"],
    trace: ["1+a^#b", "(1+a^#b)^#", "w", "w^#", "w^π"],
    mirrored: false,
};

const COR36: Labels35 = Labels35 {
    cond: ["1+ba^# ∈ R^#", "ba^πb^π = 0"],
    trace: ["1+ba^#", "(1+ba^#)^#", "v", "v^#", "v^π"],
    mirrored: true,
};

fn thm35_draft(ctx: &Ctx, base: &Base, labels: &Labels35) -> Draft {
    let mut d = base.draft();
    push_commutative_like(ctx, base, &mut d, labels.mirrored);
    let (b, ai, bi) = (&base.b, &base.ai, &base.bi);
    let n = b.n();
    let e = &Elem::identity(n) + &(&ai.x * b);
    let (ce, ei) = ctx.member(labels.cond[0], &e);
    d.conditions.push(ce);
    d.conditions
        .push(ctx.zero(labels.cond[1], &prod(&[&bi.pi, &ai.pi, b])));
    let w = base.w();
    let wg = &ai.x * &ei.x;
    let wpi = &Elem::identity(n) - &(&w * &wg);
    base.trace_basics(&mut d);
    for (name, x) in labels.trace.iter().zip([&e, &ei.x, &w, &wg, &wpi]) {
        d.trace(name, x);
    }
    d.candidate = Some(base.assemble(&wg, &wpi));
    d
}

/// Sum under `a,b ∈ R^#`, `a²b = aba`, `b²a = bab`; conditions
/// `1+a^#b ∈ R^#` and `b^πa^πb = 0`.
pub fn thm35_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a, b);
    let d = thm35_draft(&ctx, &base, &THM35);
    Ok(finish(TheoremId::Thm35, &ctx, &base.sum(), d))
}

/// Mirror image of [`thm35_sum`]: `ab² = bab`, `ba² = aba`; conditions
/// `1+ba^# ∈ R^#` and `ba^πb^π = 0`.
pub fn cor36_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<SumGinvReport> {
    let (ctx, a, b) = elems(a, b, tol)?;
    let base = Base::new(&ctx, a.t(), b.t());
    let d = thm35_draft(&ctx, &base, &COR36).transposed();
    Ok(finish(TheoremId::Cor36, &ctx, &(&a + &b), d))
}

/// Dispatches on a tag; `lem2.1`, block tags and unknown tags are errors.
pub fn sum_by_id(
    id: TheoremId,
    a: &CMatrix,
    b: &CMatrix,
    tol: &Tolerance,
) -> Result<SumGinvReport> {
    match id {
        TheoremId::Thm23 => thm23_sum(a, b, tol),
        TheoremId::Cor24 => cor24_sum(a, b, tol),
        TheoremId::Thm25 => thm25_sum(a, b, tol),
        TheoremId::Cor26 => cor26_sum(a, b, tol),
        TheoremId::Cor27 => cor27_sum(a, b, tol),
        TheoremId::Lem31 => lemma31_product(a, b, tol),
        TheoremId::Thm32 => thm32_sum(a, b, tol),
        TheoremId::Cor33 => cor33_sum(a, b, tol),
        TheoremId::Thm35 => thm35_sum(a, b, tol),
        TheoremId::Cor36 => cor36_sum(a, b, tol),
        other => Err(GinvError::UnknownTag(format!(
            "{other} is not a statement about a + b"
        ))),
    }
}

/// Runs every statement about `a + b`.
pub fn auto_sum(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<AutoSumReport> {
    let (ctx, ea, eb) = elems(a, b, tol)?;
    let reports = TheoremId::SUM
        .into_iter()
        .map(|id| sum_by_id(id, a, b, tol))
        .collect::<Result<Vec<_>>>()?;
    let target = &ea + &eb;
    let oracle = oracle_group_inverse_scaled(&target.m, target.mag, &ctx.tol)?;
    let produced: Vec<&CMatrix> = reports.iter().filter_map(|r| r.inverse.as_ref()).collect();
    let consensus = (!produced.is_empty()).then(|| {
        let rel = ctx.tol.match_rel();
        let pairwise = produced
            .iter()
            .all(|x| produced.iter().all(|y| agree(x, y, rel)));
        pairwise
            && oracle
                .inverse
                .as_ref()
                .is_some_and(|o| produced.iter().all(|x| agree(o, x, rel)))
    });
    Ok(AutoSumReport {
        reports,
        oracle_exists: oracle.exists,
        oracle_inverse: oracle.inverse,
        consensus,
    })
}
