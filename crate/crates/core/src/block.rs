//! Group inverse of a 2x2 block matrix `M = [[A, B], [C, D]]`.
//!
//! Every statement writes `M = P + Q` and applies one of the additive
//! formulas; the reports carry the splitting, the checklists and the
//! intermediate matrices.

use serde::{Serialize, Serializer};

use crate::additive::{assemble_left, assemble_right, settle, Draft};
use crate::elem::{prod, Ctx, Elem, Inv};
use crate::error::{GinvError, Result};
use crate::ginv::{agree, oracle_group_inverse_scaled};
use crate::matrix::{CMatrix, Tolerance};
use crate::theorem::{find, Check, Named, TheoremId};

/// The blocks of `M`: `A` is m x m, `B` m x n, `C` n x m, `D` n x n.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockParts {
    a: CMatrix,
    b: CMatrix,
    c: CMatrix,
    d: CMatrix,
}

impl BlockParts {
    pub fn new(a: CMatrix, b: CMatrix, c: CMatrix, d: CMatrix) -> Result<Self> {
        a.require_square()?;
        d.require_square()?;
        let (m, n) = (a.rows(), d.rows());
        let mismatch = |op, x: &CMatrix, want: (usize, usize)| GinvError::DimensionMismatch {
            op,
            left: x.shape(),
            right: want,
        };
        if b.shape() != (m, n) {
            return Err(mismatch("block B", &b, (m, n)));
        }
        if c.shape() != (n, m) {
            return Err(mismatch("block C", &c, (n, m)));
        }
        if m == 0 || n == 0 {
            return Err(GinvError::DimensionMismatch {
                op: "empty diagonal block",
                left: a.shape(),
                right: d.shape(),
            });
        }
        Ok(BlockParts { a, b, c, d })
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    pub fn d(&self) -> &CMatrix {
        &self.d
    }

    /// `(m, n)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.a.rows(), self.d.rows())
    }

    /// Blocks of `M^T`: `(A^T, C^T, B^T, D^T)`.
    pub fn transposed(&self) -> Self {
        BlockParts {
            a: self.a.transpose(),
            b: self.c.transpose(),
            c: self.b.transpose(),
            d: self.d.transpose(),
        }
    }

    /// Blocks of `M` scaled by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        BlockParts {
            a: self.a.scaled_real(s),
            b: self.b.scaled_real(s),
            c: self.c.scaled_real(s),
            d: self.d.scaled_real(s),
        }
    }

    /// `(D, C, B, A)`: the blocks of `M` conjugated by the block swap.
    pub fn swapped(&self) -> Self {
        BlockParts {
            a: self.d.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.a.clone(),
        }
    }
}

impl Serialize for BlockParts {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BlockParts", 4)?;
        s.serialize_field("A", &self.a)?;
        s.serialize_field("B", &self.b)?;
        s.serialize_field("C", &self.c)?;
        s.serialize_field("D", &self.d)?;
        s.end()
    }
}

pub fn assemble(parts: &BlockParts) -> CMatrix {
    CMatrix::from_blocks(&parts.a, &parts.b, &parts.c, &parts.d)
        .expect("BlockParts are conformable")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Splitting {
    pub p: CMatrix,
    pub q: CMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockGinvReport {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<u8>,
    pub hypotheses: Vec<Check>,
    pub conditions: Vec<Check>,
    pub applicable: bool,
    /// Verdict of the conditions; statements without conditions report
    /// `Some(true)` whenever they apply.
    pub decision: Option<bool>,
    pub m: CMatrix,
    pub splitting: Splitting,
    pub inverse: Option<CMatrix>,
    pub trace: Vec<Named>,
    pub oracle_exists: bool,
    pub oracle_match: Option<bool>,
    pub notes: Vec<String>,
}

impl BlockGinvReport {
    pub fn failed_hypotheses(&self) -> Vec<&Check> {
        self.hypotheses.iter().filter(|c| !c.pass).collect()
    }

    pub fn failed_conditions(&self) -> Vec<&Check> {
        self.conditions.iter().filter(|c| !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        find(&self.hypotheses, name).or_else(|| find(&self.conditions, name))
    }

    pub fn trace_value(&self, name: &str) -> Option<&CMatrix> {
        self.trace.iter().find(|t| t.name == name).map(|t| &t.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutoBlockReport {
    pub reports: Vec<BlockGinvReport>,
    pub oracle_exists: bool,
    pub oracle_inverse: Option<CMatrix>,
    pub consensus: Option<bool>,
}

impl AutoBlockReport {
    pub fn produced(&self) -> impl Iterator<Item = &BlockGinvReport> {
        self.reports.iter().filter(|r| r.inverse.is_some())
    }
}

struct Blocks {
    ctx: Ctx,
    m: usize,
    n: usize,
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
    ai: Inv,
    di: Inv,
    ha: Check,
    hd: Check,
}

impl Blocks {
    fn new(parts: &BlockParts, tol: &Tolerance) -> Result<Self> {
        tol.validate()?;
        let ctx = Ctx::new(tol);
        let (m, n) = parts.dims();
        let a = Elem::new(parts.a.clone());
        let d = Elem::new(parts.d.clone());
        let (ha, ai) = ctx.member("A ∈ R^#", &a);
        let (hd, di) = ctx.member("D ∈ R^#", &d);
        Ok(Blocks {
            ctx,
            m,
            n,
            a,
            b: Elem::new(parts.b.clone()),
            c: Elem::new(parts.c.clone()),
            d,
            ai,
            di,
            ha,
            hd,
        })
    }

    fn zm(&self) -> Elem {
        Elem::zeros(self.m, self.m)
    }

    fn zn(&self) -> Elem {
        Elem::zeros(self.n, self.n)
    }

    fn zmn(&self) -> Elem {
        Elem::zeros(self.m, self.n)
    }

    fn znm(&self) -> Elem {
        Elem::zeros(self.n, self.m)
    }

    fn m_elem(&self) -> Elem {
        Elem::blocks(&self.a, &self.b, &self.c, &self.d)
    }

    fn draft(&self) -> Draft {
        let mut d = Draft::new();
        d.hypotheses = vec![self.ha.clone(), self.hd.clone()];
        d.note_drazin("A", &self.ai);
        d.note_drazin("D", &self.di);
        d
    }

    fn zero(&self, name: &str, factors: &[&Elem]) -> Check {
        self.ctx.zero(name, &prod(factors))
    }

    fn finish(
        &self,
        theorem: TheoremId,
        variant: Option<u8>,
        split: (&Elem, &Elem),
        mut d: Draft,
    ) -> BlockGinvReport {
        let target = self.m_elem();
        let v = settle(&self.ctx, &target, &mut d);
        BlockGinvReport {
            theorem,
            variant,
            hypotheses: d.hypotheses,
            conditions: d.conditions,
            applicable: v.applicable,
            decision: v.decision,
            m: target.m,
            splitting: Splitting {
                p: split.0.m.clone(),
                q: split.1.m.clone(),
            },
            inverse: v.inverse,
            trace: d.trace,
            oracle_exists: v.oracle_exists,
            oracle_match: v.oracle_match,
            notes: d.notes,
        }
    }
}

/// Items and intermediate values of the `P = diag(A, D)`, `Q = [[0, B], [C, 0]]`
/// splitting.
struct Diagonal {
    bc: Elem,
    cb: Elem,
    bci: Inv,
    cbi: Inv,
    h_bc: Check,
    h_cb: Check,
}

impl Diagonal {
    fn new(x: &Blocks) -> Self {
        let bc = &x.b * &x.c;
        let cb = &x.c * &x.b;
        let (h_bc, bci) = x.ctx.member("BC ∈ R^#", &bc);
        let (mut h_cb, cbi) = x.ctx.member("CB ∈ R^#", &cb);
        h_cb.detail = Some(match h_cb.detail.take() {
            Some(d) => format!("proof-implied; {d}"),
            None => "proof-implied".to_string(),
        });
        Diagonal {
            bc,
            cb,
            bci,
            cbi,
            h_bc,
            h_cb,
        }
    }

    fn b_cbpi(&self, x: &Blocks) -> Check {
        x.zero("B(CB)^π = 0", &[&x.b, &self.cbi.pi])
    }

    fn c_bcpi(&self, x: &Blocks) -> Check {
        x.zero("C(BC)^π = 0", &[&x.c, &self.bci.pi])
    }

    fn cond_a(&self, x: &Blocks) -> Check {
        x.zero("A^π(BC)^πA = 0", &[&x.ai.pi, &self.bci.pi, &x.a])
    }

    fn cond_d(&self, x: &Blocks) -> Check {
        x.zero("D^π(CB)^πD = 0", &[&x.di.pi, &self.cbi.pi, &x.d])
    }

    /// `N = [[A, AA^#B], [DD^#C, D]]`.
    fn n(&self, x: &Blocks) -> Elem {
        Elem::blocks(
            &x.a,
            &prod(&[&x.a, &x.ai.x, &x.b]),
            &prod(&[&x.d, &x.di.x, &x.c]),
            &x.d,
        )
    }

    /// Fills the trace and the candidate; returns `(P, Q)` and the result of
    /// the `N ∈ R^#` test.
    fn candidate(&self, x: &Blocks, d: &mut Draft) -> (Elem, Elem, Check) {
        let p = Elem::blocks(&x.a, &x.zmn(), &x.znm(), &x.d);
        let pg = Elem::blocks(&x.ai.x, &x.zmn(), &x.znm(), &x.di.x);
        let ppi = Elem::blocks(&x.ai.pi, &x.zmn(), &x.znm(), &x.di.pi);
        let q = Elem::blocks(&x.zm(), &x.b, &x.c, &x.zn());
        let qg = Elem::blocks(
            &x.zm(),
            &(&x.b * &self.cbi.x),
            &(&x.c * &self.bci.x),
            &x.zn(),
        );
        let n = self.n(x);
        let (cn, ni) = x.ctx.member("N ∈ R^#", &n);
        let qppi = &q * &ppi;
        if !x.ctx.inv(&qppi).exists {
            d.notes.push(
                "QP^π = [[0, BD^π], [CA^π, 0]] has no group inverse, so the additive formula is used outside its hypotheses"
                    .to_string(),
            );
        }
        for (name, e) in [
            ("BC", &self.bc),
            ("CB", &self.cb),
            ("(BC)^#", &self.bci.x),
            ("(CB)^#", &self.cbi.x),
            ("P^#", &pg),
            ("P^π", &ppi),
            ("Q^#", &qg),
            ("N", &n),
            ("N^#", &ni.x),
            ("N^π", &ni.pi),
        ] {
            d.trace(name, e);
        }
        if cn.pass {
            d.candidate = Some(assemble_right(&p, &pg, &ppi, &q, &qg, &ni.x, &ni.pi));
        } else {
            d.notes
                .push("N has no group inverse; no closed form is available".to_string());
        }
        (p, q, cn)
    }
}

/// `A, D, BC ∈ R^#` (and `CB ∈ R^#`), `B(CB)^π = 0`, `C(BC)^π = 0`,
/// `ABD^π = 0`, `DCA^π = 0`; conditions `A^π(BC)^πA = 0`,
/// `D^π(CB)^πD = 0` and `N ∈ R^#`.
pub fn thm41_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let g = Diagonal::new(&x);
    let mut d = x.draft();
    d.hypotheses.extend([
        g.h_bc.clone(),
        g.h_cb.clone(),
        g.b_cbpi(&x),
        g.c_bcpi(&x),
        x.zero("ABD^π = 0", &[&x.a, &x.b, &x.di.pi]),
        x.zero("DCA^π = 0", &[&x.d, &x.c, &x.ai.pi]),
    ]);
    let (p, q, cn) = g.candidate(&x, &mut d);
    d.conditions.extend([g.cond_a(&x), g.cond_d(&x), cn]);
    Ok(x.finish(TheoremId::Thm41, None, (&p, &q), d))
}

/// Hypotheses of [`thm41_block`] with `AB = 0` in place of `ABD^π = 0`;
/// conditions `BCA = 0` and `D^π(CB)^πD = 0`.
pub fn cor42_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let g = Diagonal::new(&x);
    let mut d = x.draft();
    d.hypotheses.extend([
        g.h_bc.clone(),
        g.h_cb.clone(),
        x.zero("AB = 0", &[&x.a, &x.b]),
        g.b_cbpi(&x),
        g.c_bcpi(&x),
        x.zero("DCA^π = 0", &[&x.d, &x.c, &x.ai.pi]),
    ]);
    d.conditions
        .extend([x.zero("BCA = 0", &[&x.b, &x.c, &x.a]), g.cond_d(&x)]);
    let (p, q, _) = g.candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Cor42, None, (&p, &q), d))
}

/// Hypotheses of [`thm41_block`] with `DC = 0` in place of `DCA^π = 0`;
/// conditions `A^π(BC)^πA = 0` and `CBD = 0`.
pub fn cor43_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let g = Diagonal::new(&x);
    let mut d = x.draft();
    d.hypotheses.extend([
        g.h_bc.clone(),
        g.h_cb.clone(),
        x.zero("DC = 0", &[&x.d, &x.c]),
        g.b_cbpi(&x),
        g.c_bcpi(&x),
        x.zero("ABD^π = 0", &[&x.a, &x.b, &x.di.pi]),
    ]);
    d.conditions
        .extend([g.cond_a(&x), x.zero("CBD = 0", &[&x.c, &x.b, &x.d])]);
    let (p, q, _) = g.candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Cor43, None, (&p, &q), d))
}

/// `A, D ∈ R^#` and `rank B = rank C = rank BC = rank CB`, with
/// variant 1 (`AB = 0`, `DCA^π = 0`) or variant 2 (`DC = 0`, `ABD^π = 0`).
///
/// The consequences `BC, CB ∈ R^#`, `B(CB)^π = 0`, `C(BC)^π = 0` are
/// re-verified and listed among the hypotheses.
pub fn cor44_block(parts: &BlockParts, variant: u8, tol: &Tolerance) -> Result<BlockGinvReport> {
    if !matches!(variant, 1 | 2) {
        return Err(GinvError::UnknownTag(format!("cor4.4 variant {variant}")));
    }
    let x = Blocks::new(parts, tol)?;
    let g = Diagonal::new(&x);
    let mut d = x.draft();

    let ranks = [
        x.ctx.rank(&x.b),
        x.ctx.rank(&x.c),
        x.ctx.rank(&g.bc),
        x.ctx.rank(&g.cb),
    ];
    let lo = *ranks.iter().min().expect("four ranks");
    let hi = *ranks.iter().max().expect("four ranks");
    d.hypotheses.push(Check {
        name: "r(B) = r(C) = r(BC) = r(CB)".to_string(),
        residual: (hi - lo) as f64,
        scale: 0.0,
        pass: lo == hi,
        detail: Some(format!(
            "ranks {}, {}, {}, {}",
            ranks[0], ranks[1], ranks[2], ranks[3]
        )),
    });
    if variant == 1 {
        d.hypotheses.extend([
            x.zero("AB = 0", &[&x.a, &x.b]),
            x.zero("DCA^π = 0", &[&x.d, &x.c, &x.ai.pi]),
        ]);
    } else {
        d.hypotheses.extend([
            x.zero("DC = 0", &[&x.d, &x.c]),
            x.zero("ABD^π = 0", &[&x.a, &x.b, &x.di.pi]),
        ]);
    }
    for mut implied in [g.h_bc.clone(), g.h_cb.clone(), g.b_cbpi(&x), g.c_bcpi(&x)] {
        implied.detail = Some(match implied.detail.take() {
            Some(d) if !d.starts_with("proof-implied") => {
                format!("implied by the rank equalities; {d}")
            }
            _ => "implied by the rank equalities".to_string(),
        });
        d.hypotheses.push(implied);
    }
    if variant == 1 {
        d.conditions
            .extend([x.zero("BCA = 0", &[&x.b, &x.c, &x.a]), g.cond_d(&x)]);
    } else {
        d.conditions
            .extend([g.cond_a(&x), x.zero("CBD = 0", &[&x.c, &x.b, &x.d])]);
    }
    let (p, q, _) = g.candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Cor44, Some(variant), (&p, &q), d))
}

/// `P = [[A, B], [0, 0]]`, `Q = [[0, 0], [C, D]]`.
fn upper_candidate(x: &Blocks, d: &mut Draft) -> (Elem, Elem) {
    let (ag, dg) = (&x.ai.x, &x.di.x);
    let p = Elem::blocks(&x.a, &x.b, &x.znm(), &x.zn());
    let pg = Elem::blocks(ag, &prod(&[ag, ag, &x.b]), &x.znm(), &x.zn());
    let ppi = &Elem::identity(x.m + x.n) - &(&p * &pg);
    let q = Elem::blocks(&x.zm(), &x.zmn(), &x.c, &x.d);
    let qg = Elem::blocks(&x.zm(), &x.zmn(), &prod(&[dg, dg, &x.c]), dg);
    let w = Elem::blocks(&x.a, &prod(&[&x.a, ag, &x.b]), &x.znm(), &x.zn());
    let wi = x.ctx.inv(&w);
    for (name, e) in [
        ("P^#", &pg),
        ("P^π", &ppi),
        ("Q^#", &qg),
        ("w", &w),
        ("w^#", &wi.x),
        ("w^π", &wi.pi),
    ] {
        d.trace(name, e);
    }
    if wi.exists {
        d.candidate = Some(assemble_right(&p, &pg, &ppi, &q, &qg, &wi.x, &wi.pi));
    } else {
        d.notes
            .push("w = PP^#(P+Q) has no group inverse".to_string());
    }
    (p, q)
}

/// `P = [[A, 0], [C, 0]]`, `Q = [[0, B], [0, D]]`.
fn lower_candidate(x: &Blocks, d: &mut Draft) -> (Elem, Elem) {
    let (ag, dg) = (&x.ai.x, &x.di.x);
    let p = Elem::blocks(&x.a, &x.zmn(), &x.c, &x.zn());
    let pg = Elem::blocks(ag, &x.zmn(), &prod(&[&x.c, ag, ag]), &x.zn());
    let ppi = &Elem::identity(x.m + x.n) - &(&p * &pg);
    let q = Elem::blocks(&x.zm(), &x.b, &x.znm(), &x.d);
    let qg = Elem::blocks(&x.zm(), &prod(&[&x.b, dg, dg]), &x.znm(), dg);
    let v = Elem::blocks(&x.a, &x.zmn(), &prod(&[&x.c, &x.a, ag]), &x.zn());
    let vi = x.ctx.inv(&v);
    for (name, e) in [
        ("P^#", &pg),
        ("P^π", &ppi),
        ("Q^#", &qg),
        ("v", &v),
        ("v^#", &vi.x),
        ("v^π", &vi.pi),
    ] {
        d.trace(name, e);
    }
    if vi.exists {
        d.candidate = Some(assemble_left(&p, &pg, &ppi, &q, &qg, &vi.x, &vi.pi));
    } else {
        d.notes
            .push("v = (P+Q)PP^# has no group inverse".to_string());
    }
    (p, q)
}

/// `A, D ∈ R^#`, `A^πB = 0`, `D^πC = 0`, `BCA^π = 0`, `ABC = 0`,
/// `BD = BCA^#B` imply `M ∈ R^#`.
pub fn thm45_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let mut d = x.draft();
    d.hypotheses.extend([
        x.zero("A^πB = 0", &[&x.ai.pi, &x.b]),
        x.zero("D^πC = 0", &[&x.di.pi, &x.c]),
        x.zero("BCA^π = 0", &[&x.b, &x.c, &x.ai.pi]),
        x.zero("ABC = 0", &[&x.a, &x.b, &x.c]),
        x.ctx.equal(
            "BD = BCA^#B",
            &(&x.b * &x.d),
            &prod(&[&x.b, &x.c, &x.ai.x, &x.b]),
        ),
    ]);
    let (p, q) = upper_candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Thm45, None, (&p, &q), d))
}

/// `A, D ∈ R^#`, `A^πB = 0`, `D^πC = 0`, `BC = 0`, `BD = 0` imply `M ∈ R^#`.
pub fn cor46_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let mut d = x.draft();
    d.hypotheses.extend([
        x.zero("A^πB = 0", &[&x.ai.pi, &x.b]),
        x.zero("D^πC = 0", &[&x.di.pi, &x.c]),
        x.zero("BC = 0", &[&x.b, &x.c]),
        x.zero("BD = 0", &[&x.b, &x.d]),
    ]);
    let (p, q) = upper_candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Cor46, None, (&p, &q), d))
}

/// `A, D ∈ R^#`, `CA^π = 0`, `BD^π = 0`, `A^πBC = 0`, `BCA = 0`,
/// `DC = CA^#BC` imply `M ∈ R^#`.
pub fn thm47_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let mut d = x.draft();
    d.hypotheses.extend([
        x.zero("CA^π = 0", &[&x.c, &x.ai.pi]),
        x.zero("BD^π = 0", &[&x.b, &x.di.pi]),
        x.zero("A^πBC = 0", &[&x.ai.pi, &x.b, &x.c]),
        x.zero("BCA = 0", &[&x.b, &x.c, &x.a]),
        x.ctx.equal(
            "DC = CA^#BC",
            &(&x.d * &x.c),
            &prod(&[&x.c, &x.ai.x, &x.b, &x.c]),
        ),
    ]);
    let (p, q) = lower_candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Thm47, None, (&p, &q), d))
}

/// `A, D ∈ R^#`, `CA^π = 0`, `BD^π = 0`, `BC = 0`, `DC = 0` imply `M ∈ R^#`.
pub fn cor48_block(parts: &BlockParts, tol: &Tolerance) -> Result<BlockGinvReport> {
    let x = Blocks::new(parts, tol)?;
    let mut d = x.draft();
    d.hypotheses.extend([
        x.zero("CA^π = 0", &[&x.c, &x.ai.pi]),
        x.zero("BD^π = 0", &[&x.b, &x.di.pi]),
        x.zero("BC = 0", &[&x.b, &x.c]),
        x.zero("DC = 0", &[&x.d, &x.c]),
    ]);
    let (p, q) = lower_candidate(&x, &mut d);
    Ok(x.finish(TheoremId::Cor48, None, (&p, &q), d))
}

/// Dispatches on a tag. `variant` selects the case of `cor4.4` and defaults
/// to 1; it is ignored elsewhere.
pub fn block_by_id(
    id: TheoremId,
    parts: &BlockParts,
    variant: Option<u8>,
    tol: &Tolerance,
) -> Result<BlockGinvReport> {
    match id {
        TheoremId::Thm41 => thm41_block(parts, tol),
        TheoremId::Cor42 => cor42_block(parts, tol),
        TheoremId::Cor43 => cor43_block(parts, tol),
        TheoremId::Cor44 => cor44_block(parts, variant.unwrap_or(1), tol),
        TheoremId::Thm45 => thm45_block(parts, tol),
        TheoremId::Cor46 => cor46_block(parts, tol),
        TheoremId::Thm47 => thm47_block(parts, tol),
        TheoremId::Cor48 => cor48_block(parts, tol),
        other => Err(GinvError::UnknownTag(format!(
            "{other} is not a statement about block matrices"
        ))),
    }
}

/// Runs every block statement, both cases of `cor4.4` included.
pub fn auto_block(parts: &BlockParts, tol: &Tolerance) -> Result<AutoBlockReport> {
    let mut reports = Vec::with_capacity(9);
    for id in TheoremId::BLOCK {
        if id == TheoremId::Cor44 {
            reports.push(cor44_block(parts, 1, tol)?);
            reports.push(cor44_block(parts, 2, tol)?);
        } else {
            reports.push(block_by_id(id, parts, None, tol)?);
        }
    }
    let x = Blocks::new(parts, tol)?;
    let target = x.m_elem();
    let oracle = oracle_group_inverse_scaled(&target.m, target.mag, tol)?;
    let produced: Vec<&CMatrix> = reports.iter().filter_map(|r| r.inverse.as_ref()).collect();
    let rel = tol.match_rel();
    let consensus = (!produced.is_empty()).then(|| {
        produced
            .iter()
            .all(|x| produced.iter().all(|y| agree(x, y, rel)))
            && oracle
                .inverse
                .as_ref()
                .is_some_and(|o| produced.iter().all(|x| agree(o, x, rel)))
    });
    Ok(AutoBlockReport {
        reports,
        oracle_exists: oracle.exists,
        oracle_inverse: oracle.inverse,
        consensus,
    })
}
