//! Strongly Gorenstein projective/injective deciders, the non-Gorenstein-projective
//! obstruction, the G-gldim classifier for finite rings and the transfer checks
//! for trivial extensions.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::algebra::{annihilator, enumerate_ideals, is_qf, same_ring, trivial_extension, Ideal, Ring};
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, Subspace};
use crate::modules::{
    base_change, coinduced, cokernel, digits, dual, ext_dim, factor_through, fd_bounded, free_cover, free_module,
    hom_module, is_exact_flanked, is_isomorphic, is_projective, pd_bounded, regular_module, ring_over_base, tor_dim,
    DimBound, FinModule, FinModuleMap, IsoVerdict, Resolution,
};
use crate::par::{checked_pow_within, Limits};

/// A short exact sequence `0 -> M -> F -> M -> 0` with `F` free.
#[derive(Clone, Debug)]
pub struct SgpWitness {
    /// `M -> F`.
    pub embedding: FinModuleMap,
    /// `F -> M`, the cokernel projection followed by the isomorphism `coker ≅ M`.
    pub projection: FinModuleMap,
    /// The isomorphism `coker(embedding) -> M`.
    pub cokernel_iso: FinModuleMap,
    pub free_rank: usize,
    pub ext1_dim: usize,
}

impl SgpWitness {
    /// Re-checks exactness, rank arithmetic and Ext vanishing from scratch.
    pub fn revalidate(&self, m: &FinModule) -> std::result::Result<(), String> {
        let ring = m.ring();
        let f = free_module(ring, self.free_rank);
        if self.embedding.source() != m || self.embedding.target() != &f {
            return Err("embedding is not M -> free".into());
        }
        if self.projection.source() != &f || self.projection.target() != m {
            return Err("projection is not free -> M".into());
        }
        for map in [&self.embedding, &self.projection] {
            FinModuleMap::new(map.source(), map.target(), map.matrix().clone()).map_err(|e| e.to_string())?;
        }
        if self.free_rank * ring.dim() != 2 * m.dim() {
            return Err("rank(F) * dim(R) != 2 dim(M)".into());
        }
        let seq = [self.embedding.clone(), self.projection.clone()];
        if !is_exact_flanked(&seq).map_err(|e| e.to_string())? {
            return Err("0 -> M -> F -> M -> 0 is not exact".into());
        }
        let (coker, q) = cokernel(&self.embedding);
        if self.cokernel_iso.source() != &coker || !self.cokernel_iso.is_isomorphism() {
            return Err("cokernel isomorphism is not invertible".into());
        }
        if self.cokernel_iso.compose(&q).map_err(|e| e.to_string())? != self.projection {
            return Err("projection does not factor through the cokernel".into());
        }
        let ext1 = ext_dim(m, &regular_module(ring), 1).map_err(|e| e.to_string())?;
        if ext1 != 0 || self.ext1_dim != 0 {
            return Err(format!("Ext^1(M, R) has dimension {ext1}"));
        }
        Ok(())
    }
}

/// Outcome of the strongly Gorenstein deciders.
#[derive(Clone, Debug)]
pub enum SgVerdict {
    Yes(Box<SgpWitness>),
    No(String),
    Undecided(String),
}

impl SgVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SgVerdict::Yes(_) => "Yes",
            SgVerdict::No(_) => "No",
            SgVerdict::Undecided(_) => "Undecided",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, SgVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SgVerdict::No(_))
    }

    pub fn witness(&self) -> Option<&SgpWitness> {
        match self {
            SgVerdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            SgVerdict::Yes(_) => None,
            SgVerdict::No(r) | SgVerdict::Undecided(r) => Some(r),
        }
    }
}

impl fmt::Display for SgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            Some(r) => write!(f, "{} ({r})", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

fn witness_from_embedding(embedding: FinModuleMap, iso: FinModuleMap, rank: usize) -> SgpWitness {
    let (_, q) = cokernel(&embedding);
    let projection = iso.compose(&q).expect("composable");
    SgpWitness {
        embedding,
        projection,
        cokernel_iso: iso,
        free_rank: rank,
        ext1_dim: 0,
    }
}

/// Witness for a free `M ≅ R^g`: `x -> (s x, 0)` into `R^{2g}`.
fn free_witness(m: &FinModule) -> SgpWitness {
    let ring = m.ring();
    let p = ring.p();
    let cover = free_cover(m);
    let g = cover.source().dim() / ring.dim();
    let section = cover.matrix().inverse().expect("minimal cover of a free module is invertible");
    let f2 = free_module(ring, 2 * g);
    let mut emb = FpMatrix::zeros(p, f2.dim(), m.dim());
    emb.paste(0, 0, &section);
    let embedding = FinModuleMap::new_unchecked(m, &f2, emb);
    let mut second = FpMatrix::zeros(p, m.dim(), f2.dim());
    second.paste(0, m.dim(), cover.matrix());
    let onto = FinModuleMap::new_unchecked(&f2, m, second);
    let (_, q) = cokernel(&embedding);
    let iso = factor_through(&q, &onto).expect("second projection kills the first copy");
    witness_from_embedding(embedding, iso, 2 * g)
}

/// Decides whether `M` sits in `0 -> M -> R^r -> M -> 0` with `Ext^1(M, R) = 0`.
///
/// Candidate embeddings are scanned in base-`p` order of their coordinates in
/// `Hom(M, R^r)`; the first one whose cokernel is isomorphic to `M` is returned.
pub fn is_sgp(m: &FinModule, limits: &Limits) -> Result<SgVerdict> {
    let ring = m.ring();
    if ring.local_factor_count() != 1 {
        return Err(Error::Unsupported(
            "strongly Gorenstein projective test needs a local ring".into(),
        ));
    }
    if !(2 * m.dim()).is_multiple_of(ring.dim()) {
        return Ok(SgVerdict::No(format!(
            "2 dim M = {} is not a multiple of dim R = {}",
            2 * m.dim(),
            ring.dim()
        )));
    }
    let rank = 2 * m.dim() / ring.dim();
    let ext1 = ext_dim(m, &regular_module(ring), 1)?;
    if ext1 != 0 {
        return Ok(SgVerdict::No(format!("Ext^1(M, R) has dimension {ext1}")));
    }
    if is_projective(m) {
        return Ok(SgVerdict::Yes(Box::new(free_witness(m))));
    }
    let f = free_module(ring, rank);
    let hom = hom_module(m, &f)?;
    let h = hom.module.dim();
    let Some(count) = checked_pow_within(ring.p() as u64, h, limits.search_cap) else {
        return Ok(SgVerdict::Undecided(format!(
            "Hom(M, R^{rank}) has dimension {h}, beyond search cap {}",
            limits.search_cap
        )));
    };
    let inner = limits.with_exec(crate::par::Exec::Sequential);
    let undecided = AtomicBool::new(false);
    let found = limits.exec.find_first(count, |t| {
        let mat = hom.evaluate(&digits(t, ring.p(), h));
        if mat.rank() != m.dim() {
            return None;
        }
        let emb = FinModuleMap::new_unchecked(m, &f, mat);
        let (coker, _) = cokernel(&emb);
        match is_isomorphic(&coker, m, &inner) {
            Ok(IsoVerdict::Isomorphic(iso)) => Some((emb, iso)),
            Ok(IsoVerdict::Undecided(_)) => {
                undecided.store(true, Ordering::Relaxed);
                None
            }
            _ => None,
        }
    });
    Ok(match found {
        Some((_, (emb, iso))) => SgVerdict::Yes(Box::new(witness_from_embedding(emb, iso, rank))),
        None if undecided.load(Ordering::Relaxed) => {
            SgVerdict::Undecided("some cokernel isomorphism tests exceeded the search cap".into())
        }
        None => SgVerdict::No(format!("no embedding M -> R^{rank} has cokernel isomorphic to M")),
    })
}

/// Strongly Gorenstein injective test through base-field duality.
pub fn is_sgi(m: &FinModule, limits: &Limits) -> Result<SgVerdict> {
    is_sgp(&dual(m), limits)
}

/// Result of scanning `Ext^i(M, R)` for `1 <= i <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GpObstruction {
    /// No nonzero Ext found up to the bound (not a proof of Gorenstein projectivity).
    NoObstruction,
    /// Least `i` with `Ext^i(M, R) != 0`: `M` is not Gorenstein projective.
    FirstNonvanishing(usize),
}

pub fn gp_obstruction(m: &FinModule, bound: usize) -> GpObstruction {
    let reg = regular_module(m.ring());
    let mut res = Resolution::new(m);
    (1..=bound)
        .find(|&i| res.ext_dim(&reg, i) != 0)
        .map_or(GpObstruction::NoObstruction, GpObstruction::FirstNonvanishing)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GgldimKind {
    Zero,
    Infinite,
    Unknown,
}

impl fmt::Display for GgldimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GgldimKind::Zero => "Zero",
            GgldimKind::Infinite => "Infinite",
            GgldimKind::Unknown => "Unknown",
        })
    }
}

/// Cyclic module `R/I` with the first nonvanishing `Ext^i(R/I, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealEvidence {
    pub ideal: Vec<Vec<u32>>,
    pub obstruction: GpObstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GgldimCertificate {
    Qf {
        ideals_checked: usize,
    },
    NotQfLocal {
        is_local: bool,
        /// Basis of an ideal with `Ann(Ann(I)) != I`.
        witness: Vec<Vec<u32>>,
        double_annihilator: Vec<Vec<u32>>,
    },
    Evidence(Vec<IdealEvidence>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GgldimVerdict {
    pub kind: GgldimKind,
    pub certificate: GgldimCertificate,
}

impl GgldimVerdict {
    /// Re-checks the certificate against `ring`.
    pub fn revalidate(&self, ring: &Ring, limits: &Limits) -> Result<bool> {
        Ok(match (&self.kind, &self.certificate) {
            (GgldimKind::Zero, GgldimCertificate::Qf { .. }) => is_qf(ring, limits)?.is_qf,
            (GgldimKind::Infinite, GgldimCertificate::NotQfLocal { witness, is_local, .. }) => {
                let space = Subspace::from_vectors(ring.p(), ring.dim(), witness);
                let Ok(ideal) = Ideal::from_subspace(ring, space) else {
                    return Ok(false);
                };
                let ann2 = annihilator(ring, annihilator(ring, ideal.space()).space());
                *is_local && ring.local_factor_count() == 1 && ann2.space() != ideal.space()
            }
            (GgldimKind::Unknown, GgldimCertificate::Evidence(_)) => !is_qf(ring, limits)?.is_qf,
            _ => false,
        })
    }
}

impl fmt::Display for GgldimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// G-gldim of a finite ring: `0` iff QF; a local non-QF ring has `∞`
/// (finite rings are perfect, so the local dichotomy applies); otherwise `Unknown`
/// with obstruction evidence for every cyclic module.
pub fn classify_ggldim(ring: &Ring, bound: usize, limits: &Limits) -> Result<GgldimVerdict> {
    let ideals = enumerate_ideals(ring, limits)?;
    let qf = crate::algebra::qf_from_ideals(ring, &ideals, limits);
    if qf.is_qf {
        return Ok(GgldimVerdict {
            kind: GgldimKind::Zero,
            certificate: GgldimCertificate::Qf {
                ideals_checked: qf.ideals_checked,
            },
        });
    }
    if ring.local_factor_count() == 1 {
        let w = qf.witness.expect("non-QF verdict carries a witness");
        let ann2 = annihilator(ring, annihilator(ring, w.space()).space());
        return Ok(GgldimVerdict {
            kind: GgldimKind::Infinite,
            certificate: GgldimCertificate::NotQfLocal {
                is_local: true,
                witness: w.space().basis_vectors(),
                double_annihilator: ann2.space().basis_vectors(),
            },
        });
    }
    let evidence = limits.exec.map(&ideals, |i| IdealEvidence {
        ideal: i.space().basis_vectors(),
        obstruction: gp_obstruction(&i.quotient_module(), bound),
    });
    Ok(GgldimVerdict {
        kind: GgldimKind::Unknown,
        certificate: GgldimCertificate::Evidence(evidence),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HypothesisStatus {
    Pass,
    Fail,
    /// Could not be established within the caps.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypothesisStatus,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &str, status: HypothesisStatus, detail: impl Into<String>) -> Self {
        Hypothesis {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { HypothesisStatus::Pass } else { HypothesisStatus::Fail };
        Self::new(name, status, detail)
    }
}

/// Outcome of checking one instance of a transfer statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub statement: String,
    pub hypotheses: Vec<Hypothesis>,
    pub left_side: String,
    pub right_side: String,
    /// Evaluated only when every hypothesis passes and the regime is decidable.
    pub implication_holds: Option<bool>,
    /// True when only a proxy of the statement is checked.
    pub partial: bool,
    pub notes: Vec<String>,
}

impl TransferReport {
    fn new(statement: &str) -> Self {
        TransferReport {
            statement: statement.into(),
            hypotheses: Vec::new(),
            left_side: String::new(),
            right_side: String::new(),
            implication_holds: None,
            partial: false,
            notes: Vec::new(),
        }
    }

    pub fn hypotheses_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status == HypothesisStatus::Pass)
    }

    /// A report is a counterexample when all hypotheses pass and the implication fails.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_pass() && self.implication_holds == Some(false)
    }

    fn conclude(&mut self, holds: bool) {
        self.implication_holds = self.hypotheses_pass().then_some(holds);
    }

    fn require_decided(&mut self, side: &str, v: &SgVerdict) {
        if let SgVerdict::Undecided(r) = v {
            self.hypotheses
                .push(Hypothesis::new(&format!("{side} verdict decided"), HypothesisStatus::Undetermined, r.clone()));
        }
    }
}

fn check_base(a: &Ring, e: &FinModule, m: Option<&FinModule>) -> Result<Ring> {
    if !same_ring(e.ring(), a) || m.is_some_and(|m| !same_ring(m.ring(), a)) {
        return Err(Error::RingMismatch);
    }
    trivial_extension(a, e)
}

fn vanishing_range(name: &str, bound: usize, mut dims: impl FnMut(usize) -> Result<usize>) -> Result<Hypothesis> {
    for i in 1..=bound {
        let d = dims(i)?;
        if d != 0 {
            return Ok(Hypothesis::check(name, false, format!("nonzero in degree {i} (dimension {d})")));
        }
    }
    Ok(Hypothesis::check(name, true, format!("zero for 1 <= i <= {bound}")))
}

fn bounded(name: &str, d: DimBound, bound: usize) -> Hypothesis {
    match d {
        DimBound::Finite(k) => Hypothesis::check(name, true, format!("= {k}")),
        DimBound::ExceedsBound => Hypothesis::new(name, HypothesisStatus::Undetermined, format!("> {bound}")),
    }
}

/// `pd_A(E) < ∞` and `M` SGP over `A` imply `M ⊗_A R` SGP over `R = A ⋉ E`.
pub fn verify_sgp_transfer_forward(
    a: &Ring,
    e: &FinModule,
    m: &FinModule,
    bound: usize,
    limits: &Limits,
) -> Result<TransferReport> {
    let r = check_base(a, e, Some(m))?;
    let mut rep = TransferReport::new("pd_A(E) finite, M SGP over A => M (x)_A R SGP over R");
    rep.hypotheses.push(bounded("pd_A(E) finite", pd_bounded(e, bound), bound));
    let left = is_sgp(m, limits)?;
    let right = is_sgp(&base_change(m, &r)?, limits)?;
    rep.require_decided("left", &left);
    rep.require_decided("right", &right);
    rep.left_side = left.to_string();
    rep.right_side = right.to_string();
    rep.conclude(!(left.is_yes() && right.is_no()));
    Ok(rep)
}

/// `E` flat and `M ⊗_A R` SGP over `R` imply `M` SGP over `A`.
pub fn verify_sgp_transfer_backward(
    a: &Ring,
    e: &FinModule,
    m: &FinModule,
    limits: &Limits,
) -> Result<TransferReport> {
    let r = check_base(a, e, Some(m))?;
    let mut rep = TransferReport::new("E flat, M (x)_A R SGP over R => M SGP over A");
    // flat = projective over a finite (perfect) ring
    rep.hypotheses.push(Hypothesis::check("E flat", is_projective(e), "flat = projective over finite rings"));
    let left = is_sgp(m, limits)?;
    let right = is_sgp(&base_change(m, &r)?, limits)?;
    rep.require_decided("left", &left);
    rep.require_decided("right", &right);
    rep.left_side = left.to_string();
    rep.right_side = right.to_string();
    rep.conclude(!(right.is_yes() && left.is_no()));
    Ok(rep)
}

/// `Ext^p_A(R, M) = 0` for `p >= 1`, `fd_A(R) < ∞` and `M` SGI over `A` imply
/// `Hom_A(R, M)` SGI over `R`.
pub fn verify_sgi_transfer(
    a: &Ring,
    e: &FinModule,
    m: &FinModule,
    bound: usize,
    limits: &Limits,
) -> Result<TransferReport> {
    let r = check_base(a, e, Some(m))?;
    let r_a = ring_over_base(&r)?;
    let mut rep = TransferReport::new("Ext_A^{>=1}(R, M) = 0, fd_A(R) finite, M SGI over A => Hom_A(R, M) SGI over R");
    let mut res = Resolution::new(&r_a);
    rep.hypotheses.push(vanishing_range("Ext_A^p(R, M) = 0", bound, |i| Ok(res.ext_dim(m, i)))?);
    rep.hypotheses.push(bounded("fd_A(R) finite", fd_bounded(&r_a, bound), bound));
    let left = is_sgi(m, limits)?;
    let right = is_sgi(&coinduced(m, &r)?, limits)?;
    rep.require_decided("left", &left);
    rep.require_decided("right", &right);
    rep.left_side = left.to_string();
    rep.right_side = right.to_string();
    rep.conclude(!(left.is_yes() && right.is_no()));
    Ok(rep)
}

/// Proxy for `Gpd_A(M) <= Gpd_R(M ⊗_A R)` under `Tor^A_{>=1}(M, R) = 0`:
/// when `G-gldim(R) = 0` the right side is `0`, so `M` must show no obstruction over `A`.
pub fn verify_gpd_inequality(
    a: &Ring,
    e: &FinModule,
    m: &FinModule,
    bound: usize,
    limits: &Limits,
) -> Result<TransferReport> {
    let r = check_base(a, e, Some(m))?;
    let r_a = ring_over_base(&r)?;
    let mut rep = TransferReport::new("Tor^A_{>=1}(M, R) = 0 => Gpd_A(M) <= Gpd_R(M (x)_A R)");
    rep.partial = true;
    rep.hypotheses.push(vanishing_range("Tor^A_k(M, R) = 0", bound, |k| tor_dim(m, &r_a, k))?);
    let cr = classify_ggldim(&r, bound, limits)?;
    let obstruction = gp_obstruction(m, bound);
    rep.left_side = format!("{obstruction:?}");
    rep.right_side = format!("G-gldim(R) {}", cr.kind);
    if cr.kind == GgldimKind::Zero {
        rep.conclude(obstruction == GpObstruction::NoObstruction);
    } else {
        rep.notes.push("G-gldim(R) is not 0: no decidable proxy at this size".into());
    }
    Ok(rep)
}

/// `G-gldim(A) <= G-gldim(R) + fd_A(E)` in the regimes decidable from the classifier.
pub fn verify_ggldim_inequality(a: &Ring, e: &FinModule, bound: usize, limits: &Limits) -> Result<TransferReport> {
    let r = check_base(a, e, None)?;
    let mut rep = TransferReport::new("G-gldim(A) <= G-gldim(R) + fd_A(E)");
    let fd = fd_bounded(e, bound);
    rep.hypotheses.push(Hypothesis::check("fd_A(E) computed", true, fd.to_string()));
    let ca = classify_ggldim(a, bound, limits)?.kind;
    let cr = classify_ggldim(&r, bound, limits)?.kind;
    rep.left_side = format!("G-gldim(A) {ca}");
    rep.right_side = format!("G-gldim(R) {cr}, fd_A(E) {fd}");
    let a_local = a.local_factor_count() == 1;
    let holds = match (ca, cr, fd) {
        // finite right side: G-gldim(A) <= r is finite, hence 0 by the local dichotomy
        (_, GgldimKind::Zero, DimBound::Finite(d)) if d == 0 || a_local => Some(ca == GgldimKind::Zero),
        (GgldimKind::Infinite, _, _) => Some(cr == GgldimKind::Infinite || fd == DimBound::ExceedsBound),
        (_, GgldimKind::Infinite, _) | (GgldimKind::Zero, _, _) => {
            rep.notes.push("holds trivially".into());
            Some(true)
        }
        _ => None,
    };
    match holds {
        Some(h) => rep.conclude(h),
        None => rep.notes.push("regime not decidable at this size".into()),
    }
    Ok(rep)
}
