//! The code constructions proper: one-point evaluation codes and their
//! twisted variants, generator matrices, parity-check matrices by three
//! routes (nullspace, orthogonality recursion, extreme-hook closed form),
//! self-duality certificates, eta extraction from vanishing functions,
//! minimum-distance classification through the curve group, exhaustive
//! parameter searches, and Schur-square audits.

use crate::curve::{Curve, CurveKind, EvalSet, Point, WITNESS_CAP};
use crate::differential::{residues, DiffError, ResidueVector};
use crate::gf::{Field, Fq};
use crate::lincode::{self, CodeClass, CodeSummary, LinError, Matrix};
use crate::rrspace::{
    self, basis_dual_space, basis_lko, defining_set_general, defining_set_single, max_ell,
    BasisError, CurveFunc, FuncBasis, MultiTwist, SingleTwist,
};
use std::fmt;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    BadShape(String),
    DegenerateRecursion(String),
    RamifiedPoint,
    CapExceeded,
    Basis(BasisError),
    Curve(crate::curve::CurveError),
    Lin(LinError),
    Diff(DiffError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::BadShape(s) => write!(f, "bad shape: {}", s),
            BuildError::DegenerateRecursion(s) => write!(f, "degenerate recursion: {}", s),
            BuildError::RamifiedPoint => write!(f, "parity-check scaling hits a ramified point"),
            BuildError::CapExceeded => write!(f, "enumeration cap exceeded"),
            BuildError::Basis(e) => write!(f, "{}", e),
            BuildError::Curve(e) => write!(f, "{}", e),
            BuildError::Lin(e) => write!(f, "{}", e),
            BuildError::Diff(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for BuildError {}

impl From<BasisError> for BuildError {
    fn from(e: BasisError) -> Self {
        BuildError::Basis(e)
    }
}
impl From<crate::curve::CurveError> for BuildError {
    fn from(e: crate::curve::CurveError) -> Self {
        BuildError::Curve(e)
    }
}
impl From<LinError> for BuildError {
    fn from(e: LinError) -> Self {
        BuildError::Lin(e)
    }
}
impl From<DiffError> for BuildError {
    fn from(e: DiffError) -> Self {
        BuildError::Diff(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistKind {
    Single(SingleTwist),
    Multi(MultiTwist),
}

/// An evaluation code: curve, ordered point set D, dimension k, optional
/// twist, optional nonzero column scaling v. Generator and residue vector
/// are cached write-once.
pub struct CodeHandle {
    curve: Curve,
    d: EvalSet,
    k: usize,
    twist: Option<TwistKind>,
    v: Option<Vec<Fq>>,
    gen_cache: OnceLock<Matrix>,
    res_cache: OnceLock<Result<ResidueVector, DiffError>>,
}

impl Clone for CodeHandle {
    fn clone(&self) -> Self {
        CodeHandle {
            curve: self.curve.clone(),
            d: self.d.clone(),
            k: self.k,
            twist: self.twist.clone(),
            v: self.v.clone(),
            gen_cache: OnceLock::new(),
            res_cache: OnceLock::new(),
        }
    }
}

impl fmt::Debug for CodeHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CodeHandle(n={}, k={}, twist={:?})",
            self.d.len(),
            self.k,
            self.twist
        )
    }
}

impl CodeHandle {
    pub fn new(
        curve: Curve,
        d: EvalSet,
        k: usize,
        twist: Option<TwistKind>,
        v: Option<Vec<Fq>>,
    ) -> Result<CodeHandle, BuildError> {
        let n = d.len();
        if k < 3 {
            return Err(BuildError::BadShape("k must be at least 3".to_string()));
        }
        if n <= k {
            return Err(BuildError::BadShape(format!(
                "need n > k, got n = {}, k = {}",
                n, k
            )));
        }
        match &twist {
            Some(TwistKind::Single(tw)) => {
                if n < k + 2 {
                    return Err(BuildError::BadShape(
                        "twisted codes need n >= k + 2".to_string(),
                    ));
                }
                defining_set_single(&curve, k, tw)?;
            }
            Some(TwistKind::Multi(tw)) => {
                if !tw.t.is_empty() {
                    if n < k + 2 {
                        return Err(BuildError::BadShape(
                            "twisted codes need n >= k + 2".to_string(),
                        ));
                    }
                    let t_max = tw.t.iter().copied().max().unwrap();
                    if t_max > n - k - 1 {
                        return Err(BuildError::BadShape(format!(
                            "twist reach t = {} exceeds n - k - 1 = {}",
                            t_max,
                            n - k - 1
                        )));
                    }
                }
                defining_set_general(&curve, k, tw)?;
            }
            None => {}
        }
        if let Some(v) = &v {
            if v.len() != n {
                return Err(BuildError::BadShape(
                    "scaling vector length must equal n".to_string(),
                ));
            }
            if v.iter().any(|x| x.is_zero()) {
                return Err(BuildError::BadShape(
                    "scaling vector entries must be nonzero".to_string(),
                ));
            }
        }
        Ok(CodeHandle {
            curve,
            d,
            k,
            twist,
            v,
            gen_cache: OnceLock::new(),
            res_cache: OnceLock::new(),
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn points(&self) -> &EvalSet {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn twist(&self) -> Option<&TwistKind> {
        self.twist.as_ref()
    }

    pub fn single_twist(&self) -> Option<&SingleTwist> {
        match &self.twist {
            Some(TwistKind::Single(tw)) => Some(tw),
            _ => None,
        }
    }

    pub fn v(&self) -> Option<&[Fq]> {
        self.v.as_deref()
    }

    /// The defining function space of this code.
    pub fn defining_basis(&self) -> Result<FuncBasis, BuildError> {
        Ok(match &self.twist {
            None => basis_lko(&self.curve, self.k)?,
            Some(TwistKind::Single(tw)) => defining_set_single(&self.curve, self.k, tw)?,
            Some(TwistKind::Multi(tw)) => defining_set_general(&self.curve, self.k, tw)?.0,
        })
    }

    /// Cached generator matrix: the defining basis evaluated on D, columns
    /// scaled by v when present. Full rank k by construction.
    pub fn generator(&self) -> Result<&Matrix, BuildError> {
        if let Some(m) = self.gen_cache.get() {
            return Ok(m);
        }
        let basis = self.defining_basis()?;
        let mut m = rrspace::evaluate(&self.curve, &basis, &self.d)?;
        if let Some(v) = &self.v {
            m = m.scale_columns(v);
        }
        let _ = self.gen_cache.set(m);
        Ok(self.gen_cache.get().unwrap())
    }

    /// Cached residue vector of dx/t along D.
    pub fn residue_vector(&self) -> Result<&ResidueVector, BuildError> {
        let res = self.res_cache.get_or_init(|| residues(&self.curve, &self.d));
        match res {
            Ok(rv) => Ok(rv),
            Err(e) => Err(BuildError::Diff(e.clone())),
        }
    }
}

/// The per-type parity scaling gamma_i, gamma_i/beta_i, or
/// gamma_i/(a alpha_i + b) that multiplies the dual-space rows.
fn parity_scale(curve: &Curve, d: &EvalSet, rv: &ResidueVector) -> Result<Vec<Fq>, BuildError> {
    let f = curve.field();
    let coords = d.coords();
    let mut out = Vec::with_capacity(coords.len());
    for (i, &(x, y)) in coords.iter().enumerate() {
        let g = rv.gammas()[i];
        let s = match curve.kind() {
            CurveKind::Type1 => {
                if y.is_zero() {
                    return Err(BuildError::RamifiedPoint);
                }
                f.div(g, y).unwrap()
            }
            CurveKind::Type2 => g,
            CurveKind::Type3 => {
                let lin = curve.cofactor_at(x);
                if lin.is_zero() {
                    return Err(BuildError::RamifiedPoint);
                }
                f.div(g, lin).unwrap()
            }
        };
        out.push(s);
    }
    Ok(out)
}

/// Generator matrix of the plain one-point code on (D, kO), columns scaled
/// by v when given.
pub fn ecc_generator(
    curve: &Curve,
    d: &EvalSet,
    k: usize,
    v: Option<&[Fq]>,
) -> Result<Matrix, BuildError> {
    if k >= d.len() {
        return Err(BuildError::BadShape("need k < n".to_string()));
    }
    let basis = basis_lko(curve, k)?;
    let mut m = rrspace::evaluate(curve, &basis, d)?;
    if let Some(v) = v {
        m = m.scale_columns(v);
    }
    Ok(m)
}

/// Residue-route parity-check matrix of the one-point code: diag(gamma)
/// times the evaluated dual-space basis.
pub fn ecc_parity_check(curve: &Curve, d: &EvalSet, k: usize) -> Result<Matrix, BuildError> {
    let n = d.len();
    if k >= n {
        return Err(BuildError::BadShape("need k < n".to_string()));
    }
    let rv = residues(curve, d)?;
    let basis = basis_dual_space(curve, n, k)?;
    let m = match rrspace::evaluate(curve, &basis, d) {
        Ok(m) => m,
        Err(BasisError::PoleAtPoint) => return Err(BuildError::RamifiedPoint),
        Err(e) => return Err(e.into()),
    };
    Ok(m.scale_columns(rv.gammas()))
}

/// Generator of the (possibly twisted, possibly scaled) code.
pub fn tecc_generator(handle: &CodeHandle) -> Result<Matrix, BuildError> {
    Ok(handle.generator()?.clone())
}

/// Reference parity check: canonical nullspace of the generator. Works for
/// every handle and serves as the arbiter for the other routes.
pub fn tecc_parity_check_nullspace(handle: &CodeHandle) -> Result<Matrix, BuildError> {
    Ok(handle.generator()?.nullspace())
}

/// Values of the solved recursion coefficients, in the naming of the
/// orthogonality solve (a_r/b_r for odd k, h_r/e_r for even k).
#[derive(Debug, Clone)]
pub struct RecursionTrace {
    pub entries: Vec<(String, Fq)>,
}

/// Shared shape checks for the two structured parity routes.
fn structured_route_guard(handle: &CodeHandle) -> Result<(usize, usize, SingleTwist), BuildError> {
    let n = handle.n();
    let k = handle.k();
    let tw = handle
        .single_twist()
        .copied()
        .ok_or_else(|| BuildError::BadShape("route needs a single-twist handle".to_string()))?;
    if n % 2 != 0 {
        return Err(BuildError::BadShape(
            "structured parity routes need even n".to_string(),
        ));
    }
    if !handle.points().split_complete() {
        return Err(BuildError::BadShape(
            "structured parity routes need a split-complete D".to_string(),
        ));
    }
    Ok((n, k, tw))
}

/// The f-polynomial monomial supports for the structured routes, with the
/// coefficient names of the associated triangular solve. The first listed
/// coefficient (a_0 for odd k, h_0 for even k) is the normalized one.
struct FShape {
    /// flattened monomials, aligned with `names`
    monomials: Vec<CurveFunc>,
    names: Vec<String>,
}

fn f_shape(curve: &Curve, n: usize, k: usize, ell: usize) -> Result<FShape, BuildError> {
    let s = n / 2;
    if k % 2 == 1 {
        let m = (k - 3) / 2 - ell;
        if s < ell + 3 + m {
            return Err(BuildError::BadShape(
                "n too small for the recursion shape".to_string(),
            ));
        }
        // a_i on x^(s-ell-1-i), then b_j on x^(s-ell-3-j) Y
        let mut monomials = Vec::with_capacity(2 * m + 2);
        let mut names = Vec::with_capacity(2 * m + 2);
        for i in 0..=m {
            monomials.push(CurveFunc::x_power(curve, s - ell - 1 - i));
            names.push(format!("a_{}", i));
        }
        for j in 0..=m {
            monomials.push(CurveFunc::y_term(curve, s - ell - 3 - j));
            names.push(format!("b_{}", j));
        }
        Ok(FShape { monomials, names })
    } else {
        let m = k / 2 - ell;
        if s < ell + 1 + m {
            return Err(BuildError::BadShape(
                "n too small for the recursion shape".to_string(),
            ));
        }
        // h_j on x^(s-ell-1-j) Y, then e_i on x^(s-ell-i)
        let mut monomials = Vec::with_capacity(2 * m + 2);
        let mut names = Vec::with_capacity(2 * m + 2);
        for j in 0..=m {
            monomials.push(CurveFunc::y_term(curve, s - ell - 1 - j));
            names.push(format!("h_{}", j));
        }
        for i in 0..=m {
            monomials.push(CurveFunc::x_power(curve, s - ell - i));
            names.push(format!("e_{}", i));
        }
        Ok(FShape { monomials, names })
    }
}

/// Assemble the structured parity check from a found f: the scale·f row on
/// top of the degree-reduced dual block diag(gamma)·(dual basis for k+1),
/// all columns divided by v when present. The result is verified to
/// annihilate the code so a degenerate route can never be silently wrong.
fn assemble_structured(handle: &CodeHandle, f_func: &CurveFunc) -> Result<Matrix, BuildError> {
    let curve = handle.curve();
    let field = curve.field().clone();
    let d = handle.points();
    let (n, k) = (handle.n(), handle.k());
    let rv = handle.residue_vector()?;
    let scale = parity_scale(curve, d, rv)?;
    let mut top = Vec::with_capacity(n);
    for (i, (x, y)) in d.coords().into_iter().enumerate() {
        top.push(field.mul(scale[i], f_func.eval(curve, x, y)));
    }
    let block = {
        let basis = basis_dual_space(curve, n, k + 1)?;
        let m = match rrspace::evaluate(curve, &basis, d) {
            Ok(m) => m,
            Err(BasisError::PoleAtPoint) => return Err(BuildError::RamifiedPoint),
            Err(e) => return Err(e.into()),
        };
        m.scale_columns(rv.gammas())
    };
    let mut h = Matrix::from_rows(&field, vec![top]).stack(&block);
    if let Some(v) = handle.v() {
        let inv: Vec<Fq> = v.iter().map(|&x| field.inv(x).unwrap()).collect();
        h = h.scale_columns(&inv);
    }
    let g = handle.generator()?;
    if !g.mul(&h.transpose()).is_zero() || h.rank() != n - k {
        return Err(BuildError::DegenerateRecursion(
            "assembled parity check does not annihilate the code".to_string(),
        ));
    }
    Ok(h)
}

/// Recursion-route parity check: solve the orthogonality conditions for
/// the coefficients of the f-polynomial under the normalization a_0 = 1
/// (odd k) or h_0 = 1 (even k), then stack the f row on the dual block.
/// DegenerateRecursion is reported whenever the normalized solution does
/// not exist or is not unique.
pub fn tecc_parity_check_recursive(
    handle: &CodeHandle,
) -> Result<(Matrix, RecursionTrace), BuildError> {
    let (n, k, tw) = structured_route_guard(handle)?;
    let curve = handle.curve();
    let field = curve.field().clone();
    let shape = f_shape(curve, n, k, tw.ell)?;
    let d = handle.points();
    let rv = handle.residue_vector()?;
    let scale = parity_scale(curve, d, rv)?;
    let n_unknowns = shape.monomials.len();

    // conditions: sum_i scale_i m_t(P_i) g_r(P_i) = 0 for every generator
    // row g_r of the unscaled code (v drops out of the orthogonality)
    let basis = handle.defining_basis()?;
    let gm = rrspace::evaluate(curve, &basis, d)?;
    let coords = d.coords();
    let mut cond = Matrix::zeros(&field, k, n_unknowns);
    for (t, mono) in shape.monomials.iter().enumerate() {
        for r in 0..k {
            let mut acc = field.zero();
            for (i, &(x, y)) in coords.iter().enumerate() {
                let w = field.mul(scale[i], mono.eval(curve, x, y));
                acc = field.add(acc, field.mul(w, gm.get(r, i)));
            }
            cond.set(r, t, acc);
        }
    }
    // solution space of the homogeneous system; coefficient 0 (a_0 or h_0)
    // must be scalable to 1. When the hook leaves the system
    // underdetermined any solution serves; the assembled matrix is
    // verified to annihilate the code either way.
    let sols = cond.nullspace();
    if sols.rows() == 0 {
        return Err(BuildError::DegenerateRecursion(
            "orthogonality system has no nonzero solution".to_string(),
        ));
    }
    let mut last_err = BuildError::DegenerateRecursion(
        "no solution admits the stated normalization".to_string(),
    );
    for cand in 0..sols.rows() {
        let lead = sols.get(cand, 0);
        if lead.is_zero() {
            continue;
        }
        let inv = field.inv(lead).unwrap();
        let solved: Vec<Fq> = sols.row(cand).iter().map(|&c| field.mul(c, inv)).collect();
        let mut f_func = CurveFunc::zero(curve);
        for (t, mono) in shape.monomials.iter().enumerate() {
            f_func = f_func.add(&mono.scale(solved[t]));
        }
        match assemble_structured(handle, &f_func) {
            Ok(h) => {
                let trace = RecursionTrace {
                    entries: shape
                        .names
                        .iter()
                        .cloned()
                        .zip(solved.iter().copied())
                        .collect(),
                };
                return Ok((h, trace));
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Closed-form route, valid at the extreme hook index ell = (k-3)/2 (odd k)
/// or k/2 (even k): the f-polynomial has exactly two terms with explicit
/// residue power-sum coefficients.
pub fn tecc_parity_check_closed_form(handle: &CodeHandle) -> Result<Matrix, BuildError> {
    let (n, k, tw) = structured_route_guard(handle)?;
    if tw.ell != max_ell(k) {
        return Err(BuildError::BadShape(
            "closed form needs the extreme hook index".to_string(),
        ));
    }
    let curve = handle.curve();
    let f = curve.field().clone();
    let d = handle.points();
    let rv = handle.residue_vector()?;
    let coords = d.coords();
    let gam = rv.gammas();
    let s = (n / 2) as u64;
    let eta = tw.eta;
    // residue power sums over D
    let sum_gx = |e: u64| {
        let mut acc = f.zero();
        for (i, &(x, _)) in coords.iter().enumerate() {
            acc = f.add(acc, f.mul(gam[i], f.pow(x, e)));
        }
        acc
    };
    let sum_gxy = |e: u64| {
        let mut acc = f.zero();
        for (i, &(x, y)) in coords.iter().enumerate() {
            acc = f.add(acc, f.mul(gam[i], f.mul(f.pow(x, e), y)));
        }
        acc
    };
    let (cx, cy, x_exp, y_exp) = match (curve.kind(), k % 2 == 1) {
        (CurveKind::Type1, true) => {
            let b = sum_gx(s - 1);
            let a2 = {
                let mut acc = f.zero();
                for (i, &(x, y)) in coords.iter().enumerate() {
                    acc = f.add(acc, f.div(f.mul(gam[i], f.pow(x, s + 1)), y).unwrap());
                }
                acc
            };
            (
                f.mul(eta, b),
                f.neg(f.add(b, f.mul(eta, a2))),
                (n / 2) - (k - 1) / 2,
                (n / 2) - (k + 3) / 2,
            )
        }
        (CurveKind::Type1, false) => {
            let b = sum_gx(s - 1);
            let c2 = sum_gxy(s - 2);
            (
                f.neg(f.add(b, f.mul(eta, c2))),
                f.mul(eta, b),
                (n / 2) - k / 2,
                (n / 2) - k / 2 - 1,
            )
        }
        (CurveKind::Type2, true) => {
            let c = sum_gxy(s - 1);
            let b2 = sum_gx(s + 1);
            (
                f.mul(eta, c),
                f.add(c, f.mul(eta, b2)),
                (n / 2) - (k - 1) / 2,
                (n / 2) - (k + 3) / 2,
            )
        }
        (CurveKind::Type2, false) => {
            let c = sum_gxy(s - 1);
            let c2 = {
                let mut acc = f.zero();
                for (i, &(x, y)) in coords.iter().enumerate() {
                    acc = f.add(
                        acc,
                        f.mul(gam[i], f.mul(f.pow(x, s - 2), f.mul(y, y))),
                    );
                }
                acc
            };
            (
                f.add(c, f.mul(eta, c2)),
                f.mul(eta, c),
                (n / 2) - k / 2,
                (n / 2) - k / 2 - 1,
            )
        }
        (CurveKind::Type3, true) => {
            let c = sum_gxy(s - 1);
            let a2 = {
                let mut acc = f.zero();
                for (i, &(x, _)) in coords.iter().enumerate() {
                    let lin = curve.cofactor_at(x);
                    acc = f.add(acc, f.div(f.mul(gam[i], f.pow(x, s + 1)), lin).unwrap());
                }
                acc
            };
            (
                f.mul(eta, c),
                f.add(c, f.mul(eta, a2)),
                (n / 2) - (k - 1) / 2,
                (n / 2) - (k + 3) / 2,
            )
        }
        (CurveKind::Type3, false) => {
            let c = sum_gxy(s - 1);
            let c2 = {
                let mut acc = f.zero();
                for (i, &(x, y)) in coords.iter().enumerate() {
                    let lin = curve.cofactor_at(x);
                    acc = f.add(
                        acc,
                        f.mul(f.mul(gam[i], lin), f.mul(f.pow(x, s - 2), y)),
                    );
                }
                acc
            };
            (
                f.add(c, f.mul(eta, c2)),
                f.mul(eta, c),
                (n / 2) - k / 2,
                (n / 2) - k / 2 - 1,
            )
        }
    };
    if cx.is_zero() && cy.is_zero() {
        return Err(BuildError::DegenerateRecursion(
            "closed-form coefficients vanish".to_string(),
        ));
    }
    let f_func = CurveFunc::x_power(curve, x_exp)
        .scale(cx)
        .add(&CurveFunc::y_term(curve, y_exp).scale(cy));
    assemble_structured(handle, &f_func)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaOutcome {
    /// The points do not sum to O: nothing in L((k+1)O) vanishes on them.
    NoFunction,
    /// The vanishing function has a zero hook coefficient but a nonzero
    /// top coefficient: it lies in no twisted set.
    NoEta,
    /// Both coefficients vanish: the function lies in the twisted set for
    /// every eta.
    AllEta,
    Eta(Fq),
}

/// k+1 points, the (unique up to scale) function of L((k+1)O) vanishing on
/// them when they sum to O, and the extracted twist value.
#[derive(Debug, Clone)]
pub struct EtaWitness {
    pub points: Vec<Point>,
    pub func: Option<CurveFunc>,
    pub outcome: EtaOutcome,
}

/// Solve for the function of L((k+1)O) vanishing on k+1 given points and
/// read off the twist value eta that would put it in the single-twist
/// defining set with hook index ell. The function is normalized so its
/// last nonzero coefficient in the (x-block, Y-block) basis order is 1.
pub fn eta_of_points(curve: &Curve, ell: usize, pts: &[Point]) -> Result<EtaWitness, BuildError> {
    let field = curve.field().clone();
    if pts.len() < 4 {
        return Err(BuildError::BadShape(
            "need at least k+1 = 4 points".to_string(),
        ));
    }
    let k = pts.len() - 1;
    if ell > max_ell(k) {
        return Err(BuildError::BadShape(format!(
            "ell = {} out of range for k = {}",
            ell, k
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for p in pts {
        if p.xy().is_none() || !seen.insert(*p) {
            return Err(BuildError::BadShape(
                "points must be affine and distinct".to_string(),
            ));
        }
        if !curve.contains(p) {
            return Err(BuildError::Curve(crate::curve::CurveError::OffCurve));
        }
    }
    let mut sum = Point::Infinity;
    for p in pts {
        sum = curve.add(&sum, p)?;
    }
    if !sum.is_infinity() {
        return Ok(EtaWitness {
            points: pts.to_vec(),
            func: None,
            outcome: EtaOutcome::NoFunction,
        });
    }
    let basis = basis_lko(curve, k + 1)?;
    let rows: Vec<Vec<Fq>> = pts
        .iter()
        .map(|p| {
            let (x, y) = p.xy().unwrap();
            basis
                .funcs
                .iter()
                .map(|bf| bf.eval(curve, x, y).unwrap())
                .collect()
        })
        .collect();
    let null = Matrix::from_rows(&field, rows).nullspace();
    debug_assert_eq!(null.rows(), 1, "vanishing function is unique up to scale");
    let raw: Vec<Fq> = null.row(0).to_vec();
    let last = raw.iter().rposition(|c| !c.is_zero()).unwrap();
    let inv = field.inv(raw[last]).unwrap();
    let coeffs: Vec<Fq> = raw.iter().map(|&c| field.mul(c, inv)).collect();
    let mut func = CurveFunc::zero(curve);
    for (i, bf) in basis.funcs.iter().enumerate() {
        func = func.add(&bf.num.scale(coeffs[i]));
    }
    // locate the top and hook coefficients per the parity of k
    let n_x = (k + 1) / 2 + 1; // x-block size of L((k+1)O)
    let (top, hook) = if k % 2 == 1 {
        // top x^((k+1)/2); hook x^ell Y
        (coeffs[n_x - 1], coeffs[n_x + ell])
    } else {
        // top x^((k-2)/2) Y; hook x^ell
        (*coeffs.last().unwrap(), coeffs[ell])
    };
    let outcome = match (hook.is_zero(), top.is_zero()) {
        (true, true) => EtaOutcome::AllEta,
        (true, false) => EtaOutcome::NoEta,
        (false, _) => EtaOutcome::Eta(field.div(top, hook).unwrap()),
    };
    Ok(EtaWitness {
        points: pts.to_vec(),
        func: Some(func),
        outcome,
    })
}

/// How the minimum distance of a twisted code was settled.
#[derive(Debug, Clone)]
pub enum DistanceCase {
    /// d = n-k-1: a (k+1)-subset of D carries a vanishing function inside
    /// the defining set.
    NkMinus1 {
        subset: Vec<usize>,
        witness: EtaWitness,
    },
    /// d = n-k: some k columns of the generator are dependent; the kernel
    /// function vanishes on those points. `via_lko` marks the classical
    /// mechanism (pole order <= k, a subset-sum witness); otherwise the
    /// function has pole order k+1 and a repeated or off-D extra zero.
    Nk {
        subset: Vec<usize>,
        func: CurveFunc,
        via_lko: bool,
    },
    /// d = n-k+1.
    Mds,
}

impl DistanceCase {
    pub fn label(&self) -> &'static str {
        match self {
            DistanceCase::NkMinus1 { .. } => "n-k-1",
            DistanceCase::Nk { .. } => "n-k",
            DistanceCase::Mds => "n-k+1",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub d: u32,
    pub case: DistanceCase,
}

const SUBSET_SCAN_CAP: u64 = 5_000_000;

fn subsets_summing_to_zero(
    curve: &Curve,
    pts: &[Point],
    size: usize,
) -> Result<Vec<Vec<usize>>, BuildError> {
    let r = curve
        .subset_sum_count(size, &Point::Infinity, pts, WITNESS_CAP)
        .map_err(BuildError::Curve)?;
    r.witnesses.ok_or(BuildError::CapExceeded)
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Exact minimum-distance classification of a single-twist handle via the
/// curve group: d = n-k-1 iff some k+1 points of D summing to O carry a
/// vanishing function whose extracted eta matches (or is free); else
/// d = n-k iff some k columns of the generator are dependent (this covers
/// both the classical subset-sum mechanism and defining-set functions with
/// a repeated or off-D extra zero); else the code meets the Singleton
/// bound.
pub fn min_distance_class(handle: &CodeHandle) -> Result<DistanceReport, BuildError> {
    let tw = handle
        .single_twist()
        .copied()
        .ok_or_else(|| BuildError::BadShape("needs a single-twist handle".to_string()))?;
    let curve = handle.curve();
    let n = handle.n();
    let k = handle.k();
    let pts = handle.points().points();
    if binomial(n, k + 1).saturating_add(binomial(n, k)) > SUBSET_SCAN_CAP {
        return Err(BuildError::CapExceeded);
    }

    // d = n-k-1: a (k+1)-point vanishing function inside the defining set
    for subset in subsets_summing_to_zero(curve, pts, k + 1)? {
        let chosen: Vec<Point> = subset.iter().map(|&i| pts[i]).collect();
        let w = eta_of_points(curve, tw.ell, &chosen)?;
        let hit = match &w.outcome {
            EtaOutcome::Eta(e) => *e == tw.eta,
            EtaOutcome::AllEta => true,
            _ => false,
        };
        if hit {
            return Ok(DistanceReport {
                d: (n - k - 1) as u32,
                case: DistanceCase::NkMinus1 { subset, witness: w },
            });
        }
    }

    // d = n-k: k dependent generator columns
    let g = handle.generator()?;
    let field = handle.field().clone();
    let basis = handle.defining_basis()?;
    let mut fallback: Option<(Vec<usize>, CurveFunc)> = None;
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        let sub = Matrix::from_rows(
            &field,
            (0..k)
                .map(|r| indices.iter().map(|&c| g.get(r, c)).collect())
                .collect(),
        );
        let null = sub.transpose().nullspace();
        if null.rows() > 0 {
            let coefs = null.row(0).to_vec();
            let mut func = CurveFunc::zero(curve);
            for (i, bf) in basis.funcs.iter().enumerate() {
                func = func.add(&bf.num.scale(coefs[i]));
            }
            let via_lko = func.pole_order().is_some_and(|p| p <= k as i64);
            if via_lko {
                return Ok(DistanceReport {
                    d: (n - k) as u32,
                    case: DistanceCase::Nk {
                        subset: indices.clone(),
                        func,
                        via_lko: true,
                    },
                });
            }
            if fallback.is_none() {
                fallback = Some((indices.clone(), func));
            }
        }
        // next combination
        let mut advanced = false;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if indices[i] + (k - i) <= n - 1 {
                indices[i] += 1;
                for j in i + 1..k {
                    indices[j] = indices[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    if let Some((subset, func)) = fallback {
        return Ok(DistanceReport {
            d: (n - k) as u32,
            case: DistanceCase::Nk {
                subset,
                func,
                via_lko: false,
            },
        });
    }
    Ok(DistanceReport {
        d: (n - k + 1) as u32,
        case: DistanceCase::Mds,
    })
}

/// Classical distance dichotomy for the untwisted one-point code:
/// d = n-k iff N(k, O, D) > 0, else d = n-k+1.
pub fn ecc_distance_class(
    curve: &Curve,
    d: &EvalSet,
    k: usize,
) -> Result<DistanceReport, BuildError> {
    let n = d.len();
    if k == 0 || k >= n {
        return Err(BuildError::BadShape("need 0 < k < n".to_string()));
    }
    let r = curve
        .subset_sum_count(k, &Point::Infinity, d.points(), WITNESS_CAP)
        .map_err(BuildError::Curve)?;
    if r.count > 0 {
        let subset = r
            .witnesses
            .and_then(|w| w.into_iter().next())
            .unwrap_or_default();
        let chosen: Vec<Point> = subset.iter().map(|&i| d.points()[i]).collect();
        let field = curve.field().clone();
        let basis = basis_lko(curve, k)?;
        let rows: Vec<Vec<Fq>> = chosen
            .iter()
            .map(|p| {
                let (x, y) = p.xy().unwrap();
                basis
                    .funcs
                    .iter()
                    .map(|bf| bf.eval(curve, x, y).unwrap())
                    .collect()
            })
            .collect();
        let null = Matrix::from_rows(&field, rows).nullspace();
        let coefs = null.row(0).to_vec();
        let mut func = CurveFunc::zero(curve);
        for (i, bf) in basis.funcs.iter().enumerate() {
            func = func.add(&bf.num.scale(coefs[i]));
        }
        return Ok(DistanceReport {
            d: (n - k) as u32,
            case: DistanceCase::Nk {
                subset,
                func,
                via_lko: true,
            },
        });
    }
    Ok(DistanceReport {
        d: (n - k + 1) as u32,
        case: DistanceCase::Mds,
    })
}

/// The exact self-duality conditions for extreme-hook scaled codes with
/// n = 2k: a per-type eta condition on residue power sums plus the
/// proportionality v_i^2 = lambda * w_i with the per-type weight w.
#[derive(Debug, Clone)]
pub struct SelfDualCertificate {
    pub kind: CurveKind,
    pub k_even: bool,
    /// Value of the eta-condition left-hand side; must be zero.
    pub eta_condition_lhs: Fq,
    /// The proportionality scalar actually found, when one exists.
    pub scalar: Option<Fq>,
    pub verdict: bool,
}

pub fn self_dual_check(handle: &CodeHandle) -> Result<SelfDualCertificate, BuildError> {
    let (n, k, tw) = structured_route_guard(handle)?;
    if n != 2 * k {
        return Err(BuildError::BadShape("self-duality needs n = 2k".to_string()));
    }
    if tw.ell != max_ell(k) {
        return Err(BuildError::BadShape(
            "self-duality certificate needs the extreme hook index".to_string(),
        ));
    }
    let curve = handle.curve();
    let f = curve.field().clone();
    let rv = handle.residue_vector()?;
    let gam = rv.gammas();
    let coords = handle.points().coords();
    let eta = tw.eta;
    let two = f.from_int(2);
    let kk = k as u64;
    let mut lhs = f.zero();
    let mut weights = Vec::with_capacity(n);
    match (curve.kind(), k % 2 == 1) {
        (CurveKind::Type1, odd) => {
            for (i, &(x, y)) in coords.iter().enumerate() {
                if y.is_zero() {
                    return Err(BuildError::RamifiedPoint);
                }
                let w = f.div(gam[i], y).unwrap();
                weights.push(w);
                let t1 = if odd {
                    f.mul(eta, f.mul(w, f.pow(x, kk + 1)))
                } else {
                    f.mul(eta, f.mul(f.mul(gam[i], y), f.pow(x, kk - 2)))
                };
                let t2 = f.mul(two, f.mul(gam[i], f.pow(x, kk - 1)));
                lhs = f.add(lhs, f.add(t1, t2));
            }
        }
        (CurveKind::Type2, odd) => {
            for (i, &(x, y)) in coords.iter().enumerate() {
                weights.push(gam[i]);
                let t = if odd {
                    f.mul(gam[i], f.pow(x, kk + 1))
                } else {
                    f.mul(gam[i], f.mul(f.pow(x, kk - 2), f.mul(y, y)))
                };
                lhs = f.add(lhs, t);
            }
        }
        (CurveKind::Type3, odd) => {
            for (i, &(x, y)) in coords.iter().enumerate() {
                let lin = curve.cofactor_at(x);
                if lin.is_zero() {
                    return Err(BuildError::RamifiedPoint);
                }
                weights.push(f.div(gam[i], lin).unwrap());
                let t = if odd {
                    f.div(f.mul(gam[i], f.pow(x, kk + 1)), lin).unwrap()
                } else {
                    f.mul(f.mul(gam[i], lin), f.mul(f.pow(x, kk - 2), y))
                };
                lhs = f.add(lhs, t);
            }
        }
    }
    let ones;
    let v: &[Fq] = match handle.v() {
        Some(v) => v,
        None => {
            ones = vec![f.one(); n];
            &ones
        }
    };
    let mut scalar: Option<Fq> = None;
    let mut consistent = true;
    for i in 0..n {
        let lam = f.div(f.mul(v[i], v[i]), weights[i]).unwrap();
        match scalar {
            None => scalar = Some(lam),
            Some(prev) => {
                if prev != lam {
                    consistent = false;
                    break;
                }
            }
        }
    }
    let verdict = lhs.is_zero() && consistent;
    Ok(SelfDualCertificate {
        kind: curve.kind(),
        k_even: k % 2 == 0,
        eta_condition_lhs: lhs,
        scalar: if consistent { scalar } else { None },
        verdict,
    })
}

/// Filter for code searches.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchFilter {
    pub class: Option<CodeClass>,
    pub self_dual: Option<bool>,
}

#[derive(Debug)]
pub struct SearchHit {
    pub handle: CodeHandle,
    pub summary: CodeSummary,
}

/// Exhaustive sweep over eta (and over scaling vectors compatible with the
/// self-duality proportionality, up to the global-scalar orbit) for
/// single-twist codes with the extreme hook. Every reported hit is
/// re-verified by the full classifier.
pub fn search_codes(
    curve: &Curve,
    n: usize,
    k: usize,
    filter: SearchFilter,
    budget: u64,
) -> Result<Vec<SearchHit>, BuildError> {
    if k < 3 || n <= k + 1 {
        return Err(BuildError::BadShape("need k >= 3 and n >= k+2".to_string()));
    }
    let f = curve.field().clone();
    let d = curve.select_eval_set(n)?;
    let ell = max_ell(k);
    let mut hits = Vec::new();
    let mut work: u64 = 0;
    let want_self_dual = filter.self_dual == Some(true) && n == 2 * k;
    for eta in f.elements().skip(1) {
        let tw = SingleTwist { ell, eta };
        let vs: Vec<Option<Vec<Fq>>> = if want_self_dual {
            self_dual_candidate_scalings(curve, &d)?
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        };
        for v in vs {
            work += 1;
            if work > budget {
                return Err(BuildError::Lin(LinError::BudgetExceeded));
            }
            let handle =
                CodeHandle::new(curve.clone(), d.clone(), k, Some(TwistKind::Single(tw)), v)?;
            let summary = lincode::classify(handle.generator()?, budget)?;
            if let Some(cl) = filter.class {
                if summary.class != cl {
                    continue;
                }
            }
            if let Some(sd) = filter.self_dual {
                if summary.self_dual != sd {
                    continue;
                }
            }
            hits.push(SearchHit { handle, summary });
        }
    }
    Ok(hits)
}

/// Candidate scaling vectors v with v_i^2 proportional to the per-type
/// weight, enumerated up to the global-scalar orbit: lambda over the
/// square classes, canonical roots, and (odd characteristic) sign choices
/// with the first coordinate's sign fixed.
pub fn self_dual_candidate_scalings(
    curve: &Curve,
    d: &EvalSet,
) -> Result<Vec<Vec<Fq>>, BuildError> {
    let f = curve.field().clone();
    let rv = residues(curve, d)?;
    let weights = parity_scale(curve, d, &rv)?;
    let n = weights.len();
    let mut out = Vec::new();
    let mut lambdas = vec![f.one()];
    if f.characteristic() != 2 {
        if let Some(ns) = f.elements().skip(1).find(|&z| !f.is_square(z)) {
            lambdas.push(ns);
        }
    }
    for lam in lambdas {
        let scaled: Vec<Fq> = weights.iter().map(|&w| f.mul(lam, w)).collect();
        if scaled.iter().any(|&s| f.sqrt(s).is_none()) {
            continue;
        }
        let base: Vec<Fq> = scaled.iter().map(|&s| f.sqrt(s).unwrap()).collect();
        if f.characteristic() == 2 {
            out.push(base);
            continue;
        }
        let patterns: u64 = 1 << (n - 1);
        for mask in 0..patterns {
            let mut v = base.clone();
            for (j, slot) in v.iter_mut().enumerate().skip(1) {
                if (mask >> (j - 1)) & 1 == 1 {
                    *slot = f.neg(*slot);
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Schur-square audit: computed dimensions against the hook-position
/// predictions, on the primal side (4 <= k <= (n-4)/2) and the dual side
/// (4 <= n-k <= (n-4)/2).
#[derive(Debug, Clone)]
pub struct SchurReport {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub extreme: bool,
    /// dim of the twisted code's Schur square when the primal range applies
    pub primal_dim: Option<usize>,
    /// the pole-order sumset lower bound for the primal side
    pub primal_sumset_bound: Option<usize>,
    /// dim of the dual's Schur square when the dual range applies
    pub dual_dim: Option<usize>,
    /// dim of the Schur square of the untwisted code on the same D, k
    pub ecc_dim: usize,
}

pub fn schur_audit(handle: &CodeHandle) -> Result<SchurReport, BuildError> {
    let n = handle.n();
    let k = handle.k();
    let tw = handle
        .single_twist()
        .copied()
        .ok_or_else(|| BuildError::BadShape("audit needs a single-twist handle".to_string()))?;
    let primal_ok = 4 <= k && 2 * k + 4 <= n;
    let dual_ok = 4 <= n - k && n >= 2 * (n - k) + 4;
    if !primal_ok && !dual_ok {
        return Err(BuildError::BadShape(
            "neither the primal nor the dual Schur range applies".to_string(),
        ));
    }
    let g = handle.generator()?;
    let primal_dim = primal_ok.then(|| lincode::schur_square_dim(g));
    let dual_dim = dual_ok.then(|| lincode::schur_square_dim(&lincode::dual(g)));
    let primal_sumset_bound = if primal_ok {
        let basis = handle.defining_basis()?;
        let orders = basis.pole_orders();
        let mut sums = std::collections::HashSet::new();
        for &a in &orders {
            for &b in &orders {
                let s = a + b;
                if s >= 0 && (s as usize) < n {
                    sums.insert(s);
                }
            }
        }
        Some(sums.len())
    } else {
        None
    };
    let ecc = ecc_generator(handle.curve(), handle.points(), k, None)?;
    Ok(SchurReport {
        n,
        k,
        ell: tw.ell,
        extreme: tw.ell == max_ell(k),
        primal_dim,
        primal_sumset_bound,
        dual_dim,
        ecc_dim: lincode::schur_square_dim(&ecc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::lincode::DEFAULT_BUDGET;

    fn gf5_curve() -> Curve {
        let f5 = Field::new(5, 1, None).unwrap();
        Curve::type1(&f5, &[1, 1, 0, 1]).unwrap()
    }

    fn gf16_curve() -> Curve {
        let f16 = Field::new(2, 4, None).unwrap();
        Curve::type2(&f16, &[1, 0, 0, 1]).unwrap()
    }

    fn gf4_type2() -> Curve {
        let f4 = Field::new(2, 2, None).unwrap();
        Curve::type2(&f4, &[0, 0, 0, 1]).unwrap()
    }

    fn gf4_type3() -> Curve {
        let f4 = Field::new(2, 2, None).unwrap();
        Curve::type3(&f4, f4.one(), f4.one()).unwrap()
    }

    fn gf5_tecc(eta: i64) -> CodeHandle {
        let c = gf5_curve();
        let f = c.field().clone();
        let d = c.select_eval_set(8).unwrap();
        CodeHandle::new(
            c,
            d,
            3,
            Some(TwistKind::Single(SingleTwist {
                ell: 0,
                eta: f.from_int(eta),
            })),
            None,
        )
        .unwrap()
    }

    fn gf4_tgecc(eta: u64, v: Option<Vec<Fq>>) -> CodeHandle {
        let c = gf4_type2();
        let f = c.field().clone();
        let d = c.select_eval_set(6).unwrap();
        CodeHandle::new(
            c,
            d,
            3,
            Some(TwistKind::Single(SingleTwist {
                ell: 0,
                eta: f.elem(eta),
            })),
            v,
        )
        .unwrap()
    }

    fn mat(f: &Field, rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&v| f.elem(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn ecc_generator_and_parity_exact() {
        // the 4x8 matrices over GF(5); parity as forced by the duality
        // theorem (rows gamma/beta x^i, then gamma)
        let c = gf5_curve();
        let f = c.field().clone();
        let d = c.select_eval_set(8).unwrap();
        let g = ecc_generator(&c, &d, 4, None).unwrap();
        assert_eq!(
            g,
            mat(
                &f,
                &[
                    &[1, 1, 1, 1, 1, 1, 1, 1],
                    &[0, 0, 2, 2, 3, 3, 4, 4],
                    &[0, 0, 4, 4, 4, 4, 1, 1],
                    &[1, 4, 1, 4, 1, 4, 2, 3],
                ]
            )
        );
        let h = ecc_parity_check(&c, &d, 4).unwrap();
        assert_eq!(
            h,
            mat(
                &f,
                &[
                    &[1, 4, 4, 1, 3, 2, 1, 4],
                    &[0, 0, 3, 2, 4, 1, 4, 1],
                    &[0, 0, 1, 4, 2, 3, 1, 4],
                    &[1, 1, 4, 4, 3, 3, 2, 2],
                ]
            )
        );
        assert!(g.mul(&h.transpose()).is_zero());
        assert!(h.row_space_eq(&g.nullspace()));
    }

    #[test]
    fn ecc_gf16_self_dual() {
        let c = gf16_curve();
        let f = c.field().clone();
        let w5 = f.parse_elem("w^5").unwrap();
        let w10 = f.parse_elem("w^10").unwrap();
        let d = crate::curve::EvalSet::from_points(
            &c,
            &[
                Point::Affine(f.zero(), f.parse_elem("w^2+w").unwrap()),
                Point::Affine(f.zero(), f.parse_elem("w^2+w+1").unwrap()),
                Point::Affine(w5, f.zero()),
                Point::Affine(w5, f.one()),
                Point::Affine(w10, f.zero()),
                Point::Affine(w10, f.one()),
                Point::Affine(f.one(), f.zero()),
                Point::Affine(f.one(), f.one()),
            ],
        )
        .unwrap();
        let g = ecc_generator(&c, &d, 4, None).unwrap();
        let h = ecc_parity_check(&c, &d, 4).unwrap();
        assert_eq!(g, h);
        assert!(g.row_space_eq(&lincode::dual(&g)));
    }

    #[test]
    fn ecc_gf4_type3_parity() {
        // D in the hand-computed order: pairs over x = a, a+1, 0
        let c = gf4_type3();
        let f = c.field().clone();
        let a = f.gen();
        let a1 = f.add(a, f.one());
        let d = crate::curve::EvalSet::from_points(
            &c,
            &[
                Point::Affine(a, f.zero()),
                Point::Affine(a, f.one()),
                Point::Affine(a1, f.zero()),
                Point::Affine(a1, f.one()),
                Point::Affine(f.zero(), a),
                Point::Affine(f.zero(), a1),
            ],
        )
        .unwrap();
        let g = ecc_generator(&c, &d, 4, None).unwrap();
        assert_eq!(
            g,
            mat(
                &f,
                &[
                    &[1, 1, 1, 1, 1, 1],
                    &[2, 2, 3, 3, 0, 0],
                    &[3, 3, 2, 2, 0, 0],
                    &[0, 3, 0, 2, 2, 3],
                ]
            )
        );
        let h = ecc_parity_check(&c, &d, 4).unwrap();
        assert_eq!(h, mat(&f, &[&[1, 1, 1, 1, 1, 1], &[2, 2, 3, 3, 0, 0]]));
        assert!(g.mul(&h.transpose()).is_zero());
        assert!(h.row_space_eq(&g.nullspace()));
    }

    #[test]
    fn tecc_generator_gf5() {
        for eta in 1..5i64 {
            let h = gf5_tecc(eta);
            let f = h.field().clone();
            let g = tecc_generator(&h).unwrap();
            let e = f.from_int(eta);
            let expect_row2: Vec<Fq> = [
                (0i64, 1i64),
                (0, 4),
                (2, 1),
                (2, 4),
                (3, 1),
                (3, 4),
                (4, 2),
                (4, 3),
            ]
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (f.from_int(x), f.from_int(y));
                f.add(y, f.mul(e, f.mul(x, x)))
            })
            .collect();
            assert_eq!(g.row(2), expect_row2.as_slice());
            assert_eq!(g.rank(), 3);
        }
    }

    #[test]
    fn parity_routes_agree_gf5() {
        for eta in 1..5i64 {
            let h = gf5_tecc(eta);
            let null = tecc_parity_check_nullspace(&h).unwrap();
            let (rec, trace) = tecc_parity_check_recursive(&h).unwrap();
            let closed = tecc_parity_check_closed_form(&h).unwrap();
            assert!(rec.row_space_eq(&null), "eta = {}", eta);
            assert!(closed.row_space_eq(&null), "eta = {}", eta);
            // trace carries a_0 = 1 and the closing b_0 = -1/eta
            let f = h.field().clone();
            assert_eq!(trace.entries[0], ("a_0".to_string(), f.one()));
            let b0 = trace.entries.last().unwrap();
            assert_eq!(b0.0, "b_0");
            assert_eq!(b0.1, f.neg(f.inv(f.from_int(eta)).unwrap()));
        }
    }

    #[test]
    fn parity_routes_agree_gf4_tgecc() {
        let c = gf4_type2();
        let f = c.field().clone();
        let a = f.gen();
        let a1 = f.add(a, f.one());
        for eta in [f.one(), a, a1] {
            for lam in [f.one(), a, a1] {
                let v = vec![
                    lam,
                    lam,
                    f.div(lam, a).unwrap(),
                    f.div(lam, a).unwrap(),
                    f.div(lam, a1).unwrap(),
                    f.div(lam, a1).unwrap(),
                ];
                let h = gf4_tgecc(eta.encoding() as u64, Some(v));
                let null = tecc_parity_check_nullspace(&h).unwrap();
                let (rec, _) = tecc_parity_check_recursive(&h).unwrap();
                let closed = tecc_parity_check_closed_form(&h).unwrap();
                assert!(rec.row_space_eq(&null));
                assert!(closed.row_space_eq(&null));
            }
        }
    }

    #[test]
    fn eta_witnesses_match_tables() {
        // 4-subsets over GF(5): multiples {1,4,6,7} of P1 give
        // f = 4 + y + 3x^2 and eta = 3; {1,2,7,8} give the pure-x function
        let c = gf5_curve();
        let f = c.field().clone();
        let p1 = Point::Affine(f.elem(0), f.elem(1));
        let mults = |ms: &[i64]| -> Vec<Point> {
            ms.iter().map(|&m| c.scalar_mul(m, &p1).unwrap()).collect()
        };
        let w = eta_of_points(&c, 0, &mults(&[1, 4, 6, 7])).unwrap();
        assert_eq!(w.outcome, EtaOutcome::Eta(f.elem(3)));
        let func = w.func.unwrap();
        assert_eq!(func.u.coeff(0), f.elem(4));
        assert_eq!(func.u.coeff(2), f.elem(3));
        assert_eq!(func.v.coeff(0), f.one());

        let w1 = eta_of_points(&c, 0, &mults(&[1, 2, 7, 8])).unwrap();
        assert_eq!(w1.outcome, EtaOutcome::NoEta);
        let func = w1.func.unwrap();
        assert!(func.v.is_zero());
        assert_eq!(func.u.coeff(1), f.one());
        assert_eq!(func.u.coeff(2), f.one());

        let w2 = eta_of_points(&c, 0, &mults(&[1, 2, 3, 4])).unwrap();
        assert_eq!(w2.outcome, EtaOutcome::NoFunction);
        assert!(w2.func.is_none());
    }

    #[test]
    fn eta_extraction_even_k() {
        // for every 5-subset of a 12-point set summing to O, the extracted
        // twist value puts the vanishing function inside the k = 4 defining
        // set: its evaluation is a codeword, of weight at most n-k-1
        let f13 = Field::new(13, 1, None).unwrap();
        let c = Curve::type1(&f13, &[1, 1, 0, 1]).unwrap();
        let d = c.select_eval_set(12).unwrap();
        let k = 4usize;
        let subsets = c
            .subset_sum_count(k + 1, &Point::Infinity, d.points(), WITNESS_CAP)
            .unwrap()
            .witnesses
            .unwrap();
        assert!(!subsets.is_empty());
        let mut eta_hits = 0;
        for subset in &subsets {
            let pts: Vec<Point> = subset.iter().map(|&i| d.points()[i]).collect();
            for ell in 0..=max_ell(k) {
                let w = eta_of_points(&c, ell, &pts).unwrap();
                let func = w.func.clone().unwrap();
                // the function vanishes on the subset
                for p in &pts {
                    let (x, y) = p.xy().unwrap();
                    assert!(func.eval(&c, x, y).is_zero());
                }
                if let EtaOutcome::Eta(e) = w.outcome {
                    eta_hits += 1;
                    let h = CodeHandle::new(
                        c.clone(),
                        d.clone(),
                        k,
                        Some(TwistKind::Single(SingleTwist { ell, eta: e })),
                        None,
                    )
                    .unwrap();
                    let g = h.generator().unwrap();
                    let word: Vec<Fq> = d
                        .coords()
                        .into_iter()
                        .map(|(x, y)| func.eval(&c, x, y))
                        .collect();
                    let word_m = Matrix::from_rows(h.field(), vec![word.clone()]);
                    assert!(g.stack(&word_m).rank() == k, "ev(f) must lie in the code");
                    let wt = word.iter().filter(|v| !v.is_zero()).count();
                    assert!(wt <= d.len() - k - 1);
                    // and the classifier sees it: d = n-k-1 for this eta
                    assert_eq!(min_distance_class(&h).unwrap().d, (d.len() - k - 1) as u32);
                }
            }
        }
        assert!(eta_hits > 0, "some subset must carry a twist value");
    }

    #[test]
    fn distance_classes_gf5() {
        // d = 4 exactly for eta in {2, 3}; d = 5 for eta in {1, 4}
        for eta in 1..5i64 {
            let h = gf5_tecc(eta);
            let rep = min_distance_class(&h).unwrap();
            let expect = if eta == 2 || eta == 3 { 4 } else { 5 };
            assert_eq!(rep.d, expect, "eta = {}", eta);
            let g = h.generator().unwrap();
            assert_eq!(lincode::min_distance(g, DEFAULT_BUDGET).unwrap(), expect);
            match (eta, &rep.case) {
                (2 | 3, DistanceCase::NkMinus1 { witness, .. }) => {
                    assert_eq!(witness.outcome, EtaOutcome::Eta(h.field().from_int(eta)));
                }
                (1 | 4, DistanceCase::Nk { via_lko, .. }) => {
                    // the weight-5 words come from pole-order-4 functions
                    assert!(!via_lko);
                }
                _ => panic!("unexpected case for eta = {}", eta),
            }
        }
    }

    #[test]
    fn distance_class_gf4_truth() {
        // the twisted GF(4) code is [6,3,3] for every eta: a double-zero
        // defining-set function exists (weight-3 word checked explicitly)
        let c = gf4_type2();
        let f = c.field().clone();
        let _ = c;
        for eta in [1u64, 2, 3] {
            let h = gf4_tgecc(eta, None);
            let rep = min_distance_class(&h).unwrap();
            assert_eq!(rep.d, 3, "eta = {}", eta);
            let g = h.generator().unwrap();
            assert_eq!(lincode::min_distance(g, DEFAULT_BUDGET).unwrap(), 3);
        }
        // the explicit weight-3 codeword for eta = 1:
        // f = alpha + x + (y + x^2) vanishes at P1, P4, P6
        let h = gf4_tgecc(1, None);
        let g = h.generator().unwrap();
        let msg = [f.gen(), f.one(), f.one()];
        let mut word = vec![f.zero(); 6];
        for (r, &m) in msg.iter().enumerate() {
            for (j, slot) in word.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(m, g.get(r, j)));
            }
        }
        let wt = word.iter().filter(|v| !v.is_zero()).count();
        assert_eq!(wt, 3);
    }

    #[test]
    fn ecc_distance_dichotomy() {
        let c = gf5_curve();
        let d = c.select_eval_set(8).unwrap();
        // N(4, O, D) = 8 > 0, so the k = 4 code has d = 4
        let rep = ecc_distance_class(&c, &d, 4).unwrap();
        assert_eq!(rep.d, 4);
        let g = ecc_generator(&c, &d, 4, None).unwrap();
        assert_eq!(lincode::min_distance(&g, DEFAULT_BUDGET).unwrap(), 4);
    }

    #[test]
    fn self_dual_certificates() {
        // the scaled GF(4) code is self-dual for every lambda, eta
        let c = gf4_type2();
        let f = c.field().clone();
        let a = f.gen();
        let a1 = f.add(a, f.one());
        for lam in [f.one(), a, a1] {
            for eta in [f.one(), a, a1] {
                let v = vec![
                    lam,
                    lam,
                    f.div(lam, a).unwrap(),
                    f.div(lam, a).unwrap(),
                    f.div(lam, a1).unwrap(),
                    f.div(lam, a1).unwrap(),
                ];
                let h = gf4_tgecc(eta.encoding() as u64, Some(v));
                let cert = self_dual_check(&h).unwrap();
                assert!(cert.verdict);
                assert!(cert.eta_condition_lhs.is_zero());
                assert_eq!(cert.scalar, Some(f.mul(lam, lam)));
                let g = h.generator().unwrap();
                assert!(g.row_space_eq(&lincode::dual(g)));
            }
        }
        // all-ones v: proportionality fails, and so does the row space test
        let h = gf4_tgecc(1, None);
        let cert = self_dual_check(&h).unwrap();
        assert!(!cert.verdict);
        assert!(cert.scalar.is_none());
        let g = h.generator().unwrap();
        assert!(!g.row_space_eq(&lincode::dual(g)));
    }

    #[test]
    fn sandwich_inclusions() {
        // C_L(D,(2l+2)O) < twisted code < C_L(D,(k+1)O) for odd k
        let h = gf5_tecc(2);
        let c = h.curve().clone();
        let d = h.points().clone();
        let g_tw = h.generator().unwrap();
        let g_low = ecc_generator(&c, &d, 2, None).unwrap();
        let g_high = ecc_generator(&c, &d, 4, None).unwrap();
        assert_eq!(g_low.stack(g_tw).rank(), 3);
        assert!(g_low.rank() < 3);
        assert_eq!(g_tw.stack(&g_high).rank(), 4);
    }

    #[test]
    fn search_results() {
        // GF(4), n=6, k=3: every self-dual twisted code here is [6,3,3]
        // NMDS, so the MDS + self-dual filter comes back empty
        let c = gf4_type2();
        let hits = search_codes(
            &c,
            6,
            3,
            SearchFilter {
                class: Some(CodeClass::Mds),
                self_dual: Some(true),
            },
            100_000,
        )
        .unwrap();
        assert!(hits.is_empty());
        let hits = search_codes(
            &c,
            6,
            3,
            SearchFilter {
                class: Some(CodeClass::Nmds),
                self_dual: Some(true),
            },
            100_000,
        )
        .unwrap();
        // one scaling orbit per eta
        assert_eq!(hits.len(), 3);
        for hit in &hits {
            assert!(hit.summary.self_dual);
            assert_eq!((hit.summary.n, hit.summary.k, hit.summary.d), (6, 3, 3));
        }

        // GF(5), n=8, k=3: no twisted code is MDS
        let c5 = gf5_curve();
        let hits = search_codes(
            &c5,
            8,
            3,
            SearchFilter {
                class: Some(CodeClass::Mds),
                self_dual: None,
            },
            100_000,
        )
        .unwrap();
        assert!(hits.is_empty());

        // shape errors
        assert!(matches!(
            search_codes(&c5, 8, 8, SearchFilter::default(), 1000),
            Err(BuildError::BadShape(_))
        ));
    }

    #[test]
    fn multi_twist_handles() {
        // a two-hook code over GF(13): full rank, nullspace parity check,
        // and the Schur cap min(n, k(k+1)/2)
        let f13 = Field::new(13, 1, None).unwrap();
        let c = Curve::type1(&f13, &[1, 1, 0, 1]).unwrap();
        let d = c.select_eval_set(12).unwrap();
        let tw = MultiTwist {
            t: vec![1, 2],
            h: vec![1, 1],
            eta: vec![f13.one(), f13.from_int(2)],
        };
        let h = CodeHandle::new(c.clone(), d.clone(), 5, Some(TwistKind::Multi(tw)), None)
            .unwrap();
        let g = h.generator().unwrap();
        assert_eq!(g.rank(), 5);
        let null = tecc_parity_check_nullspace(&h).unwrap();
        assert_eq!(null.rows(), 7);
        assert!(g.mul(&null.transpose()).is_zero());
        let dim = lincode::schur_square_dim(g);
        assert!(dim <= 12.min(5 * 6 / 2));
        // structured routes and the distance classifier are single-twist
        assert!(matches!(
            tecc_parity_check_recursive(&h),
            Err(BuildError::BadShape(_))
        ));
        assert!(matches!(
            min_distance_class(&h),
            Err(BuildError::BadShape(_))
        ));
        // twist reach bounded by n - k - 1
        let too_far = MultiTwist {
            t: vec![7],
            h: vec![0],
            eta: vec![f13.one()],
        };
        assert!(matches!(
            CodeHandle::new(c, d, 5, Some(TwistKind::Multi(too_far)), None),
            Err(BuildError::BadShape(_))
        ));
    }

    #[test]
    fn scaled_generator_matches_column_scaling() {
        let h0 = gf5_tecc(2);
        let f = h0.field().clone();
        let v: Vec<Fq> = (1..9).map(|i| f.elem(i % 4 + 1)).collect();
        let hv = CodeHandle::new(
            h0.curve().clone(),
            h0.points().clone(),
            3,
            h0.twist().cloned(),
            Some(v.clone()),
        )
        .unwrap();
        let expect = h0.generator().unwrap().scale_columns(&v);
        assert_eq!(*hv.generator().unwrap(), expect);
        // distances are invariant under nonzero column scaling
        assert_eq!(
            min_distance_class(&hv).unwrap().d,
            min_distance_class(&h0).unwrap().d
        );
    }

    #[test]
    fn schur_audit_ranges() {
        // n = 16 over GF(13): k = 4 primal side, extreme vs interior hooks
        let f13 = Field::new(13, 1, None).unwrap();
        let c = Curve::type1(&f13, &[1, 1, 0, 1]).unwrap();
        let d = c.select_eval_set(16).unwrap();
        // eta = 2 keeps the hook generic: with eta^2 = 1 an interior hook
        // can collapse back to 2k+1 via g·y = x^4 + x^2 + g
        for (ell, expect_exact) in [(2usize, true), (1, false), (0, false)] {
            let h = CodeHandle::new(
                c.clone(),
                d.clone(),
                4,
                Some(TwistKind::Single(SingleTwist {
                    ell,
                    eta: f13.from_int(2),
                })),
                None,
            )
            .unwrap();
            let rep = schur_audit(&h).unwrap();
            assert_eq!(rep.ecc_dim, 8); // 2k for the untwisted code
            let dim = rep.primal_dim.unwrap();
            assert!(dim >= 9, "ell = {}: dim = {}", ell, dim);
            if expect_exact {
                assert_eq!(dim, 9); // 2k+1 at the extreme hook
                assert!(rep.extreme);
            } else {
                assert!(dim >= 10, "interior ell = {}: dim = {}", ell, dim);
            }
            assert!(rep.primal_sumset_bound.unwrap() <= dim);
        }
        // dual side: k = 12 on n = 16, n-k = 4, extreme hook
        let h = CodeHandle::new(
            c.clone(),
            d.clone(),
            12,
            Some(TwistKind::Single(SingleTwist {
                ell: 6,
                eta: f13.one(),
            })),
            None,
        )
        .unwrap();
        let rep = schur_audit(&h).unwrap();
        assert_eq!(rep.dual_dim.unwrap(), 2 * (16 - 12) + 1);
    }
}
