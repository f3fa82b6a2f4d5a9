//! Bivariate function arithmetic modulo the curve equation, bases of the
//! one-point Riemann-Roch spaces L(kO), the dual-space bases used by the
//! parity-check constructions, and the twisted defining sets.
//!
//! Functions are kept in the canonical form u(x) + v(x)·Y where Y = y for
//! types 1 and 2 and Y = (ax+b)y for type 3; products reduce through
//! Y^2 = A(x) + B(x)Y, which stays polynomial for all three types. Linear
//! independence of every emitted basis is certified by pairwise-distinct
//! pole orders at infinity (x-terms have even order, Y-terms odd order).

use crate::curve::{Curve, CurveKind, EvalSet};
use crate::gf::{Fq, Poly};
use crate::lincode::Matrix;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisError {
    BadK,
    BadRange,
    BadTwist(String),
    PoleAtPoint,
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::BadK => write!(f, "k must be at least 1"),
            BasisError::BadRange => write!(f, "need 1 <= k < n"),
            BasisError::BadTwist(s) => write!(f, "invalid twist: {}", s),
            BasisError::PoleAtPoint => {
                write!(f, "basis denominator vanishes at an evaluation point")
            }
        }
    }
}

impl std::error::Error for BasisError {}

/// u(x) + v(x)·Y in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveFunc {
    pub u: Poly,
    pub v: Poly,
}

impl fmt::Debug for CurveFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveFunc(u={:?}, v={:?})", self.u, self.v)
    }
}

impl CurveFunc {
    pub fn zero(curve: &Curve) -> CurveFunc {
        let f = curve.field();
        CurveFunc {
            u: Poly::zero(f),
            v: Poly::zero(f),
        }
    }

    pub fn from_x_poly(u: Poly) -> CurveFunc {
        let f = u.field().clone();
        CurveFunc {
            u,
            v: Poly::zero(&f),
        }
    }

    /// x^e
    pub fn x_power(curve: &Curve, e: usize) -> CurveFunc {
        CurveFunc::from_x_poly(Poly::x_power(curve.field(), e))
    }

    /// x^e · Y
    pub fn y_term(curve: &Curve, e: usize) -> CurveFunc {
        let f = curve.field();
        CurveFunc {
            u: Poly::zero(f),
            v: Poly::x_power(f, e),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, other: &CurveFunc) -> CurveFunc {
        CurveFunc {
            u: self.u.add(&other.u),
            v: self.v.add(&other.v),
        }
    }

    pub fn scale(&self, a: Fq) -> CurveFunc {
        CurveFunc {
            u: self.u.scale(a),
            v: self.v.scale(a),
        }
    }

    /// Product re-canonicalized through Y^2 = A(x) + B(x)Y.
    pub fn mul(&self, other: &CurveFunc, curve: &Curve) -> CurveFunc {
        let (a, b) = curve.y_square_reduction();
        let uu = self.u.mul(&other.u);
        let vv = self.v.mul(&other.v);
        let cross = self.u.mul(&other.v).add(&self.v.mul(&other.u));
        CurveFunc {
            u: uu.add(&vv.mul(&a)),
            v: cross.add(&vv.mul(&b)),
        }
    }

    /// Pole order at infinity: x has order 2, Y has order 3 for every type
    /// (for type 3 this is the pole of (ax+b)y). None for the zero function.
    pub fn pole_order(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        if let Some(d) = self.u.degree() {
            best = Some(2 * d as i64);
        }
        if let Some(d) = self.v.degree() {
            let o = 2 * d as i64 + 3;
            best = Some(best.map_or(o, |b| b.max(o)));
        }
        best
    }

    /// Value at an affine point (the Y factor evaluates to cof(x)·y).
    pub fn eval(&self, curve: &Curve, x: Fq, y: Fq) -> Fq {
        let f = curve.field();
        let yy = f.mul(curve.cofactor_at(x), y);
        f.add(self.u.eval(x), f.mul(self.v.eval(x), yy))
    }

    pub fn render(&self, curve: &Curve) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        if !self.u.is_zero() {
            parts.push(self.u.render("x"));
        }
        if !self.v.is_zero() {
            let v = if self.v.degree() == Some(0) && self.v.coeff(0) == curve.field().one() {
                String::new()
            } else {
                format!("({})*", self.v.render("x"))
            };
            let y = match curve.ab() {
                Some((a, b)) => {
                    let lin = Poly::new(curve.field(), vec![b, a]);
                    format!("({})*y", lin.render("x"))
                }
                None => "y".to_string(),
            };
            parts.push(format!("{}{}", v, y));
        }
        parts.join(" + ")
    }
}

/// Formal denominator of a dual-space basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Den {
    One,
    /// 1/y (first-type dual spaces)
    Y,
    /// 1/(ax+b) (third-type dual spaces)
    Linear,
}

/// A basis function num/den, with den evaluable wherever it does not vanish.
#[derive(Clone, PartialEq, Eq)]
pub struct BasisFunc {
    pub num: CurveFunc,
    pub den: Den,
}

impl fmt::Debug for BasisFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisFunc({:?}, den {:?})", self.num, self.den)
    }
}

impl BasisFunc {
    pub fn plain(num: CurveFunc) -> BasisFunc {
        BasisFunc {
            num,
            den: Den::One,
        }
    }

    /// Pole order at infinity; the 1/y and 1/(ax+b) denominators subtract
    /// 3 and 2 respectively (they vanish at O to that order). May be
    /// negative: 1/y has a zero of order 3 at infinity.
    pub fn pole_order(&self) -> Option<i64> {
        let base = self.num.pole_order()?;
        Some(match self.den {
            Den::One => base,
            Den::Y => base - 3,
            Den::Linear => base - 2,
        })
    }

    pub fn eval(&self, curve: &Curve, x: Fq, y: Fq) -> Result<Fq, BasisError> {
        let f = curve.field();
        let num = self.num.eval(curve, x, y);
        let den = match self.den {
            Den::One => f.one(),
            Den::Y => y,
            Den::Linear => curve.cofactor_at(x),
        };
        if den.is_zero() {
            return Err(BasisError::PoleAtPoint);
        }
        Ok(f.div(num, den).unwrap())
    }

    pub fn render(&self, curve: &Curve) -> String {
        let num = self.num.render(curve);
        match self.den {
            Den::One => num,
            Den::Y => format!("({})/y", num),
            Den::Linear => {
                let (a, b) = curve.ab().expect("linear denominator is type-3 only");
                let lin = Poly::new(curve.field(), vec![b, a]);
                format!("({})/({})", num, lin.render("x"))
            }
        }
    }
}

/// Which space a basis spans; kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceTag {
    /// L(kO)
    OnePoint { k: usize },
    /// L(D - kO + (dx/t)) presented through the per-type dual basis
    Dual { n: usize, k: usize },
    /// twisted defining set with a single hook
    SingleTwist { k: usize, ell: usize },
    /// general multi-twist defining set
    MultiTwist { k: usize },
}

#[derive(Debug, Clone)]
pub struct FuncBasis {
    pub funcs: Vec<BasisFunc>,
    pub tag: SpaceTag,
}

impl FuncBasis {
    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    /// Pole orders are pairwise distinct in every emitted basis; this is
    /// the linear-independence certificate.
    pub fn pole_orders(&self) -> Vec<i64> {
        self.funcs
            .iter()
            .map(|f| f.pole_order().expect("basis functions are nonzero"))
            .collect()
    }
}

/// Basis of L(kO): x^i for 2i <= k, then x^j·Y for 2j+3 <= k, both blocks
/// ascending. Ordering matches the generator-matrix row layout.
pub fn basis_lko(curve: &Curve, k: usize) -> Result<FuncBasis, BasisError> {
    if k < 1 {
        return Err(BasisError::BadK);
    }
    let mut funcs = Vec::with_capacity(k);
    for i in 0..=k / 2 {
        funcs.push(BasisFunc::plain(CurveFunc::x_power(curve, i)));
    }
    if k >= 3 {
        for j in 0..=(k - 3) / 2 {
            funcs.push(BasisFunc::plain(CurveFunc::y_term(curve, j)));
        }
    }
    Ok(FuncBasis {
        funcs,
        tag: SpaceTag::OnePoint { k },
    })
}

/// Basis of the dual Riemann-Roch space for an [n, k] one-point code, in
/// the row order of the parity-check displays:
///   type 1: x^i/y (i <= floor((n-k)/2)), then x^j (j <= floor((n-k-3)/2));
///   type 2: x^i, then x^j y;
///   type 3: x^i/(ax+b), then x^j y.
pub fn basis_dual_space(curve: &Curve, n: usize, k: usize) -> Result<FuncBasis, BasisError> {
    if k < 1 || k >= n {
        return Err(BasisError::BadRange);
    }
    let m = n - k;
    let mut funcs = Vec::with_capacity(m);
    match curve.kind() {
        CurveKind::Type1 => {
            for i in 0..=m / 2 {
                funcs.push(BasisFunc {
                    num: CurveFunc::x_power(curve, i),
                    den: Den::Y,
                });
            }
            if m >= 3 {
                for j in 0..=(m - 3) / 2 {
                    funcs.push(BasisFunc::plain(CurveFunc::x_power(curve, j)));
                }
            }
        }
        CurveKind::Type2 => {
            for i in 0..=m / 2 {
                funcs.push(BasisFunc::plain(CurveFunc::x_power(curve, i)));
            }
            if m >= 3 {
                for j in 0..=(m - 3) / 2 {
                    funcs.push(BasisFunc::plain(CurveFunc::y_term(curve, j)));
                }
            }
        }
        CurveKind::Type3 => {
            // x^i/(ax+b) has pole order 2i+2; plain y = Y/(ax+b) pole 1
            for i in 0..=m / 2 {
                funcs.push(BasisFunc {
                    num: CurveFunc::x_power(curve, i),
                    den: Den::Linear,
                });
            }
            if m >= 3 {
                for j in 0..=(m - 3) / 2 {
                    funcs.push(BasisFunc {
                        num: CurveFunc::y_term(curve, j),
                        den: Den::Linear,
                    });
                }
            }
        }
    }
    debug_assert_eq!(funcs.len(), m);
    Ok(FuncBasis {
        funcs,
        tag: SpaceTag::Dual { n, k },
    })
}

/// A single hook: index ell and a nonzero eta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingleTwist {
    pub ell: usize,
    pub eta: Fq,
}

/// The general multi-twist data (t, h, eta), componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTwist {
    pub t: Vec<usize>,
    pub h: Vec<usize>,
    pub eta: Vec<Fq>,
}

/// Legal ell range for a single twist: 0..=(k-3)/2 for odd k, 0..=k/2 even.
pub fn max_ell(k: usize) -> usize {
    if k % 2 == 1 {
        (k - 3) / 2
    } else {
        k / 2
    }
}

/// Single-twist defining set, dimension k, exactly one member of pole
/// order k+1 (the hook):
///   odd k:  {x^i} ∪ {x^j Y, j != ell} ∪ {x^ell Y + eta x^((k+1)/2)};
///   even k: {x^i, i != ell} ∪ {x^ell + eta x^((k-2)/2) Y} ∪ {x^j Y}.
pub fn defining_set_single(
    curve: &Curve,
    k: usize,
    tw: &SingleTwist,
) -> Result<FuncBasis, BasisError> {
    if k < 3 {
        return Err(BasisError::BadTwist("twists need k >= 3".to_string()));
    }
    if tw.eta.is_zero() {
        return Err(BasisError::BadTwist("eta must be nonzero".to_string()));
    }
    if tw.ell > max_ell(k) {
        return Err(BasisError::BadTwist(format!(
            "ell = {} out of range 0..={}",
            tw.ell,
            max_ell(k)
        )));
    }
    let mut funcs = Vec::with_capacity(k);
    if k % 2 == 1 {
        for i in 0..=(k - 1) / 2 {
            funcs.push(BasisFunc::plain(CurveFunc::x_power(curve, i)));
        }
        for j in 0..=(k - 3) / 2 {
            let mut func = CurveFunc::y_term(curve, j);
            if j == tw.ell {
                let hook = CurveFunc::x_power(curve, (k + 1) / 2).scale(tw.eta);
                func = func.add(&hook);
            }
            funcs.push(BasisFunc::plain(func));
        }
    } else {
        for i in 0..=k / 2 {
            let mut func = CurveFunc::x_power(curve, i);
            if i == tw.ell {
                let hook = CurveFunc::y_term(curve, (k - 2) / 2).scale(tw.eta);
                func = func.add(&hook);
            }
            funcs.push(BasisFunc::plain(func));
        }
        if k >= 4 {
            for j in 0..=(k - 4) / 2 {
                funcs.push(BasisFunc::plain(CurveFunc::y_term(curve, j)));
            }
        }
    }
    debug_assert_eq!(funcs.len(), k);
    Ok(FuncBasis {
        funcs,
        tag: SpaceTag::SingleTwist { k, ell: tw.ell },
    })
}

/// General multi-twist defining set. Hooks with k+t odd land on the x-block
/// (x^h + eta x^((k-3+t)/2) Y), hooks with k+t even on the Y-block
/// (x^h Y + eta x^((k+t)/2)). Hook indices must be distinct within each
/// parity class; duplicates across the two classes are legal but surfaced
/// as warnings. Empty twist data reduces to the plain L(kO) basis.
pub fn defining_set_general(
    curve: &Curve,
    k: usize,
    tw: &MultiTwist,
) -> Result<(FuncBasis, Vec<String>), BasisError> {
    if tw.t.len() != tw.h.len() || tw.t.len() != tw.eta.len() {
        return Err(BasisError::BadTwist(
            "t, h, eta must have equal lengths".to_string(),
        ));
    }
    if tw.t.is_empty() {
        let base = basis_lko(curve, k)?;
        return Ok((
            FuncBasis {
                funcs: base.funcs,
                tag: SpaceTag::MultiTwist { k },
            },
            Vec::new(),
        ));
    }
    if k < 3 {
        return Err(BasisError::BadTwist("twists need k >= 3".to_string()));
    }
    let mut seen_t = std::collections::HashSet::new();
    for &t in &tw.t {
        if t < 1 || t > k - 1 {
            return Err(BasisError::BadTwist(format!(
                "t = {} out of range 1..={}",
                t,
                k - 1
            )));
        }
        if !seen_t.insert(t) {
            return Err(BasisError::BadTwist("t values must be distinct".to_string()));
        }
    }
    // hooks by parity class
    let mut x_hooks: Vec<(usize, usize, Fq)> = Vec::new(); // (h, t, eta)
    let mut y_hooks: Vec<(usize, usize, Fq)> = Vec::new();
    for s in 0..tw.t.len() {
        if tw.eta[s].is_zero() {
            return Err(BasisError::BadTwist("eta must be nonzero".to_string()));
        }
        let (t, h) = (tw.t[s], tw.h[s]);
        if (k + t) % 2 == 1 {
            if h > k / 2 {
                return Err(BasisError::BadTwist(format!(
                    "hook index {} exceeds floor(k/2) = {}",
                    h,
                    k / 2
                )));
            }
            x_hooks.push((h, t, tw.eta[s]));
        } else {
            if k < 3 || h > (k - 3) / 2 {
                return Err(BasisError::BadTwist(format!(
                    "hook index {} exceeds floor((k-3)/2) = {}",
                    h,
                    (k.max(3) - 3) / 2
                )));
            }
            y_hooks.push((h, t, tw.eta[s]));
        }
    }
    for class in [&x_hooks, &y_hooks] {
        let mut seen = std::collections::HashSet::new();
        for (h, _, _) in class.iter() {
            if !seen.insert(*h) {
                return Err(BasisError::BadTwist(
                    "hook indices must be distinct within a parity class".to_string(),
                ));
            }
        }
    }
    let mut warnings = Vec::new();
    for (h, _, _) in &x_hooks {
        if y_hooks.iter().any(|(h2, _, _)| h2 == h) {
            warnings.push(format!(
                "hook index {} is used in both parity classes; distinctness \
                 is only enforced within each class",
                h
            ));
        }
    }
    let mut funcs = Vec::with_capacity(k);
    for i in 0..=k / 2 {
        let mut func = CurveFunc::x_power(curve, i);
        if let Some((_, t, eta)) = x_hooks.iter().find(|(h, _, _)| *h == i) {
            let hook = CurveFunc::y_term(curve, (k - 3 + t) / 2).scale(*eta);
            func = func.add(&hook);
        }
        funcs.push(BasisFunc::plain(func));
    }
    if k >= 3 {
        for j in 0..=(k - 3) / 2 {
            let mut func = CurveFunc::y_term(curve, j);
            if let Some((_, t, eta)) = y_hooks.iter().find(|(h, _, _)| *h == j) {
                let hook = CurveFunc::x_power(curve, (k + t) / 2).scale(*eta);
                func = func.add(&hook);
            }
            funcs.push(BasisFunc::plain(func));
        }
    }
    debug_assert_eq!(funcs.len(), k);
    Ok((
        FuncBasis {
            funcs,
            tag: SpaceTag::MultiTwist { k },
        },
        warnings,
    ))
}

/// Evaluation matrix: one row per basis function, one column per point of D
/// in D's order.
pub fn evaluate(curve: &Curve, basis: &FuncBasis, d: &EvalSet) -> Result<Matrix, BasisError> {
    let f = curve.field();
    let mut rows = Vec::with_capacity(basis.len());
    for bf in &basis.funcs {
        let mut row = Vec::with_capacity(d.len());
        for (x, y) in d.coords() {
            row.push(bf.eval(curve, x, y)?);
        }
        rows.push(row);
    }
    let _ = f;
    Ok(Matrix::from_rows(curve.field(), rows))
}
