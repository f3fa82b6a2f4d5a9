//! Elliptic curves in the three small-field defining forms, their rational
//! points, the group law, and the subset-sum counts over the point group
//! that drive minimum-distance classification.
//!
//! The three forms are
//!   type 1 (odd char):  y^2 = f(x), f square-free cubic,
//!   type 2 (char 2):    y^2 + y = f(x), f cubic,
//!   type 3 (char 2):    y^2 + y = x + 1/(ax+b), a != 0.
//!
//! Arithmetic runs on an internal long-Weierstrass model reached by an exact
//! change of variables (for type 3, Y = (ax+b)y clears the denominator and a
//! scaling makes the cubic monic), so one chord-tangent implementation
//! serves all three types.

use crate::gf::{Field, Fq, Poly};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// Type 1 needs odd characteristic, types 2 and 3 need characteristic 2.
    WrongCharacteristic,
    /// The cubic must have degree exactly 3.
    BadDegree,
    NotSquareFree,
    /// Type 3 requires a != 0.
    ZeroA,
    OffCurve,
    CapExceeded,
    Insufficient,
    DuplicatePoint,
    NotAffine,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveError::WrongCharacteristic => "curve type does not match field characteristic",
            CurveError::BadDegree => "defining cubic must have degree 3",
            CurveError::NotSquareFree => "defining cubic must be square-free",
            CurveError::ZeroA => "type-3 curve requires a != 0",
            CurveError::OffCurve => "point does not satisfy the curve equation",
            CurveError::CapExceeded => "enumeration cap exceeded",
            CurveError::Insufficient => "not enough usable points for the requested set",
            CurveError::DuplicatePoint => "evaluation points must be distinct",
            CurveError::NotAffine => "evaluation points must be affine",
        };
        write!(f, "{}", s)
    }
}

impl std::error::Error for CurveError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Type1,
    Type2,
    Type3,
}

#[derive(Clone)]
pub enum CurveEq {
    Type1 { f: Poly },
    Type2 { f: Poly },
    Type3 { a: Fq, b: Fq },
}

/// A rational point. `Branch` is the degree-one place a type-3 curve has
/// over the zero of ax+b: it belongs to the point group but has no (x, y)
/// coordinates because y has a pole there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(Fq, Fq),
    Branch,
}

impl Point {
    pub fn xy(&self) -> Option<(Fq, Fq)> {
        match self {
            Point::Affine(x, y) => Some((*x, *y)),
            _ => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// Long Weierstrass coefficients y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
#[derive(Clone, Copy)]
struct Model {
    a1: Fq,
    a2: Fq,
    a3: Fq,
    a4: Fq,
    a6: Fq,
}

struct CurveInner {
    field: Field,
    eq: CurveEq,
    model: Model,
    /// X = x_scale * x on the model.
    x_scale: Fq,
    /// Y = y_scale * cof(x) * y on the model, cof = ax+b for type 3, else 1.
    y_scale: Fq,
    points: OnceLock<Vec<Point>>,
    group: OnceLock<Result<GroupStructure, CurveError>>,
}

#[derive(Clone)]
pub struct Curve {
    inner: Arc<CurveInner>,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve({:?}, {})", self.kind(), self.equation_text())
    }
}

/// Default cap on exhaustive group computations.
pub const GROUP_CAP: u64 = 1 << 16;

/// Default cap on materialized subset-sum witnesses.
pub const WITNESS_CAP: usize = 10_000;

/// Node-visit cap for exhaustive subset enumeration.
const SUBSET_NODE_CAP: u64 = 20_000_000;

impl Curve {
    pub fn new(field: &Field, eq: CurveEq) -> Result<Curve, CurveError> {
        let p = field.characteristic();
        let (model, x_scale, y_scale) = match &eq {
            CurveEq::Type1 { f } => {
                if p == 2 {
                    return Err(CurveError::WrongCharacteristic);
                }
                if f.degree() != Some(3) {
                    return Err(CurveError::BadDegree);
                }
                if !f.is_squarefree() {
                    return Err(CurveError::NotSquareFree);
                }
                let c3 = f.coeff(3);
                let m = Model {
                    a1: field.zero(),
                    a2: f.coeff(2),
                    a3: field.zero(),
                    a4: field.mul(f.coeff(1), c3),
                    a6: field.mul(f.coeff(0), field.mul(c3, c3)),
                };
                (m, c3, c3)
            }
            CurveEq::Type2 { f } => {
                if p != 2 {
                    return Err(CurveError::WrongCharacteristic);
                }
                if f.degree() != Some(3) {
                    return Err(CurveError::BadDegree);
                }
                let c3 = f.coeff(3);
                let m = Model {
                    a1: field.zero(),
                    a2: f.coeff(2),
                    a3: c3,
                    a4: field.mul(f.coeff(1), c3),
                    a6: field.mul(f.coeff(0), field.mul(c3, c3)),
                };
                (m, c3, c3)
            }
            CurveEq::Type3 { a, b } => {
                if p != 2 {
                    return Err(CurveError::WrongCharacteristic);
                }
                if a.is_zero() {
                    return Err(CurveError::ZeroA);
                }
                // (ax+b)^2 (y^2 + y) = (ax+b)^2 x + (ax+b) with Y = (ax+b)y
                // gives Y^2 + (ax+b)Y = a^2 x^3 + (a + b^2) x + b, then the
                // scaling X = a^2 x, Y' = a^2 Y makes the cubic monic.
                let asq = field.mul(*a, *a);
                let m = Model {
                    a1: *a,
                    a2: field.zero(),
                    a3: field.mul(asq, *b),
                    a4: field.mul(asq, field.add(*a, field.mul(*b, *b))),
                    a6: field.mul(field.mul(asq, asq), *b),
                };
                (m, asq, asq)
            }
        };
        Ok(Curve {
            inner: Arc::new(CurveInner {
                field: field.clone(),
                eq,
                model,
                x_scale,
                y_scale,
                points: OnceLock::new(),
                group: OnceLock::new(),
            }),
        })
    }

    pub fn type1(field: &Field, f_coeffs: &[i64]) -> Result<Curve, CurveError> {
        Curve::new(
            field,
            CurveEq::Type1 {
                f: Poly::from_ints(field, f_coeffs),
            },
        )
    }

    pub fn type2(field: &Field, f_coeffs: &[i64]) -> Result<Curve, CurveError> {
        Curve::new(
            field,
            CurveEq::Type2 {
                f: Poly::from_ints(field, f_coeffs),
            },
        )
    }

    pub fn type3(field: &Field, a: Fq, b: Fq) -> Result<Curve, CurveError> {
        Curve::new(field, CurveEq::Type3 { a, b })
    }

    pub fn field(&self) -> &Field {
        &self.inner.field
    }

    pub fn eq(&self) -> &CurveEq {
        &self.inner.eq
    }

    pub fn kind(&self) -> CurveKind {
        match self.inner.eq {
            CurveEq::Type1 { .. } => CurveKind::Type1,
            CurveEq::Type2 { .. } => CurveKind::Type2,
            CurveEq::Type3 { .. } => CurveKind::Type3,
        }
    }

    pub fn equation_text(&self) -> String {
        let f = self.field();
        match &self.inner.eq {
            CurveEq::Type1 { f: c } => format!("y^2 = {}", c.render("x")),
            CurveEq::Type2 { f: c } => format!("y^2 + y = {}", c.render("x")),
            CurveEq::Type3 { a, b } => format!(
                "y^2 + y = x + 1/({}*x + {})",
                f.format_elem(*a),
                f.format_elem(*b)
            ),
        }
    }

    /// Type-3 curves only: the (a, b) pair of the denominator.
    pub fn ab(&self) -> Option<(Fq, Fq)> {
        match &self.inner.eq {
            CurveEq::Type3 { a, b } => Some((*a, *b)),
            _ => None,
        }
    }

    /// The cubic f for types 1 and 2.
    pub fn cubic(&self) -> Option<&Poly> {
        match &self.inner.eq {
            CurveEq::Type1 { f } | CurveEq::Type2 { f } => Some(f),
            _ => None,
        }
    }

    /// ax+b evaluated at x (type 3), or 1 for the other types.
    pub fn cofactor_at(&self, x: Fq) -> Fq {
        let f = self.field();
        match &self.inner.eq {
            CurveEq::Type3 { a, b } => f.add(f.mul(*a, x), *b),
            _ => f.one(),
        }
    }

    /// The reduction Y^2 = A(x) + B(x)·Y for the canonical generator
    /// Y = y (types 1, 2) or Y = (ax+b)y (type 3).
    pub fn y_square_reduction(&self) -> (Poly, Poly) {
        let f = self.field();
        match &self.inner.eq {
            CurveEq::Type1 { f: c } => (c.clone(), Poly::zero(f)),
            CurveEq::Type2 { f: c } => (c.clone(), Poly::constant(f, f.one())),
            CurveEq::Type3 { a, b } => {
                let lin = Poly::new(f, vec![*b, *a]);
                let x = Poly::x_power(f, 1);
                // A = x(ax+b)^2 + (ax+b), B = ax+b
                let a_poly = x.mul(&lin).mul(&lin).add(&lin);
                (a_poly, lin)
            }
        }
    }

    /// Whether the point satisfies the defining equation. `Branch` is
    /// on-curve exactly for type 3; `Infinity` always is.
    pub fn contains(&self, pt: &Point) -> bool {
        let f = self.field();
        match pt {
            Point::Infinity => true,
            Point::Branch => self.kind() == CurveKind::Type3,
            Point::Affine(x, y) => match &self.inner.eq {
                CurveEq::Type1 { f: c } => f.mul(*y, *y) == c.eval(*x),
                CurveEq::Type2 { f: c } => f.add(f.mul(*y, *y), *y) == c.eval(*x),
                CurveEq::Type3 { a, b } => {
                    let lin = f.add(f.mul(*a, *x), *b);
                    if lin.is_zero() {
                        return false;
                    }
                    let rhs = f.add(*x, f.inv(lin).unwrap());
                    f.add(f.mul(*y, *y), *y) == rhs
                }
            },
        }
    }

    fn to_model(&self, pt: &Point) -> Option<(Fq, Fq)> {
        let f = self.field();
        match pt {
            Point::Infinity => None,
            Point::Branch => {
                let (a, b) = self.ab().expect("branch point only exists on type 3");
                Some((f.mul(a, b), f.zero()))
            }
            Point::Affine(x, y) => {
                let big_x = f.mul(self.inner.x_scale, *x);
                let big_y = f.mul(self.inner.y_scale, f.mul(self.cofactor_at(*x), *y));
                Some((big_x, big_y))
            }
        }
    }

    fn from_model(&self, m: Option<(Fq, Fq)>) -> Point {
        let f = self.field();
        let (big_x, big_y) = match m {
            None => return Point::Infinity,
            Some(v) => v,
        };
        if let Some((a, b)) = self.ab() {
            if big_x == f.mul(a, b) {
                return Point::Branch;
            }
        }
        let x = f.div(big_x, self.inner.x_scale).unwrap();
        let y = f
            .div(
                f.div(big_y, self.inner.y_scale).unwrap(),
                self.cofactor_at(x),
            )
            .unwrap();
        Point::Affine(x, y)
    }

    fn model_neg(&self, m: (Fq, Fq)) -> (Fq, Fq) {
        let f = self.field();
        let Model { a1, a3, .. } = self.inner.model;
        (m.0, f.sub(f.sub(f.neg(m.1), f.mul(a1, m.0)), a3))
    }

    fn model_add(&self, p: Option<(Fq, Fq)>, q: Option<(Fq, Fq)>) -> Option<(Fq, Fq)> {
        let f = self.field();
        let Model { a1, a2, a3, a4, a6 } = self.inner.model;
        let (x1, y1) = match p {
            None => return q,
            Some(v) => v,
        };
        let (x2, y2) = match q {
            None => return p,
            Some(v) => v,
        };
        if x1 == x2 && y2 == self.model_neg((x1, y1)).1 {
            return None;
        }
        let (lambda, nu) = if x1 != x2 {
            let d = f.inv(f.sub(x2, x1)).unwrap();
            (
                f.mul(f.sub(y2, y1), d),
                f.mul(f.sub(f.mul(y1, x2), f.mul(y2, x1)), d),
            )
        } else {
            let den = f.add(f.add(f.mul(f.from_int(2), y1), f.mul(a1, x1)), a3);
            let d = f.inv(den).unwrap();
            let x1sq = f.mul(x1, x1);
            let num_l = f.sub(
                f.add(
                    f.add(
                        f.mul(f.from_int(3), x1sq),
                        f.mul(f.from_int(2), f.mul(a2, x1)),
                    ),
                    a4,
                ),
                f.mul(a1, y1),
            );
            let num_n = f.sub(
                f.add(
                    f.add(f.neg(f.mul(x1sq, x1)), f.mul(a4, x1)),
                    f.mul(f.from_int(2), a6),
                ),
                f.mul(a3, y1),
            );
            (f.mul(num_l, d), f.mul(num_n, d))
        };
        let x3 = f.sub(
            f.sub(
                f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2),
                x1,
            ),
            x2,
        );
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
        Some((x3, y3))
    }

    /// Chord-tangent group law with identity O.
    pub fn add(&self, p: &Point, q: &Point) -> Result<Point, CurveError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(CurveError::OffCurve);
        }
        Ok(self.from_model(self.model_add(self.to_model(p), self.to_model(q))))
    }

    pub fn neg(&self, p: &Point) -> Result<Point, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::OffCurve);
        }
        Ok(match self.to_model(p) {
            None => Point::Infinity,
            Some(m) => self.from_model(Some(self.model_neg(m))),
        })
    }

    pub fn scalar_mul(&self, n: i64, p: &Point) -> Result<Point, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::OffCurve);
        }
        let mut base = if n < 0 { self.neg(p)? } else { *p };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            base = self.add(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn point_order(&self, p: &Point) -> Result<u64, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::OffCurve);
        }
        let mut acc = *p;
        let mut n = 1u64;
        while !acc.is_infinity() {
            acc = self.add(&acc, p)?;
            n += 1;
            if n > GROUP_CAP {
                return Err(CurveError::CapExceeded);
            }
        }
        Ok(n)
    }

    /// All rational points: O first, affine points with x ascending in field
    /// enumeration order then y ascending, and for type 3 the branch place
    /// last.
    pub fn points(&self) -> &[Point] {
        self.inner.points.get_or_init(|| {
            let f = self.field();
            let mut out = vec![Point::Infinity];
            for x in f.elements() {
                let mut ys = self.ys_above(x);
                ys.sort_by_key(|y| y.encoding());
                for y in ys {
                    out.push(Point::Affine(x, y));
                }
            }
            if self.kind() == CurveKind::Type3 {
                out.push(Point::Branch);
            }
            out
        })
    }

    /// The y-coordinates of affine points above a given x.
    pub fn ys_above(&self, x: Fq) -> Vec<Fq> {
        let f = self.field();
        match &self.inner.eq {
            CurveEq::Type1 { f: c } => {
                let rhs = c.eval(x);
                if rhs.is_zero() {
                    vec![f.zero()]
                } else {
                    match f.sqrt(rhs) {
                        None => vec![],
                        Some(r) => vec![r, f.neg(r)],
                    }
                }
            }
            CurveEq::Type2 { .. } | CurveEq::Type3 { .. } => {
                if let CurveEq::Type3 { a, b } = &self.inner.eq {
                    if f.add(f.mul(*a, x), *b).is_zero() {
                        return vec![];
                    }
                }
                f.elements()
                    .filter(|&y| self.contains(&Point::Affine(x, y)))
                    .collect()
            }
        }
    }

    /// x-values excluded from evaluation sets: zeros of f for type 1 (the
    /// place above them is ramified), the zero of ax+b for type 3.
    pub fn is_ramified_x(&self, x: Fq) -> bool {
        match &self.inner.eq {
            CurveEq::Type1 { f: c } => c.eval(x).is_zero(),
            CurveEq::Type2 { .. } => false,
            CurveEq::Type3 { .. } => self.cofactor_at(x).is_zero(),
        }
    }

    /// x splits completely: exactly two rational points above it and the
    /// place is unramified.
    pub fn is_split_x(&self, x: Fq) -> bool {
        !self.is_ramified_x(x) && self.ys_above(x).len() == 2
    }

    /// Affine points in canonical preference order: split pairs whose two
    /// y-coordinates are both nonzero first, then split pairs containing a
    /// zero y, then leftover affine points, then the branch place. Within a
    /// class x ascends in field enumeration order and y ascends within a
    /// pair. This order drives both evaluation-set selection and group
    /// generator choice, so tables reproduce deterministically.
    pub fn preferred_points(&self) -> Vec<Point> {
        let f = self.field();
        let mut class_a = Vec::new();
        let mut class_b = Vec::new();
        let mut rest = Vec::new();
        for x in f.elements() {
            let mut ys = self.ys_above(x);
            ys.sort_by_key(|y| y.encoding());
            if ys.len() == 2 && !self.is_ramified_x(x) {
                let target = if ys.iter().all(|y| !y.is_zero()) {
                    &mut class_a
                } else {
                    &mut class_b
                };
                for y in ys {
                    target.push(Point::Affine(x, y));
                }
            } else {
                for y in ys {
                    rest.push(Point::Affine(x, y));
                }
            }
        }
        let mut out = class_a;
        out.append(&mut class_b);
        out.append(&mut rest);
        if self.kind() == CurveKind::Type3 {
            out.push(Point::Branch);
        }
        out
    }

    /// Number of rational points, branch place and infinity included.
    pub fn point_count(&self) -> u64 {
        self.points().len() as u64
    }

    /// |#E - (q+1)| <= 2 sqrt(q), checked exactly.
    pub fn satisfies_hasse(&self) -> bool {
        let n = self.point_count() as i64;
        let q = self.field().order() as i64;
        (n - q - 1).pow(2) <= 4 * q
    }

    pub fn group_structure(&self) -> Result<&GroupStructure, CurveError> {
        let res = self.inner.group.get_or_init(|| self.compute_group());
        match res {
            Ok(g) => Ok(g),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_group(&self) -> Result<GroupStructure, CurveError> {
        let n = self.point_count();
        if n > GROUP_CAP {
            return Err(CurveError::CapExceeded);
        }
        let pref = self.preferred_points();
        let mut orders: Vec<(Point, u64)> = Vec::with_capacity(pref.len());
        let mut n2 = 1u64;
        for p in &pref {
            let o = self.point_order(p)?;
            n2 = n2.max(o);
            orders.push((*p, o));
        }
        let n1 = n / n2;
        debug_assert_eq!(n1 * n2, n);
        debug_assert!(n1 == 1 || n2 % n1 == 0);
        let g_max = orders
            .iter()
            .find(|(_, o)| *o == n2)
            .map(|(p, _)| *p)
            .unwrap_or(Point::Infinity);
        if n1 == 1 {
            let mut dlog = HashMap::new();
            let mut acc = Point::Infinity;
            for j in 0..n2 {
                dlog.insert(acc, (0u64, j));
                acc = self.add(&acc, &g_max)?;
            }
            return Ok(GroupStructure {
                n1,
                n2,
                g1: None,
                g2: g_max,
                dlog,
            });
        }
        // rank 2: hunt for a complement of order n1 in preference order
        for (cand, o) in &orders {
            if *o != n1 {
                continue;
            }
            if let Some(dlog) = self.try_pair(g_max, *cand, n1, n2)? {
                // when n1 == n2 the max-order generator found first sits in
                // the first factor, matching hand-computed tables
                let (g1, g2, remap) = if n1 == n2 {
                    (g_max, *cand, true)
                } else {
                    (*cand, g_max, false)
                };
                let dlog = if remap {
                    dlog.into_iter().map(|(p, (i, j))| (p, (j, i))).collect()
                } else {
                    dlog
                };
                return Ok(GroupStructure {
                    n1,
                    n2,
                    g1: Some(g1),
                    g2,
                    dlog,
                });
            }
        }
        unreachable!("abelian group of rank 2 always has a splitting pair");
    }

    /// dlog as (i, j) with P = [i]cand + [j]g_max; None if not a bijection.
    fn try_pair(
        &self,
        g_max: Point,
        cand: Point,
        n1: u64,
        n2: u64,
    ) -> Result<Option<HashMap<Point, (u64, u64)>>, CurveError> {
        let mut dlog = HashMap::new();
        let mut ic = Point::Infinity;
        for i in 0..n1 {
            let mut acc = ic;
            for j in 0..n2 {
                if dlog.insert(acc, (i, j)).is_some() {
                    return Ok(None);
                }
                acc = self.add(&acc, &g_max)?;
            }
            ic = self.add(&ic, &cand)?;
        }
        Ok(Some(dlog))
    }

    /// Exhaustive N(k, b, D): the number of k-element subsets of D summing
    /// to b in the point group, with the subsets themselves as witnesses
    /// (index lists into D) when the count stays within `witness_cap`.
    pub fn subset_sum_count(
        &self,
        k: usize,
        b: &Point,
        points: &[Point],
        witness_cap: usize,
    ) -> Result<SubsetSumResult, CurveError> {
        if !self.contains(b) {
            return Err(CurveError::OffCurve);
        }
        if k > points.len() {
            return Err(CurveError::Insufficient);
        }
        let mut state = SubsetState {
            count: 0,
            witnesses: Vec::new(),
            stack: Vec::with_capacity(k),
            visited: 0,
            witness_cap,
        };
        self.subset_dfs(points, k, b, 0, Point::Infinity, &mut state)?;
        let witnesses = if state.count as usize <= witness_cap {
            Some(state.witnesses)
        } else {
            None
        };
        Ok(SubsetSumResult {
            count: state.count,
            witnesses,
        })
    }

    fn subset_dfs(
        &self,
        points: &[Point],
        k: usize,
        target: &Point,
        start: usize,
        partial: Point,
        st: &mut SubsetState,
    ) -> Result<(), CurveError> {
        st.visited += 1;
        if st.visited > SUBSET_NODE_CAP {
            return Err(CurveError::CapExceeded);
        }
        if st.stack.len() == k {
            if partial == *target {
                st.count += 1;
                if st.witnesses.len() <= st.witness_cap {
                    st.witnesses.push(st.stack.clone());
                }
            }
            return Ok(());
        }
        let need = k - st.stack.len();
        let mut i = start;
        while i + need <= points.len() {
            let next = self.add(&partial, &points[i])?;
            st.stack.push(i);
            self.subset_dfs(points, k, target, i + 1, next, st)?;
            st.stack.pop();
            i += 1;
        }
        Ok(())
    }

    /// Deterministic selection of an even split-complete evaluation set:
    /// both points above each chosen x, ramified x excluded, candidate
    /// x-values in preference order.
    pub fn select_eval_set(&self, want_n: usize) -> Result<EvalSet, CurveError> {
        if want_n == 0 || want_n % 2 != 0 {
            return Err(CurveError::Insufficient);
        }
        let pref = self.preferred_points();
        let mut pts = Vec::with_capacity(want_n);
        for p in pref {
            if let Point::Affine(x, _) = p {
                if self.is_split_x(x) {
                    pts.push(p);
                    if pts.len() == want_n {
                        break;
                    }
                }
            }
        }
        if pts.len() < want_n {
            return Err(CurveError::Insufficient);
        }
        EvalSet::from_points(self, &pts)
    }
}

struct SubsetState {
    count: u64,
    witnesses: Vec<Vec<usize>>,
    stack: Vec<usize>,
    visited: u64,
    witness_cap: usize,
}

#[derive(Debug, Clone)]
pub struct SubsetSumResult {
    pub count: u64,
    /// Index lists into the supplied point slice; `None` when the count
    /// exceeded the witness cap.
    pub witnesses: Option<Vec<Vec<usize>>>,
}

/// Invariant factors and a full discrete-log table for the point group,
/// E(F_q) ~ Z/n1 x Z/n2 with n1 | n2.
#[derive(Debug, Clone)]
pub struct GroupStructure {
    pub n1: u64,
    pub n2: u64,
    /// Generator of the first factor; absent when the group is cyclic.
    pub g1: Option<Point>,
    pub g2: Point,
    dlog: HashMap<Point, (u64, u64)>,
}

impl GroupStructure {
    pub fn dlog(&self, p: &Point) -> Option<(u64, u64)> {
        self.dlog.get(p).copied()
    }

    pub fn order(&self) -> u64 {
        self.n1 * self.n2
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Point, &(u64, u64))> {
        self.dlog.iter()
    }

    /// Group addition in dlog coordinates.
    pub fn add_dlog(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        ((a.0 + b.0) % self.n1.max(1), (a.1 + b.1) % self.n2)
    }
}

/// An ordered list of affine evaluation points, the divisor D.
#[derive(Debug, Clone)]
pub struct EvalSet {
    points: Vec<Point>,
    xs: Vec<Fq>,
    even_support: bool,
    split_complete: bool,
}

impl EvalSet {
    /// Validates distinctness and affineness; derives the split-complete
    /// and even-support flags.
    pub fn from_points(curve: &Curve, pts: &[Point]) -> Result<EvalSet, CurveError> {
        let mut seen = std::collections::HashSet::new();
        let mut xs: Vec<Fq> = Vec::new();
        let mut by_x: HashMap<Fq, usize> = HashMap::new();
        for p in pts {
            let (x, _) = p.xy().ok_or(CurveError::NotAffine)?;
            if !curve.contains(p) {
                return Err(CurveError::OffCurve);
            }
            if !seen.insert(*p) {
                return Err(CurveError::DuplicatePoint);
            }
            if !xs.contains(&x) {
                xs.push(x);
            }
            *by_x.entry(x).or_insert(0) += 1;
        }
        let split_complete = !pts.is_empty()
            && xs.iter().all(|&x| curve.is_split_x(x) && by_x[&x] == 2);
        Ok(EvalSet {
            points: pts.to_vec(),
            xs,
            even_support: !pts.is_empty() && pts.len() % 2 == 0,
            split_complete,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn coords(&self) -> Vec<(Fq, Fq)> {
        self.points.iter().map(|p| p.xy().unwrap()).collect()
    }

    /// Distinct x-values in first-occurrence order.
    pub fn xs(&self) -> &[Fq] {
        &self.xs
    }

    pub fn even_support(&self) -> bool {
        self.even_support
    }

    pub fn split_complete(&self) -> bool {
        self.split_complete
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

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

    #[test]
    fn enumeration_gf5() {
        let c = gf5_curve();
        let f = c.field().clone();
        let pts = c.points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Point::Infinity);
        let expect: Vec<Point> = [(0, 1), (0, 4), (2, 1), (2, 4), (3, 1), (3, 4), (4, 2), (4, 3)]
            .iter()
            .map(|&(x, y)| Point::Affine(f.elem(x), f.elem(y)))
            .collect();
        assert_eq!(&pts[1..], expect.as_slice());
    }

    #[test]
    fn enumeration_gf16() {
        let c = gf16_curve();
        let f = c.field().clone();
        assert_eq!(c.points().len(), 9);
        let y = f.parse_elem("w^2+w").unwrap();
        assert!(c.points().contains(&Point::Affine(f.zero(), y)));
    }

    #[test]
    fn enumeration_gf4_type3() {
        let c = gf4_type3();
        let f = c.field().clone();
        let a = f.gen();
        let a1 = f.add(a, f.one());
        for (x, y) in [(a, f.zero()), (a, f.one()), (f.zero(), a), (f.zero(), a1)] {
            assert!(c.contains(&Point::Affine(x, y)));
            assert!(c.points().contains(&Point::Affine(x, y)));
        }
        // 6 affine + branch + infinity
        assert_eq!(c.points().len(), 8);
        assert!(c.points().contains(&Point::Branch));
    }

    #[test]
    fn curve_constructor_rejects() {
        let f5 = Field::new(5, 1, None).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        assert!(matches!(
            Curve::type2(&f5, &[1, 0, 0, 1]),
            Err(CurveError::WrongCharacteristic)
        ));
        assert!(matches!(
            Curve::type3(&f4, f4.zero(), f4.one()),
            Err(CurveError::ZeroA)
        ));
        // y^2 = (x+1)^2 (x+2): x^3 + 4x^2 + 5x + 2 is not square-free
        assert!(matches!(
            Curve::type1(&f5, &[2, 5, 4, 1]),
            Err(CurveError::NotSquareFree)
        ));
        assert!(matches!(
            Curve::type1(&f5, &[1, 1, 1]),
            Err(CurveError::BadDegree)
        ));
    }

    #[test]
    fn add_identities_and_known_sums() {
        // [2]P1 = P7 on the GF(5) curve
        let c = gf5_curve();
        let f = c.field().clone();
        let p1 = Point::Affine(f.elem(0), f.elem(1));
        let p7 = Point::Affine(f.elem(4), f.elem(2));
        assert_eq!(c.add(&p1, &Point::Infinity).unwrap(), p1);
        assert_eq!(c.scalar_mul(2, &p1).unwrap(), p7);
        // (1,a) + (a,a) = (a+1, a+1) on y^2+y = x^3 over GF(4)
        let c4 = gf4_type2();
        let f4 = c4.field().clone();
        let a = f4.gen();
        let s = c4
            .add(&Point::Affine(f4.one(), a), &Point::Affine(a, a))
            .unwrap();
        let a1 = f4.add(a, f4.one());
        assert_eq!(s, Point::Affine(a1, a1));
        // off-curve rejected
        assert!(matches!(
            c.add(&Point::Affine(f.elem(1), f.elem(1)), &p1),
            Err(CurveError::OffCurve)
        ));
    }

    #[test]
    fn group_law_properties_exhaustive() {
        for c in [gf5_curve(), gf4_type2(), gf4_type3(), gf16_curve()] {
            let pts = c.points().to_vec();
            assert!(c.satisfies_hasse());
            assert!(pts.len() <= 50);
            for p in &pts {
                // inverse of an affine point keeps its x
                let n = c.neg(p).unwrap();
                if let (Some((px, _)), Some((nx, _))) = (p.xy(), n.xy()) {
                    assert_eq!(px, nx);
                }
                assert!(c.add(p, &n).unwrap().is_infinity());
                for q in &pts {
                    let pq = c.add(p, q).unwrap();
                    assert_eq!(pq, c.add(q, p).unwrap());
                    assert!(c.contains(&pq));
                    for r in &pts {
                        let left = c.add(&pq, r).unwrap();
                        let right = c.add(p, &c.add(q, r).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn group_structure_gf4() {
        let c = gf4_type2();
        let f = c.field().clone();
        let g = c.group_structure().unwrap();
        assert_eq!((g.n1, g.n2), (3, 3));
        let a = f.gen();
        let a1 = f.add(a, f.one());
        let p1 = Point::Affine(f.one(), a);
        let p3 = Point::Affine(a, a);
        assert_eq!(g.g1, Some(p1));
        assert_eq!(g.g2, p3);
        // the hand-computed table: P6=(a+1,a+1)=(1,1), P7=(0,1)=(1,2),
        // P2=(1,a+1)=(2,0), P8=(0,0)=(2,1), P5=(a+1,a)=(2,2), P4=(a,a+1)=(0,2)
        let expect = [
            (Point::Infinity, (0, 0)),
            (p1, (1, 0)),
            (p3, (0, 1)),
            (Point::Affine(a1, a1), (1, 1)),
            (Point::Affine(f.zero(), f.one()), (1, 2)),
            (Point::Affine(f.one(), a1), (2, 0)),
            (Point::Affine(f.zero(), f.zero()), (2, 1)),
            (Point::Affine(a1, a), (2, 2)),
            (Point::Affine(a, a1), (0, 2)),
        ];
        for (p, ij) in expect {
            assert_eq!(g.dlog(&p), Some(ij), "dlog mismatch at {:?}", p);
        }
    }

    #[test]
    fn group_structure_gf5_cyclic() {
        let c = gf5_curve();
        let f = c.field().clone();
        let g = c.group_structure().unwrap();
        assert_eq!((g.n1, g.n2), (1, 9));
        assert_eq!(g.g2, Point::Affine(f.elem(0), f.elem(1)));
        // P7 = [2]P1, P3 = [3]P1 per the cyclic table
        assert_eq!(g.dlog(&Point::Affine(f.elem(4), f.elem(2))), Some((0, 2)));
        assert_eq!(g.dlog(&Point::Affine(f.elem(2), f.elem(1))), Some((0, 3)));
    }

    #[test]
    fn dlog_is_isomorphism() {
        for c in [gf5_curve(), gf4_type2(), gf4_type3(), gf16_curve()] {
            let g = c.group_structure().unwrap();
            assert_eq!(g.order(), c.point_count());
            let pts = c.points().to_vec();
            let mut seen = std::collections::HashSet::new();
            for p in &pts {
                let d = g.dlog(p).expect("every point in table");
                assert!(seen.insert(d));
            }
            for p in &pts {
                for q in &pts {
                    let sum = c.add(p, q).unwrap();
                    let want = g.add_dlog(g.dlog(p).unwrap(), g.dlog(q).unwrap());
                    assert_eq!(g.dlog(&sum), Some(want));
                }
            }
        }
    }

    #[test]
    fn subset_sums_match_tables() {
        // GF(4), D = points over x in {1, a, a+1}: N(4,O,D)=3, N(3,O,D)=2
        let c = gf4_type2();
        let d = c.select_eval_set(6).unwrap();
        let r4 = c
            .subset_sum_count(4, &Point::Infinity, d.points(), WITNESS_CAP)
            .unwrap();
        assert_eq!(r4.count, 3);
        let w4 = r4.witnesses.unwrap();
        assert_eq!(
            w4,
            vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![2, 3, 4, 5]]
        );
        let r3 = c
            .subset_sum_count(3, &Point::Infinity, d.points(), WITNESS_CAP)
            .unwrap();
        assert_eq!(r3.count, 2);
        assert_eq!(r3.witnesses.unwrap(), vec![vec![0, 2, 4], vec![1, 3, 5]]);

        // GF(5), all 8 points: N(4, O, D) = 8
        let c5 = gf5_curve();
        let d5 = c5.select_eval_set(8).unwrap();
        let r = c5
            .subset_sum_count(4, &Point::Infinity, d5.points(), WITNESS_CAP)
            .unwrap();
        assert_eq!(r.count, 8);
    }

    #[test]
    fn subset_sum_dlog_oracle() {
        // independent counter in dlog space must agree
        for c in [gf5_curve(), gf4_type2(), gf4_type3()] {
            let g = c.group_structure().unwrap();
            let pts: Vec<Point> = c
                .points()
                .iter()
                .copied()
                .filter(|p| !p.is_infinity())
                .collect();
            for k in 1..=3.min(pts.len()) {
                for b in c.points().iter().take(4) {
                    let fast = c.subset_sum_count(k, b, &pts, WITNESS_CAP).unwrap();
                    let target = g.dlog(b).unwrap();
                    let logs: Vec<(u64, u64)> = pts.iter().map(|p| g.dlog(p).unwrap()).collect();
                    let slow = count_dlog_subsets(&logs, g, k, 0, (0, 0), target);
                    assert_eq!(fast.count, slow, "k={} b={:?}", k, b);
                }
            }
        }
    }

    fn count_dlog_subsets(
        logs: &[(u64, u64)],
        g: &GroupStructure,
        k: usize,
        start: usize,
        acc: (u64, u64),
        target: (u64, u64),
    ) -> u64 {
        if k == 0 {
            return (acc == target) as u64;
        }
        let mut total = 0;
        for i in start..logs.len() {
            total += count_dlog_subsets(logs, g, k - 1, i + 1, g.add_dlog(acc, logs[i]), target);
        }
        total
    }

    #[test]
    fn eval_set_selection() {
        // GF(5): all four x-values, hand-checked point order
        let c = gf5_curve();
        let f = c.field().clone();
        let d = c.select_eval_set(8).unwrap();
        let xs: Vec<u32> = d.xs().iter().map(|x| x.encoding()).collect();
        assert_eq!(xs, vec![0, 2, 3, 4]);
        assert!(d.split_complete() && d.even_support());
        assert_eq!(d.points()[0], Point::Affine(f.elem(0), f.elem(1)));

        // GF(4) type 2, want 6: skips x = 0 whose pair contains y = 0
        let c4 = gf4_type2();
        let f4 = c4.field().clone();
        let d4 = c4.select_eval_set(6).unwrap();
        let xs4: Vec<Fq> = d4.xs().to_vec();
        assert_eq!(xs4, vec![f4.one(), f4.gen(), f4.add(f4.gen(), f4.one())]);

        // odd request refused
        assert!(matches!(c.select_eval_set(5), Err(CurveError::Insufficient)));
        // too large refused
        assert!(matches!(
            c.select_eval_set(10),
            Err(CurveError::Insufficient)
        ));
    }

    #[test]
    fn eval_set_validation() {
        let c = gf5_curve();
        let f = c.field().clone();
        let p = Point::Affine(f.elem(0), f.elem(1));
        assert!(matches!(
            EvalSet::from_points(&c, &[p, p]),
            Err(CurveError::DuplicatePoint)
        ));
        assert!(matches!(
            EvalSet::from_points(&c, &[Point::Infinity]),
            Err(CurveError::NotAffine)
        ));
        // a single point of a split pair is fine but not split-complete
        let d = EvalSet::from_points(&c, &[p]).unwrap();
        assert!(!d.split_complete());
        assert!(!d.even_support());
    }
}
