//! The canonical differential dx/t for t = prod_{a in T} (x - a), its
//! divisor classification by curve type, and the residue vector gamma that
//! scales every parity-check construction.
//!
//! At an evaluation point with x-value a_i the uniformizer has a simple
//! zero, so the residue is the closed form prod_{j != i} (a_i - a_j)^{-1};
//! both points of a split pair share it.

use crate::curve::{Curve, CurveKind, EvalSet};
use crate::gf::Fq;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffError {
    /// Residues are only defined on split-complete evaluation sets.
    NotSplitComplete,
}

impl fmt::Display for DiffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffError::NotSplitComplete => {
                write!(f, "residue vector needs a split-complete evaluation set")
            }
        }
    }
}

impl std::error::Error for DiffError {}

/// Residues of dx/t along D, aligned with D's point order.
#[derive(Debug, Clone)]
pub struct ResidueVector {
    gammas: Vec<Fq>,
    xs: Vec<Fq>,
    kind: CurveKind,
}

impl ResidueVector {
    /// One residue per evaluation point, in D's order; all nonzero, and
    /// points sharing an x share the value.
    pub fn gammas(&self) -> &[Fq] {
        &self.gammas
    }

    /// The distinct x-values of the uniformizer.
    pub fn xs(&self) -> &[Fq] {
        &self.xs
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Residue at the distinct-x index (the per-place value).
    pub fn gamma_of_x(&self, curve: &Curve, x: Fq) -> Option<Fq> {
        let f = curve.field();
        let mut acc = f.one();
        if !self.xs.contains(&x) {
            return None;
        }
        for &other in &self.xs {
            if other != x {
                acc = f.mul(acc, f.sub(x, other));
            }
        }
        Some(f.inv(acc).unwrap())
    }
}

/// gamma_i = prod over the other x-values of (x_i - x_j)^{-1}.
pub fn residues(curve: &Curve, d: &EvalSet) -> Result<ResidueVector, DiffError> {
    if !d.split_complete() {
        return Err(DiffError::NotSplitComplete);
    }
    let f = curve.field();
    let xs = d.xs().to_vec();
    let mut per_x = std::collections::HashMap::new();
    for &x in &xs {
        let mut acc = f.one();
        for &other in &xs {
            if other != x {
                acc = f.mul(acc, f.sub(x, other));
            }
        }
        per_x.insert(x, f.inv(acc).unwrap());
    }
    let gammas = d
        .coords()
        .iter()
        .map(|&(x, _)| per_x[&x])
        .collect();
    Ok(ResidueVector {
        gammas,
        xs,
        kind: curve.kind(),
    })
}

/// The divisor of dx by curve type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DxClass {
    /// (dx) = (y): first type.
    YDivisor,
    /// (dx) = 0: second type.
    Zero,
    /// (dx) = (ax+b): third type.
    LinearDivisor,
}

/// Classification of (dx) and the induced dual space D - kO + (dx/t).
#[derive(Debug, Clone)]
pub struct CanonicalDivisorInfo {
    pub dx: DxClass,
    /// Human-readable tag of the dual Riemann-Roch space.
    pub dual_space: String,
}

pub fn canonical_info(curve: &Curve) -> CanonicalDivisorInfo {
    match curve.kind() {
        CurveKind::Type1 => CanonicalDivisorInfo {
            dx: DxClass::YDivisor,
            dual_space: "L((y) + (n-k)O)".to_string(),
        },
        CurveKind::Type2 => CanonicalDivisorInfo {
            dx: DxClass::Zero,
            dual_space: "L((n-k)O)".to_string(),
        },
        CurveKind::Type3 => CanonicalDivisorInfo {
            dx: DxClass::LinearDivisor,
            dual_space: "L((ax+b) + (n-k)O)".to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::gf::Field;
    use crate::rrspace;

    fn gf5_curve() -> Curve {
        let f5 = Field::new(5, 1, None).unwrap();
        Curve::type1(&f5, &[1, 1, 0, 1]).unwrap()
    }

    fn gf16_curve() -> Curve {
        let f16 = Field::new(2, 4, None).unwrap();
        Curve::type2(&f16, &[1, 0, 0, 1]).unwrap()
    }

    fn gf4_type3() -> Curve {
        let f4 = Field::new(2, 2, None).unwrap();
        Curve::type3(&f4, f4.one(), f4.one()).unwrap()
    }

    #[test]
    fn residues_gf5() {
        // T = {0, 2, 3, 4} gives gamma = (1,1,4,4,3,3,2,2)
        let c = gf5_curve();
        let d = c.select_eval_set(8).unwrap();
        let rv = residues(&c, &d).unwrap();
        let vals: Vec<u32> = rv.gammas().iter().map(|g| g.encoding()).collect();
        assert_eq!(vals, vec![1, 1, 4, 4, 3, 3, 2, 2]);
    }

    #[test]
    fn residues_gf16_all_one() {
        let c = gf16_curve();
        let f = c.field().clone();
        let d = c.select_eval_set(8).unwrap();
        let rv = residues(&c, &d).unwrap();
        assert!(rv.gammas().iter().all(|&g| g == f.one()));
    }

    #[test]
    fn residues_gf4_type3() {
        // pair symmetry plus the duality-consistent values: the residue at
        // x = a is 1/a = a+1, at x = a+1 is a, at x = 0 is 1
        let c = gf4_type3();
        let f = c.field().clone();
        let a = f.gen();
        let a1 = f.add(a, f.one());
        let d = c.select_eval_set(6).unwrap();
        // selection order: x = 0 pair first (both y nonzero), then a, a+1
        let xs: Vec<Fq> = d.xs().to_vec();
        assert_eq!(xs, vec![f.zero(), a, a1]);
        let rv = residues(&c, &d).unwrap();
        assert_eq!(rv.gamma_of_x(&c, f.zero()), Some(f.one()));
        assert_eq!(rv.gamma_of_x(&c, a), Some(a1));
        assert_eq!(rv.gamma_of_x(&c, a1), Some(a));
        // gamma depends only on x(P)
        for (i, (x, _)) in d.coords().iter().enumerate() {
            assert_eq!(rv.gammas()[i], rv.gamma_of_x(&c, *x).unwrap());
        }
        // every gamma nonzero
        assert!(rv.gammas().iter().all(|g| !g.is_zero()));
    }

    #[test]
    fn split_required() {
        let c = gf5_curve();
        let f = c.field().clone();
        let lone = crate::curve::EvalSet::from_points(
            &c,
            &[crate::curve::Point::Affine(f.elem(0), f.elem(1))],
        )
        .unwrap();
        assert!(matches!(
            residues(&c, &lone),
            Err(DiffError::NotSplitComplete)
        ));
    }

    #[test]
    fn partial_fraction_identity() {
        // sum over distinct x of gamma(x) * x^e = 0 for 0 <= e <= |T|-2
        for (c, n) in [
            (gf5_curve(), 8usize),
            (gf16_curve(), 8),
            (gf4_type3(), 6),
        ] {
            let f = c.field().clone();
            let d = c.select_eval_set(n).unwrap();
            let rv = residues(&c, &d).unwrap();
            let t = rv.xs().len();
            for e in 0..t - 1 {
                let mut acc = f.zero();
                for &x in rv.xs() {
                    let g = rv.gamma_of_x(&c, x).unwrap();
                    acc = f.add(acc, f.mul(g, f.pow(x, e as u64)));
                }
                assert!(acc.is_zero(), "e = {}", e);
            }
        }
    }

    #[test]
    fn orthogonality_residue_theorem() {
        // sum_i gamma_i g(P_i) h(P_i) = 0 for g in L(kO), h in the dual
        // basis, for every type
        for (c, n, k) in [
            (gf5_curve(), 8usize, 4usize),
            (gf16_curve(), 8, 4),
            (gf4_type3(), 6, 4),
            (gf5_curve(), 8, 3),
            (gf4_type3(), 6, 3),
        ] {
            let f = c.field().clone();
            let d = c.select_eval_set(n).unwrap();
            let rv = residues(&c, &d).unwrap();
            let prim = rrspace::basis_lko(&c, k).unwrap();
            let dual = rrspace::basis_dual_space(&c, n, k).unwrap();
            let gm = rrspace::evaluate(&c, &prim, &d).unwrap();
            let hm = rrspace::evaluate(&c, &dual, &d).unwrap();
            for gi in 0..gm.rows() {
                for hi in 0..hm.rows() {
                    let mut acc = f.zero();
                    for j in 0..d.len() {
                        acc = f.add(
                            acc,
                            f.mul(rv.gammas()[j], f.mul(gm.get(gi, j), hm.get(hi, j))),
                        );
                    }
                    assert!(acc.is_zero(), "k={} g-row {} h-row {}", k, gi, hi);
                }
            }
        }
    }

    #[test]
    fn canonical_tags() {
        assert_eq!(canonical_info(&gf5_curve()).dx, DxClass::YDivisor);
        assert_eq!(canonical_info(&gf16_curve()).dx, DxClass::Zero);
        assert_eq!(canonical_info(&gf4_type3()).dx, DxClass::LinearDivisor);
    }
}
