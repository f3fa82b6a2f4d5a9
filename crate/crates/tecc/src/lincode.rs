//! Exact linear-code analytics over GF(q): Gaussian elimination, duals,
//! minimum distance, Singleton-defect classification, Schur squares, and
//! the Reed-Solomon non-equivalence criterion.

use crate::gf::{ElemStyle, Field, Fq};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinError {
    NotFullRank,
    BudgetExceeded,
    /// rs_nonequiv_check requires k <= n/2.
    BadPrecondition(String),
    Parse(String),
}

impl fmt::Display for LinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinError::NotFullRank => write!(f, "generator matrix is not full rank"),
            LinError::BudgetExceeded => write!(f, "enumeration budget exceeded"),
            LinError::BadPrecondition(s) => write!(f, "precondition violated: {}", s),
            LinError::Parse(s) => write!(f, "cannot parse matrix: {}", s),
        }
    }
}

impl std::error::Error for LinError {}

/// Default codeword-class enumeration budget for minimum distance.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.render_row(r, ElemStyle::Canonical))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fq>>) -> Matrix {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(i, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Vertical stack.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Scale column j by the j-th entry of v.
    pub fn scale_columns(&self, v: &[Fq]) -> Matrix {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, f.mul(self.get(r, c), v[c]));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c);
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Canonical row-space representative: RREF restricted to nonzero rows.
    pub fn row_space_canon(&self) -> Matrix {
        let (m, rank, _) = self.rref();
        let mut rows = m.row_vecs();
        rows.truncate(rank);
        Matrix::from_rows(&self.field, rows)
    }

    pub fn row_space_eq(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_space_canon() == other.row_space_canon()
    }

    /// Basis of the right nullspace {v : self v^T = 0}, one vector per row,
    /// in canonical (RREF) form.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (m, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(m.get(pi, fc));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Matrix::zeros(f, 0, self.cols);
        }
        Matrix::from_rows(f, rows).row_space_canon()
    }

    pub fn render_row(&self, r: usize, style: ElemStyle) -> String {
        self.row(r)
            .iter()
            .map(|&v| self.field.format_elem_with(v, style))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Text format: one row per line, entries space-separated.
    pub fn render_text(&self, style: ElemStyle) -> String {
        (0..self.rows)
            .map(|r| self.render_row(r, style))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<Matrix, LinError> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<Fq>, _> = line
                .split_whitespace()
                .map(|tok| {
                    field
                        .parse_elem(tok)
                        .map_err(|e| LinError::Parse(e.to_string()))
                })
                .collect();
            rows.push(row?);
        }
        if rows.is_empty() {
            return Err(LinError::Parse("empty matrix".to_string()));
        }
        let w = rows[0].len();
        if rows.iter().any(|r| r.len() != w) {
            return Err(LinError::Parse("ragged rows".to_string()));
        }
        Ok(Matrix::from_rows(field, rows))
    }
}

fn weight(row: &[Fq]) -> u32 {
    row.iter().filter(|v| !v.is_zero()).count() as u32
}

/// Exact minimum Hamming weight over nonzero codewords. One representative
/// per scalar class is enumerated (first nonzero message coordinate fixed
/// to 1). When the class count exceeds the budget, information-set
/// enumeration by increasing message weight takes over; that path stays
/// exact because a codeword of information weight w has weight >= w on the
/// systematic columns.
pub fn min_distance(g: &Matrix, budget: u64) -> Result<u32, LinError> {
    let f = g.field().clone();
    let k = g.rows();
    let n = g.cols();
    if g.rank() != k || k == 0 {
        return Err(LinError::NotFullRank);
    }
    let q = f.order();
    let mut classes: u64 = 0;
    let mut pw: u64 = 1;
    let mut overflow = false;
    for _ in 0..k {
        pw = match pw.checked_mul(q) {
            Some(v) => v,
            None => {
                overflow = true;
                break;
            }
        };
        if pw > budget.saturating_mul(q) {
            overflow = true;
            break;
        }
    }
    if !overflow {
        classes = (pw - 1) / (q - 1);
    }
    if !overflow && classes <= budget {
        let rows = g.row_vecs();
        let mut best = n as u32;
        let zero = vec![f.zero(); n];
        enumerate_classes(&f, &rows, 0, &zero, false, &mut best);
        return Ok(best);
    }
    // information-set path on the systematic form
    let (rr, rank, _pivots) = g.rref();
    debug_assert_eq!(rank, k);
    let rows = {
        let mut v = rr.row_vecs();
        v.truncate(k);
        v
    };
    let nonzero: Vec<Fq> = f.elements().skip(1).collect();
    let mut best = n as u32;
    let mut work: u64 = 0;
    for w in 1..=k as u32 {
        if w >= best {
            break;
        }
        let w_us = w as usize;
        let mut idx: Vec<usize> = (0..w_us).collect();
        'combos: loop {
            // scalar dedup: coefficient of the first chosen row fixed to 1
            let mut coefs = vec![f.one(); w_us];
            loop {
                work += 1;
                if work > budget.saturating_mul(64) {
                    return Err(LinError::BudgetExceeded);
                }
                let mut word = vec![f.zero(); n];
                for (slot, &ri) in idx.iter().enumerate() {
                    let c = coefs[slot];
                    for j in 0..n {
                        word[j] = f.add(word[j], f.mul(c, rows[ri][j]));
                    }
                }
                best = best.min(weight(&word));
                // advance coefficient odometer over slots 1..w
                let mut s = 1usize;
                while s < w_us {
                    let pos = nonzero.iter().position(|&z| z == coefs[s]).unwrap();
                    if pos + 1 < nonzero.len() {
                        coefs[s] = nonzero[pos + 1];
                        break;
                    }
                    coefs[s] = nonzero[0];
                    s += 1;
                }
                if s >= w_us {
                    break;
                }
            }
            // next index combination
            let mut i = w_us;
            while i > 0 {
                i -= 1;
                if idx[i] + (w_us - i) <= k - 1 {
                    idx[i] += 1;
                    for j in i + 1..w_us {
                        idx[j] = idx[j - 1] + 1;
                    }
                    continue 'combos;
                }
            }
            break;
        }
    }
    Ok(best)
}

fn enumerate_classes(
    f: &Field,
    rows: &[Vec<Fq>],
    i: usize,
    partial: &[Fq],
    started: bool,
    best: &mut u32,
) {
    if i == rows.len() {
        if started {
            *best = (*best).min(weight(partial));
        }
        return;
    }
    // coefficient 0
    enumerate_classes(f, rows, i + 1, partial, started, best);
    let n = partial.len();
    if started {
        for c in f.elements().skip(1) {
            let mut next = partial.to_vec();
            for j in 0..n {
                next[j] = f.add(next[j], f.mul(c, rows[i][j]));
            }
            enumerate_classes(f, rows, i + 1, &next, true, best);
        }
    } else {
        let mut next = partial.to_vec();
        for j in 0..n {
            next[j] = f.add(next[j], rows[i][j]);
        }
        enumerate_classes(f, rows, i + 1, &next, true, best);
    }
}

/// Generator of the dual code: canonical nullspace basis of g.
pub fn dual(g: &Matrix) -> Matrix {
    g.nullspace()
}

/// Dimension of the Schur square: rank of all pairwise component products
/// of the rows (k(k+1)/2 of them, including squares).
pub fn schur_square_dim(g: &Matrix) -> usize {
    let f = g.field().clone();
    let k = g.rows();
    let n = g.cols();
    let mut rows = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            let mut prod = Vec::with_capacity(n);
            for c in 0..n {
                prod.push(f.mul(g.get(i, c), g.get(j, c)));
            }
            rows.push(prod);
        }
    }
    Matrix::from_rows(&f, rows).rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsVerdict {
    NonRs,
    Inconclusive,
}

/// A code of dimension k <= n/2 whose Schur square has dimension >= 2k
/// cannot be monomially equivalent to a Reed-Solomon code.
pub fn rs_nonequiv_check(g: &Matrix) -> Result<RsVerdict, LinError> {
    let k = g.rank();
    if 2 * k > g.cols() {
        return Err(LinError::BadPrecondition(format!(
            "dimension {} exceeds n/2 = {}",
            k,
            g.cols() / 2
        )));
    }
    if schur_square_dim(g) >= 2 * k {
        Ok(RsVerdict::NonRs)
    } else {
        Ok(RsVerdict::Inconclusive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeClass {
    Mds,
    Amds,
    Nmds,
    Other,
}

impl fmt::Display for CodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CodeClass::Mds => "MDS",
            CodeClass::Amds => "AMDS",
            CodeClass::Nmds => "NMDS",
            CodeClass::Other => "other",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub defect: u32,
    pub class: CodeClass,
    pub self_dual: bool,
    pub self_orthogonal: bool,
}

/// Full summary: parameters, Singleton defect, class, duality flags.
/// NMDS means defect 1 on both the code and its dual; AMDS means defect 1
/// on the code with a different dual defect. Self-duality is decided by
/// exact row-space equality of g and its dual, never by g g^T alone.
pub fn classify(g: &Matrix, budget: u64) -> Result<CodeSummary, LinError> {
    let n = g.cols();
    let canon = g.row_space_canon();
    let k = canon.rows();
    if k == 0 {
        return Err(LinError::NotFullRank);
    }
    let d = min_distance(&canon, budget)?;
    let defect = (n - k + 1) as u32 - d;
    let h = dual(&canon);
    let self_dual = n == 2 * k && canon.row_space_eq(&h);
    let ggt = canon.mul(&canon.transpose());
    let self_orthogonal = ggt.is_zero();
    let class = if defect == 0 {
        CodeClass::Mds
    } else if defect == 1 {
        if h.rows() > 0 {
            let dd = min_distance(&h, budget)?;
            let dual_defect = (n - h.rows() + 1) as u32 - dd;
            if dual_defect == 1 {
                CodeClass::Nmds
            } else {
                CodeClass::Amds
            }
        } else {
            CodeClass::Amds
        }
    } else {
        CodeClass::Other
    };
    Ok(CodeSummary {
        n,
        k,
        d,
        defect,
        class,
        self_dual,
        self_orthogonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn gf5() -> Field {
        Field::new(5, 1, None).unwrap()
    }

    /// rows given as canonical encodings, not integers mod p
    fn mat(f: &Field, rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&v| f.elem(v)).collect())
                .collect(),
        )
    }

    fn example1_generator(f: &Field) -> Matrix {
        Matrix::from_ints(
            f,
            &[
                &[1, 1, 1, 1, 1, 1, 1, 1],
                &[0, 0, 2, 2, 3, 3, 4, 4],
                &[0, 0, 4, 4, 4, 4, 1, 1],
                &[1, 4, 1, 4, 1, 4, 2, 3],
            ],
        )
    }

    fn example1_parity(f: &Field) -> Matrix {
        // forced by the duality theorem: rows gamma/beta * {1, x, x^2}, gamma
        Matrix::from_ints(
            f,
            &[
                &[1, 4, 4, 1, 3, 2, 1, 4],
                &[0, 0, 3, 2, 4, 1, 4, 1],
                &[0, 0, 1, 4, 2, 3, 1, 4],
                &[1, 1, 4, 4, 3, 3, 2, 2],
            ],
        )
    }

    #[test]
    fn rank_and_rref() {
        let f = gf5();
        assert_eq!(Matrix::identity(&f, 4).rank(), 4);
        let g = example1_generator(&f);
        assert_eq!(g.rank(), 4);
        let (rr, rank, pivots) = g.rref();
        assert_eq!(rank, 4);
        // column 3 duplicates a combination of earlier columns
        assert_eq!(pivots, vec![0, 1, 2, 4]);
        // rref idempotent
        assert_eq!(rr.rref().0, rr);
    }

    #[test]
    fn nullspace_is_dual_row_space() {
        let f = gf5();
        let g = example1_generator(&f);
        let ns = g.nullspace();
        assert_eq!(ns.rows(), 4);
        assert!(g.mul(&ns.transpose()).is_zero());
        let h = example1_parity(&f);
        assert!(g.mul(&h.transpose()).is_zero());
        assert!(ns.row_space_eq(&h));
    }

    #[test]
    fn dual_involution_and_rank_sum() {
        let f = gf5();
        let g = example1_generator(&f);
        let h = dual(&g);
        assert_eq!(g.rank() + h.rank(), g.cols());
        assert!(dual(&h).row_space_eq(&g.row_space_canon()));
    }

    #[test]
    fn min_distance_values() {
        let f = gf5();
        let g = example1_generator(&f);
        assert_eq!(min_distance(&g, DEFAULT_BUDGET).unwrap(), 4);
        // all-ones repetition row
        let rep = Matrix::from_ints(&f, &[&[1, 1, 1, 1, 1, 1, 1, 1]]);
        assert_eq!(min_distance(&rep, DEFAULT_BUDGET).unwrap(), 8);
        // the twisted [6,3] code over GF(4) with eta = 1: d = 3 (the word
        // alpha*row0 + row1 + row2 has weight 3)
        let f4 = Field::new(2, 2, None).unwrap();
        let g4 = mat(
            &f4,
            &[
                &[1, 1, 1, 1, 1, 1],
                &[1, 1, 2, 2, 3, 3],
                &[3, 2, 1, 0, 0, 1],
            ],
        );
        assert_eq!(min_distance(&g4, DEFAULT_BUDGET).unwrap(), 3);
        // singleton bound holds on assorted full-rank inputs
        for rows in [
            [[1i64, 2, 3, 4, 0, 1], [0, 1, 1, 1, 2, 2]],
            [[1, 0, 3, 0, 0, 1], [2, 1, 1, 1, 2, 0]],
        ] {
            let m = Matrix::from_ints(&f, &[&rows[0], &rows[1]]);
            let d = min_distance(&m, DEFAULT_BUDGET).unwrap();
            assert!(d as usize <= m.cols() - m.rows() + 1);
        }
    }

    #[test]
    fn min_distance_isd_path_agrees() {
        let f = gf5();
        let g = example1_generator(&f);
        // 156 scalar classes, so a budget of 100 forces the
        // information-set path
        assert_eq!(min_distance(&g, 100).unwrap(), 4);
        let f4 = Field::new(2, 2, None).unwrap();
        let g4 = mat(
            &f4,
            &[
                &[1, 1, 1, 1, 1, 1],
                &[1, 1, 2, 2, 3, 3],
                &[3, 2, 1, 0, 0, 1],
            ],
        );
        // 21 classes here; 15 again forces the fallback
        assert_eq!(min_distance(&g4, 15).unwrap(), 3);
    }

    #[test]
    fn schur_square_dims() {
        let f = gf5();
        let one = Matrix::from_ints(&f, &[&[1, 2, 3, 4, 1, 2, 3, 4]]);
        assert_eq!(schur_square_dim(&one), 1);
        // Vandermonde code of dimension k on n >= 2k points: dim 2k-1,
        // products of x^i spread over degrees 0..2k-2
        let f13 = Field::new(13, 1, None).unwrap();
        for k in [2usize, 3, 4] {
            let pts: Vec<Fq> = (0..10).map(|v| f13.elem(v)).collect();
            let rows: Vec<Vec<Fq>> = (0..k)
                .map(|e| pts.iter().map(|&x| f13.pow(x, e as u64)).collect())
                .collect();
            let v = Matrix::from_rows(&f13, rows);
            assert_eq!(schur_square_dim(&v), 2 * k - 1);
            assert_eq!(rs_nonequiv_check(&v).unwrap(), RsVerdict::Inconclusive);
        }
    }

    #[test]
    fn schur_monomial_invariance() {
        let f = gf5();
        let g = example1_generator(&f);
        let base = schur_square_dim(&g);
        // row-space preserving change
        let mut alt_rows = g.row_vecs();
        let r0 = alt_rows[0].clone();
        for (j, v) in alt_rows[1].iter_mut().enumerate() {
            *v = f.add(*v, f.mul(f.from_int(3), r0[j]));
        }
        let alt = Matrix::from_rows(&f, alt_rows);
        assert_eq!(schur_square_dim(&alt), base);
        // column scaling and permutation
        let scale: Vec<Fq> = [1, 2, 3, 4, 1, 2, 3, 4]
            .iter()
            .map(|&v| f.elem(v))
            .collect();
        let scaled = g.scale_columns(&scale);
        assert_eq!(schur_square_dim(&scaled), base);
        let perm: Vec<usize> = vec![7, 0, 6, 1, 5, 2, 4, 3];
        let permuted_rows: Vec<Vec<Fq>> = g
            .row_vecs()
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        let permuted = Matrix::from_rows(&f, permuted_rows);
        assert_eq!(schur_square_dim(&permuted), base);
    }

    #[test]
    fn rs_precondition() {
        let f = gf5();
        let g = Matrix::identity(&f, 3); // k = 3 > n/2
        assert!(matches!(
            rs_nonequiv_check(&g),
            Err(LinError::BadPrecondition(_))
        ));
    }

    #[test]
    fn classify_example1_is_nmds() {
        let f = gf5();
        let g = example1_generator(&f);
        let s = classify(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!((s.n, s.k, s.d), (8, 4, 4));
        assert_eq!(s.defect, 1);
        assert_eq!(s.class, CodeClass::Nmds);
        assert!(!s.self_dual);
    }

    #[test]
    fn text_roundtrip() {
        let f = gf5();
        let g = example1_generator(&f);
        let text = g.render_text(ElemStyle::Canonical);
        let back = Matrix::parse_text(&f, &text).unwrap();
        assert_eq!(back, g);
    }
}
