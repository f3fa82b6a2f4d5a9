//! Exact arithmetic in GF(p) and GF(p^m), polynomial-basis representation.
//!
//! A [`Field`] owns all element arithmetic; elements ([`Fq`]) are plain
//! copyable values tagged with their field identity so that mixing elements
//! of different fields is caught immediately. Extension elements are stored
//! in their canonical integer encoding `sum(c_i * p^i)` of the coefficient
//! vector `(c_0, .., c_{m-1})`.

use std::fmt;
use std::sync::Arc;

/// Largest supported field size. Desk-scale searches never get close.
pub const MAX_Q: u64 = 1 << 16;

/// Sizes up to this get dense multiplication/inverse tables.
const TABLE_Q: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    Reducible,
    DegreeMismatch,
    TooLarge,
    DivideByZero,
    ParseError(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::Reducible => write!(f, "defining polynomial is reducible"),
            FieldError::DegreeMismatch => {
                write!(f, "defining polynomial is not monic of the right degree")
            }
            FieldError::TooLarge => write!(f, "field size exceeds supported maximum"),
            FieldError::DivideByZero => write!(f, "division by zero"),
            FieldError::ParseError(s) => write!(f, "cannot parse field element: {}", s),
        }
    }
}

impl std::error::Error for FieldError {}

/// A field element: canonical integer encoding plus the owning field's tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    val: u32,
    fid: u64,
}

impl Fq {
    /// Canonical integer encoding, `sum(c_i * p^i)`.
    pub fn encoding(self) -> u32 {
        self.val
    }

    pub fn is_zero(self) -> bool {
        self.val == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.val)
    }
}

struct FieldData {
    p: u64,
    m: u32,
    q: u64,
    /// Monic defining polynomial, low-degree first, length m+1.
    poly: Vec<u64>,
    fid: u64,
    /// Dense q*q multiplication table for small fields.
    mul_table: Option<Vec<u16>>,
    inv_table: Option<Vec<u16>>,
}

/// A finite field GF(p^m). Cloning is cheap; the context is immutable and
/// freely shareable across threads.
#[derive(Clone)]
pub struct Field {
    data: Arc<FieldData>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.data.fid == other.data.fid
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.data.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// FNV-1a over the defining data so equal fields built twice stay compatible.
fn field_tag(p: u64, m: u32, poly: &[u64]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(p);
    eat(m as u64);
    for &c in poly {
        eat(c);
    }
    h
}

impl Field {
    /// Build GF(p^m). When `poly` is `None` the deterministic default is the
    /// monic irreducible of degree m whose low-coefficient encoding is
    /// smallest; this yields x^2+x+1 for GF(4) and x^4+x+1 for GF(16).
    pub fn new(p: u64, m: u32, poly: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m < 1 {
            return Err(FieldError::DegreeMismatch);
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.checked_mul(p).ok_or(FieldError::TooLarge)?;
            if q > MAX_Q {
                return Err(FieldError::TooLarge);
            }
        }
        let poly: Vec<u64> = match poly {
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(FieldError::DegreeMismatch);
                }
                let reduced: Vec<u64> = c.iter().map(|&x| x % p).collect();
                if reduced[m as usize] != 1 {
                    return Err(FieldError::DegreeMismatch);
                }
                if m > 1 && !poly_irreducible(p, &reduced) {
                    return Err(FieldError::Reducible);
                }
                reduced
            }
            None => default_poly(p, m),
        };
        let fid = field_tag(p, m, &poly);
        let mut data = FieldData {
            p,
            m,
            q,
            poly,
            fid,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_Q {
            let mut mt = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let prod = raw_mul(&data, a as u32, b as u32) as u16;
                    mt[(a * q + b) as usize] = prod;
                    mt[(b * q + a) as usize] = prod;
                }
            }
            let mut it = vec![0u16; q as usize];
            for a in 1..q {
                if it[a as usize] != 0 {
                    continue;
                }
                for b in 1..q {
                    if mt[(a * q + b) as usize] == 1 {
                        it[a as usize] = b as u16;
                        it[b as usize] = a as u16;
                        break;
                    }
                }
            }
            data.mul_table = Some(mt);
            data.inv_table = Some(it);
        }
        Ok(Field {
            data: Arc::new(data),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.data.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.data.m
    }

    pub fn order(&self) -> u64 {
        self.data.q
    }

    /// Defining polynomial coefficients, low-degree first, length m+1.
    pub fn defining_poly(&self) -> &[u64] {
        &self.data.poly
    }

    fn check(&self, a: Fq) -> u32 {
        assert_eq!(
            a.fid, self.data.fid,
            "element from a different field passed to GF({})",
            self.data.q
        );
        a.val
    }

    pub fn elem(&self, encoding: u64) -> Fq {
        assert!(encoding < self.data.q, "encoding out of range");
        Fq {
            val: encoding as u32,
            fid: self.data.fid,
        }
    }

    /// The image of an integer under the natural map Z -> GF(p) ⊂ GF(p^m).
    pub fn from_int(&self, n: i64) -> Fq {
        let p = self.data.p as i64;
        let r = ((n % p) + p) % p;
        self.elem(r as u64)
    }

    pub fn zero(&self) -> Fq {
        self.elem(0)
    }

    pub fn one(&self) -> Fq {
        self.elem(1)
    }

    /// The polynomial generator w (only meaningful for m > 1).
    pub fn gen(&self) -> Fq {
        assert!(self.data.m > 1, "prime field has no polynomial generator");
        self.elem(self.data.p)
    }

    /// Deterministic enumeration of all q elements, encoding ascending
    /// (lexicographic on coefficient vectors read high digit first).
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.data.q).map(move |v| self.elem(v))
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let (a, b) = (self.check(a), self.check(b));
        let d = &self.data;
        if d.m == 1 {
            return self.elem(((a as u64) + (b as u64)) % d.p);
        }
        let (mut out, mut mult, mut x, mut y) = (0u64, 1u64, a as u64, b as u64);
        while x > 0 || y > 0 {
            out += mult * ((x % d.p + y % d.p) % d.p);
            mult *= d.p;
            x /= d.p;
            y /= d.p;
        }
        self.elem(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let a = self.check(a);
        let d = &self.data;
        if d.m == 1 {
            return self.elem((d.p - a as u64) % d.p);
        }
        let (mut out, mut mult, mut x) = (0u64, 1u64, a as u64);
        while x > 0 {
            out += mult * ((d.p - x % d.p) % d.p);
            mult *= d.p;
            x /= d.p;
        }
        self.elem(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let (a, b) = (self.check(a), self.check(b));
        if let Some(mt) = &self.data.mul_table {
            return self.elem(mt[(a as u64 * self.data.q + b as u64) as usize] as u64);
        }
        self.elem(raw_mul(&self.data, a, b) as u64)
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        let v = self.check(a);
        if v == 0 {
            return Err(FieldError::DivideByZero);
        }
        if let Some(it) = &self.data.inv_table {
            return Ok(self.elem(it[v as usize] as u64));
        }
        // a^(q-2)
        Ok(self.pow(a, self.data.q - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        self.check(a);
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: Fq) -> bool {
        self.sqrt(a).is_some()
    }

    /// Square root when one exists. In characteristic 2 this is total
    /// (r = a^(q/2)); in odd characteristic Tonelli-Shanks runs with the
    /// smallest non-residue as auxiliary and the returned root is the one
    /// with the smaller canonical encoding, so results are reproducible.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.check(a);
        let q = self.data.q;
        if a.is_zero() {
            return Some(a);
        }
        if self.data.p == 2 {
            return Some(self.pow(a, q / 2));
        }
        // Euler criterion.
        if self.pow(a, (q - 1) / 2) != self.one() {
            return None;
        }
        // Tonelli-Shanks over the cyclic group of order q-1.
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let r = if s == 1 {
            self.pow(a, (q + 1) / 4)
        } else {
            // smallest quadratic non-residue by encoding
            let nr = self
                .elements()
                .skip(1)
                .find(|&z| self.pow(z, (q - 1) / 2) != self.one())
                .expect("non-residue exists in odd characteristic");
            let mut c = self.pow(nr, t);
            let mut r = self.pow(a, (t + 1) / 2);
            let mut u = self.pow(a, t);
            let mut m = s;
            while u != self.one() {
                let mut i = 0u32;
                let mut z = u;
                while z != self.one() {
                    z = self.mul(z, z);
                    i += 1;
                }
                let mut b = c;
                for _ in 0..(m - i - 1) {
                    b = self.mul(b, b);
                }
                r = self.mul(r, b);
                c = self.mul(b, b);
                u = self.mul(u, c);
                m = i;
            }
            r
        };
        let other = self.neg(r);
        Some(if r.encoding() <= other.encoding() {
            r
        } else {
            other
        })
    }

    /// Coefficient vector (c_0, .., c_{m-1}) over GF(p).
    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let mut v = self.check(a) as u64;
        let mut out = Vec::with_capacity(self.data.m as usize);
        for _ in 0..self.data.m {
            out.push(v % self.data.p);
            v /= self.data.p;
        }
        out
    }

    /// Canonical text form: plain integer for prime fields, polynomial in w
    /// for extensions ("w^2+w+1").
    pub fn format_elem(&self, a: Fq) -> String {
        self.format_elem_with(a, ElemStyle::Canonical)
    }

    pub fn format_elem_with(&self, a: Fq, style: ElemStyle) -> String {
        self.check(a);
        if self.data.m == 1 {
            return a.encoding().to_string();
        }
        match style {
            ElemStyle::Canonical => {
                if a.is_zero() {
                    return "0".to_string();
                }
                let cs = self.coeffs(a);
                let mut parts = Vec::new();
                for (i, &c) in cs.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let coef = if c == 1 && i > 0 {
                        String::new()
                    } else {
                        c.to_string()
                    };
                    let var = match i {
                        0 => String::new(),
                        1 => "w".to_string(),
                        _ => format!("w^{}", i),
                    };
                    let sep = if !coef.is_empty() && !var.is_empty() {
                        "*"
                    } else {
                        ""
                    };
                    parts.push(format!("{}{}{}", coef, sep, var));
                }
                parts.join("+")
            }
            ElemStyle::Power => {
                if a.is_zero() {
                    "0".to_string()
                } else if a == self.one() {
                    "1".to_string()
                } else {
                    // discrete log of a with respect to w; w generates the
                    // multiplicative group for all default small fields we
                    // care about, with a linear fallback otherwise.
                    let w = self.gen();
                    let mut acc = w;
                    for k in 1..self.data.q {
                        if acc == a {
                            return format!("w^{}", k);
                        }
                        acc = self.mul(acc, w);
                    }
                    self.format_elem_with(a, ElemStyle::Canonical)
                }
            }
        }
    }

    /// Accepts integers, power notation ("w^5"), polynomial notation
    /// ("w^2+w+1", also with 'a' or 'α' as the generator symbol), and
    /// bracketed coefficient vectors ("\\[1,0,1\\]").
    pub fn parse_elem(&self, s: &str) -> Result<Fq, FieldError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(FieldError::ParseError(s.to_string()));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let mut acc = self.zero();
            let mut mult = self.one();
            let w = if self.data.m > 1 {
                self.gen()
            } else {
                self.one()
            };
            for part in inner.split(',') {
                let c: i64 = part
                    .trim()
                    .parse()
                    .map_err(|_| FieldError::ParseError(s.to_string()))?;
                acc = self.add(acc, self.mul(mult, self.from_int(c)));
                mult = self.mul(mult, w);
            }
            return Ok(acc);
        }
        // sum of terms over '+' / '-'
        let norm = t.replace('α', "a").replace(' ', "");
        let mut acc = self.zero();
        let mut term = String::new();
        let mut sign = 1i64;
        let flush =
            |term: &str, sign: i64, acc: &mut Fq, me: &Field| -> Result<(), FieldError> {
                if term.is_empty() {
                    return Err(FieldError::ParseError(term.to_string()));
                }
                let v = me.parse_term(term)?;
                let v = if sign < 0 { me.neg(v) } else { v };
                *acc = me.add(*acc, v);
                Ok(())
            };
        for c in norm.chars() {
            match c {
                '+' => {
                    flush(&term, sign, &mut acc, self)?;
                    term.clear();
                    sign = 1;
                }
                '-' => {
                    if term.is_empty() && sign == 1 && acc.is_zero() {
                        sign = -1;
                    } else {
                        flush(&term, sign, &mut acc, self)?;
                        term.clear();
                        sign = -1;
                    }
                }
                _ => term.push(c),
            }
        }
        flush(&term, sign, &mut acc, self)?;
        Ok(acc)
    }

    /// One term: "3", "w", "w^4", "2w", "2*w^3".
    fn parse_term(&self, t: &str) -> Result<Fq, FieldError> {
        let bad = || FieldError::ParseError(t.to_string());
        let t = t.replace('*', "");
        let (coef_str, rest) = match t.find(['w', 'a']) {
            None => (t.as_str(), ""),
            Some(i) => t.split_at(i),
        };
        let coef = if coef_str.is_empty() {
            self.one()
        } else {
            let n: i64 = coef_str.parse().map_err(|_| bad())?;
            // plain integers in extension fields are read as canonical
            // encodings when standing alone, as GF(p) scalars otherwise
            if rest.is_empty() && self.data.m > 1 {
                let n = n as u64;
                if n < self.data.q {
                    return Ok(self.elem(n));
                }
                return Err(bad());
            }
            self.from_int(n)
        };
        if rest.is_empty() {
            return Ok(coef);
        }
        if self.data.m == 1 {
            return Err(bad());
        }
        let exp: u64 = match rest[1..].strip_prefix('^') {
            None if rest.len() == 1 => 1,
            Some(e) => e.parse().map_err(|_| bad())?,
            None => return Err(bad()),
        };
        Ok(self.mul(coef, self.pow(self.gen(), exp)))
    }
}

/// Schoolbook polynomial-basis multiplication with reduction by the defining
/// polynomial; used to seed the tables and as the fallback for larger q.
fn raw_mul(d: &FieldData, a: u32, b: u32) -> u32 {
    if d.m == 1 {
        return ((a as u64 * b as u64) % d.p) as u32;
    }
    let m = d.m as usize;
    let digits = |mut v: u64| -> Vec<u64> {
        let mut out = vec![0u64; m];
        for slot in out.iter_mut() {
            *slot = v % d.p;
            v /= d.p;
        }
        out
    };
    let da = digits(a as u64);
    let db = digits(b as u64);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % d.p;
        }
    }
    // reduce by x^m = -(poly[0] + .. + poly[m-1] x^(m-1))
    for i in (m..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..m {
            let sub = (c * d.poly[j]) % d.p;
            prod[i - m + j] = (prod[i - m + j] + d.p - sub) % d.p;
        }
    }
    let mut out: u64 = 0;
    for i in (0..m).rev() {
        out = out * d.p + prod[i];
    }
    out as u32
}

/// Output styles for extension-field elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElemStyle {
    /// "w^2+w+1"
    Canonical,
    /// "w^5"
    Power,
}

fn default_poly(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut low = vec![0u64; m as usize];
    loop {
        // next candidate: increment base-p counter over low coefficients
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < m as usize, "no irreducible found, impossible");
        }
        let mut cand = low.clone();
        cand.push(1);
        if poly_irreducible(p, &cand) {
            return cand;
        }
    }
}

/// Irreducibility over GF(p) by trial division against every monic divisor
/// candidate of degree at most deg/2. Exact and plenty fast for m <= 8.
fn poly_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        // iterate monic divisors x^d + sum(c_i x^i)
        let mut low = vec![0u64; d];
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut v = code;
            for slot in low.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            let mut div = low.clone();
            div.push(1);
            if poly_rem_is_zero(p, poly, &div) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u64, num: &[u64], den: &[u64]) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for i in 0..=dd {
                let sub = (lead * den[i]) % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Dense univariate polynomial over a [`Field`], low-degree first, no
/// trailing zeros. The zero polynomial has an empty coefficient list and
/// `degree() == None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    c: Vec<Fq>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("x"))
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Fq>) -> Poly {
        let mut c = coeffs;
        while let Some(&last) = c.last() {
            if last.is_zero() {
                c.pop();
            } else {
                break;
            }
        }
        Poly {
            field: field.clone(),
            c,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn constant(field: &Field, a: Fq) -> Poly {
        Poly::new(field, vec![a])
    }

    pub fn x_power(field: &Field, e: usize) -> Poly {
        let mut c = vec![field.zero(); e + 1];
        c[e] = field.one();
        Poly::new(field, c)
    }

    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        Poly::new(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::new(f, out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, a: Fq) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.c.len() <= 1 {
            return Poly::zero(f);
        }
        let mut out = Vec::with_capacity(self.c.len() - 1);
        for i in 1..self.c.len() {
            let mut term = f.zero();
            for _ in 0..i {
                term = f.add(term, self.c[i]);
            }
            out.push(term);
        }
        Poly::new(f, out)
    }

    /// Remainder of self divided by a nonzero polynomial.
    pub fn rem(&self, den: &Poly) -> Poly {
        assert!(!den.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dd = den.degree().unwrap();
        let lead_inv = f.inv(den.c[dd]).unwrap();
        let mut rem = self.c.clone();
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            if !lead.is_zero() {
                let factor = f.mul(lead, lead_inv);
                let shift = rem.len() - 1 - dd;
                for i in 0..=dd {
                    let sub = f.mul(factor, den.c[i]);
                    rem[shift + i] = f.sub(rem[shift + i], sub);
                }
            }
            rem.pop();
            while rem.len() > dd && rem.last().unwrap().is_zero() {
                rem.pop();
            }
        }
        Poly::new(f, rem)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let f = &self.field;
            let inv = f.inv(a.c[d]).unwrap();
            a = a.scale(inv);
        }
        a
    }

    /// gcd(f, f') has degree 0 exactly when f is square-free.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == Some(0);
        }
        self.gcd(&d).degree() == Some(0)
    }

    pub fn render(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format_elem(c);
            let needs_paren = cs.contains('+') || cs.contains('-');
            let cs = if needs_paren { format!("({})", cs) } else { cs };
            let term = match i {
                0 => cs,
                _ => {
                    let var_s = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{}^{}", var, i)
                    };
                    if c == f.one() {
                        var_s
                    } else {
                        format!("{}*{}", cs, var_s)
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        match q {
            4 => Field::new(2, 2, None).unwrap(),
            5 => Field::new(5, 1, None).unwrap(),
            8 => Field::new(2, 3, None).unwrap(),
            9 => Field::new(3, 2, None).unwrap(),
            16 => Field::new(2, 4, None).unwrap(),
            _ => panic!("unexpected"),
        }
    }

    #[test]
    fn construction_basics() {
        let f5 = gf(5);
        assert_eq!(f5.order(), 5);
        assert!(matches!(Field::new(4, 1, None), Err(FieldError::NotPrime(4))));
        // GF(16) default is w^4 + w + 1 and w has multiplicative order 15
        let f16 = gf(16);
        assert_eq!(f16.defining_poly(), &[1, 1, 0, 0, 1]);
        let w = f16.gen();
        assert_eq!(f16.pow(w, 15), f16.one());
        for e in 1..15 {
            assert_ne!(f16.pow(w, e), f16.one(), "w^{} = 1 too early", e);
        }
        // GF(4) default is w^2 + w + 1
        assert_eq!(gf(4).defining_poly(), &[1, 1, 1]);
    }

    #[test]
    fn reducible_poly_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::Reducible)
        ));
        // non-monic
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 0, 2])),
            Err(FieldError::DegreeMismatch)
        ));
    }

    #[test]
    fn inverses() {
        let f5 = gf(5);
        assert_eq!(f5.inv(f5.elem(4)).unwrap(), f5.elem(4));
        // -1/24 = -1/4 = 1 over GF(5)
        let v = f5.neg(f5.inv(f5.from_int(24)).unwrap());
        assert_eq!(v, f5.one());
        // GF(4): inv(a+1) = a
        let f4 = gf(4);
        let a = f4.gen();
        let a1 = f4.add(a, f4.one());
        assert_eq!(f4.inv(a1).unwrap(), a);
        assert!(matches!(f5.inv(f5.zero()), Err(FieldError::DivideByZero)));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [4u64, 5, 8, 9, 16] {
            let f = gf(q);
            let els: Vec<Fq> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                // a^q = a
                assert_eq!(f.pow(a, q), a);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius
                    assert_eq!(
                        f.pow(f.add(a, b), f.characteristic()),
                        f.add(f.pow(a, f.characteristic()), f.pow(b, f.characteristic()))
                    );
                    for &c in &els {
                        assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn sqrt_behaviour() {
        let f5 = gf(5);
        // canonical Tonelli-Shanks root of 4 is min(2, 3) = 2
        assert_eq!(f5.sqrt(f5.elem(4)).unwrap(), f5.elem(2));
        // oracle: exhaust squares of GF(5); 2 is not among them
        let squares: Vec<u32> = f5.elements().map(|a| f5.mul(a, a).encoding()).collect();
        assert!(!squares.contains(&2));
        assert!(f5.sqrt(f5.elem(2)).is_none());

        // GF(16): sqrt(w) = w^8 because (w^8)^2 = w^16 = w
        let f16 = gf(16);
        let w = f16.gen();
        let w8 = f16.pow(w, 8);
        assert_eq!(f16.mul(w8, w8), w);
        assert_eq!(f16.sqrt(w).unwrap(), w8);

        // char-2 sqrt is total and bijective; odd char roots square back
        for q in [4u64, 8, 16] {
            let f = gf(q);
            let mut seen = std::collections::HashSet::new();
            for a in f.elements() {
                let r = f.sqrt(a).unwrap();
                assert_eq!(f.mul(r, r), a);
                assert!(seen.insert(r.encoding()));
            }
        }
        for q in [5u64, 9] {
            let f = gf(q);
            for a in f.elements() {
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(f.mul(r, r), a);
                }
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let f5 = gf(5);
        let v: Vec<u32> = f5.elements().map(|a| a.encoding()).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4]);
        let f4 = gf(4);
        let names: Vec<String> = f4.elements().map(|a| f4.format_elem(a)).collect();
        assert_eq!(names, vec!["0", "1", "w", "w+1"]);
        let f16 = gf(16);
        let all: std::collections::HashSet<u32> =
            f16.elements().map(|a| a.encoding()).collect();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn text_roundtrip() {
        let f16 = gf(16);
        let w = f16.gen();
        let x = f16.add(f16.mul(w, w), w); // w^2 + w
        assert_eq!(f16.format_elem(x), "w^2+w");
        assert_eq!(f16.format_elem_with(x, ElemStyle::Power), "w^5");
        assert_eq!(f16.parse_elem("w^5").unwrap(), x);
        assert_eq!(f16.parse_elem("w^2+w").unwrap(), x);
        assert_eq!(f16.parse_elem("[0,1,1]").unwrap(), x);
        let f4 = gf(4);
        assert_eq!(f4.parse_elem("α+1").unwrap(), f4.elem(3));
        let f5 = gf(5);
        assert_eq!(f5.parse_elem("-2").unwrap(), f5.elem(3));
    }

    #[test]
    fn poly_utilities() {
        let f5 = gf(5);
        // f = x^3 + x + 1 is square-free
        let f = Poly::from_ints(&f5, &[1, 1, 0, 1]);
        assert!(f.is_squarefree());
        // g = (x+1)^2 (x+2) is not
        let g = Poly::from_ints(&f5, &[1, 1]);
        let g = g.mul(&g).mul(&Poly::from_ints(&f5, &[2, 1]));
        assert!(!g.is_squarefree());
        assert_eq!(f.eval(f5.elem(2)), f5.from_int(11));
        assert!(Poly::zero(&f5).degree().is_none());
        let gcd = f.gcd(&f.derivative());
        assert_eq!(gcd.degree(), Some(0));
    }
}
