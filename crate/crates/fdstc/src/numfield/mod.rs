//! Exact arithmetic in the number fields underlying the code constructions.
//!
//! A [`NumberField`] is Q(xi) for a primitive element xi with a monic integer
//! minimal polynomial; elements are rational coefficient vectors in the power
//! basis. Multiquadratic stacks on top of a base field (K(sqrt(a)),
//! K(sqrt(-m)), balanced-representation radicals) live in [`tower`], finite
//! residue fields in [`residue`].

pub mod residue;
pub mod tower;

pub use residue::{residue_fields, ResidueField};
pub use tower::{QuadExt, Tower, TowerElem, TowerMap};

use crate::poly::{self, QPoly};
use nalgebra::{Complex, DMatrix};
use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Complex64 = Complex<f64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    #[error("division by zero element")]
    DivisionByZero,
    #[error("field mismatch: operands belong to different fields")]
    FieldMismatch,
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("irreducibility of the minimal polynomial could not be certified")]
    IrreducibilityUnknown,
    #[error("minimal polynomial has repeated factors mod {0} (ramified or non-monogenic case)")]
    RamifiedOrNonMonogenic(u64),
    #[error("no root of the minimal polynomial near the requested embedding")]
    RootAccuracy,
    #[error("value could not be expressed exactly in the field")]
    NotInField,
    #[error("proposed generator image does not define an automorphism")]
    NotAnAutomorphism,
    #[error("denominator not invertible mod {0}")]
    BadDenominator(u64),
    #[error("equal-degree splitting in characteristic 2 is not supported")]
    CharTwoSplit,
    #[error("residue computation too large: {0}")]
    TooLarge(String),
    #[error("radicand of a tower layer must embed to a real number")]
    RadicandNotReal,
}

/// An algebraic number field Q(xi), xi a root of a monic irreducible integer
/// polynomial. The first entry of `embeddings` is the distinguished complex
/// embedding used for all numerical images.
#[derive(Debug, Clone)]
pub struct NumberField {
    degree: usize,
    min_poly: Vec<BigInt>,
    min_poly_q: QPoly,
    embeddings: Vec<Complex64>,
    label: String,
    /// Image of xi under complex conjugation of the distinguished embedding,
    /// when conjugation stabilises the field (None means conj = identity,
    /// i.e. the distinguished embedding is real).
    conj_image: Option<FieldElement>,
}

/// Element of a [`NumberField`] as rational coordinates in the power basis
/// {1, xi, ..., xi^(degree-1)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coordinate is an integer, i.e. the element lies in
    /// Z[xi].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

/// Arithmetic selector for [`NumberField::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeOp {
    Add,
    Sub,
    Mul,
    /// x * y^(-1)
    InvMul,
}

impl NumberField {
    /// Build a field from a monic integer minimal polynomial (ascending
    /// coefficients). `root_hint` selects the distinguished embedding: the
    /// root closest to the hint.
    pub fn new(min_poly: Vec<i64>, label: &str, root_hint: Complex64) -> Result<Self, NumFieldError> {
        let mp: Vec<BigInt> = min_poly.iter().map(|&c| BigInt::from(c)).collect();
        Self::new_big(mp, label, root_hint)
    }

    pub fn new_big(
        min_poly: Vec<BigInt>,
        label: &str,
        root_hint: Complex64,
    ) -> Result<Self, NumFieldError> {
        if min_poly.len() < 2 || !min_poly.last().unwrap().is_one() {
            return Err(NumFieldError::NotMonic);
        }
        let degree = min_poly.len() - 1;
        verify_irreducible(&min_poly)?;
        let mut roots = poly_roots(&min_poly);
        if roots.len() != degree {
            return Err(NumFieldError::RootAccuracy);
        }
        // distinguished root first
        roots.sort_by(|a, b| {
            let da = (a - root_hint).norm();
            let db = (b - root_hint).norm();
            da.partial_cmp(&db).unwrap()
        });
        let min_poly_q: QPoly = min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        for r in &roots {
            if eval_int_poly(&min_poly, *r).norm() > 1e-10 {
                return Err(NumFieldError::RootAccuracy);
            }
        }
        let mut field = NumberField {
            degree,
            min_poly,
            min_poly_q,
            embeddings: roots,
            label: label.to_string(),
            conj_image: None,
        };
        field.conj_image = field.find_conj_image()?;
        Ok(field)
    }

    /// The rationals as a degree-1 field (xi = 0).
    pub fn rationals() -> Self {
        NumberField::new(vec![0, 1], "Q", Complex64::new(0.0, 0.0)).unwrap()
    }

    /// Q(sqrt(d)) for a square-free nonzero integer d; xi = sqrt(d) with the
    /// positive real (d > 0) or positive imaginary (d < 0) branch.
    pub fn quadratic(d: i64) -> Result<Self, NumFieldError> {
        let hint = if d >= 0 {
            Complex64::new((d as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-d as f64).sqrt())
        };
        NumberField::new(vec![-d, 0, 1], &format!("Q(sqrt({d}))"), hint)
    }

    /// Maximal real subfield of the p-th cyclotomic field, p an odd prime:
    /// Q(xi) with xi = 2cos(2pi/p). The minimal polynomial is computed
    /// numerically as prod(x - 2cos(2pi k/p)) and rounded to integers, then
    /// the claimed root is verified to 1e-12.
    pub fn cyclotomic_real(p: u64) -> Result<Self, NumFieldError> {
        let n = ((p - 1) / 2) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = Complex64::new(1.0, 0.0);
        let mut deg = 0usize;
        for k in 1..=n {
            let r = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / p as f64).cos();
            // multiply by (x - r)
            for i in (0..=deg).rev() {
                let c = coeffs[i];
                coeffs[i + 1] += c;
                coeffs[i] = -c * r + if i == 0 { Complex64::new(0.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            }
            // redo properly: shift then subtract r*old
            deg += 1;
        }
        // The in-place update above is error prone; recompute cleanly.
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=n {
            let r = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / p as f64).cos();
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            poly = next;
        }
        let ints: Vec<i64> = poly
            .iter()
            .map(|c| c.re.round() as i64)
            .collect();
        for (c, i) in poly.iter().zip(ints.iter()) {
            if (c.re - *i as f64).abs() > 1e-6 || c.im.abs() > 1e-6 {
                return Err(NumFieldError::RootAccuracy);
            }
        }
        let xi = 2.0 * (2.0 * std::f64::consts::PI / p as f64).cos();
        // verify the claimed root exactly enough
        let mut acc = 0.0f64;
        let mut pw = 1.0f64;
        for &c in &ints {
            acc += c as f64 * pw;
            pw *= xi;
        }
        if acc.abs() > 1e-12 * pw.abs().max(1.0) {
            return Err(NumFieldError::RootAccuracy);
        }
        NumberField::new(ints, &format!("Q(zeta{p}+zeta{p}^-1)"), Complex64::new(xi, 0.0))
    }

    /// The p-th cyclotomic field for an odd prime p, xi = exp(2 pi i / p).
    pub fn cyclotomic(p: u64) -> Result<Self, NumFieldError> {
        let coeffs = vec![1i64; p as usize];
        let ang = 2.0 * std::f64::consts::PI / p as f64;
        NumberField::new(
            coeffs,
            &format!("Q(zeta{p})"),
            Complex64::new(ang.cos(), ang.sin()),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn embeddings(&self) -> &[Complex64] {
        &self.embeddings
    }

    pub fn is_totally_real(&self) -> bool {
        self.embeddings.iter().all(|r| r.im.abs() < 1e-9)
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        self.min_poly == other.min_poly
            && (self.embeddings[0] - other.embeddings[0]).norm() < 1e-9
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[0] = r;
        FieldElement { coeffs }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// xi itself (or 0 for the degree-1 field).
    pub fn gen(&self) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        if self.degree > 1 {
            coeffs[1] = BigRational::one();
        }
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let mut v: Vec<BigRational> = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        v.resize(self.degree, BigRational::zero());
        FieldElement { coeffs: v }
    }

    pub fn element_q(&self, coeffs: Vec<BigRational>) -> FieldElement {
        let mut v = coeffs;
        v.resize(self.degree, BigRational::zero());
        FieldElement { coeffs: v }
    }

    fn check(&self, x: &FieldElement) -> Result<(), NumFieldError> {
        if x.coeffs.len() != self.degree {
            return Err(NumFieldError::FieldMismatch);
        }
        Ok(())
    }

    // -- arithmetic ----------------------------------------------------------

    /// The spec-facing arithmetic entry point.
    pub fn arith(
        &self,
        x: &FieldElement,
        y: &FieldElement,
        op: FeOp,
    ) -> Result<FieldElement, NumFieldError> {
        self.check(x)?;
        self.check(y)?;
        match op {
            FeOp::Add => Ok(self.add(x, y)),
            FeOp::Sub => Ok(self.sub(x, y)),
            FeOp::Mul => Ok(self.mul(x, y)),
            FeOp::InvMul => {
                let inv = self.inv(y)?;
                Ok(self.mul(x, &inv))
            }
        }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: x.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let prod = poly::q_mul(&x.coeffs, &y.coeffs);
        let mut red = poly::q_rem(&prod, &self.min_poly_q);
        red.resize(self.degree, BigRational::zero());
        FieldElement { coeffs: red }
    }

    pub fn scale(&self, x: &FieldElement, r: &BigRational) -> FieldElement {
        FieldElement {
            coeffs: x.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement, NumFieldError> {
        self.check(x)?;
        if x.is_zero() {
            return Err(NumFieldError::DivisionByZero);
        }
        let (g, s, _) = poly::q_xgcd(&x.coeffs, &self.min_poly_q);
        if poly::q_deg(&g) != 0 {
            return Err(NumFieldError::DivisionByZero);
        }
        let scale = g[0].recip();
        let mut inv = poly::q_rem(&s, &self.min_poly_q);
        inv.resize(self.degree, BigRational::zero());
        for c in inv.iter_mut() {
            *c *= &scale;
        }
        Ok(FieldElement { coeffs: inv })
    }

    pub fn pow(&self, x: &FieldElement, e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // -- numerics ------------------------------------------------------------

    /// Numerical image under the j-th embedding.
    pub fn embed_at(&self, x: &FieldElement, j: usize) -> Complex64 {
        let r = self.embeddings[j];
        let mut acc = Complex64::new(0.0, 0.0);
        for c in x.coeffs.iter().rev() {
            acc = acc * r + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }

    /// Numerical image under the distinguished embedding.
    pub fn embed(&self, x: &FieldElement) -> Complex64 {
        self.embed_at(x, 0)
    }

    /// Absolute field norm Nm_{K/Q}(x) as an exact rational (determinant of
    /// the multiplication-by-x map).
    pub fn norm_abs(&self, x: &FieldElement) -> BigRational {
        let d = self.degree;
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut cur = x.clone();
        cols.push(cur.coeffs.clone());
        for _ in 1..d {
            cur = self.mul(&cur, &self.gen());
            cols.push(cur.coeffs.clone());
        }
        det_rational(&cols)
    }

    /// Trace of the multiplication-by-x map (exact).
    pub fn trace_abs(&self, x: &FieldElement) -> BigRational {
        let d = self.degree;
        let mut tr = BigRational::zero();
        let mut cur = x.clone();
        tr += &cur.coeffs[0];
        for i in 1..d {
            cur = self.mul(x, &self.basis_elem(i));
            tr += &cur.coeffs[i];
        }
        tr
    }

    fn basis_elem(&self, i: usize) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[i] = BigRational::one();
        FieldElement { coeffs }
    }

    /// Express a field element from its values under every embedding
    /// (solve the Vandermonde system, round to rationals, verify the claimed
    /// minimal-polynomial relations numerically). Returns None when the
    /// rounded candidate does not reproduce the targets.
    pub fn express(&self, targets: &[Complex64]) -> Option<FieldElement> {
        let d = self.degree;
        if targets.len() != d {
            return None;
        }
        let v = DMatrix::from_fn(d, d, |i, j| {
            let mut p = Complex64::new(1.0, 0.0);
            for _ in 0..j {
                p *= self.embeddings[i];
            }
            p
        });
        let rhs = nalgebra::DVector::from_iterator(d, targets.iter().cloned());
        let lu = v.lu();
        let sol = lu.solve(&rhs)?;
        let mut coeffs = Vec::with_capacity(d);
        for c in sol.iter() {
            if c.im.abs() > 1e-6 {
                return None;
            }
            coeffs.push(rational_from_f64(c.re, 1_000_000_000)?);
        }
        let cand = FieldElement { coeffs };
        // verify numerically against all targets at a tight tolerance
        for (j, t) in targets.iter().enumerate() {
            if (self.embed_at(&cand, j) - t).norm() > 1e-7 * (1.0 + t.norm()) {
                return None;
            }
        }
        Some(cand)
    }

    fn find_conj_image(&self) -> Result<Option<FieldElement>, NumFieldError> {
        if self.embeddings[0].im.abs() < 1e-12 && self.is_totally_real() {
            return Ok(None);
        }
        let targets: Vec<Complex64> = self.embeddings.iter().map(|r| r.conj()).collect();
        match self.express(&targets) {
            Some(img) => {
                // exact check: minimal polynomial must vanish on the image
                if !self.eval_min_poly(&img).is_zero() {
                    return Err(NumFieldError::NotInField);
                }
                Ok(Some(img))
            }
            None => Err(NumFieldError::NotInField),
        }
    }

    fn eval_min_poly(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in self.min_poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc.coeffs[0] += BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Complex conjugation as a field map (identity on totally real fields
    /// with a real distinguished embedding).
    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        match &self.conj_image {
            None => x.clone(),
            Some(img) => self.eval_poly_at(x, img),
        }
    }

    /// Evaluate the coordinate polynomial of x at the point y (used to apply
    /// generator-image maps).
    pub fn eval_poly_at(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in x.coeffs.iter().rev() {
            acc = self.mul(&acc, y);
            acc.coeffs[0] += c;
        }
        acc
    }
}

/// A field automorphism of a [`NumberField`] given by the image of the
/// generator. Construction verifies the image is a root of the minimal
/// polynomial, which makes the induced map a ring homomorphism fixing Q.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub generator_image: FieldElement,
}

impl Automorphism {
    pub fn new(field: &NumberField, generator_image: FieldElement) -> Result<Self, NumFieldError> {
        if generator_image.coeffs.len() != field.degree() {
            return Err(NumFieldError::FieldMismatch);
        }
        if !field.eval_min_poly(&generator_image).is_zero() {
            return Err(NumFieldError::NotAnAutomorphism);
        }
        Ok(Automorphism { generator_image })
    }

    pub fn identity(field: &NumberField) -> Self {
        Automorphism {
            generator_image: field.gen(),
        }
    }

    pub fn apply(&self, field: &NumberField, x: &FieldElement) -> Result<FieldElement, NumFieldError> {
        if x.coeffs.len() != field.degree() {
            return Err(NumFieldError::FieldMismatch);
        }
        Ok(field.eval_poly_at(x, &self.generator_image))
    }

    /// Multiplicative order of the automorphism (bounded by the degree).
    pub fn order(&self, field: &NumberField) -> usize {
        let gen = field.gen();
        let mut cur = self.generator_image.clone();
        let mut k = 1;
        while cur != gen && k <= field.degree() + 1 {
            cur = field.eval_poly_at(&cur, &self.generator_image);
            k += 1;
        }
        k
    }

    pub fn compose(&self, field: &NumberField, other: &Automorphism) -> Automorphism {
        Automorphism {
            generator_image: field.eval_poly_at(&other.generator_image, &self.generator_image),
        }
    }
}

/// Generator image for the real-cyclotomic automorphism
/// zeta + zeta^-1 -> zeta^g + zeta^-g expressed in the power basis.
pub fn cyclotomic_real_automorphism(
    field: &NumberField,
    p: u64,
    g: u64,
) -> Result<Automorphism, NumFieldError> {
    // pair up each embedding with its cosine index k
    let n = field.degree();
    let mut targets = vec![Complex64::new(0.0, 0.0); n];
    for (j, r) in field.embeddings().iter().enumerate() {
        let mut found = false;
        for k in 1..=(p - 1) / 2 {
            let c = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / p as f64).cos();
            if (r.re - c).abs() < 1e-8 && r.im.abs() < 1e-8 {
                let kg = (k * g) % p;
                let t = 2.0 * (2.0 * std::f64::consts::PI * kg as f64 / p as f64).cos();
                targets[j] = Complex64::new(t, 0.0);
                found = true;
                break;
            }
        }
        if !found {
            return Err(NumFieldError::RootAccuracy);
        }
    }
    let img = field.express(&targets).ok_or(NumFieldError::NotInField)?;
    Automorphism::new(field, img)
}

/// Smallest g >= 2 whose class generates (Z/p)^x / {+-1}.
pub fn real_cyclotomic_generator(p: u64) -> u64 {
    let n = (p - 1) / 2;
    'outer: for g in 2..p {
        // order of g in (Z/p)^x up to sign
        let mut acc = g % p;
        for k in 1..=n {
            if acc == 1 || acc == p - 1 {
                if k == n {
                    return g;
                }
                continue 'outer;
            }
            acc = acc * g % p;
        }
    }
    unreachable!("p must be an odd prime");
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Continued-fraction rational reconstruction with a denominator cap.
pub(crate) fn rational_from_f64(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e17 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a;
        if frac.abs() < 1e-13 * (1.0 + a.abs()) {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    let orig = if neg { -(x * 0.0) } else { 0.0 }; // silence
    let _ = orig;
    let val = BigRational::new(BigInt::from(if neg { -p1 } else { p1 }), BigInt::from(q1));
    let back = rational_to_f64(&val);
    let target = if neg { -1.0 } else { 1.0 };
    let _ = target;
    if (back.abs() - approx).abs() > 1e-6 * (1.0 + approx.abs()) {
        return None;
    }
    Some(val)
}

fn eval_int_poly(p: &[BigInt], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    }
    acc
}

/// All complex roots of a monic integer polynomial via companion-matrix
/// eigenvalues, polished with a few Newton steps.
pub(crate) fn poly_roots(p: &[BigInt]) -> Vec<Complex64> {
    let d = p.len() - 1;
    if d == 0 {
        return vec![];
    }
    let pf: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap()).collect();
    let companion = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -pf[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = companion.complex_eigenvalues();
    let dp: Vec<f64> = pf
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect();
    let evalp = |z: Complex64, c: &[f64]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in c.iter().rev() {
            acc = acc * z + Complex64::new(*v, 0.0);
        }
        acc
    };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..50 {
                let f = evalp(z, &pf);
                let df = evalp(z, &dp);
                if df.norm() < 1e-300 {
                    break;
                }
                let step = f / df;
                z -= step;
                if step.norm() < 1e-16 * (1.0 + z.norm()) {
                    break;
                }
            }
            // snap tiny imaginary parts of real roots
            if z.im.abs() < 1e-12 * (1.0 + z.re.abs()) {
                z.im = 0.0;
            }
            z
        })
        .collect()
}

/// Determinant of a square rational matrix given as columns.
pub(crate) fn det_rational(cols: &[Vec<BigRational>]) -> BigRational {
    let n = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        // pivot
        let mut piv = k;
        while piv < n && m[piv][k].is_zero() {
            piv += 1;
        }
        if piv == n {
            return BigRational::zero();
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].recip();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] * &inv;
            for j in k..n {
                let sub = &factor * &m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Certify irreducibility over Q of a monic integer polynomial by combining
/// factor-degree patterns mod several primes. Conservative: errs on the side
/// of `IrreducibilityUnknown`.
fn verify_irreducible(p: &[BigInt]) -> Result<(), NumFieldError> {
    let deg = p.len() - 1;
    if deg == 1 {
        return Ok(());
    }
    let primes: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    // possible degrees of a proper factor, as a bitmask over 0..=deg
    let mut possible: u64 = (1u64 << (deg + 1)) - 1;
    for &q in &primes {
        let fq: Vec<u64> = p
            .iter()
            .map(|c| {
                let m = c.mod_floor(&BigInt::from(q));
                m.to_u64().unwrap()
            })
            .collect();
        let mut fq = fq;
        poly::fq_trim(&mut fq);
        if poly::fq_deg(&fq) != deg {
            continue; // leading coefficient vanished (cannot happen: monic)
        }
        let der = poly::fq_deriv(&fq, q);
        if poly::fq_is_zero(&der) {
            continue;
        }
        let g = poly::fq_gcd(&fq, &der, q);
        if poly::fq_deg(&g) != 0 {
            continue; // not square-free mod q, skip
        }
        let degrees = residue::ddf_degrees(&fq, q);
        // subset sums of irreducible factor degrees
        let mut sums: u64 = 1; // empty subset
        for (d, count) in degrees {
            for _ in 0..count {
                let mut next = sums;
                for s in 0..=deg {
                    if sums >> s & 1 == 1 && s + d <= deg {
                        next |= 1 << (s + d);
                    }
                }
                sums = next;
            }
        }
        possible &= sums;
        // irreducible once only the trivial degrees remain
        let trivial: u64 = 1 | (1 << deg);
        if possible & !trivial == 0 {
            return Ok(());
        }
    }
    Err(NumFieldError::IrreducibilityUnknown)
}

use num::Integer as NumInteger;
trait ModFloor {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}
impl ModFloor for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        NumInteger::mod_floor(self, m)
    }
}

/// Tower-level selector for field norms.
pub enum NormLevel<'a> {
    /// Norm from the top quadratic layer down one step: x * sigma_top(x).
    TopQuadratic,
    /// Norm along a cyclic automorphism orbit of the declared order.
    Cyclic { map: &'a TowerMap, order: usize },
    /// Norm down to Q (through every layer and the base).
    Absolute,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_field_mul_matches_hand_expansion() {
        // (1+sqrt5)*(1+sqrt5) = 6 + 2 sqrt5
        let k = NumberField::quadratic(5).unwrap();
        let x = k.element(&[1, 1]);
        let y = k.arith(&x, &x, FeOp::Mul).unwrap();
        assert_eq!(y, k.element(&[6, 2]));
    }

    #[test]
    fn inverse_roundtrip_random() {
        let k = NumberField::cyclotomic_real(7).unwrap();
        let mut lcg = 12345u64;
        for _ in 0..100 {
            let mut coeffs = [0i64; 3];
            for c in coeffs.iter_mut() {
                lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *c = ((lcg >> 33) % 19) as i64 - 9;
            }
            let x = k.element(&coeffs);
            if x.is_zero() {
                continue;
            }
            let prod = k.arith(&x, &x, FeOp::InvMul).unwrap();
            assert_eq!(prod, k.one());
        }
    }

    #[test]
    fn real_cyclotomic_minpoly_of_deg3() {
        // xi = zeta7 + zeta7^-1 has x^3 + x^2 - 2x - 1;
        // oracle: numerically expand prod(x - 2cos(2 pi k/7)) and round.
        let k = NumberField::cyclotomic_real(7).unwrap();
        let mp: Vec<i64> = k
            .min_poly()
            .iter()
            .map(|c| c.to_f64().unwrap() as i64)
            .collect();
        assert_eq!(mp, vec![-1, -2, 1, 1]);
        // xi * xi^2 reduces via x^3 = -x^2 + 2x + 1
        let xi = k.gen();
        let xi2 = k.mul(&xi, &xi);
        let xi3 = k.mul(&xi, &xi2);
        assert_eq!(xi3, k.element(&[1, 2, -1]));
    }

    #[test]
    fn absolute_norm_quadratic() {
        // Nm(1+sqrt5) = (1+sqrt5)(1-sqrt5) = -4
        let k = NumberField::quadratic(5).unwrap();
        let x = k.element(&[1, 1]);
        assert_eq!(
            k.norm_abs(&x),
            BigRational::from_integer(BigInt::from(-4))
        );
        assert_eq!(k.norm_abs(&k.one()), BigRational::one());
    }

    #[test]
    fn norm_multiplicative_random_pairs() {
        let k = NumberField::cyclotomic_real(7).unwrap();
        let mut lcg = 99u64;
        let mut rnd = || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((lcg >> 33) % 9) as i64 - 4
        };
        for _ in 0..100 {
            let x = k.element(&[rnd(), rnd(), rnd()]);
            let y = k.element(&[rnd(), rnd(), rnd()]);
            let lhs = k.norm_abs(&k.mul(&x, &y));
            let rhs = k.norm_abs(&x) * k.norm_abs(&y);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn automorphism_orbit_orders_match_tower_degrees() {
        // eta: xi -> xi^2 - 2 has order 3 on Q(zeta7+zeta7^-1)
        let k = NumberField::cyclotomic_real(7).unwrap();
        let eta = Automorphism::new(&k, k.element(&[-2, 0, 1])).unwrap();
        assert_eq!(eta.order(&k), 3);
        // on Q(zeta11+zeta11^-1) it has order 5
        let k11 = NumberField::cyclotomic_real(11).unwrap();
        let eta11 = Automorphism::new(&k11, k11.element(&[-2, 0, 1, 0, 0])).unwrap();
        assert_eq!(eta11.order(&k11), 5);
        // zeta5 -> zeta5^2 has order 4 on Q(zeta5)
        let k5 = NumberField::cyclotomic(5).unwrap();
        let eta5 = Automorphism::new(&k5, k5.element(&[0, 0, 1, 0])).unwrap();
        assert_eq!(eta5.order(&k5), 4);
        // sqrt5 -> -sqrt5 has order 2
        let kq = NumberField::quadratic(5).unwrap();
        let s = Automorphism::new(&kq, kq.element(&[0, -1])).unwrap();
        assert_eq!(s.order(&kq), 2);
    }

    #[test]
    fn automorphism_fixes_rationals() {
        let k = NumberField::cyclotomic_real(7).unwrap();
        let eta = Automorphism::new(&k, k.element(&[-2, 0, 1])).unwrap();
        let five = k.from_int(5);
        assert_eq!(eta.apply(&k, &five).unwrap(), five);
    }

    #[test]
    fn eta_orbit_closure_on_generator() {
        // eta(eta(eta(xi))) = xi exactly
        let k = NumberField::cyclotomic_real(7).unwrap();
        let eta = Automorphism::new(&k, k.element(&[-2, 0, 1])).unwrap();
        let mut x = k.gen();
        for _ in 0..3 {
            x = eta.apply(&k, &x).unwrap();
        }
        assert_eq!(x, k.gen());
    }

    #[test]
    fn conjugation_on_cyclotomic_base() {
        let k5 = NumberField::cyclotomic(5).unwrap();
        let z = k5.gen();
        let zc = k5.conj(&z);
        // conj(zeta5) = zeta5^4 = -1 - z - z^2 - z^3
        assert_eq!(zc, k5.element(&[-1, -1, -1, -1]));
        let prod = k5.mul(&z, &zc);
        assert_eq!(prod, k5.one());
    }

    #[test]
    fn embedding_consistency_mul() {
        let k = NumberField::cyclotomic_real(11).unwrap();
        let x = k.element(&[3, -2, 0, 1, 5]);
        let y = k.element(&[-7, 1, 4, 0, 2]);
        let lhs = k.embed(&k.mul(&x, &y));
        let rhs = k.embed(&x) * k.embed(&y);
        assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn rejects_reducible_minpoly() {
        // x^2 - 1 = (x-1)(x+1)
        let r = NumberField::new(vec![-1, 0, 1], "bad", Complex64::new(1.0, 0.0));
        assert!(r.is_err());
    }

    #[test]
    fn division_by_zero_reported() {
        let k = NumberField::quadratic(5).unwrap();
        let x = k.one();
        let z = k.zero();
        assert!(matches!(
            k.arith(&x, &z, FeOp::InvMul),
            Err(NumFieldError::DivisionByZero)
        ));
    }
}
