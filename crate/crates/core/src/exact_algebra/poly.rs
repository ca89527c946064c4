use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::ExactScalar;

/// Dense univariate polynomial in `alpha` with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `alpha^k`. The vector never ends in a
/// zero, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlphaPoly {
    coeffs: Vec<ExactScalar>,
}

impl AlphaPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        AlphaPoly { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        AlphaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * alpha^k`
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `1 - alpha`
    pub fn one_minus_alpha() -> Self {
        Self::from_integers([1, -1])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, alpha: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * alpha + c)
    }

    pub fn eval_f64(&self, alpha: f64) -> f64 {
        use super::scalar::rational_to_f64;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * alpha + rational_to_f64(c))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlphaPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `alpha^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        AlphaPoly { coeffs }
    }

    /// Divides by `alpha^k`, or returns `None` if a coefficient below
    /// `alpha^k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(AlphaPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Euclidean division over the rationals: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        let lead_inv = lead.recip();
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactScalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly, otherwise `None`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if let (Some(num), Some(den)) = (self.integer_coeffs(), divisor.integer_coeffs()) {
            if let Some(q) = int_exact_div(num, &den) {
                return Some(Self::from_big_integers(q));
            }
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn from_big_integers(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

/// Long division over the integers. `None` if some step leaves a remainder
/// in the leading coefficient or the final remainder is nonzero; the caller
/// then falls back to rational division.
fn int_exact_div(mut rem: Vec<BigInt>, divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    let lead = divisor.last()?;
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < divisor.len() {
        return None;
    }
    let dd = divisor.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        if rem[k + dd].is_zero() {
            continue;
        }
        let (c, r) = num_integer::Integer::div_rem(&rem[k + dd], lead);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in divisor.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The operator `alpha d/dalpha`: coefficient `k` is multiplied by `k`.
pub fn alpha_derivative_operator(p: &AlphaPoly) -> AlphaPoly {
    AlphaPoly::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect(),
    )
}

impl<'a> Add<&'a AlphaPoly> for &'a AlphaPoly {
    type Output = AlphaPoly;
    fn add(self, rhs: &AlphaPoly) -> AlphaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        AlphaPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a AlphaPoly> for &'a AlphaPoly {
    type Output = AlphaPoly;
    fn sub(self, rhs: &AlphaPoly) -> AlphaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        AlphaPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a AlphaPoly> for &'a AlphaPoly {
    type Output = AlphaPoly;
    fn mul(self, rhs: &AlphaPoly) -> AlphaPoly {
        if self.is_zero() || rhs.is_zero() {
            return AlphaPoly::zero();
        }
        if let (Some(a), Some(b)) = (self.integer_coeffs(), rhs.integer_coeffs()) {
            return AlphaPoly::from_big_integers(int_mul(&a, &b));
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        AlphaPoly::new(out)
    }
}

impl Neg for &AlphaPoly {
    type Output = AlphaPoly;
    fn neg(self) -> AlphaPoly {
        AlphaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<AlphaPoly> for AlphaPoly {
            type Output = AlphaPoly;
            fn $method(self, rhs: AlphaPoly) -> AlphaPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "a")?,
                (1, false) => write!(f, "{mag}*a")?,
                (_, true) => write!(f, "a^{k}")?,
                (_, false) => write!(f, "{mag}*a^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> AlphaPoly {
        AlphaPoly::from_integers(c.iter().copied())
    }

    #[test]
    fn derivative_annihilates_constants() {
        assert!(alpha_derivative_operator(&AlphaPoly::one()).is_zero());
    }

    #[test]
    fn monomials_are_eigenfunctions() {
        for r in 0..7 {
            let m = AlphaPoly::monomial(ExactScalar::one(), r);
            let expected = m.scale(&BigRational::from_integer((r as i64).into()));
            assert_eq!(alpha_derivative_operator(&m), expected);
        }
    }

    #[test]
    fn toda_left_side_for_one_minus_alpha_squared() {
        // (D^2 f) f - (D f)^2 with f = 1 - a^2 equals -4 a^2.
        let f = p(&[1, 0, -1]);
        let df = alpha_derivative_operator(&f);
        let ddf = alpha_derivative_operator(&df);
        let lhs = &(&ddf * &f) - &(&df * &df);
        assert_eq!(lhs, p(&[0, 0, -4]));
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), 1);
        assert!(p(&[0, 0]).is_zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_and_shifts() {
        let f = p(&[1, -1]).pow(4);
        let g = p(&[1, -1]);
        assert_eq!(f.exact_div(&g).unwrap(), g.pow(3));
        assert!(p(&[1, 0, 1]).exact_div(&g).is_none());
        let shifted = f.shift_up(3);
        assert_eq!(shifted.shift_down(3).unwrap(), f);
        assert!(shifted.shift_down(4).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -1]).to_string(), "1 - a^2");
        assert_eq!(p(&[0, 1, 2]).to_string(), "a + 2*a^2");
        assert_eq!(AlphaPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = AlphaPoly> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(AlphaPoly::from_integers)
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = alpha_derivative_operator(&(&a * &b));
            let rhs = &(&alpha_derivative_operator(&a) * &b) + &(&a * &alpha_derivative_operator(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b), Some(a.clone()));
            let half = b.scale(&BigRational::new(1.into(), 2.into()));
            prop_assert_eq!((&a * &half).exact_div(&half), Some(a));
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
            prop_assert_eq!(&(&q * &b) + &r, a);
        }

        #[test]
        fn evaluation_is_a_ring_morphism(a in arb_poly(), b in arb_poly(), n in -9i64..9, d in 1i64..9) {
            let x = BigRational::new(n.into(), d.into());
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
        }
    }
}
