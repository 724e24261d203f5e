//! Archimedean t-norms, t-conorms and strict negations.
//!
//! A continuous Archimedean t-norm is represented through an additive
//! generator `g : [0,1] -> [0,inf]`, strictly decreasing with `g(1) = 0`:
//!
//! ```text
//! T(x, y) = g^[-1](g(x) + g(y))
//! ```
//!
//! where `g^[-1]` is the pseudo-inverse, clamped to `0` above `g(0)`. The
//! multiplicative generator is `h = exp(-g)`. For strict norms (`g(0) = inf`,
//! `h(0) = 0`) `h` also fixes the normal triple `(S, T, n)`:
//!
//! ```text
//! S(x, y) = h^[-1](h(x) + h(y))
//! T(x, y) = h^-1(h(x) h(y))
//! n(x)    = h^-1(1 - h(x))
//! ```
//!
//! The additive generator is unique only up to a positive factor. The factor
//! does not change `T`, but it does change `h` and therefore `S`, `n` and the
//! estimators built on `h`; `power:<a>` selects `h(x) = x^a`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Finite stand-in for `g(0) = +inf` on strict generators.
///
/// Never compare against this value directly; use
/// [`GeneratorSpec::is_strict`] and [`GeneratorSpec::at_zero`].
pub const UNBOUNDED: f64 = 1e300;

const INVERSE_TOL: f64 = 1e-12;
const INVERSE_MAX_ITER: usize = 200;
const VALIDATION_POINTS: usize = 1000;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Form {
    /// `g(x) = -ln x`, `h(x) = x`.
    NegLog,
    /// `g(x) = 1 - x`.
    Linear,
    Custom {
        g: RealFn,
        strict: bool,
    },
}

/// Value of a generator at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorBound {
    Unbounded,
    Finite(f64),
}

/// Additive generator of a continuous Archimedean t-norm.
#[derive(Clone)]
pub struct GeneratorSpec {
    form: Form,
    scale: f64,
}

impl GeneratorSpec {
    /// `g(x) = -ln x`, generating the product t-norm.
    pub fn product() -> Self {
        GeneratorSpec {
            form: Form::NegLog,
            scale: 1.0,
        }
    }

    /// `g(x) = 1 - x`, generating the Łukasiewicz t-norm `max(x + y - 1, 0)`.
    pub fn lukasiewicz() -> Self {
        GeneratorSpec {
            form: Form::Linear,
            scale: 1.0,
        }
    }

    /// `g(x) = -a ln x`, i.e. multiplicative generator `h(x) = x^a`.
    ///
    /// The t-norm is still the product; the triple and the estimators differ.
    pub fn power(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain("power exponent", a));
        }
        Ok(GeneratorSpec {
            form: Form::NegLog,
            scale: a,
        })
    }

    /// A user-supplied generator, inverted numerically by bisection.
    ///
    /// `g` must be strictly decreasing on `[0, 1]` with `g(1) = 0`. When
    /// `strict` is set, `g(0)` is taken to be `+inf` and `g` is never called
    /// at zero; otherwise `g(0)` must be finite.
    pub fn custom<F>(g: F, strict: bool) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if libm::fabs(g(1.0)) > 1e-12 {
            return Err(Error::InvalidGenerator("g(1) must be 0"));
        }
        let start = usize::from(strict);
        let mut prev = f64::INFINITY;
        for k in start..=VALIDATION_POINTS {
            let v = g(k as f64 / VALIDATION_POINTS as f64);
            if !v.is_finite() {
                return Err(Error::InvalidGenerator("g must be finite on (0, 1]"));
            }
            if v >= prev {
                return Err(Error::InvalidGenerator("g must be strictly decreasing"));
            }
            prev = v;
        }
        Ok(GeneratorSpec {
            form: Form::Custom {
                g: Arc::new(g),
                strict,
            },
            scale: 1.0,
        })
    }

    /// Same t-norm, generator multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::domain("generator scale", c));
        }
        Ok(GeneratorSpec {
            form: self.form.clone(),
            scale: self.scale * c,
        })
    }

    pub fn is_strict(&self) -> bool {
        match &self.form {
            Form::NegLog => true,
            Form::Linear => false,
            Form::Custom { strict, .. } => *strict,
        }
    }

    pub fn at_zero(&self) -> GeneratorBound {
        if self.is_strict() {
            GeneratorBound::Unbounded
        } else {
            GeneratorBound::Finite(self.eval(0.0))
        }
    }

    /// `g(x)`. Strict generators return [`UNBOUNDED`] at `x = 0`.
    pub fn eval(&self, x: f64) -> f64 {
        let raw = match &self.form {
            Form::NegLog => {
                if x <= 0.0 {
                    return UNBOUNDED;
                }
                -libm::log(x)
            }
            Form::Linear => 1.0 - x,
            Form::Custom { g, strict } => {
                if *strict && x <= 0.0 {
                    return UNBOUNDED;
                }
                g(x)
            }
        };
        let v = self.scale * raw;
        if v > UNBOUNDED {
            UNBOUNDED
        } else {
            v
        }
    }

    fn exceeds_zero_value(&self, y: f64) -> bool {
        match self.at_zero() {
            GeneratorBound::Unbounded => y >= UNBOUNDED,
            GeneratorBound::Finite(g0) => y >= g0,
        }
    }

    /// Pseudo-inverse `g^[-1](y)`: `g^-1(y)` on `[0, g(0)]`, `0` above.
    pub fn pseudo_inverse(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 1.0;
        }
        if self.exceeds_zero_value(y) {
            return 0.0;
        }
        match &self.form {
            Form::NegLog => libm::exp(-y / self.scale),
            Form::Linear => 1.0 - y / self.scale,
            Form::Custom { .. } => self.bisect(y),
        }
    }

    // g is decreasing: g(lo) >= y >= g(hi) is kept throughout.
    fn bisect(&self, y: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..INVERSE_MAX_ITER {
            if hi - lo <= INVERSE_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) > y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Multiplicative generator `h(x) = exp(-g(x))`.
    pub fn multiplicative(&self, x: f64) -> f64 {
        match &self.form {
            Form::NegLog => {
                if x <= 0.0 {
                    0.0
                } else if self.scale == 1.0 {
                    x
                } else {
                    libm::pow(x, self.scale)
                }
            }
            _ => {
                if self.is_strict() && x <= 0.0 {
                    0.0
                } else {
                    libm::exp(-self.eval(x))
                }
            }
        }
    }

    /// Pseudo-inverse of `h`: `h^-1(y)` on `[h(0), 1]`, `0` below, `1` above.
    pub fn multiplicative_inverse(&self, y: f64) -> f64 {
        if y >= 1.0 {
            return 1.0;
        }
        if y <= self.multiplicative(0.0) {
            return 0.0;
        }
        match &self.form {
            Form::NegLog if self.scale == 1.0 => y,
            Form::NegLog => libm::pow(y, 1.0 / self.scale),
            _ => self.pseudo_inverse(-libm::log(y)),
        }
    }

    fn label(&self) -> String {
        match &self.form {
            Form::NegLog if self.scale == 1.0 => "product".to_string(),
            Form::NegLog => format!("power:{}", self.scale),
            Form::Linear if self.scale == 1.0 => "lukasiewicz".to_string(),
            Form::Linear => format!("lukasiewicz*{}", self.scale),
            Form::Custom { .. } => "generic".to_string(),
        }
    }
}

impl fmt::Debug for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSpec")
            .field("form", &self.label())
            .field("scale", &self.scale)
            .field("strict", &self.is_strict())
            .finish()
    }
}

/// Which t-norm (and derived t-conorm) to use.
#[derive(Clone, Debug)]
pub enum TNormKind {
    Product,
    Lukasiewicz,
    /// Not Archimedean; has no generator.
    Minimum,
    Generic(GeneratorSpec),
}

impl TNormKind {
    pub fn generator(&self) -> Option<GeneratorSpec> {
        match self {
            TNormKind::Product => Some(GeneratorSpec::product()),
            TNormKind::Lukasiewicz => Some(GeneratorSpec::lukasiewicz()),
            TNormKind::Minimum => None,
            TNormKind::Generic(g) => Some(g.clone()),
        }
    }

    pub fn is_archimedean(&self) -> bool {
        !matches!(self, TNormKind::Minimum)
    }

    pub fn is_strict(&self) -> bool {
        self.generator().is_some_and(|g| g.is_strict())
    }

    /// Binary t-norm, no range checks.
    pub fn t(&self, x: f64, y: f64) -> f64 {
        self.t_all(&[x, y])
    }

    /// n-ary t-norm folded in generator space: one pseudo-inverse of the
    /// summed generator values.
    pub fn t_all(&self, xs: &[f64]) -> f64 {
        match self.generator() {
            None => xs.iter().copied().fold(1.0, f64::min),
            Some(g) => {
                let total: f64 = xs.iter().map(|&x| g.eval(x)).sum();
                g.pseudo_inverse(total)
            }
        }
    }

    /// Binary t-conorm, no range checks.
    pub fn s(&self, x: f64, y: f64) -> f64 {
        self.s_all(&[x, y])
    }

    /// n-ary t-conorm.
    ///
    /// Strict kinds use the conorm of their normal triple (increasing
    /// generator `h`); non-strict kinds use the dual generator `g(1 - x)`;
    /// minimum pairs with maximum.
    pub fn s_all(&self, xs: &[f64]) -> f64 {
        match self.generator() {
            None => xs.iter().copied().fold(0.0, f64::max),
            Some(g) if g.is_strict() => {
                let total: f64 = xs.iter().map(|&x| g.multiplicative(x)).sum();
                g.multiplicative_inverse(total)
            }
            Some(g) => {
                let total: f64 = xs.iter().map(|&x| g.eval(1.0 - x)).sum();
                1.0 - g.pseudo_inverse(total)
            }
        }
    }
}

fn check_unit_values(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Empty("argument list"));
    }
    match xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(&x) => Err(Error::domain("t-norm argument", x)),
        None => Ok(()),
    }
}

/// `T(x_1, ..., x_n)`, validating that every argument lies in `[0, 1]`.
pub fn tnorm_eval(kind: &TNormKind, xs: &[f64]) -> Result<f64> {
    check_unit_values(xs)?;
    Ok(kind.t_all(xs))
}

/// `S(x_1, ..., x_n)`, validating that every argument lies in `[0, 1]`.
pub fn tconorm_eval(kind: &TNormKind, xs: &[f64]) -> Result<f64> {
    check_unit_values(xs)?;
    Ok(kind.s_all(xs))
}

impl fmt::Display for TNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TNormKind::Product => f.write_str("product"),
            TNormKind::Lukasiewicz => f.write_str("lukasiewicz"),
            TNormKind::Minimum => f.write_str("minimum"),
            TNormKind::Generic(g) => f.write_str(&g.label()),
        }
    }
}

impl FromStr for TNormKind {
    type Err = Error;

    /// `product`, `lukasiewicz`, `minimum` or `power:<a>` with `a > 0`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "product" => Ok(TNormKind::Product),
            "lukasiewicz" => Ok(TNormKind::Lukasiewicz),
            "minimum" => Ok(TNormKind::Minimum),
            other => {
                let exponent = other
                    .strip_prefix("power:")
                    .and_then(|a| a.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::Parse(other.to_string()))?;
                Ok(TNormKind::Generic(GeneratorSpec::power(exponent)?))
            }
        }
    }
}

/// Continuous normal triple `(S, T, n)` generated by a strictly increasing
/// `h` with `h(0) = 0`, `h(1) = 1`.
#[derive(Clone, Debug)]
pub struct NormalTriple {
    generator: GeneratorSpec,
}

impl NormalTriple {
    /// `h = id`: product t-norm, bounded sum, `n(x) = 1 - x`.
    pub fn identity() -> Self {
        NormalTriple {
            generator: GeneratorSpec::product(),
        }
    }

    pub fn from_generator(generator: GeneratorSpec) -> Result<Self> {
        if !generator.is_strict() {
            return Err(Error::NotStrict(generator.label()));
        }
        Ok(NormalTriple { generator })
    }

    pub fn from_kind(kind: &TNormKind) -> Result<Self> {
        match kind.generator() {
            Some(g) => Self::from_generator(g),
            None => Err(Error::NotStrict(kind.to_string())),
        }
    }

    /// Builds the triple from an explicit multiplicative generator.
    pub fn from_multiplicative<F>(h: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if libm::fabs(h(0.0)) > 1e-12 || libm::fabs(h(1.0) - 1.0) > 1e-12 {
            return Err(Error::InvalidGenerator(
                "h must satisfy h(0) = 0 and h(1) = 1",
            ));
        }
        let mut prev = h(0.0);
        for k in 1..=VALIDATION_POINTS {
            let v = h(k as f64 / VALIDATION_POINTS as f64);
            if !(v > prev) {
                return Err(Error::InvalidGenerator("h must be strictly increasing"));
            }
            prev = v;
        }
        let generator = GeneratorSpec::custom(move |x| -libm::log(h(x).min(1.0)), true)?;
        Ok(NormalTriple { generator })
    }

    pub fn generator(&self) -> &GeneratorSpec {
        &self.generator
    }

    pub fn h(&self, x: f64) -> f64 {
        self.generator.multiplicative(x)
    }

    pub fn h_inv(&self, y: f64) -> f64 {
        self.generator.multiplicative_inverse(y)
    }

    pub fn tnorm(&self, x: f64, y: f64) -> f64 {
        self.h_inv(self.h(x) * self.h(y))
    }

    pub fn conorm(&self, x: f64, y: f64) -> f64 {
        self.h_inv(self.h(x) + self.h(y))
    }

    pub fn negation(&self, x: f64) -> f64 {
        self.h_inv(1.0 - self.h(x))
    }

    /// Necessity-like value of the complement of an event with possibility
    /// `pi`: `n(pi)`.
    pub fn necessity(&self, pi: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&pi) {
            return Err(Error::domain("possibility", pi));
        }
        Ok(self.negation(pi))
    }

    /// Pointwise normalization `h^-1(h(value) / h(peak))` of a membership
    /// value whose set has supremum `peak`.
    pub fn normalize_value(&self, value: f64, peak: f64) -> Result<f64> {
        if !(peak > 0.0 && peak <= 1.0) {
            return Err(Error::Degenerate("peak membership must lie in (0, 1]"));
        }
        if !(0.0..=peak).contains(&value) {
            return Err(Error::domain("membership value", value));
        }
        Ok(self.h_inv(self.h(value) / self.h(peak)))
    }
}
