use core::fmt;

/// Errors produced by geometric constructions and checks.
#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// Two vectors (or objects) live in different dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Only H² and H³ (vectors of length 3 and 4) are supported.
    UnsupportedDimension(usize),
    /// Curvature radius must be positive and finite.
    InvalidCurvature(f64),
    /// Objects built for different curvature radii were combined.
    CurvatureMismatch { left: f64, right: f64 },
    /// A vector failed the upper-sheet hyperboloid test.
    OffSheet { residual: f64 },
    /// A vector was expected to be null (lightlike) and future pointing.
    NotNull { residual: f64 },
    /// A tangent vector failed orthogonality or unit length.
    InvalidTangent { residual: f64 },
    /// A point does not lie on the surface it was claimed to lie on.
    OffSurface { residual: f64 },
    /// The construction has no unique answer for these inputs.
    Degenerate(&'static str),
    /// A numeric argument is outside its allowed range.
    OutOfRange { what: &'static str, value: f64 },
    /// Wrong geometry tag or wrong triangle shape for an identity set.
    WrongGeometry(&'static str),
    /// Units of two maps do not line up for composition.
    UnitMismatch { expected: &'static str, found: &'static str },
    /// Lookup of a named object failed.
    NotFound,
    /// A figure's embedded check failed before emission.
    Validation { check: &'static str, residual: f64 },
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            GeomError::UnsupportedDimension(n) => {
                write!(f, "unsupported vector length {n} (expected 3 or 4)")
            }
            GeomError::InvalidCurvature(r) => write!(f, "invalid curvature radius {r}"),
            GeomError::CurvatureMismatch { left, right } => {
                write!(f, "curvature mismatch: {left} vs {right}")
            }
            GeomError::OffSheet { residual } => {
                write!(f, "point is off the hyperboloid sheet (residual {residual:e})")
            }
            GeomError::NotNull { residual } => {
                write!(f, "vector is not a future null direction (residual {residual:e})")
            }
            GeomError::InvalidTangent { residual } => {
                write!(f, "invalid unit tangent (residual {residual:e})")
            }
            GeomError::OffSurface { residual } => {
                write!(f, "point is off the surface (residual {residual:e})")
            }
            GeomError::Degenerate(what) => write!(f, "degenerate configuration: {what}"),
            GeomError::OutOfRange { what, value } => write!(f, "{what} out of range: {value}"),
            GeomError::WrongGeometry(what) => write!(f, "wrong geometry: {what}"),
            GeomError::UnitMismatch { expected, found } => {
                write!(f, "unit mismatch: expected {expected}, found {found}")
            }
            GeomError::NotFound => write!(f, "not found"),
            GeomError::Validation { check, residual } => {
                write!(f, "figure check {check} failed (residual {residual:e})")
            }
        }
    }
}

impl core::error::Error for GeomError {}

pub type Result<T> = core::result::Result<T, GeomError>;
