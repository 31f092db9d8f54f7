//! Integration measures and their text form, e.g. `U(d)`, `Sp(6)`, `Stiefel(d,2)`.

use alloc::string::{String, ToString};
use core::fmt;

use crate::error::{Error, Result};
use crate::weingarten::DimMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    U,
    SU,
    O,
    Sp,
    CUE,
    COE,
    CSE,
    GUE,
    GOE,
    GSE,
    GinUE,
    GinOE,
    GinSE,
    Perm,
    CPerm,
    DiagU,
    Psi,
    Stiefel,
    Design,
}

impl Family {
    pub const ALL: [Family; 19] = [
        Family::U,
        Family::SU,
        Family::O,
        Family::Sp,
        Family::CUE,
        Family::COE,
        Family::CSE,
        Family::GUE,
        Family::GOE,
        Family::GSE,
        Family::GinUE,
        Family::GinOE,
        Family::GinSE,
        Family::Perm,
        Family::CPerm,
        Family::DiagU,
        Family::Psi,
        Family::Stiefel,
        Family::Design,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::U => "U",
            Family::SU => "SU",
            Family::O => "O",
            Family::Sp => "Sp",
            Family::CUE => "CUE",
            Family::COE => "COE",
            Family::CSE => "CSE",
            Family::GUE => "GUE",
            Family::GOE => "GOE",
            Family::GSE => "GSE",
            Family::GinUE => "GinUE",
            Family::GinOE => "GinOE",
            Family::GinSE => "GinSE",
            Family::Perm => "Perm",
            Family::CPerm => "CPerm",
            Family::DiagU => "DiagU",
            Family::Psi => "Psi",
            Family::Stiefel => "Stiefel",
            Family::Design => "Design",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    /// Symbol the random matrix goes by when the caller does not choose one.
    pub fn default_symbol(self) -> &'static str {
        match self {
            Family::U | Family::SU | Family::CUE | Family::Design => "U",
            Family::O => "O",
            Family::Sp => "Sp",
            Family::COE | Family::CSE => "S",
            Family::Perm => "P",
            Family::CPerm => "Y",
            Family::DiagU => "D",
            Family::Psi => "psi",
            Family::Stiefel => "V",
            Family::GUE | Family::GOE | Family::GSE => "H",
            Family::GinUE | Family::GinOE | Family::GinSE => "G",
        }
    }

    /// Families whose concrete dimension must be even.
    pub fn needs_even_dim(self) -> bool {
        matches!(self, Family::Sp | Family::CSE | Family::GSE | Family::GinSE)
    }

    /// Entries are complex, so `conj` is meaningful.
    pub fn is_complex(self) -> bool {
        !matches!(self, Family::O | Family::GOE | Family::GinOE | Family::Perm | Family::CPerm)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Matrix dimension: a named symbol or a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Symbolic(String),
    Concrete(i64),
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Symbolic(s) => f.write_str(s),
            Dim::Concrete(n) => write!(f, "{}", n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureSpec {
    pub family: Family,
    pub dim: Dim,
    /// Stiefel width `k` or design order `t`.
    pub extra: Option<usize>,
}

impl MeasureSpec {
    pub fn new(family: Family, dim: Dim, extra: Option<usize>) -> Result<Self> {
        let spec = MeasureSpec { family, dim, extra };
        spec.validate()?;
        Ok(spec)
    }

    pub fn symbolic(family: Family) -> Self {
        MeasureSpec { family, dim: Dim::Symbolic("d".into()), extra: None }
    }

    pub fn concrete(family: Family, n: i64) -> Result<Self> {
        Self::new(family, Dim::Concrete(n), None)
    }

    pub fn validate(&self) -> Result<()> {
        if let Dim::Concrete(n) = self.dim {
            if n < 1 {
                return Err(Error::InvalidDimension(alloc::format!("{}: dimension must be positive, got {}", self.family, n)));
            }
            if self.family.needs_even_dim() && n % 2 != 0 {
                return Err(Error::InvalidDimension(alloc::format!(
                    "{}: dimensions must be even, got {}",
                    self.family,
                    n
                )));
            }
        }
        match (self.family, self.extra) {
            (Family::Stiefel, None) => Err(Error::Dispatch("Stiefel needs a width: Stiefel(d,k)".into())),
            (Family::Stiefel, Some(0)) => Err(Error::InvalidInput("Stiefel width must be at least 1".into())),
            (Family::Stiefel, Some(k)) => match self.dim {
                Dim::Concrete(n) if k as i64 > n => Err(Error::InvalidInput(alloc::format!(
                    "Stiefel width {} exceeds the dimension {}",
                    k,
                    n
                ))),
                _ => Ok(()),
            },
            (Family::Design, None) => Err(Error::Dispatch("Design needs an order: Design(d,t)".into())),
            (Family::Design, Some(0)) => Err(Error::InvalidInput("design order t must be at least 1".into())),
            (Family::Design, Some(_)) => Ok(()),
            (f, Some(_)) => Err(Error::Dispatch(alloc::format!("{} takes no extra parameter", f))),
            (_, None) => Ok(()),
        }
    }

    pub fn mode(&self) -> DimMode {
        match self.dim {
            Dim::Symbolic(_) => DimMode::Symbolic,
            Dim::Concrete(n) => DimMode::Concrete(n),
        }
    }

    /// Name used for the dimension in rendered output.
    pub fn dim_symbol(&self) -> &str {
        match &self.dim {
            Dim::Symbolic(s) => s,
            Dim::Concrete(_) => "d",
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.dim, Dim::Symbolic(_))
    }

    /// Same measure with a symbolic dimension named `symbol`.
    pub fn with_symbolic_dim(&self, symbol: &str) -> Self {
        MeasureSpec { family: self.family, dim: Dim::Symbolic(symbol.into()), extra: self.extra }
    }

    /// Parse `Family(dim)` or `Family(dim,extra)`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Dispatch(alloc::format!("cannot parse measure `{}`: {}", text.trim(), m));
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| bad("expected `Family(dim)`"))?;
        let body = t[open + 1..].strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let fam_name = t[..open].trim();
        let family = Family::from_name(fam_name).ok_or_else(|| bad("unknown family"))?;
        let mut args = body.split(',').map(str::trim);
        let dim_s = args.next().filter(|s| !s.is_empty()).ok_or_else(|| bad("missing dimension"))?;
        let dim = if dim_s.chars().all(|c| c.is_ascii_digit() || c == '-') {
            Dim::Concrete(dim_s.parse().map_err(|_| bad("bad dimension"))?)
        } else if dim_s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && dim_s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            Dim::Symbolic(dim_s.to_string())
        } else {
            return Err(bad("dimension must be a positive integer or a symbol"));
        };
        let extra = match args.next() {
            None => None,
            Some(e) => Some(e.parse::<usize>().map_err(|_| bad("extra parameter must be a non-negative integer"))?),
        };
        if args.next().is_some() {
            return Err(bad("too many arguments"));
        }
        Self::new(family, dim, extra)
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.extra {
            Some(e) => write!(f, "{}({},{})", self.family, self.dim, e),
            None => write!(f, "{}({})", self.family, self.dim),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_catalogue() {
        let u = MeasureSpec::parse("U(d)").unwrap();
        assert_eq!(u.family, Family::U);
        assert_eq!(u.mode(), DimMode::Symbolic);
        assert_eq!(MeasureSpec::parse("Sp(6)").unwrap().mode(), DimMode::Concrete(6));
        let s = MeasureSpec::parse("Stiefel(d, 2)").unwrap();
        assert_eq!(s.extra, Some(2));
        assert_eq!(s.to_string(), "Stiefel(d,2)");
        assert_eq!(MeasureSpec::parse("Design(d,3)").unwrap().extra, Some(3));
        assert_eq!(MeasureSpec::parse("Psi(n)").unwrap().dim_symbol(), "n");
    }

    #[test]
    fn validation() {
        assert!(matches!(MeasureSpec::parse("Sp(5)"), Err(Error::InvalidDimension(_))));
        assert!(matches!(MeasureSpec::parse("CSE(3)"), Err(Error::InvalidDimension(_))));
        assert!(MeasureSpec::parse("Stiefel(2,3)").is_err());
        assert!(MeasureSpec::parse("Design(d,0)").is_err());
        assert!(MeasureSpec::parse("Design(d)").is_err());
        assert!(MeasureSpec::parse("Foo(d)").is_err());
        assert!(MeasureSpec::parse("U(0)").is_err());
        assert!(MeasureSpec::parse("U(d,2)").is_err());
    }
}
