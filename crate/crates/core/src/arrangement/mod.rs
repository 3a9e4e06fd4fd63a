//! Hyperplane arrangements in projective space: intersection poset,
//! (dimension, multiplicity) classification, crepant-resolution test and
//! good-reduction analysis.

mod classify;
mod poset;
mod reduction;

use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub use classify::{
    admissible, classify, crepant_resolvable, resolution_schedule, BlowUp, Classification, Resolvability,
    TypeRow,
};
pub use poset::{intersection_poset, intersection_poset_by_subsets, Poset, Stratum};
pub use reduction::{good_reduction_report, minors, poset_diff, GoodReductionReport, PosetDiff};

/// Linear form with primitive integer coefficients, first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Hyperplane(Vec<i64>);

impl Hyperplane {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let g = coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return Err(Error::InvalidArrangement("zero linear form".into()));
        }
        let sign = if coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) { -1 } else { 1 };
        Ok(Self(coeffs.into_iter().map(|c| sign * c / g).collect()))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `N` distinct hyperplanes in `Pⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(n: usize, forms: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArrangement("ambient dimension must be positive".into()));
        }
        let mut hyperplanes = Vec::with_capacity(forms.len());
        for (i, form) in forms.into_iter().enumerate() {
            if form.len() != n + 1 {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {i} has {} coefficients, expected {}",
                    form.len(),
                    n + 1
                )));
            }
            let h = Hyperplane::new(form)?;
            if let Some(j) = hyperplanes.iter().position(|g| g == &h) {
                return Err(Error::InvalidArrangement(format!("hyperplanes {j} and {i} coincide")));
            }
            hyperplanes.push(h);
        }
        Ok(Self { n, hyperplanes })
    }

    /// Ambient projective dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Whether the branch divisor has even degree, so that a double cover exists.
    pub fn is_even(&self) -> bool {
        self.hyperplanes.len() % 2 == 0
    }

    /// Parse the text format: `n N`, then `N` lines of `n+1` integers.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let ints = |line: usize, s: &str| -> Result<Vec<i64>> {
            s.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
                .collect()
        };
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let header = ints(hl, header)?;
        let [n, count] = header[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `n N`".into() });
        };
        if n < 1 || count < 0 {
            return Err(Error::Parse { line: hl, msg: "header values out of range".into() });
        }
        let mut forms = Vec::with_capacity(count as usize);
        for (line, body) in lines {
            let row = ints(line, body)?;
            if row.len() != n as usize + 1 {
                return Err(Error::Parse { line, msg: format!("expected {} integers, found {}", n + 1, row.len()) });
            }
            forms.push(row);
        }
        if forms.len() != count as usize {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {count} hyperplanes, found {}", forms.len()),
            });
        }
        Self::new(n as usize, forms)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Inverse of [`Arrangement::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.hyperplanes.len());
        for h in &self.hyperplanes {
            s.push_str(&h.to_string());
            s.push('\n');
        }
        s
    }
}

/// Bundled arrangements, stored in the same text format.
pub mod bundled {
    use super::Arrangement;

    pub const AHLGREN_P5: &str = include_str!("../../data/ahlgren_p5.arr");
    pub const OCTIC_19: &str = include_str!("../../data/octic_19.arr");
    pub const SEXTIC: &str = include_str!("../../data/sextic.arr");

    /// `x(x-u)(x-v) y(y-u)(y-v) z(z-u)(z-v) t(t-u)(t-v) = 0` in `P⁵`.
    pub fn ahlgren() -> Arrangement {
        Arrangement::parse(AHLGREN_P5).expect("bundled arrangement")
    }

    /// `xt(x-z-t)(x-z+t) y(y+z-t)(y+z+t)(y+2z) = 0` in `P³`.
    pub fn octic() -> Arrangement {
        Arrangement::parse(OCTIC_19).expect("bundled arrangement")
    }

    /// `xy(x+y+z)(x+y-z)(x-y+z)(x-y-z) = 0` in `P²`.
    pub fn sextic() -> Arrangement {
        Arrangement::parse(SEXTIC).expect("bundled arrangement")
    }
}
