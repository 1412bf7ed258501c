//! Finite probability mass functions over one or two alphabets.
//!
//! Nothing here renormalizes: a mass vector that does not sum to one is
//! rejected. Symbols of zero mass are allowed; their information densities
//! are infinite and reported either as an error or as `f64::INFINITY`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Allowed deviation of the total mass from one.
pub const MASS_TOL: f64 = 1e-12;

fn check_mass(mass: &[f64]) -> Result<()> {
    for (index, &value) in mass.iter().enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::NegativeMass { index, value });
        }
    }
    let sum: f64 = mass.iter().sum();
    if (sum - 1.0).abs() > MASS_TOL {
        return Err(Error::MassSumMismatch { sum });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinglePmf {
    mass: Vec<f64>,
}

impl SinglePmf {
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        check_mass(&mass)?;
        Ok(SinglePmf { mass })
    }

    pub fn uniform(n: usize) -> Self {
        SinglePmf { mass: vec![1.0 / n as f64; n] }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn get(&self, s: usize) -> f64 {
        self.mass[s]
    }

    pub fn max(&self) -> f64 {
        self.mass.iter().cloned().fold(0.0, f64::max)
    }

    /// Entropy density `-ln P(s)` in nats.
    pub fn density(&self, s: usize) -> Result<f64> {
        let p = self.mass[s];
        if p > 0.0 {
            Ok(-p.ln())
        } else {
            Err(Error::ZeroProbability(vec![s]))
        }
    }

    pub fn density_or_inf(&self, s: usize) -> f64 {
        self.density(s).unwrap_or(f64::INFINITY)
    }

    /// Lossless tilted information, `-ln P(s)` with `+inf` on null symbols.
    pub fn self_information(&self) -> Vec<f64> {
        (0..self.len()).map(|s| self.density_or_inf(s)).collect()
    }
}

/// Which component of a two-source pmf to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    First,
    Second,
}

/// Joint pmf stored row-major: entry `(s1, s2)` at `s1 * n2 + s2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPmf {
    n1: usize,
    n2: usize,
    mass: Vec<f64>,
}

impl JointPmf {
    pub fn new(n1: usize, n2: usize, mass: Vec<f64>) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        if mass.len() != n1 * n2 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} pmf",
                mass.len(),
                n1,
                n2
            )));
        }
        check_mass(&mass)?;
        Ok(JointPmf { n1, n2, mass })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n1 = rows.len();
        let n2 = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n2) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        JointPmf::new(n1, n2, rows.concat())
    }

    pub fn uniform(n1: usize, n2: usize) -> Self {
        JointPmf { n1, n2, mass: vec![1.0 / (n1 * n2) as f64; n1 * n2] }
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    #[inline]
    pub fn get(&self, s1: usize, s2: usize) -> f64 {
        self.mass[s1 * self.n2 + s2]
    }

    pub fn marginal(&self, axis: Axis) -> SinglePmf {
        let mass = match axis {
            Axis::First => (0..self.n1)
                .map(|a| (0..self.n2).map(|b| self.get(a, b)).sum())
                .collect(),
            Axis::Second => (0..self.n2)
                .map(|b| (0..self.n1).map(|a| self.get(a, b)).sum())
                .collect(),
        };
        SinglePmf { mass }
    }

    /// Swap the roles of the two sources.
    pub fn transpose(&self) -> JointPmf {
        let mut mass = vec![0.0; self.mass.len()];
        for a in 0..self.n1 {
            for b in 0..self.n2 {
                mass[b * self.n1 + a] = self.get(a, b);
            }
        }
        JointPmf { n1: self.n2, n2: self.n1, mass }
    }

    /// The pair viewed as a single source over `n1 * n2` symbols.
    pub fn flatten(&self) -> SinglePmf {
        SinglePmf { mass: self.mass.clone() }
    }

    /// `h(s1, s2) = -ln P(s1, s2)`.
    pub fn joint_density(&self, s1: usize, s2: usize) -> Result<f64> {
        let p = self.get(s1, s2);
        if p > 0.0 {
            Ok(-p.ln())
        } else {
            Err(Error::ZeroProbability(vec![s1, s2]))
        }
    }

    /// `h(s1 | s2) = -ln P(s1 | s2)`.
    pub fn density_1_given_2(&self, s1: usize, s2: usize) -> Result<f64> {
        let p = self.get(s1, s2);
        let m: f64 = (0..self.n1).map(|a| self.get(a, s2)).sum();
        if p > 0.0 && m > 0.0 {
            Ok(-(p / m).ln())
        } else {
            Err(Error::ZeroProbability(vec![s1, s2]))
        }
    }

    /// `h(s2 | s1) = -ln P(s2 | s1)`.
    pub fn density_2_given_1(&self, s1: usize, s2: usize) -> Result<f64> {
        self.transpose().density_1_given_2(s2, s1)
    }
}

/// A pmf as read from the text format.
#[derive(Debug, Clone, PartialEq)]
pub enum Pmf {
    Single(SinglePmf),
    Joint(JointPmf),
}

/// Parse the `pmf1 <n>` / `pmf2 <n1> <n2>` text format.
///
/// Each following line is `<i> <prob>` or `<i> <j> <prob>` with 0-based
/// indices; absent entries are zero. Blank lines and `#` comments are skipped.
pub fn parse_pmf(text: &str) -> Result<Pmf> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let head: Vec<&str> = header.split_whitespace().collect();
    let dims: Vec<usize> = head[1..]
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| perr(hline, "bad alphabet size")))
        .collect::<Result<_>>()?;
    let joint = match (head[0], dims.len()) {
        ("pmf1", 1) => false,
        ("pmf2", 2) => true,
        _ => return Err(perr(hline, "expected `pmf1 <n>` or `pmf2 <n1> <n2>`")),
    };
    if dims.iter().any(|&d| d == 0) {
        return Err(perr(hline, "alphabet sizes must be positive"));
    }
    let total: usize = dims.iter().product();
    let mut mass = vec![0.0; total];
    let mut seen = vec![false; total];
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != dims.len() + 1 {
            return Err(perr(ln, "wrong number of fields"));
        }
        let mut flat = 0;
        for (k, &d) in dims.iter().enumerate() {
            let i: usize = toks[k].parse().map_err(|_| perr(ln, "bad index"))?;
            if i >= d {
                return Err(perr(ln, "index out of range"));
            }
            flat = flat * d + i;
        }
        let p: f64 = toks[dims.len()].parse().map_err(|_| perr(ln, "bad probability"))?;
        if seen[flat] {
            return Err(perr(ln, "duplicate entry"));
        }
        seen[flat] = true;
        mass[flat] = p;
    }
    if joint {
        Ok(Pmf::Joint(JointPmf::new(dims[0], dims[1], mass)?))
    } else {
        Ok(Pmf::Single(SinglePmf::new(mass)?))
    }
}

/// Number of codewords available to each encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeSizes {
    pub m1: usize,
    pub m2: usize,
}

impl CodeSizes {
    pub fn new(m1: usize, m2: usize) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::InvalidArgument("code sizes must be at least 1".into()));
        }
        Ok(CodeSizes { m1, m2 })
    }
}

/// Distortion measure `d(s, r)` with an excess threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionSpec {
    n_src: usize,
    n_rec: usize,
    d: Vec<f64>,
    level: f64,
}

impl DistortionSpec {
    pub fn new(n_src: usize, n_rec: usize, d: Vec<f64>, level: f64) -> Result<Self> {
        if d.len() != n_src * n_rec {
            return Err(Error::DimensionMismatch("distortion matrix size".into()));
        }
        if d.iter().any(|&v| !(v >= 0.0)) || !(level >= 0.0) {
            return Err(Error::InvalidArgument("distortions must be nonnegative".into()));
        }
        Ok(DistortionSpec { n_src, n_rec, d, level })
    }

    /// Lossless reconstruction: error whenever `r != s`.
    pub fn lossless(n: usize) -> Self {
        let mut d = vec![1.0; n * n];
        for s in 0..n {
            d[s * n + s] = 0.0;
        }
        DistortionSpec { n_src: n, n_rec: n, d, level: 0.0 }
    }

    pub fn n_src(&self) -> usize {
        self.n_src
    }

    pub fn n_rec(&self) -> usize {
        self.n_rec
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn distortion(&self, s: usize, r: usize) -> f64 {
        self.d[s * self.n_rec + r]
    }

    /// `d(s, r) <= level`.
    #[inline]
    pub fn covers(&self, s: usize, r: usize) -> bool {
        self.d[s * self.n_rec + r] <= self.level
    }

    pub fn is_lossless(&self) -> bool {
        self.n_src == self.n_rec
            && (0..self.n_src).all(|s| (0..self.n_rec).all(|r| self.covers(s, r) == (s == r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_mass() {
        assert!(SinglePmf::new(vec![0.5, 0.5]).is_ok());
        assert!(matches!(
            SinglePmf::new(vec![0.5, 0.6]),
            Err(Error::MassSumMismatch { .. })
        ));
        assert!(matches!(
            SinglePmf::new(vec![1.5, -0.5]),
            Err(Error::NegativeMass { index: 1, .. })
        ));
        let dsbs = JointPmf::from_rows(&[vec![0.375, 0.125], vec![0.125, 0.375]]).unwrap();
        assert_eq!(dsbs.sizes(), (2, 2));
        let again = JointPmf::new(2, 2, dsbs.mass().to_vec()).unwrap();
        assert_eq!(again, dsbs);
    }

    #[test]
    fn marginals() {
        let u = JointPmf::uniform(2, 2);
        assert_eq!(u.marginal(Axis::First).mass(), &[0.5, 0.5]);
        let d = JointPmf::from_rows(&[vec![0.375, 0.125], vec![0.125, 0.375]]).unwrap();
        assert_eq!(d.marginal(Axis::Second).mass(), &[0.5, 0.5]);
        let a = JointPmf::from_rows(&[vec![0.7, 0.1], vec![0.1, 0.1]]).unwrap();
        let m = a.marginal(Axis::First);
        assert!((m.get(0) - 0.8).abs() < 1e-15 && (m.get(1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn densities() {
        let u = SinglePmf::uniform(4);
        assert!((u.density(0).unwrap() - 4f64.ln()).abs() < 1e-15);
        let j = JointPmf::uniform(2, 2);
        assert!((j.density_1_given_2(0, 0).unwrap() - 2f64.ln()).abs() < 1e-15);
        let d = JointPmf::from_rows(&[vec![0.375, 0.125], vec![0.125, 0.375]]).unwrap();
        assert!((d.density_1_given_2(0, 1).unwrap() - 4f64.ln()).abs() < 1e-14);
        let z = SinglePmf::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(z.density(1), Err(Error::ZeroProbability(_))));
        assert_eq!(z.density_or_inf(1), f64::INFINITY);
    }

    #[test]
    fn parses_text_format() {
        let p = parse_pmf("pmf2 2 2\n0 0 0.5\n# comment\n1 1 0.5\n").unwrap();
        match p {
            Pmf::Joint(j) => assert_eq!(j.mass(), &[0.5, 0.0, 0.0, 0.5]),
            _ => panic!("expected joint"),
        }
        assert!(matches!(parse_pmf("pmf1 2\n0 0.5\n1 0.6"), Err(Error::MassSumMismatch { .. })));
        assert!(matches!(parse_pmf("pmf1 2\n2 1.0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pmf("pmf3 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn lossless_distortion() {
        let d = DistortionSpec::lossless(3);
        assert!(d.is_lossless());
        assert!(d.covers(1, 1) && !d.covers(1, 2));
    }
}
