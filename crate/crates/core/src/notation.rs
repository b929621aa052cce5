//! Salamon shorthand such as `(0,0,0,12,13+42,14+23)` and the catalog
//! h1..h17 of six-dimensional nilpotent Lie algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::exterior::{bits, Multivector};
use crate::lie::{Fingerprint, LieAlgebra};
use crate::scalars::GR;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotationError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("entry {entry} cites index {index}, which is not below {entry}")]
    ForwardReference { entry: usize, index: usize },
    #[error("entry {entry} cites index {index} outside 1..={dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error("entry {entry} repeats index {index}")]
    RepeatedIndex { entry: usize, index: usize },
    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
}

/// One entry of a shorthand listing: integer multiples of index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalamonExpr {
    pub entries: Vec<Vec<(i64, usize, usize)>>,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), NotationError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: String) -> NotationError {
        NotationError::SyntaxError { pos: self.pos, msg }
    }

    /// `[unsigned-integer] digit digit`: the last two digits are the pair.
    fn term(&mut self) -> Result<(BigInt, usize, usize), NotationError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.s[start..self.pos];
        if digits.len() < 2 {
            self.pos = start;
            return Err(self.err(String::from("expected a term of at least two digits")));
        }
        let (coef, pair) = digits.split_at(digits.len() - 2);
        let c = if coef.is_empty() {
            BigInt::one()
        } else {
            core::str::from_utf8(coef).ok().and_then(|t| t.parse().ok()).ok_or_else(|| self.err(String::from("bad coefficient")))?
        };
        Ok((c, (pair[0] - b'0') as usize, (pair[1] - b'0') as usize))
    }
}

/// Parses shorthand into its formal entries, without index checks.
pub fn parse_expr(text: &str) -> Result<SalamonExpr, NotationError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    cur.expect(b'(')?;
    let mut entries = Vec::new();
    loop {
        let mut terms = Vec::new();
        let zero_entry = cur.peek() == Some(b'0') && {
            // a lone 0 is the zero entry, "012" would be a term
            let save = cur.pos;
            cur.pos += 1;
            let next = cur.peek();
            let lone = matches!(next, Some(b',') | Some(b')'));
            cur.pos = save;
            lone
        };
        if zero_entry {
            cur.pos += 1;
        } else {
            // a leading minus is accepted so printed output always re-parses
            let mut neg = false;
            if cur.peek() == Some(b'-') {
                cur.pos += 1;
                neg = true;
            }
            loop {
                let (c, i, j) = cur.term()?;
                let c = c.to_i64().ok_or_else(|| cur.err(String::from("coefficient too large")))?;
                terms.push((if neg { -c } else { c }, i, j));
                match cur.peek() {
                    Some(b'+') => {
                        cur.pos += 1;
                        neg = false;
                    }
                    Some(b'-') => {
                        cur.pos += 1;
                        neg = true;
                    }
                    _ => break,
                }
            }
        }
        entries.push(terms);
        match cur.peek() {
            Some(b',') => cur.pos += 1,
            Some(b')') => {
                cur.pos += 1;
                break;
            }
            _ => return Err(cur.err(String::from("expected ',' or ')'"))),
        }
    }
    if cur.peek().is_some() {
        return Err(cur.err(String::from("trailing input")));
    }
    Ok(SalamonExpr { entries })
}

/// Parses shorthand, requiring the Malcev condition (entry k cites only
/// indices below k).
pub fn parse(text: &str) -> Result<LieAlgebra, NotationError> {
    parse_with(text, true)
}

pub fn parse_with(text: &str, malcev: bool) -> Result<LieAlgebra, NotationError> {
    let expr = parse_expr(text)?;
    let dim = expr.entries.len();
    if dim > 9 {
        return Err(NotationError::SyntaxError { pos: 0, msg: format!("{dim} entries; at most 9 supported") });
    }
    let mut diffs = Vec::with_capacity(dim);
    for (k, terms) in expr.entries.iter().enumerate() {
        let entry = k + 1;
        let mut de = Multivector::zero(dim);
        for &(c, i, j) in terms {
            for idx in [i, j] {
                if malcev && idx >= entry {
                    return Err(NotationError::ForwardReference { entry, index: idx });
                }
                if idx == 0 || idx > dim {
                    return Err(NotationError::IndexOutOfRange { entry, index: idx, dim });
                }
            }
            if i == j {
                return Err(NotationError::RepeatedIndex { entry, index: i });
            }
            de = de.add(&Multivector::word(dim, &[i, j]).scale(&GR::from_int(c)));
        }
        diffs.push(de);
    }
    Ok(LieAlgebra::new(diffs).expect("shorthand entries are 2-forms"))
}

/// Canonical shorthand: ascending pairs, explicit signs, no unit coefficients.
pub fn print(g: &LieAlgebra) -> Result<String, NotationError> {
    let mut parts = Vec::new();
    for de in g.differentials() {
        if de.is_zero() {
            parts.push(String::from("0"));
            continue;
        }
        let mut s = String::new();
        let mut terms: Vec<(Vec<usize>, &GR)> = de.terms().map(|(m, c)| (bits(m), c)).collect();
        terms.sort();
        for (idx, c) in terms {
            if !c.is_real() || !c.re.denom().is_one() {
                return Err(NotationError::NonIntegerCoefficient(format!("{c}")));
            }
            let n = c.re.numer();
            if n.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let mag = n.abs();
            if !mag.is_one() {
                s.push_str(&format!("{mag}"));
            }
            for i in idx {
                s.push_str(&format!("{}", i + 1));
            }
        }
        parts.push(s);
    }
    Ok(format!("({})", parts.join(",")))
}

/// Catalog entries as `(name, shorthand)`.
pub const CATALOG: [(&str, &str); 17] = [
    ("h1", "(0,0,0,0,0,0)"),
    ("h2", "(0,0,0,0,12,34)"),
    ("h3", "(0,0,0,0,0,12+34)"),
    ("h4", "(0,0,0,0,12,14+23)"),
    ("h5", "(0,0,0,0,13+42,14+23)"),
    ("h6", "(0,0,0,0,12,13)"),
    ("h7", "(0,0,0,12,13,23)"),
    ("h8", "(0,0,0,0,0,12)"),
    ("h9", "(0,0,0,0,12,14+25)"),
    ("h10", "(0,0,0,12,13,14)"),
    ("h11", "(0,0,0,12,13,14+23)"),
    ("h12", "(0,0,0,12,13,24)"),
    ("h13", "(0,0,0,12,13+14,24)"),
    ("h14", "(0,0,0,12,14,13+24)"),
    ("h15", "(0,0,0,12,13+42,14+23)"),
    ("h16", "(0,0,0,12,14,24)"),
    ("h17", "(0,0,0,0,12,15)"),
];

pub fn catalog_lookup(name: &str) -> Result<LieAlgebra, NotationError> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| parse(s).expect("catalog entries parse"))
        .ok_or_else(|| NotationError::UnknownName(String::from(name)))
}

/// Catalog index of a name (`h1` → 0).
pub fn catalog_index(name: &str) -> Option<usize> {
    CATALOG.iter().position(|(n, _)| *n == name)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("fingerprint matches no catalog algebra")]
    NoMatch,
    #[error("fingerprint matches several catalog algebras: {0:?}")]
    Ambiguous(Vec<&'static str>),
    #[error("input is not nilpotent")]
    NotNilpotent,
    #[error("classification needs dimension 6, got {0}")]
    WrongDimension(usize),
}

/// Precomputed catalog fingerprints.
#[derive(Clone, Debug)]
pub struct Classifier {
    prints: Vec<(&'static str, Fingerprint)>,
}

impl Classifier {
    /// Computes every catalog fingerprint and asserts they are pairwise
    /// distinct.
    pub fn new() -> Self {
        let prints: Vec<(&'static str, Fingerprint)> = CATALOG
            .iter()
            .map(|(n, s)| (*n, parse(s).expect("catalog parses").fingerprint().expect("catalog is nilpotent")))
            .collect();
        for a in 0..prints.len() {
            for b in a + 1..prints.len() {
                assert_ne!(prints[a].1, prints[b].1, "catalog collision {} / {}", prints[a].0, prints[b].0);
            }
        }
        Classifier { prints }
    }

    pub fn fingerprints(&self) -> &[(&'static str, Fingerprint)] {
        &self.prints
    }

    /// Real classification. Algebras with non-real constants are matched
    /// over C, see [`Classifier::classify_complex`].
    pub fn classify(&self, g: &LieAlgebra) -> Result<&'static str, ClassifyError> {
        if !g.is_real() {
            return self.classify_complex(g);
        }
        let fp = self.checked_fingerprint(g)?;
        self.prints.iter().find(|(_, p)| *p == fp).map(|(n, _)| *n).ok_or(ClassifyError::NoMatch)
    }

    /// Matches the complexification against the complexified catalog. Two
    /// pairs of catalog algebras become isomorphic over C (h2/h5, h13/h15);
    /// those report [`ClassifyError::Ambiguous`].
    pub fn classify_complex(&self, g: &LieAlgebra) -> Result<&'static str, ClassifyError> {
        let fp = self.checked_fingerprint(g)?.complex_part();
        let hits: Vec<&'static str> =
            self.prints.iter().filter(|(_, p)| p.complex_part() == fp).map(|(n, _)| *n).collect();
        match hits.len() {
            0 => Err(ClassifyError::NoMatch),
            1 => Ok(hits[0]),
            _ => Err(ClassifyError::Ambiguous(hits)),
        }
    }

    fn checked_fingerprint(&self, g: &LieAlgebra) -> Result<Fingerprint, ClassifyError> {
        if g.dim() != 6 {
            return Err(ClassifyError::WrongDimension(g.dim()));
        }
        g.fingerprint().map_err(|_| ClassifyError::NotNilpotent)
    }
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(feature = "std")]
fn shared() -> &'static Classifier {
    static CELL: std::sync::OnceLock<Classifier> = std::sync::OnceLock::new();
    CELL.get_or_init(Classifier::new)
}

/// Classifies against the catalog, building the fingerprint table once per
/// process when `std` is available.
pub fn classify(g: &LieAlgebra) -> Result<&'static str, ClassifyError> {
    #[cfg(feature = "std")]
    {
        shared().classify(g)
    }
    #[cfg(not(feature = "std"))]
    {
        Classifier::new().classify(g)
    }
}

/// Complex classification; see [`Classifier::classify_complex`].
pub fn classify_complex(g: &LieAlgebra) -> Result<&'static str, ClassifyError> {
    #[cfg(feature = "std")]
    {
        shared().classify_complex(g)
    }
    #[cfg(not(feature = "std"))]
    {
        Classifier::new().classify_complex(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let h15 = parse("(0,0,0,12,13+42,14+23)").unwrap();
        let want = Multivector::word(6, &[1, 3]).sub(&Multivector::word(6, &[2, 4]));
        assert_eq!(h15.differentials()[4], want);
        assert!(parse("(0,0,0,0,0,0)").unwrap().differentials().iter().all(Multivector::is_zero));
        let h14 = parse("(0,0,0,12,14,13+42)").unwrap();
        assert_eq!(classify(&h14), Ok("h14"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("(0,0,0,12,99)"), Err(NotationError::ForwardReference { entry: 5, index: 9 })));
        assert!(matches!(parse("(0,0,x)"), Err(NotationError::SyntaxError { pos: 5, .. })));
        assert!(matches!(parse("(0,0,1)"), Err(NotationError::SyntaxError { .. })));
        assert!(matches!(parse("0,0"), Err(NotationError::SyntaxError { pos: 0, .. })));
        assert!(matches!(parse_with("(0,0,0,0,0,17)", false), Err(NotationError::IndexOutOfRange { .. })));
        assert!(matches!(parse("(0,0,11)"), Err(NotationError::RepeatedIndex { .. })));
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&parse("(0,0,0,0,0,12+34)").unwrap()).unwrap(), "(0,0,0,0,0,12+34)");
        assert_eq!(print(&LieAlgebra::abelian(6)).unwrap(), "(0,0,0,0,0,0)");
        assert_eq!(print(&parse("(0,0,0,12,13+42,14+23)").unwrap()).unwrap(), "(0,0,0,12,13-24,14+23)");
        assert_eq!(print(&parse("(0,0,-212)").unwrap()).unwrap(), "(0,0,-212)");
        let half = LieAlgebra::new(alloc::vec![
            Multivector::zero(3),
            Multivector::zero(3),
            Multivector::word(3, &[1, 2]).scale(&GR::from_rational(crate::scalars::rat(1, 2))),
        ])
        .unwrap();
        assert!(matches!(print(&half), Err(NotationError::NonIntegerCoefficient(_))));
    }

    #[test]
    fn catalog_roundtrip_and_lookup() {
        for (name, s) in CATALOG {
            let g = parse(s).unwrap();
            assert!(g.check_jacobi(), "{name}");
            assert_eq!(parse(&print(&g).unwrap()).unwrap(), g, "{name}");
        }
        assert_eq!(print(&catalog_lookup("h7").unwrap()).unwrap(), "(0,0,0,12,13,23)");
        assert_eq!(print(&catalog_lookup("h17").unwrap()).unwrap(), "(0,0,0,0,12,15)");
        assert_eq!(catalog_lookup("h99"), Err(NotationError::UnknownName(String::from("h99"))));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&parse("(0,0,0,0,12,13)").unwrap()), Ok("h6"));
        assert_eq!(classify(&LieAlgebra::abelian(6)), Ok("h1"));
        for (name, s) in CATALOG {
            assert_eq!(classify(&parse(s).unwrap()), Ok(name));
        }
    }

    #[test]
    fn complex_merges() {
        let h2 = catalog_lookup("h2").unwrap();
        assert_eq!(classify_complex(&h2), Err(ClassifyError::Ambiguous(alloc::vec!["h2", "h5"])));
        let h13 = catalog_lookup("h13").unwrap();
        assert_eq!(classify_complex(&h13), Err(ClassifyError::Ambiguous(alloc::vec!["h13", "h15"])));
        assert_eq!(classify_complex(&catalog_lookup("h11").unwrap()), Ok("h11"));
    }
}
