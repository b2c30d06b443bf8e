//! Matrix ingestion from Matrix Market coordinate files and dense CSV.
//!
//! Entries are read into [`Number`]s first so the caller can decide the
//! coefficient mode afterwards; integer mode rejects anything that is not an
//! integer.

use std::fmt::Write as _;
use std::io::{BufRead, Read};
use std::ops::Add;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Largest magnitude a float may have and still be read as an exact integer.
const EXACT_FLOAT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    MatrixMarket,
    Csv,
}

impl Format {
    /// Guess from the file extension: `.csv` is CSV, anything else Matrix Market.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::MatrixMarket,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mm" | "mtx" => Ok(Format::MatrixMarket),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected mm or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Int(BigInt),
    Complex(Complex64),
}

impl Number {
    fn parse_real(token: &str) -> Option<Self> {
        if let Ok(i) = BigInt::from_str(token.strip_prefix('+').unwrap_or(token)) {
            return Some(Number::Int(i));
        }
        token.parse::<f64>().ok().map(|x| Number::Complex(Complex64::new(x, 0.0)))
    }

    /// A CSV cell: an integer, a real, or a complex value such as `1-2.5i`.
    fn parse_cell(token: &str) -> Option<Self> {
        Self::parse_real(token).or_else(|| {
            Complex64::from_str(&token.replace(' ', ""))
                .ok()
                .map(Number::Complex)
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Number::Int(i) => i.to_complex(),
            Number::Complex(c) => *c,
        }
    }

    pub fn to_int(&self) -> Option<BigInt> {
        match self {
            Number::Int(i) => Some(i.clone()),
            Number::Complex(c) => {
                let exact = c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= EXACT_FLOAT_LIMIT;
                exact.then(|| BigInt::from(c.re as i64))
            }
        }
    }

    fn neg(&self) -> Self {
        match self {
            Number::Int(i) => Number::Int(-i),
            Number::Complex(c) => Number::Complex(-c),
        }
    }

    fn conj(&self) -> Self {
        match self {
            Number::Int(i) => Number::Int(i.clone()),
            Number::Complex(c) => Number::Complex(c.conj()),
        }
    }
}

impl Add for Number {
    type Output = Number;

    fn add(self, rhs: Number) -> Number {
        match (self, rhs) {
            (Number::Int(a), Number::Int(b)) => Number::Int(a + b),
            (a, b) => Number::Complex(a.to_complex() + b.to_complex()),
        }
    }
}

/// A square matrix as read from disk, before choosing a coefficient mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedMatrix {
    pub order: usize,
    /// Row-major.
    pub entries: Vec<Number>,
}

impl ParsedMatrix {
    fn zeros(order: usize) -> Self {
        ParsedMatrix {
            order,
            entries: vec![Number::Int(BigInt::zero()); order * order],
        }
    }

    fn accumulate(&mut self, i: usize, j: usize, v: Number) {
        let slot = &mut self.entries[i * self.order + j];
        *slot = std::mem::replace(slot, Number::Int(BigInt::zero())) + v;
    }

    pub fn into_int(self) -> Result<SquareMatrix<BigInt>> {
        let n = self.order;
        let mut out = SquareMatrix::zeros(n);
        for (k, v) in self.entries.iter().enumerate() {
            let (row, col) = (k / n + 1, k % n + 1);
            out.set(k / n, k % n, v.to_int().ok_or(Error::NonInteger { row, col })?);
        }
        Ok(out)
    }

    pub fn into_complex(self) -> SquareMatrix<Complex64> {
        let n = self.order;
        SquareMatrix::from_fn(n, |i, j| self.entries[i * n + j].to_complex())
    }

    /// True when every entry can be read exactly as an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.to_int().is_some())
    }
}

pub fn read_path(path: &Path, format: Format) -> Result<ParsedMatrix> {
    let file = std::fs::File::open(path)?;
    match format {
        Format::MatrixMarket => read_matrix_market(std::io::BufReader::new(file)),
        Format::Csv => read_csv(file),
    }
}

pub fn parse_str(text: &str, format: Format) -> Result<ParsedMatrix> {
    match format {
        Format::MatrixMarket => read_matrix_market(text.as_bytes()),
        Format::Csv => read_csv(text.as_bytes()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
    Pattern,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Skew,
    Hermitian,
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub fn read_matrix_market(reader: impl BufRead) -> Result<ParsedMatrix> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let header = header?;
    let head = tokens(&header);
    let word = |k: usize| head.get(k).map(|(_, t)| t.to_ascii_lowercase());
    let col = |k: usize| head.get(k).map_or(header.chars().count() + 1, |(c, _)| *c);
    if word(0).as_deref() != Some("%%matrixmarket") {
        return Err(Error::parse(1, 1, "missing %%MatrixMarket header"));
    }
    if word(1).as_deref() != Some("matrix") {
        return Err(Error::parse(1, col(1), "expected object `matrix`"));
    }
    if word(2).as_deref() != Some("coordinate") {
        return Err(Error::parse(1, col(2), "only the coordinate format is supported"));
    }
    let field = match word(3).as_deref() {
        Some("real") | Some("double") => Field::Real,
        Some("integer") => Field::Integer,
        Some("complex") => Field::Complex,
        Some("pattern") => Field::Pattern,
        _ => return Err(Error::parse(1, col(3), "field must be real, integer, complex or pattern")),
    };
    let symmetry = match word(4).as_deref() {
        Some("general") => Symmetry::General,
        Some("symmetric") => Symmetry::Symmetric,
        Some("skew-symmetric") => Symmetry::Skew,
        Some("hermitian") => Symmetry::Hermitian,
        _ => {
            return Err(Error::parse(
                1,
                col(4),
                "symmetry must be general, symmetric, skew-symmetric or hermitian",
            ))
        }
    };

    let mut content = lines.filter(|(_, l)| match l {
        Ok(l) => {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('%')
        }
        Err(_) => true,
    });

    let (size_line, size) = content
        .next()
        .ok_or_else(|| Error::parse(2, 1, "missing size line"))?;
    let size = size?;
    let st = tokens(&size);
    if st.len() != 3 {
        return Err(Error::parse(size_line, 1, "size line must be `rows cols entries`"));
    }
    let mut dims = [0usize; 3];
    for (k, (c, t)) in st.iter().enumerate() {
        dims[k] = t
            .parse()
            .map_err(|_| Error::parse(size_line, *c, format!("invalid count {t:?}")))?;
    }
    let [rows, cols, nnz] = dims;
    if rows != cols {
        return Err(Error::parse(size_line, 1, format!("matrix is {rows}×{cols}, not square")));
    }

    let mut m = ParsedMatrix::zeros(rows);
    let mut seen = 0usize;
    let mut last_line = size_line;
    for (line_no, line) in content {
        let line = line?;
        last_line = line_no;
        if seen == nnz {
            return Err(Error::parse(line_no, 1, format!("more than the declared {nnz} entries")));
        }
        let t = tokens(&line);
        let want = match field {
            Field::Pattern => 2,
            Field::Real | Field::Integer => 3,
            Field::Complex => 4,
        };
        if t.len() != want {
            let c = t.get(want.min(t.len())).map_or(line.chars().count() + 1, |(c, _)| *c);
            return Err(Error::parse(line_no, c, format!("expected {want} fields, found {}", t.len())));
        }
        let index = |k: usize| -> Result<usize> {
            let (c, s) = t[k];
            match s.parse::<usize>() {
                Ok(i) if (1..=rows).contains(&i) => Ok(i - 1),
                _ => Err(Error::parse(line_no, c, format!("index {s:?} outside 1..={rows}"))),
            }
        };
        let (i, j) = (index(0)?, index(1)?);
        let bad_value = |k: usize| {
            let (c, s) = t[k];
            Error::parse(line_no, c, format!("invalid value {s:?}"))
        };
        let value = match field {
            Field::Pattern => Number::Int(1.into()),
            Field::Integer => Number::Int(
                BigInt::from_str(t[2].1.strip_prefix('+').unwrap_or(t[2].1)).map_err(|_| bad_value(2))?,
            ),
            Field::Real => Number::parse_real(t[2].1).ok_or_else(|| bad_value(2))?,
            Field::Complex => {
                let re = Number::parse_real(t[2].1).ok_or_else(|| bad_value(2))?;
                let im = Number::parse_real(t[3].1).ok_or_else(|| bad_value(3))?;
                match (&re, im.to_int()) {
                    (Number::Int(_), Some(z)) if z.is_zero() => re,
                    _ => Number::Complex(Complex64::new(re.to_complex().re, im.to_complex().re)),
                }
            }
        };
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => m.accumulate(j, i, value.clone()),
                Symmetry::Skew => m.accumulate(j, i, value.neg()),
                Symmetry::Hermitian => m.accumulate(j, i, value.conj()),
            }
        } else if symmetry == Symmetry::Skew {
            return Err(Error::parse(line_no, t[0].0, "skew-symmetric matrix with a diagonal entry"));
        }
        m.accumulate(i, j, value);
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::parse(
            last_line + 1,
            1,
            format!("expected {nnz} entries, found {seen}"),
        ));
    }
    Ok(m)
}

/// Dense CSV: one matrix row per line, `#` starts a comment line.
pub fn read_csv(reader: impl Read) -> Result<ParsedMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut rows: Vec<Vec<Number>> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, 1, e.to_string())
        })?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(record.len());
        for (k, cell) in record.iter().enumerate() {
            let v = Number::parse_cell(cell)
                .ok_or_else(|| Error::parse(line, k + 1, format!("invalid number {cell:?}")))?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "empty input"));
    }
    let n = rows.len();
    let mut m = ParsedMatrix::zeros(n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
        for (j, v) in row.into_iter().enumerate() {
            m.entries[i * n + j] = v;
        }
    }
    Ok(m)
}

fn complex_cell(c: &Complex64) -> String {
    format!("{}{:+}i", c.re, c.im)
}

/// Matrix Market text, `integer` or `complex` general coordinate.
pub fn to_matrix_market<T: Scalar>(a: &SquareMatrix<T>) -> String {
    let n = a.order();
    let mut cells = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                cells.push((i + 1, j + 1, a.get(i, j)));
            }
        }
    }
    let field = match T::MODE {
        crate::scalar::CoefficientMode::Int => "integer",
        crate::scalar::CoefficientMode::Complex => "complex",
    };
    let mut s = format!("%%MatrixMarket matrix coordinate {field} general\n{n} {n} {}\n", cells.len());
    for (i, j, v) in cells {
        match T::MODE {
            crate::scalar::CoefficientMode::Int => writeln!(s, "{i} {j} {}", v.label()),
            crate::scalar::CoefficientMode::Complex => {
                let c = v.to_complex();
                writeln!(s, "{i} {j} {} {}", c.re, c.im)
            }
        }
        .expect("writing to a String");
    }
    s
}

/// Dense CSV text; complex entries are written as `a+bi`.
pub fn to_csv<T: Scalar>(a: &SquareMatrix<T>) -> String {
    let mut s = String::new();
    for row in a.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match T::MODE {
                crate::scalar::CoefficientMode::Int => v.label(),
                crate::scalar::CoefficientMode::Complex => complex_cell(&v.to_complex()),
            })
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn err_pos(r: Result<ParsedMatrix>) -> (usize, usize) {
        match r {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips() {
        let m1 = fixtures::m1();
        let mm = parse_str(&to_matrix_market(&m1), Format::MatrixMarket).unwrap();
        assert_eq!(mm.into_int().unwrap(), m1);
        let csv = parse_str(&to_csv(&m1), Format::Csv).unwrap();
        assert_eq!(csv.into_int().unwrap(), m1);
        let c = m1.to_complex();
        let back = parse_str(&to_csv(&c), Format::Csv).unwrap();
        assert!(back.is_integral());
        assert_eq!(back.into_complex(), c);
    }

    #[test]
    fn symmetric_and_duplicates() {
        let text = "%%MatrixMarket matrix coordinate integer symmetric\n% comment\n3 3 4\n1 1 2\n2 1 5\n2 1 1\n3 2 -1\n";
        let m = parse_str(text, Format::MatrixMarket).unwrap().into_int().unwrap();
        let expected = SquareMatrix::from_i64_rows(&[&[2, 6, 0], &[6, 0, -1], &[0, -1, 0]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn skew_and_hermitian() {
        let skew = "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n";
        let m = parse_str(skew, Format::MatrixMarket).unwrap().into_int().unwrap();
        assert_eq!(m, SquareMatrix::from_i64_rows(&[&[0, -3], &[3, 0]]).unwrap());
        let herm = "%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 0 2\n";
        let m = parse_str(herm, Format::MatrixMarket).unwrap();
        assert!(!m.is_integral());
        let c = m.into_complex();
        assert_eq!(*c.get(0, 1), Complex64::new(0.0, -2.0));
        assert_eq!(*c.get(1, 0), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn pattern_entries_are_one() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n";
        let m = parse_str(text, Format::MatrixMarket).unwrap().into_int().unwrap();
        assert_eq!(m, SquareMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(err_pos(parse_str("", Format::MatrixMarket)), (1, 1));
        assert_eq!(err_pos(parse_str("", Format::Csv)), (1, 1));
        let bad = "%%MatrixMarket matrix coordinate integer general\n2 2 1\n1  x 4\n";
        assert_eq!(err_pos(parse_str(bad, Format::MatrixMarket)), (3, 4));
        let out_of_range = "%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 4\n";
        assert_eq!(err_pos(parse_str(out_of_range, Format::MatrixMarket)), (3, 1));
        let short = "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 4\n";
        assert_eq!(err_pos(parse_str(short, Format::MatrixMarket)), (4, 1));
        assert_eq!(err_pos(parse_str("1,2\n3,zz\n", Format::Csv)), (2, 2));
        assert!(matches!(parse_str("1,2\n3\n", Format::Csv), Err(Error::NotSquare { row: 1, .. })));
    }

    #[test]
    fn complex_cells_and_integer_mode() {
        let m = parse_str("1+2i,0\n-3.5,2i\n", Format::Csv).unwrap();
        assert_eq!(m.entries[0], Number::Complex(Complex64::new(1.0, 2.0)));
        assert_eq!(m.entries[3], Number::Complex(Complex64::new(0.0, 2.0)));
        assert!(matches!(m.into_int(), Err(Error::NonInteger { row: 1, col: 1 })));
        let real_ints = parse_str("2.0,1\n0,3\n", Format::Csv).unwrap();
        assert_eq!(real_ints.entries[0].to_int(), Some(BigInt::from(2)));
    }
}
