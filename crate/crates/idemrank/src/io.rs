//! Text formats for matrices, operators, and generating sets, with
//! line/column diagnostics and canonical serialization.
//!
//! Matrix format:
//!
//! ```text
//! semiring maxplus
//! 2 2
//! 0 1
//! -inf 3
//! ```
//!
//! Operator format: the same header, then one block per basis cell in
//! row-major order, each block being a line `E <i> <j>` followed by the
//! image matrix rows. Generating sets are matrix blocks separated by blank
//! lines. Serialization always reproduces canonical tokens (reduced
//! fractions, lowercase `-inf`), so `parse(serialize(x)) = x`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{BasisCell, Matrix};
use crate::operator::LinearOperator;
use crate::semimodule::GeneratingSet;
use crate::semiring::{parse_value, SemiringId, Value};

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Tokens of one line with their 1-based starting columns.
fn tokens_of(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        out.push((start + 1, &line[start..i]));
    }
    out
}

/// Nonblank lines with their original 1-based line numbers.
fn nonblank_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect()
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: nonblank_lines(text),
            pos: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.lines.last().map_or(1, |&(n, _)| n + 1);
        match self.lines.get(self.pos) {
            Some(&(n, l)) => {
                self.pos += 1;
                Ok((n, l))
            }
            None => Err(err(last, 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expect_done(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(n, _)) => Err(err(n, 1, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn parse_header(cursor: &mut Cursor) -> Result<SemiringId> {
    let (line_no, line) = cursor.next_line("a `semiring <tag>` header")?;
    let tokens = tokens_of(line);
    match tokens.as_slice() {
        [(_, "semiring"), (col, tag)] => SemiringId::from_token(tag)
            .ok_or_else(|| err(line_no, *col, format!("unknown semiring tag `{tag}`"))),
        [(col, other), ..] if *other != "semiring" => {
            Err(err(line_no, *col, format!("expected `semiring`, got `{other}`")))
        }
        _ => Err(err(line_no, 1, "expected `semiring <tag>`")),
    }
}

fn parse_dims(cursor: &mut Cursor) -> Result<(usize, usize)> {
    let (line_no, line) = cursor.next_line("matrix dimensions `<m> <n>`")?;
    let tokens = tokens_of(line);
    if tokens.len() != 2 {
        return Err(err(line_no, 1, "expected two dimension tokens `<m> <n>`"));
    }
    let mut dims = [0usize; 2];
    for (slot, (col, tok)) in tokens.iter().enumerate() {
        dims[slot] = tok
            .parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| err(line_no, *col, format!("invalid dimension `{tok}`")))?;
    }
    Ok((dims[0], dims[1]))
}

fn parse_rows(cursor: &mut Cursor, id: SemiringId, m: usize, n: usize) -> Result<Vec<Value>> {
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m {
        let (line_no, line) = cursor.next_line("a matrix row")?;
        let tokens = tokens_of(line);
        if tokens.len() != n {
            return Err(err(
                line_no,
                1,
                format!("expected {n} value tokens, got {}", tokens.len()),
            ));
        }
        for (col, tok) in tokens {
            let v = parse_value(id, tok).map_err(|e| match e {
                Error::Parse { msg, .. } => err(line_no, col, msg),
                other => other,
            })?;
            data.push(v);
        }
    }
    Ok(data)
}

/// Parse one matrix in the text format.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut cursor = Cursor::new(text);
    let matrix = parse_matrix_at(&mut cursor)?;
    cursor.expect_done()?;
    Ok(matrix)
}

fn parse_matrix_at(cursor: &mut Cursor) -> Result<Matrix> {
    let id = parse_header(cursor)?;
    let (m, n) = parse_dims(cursor)?;
    let data = parse_rows(cursor, id, m, n)?;
    Matrix::new(id, m, n, data)
}

/// Canonical text form of a matrix.
pub fn serialize_matrix(a: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "semiring {}", a.id().token()).unwrap();
    writeln!(out, "{} {}", a.rows(), a.cols()).unwrap();
    write!(out, "{a}").unwrap();
    out
}

/// Parse a linear operator: header, dimensions, then one `E <i> <j>` block
/// per cell in row-major order.
pub fn parse_operator(text: &str) -> Result<LinearOperator> {
    let mut cursor = Cursor::new(text);
    let id = parse_header(&mut cursor)?;
    let (m, n) = parse_dims(&mut cursor)?;
    let mut images = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in 1..=n {
            let (line_no, line) = cursor.next_line(&format!("cell marker `E {i} {j}`"))?;
            let tokens = tokens_of(line);
            let ok = matches!(
                tokens.as_slice(),
                [(_, "E"), (_, ti), (_, tj)]
                    if ti.parse::<usize>() == Ok(i) && tj.parse::<usize>() == Ok(j)
            );
            if !ok {
                return Err(err(
                    line_no,
                    1,
                    format!("expected cell marker `E {i} {j}`, got `{}`", line.trim()),
                ));
            }
            let data = parse_rows(&mut cursor, id, m, n)?;
            images.push(Matrix::new(id, m, n, data)?);
        }
    }
    cursor.expect_done()?;
    LinearOperator::new(id, m, n, images)
}

/// Canonical text form of an operator; mirrors [`parse_operator`].
pub fn serialize_operator(t: &LinearOperator) -> String {
    let mut out = String::new();
    writeln!(out, "semiring {}", t.id().token()).unwrap();
    writeln!(out, "{} {}", t.domain_rows(), t.domain_cols()).unwrap();
    for i in 1..=t.domain_rows() {
        for j in 1..=t.domain_cols() {
            writeln!(out, "E {i} {j}").unwrap();
            write!(out, "{}", t.image(BasisCell::new(i, j))).unwrap();
        }
    }
    out
}

/// Parse a generating set: complete matrix blocks separated by one or more
/// blank lines.
pub fn parse_generating_set(text: &str) -> Result<GeneratingSet> {
    let mut blocks: Vec<(usize, String)> = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push((start, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = no;
            }
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push((start, current));
    }
    if blocks.is_empty() {
        return Err(err(1, 1, "expected at least one matrix block"));
    }
    let gens: Vec<Matrix> = blocks
        .into_iter()
        .map(|(offset, block)| {
            parse_matrix(&block).map_err(|e| match e {
                Error::Parse { line, col, msg } => err(line + offset, col, msg),
                other => other,
            })
        })
        .collect::<Result<_>>()?;
    GeneratingSet::new(gens)
}

/// Canonical text form of a generating set: blank-line separated blocks.
pub fn serialize_generating_set(gens: &GeneratingSet) -> String {
    gens.members()
        .iter()
        .map(serialize_matrix)
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::BasisCell;
    use crate::semiring::MaxPlus;
    use crate::testutil::{b2, mp_inf};

    #[test]
    fn parse_matrix_examples() {
        let i2 = parse_matrix("semiring b2\n2 2\n1 0\n0 1\n").unwrap();
        assert_eq!(i2, Matrix::identity(SemiringId::B2, 2).unwrap());

        let row = parse_matrix("semiring maxplus\n1 2\n-inf 3\n").unwrap();
        assert_eq!(row, mp_inf(vec![vec![None, Some(3)]]));

        let err = parse_matrix("semiring maxtimes-n\n1 1\n-2\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 3);
                assert_eq!(col, 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_positions() {
        let bad_header = parse_matrix("semiring fancy\n1 1\n0\n").unwrap_err();
        assert!(matches!(bad_header, Error::Parse { line: 1, col: 10, .. }));
        let bad_count = parse_matrix("semiring b2\n2 2\n1 0\n1\n").unwrap_err();
        assert!(matches!(bad_count, Error::Parse { line: 4, .. }));
        let trailing = parse_matrix("semiring b2\n1 1\n1\n1\n").unwrap_err();
        assert!(matches!(trailing, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn matrix_round_trip() {
        let a = mp_inf(vec![vec![Some(0), None], vec![Some(-2), Some(5)]]);
        assert_eq!(parse_matrix(&serialize_matrix(&a)).unwrap(), a);
        let q = Matrix::from_rows(
            SemiringId::MaxTimesQ,
            vec![vec![
                Value::ratio(2, 4).unwrap(),
                Value::ratio(0, 1).unwrap(),
                Value::ratio(7, 1).unwrap(),
            ]],
        )
        .unwrap();
        let text = serialize_matrix(&q);
        assert!(text.contains("1/2"), "fractions print reduced: {text}");
        assert_eq!(parse_matrix(&text).unwrap(), q);
    }

    #[test]
    fn max_plus_tokens_are_canonical() {
        let a = parse_matrix("semiring maxplus\n1 1\n-inf\n").unwrap();
        assert_eq!(a.at(BasisCell::new(1, 1)), &Value::MaxPlus(MaxPlus::NegInf));
        assert_eq!(serialize_matrix(&a), "semiring maxplus\n1 1\n-inf\n");
    }

    #[test]
    fn operator_round_trip() {
        let t = LinearOperator::transposition(SemiringId::B2, 2).unwrap();
        let text = serialize_operator(&t);
        assert_eq!(parse_operator(&text).unwrap(), t);
        assert!(text.starts_with("semiring b2\n2 2\nE 1 1\n"));
    }

    #[test]
    fn operator_blocks_must_follow_cell_order() {
        let text = "semiring b2\n2 2\nE 1 1\n1 0\n0 0\nE 2 1\n0 0\n0 0\n";
        assert!(matches!(
            parse_operator(text),
            Err(Error::Parse { line: 6, .. })
        ));
    }

    #[test]
    fn generating_set_blocks() {
        let text = "semiring b2\n1 2\n1 0\n\nsemiring b2\n1 2\n0 1\n";
        let gens = parse_generating_set(text).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens.members()[0], b2(vec![vec![1, 0]]));
        let round = parse_generating_set(&serialize_generating_set(&gens)).unwrap();
        assert_eq!(round, gens);
    }

    #[test]
    fn generating_set_position_offsets() {
        let text = "semiring b2\n1 2\n1 0\n\nsemiring b2\n1 2\n0 9\n";
        let e = parse_generating_set(text).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 7, col: 3, .. }), "{e:?}");
    }
}
