//! Fixed- and free-format MPS.
//!
//! Rows are normalized to `<=` form on the way in: `G` rows are negated, `E`
//! rows become two rows, and `RANGES` add the missing side. Integer columns
//! without explicit bounds get `[0, +inf)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use log::warn;
use num_traits::{Signed, Zero};

use super::{Instance, InstanceError};
use crate::lp::{LinearSystem, Row};
use crate::scalar::{parse_rational, rational_to_decimal, ExtendedValue, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    None,
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RowKind {
    Objective,
    FreeIgnored,
    Le,
    Ge,
    Eq,
}

struct RowData {
    name: String,
    kind: RowKind,
    coeffs: Vec<(usize, Rational)>,
    rhs: Rational,
    range: Option<Rational>,
}

struct ColumnData {
    name: String,
    objective: Rational,
    integer: bool,
    lower: Option<ExtendedValue<Rational>>,
    upper: Option<ExtendedValue<Rational>>,
}

const UNSUPPORTED: &[&str] = &[
    "SOS",
    "QUADOBJ",
    "QMATRIX",
    "QSECTION",
    "QCMATRIX",
    "INDICATORS",
    "LAZYCONS",
    "USERCUTS",
    "CSECTION",
    "GENCONS",
    "PWLOBJ",
    "BRANCH",
];

fn syntax(line: usize, reason: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn number(line: usize, text: &str) -> Result<Rational, InstanceError> {
    parse_rational(text).ok_or_else(|| syntax(line, format!("invalid number `{text}`")))
}

/// Splits a line by the fixed-format column spans.
fn fixed_fields(raw: &str) -> Option<Vec<&str>> {
    const SPANS: [(usize, usize); 6] = [(1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61)];
    let mut out = Vec::new();
    for (a, b) in SPANS {
        if a >= raw.len() {
            break;
        }
        out.push(raw.get(a..b.min(raw.len()))?.trim());
    }
    while out.last().is_some_and(|f| f.is_empty()) {
        out.pop();
    }
    if out.first().is_some_and(|f| f.is_empty()) {
        out.remove(0);
    }
    Some(out)
}

/// Parses an MPS document into a minimization instance with `<=` rows only.
pub fn parse_mps(text: &str) -> Result<Instance<Rational>, InstanceError> {
    let mut name = String::new();
    let mut section = Section::None;
    let mut maximize = false;
    let mut rows: Vec<RowData> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut objective_row: Option<usize> = None;
    let mut columns: Vec<ColumnData> = Vec::new();
    let mut column_index: HashMap<String, usize> = HashMap::new();
    let mut in_integer_block = false;
    let mut saw_endata = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        let header = !raw.starts_with(' ') && !raw.starts_with('\t');
        if header {
            let mut tokens = raw.split_whitespace();
            let keyword = tokens.next().unwrap_or_default().to_ascii_uppercase();
            let rest: Vec<&str> = tokens.collect();
            if UNSUPPORTED.contains(&keyword.as_str()) {
                return Err(InstanceError::Unsupported(format!("section {keyword}")));
            }
            section = match keyword.as_str() {
                "NAME" => {
                    name = rest.join(" ");
                    Section::Name
                }
                "OBJSENSE" => {
                    if let Some(s) = rest.first() {
                        maximize = parse_sense(line_no, s)?;
                    }
                    Section::ObjSense
                }
                "OBJSENSE_MAX" | "OBJSENSEMAX" => {
                    maximize = true;
                    Section::ObjSense
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "RANGES" => Section::Ranges,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => {
                    saw_endata = true;
                    break;
                }
                "OBJNAME" => {
                    return Err(InstanceError::Unsupported("OBJNAME section".into()));
                }
                _ => {
                    // Free MPS allows unindented data lines.
                    if section == Section::None || section == Section::Name {
                        return Err(syntax(line_no, format!("unknown section `{keyword}`")));
                    }
                    handle_data(
                        section,
                        raw,
                        line_no,
                        &mut maximize,
                        &mut rows,
                        &mut row_index,
                        &mut objective_row,
                        &mut columns,
                        &mut column_index,
                        &mut in_integer_block,
                    )?;
                    section
                }
            };
            continue;
        }
        handle_data(
            section,
            raw,
            line_no,
            &mut maximize,
            &mut rows,
            &mut row_index,
            &mut objective_row,
            &mut columns,
            &mut column_index,
            &mut in_integer_block,
        )?;
    }
    if !saw_endata {
        return Err(syntax(text.lines().count(), "missing ENDATA"));
    }

    let n = columns.len();
    let mut objective = vec![Rational::zero(); n];
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    let mut integer = Vec::with_capacity(n);
    for (j, col) in columns.into_iter().enumerate() {
        objective[j] = if maximize { -col.objective } else { col.objective };
        let lo = col.lower.unwrap_or(ExtendedValue::Finite(Rational::zero()));
        let hi = col.upper.unwrap_or(ExtendedValue::PosInf);
        lower.push(lo);
        upper.push(hi);
        integer.push(col.integer);
    }

    let mut out_rows = Vec::new();
    for row in rows {
        let (lo, hi) = match row.kind {
            RowKind::Objective | RowKind::FreeIgnored => continue,
            RowKind::Le => {
                let lo = row.range.as_ref().map(|r| &row.rhs - r.abs());
                (lo, Some(row.rhs.clone()))
            }
            RowKind::Ge => {
                let hi = row.range.as_ref().map(|r| &row.rhs + r.abs());
                (Some(row.rhs.clone()), hi)
            }
            RowKind::Eq => match &row.range {
                Some(r) if r.is_negative() => (Some(&row.rhs + r), Some(row.rhs.clone())),
                Some(r) => (Some(row.rhs.clone()), Some(&row.rhs + r)),
                None => (Some(row.rhs.clone()), Some(row.rhs.clone())),
            },
        };
        let le = Row::new(row.coeffs.iter().cloned(), Rational::zero());
        if le.coeffs.is_empty() {
            let ok = lo.as_ref().is_none_or(|l| !l.is_positive()) && hi.as_ref().is_none_or(|h| !h.is_negative());
            if ok {
                warn!("dropping empty row {}", row.name);
                continue;
            }
            return Err(InstanceError::Unsupported(format!(
                "row {} has no coefficients and an infeasible right-hand side",
                row.name
            )));
        }
        if let Some(h) = hi {
            out_rows.push(Row {
                coeffs: le.coeffs.clone(),
                rhs: h,
            });
        }
        if let Some(l) = lo {
            out_rows.push(Row {
                coeffs: le.coeffs.iter().map(|(i, a)| (*i, -a.clone())).collect(),
                rhs: -l,
            });
        }
    }

    Ok(Instance {
        name,
        objective,
        system: LinearSystem {
            n,
            rows: out_rows,
            lower,
            upper,
        },
        integer,
        known_optimal_value: None,
        sense_flipped: maximize,
    })
}

fn parse_sense(line: usize, s: &str) -> Result<bool, InstanceError> {
    match s.to_ascii_uppercase().as_str() {
        "MAX" | "MAXIMIZE" => Ok(true),
        "MIN" | "MINIMIZE" => Ok(false),
        other => Err(syntax(line, format!("unknown objective sense `{other}`"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn handle_data(
    section: Section,
    raw: &str,
    line_no: usize,
    maximize: &mut bool,
    rows: &mut Vec<RowData>,
    row_index: &mut HashMap<String, usize>,
    objective_row: &mut Option<usize>,
    columns: &mut Vec<ColumnData>,
    column_index: &mut HashMap<String, usize>,
    in_integer_block: &mut bool,
) -> Result<(), InstanceError> {
    match section {
        Section::None | Section::Name => Err(syntax(line_no, "data line outside a section")),
        Section::ObjSense => {
            let s = raw.split_whitespace().next().unwrap_or_default();
            *maximize = parse_sense(line_no, s)?;
            Ok(())
        }
        Section::Rows => {
            let f = first_ok(raw, |f| {
                if f.len() == 2 {
                    Ok(f.to_vec())
                } else {
                    Err(syntax(line_no, "ROWS entry needs a type and a name"))
                }
            })?;
            let kind = match f[0].to_ascii_uppercase().as_str() {
                "N" => {
                    if objective_row.is_none() {
                        *objective_row = Some(rows.len());
                        RowKind::Objective
                    } else {
                        warn!("ignoring additional free row {}", f[1]);
                        RowKind::FreeIgnored
                    }
                }
                "L" => RowKind::Le,
                "G" => RowKind::Ge,
                "E" => RowKind::Eq,
                other => return Err(syntax(line_no, format!("unknown row type `{other}`"))),
            };
            if row_index.insert(f[1].to_string(), rows.len()).is_some() {
                return Err(syntax(line_no, format!("duplicate row `{}`", f[1])));
            }
            rows.push(RowData {
                name: f[1].to_string(),
                kind,
                coeffs: Vec::new(),
                rhs: Rational::zero(),
                range: None,
            });
            Ok(())
        }
        Section::Columns => {
            let tokens: Vec<&str> = raw.split_whitespace().collect();
            if tokens.len() >= 3 && tokens[1].trim_matches('\'').eq_ignore_ascii_case("MARKER") {
                let marker = tokens[2].trim_matches('\'').to_ascii_uppercase();
                match marker.as_str() {
                    "INTORG" => *in_integer_block = true,
                    "INTEND" => *in_integer_block = false,
                    other => return Err(syntax(line_no, format!("unknown marker `{other}`"))),
                }
                return Ok(());
            }
            let (col_name, entries) = first_ok(raw, |f| {
                if f.len() != 3 && f.len() != 5 {
                    return Err(syntax(line_no, "COLUMNS entry needs 3 or 5 fields"));
                }
                Ok((f[0], row_pairs(&f[1..], line_no, row_index)?))
            })?;
            let col = match column_index.get(col_name) {
                Some(&c) => c,
                None => {
                    column_index.insert(col_name.to_string(), columns.len());
                    columns.push(ColumnData {
                        name: col_name.to_string(),
                        objective: Rational::zero(),
                        integer: *in_integer_block,
                        lower: None,
                        upper: None,
                    });
                    columns.len() - 1
                }
            };
            for (r, v) in entries {
                match rows[r].kind {
                    RowKind::Objective => columns[col].objective += v,
                    RowKind::FreeIgnored => {}
                    _ => rows[r].coeffs.push((col, v)),
                }
            }
            Ok(())
        }
        Section::Rhs | Section::Ranges => {
            let entries = first_ok(raw, |f| match f.len() {
                2 | 4 => row_pairs(f, line_no, row_index),
                3 | 5 => row_pairs(&f[1..], line_no, row_index),
                _ => Err(syntax(line_no, "RHS/RANGES entry has a bad field count")),
            })?;
            for (r, v) in entries {
                if section == Section::Rhs {
                    match rows[r].kind {
                        RowKind::Objective => warn!("ignoring objective constant {v}"),
                        RowKind::FreeIgnored => {}
                        _ => rows[r].rhs = v,
                    }
                } else {
                    match rows[r].kind {
                        RowKind::Objective | RowKind::FreeIgnored => {
                            return Err(syntax(line_no, "RANGES on a free row"));
                        }
                        _ => rows[r].range = Some(v),
                    }
                }
            }
            Ok(())
        }
        Section::Bounds => {
            let (kind, col, value) = first_ok(raw, |f| {
                let kind = f
                    .first()
                    .map(|t| t.to_ascii_uppercase())
                    .ok_or_else(|| syntax(line_no, "empty BOUNDS entry"))?;
                let takes_value = matches!(kind.as_str(), "UP" | "LO" | "FX" | "LI" | "UI");
                let (col_name, value) = match (takes_value, f.len()) {
                    (true, 4) => (f[2], Some(f[3])),
                    (true, 3) => (f[1], Some(f[2])),
                    (false, 2) => (f[1], None),
                    (false, 3) => (f[2], None),
                    (false, 4) => (f[2], Some(f[3])),
                    _ => return Err(syntax(line_no, "BOUNDS entry has a bad field count")),
                };
                let col = *column_index
                    .get(col_name)
                    .ok_or_else(|| syntax(line_no, format!("unknown column `{col_name}`")))?;
                let value = value.map(|v| number(line_no, v)).transpose()?;
                if takes_value && value.is_none() {
                    return Err(syntax(line_no, "bound value missing"));
                }
                Ok((kind, col, value))
            })?;
            let c = &mut columns[col];
            match kind.as_str() {
                "UP" | "UI" => {
                    let v = value.expect("value");
                    if v.is_negative() && c.lower.is_none() {
                        warn!(
                            "negative upper bound on {} with default lower bound; lower set to -inf",
                            c.name
                        );
                        c.lower = Some(ExtendedValue::NegInf);
                    }
                    c.upper = Some(ExtendedValue::Finite(v));
                    if kind == "UI" {
                        c.integer = true;
                    }
                }
                "LO" | "LI" => {
                    c.lower = Some(ExtendedValue::Finite(value.expect("value")));
                    if kind == "LI" {
                        c.integer = true;
                    }
                }
                "FX" => {
                    let v = value.expect("value");
                    c.lower = Some(ExtendedValue::Finite(v.clone()));
                    c.upper = Some(ExtendedValue::Finite(v));
                }
                "FR" => {
                    c.lower = Some(ExtendedValue::NegInf);
                    c.upper = Some(ExtendedValue::PosInf);
                }
                "MI" => c.lower = Some(ExtendedValue::NegInf),
                "PL" => c.upper = Some(ExtendedValue::PosInf),
                "BV" => {
                    c.lower = Some(ExtendedValue::Finite(Rational::zero()));
                    c.upper = Some(ExtendedValue::Finite(num_traits::One::one()));
                    c.integer = true;
                }
                "SC" => return Err(InstanceError::Unsupported("semi-continuous bound (SC)".into())),
                other => return Err(syntax(line_no, format!("unknown bound type `{other}`"))),
            }
            Ok(())
        }
    }
}

fn row_pairs(
    f: &[&str],
    line_no: usize,
    row_index: &HashMap<String, usize>,
) -> Result<Vec<(usize, Rational)>, InstanceError> {
    f.chunks(2)
        .map(|pair| {
            if pair.len() != 2 {
                return Err(syntax(line_no, "dangling field"));
            }
            let r = *row_index
                .get(pair[0])
                .ok_or_else(|| syntax(line_no, format!("unknown row `{}`", pair[0])))?;
            Ok((r, number(line_no, pair[1])?))
        })
        .collect()
}

/// Interprets a data line as free format first, then as fixed format.
fn first_ok<'a, T>(
    raw: &'a str,
    mut parse: impl FnMut(&[&'a str]) -> Result<T, InstanceError>,
) -> Result<T, InstanceError> {
    let tokens: Vec<&str> = raw.split_whitespace().collect();
    let first = parse(&tokens);
    if first.is_ok() {
        return first;
    }
    match fixed_fields(raw) {
        Some(f) if f != tokens => parse(&f).or(first),
        _ => first,
    }
}

fn decimal(v: &Rational) -> Result<String, InstanceError> {
    rational_to_decimal(v).ok_or_else(|| InstanceError::Unrepresentable(v.to_string()))
}

/// Writes free-format MPS. Every row becomes an `L` row; values must have a
/// terminating decimal expansion.
pub fn write_mps(instance: &Instance<Rational>) -> Result<String, InstanceError> {
    let n = instance.n();
    let mut out = String::new();
    let name = if instance.name.is_empty() {
        "UNNAMED"
    } else {
        &instance.name
    };
    writeln!(out, "NAME {name}").unwrap();
    if instance.sense_flipped {
        out.push_str("OBJSENSE\n    MAX\n");
    }
    out.push_str("ROWS\n N  OBJ\n");
    for i in 0..instance.m() {
        writeln!(out, " L  R{i}").unwrap();
    }
    let mut by_column: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    for (i, row) in instance.system.rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            by_column[*j].push((i, a));
        }
    }
    out.push_str("COLUMNS\n");
    let mut in_block = false;
    let mut marker = 0usize;
    for j in 0..n {
        if instance.integer[j] != in_block {
            let tag = if instance.integer[j] { "INTORG" } else { "INTEND" };
            writeln!(out, "    M{marker} 'MARKER' '{tag}'").unwrap();
            marker += 1;
            in_block = instance.integer[j];
        }
        let c = if instance.sense_flipped {
            -instance.objective[j].clone()
        } else {
            instance.objective[j].clone()
        };
        // always emit the objective entry so the column exists
        writeln!(out, "    X{j} OBJ {}", decimal(&c)?).unwrap();
        for (i, a) in &by_column[j] {
            writeln!(out, "    X{j} R{i} {}", decimal(a)?).unwrap();
        }
    }
    if in_block {
        writeln!(out, "    M{marker} 'MARKER' 'INTEND'").unwrap();
    }
    out.push_str("RHS\n");
    for (i, row) in instance.system.rows.iter().enumerate() {
        if !row.rhs.is_zero() {
            writeln!(out, "    RHS R{i} {}", decimal(&row.rhs)?).unwrap();
        }
    }
    out.push_str("BOUNDS\n");
    for j in 0..n {
        let lo = &instance.system.lower[j];
        let hi = &instance.system.upper[j];
        match (lo, hi) {
            (ExtendedValue::NegInf, ExtendedValue::PosInf) => writeln!(out, " FR BND X{j}").unwrap(),
            (ExtendedValue::Finite(l), ExtendedValue::Finite(h)) if l == h => {
                writeln!(out, " FX BND X{j} {}", decimal(l)?).unwrap()
            }
            _ => {
                match lo {
                    ExtendedValue::NegInf => writeln!(out, " MI BND X{j}").unwrap(),
                    ExtendedValue::Finite(l) => {
                        let upper_negative = matches!(hi, ExtendedValue::Finite(h) if h.is_negative());
                        if !l.is_zero() || upper_negative {
                            writeln!(out, " LO BND X{j} {}", decimal(l)?).unwrap();
                        }
                    }
                    ExtendedValue::PosInf => {
                        return Err(InstanceError::Unrepresentable(format!("lower bound +inf on X{j}")))
                    }
                }
                match hi {
                    ExtendedValue::PosInf => {}
                    ExtendedValue::Finite(h) => writeln!(out, " UP BND X{j} {}", decimal(h)?).unwrap(),
                    ExtendedValue::NegInf => {
                        return Err(InstanceError::Unrepresentable(format!("upper bound -inf on X{j}")))
                    }
                }
            }
        }
    }
    out.push_str("ENDATA\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    const FIFTH_BOX: &str = "\
NAME          BOXFIFTH
ROWS
 N  COST
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    X1        COST        -1
    X2        COST        -1
    MARKER                 'MARKER'                 'INTEND'
BOUNDS
 UP BND       X1        0.2
 UP BND       X2        0.2
ENDATA
";

    #[test]
    fn fifth_box_has_no_rows() {
        let inst = parse_mps(FIFTH_BOX).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.m(), 0);
        assert_eq!(inst.objective, vec![ratio(-1, 1), ratio(-1, 1)]);
        assert_eq!(inst.system.upper[0], ExtendedValue::Finite(ratio(1, 5)));
        assert_eq!(inst.system.lower[1], ExtendedValue::Finite(ratio(0, 1)));
        assert_eq!(inst.integer, vec![true, true]);
    }

    #[test]
    fn equality_row_splits() {
        let text = "\
NAME EQ
ROWS
 N obj
 E c1
COLUMNS
 x obj 1 c1 1
 y obj 1 c1 2
RHS
 rhs c1 3
ENDATA
";
        let inst = parse_mps(text).unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(
            inst.system.rows[0],
            Row::new([(0, ratio(1, 1)), (1, ratio(2, 1))], ratio(3, 1))
        );
        assert_eq!(
            inst.system.rows[1],
            Row::new([(0, ratio(-1, 1)), (1, ratio(-2, 1))], ratio(-3, 1))
        );
    }

    #[test]
    fn maximization_is_negated() {
        let text = "\
NAME MAXI
OBJSENSE
    MAX
ROWS
 N obj
 G c1
COLUMNS
 x obj 2 c1 1
RHS
 rhs c1 1
BOUNDS
 UP bnd x 4
ENDATA
";
        let inst = parse_mps(text).unwrap();
        assert!(inst.sense_flipped);
        assert_eq!(inst.objective, vec![ratio(-2, 1)]);
        // G row negated
        assert_eq!(inst.system.rows[0], Row::new([(0, ratio(-1, 1))], ratio(-1, 1)));
        let reported = inst.report_value(&ExtendedValue::Finite(ratio(-8, 1)));
        assert_eq!(reported, ExtendedValue::Finite(ratio(8, 1)));
    }

    #[test]
    fn ranges_expand() {
        let text = "\
NAME R
ROWS
 N obj
 L a
 G b
 E c
COLUMNS
 x obj 1 a 1
 x b 1 c 1
RHS
 rhs a 4 b 1
 rhs c 2
RANGES
 rng a 3 b 2
 rng c -1
ENDATA
";
        let inst = parse_mps(text).unwrap();
        let rhs: Vec<Rational> = inst.system.rows.iter().map(|r| r.rhs.clone()).collect();
        // a: [1,4]; b: [1,3]; c: [1,2]
        assert_eq!(
            rhs,
            vec![
                ratio(4, 1),
                ratio(-1, 1),
                ratio(3, 1),
                ratio(-1, 1),
                ratio(2, 1),
                ratio(-1, 1)
            ]
        );
    }

    #[test]
    fn sos_is_rejected() {
        let text = "NAME S\nROWS\n N obj\nCOLUMNS\n x obj 1\nSOS\n S1 SOS\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(InstanceError::Unsupported(_))));
    }

    #[test]
    fn syntax_errors_report_line() {
        let text = "NAME S\nROWS\n N obj\nCOLUMNS\n x nosuchrow 1\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(InstanceError::Syntax { line: 5, .. })));
        let text = "NAME S\nROWS\n Q obj\nENDATA\n";
        assert!(matches!(parse_mps(text), Err(InstanceError::Syntax { line: 3, .. })));
    }

    fn fixed(fields: &[&str]) -> String {
        const STARTS: [usize; 6] = [1, 4, 14, 24, 39, 49];
        let mut line = String::new();
        for (f, start) in fields.iter().zip(STARTS) {
            while line.len() < start {
                line.push(' ');
            }
            line.push_str(f);
        }
        line
    }

    #[test]
    fn fixed_format_names_with_spaces() {
        let text = [
            "NAME          FIXED".to_string(),
            "ROWS".into(),
            fixed(&["N", "COST"]),
            fixed(&["L", "LIM 1"]),
            "COLUMNS".into(),
            fixed(&["", "X ONE", "COST", "1.5", "LIM 1", "2"]),
            "RHS".into(),
            fixed(&["", "RHS", "LIM 1", "3"]),
            "ENDATA".into(),
        ]
        .join("\n");
        let inst = parse_mps(&text).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.objective, vec![ratio(3, 2)]);
        assert_eq!(inst.system.rows[0], Row::new([(0, ratio(2, 1))], ratio(3, 1)));
    }

    #[test]
    fn writer_round_trip() {
        let mut inst = parse_mps(FIFTH_BOX).unwrap();
        inst.system
            .rows
            .push(Row::new([(0, ratio(1, 1)), (1, ratio(-5, 2))], ratio(1, 4)));
        inst.system.lower[1] = ExtendedValue::NegInf;
        inst.integer[1] = false;
        inst.sense_flipped = true;
        let text = write_mps(&inst).unwrap();
        let back = parse_mps(&text).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn writer_rejects_repeating_decimals() {
        let mut inst = parse_mps(FIFTH_BOX).unwrap();
        inst.objective[0] = ratio(1, 3);
        assert!(matches!(write_mps(&inst), Err(InstanceError::Unrepresentable(_))));
    }
}
