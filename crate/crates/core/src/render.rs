//! Text and SVG views of weak-value tensors.
//!
//! Grids put axis 0 on rows and axis 1 on columns. Cells show the real part
//! to four decimals; imaginary parts above [`IMAG_WARN`] are listed in a
//! warning line rather than dropped. All output is a pure function of the
//! tensor and labels.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hilbert::BasisLabel;
use crate::weakvalues::WeakValueTensor;

pub const IMAG_WARN: f64 = 1e-9;

const CELL_WIDTH: usize = 10;

/// Signed value at four decimals, with zero printed unsigned.
pub fn format_value(x: f64) -> String {
    let s = format!("{x:+.4}");
    if s == "+0.0000" || s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn pad_left(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{}{}", " ".repeat(width.saturating_sub(n)), s)
}

fn pad_right(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{}{}", s, " ".repeat(width.saturating_sub(n)))
}

fn check_labels(t: &WeakValueTensor, labels: &[Vec<String>]) -> Result<()> {
    let dims = t.shape().dims();
    if labels.len() != dims.len() || labels.iter().zip(dims).any(|(l, &d)| l.len() != d) {
        return Err(Error::LabelMismatch(format!(
            "labels do not cover shape {}",
            t.shape()
        )));
    }
    Ok(())
}

fn imaginary_warning(t: &WeakValueTensor, labels: &[Vec<String>]) -> Option<String> {
    let flagged: Vec<String> = t
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.im.abs() > IMAG_WARN)
        .map(|(k, c)| {
            let label = t.shape().label(k).expect("in range");
            let names: Vec<&str> = label
                .levels()
                .iter()
                .enumerate()
                .map(|(axis, &l)| labels[axis][l].as_str())
                .collect();
            format!("({}) = {:+.4e}i", names.join(", "), c.im)
        })
        .collect();
    (!flagged.is_empty()).then(|| {
        format!(
            "warning: imaginary part exceeds {IMAG_WARN:e} at {}",
            flagged.join("; ")
        )
    })
}

/// 2-axis grid with row and column marginals in a border band.
pub fn render_grid(t: &WeakValueTensor, labels: &[Vec<String>]) -> Result<String> {
    let n = t.shape().subsystems();
    if n != 2 {
        return Err(Error::NotTwoAxes(n));
    }
    check_labels(t, labels)?;
    let (rows, cols) = (t.shape().dims()[0], t.shape().dims()[1]);
    let row_marginals = t.marginalize(0)?;
    let col_marginals = t.marginalize(1)?;
    let head = labels[0]
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        .max(1)
        + 2;

    let mut out = String::new();
    let mut line = pad_right("", head);
    for label in labels[1].iter().take(cols) {
        line.push_str(&pad_left(label, CELL_WIDTH));
    }
    line.push_str(" |");
    line.push_str(&pad_left("Σ", CELL_WIDTH));
    writeln!(out, "{}", line.trim_end()).unwrap();

    for r in 0..rows {
        let mut line = pad_right(&format!("  {}", labels[0][r]), head);
        for c in 0..cols {
            let v = t.at(&[r, c])?;
            line.push_str(&pad_left(&format_value(v.re), CELL_WIDTH));
        }
        line.push_str(" |");
        line.push_str(&pad_left(&format_value(row_marginals[r].re), CELL_WIDTH));
        writeln!(out, "{line}").unwrap();
    }

    writeln!(
        out,
        "{}+{}",
        "-".repeat(head + cols * CELL_WIDTH + 1),
        "-".repeat(CELL_WIDTH)
    )
    .unwrap();
    let mut line = pad_right("  Σ", head);
    for m in &col_marginals {
        line.push_str(&pad_left(&format_value(m.re), CELL_WIDTH));
    }
    line.push_str(" |");
    line.push_str(&pad_left(&format_value(t.total_sum().re), CELL_WIDTH));
    writeln!(out, "{line}").unwrap();

    if let Some(w) = imaginary_warning(t, labels) {
        writeln!(out, "{w}").unwrap();
    }
    Ok(out)
}

/// One slice per level of axis 0; diagonal cells carry a `*`.
pub fn render_cube(t: &WeakValueTensor, labels: &[Vec<String>]) -> Result<String> {
    let n = t.shape().subsystems();
    if n != 3 {
        return Err(Error::NotThreeAxes(n));
    }
    check_labels(t, labels)?;
    let dims = t.shape().dims();
    let head = labels[1]
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        + 4;

    let mut out = String::new();
    for i in 0..dims[0] {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "axis 0 = {}", labels[0][i]).unwrap();
        let mut line = pad_right("", head);
        for label in labels[2].iter().take(dims[2]) {
            line.push_str(&pad_left(label, CELL_WIDTH));
            line.push(' ');
        }
        writeln!(out, "{}", line.trim_end()).unwrap();
        for (j, row_label) in labels[1].iter().enumerate().take(dims[1]) {
            let mut line = pad_right(&format!("  {row_label}"), head);
            for k in 0..dims[2] {
                let v = t.at(&[i, j, k])?;
                line.push_str(&pad_left(&format_value(v.re), CELL_WIDTH));
                line.push(if i == j && j == k { '*' } else { ' ' });
            }
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
    }
    writeln!(out, "(* marks diagonal cells)").unwrap();
    if let Some(w) = imaginary_warning(t, labels) {
        writeln!(out, "{w}").unwrap();
    }
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn fill_for(x: f64) -> &'static str {
    let s = format_value(x);
    if s == "0.0000" {
        "#f2f2f2"
    } else if x > 0.0 {
        "#9ecae1"
    } else {
        "#fc9272"
    }
}

const CELL: usize = 72;
const MARGIN: usize = 56;
const GAP: usize = 40;

fn svg_panel(
    out: &mut String,
    origin_x: usize,
    title: Option<&str>,
    value: &dyn Fn(usize, usize) -> Result<f64>,
    diagonal: &dyn Fn(usize, usize) -> bool,
    row_labels: &[String],
    col_labels: &[String],
) -> Result<()> {
    let top = MARGIN;
    if let Some(title) = title {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="start" class="title">{}</text>"#,
            origin_x + MARGIN,
            top - 34,
            xml_escape(title)
        )
        .unwrap();
    }
    for (c, label) in col_labels.iter().enumerate() {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" class="label">{}</text>"#,
            origin_x + MARGIN + c * CELL + CELL / 2,
            top - 10,
            xml_escape(label)
        )
        .unwrap();
    }
    for (r, label) in row_labels.iter().enumerate() {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end" class="label">{}</text>"#,
            origin_x + MARGIN - 10,
            top + r * CELL + CELL / 2 + 5,
            xml_escape(label)
        )
        .unwrap();
        for c in 0..col_labels.len() {
            let v = value(r, c)?;
            let (x, y) = (origin_x + MARGIN + c * CELL, top + r * CELL);
            let stroke = if diagonal(r, c) { 3 } else { 1 };
            writeln!(
                out,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" stroke="#333333" stroke-width="{stroke}"/>"##,
                fill_for(v)
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="middle" class="value">{}</text>"#,
                x + CELL / 2,
                y + CELL / 2 + 5,
                format_value(v)
            )
            .unwrap();
        }
    }
    Ok(())
}

/// Static SVG 1.1 view of a 2- or 3-axis tensor.
///
/// Cells are blue for positive, red for negative and grey for zero values.
/// A 3-axis tensor is drawn as one panel per level of axis 0, with the
/// diagonal cells outlined.
pub fn render_svg(t: &WeakValueTensor, labels: &[Vec<String>]) -> Result<String> {
    let n = t.shape().subsystems();
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedRank(n));
    }
    check_labels(t, labels)?;
    let dims = t.shape().dims();
    let (rows, cols, panels) = if n == 2 {
        (dims[0], dims[1], 1)
    } else {
        (dims[1], dims[2], dims[0])
    };
    let panel_width = MARGIN + cols * CELL;
    let width = panels * panel_width + (panels - 1) * GAP + MARGIN / 2;
    let height = MARGIN + rows * CELL + 48;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        out,
        "<style>text{{font-family:sans-serif}} .value{{font-size:15px}} .label{{font-size:14px}} .title{{font-size:13px}} .footer{{font-size:13px}}</style>"
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##).unwrap();

    if n == 2 {
        svg_panel(
            &mut out,
            0,
            None,
            &|r, c| Ok(t.at(&[r, c])?.re),
            &|_, _| false,
            &labels[0],
            &labels[1],
        )?;
    } else {
        for i in 0..panels {
            let title = format!("axis 0 = {}", labels[0][i]);
            svg_panel(
                &mut out,
                i * (panel_width + GAP),
                Some(&title),
                &|r, c| Ok(t.at(&[i, r, c])?.re),
                &|r, c| r == i && c == i,
                &labels[1],
                &labels[2],
            )?;
        }
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="start" class="footer">{} tensor, total sum {}</text>"#,
        MARGIN,
        height - 16,
        t.kind(),
        format_value(t.total_sum().re)
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Flat listing, used for ranks without a grid layout.
pub fn render_listing(t: &WeakValueTensor, labels: &[Vec<String>]) -> Result<String> {
    check_labels(t, labels)?;
    let mut out = String::new();
    for (k, c) in t.components().iter().enumerate() {
        let label: BasisLabel = t.shape().label(k)?;
        let names: Vec<&str> = label
            .levels()
            .iter()
            .enumerate()
            .map(|(axis, &l)| labels[axis][l].as_str())
            .collect();
        writeln!(out, "  ({})  {}", names.join(", "), format_value(c.re)).unwrap();
    }
    if let Some(w) = imaginary_warning(t, labels) {
        writeln!(out, "{w}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Shape;
    use crate::scenarios::{cheshire, numeric_labels};
    use crate::weakvalues::TensorKind;
    use num_complex::Complex64;

    #[test]
    fn zero_tensor_grid() {
        let shape = Shape::qubits(2).unwrap();
        let t = WeakValueTensor::from_parts(
            shape.clone(),
            vec![Complex64::new(0.0, 0.0); 4],
            TensorKind::Weak,
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let grid = render_grid(&t, &numeric_labels(&shape)).unwrap();
        assert!(grid
            .lines()
            .filter(|l| !l.starts_with('-'))
            .all(|l| !l.contains('+')));
        assert!(!grid.contains("-0.0000"));
        assert_eq!(grid.matches("0.0000").count(), 9);
    }

    #[test]
    fn format_value_signs() {
        assert_eq!(format_value(1.0), "+1.0000");
        assert_eq!(format_value(-1.0), "-1.0000");
        assert_eq!(format_value(-1e-17), "0.0000");
        assert_eq!(format_value(0.33333), "+0.3333");
    }

    #[test]
    fn imaginary_parts_are_flagged() {
        let shape = Shape::qubits(2).unwrap();
        let mut comps = vec![Complex64::new(0.25, 0.0); 4];
        comps[1] = Complex64::new(0.25, 0.5);
        comps[2] = Complex64::new(0.25, -0.5);
        let t = WeakValueTensor::from_parts(shape.clone(), comps, TensorKind::Weak, Complex64::new(1.0, 0.0)).unwrap();
        let grid = render_grid(&t, &numeric_labels(&shape)).unwrap();
        let warning = grid.lines().last().unwrap();
        assert!(warning.starts_with("warning: imaginary part"));
        assert!(warning.contains("(0, 1)") && warning.contains("(1, 0)"));
        assert!(!cheshire_grid().contains("warning"));
    }

    fn cheshire_grid() -> String {
        let sc = cheshire();
        render_grid(&sc.tensor().unwrap(), &sc.axis_labels).unwrap()
    }

    #[test]
    fn rank_errors() {
        let sc = cheshire();
        let t = sc.tensor().unwrap();
        assert_eq!(render_cube(&t, &sc.axis_labels), Err(Error::NotThreeAxes(2)));
        let shape = Shape::qubits(4).unwrap();
        let t4 = WeakValueTensor::from_parts(
            shape.clone(),
            vec![Complex64::new(0.0, 0.0); 16],
            TensorKind::Weak,
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        assert_eq!(render_svg(&t4, &numeric_labels(&shape)), Err(Error::UnsupportedRank(4)));
        assert_eq!(render_grid(&t4, &numeric_labels(&shape)), Err(Error::NotTwoAxes(4)));
    }

    #[test]
    fn labels_are_escaped() {
        let shape = Shape::qubits(2).unwrap();
        let t = WeakValueTensor::from_parts(
            shape,
            vec![Complex64::new(0.25, 0.0); 4],
            TensorKind::Expectation,
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let labels = vec![vec!["<a>".to_string(), "b&c".into()], vec!["0".into(), "1".into()]];
        let svg = render_svg(&t, &labels).unwrap();
        assert!(svg.contains("&lt;a&gt;") && svg.contains("b&amp;c"));
    }
}
