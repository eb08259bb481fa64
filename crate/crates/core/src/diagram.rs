//! Rendering of implication tables as color-coded 8×8 grids of 4×4
//! subtables, and superposition of two tables.
//!
//! Rows are antecedents, columns consequents, both in factor order with
//! signatures in code order `0 + - pm` inside each block.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::miner::{Counts, ImplicationTable, InvariantSet};
use crate::profile::{Factor, PlainSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    Red,
    Orange,
    Yellow,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Black, Color::Red, Color::Orange, Color::Yellow];

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::Red => "red",
            Color::Orange => "orange",
            Color::Yellow => "yellow",
        }
    }

    pub fn hex(self) -> &'static str {
        match self {
            Color::Black => "#000000",
            Color::Red => "#FF0000",
            Color::Orange => "#FFA500",
            Color::Yellow => "#FFFF00",
        }
    }

    /// Background SGR code. The 8-color palette has no orange, so it uses
    /// the dark yellow that most terminals draw as brown or orange, and
    /// yellow takes the bright variant.
    pub fn ansi_background(self) -> u8 {
        match self {
            Color::Black => 40,
            Color::Red => 41,
            Color::Orange => 43,
            Color::Yellow => 103,
        }
    }

    pub fn count(self) -> u32 {
        match self {
            Color::Black => 0,
            Color::Red => 1,
            Color::Orange => 2,
            Color::Yellow => 3,
        }
    }
}

/// Color for a count, or `None` when the numeral is shown instead.
pub fn color_of(count: u32) -> Option<Color> {
    match count {
        0 => Some(Color::Black),
        1 => Some(Color::Red),
        2 => Some(Color::Orange),
        3 => Some(Color::Yellow),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Ansi,
    Html,
    Svg,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown format `{0}` (expected ansi, html, svg or json)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ansi" => Ok(Format::Ansi),
            "html" => Ok(Format::Html),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(table: &ImplicationTable, format: Format) -> String {
    match format {
        Format::Ansi => render_ansi(table),
        Format::Html => render_html(table),
        Format::Svg => render_svg(table),
        Format::Json => render_json(table),
    }
}

/// Group rules go after the s and p blocks.
fn separator_after(f: Factor) -> bool {
    matches!(f, Factor::S | Factor::P)
}

fn cells(table: &ImplicationTable) -> impl Iterator<Item = (Factor, PlainSignature, Factor, PlainSignature, u32)> + '_ {
    Factor::ALL.into_iter().flat_map(move |a| {
        PlainSignature::ALL.into_iter().flat_map(move |va| {
            Factor::ALL.into_iter().flat_map(move |c| {
                PlainSignature::ALL
                    .into_iter()
                    .map(move |vc| (a, va, c, vc, table.get(a, c, va, vc)))
            })
        })
    })
}

const RESET: &str = "\x1b[0m";

pub fn render_ansi(table: &ImplicationTable) -> String {
    let mut out = String::new();
    out.push_str("        ");
    for c in Factor::ALL {
        let _ = write!(out, "|{:<12}", c.name());
    }
    out.push('\n');
    out.push_str("        ");
    for _ in Factor::ALL {
        out.push('|');
        for v in PlainSignature::ALL {
            let _ = write!(out, "{:>3}", v.token());
        }
    }
    out.push('\n');
    for a in Factor::ALL {
        for va in PlainSignature::ALL {
            let _ = write!(out, "{:>4}{:>4}", a.name(), va.token());
            for c in Factor::ALL {
                out.push('|');
                for vc in PlainSignature::ALL {
                    let n = table.get(a, c, va, vc);
                    match color_of(n) {
                        Some(col) => {
                            let _ = write!(out, "\x1b[{}m   {RESET}", col.ansi_background());
                        }
                        None => {
                            let _ = write!(out, "{n:>3}");
                        }
                    }
                }
            }
            out.push('\n');
        }
        if separator_after(a) {
            out.push_str(&"=".repeat(8 + 8 * 13));
            out.push('\n');
        }
    }
    out
}

fn html_signature(v: PlainSignature) -> &'static str {
    match v {
        PlainSignature::Zero => "0",
        PlainSignature::Plus => "+",
        PlainSignature::Minus => "&minus;",
        PlainSignature::Pm => "&plusmn;",
    }
}

pub fn render_html(table: &ImplicationTable) -> String {
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n");
    out.push_str("<title>Implication diagram</title>\n<style>\n");
    out.push_str("table{border-collapse:collapse;font-family:monospace}\n");
    out.push_str("td,th{width:1.6em;height:1.6em;text-align:center;border:1px solid #ccc}\n");
    for col in Color::ALL {
        let _ = writeln!(out, "td.{}{{background:{}}}", col.name(), col.hex());
    }
    out.push_str("tr.sep td,tr.sep th{border-bottom:3px solid #000}\n");
    out.push_str(".vsep{border-right:3px solid #000}\n");
    out.push_str("</style>\n</head>\n<body>\n");
    let _ = writeln!(
        out,
        "<table data-length=\"{}\">",
        table.sequence_length()
    );
    out.push_str("<tr><th></th><th></th>");
    for c in Factor::ALL {
        let class = if separator_after(c) { " class=\"vsep\"" } else { "" };
        let _ = write!(out, "<th colspan=\"4\"{class}>{}</th>", c.name());
    }
    out.push_str("</tr>\n<tr><th></th><th></th>");
    for c in Factor::ALL {
        for vc in PlainSignature::ALL {
            let class = if separator_after(c) && vc == PlainSignature::Pm {
                " class=\"vsep\""
            } else {
                ""
            };
            let _ = write!(out, "<th{class}>{}</th>", html_signature(vc));
        }
    }
    out.push_str("</tr>\n");
    for a in Factor::ALL {
        for va in PlainSignature::ALL {
            let sep = separator_after(a) && va == PlainSignature::Pm;
            out.push_str(if sep { "<tr class=\"sep\">" } else { "<tr>" });
            if va == PlainSignature::Zero {
                let _ = write!(out, "<th rowspan=\"4\">{}</th>", a.name());
            }
            let _ = write!(out, "<th>{}</th>", html_signature(va));
            for c in Factor::ALL {
                for vc in PlainSignature::ALL {
                    let n = table.get(a, c, va, vc);
                    let mut classes = Vec::new();
                    if let Some(col) = color_of(n) {
                        classes.push(col.name());
                    }
                    if separator_after(c) && vc == PlainSignature::Pm {
                        classes.push("vsep");
                    }
                    let class_attr = if classes.is_empty() {
                        String::new()
                    } else {
                        format!(" class=\"{}\"", classes.join(" "))
                    };
                    let text = if color_of(n).is_some() {
                        String::new()
                    } else {
                        n.to_string()
                    };
                    let _ = write!(out, "<td{class_attr}>{text}</td>");
                }
            }
            out.push_str("</tr>\n");
        }
    }
    out.push_str("</table>\n</body>\n</html>\n");
    out
}

const SVG_SIZE: u32 = 1600;
const SVG_MARGIN: u32 = 64;
const SVG_CELL: u32 = (SVG_SIZE - SVG_MARGIN) / 32;

pub fn render_svg(table: &ImplicationTable) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_SIZE}\" height=\"{SVG_SIZE}\" viewBox=\"0 0 {SVG_SIZE} {SVG_SIZE}\" font-family=\"monospace\" font-size=\"16\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{SVG_SIZE}\" height=\"{SVG_SIZE}\" fill=\"#FFFFFF\"/>"
    );
    let half = SVG_MARGIN / 2;
    for f in Factor::ALL {
        let mid = SVG_MARGIN + (f.index() as u32 * 4 + 2) * SVG_CELL;
        let _ = writeln!(
            out,
            "<text x=\"{mid}\" y=\"{half}\" text-anchor=\"middle\">{}</text>",
            f.name()
        );
        let _ = writeln!(
            out,
            "<text x=\"{half}\" y=\"{mid}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>",
            f.name()
        );
    }
    for (a, va, c, vc, n) in cells(table) {
        let x = SVG_MARGIN + (c.index() * 4 + vc.code()) as u32 * SVG_CELL;
        let y = SVG_MARGIN + (a.index() * 4 + va.code()) as u32 * SVG_CELL;
        let fill = color_of(n).map_or("#FFFFFF", Color::hex);
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{SVG_CELL}\" height=\"{SVG_CELL}\" fill=\"{fill}\" stroke=\"#CCCCCC\"/>"
        );
        if color_of(n).is_none() {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{n}</text>",
                x + SVG_CELL / 2,
                y + SVG_CELL / 2
            );
        }
    }
    let end = SVG_MARGIN + 32 * SVG_CELL;
    for f in Factor::ALL {
        let pos = SVG_MARGIN + (f.index() as u32 + 1) * 4 * SVG_CELL;
        let width = if separator_after(f) { 4 } else { 1 };
        let _ = writeln!(
            out,
            "<line x1=\"{SVG_MARGIN}\" y1=\"{pos}\" x2=\"{end}\" y2=\"{pos}\" stroke=\"#000000\" stroke-width=\"{width}\"/>"
        );
        let _ = writeln!(
            out,
            "<line x1=\"{pos}\" y1=\"{SVG_MARGIN}\" x2=\"{pos}\" y2=\"{end}\" stroke=\"#000000\" stroke-width=\"{width}\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}

/// JSON form of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub sequence_length: usize,
    pub factors: Vec<String>,
    pub signatures: Vec<String>,
    /// `[antecedent][consequent][va][vc]`.
    pub counts: Counts,
    pub palette: Vec<PaletteEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaletteEntry {
    pub count: u32,
    pub color: String,
    pub hex: String,
}

pub fn render_json(table: &ImplicationTable) -> String {
    let doc = TableDocument {
        sequence_length: table.sequence_length(),
        factors: Factor::ALL.iter().map(|f| f.name().to_string()).collect(),
        signatures: PlainSignature::ALL.iter().map(|s| s.token().to_string()).collect(),
        counts: *table.counts(),
        palette: Color::ALL
            .iter()
            .map(|c| PaletteEntry {
                count: c.count(),
                color: c.name().to_string(),
                hex: c.hex().to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("table document serializes")
}

#[derive(Debug, Error)]
pub enum TableDecodeError {
    #[error("malformed table JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("counts exceed the sequence length or the length is zero")]
    OutOfRange,
}

/// Decodes the output of [`render_json`]; only `sequence_length` and
/// `counts` are significant.
pub fn table_from_json(text: &str) -> Result<ImplicationTable, TableDecodeError> {
    #[derive(Deserialize)]
    struct Minimal {
        sequence_length: usize,
        counts: Counts,
    }
    let m: Minimal = serde_json::from_str(text)?;
    ImplicationTable::from_counts(m.counts, m.sequence_length).ok_or(TableDecodeError::OutOfRange)
}

pub fn join_invariants(a: &InvariantSet, b: &InvariantSet) -> InvariantSet {
    a.union(b)
}

pub fn meet_invariants(a: &InvariantSet, b: &InvariantSet) -> InvariantSet {
    a.intersection(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoupleOp {
    Join,
    Meet,
}

impl FromStr for CoupleOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "join" => Ok(CoupleOp::Join),
            "meet" => Ok(CoupleOp::Meet),
            other => Err(format!("unknown operation `{other}` (expected join or meet)")),
        }
    }
}

/// Cellwise minimum for join and maximum for meet, so zero cells of the
/// result are the union or intersection of the operands' zero cells.
pub fn superpose(t1: &ImplicationTable, t2: &ImplicationTable, op: CoupleOp) -> ImplicationTable {
    match op {
        CoupleOp::Join => t1.zip_with(t2, u32::min),
        CoupleOp::Meet => t1.zip_with(t2, u32::max),
    }
}
