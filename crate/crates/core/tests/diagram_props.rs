mod common;

use common::strategies::{ground, sequence, structured_sequence};
use common::foreground;
use proptest::prelude::*;
use spp_core::diagram::{
    color_of, join_invariants, meet_invariants, render, render_ansi, render_html, render_json,
    superpose, table_from_json, Color, CoupleOp, Format,
};
use spp_core::miner::{mine, update, ImplicationTable};
use spp_core::{Factor, InvariantSet, PlainSignature};

/// Cells in the order the renderers emit them: antecedent row, then
/// consequent column.
fn cell_order(t: &ImplicationTable) -> Vec<u32> {
    let mut out = Vec::with_capacity(1024);
    for a in Factor::ALL {
        for va in PlainSignature::ALL {
            for c in Factor::ALL {
                for vc in PlainSignature::ALL {
                    out.push(t.get(a, c, va, vc));
                }
            }
        }
    }
    out
}

fn color_count(name_or_code: &str) -> u32 {
    let by_name = Color::ALL.iter().find(|c| c.name() == name_or_code);
    let by_code = Color::ALL.iter().find(|c| c.ansi_background().to_string() == name_or_code);
    by_name.or(by_code).map(|c| c.count()).unwrap_or_else(|| panic!("no color {name_or_code}"))
}

/// Reads counts back out of the terminal rendering.
fn decode_ansi(text: &str) -> Vec<u32> {
    let mut out = Vec::new();
    for line in text.lines().skip(2).filter(|l| !l.starts_with('=')) {
        for block in line.split('|').skip(1) {
            let mut rest = block;
            while !rest.is_empty() {
                if let Some(tail) = rest.strip_prefix("\x1b[") {
                    let m = tail.find('m').unwrap();
                    out.push(color_count(&tail[..m]));
                    let reset = tail.find("\x1b[0m").unwrap();
                    rest = &tail[reset + 4..];
                } else {
                    out.push(rest[..3].trim().parse().unwrap());
                    rest = &rest[3..];
                }
            }
        }
    }
    out
}

/// Reads counts back out of the HTML rendering.
fn decode_html(text: &str) -> Vec<u32> {
    let mut out = Vec::new();
    for piece in text.split("<td").skip(1) {
        let (attrs, rest) = piece.split_once('>').unwrap();
        let body = &rest[..rest.find("</td>").unwrap()];
        let color = Color::ALL.iter().find(|c| {
            attrs
                .split('"')
                .nth(1)
                .is_some_and(|classes| classes.split(' ').any(|k| k == c.name()))
        });
        out.push(match color {
            Some(c) => c.count(),
            None => body.parse().unwrap(),
        });
    }
    out
}

fn invariant_set() -> impl Strategy<Value = InvariantSet> {
    prop::collection::vec(ground(), 0..200).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn join_meet_form_a_lattice(a in invariant_set(), b in invariant_set(), c in invariant_set()) {
        let j = join_invariants;
        let m = meet_invariants;
        prop_assert_eq!(j(&a, &b), j(&b, &a));
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(j(&j(&a, &b), &c), j(&a, &j(&b, &c)));
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(j(&a, &a), a.clone());
        prop_assert_eq!(m(&a, &a), a.clone());
        prop_assert_eq!(j(&a, &m(&a, &b)), a.clone());
        prop_assert_eq!(m(&a, &j(&a, &b)), a.clone());
        prop_assert_eq!(j(&a, &InvariantSet::empty()), a.clone());
        prop_assert_eq!(m(&a, &InvariantSet::full()), a);
    }

    #[test]
    fn superposition_zeros_follow_the_sets(p in structured_sequence(1, 8), q in sequence(1, 8)) {
        let (tp, tq) = (update(&p), update(&q));
        let (mp, mq) = (mine(&p), mine(&q));
        prop_assert_eq!(superpose(&tp, &tq, CoupleOp::Join).zeros(), join_invariants(&mp, &mq));
        prop_assert_eq!(superpose(&tp, &tq, CoupleOp::Meet).zeros(), meet_invariants(&mp, &mq));
        let join = cell_order(&superpose(&tp, &tq, CoupleOp::Join));
        let meet = cell_order(&superpose(&tp, &tq, CoupleOp::Meet));
        for ((x, y), (lo, hi)) in cell_order(&tp).into_iter().zip(cell_order(&tq)).zip(join.into_iter().zip(meet)) {
            prop_assert_eq!(lo, x.min(y));
            prop_assert_eq!(hi, x.max(y));
        }
    }

    #[test]
    fn renderings_decode_to_the_table(seq in sequence(1, 12)) {
        let t = update(&seq);
        let expected = cell_order(&t);
        prop_assert_eq!(decode_ansi(&render_ansi(&t)), expected.clone());
        prop_assert_eq!(decode_html(&render_html(&t)), expected);
        prop_assert_eq!(table_from_json(&render_json(&t)).unwrap(), t);
    }

    #[test]
    fn palette_is_fixed(n in 0u32..64) {
        let expected = match n {
            0 => Some(Color::Black),
            1 => Some(Color::Red),
            2 => Some(Color::Orange),
            3 => Some(Color::Yellow),
            _ => None,
        };
        prop_assert_eq!(color_of(n), expected);
    }
}

#[test]
fn foreground_renderings() {
    let t = update(&foreground());
    let expected = cell_order(&t);
    assert_eq!(decode_ansi(&render_ansi(&t)), expected);
    assert_eq!(decode_html(&render_html(&t)), expected);
    assert_eq!(table_from_json(&render_json(&t)).unwrap(), t);
    for format in [Format::Ansi, Format::Html, Format::Svg, Format::Json] {
        assert_eq!(render(&t, format), render(&t, format));
    }
    let svg = render(&t, Format::Svg);
    assert_eq!(svg.matches("<rect").count(), 1 + 1024);
    assert_eq!(svg.matches("fill=\"#000000\"").count(), t.zeros().len());
}

#[test]
fn hex_palette() {
    let hex: Vec<_> = Color::ALL.iter().map(|c| c.hex()).collect();
    assert_eq!(hex, ["#000000", "#FF0000", "#FFA500", "#FFFF00"]);
}

#[test]
fn malformed_table_json() {
    assert!(table_from_json("{}").is_err());
    let t = update(&foreground());
    let bumped = render_json(&t).replace("\"sequence_length\":10", "\"sequence_length\":0");
    assert!(table_from_json(&bumped).is_err());
    assert!("png".parse::<Format>().is_err());
    assert!("join".parse::<CoupleOp>().is_ok() && "xor".parse::<CoupleOp>().is_err());
}
