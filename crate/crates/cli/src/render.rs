//! ASCII and SVG views of a crease pattern and of its folded state.
//!
//! Output depends only on the input, so renders are byte-for-byte stable.

use std::fmt::Write;

use fold1d::pattern::{CreasePattern, PartialMvAssignment};
use fold1d::{FoldedState, Mv};

const ASCII_COLUMNS: i128 = 64;
const SVG_WIDTH: f64 = 640.0;
const SVG_MARGIN: f64 = 40.0;
const LAYER_GAP: f64 = 14.0;

/// Maps `[x0, x0 + span]` onto `0..=columns`.
struct Scale {
    x0: i128,
    span: i128,
    columns: i128,
}

impl Scale {
    fn new(x0: i64, x1: i64) -> Scale {
        let span = (x1 as i128 - x0 as i128).max(1);
        let columns = if span <= ASCII_COLUMNS { span * (ASCII_COLUMNS / span) } else { ASCII_COLUMNS };
        Scale { x0: x0 as i128, span, columns }
    }

    fn col(&self, x: i64) -> usize {
        ((x as i128 - self.x0) * self.columns / self.span) as usize
    }

    fn svg(&self, x: i64) -> f64 {
        SVG_MARGIN + (x as i128 - self.x0) as f64 * (SVG_WIDTH - 2.0 * SVG_MARGIN) / self.span as f64
    }
}

fn label_char(l: Option<Mv>) -> char {
    l.map_or('?', Mv::as_char)
}

pub fn ruler_ascii(c: &CreasePattern, labels: &PartialMvAssignment) -> String {
    let pos = c.positions();
    let scale = Scale::new(pos[0], pos[pos.len() - 1]);
    let mut line: Vec<char> = vec!['-'; scale.columns as usize + 1];
    line[0] = '|';
    line[scale.columns as usize] = '|';
    for id in c.crease_ids() {
        line[scale.col(pos[id])] = label_char(labels.label(id));
    }
    let mut out = String::new();
    writeln!(out, "{} creases on [{}, {}]", c.num_creases(), pos[0], pos[pos.len() - 1]).unwrap();
    writeln!(out, "{}", line.iter().collect::<String>()).unwrap();
    for id in c.crease_ids() {
        writeln!(out, "c{id:<4} x={:<12} {}", pos[id], label_char(labels.label(id))).unwrap();
    }
    out
}

pub fn folded_ascii(s: &FoldedState) -> String {
    let lo = s.layers.iter().map(|l| l.lo).min().unwrap_or(0);
    let hi = s.layers.iter().map(|l| l.hi).max().unwrap_or(0);
    let scale = Scale::new(lo, hi);
    let mut order: Vec<usize> = (0..s.layers.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(s.layers[i].level));
    let mut out = String::new();
    writeln!(out, "{} layers folded onto [{lo}, {hi}], top first", s.layers.len()).unwrap();
    for i in order {
        let l = &s.layers[i];
        let (a, b) = (scale.col(l.lo), scale.col(l.hi));
        let mut row = " ".repeat(a);
        if l.flipped {
            row.push('<');
            row.push_str(&"=".repeat(b - a));
        } else {
            row.push_str(&"=".repeat(b - a));
            row.push('>');
        }
        let pad = scale.columns as usize + 2 - row.len();
        writeln!(out, "{row}{}  [{}] {}..{}", " ".repeat(pad), i, l.lo, l.hi).unwrap();
    }
    out
}

fn stroke(l: Option<Mv>) -> (&'static str, &'static str) {
    match l {
        Some(Mv::M) => ("#c0392b", "8 3 2 3"),
        Some(Mv::V) => ("#2471a3", "6 4"),
        None => ("#7f8c8d", "2 2"),
    }
}

fn svg_open(out: &mut String, height: f64) {
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{height:.1}\" viewBox=\"0 0 {SVG_WIDTH} {height:.1}\">"
    )
    .unwrap();
    writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
}

pub fn ruler_svg(c: &CreasePattern, labels: &PartialMvAssignment) -> String {
    let pos = c.positions();
    let scale = Scale::new(pos[0], pos[pos.len() - 1]);
    let y = 60.0;
    let mut out = String::new();
    svg_open(&mut out, 120.0);
    writeln!(
        out,
        "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"black\" stroke-width=\"2\"/>",
        scale.svg(pos[0]),
        scale.svg(pos[pos.len() - 1])
    )
    .unwrap();
    for id in c.crease_ids() {
        let x = scale.svg(pos[id]);
        let l = labels.label(id);
        let (color, dash) = stroke(l);
        writeln!(
            out,
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"{color}\" stroke-dasharray=\"{dash}\" stroke-width=\"1.5\"/>",
            y - 20.0,
            y + 20.0
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\" fill=\"{color}\">c{id} {}</text>",
            y + 34.0,
            label_char(l)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn folded_svg(s: &FoldedState, labels: &PartialMvAssignment) -> String {
    let lo = s.layers.iter().map(|l| l.lo).min().unwrap_or(0);
    let hi = s.layers.iter().map(|l| l.hi).max().unwrap_or(0);
    let scale = Scale::new(lo, hi);
    let top = s.layers.iter().map(|l| l.level).max().unwrap_or(0);
    let height = (top + 1) as f64 * LAYER_GAP + 2.0 * SVG_MARGIN;
    let y = |level: usize| SVG_MARGIN + (top - level) as f64 * LAYER_GAP;
    let mut out = String::new();
    svg_open(&mut out, height);
    for (i, l) in s.layers.iter().enumerate() {
        writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"3\"><title>interval {i}</title></line>",
            scale.svg(l.lo),
            y(l.level),
            scale.svg(l.hi),
            y(l.level)
        )
        .unwrap();
    }
    for (k, &x) in s.crease_points.iter().enumerate() {
        let (a, b) = (&s.layers[k], &s.layers[k + 1]);
        let (y1, y2) = (y(a.level).min(y(b.level)), y(a.level).max(y(b.level)));
        let r = (y2 - y1) / 2.0;
        // Bulge away from the layers: right when the crease is their right end.
        let sweep = u8::from(x == a.hi);
        let (color, _) = stroke(labels.label(k + 1));
        let px = scale.svg(x);
        writeln!(
            out,
            "<path d=\"M {px:.1} {y1:.1} A {r:.1} {r:.1} 0 0 {sweep} {px:.1} {y2:.1}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"><title>c{}</title></path>",
            k + 1
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
