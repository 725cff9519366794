//! Deterministic SVG rendering of fronts, handleslide marks, and disks.
//!
//! Layout: event `t` sits at `x = MARGIN + (t + 1) · STEP`; strand level `k`
//! sits at `y = TOP + k · VSTEP`. All coordinates are fixed-point formatted,
//! so identical inputs produce byte-identical documents.

use std::fmt::Write as _;

use legmcs::front::{EventKind, FrontDiagram};
use legmcs::mcs::Mcs;

const MARGIN: f64 = 30.0;
const STEP: f64 = 80.0;
const VSTEP: f64 = 44.0;
const TOP: f64 = 20.0;
const GAP: f64 = 16.0;

fn x_event(t: usize) -> f64 {
    MARGIN + (t as f64 + 1.0) * STEP
}

/// West and east strand-segment boundaries of slot `t`.
fn slot_span(t: usize) -> (f64, f64) {
    let west = if t == 0 { MARGIN } else { x_event(t - 1) + GAP };
    (west, x_event(t) - GAP)
}

fn y(level: usize) -> f64 {
    TOP + level as f64 * VSTEP
}

fn slot_center(t: usize) -> f64 {
    MARGIN + t as f64 * STEP + STEP / 2.0
}

/// Renders the front, optional handleslide marks, optional disk boundary
/// paths (as `(slot, strand)` vertex cycles), and event labels.
pub fn render_svg(
    front: &FrontDiagram,
    mcs: Option<&Mcs>,
    disks: &[Vec<(usize, usize)>],
    labels: &[(usize, String)],
) -> String {
    let events = front.events();
    let max_strands = (0..front.slots()).map(|t| front.strands_at(t)).max().unwrap_or(0);
    let width = 2.0 * MARGIN + (events.len() as f64 + 1.0) * STEP;
    let height = TOP + (max_strands as f64 + 1.0) * VSTEP + 26.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1}\" height=\"{:.1}\" \
         viewBox=\"0 0 {:.1} {:.1}\">",
        width, height, width, height
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    // Disks first, underneath the strands.
    for path in disks {
        if path.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (i, &(slot, strand)) in path.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{}{:.1} {:.1} ", cmd, slot_center(slot), y(strand));
        }
        d.push('Z');
        let _ = writeln!(
            s,
            "<path d=\"{}\" fill=\"#6699cc\" fill-opacity=\"0.25\" stroke=\"#336699\" \
             stroke-width=\"1.0\"/>",
            d
        );
    }

    // Strand segments inside each slot.
    let strand = "stroke=\"#222222\" stroke-width=\"2.0\" fill=\"none\"";
    for t in 0..front.slots() {
        let n = front.strands_at(t);
        if n == 0 {
            continue;
        }
        let (xs, xe) = slot_span(t);
        for k in 1..=n {
            let _ = writeln!(
                s,
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" {}/>",
                xs,
                y(k),
                xe,
                y(k),
                strand
            );
        }
    }

    // Transitions across each event.
    for (t, ev) in events.iter().enumerate() {
        let k = ev.level;
        let xw = x_event(t) - GAP;
        let xe = x_event(t) + GAP;
        let west = front.strands_at(t);
        let mut line = |yl: f64, yr: f64| {
            let _ = writeln!(
                s,
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" {}/>",
                xw, yl, xe, yr, strand
            );
        };
        match ev.kind {
            EventKind::Crossing => {
                for l in 1..=west {
                    if l == k {
                        line(y(k), y(k + 1));
                    } else if l == k + 1 {
                        line(y(k + 1), y(k));
                    } else {
                        line(y(l), y(l));
                    }
                }
            }
            EventKind::LeftCusp => {
                for l in 1..=west {
                    if l < k {
                        line(y(l), y(l));
                    } else {
                        line(y(l), y(l + 2));
                    }
                }
                let _ = writeln!(
                    s,
                    "<path d=\"M{:.1} {:.1} C{:.1} {:.1} {:.1} {:.1} {:.1} {:.1}\" {}/>",
                    xe,
                    y(k),
                    xw,
                    y(k),
                    xw,
                    y(k + 1),
                    xe,
                    y(k + 1),
                    strand
                );
            }
            EventKind::RightCusp => {
                for l in 1..=west {
                    if l < k {
                        line(y(l), y(l));
                    } else if l > k + 1 {
                        line(y(l), y(l - 2));
                    }
                }
                let _ = writeln!(
                    s,
                    "<path d=\"M{:.1} {:.1} C{:.1} {:.1} {:.1} {:.1} {:.1} {:.1}\" {}/>",
                    xw,
                    y(k),
                    xe,
                    y(k),
                    xe,
                    y(k + 1),
                    xw,
                    y(k + 1),
                    strand
                );
            }
        }
    }

    // Handleslide marks, spread west to east within their slot.
    if let Some(mcs) = mcs {
        for t in 0..mcs.slot_count() {
            let marks = mcs.slot(t);
            if marks.is_empty() {
                continue;
            }
            let (xs, xe) = slot_span(t);
            let pitch = (xe - xs) / (marks.len() as f64 + 1.0);
            for (i, &(top, bot)) in marks.iter().enumerate() {
                let x = xs + pitch * (i as f64 + 1.0);
                let _ = writeln!(
                    s,
                    "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
                     stroke=\"#bb3333\" stroke-width=\"2.5\"/>",
                    x,
                    y(top),
                    x,
                    y(bot)
                );
                for yy in [y(top), y(bot)] {
                    let _ = writeln!(
                        s,
                        "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.5\" fill=\"#bb3333\"/>",
                        x, yy
                    );
                }
            }
        }
    }

    // Event labels along the bottom.
    for (event, name) in labels {
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"13\" \
             fill=\"#555555\" text-anchor=\"middle\">{}</text>",
            x_event(*event),
            height - 8.0,
            name
        );
    }

    s.push_str("</svg>\n");
    s
}
