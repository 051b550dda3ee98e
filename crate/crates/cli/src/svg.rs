//! SVG pictures of tilings, one labelled rectangle per square.

use std::fmt::Write;

use sqtile_core::{Placement, Tiling};

/// FNV-1a of the side, mapped to a light colour.
fn color(side: i64) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in side.to_le_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let c = |shift: u32| 0x60 + ((h >> shift) & 0x9f) as u8;
    format!("#{:02x}{:02x}{:02x}", c(0), c(16), c(32))
}

/// The picture uses the tiling's coordinates directly, so `y` grows
/// downwards. Squares overhanging a window are clipped by the view box.
pub fn render_svg(t: &Tiling) -> String {
    let b = t.region().bounds();
    let mut squares: Vec<Placement> = t.squares().to_vec();
    squares.sort_unstable_by_key(|p| (p.y(), p.x(), p.side()));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        b.x0,
        b.y0,
        b.x1 - b.x0,
        b.y1 - b.y0
    );
    for p in &squares {
        let s = p.side();
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{s}" height="{s}" fill="{}" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
            p.x(),
            p.y(),
            color(s),
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="central">{s}</text>"#,
            p.x() as f64 + s as f64 / 2.0,
            p.y() as f64 + s as f64 / 2.0,
            s as f64 * 0.4,
        );
    }
    out.push_str("</svg>\n");
    out
}
