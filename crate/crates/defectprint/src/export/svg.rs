//! Minimal line plot of L against wavelength.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

/// `points` are (wavelength_nm, L); non-finite points are skipped.
pub fn spectrum_svg(points: &[(f64, f64)], title: &str) -> String {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let (mut x0, mut x1) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let y1 = pts.iter().fold(0.0f64, |m, p| m.max(p.1));
    let y1 = if y1 > 0.0 { y1 } else { 1.0 };
    if pts.is_empty() {
        (x0, x1) = (0.0, 1.0);
    } else if x1 <= x0 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - y / y1 * (HEIGHT - 2.0 * MARGIN);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    );
    out.push_str(&format!(
        "<path d=\"M{m:.2} {t:.2} V{b:.2} H{r:.2}\" stroke=\"black\" fill=\"none\"/>\n",
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    ));
    let step = nice_step(x1 - x0);
    let mut tick = (x0 / step).ceil() * step;
    while tick <= x1 + 1e-9 * step {
        let x = sx(tick);
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{b:.2}\" x2=\"{x:.2}\" y2=\"{b5:.2}\" stroke=\"black\"/>\
             <text x=\"{x:.2}\" y=\"{bt:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{tick}</text>\n",
            b = HEIGHT - MARGIN,
            b5 = HEIGHT - MARGIN + 5.0,
            bt = HEIGHT - MARGIN + 18.0,
        ));
        tick += step;
    }
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">wavelength (nm)</text>\n\
         <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">PL intensity (arb. u.)</text>\n",
        WIDTH / 2.0,
        HEIGHT - 14.0,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    ));
    if !pts.is_empty() {
        let mut d = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            d.push_str(&format!(
                "{}{:.2} {:.2}",
                if i == 0 { "M" } else { " L" },
                sx(*x),
                sy(*y)
            ));
        }
        out.push_str(&format!(
            "<path d=\"{d}\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" fill=\"none\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
