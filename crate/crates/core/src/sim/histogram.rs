use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::{Error, Result};

/// Final-measurement counts keyed by bitstring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShotHistogram {
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl ShotHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, bits: String) {
        *self.counts.entry(bits).or_default() += 1;
        self.shots += 1;
    }

    pub fn merge(&mut self, other: &ShotHistogram) {
        for (k, v) in &other.counts {
            *self.counts.entry(k.clone()).or_default() += v;
        }
        self.shots += other.shots;
    }

    pub fn count(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    /// Bitstring width, or 0 when empty.
    pub fn width(&self) -> usize {
        self.counts.keys().next().map_or(0, String::len)
    }

    pub fn hamming(&self) -> BTreeMap<usize, u64> {
        let mut h = BTreeMap::new();
        for (k, v) in &self.counts {
            *h.entry(k.bytes().filter(|&b| b == b'1').count()).or_default() += v;
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("bitstring,count\n");
        for (k, v) in &self.counts {
            writeln!(s, "{k},{v}").expect("string write");
        }
        s
    }

    pub fn hamming_csv(&self) -> String {
        let mut s = String::from("hamming_weight,count\n");
        for (k, v) in self.hamming() {
            writeln!(s, "{k},{v}").expect("string write");
        }
        s
    }

    pub fn from_csv(src: &str) -> Result<Self> {
        let mut hist = ShotHistogram::new();
        for (bits, count) in parse_rows(src, "bitstring,count")? {
            if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Histogram(format!("'{bits}' is not a bitstring")));
            }
            if hist.counts.insert(bits.to_string(), count).is_some() {
                return Err(Error::Histogram(format!("duplicate bitstring '{bits}'")));
            }
            hist.shots += count;
        }
        Ok(hist)
    }

    /// SVG bar chart of the bitstring or Hamming-weight distribution.
    pub fn to_svg(&self, by_hamming: bool, title: &str) -> String {
        let bars: Vec<(String, u64)> = if by_hamming {
            let h = self.hamming();
            (0..=self.width()).map(|w| (w.to_string(), h.get(&w).copied().unwrap_or(0))).collect()
        } else {
            self.counts.iter().map(|(k, v)| (k.clone(), *v)).collect()
        };
        bar_chart(&bars, title)
    }
}

pub fn hamming_from_csv(src: &str) -> Result<BTreeMap<usize, u64>> {
    let mut h = BTreeMap::new();
    for (w, count) in parse_rows(src, "hamming_weight,count")? {
        let w: usize = w.parse().map_err(|_| Error::Histogram(format!("bad weight '{w}'")))?;
        if h.insert(w, count).is_some() {
            return Err(Error::Histogram(format!("duplicate weight {w}")));
        }
    }
    Ok(h)
}

fn parse_rows<'s>(src: &'s str, header: &str) -> Result<Vec<(&'s str, u64)>> {
    let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some(h) if h == header => {}
        other => return Err(Error::Histogram(format!("expected header '{header}', found {other:?}"))),
    }
    lines
        .map(|l| {
            let (k, v) = l.split_once(',').ok_or_else(|| Error::Histogram(format!("malformed row '{l}'")))?;
            let v = v.trim().parse().map_err(|_| Error::Histogram(format!("bad count in '{l}'")))?;
            Ok((k.trim(), v))
        })
        .collect()
}

fn bar_chart(bars: &[(String, u64)], title: &str) -> String {
    let (w, h, margin) = (640.0, 360.0, 40.0);
    let max = bars.iter().map(|b| b.1).max().unwrap_or(0).max(1) as f64;
    let slot = (w - 2.0 * margin) / bars.len().max(1) as f64;
    let plot_h = h - 2.0 * margin;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#, w / 2.0, escape(title))
        .unwrap();
    let y0 = h - margin;
    writeln!(s, r#"<line x1="{margin}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, w - margin).unwrap();
    for (i, (label, count)) in bars.iter().enumerate() {
        let bh = plot_h * *count as f64 / max;
        let x = margin + slot * i as f64;
        writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#4a7ab5"><title>{}: {}</title></rect>"##,
            x + slot * 0.1,
            y0 - bh,
            slot * 0.8,
            bh,
            escape(label),
            count
        )
        .unwrap();
        if bars.len() <= 64 {
            writeln!(
                s,
                r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="9">{}</text>"#,
                x + slot / 2.0,
                y0 + 12.0,
                escape(label)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
