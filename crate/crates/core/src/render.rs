//! Static drawings of a code word's lattice path: a grid, the path with a dot
//! at every vertex, the dashed barrier `y = x + i` and end-point labels.

use std::fmt::Write;

use crate::codeword::CodeWord;
use crate::error::{Error, Result};
use crate::lattice::{tail_to_path, LatticePath, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

/// What to draw and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub path: LatticePath,
    pub barrier: u64,
    pub format: RenderFormat,
    /// Pixels per grid unit in SVG output.
    pub cell: u32,
}

impl RenderSpec {
    /// Strips the marker segment of `word` and draws the tail's path against
    /// the barrier given by the segment length.
    pub fn from_word(word: &CodeWord, allow_empty_path: bool) -> Result<Self> {
        let markers = word.marker_len();
        if markers == 0 {
            return Err(Error::Domain("the empty word has no path".into()));
        }
        let tail = word.tail();
        if tail.is_empty() && !allow_empty_path {
            return Err(Error::Domain(
                "word consists of markers only; its path has no East steps".into(),
            ));
        }
        Ok(RenderSpec {
            path: tail_to_path(&tail, markers)?,
            barrier: markers as u64,
            format: RenderFormat::Svg,
            cell: 40,
        })
    }

    pub fn with_format(mut self, format: RenderFormat) -> Self {
        self.format = format;
        self
    }

    pub fn with_cell(mut self, cell: u32) -> Self {
        self.cell = cell;
        self
    }

    pub fn render(&self) -> String {
        match self.format {
            RenderFormat::Svg => render_svg(&self.path, self.barrier, self.cell),
            RenderFormat::Ascii => render_ascii(&self.path, self.barrier),
        }
    }
}

/// Character drawing, top row first. Path vertices are `o`, steps `-` and
/// `|`, barrier points `/`, other grid points `.`.
pub fn render_ascii(path: &LatticePath, barrier: u64) -> String {
    let end = path.end();
    let (width, height) = (end.x as usize, end.y as usize);
    let cols = 2 * width + 1;
    let rows = 2 * height + 1;
    let mut canvas = vec![vec![' '; cols]; rows];
    let row_of = |y: i64| rows - 1 - 2 * y as usize;

    for y in 0..=height as i64 {
        for x in 0..=width as i64 {
            let c = if Point::new(x, y).on_barrier(barrier as i64) {
                '/'
            } else {
                '.'
            };
            canvas[row_of(y)][2 * x as usize] = c;
        }
    }
    let pts = path.points();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.x > a.x {
            canvas[row_of(a.y)][2 * a.x as usize + 1] = '-';
        } else {
            canvas[row_of(a.y) - 1][2 * a.x as usize] = '|';
        }
    }
    for p in &pts {
        canvas[row_of(p.y)][2 * p.x as usize] = 'o';
    }

    let label_width = height.to_string().len();
    let mut out = String::new();
    for (r, line) in canvas.iter().enumerate() {
        let body: String = line.iter().collect();
        let label = if r % 2 == 0 {
            ((rows - 1 - r) / 2).to_string()
        } else {
            String::new()
        };
        let mut text = format!("{label:>label_width$} {body}");
        if r == 0 {
            let _ = write!(text, "  {end}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    let _ = writeln!(out, "{:>label_width$} (0,0)  barrier y=x+{barrier}", "");
    out
}

/// SVG drawing. Each path vertex is a `<circle class="vertex">`.
pub fn render_svg(path: &LatticePath, barrier: u64, cell: u32) -> String {
    let end = path.end();
    let grid_w = end.x.max(0);
    // the grid reaches the barrier's height above the last column
    let grid_h = (end.x + barrier as i64).max(end.y);
    let cell = cell.max(1) as i64;
    let margin = cell;
    let width = grid_w * cell + 3 * margin;
    let height = grid_h * cell + 2 * margin;
    let sx = |x: i64| margin + x * cell;
    let sy = |y: i64| margin + (grid_h - y) * cell;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str("<g class=\"grid\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for x in 0..=grid_w {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            sx(x),
            sy(0),
            sy(grid_h)
        );
    }
    for y in 0..=grid_h {
        let _ = writeln!(
            out,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            sy(y),
            sx(0),
            sx(grid_w)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
        sx(0),
        sy(0),
        sx(grid_w) + margin / 2,
        sy(0)
    );
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
        sx(0),
        sy(0),
        sx(0),
        sy(grid_h) - margin / 2
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">x</text>"#,
        sx(grid_w) + margin / 2 + 4,
        sy(0) + 4
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">y</text>"#,
        sx(0) - 4,
        sy(grid_h) - margin / 2 - 4
    );

    // barrier, clipped to the grid
    let b = barrier as i64;
    let x_end = grid_w.min(grid_h - b).max(0);
    let _ = writeln!(
        out,
        r##"<line class="barrier" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000" stroke-width="2" stroke-dasharray="6,4"/>"##,
        sx(0),
        sy(b),
        sx(x_end),
        sy(x_end + b)
    );
    let _ = writeln!(
        out,
        r#"<text class="barrier-label" x="{}" y="{}">y=x+{barrier}</text>"#,
        sx(x_end) + 6,
        sy(x_end + b)
    );

    let pts = path.points();
    let coords: Vec<String> = pts
        .iter()
        .map(|p| format!("{},{}", sx(p.x), sy(p.y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline class="path" points="{}" fill="none" stroke="#000000" stroke-width="3"/>"##,
        coords.join(" ")
    );
    for p in &pts {
        let _ = writeln!(
            out,
            r##"<circle class="vertex" cx="{}" cy="{}" r="{}" fill="#000000"/>"##,
            sx(p.x),
            sy(p.y),
            (cell / 10).max(2)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="label" x="{}" y="{}" text-anchor="end">(0,0)</text>"#,
        sx(0) - 4,
        sy(0) + 14
    );
    let _ = writeln!(
        out,
        r#"<text class="label" x="{}" y="{}">{end}</text>"#,
        sx(end.x) + 6,
        sy(end.y)
    );
    out.push_str("</svg>\n");
    out
}
