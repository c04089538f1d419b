//! Zero-curve plots: marching squares over Re f and Im f, written as SVG.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;
use crate::solver::{Root, Sign};

const VIEW: f64 = 800.0;

#[derive(Clone, Copy, Debug)]
pub struct PlotSpec {
    /// (x0, x1, y0, y1)
    pub window: (f64, f64, f64, f64),
    /// Lattice nodes per axis.
    pub samples: u32,
    pub show_roots: bool,
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        let (x0, x1, y0, y1) = self.window;
        if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite())
            || x0 >= x1
            || y0 >= y1
        {
            return Err(Error::Malformed(format!(
                "degenerate window ({x0}, {x1}, {y0}, {y1})"
            )));
        }
        if self.samples < 16 {
            return Err(Error::Malformed(format!(
                "samples must be at least 16, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

type Segment = ((f64, f64), (f64, f64));

/// Marching squares on one scalar field given by values[ix][iy] over the
/// lattice; saddle cells are split by the sign of the field at the cell
/// center.
fn march<F: Fn(f64, f64) -> f64>(
    values: &[Vec<f64>],
    xs: &[f64],
    ys: &[f64],
    center_value: F,
) -> Vec<Segment> {
    let n = xs.len();
    let mut segments = Vec::new();
    let cross = |pa: (f64, f64), va: f64, pb: (f64, f64), vb: f64| -> (f64, f64) {
        let s = va / (va - vb);
        (pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1))
    };
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let p = [
                (xs[i], ys[j]),
                (xs[i + 1], ys[j]),
                (xs[i + 1], ys[j + 1]),
                (xs[i], ys[j + 1]),
            ];
            let v = [
                values[i][j],
                values[i + 1][j],
                values[i + 1][j + 1],
                values[i][j + 1],
            ];
            let bits: usize = (0..4).map(|k| usize::from(v[k] >= 0.0) << k).sum();
            if bits == 0 || bits == 0b1111 {
                continue;
            }
            // edge k joins corner k and corner (k+1) % 4
            let edge = |k: usize| cross(p[k], v[k], p[(k + 1) % 4], v[(k + 1) % 4]);
            let mut put = |a: usize, b: usize| segments.push((edge(a), edge(b)));
            match bits {
                0b0001 | 0b1110 => put(3, 0),
                0b0010 | 0b1101 => put(0, 1),
                0b0100 | 0b1011 => put(1, 2),
                0b1000 | 0b0111 => put(2, 3),
                0b0011 | 0b1100 => put(3, 1),
                0b0110 | 0b1001 => put(0, 2),
                0b0101 | 0b1010 => {
                    let cx = 0.5 * (xs[i] + xs[i + 1]);
                    let cy = 0.5 * (ys[j] + ys[j + 1]);
                    let center_positive = center_value(cx, cy) >= 0.0;
                    let zero_positive = v[0] >= 0.0;
                    if center_positive == zero_positive {
                        // center joins the corner-0 diagonal
                        put(0, 1);
                        put(2, 3);
                    } else {
                        put(3, 0);
                        put(1, 2);
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    segments
}

/// Renders the zero curves of Re f (green) and Im f (red), with optional
/// root markers: filled circles positive, hollow negative, gray degenerate.
pub fn render_svg(f: &MixedPolynomial, spec: &PlotSpec, roots: Option<&[Root]>) -> Result<String> {
    spec.validate()?;
    let (x0, x1, y0, y1) = spec.window;
    let n = spec.samples as usize;
    let xs: Vec<f64> = (0..n).map(|i| x0 + (x1 - x0) * i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = (0..n).map(|j| y0 + (y1 - y0) * j as f64 / (n - 1) as f64).collect();
    let mut g = vec![vec![0.0f64; n]; n];
    let mut h = vec![vec![0.0f64; n]; n];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let v = f.evaluate(Complex64::new(x, y));
            g[i][j] = v.re;
            h[i][j] = v.im;
        }
    }
    let green = march(&g, &xs, &ys, |x, y| f.evaluate(Complex64::new(x, y)).re);
    let red = march(&h, &xs, &ys, |x, y| f.evaluate(Complex64::new(x, y)).im);

    let px = |x: f64| VIEW * (x - x0) / (x1 - x0);
    let py = |y: f64| VIEW * (y1 - y) / (y1 - y0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW} {VIEW}\" \
         data-window=\"{x0},{x1},{y0},{y1}\" data-samples=\"{}\">\n",
        spec.samples
    ));
    out.push_str(&format!(
        "<rect width=\"{VIEW}\" height=\"{VIEW}\" fill=\"white\"/>\n"
    ));
    for (color, segments) in [("green", &green), ("red", &red)] {
        out.push_str(&format!(
            "<g stroke=\"{color}\" stroke-width=\"1.2\" fill=\"none\">\n"
        ));
        for &((ax, ay), (bx, by)) in segments {
            out.push_str(&format!(
                "<path d=\"M {:.6} {:.6} L {:.6} {:.6}\"/>\n",
                px(ax),
                py(ay),
                px(bx),
                py(by)
            ));
        }
        out.push_str("</g>\n");
    }
    if let Some(roots) = roots {
        out.push_str("<g stroke=\"black\" stroke-width=\"1.5\">\n");
        for r in roots {
            let (x, y) = (r.location.re, r.location.im);
            if x < x0 || x > x1 || y < y0 || y > y1 {
                continue;
            }
            let fill = match r.sign {
                Sign::Positive => "black",
                Sign::Negative => "none",
                Sign::Degenerate => "gray",
            };
            out.push_str(&format!(
                "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"5\" fill=\"{fill}\"/>\n",
                px(x),
                py(y)
            ));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
