//! SVG rendering of semi-invariant pictures on S^1 and S^2.
//!
//! All geometry stays rational until the final coordinate formatting; the
//! stereographic pole is chosen deterministically from a fixed rational
//! candidate list, off every wall.

use semipic::exactgeom::{LabeledCone, RatMatrix, RatVec};
use semipic::{Error, Result};

const SIZE: f64 = 420.0;
const RADIUS: f64 = 150.0;
const ARC_SAMPLES: usize = 96;
const CLIP: f64 = 2000.0;

fn fmt(x: f64) -> String {
    format!("{:.4}", x)
}

/// Orthonormalized f64 basis from a rational basis.
fn orthonormal_basis(basis: &[RatVec]) -> Vec<Vec<f64>> {
    let to_f = |v: &RatVec| -> Vec<f64> {
        v.coords
            .iter()
            .map(|c| {
                let n: f64 = c.numer().to_string().parse().unwrap_or(0.0);
                let d: f64 = c.denom().to_string().parse().unwrap_or(1.0);
                n / d
            })
            .collect()
    };
    let mut out: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let mut v = to_f(b);
        for o in &out {
            let dot: f64 = v.iter().zip(o).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(o) {
                *x -= dot * y;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            out.push(v);
        }
    }
    out
}

fn coords_in(frame: &[Vec<f64>], x: &RatVec) -> Vec<f64> {
    let xf: Vec<f64> = x
        .coords
        .iter()
        .map(|c| {
            let n: f64 = c.numer().to_string().parse().unwrap_or(0.0);
            let d: f64 = c.denom().to_string().parse().unwrap_or(1.0);
            n / d
        })
        .collect();
    frame
        .iter()
        .map(|f| f.iter().zip(&xf).map(|(a, b)| a * b).sum())
        .collect()
}

/// Directions sweeping a 1- or 2-dimensional cone, as rational vectors.
fn sweep_directions(cone: &semipic::exactgeom::Cone, samples: usize) -> Vec<RatVec> {
    use semipic::exactgeom::rat;
    let mix = |a: &RatVec, b: &RatVec, t: usize, n: usize| -> RatVec {
        let wa = rat((n - t) as i64);
        let wb = rat(t as i64);
        &a.scale(&wa) + &b.scale(&wb)
    };
    match (cone.lineality.len(), cone.rays.len()) {
        (0, 1) => vec![cone.rays[0].clone()],
        (1, 0) => vec![cone.lineality[0].clone(), -&cone.lineality[0]],
        (0, 2) => (0..=samples)
            .map(|t| mix(&cone.rays[0], &cone.rays[1], t, samples))
            .collect(),
        (1, 1) => {
            // half-plane: sweep from l through the ray to -l
            let l = &cone.lineality[0];
            let r = &cone.rays[0];
            let half = samples / 2;
            let mut out: Vec<RatVec> = (0..=half).map(|t| mix(l, r, t, half)).collect();
            out.extend((1..=half).map(|t| mix(r, &-l, t, half)));
            out
        }
        (2, 0) => {
            // full plane: closed loop through l1, l2, -l1, -l2
            let l1 = &cone.lineality[0];
            let l2 = &cone.lineality[1];
            let q = samples / 4;
            let mut out = Vec::new();
            let legs = [
                (l1.clone(), l2.clone()),
                (l2.clone(), -l1),
                (-l1, -l2),
                (-l2, l1.clone()),
            ];
            for (a, b) in legs {
                out.extend((0..q).map(|t| mix(&a, &b, t, q)));
            }
            out.push(l1.clone());
            out
        }
        _ => cone.generators.clone(),
    }
}

/// Render a 2-dimensional picture (walls are rays on a circle).
fn render_circle(
    walls: &[LabeledCone],
    corners: &[(String, RatVec)],
    eta: &RatVec,
    frame: &[Vec<f64>],
) -> String {
    let c = SIZE / 2.0;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE
    ));
    svg.push_str(&format!(
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#bbbbbb\"/>\n",
        fmt(c),
        fmt(c),
        fmt(RADIUS)
    ));
    for w in walls {
        let dashed = &w.label == eta;
        for dir in sweep_directions(&w.cone, 2) {
            let y = coords_in(frame, &dir);
            let norm = (y[0] * y[0] + y[1] * y[1]).sqrt();
            if norm < 1e-12 {
                continue;
            }
            let (px, py) = (c + RADIUS * y[0] / norm, c - RADIUS * y[1] / norm);
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"{}/>\n",
                fmt(c),
                fmt(c),
                fmt(px),
                fmt(py),
                if dashed { "#cc3333" } else { "#333333" },
                if dashed {
                    " stroke-dasharray=\"6 4\""
                } else {
                    ""
                }
            ));
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3.2\" fill=\"#222222\"/>\n",
                fmt(px),
                fmt(py)
            ));
            if let Some(name) = &w.module {
                svg.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" font-size=\"10\">{}</text>\n",
                    fmt(c + (RADIUS + 16.0) * y[0] / norm),
                    fmt(c - (RADIUS + 16.0) * y[1] / norm),
                    name
                ));
            }
        }
    }
    for (name, v) in corners {
        let y = coords_in(frame, v);
        let norm = (y[0] * y[0] + y[1] * y[1]).sqrt();
        if norm < 1e-12 {
            continue;
        }
        let (px, py) = (c + RADIUS * y[0] / norm, c - RADIUS * y[1] / norm);
        svg.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.4\" fill=\"#3355cc\"/><text x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#3355cc\">{}</text>\n",
            fmt(px), fmt(py), fmt(px + 4.0), fmt(py - 4.0), name
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Deterministic pole choice: the first candidate direction lying on no wall.
fn choose_pole(walls: &[LabeledCone], basis: &[RatVec]) -> Result<RatVec> {
    use semipic::exactgeom::rat;
    let candidates: [[i64; 3]; 12] = [
        [1, 2, 3],
        [3, 1, 2],
        [2, 3, 1],
        [1, 1, 2],
        [2, 1, 1],
        [1, 3, 1],
        [5, 2, 1],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [7, 3, 2],
        [3, 5, 7],
    ];
    'cand: for cand in candidates {
        let mut p = RatVec::zero(basis[0].dim());
        for (b, &c) in basis.iter().zip(cand.iter()) {
            p = &p + &b.scale(&rat(c));
        }
        for w in walls {
            if w.cone.contains(&p) || w.cone.contains(&-&p) {
                continue 'cand;
            }
        }
        return Ok(p);
    }
    Err(Error::Internal(
        "no pole candidate avoids every wall".into(),
    ))
}

/// Render a 3-dimensional picture by stereographic projection of S^2 from a
/// pole off every wall.
fn render_sphere(
    walls: &[LabeledCone],
    corners: &[(String, RatVec)],
    eta: &RatVec,
    basis: &[RatVec],
) -> Result<String> {
    let pole = choose_pole(walls, basis)?;
    let frame3 = orthonormal_basis(basis);
    let p3 = {
        let y = coords_in(&frame3, &pole);
        let n = (y.iter().map(|x| x * x).sum::<f64>()).sqrt();
        vec![y[0] / n, y[1] / n, y[2] / n]
    };
    // orthonormal frame (f1, f2) perpendicular to the pole
    let seed = if p3[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut f1 = [0.0f64; 3];
    let dot = seed.iter().zip(&p3).map(|(a, b)| a * b).sum::<f64>();
    for i in 0..3 {
        f1[i] = seed[i] - dot * p3[i];
    }
    let n1 = f1.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in f1.iter_mut() {
        *x /= n1;
    }
    let f2 = [
        p3[1] * f1[2] - p3[2] * f1[1],
        p3[2] * f1[0] - p3[0] * f1[2],
        p3[0] * f1[1] - p3[1] * f1[0],
    ];
    let project = |x: &RatVec| -> Option<(f64, f64)> {
        let y = coords_in(&frame3, x);
        let n = (y.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if n < 1e-12 {
            return None;
        }
        let u: Vec<f64> = y.iter().map(|v| v / n).collect();
        let denom = 1.0 - u.iter().zip(&p3).map(|(a, b)| a * b).sum::<f64>();
        if denom.abs() < 1e-9 {
            return None;
        }
        let a = u.iter().zip(&f1).map(|(x, f)| x * f).sum::<f64>() / denom;
        let b = u.iter().zip(&f2).map(|(x, f)| x * f).sum::<f64>() / denom;
        if !a.is_finite() || !b.is_finite() || a.abs() > CLIP || b.abs() > CLIP {
            return None;
        }
        Some((SIZE / 2.0 + 55.0 * a, SIZE / 2.0 - 55.0 * b))
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE
    ));
    for w in walls {
        let dashed = &w.label == eta;
        let dirs = sweep_directions(&w.cone, ARC_SAMPLES);
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for d in &dirs {
            match project(d) {
                Some(pt) => runs.last_mut().unwrap().push(pt),
                None => runs.push(Vec::new()),
            }
        }
        for run in runs.iter().filter(|r| r.len() >= 2) {
            let pts: Vec<String> = run.iter().map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y))).collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\"{}/>\n",
                pts.join(" "),
                if dashed { "#cc3333" } else { "#333333" },
                if dashed {
                    " stroke-dasharray=\"6 4\""
                } else {
                    ""
                }
            ));
        }
        if let (Some(name), Some(mid)) = (
            &w.module,
            dirs.get(dirs.len() / 2).and_then(|d| project(d)),
        ) {
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>\n",
                fmt(mid.0 + 3.0),
                fmt(mid.1 - 3.0),
                name
            ));
        }
    }
    for (name, v) in corners {
        if let Some((px, py)) = project(v) {
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"2.4\" fill=\"#3355cc\"/><text x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#3355cc\">{}</text>\n",
                fmt(px), fmt(py), fmt(px + 4.0), fmt(py - 4.0), name
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Render the picture of a wall family living in the orthogonal complement
/// of `g_eta` (or in the full space when `g_eta` is empty). Supported when
/// the sphere dimension is at most 2.
pub fn render_picture(
    walls: &[LabeledCone],
    corners: &[(String, RatVec)],
    eta: &RatVec,
    g_eta: Option<&RatVec>,
) -> Result<String> {
    let ambient = walls
        .first()
        .map(|w| w.cone.ambient_dim)
        .ok_or_else(|| Error::Precondition("no walls to render".into()))?;
    let basis: Vec<RatVec> = match g_eta {
        Some(g) => RatMatrix::new(vec![g.clone()], ambient).kernel_basis(),
        None => (0..ambient).map(|i| RatVec::unit(ambient, i)).collect(),
    };
    match basis.len() {
        2 => {
            let frame = orthonormal_basis(&basis);
            Ok(render_circle(walls, corners, eta, &frame))
        }
        3 => render_sphere(walls, corners, eta, &basis),
        d => Err(Error::Precondition(format!(
            "sphere dimension {} is not renderable (need at most 2)",
            d.saturating_sub(1)
        ))),
    }
}
