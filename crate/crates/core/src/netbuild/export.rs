//! Point cloud and network dumps.
//!
//! CSV and JSON carry exact rational strings; PLY carries float64 renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::network::{CloudPoint, Network};
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{Chart, ChartPoint};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Ply,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "ply" => Ok(Format::Ply),
            "json" => Ok(Format::Json),
            _ => Err(Error::Input(format!("unknown format {s:?} (csv, ply, json)"))),
        }
    }
}

/// Linear maps to 3-space.
///
/// `hadamard` is `V ↦ (V·(1,1,−1,−1), V·(1,−1,1,−1), V·(1,−1,−1,1))` and
/// needs 4 coordinates. `first3` keeps the first three coordinates. `lift`
/// replaces the third `hadamard` row by the chart height, `±(n+1)·min_i V_i`,
/// so the two charts separate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    Hadamard,
    First3,
    Lift,
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Projection> {
        match s.to_ascii_lowercase().as_str() {
            "hadamard" => Ok(Projection::Hadamard),
            "first3" => Ok(Projection::First3),
            "lift" => Ok(Projection::Lift),
            _ => Err(Error::Input(format!("unknown projection {s:?} (hadamard, first3, lift)"))),
        }
    }
}

impl Projection {
    pub fn name(self) -> &'static str {
        match self {
            Projection::Hadamard => "hadamard",
            Projection::First3 => "first3",
            Projection::Lift => "lift",
        }
    }

    /// The default for dimension `n + 1 = dim`.
    pub fn default_for(dim: usize) -> Projection {
        if dim == 4 {
            Projection::Hadamard
        } else {
            Projection::First3
        }
    }

    fn check(self, dim: usize) -> Result<()> {
        match self {
            Projection::Hadamard | Projection::Lift if dim != 4 => Err(Error::Input(format!(
                "projection {} needs 4 coordinates, got {dim}",
                self.name()
            ))),
            Projection::First3 if dim < 3 => Err(Error::Input(format!("first3 needs 3 coordinates, got {dim}"))),
            _ => Ok(()),
        }
    }

    /// Exact image of a point.
    pub fn apply(self, p: &ChartPoint) -> Result<[Rational; 3]> {
        let v = &p.coords;
        self.check(v.len())?;
        let row = |s: [i64; 4]| -> Rational { v.iter().zip(s).map(|(x, c)| x * rational::int(c)).sum() };
        Ok(match self {
            Projection::Hadamard => [row([1, 1, -1, -1]), row([1, -1, 1, -1]), row([1, -1, -1, 1])],
            Projection::First3 => [v[0].clone(), v[1].clone(), v[2].clone()],
            Projection::Lift => {
                let m = v.iter().min().cloned().unwrap_or_default() * rational::int(v.len() as i64);
                let h = if p.chart == Chart::Minus { -m } else { m };
                [row([1, 1, -1, -1]), row([1, -1, 1, -1]), h]
            }
        })
    }
}

fn exact(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

fn floats(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational::to_f64).collect()
}

fn chart_name(c: Chart) -> &'static str {
    match c {
        Chart::Plus => "plus",
        Chart::Minus => "minus",
    }
}

/// Renders a labelled cloud.
pub fn export_cloud(cloud: &[CloudPoint], format: Format, proj: Projection) -> Result<String> {
    let projected = cloud
        .iter()
        .map(|c| proj.apply(&c.point))
        .collect::<Result<Vec<_>>>()?;
    let labels = |c: &CloudPoint| c.labels.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "# format_version={FORMAT_VERSION} projection={}", proj.name()).expect("string write");
            out.push_str("index,chart,x,y,z,x_f64,y_f64,z_f64,coords,labels\n");
            for (i, (c, p)) in cloud.iter().zip(&projected).enumerate() {
                let e = exact(p);
                let f = floats(p);
                writeln!(
                    out,
                    "{i},{},{},{},{},{},{},{},{},\"{}\"",
                    chart_name(c.point.chart),
                    e[0],
                    e[1],
                    e[2],
                    f[0],
                    f[1],
                    f[2],
                    exact(&c.point.coords).join(";"),
                    labels(c).join(";").replace('"', "'")
                )
                .expect("string write");
            }
        }
        Format::Ply => {
            out.push_str("ply\nformat ascii 1.0\n");
            writeln!(out, "comment format_version {FORMAT_VERSION}").expect("string write");
            writeln!(out, "comment projection {}", proj.name()).expect("string write");
            writeln!(out, "element vertex {}", cloud.len()).expect("string write");
            out.push_str("property double x\nproperty double y\nproperty double z\nproperty uchar chart\nend_header\n");
            for (c, p) in cloud.iter().zip(&projected) {
                let f = floats(p);
                let ch = u8::from(c.point.chart == Chart::Minus);
                writeln!(out, "{} {} {} {ch}", f[0], f[1], f[2]).expect("string write");
            }
        }
        Format::Json => {
            let pts: Vec<_> = cloud
                .iter()
                .zip(&projected)
                .map(|(c, p)| {
                    json!({
                        "chart": chart_name(c.point.chart),
                        "coords": exact(&c.point.coords),
                        "projected": exact(p),
                        "projected_f64": floats(p),
                        "labels": labels(c),
                        "edges": c.edges.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "format_version": FORMAT_VERSION,
                "projection": proj.name(),
                "points": pts,
            });
            out = serde_json::to_string_pretty(&doc).map_err(|e| Error::Input(e.to_string()))?;
            out.push('\n');
        }
    }
    Ok(out)
}

/// Blocks with placements and labellings, and every `Ψ(e)`.
pub fn dump_network(net: &Network) -> Result<String> {
    let psi = net
        .edges
        .iter()
        .map(|e| net.psi(e))
        .collect::<Result<Vec<_>>>()?;
    let placements = net
        .blocks
        .iter()
        .map(|b| {
            let m = b.placement()?;
            Ok((0..m.rows()).map(|i| exact(m.row(i))).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "pattern": net.pattern.spec(),
        "depth": net.depth,
        "k": net.k(),
        "weighted": net.weighted,
        "blocks": net.blocks,
        "placements": placements,
        "psi": psi,
    });
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modtiling::Pattern;
    use crate::netbuild::network::build_network;

    fn cloud() -> Vec<CloudPoint> {
        build_network(&Pattern::with_cap(&["LR"], 16).unwrap(), 1)
            .unwrap()
            .limit_cloud()
    }

    #[test]
    fn hadamard_matches_the_block_table() {
        let b = crate::blockcore::build_block(2).unwrap();
        let p = Projection::Hadamard
            .apply(&ChartPoint::plus(b.vertex_by_id(2).to_vec()))
            .unwrap();
        let want = [rational::int(0), rational::rat(-1, 3), rational::int(0)];
        assert_eq!(p, want);
    }

    #[test]
    fn formats_carry_the_version_and_every_point() {
        let c = cloud();
        for f in [Format::Csv, Format::Ply, Format::Json] {
            let s = export_cloud(&c, f, Projection::Hadamard).unwrap();
            assert!(s.contains("format_version"));
            assert_eq!(s, export_cloud(&c, f, Projection::Hadamard).unwrap());
        }
        let csv = export_cloud(&c, Format::Csv, Projection::First3).unwrap();
        assert_eq!(csv.lines().count(), c.len() + 2);
        let ply = export_cloud(&c, Format::Ply, Projection::Lift).unwrap();
        assert!(ply.contains(&format!("element vertex {}", c.len())));
        let v: serde_json::Value = serde_json::from_str(&export_cloud(&c, Format::Json, Projection::First3).unwrap()).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), c.len());
    }

    #[test]
    fn lift_separates_charts() {
        let h = |chart| {
            Projection::Lift
                .apply(&ChartPoint::new(chart, vec![rational::rat(1, 4); 4]))
                .unwrap()[2]
                .clone()
        };
        assert_eq!(h(Chart::Plus), rational::int(1));
        assert_eq!(h(Chart::Minus), rational::int(-1));
    }

    #[test]
    fn bad_names_and_dimensions() {
        assert!("obj".parse::<Format>().is_err());
        assert!("pca".parse::<Projection>().is_err());
        assert!(Projection::Hadamard
            .apply(&ChartPoint::plus(vec![rational::rat(1, 3); 3]))
            .is_err());
    }

    #[test]
    fn dump_is_json() {
        let net = build_network(&Pattern::with_cap(&["LR"], 16).unwrap(), 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&dump_network(&net).unwrap()).unwrap();
        assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
        assert_eq!(v["format_version"], 1);
    }
}
