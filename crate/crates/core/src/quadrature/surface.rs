//! Spherical hypersurfaces with outward normals and product quadrature.
//!
//! Two kinds are supported: round spheres in `R^N`, and latitude spheres on
//! `S^n ⊂ R^{n+1}` (boundaries of geodesic caps). A latitude sphere may be
//! doubled by its antipodal image, with the normal on the image sheet either
//! the geometric one or transported by the `RP^n` bundle.

use serde::{Deserialize, Serialize};

use crate::clifford::{dot, norm, scale, sub};
use crate::error::{Error, Result};
use crate::quadrature::rule::{sphere_rule_with, PolarRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalTransport {
    /// Outward normal of `W ∪ -W`: `n(-z) = -n(z)`.
    Geometric,
    /// `n(-z) = n(z)`, the identification of the plus bundle.
    Plus,
    /// `n(-z) = -n(z)`, the identification of the minus bundle.
    Minus,
}

impl NormalTransport {
    pub fn sign(self) -> f64 {
        match self {
            NormalTransport::Plus => 1.0,
            NormalTransport::Geometric | NormalTransport::Minus => -1.0,
        }
    }
}

/// JSON description of a surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceDesc {
    EuclideanSphere {
        center: Vec<f64>,
        radius: f64,
        /// `[polar, azimuth]` node counts.
        nodes: [usize; 2],
    },
    LatitudeSphere {
        /// Unit vector `c` of `R^{n+1}`; the cap is `{x : <x, c> > cos angle}`.
        axis: Vec<f64>,
        angle: f64,
        nodes: [usize; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        antipodal: Option<NormalTransport>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Euclidean { dim: usize },
    Sphere { n: usize },
}

/// Geometry of a round sphere of intrinsic dimension `d - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereGeometry {
    pub ambient: Ambient,
    pub center: Vec<f64>,
    pub radius: f64,
    /// Latitude spheres only: cap axis and polar angle.
    pub cap: Option<(Vec<f64>, f64)>,
    pub antipodal: Option<NormalTransport>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceNode {
    pub point: Vec<f64>,
    pub normal: Vec<f64>,
    pub weight: f64,
    /// 0 for the primary sheet, 1 for the antipodal image.
    pub sheet: u8,
}

#[derive(Clone, Debug)]
pub struct Surface {
    pub geometry: SphereGeometry,
    pub nodes: Vec<SurfaceNode>,
}

fn unit(v: &[f64]) -> Result<Vec<f64>> {
    let r = norm(v);
    if r < 1e-14 {
        return Err(Error::Surface("zero direction vector".into()));
    }
    Ok(scale(v, 1.0 / r))
}

impl SphereGeometry {
    pub fn euclidean(center: Vec<f64>, radius: f64) -> Result<Self> {
        if radius <= 0.0 || center.len() < 2 {
            return Err(Error::Surface("sphere needs radius > 0 and dimension >= 2".into()));
        }
        Ok(SphereGeometry {
            ambient: Ambient::Euclidean { dim: center.len() },
            center,
            radius,
            cap: None,
            antipodal: None,
        })
    }

    pub fn latitude(axis: &[f64], angle: f64) -> Result<Self> {
        if !(angle > 0.0 && angle < std::f64::consts::PI) || axis.len() < 3 {
            return Err(Error::Surface(
                "latitude sphere needs 0 < angle < pi on S^n with n >= 2".into(),
            ));
        }
        let c = unit(axis)?;
        Ok(SphereGeometry {
            ambient: Ambient::Sphere { n: axis.len() - 1 },
            center: scale(&c, angle.cos()),
            radius: angle.sin(),
            cap: Some((c, angle)),
            antipodal: None,
        })
    }

    pub fn with_antipodal(mut self, t: NormalTransport) -> Result<Self> {
        if self.cap.is_none() {
            return Err(Error::Surface("antipodal doubling needs a latitude sphere".into()));
        }
        self.antipodal = Some(t);
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.center.len()
    }

    /// Dimension `d` of the linear span containing the sphere `S^{d-1}`.
    pub fn span_dim(&self) -> usize {
        match self.ambient {
            Ambient::Euclidean { dim } => dim,
            Ambient::Sphere { n } => n,
        }
    }

    /// Orthonormal frame of the sphere's span whose first vector is `pole`.
    pub fn frame(&self, pole: &[f64]) -> Result<Vec<Vec<f64>>> {
        let big = self.ambient_dim();
        let mut frame: Vec<Vec<f64>> = Vec::new();
        let project = |v: &[f64], frame: &[Vec<f64>]| {
            let mut w = v.to_vec();
            if let Some((c, _)) = &self.cap {
                w = sub(&w, &scale(c, dot(&w, c)));
            }
            for f in frame {
                w = sub(&w, &scale(f, dot(&w, f)));
            }
            w
        };
        let p = project(pole, &frame);
        frame.push(unit(&p)?);
        for i in 0..big {
            if frame.len() == self.span_dim() {
                break;
            }
            let mut e = vec![0.0; big];
            e[i] = 1.0;
            // two passes of Gram-Schmidt for orthogonality to rounding
            let w = project(&project(&e, &frame), &frame);
            if norm(&w) > 1e-8 {
                frame.push(unit(&w)?);
            }
        }
        Ok(frame)
    }

    /// Default pole: the last ambient axis that is not the cap axis.
    pub fn default_pole(&self) -> Vec<f64> {
        let big = self.ambient_dim();
        for i in (0..big).rev() {
            let mut e = vec![0.0; big];
            e[i] = 1.0;
            let ok = match &self.cap {
                Some((c, _)) => (1.0 - dot(&e, c).abs()) > 1e-8,
                None => true,
            };
            if ok {
                return e;
            }
        }
        unreachable!("ambient dimension >= 2")
    }

    /// Direction in the span pointing from the center to `w`.
    pub fn pole_of(&self, w: &[f64]) -> Vec<f64> {
        sub(w, &self.center)
    }

    /// Point and outward normal for a unit direction `u` of the span.
    pub fn point_normal(&self, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let x: Vec<f64> = self.center.iter().zip(u).map(|(c, v)| c + self.radius * v).collect();
        let n = match &self.cap {
            None => u.to_vec(),
            Some((c, angle)) => {
                let (s, co) = angle.sin_cos();
                u.iter().zip(c).map(|(uv, cv)| co * uv - s * cv).collect()
            }
        };
        (x, n)
    }

    /// Builds nodes for the given polar rule around `pole`.
    pub fn build(&self, pole: &[f64], outer: &PolarRule, polar: usize, azimuth: usize) -> Result<Surface> {
        let frame = self.frame(pole)?;
        let d = frame.len();
        let local = sphere_rule_with(d, outer, polar, azimuth)?;
        let jac = self.radius.powi(d as i32 - 1);
        let big = self.ambient_dim();
        let mut nodes = Vec::with_capacity(local.len() * if self.antipodal.is_some() { 2 } else { 1 });
        for (lu, w) in &local {
            let mut u = vec![0.0; big];
            for (coef, f) in lu.iter().zip(&frame) {
                for i in 0..big {
                    u[i] += coef * f[i];
                }
            }
            let (point, normal) = self.point_normal(&u);
            nodes.push(SurfaceNode {
                point,
                normal,
                weight: w * jac,
                sheet: 0,
            });
        }
        if let Some(t) = self.antipodal {
            let mirrored: Vec<SurfaceNode> = nodes
                .iter()
                .map(|nd| SurfaceNode {
                    point: scale(&nd.point, -1.0),
                    normal: scale(&nd.normal, t.sign()),
                    weight: nd.weight,
                    sheet: 1,
                })
                .collect();
            nodes.extend(mirrored);
        }
        Ok(Surface {
            geometry: self.clone(),
            nodes,
        })
    }

    /// Geodesic polar angle on the sphere for a chordal radius `eps` around a point.
    pub fn cap_angle(&self, eps: f64) -> Result<f64> {
        if eps >= 2.0 * self.radius {
            return Err(Error::InvalidParameter(format!(
                "exclusion radius {eps} exceeds the sphere diameter"
            )));
        }
        Ok(2.0 * (eps / (2.0 * self.radius)).asin())
    }
}

impl Surface {
    pub fn from_desc(desc: &SurfaceDesc) -> Result<Self> {
        match desc {
            SurfaceDesc::EuclideanSphere { center, radius, nodes } => {
                let g = SphereGeometry::euclidean(center.clone(), *radius)?;
                g.build(&g.default_pole(), &PolarRule::Standard(nodes[0]), nodes[0], nodes[1])
            }
            SurfaceDesc::LatitudeSphere { axis, angle, nodes, antipodal } => {
                let mut g = SphereGeometry::latitude(axis, *angle)?;
                if let Some(t) = antipodal {
                    g = g.with_antipodal(*t)?;
                }
                g.build(&g.default_pole(), &PolarRule::Standard(nodes[0]), nodes[0], nodes[1])
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.geometry.ambient_dim()
    }

    /// Nodes of the primary sheet only.
    pub fn primary(&self) -> Surface {
        let mut g = self.geometry.clone();
        g.antipodal = None;
        Surface {
            geometry: g,
            nodes: self.nodes.iter().filter(|n| n.sheet == 0).cloned().collect(),
        }
    }

    pub fn area(&self) -> f64 {
        crate::sum::kahan_sum(self.nodes.iter().map(|n| n.weight))
    }

    /// Whether `y` lies in the region bounded by the primary sheet
    /// (the ball, or the geodesic cap around the axis).
    pub fn encloses(&self, y: &[f64]) -> bool {
        match &self.geometry.cap {
            None => norm(&sub(y, &self.geometry.center)) < self.geometry.radius,
            Some((c, angle)) => dot(y, c) > angle.cos(),
        }
    }
}
