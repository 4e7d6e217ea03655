//! Truncation convergence tables.

use std::io::Write;

use conflat_core::clifford::blade_name;
use conflat_core::kernels::evaluate;
use conflat_core::{KernelSpec, Multivector};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub radius: usize,
    pub value: Multivector,
    /// `|S_R - S_{R_max}|`.
    pub delta: f64,
    /// `|S_{R_i} - S_{R_{i-1}}|`; `None` on the first row.
    pub step: Option<f64>,
    /// Local order `log(step_{i-1}/step_i) / log(R_i/R_{i-1})`; `None` where undefined.
    pub order: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub spec: KernelSpec,
    pub rows: Vec<ConvergenceRow>,
}

pub fn convergence_study(spec: &KernelSpec, x: &[f64], y: &[f64], radii: &[usize]) -> Result<ConvergenceTable> {
    if radii.is_empty() {
        return Err(HarnessError::Argument("at least one radius is required".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::Argument("radii must be strictly increasing".into()));
    }
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let s = spec.clone().with_radius(r);
        values.push(evaluate(&s, x, y)?);
    }
    let last = values.last().expect("non-empty").clone();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(radii.len());
    for (&r, v) in radii.iter().zip(values) {
        let delta = v.dist(&last);
        let (step, order) = match rows.last() {
            Some(p) => {
                let step = v.dist(&p.value);
                let order = match p.step {
                    Some(ps) if ps > 0.0 && step > 0.0 => {
                        Some((ps / step).ln() / (r as f64 / p.radius as f64).ln())
                    }
                    _ => None,
                };
                (Some(step), order)
            }
            None => (None, None),
        };
        rows.push(ConvergenceRow {
            radius: r,
            value: v,
            delta,
            step,
            order,
        });
    }
    Ok(ConvergenceTable {
        spec: spec.clone(),
        rows,
    })
}

impl ConvergenceTable {
    /// Least-squares slope of `-log step` against `log R`. Successive
    /// differences make the estimate independent of the largest radius.
    pub fn fitted_order(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter_map(|r| match r.step {
                Some(s) if s > 0.0 => Some(((r.radius as f64).ln(), -s.ln())),
                _ => None,
            })
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / m, sy / m);
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        Some(sxy / sxx)
    }

    /// Blade masks with a nonzero coefficient in any row.
    pub fn blades(&self) -> Vec<usize> {
        let dim = 1usize << self.rows[0].value.dim();
        (0..dim)
            .filter(|&b| self.rows.iter().any(|r| r.value.get(b) != 0.0))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let blades = self.blades();
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["R".to_string()];
        header.extend(blades.iter().map(|&b| blade_name(b)));
        header.extend(["delta".to_string(), "step".to_string(), "order".to_string()]);
        out.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.radius.to_string()];
            rec.extend(blades.iter().map(|&b| format!("{:e}", r.value.get(b))));
            rec.push(format!("{:e}", r.delta));
            rec.push(r.step.map(|v| format!("{v:e}")).unwrap_or_default());
            rec.push(r.order.map(|o| format!("{o:.6}")).unwrap_or_default());
            out.write_record(&rec)?;
        }
        out.flush().map_err(|e| HarnessError::io("csv output", e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conflat_core::kernels::Family;

    #[test]
    fn single_radius_row() {
        let spec = KernelSpec::lattice(Family::Cot, 3, 1, 1, 0);
        let t = convergence_study(&spec, &[0.1, 0.2, 0.3], &[0.0; 3], &[10]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].delta, 0.0);
        assert_eq!(t.rows[0].order, None);
    }

    #[test]
    fn rejects_unsorted_radii() {
        let spec = KernelSpec::lattice(Family::Cot, 3, 1, 1, 0);
        assert!(convergence_study(&spec, &[0.1, 0.2, 0.3], &[0.0; 3], &[20, 10]).is_err());
    }

    #[test]
    fn csv_columns_by_blade() {
        let spec = KernelSpec::lattice(Family::Cot, 3, 1, 1, 0);
        let t = convergence_study(&spec, &[0.1, 0.2, 0.3], &[0.0; 3], &[5, 10]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("R,e1,e2,e3,delta,step,order\n"), "{text}");
        assert_eq!(text.lines().count(), 3);
    }
}
