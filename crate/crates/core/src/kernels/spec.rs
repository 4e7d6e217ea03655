//! JSON-serializable kernel descriptions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Euclid,
    EuclidK,
    SphereCauchy,
    SphereGreen,
    Rp,
    Cot,
    Hopf,
    Transversion,
    Semidirect,
    HopfPoisson,
    HopfTransfer,
}

impl Family {
    pub fn uses_lattice(self) -> bool {
        matches!(self, Family::Cot | Family::Transversion | Family::Semidirect)
    }

    pub fn is_hopf(self) -> bool {
        matches!(self, Family::Hopf | Family::HopfPoisson | Family::HopfTransfer)
    }

    pub fn is_spherical(self) -> bool {
        matches!(self, Family::SphereCauchy | Family::SphereGreen | Family::Rp)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleSign {
    #[default]
    Plus,
    Minus,
}

impl BundleSign {
    pub fn sign(self) -> f64 {
        match self {
            BundleSign::Plus => 1.0,
            BundleSign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfMode {
    Literal,
    #[default]
    Orbit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summation {
    #[default]
    SymmetricShells,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compensation {
    #[default]
    Kahan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationPolicy {
    /// Sup-norm shell bound for lattices, dyadic index bound for Hopf series.
    pub radius: usize,
    #[serde(default)]
    pub summation: Summation,
    #[serde(default)]
    pub compensation: Compensation,
    #[serde(default)]
    pub tail_report: bool,
}

impl TruncationPolicy {
    pub fn with_radius(radius: usize) -> Self {
        TruncationPolicy {
            radius,
            summation: Summation::SymmetricShells,
            compensation: Compensation::Kahan,
            tail_report: false,
        }
    }

    pub fn default_for(family: Family, k: usize) -> Self {
        let radius = if family.is_hopf() {
            60
        } else if family.uses_lattice() {
            match k {
                1 => 60,
                2 => 40,
                3 => 20,
                _ => 10,
            }
        } else {
            1
        };
        Self::with_radius(radius)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawKernelSpec")]
pub struct KernelSpec {
    pub family: Family,
    /// Ambient dimension, or sphere dimension for spherical families.
    pub n: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
    pub bundle_sign: BundleSign,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub mode: HopfMode,
    pub trunc: TruncationPolicy,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernelSpec {
    family: Family,
    n: usize,
    #[serde(default)]
    q: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    l: Option<usize>,
    #[serde(default)]
    bundle_sign: Option<BundleSign>,
    #[serde(default)]
    a: Option<Vec<f64>>,
    #[serde(default)]
    b: Option<Vec<f64>>,
    #[serde(default)]
    mode: Option<HopfMode>,
    #[serde(default)]
    trunc: Option<TruncationPolicy>,
}

impl TryFrom<RawKernelSpec> for KernelSpec {
    type Error = Error;

    fn try_from(r: RawKernelSpec) -> Result<Self> {
        let k = r.k.unwrap_or(0);
        let mut spec = KernelSpec::new(r.family, r.n);
        spec.q = r.q.unwrap_or(1);
        spec.k = k;
        spec.l = r.l.unwrap_or(0);
        spec.bundle_sign = r.bundle_sign.unwrap_or_default();
        if let Some(a) = r.a {
            spec.a = a;
        }
        if let Some(b) = r.b {
            spec.b = b;
        }
        spec.mode = r.mode.unwrap_or_default();
        spec.trunc = r
            .trunc
            .unwrap_or_else(|| TruncationPolicy::default_for(r.family, k));
        spec.validate()?;
        Ok(spec)
    }
}

/// Summation regime of a lattice sum of `G_q` over `Z^k` in `R^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `k < n - q`: absolutely convergent.
    Generic,
    /// `q = n - k`: convergent only with ± pairing.
    Critical,
    /// `q = n - k + 1`: needs the telescoped a/b regularization.
    Supercritical,
}

pub fn regime(n: usize, q: usize, k: usize) -> Result<Regime> {
    if k + q < n {
        Ok(Regime::Generic)
    } else if k + q == n {
        Ok(Regime::Critical)
    } else if k + q == n + 1 {
        Ok(Regime::Supercritical)
    } else {
        Err(Error::RegimeMismatch(format!(
            "no convergent form for q = {q}, k = {k} in dimension n = {n}"
        )))
    }
}

fn default_a(n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n];
    if n >= 1 {
        a[0] = 0.5;
    }
    a
}

fn default_b(n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n];
    if n >= 2 {
        b[0] = 0.25;
        b[1] = 0.25;
    }
    b
}

impl KernelSpec {
    /// Spec with defaults for every optional field; call [`validate`](Self::validate) after edits.
    pub fn new(family: Family, n: usize) -> Self {
        KernelSpec {
            family,
            n,
            q: 1,
            k: 0,
            l: 0,
            bundle_sign: BundleSign::Plus,
            a: default_a(n),
            b: default_b(n),
            mode: HopfMode::Orbit,
            trunc: TruncationPolicy::default_for(family, 0),
        }
    }

    /// Lattice kernel spec with the default truncation for rank `k`.
    pub fn lattice(family: Family, n: usize, q: usize, k: usize, l: usize) -> Self {
        let mut s = Self::new(family, n);
        s.q = q;
        s.k = k;
        s.l = l;
        s.trunc = TruncationPolicy::default_for(family, k);
        s
    }

    pub fn hopf(family: Family, n: usize, mode: HopfMode) -> Self {
        let mut s = Self::new(family, n);
        s.mode = mode;
        s
    }

    pub fn with_radius(mut self, radius: usize) -> Self {
        self.trunc.radius = radius;
        self
    }

    pub fn with_sign(mut self, sign: BundleSign) -> Self {
        self.bundle_sign = sign;
        self
    }

    /// Dimension of the algebra the kernel takes values in.
    pub fn algebra_dim(&self) -> usize {
        if self.family.is_spherical() {
            self.n + 1
        } else {
            self.n
        }
    }

    pub fn regime(&self) -> Result<Regime> {
        match self.family {
            Family::Cot | Family::Semidirect => regime(self.n, self.q, self.k),
            Family::Transversion => regime(self.n, 1, self.k),
            _ => Err(Error::NotApplicable(format!(
                "{:?} kernels are not lattice sums",
                self.family
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.algebra_dim() < 2 || self.algebra_dim() > crate::clifford::MAX_DIM {
            return bad(format!("dimension n = {n} out of range for {:?}", self.family));
        }
        if self.trunc.radius < 1 {
            return bad("trunc.radius must be >= 1".into());
        }
        match self.family {
            Family::Euclid | Family::Hopf | Family::HopfPoisson => {}
            Family::EuclidK | Family::HopfTransfer => {
                crate::kernels::euclid::check_order(n, self.q)?;
            }
            Family::SphereCauchy => {}
            Family::SphereGreen => {
                if n <= 2 {
                    return bad("sphere_green needs n > 2".into());
                }
            }
            Family::Rp => match self.q {
                1 => {}
                2 if n > 2 => {}
                _ => return bad("rp kernel order q must be 1, or 2 with n > 2".into()),
            },
            Family::Cot | Family::Semidirect | Family::Transversion => {
                if self.k == 0 || self.k > n {
                    return bad(format!("lattice rank k = {} must satisfy 1 <= k <= n", self.k));
                }
                if self.l > self.k {
                    return bad(format!("sign rank l = {} exceeds k = {}", self.l, self.k));
                }
                let q = if self.family == Family::Transversion { 1 } else { self.q };
                crate::kernels::euclid::check_order(n, q)?;
                let reg = self.regime()?;
                if reg == Regime::Critical && q % 2 == 0 && self.l == 0 {
                    return Err(Error::RegimeMismatch(
                        "critical regime with even q and l = 0: paired terms do not cancel".into(),
                    ));
                }
                if reg == Regime::Supercritical {
                    self.check_regularization_points()?;
                }
            }
        }
        Ok(())
    }

    fn check_regularization_points(&self) -> Result<()> {
        let (k, n) = (self.k, self.n);
        if self.a.len() != n || self.b.len() != n {
            return Err(Error::InvalidParameter(format!(
                "regularization points a, b must have {n} components"
            )));
        }
        let on_lattice = |p: &[f64]| {
            p[..k].iter().all(|v| (v - v.round()).abs() < 1e-12)
                && p[k..].iter().all(|v| v.abs() < 1e-12)
        };
        let diff: Vec<f64> = self.a.iter().zip(&self.b).map(|(x, y)| x - y).collect();
        if on_lattice(&self.a) || on_lattice(&self.b) {
            return Err(Error::InvalidParameter("a and b must lie off Z^k".into()));
        }
        if on_lattice(&diff) {
            return Err(Error::InvalidParameter("a and b must not be congruent mod Z^k".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("kernel spec serializes")
    }
}
