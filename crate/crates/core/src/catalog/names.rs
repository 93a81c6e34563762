use std::fmt;
use std::str::FromStr;

use super::ellipsoid::{ellipsoid_kind1, ellipsoid_kind2, lift_kind1, perturbed_kind1, EllipsoidKind1Params};
use super::yu::{exact_kobayashi_disc, fmt_c, odd_order_lift, yu_parametric_disc, yu_simple_disc, ExactKobayashiParams, YuDisc, YuDiscParams};
use super::CatalogError;
use crate::domains::ModelDomain;
use crate::holo::{c64, AnalyticDisc, Disc, C64};
use crate::metrics::JetTarget;

/// Parse `3`, `-0.5i`, `0.6+0.8i`, `1e-3-2i`, `i`.
pub fn parse_complex(s: &str) -> Result<C64, CatalogError> {
    let s = s.trim();
    let bad = || CatalogError::InvalidParameter(format!("cannot parse complex number '{s}'"));
    let num = |t: &str| -> Result<f64, CatalogError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| c64(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Ok(c64(body[..i].parse::<f64>().map_err(|_| bad())?, num(&body[i..])?)),
        None => Ok(c64(0.0, num(body)?)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry {
    YuSimple,
    YuOptimal,
    YuParam(YuDiscParams),
    ExactKob(ExactKobayashiParams),
    EllipsoidK1(EllipsoidKind1Params),
    /// Negative control for stationarity.
    EllipsoidK1Perturbed(EllipsoidKind1Params),
}

/// A catalog entry plus optional `ζ^k` composition and odd-order lifts.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogName {
    pub entry: CatalogEntry,
    pub lift: Option<usize>,
    pub odd_lifts: usize,
}

/// A resolved catalog disc with the jet target it certifies.
#[derive(Debug, Clone)]
pub struct CatalogItem {
    pub name: String,
    pub domain: ModelDomain,
    pub disc: AnalyticDisc,
    pub target: JetTarget,
    /// Jet coefficient: `f^{(k)}(0) = k! r v`.
    pub r: f64,
    /// Exact metric value when the disc is known to be extremal.
    pub exact_value: Option<f64>,
    pub kind1: Option<EllipsoidKind1Params>,
}

fn parse_kv(body: &str) -> Result<Vec<(String, String)>, CatalogError> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CatalogError::InvalidParameter(format!("expected key=value, got '{kv}'")))
        })
        .collect()
}

fn parse_kind1(body: &str) -> Result<EllipsoidKind1Params, CatalogError> {
    let kv = parse_kv(body)?;
    let get = |key: &str| kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let m: f64 = get("m")
        .ok_or_else(|| CatalogError::InvalidParameter("ellipsoid-k1 needs m=<exponent>".into()))?
        .parse()
        .map_err(|_| CatalogError::InvalidParameter("m must be a number".into()))?;
    if let Some(seed) = get("seed") {
        let seed = seed.parse().map_err(|_| CatalogError::InvalidParameter("seed must be an integer".into()))?;
        if !(m > 0.0 && m < 1.0) {
            return Err(CatalogError::InvalidParameter(format!("m = {m} must lie in (0, 1)")));
        }
        return Ok(EllipsoidKind1Params::sample(seed, m));
    }
    let mut p = EllipsoidKind1Params::centered(m);
    for (k, v) in &kv {
        let flag = || match v.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(CatalogError::InvalidParameter(format!("{k} must be 0 or 1"))),
        };
        match k.as_str() {
            "m" => {}
            "a1" => p.a1 = parse_complex(v)?,
            "a2" => p.a2 = parse_complex(v)?,
            "alpha0" => p.alpha0 = parse_complex(v)?,
            "alpha1" => p.alpha1 = parse_complex(v)?,
            "alpha2" => p.alpha2 = parse_complex(v)?,
            "r1" => p.r1 = flag()?,
            "r2" => p.r2 = flag()?,
            other => return Err(CatalogError::InvalidParameter(format!("unknown ellipsoid-k1 key '{other}'"))),
        }
    }
    p.validate()?;
    Ok(p)
}

impl FromStr for CatalogEntry {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "yu-simple" => Ok(CatalogEntry::YuSimple),
            "yu-optimal" => Ok(CatalogEntry::YuOptimal),
            "yu-param" => {
                let parts: Vec<&str> = body.split(',').collect();
                let [a, b] = parts.as_slice() else {
                    return Err(CatalogError::InvalidParameter("yu-param expects α,β".into()));
                };
                let parse = |x: &str| x.trim().parse::<f64>().map_err(|_| CatalogError::InvalidParameter(format!("bad number '{x}'")));
                Ok(CatalogEntry::YuParam(YuDiscParams::new(parse(a)?, parse(b)?)?))
            }
            "exact-kob" => {
                let parts: Vec<&str> = body.split(',').collect();
                let [t, a, b] = parts.as_slice() else {
                    return Err(CatalogError::InvalidParameter("exact-kob expects t,a,b".into()));
                };
                let t = t.trim().parse::<f64>().map_err(|_| CatalogError::InvalidParameter(format!("bad t '{t}'")))?;
                Ok(CatalogEntry::ExactKob(ExactKobayashiParams::new(t, parse_complex(a)?, parse_complex(b)?)?))
            }
            "ellipsoid-k1" => Ok(CatalogEntry::EllipsoidK1(parse_kind1(body)?)),
            "ellipsoid-k1-perturbed" => Ok(CatalogEntry::EllipsoidK1Perturbed(parse_kind1(body)?)),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k1 = |p: &EllipsoidKind1Params| {
            format!(
                "m={},a1={},a2={},alpha0={},alpha1={},alpha2={},r1={},r2={}",
                p.m,
                fmt_c(p.a1),
                fmt_c(p.a2),
                fmt_c(p.alpha0),
                fmt_c(p.alpha1),
                fmt_c(p.alpha2),
                p.r1 as u8,
                p.r2 as u8
            )
        };
        match self {
            CatalogEntry::YuSimple => write!(f, "yu-simple"),
            CatalogEntry::YuOptimal => write!(f, "yu-optimal"),
            CatalogEntry::YuParam(p) => write!(f, "yu-param:{},{}", p.alpha, p.beta),
            CatalogEntry::ExactKob(p) => write!(f, "exact-kob:{},{},{}", p.t, fmt_c(p.a), fmt_c(p.b)),
            CatalogEntry::EllipsoidK1(p) => write!(f, "ellipsoid-k1:{}", k1(p)),
            CatalogEntry::EllipsoidK1Perturbed(p) => write!(f, "ellipsoid-k1-perturbed:{}", k1(p)),
        }
    }
}

impl CatalogName {
    pub fn parse(name: &str) -> Result<Self, CatalogError> {
        Ok(Self { entry: name.parse()?, lift: None, odd_lifts: 0 })
    }

    pub fn with_lift(mut self, k: Option<usize>) -> Self {
        self.lift = k;
        self
    }

    pub fn with_odd_lifts(mut self, n: usize) -> Self {
        self.odd_lifts = n;
        self
    }

    fn yu_item(d: YuDisc) -> (AnalyticDisc, JetTarget, f64) {
        (d.disc, YuDisc::target(), d.r)
    }

    /// Build the disc, apply the lifts and attach its jet target.
    pub fn resolve(&self) -> Result<CatalogItem, CatalogError> {
        if self.lift == Some(0) {
            return Err(CatalogError::InvalidParameter("lift order must be positive".into()));
        }
        let mut kind1 = None;
        let mut exact_value = None;
        let (domain, mut disc, mut target, r) = match &self.entry {
            CatalogEntry::YuSimple => {
                let (d, t, r) = Self::yu_item(yu_simple_disc());
                (ModelDomain::YuDomain, d, t, r)
            }
            CatalogEntry::YuOptimal => {
                let (d, t, r) = Self::yu_item(yu_parametric_disc(YuDiscParams::optimal())?);
                (ModelDomain::YuDomain, d.with_label("yu-optimal"), t, r)
            }
            CatalogEntry::YuParam(p) => {
                let (d, t, r) = Self::yu_item(yu_parametric_disc(*p)?);
                (ModelDomain::YuDomain, d, t, r)
            }
            CatalogEntry::ExactKob(p) => {
                let d = exact_kobayashi_disc(*p)?;
                exact_value = Some(d.value);
                (ModelDomain::YuDomain, d.disc, p.target(), 1.0 / d.value)
            }
            CatalogEntry::EllipsoidK1(p) | CatalogEntry::EllipsoidK1Perturbed(p) => {
                kind1 = Some(*p);
                let perturbed = matches!(self.entry, CatalogEntry::EllipsoidK1Perturbed(_));
                let d = match (perturbed, self.lift) {
                    (false, Some(k)) if k > 1 => ellipsoid_kind2(&lift_kind1(p, k)?)?,
                    (false, _) => ellipsoid_kind1(p)?,
                    (true, _) => perturbed_kind1(p)?,
                };
                let base = if perturbed { perturbed_kind1(p)? } else { ellipsoid_kind1(p)? };
                let p0 = base.eval(c64(0.0, 0.0))?;
                let v = base.jet(1)?;
                let target = JetTarget::new(p0, v, 1).map_err(|e| CatalogError::InvalidParameter(e.to_string()))?;
                (ModelDomain::ellipsoid(p.m)?, d, target, 1.0)
            }
        };
        if let Some(k) = self.lift.filter(|&k| k > 1) {
            if !matches!(self.entry, CatalogEntry::EllipsoidK1(_)) {
                disc = disc.compose_power(k);
            }
            target.k *= k;
            exact_value = None;
        }
        for _ in 0..self.odd_lifts {
            if domain != ModelDomain::YuDomain {
                return Err(CatalogError::InvalidParameter("odd-order lifts apply to Yu-domain discs only".into()));
            }
            if target.k % 2 == 0 {
                return Err(CatalogError::InvalidParameter("odd-order lifts need an odd jet order".into()));
            }
            disc = odd_order_lift(&disc)?;
            target.k += 2;
            exact_value = None;
        }
        Ok(CatalogItem { name: self.to_string(), domain, disc, target, r, exact_value, kind1 })
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entry)?;
        if let Some(k) = self.lift {
            write!(f, " --lift {k}")?;
        }
        if self.odd_lifts > 0 {
            write!(f, " --odd-lift {}", self.odd_lifts)?;
        }
        Ok(())
    }
}
