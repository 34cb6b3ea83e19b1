//! JSON input formats and the reports printed by the command-line tool.
//!
//! Big integers and rationals are always strings; small counts and residues
//! are JSON numbers. Every report carries a `timing` object, the only part of
//! the output that may differ between identical runs.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundError, EffectiveBound, SizeBound};
use crate::configaut::{self, ConfigError, ConfigScheme, CycleInterpolant};
use crate::jetspace::{self, JetError};
use crate::orbits::{AffineSystem, Decision, NotPeriodicReason, OrbitError, OrbitState, Verdict};
use crate::polyring::Point;

/// Version stamped into every report.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid number {0:?}")]
    Number(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("{0}")]
    Invalid(String),
}

impl InputError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Json(_) => "json",
            InputError::Number(_) => "number",
            InputError::Orbit(OrbitError::Parse { .. }) => "parse",
            InputError::Orbit(_) => "system",
            InputError::Config(_) => "configuration",
            InputError::Bound(_) => "bound",
            InputError::Jet(_) => "jet",
            InputError::Invalid(_) => "invalid",
        }
    }
}

/// A coordinate given either as a JSON integer or as a string such as `"-7/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Str(String),
}

pub fn parse_rational(s: &str) -> Result<BigRational, InputError> {
    let s = s.trim();
    let bad = || InputError::Number(s.to_string());
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt, InputError> {
    BigInt::from_str(s.trim()).map_err(|_| InputError::Number(s.to_string()))
}

impl Coord {
    pub fn to_rational(&self) -> Result<BigRational, InputError> {
        match self {
            Coord::Int(v) => Ok(BigRational::from(BigInt::from(*v))),
            Coord::Str(s) => parse_rational(s),
        }
    }
}

pub fn point_from_coords(coords: &[Coord]) -> Result<Point, InputError> {
    Ok(Point::new(
        coords
            .iter()
            .map(Coord::to_rational)
            .collect::<Result<_, _>>()?,
    ))
}

/// Parses a point written as a JSON array, e.g. `[0]` or `["1/2", "3"]`.
pub fn parse_point(json: &str) -> Result<Point, InputError> {
    let coords: Vec<Coord> = serde_json::from_str(json)?;
    point_from_coords(&coords)
}

fn default_base() -> u64 {
    1
}

/// A generator: either `{"name": .., "coords": [..]}` or a bare list of coordinate strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Named { name: String, coords: Vec<String> },
    Bare(Vec<String>),
}

/// A polynomial system file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    #[serde(rename = "N", default = "default_base")]
    pub base: u64,
    pub maps: Vec<MapSpec>,
}

impl SystemFile {
    pub fn from_json(json: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(json)?)
    }

    /// Parses and validates every polynomial. Unnamed maps are called `f1, f2, ...`.
    pub fn to_system(&self) -> Result<AffineSystem, InputError> {
        let named: Vec<(String, &Vec<String>)> = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| match m {
                MapSpec::Named { name, coords } => (name.clone(), coords),
                MapSpec::Bare(coords) => (format!("f{}", k + 1), coords),
            })
            .collect();
        let refs: Vec<(&str, Vec<&str>)> = named
            .iter()
            .map(|(name, coords)| (name.as_str(), coords.iter().map(String::as_str).collect()))
            .collect();
        Ok(AffineSystem::parse(self.n, self.base, &refs)?)
    }
}

/// A point-set file: a bare array of points, or `{"N": .., "points": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSetFile {
    WithBase {
        #[serde(rename = "N", default = "default_base")]
        base: u64,
        points: Vec<Vec<Coord>>,
    },
    Bare(Vec<Vec<Coord>>),
}

impl PointSetFile {
    pub fn from_json(json: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_config(&self) -> Result<ConfigScheme, InputError> {
        let (base, pts) = match self {
            PointSetFile::WithBase { base, points } => (*base, points),
            PointSetFile::Bare(points) => (1, points),
        };
        if base == 0 {
            return Err(InputError::Invalid(
                "inverted denominator must be at least 1".into(),
            ));
        }
        let points: Vec<Point> = pts
            .iter()
            .map(|c| point_from_coords(c))
            .collect::<Result<_, _>>()?;
        Ok(configaut::weight_matrix(&points, base)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl Timing {
    pub fn from_duration(d: std::time::Duration) -> Self {
        // Rounded to microseconds so the field stays readable.
        Timing {
            elapsed_ms: (d.as_secs_f64() * 1e6).round() / 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationReport {
    pub map: String,
    pub images: Vec<usize>,
    pub cycles: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    ExceededBound {
        visited: usize,
        point: Vec<String>,
    },
    Collision {
        map: String,
        first: Vec<String>,
        second: Vec<String>,
        image: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSummary {
    /// `exact`, `log2` or `unbounded`.
    pub kind: String,
    /// Decimal value, or `log2` of the value to 15 significant digits.
    pub value: String,
    pub overridden: bool,
}

impl BoundSummary {
    pub fn new(bound: &SizeBound, overridden: bool) -> Self {
        let (kind, value) = match bound {
            SizeBound::Exact(b) => ("exact", b.to_string()),
            SizeBound::Log2(l) => ("log2", l.to_sig15()),
            SizeBound::Unbounded => ("unbounded", String::new()),
        };
        BoundSummary {
            kind: kind.into(),
            value,
            overridden,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub command: String,
    pub version: u32,
    pub verdict: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub base: String,
    pub point: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub permutations: Option<Vec<PermutationReport>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessReport>,
    pub visited: usize,
    pub rounds: usize,
    pub budget: String,
    pub bound: BoundSummary,
    pub timing: Timing,
}

fn strings(points: &[Point]) -> Vec<Vec<String>> {
    points.iter().map(Point::to_strings).collect()
}

impl VerdictReport {
    pub fn new(sys: &AffineSystem, x: &Point, d: &Decision, timing: Timing) -> Self {
        let mut orbit = None;
        let mut permutations = None;
        let mut witness = None;
        let visited = match &d.verdict {
            Verdict::Periodic {
                orbit: o,
                permutations: perms,
            } => {
                orbit = Some(strings(o));
                permutations = Some(
                    perms
                        .iter()
                        .map(|(map, images)| PermutationReport {
                            map: map.clone(),
                            images: images.clone(),
                            cycles: configaut::cycle_notation(images),
                        })
                        .collect(),
                );
                o.len()
            }
            Verdict::NotPeriodic(NotPeriodicReason::ExceededProvenBound {
                visited,
                witness: w,
            }) => {
                witness = Some(WitnessReport::ExceededBound {
                    visited: *visited,
                    point: w.to_strings(),
                });
                *visited
            }
            Verdict::NotPeriodic(NotPeriodicReason::FiniteNotPermuted {
                orbit: o,
                map,
                first,
                second,
                image,
            }) => {
                orbit = Some(strings(o));
                witness = Some(WitnessReport::Collision {
                    map: map.clone(),
                    first: first.to_strings(),
                    second: second.to_strings(),
                    image: image.to_strings(),
                });
                o.len()
            }
            Verdict::Undecided { visited } => *visited,
        };
        VerdictReport {
            command: "decide".into(),
            version: REPORT_VERSION,
            verdict: d.verdict.tag().into(),
            n: sys.dim(),
            base: sys.base().to_string(),
            point: x.to_strings(),
            orbit,
            permutations,
            witness,
            visited,
            rounds: d.rounds,
            budget: d.budget.to_string(),
            bound: BoundSummary::new(&d.bound, d.bound_overridden),
            timing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub command: String,
    pub version: u32,
    pub n: usize,
    #[serde(rename = "N")]
    pub base: String,
    pub point: Vec<String>,
    pub stabilized: bool,
    pub size: usize,
    pub rounds: usize,
    pub max_points: String,
    pub points: Vec<Vec<String>>,
    pub timing: Timing,
}

impl OrbitReport {
    pub fn new(
        sys: &AffineSystem,
        x: &Point,
        st: &OrbitState,
        max_points: usize,
        timing: Timing,
    ) -> Self {
        OrbitReport {
            command: "orbit".into(),
            version: REPORT_VERSION,
            n: sys.dim(),
            base: sys.base().to_string(),
            point: x.to_strings(),
            stabilized: st.stabilized,
            size: st.visited.len(),
            rounds: st.steps,
            max_points: max_points.to_string(),
            points: strings(&st.sorted()),
            timing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTermReport {
    pub p: u64,
    /// The number of factors `M = (n + 2) p^n`.
    pub factors: String,
    /// Exponent of `p` contributed by the prime-power part of the term.
    pub p_exponent: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log2: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub command: String,
    pub version: u32,
    pub n: usize,
    pub primes: [u64; 2],
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub terms: Vec<PrimeTermReport>,
    pub timing: Timing,
}

impl BoundReport {
    pub fn new(b: &EffectiveBound, timing: Timing) -> Result<Self, InputError> {
        let terms = [b.primes.first(), b.primes.second()]
            .iter()
            .map(|&p| {
                Ok(PrimeTermReport {
                    p,
                    factors: bounds::factor_count(b.n, p)?.to_string(),
                    p_exponent: bounds::prime_power_exponent(b.n, p)?.to_string(),
                    log2: bounds::per_prime_term_log2(b.n, p)
                        .ok()
                        .map(|l| l.to_sig15()),
                })
            })
            .collect::<Result<_, BoundError>>()?;
        let note = match (&b.log2_value, &b.exact_note) {
            (_, Some(n)) => Some(n.clone()),
            (None, None) => Some("log2 of the bound exceeds the double range".into()),
            _ => None,
        };
        Ok(BoundReport {
            command: "bound".into(),
            version: REPORT_VERSION,
            n: b.n,
            primes: [b.primes.first(), b.primes.second()],
            label: b.label().into(),
            log2: b.log2_value.map(|l| l.to_sig15()),
            exact: b.exact_value.as_ref().map(BigUint::to_string),
            exact_bits: b.exact_value.as_ref().map(BigUint::bits),
            note,
            terms,
            timing,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub p: u64,
    /// `|B/m²| = p^quotient_exponent`.
    pub quotient_exponent: u32,
    pub elements: Vec<String>,
    pub torsion_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutReport {
    pub command: String,
    pub version: u32,
    #[serde(rename = "N")]
    pub base: String,
    pub points: Vec<Vec<String>>,
    pub weights: Vec<Vec<String>>,
    pub order: String,
    pub generators: Vec<String>,
    pub primes: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<Vec<GammaReport>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intersection: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub injective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub timing: Timing,
}

impl AutReport {
    pub fn new(z: &ConfigScheme, p: u64, q: u64, timing: Timing) -> Result<Self, InputError> {
        let group = configaut::aut_group(z)?;
        let cyc = |v: &[configaut::Perm]| {
            v.iter()
                .map(|s| configaut::cycle_notation(s))
                .collect::<Vec<_>>()
        };
        let (gamma, intersection, injective, note) = if z.len() <= configaut::MAX_ENUM_POINTS {
            let gamma = [p, q]
                .iter()
                .map(|&r| {
                    Ok(GammaReport {
                        p: r,
                        quotient_exponent: configaut::level2_data(z, r)?.quotient_exponent(),
                        elements: cyc(&configaut::gamma_subgroup(z, r)?),
                        torsion_ok: configaut::torsion_order_check(z, r)?.passed(),
                    })
                })
                .collect::<Result<Vec<_>, ConfigError>>()?;
            let inter = configaut::gamma_intersection(z, p, q)?;
            let injective = inter.iter().all(|s| configaut::is_identity(s));
            (Some(gamma), Some(cyc(&inter)), Some(injective), None)
        } else {
            let note = format!(
                "level-2 subgroups are only enumerated for at most {} points",
                configaut::MAX_ENUM_POINTS
            );
            (None, None, None, Some(note))
        };
        Ok(AutReport {
            command: "aut".into(),
            version: REPORT_VERSION,
            base: z.base().to_string(),
            points: strings(z.points()),
            weights: z
                .weights()
                .iter()
                .map(|r| r.iter().map(BigUint::to_string).collect())
                .collect(),
            order: group.order().to_string(),
            generators: cyc(&group.generators()),
            primes: [p, q],
            gamma,
            intersection,
            injective,
            note,
            timing,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetImage {
    pub map: String,
    /// `F(y) mod p²`, per coordinate.
    pub base: Vec<u64>,
    /// `∂F_j/∂x_i (y) mod p`, row `j`.
    pub jacobian: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetsReport {
    pub command: String,
    pub version: u32,
    pub p: u64,
    pub point: Vec<String>,
    /// `y mod p²`.
    pub lifted: Vec<u64>,
    pub images: Vec<JetImage>,
    pub timing: Timing,
}

impl JetsReport {
    pub fn new(sys: &AffineSystem, y: &Point, p: u64, timing: Timing) -> Result<Self, InputError> {
        sys.check_point(y)?;
        let frame = jetspace::framed_point(y, p)?;
        let images = sys
            .maps()
            .iter()
            .map(|m| {
                let img = jetspace::jet_apply(&m.coords, &frame)?;
                // The frame carries e_i on x_i, so the tangent rows are the gradients.
                Ok(JetImage {
                    map: m.name.clone(),
                    base: img.base_values(),
                    jacobian: img.tangent_matrix(),
                })
            })
            .collect::<Result<_, JetError>>()?;
        Ok(JetsReport {
            command: "jets".into(),
            version: REPORT_VERSION,
            p,
            point: y.to_strings(),
            lifted: frame.base_values(),
            images,
            timing,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub p: u64,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolateReport {
    pub command: String,
    pub version: u32,
    pub cycle: Vec<String>,
    pub polynomial: String,
    /// Coefficients from the constant term upward.
    pub coefficients: Vec<String>,
    pub integral: bool,
    pub obstructions: Vec<ObstructionReport>,
    pub timing: Timing,
}

impl InterpolateReport {
    pub fn new(f: &CycleInterpolant, timing: Timing) -> Self {
        let obstructions = (2..=f.cycle.len() as u64)
            .filter(|&p| crate::arith::is_prime(p))
            .filter_map(|p| {
                configaut::residue_obstruction(&f.cycle, p).map(|(i, j)| ObstructionReport {
                    p,
                    i,
                    j,
                })
            })
            .collect();
        InterpolateReport {
            command: "interpolate".into(),
            version: REPORT_VERSION,
            cycle: f.cycle.iter().map(BigInt::to_string).collect(),
            polynomial: f.poly.to_string().replace("x1", "t"),
            coefficients: f
                .coefficients()
                .iter()
                .map(BigRational::to_string)
                .collect(),
            integral: f.integral,
            obstructions,
            timing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub command: String,
    pub version: u32,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub command: String,
    pub version: u32,
    pub error: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(command: &str, e: &InputError) -> Self {
        ErrorReport {
            command: command.into(),
            version: REPORT_VERSION,
            error: e.kind().into(),
            message: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_points() {
        assert_eq!(
            parse_rational(" -7/2 ").unwrap(),
            BigRational::new((-7).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let p = parse_point(r#"[0, "1/2", "-3"]"#).unwrap();
        assert_eq!(p.to_strings(), ["0", "1/2", "-3"]);
    }

    #[test]
    fn system_files_in_both_forms() {
        let bare = SystemFile::from_json(r#"{"n": 1, "maps": [["36 - x1"]]}"#).unwrap();
        let sys = bare.to_system().unwrap();
        assert_eq!(sys.maps()[0].name, "f1");
        assert_eq!(sys.base(), 1);
        let named = SystemFile::from_json(
            r#"{"n": 2, "N": 6, "maps": [{"name": "g", "coords": ["1/6*x2", "x1"]}]}"#,
        )
        .unwrap();
        assert_eq!(named.to_system().unwrap().maps()[0].name, "g");
        let bad = SystemFile::from_json(r#"{"n": 1, "maps": [["x1 +"]]}"#).unwrap();
        assert_eq!(bad.to_system().unwrap_err().kind(), "parse");
    }

    #[test]
    fn point_sets_in_both_forms() {
        let z = PointSetFile::from_json(r#"[["0"], ["36"]]"#)
            .unwrap()
            .to_config()
            .unwrap();
        assert_eq!(z.weight(0, 1), &BigUint::from(36u32));
        let z = PointSetFile::from_json(r#"{"N": 2, "points": [[0], [36]]}"#)
            .unwrap()
            .to_config()
            .unwrap();
        assert_eq!(z.weight(0, 1), &BigUint::from(9u32));
    }

    #[test]
    fn aut_report_for_two_points() {
        let z = PointSetFile::from_json("[[0], [36]]")
            .unwrap()
            .to_config()
            .unwrap();
        let r = AutReport::new(&z, 2, 3, Timing { elapsed_ms: 0.0 }).unwrap();
        assert_eq!(r.order, "2");
        assert_eq!(r.generators, ["(0 1)"]);
        let g = r.gamma.unwrap();
        assert_eq!(g[0].elements, ["()", "(0 1)"]);
        assert_eq!(g[1].elements, ["()"]);
        assert_eq!(r.injective, Some(true));
    }

    #[test]
    fn jets_of_negation() {
        let sys = SystemFile::from_json(r#"{"n": 1, "maps": [["-x1"]]}"#)
            .unwrap()
            .to_system()
            .unwrap();
        let r =
            JetsReport::new(&sys, &Point::from_ints([5]), 3, Timing { elapsed_ms: 0.0 }).unwrap();
        assert_eq!(r.images[0].base, [4]);
        assert_eq!(r.images[0].jacobian, [[2]]);
    }

    #[test]
    fn interpolation_report() {
        let f = configaut::lagrange_cycle(&configaut::cycle_from_ints(&[0, 1, 2])).unwrap();
        let r = InterpolateReport::new(&f, Timing { elapsed_ms: 0.0 });
        assert_eq!(r.coefficients, ["1", "5/2", "-3/2"]);
        assert!(!r.integral);
        assert_eq!(r.obstructions, [ObstructionReport { p: 2, i: 0, j: 2 }]);
        assert_eq!(r.polynomial, "-3/2*t^2 + 5/2*t + 1");
    }
}
