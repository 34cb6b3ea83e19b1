//! Orbits of a point under the monoid generated by finitely many polynomial
//! maps, and the periodicity decision built on them.
//!
//! The orbit is computed as the ascending chain `O_1 = {x}`,
//! `O_{k+1} = O_k ∪ {f(y) : y ∈ O_k, f ∈ S}`. The monoid is unital, so `x`
//! always belongs to its own orbit. A point is periodic when its orbit is
//! finite and every generator permutes it.
//!
//! Every periodic orbit has at most `C(n)` points (see [`crate::bounds`]), so
//! once the chain grows past the bound the point is certainly not periodic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{self, BoundError, SizeBound};
use crate::polyring::{parse_poly, ParseError, Point, PolyError, Polynomial};

/// Frontier sizes (points times generators) above which images are computed in parallel.
const PARALLEL_THRESHOLD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("map {map:?} has {got} coordinates, expected {expected}")]
    WrongArity {
        map: String,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("denominators must divide a power of {base}")]
    DenominatorNotAllowed { base: u64 },
    #[error("inverted denominator must be at least 1")]
    ZeroBase,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("bound override must be at least 1")]
    ZeroBound,
    #[error("set is not closed under {map:?}: {point} maps to {image}")]
    NotClosed {
        map: String,
        point: Point,
        image: Point,
    },
    #[error("map {map:?}, coordinate {coord}: {source}")]
    Parse {
        map: String,
        coord: usize,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// One generator `f = (f_1, ..., f_n)` of the monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub coords: Vec<Polynomial>,
}

/// Affine n-space over `Z[1/N]` with a finite generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystem {
    n: usize,
    base: u64,
    maps: Vec<NamedMap>,
}

impl AffineSystem {
    pub fn new(n: usize, base: u64, maps: Vec<NamedMap>) -> Result<Self, OrbitError> {
        if base == 0 {
            return Err(OrbitError::ZeroBase);
        }
        for m in &maps {
            if m.coords.len() != n {
                return Err(OrbitError::WrongArity {
                    map: m.name.clone(),
                    expected: n,
                    got: m.coords.len(),
                });
            }
            for f in &m.coords {
                if f.dim() != n {
                    return Err(OrbitError::DimensionMismatch {
                        expected: n,
                        got: f.dim(),
                    });
                }
                if !f.denominators_divide(base) {
                    return Err(OrbitError::DenominatorNotAllowed { base });
                }
            }
        }
        Ok(AffineSystem { n, base, maps })
    }

    /// Parses generators given as `(name, coordinate polynomials)`.
    pub fn parse<S: AsRef<str>>(
        n: usize,
        base: u64,
        maps: &[(&str, Vec<S>)],
    ) -> Result<Self, OrbitError> {
        let mut parsed = Vec::with_capacity(maps.len());
        for (name, coords) in maps {
            let coords = coords
                .iter()
                .enumerate()
                .map(|(i, src)| {
                    parse_poly(src.as_ref(), n, base).map_err(|source| OrbitError::Parse {
                        map: name.to_string(),
                        coord: i + 1,
                        source,
                    })
                })
                .collect::<Result<_, _>>()?;
            parsed.push(NamedMap {
                name: name.to_string(),
                coords,
            });
        }
        AffineSystem::new(n, base, parsed)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The inverted denominator `N` of the base ring `Z[1/N]`.
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn maps(&self) -> &[NamedMap] {
        &self.maps
    }

    pub fn check_point(&self, x: &Point) -> Result<(), OrbitError> {
        if x.dim() != self.n {
            return Err(OrbitError::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        if !x.denominators_divide(self.base) {
            return Err(OrbitError::DenominatorNotAllowed { base: self.base });
        }
        Ok(())
    }

    /// Image of `y` under generator `k`.
    pub fn apply(&self, k: usize, y: &Point) -> Result<Point, OrbitError> {
        let coords = self.maps[k]
            .coords
            .iter()
            .map(|f| f.eval(y))
            .collect::<Result<_, _>>()?;
        Ok(Point::new(coords))
    }
}

/// The chain `O_1 ⊆ O_2 ⊆ ...` as far as it has been computed.
///
/// After `steps` rounds, `visited` is `O_{steps+1}` and `frontier` holds the
/// points first reached in the last round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitState {
    pub visited: BTreeSet<Point>,
    pub frontier: BTreeSet<Point>,
    pub steps: usize,
    pub stabilized: bool,
}

impl OrbitState {
    pub fn start(x: Point) -> Self {
        OrbitState {
            visited: BTreeSet::from([x.clone()]),
            frontier: BTreeSet::from([x]),
            steps: 0,
            stabilized: false,
        }
    }

    /// Runs one round of the chain. Once stabilized, further rounds are no-ops.
    pub fn step(&mut self, sys: &AffineSystem) -> Result<(), OrbitError> {
        if self.frontier.is_empty() {
            self.stabilized = true;
            return Ok(());
        }
        let work: Vec<(&Point, usize)> = self
            .frontier
            .iter()
            .flat_map(|y| (0..sys.maps.len()).map(move |k| (y, k)))
            .collect();
        let images: Vec<Point> = if work.len() > PARALLEL_THRESHOLD {
            work.par_iter()
                .map(|&(y, k)| sys.apply(k, y))
                .collect::<Result<_, _>>()?
        } else {
            work.iter()
                .map(|&(y, k)| sys.apply(k, y))
                .collect::<Result<_, _>>()?
        };
        let mut fresh = BTreeSet::new();
        for img in images {
            if !self.visited.contains(&img) {
                fresh.insert(img);
            }
        }
        self.visited.extend(fresh.iter().cloned());
        self.frontier = fresh;
        self.steps += 1;
        self.stabilized = self.frontier.is_empty();
        Ok(())
    }

    /// The visited points in canonical order.
    pub fn sorted(&self) -> Vec<Point> {
        self.visited.iter().cloned().collect()
    }
}

/// Grows the orbit of `x` until it stabilizes or holds more than `max_points` points.
///
/// Rounds are always completed, so the result does not depend on the order in
/// which images are computed.
pub fn orbit_closure(
    sys: &AffineSystem,
    x: &Point,
    max_points: usize,
) -> Result<OrbitState, OrbitError> {
    if max_points == 0 {
        return Err(OrbitError::ZeroBudget);
    }
    sys.check_point(x)?;
    let mut state = OrbitState::start(x.clone());
    while !state.stabilized && state.visited.len() <= max_points {
        state.step(sys)?;
        if state.frontier.is_empty() {
            state.stabilized = true;
        }
    }
    Ok(state)
}

/// How one generator acts on a finite invariant set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorAction {
    /// `perm[i] = j` when the generator sends the `i`-th point to the `j`-th
    /// (indices into the canonically sorted set).
    Bijection(Vec<usize>),
    /// Two distinct points with the same image.
    Collision {
        first: Point,
        second: Point,
        image: Point,
    },
}

/// Tests every generator for bijectivity on the finite set `orbit`.
pub fn permutation_check(
    sys: &AffineSystem,
    orbit: &BTreeSet<Point>,
) -> Result<Vec<(String, GeneratorAction)>, OrbitError> {
    let index: BTreeMap<&Point, usize> = orbit.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = Vec::with_capacity(sys.maps.len());
    for (k, m) in sys.maps.iter().enumerate() {
        let mut perm = Vec::with_capacity(orbit.len());
        let mut preimage: Vec<Option<usize>> = vec![None; orbit.len()];
        let mut collision = None;
        for (i, y) in orbit.iter().enumerate() {
            let img = sys.apply(k, y)?;
            let Some(&j) = index.get(&img) else {
                return Err(OrbitError::NotClosed {
                    map: m.name.clone(),
                    point: y.clone(),
                    image: img,
                });
            };
            match preimage[j] {
                Some(prev) if collision.is_none() => {
                    let first = orbit.iter().nth(prev).unwrap().clone();
                    collision = Some(GeneratorAction::Collision {
                        first,
                        second: y.clone(),
                        image: img,
                    });
                }
                Some(_) => {}
                None => preimage[j] = Some(i),
            }
            perm.push(j);
        }
        out.push((
            m.name.clone(),
            collision.unwrap_or(GeneratorAction::Bijection(perm)),
        ));
    }
    Ok(out)
}

/// Why a point was found not to be periodic.
#[derive(Debug, Clone, PartialEq)]
pub enum NotPeriodicReason {
    /// The chain outgrew the proven bound on periodic orbit sizes.
    ExceededProvenBound { visited: usize, witness: Point },
    /// The orbit is finite but some generator is not injective on it.
    FiniteNotPermuted {
        orbit: Vec<Point>,
        map: String,
        first: Point,
        second: Point,
        image: Point,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Periodic {
        orbit: Vec<Point>,
        permutations: Vec<(String, Vec<usize>)>,
    },
    NotPeriodic(NotPeriodicReason),
    Undecided {
        visited: usize,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Periodic { .. } => "periodic",
            Verdict::NotPeriodic(NotPeriodicReason::ExceededProvenBound { .. }) => {
                "not_periodic_exceeded_bound"
            }
            Verdict::NotPeriodic(NotPeriodicReason::FiniteNotPermuted { .. }) => {
                "not_periodic_finite_not_permuted"
            }
            Verdict::Undecided { .. } => "undecided",
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Verdict::Periodic { .. })
    }
}

/// A verdict together with the resources it was computed under.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub budget: usize,
    pub bound: SizeBound,
    /// True when the bound came from the caller rather than from [`crate::bounds`].
    pub bound_overridden: bool,
    pub rounds: usize,
}

/// Decides whether `x` is periodic, storing at most about `budget` points.
///
/// The threshold is `bound_override` when given, otherwise the effective bound
/// for the system's dimension and base ring.
pub fn decide_periodic(
    sys: &AffineSystem,
    x: &Point,
    budget: usize,
    bound_override: Option<&BigUint>,
) -> Result<Decision, OrbitError> {
    if budget == 0 {
        return Err(OrbitError::ZeroBudget);
    }
    let (bound, bound_overridden) = match bound_override {
        Some(b) if b.is_zero() => return Err(OrbitError::ZeroBound),
        Some(b) => (SizeBound::Exact(b.clone()), true),
        None => {
            let primes = bounds::choose_primes(sys.base());
            (
                bounds::bound_c(sys.dim(), primes, false)?.threshold(),
                false,
            )
        }
    };
    let limit = budget.min(bound.as_limit());
    let state = orbit_closure(sys, x, limit)?;
    let visited = state.visited.len();
    let verdict = if state.stabilized {
        let actions = permutation_check(sys, &state.visited)?;
        let orbit = state.sorted();
        let mut permutations = Vec::with_capacity(actions.len());
        let mut failure = None;
        for (name, action) in actions {
            match action {
                GeneratorAction::Bijection(perm) => permutations.push((name, perm)),
                GeneratorAction::Collision {
                    first,
                    second,
                    image,
                } => {
                    failure = Some(NotPeriodicReason::FiniteNotPermuted {
                        orbit: orbit.clone(),
                        map: name,
                        first,
                        second,
                        image,
                    });
                    break;
                }
            }
        }
        match failure {
            Some(reason) => Verdict::NotPeriodic(reason),
            None => Verdict::Periodic {
                orbit,
                permutations,
            },
        }
    } else if bound.exceeded_by(visited as u64) {
        let witness = state
            .frontier
            .iter()
            .next()
            .cloned()
            .expect("frontier nonempty");
        Verdict::NotPeriodic(NotPeriodicReason::ExceededProvenBound { visited, witness })
    } else {
        Verdict::Undecided { visited }
    };
    Ok(Decision {
        verdict,
        budget,
        bound,
        bound_overridden,
        rounds: state.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys1(maps: &[&str]) -> AffineSystem {
        let named: Vec<(String, Vec<&str>)> = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("f{}", i + 1), vec![*m]))
            .collect();
        let refs: Vec<(&str, Vec<&str>)> =
            named.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
        AffineSystem::parse(1, 1, &refs).unwrap()
    }

    fn pts(xs: &[i64]) -> BTreeSet<Point> {
        xs.iter().map(|&x| Point::from_ints([x])).collect()
    }

    #[test]
    fn closure_of_involution() {
        let s = sys1(&["-x1"]);
        let st = orbit_closure(&s, &Point::from_ints([5]), 100).unwrap();
        assert!(st.stabilized);
        assert_eq!(st.visited, pts(&[5, -5]));
    }

    #[test]
    fn closure_of_shift_exhausts_budget() {
        let s = sys1(&["x1 + 1"]);
        let st = orbit_closure(&s, &Point::from_ints([0]), 100).unwrap();
        assert!(!st.stabilized);
        assert_eq!(st.visited.len(), 101);
    }

    #[test]
    fn closure_in_the_plane() {
        let s = AffineSystem::parse(
            2,
            1,
            &[("swap", vec!["x2", "x1"]), ("neg", vec!["-x1", "-x2"])],
        )
        .unwrap();
        let st = orbit_closure(&s, &Point::from_ints([1, 2]), 100).unwrap();
        assert!(st.stabilized);
        let expect: BTreeSet<Point> = [[1, 2], [2, 1], [-1, -2], [-2, -1]]
            .into_iter()
            .map(Point::from_ints)
            .collect();
        assert_eq!(st.visited, expect);
    }

    #[test]
    fn empty_generator_set_is_periodic() {
        let s = AffineSystem::new(1, 1, vec![]).unwrap();
        let d = decide_periodic(&s, &Point::from_ints([3]), 10, None).unwrap();
        assert_eq!(
            d.verdict,
            Verdict::Periodic {
                orbit: vec![Point::from_ints([3])],
                permutations: vec![]
            }
        );
    }

    #[test]
    fn permutation_examples() {
        let s = sys1(&["-x1"]);
        let r = permutation_check(&s, &pts(&[5, -5])).unwrap();
        assert_eq!(r[0].1, GeneratorAction::Bijection(vec![1, 0]));

        let s = sys1(&["x1^2"]);
        let r = permutation_check(&s, &pts(&[-1, 1])).unwrap();
        assert_eq!(
            r[0].1,
            GeneratorAction::Collision {
                first: Point::from_ints([-1]),
                second: Point::from_ints([1]),
                image: Point::from_ints([1]),
            }
        );

        let s = sys1(&["36 - x1"]);
        let r = permutation_check(&s, &pts(&[0, 36])).unwrap();
        assert_eq!(r[0].1, GeneratorAction::Bijection(vec![1, 0]));
    }

    #[test]
    fn permutation_check_requires_closure() {
        let s = sys1(&["x1 + 1"]);
        let err = permutation_check(&s, &pts(&[0, 1])).unwrap_err();
        assert!(matches!(err, OrbitError::NotClosed { .. }));
    }

    #[test]
    fn decide_examples() {
        let d = decide_periodic(&sys1(&["36 - x1"]), &Point::from_ints([0]), 1000, None).unwrap();
        match &d.verdict {
            Verdict::Periodic {
                orbit,
                permutations,
            } => {
                assert_eq!(orbit.len(), 2);
                assert_eq!(permutations[0].1, vec![1, 0]);
            }
            v => panic!("unexpected {v:?}"),
        }

        let d = decide_periodic(&sys1(&["x1 + 1"]), &Point::from_ints([0]), 10_000, None).unwrap();
        assert!(matches!(d.verdict, Verdict::Undecided { visited } if visited > 10_000));

        let d = decide_periodic(&sys1(&["x1^2"]), &Point::from_ints([-1]), 1000, None).unwrap();
        match d.verdict {
            Verdict::NotPeriodic(NotPeriodicReason::FiniteNotPermuted {
                first,
                second,
                image,
                ..
            }) => {
                assert_eq!(
                    (first, second, image),
                    (
                        Point::from_ints([-1]),
                        Point::from_ints([1]),
                        Point::from_ints([1])
                    )
                );
            }
            v => panic!("unexpected {v:?}"),
        }

        let fifty = BigUint::from(50u32);
        let d = decide_periodic(
            &sys1(&["x1 + 1"]),
            &Point::from_ints([0]),
            10_000,
            Some(&fifty),
        )
        .unwrap();
        assert!(matches!(
            d.verdict,
            Verdict::NotPeriodic(NotPeriodicReason::ExceededProvenBound { visited: 51, .. })
        ));
    }

    #[test]
    fn decide_rejects_bad_arguments() {
        let s = sys1(&["x1"]);
        let x = Point::from_ints([0]);
        assert_eq!(
            decide_periodic(&s, &x, 0, None),
            Err(OrbitError::ZeroBudget)
        );
        assert_eq!(
            decide_periodic(&s, &x, 5, Some(&BigUint::zero())),
            Err(OrbitError::ZeroBound)
        );
        let y = Point::from_ints([0, 0]);
        assert!(matches!(
            decide_periodic(&s, &y, 5, None),
            Err(OrbitError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_points_need_smooth_denominators() {
        let s = AffineSystem::parse(1, 2, &[("half", vec!["1/2*x1"])]).unwrap();
        let x = Point::new(vec![num_rational::BigRational::new(1.into(), 3.into())]);
        assert_eq!(
            orbit_closure(&s, &x, 10),
            Err(OrbitError::DenominatorNotAllowed { base: 2 })
        );
        let x = Point::new(vec![num_rational::BigRational::new(1.into(), 4.into())]);
        let st = orbit_closure(&s, &x, 10).unwrap();
        assert!(!st.stabilized);

        let err = AffineSystem::parse(1, 1, &[("half", vec!["1/2*x1"])]).unwrap_err();
        assert!(matches!(err, OrbitError::Parse { .. }));
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let err = AffineSystem::parse(2, 1, &[("bad", vec!["x1"])]).unwrap_err();
        assert!(matches!(err, OrbitError::WrongArity { .. }));
    }
}
