//! Executable checks for endomorphisms of `ℂ*` and conjugating bijections.
//!
//! Every holomorphic self-map of `ℂ*` is `z^m·exp(L(z))` with `L` holomorphic on
//! `ℂ*`; here `L` is a finite Laurent polynomial.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::complex::{gr, gr_int, rel_err, GaussianRational};
use crate::scalar::rational::rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CStarError {
    #[error("zero is not in the punctured plane")]
    Zero,
    #[error("value out of double range")]
    Range,
    #[error("exponent must be +1 or -1")]
    Exponent,
    #[error("table not closed: {0} missing")]
    NotClosed(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
}

/// `z ↦ z^m·exp(Σ c_k z^k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CStarEndo {
    pub m: i64,
    pub laurent: BTreeMap<i64, Complex64>,
}

impl CStarEndo {
    pub fn monomial(m: i64) -> Self {
        Self { m, laurent: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::monomial(1)
    }

    pub fn new(m: i64, terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let laurent = terms.into_iter().filter(|(_, c)| *c != Complex64::zero()).collect();
        Self { m, laurent }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, CStarError> {
        if z == Complex64::zero() {
            return Err(CStarError::Zero);
        }
        let exponent: Complex64 = self.laurent.iter().map(|(&k, &c)| c * crate::complex::powi64(z, k)).sum();
        let v = crate::complex::powi64(z, self.m) * exponent.exp();
        if !v.re.is_finite() || !v.im.is_finite() || v == Complex64::zero() {
            return Err(CStarError::Range);
        }
        Ok(v)
    }

    /// `self ∘ other` when one side is a pure monomial.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        if self.laurent.is_empty() {
            let scaled = other.laurent.iter().map(|(&k, &c)| (k, c * self.m as f64));
            return Some(Self::new(self.m * other.m, scaled));
        }
        if other.laurent.is_empty() {
            let n = other.m;
            let mut laurent = BTreeMap::new();
            for (&k, &c) in &self.laurent {
                *laurent.entry(k * n).or_insert(Complex64::zero()) += c;
            }
            return Some(Self::new(self.m * n, laurent));
        }
        None
    }
}

/// `φ(z) = a·z^{±1}`, followed by complex conjugation when `conjugate` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CandidateConj {
    pub a: Complex64,
    pub exponent: i8,
    pub conjugate: bool,
}

impl CandidateConj {
    pub fn new(a: Complex64, exponent: i8, conjugate: bool) -> Result<Self, CStarError> {
        if a == Complex64::zero() {
            return Err(CStarError::Zero);
        }
        if exponent != 1 && exponent != -1 {
            return Err(CStarError::Exponent);
        }
        Ok(Self { a, exponent, conjugate })
    }

    pub fn identity() -> Self {
        Self { a: Complex64::one(), exponent: 1, conjugate: false }
    }

    pub fn conjugation() -> Self {
        Self { a: Complex64::one(), exponent: 1, conjugate: true }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = self.a * if self.exponent == 1 { z } else { z.inv() };
        if self.conjugate {
            w.conj()
        } else {
            w
        }
    }
}

/// Roots of unity of orders 1..=12 times radii 1/2, 1, 2; deduplicated, fixed order.
pub fn sample_grid() -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for r in [0.5, 1.0, 2.0] {
        for n in 1..=12u32 {
            for k in 0..n {
                let z = Complex64::from_polar(r, TAU * f64::from(k) / f64::from(n));
                if out.iter().all(|w| (w - z).norm() > 1e-12) {
                    out.push(z);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOutcome {
    pub pass: bool,
    pub worst_residual: f64,
    pub worst_at: Option<Complex64>,
}

const TOL: f64 = 1e-9;

fn worst_over(points: impl Iterator<Item = Complex64>, mut residual: impl FnMut(Complex64) -> Option<f64>) -> CheckOutcome {
    let mut out = CheckOutcome { pass: true, worst_residual: 0.0, worst_at: None };
    for z in points {
        let r = residual(z).unwrap_or(f64::INFINITY);
        if !(r <= out.worst_residual) {
            out.worst_residual = r;
            out.worst_at = Some(z);
        }
    }
    out.pass = out.worst_residual <= TOL;
    out
}

/// `g(φ(z)) = φ(f(z))` on the first `samples` grid points.
pub fn check_conjugating(phi: &CandidateConj, f: &CStarEndo, g: &CStarEndo, samples: usize) -> CheckOutcome {
    let grid = sample_grid();
    let n = samples.max(1);
    worst_over(grid.into_iter().cycle().take(n), |z| {
        let lhs = g.eval(phi.apply(z)).ok()?;
        let rhs = phi.apply(f.eval(z).ok()?);
        Some(rel_err(lhs, rhs))
    })
}

/// Which side of the exponential conjugation is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpBranch {
    /// `exp(c·z)`.
    Z,
    /// `exp(c/z)`.
    InvZ,
}

/// `φ(exp(w)) = exp(c·φ(w)^{±1})` on grid points `w`.
pub fn exp_conjugation_check(phi: &CandidateConj, c: Complex64, branch: ExpBranch) -> Result<CheckOutcome, CStarError> {
    if c == Complex64::zero() {
        return Err(CStarError::Zero);
    }
    Ok(worst_over(sample_grid().into_iter(), |w| {
        let pw = phi.apply(w);
        let inner = match branch {
            ExpBranch::Z => c * pw,
            ExpBranch::InvZ => c / pw,
        };
        Some(rel_err(phi.apply(w.exp()), inner.exp()))
    }))
}

pub type Table = BTreeMap<Key, GaussianRational>;

/// Ordered key for Gaussian rationals (real part, then imaginary part).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key(pub crate::scalar::Rational, pub crate::scalar::Rational);

impl From<&GaussianRational> for Key {
    fn from(z: &GaussianRational) -> Self {
        Key(z.re.clone(), z.im.clone())
    }
}

impl Key {
    pub fn value(&self) -> GaussianRational {
        gr(self.0.clone(), self.1.clone())
    }
}

pub fn table_from(pairs: impl IntoIterator<Item = (GaussianRational, GaussianRational)>) -> Table {
    pairs.into_iter().map(|(k, v)| (Key::from(&k), v)).collect()
}

fn show(z: &GaussianRational) -> String {
    use crate::scalar::rational::format_rational as f;
    if z.im.is_zero() {
        f(&z.re)
    } else {
        format!("{}+{}i", f(&z.re), f(&z.im))
    }
}

/// `φ(ab) = φ(a)φ(b)` over `pairs`, or over every pair whose product lies in the table.
pub fn multiplicativity_check(table: &Table, pairs: Option<&[(GaussianRational, GaussianRational)]>) -> Result<Option<(GaussianRational, GaussianRational)>, CStarError> {
    let all: Vec<(GaussianRational, GaussianRational)>;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            all = table
                .keys()
                .flat_map(|a| table.keys().map(move |b| (a.value(), b.value())))
                .filter(|(a, b)| table.contains_key(&Key::from(&(a * b))))
                .collect();
            &all
        }
    };
    for (a, b) in pairs {
        let get = |x: &GaussianRational| table.get(&Key::from(x)).ok_or_else(|| CStarError::NotClosed(show(x)));
        let (fa, fb, fab) = (get(a)?, get(b)?, get(&(a * b))?);
        if &(fa * fb) != fab {
            return Ok(Some((a.clone(), b.clone())));
        }
    }
    Ok(None)
}

/// Checks `φ(1) = 1` and additivity/multiplicativity on every in-table instance, then
/// whether `φ` is the identity (`fixes_i`) or complex conjugation.
pub fn rigidity_probe(table: &Table, fixes_i: bool) -> Result<bool, CStarError> {
    let one = GaussianRational::one();
    if let Some(v) = table.get(&Key::from(&one)) {
        if v != &one {
            return Err(CStarError::Axiom(format!("φ(1) = {}", show(v))));
        }
    }
    for (ka, fa) in table {
        for (kb, fb) in table {
            let (a, b) = (ka.value(), kb.value());
            if let Some(fs) = table.get(&Key::from(&(&a + &b))) {
                if &(fa + fb) != fs {
                    return Err(CStarError::Axiom(format!("φ({} + {}) ≠ φ({}) + φ({})", show(&a), show(&b), show(&a), show(&b))));
                }
            }
            if let Some(fp) = table.get(&Key::from(&(&a * &b))) {
                if &(fa * fb) != fp {
                    return Err(CStarError::Axiom(format!("φ({}·{}) ≠ φ({})·φ({})", show(&a), show(&b), show(&a), show(&b))));
                }
            }
        }
    }
    Ok(table.iter().all(|(k, v)| {
        let z = k.value();
        v == &if fixes_i { z } else { z.conj() }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
enum Node {
    Leaf,
    Bin(Op, usize, usize),
}

/// All expressions with at most `depth` binary operations over the generators.
struct Arena {
    nodes: Vec<Node>,
    values: Vec<GaussianRational>,
    /// Bit set of generators used by each node.
    uses: Vec<u8>,
}

fn apply(op: Op, a: &GaussianRational, b: &GaussianRational) -> Option<GaussianRational> {
    Some(match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => {
            if b.is_zero() {
                return None;
            }
            a / b
        }
    })
}

fn build_arena(generators: &[GaussianRational], depth: usize) -> Arena {
    let mut arena = Arena { nodes: Vec::new(), values: Vec::new(), uses: Vec::new() };
    let mut by_ops: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for (i, g) in generators.iter().enumerate() {
        arena.nodes.push(Node::Leaf);
        arena.values.push(g.clone());
        arena.uses.push(1 << i);
        by_ops[0].push(i);
    }
    for total in 1..=depth {
        for left_ops in 0..total {
            let right_ops = total - 1 - left_ops;
            let (ls, rs) = (by_ops[left_ops].clone(), by_ops[right_ops].clone());
            for &l in &ls {
                for &r in &rs {
                    for op in [Op::Add, Op::Sub, Op::Mul, Op::Div] {
                        if let Some(v) = apply(op, &arena.values[l], &arena.values[r]) {
                            let id = arena.nodes.len();
                            arena.nodes.push(Node::Bin(op, l, r));
                            arena.values.push(v);
                            arena.uses.push(arena.uses[l] | arena.uses[r]);
                            by_ops[total].push(id);
                        }
                    }
                }
            }
        }
    }
    arena
}

/// Outcome of the exhaustive table search.
#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub expressions: usize,
    pub grid_size: usize,
    pub candidates_tried: usize,
    /// Generator images of every consistent table.
    pub solutions: Vec<Vec<GaussianRational>>,
}

impl RigidityReport {
    /// Names of the solutions that match identity or conjugation; `None` for anything else.
    pub fn classify(&self, generators: &[GaussianRational]) -> Vec<Option<&'static str>> {
        self.solutions
            .iter()
            .map(|s| {
                if s.iter().zip(generators).all(|(v, g)| v == g) {
                    Some("identity")
                } else if s.iter().zip(generators).all(|(v, g)| v == &g.conj()) {
                    Some("conjugation")
                } else {
                    None
                }
            })
            .collect()
    }
}

/// The generators `{1, 2, 3, i, 1/2}`; `1` is pinned by `φ(1) = 1`.
pub fn default_generators() -> Vec<GaussianRational> {
    vec![gr_int(1, 0), gr_int(2, 0), gr_int(3, 0), gr_int(0, 1), gr(rat(1, 2), rat(0, 1))]
}

/// Searches every assignment of generator images drawn from the grid, propagating
/// `φ(a ∘ b) = φ(a) ∘ φ(b)` over all expressions and backtracking on the first clash.
pub fn rigidity_search(generators: &[GaussianRational], depth: usize) -> RigidityReport {
    let arena = build_arena(generators, depth);
    let mut grid: Vec<GaussianRational> = Vec::new();
    let mut seen: HashMap<Key, ()> = HashMap::new();
    for v in &arena.values {
        if seen.insert(Key::from(v), ()).is_none() {
            grid.push(v.clone());
        }
    }
    // Stage k checks the nodes whose newest generator is k, smallest first.
    let stages: Vec<Vec<usize>> = (0..generators.len())
        .map(|k| (0..arena.nodes.len()).filter(|&n| arena.uses[n] >> k == 1).collect())
        .collect();
    let mut report = RigidityReport { expressions: arena.nodes.len(), grid_size: grid.len(), candidates_tried: 0, solutions: Vec::new() };
    let mut images: Vec<Option<GaussianRational>> = vec![None; arena.nodes.len()];
    let mut table: HashMap<Key, GaussianRational> = HashMap::new();
    search(&arena, &stages, &grid, 0, &mut images, &mut table, &mut Vec::new(), &mut report);
    report
}

#[allow(clippy::too_many_arguments)]
fn search(
    arena: &Arena,
    stages: &[Vec<usize>],
    grid: &[GaussianRational],
    k: usize,
    images: &mut Vec<Option<GaussianRational>>,
    table: &mut HashMap<Key, GaussianRational>,
    chosen: &mut Vec<GaussianRational>,
    report: &mut RigidityReport,
) {
    if k == stages.len() {
        report.solutions.push(chosen.clone());
        return;
    }
    let pinned = k == 0 && arena.values[0].is_one();
    let candidates: Vec<GaussianRational> = if pinned { vec![GaussianRational::one()] } else { grid.to_vec() };
    for cand in candidates {
        report.candidates_tried += 1;
        let mut added: Vec<Key> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        let mut ok = true;
        for &n in &stages[k] {
            let img = match &arena.nodes[n] {
                Node::Leaf => Some(cand.clone()),
                Node::Bin(op, l, r) => match (&images[*l], &images[*r]) {
                    (Some(a), Some(b)) => apply(*op, a, b),
                    _ => unreachable!("children belong to earlier stages"),
                },
            };
            let Some(img) = img else {
                ok = false;
                break;
            };
            let key = Key::from(&arena.values[n]);
            match table.get(&key) {
                Some(prev) if prev != &img => {
                    ok = false;
                    break;
                }
                Some(_) => {}
                None => {
                    table.insert(key.clone(), img.clone());
                    added.push(key);
                }
            }
            images[n] = Some(img);
            touched.push(n);
        }
        if ok {
            chosen.push(cand);
            search(arena, stages, grid, k + 1, images, table, chosen, report);
            chosen.pop();
        }
        for key in added {
            table.remove(&key);
        }
        for n in touched {
            images[n] = None;
        }
    }
}
