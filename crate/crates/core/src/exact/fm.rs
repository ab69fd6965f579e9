//! Exact linear feasibility by Fourier–Motzkin elimination.
//!
//! Everything is reduced to a system of weak rows `a . y >= c` (plus
//! equalities, which are substituted away first). Strict inequalities are
//! handled by homogenizing and demanding a slack of at least one, which is
//! equivalent because the homogeneous system is scale invariant.
//!
//! The elimination runs on `i128` and restarts on `BigInt` if any
//! intermediate product overflows. Rows are pruned with Chernikov's history
//! rule and by dominance; a feasible answer always comes with a witness that
//! is checked against the original rows, and a failed check reruns the
//! elimination without history pruning.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};

use super::linalg::rref;
use super::{RVector, Rational};
use crate::error::ExactError;

/// Default cap on the number of rows alive at any elimination stage.
pub const DEFAULT_ROW_CAP: usize = 250_000;

/// A mixed system of strict, weak and equality constraints over `R^dim`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    dim: usize,
    /// `a . x < b`
    pub strict: Vec<(RVector, Rational)>,
    /// `a . x <= b`
    pub weak: Vec<(RVector, Rational)>,
    /// `a . x = b`
    pub equalities: Vec<(RVector, Rational)>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, a: &RVector) -> Result<(), ExactError> {
        if a.dim() != self.dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(())
    }

    pub fn add_strict(&mut self, a: RVector, b: Rational) -> Result<&mut Self, ExactError> {
        self.check(&a)?;
        self.strict.push((a, b));
        Ok(self)
    }

    pub fn add_weak(&mut self, a: RVector, b: Rational) -> Result<&mut Self, ExactError> {
        self.check(&a)?;
        self.weak.push((a, b));
        Ok(self)
    }

    pub fn add_equality(&mut self, a: RVector, b: Rational) -> Result<&mut Self, ExactError> {
        self.check(&a)?;
        self.equalities.push((a, b));
        Ok(self)
    }

    /// Whether `x` satisfies every constraint exactly.
    pub fn satisfied_by(&self, x: &RVector) -> Result<bool, ExactError> {
        for (a, b) in &self.strict {
            if a.dot(x)? >= *b {
                return Ok(false);
            }
        }
        for (a, b) in &self.weak {
            if a.dot(x)? > *b {
                return Ok(false);
            }
        }
        for (a, b) in &self.equalities {
            if a.dot(x)? != *b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Scales `a . y >= c` (rational) to an integer row with the same solutions.
pub fn integer_row(a: &RVector, c: &Rational) -> (Vec<BigInt>, BigInt) {
    let mut cleared = a.extended(c.clone()).cleared();
    let rhs = cleared.pop().expect("nonempty");
    (cleared, rhs)
}

/// True iff some rational point satisfies every constraint of `sys`.
pub fn feasible(sys: &LinearSystem) -> Result<bool, ExactError> {
    Ok(find_point(sys)?.is_some())
}

/// A rational point satisfying `sys`, if one exists.
pub fn find_point(sys: &LinearSystem) -> Result<Option<RVector>, ExactError> {
    // homogenize over (x0, x): b x0 - a.x > 0 etc, x0 > 0
    let n = sys.dim + 1;
    let hom = |a: &RVector, b: &Rational| -> Vec<BigInt> {
        let mut row = Vec::with_capacity(n);
        row.push(b.clone());
        row.extend(a.coords().iter().map(|c| -c));
        RVector::new(row).cleared()
    };
    let mut weak = Vec::new();
    let one = BigInt::one();
    for (a, b) in &sys.strict {
        weak.push((hom(a, b), one.clone()));
    }
    let mut x0 = vec![BigInt::zero(); n];
    x0[0] = BigInt::one();
    weak.push((x0, one.clone()));
    for (a, b) in &sys.weak {
        weak.push((hom(a, b), BigInt::zero()));
    }
    let eqs: Vec<(Vec<BigInt>, BigInt)> = sys
        .equalities
        .iter()
        .map(|(a, b)| (hom(a, b), BigInt::zero()))
        .collect();
    let Some(y) = solve(n, &weak, &eqs, DEFAULT_ROW_CAP)? else {
        return Ok(None);
    };
    let x = RVector::new(y[1..].iter().map(|v| v / &y[0]).collect());
    debug_assert!(sys.satisfied_by(&x)?);
    Ok(Some(x))
}

/// Solves `{ a . y >= c for (a, c) in weak } ∩ { a . y = c for (a, c) in eqs }`
/// over `R^n`, returning a witness when feasible.
pub fn solve(
    n: usize,
    weak: &[(Vec<BigInt>, BigInt)],
    eqs: &[(Vec<BigInt>, BigInt)],
    cap: usize,
) -> Result<Option<Vec<Rational>>, ExactError> {
    for (a, _) in weak.iter().chain(eqs) {
        if a.len() != n {
            return Err(ExactError::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
    }

    // Parametrize the equality solution set as y = base + basis * z.
    let (base, basis) = if eqs.is_empty() {
        let basis: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::one();
                v
            })
            .collect();
        (vec![Rational::zero(); n], basis)
    } else {
        match affine_parametrization(n, eqs) {
            Some(p) => p,
            None => return Ok(None),
        }
    };
    let k = basis.len();

    // Reduced weak rows in z-space.
    let reduced: Vec<(Vec<BigInt>, BigInt)> = if eqs.is_empty() {
        weak.to_vec()
    } else {
        weak.iter()
            .map(|(a, c)| {
                let ar: Vec<Rational> = a.iter().map(|v| Rational::from_int(v.clone())).collect();
                let coeffs: Vec<Rational> = basis.iter().map(|b| dot_rat(&ar, b)).collect();
                let rhs = &Rational::from_int(c.clone()) - &dot_rat(&ar, &base);
                let mut row = coeffs;
                row.push(rhs);
                let cleared = RVector::new(row).cleared();
                let c = cleared[k].clone();
                (cleared[..k].to_vec(), c)
            })
            .collect()
    };

    let z = match eliminate_with_fallback(k, &reduced, cap)? {
        Some(z) => z,
        None => return Ok(None),
    };

    let mut y = base;
    for (zi, b) in z.iter().zip(&basis) {
        if zi.is_zero() {
            continue;
        }
        for (yj, bj) in y.iter_mut().zip(b) {
            if !bj.is_zero() {
                *yj += &(zi * bj);
            }
        }
    }
    debug_assert!(check_witness(&y, weak, eqs));
    Ok(Some(y))
}

fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

fn affine_parametrization(
    n: usize,
    eqs: &[(Vec<BigInt>, BigInt)],
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut m: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(a, c)| {
            let mut r: Vec<Rational> = a.iter().map(|v| Rational::from_int(v.clone())).collect();
            r.push(Rational::from_int(c.clone()));
            r
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut base = vec![Rational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        base[p] = m[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][f];
            }
            v
        })
        .collect();
    Some((base, basis))
}

fn check_witness(
    y: &[Rational],
    weak: &[(Vec<BigInt>, BigInt)],
    eqs: &[(Vec<BigInt>, BigInt)],
) -> bool {
    let eval = |a: &[BigInt]| {
        let mut acc = Rational::zero();
        for (ai, yi) in a.iter().zip(y) {
            if !ai.is_zero() && !yi.is_zero() {
                acc += &(&Rational::from_int(ai.clone()) * yi);
            }
        }
        acc
    };
    weak.iter()
        .all(|(a, c)| eval(a) >= Rational::from_int(c.clone()))
        && eqs
            .iter()
            .all(|(a, c)| eval(a) == Rational::from_int(c.clone()))
}

fn eliminate_with_fallback(
    k: usize,
    rows: &[(Vec<BigInt>, BigInt)],
    cap: usize,
) -> Result<Option<Vec<Rational>>, ExactError> {
    for pruning in [true, false] {
        let attempt = match convert_rows::<i128>(rows) {
            Some(small) => match Elimination::run(k, small, cap, pruning) {
                Err(Failure::Overflow) => None,
                other => Some(other),
            },
            None => None,
        };
        let outcome = match attempt {
            Some(o) => o,
            None => Elimination::run(
                k,
                convert_rows::<BigInt>(rows).expect("bigint"),
                cap,
                pruning,
            ),
        };
        match outcome {
            Ok(None) => return Ok(None),
            Ok(Some(z)) => {
                if check_witness(&z, rows, &[]) {
                    return Ok(Some(z));
                }
            }
            Err(Failure::Cap(rows)) => return Err(ExactError::CapExceeded { rows, cap }),
            Err(Failure::Overflow) => unreachable!("bigint arithmetic cannot overflow"),
            Err(Failure::Inconsistent) => {}
        }
    }
    unreachable!("unpruned elimination produced an invalid witness")
}

fn convert_rows<T: FmInt>(rows: &[(Vec<BigInt>, BigInt)]) -> Option<Vec<(Vec<T>, T)>> {
    rows.iter()
        .map(|(a, c)| {
            let a: Option<Vec<T>> = a.iter().map(T::from_big).collect();
            Some((a?, T::from_big(c)?))
        })
        .collect()
}

/// Integer types the elimination can run on.
pub(crate) trait FmInt:
    Clone + Debug + Eq + Ord + Hash + Zero + One + Signed + Integer + CheckedMul + CheckedAdd
{
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl FmInt for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        let x = v.to_i128()?;
        // leave headroom so that single products rarely overflow
        (x.unsigned_abs() < (1u128 << 100)).then_some(x)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl FmInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug)]
enum Failure {
    Overflow,
    Cap(usize),
    Inconsistent,
}

#[derive(Clone, Debug)]
struct Row<T> {
    a: Vec<T>,
    c: T,
    hist: u128,
}

struct Elimination<T> {
    n: usize,
    /// (eliminated variable, rows alive just before eliminating it)
    stages: Vec<(usize, Vec<Row<T>>)>,
}

impl<T: FmInt> Elimination<T> {
    fn run(
        n: usize,
        rows: Vec<(Vec<T>, T)>,
        cap: usize,
        pruning: bool,
    ) -> Result<Option<Vec<Rational>>, Failure> {
        let track = pruning && rows.len() <= 128;
        let mut current = Vec::with_capacity(rows.len());
        for (i, (a, c)) in rows.into_iter().enumerate() {
            let hist = if track { 1u128 << i } else { 0 };
            match normalize(Row { a, c, hist }) {
                Normalized::Row(r) => current.push(r),
                Normalized::Trivial => {}
                Normalized::Contradiction => return Ok(None),
            }
        }
        current = dedup(current);

        let mut elim = Elimination {
            n,
            stages: Vec::with_capacity(n),
        };
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut eliminated = 0u32;
        while !remaining.is_empty() {
            let (pos, var) = pick_variable(&current, &remaining);
            remaining.swap_remove(pos);
            eliminated += 1;
            let next = eliminate(&current, var, eliminated, track)?;
            let next = match next {
                Some(rows) => rows,
                None => return Ok(None),
            };
            if next.len() > cap {
                return Err(Failure::Cap(next.len()));
            }
            elim.stages
                .push((var, std::mem::replace(&mut current, next)));
        }
        // every remaining row is trivial and satisfiable
        elim.back_substitute().map(Some)
    }

    fn back_substitute(&self) -> Result<Vec<Rational>, Failure> {
        let mut y = vec![Rational::zero(); self.n];
        for (var, rows) in self.stages.iter().rev() {
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for row in rows {
                let coef = &row.a[*var];
                if coef.is_zero() {
                    continue;
                }
                let mut rest = Rational::zero();
                for (j, aj) in row.a.iter().enumerate() {
                    if j != *var && !aj.is_zero() && !y[j].is_zero() {
                        rest += &(&Rational::from_int(aj.to_big()) * &y[j]);
                    }
                }
                let bound = &(&Rational::from_int(row.c.to_big()) - &rest)
                    / &Rational::from_int(coef.to_big());
                if coef.is_positive() {
                    if lo.as_ref().is_none_or(|l| &bound > l) {
                        lo = Some(bound);
                    }
                } else if hi.as_ref().is_none_or(|h| &bound < h) {
                    hi = Some(bound);
                }
            }
            y[*var] = pick_value(lo, hi).ok_or(Failure::Inconsistent)?;
        }
        Ok(y)
    }
}

/// Simplest value in `[lo, hi]`: zero if allowed, else the integer closest to
/// zero, else the midpoint.
fn pick_value(lo: Option<Rational>, hi: Option<Rational>) -> Option<Rational> {
    let zero = Rational::zero();
    match (lo, hi) {
        (None, None) => Some(zero),
        (Some(l), None) => Some(if l <= zero {
            zero
        } else {
            Rational::from_int(l.ceil())
        }),
        (None, Some(h)) => Some(if h >= zero {
            zero
        } else {
            Rational::from_int(h.floor())
        }),
        (Some(l), Some(h)) => {
            if l > h {
                return None;
            }
            if l <= zero && zero <= h {
                return Some(zero);
            }
            let candidate = if l > zero {
                Rational::from_int(l.ceil())
            } else {
                Rational::from_int(h.floor())
            };
            if candidate >= l && candidate <= h {
                Some(candidate)
            } else {
                Some(l.midpoint(&h))
            }
        }
    }
}

enum Normalized<T> {
    Row(Row<T>),
    Trivial,
    Contradiction,
}

fn normalize<T: FmInt>(mut row: Row<T>) -> Normalized<T> {
    if row.a.iter().all(Zero::is_zero) {
        return if row.c.is_positive() {
            Normalized::Contradiction
        } else {
            Normalized::Trivial
        };
    }
    let mut g = row.c.abs();
    for x in &row.a {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if !g.is_one() && !g.is_zero() {
        for x in &mut row.a {
            *x = x.div_floor(&g);
        }
        row.c = row.c.div_floor(&g);
    }
    Normalized::Row(row)
}

/// Keeps, among rows with the same left-hand side, only the tightest one.
fn dedup<T: FmInt>(rows: Vec<Row<T>>) -> Vec<Row<T>> {
    let mut best: HashMap<Vec<T>, usize> = HashMap::with_capacity(rows.len());
    let mut out: Vec<Row<T>> = Vec::with_capacity(rows.len());
    for row in rows {
        match best.get(&row.a) {
            Some(&i) => {
                let kept = &mut out[i];
                if row.c > kept.c
                    || (row.c == kept.c && row.hist.count_ones() < kept.hist.count_ones())
                {
                    *kept = row;
                }
            }
            None => {
                best.insert(row.a.clone(), out.len());
                out.push(row);
            }
        }
    }
    out
}

fn pick_variable<T: FmInt>(rows: &[Row<T>], remaining: &[usize]) -> (usize, usize) {
    let mut best = (0, remaining[0], i64::MAX);
    for (pos, &var) in remaining.iter().enumerate() {
        let (mut p, mut q) = (0i64, 0i64);
        for r in rows {
            if r.a[var].is_positive() {
                p += 1;
            } else if r.a[var].is_negative() {
                q += 1;
            }
        }
        let cost = p * q - p - q;
        if cost < best.2 {
            best = (pos, var, cost);
        }
    }
    (best.0, best.1)
}

fn eliminate<T: FmInt>(
    rows: &[Row<T>],
    var: usize,
    eliminated: u32,
    track: bool,
) -> Result<Option<Vec<Row<T>>>, Failure> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for r in rows {
        if r.a[var].is_positive() {
            pos.push(r);
        } else if r.a[var].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let hist = p.hist | q.hist;
            if track && hist.count_ones() > eliminated + 1 {
                continue;
            }
            let mp = q.a[var].abs();
            let mq = p.a[var].clone();
            let g = mp.gcd(&mq);
            let (mp, mq) = (mp.div_floor(&g), mq.div_floor(&g));
            let mut a = Vec::with_capacity(p.a.len());
            for (x, y) in p.a.iter().zip(&q.a) {
                a.push(combine(x, &mp, y, &mq)?);
            }
            let c = combine(&p.c, &mp, &q.c, &mq)?;
            match normalize(Row { a, c, hist }) {
                Normalized::Row(r) => out.push(r),
                Normalized::Trivial => {}
                Normalized::Contradiction => return Ok(None),
            }
        }
    }
    Ok(Some(dedup(out)))
}

fn combine<T: FmInt>(x: &T, mx: &T, y: &T, my: &T) -> Result<T, Failure> {
    let a = x.checked_mul(mx).ok_or(Failure::Overflow)?;
    let b = y.checked_mul(my).ok_or(Failure::Overflow)?;
    a.checked_add(&b).ok_or(Failure::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn open_interval_is_feasible() {
        let mut s = LinearSystem::new(1);
        s.add_strict(RVector::from_ints([1]), q(1)).unwrap();
        s.add_strict(RVector::from_ints([-1]), q(0)).unwrap();
        let x = find_point(&s).unwrap().unwrap();
        assert!(x[0] > q(0) && x[0] < q(1));
    }

    #[test]
    fn crossed_bounds_are_infeasible() {
        let mut s = LinearSystem::new(1);
        s.add_strict(RVector::from_ints([1]), q(0)).unwrap();
        s.add_strict(RVector::from_ints([-1]), q(-1)).unwrap();
        assert!(!feasible(&s).unwrap());
    }

    #[test]
    fn strictness_is_honored() {
        // x <= 0 and x >= 0 is feasible, x < 0 and x >= 0 is not
        let mut s = LinearSystem::new(1);
        s.add_weak(RVector::from_ints([1]), q(0)).unwrap();
        s.add_weak(RVector::from_ints([-1]), q(0)).unwrap();
        assert!(feasible(&s).unwrap());
        let mut t = LinearSystem::new(1);
        t.add_strict(RVector::from_ints([1]), q(0)).unwrap();
        t.add_weak(RVector::from_ints([-1]), q(0)).unwrap();
        assert!(!feasible(&t).unwrap());
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(feasible(&LinearSystem::new(3)).unwrap());
    }

    #[test]
    fn equalities_are_substituted() {
        // x + y = 1, x - y = 0, x > 0  -> (1/2, 1/2)
        let mut s = LinearSystem::new(2);
        s.add_equality(RVector::from_ints([1, 1]), q(1)).unwrap();
        s.add_equality(RVector::from_ints([1, -1]), q(0)).unwrap();
        s.add_strict(RVector::from_ints([-1, 0]), q(0)).unwrap();
        let x = find_point(&s).unwrap().unwrap();
        assert_eq!(x, RVector::new(vec![Rational::new(1, 2).unwrap(); 2]));
        s.add_strict(RVector::from_ints([1, 0]), Rational::new(1, 2).unwrap())
            .unwrap();
        assert!(!feasible(&s).unwrap());
    }

    fn cube_vertices() -> Vec<RVector> {
        (0..8i64)
            .map(|m| RVector::from_ints([m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect()
    }

    /// Is there c with c.v_i = c.v_j >= c.v_k + 1 for all other k?
    fn edge_system(verts: &[RVector], i: usize, j: usize) -> LinearSystem {
        let d = verts[0].dim();
        let mut s = LinearSystem::new(d);
        s.add_equality(verts[i].sub(&verts[j]).unwrap(), q(0))
            .unwrap();
        for (k, v) in verts.iter().enumerate() {
            if k != i && k != j {
                // c.v_k - c.v_i <= -1
                s.add_weak(v.sub(&verts[i]).unwrap(), q(-1)).unwrap();
            }
        }
        s
    }

    #[test]
    fn face_diagonal_is_not_an_edge() {
        let v = cube_vertices();
        // 000 and 110 span a diagonal of the bottom face
        assert!(!feasible(&edge_system(&v, 0, 3)).unwrap());
        // 000 and 100 is an edge
        assert!(feasible(&edge_system(&v, 0, 1)).unwrap());
    }

    /// Independent check of the diagonal claim: any c maximized on both 000 and
    /// 110 over the square face also maximizes at 100 or 010, because
    /// c.(100) + c.(010) = c.(000) + c.(110).
    #[test]
    fn diagonal_oracle_by_supporting_directions() {
        for c1 in -3i64..=3 {
            for c2 in -3i64..=3 {
                let f = |x: i64, y: i64| c1 * x + c2 * y;
                if f(0, 0) == f(1, 1) {
                    assert!(f(1, 0).max(f(0, 1)) >= f(0, 0));
                }
            }
        }
    }

    #[test]
    fn adding_constraints_is_monotone() {
        let v = cube_vertices();
        let mut s = LinearSystem::new(3);
        let mut was = feasible(&s).unwrap();
        for (k, p) in v.iter().enumerate() {
            let rhs = q(k as i64 % 3 - 1);
            s.add_strict(p.clone(), rhs).unwrap();
            let now = feasible(&s).unwrap();
            assert!(was || !now);
            was = now;
        }
    }

    #[test]
    fn big_coefficients_fall_back_to_bigint() {
        let big = BigInt::from(10).pow(40);
        let rows = vec![
            (vec![big.clone(), BigInt::from(1)], big.clone()),
            (vec![-big.clone(), BigInt::from(3)], -big.clone() * 3),
            (vec![BigInt::from(0), BigInt::from(-1)], BigInt::from(-5)),
        ];
        let y = solve(2, &rows, &[], 1000).unwrap().unwrap();
        assert!(check_witness(&y, &rows, &[]));
    }
}
