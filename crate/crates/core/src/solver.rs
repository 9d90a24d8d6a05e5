//! Exact feasibility of linear systems `A x = b`, `C x ≥ d` over the rationals.
//!
//! Equalities are eliminated by Gaussian elimination; the remaining
//! inequalities are decided by Fourier–Motzkin elimination with Chernikov's
//! redundancy rule, then a witness is rebuilt by back-substitution.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    nvars: usize,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// `origins` lists the indices of constraints whose nonnegative
    /// combination yields a contradiction.
    Infeasible {
        reason: String,
        origins: Vec<usize>,
    },
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds `Σ coeffs[i]·x[i] (relation) rhs` from sparse integer terms and
    /// returns its index.
    pub fn push<I>(&mut self, terms: I, relation: Relation, rhs: impl Into<BigInt>) -> usize
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut coeffs = vec![BigRational::zero(); self.nvars];
        for (i, c) in terms {
            coeffs[i] += BigRational::from_integer(c);
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs: BigRational::from_integer(rhs.into()),
        });
        self.constraints.len() - 1
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs: BigRational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    }

    pub fn solve(&self) -> Feasibility {
        let n = self.nvars;
        let (pivots, eq_origin) = match self.reduce_equalities() {
            Ok(p) => p,
            Err(origins) => {
                return Feasibility::Infeasible {
                    reason: "equality constraints are inconsistent".into(),
                    origins,
                }
            }
        };
        let pivot_of: BTreeMap<usize, &Pivot> = pivots.iter().map(|p| (p.var, p)).collect();
        let free: Vec<usize> = (0..n).filter(|v| !pivot_of.contains_key(v)).collect();
        let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        // substitute x_p = rhs_p − Σ c·x_f into each inequality
        let mut rows = Vec::new();
        for (idx, c) in self.constraints.iter().enumerate() {
            if c.relation != Relation::Ge {
                continue;
            }
            let mut coeffs = vec![BigRational::zero(); free.len()];
            let mut rhs = c.rhs.clone();
            for (v, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match pivot_of.get(&v) {
                    Some(p) => {
                        rhs -= a * &p.rhs;
                        for (f, pc) in &p.coeffs {
                            coeffs[slot[f]] -= a * pc;
                        }
                    }
                    None => coeffs[slot[&v]] += a,
                }
            }
            rows.push(Row::new(coeffs, rhs, BTreeSet::from([idx])));
        }

        let fm = match fourier_motzkin(rows, free.len()) {
            Ok(fm) => fm,
            Err(row) => {
                let mut origins: Vec<usize> = row.origins.into_iter().collect();
                origins.extend(eq_origin.iter().copied());
                origins.sort_unstable();
                origins.dedup();
                return Feasibility::Infeasible {
                    reason: format!("derived 0 >= {}", row.rhs),
                    origins,
                };
            }
        };

        let y = back_substitute(&fm, free.len());
        let mut x = vec![BigRational::zero(); n];
        for (i, &v) in free.iter().enumerate() {
            x[v] = y[i].clone();
        }
        for p in &pivots {
            let mut val = p.rhs.clone();
            for (f, c) in &p.coeffs {
                val -= c * &x[*f];
            }
            x[p.var] = val;
        }
        debug_assert!(self.satisfied_by(&x));
        Feasibility::Feasible(x)
    }

    /// Row-reduces the equalities. Each pivot expresses one variable through
    /// free ones; on inconsistency returns the equalities involved.
    fn reduce_equalities(&self) -> Result<(Vec<Pivot>, Vec<usize>), Vec<usize>> {
        let n = self.nvars;
        let mut eqs: Vec<(Vec<BigRational>, BigRational, usize)> = self
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.relation == Relation::Eq)
            .map(|(i, c)| (c.coeffs.clone(), c.rhs.clone(), i))
            .collect();
        let origins: Vec<usize> = eqs.iter().map(|e| e.2).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(k) = (r..eqs.len()).find(|&k| !eqs[k].0[col].is_zero()) else {
                continue;
            };
            eqs.swap(r, k);
            let inv = eqs[r].0[col].recip();
            for a in eqs[r].0.iter_mut() {
                *a *= &inv;
            }
            eqs[r].1 *= &inv;
            let (pivot_row, pivot_rhs) = (eqs[r].0.clone(), eqs[r].1.clone());
            for (k, e) in eqs.iter_mut().enumerate() {
                if k == r || e.0[col].is_zero() {
                    continue;
                }
                let f = e.0[col].clone();
                for (a, p) in e.0.iter_mut().zip(&pivot_row) {
                    *a -= &f * p;
                }
                e.1 -= &f * &pivot_rhs;
            }
            pivot_cols.push(col);
            r += 1;
        }
        if eqs[r..].iter().any(|e| !e.1.is_zero()) {
            return Err(origins);
        }
        let pivots = pivot_cols
            .iter()
            .zip(&eqs)
            .map(|(&var, (coeffs, rhs, _))| Pivot {
                var,
                rhs: rhs.clone(),
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(f, c)| f != var && !c.is_zero())
                    .map(|(f, c)| (f, c.clone()))
                    .collect(),
            })
            .collect();
        Ok((pivots, origins))
    }
}

struct Pivot {
    var: usize,
    rhs: BigRational,
    coeffs: Vec<(usize, BigRational)>,
}

/// `coeffs · y ≥ rhs` with integer coefficients of gcd 1.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigRational,
    origins: BTreeSet<usize>,
}

impl Row {
    fn new(coeffs: Vec<BigRational>, rhs: BigRational, origins: BTreeSet<usize>) -> Self {
        let lcm = coeffs
            .iter()
            .chain(std::iter::once(&rhs))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        Row::from_ints(ints, rhs * BigRational::from_integer(lcm), origins)
    }

    fn from_ints(mut coeffs: Vec<BigInt>, mut rhs: BigRational, origins: BTreeSet<usize>) -> Self {
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in coeffs.iter_mut() {
                *c /= &g;
            }
            rhs /= BigRational::from_integer(g);
        }
        Row {
            coeffs,
            rhs,
            origins,
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Keeps one row per coefficient vector, the one with the largest rhs.
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<BigInt>, Row> = BTreeMap::new();
    for row in rows {
        match best.get(&row.coeffs) {
            Some(kept) if kept.rhs >= row.rhs => {}
            _ => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    best.into_values().collect()
}

struct Elimination {
    var: usize,
    /// Rows mentioning `var` at the moment it was eliminated.
    rows: Vec<Row>,
}

fn fourier_motzkin(rows: Vec<Row>, nvars: usize) -> Result<Vec<Elimination>, Row> {
    let mut rows = dedup(rows);
    let mut remaining: BTreeSet<usize> = (0..nvars).collect();
    let mut steps = Vec::with_capacity(nvars);
    let mut eliminated = 0usize;
    loop {
        if let Some(bad) = rows.iter().find(|r| r.is_trivial() && r.rhs.is_positive()) {
            return Err(bad.clone());
        }
        rows.retain(|r| !r.is_trivial());
        let Some(&var) = remaining.iter().min_by_key(|&&v| {
            let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
            (pos * neg, v)
        }) else {
            break;
        };
        remaining.remove(&var);
        eliminated += 1;
        let (mentioning, rest): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| !r.coeffs[var].is_zero());
        let (pos, neg): (Vec<&Row>, Vec<&Row>) =
            mentioning.iter().partition(|r| r.coeffs[var].is_positive());
        let mut next = rest;
        for p in &pos {
            for q in &neg {
                let origins: BTreeSet<usize> = p.origins.union(&q.origins).copied().collect();
                if origins.len() > eliminated + 1 {
                    continue;
                }
                let a = &p.coeffs[var];
                let b = -&q.coeffs[var];
                let coeffs: Vec<BigInt> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                let rhs = &p.rhs * BigRational::from_integer(b.clone())
                    + &q.rhs * BigRational::from_integer(a.clone());
                next.push(Row::from_ints(coeffs, rhs, origins));
            }
        }
        rows = dedup(next);
        steps.push(Elimination {
            var,
            rows: mentioning,
        });
    }
    Ok(steps)
}

fn ceil(x: &BigRational) -> BigRational {
    BigRational::from_integer(x.ceil().to_integer())
}

fn floor(x: &BigRational) -> BigRational {
    BigRational::from_integer(x.floor().to_integer())
}

/// Assigns variables in reverse elimination order, preferring integers.
fn back_substitute(steps: &[Elimination], nvars: usize) -> Vec<BigRational> {
    let mut y = vec![BigRational::zero(); nvars];
    for step in steps.iter().rev() {
        let v = step.var;
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in &step.rows {
            let mut rest = row.rhs.clone();
            for (i, c) in row.coeffs.iter().enumerate() {
                if i != v && !c.is_zero() {
                    rest -= BigRational::from_integer(c.clone()) * &y[i];
                }
            }
            let a = BigRational::from_integer(row.coeffs[v].clone());
            let bound = rest / &a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        y[v] = match (lower, upper) {
            (Some(l), Some(u)) => {
                let c = ceil(&l);
                if c <= u {
                    c
                } else {
                    l
                }
            }
            (Some(l), None) => ceil(&l),
            (None, Some(u)) => floor(&u),
            (None, None) => BigRational::zero(),
        };
    }
    y
}

/// Scales a nonnegative-rhs solution to integers by the lcm of denominators.
pub fn integral(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    x.iter().map(|v| (v * &lcm).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
        terms.iter().map(|&(i, c)| (i, BigInt::from(c))).collect()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simple_feasible_box() {
        let mut s = LinearSystem::new(2);
        s.push(t(&[(0, 1)]), Relation::Ge, 1);
        s.push(t(&[(1, 1)]), Relation::Ge, 1);
        s.push(t(&[(0, 1), (1, -2)]), Relation::Eq, 0);
        match s.solve() {
            Feasibility::Feasible(x) => {
                assert!(s.satisfied_by(&x));
                assert_eq!(x, vec![r(2, 1), r(1, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_inequalities() {
        // x ≥ 1, y ≥ 1, x + y ≤ 1
        let mut s = LinearSystem::new(2);
        s.push(t(&[(0, 1)]), Relation::Ge, 1);
        s.push(t(&[(1, 1)]), Relation::Ge, 1);
        s.push(t(&[(0, -1), (1, -1)]), Relation::Ge, -1);
        match s.solve() {
            Feasibility::Infeasible { origins, .. } => assert_eq!(origins, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_equalities() {
        let mut s = LinearSystem::new(1);
        s.push(t(&[(0, 1)]), Relation::Eq, 1);
        s.push(t(&[(0, 2)]), Relation::Eq, 3);
        assert!(matches!(s.solve(), Feasibility::Infeasible { .. }));
    }

    #[test]
    fn fractional_window_falls_back_to_rationals() {
        // 3x ≥ 1 and 3x ≤ 2 has no integer point
        let mut s = LinearSystem::new(1);
        s.push(t(&[(0, 3)]), Relation::Ge, 1);
        s.push(t(&[(0, -3)]), Relation::Ge, -2);
        match s.solve() {
            Feasibility::Feasible(x) => assert_eq!(x, vec![r(1, 3)]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            integral(&[r(1, 3), r(1, 2)]),
            vec![BigInt::from(2), BigInt::from(3)]
        );
    }

    #[test]
    fn unconstrained_variables_default_to_zero() {
        let s = LinearSystem::new(3);
        assert_eq!(
            s.solve(),
            Feasibility::Feasible(vec![BigRational::zero(); 3])
        );
    }
}
