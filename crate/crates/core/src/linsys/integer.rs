use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{ExactSystem, SolveOutcome, Witness};

/// Integer arithmetic used by the elimination; `None` signals overflow.
trait Elim: Clone + Integer + Signed {
    fn from_i64(x: i64) -> Self;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Elim for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Elim for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Verdict {
    Solvable(Vec<BigInt>, usize),
    Infeasible(String, usize),
}

/// `row_a -= q * row_b` on two distinct rows of `m`.
fn row_sub<T: Elim>(m: &mut [Vec<T>], a: usize, b: usize, q: &T) -> Option<()> {
    let (ra, rb) = if a < b {
        let (lo, hi) = m.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(a);
        (&mut hi[0], &lo[b])
    };
    for (x, y) in ra.iter_mut().zip(rb.iter()) {
        if !y.is_zero() {
            *x = x.sub_mul(q, y)?;
        }
    }
    Some(())
}

/// Column-style Hermite reduction `A U = L` with `L` lower echelon, followed by forward
/// substitution. Works on `M = A^T` so that column operations become row operations.
fn eliminate<T: Elim>(system: &ExactSystem) -> Option<Verdict> {
    let m = system.equation_count();
    let n = system.variable_count();
    let mut mt: Vec<Vec<T>> = (0..n).map(|j| system.rows.iter().map(|r| T::from_i64(r[j])).collect()).collect();
    let mut u: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();

    let mut t = 0;
    for r in 0..m {
        if t == n {
            break;
        }
        loop {
            // Least nonzero |entry| in column r among rows t.. becomes the pivot.
            let mut best: Option<usize> = None;
            for i in t..n {
                if !mt[i][r].is_zero() && best.is_none_or(|b| mt[i][r].abs() < mt[b][r].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            mt.swap(t, b);
            u.swap(t, b);
            let mut done = true;
            for i in t + 1..n {
                if mt[i][r].is_zero() {
                    continue;
                }
                let q = mt[i][r].div_floor(&mt[t][r]);
                row_sub(&mut mt, i, t, &q)?;
                row_sub(&mut u, i, t, &q)?;
                if !mt[i][r].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_rows.push(r);
                t += 1;
                break;
            }
        }
    }
    let rank = t;

    // Forward substitution on L = M^T: L[r][s] = mt[s][r].
    let mut y: Vec<T> = vec![T::zero(); n];
    let mut next = 0;
    for r in 0..m {
        let mut residual = T::from_i64(system.rhs[r]);
        for s in 0..next {
            if !mt[s][r].is_zero() {
                residual = residual.sub_mul(&mt[s][r], &y[s])?;
            }
        }
        if next < rank && pivot_rows[next] == r {
            let (q, rem) = residual.div_rem(&mt[next][r]);
            if !rem.is_zero() {
                return Some(Verdict::Infeasible(
                    format!("pivot {:?} does not divide residual at equation {r}", mt[next][r].to_big()),
                    rank,
                ));
            }
            y[next] = q;
            next += 1;
        } else if !residual.is_zero() {
            return Some(Verdict::Infeasible(format!("inconsistent equation {r}"), rank));
        }
    }

    // x = U^T y, since M = A^T was transformed by row operations U M.
    let mut x: Vec<T> = vec![T::zero(); n];
    for (s, ys) in y.iter().enumerate().take(rank) {
        if ys.is_zero() {
            continue;
        }
        for (xj, us) in x.iter_mut().zip(&u[s]) {
            if !us.is_zero() {
                *xj = xj.sub_mul(&-us.clone(), ys)?;
            }
        }
    }
    Some(Verdict::Solvable(x.iter().map(Elim::to_big).collect(), rank))
}

/// Decides `A x = b` over the integers, with a witness when solvable.
pub fn solve_integer(system: &ExactSystem) -> SolveOutcome {
    let (verdict, note) = match eliminate::<i128>(system) {
        Some(v) => (v, "128-bit elimination"),
        None => (
            eliminate::<BigInt>(system).expect("arbitrary precision cannot overflow"),
            "arbitrary-precision elimination after 128-bit overflow",
        ),
    };
    let mut out = match verdict {
        Verdict::Solvable(x, rank) => {
            let w = Witness::Integer(x);
            assert!(system.check_witness(&w), "integer witness failed substitution");
            let mut o = SolveOutcome::solvable(w);
            o.rank = Some(rank);
            o
        }
        Verdict::Infeasible(why, rank) => {
            let mut o = SolveOutcome::infeasible(why);
            o.rank = Some(rank);
            o
        }
    };
    out.notes.push(note.to_string());
    out
}
