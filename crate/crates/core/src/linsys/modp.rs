use super::{is_prime, ExactSystem, LinsysError, SolveOutcome, Witness};

fn reduce(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

fn mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn sub_mul(a: u64, f: u64, b: u64, m: u64) -> u64 {
    (a + m - mul(f, b, m)) % m
}

fn pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, m);
        }
        a = mul(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `p^k` via Euler's theorem.
fn unit_inverse(a: u64, p: u64, pk: u64) -> u64 {
    pow(a, pk / p * (p - 1) - 1, pk)
}

/// Incrementally built column span over `F_p` in echelon form; each basis vector remembers
/// its expression in terms of the contributing columns.
struct Span {
    p: u64,
    basis: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Span {
    /// Reduces `v` (with combination `combo`) against the basis in insertion order.
    fn reduce(&self, v: &mut [u64], combo: &mut Vec<u64>) {
        let p = self.p;
        for (k, (pivot, vec, c)) in self.basis.iter().enumerate() {
            let f = v[*pivot];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(vec) {
                if y != 0 {
                    *x = sub_mul(*x, f, y, p);
                }
            }
            combo.resize(combo.len().max(k + 1), 0);
            for (x, &y) in combo.iter_mut().zip(c) {
                *x = (*x + mul(f, y, p)) % p;
            }
        }
    }
}

/// Decides `A x = b` over `F_p` by building the column span one column at a time and
/// stopping as soon as `b` lies in it.
pub fn solve_mod_p(system: &ExactSystem, p: u64) -> Result<SolveOutcome, LinsysError> {
    if !is_prime(p) {
        return Err(LinsysError::NotPrime(p));
    }
    let m = system.equation_count();
    let n = system.variable_count();
    let mut b: Vec<u64> = system.rhs.iter().map(|&x| reduce(x, p)).collect();
    // b = sum_k coef_k basis_k
    let mut coef: Vec<u64> = Vec::new();
    let mut span = Span { p, basis: Vec::new() };
    let mut chosen: Vec<usize> = Vec::new();

    let mut solved = b.iter().all(|&x| x == 0);
    for j in 0..n {
        if solved {
            break;
        }
        let mut v: Vec<u64> = system.rows.iter().map(|r| reduce(r[j], p)).collect();
        let mut combo = Vec::new();
        span.reduce(&mut v, &mut combo);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            continue;
        };
        // new basis vector = (col_j - sum combo_k basis_k) / v[pivot]
        let inv = pow(v[pivot], p - 2, p);
        for x in v.iter_mut() {
            *x = mul(*x, inv, p);
        }
        let k = span.basis.len();
        let mut c: Vec<u64> = combo.iter().map(|&x| mul((p - x) % p, inv, p)).collect();
        c.resize(k + 1, 0);
        c[k] = inv;
        chosen.push(j);
        let f = b[pivot];
        if f != 0 {
            for (x, &y) in b.iter_mut().zip(&v) {
                *x = sub_mul(*x, f, y, p);
            }
            coef.resize(k + 1, 0);
            coef[k] = f;
        }
        span.basis.push((pivot, v, c));
        solved = b.iter().all(|&x| x == 0);
    }

    if !solved {
        let mut out = SolveOutcome::infeasible(format!("right-hand side outside the column span mod {p}"));
        out.rank = Some(span.basis.len());
        return Ok(out);
    }
    // Express the solution in terms of original columns.
    let mut values = vec![0u64; n];
    for (k, &f) in coef.iter().enumerate() {
        if f == 0 {
            continue;
        }
        for (t, &ct) in span.basis[k].2.iter().enumerate() {
            let j = chosen[t];
            values[j] = (values[j] + mul(f, ct, p)) % p;
        }
    }
    let witness = Witness::Modular { modulus: p, values };
    assert!(system.check_witness(&witness), "mod-p witness failed substitution");
    let mut out = SolveOutcome::solvable(witness);
    out.notes.push(format!("span reached after {} basis columns", span.basis.len()));
    if span.basis.len() == m.min(n) {
        out.rank = Some(span.basis.len());
    }
    Ok(out)
}

fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Decides `A x = b` over `Z/p^k` by diagonalizing with unimodular row and column operations,
/// pivoting on entries of least `p`-adic valuation.
pub fn solve_mod_prime_power(system: &ExactSystem, p: u64, k: u32) -> Result<SolveOutcome, LinsysError> {
    if !is_prime(p) {
        return Err(LinsysError::NotPrime(p));
    }
    let pk = p.checked_pow(k).ok_or(LinsysError::ModulusOverflow(p, k))?;
    if k == 1 {
        return solve_mod_p(system, p);
    }
    let m = system.equation_count();
    let n = system.variable_count();
    let mut a: Vec<Vec<u64>> = system.rows.iter().map(|r| r.iter().map(|&x| reduce(x, pk)).collect()).collect();
    let mut b: Vec<u64> = system.rhs.iter().map(|&x| reduce(x, pk)).collect();
    // Column transform: x = Q y.
    let mut q: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();

    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = valuation(x, p);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            if best.is_some_and(|(v, _, _)| v == 0) {
                break;
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap(t, i);
        b.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        for row in q.iter_mut() {
            row.swap(t, j);
        }
        let pv = p.pow(v);
        let unit_inv = unit_inverse(a[t][t] / pv, p, pk);
        for i in t + 1..m {
            if a[i][t] == 0 {
                continue;
            }
            let f = mul(a[i][t] / pv, unit_inv, pk);
            let (top, rest) = a.split_at_mut(i);
            for (x, &y) in rest[0].iter_mut().zip(&top[t]) {
                *x = sub_mul(*x, f, y, pk);
            }
            b[i] = sub_mul(b[i], f, b[t], pk);
        }
        for j in t + 1..n {
            if a[t][j] == 0 {
                continue;
            }
            let f = mul(a[t][j] / pv, unit_inv, pk);
            for row in a.iter_mut() {
                row[j] = sub_mul(row[j], f, row[t], pk);
            }
            for row in q.iter_mut() {
                row[j] = sub_mul(row[j], f, row[t], pk);
            }
        }
        t += 1;
    }

    let mut y = vec![0u64; n];
    for i in 0..m {
        if i < t {
            let d = a[i][i];
            let v = valuation(d, p);
            let pv = p.pow(v);
            if b[i] % pv != 0 {
                return Ok(SolveOutcome::infeasible(format!(
                    "diagonal entry {d} does not divide {} mod {pk}",
                    b[i]
                )));
            }
            y[i] = mul(b[i] / pv, unit_inverse(d / pv, p, pk), pk);
        } else if b[i] != 0 {
            return Ok(SolveOutcome::infeasible(format!("zero row with nonzero right-hand side mod {pk}")));
        }
    }
    let values: Vec<u64> = (0..n)
        .map(|r| q[r].iter().zip(&y).fold(0, |acc, (&c, &yy)| (acc + mul(c, yy, pk)) % pk))
        .collect();
    let witness = Witness::Modular { modulus: pk, values };
    assert!(system.check_witness(&witness), "mod p^k witness failed substitution");
    Ok(SolveOutcome::solvable(witness))
}

/// Over `F_2`: a vector `b` with `b . v = 0` for every listed vector and `b . 1 = 1`, if one
/// exists. Vectors are given as point lists over a universe of size `len`.
pub fn f2_complement_witness(vectors: &[Vec<usize>], len: usize) -> Option<Vec<bool>> {
    // Solve M b = e where M's rows are the vectors plus the all-ones row.
    let mut rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| {
            let mut r = vec![0i64; len];
            for &x in v {
                r[x] = 1;
            }
            r
        })
        .collect();
    let mut rhs = vec![0i64; rows.len()];
    rows.push(vec![1; len]);
    rhs.push(1);
    let out = solve_mod_p(&ExactSystem::from_rows(rows, rhs), 2).ok()?;
    match out.witness {
        Some(Witness::Modular { values, .. }) => Some(values.into_iter().map(|x| x == 1).collect()),
        _ => None,
    }
}
