//! Fourier–Motzkin elimination for systems `A z ≥ b` over ℚ, with a
//! back-substituted witness point.

use num_traits::{Signed, Zero};

use super::linalg::Q;

/// `row · z ≥ rhs`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    row: Vec<Q>,
    rhs: Q,
}

impl Ineq {
    /// Scales so the first nonzero coefficient has absolute value 1, which
    /// lets duplicates be removed.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.row.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.row.iter_mut() {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }
}

/// Solves `rows[i] · z ≥ rhs[i]` for `z ∈ ℚ^vars`, or returns `None` when the
/// system is infeasible.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q], vars: usize) -> Option<Vec<Q>> {
    let mut stages: Vec<Vec<Ineq>> = Vec::with_capacity(vars + 1);
    let mut current: Vec<Ineq> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            Ineq {
                row: r.clone(),
                rhs: b.clone(),
            }
            .normalized()
        })
        .collect();
    dedup(&mut current);
    // eliminate the last variable first
    for k in (0..vars).rev() {
        stages.push(current.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in current {
            if ineq.row[k].is_positive() {
                pos.push(ineq);
            } else if ineq.row[k].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for p in &pos {
            for n in &neg {
                // p.row[k] * z_k ≥ …, n.row[k] * z_k ≥ …; combine to cancel z_k
                let (a, b) = (p.row[k].clone(), -n.row[k].clone());
                let row: Vec<Q> = p.row.iter().zip(&n.row).map(|(x, y)| x * &b + y * &a).collect();
                let rhs = &p.rhs * &b + &n.rhs * &a;
                rest.push(Ineq { row, rhs }.normalized());
            }
        }
        dedup(&mut rest);
        current = rest;
    }
    if current.iter().any(|i| i.rhs.is_positive()) {
        return None;
    }
    let mut z = vec![Q::zero(); vars];
    // stages[j] still involves variables 0..vars-j; z_k is pinned by stage vars-1-k
    for k in 0..vars {
        let stage = &stages[vars - 1 - k];
        let mut lower: Option<Q> = None;
        let mut upper: Option<Q> = None;
        for ineq in stage {
            let c = &ineq.row[k];
            if c.is_zero() {
                continue;
            }
            let partial = ineq.row[..k]
                .iter()
                .zip(&z[..k])
                .fold(Q::zero(), |acc, (x, y)| acc + x * y);
            let bound = (&ineq.rhs - partial) / c;
            if c.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        z[k] = match (lower, upper) {
            (Some(l), Some(u)) => {
                debug_assert!(l <= u);
                (l + u) / Q::from_integer(2.into())
            }
            (Some(l), None) => l,
            (None, Some(u)) => u,
            (None, None) => Q::zero(),
        };
    }
    Some(z)
}

fn dedup(v: &mut Vec<Ineq>) {
    v.sort();
    v.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()
    }

    fn satisfies(rows: &[Vec<Q>], rhs: &[Q], z: &[Q]) -> bool {
        rows.iter().zip(rhs).all(|(r, b)| super::super::linalg::dot(r, z) >= *b)
    }

    #[test]
    fn feasible_box() {
        let rows = vec![q(&[1, 0]), q(&[-1, 0]), q(&[0, 1]), q(&[1, 1])];
        let rhs = q(&[1, -3, 2, 4]);
        let z = solve(&rows, &rhs, 2).unwrap();
        assert!(satisfies(&rows, &rhs, &z));
    }

    #[test]
    fn infeasible_pair() {
        let rows = vec![q(&[1, 1]), q(&[-1, -1])];
        assert_eq!(solve(&rows, &q(&[1, 1]), 2), None);
    }

    #[test]
    fn no_variables() {
        assert_eq!(solve(&[vec![]], &q(&[0]), 0), Some(vec![]));
        assert_eq!(solve(&[vec![]], &q(&[1]), 0), None);
    }
}
