use super::CnfFormula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// Value of variable `i + 1` at index `i`.
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

#[inline]
fn code(lit: i32) -> usize {
    2 * (lit.unsigned_abs() as usize - 1) + (lit < 0) as usize
}

struct Solver {
    clauses: Vec<Vec<i32>>,
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, -1 false
    value: Vec<i8>,
    trail: Vec<i32>,
    head: usize,
    /// (trail length before the decision, decision literal, already flipped)
    levels: Vec<(usize, i32, bool)>,
    next_var: usize,
}

impl Solver {
    fn lit_value(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: i32) {
        self.value[lit.unsigned_abs() as usize - 1] = if lit > 0 { 1 } else { -1 };
        self.trail.push(lit);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let lit = self.trail[self.head];
            self.head += 1;
            let false_lit = -lit;
            let mut list = std::mem::take(&mut self.watches[code(false_lit)]);
            let mut i = 0;
            let mut ok = true;
            while i < list.len() {
                let ci = list[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_val = {
                    let v = self.value[other.unsigned_abs() as usize - 1];
                    if other > 0 {
                        v
                    } else {
                        -v
                    }
                };
                if other_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = self.value[l.unsigned_abs() as usize - 1];
                    let lv = if l > 0 { v } else { -v };
                    if lv != -1 {
                        clause.swap(1, k);
                        let new_watch = clause[1];
                        self.watches[code(new_watch)].push(ci);
                        list.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if other_val == -1 {
                    ok = false;
                    break;
                }
                self.assign(other);
                i += 1;
            }
            self.watches[code(false_lit)] = list;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let lit = self.trail.pop().expect("nonempty");
            let v = lit.unsigned_abs() as usize - 1;
            self.value[v] = 0;
            self.next_var = self.next_var.min(v);
        }
        self.head = len;
    }

    /// Flips the deepest unflipped decision; false when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some((len, lit, flipped)) = self.levels.pop() {
            self.undo_to(len);
            if !flipped {
                self.levels.push((len, -lit, true));
                self.assign(-lit);
                return true;
            }
        }
        false
    }
}

/// Complete DPLL search with unit propagation over two watched literals.
/// Branches on the lowest unassigned variable, true first, and backtracks
/// chronologically. Gives up with `Unknown` after `max_decisions` decisions.
/// Returns the outcome and the number of decisions taken.
pub fn sat_solve(f: &CnfFormula, max_decisions: u64) -> (SatOutcome, u64) {
    let n = f.num_vars as usize;
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n],
        value: vec![0; n],
        trail: Vec::new(),
        head: 0,
        levels: Vec::new(),
        next_var: 0,
    };
    let mut units = Vec::new();
    for c in &f.clauses {
        let mut c = c.clone();
        c.sort_unstable_by_key(|l| (l.unsigned_abs(), *l < 0));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            continue;
        }
        match c.len() {
            0 => return (SatOutcome::Unsat, 0),
            1 => units.push(c[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[code(c[0])].push(ci);
                s.watches[code(c[1])].push(ci);
                s.clauses.push(c);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            1 => {}
            -1 => return (SatOutcome::Unsat, 0),
            _ => s.assign(u),
        }
    }
    let mut decisions = 0u64;
    if !s.propagate() {
        return (SatOutcome::Unsat, 0);
    }
    loop {
        while s.next_var < n && s.value[s.next_var] != 0 {
            s.next_var += 1;
        }
        if s.next_var == n {
            let model = s.value.iter().map(|&v| v == 1).collect();
            return (SatOutcome::Sat(model), decisions);
        }
        if decisions >= max_decisions {
            return (SatOutcome::Unknown, decisions);
        }
        decisions += 1;
        let lit = s.next_var as i32 + 1;
        s.levels.push((s.trail.len(), lit, false));
        s.assign(lit);
        while !s.propagate() {
            if !s.backtrack() {
                return (SatOutcome::Unsat, decisions);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: u32, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula {
            num_vars: n,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
            manifest: Vec::new(),
        }
    }

    fn brute(f: &CnfFormula) -> bool {
        (0..1u32 << f.num_vars).any(|m| {
            let model: Vec<bool> = (0..f.num_vars).map(|i| m >> i & 1 == 1).collect();
            f.is_satisfied_by(&model)
        })
    }

    #[test]
    fn examples() {
        assert_eq!(sat_solve(&cnf(1, &[&[1], &[-1]]), 10).0, SatOutcome::Unsat);
        let SatOutcome::Sat(m) = sat_solve(&cnf(2, &[&[1, 2], &[-1]]), 10).0 else {
            panic!("expected a model")
        };
        assert_eq!(m, vec![false, true]);
        assert_eq!(sat_solve(&cnf(1, &[&[]]), 10).0, SatOutcome::Unsat);
        assert!(matches!(sat_solve(&cnf(0, &[]), 10).0, SatOutcome::Sat(_)));
    }

    #[test]
    fn pigeonhole_is_unsat_and_budgeted() {
        // 4 pigeons, 3 holes; var p*3 + h + 1
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 0..4 {
            clauses.push((0..3).map(|h| p * 3 + h + 1).collect());
        }
        for h in 0..3 {
            for p in 0..4 {
                for q in p + 1..4 {
                    clauses.push(vec![-(p * 3 + h + 1), -(q * 3 + h + 1)]);
                }
            }
        }
        let f = CnfFormula {
            num_vars: 12,
            clauses,
            manifest: Vec::new(),
        };
        assert_eq!(sat_solve(&f, 1_000_000).0, SatOutcome::Unsat);
        assert_eq!(sat_solve(&f, 2).0, SatOutcome::Unknown);
    }

    #[test]
    fn random_3cnf_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.gen_range(1..=10u32);
            let m = rng.gen_range(0..=45);
            let clauses: Vec<Vec<i32>> = (0..m)
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| {
                            let v = rng.gen_range(1..=n) as i32;
                            if rng.gen_bool(0.5) {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            let f = CnfFormula {
                num_vars: n,
                clauses,
                manifest: Vec::new(),
            };
            match sat_solve(&f, u64::MAX).0 {
                SatOutcome::Sat(model) => assert!(f.is_satisfied_by(&model)),
                SatOutcome::Unsat => assert!(!brute(&f)),
                SatOutcome::Unknown => unreachable!(),
            }
        }
    }
}
