//! Crystallographic root systems of types A through G.
//!
//! Cartan convention: `C[i][j] = <alpha_j, alpha_i^vee>`, so the simple reflections act by
//!
//! * roots:   `s_i(alpha_j)      = alpha_j      - C[i][j] alpha_i`
//! * coroots: `s_i(alpha_j^vee)  = alpha_j^vee  - C[j][i] alpha_i^vee`
//!
//! Simple indices are 1-based everywhere in the public API. Roots are stored as integer
//! vectors in the simple-root basis, positives first (simple roots at positions `0..r`),
//! followed by the negatives in matching order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type such as `B3`. Construction enforces the rank bounds of each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootFamily {
    family: Family,
    rank: usize,
}

impl RootFamily {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let constraint = match family {
            Family::A => "A_n requires n >= 1",
            Family::B => "B_n requires n >= 2",
            Family::C => "C_n requires n >= 3",
            Family::D => "D_n requires n >= 4",
            Family::E => "E_n requires n in {6, 7, 8}",
            Family::F => "F_n requires n = 4",
            Family::G => "G_n requires n = 2",
        };
        if !ok {
            return Err(Error::Config(format!(
                "unsupported root system {}{rank}: {constraint}",
                family.letter()
            )));
        }
        // Subset bitmasks address at most 16 simple roots.
        if rank > crate::subset::MAX_INDEX {
            return Err(Error::Config(format!(
                "rank {rank} exceeds the supported maximum {}",
                crate::subset::MAX_INDEX
            )));
        }
        Ok(RootFamily { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Closed-form `|Phi|`.
    pub fn expected_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Closed-form `|W|`.
    pub fn expected_group_order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Config("empty root system name".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            other => {
                return Err(Error::Config(format!(
                    "unknown root system family '{other}' in {s:?}"
                )))
            }
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse rank in root system name {s:?}")))?;
        RootFamily::new(family, rank)
    }
}

/// Bourbaki-numbered Cartan matrix, `C[i][j] = <alpha_j, alpha_i^vee>` (0-based storage).
fn cartan_matrix(family: RootFamily) -> Vec<Vec<i64>> {
    let n = family.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    // Simple bond between 1-based nodes.
    let simple = |c: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    // Multiple bond: `short` is the short root, `long` the long one.
    let multiple = |c: &mut Vec<Vec<i64>>, short: usize, long: usize, k: i64| {
        c[short - 1][long - 1] = -k;
        c[long - 1][short - 1] = -1;
    };
    match family.family {
        Family::A => {
            for i in 1..n {
                simple(&mut c, i, i + 1);
            }
        }
        Family::B => {
            for i in 1..n - 1 {
                simple(&mut c, i, i + 1);
            }
            multiple(&mut c, n, n - 1, 2);
        }
        Family::C => {
            for i in 1..n - 1 {
                simple(&mut c, i, i + 1);
            }
            multiple(&mut c, n - 1, n, 2);
        }
        Family::D => {
            for i in 1..n - 1 {
                simple(&mut c, i, i + 1);
            }
            simple(&mut c, n - 2, n);
        }
        Family::E => {
            simple(&mut c, 1, 3);
            simple(&mut c, 2, 4);
            for i in 3..n {
                simple(&mut c, i, i + 1);
            }
        }
        Family::F => {
            simple(&mut c, 1, 2);
            multiple(&mut c, 3, 2, 2);
            simple(&mut c, 3, 4);
        }
        Family::G => {
            multiple(&mut c, 1, 2, 3);
        }
    }
    c
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    family: RootFamily,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    positive_count: usize,
    index: HashMap<Vec<i64>, usize>,
    supports: Vec<Subset>,
}

/// Builds the root system of `family` by orbit closure of the simple roots.
pub fn build_root_system(family: RootFamily) -> RootSystem {
    let r = family.rank;
    let cartan = cartan_matrix(family);
    let reflect = |i: usize, v: &[i64]| -> Vec<i64> {
        let mut out = v.to_vec();
        let pairing: i64 = (0..r).map(|j| cartan[i][j] * v[j]).sum();
        out[i] -= pairing;
        out
    };

    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        if seen.insert(e.clone(), ()).is_none() {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..r {
            let w = reflect(i, &v);
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), ());
                queue.push_back(w);
            }
        }
    }

    let mut positives: Vec<Vec<i64>> = seen
        .into_keys()
        .filter(|v| v.iter().all(|&x| x >= 0))
        .collect();
    // height first; within a height the lexicographically largest vector comes first,
    // which puts alpha_1, ..., alpha_r at positions 0..r
    positives.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let positive_count = positives.len();
    let mut roots = positives.clone();
    roots.extend(
        positives
            .iter()
            .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
    );

    let index = roots
        .iter()
        .enumerate()
        .map(|(p, v)| (v.clone(), p))
        .collect();
    let supports = roots
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, _)| j + 1)
                .collect()
        })
        .collect();

    RootSystem {
        family,
        cartan,
        roots,
        positive_count,
        index,
        supports,
    }
}

impl RootSystem {
    pub fn family(&self) -> RootFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.family.rank
    }

    /// `I = {1, ..., r}`.
    pub fn index_set(&self) -> Subset {
        Subset::full(self.rank())
    }

    /// 0-based storage of `C[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `C[i][j]` with 1-based indices.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, position: usize) -> &[i64] {
        &self.roots[position]
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn is_positive(&self, position: usize) -> bool {
        position < self.positive_count
    }

    /// Position of `-root[position]`.
    pub fn negation(&self, position: usize) -> usize {
        if position < self.positive_count {
            position + self.positive_count
        } else {
            position - self.positive_count
        }
    }

    pub fn position(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// The simple index `i` if `position` holds `alpha_i`.
    pub fn simple_index(&self, position: usize) -> Option<usize> {
        (position < self.rank()).then_some(position + 1)
    }

    /// Simple indices appearing with nonzero coefficient in the root.
    pub fn support(&self, position: usize) -> Subset {
        self.supports[position]
    }

    /// Positions of `Phi_J^+`: positive roots supported inside `J`.
    pub fn parabolic_positive_roots(&self, j: Subset) -> Vec<usize> {
        (0..self.positive_count)
            .filter(|&p| self.supports[p].is_subset_of(j))
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::Argument(format!(
                "simple index {i} outside 1..={} for {}",
                self.rank(),
                self.family
            )))
        }
    }

    /// `s_i(v)` for an arbitrary vector in simple-root coordinates.
    pub fn act_on_root(&self, i: usize, v: &[i64]) -> Result<Vec<i64>> {
        self.check_index(i)?;
        if v.len() != self.rank() {
            return Err(Error::Argument(format!(
                "vector of length {} does not match rank {}",
                v.len(),
                self.rank()
            )));
        }
        let row = &self.cartan[i - 1];
        let pairing: i64 = row.iter().zip(v).map(|(c, x)| c * x).sum();
        let mut out = v.to_vec();
        out[i - 1] -= pairing;
        Ok(out)
    }

    /// Matrix of `s_i` on the coroot lattice in the simple-coroot basis; column `j` holds
    /// `s_i(alpha_j^vee)`.
    pub fn coroot_generator_matrix(&self, i: usize) -> Result<DMatrix<i64>> {
        self.check_index(i)?;
        let r = self.rank();
        let mut m = DMatrix::<i64>::identity(r, r);
        for j in 0..r {
            m[(i - 1, j)] -= self.cartan[j][i - 1];
        }
        Ok(m)
    }

    /// Permutation of root positions induced by `s_i`.
    pub fn reflection_permutation(&self, i: usize) -> Result<Vec<u32>> {
        self.check_index(i)?;
        self.roots
            .iter()
            .map(|v| {
                let image = self.act_on_root(i, v)?;
                self.position(&image)
                    .map(|p| p as u32)
                    .ok_or_else(|| Error::Internal(format!("root system not closed under s_{i}")))
            })
            .collect()
    }
}
