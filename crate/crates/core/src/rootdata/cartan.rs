//! Cartan matrices of the simple types with Bourbaki node labels.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => SimpleType::A,
            'B' => SimpleType::B,
            'C' => SimpleType::C,
            'D' => SimpleType::D,
            'E' => SimpleType::E,
            'F' => SimpleType::F,
            'G' => SimpleType::G,
            _ => return None,
        })
    }
}

/// A simple factor `(type, rank)` such as `B2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub kind: SimpleType,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl Factor {
    pub fn new(kind: SimpleType, rank: usize) -> Result<Self> {
        let ok = match kind {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        };
        if ok {
            Ok(Factor { kind, rank })
        } else {
            Err(Error::input(format!("rank {rank} out of range for type {}", kind.letter())))
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.kind {
            SimpleType::A => n * (n + 1) / 2,
            SimpleType::B | SimpleType::C => n * n,
            SimpleType::D => n * (n - 1),
            SimpleType::E => [36, 63, 120][n - 6],
            SimpleType::F => 24,
            SimpleType::G => 6,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.kind {
            SimpleType::A => fact(n + 1),
            SimpleType::B | SimpleType::C => (1u128 << n) * fact(n),
            SimpleType::D => (1u128 << (n - 1)) * fact(n),
            SimpleType::E => [51_840, 2_903_040, 696_729_600][self.rank - 6],
            SimpleType::F => 1152,
            SimpleType::G => 12,
        }
    }

    /// Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>` in Bourbaki labelling (0-based).
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.kind {
            SimpleType::A | SimpleType::B | SimpleType::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            SimpleType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            SimpleType::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            SimpleType::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            SimpleType::G => link(0, 1),
        }
        match self.kind {
            SimpleType::B => a[n - 1][n - 2] = -2,
            SimpleType::C => a[n - 2][n - 1] = -2,
            SimpleType::F => a[2][1] = -2,
            SimpleType::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

/// Parses `TYPE RANK ("x" TYPE RANK)*`, e.g. `A1xA1` or `D4`.
pub fn parse_group(spec: &str) -> Result<Vec<Factor>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::input("empty group spec"));
    }
    spec.split('x')
        .map(|tok| {
            let mut chars = tok.chars();
            let kind = chars
                .next()
                .and_then(SimpleType::from_letter)
                .ok_or_else(|| Error::input(format!("unknown type token {tok:?}")))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::input(format!("malformed rank in {tok:?}")));
            }
            let rank: usize =
                digits.parse().map_err(|_| Error::input(format!("malformed rank in {tok:?}")))?;
            Factor::new(kind, rank)
        })
        .collect()
}

pub fn format_group(factors: &[Factor]) -> String {
    factors.iter().map(Factor::to_string).collect::<Vec<_>>().join("x")
}

/// Block-diagonal Cartan matrix of a product.
pub fn product_cartan(factors: &[Factor]) -> Vec<Vec<i64>> {
    let n: usize = factors.iter().map(|f| f.rank).sum();
    let mut a = vec![vec![0i64; n]; n];
    let mut offset = 0;
    for f in factors {
        let block = f.cartan();
        for (i, row) in block.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                a[offset + i][offset + j] = x;
            }
        }
        offset += f.rank;
    }
    a
}

/// Identifies a Cartan matrix up to relabelling of nodes.
/// Components are listed in order of their smallest node index; rank-one components are `A1`.
pub fn classify_cartan(a: &[Vec<i64>]) -> Result<Vec<(Factor, Vec<usize>)>> {
    let n = a.len();
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::consistency("diagonal entry is not 2"));
        }
        for j in 0..n {
            if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                return Err(Error::consistency("off-diagonal pattern is not a Cartan matrix"));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let factor = classify_connected(a, &comp)?;
        out.push((factor, comp));
    }
    Ok(out)
}

fn classify_connected(a: &[Vec<i64>], nodes: &[usize]) -> Result<Factor> {
    let r = nodes.len();
    let bad = || Error::consistency("Cartan matrix is not of finite type");
    let neighbours = |i: usize| nodes.iter().copied().filter(move |&j| j != i && a[i][j] != 0);
    let degree = |i: usize| neighbours(i).count();
    let edges: Vec<(usize, usize)> =
        nodes.iter().flat_map(|&i| neighbours(i).filter(move |&j| j > i).map(move |j| (i, j))).collect();
    if edges.len() + 1 != r {
        return Err(bad());
    }
    let product = |(i, j): (usize, usize)| a[i][j] * a[j][i];
    if edges.iter().any(|&e| product(e) > 3) {
        return Err(bad());
    }
    if edges.iter().any(|&e| product(e) == 3) {
        return if r == 2 { Factor::new(SimpleType::G, 2) } else { Err(bad()) };
    }
    let doubles: Vec<_> = edges.iter().copied().filter(|&e| product(e) == 2).collect();
    let max_degree = nodes.iter().map(|&i| degree(i)).max().unwrap_or(0);
    if doubles.len() > 1 || (!doubles.is_empty() && max_degree > 2) {
        return Err(bad());
    }
    if let Some(&(i, j)) = doubles.first() {
        if r == 2 {
            return Factor::new(SimpleType::B, 2);
        }
        let (end, other) = match (degree(i), degree(j)) {
            (1, _) => (i, j),
            (_, 1) => (j, i),
            _ => return if r == 4 { Factor::new(SimpleType::F, 4) } else { Err(bad()) },
        };
        // the double bond sits at an end of the chain; the end node is short in B_n
        return if a[end][other] == -2 {
            Factor::new(SimpleType::B, r)
        } else {
            Factor::new(SimpleType::C, r)
        };
    }
    if max_degree <= 2 {
        return Factor::new(SimpleType::A, r);
    }
    let branches: Vec<usize> = nodes.iter().copied().filter(|&i| degree(i) == 3).collect();
    if branches.len() != 1 || max_degree > 3 {
        return Err(bad());
    }
    let centre = branches[0];
    let mut arms: Vec<usize> = neighbours(centre)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            loop {
                let next: Vec<usize> = neighbours(cur).filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [] => return len,
                    [x] => {
                        prev = cur;
                        cur = *x;
                        len += 1;
                    }
                    _ => return usize::MAX,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Factor::new(SimpleType::D, r),
        [1, 2, 2] => Factor::new(SimpleType::E, 6),
        [1, 2, 3] => Factor::new(SimpleType::E, 7),
        [1, 2, 4] => Factor::new(SimpleType::E, 8),
        _ => Err(bad()),
    }
}
