use std::path::PathBuf;

use super::{Lattice, LatticeError};

/// Address of a lattice as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    Chain(usize),
    Boolean(usize),
    Product(Vec<LatticeSpec>),
    File(PathBuf),
    Pentagon,
    Diamond,
}

const PREFIXES: [&str; 5] = ["chain:", "boolean:", "prod:", "file:", "builtin:"];

impl LatticeSpec {
    /// Parses `chain:<k>`, `boolean:<m>`, `prod:<spec>x<spec>...`,
    /// `file:<path>`, `builtin:N5` and `builtin:M3`.
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::InvalidSpec(s.to_string());
        if let Some(k) = s.strip_prefix("chain:") {
            return k.parse().map(LatticeSpec::Chain).map_err(|_| bad());
        }
        if let Some(m) = s.strip_prefix("boolean:") {
            return m.parse().map(LatticeSpec::Boolean).map_err(|_| bad());
        }
        if let Some(p) = s.strip_prefix("file:") {
            if p.is_empty() {
                return Err(bad());
            }
            return Ok(LatticeSpec::File(PathBuf::from(p)));
        }
        if let Some(rest) = s.strip_prefix("prod:") {
            let factors = split_factors(rest);
            if factors.len() < 2 {
                return Err(bad());
            }
            return factors
                .iter()
                .map(|f| LatticeSpec::parse(f))
                .collect::<Result<Vec<_>, _>>()
                .map(LatticeSpec::Product);
        }
        match s {
            "builtin:N5" => Ok(LatticeSpec::Pentagon),
            "builtin:M3" => Ok(LatticeSpec::Diamond),
            _ => Err(bad()),
        }
    }

    pub fn build(&self) -> Result<Lattice, LatticeError> {
        match self {
            LatticeSpec::Chain(k) => Lattice::chain(*k),
            LatticeSpec::Boolean(m) => Lattice::boolean(*m),
            LatticeSpec::Product(fs) => {
                let factors = fs.iter().map(|f| f.build()).collect::<Result<Vec<_>, _>>()?;
                Ok(Lattice::product(&factors)?.with_name(self.to_string()))
            }
            LatticeSpec::File(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| LatticeError::Io(format!("{}: {e}", path.display())))?;
                Lattice::parse_file(&text)
            }
            LatticeSpec::Pentagon => Lattice::pentagon(),
            LatticeSpec::Diamond => Lattice::diamond(),
        }
    }
}

// Splits at every `x` that starts another factor spec, so paths containing
// an `x` survive inside `file:` factors.
fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == 'x' && i > start && PREFIXES.iter().any(|p| s[i + 1..].starts_with(p)) {
            out.push(&s[start..i]);
            start = i + 1;
        }
    }
    out.push(&s[start..]);
    out
}

impl std::fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeSpec::Chain(k) => write!(f, "chain:{k}"),
            LatticeSpec::Boolean(m) => write!(f, "boolean:{m}"),
            LatticeSpec::Product(fs) => {
                write!(f, "prod:")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            LatticeSpec::File(p) => write!(f, "file:{}", p.display()),
            LatticeSpec::Pentagon => write!(f, "builtin:N5"),
            LatticeSpec::Diamond => write!(f, "builtin:M3"),
        }
    }
}

impl Lattice {
    /// The `k`-element chain `0 < 1 < ... < k-1`, elements named by index.
    pub fn chain(k: usize) -> Result<Self, LatticeError> {
        if k < 2 {
            return Err(LatticeError::InvalidSpec(format!("chain:{k} needs k >= 2")));
        }
        let names = (0..k).map(|i| i.to_string()).collect();
        let leq = (0..k * k).map(|ij| ij / k <= ij % k).collect();
        Ok(Lattice::from_order(format!("chain:{k}"), names, leq)?.mark_distributive())
    }

    /// Subsets of `m` atoms, indexed by bit-mask. Atoms are named `a`, `b`,
    /// ...; a subset is named by its atoms, the empty set by `0`.
    pub fn boolean(m: usize) -> Result<Self, LatticeError> {
        if !(1..=8).contains(&m) {
            return Err(LatticeError::InvalidSpec(format!("boolean:{m} needs 1 <= m <= 8")));
        }
        let size = 1usize << m;
        let names = (0..size)
            .map(|mask| {
                if mask == 0 {
                    "0".to_string()
                } else {
                    (0..m).filter(|i| mask >> i & 1 == 1).map(|i| (b'a' + i as u8) as char).collect()
                }
            })
            .collect();
        let leq = (0..size * size)
            .map(|ij| {
                let (a, b) = (ij / size, ij % size);
                a & !b == 0
            })
            .collect();
        Ok(Lattice::from_order(format!("boolean:{m}"), names, leq)?.mark_distributive())
    }

    /// Componentwise product, first factor most significant in the index.
    /// Element names join the factor names with `.`.
    pub fn product(factors: &[Lattice]) -> Result<Self, LatticeError> {
        if factors.is_empty() {
            return Err(LatticeError::InvalidSpec("empty product".into()));
        }
        let size: usize = factors.iter().map(Lattice::size).product();
        let decode = |mut idx: usize| {
            let mut coords = vec![0; factors.len()];
            for (slot, f) in coords.iter_mut().zip(factors).rev() {
                *slot = idx % f.size();
                idx /= f.size();
            }
            coords
        };
        let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let names = tuples
            .iter()
            .map(|t| t.iter().zip(factors).map(|(&x, f)| f.element_name(x)).collect::<Vec<_>>().join("."))
            .collect();
        let mut leq = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = factors.iter().enumerate().all(|(i, f)| f.leq(tuples[a][i], tuples[b][i]));
            }
        }
        let name = format!("prod:{}", factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join("x"));
        let all_distributive = factors.iter().all(|f| f.distributive.get() == Some(&true));
        let lattice = Lattice::from_order(name, names, leq)?;
        Ok(if all_distributive { lattice.mark_distributive() } else { lattice })
    }

    /// Builds a lattice from its Hasse diagram. Each pair `(a, b)` says `a`
    /// is covered by `b`. Distributivity is left unverified.
    pub fn from_covers(
        name: impl Into<String>,
        elements: &[&str],
        bottom: &str,
        top: &str,
        covers: &[(&str, &str)],
    ) -> Result<Self, LatticeError> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let index =
            |s: &str| names.iter().position(|n| n == s).ok_or_else(|| LatticeError::UnknownElement(s.to_string()));
        let size = names.len();
        let mut adj = vec![Vec::new(); size];
        for &(a, b) in covers {
            adj[index(a)?].push(index(b)?);
        }
        if let Some(v) = find_cycle(&adj) {
            return Err(LatticeError::CyclicOrder(names[v].clone()));
        }
        // reflexive-transitive closure, one DFS per source
        let mut leq = vec![false; size * size];
        for s in 0..size {
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                if !leq[s * size + v] {
                    leq[s * size + v] = true;
                    stack.extend(&adj[v]);
                }
            }
        }
        let (b, t) = (index(bottom)?, index(top)?);
        for x in 0..size {
            if !leq[b * size + x] {
                return Err(LatticeError::NoBounds {
                    which: "bottom",
                    element: names[b].clone(),
                    other: names[x].clone(),
                });
            }
            if !leq[x * size + t] {
                return Err(LatticeError::NoBounds {
                    which: "top",
                    element: names[t].clone(),
                    other: names[x].clone(),
                });
            }
        }
        Lattice::from_order(name, names, leq)
    }

    /// The pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn pentagon() -> Result<Self, LatticeError> {
        Lattice::from_covers(
            "N5",
            &["0", "a", "b", "c", "1"],
            "0",
            "1",
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
    }

    /// The diamond with atoms `a`, `b`, `c`.
    pub fn diamond() -> Result<Self, LatticeError> {
        Lattice::from_covers(
            "M3",
            &["0", "a", "b", "c", "1"],
            "0",
            "1",
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<usize> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    fn visit(v: usize, adj: &[Vec<usize>], marks: &mut [Mark]) -> Option<usize> {
        marks[v] = Mark::Open;
        for &w in &adj[v] {
            match marks[w] {
                Mark::Open => return Some(w),
                Mark::New => {
                    if let Some(c) = visit(w, adj, marks) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        marks[v] = Mark::Done;
        None
    }
    let mut marks = vec![Mark::New; adj.len()];
    (0..adj.len()).find_map(|v| if marks[v] == Mark::New { visit(v, adj, &mut marks) } else { None })
}
