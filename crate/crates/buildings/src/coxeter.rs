use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{BuildingError, Result};

/// A generator named either by index or by its string name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenRef {
    Index(usize),
    Name(String),
}

/// On-disk Coxeter file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub commute: Vec<[GenRef; 2]>,
    pub thickness: BTreeMap<String, usize>,
}

/// Right-angled Coxeter system with finite thickness per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterSystem {
    pub names: Vec<String>,
    /// `m[i][j]`, with `None` for ∞.
    pub m: Vec<Vec<Option<u8>>>,
    pub q: Vec<usize>,
}

impl CoxeterSystem {
    /// Generators `names` with the pairs in `commute` having `m = 2` and all
    /// other pairs `m = ∞`.
    pub fn new(names: Vec<String>, commute: &[(usize, usize)], q: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(BuildingError::Input("no generators".into()));
        }
        if q.len() != n {
            return Err(BuildingError::Input(format!("{} thickness values for {n} generators", q.len())));
        }
        for (i, &qi) in q.iter().enumerate() {
            if qi < 3 {
                return Err(BuildingError::Input(format!("thickness of {} is {qi}, must be at least 3", names[i])));
            }
            if qi > u8::MAX as usize {
                return Err(BuildingError::Input(format!("thickness of {} is too large", names[i])));
            }
        }
        let mut m = vec![vec![None; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        for &(i, j) in commute {
            if i >= n || j >= n || i == j {
                return Err(BuildingError::Input(format!("bad commuting pair ({i},{j})")));
            }
            m[i][j] = Some(2);
            m[j][i] = Some(2);
        }
        Ok(CoxeterSystem { names, m, q })
    }

    /// Generators `a, b, ...` with the given thickness.
    pub fn lettered(commute: &[(usize, usize)], q: Vec<usize>) -> Result<Self> {
        let names = (0..q.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Self::new(names, commute, q)
    }

    pub fn from_file(f: &CoxeterFile) -> Result<Self> {
        let idx = |g: &GenRef| -> Result<usize> {
            match g {
                GenRef::Index(i) if *i < f.generators.len() => Ok(*i),
                GenRef::Name(s) => f.generators.iter().position(|x| x == s).ok_or_else(|| BuildingError::Input(format!("unknown generator {s}"))),
                GenRef::Index(i) => Err(BuildingError::Input(format!("generator index {i} out of range"))),
            }
        };
        let commute = f.commute.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        let q = f
            .generators
            .iter()
            .map(|g| f.thickness.get(g).copied().ok_or_else(|| BuildingError::Input(format!("no thickness for {g}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.generators.clone(), &commute, q)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CoxeterFile = serde_json::from_str(s).map_err(|e| BuildingError::Input(e.to_string()))?;
        Self::from_file(&f)
    }

    pub fn to_file(&self) -> CoxeterFile {
        let n = self.len();
        let mut commute = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.commutes(i, j) {
                    commute.push([GenRef::Name(self.names[i].clone()), GenRef::Name(self.names[j].clone())]);
                }
            }
        }
        CoxeterFile {
            generators: self.names.clone(),
            commute,
            thickness: self.names.iter().cloned().zip(self.q.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.m[i][j] == Some(2)
    }

    fn related(&self, i: usize, j: usize) -> bool {
        i == j || self.commutes(i, j)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Partition {
    Blocks(Vec<Vec<usize>>),
    /// `i ~ j` and `j ~ l` but not `i ~ l`.
    Violation([usize; 3]),
}

/// Blocks of the relation "equal or commuting", when it is an equivalence.
pub fn partition_star(c: &CoxeterSystem) -> Partition {
    let n = c.len();
    for i in 0..n {
        for j in 0..n {
            if !c.related(i, j) {
                continue;
            }
            for l in 0..n {
                if c.related(j, l) && !c.related(i, l) {
                    return Partition::Violation([i, j, l]);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match blocks.iter_mut().find(|b| c.related(b[0], i)) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    Partition::Blocks(blocks)
}

pub fn blocks_of(c: &CoxeterSystem) -> Result<Vec<Vec<usize>>> {
    match partition_star(c) {
        Partition::Blocks(b) => Ok(b),
        Partition::Violation([i, j, l]) => Err(BuildingError::Precondition(format!(
            "hypothesis (⋆) fails: {} ~ {} ~ {} but {} and {} do not commute",
            c.names[i], c.names[j], c.names[l], c.names[i], c.names[l]
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub block: usize,
    /// Sorted generator indices, all in the block.
    pub gens: Vec<usize>,
}

/// Free-product normal form in `W_{I_1} * ... * W_{I_r}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WordNF {
    pub syllables: Vec<Syllable>,
}

impl WordNF {
    /// Word length, which is the gallery distance.
    pub fn length(&self) -> usize {
        self.syllables.iter().map(|s| s.gens.len()).sum()
    }

    pub fn word(&self) -> Vec<usize> {
        self.syllables.iter().flat_map(|s| s.gens.iter().copied()).collect()
    }

    pub fn render(&self, c: &CoxeterSystem) -> String {
        self.word().iter().map(|&i| c.names[i].as_str()).collect::<Vec<_>>().join("")
    }
}

pub fn normal_form(c: &CoxeterSystem, word: &[usize]) -> Result<WordNF> {
    let blocks = blocks_of(c)?;
    if let Some(&i) = word.iter().find(|&&i| i >= c.len()) {
        return Err(BuildingError::Input(format!("letter {i} is not a generator")));
    }
    Ok(reduce_word(word, &blocks))
}

/// Stack reduction: a letter merges into the top syllable of its block by
/// xor, and emptied syllables are popped.
pub fn reduce_word(word: &[usize], blocks: &[Vec<usize>]) -> WordNF {
    let mut block_of = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        for &i in b {
            if block_of.len() <= i {
                block_of.resize(i + 1, usize::MAX);
            }
            block_of[i] = k;
        }
    }
    let mut stack: Vec<(usize, u64)> = Vec::new();
    for &i in word {
        let k = block_of[i];
        let bit = 1u64 << blocks[k].iter().position(|&x| x == i).unwrap();
        match stack.last_mut() {
            Some((b, mask)) if *b == k => {
                *mask ^= bit;
                if *mask == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((k, bit)),
        }
    }
    WordNF {
        syllables: stack
            .into_iter()
            .map(|(k, mask)| {
                let mut gens: Vec<usize> = blocks[k].iter().enumerate().filter(|(p, _)| mask >> p & 1 == 1).map(|(_, &i)| i).collect();
                gens.sort_unstable();
                Syllable { block: k, gens }
            })
            .collect(),
    }
}

/// Parses a word of single-letter or whitespace-separated generator names.
pub fn parse_word(c: &CoxeterSystem, s: &str) -> Result<Vec<usize>> {
    let toks: Vec<String> = if s.contains(char::is_whitespace) {
        s.split_whitespace().map(str::to_string).collect()
    } else {
        s.chars().map(|ch| ch.to_string()).collect()
    };
    toks.iter().map(|t| c.index(t).ok_or_else(|| BuildingError::Input(format!("unknown generator {t}")))).collect()
}
