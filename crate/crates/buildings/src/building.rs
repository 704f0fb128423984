use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tree_core::{Child, TreeError, TreeFile, TreeRule, TruncatedTree, DEFAULT_MAX_VERTICES, NONE, V};

use crate::{blocks_of, BuildingError, CoxeterSystem, Result, Syllable, WordNF};

/// Grows the chamber/residue incidence tree.
///
/// Kind 0 is a chamber, with edge color `k` leading to its block-`k` residue.
/// Kind `k + 1` is a block-`k` residue, whose edge colors are the mixed-radix
/// codes of the `I_k` colors of its chambers. Chamber states hold the full
/// color tuple; residue states hold the tuple inherited from the parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingRule {
    pub blocks: Vec<Vec<usize>>,
    pub q: Vec<usize>,
}

impl BuildingRule {
    pub fn residue_size(&self, k: usize) -> usize {
        self.blocks[k].iter().map(|&i| self.q[i]).product()
    }

    pub fn encode(&self, k: usize, colors: &[u8]) -> usize {
        let mut x = 0;
        for &i in self.blocks[k].iter().rev() {
            x = x * self.q[i] + colors[i] as usize;
        }
        x
    }

    /// Overwrites the `I_k` part of `colors` with the tuple coded by `x`.
    pub fn decode_into(&self, k: usize, mut x: usize, colors: &mut [u8]) {
        for &i in &self.blocks[k] {
            colors[i] = (x % self.q[i]) as u8;
            x /= self.q[i];
        }
    }
}

impl TreeRule for BuildingRule {
    fn kinds(&self) -> usize {
        self.blocks.len() + 1
    }
    fn degree(&self, kind: usize) -> usize {
        if kind == 0 {
            self.blocks.len()
        } else {
            self.residue_size(kind - 1)
        }
    }
    fn vtype(&self, kind: usize) -> u8 {
        u8::from(kind != 0)
    }
    fn root_state(&self, _kind: usize) -> Vec<u8> {
        vec![0; self.q.len()]
    }
    fn child(&self, kind: usize, state: &[u8], color: usize) -> Child {
        if kind == 0 {
            Child { kind: color + 1, entry: self.encode(color, state), state: state.to_vec() }
        } else {
            let mut s = state.to_vec();
            self.decode_into(kind - 1, color, &mut s);
            Child { kind: 0, entry: kind - 1, state: s }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildingTree {
    pub system: CoxeterSystem,
    pub rule: BuildingRule,
    /// Gallery-depth bound: residue crossings from the base chamber.
    pub depth: usize,
    pub tree: Arc<TruncatedTree>,
}

/// The incidence tree with every chamber at most `d` residue crossings from
/// the base, together with all residues of those chambers.
pub fn build_building(c: &CoxeterSystem, d: usize) -> Result<BuildingTree> {
    build_building_capped(c, d, DEFAULT_MAX_VERTICES)
}

pub fn build_building_capped(c: &CoxeterSystem, d: usize, cap: usize) -> Result<BuildingTree> {
    let rule = BuildingRule { blocks: blocks_of(c)?, q: c.q.clone() };
    let tree = TruncatedTree::grow(&rule, 0, 2 * d + 1, cap)?;
    Ok(BuildingTree { system: c.clone(), rule, depth: d, tree: Arc::new(tree) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChamberRecord {
    pub colors: BTreeMap<String, u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidueRecord {
    pub block: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuildingFile {
    #[serde(flatten)]
    pub tree: TreeFile,
    pub chambers: BTreeMap<V, ChamberRecord>,
    pub residues: BTreeMap<V, ResidueRecord>,
}

impl BuildingTree {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.rule.blocks
    }

    pub fn base(&self) -> V {
        self.tree.base
    }

    pub fn is_chamber(&self, v: V) -> bool {
        self.tree.kind[v as usize] == 0
    }

    pub fn block_of(&self, r: V) -> Option<usize> {
        (self.tree.kind[r as usize] as usize).checked_sub(1)
    }

    pub fn colors(&self, c: V) -> &[u8] {
        &self.tree.state[c as usize]
    }

    pub fn chambers(&self) -> Vec<V> {
        (0..self.tree.len() as V).filter(|&v| self.is_chamber(v)).collect()
    }

    pub fn residues(&self) -> Vec<V> {
        (0..self.tree.len() as V).filter(|&v| !self.is_chamber(v)).collect()
    }

    /// Residues whose chambers are all present.
    pub fn full_residues(&self) -> Vec<V> {
        self.residues().into_iter().filter(|&r| self.tree.is_full(r)).collect()
    }

    pub fn residue_of(&self, c: V, k: usize) -> Option<V> {
        let r = *self.tree.nbr[c as usize].get(k)?;
        (r != NONE).then_some(r)
    }

    fn need_chamber(&self, c: V) -> Result<()> {
        if c as usize >= self.tree.len() {
            return Err(TreeError::Unknown(c).into());
        }
        if !self.is_chamber(c) {
            return Err(BuildingError::Input(format!("vertex {c} is not a chamber")));
        }
        Ok(())
    }

    fn need_full(&self, r: V) -> Result<()> {
        if r as usize >= self.tree.len() {
            return Err(TreeError::Unknown(r).into());
        }
        if self.is_chamber(r) {
            return Err(BuildingError::Input(format!("vertex {r} is not a residue")));
        }
        if !self.tree.is_full(r) {
            let have = self.tree.radius - self.tree.depth[r as usize] as usize;
            return Err(TreeError::Window { need: 1, have }.into());
        }
        Ok(())
    }

    /// Degree and legal-coloring violations, empty when the building is sound.
    pub fn check(&self) -> Vec<String> {
        let t = &self.tree;
        let mut bad = Vec::new();
        let r = self.blocks().len();
        for v in 0..t.len() as V {
            let inner = (t.depth[v as usize] as usize) < t.radius;
            if !inner {
                continue;
            }
            let want = if self.is_chamber(v) { r } else { self.rule.residue_size(self.block_of(v).unwrap()) };
            if t.neighbors(v).len() != want {
                bad.push(format!("vertex {v} has degree {}, expected {want}", t.neighbors(v).len()));
            }
            if t.neighbors(v).iter().any(|&w| self.is_chamber(w) == self.is_chamber(v)) {
                bad.push(format!("vertex {v} is adjacent to a vertex of its own type"));
            }
        }
        for res in self.full_residues() {
            let k = self.block_of(res).unwrap();
            let cs = t.neighbors(res);
            let mut seen = std::collections::BTreeSet::new();
            for &c in cs {
                let col = self.colors(c);
                seen.insert(self.blocks()[k].iter().map(|&i| col[i]).collect::<Vec<_>>());
                let first = self.colors(cs[0]);
                if (0..col.len()).any(|i| !self.blocks()[k].contains(&i) && col[i] != first[i]) {
                    bad.push(format!("residue {res}: a color outside block {k} varies"));
                }
            }
            if seen.len() != cs.len() || cs.len() != self.rule.residue_size(k) {
                bad.push(format!("residue {res}: block colors are not a bijection"));
            }
        }
        bad
    }

    /// `δ(c, d)` read off the tree geodesic: one syllable per residue
    /// crossed, holding the generators whose colors change.
    pub fn delta(&self, c: V, d: V) -> Result<WordNF> {
        self.need_chamber(c)?;
        self.need_chamber(d)?;
        let p = self.tree.path(c, d);
        let mut syl = Vec::new();
        for w in p.windows(3).step_by(2) {
            let k = self.block_of(w[1]).unwrap();
            let (x, y) = (self.colors(w[0]), self.colors(w[2]));
            let gens: Vec<usize> = self.blocks()[k].iter().copied().filter(|&i| x[i] != y[i]).collect();
            syl.push(Syllable { block: k, gens });
        }
        Ok(WordNF { syllables: syl })
    }

    pub fn gallery_distance(&self, c: V, d: V) -> Result<usize> {
        Ok(self.delta(c, d)?.length())
    }

    /// Closest chamber of the residue `r` to `c`, read from the tree.
    pub fn projection(&self, r: V, c: V) -> Result<V> {
        self.need_full(r)?;
        self.need_chamber(c)?;
        Ok(self.tree.path(r, c)[1])
    }

    /// The same projection as the unique chamber of `r` nearest to `c` in
    /// gallery distance.
    pub fn projection_by_distance(&self, r: V, c: V) -> Result<V> {
        self.need_full(r)?;
        self.need_chamber(c)?;
        let mut best: Option<(usize, V)> = None;
        let mut tie = false;
        for &x in self.tree.neighbors(r) {
            let d = self.gallery_distance(x, c)?;
            match best {
                Some((b, _)) if d > b => {}
                Some((b, _)) if d == b => tie = true,
                _ => {
                    best = Some((d, x));
                    tie = false;
                }
            }
        }
        if tie {
            return Err(BuildingError::Inconsistent(format!("projection of {c} on {r} is not unique")));
        }
        Ok(best.unwrap().1)
    }

    fn j_block(&self, j: &[usize]) -> Result<usize> {
        let k = self
            .blocks()
            .iter()
            .position(|b| j.first().is_some_and(|i| b.contains(i)))
            .ok_or_else(|| BuildingError::Input("J must be a nonempty set of generators".into()))?;
        if !j.iter().all(|i| self.blocks()[k].contains(i)) {
            return Err(BuildingError::Input("J must lie in one block".into()));
        }
        Ok(k)
    }

    /// Chambers of the `J`-residue through `c`.
    pub fn sub_residue(&self, c: V, j: &[usize]) -> Result<Vec<V>> {
        let k = self.j_block(j)?;
        let r = self.residue_of(c, k).ok_or(TreeError::Window { need: 1, have: 0 })?;
        self.need_full(r)?;
        let cc = self.colors(c);
        Ok(self
            .tree
            .neighbors(r)
            .iter()
            .copied()
            .filter(|&x| self.blocks()[k].iter().all(|i| j.contains(i) || self.colors(x)[*i] == cc[*i]))
            .collect())
    }

    /// `X_J(c)`: window chambers whose projection on `R_J(c)` is `c`. The
    /// projection on the `I_k`-residue comes from the tree; inside it, the
    /// projection on `R_J(c)` keeps the `J` colors of the residue projection.
    pub fn wing(&self, c: V, j: &[usize]) -> Result<Vec<V>> {
        self.need_chamber(c)?;
        let k = self.j_block(j)?;
        let r = self.residue_of(c, k).ok_or(TreeError::Window { need: 1, have: 0 })?;
        self.need_full(r)?;
        let cc = self.colors(c).to_vec();
        let mut out = Vec::new();
        for d in self.chambers() {
            let e = self.projection(r, d)?;
            if j.iter().all(|&i| self.colors(e)[i] == cc[i]) {
                out.push(d);
            }
        }
        Ok(out)
    }

    /// `X_J(c)` by minimizing gallery distance over `R_J(c)` directly.
    pub fn wing_by_distance(&self, c: V, j: &[usize]) -> Result<Vec<V>> {
        let rj = self.sub_residue(c, j)?;
        let mut out = Vec::new();
        for d in self.chambers() {
            let ds: Vec<usize> = rj.iter().map(|&x| self.gallery_distance(x, d)).collect::<Result<_>>()?;
            let m = *ds.iter().min().unwrap();
            if ds.iter().filter(|&&x| x == m).count() != 1 {
                return Err(BuildingError::Inconsistent(format!("projection of {d} on R_J({c}) is not unique")));
            }
            if rj[ds.iter().position(|&x| x == m).unwrap()] == c {
                out.push(d);
            }
        }
        Ok(out)
    }

    pub fn to_file(&self) -> BuildingFile {
        let mut chambers = BTreeMap::new();
        let mut residues = BTreeMap::new();
        for v in 0..self.tree.len() as V {
            if self.is_chamber(v) {
                let colors = self.system.names.iter().cloned().zip(self.colors(v).iter().copied()).collect();
                chambers.insert(v, ChamberRecord { colors });
            } else {
                residues.insert(v, ResidueRecord { block: self.block_of(v).unwrap() });
            }
        }
        BuildingFile { tree: TreeFile::from_tree(&self.tree), chambers, residues }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("building serializes")
    }
}
