use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::cochain::algebra::{CeAlgebra, Cochain, Monomial};
use crate::exact_linalg::{SparseMatrix, SparseVec};
use crate::Error;

/// Cochain degree plus `s = length − degree` and/or a total weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selector {
    pub degree: i64,
    pub s: Option<i64>,
    pub weight: Option<Vec<i64>>,
}

impl Selector {
    pub fn s_block(degree: i64, s: i64) -> Self {
        Selector { degree, s: Some(s), weight: None }
    }

    pub fn weight_block(degree: i64, weight: Vec<i64>) -> Self {
        Selector { degree, s: None, weight: Some(weight) }
    }

    pub fn with_degree(&self, degree: i64) -> Self {
        Selector { degree, ..self.clone() }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {}", self.degree)?;
        if let Some(s) = self.s {
            write!(f, ", s {s}")?;
        }
        if let Some(w) = &self.weight {
            write!(f, ", weight {w:?}")?;
        }
        Ok(())
    }
}

/// Enumerated monomial basis of one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub selector: Selector,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Block {
    fn new(selector: Selector, basis: Vec<Monomial>) -> Self {
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Block { selector, basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a cochain lying in this block.
    pub fn coordinates(&self, c: &Cochain) -> Result<SparseVec, Error> {
        let mut v = SparseVec::new();
        for (m, x) in c.terms() {
            let i = self.position(m).ok_or_else(|| {
                Error::Truncation(format!("monomial {m:?} lies outside block ({})", self.selector))
            })?;
            v.insert(i, x.clone());
        }
        Ok(v)
    }

    pub fn cochain(&self, v: &SparseVec) -> Cochain {
        let mut c = Cochain::zero();
        for (&i, x) in v {
            c.add_term(self.basis[i].clone(), x.clone());
        }
        c
    }
}

/// Sparse matrix of an operator between two blocks.
#[derive(Clone, Debug)]
pub struct BlockOperator {
    pub source: Arc<Block>,
    pub target: Arc<Block>,
    pub matrix: SparseMatrix,
}

type CacheKey = (String, Selector);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Block>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Block>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer functional positive on every nonzero generator weight (perceptron
/// search), or `None` if the weights do not span a pointed cone.
fn positive_functional(weights: &[Vec<i64>]) -> Option<Vec<i64>> {
    let dim = weights.first()?.len();
    let nonzero: Vec<&Vec<i64>> = weights.iter().filter(|w| w.iter().any(|&x| x != 0)).collect();
    let mut l = vec![0i64; dim];
    for _ in 0..10_000 {
        match nonzero.iter().find(|w| dot(&l, w) <= 0) {
            None => return Some(l),
            Some(w) => {
                for (a, b) in l.iter_mut().zip(w.iter()) {
                    *a += b;
                }
            }
        }
    }
    None
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Enumerator<'a> {
    ce: &'a CeAlgebra,
    degree: i64,
    length: Option<usize>,
    weight: Option<Vec<i64>>,
    functional: Option<(Vec<i64>, Vec<i64>, i64)>,
    out: Vec<Monomial>,
}

impl Enumerator<'_> {
    fn generator_weight(&self, i: usize) -> Vec<i64> {
        self.ce.generator_weight(i).unwrap_or_default()
    }

    fn run(&mut self, start: usize, current: &mut Monomial, deg: i64, budget: i64) {
        let done = match self.length {
            Some(l) => current.len() == l,
            None => false,
        };
        let accept = |this: &Self, m: &Monomial| -> bool {
            if deg != this.degree {
                return false;
            }
            match &this.weight {
                Some(w) => this.ce.monomial_weight(m).as_ref() == Some(w),
                None => true,
            }
        };
        if done {
            if accept(self, current) {
                self.out.push(current.clone());
            }
            return;
        }
        if self.length.is_none() && budget == 0 && accept(self, current) {
            self.out.push(current.clone());
        }
        let n = self.ce.num_generators();
        for g in start..n {
            if let Some(&last) = current.last() {
                if last == g && self.ce.is_odd(g) {
                    continue;
                }
            }
            let mut next_budget = budget;
            if let Some((_, cost, _)) = &self.functional {
                next_budget -= cost[g];
                if next_budget < 0 {
                    continue;
                }
            }
            if let Some(l) = self.length {
                // Degree bounds on the remaining slots.
                let remaining = (l - current.len() - 1) as i64;
                let (lo, hi) = self.degree_range(g);
                let d = deg + self.ce.generator_degree(g);
                if d + remaining * lo > self.degree || d + remaining * hi < self.degree {
                    continue;
                }
            }
            current.push(g);
            self.run(g, current, deg + self.ce.generator_degree(g), next_budget);
            current.pop();
        }
    }

    fn degree_range(&self, from: usize) -> (i64, i64) {
        let ds = (from..self.ce.num_generators()).map(|i| self.ce.generator_degree(i));
        let lo = ds.clone().min().unwrap_or(0);
        let hi = ds.max().unwrap_or(0);
        (lo, hi)
    }
}

/// Complete, deterministically ordered monomial basis of a block. Results are
/// cached by (algebra fingerprint, selector).
pub fn enumerate_block(ce: &CeAlgebra, selector: &Selector) -> Result<Arc<Block>, Error> {
    let key = (ce.fingerprint().to_string(), selector.clone());
    if let Some(b) = cache().read().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let block = Arc::new(Block::new(selector.clone(), enumerate_uncached(ce, selector)?));
    let mut w = cache().write().unwrap();
    Ok(w.entry(key).or_insert(block).clone())
}

fn enumerate_uncached(ce: &CeAlgebra, selector: &Selector) -> Result<Vec<Monomial>, Error> {
    let n = ce.num_generators();
    let mut e = Enumerator {
        ce,
        degree: selector.degree,
        length: None,
        weight: selector.weight.clone(),
        functional: None,
        out: Vec::new(),
    };
    if let Some(w) = &selector.weight {
        let gen_weights: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                ce.generator_weight(i)
                    .ok_or_else(|| Error::Invalid("weight selector on an algebra without weights".into()))
            })
            .collect::<Result<_, _>>()?;
        if gen_weights.iter().any(|g| g.len() != w.len()) {
            return Err(Error::Invalid(format!("weight {w:?} has the wrong length")));
        }
    }
    match selector.s {
        Some(s) => {
            let len = selector.degree + s;
            if len < 0 {
                return Ok(Vec::new());
            }
            e.length = Some(len as usize);
            e.run(0, &mut Vec::new(), 0, 0);
        }
        None => {
            let w = selector
                .weight
                .clone()
                .ok_or_else(|| Error::InfeasibleBlock("selector fixes neither s nor a weight".into()))?;
            let gen_weights: Vec<Vec<i64>> = (0..n).map(|i| e.generator_weight(i)).collect();
            for (i, gw) in gen_weights.iter().enumerate() {
                if gw.iter().all(|&x| x == 0) && !ce.is_odd(i) {
                    return Err(Error::InfeasibleBlock(format!(
                        "generator {} is even of weight zero; use s-blocks",
                        ce.generator_name(i)
                    )));
                }
            }
            let l = positive_functional(&gen_weights).ok_or_else(|| {
                Error::NonPointedCone("no linear functional is positive on all generator weights".into())
            })?;
            let cost: Vec<i64> = gen_weights.iter().map(|gw| dot(&l, gw)).collect();
            let budget = dot(&l, &w);
            if budget < 0 {
                return Ok(Vec::new());
            }
            e.functional = Some((l, cost, budget));
            e.run(0, &mut Vec::new(), 0, budget);
        }
    }
    let mut out = e.out;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Matrix of a linear map from `source` into `target`; errors if an image
/// leaves the target block.
pub fn operator_matrix(
    source: &Arc<Block>,
    target: &Arc<Block>,
    f: &dyn Fn(&Cochain) -> Result<Cochain, Error>,
) -> Result<BlockOperator, Error> {
    let mut triplets = Vec::new();
    for (col, m) in source.basis.iter().enumerate() {
        let img = f(&Cochain::monomial(m.clone(), crate::exact_linalg::Scalar::one()))?;
        for (row, x) in target.coordinates(&img)? {
            triplets.push((row, col, x));
        }
    }
    Ok(BlockOperator {
        source: source.clone(),
        target: target.clone(),
        matrix: SparseMatrix::from_triplets(target.len(), source.len(), triplets),
    })
}

/// `d` from a block to the block one degree up.
pub fn ce_differential(ce: &CeAlgebra, selector: &Selector) -> Result<BlockOperator, Error> {
    let src = enumerate_block(ce, selector)?;
    let tgt = enumerate_block(ce, &selector.with_degree(selector.degree + 1))?;
    operator_matrix(&src, &tgt, &|c| Ok(ce.d(c)))
}

/// `B` from a block to the block one degree down.
pub fn bv_operator(ce: &CeAlgebra, selector: &Selector) -> Result<BlockOperator, Error> {
    let src = enumerate_block(ce, selector)?;
    let tgt = enumerate_block(ce, &selector.with_degree(selector.degree - 1))?;
    operator_matrix(&src, &tgt, &|c| ce.bv(c))
}

/// `Δ = Bd + dB` on a block.
pub fn delta_operator(ce: &CeAlgebra, selector: &Selector) -> Result<BlockOperator, Error> {
    let src = enumerate_block(ce, selector)?;
    operator_matrix(&src, &src, &|c| ce.delta(c))
}

/// Matrix of `Δ` on the span of generators; column `k` is `Δ(f^k)`.
pub fn delta_on_generators(ce: &CeAlgebra) -> Result<SparseMatrix, Error> {
    let n = ce.num_generators();
    let mut triplets = Vec::new();
    for k in 0..n {
        let img = ce.delta(&ce.generator(k))?;
        for (m, x) in img.terms() {
            if m.len() != 1 {
                return Err(Error::Invalid("Δ of a generator is not linear".into()));
            }
            triplets.push((m[0], k, x.clone()));
        }
    }
    Ok(SparseMatrix::from_triplets(n, n, triplets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glie::{standard_for_dims, Bialgebra, GradedLie, Restriction};

    #[test]
    fn borel_blocks() {
        let ce = CeAlgebra::new(&standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).unwrap());
        let b = enumerate_block(&ce, &Selector::s_block(0, 1)).unwrap();
        assert_eq!(b.basis, vec![vec![1]]);
        let b = enumerate_block(&ce, &Selector::s_block(1, 1)).unwrap();
        assert_eq!(b.basis, vec![vec![0, 1]]);
    }

    #[test]
    fn empty_algebra() {
        let ce = CeAlgebra::new(&Bialgebra::trivial("zero", GradedLie::abelian(vec![]), 0));
        assert_eq!(enumerate_block(&ce, &Selector::s_block(0, 0)).unwrap().basis, vec![Vec::<usize>::new()]);
        assert!(enumerate_block(&ce, &Selector::s_block(1, 0)).unwrap().is_empty());
        assert!(enumerate_block(&ce, &Selector::s_block(0, 1)).unwrap().is_empty());
    }

    #[test]
    fn perceptron() {
        assert!(positive_functional(&[vec![1, 0], vec![0, 1], vec![1, -1]]).is_some());
        assert!(positive_functional(&[vec![1, 0], vec![-1, 0]]).is_none());
    }
}
