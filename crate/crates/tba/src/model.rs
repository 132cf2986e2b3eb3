//! Finite pointed ternary algebras: a carrier of `n` labelled elements, two
//! designated constants `0` and `1`, and a total ternary operation `p` stored
//! as an `n³` table.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("carrier must have at least 2 elements, got {0}")]
    TooSmall(usize),
    #[error("zero and one must be distinct elements")]
    ZeroEqualsOne,
    #[error("element index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateName(String),
    #[error("table must have exactly {expected} entries, got {got}")]
    BadTableSize { expected: usize, got: usize },
    #[error("table entry {value} at position {position} out of range for size {size}")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        size: usize,
    },
    #[error("relabeling is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("relabeling must fix the constants zero and one")]
    MovesConstant,
    #[error("expected a model of size {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// A finite algebra `(A, p, 0, 1)` with a total ternary operation.
///
/// Elements are indices `0..n`; `names` carries one distinct label per
/// element. The constants are explicit fields, so index 0 does not have to
/// be the zero element. The table holds `p(a,b,c)` for all triples in
/// lexicographic `(a,b,c)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedTernaryAlgebra {
    names: Vec<String>,
    zero: usize,
    one: usize,
    table: Vec<usize>,
}

impl PointedTernaryAlgebra {
    pub fn new(
        names: Vec<String>,
        zero: usize,
        one: usize,
        table: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let n = names.len();
        if n < 2 {
            return Err(ModelError::TooSmall(n));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(ModelError::DuplicateName(name.clone()));
            }
        }
        for &c in &[zero, one] {
            if c >= n {
                return Err(ModelError::IndexOutOfRange { index: c, size: n });
            }
        }
        if zero == one {
            return Err(ModelError::ZeroEqualsOne);
        }
        if table.len() != n * n * n {
            return Err(ModelError::BadTableSize {
                expected: n * n * n,
                got: table.len(),
            });
        }
        if let Some((position, &value)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(ModelError::EntryOutOfRange {
                position,
                value,
                size: n,
            });
        }
        Ok(PointedTernaryAlgebra {
            names,
            zero,
            one,
            table,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Evaluates `p(a,b,c)`. Panics if an index is out of range.
    #[inline]
    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.size();
        assert!(a < n && b < n && c < n, "element index out of range");
        self.table[(a * n + b) * n + c]
    }

    /// Tabulates the four derived operations from `p`.
    pub fn derived_ops(&self) -> DerivedOps {
        let n = self.size();
        let (zero, one) = (self.zero, self.one);
        let bar: Vec<usize> = (0..n).map(|a| self.p(one, a, zero)).collect();
        let mut dot = Vec::with_capacity(n * n);
        let mut circ = Vec::with_capacity(n * n);
        let mut plus = Vec::with_capacity(n * n);
        for (a, &bar_a) in bar.iter().enumerate() {
            for b in 0..n {
                dot.push(self.p(zero, a, b));
                circ.push(self.p(a, b, one));
                plus.push(self.p(a, b, bar_a));
            }
        }
        DerivedOps {
            n,
            bar,
            dot,
            circ,
            plus,
        }
    }

    /// Applies a constant-fixing relabeling, producing the isomorphic copy
    /// with `p'(σa, σb, σc) = σ(p(a,b,c))`.
    pub fn relabel(&self, sigma: &Relabeling) -> Result<Self, ModelError> {
        let n = self.size();
        if sigma.len() != n {
            return Err(ModelError::SizeMismatch {
                expected: n,
                got: sigma.len(),
            });
        }
        if sigma.apply(self.zero) != self.zero || sigma.apply(self.one) != self.one {
            return Err(ModelError::MovesConstant);
        }
        Ok(self.relabel_unchecked(sigma.perm()))
    }

    /// Relabels along an arbitrary bijection given as `perm[old] = new`.
    /// Names follow their elements.
    fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        let n = self.size();
        let mut names = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        let mut table = vec![0usize; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    table[(perm[a] * n + perm[b]) * n + perm[c]] = perm[self.p(a, b, c)];
                }
            }
        }
        PointedTernaryAlgebra {
            names,
            zero: perm[self.zero],
            one: perm[self.one],
            table,
        }
    }

    /// Canonical representative of the isomorphism class over the pointed
    /// signature: zero lands at index 0, one at index 1, names are replaced
    /// by canonical labels, and the table is the lexicographic minimum over
    /// all `(n-2)!` arrangements of the remaining elements.
    ///
    /// Two models are isomorphic by a constant-preserving bijection exactly
    /// when their canonical forms are equal. Cost grows as `(n-2)!`; meant
    /// for the small carriers this crate targets.
    pub fn canonical_form(&self) -> Self {
        let n = self.size();
        let others: Vec<usize> = (0..n).filter(|&i| i != self.zero && i != self.one).collect();
        let mut best: Option<Vec<usize>> = None;
        for arrangement in permutations(&others) {
            // perm[old] = new position; constants pinned to 0 and 1.
            let mut perm = vec![0usize; n];
            perm[self.zero] = 0;
            perm[self.one] = 1;
            for (slot, &el) in arrangement.iter().enumerate() {
                perm[el] = 2 + slot;
            }
            let candidate = self.relabel_unchecked(&perm).table;
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        PointedTernaryAlgebra {
            names: canonical_names(n),
            zero: 0,
            one: 1,
            table: best.expect("at least the identity arrangement exists"),
        }
    }
}

impl fmt::Display for PointedTernaryAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra of size {} (zero={}, one={})",
            self.size(),
            self.names[self.zero],
            self.names[self.one]
        )
    }
}

/// Labels used for canonical forms and enumerated models: `0`, `1`, `e2`,
/// `e3`, ... with the constants at indices 0 and 1.
pub fn canonical_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ => format!("e{i}"),
        })
        .collect()
}

/// All permutations of `items` in lexicographic order of the chosen
/// positions. Deterministic; used for canonicalization.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(items.len());
    let mut used = vec![false; items.len()];
    fn rec(
        items: &[usize],
        used: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == items.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                current.push(items[i]);
                rec(items, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(items, &mut used, &mut current, &mut out);
    out
}

/// Tables of the four operations derived from `p`:
/// `ā = p(1,a,0)`, `a·b = p(0,a,b)`, `a∘b = p(a,b,1)`, `a+b = p(a,b,ā)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedOps {
    n: usize,
    bar: Vec<usize>,
    dot: Vec<usize>,
    circ: Vec<usize>,
    plus: Vec<usize>,
}

impl DerivedOps {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bar(&self, a: usize) -> usize {
        self.bar[a]
    }

    #[inline]
    pub fn dot(&self, a: usize, b: usize) -> usize {
        self.dot[a * self.n + b]
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ[a * self.n + b]
    }

    #[inline]
    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.plus[a * self.n + b]
    }

    pub fn bar_table(&self) -> &[usize] {
        &self.bar
    }

    pub fn dot_table(&self) -> &[usize] {
        &self.dot
    }

    pub fn circ_table(&self) -> &[usize] {
        &self.circ
    }

    pub fn plus_table(&self) -> &[usize] {
        &self.plus
    }
}

/// A bijection on element indices, applied to models via
/// [`PointedTernaryAlgebra::relabel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    perm: Vec<usize>,
}

impl Relabeling {
    /// `perm[old] = new`; must be a bijection on `0..perm.len()`.
    pub fn new(perm: Vec<usize>) -> Result<Self, ModelError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(ModelError::NotABijection(n));
            }
            seen[v] = true;
        }
        Ok(Relabeling { perm })
    }

    pub fn identity(n: usize) -> Self {
        Relabeling {
            perm: (0..n).collect(),
        }
    }

    /// Swaps two indices, fixing everything else.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, ModelError> {
        if i >= n || j >= n {
            return Err(ModelError::IndexOutOfRange {
                index: i.max(j),
                size: n,
            });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Ok(Relabeling { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}
