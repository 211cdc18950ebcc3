//! Combinatorial link presentations.
//!
//! [`CComplexData`] pairs up clasp endpoints explicitly; it is what the
//! longitude construction needs. [`SurfaceSystemData`] keeps only one
//! clasp-word per component plus the signed triple-point counts, which is
//! all the `m`/`t` bookkeeping needs. The map from the former to the latter
//! forgets the pairing and is not inverted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::invariant::{indeterminacy_vector, sort_triple, WedgeVector};
use crate::word::{CyclicWord, Letter, LinearWord, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClaspEndpoint {
    pub component: usize,
    /// 1-based position along the component, read from its base point.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clasp {
    pub id: String,
    pub a: ClaspEndpoint,
    pub b: ClaspEndpoint,
    pub sign: Sign,
}

/// One intersection point along a component, seen from that component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaspSlot {
    pub partner: usize,
    pub partner_rank: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CComplexData {
    pub n: usize,
    pub clasps: Vec<Clasp>,
}

impl CComplexData {
    pub fn new(n: usize, clasps: Vec<Clasp>) -> CComplexData {
        CComplexData { n, clasps }
    }

    /// Checks every invariant and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut diags = Vec::new();
        if self.n == 0 {
            diags.push("component count must be at least 1".to_string());
        }
        let mut ids = BTreeSet::new();
        let mut ranks: BTreeMap<usize, Vec<(usize, &str)>> = BTreeMap::new();
        for c in &self.clasps {
            if !ids.insert(c.id.as_str()) {
                diags.push(format!("clasp {}: duplicate clasp id", c.id));
            }
            for e in [c.a, c.b] {
                if e.component == 0 || e.component > self.n {
                    diags.push(format!(
                        "clasp {}: component {} out of range 1..={}",
                        c.id, e.component, self.n
                    ));
                } else if e.rank == 0 {
                    diags.push(format!("clasp {}: rank must be at least 1", c.id));
                } else {
                    ranks.entry(e.component).or_default().push((e.rank, &c.id));
                }
            }
            if c.a.component == c.b.component {
                diags.push(format!(
                    "clasp {}: self-clasp on component {}",
                    c.id, c.a.component
                ));
            }
        }
        for (comp, mut list) in ranks {
            list.sort();
            for pair in list.windows(2) {
                if pair[0].0 == pair[1].0 {
                    diags.push(format!(
                        "clasps {} and {}: duplicate rank {} on component {comp}",
                        pair[0].1, pair[1].1, pair[0].0
                    ));
                }
            }
            let m = list.len();
            let present: BTreeSet<usize> = list.iter().map(|&(r, _)| r).collect();
            let missing: Vec<String> = (1..=m)
                .filter(|r| !present.contains(r))
                .map(|r| r.to_string())
                .collect();
            if !missing.is_empty() {
                let ids: Vec<&str> = list
                    .iter()
                    .filter(|&&(r, _)| r > m)
                    .map(|&(_, id)| id)
                    .collect();
                diags.push(format!(
                    "component {comp}: rank gap, ranks should be 1..={m} but {} missing (clasps {})",
                    missing.join(","),
                    ids.join(",")
                ));
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(diags))
        }
    }

    /// Number of clasp endpoints on component `k`.
    pub fn endpoint_count(&self, k: usize) -> usize {
        self.clasps
            .iter()
            .map(|c| usize::from(c.a.component == k) + usize::from(c.b.component == k))
            .sum()
    }

    /// The intersection points along component `k`, in rank order.
    pub fn slots(&self, k: usize) -> Vec<ClaspSlot> {
        let mut slots: Vec<(usize, ClaspSlot)> = Vec::new();
        for c in &self.clasps {
            for (me, other) in [(c.a, c.b), (c.b, c.a)] {
                if me.component == k {
                    slots.push((
                        me.rank,
                        ClaspSlot {
                            partner: other.component,
                            partner_rank: other.rank,
                            sign: c.sign,
                        },
                    ));
                }
            }
        }
        slots.sort_by_key(|&(r, _)| r);
        slots.into_iter().map(|(_, s)| s).collect()
    }

    pub fn clasp_word(&self, k: usize) -> LinearWord {
        LinearWord::new(
            self.slots(k)
                .into_iter()
                .map(|s| Letter::new(s.partner, s.sign).expect("validated component"))
                .collect(),
        )
    }

    /// Forgets the pairing: words read off by rank, no triple points.
    pub fn to_surface_system(&self) -> Result<SurfaceSystemData> {
        self.validate()?;
        let words = (1..=self.n)
            .map(|k| CyclicWord::from_linear(self.clasp_word(k)))
            .collect();
        Ok(SurfaceSystemData::new(self.n, words, BTreeMap::new()))
    }
}

/// Symmetric integer matrix of pairwise linking numbers, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkingMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn zero(n: usize) -> LinkingMatrix {
        LinkingMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Every off-diagonal entry equal to `value`.
    pub fn constant(n: usize, value: i64) -> LinkingMatrix {
        let mut m = LinkingMatrix::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    m.entries[(i - 1) * n + (j - 1)] = value;
                }
            }
        }
        m
    }

    /// Builds from the upper triangle `lk(1,2), lk(1,3), …, lk(n-1,n)`.
    pub fn from_upper(n: usize, upper: &[i64]) -> Result<LinkingMatrix> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: n * n.saturating_sub(1) / 2,
                got: upper.len(),
            });
        }
        let mut m = LinkingMatrix::zero(n);
        let mut it = upper.iter();
        for i in 1..=n {
            for j in i + 1..=n {
                m.set(i, j, *it.next().expect("length checked"));
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based lookup.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
        self.entries[(j - 1) * self.n + (i - 1)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n)
                .map(|j| format!("{:>width$}", self.get(i, j)))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Index range, no self-letters, symmetric linking numbers.
    #[default]
    General,
    /// As `General`, and additionally no triple points, as for a system read
    /// off a C-complex.
    Strict,
}

/// Free clasp-words plus signed triple-point counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSystemData {
    n: usize,
    words: Vec<CyclicWord>,
    triples: BTreeMap<(usize, usize, usize), i64>,
}

impl SurfaceSystemData {
    /// Unchecked constructor; zero triple counts are dropped. Components
    /// without a word get the empty word.
    pub fn new(
        n: usize,
        mut words: Vec<CyclicWord>,
        mut triples: BTreeMap<(usize, usize, usize), i64>,
    ) -> SurfaceSystemData {
        words.resize(n, CyclicWord::default());
        triples.retain(|_, v| *v != 0);
        SurfaceSystemData { n, words, triples }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Word of component `k` (1-based).
    pub fn word(&self, k: usize) -> &CyclicWord {
        &self.words[k - 1]
    }

    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn linear_word(&self, k: usize) -> LinearWord {
        self.words[k - 1].linearize()
    }

    /// Nonzero triple counts keyed by sorted triple.
    pub fn triple_table(&self) -> &BTreeMap<(usize, usize, usize), i64> {
        &self.triples
    }

    pub fn validate(&self, mode: Validation) -> Result<()> {
        let mut diags = Vec::new();
        if self.n == 0 {
            diags.push("component count must be at least 1".to_string());
        }
        if self.words.len() != self.n {
            diags.push(format!(
                "expected {} words, found {}",
                self.n,
                self.words.len()
            ));
        }
        for (k0, w) in self.words.iter().enumerate() {
            let k = k0 + 1;
            for l in w.cyclic_letters() {
                if l.index() > self.n {
                    diags.push(format!("word {k}: letter {l} out of range 1..={}", self.n));
                } else if l.index() == k {
                    diags.push(format!("word {k}: self-letter {l}"));
                }
            }
        }
        if diags.is_empty() {
            for i in 1..=self.n {
                for j in i + 1..=self.n {
                    let a = self.words[i - 1].linearize().signed_count(j);
                    let b = self.words[j - 1].linearize().signed_count(i);
                    if a != b {
                        diags.push(format!(
                            "linking numbers inconsistent: e_{j}(w_{i}) = {a} but e_{i}(w_{j}) = {b}"
                        ));
                    }
                }
            }
        }
        for (&(i, j, k), &v) in &self.triples {
            if !(1 <= i && i < j && j < k && k <= self.n) {
                diags.push(format!(
                    "triple {i} {j} {k}: indices must satisfy 1 <= i < j < k <= n"
                ));
            } else if mode == Validation::Strict && v != 0 {
                diags.push(format!(
                    "triple {i} {j} {k}: strict mode forbids triple points (count {v})"
                ));
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(diags))
        }
    }

    /// Entry `(i, j)` is `e_j(w̃_i)`.
    pub fn linking_matrix(&self) -> Result<LinkingMatrix> {
        self.validate(Validation::General)?;
        let mut lk = LinkingMatrix::zero(self.n);
        for i in 1..=self.n {
            let w = self.linear_word(i);
            for j in i + 1..=self.n {
                lk.set(i, j, w.signed_count(j));
            }
        }
        Ok(lk)
    }

    /// `m_ijk = e_ij(w̃_k) + e_jk(w̃_i) + e_ki(w̃_j)` for distinct indices in
    /// any order.
    pub fn m_value(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        for x in [i, j, k] {
            if x == 0 || x > self.n {
                return Err(Error::OutOfRange(format!(
                    "component {x} not in 1..={}",
                    self.n
                )));
            }
        }
        if i == j || j == k || i == k {
            return Err(Error::OutOfRange(format!(
                "indices {i}, {j}, {k} not distinct"
            )));
        }
        Ok(self.linear_word(k).signed_pair_count(i, j)
            + self.linear_word(i).signed_pair_count(j, k)
            + self.linear_word(j).signed_pair_count(k, i))
    }

    pub fn m_vector(&self) -> Result<WedgeVector> {
        if self.n < 3 {
            return Err(Error::TooFewComponents(self.n));
        }
        let lin: Vec<LinearWord> = self.words.iter().map(CyclicWord::linearize).collect();
        let coeffs = crate::invariant::triples(self.n)
            .into_iter()
            .map(|(i, j, k)| {
                lin[k - 1].signed_pair_count(i, j)
                    + lin[i - 1].signed_pair_count(j, k)
                    + lin[j - 1].signed_pair_count(k, i)
            })
            .collect();
        WedgeVector::from_coeffs(self.n, coeffs)
    }

    pub fn t_vector(&self) -> Result<WedgeVector> {
        if self.n < 3 {
            return Err(Error::TooFewComponents(self.n));
        }
        let mut t = WedgeVector::zero(self.n);
        for (&(i, j, k), &v) in &self.triples {
            t.add_term(i, j, k, v)?;
        }
        Ok(t)
    }

    /// Triple count with the alternating sign rule for unsorted queries.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> i64 {
        match sort_triple(i, j, k) {
            None => 0,
            Some((key, sign)) => sign * self.triples.get(&key).copied().unwrap_or(0),
        }
    }

    fn with_word(&self, k: usize, w: CyclicWord) -> SurfaceSystemData {
        let mut out = self.clone();
        out.words[k - 1] = w;
        out
    }

    fn with_t(&self, t: &WedgeVector) -> SurfaceSystemData {
        let triples = t.support().into_iter().collect();
        SurfaceSystemData {
            n: self.n,
            words: self.words.clone(),
            triples,
        }
    }

    fn check_component(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::OutOfRange(format!(
                "component {k} not in 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Moves the base point of component `k` over `steps` letters.
    pub fn rotate_word(&self, k: usize, steps: i64) -> Result<SurfaceSystemData> {
        self.check_component(k)?;
        Ok(self.with_word(k, self.word(k).rotate(steps)))
    }

    /// Swaps the letters at linear positions `p`, `p + 1` of `w̃_k` and
    /// records the created triple point, so `m − t` is unchanged.
    pub fn finger_move(&self, k: usize, p: usize) -> Result<SurfaceSystemData> {
        self.check_component(k)?;
        let w = self.word(k);
        if p + 1 >= w.len() {
            return Err(Error::MoveRejected(format!(
                "finger move at {p} on word {k} of length {}: positions must be adjacent without crossing the base point",
                w.len()
            )));
        }
        let (x, y) = (w.letter_at(p), w.letter_at(p + 1));
        if x.index() == y.index() {
            return Err(Error::MoveRejected(format!(
                "finger move needs distinct indices at {p}, {}; use tube_move or reorder elsewhere",
                p + 1
            )));
        }
        let mut lin = w.linearize().letters().to_vec();
        lin.swap(p, p + 1);
        let swapped = rebased(&lin, w.base_offset());
        let out = self.with_word(k, swapped);
        if self.n < 3 {
            return Ok(out);
        }
        let dm = &out.m_vector()? - &self.m_vector()?;
        let t = &self.t_vector()? + &dm;
        Ok(out.with_t(&t))
    }

    /// Deletes the inverse pair at linear positions `p`, `p + 1` of `w̃_k`.
    pub fn tube_move(&self, k: usize, p: usize) -> Result<SurfaceSystemData> {
        self.check_component(k)?;
        let w = self.word(k);
        if p + 1 >= w.len() {
            return Err(Error::MoveRejected(format!(
                "tube move at {p} on word {k} of length {}: positions must be adjacent without crossing the base point",
                w.len()
            )));
        }
        let cancelled = w.cancel_adjacent_inverse(p)?;
        Ok(self.with_word(k, cancelled))
    }

    /// Torus sum `Σ #_target T_around`: words fixed, `t ↦ t − orientation · v_{target,around}`.
    pub fn torus_sum(
        &self,
        target: usize,
        around: usize,
        orientation: Sign,
    ) -> Result<SurfaceSystemData> {
        self.check_component(target)?;
        self.check_component(around)?;
        if target == around {
            return Err(Error::MoveRejected(
                "torus sum needs distinct target and around components".into(),
            ));
        }
        if self.n < 3 {
            return Err(Error::TooFewComponents(self.n));
        }
        let v = indeterminacy_vector(&self.linking_matrix()?, target, around)?;
        let t = &self.t_vector()? - &v.scaled(orientation.value());
        Ok(self.with_t(&t))
    }

    /// Brings every word into the form `1^{lk(1,k)} ⋯ n^{lk(n,k)}` by finger
    /// and tube moves only, keeping the base points.
    pub fn ordered_form(&self) -> Result<(SurfaceSystemData, Vec<MoveRecord>)> {
        self.validate(Validation::General)?;
        let mut cur = self.clone();
        let mut log = Vec::new();
        for k in 1..=self.n {
            loop {
                let mut changed = false;
                // one stable bubble pass
                let mut p = 0;
                while p + 1 < cur.word(k).len() {
                    let (x, y) = (cur.word(k).letter_at(p), cur.word(k).letter_at(p + 1));
                    if x.index() > y.index() {
                        let next = cur.finger_move(k, p)?;
                        let delta = if self.n >= 3 {
                            (&next.t_vector()? - &cur.t_vector()?).support()
                        } else {
                            Vec::new()
                        };
                        log.push(MoveRecord::Finger {
                            component: k,
                            position: p,
                            swapped: (x, y),
                            delta_t: delta,
                        });
                        cur = next;
                        changed = true;
                    }
                    p += 1;
                }
                // cancel inverse pairs left to right
                let mut p = 0;
                while p + 1 < cur.word(k).len() {
                    let (x, y) = (cur.word(k).letter_at(p), cur.word(k).letter_at(p + 1));
                    if x.is_inverse_of(y) {
                        cur = cur.tube_move(k, p)?;
                        log.push(MoveRecord::Tube {
                            component: k,
                            position: p,
                            cancelled: (x, y),
                        });
                        changed = true;
                        p = p.saturating_sub(1);
                    } else {
                        p += 1;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        Ok((cur, log))
    }

    /// Whether every word already has the sorted block form.
    pub fn is_ordered(&self) -> bool {
        self.words.iter().all(|w| {
            let lin = w.linearize();
            lin.letters().windows(2).all(|p| {
                p[0].index() < p[1].index()
                    || (p[0].index() == p[1].index() && p[0].sign() == p[1].sign())
            })
        })
    }
}

/// Cyclic word whose linearization is `lin` and whose stored base offset is
/// `offset`, so the stored rotation survives a local edit.
fn rebased(lin: &[Letter], offset: usize) -> CyclicWord {
    let len = lin.len();
    if len == 0 {
        return CyclicWord::default();
    }
    let offset = offset % len;
    let mut letters = vec![lin[0]; len];
    for (pos, &l) in lin.iter().enumerate() {
        letters[(offset + pos) % len] = l;
    }
    CyclicWord::new(letters, offset).expect("offset in range")
}

/// One step of [`SurfaceSystemData::ordered_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveRecord {
    Finger {
        component: usize,
        position: usize,
        swapped: (Letter, Letter),
        /// Nonzero entries of the change in `t`.
        delta_t: Vec<((usize, usize, usize), i64)>,
    },
    Tube {
        component: usize,
        position: usize,
        cancelled: (Letter, Letter),
    },
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveRecord::Finger {
                component,
                position,
                swapped,
                delta_t,
            } => {
                write!(
                    f,
                    "finger w{component} @{position}: {} {} -> {} {}",
                    swapped.0, swapped.1, swapped.1, swapped.0
                )?;
                for ((i, j, k), d) in delta_t {
                    write!(f, "; dt[{i},{j},{k}] = {d:+}")?;
                }
                Ok(())
            }
            MoveRecord::Tube {
                component,
                position,
                cancelled,
            } => write!(
                f,
                "tube w{component} @{position}: cancel {} {}",
                cancelled.0, cancelled.1
            ),
        }
    }
}
