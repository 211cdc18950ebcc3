//! Free-group words in the meridians, truncated Magnus expansions, and
//! longitude words modulo the third lower central subgroup `F_3`.

use std::fmt;

use crate::error::{Error, Result};
use crate::system::{CComplexData, LinkingMatrix};
use crate::word::{Letter, LinearWord, Sign};

/// A word in the free group on `mu1, …, mun`. Not reduced unless asked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> FreeWord {
        FreeWord { letters }
    }

    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> FreeWord {
        FreeWord::new(vec![Letter::pos(i)])
    }

    pub fn letter(l: Letter) -> FreeWord {
        FreeWord::new(vec![l])
    }

    /// `mu_i^e` written out as `|e|` letters.
    pub fn power(i: usize, e: i64) -> FreeWord {
        let l = if e >= 0 {
            Letter::pos(i)
        } else {
            Letter::neg(i)
        };
        FreeWord::new(vec![l; e.unsigned_abs() as usize])
    }

    /// `mu_1^{c_1} ⋯ mu_n^{c_n}`.
    pub fn from_abelian(c: &[i64]) -> FreeWord {
        let mut w = FreeWord::identity();
        for (i, &e) in c.iter().enumerate() {
            w = w.mul(&FreeWord::power(i + 1, e));
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `h · self · h⁻¹`.
    pub fn conjugated_by(&self, h: &FreeWord) -> FreeWord {
        h.mul(self).mul(&h.inverse())
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &FreeWord, y: &FreeWord) -> FreeWord {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// Free reduction.
    pub fn reduced(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&last| last.is_inverse_of(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// Exponent sums `(e_1, …, e_n)`.
    pub fn abelianization(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.letters {
            if l.index() <= n {
                v[l.index() - 1] += l.sign().value();
            }
        }
        v
    }

    /// The same letter sequence read as a clasp-word.
    pub fn to_linear(&self) -> LinearWord {
        LinearWord::new(self.letters.clone())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (pos, l) in self.letters.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            match l.sign() {
                Sign::Pos => write!(f, "mu{}", l.index())?,
                Sign::Neg => write!(f, "mu{}^-1", l.index())?,
            }
        }
        Ok(())
    }
}

/// Element of `Z⟨⟨X_1, …, X_n⟩⟩` truncated above degree `d ∈ {2, 3}`, with
/// constant term 1. Coefficients of degree `k` are stored densely, indexed
/// by `(i_1 − 1) n^{k−1} + ⋯ + (i_k − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    n: usize,
    degree: usize,
    c1: Vec<i64>,
    c2: Vec<i64>,
    c3: Vec<i64>,
}

impl MagnusSeries {
    pub fn one(n: usize, degree: usize) -> Result<MagnusSeries> {
        if !(2..=3).contains(&degree) {
            return Err(Error::OutOfRange(format!(
                "Magnus degree must be 2 or 3, got {degree}"
            )));
        }
        Ok(MagnusSeries {
            n,
            degree,
            c1: vec![0; n],
            c2: vec![0; n * n],
            c3: if degree == 3 {
                vec![0; n * n * n]
            } else {
                Vec::new()
            },
        })
    }

    /// `1 + X_i` or `1 − X_i + X_i² − X_i³`, truncated.
    pub fn of_letter(n: usize, degree: usize, l: Letter) -> Result<MagnusSeries> {
        let i = l.index();
        if i > n {
            return Err(Error::OutOfRange(format!("generator mu{i} not in 1..={n}")));
        }
        let mut s = MagnusSeries::one(n, degree)?;
        let i = i - 1;
        match l.sign() {
            Sign::Pos => s.c1[i] = 1,
            Sign::Neg => {
                s.c1[i] = -1;
                s.c2[i * n + i] = 1;
                if degree == 3 {
                    s.c3[(i * n + i) * n + i] = -1;
                }
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of the monomial `X_{m_1} ⋯ X_{m_k}` (1-based indices);
    /// the empty monomial gives the constant term.
    pub fn coefficient(&self, monomial: &[usize]) -> Result<i64> {
        if monomial.len() > self.degree {
            return Err(Error::OutOfRange(format!(
                "monomial of degree {} above truncation {}",
                monomial.len(),
                self.degree
            )));
        }
        let mut idx = 0;
        for &m in monomial {
            if m == 0 || m > self.n {
                return Err(Error::OutOfRange(format!("X{m} not in 1..={}", self.n)));
            }
            idx = idx * self.n + (m - 1);
        }
        Ok(match monomial.len() {
            0 => 1,
            1 => self.c1[idx],
            2 => self.c2[idx],
            _ => self.c3[idx],
        })
    }

    pub fn linear(&self) -> &[i64] {
        &self.c1
    }

    /// Degree-2 coefficients, row-major `n × n`.
    pub fn quadratic(&self) -> &[i64] {
        &self.c2
    }

    pub fn cubic(&self) -> &[i64] {
        &self.c3
    }

    /// Same series cut down to degree 2.
    pub fn truncate2(&self) -> MagnusSeries {
        MagnusSeries {
            n: self.n,
            degree: 2,
            c1: self.c1.clone(),
            c2: self.c2.clone(),
            c3: Vec::new(),
        }
    }

    /// Nonzero coefficients as `(monomial, value)` in degree then
    /// lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, i64)> {
        let n = self.n;
        let mut out = Vec::new();
        for (i, &v) in self.c1.iter().enumerate() {
            if v != 0 {
                out.push((vec![i + 1], v));
            }
        }
        for (idx, &v) in self.c2.iter().enumerate() {
            if v != 0 {
                out.push((vec![idx / n + 1, idx % n + 1], v));
            }
        }
        for (idx, &v) in self.c3.iter().enumerate() {
            if v != 0 {
                out.push((vec![idx / (n * n) + 1, (idx / n) % n + 1, idx % n + 1], v));
            }
        }
        out
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")?;
        for (mono, v) in self.terms() {
            let name: String = mono.iter().map(|m| format!("X{m}")).collect();
            match v {
                1 => write!(f, " + {name}")?,
                -1 => write!(f, " - {name}")?,
                v if v < 0 => write!(f, " - {}{name}", -v)?,
                v => write!(f, " + {v}{name}")?,
            }
        }
        Ok(())
    }
}

/// Truncated noncommutative product.
pub fn magnus_mul(a: &MagnusSeries, b: &MagnusSeries) -> Result<MagnusSeries> {
    if a.n != b.n || a.degree != b.degree {
        return Err(Error::ShapeMismatch(format!(
            "series over {} generators at degree {} vs {} generators at degree {}",
            a.n, a.degree, b.n, b.degree
        )));
    }
    let n = a.n;
    let mut out = MagnusSeries::one(n, a.degree)?;
    for i in 0..n {
        out.c1[i] = a.c1[i] + b.c1[i];
        for j in 0..n {
            out.c2[i * n + j] = a.c2[i * n + j] + b.c2[i * n + j] + a.c1[i] * b.c1[j];
        }
    }
    if a.degree == 3 {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let idx = (i * n + j) * n + k;
                    out.c3[idx] = a.c3[idx]
                        + b.c3[idx]
                        + a.c2[i * n + j] * b.c1[k]
                        + a.c1[i] * b.c2[j * n + k];
                }
            }
        }
    }
    Ok(out)
}

/// Magnus expansion of `w` over `n` generators, truncated at `degree`.
pub fn magnus_of_word(w: &FreeWord, n: usize, degree: usize) -> Result<MagnusSeries> {
    let mut acc = MagnusSeries::one(n, degree)?;
    for &l in w.letters() {
        acc = magnus_mul(&acc, &MagnusSeries::of_letter(n, degree, l)?)?;
    }
    Ok(acc)
}

/// Coefficient of `X_i X_j` in the Magnus expansion of `w`, `i ≠ j`.
pub fn e_ij_of_word(w: &FreeWord, i: usize, j: usize) -> Result<i64> {
    if i == j {
        return Err(Error::OutOfRange(format!(
            "e_ij needs distinct indices (got {i}, {i})"
        )));
    }
    if i == 0 || j == 0 {
        return Err(Error::OutOfRange("generator indices start at 1".into()));
    }
    let n = w.max_index().max(i).max(j);
    magnus_of_word(w, n, 2)?.coefficient(&[i, j])
}

/// Equality in `F/F_3`: the degree-2 Magnus truncations agree.
pub fn f3_equal(a: &FreeWord, b: &FreeWord) -> bool {
    let n = a.max_index().max(b.max_index());
    let ma = magnus_of_word(a, n, 2).expect("n covers all generators");
    let mb = magnus_of_word(b, n, 2).expect("n covers all generators");
    ma == mb
}

/// Checks, modulo `F_3`, that `g⁻¹ a g = a`, `a [a⁻¹, g] = a`, and
/// `[a, g b] = [a, b]` for every generator `b` involved, where `g` is a
/// product of commutators.
pub fn commutator_calculus_check(a: &FreeWord, g: &FreeWord) -> bool {
    let conj = g.inverse().mul(a).mul(g);
    if !f3_equal(&conj, a) {
        return false;
    }
    if !f3_equal(&a.mul(&FreeWord::commutator(&a.inverse(), g)), a) {
        return false;
    }
    let n = a.max_index().max(g.max_index()).max(1);
    (1..=n).all(|t| {
        let b = FreeWord::generator(t);
        f3_equal(
            &FreeWord::commutator(a, &g.mul(&b)),
            &FreeWord::commutator(a, &b),
        )
    })
}

/// One factor `h μ_J^ε h⁻¹` of a longitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeFactor {
    pub rank: usize,
    pub partner: usize,
    pub partner_rank: usize,
    pub sign: Sign,
    /// Abelianization of the conjugator `h`.
    pub conjugator: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeData {
    pub component: usize,
    /// In rank order `r = 1, …, m_K`.
    pub factors: Vec<LongitudeFactor>,
    /// `Π_{r = m_K..1} h_r μ_{J_r}^{ε_r} h_r⁻¹`, unreduced.
    pub word: FreeWord,
}

fn prefix_abelianization(c: &CComplexData, comp: usize, before: usize) -> Vec<i64> {
    let mut v = vec![0; c.n];
    for slot in c.slots(comp).into_iter().take(before.saturating_sub(1)) {
        v[slot.partner - 1] += slot.sign.value();
    }
    v
}

fn conjugator_unchecked(c: &CComplexData, k: usize, r: usize) -> Result<Vec<i64>> {
    let slots = c.slots(k);
    let slot = *slots.get(r.wrapping_sub(1)).ok_or_else(|| {
        Error::OutOfRange(format!(
            "rank {r} not in 1..={} on component {k}",
            slots.len()
        ))
    })?;
    let j = slot.partner;
    let mine = prefix_abelianization(c, k, r);
    let theirs = prefix_abelianization(c, j, slot.partner_rank);
    let mut v: Vec<i64> = mine.iter().zip(&theirs).map(|(a, b)| a - b).collect();
    if slot.sign == Sign::Neg {
        v[k - 1] += 1;
        v[j - 1] -= 1;
    }
    Ok(v)
}

/// Abelianization of the conjugator attached to the clasp at rank `r` on
/// component `k`.
pub fn conjugator_abelianization(c: &CComplexData, k: usize, r: usize) -> Result<Vec<i64>> {
    c.validate()?;
    check_component(c, k)?;
    conjugator_unchecked(c, k, r)
}

fn check_component(c: &CComplexData, k: usize) -> Result<()> {
    if k == 0 || k > c.n {
        return Err(Error::OutOfRange(format!(
            "component {k} not in 1..={}",
            c.n
        )));
    }
    Ok(())
}

fn longitude_unchecked(c: &CComplexData, k: usize) -> Result<LongitudeData> {
    let slots = c.slots(k);
    let mut factors = Vec::with_capacity(slots.len());
    for (r0, slot) in slots.iter().enumerate() {
        factors.push(LongitudeFactor {
            rank: r0 + 1,
            partner: slot.partner,
            partner_rank: slot.partner_rank,
            sign: slot.sign,
            conjugator: conjugator_unchecked(c, k, r0 + 1)?,
        });
    }
    let mut word = FreeWord::identity();
    for f in factors.iter().rev() {
        let h = FreeWord::from_abelian(&f.conjugator);
        let m = FreeWord::letter(Letter::new(f.partner, f.sign)?);
        word = word.mul(&m.conjugated_by(&h));
    }
    Ok(LongitudeData {
        component: k,
        factors,
        word,
    })
}

/// Longitude of component `k` as a word in the meridians, correct modulo
/// `F_3`.
pub fn longitude_word(c: &CComplexData, k: usize) -> Result<LongitudeData> {
    c.validate()?;
    check_component(c, k)?;
    longitude_unchecked(c, k)
}

/// One ordered triple of the longitude identity
/// `e_ij(ℓ_k) = m_ijk − lk(k, j) lk(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeCheckRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub e_ij: i64,
    pub m_ijk: i64,
    pub correction: i64,
}

impl LongitudeCheckRow {
    pub fn holds(&self) -> bool {
        self.e_ij == self.m_ijk - self.correction
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeCheck {
    pub rows: Vec<LongitudeCheckRow>,
}

impl LongitudeCheck {
    pub fn violations(&self) -> Vec<&LongitudeCheckRow> {
        self.rows.iter().filter(|r| !r.holds()).collect()
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(LongitudeCheckRow::holds)
    }
}

/// Compares the Magnus coefficients of every longitude against the
/// clasp-word counts, for all ordered distinct triples.
pub fn check_longitude_identity(c: &CComplexData) -> Result<LongitudeCheck> {
    let s = c.to_surface_system()?;
    let n = c.n;
    let lk: LinkingMatrix = s.linking_matrix()?;
    let mut rows = Vec::new();
    for k in 1..=n {
        let ell = longitude_unchecked(c, k)?;
        let series = magnus_of_word(&ell.word, n, 2)?;
        for i in 1..=n {
            for j in 1..=n {
                if i == j || i == k || j == k {
                    continue;
                }
                rows.push(LongitudeCheckRow {
                    i,
                    j,
                    k,
                    e_ij: series.coefficient(&[i, j])?,
                    m_ijk: s.m_value(i, j, k)?,
                    correction: lk.get(k, j) * lk.get(i, j),
                });
            }
        }
    }
    Ok(LongitudeCheck { rows })
}

/// Presentation of the nilpotent quotient `π/π_k` of the link group.
pub fn emit_presentation(c: &CComplexData, k: usize) -> Result<String> {
    if k < 2 {
        return Err(Error::OutOfRange(format!(
            "nilpotency class k must be at least 2, got {k}"
        )));
    }
    c.validate()?;
    let gens: Vec<String> = (1..=c.n).map(|i| format!("mu{i}")).collect();
    let mut out = String::new();
    out.push_str(&format!("# nilpotent quotient pi/pi_{k}\n"));
    out.push_str(&format!(
        "# longitudes omit a length-3 commutator factor; relators are exact for k <= 4{}\n",
        if k > 4 {
            " (k > 4 requested: relators are approximate)"
        } else {
            ""
        }
    ));
    out.push_str(&format!("generators {}\n", gens.join(" ")));
    for i in 1..=c.n {
        let ell = longitude_unchecked(c, i)?.word.reduced();
        out.push_str(&format!("[mu{i}, {ell}]\n"));
    }
    out.push_str(&format!("+ all commutators of weight {k}\n"));
    Ok(out)
}
