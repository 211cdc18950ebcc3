//! The alternating module `W = Λ³ Zⁿ`, the indeterminacy lattice spanned by
//! the vectors `v_{s,r}`, the total Milnor quotient `M = W / span{v_{s,r}}`
//! and the total Milnor invariant `μ(L) = m − t ∈ M`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, Cokernel, HermiteBasis, IntMatrix, SmithDecomposition};
use crate::system::{LinkingMatrix, SurfaceSystemData};
use crate::word::{CyclicWord, Letter, LinearWord, Sign};

/// All triples `i < j < k` in `1..=n`, in lexicographic order.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push((i, j, k));
            }
        }
    }
    out
}

pub fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Position of the sorted triple `i < j < k` in [`triples`].
fn sorted_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    // triples starting with a < i, then with (i, b) for b < j, then (i, j, c) for c < k
    let mut idx = 0;
    for a in 1..i {
        let rest = n - a;
        idx += rest * (rest - 1) / 2;
    }
    for b in i + 1..j {
        idx += n - b;
    }
    idx + (k - j - 1)
}

/// Sorts `(i, j, k)` and returns the sorted triple with the parity of the
/// sorting permutation, or `None` when an index repeats.
pub fn sort_triple(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), i64)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some(((v[0], v[1], v[2]), sign))
}

/// Element of `Λ³ Zⁿ` in the basis `X^{[ijk]}`, `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeVector {
    n: usize,
    coeffs: Vec<i64>,
}

impl WedgeVector {
    pub fn zero(n: usize) -> WedgeVector {
        WedgeVector {
            n,
            coeffs: vec![0; binom3(n)],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<i64>) -> Result<WedgeVector> {
        if coeffs.len() != binom3(n) {
            return Err(Error::DimensionMismatch {
                expected: binom3(n),
                got: coeffs.len(),
            });
        }
        Ok(WedgeVector { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn check(&self, i: usize, j: usize, k: usize) -> Result<()> {
        for x in [i, j, k] {
            if x == 0 || x > self.n {
                return Err(Error::OutOfRange(format!(
                    "component {x} not in 1..={}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Coefficient of `X^i ∧ X^j ∧ X^k` under the alternating rule.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        self.check(i, j, k)?;
        Ok(match sort_triple(i, j, k) {
            None => 0,
            Some(((a, b, c), sign)) => sign * self.coeffs[sorted_index(self.n, a, b, c)],
        })
    }

    /// Adds `value · X^i ∧ X^j ∧ X^k`. Repeated indices add nothing.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, value: i64) -> Result<()> {
        self.check(i, j, k)?;
        if let Some(((a, b, c), sign)) = sort_triple(i, j, k) {
            let idx = sorted_index(self.n, a, b, c);
            self.coeffs[idx] += sign * value;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero coefficients keyed by sorted triple.
    pub fn support(&self) -> Vec<((usize, usize, usize), i64)> {
        triples(self.n)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        lattice::to_big(&self.coeffs)
    }

    fn zip_with(&self, other: &WedgeVector, f: impl Fn(i64, i64) -> i64) -> WedgeVector {
        assert_eq!(self.n, other.n, "wedge vectors over different n");
        WedgeVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: i64) -> WedgeVector {
        WedgeVector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl std::ops::Add for &WedgeVector {
    type Output = WedgeVector;

    fn add(self, rhs: &WedgeVector) -> WedgeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &WedgeVector {
    type Output = WedgeVector;

    fn sub(self, rhs: &WedgeVector) -> WedgeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl std::ops::Neg for &WedgeVector {
    type Output = WedgeVector;

    fn neg(self) -> WedgeVector {
        self.scaled(-1)
    }
}

/// Writes a formal sum such as `4 X[1,2,3] - X[2,3,4]`, or `0`.
pub fn format_formal_sum(n: usize, coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for ((i, j, k), c) in triples(n).into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        let mag = if abs == BigInt::from(1) {
            String::new()
        } else {
            format!("{abs} ")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&format!("{mag}X[{i},{j},{k}]"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formal_sum(self.n, &self.to_big()))
    }
}

/// `v_{s,r} = Σ_i lk(K_i, K_r) X^{[isr]}`.
pub fn indeterminacy_vector(lk: &LinkingMatrix, s: usize, r: usize) -> Result<WedgeVector> {
    let n = lk.n();
    if s == r {
        return Err(Error::OutOfRange(format!(
            "indeterminacy vector needs s != r (got {s}, {r})"
        )));
    }
    if s == 0 || r == 0 || s > n || r > n {
        return Err(Error::OutOfRange(format!("({s}, {r}) not in 1..={n}")));
    }
    let mut v = WedgeVector::zero(n);
    for i in 1..=n {
        if i == s || i == r {
            continue;
        }
        v.add_term(i, s, r, lk.get(i, r))?;
    }
    Ok(v)
}

/// `M = W / span{v_{s,r} : s ≠ r}` for a fixed linking matrix.
#[derive(Debug)]
pub struct TotalMilnorQuotient {
    lk: LinkingMatrix,
    relations: IntMatrix,
    hermite: HermiteBasis,
    smith: SmithDecomposition,
    structure: Cokernel,
}

impl TotalMilnorQuotient {
    pub fn new(lk: LinkingMatrix) -> Result<TotalMilnorQuotient> {
        let n = lk.n();
        if n < 3 {
            return Err(Error::TooFewComponents(n));
        }
        let mut columns = Vec::with_capacity(n * (n - 1));
        for s in 1..=n {
            for r in 1..=n {
                if s != r {
                    columns.push(indeterminacy_vector(&lk, s, r)?.to_big());
                }
            }
        }
        let relations = IntMatrix::from_columns(binom3(n), &columns);
        let hermite = lattice::hnf(&relations);
        let smith = lattice::snf(&relations);
        let structure = Cokernel::from_smith(relations.rows(), &smith);
        Ok(TotalMilnorQuotient {
            lk,
            relations,
            hermite,
            smith,
            structure,
        })
    }

    pub fn n(&self) -> usize {
        self.lk.n()
    }

    pub fn linking_matrix(&self) -> &LinkingMatrix {
        &self.lk
    }

    /// Columns are `v_{s,r}` in lexicographic `(s, r)` order.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn hermite(&self) -> &HermiteBasis {
        &self.hermite
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    pub fn structure(&self) -> &Cokernel {
        &self.structure
    }

    /// Linear functionals `W → Z` that vanish on the relations and give
    /// coordinates on the free part of `M`. Read off the rows of the left
    /// Smith transform past the rank; each is sign-normalized so its first
    /// nonzero entry is positive.
    pub fn free_functionals(&self) -> Vec<Vec<BigInt>> {
        let rank = self.smith.rank();
        (rank..self.relations.rows())
            .map(|i| {
                let mut row = self.smith.u.row(i);
                if row
                    .iter()
                    .find(|c| !c.is_zero())
                    .is_some_and(|c| c.is_negative())
                {
                    row.iter_mut().for_each(|c| *c = -&*c);
                }
                row
            })
            .collect()
    }

    /// Torsion coordinates: `(functional, modulus)` for each factor `d > 1`.
    pub fn torsion_functionals(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.smith
            .invariant_factors()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| *d > BigInt::from(1))
            .map(|(i, d)| (self.smith.u.row(i), d))
            .collect()
    }

    pub fn class_of(self: &Arc<Self>, w: &WedgeVector) -> Result<MilnorClass> {
        if w.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: w.n(),
            });
        }
        let (rep, _) = lattice::reduce_with(&self.hermite, &w.to_big());
        Ok(MilnorClass {
            quotient: Arc::clone(self),
            rep,
        })
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        lattice::solve_with(&self.hermite, w).is_some()
    }
}

/// The class of a vector of `W` in a total Milnor quotient.
#[derive(Debug, Clone)]
pub struct MilnorClass {
    quotient: Arc<TotalMilnorQuotient>,
    rep: Vec<BigInt>,
}

impl MilnorClass {
    pub fn quotient(&self) -> &Arc<TotalMilnorQuotient> {
        &self.quotient
    }

    /// Canonical representative in `W`.
    pub fn representative(&self) -> &[BigInt] {
        &self.rep
    }

    pub fn free_coordinates(&self) -> Vec<BigInt> {
        self.quotient
            .free_functionals()
            .iter()
            .map(|f| dot(f, &self.rep))
            .collect()
    }

    pub fn torsion_coordinates(&self) -> Vec<(BigInt, BigInt)> {
        self.quotient
            .torsion_functionals()
            .into_iter()
            .map(|(f, d)| (dot(&f, &self.rep).mod_floor(&d), d))
            .collect()
    }
}

impl fmt::Display for MilnorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formal_sum(self.quotient.n(), &self.rep))
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn quotient_structure(q: &TotalMilnorQuotient) -> &Cokernel {
    q.structure()
}

/// `μ(L) = m − t` as a class in the quotient built from the system's
/// linking numbers.
pub fn total_invariant(s: &SurfaceSystemData) -> Result<MilnorClass> {
    if s.n() < 3 {
        return Err(Error::TooFewComponents(s.n()));
    }
    let lk = s.linking_matrix()?;
    let q = Arc::new(TotalMilnorQuotient::new(lk)?);
    let raw = &s.m_vector()? - &s.t_vector()?;
    q.class_of(&raw)
}

/// Equality in `M`. Classes over different linking matrices are
/// incomparable rather than unequal.
pub fn invariants_equal(a: &MilnorClass, b: &MilnorClass) -> Result<bool> {
    if a.quotient.lk != b.quotient.lk {
        return Err(Error::Incomparable);
    }
    Ok(a.rep == b.rep)
}

/// Classical `μ̄(ijk)` as `(residue, Δ_ijk)`; `Δ = 0` means the residue is
/// an honest integer.
pub fn classical_mu(s: &SurfaceSystemData, i: usize, j: usize, k: usize) -> Result<(i64, i64)> {
    if !(i < j && j < k) {
        return Err(Error::OutOfRange(format!(
            "indices must be strictly increasing (got {i}, {j}, {k})"
        )));
    }
    if k > s.n() || i == 0 {
        return Err(Error::OutOfRange(format!(
            "({i}, {j}, {k}) not in 1..={}",
            s.n()
        )));
    }
    let lk = s.linking_matrix()?;
    let delta = lk.get(i, j).gcd(&lk.get(j, k)).gcd(&lk.get(k, i));
    let value = s.m_value(i, j, k)? - s.t_vector()?.coefficient(i, j, k)?;
    let residue = if delta == 0 {
        value
    } else {
        value.mod_floor(&delta)
    };
    Ok((residue, delta))
}

/// The four-component family whose total invariant takes the value `m`
/// under the rank-one functional of the all-ones quotient.
pub fn realize_family(m: i64) -> SurfaceSystemData {
    fn power(index: usize, exp: i64) -> Vec<Letter> {
        let sign = if exp >= 0 { Sign::Pos } else { Sign::Neg };
        vec![Letter::new(index, sign).expect("index >= 1"); exp.unsigned_abs() as usize]
    }
    let p = Letter::pos;
    let mut w1 = vec![p(2), p(3), p(4)];
    w1.extend(power(2, -m));
    w1.extend(power(2, m));
    let mut w2 = vec![p(3), p(4), p(1)];
    w2.extend(power(1, -m));
    w2.push(p(3));
    w2.extend(power(1, m));
    w2.push(Letter::neg(3));
    let w3 = LinearWord::from_signed(&[4, 1, 2, -2, 2]);
    let w4 = LinearWord::from_signed(&[1, 2, 3]);
    let words = [LinearWord::new(w1), LinearWord::new(w2), w3, w4]
        .into_iter()
        .map(CyclicWord::from_linear)
        .collect();
    SurfaceSystemData::new(4, words, Default::default())
}

/// Whether every off-diagonal linking number equals one.
pub fn is_all_ones(lk: &LinkingMatrix) -> bool {
    let n = lk.n();
    (1..=n).all(|i| (1..=n).all(|j| i == j || lk.get(i, j) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parity of the permutation taking `v` to sorted order, by counting
    /// inversions.
    fn oracle_parity(v: [usize; 3]) -> i64 {
        let mut inv = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                if v[a] > v[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn triple_indexing() {
        for n in 3..8 {
            for (idx, (i, j, k)) in triples(n).into_iter().enumerate() {
                assert_eq!(sorted_index(n, i, j, k), idx);
            }
        }
    }

    #[test]
    fn wedge_coefficient_examples() {
        let mut t = WedgeVector::zero(3);
        t.add_term(1, 2, 3, 5).unwrap();
        assert_eq!(t.coefficient(2, 1, 3).unwrap(), -5);
        assert_eq!(t.coefficient(1, 1, 2).unwrap(), 0);
        assert_eq!(t.coefficient(3, 1, 2).unwrap(), 5);
        assert!(t.coefficient(0, 1, 2).is_err());
        assert!(t.coefficient(1, 2, 4).is_err());
    }

    #[test]
    fn sort_sign_matches_inversion_parity() {
        for i in 1..=4 {
            for j in 1..=4 {
                for k in 1..=4 {
                    match sort_triple(i, j, k) {
                        None => assert!(i == j || j == k || i == k),
                        Some((_, s)) => assert_eq!(s, oracle_parity([i, j, k])),
                    }
                }
            }
        }
    }

    #[test]
    fn indeterminacy_vector_all_ones_n4() {
        let lk = LinkingMatrix::constant(4, 1);
        let v = indeterminacy_vector(&lk, 2, 1).unwrap();
        // brute force: Σ_i lk(i,1) X^{[i 2 1]}, sorting each triple by inversion parity
        let mut expect = WedgeVector::zero(4);
        for i in [3, 4] {
            let mut sorted = [i, 2, 1];
            sorted.sort();
            let idx = triples(4)
                .iter()
                .position(|t| *t == (sorted[0], sorted[1], sorted[2]))
                .unwrap();
            expect.coeffs[idx] += oracle_parity([i, 2, 1]);
        }
        assert_eq!(v, expect);
        assert_eq!(v.coeffs(), &[-1, -1, 0, 0]);
        assert!(indeterminacy_vector(&lk, 2, 2).is_err());
    }

    #[test]
    fn zero_linking_gives_zero_vector() {
        let lk = LinkingMatrix::constant(5, 0);
        for s in 1..=5 {
            for r in 1..=5 {
                if s != r {
                    assert!(indeterminacy_vector(&lk, s, r).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn all_ones_quotient_is_z() {
        let q = TotalMilnorQuotient::new(LinkingMatrix::constant(4, 1)).unwrap();
        assert_eq!(q.structure().free_rank, 1);
        assert!(q.structure().torsion.is_empty());
        assert_eq!(q.relations().cols(), 12);
        let f = q.free_functionals();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], lattice::to_big(&[1, -1, 1, -1]));
    }

    #[test]
    fn zero_linking_quotient_is_free() {
        for n in 3..=7 {
            let q = TotalMilnorQuotient::new(LinkingMatrix::constant(n, 0)).unwrap();
            assert_eq!(q.structure().free_rank, binom3(n));
            assert!(q.structure().torsion.is_empty());
        }
    }

    #[test]
    fn nine_components_have_positive_rank() {
        let q = TotalMilnorQuotient::new(LinkingMatrix::constant(9, 1)).unwrap();
        assert_eq!(q.relations().rows(), 84);
        assert_eq!(q.relations().cols(), 72);
        assert!(q.structure().free_rank >= 1);
    }

    #[test]
    fn too_few_components() {
        assert!(matches!(
            TotalMilnorQuotient::new(LinkingMatrix::constant(2, 1)),
            Err(Error::TooFewComponents(2))
        ));
    }

    #[test]
    fn formal_sum_display() {
        let w = WedgeVector::from_coeffs(4, vec![4, 0, -1, 1]).unwrap();
        assert_eq!(w.to_string(), "4 X[1,2,3] - X[1,3,4] + X[2,3,4]");
        assert_eq!(WedgeVector::zero(3).to_string(), "0");
        let w = WedgeVector::from_coeffs(3, vec![-2]).unwrap();
        assert_eq!(w.to_string(), "-2 X[1,2,3]");
    }

    #[test]
    fn classical_mu_gcd() {
        let s = SurfaceSystemData::new(
            3,
            vec![
                CyclicWord::from_linear(LinearWord::from_signed(&[2, 2, 3, 3, 3, 3, 3, 3])),
                CyclicWord::from_linear(LinearWord::from_signed(&[1, 1, 3, 3, 3, 3])),
                CyclicWord::from_linear(LinearWord::from_signed(&[1, 1, 1, 1, 1, 1, 2, 2, 2, 2])),
            ],
            Default::default(),
        );
        let (_, delta) = classical_mu(&s, 1, 2, 3).unwrap();
        assert_eq!(delta, 2);
        assert!(classical_mu(&s, 2, 1, 3).is_err());
    }
}
