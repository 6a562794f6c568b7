//! Sparse row echelon forms over exact fields.
//!
//! Columns are plain indices; the pivot of a row is its smallest column, so
//! the caller controls elimination order by how it numbers columns.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The prime field `ℤ/P`. `P` must be prime and below `2⁶³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

/// `2⁶² − 57`, the largest prime below `2⁶²`.
pub const LARGE_PRIME: u64 = (1 << 62) - 57;

pub type FLarge = Fp<LARGE_PRIME>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    /// Reduction of a rational; `None` when `P` divides the denominator.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(q.numer()) * d.inv())
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        self.pow(P - 2)
    }
}

/// A sparse vector: column index to nonzero entry.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// `target += a · row`, dropping cancelled entries.
pub fn axpy<F: Field>(target: &mut SparseVec<F>, a: &F, row: &SparseVec<F>) {
    for (&c, v) in row {
        let term = a.clone() * v.clone();
        match target.get_mut(&c) {
            Some(x) => {
                *x = x.clone() + term;
                if x.is_zero() {
                    target.remove(&c);
                }
            }
            None => {
                target.insert(c, term);
            }
        }
    }
}

/// Rows with distinct pivots, each normalized to pivot entry 1. Optionally
/// tracks how each row is combined from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, (SparseVec<F>, SparseVec<F>)>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Full reduction: the result has no entry in any pivot column. The second
    /// component records the reduction in terms of tracked combinations.
    fn reduce_tracked(&self, v: SparseVec<F>, mut combo: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut cur = v;
        let mut out = SparseVec::new();
        while let Some((c, a)) = cur.pop_first() {
            match self.rows.get(&c) {
                Some((row, rcombo)) => {
                    let neg = -a;
                    let mut rest = row.clone();
                    rest.remove(&c);
                    axpy(&mut cur, &neg, &rest);
                    axpy(&mut combo, &neg, rcombo);
                }
                None => {
                    out.insert(c, a);
                }
            }
        }
        (out, combo)
    }

    pub fn reduce(&self, v: SparseVec<F>) -> SparseVec<F> {
        self.reduce_tracked(v, SparseVec::new()).0
    }

    /// Inserts `v`; returns the new pivot, or `None` if `v` was dependent.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<usize> {
        self.insert_tracked(v, SparseVec::new()).ok()
    }

    /// Like [`Echelon::insert`], carrying a combination vector along. On
    /// dependence, returns the combination that reduced `v` to zero.
    pub fn insert_tracked(&mut self, v: SparseVec<F>, combo: SparseVec<F>) -> Result<usize, SparseVec<F>> {
        let (r, combo) = self.reduce_tracked(v, combo);
        let Some((&pivot, lead)) = r.iter().next() else {
            return Err(combo);
        };
        let inv = lead.inv();
        let scale = |m: SparseVec<F>| m.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
        self.rows.insert(pivot, (scale(r), scale(combo)));
        Ok(pivot)
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : Σ x_j · images[j] = 0}`, as sparse vectors indexed by `j`.
pub fn kernel<F: Field>(images: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let unit = SparseVec::from([(j, F::one())]);
        if let Err(combo) = e.insert_tracked(img.clone(), unit) {
            out.push(combo);
        }
    }
    out
}
