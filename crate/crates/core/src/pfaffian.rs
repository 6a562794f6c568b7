//! Monomial curves in 3-space: Herzog's equations, the Hilbert-Burch matrix
//! and canonical ideals cut out by Pfaffians of a skew-symmetric extension.

use serde::Serialize;

use crate::curvering::CurveRing;
use crate::error::{Error, Result};
use crate::fracideal::{self, CanonicityCertificate, FractionalIdeal};
use crate::poly::Poly;
use crate::rational::{int, one};
use crate::semigroup::Semigroup;
use crate::value_set::ValueSet;

/// A monomial `x_var^exp` (0-based `var`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialEntry {
    pub var: usize,
    pub exp: u32,
}

impl MonomialEntry {
    fn poly(self) -> Poly {
        Poly::var_pow(3, self.var, self.exp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HerzogPresentation {
    pub generators: [i64; 3],
    /// `r[i][j]` for `i ≠ j`; the diagonal is 0.
    pub r: [[u32; 3]; 3],
    pub c: [u32; 3],
    /// The 3×2 Hilbert-Burch matrix, absent for complete intersections.
    #[serde(rename = "M")]
    pub m: Option<[[MonomialEntry; 2]; 3]>,
    #[serde(rename = "F")]
    pub f: Vec<Poly>,
    pub complete_intersection: bool,
}

/// Least `c > 0` with `c·nᵢ ∈ ⟨n_j, n_k⟩`, with the lexicographically least
/// decomposition.
fn least_relation(i: usize, n: &[i64; 3]) -> (u32, [u32; 3]) {
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    for c in 1.. {
        let target = c * n[i];
        for a in 0..=target / n[j] {
            let rest = target - a * n[j];
            if rest % n[k] == 0 {
                let mut r = [0u32; 3];
                r[j] = a as u32;
                r[k] = (rest / n[k]) as u32;
                return (c as u32, r);
            }
        }
    }
    unreachable!()
}

pub fn herzog_presentation(s: &Semigroup) -> Result<HerzogPresentation> {
    let gens = s.generators();
    if gens.len() != 3 {
        return Err(Error::NotThreeGenerated(gens.len()));
    }
    let n = [gens[0], gens[1], gens[2]];
    let mut r = [[0u32; 3]; 3];
    let mut c = [0u32; 3];
    for i in 0..3 {
        let (ci, ri) = least_relation(i, &n);
        c[i] = ci;
        r[i] = ri;
    }
    let ci = (0..3).any(|i| (0..3).any(|j| i != j && r[i][j] == 0));
    let x = |v: usize, e: u32| MonomialEntry { var: v, exp: e };
    let binomial = |a: Poly, b: Poly| a.sub(&b).expect("three variables");

    let (m, f) = if ci {
        // x_i^{c_i} − Π_{j≠i} x_j^{r_ij}, deduplicated up to sign.
        let mut f: Vec<Poly> = Vec::new();
        for i in 0..3 {
            let mut e = vec![0u32; 3];
            for j in 0..3 {
                if j != i {
                    e[j] = r[i][j];
                }
            }
            let g = binomial(Poly::var_pow(3, i, c[i]), Poly::monomial(e, one()));
            if !f.iter().any(|h| h == &g || h == &g.neg()) {
                f.push(g);
            }
        }
        (None, f)
    } else {
        let m = [[x(0, r[1][0]), x(1, r[0][1])], [x(1, r[2][1]), x(2, r[1][2])], [x(2, r[0][2]), x(0, r[2][0])]];
        let mono = |e: [u32; 3]| Poly::monomial(e.to_vec(), one());
        let f = vec![
            binomial(mono([r[2][0], r[2][1], 0]), mono([0, 0, c[2]])),
            binomial(mono([0, r[0][1], r[0][2]]), mono([c[0], 0, 0])),
            binomial(mono([r[1][0], 0, r[1][2]]), mono([0, c[1], 0])),
        ];
        (Some(m), f)
    };
    let h = HerzogPresentation { generators: n, r, c, m, f, complete_intersection: ci };
    check_presentation(&h)?;
    Ok(h)
}

fn check_presentation(h: &HerzogPresentation) -> Result<()> {
    let n = h.generators;
    let bad = |what: String| Err(Error::InternalInconsistency(what));
    for i in 0..3 {
        let rhs: i64 = (0..3).filter(|&j| j != i).map(|j| h.r[i][j] as i64 * n[j]).sum();
        if h.c[i] as i64 * n[i] != rhs {
            return bad(format!("relation {i} does not balance"));
        }
    }
    let top = h.c.iter().zip(&n).map(|(&c, &w)| c as i64 * w).max().unwrap();
    for f in &h.f {
        if !f.substitute(&n, top + 1)?.is_zero() {
            return bad(format!("{f} does not vanish on the curve"));
        }
    }
    if let Some(m) = &h.m {
        if (0..3).any(|i| (0..3).any(|j| i != j && h.r[i][j] == 0)) {
            return bad("zero exponent in a non-complete-intersection".into());
        }
        for i in 0..3 {
            let col: u32 = (0..3).filter(|&j| j != i).map(|j| h.r[j][i]).sum();
            if h.c[i] != col {
                return bad(format!("c{} differs from the column sum of r", i + 1));
            }
        }
        for (i, f) in h.f.iter().enumerate() {
            if &signed_minor(m, i) != f {
                return bad(format!("F{} is not the signed minor of M", i + 1));
            }
        }
    }
    Ok(())
}

/// `(−1)^i · det` of `M` with row `i` removed (0-based `i`).
fn signed_minor(m: &[[MonomialEntry; 2]; 3], i: usize) -> Poly {
    let rows: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let (a, b) = (rows[0], rows[1]);
    let det = m[a][0].poly().mul(&m[b][1].poly()).unwrap().sub(&m[a][1].poly().mul(&m[b][0].poly()).unwrap()).unwrap();
    if i.is_multiple_of(2) {
        det
    } else {
        det.neg()
    }
}

/// The free entries of the skew block `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewEntries {
    pub a12: Poly,
    pub a13: Poly,
    pub a23: Poly,
}

impl SkewEntries {
    pub fn zero() -> Self {
        SkewEntries { a12: Poly::zero(3), a13: Poly::zero(3), a23: Poly::zero(3) }
    }

    /// `a₂₃ = x₁^{pn}`, the others zero.
    pub fn default_for(ring: &CurveRing) -> Result<Self> {
        let pn = ring.hilbert_data()?.pn as u32;
        Ok(SkewEntries { a23: Poly::var_pow(3, 0, pn), ..SkewEntries::zero() })
    }

    fn named(&self) -> [(&'static str, &Poly); 3] {
        [("a12", &self.a12), ("a13", &self.a13), ("a23", &self.a23)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PfaffianExtension {
    #[serde(rename = "A")]
    pub a: [[Poly; 3]; 3],
    #[serde(rename = "MA")]
    pub ma: Vec<Vec<Poly>>,
    pub f4: Poly,
    pub f5: Poly,
    /// Signs `ε` with `F₄ = ε₄·(a₂₃m₁₂ + a₁₃m₂₂ + a₁₂m₃₂)` and
    /// `F₅ = ε₅·(a₂₃m₁₁ + a₁₃m₂₁ + a₁₂m₃₁)`.
    pub closed_form_signs: [i8; 2],
    /// Signs relating `F₄`, `F₅` to the Pfaffians of `M_A` with row and
    /// column 4, resp. 5, deleted.
    pub pfaffian_signs: [i8; 2],
}

/// Pfaffian of a 4×4 skew-symmetric matrix.
fn pfaffian4(m: &[Vec<Poly>]) -> Poly {
    let p = |i: usize, j: usize, k: usize, l: usize| m[i][j].mul(&m[k][l]).unwrap();
    p(0, 1, 2, 3).sub(&p(0, 2, 1, 3)).unwrap().add(&p(0, 3, 1, 2)).unwrap()
}

fn sign_relating(a: &Poly, b: &Poly) -> Option<i8> {
    if a == b {
        Some(1)
    } else if a == &b.neg() {
        Some(-1)
    } else {
        None
    }
}

pub fn pfaffian_extension(h: &HerzogPresentation, entries: &SkewEntries) -> Result<PfaffianExtension> {
    let m = h.m.as_ref().ok_or(Error::CompleteIntersectionInput)?;
    let z = Poly::zero(3);
    let (a12, a13, a23) = (&entries.a12, &entries.a13, &entries.a23);
    let a =
        [[z.clone(), a12.clone(), a13.neg()], [a12.neg(), z.clone(), a23.clone()], [a13.clone(), a23.neg(), z.clone()]];
    let mp: Vec<Vec<Poly>> = m.iter().map(|row| row.iter().map(|e| e.poly()).collect()).collect();
    let mut ma = vec![vec![z.clone(); 5]; 5];
    for i in 0..3 {
        for j in 0..3 {
            ma[i][j] = a[i][j].clone();
        }
        for k in 0..2 {
            ma[i][3 + k] = mp[i][k].clone();
            ma[3 + k][i] = mp[i][k].neg();
        }
    }

    // F_k = Σ_{i<j≤3} (−1)^{i+j+k−1} a_ij det(M_{i,j,k}), 1-based, where the
    // 1×1 minor keeps the row l ∉ {i,j} and the column of M other than k.
    let general = |k: usize| -> Poly {
        let other_col = if k == 4 { 1 } else { 0 };
        let mut f = Poly::zero(3);
        for i in 1..=3usize {
            for j in i + 1..=3 {
                let l = 6 - i - j;
                let sign = if (i + j + k - 1).is_multiple_of(2) { one() } else { int(-1) };
                let term = a[i - 1][j - 1].mul(&mp[l - 1][other_col]).unwrap().scale(&sign);
                f = f.add(&term).unwrap();
            }
        }
        f
    };
    let f4 = general(4);
    let f5 = general(5);

    let closed = |col: usize| -> Poly {
        a23.mul(&mp[0][col])
            .unwrap()
            .add(&a13.mul(&mp[1][col]).unwrap())
            .unwrap()
            .add(&a12.mul(&mp[2][col]).unwrap())
            .unwrap()
    };
    let minor_without = |k: usize| -> Poly {
        let keep: Vec<usize> = (0..5).filter(|&x| x != k).collect();
        let sub: Vec<Vec<Poly>> = keep.iter().map(|&i| keep.iter().map(|&j| ma[i][j].clone()).collect()).collect();
        pfaffian4(&sub)
    };
    let mismatch = |what: &str| Error::SignMismatch(format!("{what} differs beyond sign"));
    let zero_ok = |a: &Poly, b: &Poly| if a.is_zero() && b.is_zero() { Some(1) } else { sign_relating(a, b) };
    let closed_form_signs = [
        zero_ok(&f4, &closed(1)).ok_or_else(|| mismatch("F4 and the closed form"))?,
        zero_ok(&f5, &closed(0)).ok_or_else(|| mismatch("F5 and the closed form"))?,
    ];
    let pfaffian_signs = [
        zero_ok(&f4, &minor_without(3)).ok_or_else(|| mismatch("F4 and its Pfaffian"))?,
        zero_ok(&f5, &minor_without(4)).ok_or_else(|| mismatch("F5 and its Pfaffian"))?,
    ];
    Ok(PfaffianExtension { a, ma, f4, f5, closed_form_signs, pfaffian_signs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PfaffianCanonical {
    pub herzog: HerzogPresentation,
    pub entries: SkewEntries,
    pub extension: Option<PfaffianExtension>,
    pub ideal: FractionalIdeal,
    pub certificate: CanonicityCertificate,
    pub colength: i64,
}

/// The canonical ideal `(F₄, F₅)` of `R` built from `A`, verified to be
/// m-primary, inside `m^{pn+1}` and canonical.
pub fn canonical_from_pfaffian(ring: &CurveRing, entries: &SkewEntries) -> Result<PfaffianCanonical> {
    let herzog = herzog_presentation(ring)?;
    let unit = || FractionalIdeal::monomial(ring, &[0]);
    if herzog.complete_intersection {
        // Gorenstein: R is its own canonical ideal.
        let ideal = unit()?;
        let certificate = fracideal::is_canonical(ring, &ideal)?;
        return Ok(PfaffianCanonical {
            herzog,
            entries: entries.clone(),
            extension: None,
            ideal,
            certificate,
            colength: 0,
        });
    }
    let pn = ring.hilbert_data()?.pn as u32;
    for (name, p) in entries.named() {
        if let Some(order) = p.order() {
            if order < pn {
                return Err(Error::OrderTooLow { entry: name.into(), order, pn });
            }
        }
    }
    let ext = pfaffian_extension(&herzog, entries)?;
    let weights = ring.generators();
    let mut gens = Vec::new();
    for f in [&ext.f4, &ext.f5] {
        if let Some(top) = f.max_weight(weights) {
            gens.push(f.substitute(weights, top + ring.conductor() + 1)?);
        }
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::NotPrimary);
    }
    let ideal = fracideal::standard_basis(ring, &gens)?;
    let pn1 = ring.power_value_set(pn as i64 + 1);
    if !ideal.values().is_subset(&pn1) {
        return Err(Error::ContainmentFailed { power: pn + 1 });
    }
    let certificate = fracideal::is_canonical(ring, &ideal)?;
    if !certificate.canonical {
        return Err(Error::NotCanonical);
    }
    let colength = fracideal::colength(&ideal, &unit()?)?;
    Ok(PfaffianCanonical { herzog, entries: entries.clone(), extension: Some(ext), ideal, certificate, colength })
}

/// Tries `x_v^{pn}` in each single entry of `A` until one yields a canonical
/// ideal.
pub fn search_canonical_from_pfaffian(ring: &CurveRing) -> Result<PfaffianCanonical> {
    let pn = ring.hilbert_data()?.pn as u32;
    let mut last = Error::NotCanonical;
    for slot in [2usize, 1, 0] {
        for v in 0..3 {
            let mut e = SkewEntries::zero();
            let p = Poly::var_pow(3, v, pn);
            match slot {
                0 => e.a12 = p,
                1 => e.a13 = p,
                _ => e.a23 = p,
            }
            match canonical_from_pfaffian(ring, &e) {
                Ok(found) => return Ok(found),
                Err(err @ (Error::NotPrimary | Error::ContainmentFailed { .. } | Error::NotCanonical)) => last = err,
                Err(err) => return Err(err),
            }
        }
    }
    Err(last)
}

/// The monomial `x^α` of weight `v` with the largest `x₁`-exponent, then the
/// largest `x₂`-exponent.
pub fn monomial_of_weight(n: &[i64; 3], v: i64) -> Option<Poly> {
    for a in (0..=v / n[0]).rev() {
        let rest = v - a * n[0];
        for b in (0..=rest / n[1]).rev() {
            let r = rest - b * n[1];
            if r % n[2] == 0 {
                return Some(Poly::monomial(vec![a as u32, b as u32, (r / n[2]) as u32], one()));
            }
        }
    }
    None
}

/// Generators of an ideal `J ⊂ k[[x₁,x₂,x₃]]` with `k[[x]]/J ≅ R/I`, where
/// `I` is the monomial ideal of `R` with value set `values`: Herzog's
/// equations plus one monomial per minimal generator of `values`.
pub fn quotient_generators(ring: &CurveRing, values: &ValueSet) -> Result<Vec<Poly>> {
    let h = herzog_presentation(ring)?;
    if !values.is_subset(&ring.value_set()) {
        return Err(Error::InfiniteColength);
    }
    let mut gens = h.f;
    for v in values.minimal_generators(ring) {
        gens.push(monomial_of_weight(&h.generators, v).ok_or(Error::NotInSemigroup { value: v })?);
    }
    Ok(gens)
}
