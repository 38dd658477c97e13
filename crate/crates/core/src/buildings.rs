//! Standard apartments `R^m / R(1,…,1)` with exact rational coordinates, the
//! injections `j` of an apartment of `X_D` into one of `X_K`, and the
//! vertices of `X_K` lying in the image of the standard chamber.

use crate::localdata::{derive, LocalSetup, Ramification};
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::fmt;

type Q = Ratio<i64>;

/// A point modulo the diagonal, stored with first coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApartmentPoint {
    coords: Vec<Q>,
}

impl ApartmentPoint {
    pub fn new(coords: Vec<Q>) -> ApartmentPoint {
        let shift = coords.first().copied().unwrap_or_else(Q::zero);
        ApartmentPoint { coords: coords.into_iter().map(|c| c - shift).collect() }
    }

    pub fn from_ints(coords: &[i64]) -> ApartmentPoint {
        Self::new(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_vertex(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// `λ self + (1-λ) other`.
    pub fn lerp(&self, other: &ApartmentPoint, lambda: Q) -> ApartmentPoint {
        let c = self.coords.iter().zip(&other.coords).map(|(x, y)| lambda * x + (Q::one() - lambda) * y);
        Self::new(c.collect())
    }

    /// Coordinates permuted by `perm`: entry `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> ApartmentPoint {
        let mut c = vec![Q::zero(); self.dim()];
        for (i, &x) in self.coords.iter().enumerate() {
            c[perm[i]] = x;
        }
        Self::new(c)
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Ramification of `K/F` together with the parity of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    NrOdd,
    TrOdd,
    NrEven,
    TrEven,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::NrOdd, CaseTag::TrOdd, CaseTag::NrEven, CaseTag::TrEven];

    pub fn of(setup: &LocalSetup) -> CaseTag {
        match (setup.ram, setup.d % 2 == 0) {
            (Ramification::Unramified, false) => CaseTag::NrOdd,
            (Ramification::TotallyRamified, false) => CaseTag::TrOdd,
            (Ramification::Unramified, true) => CaseTag::NrEven,
            (Ramification::TotallyRamified, true) => CaseTag::TrEven,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::NrOdd => "NR_ODD",
            CaseTag::TrOdd => "TR_ODD",
            CaseTag::NrEven => "NR_EVEN",
            CaseTag::TrEven => "TR_EVEN",
        }
    }

    pub fn image_dim(self, m: usize) -> usize {
        match self {
            CaseTag::NrOdd | CaseTag::TrOdd => m,
            CaseTag::NrEven | CaseTag::TrEven => 2 * m,
        }
    }

    /// The closed-form number of vertices of `X_K` in `j(C_0)`.
    pub fn expected_vertex_count(self, m: usize) -> usize {
        match self {
            CaseTag::NrOdd | CaseTag::TrEven => m,
            CaseTag::TrOdd => m * (m - 1) / 2 + m,
            CaseTag::NrEven => 0,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<CaseTag> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nr-odd" => Ok(CaseTag::NrOdd),
            "tr-odd" => Ok(CaseTag::TrOdd),
            "nr-even" => Ok(CaseTag::NrEven),
            "tr-even" => Ok(CaseTag::TrEven),
            _ => Err(Error::InvalidSetup(format!("unknown case {s:?}"))),
        }
    }
}

/// The vertices `s_0, …, s_{m-1}` of the standard chamber, `s_i` ending in
/// `i` ones.
pub fn chamber_vertices(m: usize) -> Vec<ApartmentPoint> {
    (0..m).map(|i| ApartmentPoint::from_ints(&(0..m).map(|k| (k + i >= m) as i64).collect::<Vec<_>>())).collect()
}

/// Writes `x` as a convex combination of vertices of the alcove containing
/// it. Weights are positive and sum to 1.
pub fn alcove_decomposition(x: &ApartmentPoint) -> Vec<(Q, Vec<i64>)> {
    let m = x.dim();
    let floor: Vec<i64> = x.coords.iter().map(|c| c.floor().to_integer()).collect();
    let frac: Vec<Q> = x.coords.iter().zip(&floor).map(|(c, f)| c - Q::from_integer(*f)).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| frac[j].cmp(&frac[i]).then(i.cmp(&j)));
    let mut out = Vec::new();
    let mut v = floor;
    let mut prev = Q::one();
    for &i in &order {
        if prev - frac[i] > Q::zero() {
            out.push((prev - frac[i], v.clone()));
        }
        v[i] += 1;
        prev = frac[i];
    }
    if prev > Q::zero() {
        out.push((prev, v));
    }
    out
}

fn j_vertex(case: CaseTag, x: &[i64]) -> Vec<Q> {
    let half = Q::new(1, 2);
    let mut y = Vec::with_capacity(2 * x.len());
    for &xi in x {
        let xi_q = Q::from_integer(xi);
        match case {
            CaseTag::NrOdd => y.push(xi_q),
            CaseTag::TrOdd => y.push(xi_q * 2),
            CaseTag::TrEven => y.extend([xi_q, xi_q]),
            CaseTag::NrEven => {
                let (k, r) = xi.div_mod_floor(&2);
                let k = Q::from_integer(k);
                if r == 0 {
                    y.extend([half + k, k]);
                } else {
                    y.extend([Q::one() + k, half + k]);
                }
            }
        }
    }
    y
}

/// The injection `j` for `case`. Defined on vertices by the explicit
/// formulas and extended affinely across each chamber.
pub fn j_map(case: CaseTag, x: &ApartmentPoint, m: usize) -> Result<ApartmentPoint> {
    if x.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, got: x.dim() });
    }
    let mut acc = vec![Q::zero(); case.image_dim(m)];
    for (w, v) in alcove_decomposition(x) {
        for (a, y) in acc.iter_mut().zip(j_vertex(case, &v)) {
            *a += w * y;
        }
    }
    Ok(ApartmentPoint::new(acc))
}

/// Exact barycentric solver for a fixed simplex: `m` points in canonical
/// coordinates, plus the affine constraint.
struct Simplex {
    verts: Vec<Vec<Q>>,
    rows: Vec<usize>,
    inv: Vec<Vec<Q>>,
}

impl Simplex {
    fn new(verts: Vec<Vec<Q>>) -> Simplex {
        let m = verts.len();
        let big = verts[0].len();
        // equation r < big is coordinate r; equation big is the weight sum
        let row = |r: usize| -> Vec<Q> { (0..m).map(|i| if r == big { Q::one() } else { verts[i][r] }).collect() };
        let mut rows = vec![big];
        let mut basis = vec![row(big)];
        for r in 1..big {
            if rows.len() == m {
                break;
            }
            let mut cand = basis.clone();
            cand.push(row(r));
            if rank(&cand) == cand.len() {
                rows.push(r);
                basis = cand;
            }
        }
        assert_eq!(rows.len(), m, "simplex vertices are affinely independent");
        let inv = invert(&basis);
        Simplex { verts, rows, inv }
    }

    fn contains(&self, p: &[Q]) -> bool {
        let big = p.len();
        let rhs: Vec<Q> = self.rows.iter().map(|&r| if r == big { Q::one() } else { p[r] }).collect();
        let lambda: Vec<Q> = self.inv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum()).collect();
        if lambda.iter().any(|l| l.is_negative()) {
            return false;
        }
        (0..big).all(|r| lambda.iter().zip(&self.verts).map(|(l, v)| l * v[r]).sum::<Q>() == p[r])
    }
}

fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            let f = a[i][c] / a[r][c];
            let pivot_row = a[r].clone();
            for (x, y) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= f * y;
            }
        }
        r += 1;
    }
    r
}

fn invert(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(c, piv);
        let p = m[c][c];
        for x in m[c].iter_mut() {
            *x /= p;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Vertices of `X_K` in `j(C_0)`, by scanning integer points of the
/// bounding box of the image simplex. Sorted.
pub fn image_vertices(case: CaseTag, m: usize) -> Vec<ApartmentPoint> {
    assert!(m >= 1);
    let images: Vec<ApartmentPoint> =
        chamber_vertices(m).iter().map(|v| j_map(case, v, m).expect("dimension matches")).collect();
    let big = case.image_dim(m);
    let lo: Vec<i64> =
        (0..big).map(|r| images.iter().map(|v| v.coords[r]).min().unwrap().ceil().to_integer()).collect();
    let hi: Vec<i64> =
        (0..big).map(|r| images.iter().map(|v| v.coords[r]).max().unwrap().floor().to_integer()).collect();
    let simplex = Simplex::new(images.into_iter().map(|v| v.coords).collect());

    let mut out = Vec::new();
    if (0..big).any(|r| lo[r] > hi[r]) {
        return out;
    }
    let mut cur = lo.clone();
    loop {
        let p: Vec<Q> = cur.iter().map(|&c| Q::from_integer(c)).collect();
        if simplex.contains(&p) {
            out.push(ApartmentPoint::new(p));
        }
        // odometer over the box
        let mut r = big;
        loop {
            if r == 0 {
                out.sort();
                return out;
            }
            r -= 1;
            if cur[r] < hi[r] {
                cur[r] += 1;
                break;
            }
            cur[r] = lo[r];
        }
    }
}

/// Valuations of reduced norms of the two uniformizers, read off from
/// symbolic determinants over `Z[ϖ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NrdValuations {
    /// `v_K(Nrd(ϖ_Δ I_μ))`.
    pub pi_delta: u32,
    /// `v_K(Nrd(ϖ_K I_μ))`.
    pub pi_k: u32,
    /// Sign of `det(w_0)`, a unit multiple of `ϖ_K`.
    pub det_w0_sign: i8,
}

/// Polynomials in `ϖ` as coefficient vectors, constant term first.
type Poly = Vec<i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        c[i] += sign * y;
    }
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Laplace expansion along the first row, skipping zero entries.
fn symbolic_det(a: &[Vec<Poly>]) -> Poly {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc = Vec::new();
    for (j, entry) in a[0].iter().enumerate() {
        if entry.iter().all(|&c| c == 0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = poly_mul(entry, &symbolic_det(&minor));
        acc = poly_add(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `w_0`: ones on the superdiagonal and `ϖ` in the bottom-left corner.
fn w0(delta: usize) -> Vec<Vec<Poly>> {
    let mut a = vec![vec![Vec::new(); delta]; delta];
    for i in 0..delta - 1 {
        a[i][i + 1] = vec![1];
    }
    a[delta - 1][0] = vec![0, 1];
    a
}

fn monomial(p: &Poly) -> (u32, i64) {
    let v = p.iter().position(|&c| c != 0).expect("nonzero determinant");
    assert!(p[v + 1..].iter().all(|&c| c == 0));
    (v as u32, p[v])
}

pub fn uniformizer_nrd_valuations(setup: &LocalSetup) -> Result<NrdValuations> {
    let x = derive(setup)?;
    let delta = x.delta as usize;
    let (v_w0, c_w0) = monomial(&symbolic_det(&w0(delta)));
    let scalar: Vec<Vec<Poly>> =
        (0..delta).map(|i| (0..delta).map(|j| if i == j { vec![0, 1] } else { Vec::new() }).collect()).collect();
    let (v_pi, _) = monomial(&symbolic_det(&scalar));
    Ok(NrdValuations { pi_delta: x.mu * v_w0, pi_k: x.mu * v_pi, det_w0_sign: c_w0.signum() as i8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn pt(c: &[i64]) -> ApartmentPoint {
        ApartmentPoint::from_ints(c)
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(pt(&[3, 4, 5]), pt(&[0, 1, 2]));
        assert!(pt(&[3, 4]).is_vertex());
        let p = ApartmentPoint::new(vec![q(1, 2), q(3, 2)]);
        assert!(p.is_vertex());
        assert!(!ApartmentPoint::new(vec![q(0, 1), q(1, 2)]).is_vertex());
    }

    #[test]
    fn j_examples() {
        let x = pt(&[0, 1, 2]);
        assert_eq!(j_map(CaseTag::NrOdd, &x, 3).unwrap(), pt(&[0, 1, 2]));
        assert_eq!(j_map(CaseTag::TrOdd, &x, 3).unwrap(), pt(&[0, 2, 4]));
        assert_eq!(j_map(CaseTag::TrEven, &pt(&[0, 1]), 2).unwrap(), pt(&[0, 0, 1, 1]));
        let y = j_map(CaseTag::NrEven, &pt(&[0, 1]), 2).unwrap();
        assert_eq!(y, ApartmentPoint::new(vec![q(1, 2), q(0, 1), q(1, 1), q(1, 2)]));
        assert!(matches!(j_map(CaseTag::NrOdd, &x, 2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn chamber_examples() {
        assert_eq!(chamber_vertices(1), vec![pt(&[0])]);
        assert_eq!(chamber_vertices(2), vec![pt(&[0, 0]), pt(&[0, 1])]);
        assert_eq!(chamber_vertices(3), vec![pt(&[0, 0, 0]), pt(&[0, 0, 1]), pt(&[0, 1, 1])]);
    }

    #[test]
    fn image_vertex_examples() {
        assert_eq!(image_vertices(CaseTag::TrOdd, 2), vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[0, 2])]);
        assert_eq!(image_vertices(CaseTag::TrOdd, 3).len(), 6);
        assert!(image_vertices(CaseTag::NrEven, 2).is_empty());
        assert_eq!(image_vertices(CaseTag::TrEven, 4).len(), 4);
    }

    #[test]
    fn image_vertex_counts() {
        for m in 1..=8 {
            for case in CaseTag::ALL {
                assert_eq!(image_vertices(case, m).len(), case.expected_vertex_count(m), "{case} m={m}");
            }
        }
    }

    // every vertex of the chamber is a vertex of the image in the odd cases
    #[test]
    fn chamber_images_are_found() {
        for m in 1..=5 {
            for case in [CaseTag::NrOdd, CaseTag::TrOdd, CaseTag::TrEven] {
                let found: HashSet<_> = image_vertices(case, m).into_iter().collect();
                for v in chamber_vertices(m) {
                    assert!(found.contains(&j_map(case, &v, m).unwrap()));
                }
            }
        }
    }

    fn box_vertices(m: usize, r: i64) -> Vec<ApartmentPoint> {
        let mut out = vec![vec![0i64]];
        for _ in 1..m {
            out = out.into_iter().flat_map(|v| (-r..=r).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        out.into_iter().map(|v| pt(&v)).collect()
    }

    #[test]
    fn injective_on_vertices() {
        for m in 1..=6 {
            let r = if m <= 4 { 3 } else { 2 };
            for case in CaseTag::ALL {
                let vs = box_vertices(m, r);
                let images: HashSet<_> = vs.iter().map(|v| j_map(case, v, m).unwrap()).collect();
                assert_eq!(images.len(), vs.len(), "{case} m={m}");
            }
        }
    }

    // the vertex formula in the NR_EVEN case agrees with one global affine map
    #[test]
    fn nr_even_is_globally_affine() {
        let half = q(1, 2);
        for v in box_vertices(3, 3) {
            let y = j_map(CaseTag::NrEven, &v, 3).unwrap();
            let closed: Vec<Q> = v.coords().iter().flat_map(|&x| [x * half + half, x * half]).collect();
            assert_eq!(y, ApartmentPoint::new(closed));
        }
    }

    #[test]
    fn edge_midpoints_map_to_midpoints() {
        let half = q(1, 2);
        for m in 2..=5 {
            let cv = chamber_vertices(m);
            for case in CaseTag::ALL {
                for i in 0..m {
                    for k in i + 1..m {
                        let mid = cv[i].lerp(&cv[k], half);
                        let lhs = j_map(case, &mid, m).unwrap();
                        let rhs = j_map(case, &cv[i], m).unwrap().lerp(&j_map(case, &cv[k], m).unwrap(), half);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }

    fn lift_perm(case: CaseTag, perm: &[usize]) -> Vec<usize> {
        match case {
            CaseTag::NrOdd | CaseTag::TrOdd => perm.to_vec(),
            CaseTag::NrEven | CaseTag::TrEven => perm.iter().flat_map(|&t| [2 * t, 2 * t + 1]).collect(),
        }
    }

    #[test]
    fn permutation_equivariance() {
        let pts = [
            vec![q(0, 1), q(1, 3), q(1, 2), q(5, 4)],
            vec![q(0, 1), q(-2, 1), q(7, 5), q(1, 1)],
            vec![q(1, 1), q(1, 1), q(0, 1), q(2, 1)],
        ];
        for case in CaseTag::ALL {
            for perm in permutations(4) {
                for p in &pts {
                    let x = ApartmentPoint::new(p.clone());
                    let lhs = j_map(case, &x.permute(&perm), 4).unwrap();
                    let rhs = j_map(case, &x, 4).unwrap().permute(&lift_perm(case, &perm));
                    assert_eq!(lhs, rhs, "{case} {perm:?} {x}");
                }
            }
        }
    }

    #[test]
    fn nrd_examples() {
        let s = LocalSetup::new(3, Ramification::Unramified, 3, 3);
        let v = uniformizer_nrd_valuations(&s).unwrap();
        assert_eq!((v.pi_delta, v.det_w0_sign), (1, 1));
        let s = LocalSetup::new(3, Ramification::Unramified, 4, 1);
        assert_eq!(uniformizer_nrd_valuations(&s).unwrap().pi_k, 4);
        let s = LocalSetup::new(3, Ramification::TotallyRamified, 8, 8);
        assert_eq!(uniformizer_nrd_valuations(&s).unwrap().det_w0_sign, -1);
        for n in 2..=12u32 {
            for d in crate::localdata::admissible_d(n) {
                let s = LocalSetup::new(3, Ramification::Unramified, n, d);
                let x = derive(&s).unwrap();
                let v = uniformizer_nrd_valuations(&s).unwrap();
                assert_eq!(v.pi_delta, x.mu);
                assert_eq!(v.pi_k, n);
                assert_eq!(v.det_w0_sign, if x.delta % 2 == 1 { 1 } else { -1 });
            }
        }
    }

    fn small_point(m: usize) -> impl Strategy<Value = ApartmentPoint> {
        prop::collection::vec((-6i64..6, 1i64..6), m)
            .prop_map(|v| ApartmentPoint::new(v.into_iter().map(|(n, d)| Q::new(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn alcove_weights_reconstruct(x in small_point(4)) {
            let parts = alcove_decomposition(&x);
            prop_assert_eq!(parts.iter().map(|(w, _)| *w).sum::<Q>(), Q::one());
            let mut acc = vec![Q::zero(); 4];
            for (w, v) in &parts {
                prop_assert!(w.is_positive());
                for (a, c) in acc.iter_mut().zip(v) {
                    *a += w * Q::from_integer(*c);
                }
            }
            prop_assert_eq!(ApartmentPoint::new(acc), x);
        }

        #[test]
        fn j_is_affine_within_a_chamber(x in small_point(3), l in 0i64..=8) {
            // x and a vertex of its own alcove share a chamber
            let (_, v) = alcove_decomposition(&x).pop().unwrap();
            let v = ApartmentPoint::from_ints(&v);
            let lambda = Q::new(l, 8);
            for case in CaseTag::ALL {
                let lhs = j_map(case, &x.lerp(&v, lambda), 3).unwrap();
                let rhs = j_map(case, &x, 3).unwrap().lerp(&j_map(case, &v, 3).unwrap(), lambda);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
