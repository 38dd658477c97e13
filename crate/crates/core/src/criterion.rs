//! The distinction decision engine.
//!
//! Four cases, by ramification of `K/F` and parity of `n`:
//!
//! * unramified, `n` even: never distinguished;
//! * ramified, `n` odd: never distinguished;
//! * unramified, `n` odd: distinguished iff `χ` is trivial on `F^×` and
//!   `χ̄^{-1} ∘ α = χ̄ ∘ τ` for some `α ∈ Gal(k_{K,n}/k_Δ)`, where
//!   `τ: x -> x^{q^d}`;
//! * ramified, `n` even: distinguished iff `χ` is trivial on `F^×`, `χ̄` is
//!   trivial on `l_0^×` (`l_0` of order `q^{n/2}`) and `χ(ϖ_K) χ̄(η) = -1`.
//!
//! In every case the multiplicity is at most one.

use crate::charlat::{MultChar, RootOfUnity};
use crate::ffield::{FieldElement, FieldSpec};
use crate::localdata::{derive, regular_orbits, validate_parameter, LocalSetup, Ramification, TameParameter};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    NrEven,
    TrOdd,
    NrOdd,
    TrEven,
}

impl Case {
    pub fn of(setup: &LocalSetup) -> Case {
        match (setup.ram, setup.n % 2 == 0) {
            (Ramification::Unramified, true) => Case::NrEven,
            (Ramification::Unramified, false) => Case::NrOdd,
            (Ramification::TotallyRamified, true) => Case::TrEven,
            (Ramification::TotallyRamified, false) => Case::TrOdd,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Case::NrEven => "NR_EVEN",
            Case::TrOdd => "TR_ODD",
            Case::NrOdd => "NR_ODD",
            Case::TrEven => "TR_EVEN",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    TrivialOnF,
    TrivialOnL0,
    EtaSign,
    GaloisWitness,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::TrivialOnF => "trivial_on_F",
            Condition::TrivialOnL0 => "trivial_on_l0",
            Condition::EtaSign => "eta_sign",
            Condition::GaloisWitness => "galois_witness",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityRule {
    UnramifiedEvenN,
    RamifiedOddN,
}

/// Values backing a positive ramified verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrEvenWitness {
    /// `χ(ϖ_F) = χ(ϖ_K)^2`, must be 1.
    pub chi_pi_f: RootOfUnity,
    /// `χ̄` on a generator of `l_0^×`, must be 1.
    pub chi_bar_l0: RootOfUnity,
    /// `χ(ϖ_K)`.
    pub chi_pi_k: RootOfUnity,
    /// `χ̄(η)`.
    pub chi_bar_eta: RootOfUnity,
    /// `χ(ϖ_K) χ̄(η)`, must be -1.
    pub product: RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Parity(ParityRule),
    FailedConditions(Vec<Condition>),
    /// `α = Frob_{k_Δ}^j`.
    WitnessNrOdd {
        j: u32,
    },
    WitnessTrEven(TrEvenWitness),
}

impl Certificate {
    pub fn is_witness(&self) -> bool {
        matches!(self, Certificate::WitnessNrOdd { .. } | Certificate::WitnessTrEven(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctionVerdict {
    pub distinguished: bool,
    pub multiplicity: u8,
    pub case: Case,
    pub certificate: Certificate,
}

impl DistinctionVerdict {
    fn no(case: Case, certificate: Certificate) -> Self {
        DistinctionVerdict { distinguished: false, multiplicity: 0, case, certificate }
    }

    fn yes(case: Case, certificate: Certificate) -> Self {
        DistinctionVerdict { distinguished: true, multiplicity: 1, case, certificate }
    }
}

/// `χ|_{F^×} = 1`: on units through the order-`(q-1)` subgroup of
/// `k_{K,n}^×`, on `ϖ_F` through `t` (`ϖ_F = ϖ_K` or `ϖ_K^2`).
pub fn trivial_on_f(p: &TameParameter) -> bool {
    chi_pi_f(p).is_one() && p.a % (p.setup.q - 1) == 0
}

fn chi_pi_f(p: &TameParameter) -> RootOfUnity {
    match p.setup.ram {
        Ramification::Unramified => p.t,
        Ramification::TotallyRamified => p.t.pow(2),
    }
}

/// Least `j < m` with `-a q^{2dj} ≡ a q^d (mod q^{2n} - 1)`.
pub fn case3_witness(p: &TameParameter) -> Result<Option<u32>> {
    let s = &p.setup;
    if s.ram != Ramification::Unramified || s.n % 2 == 0 {
        return Err(Error::WrongCase(Case::of(s).to_string()));
    }
    let x = derive(s)?;
    let modulus = (s.residue_order() - 1) as u128;
    let a = p.a as u128;
    let target = a * (s.q as u128).pow(s.d) % modulus;
    let step = (s.q as u128).pow(2 * s.d) % modulus;
    let mut alpha = 1u128;
    for j in 0..x.m {
        if (modulus - a * alpha % modulus) % modulus == target {
            return Ok(Some(j));
        }
        alpha = alpha * step % modulus;
    }
    Ok(None)
}

pub fn check_distinction(p: &TameParameter) -> Result<DistinctionVerdict> {
    validate_parameter(p)?;
    let s = &p.setup;
    let case = Case::of(s);
    let verdict = match case {
        Case::NrEven => DistinctionVerdict::no(case, Certificate::Parity(ParityRule::UnramifiedEvenN)),
        Case::TrOdd => DistinctionVerdict::no(case, Certificate::Parity(ParityRule::RamifiedOddN)),
        Case::NrOdd => {
            let witness = case3_witness(p)?;
            let mut failed = Vec::new();
            if !trivial_on_f(p) {
                failed.push(Condition::TrivialOnF);
            }
            if witness.is_none() {
                failed.push(Condition::GaloisWitness);
            }
            match witness {
                Some(j) if failed.is_empty() => DistinctionVerdict::yes(case, Certificate::WitnessNrOdd { j }),
                _ => DistinctionVerdict::no(case, Certificate::FailedConditions(failed)),
            }
        }
        Case::TrEven => {
            let chi = p.residual();
            let l0 = s.q.pow(s.n / 2);
            let mut failed = Vec::new();
            if !trivial_on_f(p) {
                failed.push(Condition::TrivialOnF);
            }
            let witness = if chi.is_trivial_on_subgroup(l0 - 1)? {
                let eta = chi.eta_value(s.q, s.n)?;
                let product = p.t.mul(eta);
                if product != RootOfUnity::minus_one() {
                    failed.push(Condition::EtaSign);
                }
                Some(TrEvenWitness {
                    chi_pi_f: chi_pi_f(p),
                    chi_bar_l0: chi.at_exponent(((s.residue_order() - 1) / (l0 - 1)) as i64),
                    chi_pi_k: p.t,
                    chi_bar_eta: eta,
                    product,
                })
            } else {
                failed.push(Condition::TrivialOnL0);
                None
            };
            match witness {
                Some(w) if failed.is_empty() => DistinctionVerdict::yes(case, Certificate::WitnessTrEven(w)),
                _ => DistinctionVerdict::no(case, Certificate::FailedConditions(failed)),
            }
        }
    };
    debug_assert_eq!(verdict.distinguished, verdict.certificate.is_witness());
    debug_assert!(!verdict.distinguished || trivial_on_f(p));
    Ok(verdict)
}

/// The values of `t` used by sweeps: `χ(ϖ_K) = ±1`.
pub fn default_t_values() -> Vec<RootOfUnity> {
    vec![RootOfUnity::one(), RootOfUnity::minus_one()]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Least exponent of the orbit.
    pub a: u64,
    pub t: RootOfUnity,
    pub d: u32,
    pub at_d: bool,
    pub at_1: bool,
}

/// Compares, for every regular orbit and `t = ±1`, the verdict for
/// `GL_m(D)` at each `d | n` with the verdict for `GL_n(F)`.
pub fn preservation_check(q: u64, n: u32, ram: Ramification) -> Result<Vec<Mismatch>> {
    let base = LocalSetup::new(q, ram, n, 1);
    derive(&base)?;
    let ds = crate::localdata::admissible_d(n);
    let orbits = regular_orbits(base.q_k(), n);
    let ts = default_t_values();
    let per_orbit: Vec<Vec<Mismatch>> = orbits
        .par_iter()
        .map(|orbit| -> Result<Vec<Mismatch>> {
            let mut out = Vec::new();
            for &t in &ts {
                let p1 = TameParameter::new(base, orbit[0] as i64, t);
                let at_1 = check_distinction(&p1)?.distinguished;
                for &d in &ds[1..] {
                    let pd = crate::localdata::jl_transfer(&p1, d)?;
                    let at_d = check_distinction(&pd)?.distinguished;
                    if at_d != at_1 {
                        out.push(Mismatch { a: orbit[0], t, d, at_d, at_1 });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_orbit.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub setup: LocalSetup,
    pub case: Case,
    /// Regular orbits of `a`.
    pub orbits: usize,
    /// Orbit and `t` pairs examined.
    pub parameters: usize,
    /// Distinguished `(least exponent of orbit, t)` pairs, sorted.
    pub distinguished: Vec<(u64, RootOfUnity)>,
}

/// Distinguished orbit counts for each `d` in `ds`, over `t` in `ts`.
pub fn census(q: u64, ram: Ramification, n: u32, ds: &[u32], ts: &[RootOfUnity]) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for &d in ds {
        let setup = LocalSetup::new(q, ram, n, d);
        derive(&setup)?;
        let orbits = regular_orbits(setup.q_k(), n);
        let hits: Vec<Vec<(u64, RootOfUnity)>> = orbits
            .par_iter()
            .map(|orbit| -> Result<Vec<(u64, RootOfUnity)>> {
                let mut v = Vec::new();
                for &t in ts {
                    if check_distinction(&TameParameter::new(setup, orbit[0] as i64, t))?.distinguished {
                        v.push((orbit[0], t));
                    }
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let mut distinguished: Vec<_> = hits.into_iter().flatten().collect();
        distinguished.sort();
        rows.push(CensusRow {
            setup,
            case: Case::of(&setup),
            orbits: orbits.len(),
            parameters: orbits.len() * ts.len(),
            distinguished,
        });
    }
    Ok(rows)
}

/// The criteria evaluated on actual field elements of `k_{K,n}` rather than
/// on exponent congruences. Subgroups are located as Frobenius-fixed points
/// and `η` is found by search, so the only input shared with
/// [`check_distinction`] is the meaning of the exponent `a` relative to the
/// field's own generator.
pub struct FieldModel<'a> {
    field: &'a FieldSpec,
    setup: LocalSetup,
    f_units: Vec<FieldElement>,
    l0_units: Vec<FieldElement>,
    eta: Option<FieldElement>,
}

impl<'a> FieldModel<'a> {
    pub fn new(field: &'a FieldSpec, setup: LocalSetup) -> Result<FieldModel<'a>> {
        if field.order() != setup.residue_order() {
            return Err(Error::DimensionMismatch {
                expected: setup.residue_order() as usize,
                got: field.order() as usize,
            });
        }
        let q = setup.q;
        let f_units: Vec<_> = field.units_iter().filter(|&x| field.in_subfield(x, q)).collect();
        let (l0_units, eta) = if Case::of(&setup) == Case::TrEven {
            let l0 = q.pow(setup.n / 2);
            let units: Vec<_> = field.units_iter().filter(|&x| field.in_subfield(x, l0)).collect();
            let eta = field.units_iter().find(|&x| !field.in_subfield(x, l0) && field.in_subfield(field.mul(x, x), l0));
            (units, eta)
        } else {
            (Vec::new(), None)
        };
        Ok(FieldModel { field, setup, f_units, l0_units, eta })
    }

    fn trivial_on(&self, chi: &MultChar, xs: &[FieldElement]) -> bool {
        xs.iter().all(|&x| chi.evaluate(x).expect("units only").is_one())
    }

    pub fn distinguished(&self, a: u64, t: RootOfUnity) -> bool {
        let s = &self.setup;
        let chi = MultChar::new(self.field.order(), a as i64);
        let pi_f = match s.ram {
            Ramification::Unramified => t,
            Ramification::TotallyRamified => t.pow(2),
        };
        let on_f = pi_f.is_one() && self.trivial_on(&chi, &self.f_units);
        match Case::of(s) {
            Case::NrEven | Case::TrOdd => false,
            Case::TrEven => {
                let eta = self.eta.expect("η exists for odd q");
                on_f && self.trivial_on(&chi, &self.l0_units)
                    && t.mul(chi.evaluate(eta).expect("η is a unit")) == RootOfUnity::minus_one()
            }
            Case::NrOdd => {
                let f = self.field;
                let g = f.generator();
                let tau = f.pow(g, s.q.pow(s.d));
                let m = s.n / s.d;
                on_f && (0..m).any(|j| {
                    let alpha = f.pow(g, (s.q * s.q).pow(s.d * j) % f.units());
                    chi.inverse().evaluate(alpha).unwrap() == chi.evaluate(tau).unwrap()
                })
            }
        }
    }
}
