//! The universal 2-cocycle `gamma(f, g) = class of f dg` and the extended
//! bracket on `(g (x) R) + Omega^1_R / dR`.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveSpec, CurveSummary};
use crate::differential::{f_dg, Differential};
use crate::lie::LieData;
use crate::omega::{reduce_mod_dr, BasisLabel, DiffClass};
use crate::rational::q;
use crate::ring::RingElement;
use crate::sample::{random_element, seeded_rng, SampleConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("Lie index {index} out of range for dimension {dim}")]
    DimensionMismatch { index: usize, dim: usize },
}

pub fn cocycle_gamma(f: &RingElement, g: &RingElement, curve: &CurveSpec) -> DiffClass {
    reduce_mod_dr(&f_dg(f, g, curve), curve)
}

/// `sum_i x_i (x) f_i`, keyed by Lie basis index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoopElement {
    parts: BTreeMap<usize, RingElement>,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_index (x) f`.
    pub fn basis(index: usize, f: RingElement) -> Self {
        let mut out = Self::zero();
        out.add(index, &f);
        out
    }

    pub fn add(&mut self, index: usize, f: &RingElement) {
        let e = self.parts.entry(index).or_default();
        *e += f;
        if e.is_zero() {
            self.parts.remove(&index);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&usize, &RingElement)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// An element of the extension: loop part plus central class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtElement {
    pub loop_part: LoopElement,
    pub central: DiffClass,
}

impl ExtElement {
    pub fn from_loop(loop_part: LoopElement) -> Self {
        ExtElement { loop_part, central: DiffClass::zero() }
    }

    pub fn from_central(central: DiffClass) -> Self {
        ExtElement { loop_part: LoopElement::zero(), central }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.central.is_zero()
    }

    pub fn add(&mut self, other: &ExtElement) {
        for (i, f) in other.loop_part.parts() {
            self.loop_part.add(*i, f);
        }
        self.central += &other.central;
    }
}

fn check_dims(x: &LoopElement, lie: &LieData) -> Result<(), CocycleError> {
    match x.parts.keys().find(|&&i| i >= lie.dim()) {
        Some(&index) => Err(CocycleError::DimensionMismatch { index, dim: lie.dim() }),
        None => Ok(()),
    }
}

/// `[x (x) f, y (x) g] = [x, y] (x) fg + B(x, y) gamma(f, g)`; central inputs drop out.
pub fn bracket_ext(
    x: &ExtElement,
    y: &ExtElement,
    lie: &LieData,
    curve: &CurveSpec,
) -> Result<ExtElement, CocycleError> {
    check_dims(&x.loop_part, lie)?;
    check_dims(&y.loop_part, lie)?;
    let mut out = ExtElement::default();
    for (&i, f) in x.loop_part.parts() {
        for (&j, g) in y.loop_part.parts() {
            let fg: Option<RingElement> = lie
                .bracket_basis(i, j)
                .next()
                .map(|_| f.mul(g, curve));
            if let Some(fg) = fg {
                for (k, c) in lie.bracket_basis(i, j) {
                    out.loop_part.add(k, &fg.scale(c));
                }
            }
            let b = lie.form(i, j);
            if !b.is_zero() {
                out.central += &cocycle_gamma(f, g, curve).scale(b);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    pub curve: CurveSummary,
    pub seed: u64,
    pub samples: usize,
    pub jacobi_samples: usize,
    pub antisymmetry_failures: Vec<String>,
    pub cyclic_failures: Vec<String>,
    pub jacobi_failures: Vec<String>,
    pub pass: bool,
}

fn random_ext<R: Rng>(rng: &mut R, lie: &LieData, curve: &CurveSpec, cfg: &SampleConfig) -> ExtElement {
    let mut loop_part = LoopElement::zero();
    let parts = rng.gen_range(1..=2);
    for _ in 0..parts {
        let idx = rng.gen_range(0..lie.dim());
        loop_part.add(idx, &random_element(rng, curve, cfg));
    }
    let central = DiffClass::single(BasisLabel::Omega0, q(rng.gen_range(-3..=3)));
    ExtElement { loop_part, central }
}

/// Checks `gamma(f,g) + gamma(g,f) = 0` and
/// `gamma(fg,h) + gamma(gh,f) + gamma(hf,g) = 0` on `samples` random triples,
/// then the Jacobi identity of the `sl_2` extended bracket on `samples / 2`
/// (at least one) random triples.
pub fn check_two_cocycle(curve: &CurveSpec, samples: usize, seed: u64) -> CocycleReport {
    let cfg = SampleConfig::default();
    let mut rng = seeded_rng(seed);
    let mut antisymmetry_failures = Vec::new();
    let mut cyclic_failures = Vec::new();
    for _ in 0..samples {
        let f = random_element(&mut rng, curve, &cfg);
        let g = random_element(&mut rng, curve, &cfg);
        let h = random_element(&mut rng, curve, &cfg);
        let anti = &cocycle_gamma(&f, &g, curve) + &cocycle_gamma(&g, &f, curve);
        if !anti.is_zero() {
            antisymmetry_failures.push(format!("f = {f}; g = {g}; sum = {anti}"));
        }
        let fg = f.mul(&g, curve);
        let gh = g.mul(&h, curve);
        let hf = h.mul(&f, curve);
        let cyclic = cocycle_gamma(&fg, &h, curve)
            + cocycle_gamma(&gh, &f, curve)
            + cocycle_gamma(&hf, &g, curve);
        if !cyclic.is_zero() {
            cyclic_failures.push(format!("f = {f}; g = {g}; h = {h}; sum = {cyclic}"));
        }
    }

    let lie = LieData::sl2();
    let jacobi_samples = (samples / 2).max(1);
    let mut jacobi_failures = Vec::new();
    for _ in 0..jacobi_samples {
        let x = random_ext(&mut rng, &lie, curve, &cfg);
        let y = random_ext(&mut rng, &lie, curve, &cfg);
        let z = random_ext(&mut rng, &lie, curve, &cfg);
        let sum = jacobi_sum(&x, &y, &z, &lie, curve).expect("sl2 indices in range");
        if !sum.is_zero() {
            jacobi_failures.push(format!("triple with residual central {}", sum.central));
        }
    }
    let pass = antisymmetry_failures.is_empty()
        && cyclic_failures.is_empty()
        && jacobi_failures.is_empty();
    CocycleReport {
        curve: curve.summary(),
        seed,
        samples,
        jacobi_samples,
        antisymmetry_failures,
        cyclic_failures,
        jacobi_failures,
        pass,
    }
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
pub fn jacobi_sum(
    x: &ExtElement,
    y: &ExtElement,
    z: &ExtElement,
    lie: &LieData,
    curve: &CurveSpec,
) -> Result<ExtElement, CocycleError> {
    let mut sum = bracket_ext(&bracket_ext(x, y, lie, curve)?, z, lie, curve)?;
    sum.add(&bracket_ext(&bracket_ext(y, z, lie, curve)?, x, lie, curve)?);
    sum.add(&bracket_ext(&bracket_ext(z, x, lie, curve)?, y, lie, curve)?);
    Ok(sum)
}

/// One mismatching instance of an asserted identity.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub i: i64,
    pub j: i64,
    pub l: u32,
    pub lhs: DiffClass,
    pub rhs: DiffClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub curve: CurveSummary,
    pub range: i64,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
}

/// `t^i d(t^j) = j delta_{i+j,0} omega_0` for `|i|, |j| <= range`.
pub fn prop_tt_check(curve: &CurveSpec, range: i64) -> IdentityReport {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for i in -range..=range {
        for j in -range..=range {
            let lhs = cocycle_gamma(&RingElement::t_pow(i), &RingElement::t_pow(j), curve);
            let rhs = if i + j == 0 {
                DiffClass::single(BasisLabel::Omega0, q(j))
            } else {
                DiffClass::zero()
            };
            checked += 1;
            if lhs != rhs {
                mismatches.push(Mismatch { i, j, l: 0, lhs, rhs });
            }
        }
    }
    let pass = mismatches.is_empty();
    IdentityReport { curve: curve.summary(), range, checked, mismatches, pass }
}

/// `t^i u^l d(t^j u^l) = ((j - i)/2) [t^(i+j-1) u^(2l) dt]` for all
/// `|i|, |j| <= range`, `1 <= l < m`, with `u^(2l)` ring-reduced.
pub fn prop_uu_check(curve: &CurveSpec, range: i64) -> IdentityReport {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for l in 1..curve.m() {
        for i in -range..=range {
            for j in -range..=range {
                let f = RingElement::term(q(1), i, l);
                let g = RingElement::term(q(1), j, l);
                let lhs = cocycle_gamma(&f, &g, curve);
                let w = Differential::from_dt(curve.monomial(q(1), i + j - 1, 2 * l));
                let rhs = reduce_mod_dr(&w, curve).scale(&(q(j - i) / q(2)));
                checked += 1;
                if lhs != rhs {
                    mismatches.push(Mismatch { i, j, l, lhs, rhs });
                }
            }
        }
    }
    let pass = mismatches.is_empty();
    IdentityReport { curve: curve.summary(), range, checked, mismatches, pass }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Match,
    Mismatch,
    Singular,
}

impl RowStatus {
    fn compare(lhs: &DiffClass, rhs: Option<&DiffClass>) -> Self {
        match rhs {
            None => RowStatus::Singular,
            Some(r) if r == lhs => RowStatus::Match,
            Some(_) => RowStatus::Mismatch,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Match => "match",
            RowStatus::Mismatch => "mismatch",
            RowStatus::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropQRow {
    pub i: i64,
    pub j: i64,
    pub l: u32,
    pub lhs: DiffClass,
    /// `(-j / (d + m(i+j))) sum_{k<d} a_k Q_{k+d+i+j-3, l}`, `Q_{k,l} = [t^k u^l dt]`.
    pub rhs_qsum: Option<DiffClass>,
    pub qsum: RowStatus,
    /// Same shape with the grade-`l` recurrence coefficients and shifted indices:
    /// `(-j / (l d + m(i+j))) sum_{k<d} ((m+l)k + m(i+j-d)) a_k Q_{k+i+j-d-1, l}`.
    pub rhs_recurrence: Option<DiffClass>,
    pub recurrence: RowStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropQReport {
    pub curve: CurveSummary,
    pub range: i64,
    pub rows: Vec<PropQRow>,
    pub qsum_matches: usize,
    pub qsum_mismatches: usize,
    pub qsum_singular: usize,
    pub recurrence_matches: usize,
    pub recurrence_mismatches: usize,
}

/// Diagnostic table comparing `[t^i u^l d(t^j)]` with the Q-sum formula; never asserts.
pub fn prop_q_check(curve: &CurveSpec, range: i64) -> PropQReport {
    let m = i64::from(curve.m());
    let d = curve.degree() as i64;
    let q_class = |k: i64, l: u32| reduce_mod_dr(&Differential::dt_term(q(1), k, l), curve);
    let mut rows = Vec::new();
    for l in 1..curve.m() {
        let li = i64::from(l);
        for i in -range..=range {
            for j in -range..=range {
                let lhs = reduce_mod_dr(&Differential::dt_term(q(j), i + j - 1, l), curve);

                let denom = d + m * (i + j);
                let rhs_qsum = (denom != 0).then(|| {
                    let mut acc = DiffClass::zero();
                    for k in 0..d {
                        let a = curve.a(k as usize);
                        if !a.is_zero() {
                            acc += &q_class(k + d + i + j - 3, l).scale(a);
                        }
                    }
                    acc.scale(&(q(-j) / q(denom)))
                });

                let denom_rec = li * d + m * (i + j);
                let rhs_recurrence = (denom_rec != 0).then(|| {
                    let mut acc = DiffClass::zero();
                    for k in 0..d {
                        let a = curve.a(k as usize);
                        if !a.is_zero() {
                            let weight = a * q((m + li) * k + m * (i + j - d));
                            acc += &q_class(k + i + j - d - 1, l).scale(&weight);
                        }
                    }
                    acc.scale(&(q(-j) / q(denom_rec)))
                });

                let qsum = RowStatus::compare(&lhs, rhs_qsum.as_ref());
                let recurrence = RowStatus::compare(&lhs, rhs_recurrence.as_ref());
                rows.push(PropQRow { i, j, l, lhs, rhs_qsum, qsum, rhs_recurrence, recurrence });
            }
        }
    }
    let count = |f: &dyn Fn(&PropQRow) -> bool| rows.iter().filter(|r| f(r)).count();
    PropQReport {
        curve: curve.summary(),
        range,
        qsum_matches: count(&|r| r.qsum == RowStatus::Match),
        qsum_mismatches: count(&|r| r.qsum == RowStatus::Mismatch),
        qsum_singular: count(&|r| r.qsum == RowStatus::Singular),
        recurrence_matches: count(&|r| r.recurrence == RowStatus::Match),
        recurrence_mismatches: count(&|r| r.recurrence == RowStatus::Mismatch),
        rows,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopTerm {
    pub x: String,
    pub f: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub xi: String,
    pub fi: String,
    pub yj: String,
    pub gj: String,
    pub loop_part: Vec<LoopTerm>,
    pub central: DiffClass,
    #[serde(skip)]
    key: (usize, i64, u32, usize, i64, u32),
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutationTable {
    pub curve: CurveSummary,
    pub rows: Vec<TableRow>,
}

/// All brackets `[x (x) t^i u^a, y (x) t^j u^b]` over Lie basis pairs,
/// `i, j` in `degrees` and `a, b` in `grades`.
pub fn commutation_table(
    lie: &LieData,
    curve: &CurveSpec,
    degrees: RangeInclusive<i64>,
    grades: &[u32],
) -> CommutationTable {
    let mut cache: HashMap<(i64, u32, i64, u32), DiffClass> = HashMap::new();
    let mut rows = Vec::new();
    let monos: Vec<(i64, u32)> = grades
        .iter()
        .filter(|&&g| g < curve.m())
        .flat_map(|&g| degrees.clone().map(move |i| (i, g)))
        .collect();
    for x in 0..lie.dim() {
        for &(i, a) in &monos {
            let f = RingElement::term(q(1), i, a);
            for y in 0..lie.dim() {
                for &(j, b) in &monos {
                    let g = RingElement::term(q(1), j, b);
                    let mut loop_part = LoopElement::zero();
                    if lie.bracket_basis(x, y).next().is_some() {
                        let fg = f.mul(&g, curve);
                        for (k, c) in lie.bracket_basis(x, y) {
                            loop_part.add(k, &fg.scale(c));
                        }
                    }
                    let form = lie.form(x, y);
                    let central = if form.is_zero() {
                        DiffClass::zero()
                    } else {
                        cache
                            .entry((i, a, j, b))
                            .or_insert_with(|| cocycle_gamma(&f, &g, curve))
                            .scale(form)
                    };
                    rows.push(TableRow {
                        xi: lie.name(x).to_string(),
                        fi: f.to_string(),
                        yj: lie.name(y).to_string(),
                        gj: g.to_string(),
                        loop_part: loop_part
                            .parts()
                            .map(|(k, e)| LoopTerm { x: lie.name(*k).to_string(), f: e.to_string() })
                            .collect(),
                        central,
                        key: (x, i, a, y, j, b),
                    });
                }
            }
        }
    }
    CommutationTable { curve: curve.summary(), rows }
}

impl CommutationTable {
    /// Rows of the grade-0 block that violate
    /// `[x (x) t^i, y (x) t^j] = [x,y] (x) t^(i+j) + B(x,y) j delta_{i+j,0} omega_0`.
    pub fn affine_violations(&self, lie: &LieData) -> Vec<String> {
        let mut bad = Vec::new();
        for row in &self.rows {
            let (x, i, a, y, j, b) = row.key;
            if a != 0 || b != 0 {
                continue;
            }
            let expected_central = if i + j == 0 {
                DiffClass::single(BasisLabel::Omega0, lie.form(x, y) * q(j))
            } else {
                DiffClass::zero()
            };
            let mut expected_loop = LoopElement::zero();
            for (k, c) in lie.bracket_basis(x, y) {
                expected_loop.add(k, &RingElement::term(c.clone(), i + j, 0));
            }
            let expected_terms: Vec<(String, String)> = expected_loop
                .parts()
                .map(|(k, e)| (lie.name(*k).to_string(), e.to_string()))
                .collect();
            let got_terms: Vec<(String, String)> =
                row.loop_part.iter().map(|t| (t.x.clone(), t.f.clone())).collect();
            if row.central != expected_central || got_terms != expected_terms {
                bad.push(format!("[{} (x) {}, {} (x) {}]", row.xi, row.fi, row.yj, row.gj));
            }
        }
        bad
    }

    pub fn affine_row_count(&self) -> usize {
        self.rows.iter().filter(|r| r.key.2 == 0 && r.key.5 == 0).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }

    /// Aligned plain-text rendering, one bracket per line.
    pub fn render_text(&self) -> String {
        let cells: Vec<[String; 3]> = self
            .rows
            .iter()
            .map(|r| {
                let lhs = format!("[{} (x) {}, {} (x) {}]", r.xi, r.fi, r.yj, r.gj);
                let loop_part = if r.loop_part.is_empty() {
                    "0".to_string()
                } else {
                    r.loop_part
                        .iter()
                        .map(|t| format!("{} (x) ({})", t.x, t.f))
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                [lhs, loop_part, r.central.to_string()]
            })
            .collect();
        let w0 = cells.iter().map(|c| c[0].len()).max().unwrap_or(0);
        let w1 = cells.iter().map(|c| c[1].len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in cells {
            out.push_str(&format!("{:<w0$} = {:<w1$} | {}\n", c[0], c[1], c[2]));
        }
        out
    }
}
