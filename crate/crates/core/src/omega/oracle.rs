use thiserror::Error;

use super::{basis_of, BasisLabel, DiffClass, Window};
use crate::curve::CurveSpec;
use crate::differential::{derive, module_relation, Differential, Generator};
use crate::linalg::{Echelon, Insertion, SparseVec};
use crate::rational::{fmt_rational, q};
use crate::ring::RingElement;

/// Number of times [`oracle_reduce_auto`] enlarges the window before giving up.
pub const MAX_WINDOW_RETRIES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window [{lo}, {hi}] is too small for this reduction", lo = .0.lo, hi = .0.hi)]
    WindowTooSmall(Window),
    #[error("basis classes of grade {grade} are dependent modulo dR: {combination}")]
    BasisDependent { grade: u32, combination: String },
}

/// Raw relations and coordinates for one u-grade inside a window.
pub(super) struct GradeSystem {
    curve: CurveSpec,
    grade: u32,
    window: Window,
    pub relations: Echelon,
}

impl GradeSystem {
    pub fn build(curve: &CurveSpec, grade: u32, window: Window) -> Self {
        let mut sys = GradeSystem { curve: curve.clone(), grade, window, relations: Echelon::new() };
        let d = curve.degree() as i64;
        let rel = module_relation(curve);
        for j in (window.lo - d - 1)..=(window.hi + 1) {
            let mono = RingElement::term(q(1), j, grade);
            for gen in [derive(&mono), rel.mul_ring(&mono, curve)] {
                if let Some(v) = sys.vectorize(&gen) {
                    if !v.is_empty() {
                        sys.relations.insert_untracked(v);
                    }
                }
            }
        }
        sys
    }

    fn column(&self, gen: Generator, exp: i64) -> usize {
        let offset = (exp - self.window.lo) as usize;
        2 * offset + usize::from(gen == Generator::Du)
    }

    /// Coordinates of the grade part of `w`, or `None` if it leaves the window.
    pub fn vectorize(&self, w: &Differential) -> Option<SparseVec> {
        let m = self.curve.m();
        let mut v = SparseVec::new();
        for (gen, mono, c) in w.terms() {
            if Differential::term_grade(gen, mono, m) != self.grade {
                continue;
            }
            if !self.window.contains(mono.exp) {
                return None;
            }
            v.insert(self.column(gen, mono.exp), c.clone());
        }
        Some(v)
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        basis_of(&self.curve)
            .into_iter()
            .filter(|b| b.grade() == self.grade)
            .collect()
    }

    /// Basis vectors reduced modulo the relations, inserted into a fresh
    /// echelon whose combination labels index [`Self::basis`].
    pub fn basis_echelon(&self) -> Result<Echelon, OracleError> {
        let mut echelon = Echelon::new();
        let basis = self.basis();
        for (idx, label) in basis.iter().enumerate() {
            let (k, l) = label.monomial();
            let w = Differential::dt_term(q(1), k, l);
            let mut v = self
                .vectorize(&w)
                .ok_or(OracleError::WindowTooSmall(self.window))?;
            self.relations.reduce(&mut v);
            let label_vec: SparseVec = [(idx, q(1))].into_iter().collect();
            if let Insertion::Dependent(combo) = echelon.insert(v, label_vec) {
                let combination = combo
                    .iter()
                    .map(|(i, c)| format!("{}*{}", fmt_rational(c), basis[*i]))
                    .collect::<Vec<_>>()
                    .join(" + ");
                return Err(OracleError::BasisDependent { grade: self.grade, combination });
            }
        }
        Ok(echelon)
    }
}

/// Class of `w` by exact linear algebra over the window `win`.
///
/// Fails with [`OracleError::WindowTooSmall`] when `w` leaves the window or
/// when the relations available inside it do not reach the basis.
pub fn oracle_reduce(
    w: &Differential,
    curve: &CurveSpec,
    win: Window,
) -> Result<DiffClass, OracleError> {
    let mut out = DiffClass::zero();
    for grade in w.grades(curve.m()) {
        let sys = GradeSystem::build(curve, grade, win);
        let basis_ech = sys.basis_echelon()?;
        out += &reduce_in(&sys, &basis_ech, w)?;
    }
    Ok(out)
}

fn reduce_in(sys: &GradeSystem, basis_ech: &Echelon, w: &Differential) -> Result<DiffClass, OracleError> {
    let mut v = sys.vectorize(w).ok_or(OracleError::WindowTooSmall(sys.window))?;
    sys.relations.reduce(&mut v);
    let combo = basis_ech.reduce(&mut v);
    if !v.is_empty() {
        return Err(OracleError::WindowTooSmall(sys.window));
    }
    let basis = sys.basis();
    let mut out = DiffClass::zero();
    for (idx, c) in combo {
        out.add_coord(basis[idx], c);
    }
    Ok(out)
}

/// Oracle systems for every grade over one fixed window, built once and
/// read-only afterwards, for reducing many differentials on the same curve.
pub struct OracleTable {
    curve: CurveSpec,
    window: Window,
    grades: Vec<(GradeSystem, Result<Echelon, OracleError>)>,
}

impl OracleTable {
    pub fn new(curve: &CurveSpec, window: Window) -> Self {
        let grades = (0..curve.m())
            .map(|g| {
                let mut sys = GradeSystem::build(curve, g, window);
                sys.relations.fully_reduce();
                let ech = sys.basis_echelon();
                (sys, ech)
            })
            .collect();
        OracleTable { curve: curve.clone(), window, grades }
    }

    /// Table whose window covers the default window of any differential
    /// supported in `[lo, hi]`.
    pub fn for_support(curve: &CurveSpec, lo: i64, hi: i64) -> Self {
        Self::new(curve, Window::default_for(Some((lo, hi)), curve))
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Same contract as [`oracle_reduce`] on this table's window.
    pub fn reduce(&self, w: &Differential) -> Result<DiffClass, OracleError> {
        let mut out = DiffClass::zero();
        for grade in w.grades(self.curve.m()) {
            let (sys, ech) = &self.grades[grade as usize];
            let ech = ech.as_ref().map_err(Clone::clone)?;
            out += &reduce_in(sys, ech, w)?;
        }
        Ok(out)
    }

    /// [`Self::reduce`], falling back to [`oracle_reduce_auto`] when `w`
    /// does not fit this window.
    pub fn reduce_auto(&self, w: &Differential) -> Result<DiffClass, OracleError> {
        match self.reduce(w) {
            Err(OracleError::WindowTooSmall(_)) => oracle_reduce_auto(w, &self.curve),
            other => other,
        }
    }
}

/// [`oracle_reduce`] on the default window, enlarging it on
/// [`OracleError::WindowTooSmall`] up to [`MAX_WINDOW_RETRIES`] times.
pub fn oracle_reduce_auto(w: &Differential, curve: &CurveSpec) -> Result<DiffClass, OracleError> {
    let mut win = Window::default_for(w.exp_range(), curve);
    let mut attempt = 0;
    loop {
        match oracle_reduce(w, curve, win) {
            Err(OracleError::WindowTooSmall(_)) if attempt < MAX_WINDOW_RETRIES => {
                attempt += 1;
                win = win.enlarged();
            }
            other => return other,
        }
    }
}
