//! Sweeps of the nested prefix family against the extremal candidate and
//! the closed forms.

use alloc::vec::Vec;

use crate::bounds::{clique_deficit_bound, clique_deficit_ceiling};
use crate::digraph::{are_isomorphic, clique_number, CanonicalForm, Digraph};
use crate::enumerate::{brute_max_rho, shards, Shard, VertexCap, BRUTE_FORCE_LIMIT, TIE_TOLERANCE};
use crate::extremal::{build_dsharp, rho_closed_form, rho_dsharp, ArcDecomposition, ClosedFormCase, ExtremalFamily};
use crate::spectral::{spectral_radius, SpectralOptions};
use crate::{Error, Result};

/// Which known result covers an arc count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ArcCase {
    Complete,
    CompletePlusArc,
    CompleteMinusPair,
    CompleteMinusArc,
    /// `1 < t < 2k - 2`
    ConjectureRange,
}

impl ArcCase {
    pub fn of(d: ArcDecomposition) -> Self {
        match rho_closed_form(d.e).map(|c| c.case) {
            Some(ClosedFormCase::Complete) => ArcCase::Complete,
            Some(ClosedFormCase::CompletePlusArc) => ArcCase::CompletePlusArc,
            Some(ClosedFormCase::CompleteMinusPair) => ArcCase::CompleteMinusPair,
            Some(ClosedFormCase::CompleteMinusArc) => ArcCase::CompleteMinusArc,
            None => ArcCase::ConjectureRange,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ArcCase::Complete => "complete",
            ArcCase::CompletePlusArc => "complete-plus-arc",
            ArcCase::CompleteMinusPair => "complete-minus-pair",
            ArcCase::CompleteMinusArc => "complete-minus-arc",
            ArcCase::ConjectureRange => "conjecture-range",
        }
    }
}

/// Running maximum of a sweep together with every form within
/// [`TIE_TOLERANCE`] of it.
///
/// Merging is associative and commutative: the final tie set is always
/// "every observed form within tolerance of the overall maximum", sorted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepAccumulator {
    pub candidates: u64,
    best: Option<f64>,
    near: Vec<(CanonicalForm, f64)>,
}

impl SweepAccumulator {
    pub fn observe(&mut self, form: &CanonicalForm, rho: f64) {
        self.candidates += 1;
        let best = self.best.map_or(rho, |b| b.max(rho));
        if rho >= best - TIE_TOLERANCE {
            self.near.push((form.clone(), rho));
        }
        if Some(best) != self.best {
            self.best = Some(best);
            self.near.retain(|(_, r)| *r >= best - TIE_TOLERANCE);
        }
    }

    pub fn merge(mut self, other: SweepAccumulator) -> SweepAccumulator {
        self.candidates += other.candidates;
        self.near.extend(other.near);
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        if let Some(best) = self.best {
            self.near.retain(|(_, r)| *r >= best - TIE_TOLERANCE);
        }
        self.near.sort_by(|a, b| a.0.cmp(&b.0));
        self
    }

    pub fn rho_max(&self) -> Option<f64> {
        self.best
    }

    /// Forms attaining the maximum, in enumeration order.
    pub fn argmax(&self) -> Vec<CanonicalForm> {
        let mut forms: Vec<CanonicalForm> = self.near.iter().map(|(c, _)| c.clone()).collect();
        forms.sort_by_key(|c| (c.vertex_count(), c.prefix_lengths().to_vec()));
        forms
    }
}

/// Sweeps one shard.
pub fn sweep_shard(shard: &Shard, opts: SpectralOptions) -> Result<SweepAccumulator> {
    let mut acc = SweepAccumulator::default();
    let mut failure = None;
    shard.for_each(|form| {
        if failure.is_some() {
            return;
        }
        match spectral_radius(&form.expand(), opts) {
            Ok(r) => acc.observe(form, r.rho),
            Err(e) => failure = Some(e),
        }
    });
    failure.map_or(Ok(acc), Err)
}

/// Outcome of sweeping the nested prefix family for one arc count.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    pub e: u64,
    pub k: u64,
    pub t: u64,
    pub case: ArcCase,
    pub n_candidates: u64,
    /// `None` when the family is empty (e.g. three arcs).
    pub rho_max: Option<f64>,
    pub argmax: Vec<CanonicalForm>,
    /// Argmax forms up to isomorphism and reversal of all arcs.
    pub argmax_classes: usize,
    pub dsharp_rho: f64,
    pub dsharp_in_family: bool,
    /// Every maximizer is the extremal candidate, with its odd arc in
    /// either direction.
    pub conjecture_holds: bool,
    /// Filled in by callers that time the sweep.
    pub elapsed_ms: Option<u64>,
}

fn same_up_to_reversal(a: &Digraph, b: &Digraph) -> bool {
    are_isomorphic(a, b) || are_isomorphic(a, &b.transpose())
}

fn count_classes(graphs: &[Digraph]) -> usize {
    let mut reps: Vec<&Digraph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| same_up_to_reversal(r, g)) {
            reps.push(g);
        }
    }
    reps.len()
}

impl VerificationReport {
    /// Builds the report from a finished sweep.
    pub fn from_sweep(e: u64, acc: &SweepAccumulator) -> Result<Self> {
        let dec = ArcDecomposition::new(e)?;
        let dsharp = build_dsharp(e)?;
        let argmax = acc.argmax();
        let graphs: Vec<Digraph> = argmax.iter().map(CanonicalForm::expand).collect();
        let conjecture_holds = !graphs.is_empty() && graphs.iter().all(|g| same_up_to_reversal(g, &dsharp));
        Ok(VerificationReport {
            e,
            k: dec.k,
            t: dec.t,
            case: ArcCase::of(dec),
            n_candidates: acc.candidates,
            rho_max: acc.rho_max(),
            argmax_classes: count_classes(&graphs),
            argmax,
            dsharp_rho: rho_dsharp(e)?,
            dsharp_in_family: dec.t != 1,
            conjecture_holds,
            elapsed_ms: None,
        })
    }
}

/// Sequential sweep of every shard under the default vertex cap.
pub fn verify_conjecture(e: u64, opts: SpectralOptions) -> Result<VerificationReport> {
    verify_conjecture_with(e, VertexCap::Default, opts)
}

pub fn verify_conjecture_with(e: u64, cap: VertexCap, opts: SpectralOptions) -> Result<VerificationReport> {
    let mut acc = SweepAccumulator::default();
    for shard in shards(e, cap)? {
        acc = acc.merge(sweep_shard(&shard, opts)?);
    }
    VerificationReport::from_sweep(e, &acc)
}

impl ExtremalFamily {
    /// Whether `d`, ignoring isolated vertices, belongs to this family.
    pub fn matches(&self, d: &Digraph) -> bool {
        let d = d.remove_isolated();
        match *self {
            ExtremalFamily::CompletePlusArc { order } => {
                d.arc_count() == order * (order - 1) + 1 && clique_number(&d) == order
            }
            _ => are_isomorphic(&d, &self.build().remove_isolated()),
        }
    }
}

/// Closed-form check for one arc count.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedFormCheck {
    pub e: u64,
    pub k: u64,
    pub t: u64,
    pub case: ClosedFormCase,
    pub closed_form: f64,
    pub families: Vec<ExtremalFamily>,
    /// Power-iteration radius of each family representative.
    pub family_rho: Vec<f64>,
    /// Sweep maximum and whether its maximizers are exactly the families;
    /// absent when the maximizers are not strongly connected (`t = 1`).
    pub sweep_rho: Option<f64>,
    pub sweep_matches: Option<bool>,
    /// Brute-force maximum over `k + 1` vertices when the subset budget
    /// allows, and whether every maximizer is in a family and every family
    /// is hit.
    pub brute_rho: Option<f64>,
    pub brute_matches: Option<bool>,
    pub passed: bool,
}

/// Tolerance for closed-form agreement.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-9;

fn binomial_fits(n: usize, e: u64) -> bool {
    let width = (n * (n - 1)) as u64;
    if e > width {
        return false;
    }
    let r = e.min(width - e) as u128;
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (width as u128 - i) / (i + 1);
        if acc > BRUTE_FORCE_LIMIT {
            return false;
        }
    }
    true
}

fn families_match(families: &[ExtremalFamily], graphs: &[Digraph]) -> bool {
    graphs.iter().all(|g| families.iter().any(|f| f.matches(g)))
        && families.iter().all(|f| graphs.iter().any(|g| f.matches(g)))
}

/// Checks the closed form for `e` against the family representatives, the
/// sweep and (budget permitting) brute force.
pub fn check_closed_form(e: u64, opts: SpectralOptions) -> Result<Option<ClosedFormCheck>> {
    let Some(closed) = rho_closed_form(e) else { return Ok(None) };
    let dec = ArcDecomposition::new(e)?;
    let close = |r: f64| (r - closed.rho).abs() <= CLOSED_FORM_TOLERANCE;

    let mut family_rho = Vec::new();
    for f in &closed.families {
        family_rho.push(spectral_radius(&f.build(), opts)?.rho);
    }
    let mut passed = family_rho.iter().all(|&r| close(r));

    let (mut sweep_rho, mut sweep_matches) = (None, None);
    if dec.t != 1 {
        let report = verify_conjecture(e, opts)?;
        let graphs: Vec<Digraph> = report.argmax.iter().map(CanonicalForm::expand).collect();
        let matches = families_match(&closed.families, &graphs);
        passed &= report.rho_max.is_some_and(close) && matches;
        sweep_rho = report.rho_max;
        sweep_matches = Some(matches);
    }

    let (mut brute_rho, mut brute_matches) = (None, None);
    let n = dec.k as usize + 1;
    if n <= 8 && binomial_fits(n, e) {
        let brute = brute_max_rho(e, n, opts)?;
        let matches = families_match(&closed.families, &brute.argmax);
        passed &= close(brute.rho_max) && matches;
        brute_rho = Some(brute.rho_max);
        brute_matches = Some(matches);
    }

    Ok(Some(ClosedFormCheck {
        e,
        k: dec.k,
        t: dec.t,
        case: closed.case,
        closed_form: closed.rho,
        families: closed.families,
        family_rho,
        sweep_rho,
        sweep_matches,
        brute_rho,
        brute_matches,
        passed,
    }))
}

/// Every closed-form arc count with `2 <= k <= k_max`:
/// `t ∈ {0, 1, 2k-2, 2k-1}`.
pub fn verify_closed_forms(k_max: u64, opts: SpectralOptions) -> Result<Vec<ClosedFormCheck>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("closed-form checks need k_max >= 2".into()));
    }
    let mut out = Vec::new();
    for k in 2..=k_max {
        for t in [0, 1, 2 * k - 2, 2 * k - 1] {
            if let Some(check) = check_closed_form(k * (k - 1) + t, opts)? {
                out.push(check);
            }
        }
    }
    Ok(out)
}

/// How the large clique regime check ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RegimeMode {
    /// `k > 4t⁴ + 4`: the clique deficit bound is checked below `k - 1`,
    /// which is below the candidate's radius.
    BoundChain,
    /// Outside the regime: the family is swept and the candidate must win.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeficitStep {
    pub s: u64,
    pub bound: f64,
    pub ceiling: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegimeCheck {
    pub e: u64,
    pub k: u64,
    pub t: u64,
    pub in_regime: bool,
    pub mode: RegimeMode,
    pub dsharp_rho: f64,
    /// Bound chain entries for `1 <= s < √t + 1`.
    pub chain: Vec<DeficitStep>,
    pub sweep: Option<VerificationReport>,
    pub passed: bool,
}

/// Large clique regime check for `e = k(k-1) + t`, `t >= 2`.
pub fn verify_large_clique_regime(e: u64, opts: SpectralOptions) -> Result<RegimeCheck> {
    let dec = ArcDecomposition::new(e)?;
    if dec.t < 2 {
        return Err(Error::InvalidArgument(alloc::format!("regime check needs t >= 2, e = {e} has t = {}", dec.t)));
    }
    let dsharp_rho = rho_dsharp(e)?;
    let in_regime = dec.in_large_clique_regime();
    let mut check = RegimeCheck {
        e,
        k: dec.k,
        t: dec.t,
        in_regime,
        mode: RegimeMode::Enumeration,
        dsharp_rho,
        chain: Vec::new(),
        sweep: None,
        passed: false,
    };
    if in_regime {
        check.mode = RegimeMode::BoundChain;
        let limit = libm::sqrt(dec.t as f64) + 1.0;
        let below = (dec.k - 1) as f64;
        let mut ok = below < dsharp_rho;
        for s in (1..).take_while(|&s| (s as f64) < limit) {
            let bound = clique_deficit_bound(dec.k, dec.t, s)?;
            let ceiling = clique_deficit_ceiling(dec.k, s);
            ok &= bound <= ceiling && bound < below;
            check.chain.push(DeficitStep { s, bound, ceiling });
        }
        check.passed = ok;
    } else {
        let report = verify_conjecture(e, opts)?;
        check.passed = report.conjecture_holds;
        check.sweep = Some(report);
    }
    Ok(check)
}

/// One brute-force run inside an [`OracleCheck`].
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleRun {
    pub n: usize,
    pub subsets: u64,
    pub rho_max: f64,
    pub argmax_count: usize,
}

/// Brute force over all arc subsets on few vertices against the sweep.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleCheck {
    pub e: u64,
    pub k: u64,
    pub t: u64,
    pub runs: Vec<OracleRun>,
    /// Vertex counts skipped because the arcs do not fit or the subset
    /// budget is exceeded.
    pub skipped: Vec<usize>,
    pub brute_rho: Option<f64>,
    pub sweep_rho: Option<f64>,
    /// Brute force and sweep agree; only meaningful for `t != 1`.
    pub agree: Option<bool>,
    /// The brute-force maximizers are exactly the closed-form families,
    /// when a closed form exists and its digraphs fit.
    pub families_match: Option<bool>,
    pub passed: bool,
}

/// Runs [`brute_max_rho`] for every `n` in `2..=max_vertices` that fits the
/// budget and compares the overall maximum with the sweep. For `t = 1` the
/// sweep is not comparable and the closed form is checked instead.
pub fn compare_with_brute_force(e: u64, max_vertices: usize, opts: SpectralOptions) -> Result<OracleCheck> {
    let dec = ArcDecomposition::new(e)?;
    let (mut runs, mut skipped) = (Vec::new(), Vec::new());
    let mut best: Option<f64> = None;
    let mut graphs: Vec<Digraph> = Vec::new();
    for n in 2..=max_vertices.min(8) {
        if !binomial_fits(n, e) {
            skipped.push(n);
            continue;
        }
        let b = brute_max_rho(e, n, opts)?;
        runs.push(OracleRun { n, subsets: b.subsets, rho_max: b.rho_max, argmax_count: b.argmax.len() });
        match best {
            Some(r) if b.rho_max < r - TIE_TOLERANCE => {}
            Some(r) if b.rho_max <= r + TIE_TOLERANCE => {
                best = Some(r.max(b.rho_max));
                graphs.extend(b.argmax);
            }
            _ => {
                best = Some(b.rho_max);
                graphs = b.argmax;
            }
        }
    }
    let sweep_rho = if e >= 2 { verify_conjecture(e, opts)?.rho_max } else { None };
    let close = |a: f64, b: f64| (a - b).abs() <= TIE_TOLERANCE;
    let agree = match (dec.t != 1, best, sweep_rho) {
        (true, Some(b), Some(s)) => Some(close(b, s)),
        (true, Some(_), None) => Some(false),
        _ => None,
    };
    let closed = rho_closed_form(e);
    let families_match = match (&closed, best) {
        (Some(c), Some(_)) if c.families.iter().all(|f| f.build().remove_isolated().vertex_count() <= max_vertices) => {
            Some(families_match(&c.families, &graphs))
        }
        _ => None,
    };
    let mut passed = best.is_some() && agree != Some(false) && families_match != Some(false);
    if dec.t == 1 {
        passed &= matches!((&closed, best), (Some(c), Some(b)) if close(c.rho, b)) && families_match == Some(true);
    }
    Ok(OracleCheck { e, k: dec.k, t: dec.t, runs, skipped, brute_rho: best, sweep_rho, agree, families_match, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SpectralOptions {
        SpectralOptions::default()
    }

    #[test]
    fn conjecture_examples() {
        let r = verify_conjecture(8, opts()).unwrap();
        assert!(r.conjecture_holds);
        assert_eq!(r.argmax.len(), 1);
        assert_eq!(r.case, ArcCase::ConjectureRange);

        let r = verify_conjecture(10, opts()).unwrap();
        assert_eq!(r.case, ArcCase::CompleteMinusPair);
        let minus_pair = ExtremalFamily::CompleteMinusPair { order: 4 };
        assert!(r.argmax.iter().all(|c| minus_pair.matches(&c.expand())));

        let r = verify_conjecture(30, opts()).unwrap();
        assert_eq!(r.argmax, [CanonicalForm::from_digraph(&Digraph::complete(6)).unwrap()]);
        assert_eq!(r.rho_max, Some(5.0));
    }

    #[test]
    fn odd_arc_in_either_direction() {
        let r = verify_conjecture(9, opts()).unwrap();
        assert_eq!(r.argmax.len(), 2);
        assert_eq!(r.argmax_classes, 1);
        assert!(r.conjecture_holds);
    }

    #[test]
    fn empty_family() {
        let r = verify_conjecture(3, opts()).unwrap();
        assert_eq!((r.n_candidates, r.rho_max), (0, None));
        assert!(!r.conjecture_holds);
        assert!(!r.dsharp_in_family);
    }

    #[test]
    fn accumulator_merge_is_order_free() {
        let forms: Vec<CanonicalForm> = crate::enumerate::enumerate_dss(11).unwrap();
        let rhos: Vec<f64> = forms.iter().map(|c| spectral_radius(&c.expand(), opts()).unwrap().rho).collect();
        let fold = |idx: &[usize]| {
            let mut acc = SweepAccumulator::default();
            for &i in idx {
                acc.observe(&forms[i], rhos[i]);
            }
            acc
        };
        let all: Vec<usize> = (0..forms.len()).collect();
        let whole = fold(&all).merge(SweepAccumulator::default());
        let rev: Vec<usize> = all.iter().rev().copied().collect();
        let (a, b) = rev.split_at(3);
        let split = fold(b).merge(fold(a));
        assert_eq!(whole, split);
        assert_eq!(whole.argmax().len(), 2);
    }

    #[test]
    fn closed_forms_small() {
        for c in verify_closed_forms(4, opts()).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn closed_form_three_arcs_two_families() {
        let c = check_closed_form(3, opts()).unwrap().unwrap();
        assert_eq!(c.brute_matches, Some(true));
        assert_eq!(c.families.len(), 2);
        assert!(c.passed);
    }

    #[test]
    fn oracle_comparison() {
        let c = compare_with_brute_force(8, 4, opts()).unwrap();
        assert!(c.passed && c.agree == Some(true));
        assert_eq!(c.runs.iter().map(|r| r.n).collect::<Vec<_>>(), [4]);
        assert_eq!(c.skipped, [2, 3]);
        let c = compare_with_brute_force(3, 4, opts()).unwrap();
        assert!(c.passed && c.agree.is_none() && c.families_match == Some(true));
        assert_eq!(c.sweep_rho, None);
    }

    #[test]
    fn regime_modes() {
        let r = verify_large_clique_regime(4694, opts()).unwrap();
        assert_eq!(r.mode, RegimeMode::BoundChain);
        assert!(r.passed);
        assert_eq!(r.chain.len(), 2);
        assert!(r.chain[0].bound < 68.0 && 68.0 < r.dsharp_rho);

        for e in [8u64, 14] {
            let r = verify_large_clique_regime(e, opts()).unwrap();
            assert_eq!(r.mode, RegimeMode::Enumeration);
            assert!(r.passed, "e={e}");
        }
        assert!(verify_large_clique_regime(12, opts()).is_err());
    }
}
