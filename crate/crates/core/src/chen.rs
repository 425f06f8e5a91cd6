//! Chen iterated integrals of `A`-valued 1-forms along piecewise-smooth paths.
//!
//! All iterated integrals along a path come out of one computation: the
//! parallel transport `dF = F · Σ Aᵢ ωᵢ`, `F(start) = 1`, solved on series
//! in noncommuting letters `Aᵢ` truncated by word length. Writing
//! `ωᵢ = cᵢ(t) dt` on the pulled-back path, the coefficient equations are
//! `F[w·i]' = F[w] · cᵢ(t)`, so `F[i₁…i_r] = ∫_{t₁≤…≤t_r} c_{i₁}(t₁)…c_{i_r}(t_r)`.
//! Each segment is stepped with classical fourth-order Runge–Kutta; `A`
//! coefficients ride along componentwise on the monomial basis.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::{check_same, Elem, FloatElem, Signature};
use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;
use crate::report::{CheckReport, ReportValue};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// `center + radius · e^{i(start + sweep·t)}`, `t ∈ [0, 1]`.
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl Segment {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc { center, radius, start, sweep } => {
                center + Complex64::from_polar(radius, start + sweep * t)
            }
        }
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { center, .. } => Complex64::new(0.0, self.sweep()) * (self.point(t) - center),
        }
    }

    fn sweep(&self) -> f64 {
        match *self {
            Segment::Arc { sweep, .. } => sweep,
            Segment::Line { .. } => 0.0,
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, start, sweep } => Segment::Arc {
                center,
                radius,
                start: start + sweep,
                sweep: -sweep,
            },
        }
    }

    /// Exact distance from `p` to the image of the segment.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    ((p - from) * d.conj()).re / len2
                };
                (p - self.point(t.clamp(0.0, 1.0))).norm()
            }
            Segment::Arc { center, radius, start, sweep } => {
                let rel = p - center;
                let ends = (p - self.point(0.0)).norm().min((p - self.point(1.0)).norm());
                if rel.norm() == 0.0 {
                    return radius;
                }
                let (lo, span) = if sweep >= 0.0 { (start, sweep) } else { (start + sweep, -sweep) };
                let offset = (rel.arg() - lo).rem_euclid(2.0 * PI);
                if span >= 2.0 * PI || offset <= span {
                    (rel.norm() - radius).abs()
                } else {
                    ends
                }
            }
        }
    }
}

/// A piecewise-smooth path; a path without segments is the constant path at `start`.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    start: Complex64,
    segments: Vec<Segment>,
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0)
}

impl Path {
    pub fn point(z: Complex64) -> Self {
        Path { start: z, segments: Vec::new() }
    }

    pub fn segment(from: Complex64, to: Complex64) -> Self {
        Path {
            start: from,
            segments: vec![Segment::Line { from, to }],
        }
    }

    pub fn arc(center: Complex64, radius: f64, start: f64, sweep: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !sweep.is_finite() {
            return Err(Error::InvalidPath(format!("arc radius {radius}, sweep {sweep}")));
        }
        let seg = Segment::Arc { center, radius, start, sweep };
        Ok(Path {
            start: seg.point(0.0),
            segments: vec![seg],
        })
    }

    /// Full counterclockwise circle starting at angle `base_angle`.
    pub fn circle(center: Complex64, radius: f64, base_angle: f64) -> Result<Self> {
        Self::arc(center, radius, base_angle, 2.0 * PI)
    }

    pub fn concat(parts: &[Path]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidPath("empty concatenation".into()));
        };
        let mut out = first.clone();
        for p in &parts[1..] {
            if !close(out.end(), p.start) {
                return Err(Error::InvalidPath(format!(
                    "segments do not chain: {} then {}",
                    out.end(),
                    p.start
                )));
            }
            out.segments.extend(p.segments.iter().cloned());
        }
        Ok(out)
    }

    pub fn then(&self, other: &Path) -> Result<Self> {
        Self::concat(&[self.clone(), other.clone()])
    }

    pub fn reverse(&self) -> Self {
        Path {
            start: self.end(),
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// `α β α⁻¹ β⁻¹` for two loops at the same base point.
    pub fn commutator(alpha: &Path, beta: &Path) -> Result<Self> {
        if !alpha.is_closed() || !beta.is_closed() || !close(alpha.start, beta.start) {
            return Err(Error::InvalidPath(
                "commutator needs two loops with a common base point".into(),
            ));
        }
        Self::concat(&[alpha.clone(), beta.clone(), alpha.reverse(), beta.reverse()])
    }

    pub fn start(&self) -> Complex64 {
        self.start
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().map_or(self.start, |s| s.point(1.0))
    }

    pub fn is_closed(&self) -> bool {
        close(self.start, self.end())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(p))
            .fold((self.start - p).norm(), f64::min)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "point({})", self.start);
        }
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| match s {
                Segment::Line { from, to } => format!("seg({from},{to})"),
                Segment::Arc { center, radius, start, sweep } => {
                    format!("arc({center},{radius},{start},{sweep})")
                }
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

/// A meromorphic 1-form `φ(z) dz` with `A` coefficients.
#[derive(Clone, Debug)]
pub enum Form {
    Dz,
    /// `dz / (z - c)`
    Pole(Complex64),
    /// `df / f`
    Dlog(RationalFunction),
    /// `d log(1 - a z^n)`
    Binomial { a: FloatElem, n: i64 },
}

impl Form {
    fn signature(&self) -> Option<&Arc<Signature>> {
        match self {
            Form::Dlog(f) => Some(f.signature()),
            Form::Binomial { a, .. } => Some(a.signature()),
            Form::Dz | Form::Pole(_) => None,
        }
    }

    /// `φ(z)` in `ω = φ(z) dz`.
    pub fn coeff(&self, sig: &Arc<Signature>, z: Complex64) -> Result<FloatElem> {
        match self {
            Form::Dz => Ok(Elem::one(sig)),
            Form::Pole(c) => Ok(Elem::constant(sig, Complex64::new(1.0, 0.0) / (z - c))),
            Form::Dlog(f) => f.dlog_eval(&z),
            Form::Binomial { a, n } => {
                let zn = z.powi(*n as i32);
                let denom = (&Elem::one(sig) - &a.scale(&zn)).invert()?;
                let dnum = a.scale(&(-(*n as f64) * z.powi(*n as i32 - 1)));
                Ok(&dnum * &denom)
            }
        }
    }

    /// Finite points where the form is singular.
    pub fn poles(&self) -> Vec<Complex64> {
        match self {
            Form::Dz => Vec::new(),
            Form::Pole(c) => vec![*c],
            Form::Dlog(f) => f
                .support()
                .iter()
                .filter_map(|p| p.finite().map(Scalar::to_c64))
                .collect(),
            Form::Binomial { a, n } => {
                let mut out = Vec::new();
                if *n < 0 {
                    out.push(Complex64::zero());
                }
                let a0 = a.reduce();
                if a0 != Complex64::zero() && *n != 0 {
                    // z^n = 1/a0
                    let m = n.unsigned_abs() as f64;
                    let target = if *n > 0 { 1.0 / a0 } else { a0 };
                    let root = target.powf(1.0 / m);
                    for k in 0..n.unsigned_abs() {
                        out.push(root * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Dz => f.write_str("dz"),
            Form::Pole(c) => write!(f, "dz/(z-({c}))"),
            Form::Dlog(g) => write!(f, "dlog({g})"),
            Form::Binomial { a, n } => write!(f, "dlog(1-({a})*z^{n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub steps_per_segment: usize,
    pub tolerance: f64,
    /// Minimum allowed distance between the path and any pole.
    pub exclusion: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            steps_per_segment: 1024,
            tolerance: 1e-8,
            exclusion: 1e-6,
        }
    }
}

impl QuadratureConfig {
    pub fn new(steps_per_segment: usize, tolerance: f64) -> Result<Self> {
        let cfg = QuadratureConfig {
            steps_per_segment,
            tolerance,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_segment < 1 || !(self.tolerance > 0.0) || !(self.exclusion >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "quadrature needs steps >= 1 and tolerance > 0 (got {}, {})",
                self.steps_per_segment, self.tolerance
            )));
        }
        Ok(())
    }
}

/// Prefix-closed set of words over letters `0..alphabet`.
#[derive(Clone, Debug)]
pub struct WordSet {
    alphabet: usize,
    words: Vec<Vec<usize>>,
    parent: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl WordSet {
    /// Every word of length at most `max_len`.
    pub fn all(alphabet: usize, max_len: usize) -> Self {
        let mut words = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let next: Vec<Vec<usize>> = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..alphabet).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            layer = next;
        }
        Self::from_words(alphabet, words)
    }

    /// The prefixes of a single word.
    pub fn prefixes(alphabet: usize, word: &[usize]) -> Self {
        Self::from_words(alphabet, (0..=word.len()).map(|k| word[..k].to_vec()).collect())
    }

    fn from_words(alphabet: usize, words: Vec<Vec<usize>>) -> Self {
        let index: HashMap<Vec<usize>, usize> =
            words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let parent = words
            .iter()
            .map(|w| w.split_last().map_or(0, |(_, p)| index[p]))
            .collect();
        WordSet { alphabet, words, parent, index }
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Word-indexed transport coefficients; the empty word carries 1.
#[derive(Clone, Debug)]
pub struct TruncatedWordSeries {
    sig: Arc<Signature>,
    words: Arc<WordSet>,
    coeffs: Vec<FloatElem>,
}

impl TruncatedWordSeries {
    pub fn identity(sig: &Arc<Signature>, words: Arc<WordSet>) -> Self {
        let mut coeffs = vec![Elem::zero(sig); words.words.len()];
        coeffs[0] = Elem::one(sig);
        TruncatedWordSeries { sig: sig.clone(), words, coeffs }
    }

    pub fn alphabet_size(&self) -> usize {
        self.words.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.words.max_len()
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// Coefficient of a word (letters are 0-based form indices).
    pub fn coeff(&self, word: &[usize]) -> Option<&FloatElem> {
        self.words.index.get(word).map(|&k| &self.coeffs[k])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &FloatElem)> {
        self.words.words.iter().map(Vec::as_slice).zip(&self.coeffs)
    }

    fn get(&self, word: &[usize]) -> Result<&FloatElem> {
        self.coeff(word)
            .ok_or_else(|| Error::InvalidInput(format!("word {word:?} not tracked")))
    }

    /// Concatenation product `(F·G)[w] = Σ_{uv = w} F[u] G[v]`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for w in &self.words.words {
            let mut acc = Elem::zero(&self.sig);
            for cut in 0..=w.len() {
                acc = &acc + &(self.get(&w[..cut])? * other.get(&w[cut..])?);
            }
            coeffs.push(acc);
        }
        Ok(TruncatedWordSeries {
            sig: self.sig.clone(),
            words: self.words.clone(),
            coeffs,
        })
    }

    /// Largest coefficient deviation from another series on the same words.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Largest violation of `F[u]F[v] = Σ_{w ∈ u ⧢ v} F[w]` over tracked pairs.
    pub fn shuffle_defect(&self) -> Result<f64> {
        let l = self.max_len();
        let mut worst: f64 = 0.0;
        for u in &self.words.words {
            for v in &self.words.words {
                if u.is_empty() || v.is_empty() || u.len() + v.len() > l {
                    continue;
                }
                let mut sum = Elem::zero(&self.sig);
                for w in shuffles(u, v) {
                    sum = &sum + self.get(&w)?;
                }
                let prod = self.get(u)? * self.get(v)?;
                worst = worst.max(prod.max_abs_diff(&sum));
            }
        }
        Ok(worst)
    }
}

/// All interleavings of `u` and `v`, with multiplicity.
pub fn shuffles(u: &[usize], v: &[usize]) -> Vec<Vec<usize>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in shuffles(&u[..u.len() - 1], v) {
        w.push(u[u.len() - 1]);
        out.push(w);
    }
    for mut w in shuffles(u, &v[..v.len() - 1]) {
        w.push(v[v.len() - 1]);
        out.push(w);
    }
    out
}

fn common_signature(forms: &[Form]) -> Result<Arc<Signature>> {
    let mut sig: Option<&Arc<Signature>> = None;
    for f in forms {
        if let Some(s) = f.signature() {
            match sig {
                Some(prev) => check_same(prev, s)?,
                None => sig = Some(s),
            }
        }
    }
    Ok(sig.cloned().unwrap_or_else(Signature::trivial))
}

fn check_poles(forms: &[Form], path: &Path, cfg: &QuadratureConfig) -> Result<()> {
    for form in forms {
        for pole in form.poles() {
            let d = path.distance_to(pole);
            if d <= cfg.exclusion {
                return Err(Error::PoleProximity {
                    pole: pole.to_string(),
                    distance: d,
                });
            }
        }
    }
    Ok(())
}

/// Solves the transport equation on the given words.
pub fn transport_words(
    forms: &[Form],
    words: Arc<WordSet>,
    path: &Path,
    cfg: &QuadratureConfig,
) -> Result<TruncatedWordSeries> {
    cfg.validate()?;
    if words.alphabet != forms.len() {
        return Err(Error::InvalidInput(format!(
            "{} forms for an alphabet of {}",
            forms.len(),
            words.alphabet
        )));
    }
    let sig = common_signature(forms)?;
    check_poles(forms, path, cfg)?;
    let mut series = TruncatedWordSeries::identity(&sig, words);
    let n = cfg.steps_per_segment;
    let h = 1.0 / n as f64;
    for seg in path.segments() {
        let connection = |t: f64| -> Result<Vec<FloatElem>> {
            let z = seg.point(t);
            let dz = seg.derivative(t);
            forms.iter().map(|f| Ok(f.coeff(&sig, z)?.scale(&dz))).collect()
        };
        let mut c0 = connection(0.0)?;
        for step in 0..n {
            let t = step as f64 * h;
            let cm = connection(t + 0.5 * h)?;
            let c1 = connection(if step + 1 == n { 1.0 } else { t + h })?;
            rk4_step(&mut series, &c0, &cm, &c1, h);
            c0 = c1;
        }
    }
    Ok(series)
}

/// `D(F)[w·i] = F[w] · cᵢ`, `D(F)[∅] = 0`.
fn derivative(words: &WordSet, zero: &FloatElem, f: &[FloatElem], c: &[FloatElem]) -> Vec<FloatElem> {
    words
        .words
        .iter()
        .enumerate()
        .map(|(k, w)| match w.last() {
            None => zero.clone(),
            Some(&i) => &f[words.parent[k]] * &c[i],
        })
        .collect()
}

fn axpy(base: &[FloatElem], k: &[FloatElem], a: f64) -> Vec<FloatElem> {
    let a = Complex64::new(a, 0.0);
    base.iter().zip(k).map(|(b, k)| b + &k.scale(&a)).collect()
}

fn rk4_step(
    series: &mut TruncatedWordSeries,
    c0: &[FloatElem],
    cm: &[FloatElem],
    c1: &[FloatElem],
    h: f64,
) {
    let words = &series.words;
    let zero = Elem::zero(&series.sig);
    let f = &series.coeffs;
    let k1 = derivative(words, &zero, f, c0);
    let k2 = derivative(words, &zero, &axpy(f, &k1, 0.5 * h), cm);
    let k3 = derivative(words, &zero, &axpy(f, &k2, 0.5 * h), cm);
    let k4 = derivative(words, &zero, &axpy(f, &k3, h), c1);
    let w = Complex64::new(h / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    for (idx, out) in series.coeffs.iter_mut().enumerate() {
        let incr = &(&k1[idx] + &k2[idx].scale(&two)) + &(&k3[idx].scale(&two) + &k4[idx]);
        *out = &*out + &incr.scale(&w);
    }
}

/// Transport truncated at word length `max_len` over all words.
pub fn transport(
    forms: &[Form],
    path: &Path,
    max_len: usize,
    cfg: &QuadratureConfig,
) -> Result<TruncatedWordSeries> {
    if max_len < 1 {
        return Err(Error::InvalidInput("word length must be at least 1".into()));
    }
    transport_words(forms, Arc::new(WordSet::all(forms.len(), max_len)), path, cfg)
}

/// `∫_γ ω₁ ∘ … ∘ ω_r`.
pub fn iterated_integral(forms: &[Form], path: &Path, cfg: &QuadratureConfig) -> Result<FloatElem> {
    if forms.is_empty() {
        return Ok(Elem::one(&common_signature(forms)?));
    }
    let word: Vec<usize> = (0..forms.len()).collect();
    let series = transport_words(
        forms,
        Arc::new(WordSet::prefixes(forms.len(), &word)),
        path,
        cfg,
    )?;
    Ok(series.get(&word)?.clone())
}

pub fn line_integral(form: &Form, path: &Path, cfg: &QuadratureConfig) -> Result<FloatElem> {
    iterated_integral(std::slice::from_ref(form), path, cfg)
}

/// Inputs for one of the path-algebra identities of iterated integrals.
#[derive(Clone, Debug)]
pub enum ChenCheck {
    /// `F` is group-like: products of coefficients expand over shuffles.
    Shuffle { forms: Vec<Form>, path: Path, max_len: usize },
    /// `∫_{γ⁻¹} ω_{i_r}…ω_{i_1} = (-1)^r ∫_γ ω_{i_1}…ω_{i_r}`.
    Reversal { forms: Vec<Form>, path: Path, max_len: usize },
    /// `F_{γ₁γ₂} = F_{γ₁} F_{γ₂}`.
    Composition { forms: Vec<Form>, first: Path, second: Path, max_len: usize },
    /// Two homotopic paths with common end points give the same `F`.
    Homotopy { forms: Vec<Form>, first: Path, second: Path, max_len: usize },
}

impl ChenCheck {
    pub fn kind(&self) -> &'static str {
        match self {
            ChenCheck::Shuffle { .. } => "shuffle",
            ChenCheck::Reversal { .. } => "reversal",
            ChenCheck::Composition { .. } => "composition",
            ChenCheck::Homotopy { .. } => "homotopy",
        }
    }
}

fn top_word(alphabet: usize, len: usize) -> Vec<usize> {
    (0..len).map(|k| k % alphabet.max(1)).collect()
}

fn forms_text(forms: &[Form]) -> String {
    forms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn chen_identity_check(check: &ChenCheck, cfg: &QuadratureConfig) -> Result<CheckReport> {
    let started = Instant::now();
    let id = format!("chen.{}", check.kind());
    let (lhs, rhs, deviation, inputs) = match check {
        ChenCheck::Shuffle { forms, path, max_len } => {
            let f = transport(forms, path, *max_len, cfg)?;
            let (u, v) = ([0], [forms.len().min(2) - 1]);
            let lhs = f.get(&u)? * f.get(&v)?;
            let rhs = shuffles(&u, &v)
                .iter()
                .try_fold(Elem::zero(f.signature()), |acc, w| f.get(w).map(|c| &acc + c))?;
            let inputs = vec![("forms", forms_text(forms)), ("path", path.to_string())];
            (lhs, rhs, f.shuffle_defect()?, inputs)
        }
        ChenCheck::Reversal { forms, path, max_len } => {
            let f = transport(forms, path, *max_len, cfg)?;
            let b = transport(forms, &path.reverse(), *max_len, cfg)?;
            let mut worst: f64 = 0.0;
            for (w, c) in f.terms() {
                let rev: Vec<usize> = w.iter().rev().copied().collect();
                let sign = if w.len() % 2 == 0 { 1.0 } else { -1.0 };
                let other = b.get(&rev)?.scale(&Complex64::new(sign, 0.0));
                worst = worst.max(c.max_abs_diff(&other));
            }
            let w = top_word(forms.len(), *max_len);
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            let sign = if w.len().is_multiple_of(2) { 1.0 } else { -1.0 };
            let inputs = vec![("forms", forms_text(forms)), ("path", path.to_string())];
            (f.get(&w)?.clone(), b.get(&rev)?.scale(&Complex64::new(sign, 0.0)), worst, inputs)
        }
        ChenCheck::Composition { forms, first, second, max_len } => {
            let whole = transport(forms, &first.then(second)?, *max_len, cfg)?;
            let split = transport(forms, first, *max_len, cfg)?
                .product(&transport(forms, second, *max_len, cfg)?)?;
            let w = top_word(forms.len(), *max_len);
            let inputs = vec![
                ("forms", forms_text(forms)),
                ("first", first.to_string()),
                ("second", second.to_string()),
            ];
            (whole.get(&w)?.clone(), split.get(&w)?.clone(), whole.max_deviation(&split), inputs)
        }
        ChenCheck::Homotopy { forms, first, second, max_len } => {
            if !close(first.start(), second.start()) || !close(first.end(), second.end()) {
                return Err(Error::InvalidPath("homotopic paths must share end points".into()));
            }
            let a = transport(forms, first, *max_len, cfg)?;
            let b = transport(forms, second, *max_len, cfg)?;
            let w = top_word(forms.len(), *max_len);
            let inputs = vec![
                ("forms", forms_text(forms)),
                ("first", first.to_string()),
                ("second", second.to_string()),
            ];
            (a.get(&w)?.clone(), b.get(&w)?.clone(), a.max_deviation(&b), inputs)
        }
    };
    let mut inputs = inputs;
    inputs.push(("steps", cfg.steps_per_segment.to_string()));
    Ok(CheckReport::new(
        id,
        inputs,
        ReportValue::elem(&lhs),
        ReportValue::elem(&rhs),
        deviation,
        cfg.tolerance,
        started,
    ))
}

/// Lasso: segment from `base` to the circle around `center`, one
/// counterclockwise turn, and back.
pub fn lasso(base: Complex64, center: Complex64, radius: f64) -> Result<Path> {
    let dir = base - center;
    if dir.norm() <= radius {
        return Err(Error::InvalidPath("base point inside the lasso disk".into()));
    }
    let angle = dir.arg();
    let q = center + Complex64::from_polar(radius, angle);
    Path::concat(&[
        Path::segment(base, q),
        Path::circle(center, radius, angle)?,
        Path::segment(q, base),
    ])
}

/// The standard battery: shuffle, reversal, composition and homotopy with
/// the forms `dz/z` and `dz/(z-2)`.
pub fn identity_suite(cfg: &QuadratureConfig) -> Result<Vec<CheckReport>> {
    let forms = vec![Form::Pole(Complex64::zero()), Form::Pole(Complex64::new(2.0, 0.0))];
    let arc = Path::arc(Complex64::new(0.3, 0.1), 0.6, 0.2, 1.5 * PI)?;
    let first = Path::arc(Complex64::zero(), 0.5, 0.0, 2.0 * PI / 3.0)?;
    let second = Path::arc(Complex64::zero(), 0.5, 2.0 * PI / 3.0, 4.0 * PI / 3.0)?;
    let base = Complex64::new(0.9, 0.0);
    let checks = [
        ChenCheck::Shuffle { forms: forms.clone(), path: arc.clone(), max_len: 3 },
        ChenCheck::Reversal { forms: forms.clone(), path: arc, max_len: 3 },
        ChenCheck::Composition { forms: forms.clone(), first, second, max_len: 3 },
        ChenCheck::Homotopy {
            forms,
            first: lasso(base, Complex64::zero(), 0.3)?,
            second: lasso(base, Complex64::zero(), 0.7)?,
            max_len: 2,
        },
    ];
    checks.iter().map(|c| chen_identity_check(c, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg(steps: usize) -> QuadratureConfig {
        QuadratureConfig::new(steps, 1e-8).unwrap()
    }

    #[test]
    fn line_integral_examples() {
        let circle = Path::circle(c(0.0, 0.0), 1.0, 0.0).unwrap();
        let v = line_integral(&Form::Pole(c(0.0, 0.0)), &circle, &cfg(256)).unwrap();
        assert!((v.reduce() - TWO_PI_I).norm() < 1e-12);

        let seg = Path::segment(c(0.0, 0.0), c(1.0, 1.0));
        let v = line_integral(&Form::Dz, &seg, &cfg(8)).unwrap();
        assert!((v.reduce() - c(1.0, 1.0)).norm() < 1e-14);

        let v = line_integral(&Form::Pole(c(5.0, 0.0)), &circle, &cfg(256)).unwrap();
        assert!(v.reduce().norm() < 1e-10);
    }

    #[test]
    fn transport_examples() {
        let circle = Path::circle(c(0.0, 0.0), 0.5, 0.0).unwrap();
        let f = transport(&[Form::Pole(c(0.0, 0.0))], &circle, 2, &cfg(256)).unwrap();
        assert!((f.coeff(&[0]).unwrap().reduce() - TWO_PI_I).norm() < 1e-12);
        assert!((f.coeff(&[0, 0]).unwrap().reduce() - TWO_PI_I * TWO_PI_I / 2.0).norm() < 1e-11);

        let point = Path::point(c(0.3, 0.0));
        let f = transport(&[Form::Pole(c(0.0, 0.0))], &point, 2, &cfg(4)).unwrap();
        assert!(f.coeff(&[]).unwrap().is_one());
        assert!(f.coeff(&[0]).unwrap().is_zero() && f.coeff(&[0, 0]).unwrap().is_zero());

        let base = c(0.5, 0.0);
        let alpha = lasso(base, c(0.0, 0.0), 0.2).unwrap();
        let beta = lasso(base, c(1.0, 0.0), 0.2).unwrap();
        let comm = Path::commutator(&alpha, &beta).unwrap();
        let forms = [Form::Pole(c(0.0, 0.0)), Form::Pole(c(1.0, 0.0))];
        let f = transport(&forms, &comm, 1, &cfg(512)).unwrap();
        assert!(f.coeff(&[0]).unwrap().max_abs() < 1e-10);
        assert!(f.coeff(&[1]).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn lemma_3_2_cubed() {
        let circle = Path::circle(c(0.0, 0.0), 0.5, 0.0).unwrap();
        let forms = vec![Form::Pole(c(0.0, 0.0)); 3];
        let v = iterated_integral(&forms, &circle, &cfg(64)).unwrap();
        let expected = TWO_PI_I.powi(3) / 6.0;
        assert!((v.reduce() - expected).norm() < 1e-10);
    }

    #[test]
    fn pole_proximity() {
        let seg = Path::segment(c(-1.0, 0.0), c(1.0, 0.0));
        let err = line_integral(&Form::Pole(c(0.0, 0.0)), &seg, &cfg(16)).unwrap_err();
        assert!(matches!(err, Error::PoleProximity { .. }));
        let circle = Path::circle(c(0.0, 0.0), 1.0, 0.0).unwrap();
        let err = line_integral(&Form::Pole(c(0.0, 1.0)), &circle, &cfg(16)).unwrap_err();
        assert!(matches!(err, Error::PoleProximity { .. }));
    }

    #[test]
    fn concat_requires_chaining() {
        let a = Path::segment(c(0.0, 0.0), c(1.0, 0.0));
        let b = Path::segment(c(2.0, 0.0), c(3.0, 0.0));
        assert!(matches!(Path::concat(&[a.clone(), b]), Err(Error::InvalidPath(_))));
        let r = a.reverse();
        assert_eq!(r.start(), c(1.0, 0.0));
        assert!(a.then(&r).unwrap().is_closed());
    }

    #[test]
    fn shuffle_list() {
        assert_eq!(shuffles(&[0], &[1]), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(shuffles(&[0, 0], &[1]).len(), 3);
    }

    #[test]
    fn convergence_is_fourth_order_off_centre() {
        // loop around 0 not centred there, so the pulled-back form is not constant
        let circle = Path::circle(c(0.2, 0.1), 0.5, 0.3).unwrap();
        let forms = vec![Form::Pole(c(0.0, 0.0)); 2];
        let exact = TWO_PI_I * TWO_PI_I / 2.0;
        let errors: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| (iterated_integral(&forms, &circle, &cfg(n)).unwrap().reduce() - exact).norm())
            .collect();
        for pair in errors.windows(2) {
            assert!(pair[0] >= 4.0 * pair[1], "{errors:?}");
        }
    }

    #[test]
    fn suite_passes() {
        for r in identity_suite(&cfg(1024)).unwrap() {
            assert!(r.pass, "{r}");
        }
    }
}
