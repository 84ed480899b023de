//! Colored non-crossing rectangle diagrams and the diagram algebras `A_n`
//! on the periodic boundary coloring.
//!
//! A diagram has `b` bottom points and `t` top points. Points are numbered
//! bottom `0..b` left to right, then top `b..b+t` left to right. Reading the
//! bottom left to right and then the top right to left walks once around the
//! rectangle; planarity means the matching is non-crossing in that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::laurent::{quantum_int, LaurentError, LaurentPoly, Var};

/// Default limit on the number of boundary points of enumerated diagrams.
pub const DEFAULT_GUARD_POINTS: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{points} boundary points exceeds the guard of {max}")]
    Guard { points: usize, max: usize },
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("color {color} is outside 1..={m}")]
    BadColor { color: u16, m: usize },
    #[error("number of colors must be at least 1")]
    NoColors,
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// One boundary point: color `x_index` (1-based), possibly starred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color {
    pub index: u16,
    pub starred: bool,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index, if self.starred { "*" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorPattern(Vec<Color>);

impl ColorPattern {
    /// Stars every second occurrence of each color, which is how `w_n`
    /// alternates `x_j` and `x_j*`.
    pub fn from_colors(colors: &[u16]) -> Self {
        let mut seen: HashMap<u16, usize> = HashMap::new();
        ColorPattern(
            colors
                .iter()
                .map(|&c| {
                    let k = seen.entry(c).or_default();
                    *k += 1;
                    Color {
                        index: c,
                        starred: *k % 2 == 0,
                    }
                })
                .collect(),
        )
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<u16> {
        self.0.iter().map(|c| c.index).collect()
    }
}

impl fmt::Display for ColorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// First `n` letters of `x_1 … x_m x_m* … x_1* x_1 …`.
pub fn boundary_word(m: usize, n: usize) -> ColorPattern {
    assert!(m >= 1, "at least one color");
    ColorPattern(
        (0..n)
            .map(|i| {
                let r = i % (2 * m);
                if r < m {
                    Color {
                        index: r as u16 + 1,
                        starred: false,
                    }
                } else {
                    Color {
                        index: (2 * m - r) as u16,
                        starred: true,
                    }
                }
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarDiagram {
    m: usize,
    // bottom is a middle pattern σ rather than part of A_n
    middle: bool,
    bottom: ColorPattern,
    top: ColorPattern,
    partner: Vec<usize>,
}

impl PlanarDiagram {
    /// Builds and validates a diagram from its list of pairs.
    pub fn new(
        m: usize,
        bottom: ColorPattern,
        top: ColorPattern,
        pairs: &[(usize, usize)],
    ) -> Result<Self, DiagramError> {
        let size = bottom.len() + top.len();
        let mut partner = vec![usize::MAX; size];
        for &(p, q) in pairs {
            if p >= size || q >= size || p == q || partner[p] != usize::MAX || partner[q] != usize::MAX {
                return Err(DiagramError::Invalid(format!("bad pair {p}↔{q}")));
            }
            partner[p] = q;
            partner[q] = p;
        }
        let d = PlanarDiagram {
            m,
            middle: false,
            bottom,
            top,
            partner,
        };
        d.validate()?;
        Ok(d)
    }

    /// A module diagram from the middle pattern `sigma` to `top`; strings
    /// joining two points of `sigma` are not allowed.
    pub fn module(
        m: usize,
        sigma: ColorPattern,
        top: ColorPattern,
        pairs: &[(usize, usize)],
    ) -> Result<Self, DiagramError> {
        let mut d = Self::new(m, sigma, top, pairs)?;
        d.middle = true;
        if d.has_bottom_cap() {
            return Err(DiagramError::Invalid(format!("{d} joins two middle-pattern points")));
        }
        Ok(d)
    }

    pub fn is_module_diagram(&self) -> bool {
        self.middle
    }

    pub fn identity(m: usize, pattern: ColorPattern) -> Self {
        let n = pattern.len();
        let partner = (0..n).map(|i| i + n).chain(0..n).collect();
        PlanarDiagram {
            m,
            middle: false,
            bottom: pattern.clone(),
            top: pattern,
            partner,
        }
    }

    /// The cup-cap diagram joining points `i-1, i` on each side (1-based `i`),
    /// all other strings vertical.
    pub fn cup_cap(m: usize, pattern: ColorPattern, i: usize) -> Result<Self, DiagramError> {
        let n = pattern.len();
        if i == 0 || i >= n {
            return Err(DiagramError::Invalid(format!("cup-cap position {i} outside 1..{n}")));
        }
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .filter(|&k| k != i - 1 && k != i)
            .map(|k| (k, k + n))
            .collect();
        pairs.push((i - 1, i));
        pairs.push((n + i - 1, n + i));
        Self::new(m, pattern.clone(), pattern, &pairs)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bottom(&self) -> &ColorPattern {
        &self.bottom
    }

    pub fn top(&self) -> &ColorPattern {
        &self.top
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// Pairs `(p, q)` with `p < q`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    fn color(&self, p: usize) -> Color {
        let b = self.bottom.len();
        if p < b {
            self.bottom.0[p]
        } else {
            self.top.0[p - b]
        }
    }

    fn circular(&self, p: usize) -> usize {
        let b = self.bottom.len();
        if p < b {
            p
        } else {
            b + self.top.len() - 1 - (p - b)
        }
    }

    fn is_bottom(&self, p: usize) -> bool {
        p < self.bottom.len()
    }

    /// Whether two bottom points are joined.
    pub fn has_bottom_cap(&self) -> bool {
        self.pairs().iter().any(|&(p, q)| self.is_bottom(p) && self.is_bottom(q))
    }

    /// Re-checks every structural constraint from scratch: perfect matching,
    /// equal colors, star parity (opposite on one side, equal across) and
    /// planarity.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |msg: String| Err(DiagramError::Invalid(msg));
        if self.m == 0 {
            return Err(DiagramError::NoColors);
        }
        for c in self.bottom.0.iter().chain(&self.top.0) {
            if c.index == 0 || c.index as usize > self.m {
                return Err(DiagramError::BadColor {
                    color: c.index,
                    m: self.m,
                });
            }
        }
        let n = self.size();
        if self.partner.len() != n {
            return bad("partner table has the wrong size".into());
        }
        for p in 0..n {
            let q = self.partner[p];
            if q >= n || q == p || self.partner[q] != p {
                return bad(format!("point {p} is not matched properly"));
            }
            let (cp, cq) = (self.color(p), self.color(q));
            if cp.index != cq.index {
                return bad(format!("{p}↔{q} joins {cp} and {cq}"));
            }
            let same_side = self.is_bottom(p) == self.is_bottom(q);
            if same_side == (cp.starred == cq.starred) {
                return bad(format!("{p}↔{q} violates star parity ({cp}, {cq})"));
            }
        }
        let arcs: Vec<(usize, usize)> = self
            .pairs()
            .into_iter()
            .map(|(p, q)| {
                let (a, b) = (self.circular(p), self.circular(q));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[..i] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return bad(format!("strings {a}-{b} and {c}-{d} cross"));
                }
            }
        }
        Ok(())
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> Self {
        let (b, t) = (self.bottom.len(), self.top.len());
        let flip = |p: usize| if p < b { b - 1 - p } else { b + (t - 1 - (p - b)) };
        let mut partner = vec![0; self.size()];
        for p in 0..self.size() {
            partner[flip(p)] = flip(self.partner[p]);
        }
        let rev = |c: &ColorPattern| ColorPattern(c.0.iter().rev().copied().collect());
        PlanarDiagram {
            m: self.m,
            middle: self.middle,
            bottom: rev(&self.bottom),
            top: rev(&self.top),
            partner,
        }
    }

    /// Stacks `self` on top of `lower`. Returns the composite and the number
    /// of closed loops of each color (index `j-1` for color `j`).
    pub fn compose(&self, lower: &PlanarDiagram) -> Result<(PlanarDiagram, Vec<u32>), DiagramError> {
        if self.bottom != lower.top {
            return Err(DiagramError::PatternMismatch(format!(
                "upper bottom `{}` differs from lower top `{}`",
                self.bottom, lower.top
            )));
        }
        let b = lower.bottom.len();
        let mid = lower.top.len();
        let t = self.top.len();
        let mut visited = vec![false; mid];
        let mut partner = vec![usize::MAX; b + t];
        for start in 0..b + t {
            if partner[start] != usize::MAX {
                continue;
            }
            // (in_upper, point) — walk until leaving through the outer boundary
            let (mut in_upper, mut p) = if start < b { (false, start) } else { (true, mid + start - b) };
            let end = loop {
                if in_upper {
                    let q = self.partner[p];
                    if q >= mid {
                        break b + q - mid;
                    }
                    visited[q] = true;
                    (in_upper, p) = (false, b + q);
                } else {
                    let q = lower.partner[p];
                    if q < b {
                        break q;
                    }
                    visited[q - b] = true;
                    (in_upper, p) = (true, q - b);
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = vec![0u32; self.m];
        for i in 0..mid {
            if visited[i] {
                continue;
            }
            loops[lower.top.0[i].index as usize - 1] += 1;
            let mut j = i;
            loop {
                visited[j] = true;
                let k = lower.partner[b + j] - b;
                visited[k] = true;
                j = self.partner[k];
                if j == i {
                    break;
                }
            }
        }
        Ok((
            PlanarDiagram {
                m: self.m,
                middle: lower.middle,
                bottom: lower.bottom.clone(),
                top: self.top.clone(),
                partner,
            },
            loops,
        ))
    }

    /// Loops of each color after joining top point `i` to bottom point `i`.
    pub fn closure_loops(&self) -> Result<Vec<u32>, DiagramError> {
        let n = self.bottom.len();
        if self.bottom != self.top {
            return Err(DiagramError::PatternMismatch(format!(
                "closure needs equal patterns, got `{}` and `{}`",
                self.bottom, self.top
            )));
        }
        let mut visited = vec![false; 2 * n];
        let mut loops = vec![0u32; self.m];
        for start in 0..2 * n {
            if visited[start] {
                continue;
            }
            loops[self.color(start).index as usize - 1] += 1;
            let mut p = start;
            loop {
                visited[p] = true;
                let q = self.partner[p];
                visited[q] = true;
                p = if q < n { q + n } else { q - n };
                if p == start {
                    break;
                }
            }
        }
        Ok(loops)
    }
}

impl fmt::Display for PlanarDiagram {
    /// `m=<m>;n=<n>;match=p↔q,…`, with `sigma=<colors>` inserted when the
    /// bottom is not the top pattern.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={};", self.m)?;
        if self.middle {
            let sigma: String = self.bottom.0.iter().map(|c| format!("x{}", c.index)).collect();
            write!(f, "sigma={sigma};")?;
        }
        let pairs: Vec<String> = self.pairs().iter().map(|(p, q)| format!("{p}↔{q}")).collect();
        write!(f, "n={};match={}", self.top.len(), pairs.join(","))
    }
}

/// Non-crossing perfect matchings of a circular sequence of colors, where
/// only equal colors accepted by `allowed` may be joined.
pub(crate) struct Matcher<'a> {
    colors: Vec<u16>,
    allowed: &'a dyn Fn(usize, usize) -> bool,
    counts: HashMap<(usize, usize), u128>,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(colors: Vec<u16>, allowed: &'a dyn Fn(usize, usize) -> bool) -> Self {
        Matcher {
            colors,
            allowed,
            counts: HashMap::new(),
        }
    }

    fn joinable(&self, a: usize, b: usize) -> bool {
        self.colors[a] == self.colors[b] && (self.allowed)(a, b)
    }

    /// Matchings of the positions `l..r`.
    pub(crate) fn count(&mut self, l: usize, r: usize) -> u128 {
        if l == r {
            return 1;
        }
        if (r - l) % 2 == 1 {
            return 0;
        }
        if let Some(&c) = self.counts.get(&(l, r)) {
            return c;
        }
        let mut total = 0;
        for k in (l + 1..r).step_by(2) {
            if self.joinable(l, k) {
                let inner = self.count(l + 1, k);
                if inner > 0 {
                    total += inner * self.count(k + 1, r);
                }
            }
        }
        self.counts.insert((l, r), total);
        total
    }

    pub(crate) fn enumerate(&mut self, l: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
        if l == r {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (l + 1..r).step_by(2) {
            if !self.joinable(l, k) || self.count(l + 1, k) == 0 || self.count(k + 1, r) == 0 {
                continue;
            }
            let inner = self.enumerate(l + 1, k);
            let outer = self.enumerate(k + 1, r);
            for i in &inner {
                for o in &outer {
                    let mut pairs = Vec::with_capacity(i.len() + o.len() + 1);
                    pairs.push((l, k));
                    pairs.extend_from_slice(i);
                    pairs.extend_from_slice(o);
                    out.push(pairs);
                }
            }
        }
        out
    }
}

pub(crate) fn check_guard(points: usize, max: usize) -> Result<(), DiagramError> {
    if points > max {
        Err(DiagramError::Guard { points, max })
    } else {
        Ok(())
    }
}

/// All planar diagrams from `bottom` to `top`, sorted; `forbid_bottom_caps`
/// excludes strings joining two bottom points.
pub(crate) fn enumerate_diagrams(
    m: usize,
    bottom: &ColorPattern,
    top: &ColorPattern,
    forbid_bottom_caps: bool,
) -> Vec<PlanarDiagram> {
    let (b, t) = (bottom.len(), top.len());
    let point_of = |c: usize| if c < b { c } else { b + (t - 1 - (c - b)) };
    let colors: Vec<u16> = (0..b + t)
        .map(|c| {
            let p = point_of(c);
            if p < b {
                bottom.0[p].index
            } else {
                top.0[p - b].index
            }
        })
        .collect();
    let allowed = move |x: usize, y: usize| !(forbid_bottom_caps && x < b && y < b);
    let mut matcher = Matcher::new(colors, &allowed);
    let mut diagrams: Vec<PlanarDiagram> = matcher
        .enumerate(0, b + t)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0; b + t];
            for (x, y) in pairs {
                let (p, q) = (point_of(x), point_of(y));
                partner[p] = q;
                partner[q] = p;
            }
            PlanarDiagram {
                m,
                middle: forbid_bottom_caps,
                bottom: bottom.clone(),
                top: top.clone(),
                partner,
            }
        })
        .collect();
    diagrams.sort();
    diagrams
}

pub(crate) fn count_diagrams(bottom: &[u16], top: &[u16], forbid_bottom_caps: bool) -> u128 {
    let b = bottom.len();
    let colors: Vec<u16> = bottom.iter().chain(top.iter().rev()).copied().collect();
    let allowed = move |x: usize, y: usize| !(forbid_bottom_caps && x < b && y < b);
    let n = colors.len();
    Matcher::new(colors, &allowed).count(0, n)
}

/// Basis of `A_n`: all diagrams from `w_n` to `w_n`, sorted.
pub fn enumerate_basis(m: usize, n: usize, guard_points: usize) -> Result<Vec<PlanarDiagram>, DiagramError> {
    if m == 0 {
        return Err(DiagramError::NoColors);
    }
    check_guard(2 * n, guard_points)?;
    let w = boundary_word(m, n);
    Ok(enumerate_diagrams(m, &w, &w, false))
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul(n - i).expect("binomial overflows u128") / (i + 1);
    }
    c
}

/// `(l+1)/(k(m+1)+l+1) · C(k(m+1)+l+1, k)` for `n = km + l`, `0 ≤ l < m`.
pub fn dim_formula(m: usize, n: usize) -> u128 {
    assert!(m >= 1, "at least one color");
    let (k, l) = ((n / m) as u128, (n % m) as u128);
    let top = k * (m as u128 + 1) + l + 1;
    let c = binomial(top, k);
    let num = c.checked_mul(l + 1).expect("dimension overflows u128");
    debug_assert_eq!(num % top, 0);
    num / top
}

/// Linear combination of diagrams sharing one bottom and one top pattern,
/// with coefficients in `Z[a^±]` (loops evaluate to `a_j`) or `Z[t^±]` (loops
/// evaluate to `t_j + t_j^{-1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    m: usize,
    var: Var,
    bottom: ColorPattern,
    top: ColorPattern,
    terms: BTreeMap<PlanarDiagram, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero(m: usize, var: Var, bottom: ColorPattern, top: ColorPattern) -> Self {
        AlgebraElement {
            m,
            var,
            bottom,
            top,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: PlanarDiagram, coeff: LaurentPoly) -> Result<Self, DiagramError> {
        if coeff.arity() != d.m {
            return Err(LaurentError::ArityMismatch(coeff.arity(), d.m).into());
        }
        let mut e = Self::zero(d.m, coeff.var(), d.bottom.clone(), d.top.clone());
        e.add_term(d, coeff)?;
        Ok(e)
    }

    pub fn diagram(d: PlanarDiagram, var: Var) -> Self {
        let one = LaurentPoly::one(var, d.m);
        Self::from_diagram(d, one).expect("arity matches")
    }

    /// Identity of `A_n`.
    pub fn identity(m: usize, n: usize, var: Var) -> Self {
        Self::diagram(PlanarDiagram::identity(m, boundary_word(m, n)), var)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn bottom(&self) -> &ColorPattern {
        &self.bottom
    }

    pub fn top(&self) -> &ColorPattern {
        &self.top
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &PlanarDiagram) -> LaurentPoly {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.var, self.m))
    }

    fn add_term(&mut self, d: PlanarDiagram, c: LaurentPoly) -> Result<(), DiagramError> {
        if d.bottom != self.bottom || d.top != self.top {
            return Err(DiagramError::PatternMismatch(format!(
                "diagram {d} does not fit `{}` → `{}`",
                self.bottom, self.top
            )));
        }
        let sum = match self.terms.remove(&d) {
            Some(old) => old.checked_add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
        Ok(())
    }

    fn same_space(&self, other: &Self) -> Result<(), DiagramError> {
        if self.bottom != other.bottom || self.top != other.top || self.m != other.m {
            return Err(DiagramError::PatternMismatch("elements live in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiagramError> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DiagramError> {
        self.add(&other.scale(&LaurentPoly::constant(other.var, other.m, -1))?)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<Self, DiagramError> {
        let mut out = Self::zero(self.m, self.var, self.bottom.clone(), self.top.clone());
        for (d, k) in &self.terms {
            out.add_term(d.clone(), k.checked_mul(c)?)?;
        }
        Ok(out)
    }

    fn loop_factor(&self, loops: &[u32]) -> Result<LaurentPoly, DiagramError> {
        let mut f = LaurentPoly::one(self.var, self.m);
        for (j, &k) in loops.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let value = match self.var {
                Var::A => LaurentPoly::var_power(Var::A, self.m, j, 1),
                Var::T => quantum_int(2, j, self.m),
            };
            f = f.checked_mul(&value.pow(k)?)?;
        }
        Ok(f)
    }

    /// `self · other`: `self` stacked on top of `other`, each closed loop of
    /// color `j` replaced by its loop value.
    pub fn multiply(&self, other: &Self) -> Result<Self, DiagramError> {
        self.product(other, false)
    }

    /// Action of `self ∈ A_n` on a module element whose bottom is a middle
    /// pattern; composites joining two middle-pattern points are zero.
    pub fn act_on_module(&self, v: &Self) -> Result<Self, DiagramError> {
        self.product(v, true)
    }

    fn product(&self, other: &Self, drop_bottom_caps: bool) -> Result<Self, DiagramError> {
        if self.var != other.var || self.m != other.m {
            return Err(DiagramError::PatternMismatch("different coefficient rings".into()));
        }
        if self.bottom != other.top {
            return Err(DiagramError::PatternMismatch(format!(
                "bottom `{}` of the left factor differs from top `{}` of the right factor",
                self.bottom, other.top
            )));
        }
        let mut out = Self::zero(self.m, self.var, other.bottom.clone(), self.top.clone());
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (d, loops) = d1.compose(d2)?;
                if drop_bottom_caps && d.has_bottom_cap() {
                    continue;
                }
                let c = c1.checked_mul(c2)?.checked_mul(&self.loop_factor(&loops)?)?;
                out.add_term(d, c)?;
            }
        }
        Ok(out)
    }

    /// Non-normalized Markov trace: close top point `i` to bottom point `i`
    /// and evaluate the loops.
    pub fn markov_trace(&self) -> Result<LaurentPoly, DiagramError> {
        let mut total = LaurentPoly::zero(self.var, self.m);
        if self.bottom != self.top {
            return Err(DiagramError::PatternMismatch(format!(
                "trace needs equal patterns, got `{}` and `{}`",
                self.bottom, self.top
            )));
        }
        for (d, c) in &self.terms {
            let loops = d.closure_loops()?;
            total = total.checked_add(&c.checked_mul(&self.loop_factor(&loops)?)?)?;
        }
        Ok(total)
    }

    /// Maps `a_j ↦ t_j + t_j^{-1}` in every coefficient.
    pub fn substitute_loop_params(&self) -> Result<Self, DiagramError> {
        let mut out = Self::zero(self.m, Var::T, self.bottom.clone(), self.top.clone());
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.substitute_loop_params()?)?;
        }
        Ok(out)
    }

    /// Terms as `(diagram, coefficient)` strings.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect()
    }

    pub fn scalar(&self, c: impl Into<BigInt>) -> LaurentPoly {
        LaurentPoly::constant(self.var, self.m, c)
    }
}
