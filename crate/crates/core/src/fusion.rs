//! Fusion rule sets and their structure constants.
//!
//! Two kinds of ring are supported: the built-in SU(2) ring, whose spectrum
//! `{s_0, s_1, ...}` is infinite and evaluated lazily from the Clebsch-Gordan
//! rule, and finite tables loaded from a JSON ring-table document.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

/// A simple object of some fusion ring.
///
/// For the SU(2) ring the key is the spin index `n` of `s_n`; for table rings
/// it is the position of the label in the declared `simples` list. A label is
/// only meaningful together with the ring that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed ring document: {0}")]
    Parse(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid label name `{0}`")]
    InvalidLabelName(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("negative multiplicity {value} for {pair} -> {label}")]
    NegativeMultiplicity {
        pair: String,
        label: String,
        value: i64,
    },
    #[error("unit law violated: {0}")]
    UnitLaw(String),
    #[error("fusion table is missing the product `{0}`")]
    MissingProduct(String),
    #[error("dual condition violated: {0}")]
    DualCondition(String),
    #[error("label {label:?} does not belong to ring `{ring}`")]
    LabelNotInRing { ring: String, label: Label },
}

/// A finitely supported sum of simple labels with positive multiplicities.
///
/// Terms are kept in label order and zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FusionSum {
    terms: BTreeMap<Label, u64>,
}

impl FusionSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: Label) -> Self {
        let mut sum = Self::new();
        sum.add(label, 1);
        sum
    }

    pub fn add(&mut self, label: Label, mult: u64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(label).or_insert(0);
        *entry = entry
            .checked_add(mult)
            .expect("fusion multiplicity overflow");
    }

    pub fn coefficient(&self, label: Label) -> u64 {
        self.terms.get(&label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, u64)> + '_ {
        self.terms.iter().map(|(l, m)| (*l, *m))
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

#[derive(Clone, Debug)]
struct Table {
    simples: Vec<String>,
    index: HashMap<String, u32>,
    unit: u32,
    duals: Option<Vec<u32>>,
    // products[a * len + b]
    products: Vec<FusionSum>,
}

impl Table {
    fn product(&self, a: u32, b: u32) -> &FusionSum {
        &self.products[a as usize * self.simples.len() + b as usize]
    }
}

#[derive(Clone, Debug)]
enum RingKind {
    Su2,
    Table(Table),
}

/// A fusion rule set together with its structure constants `N_{ab}^c`.
#[derive(Clone, Debug)]
pub struct FusionRing {
    name: String,
    kind: RingKind,
}

/// Ring-table document as found on disk.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDocument {
    name: String,
    unit: String,
    simples: Vec<String>,
    #[serde(default)]
    dual: Option<BTreeMap<String, String>>,
    fusion: BTreeMap<String, BTreeMap<String, i64>>,
}

fn valid_label_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '.' | ':' | '|' | ','))
}

impl FusionRing {
    /// The fusion rule set of SU(2): `s_m s_n = sum_{k=0}^{min(m,n)} s_{|m-n|+2k}`.
    pub fn su2() -> Self {
        FusionRing {
            name: "su2".to_string(),
            kind: RingKind::Su2,
        }
    }

    /// Parses and validates a ring-table document.
    pub fn from_json(source: &str) -> Result<Self, RingError> {
        let doc: RingDocument =
            serde_json::from_str(source).map_err(|e| RingError::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    fn from_document(doc: RingDocument) -> Result<Self, RingError> {
        let mut index = HashMap::new();
        for (i, name) in doc.simples.iter().enumerate() {
            if !valid_label_name(name) {
                return Err(RingError::InvalidLabelName(name.clone()));
            }
            if index.insert(name.clone(), i as u32).is_some() {
                return Err(RingError::DuplicateLabel(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| RingError::UnknownLabel(name.to_string()))
        };
        let unit = lookup(&doc.unit)?;
        let n = doc.simples.len();

        let mut products: Vec<Option<FusionSum>> = vec![None; n * n];
        for (key, values) in &doc.fusion {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| RingError::Parse(format!("fusion key `{key}` is not of the form a|b")))?;
            let (a, b) = (lookup(a)?, lookup(b)?);
            let mut sum = FusionSum::new();
            for (label, &value) in values {
                let c = lookup(label)?;
                if value < 0 {
                    return Err(RingError::NegativeMultiplicity {
                        pair: key.clone(),
                        label: label.clone(),
                        value,
                    });
                }
                sum.add(Label(c), value as u64);
            }
            products[a as usize * n + b as usize] = Some(sum);
        }

        // Unit rows and columns first: a missing unit product is a unit-law
        // failure rather than a generic gap in the table.
        let unit_name = &doc.simples[unit as usize];
        for x in 0..n as u32 {
            let expected = FusionSum::single(Label(x));
            let x_name = &doc.simples[x as usize];
            for (a, b) in [(unit, x), (x, unit)] {
                let key = format!("{}|{}", doc.simples[a as usize], doc.simples[b as usize]);
                match &products[a as usize * n + b as usize] {
                    None => {
                        return Err(RingError::UnitLaw(format!(
                            "product `{key}` is absent (unit `{unit_name}`)"
                        )))
                    }
                    Some(sum) if *sum != expected => {
                        return Err(RingError::UnitLaw(format!(
                            "product `{key}` must equal exactly `{x_name}`"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }

        let mut table = Vec::with_capacity(n * n);
        for (i, p) in products.into_iter().enumerate() {
            match p {
                Some(sum) => table.push(sum),
                None => {
                    return Err(RingError::MissingProduct(format!(
                        "{}|{}",
                        doc.simples[i / n],
                        doc.simples[i % n]
                    )))
                }
            }
        }

        let duals = match &doc.dual {
            None => None,
            Some(map) => {
                let mut duals = vec![u32::MAX; n];
                for (x, y) in map {
                    duals[lookup(x)? as usize] = lookup(y)?;
                }
                if let Some(missing) = duals.iter().position(|&d| d == u32::MAX) {
                    return Err(RingError::DualCondition(format!(
                        "no dual declared for `{}`",
                        doc.simples[missing]
                    )));
                }
                for x in 0..n {
                    if duals[duals[x] as usize] as usize != x {
                        return Err(RingError::DualCondition(format!(
                            "dual map is not an involution at `{}`",
                            doc.simples[x]
                        )));
                    }
                }
                for x in 0..n {
                    for y in 0..n {
                        let got = table[x * n + y].coefficient(Label(unit));
                        let want = u64::from(duals[x] as usize == y);
                        if got != want {
                            return Err(RingError::DualCondition(format!(
                                "N_{{{},{}}}^{} = {got}, expected {want}",
                                doc.simples[x], doc.simples[y], unit_name
                            )));
                        }
                    }
                }
                Some(duals)
            }
        };

        Ok(FusionRing {
            name: doc.name,
            kind: RingKind::Table(Table {
                simples: doc.simples,
                index,
                unit,
                duals,
                products: table,
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_su2(&self) -> bool {
        matches!(self.kind, RingKind::Su2)
    }

    pub fn unit(&self) -> Label {
        match &self.kind {
            RingKind::Su2 => Label(0),
            RingKind::Table(t) => Label(t.unit),
        }
    }

    pub fn contains(&self, label: Label) -> bool {
        match &self.kind {
            RingKind::Su2 => true,
            RingKind::Table(t) => (label.0 as usize) < t.simples.len(),
        }
    }

    fn check(&self, label: Label) -> Result<(), RingError> {
        if self.contains(label) {
            Ok(())
        } else {
            Err(RingError::LabelNotInRing {
                ring: self.name.clone(),
                label,
            })
        }
    }

    /// The full spectrum for table rings; `None` for the infinite SU(2) ring.
    pub fn simples(&self) -> Option<Vec<Label>> {
        match &self.kind {
            RingKind::Su2 => None,
            RingKind::Table(t) => Some((0..t.simples.len() as u32).map(Label).collect()),
        }
    }

    /// Simples whose key does not exceed `max_key`, restricted to the ring.
    pub fn simples_up_to(&self, max_key: u32) -> Vec<Label> {
        match &self.kind {
            RingKind::Su2 => (0..=max_key).map(Label).collect(),
            RingKind::Table(t) => (0..(t.simples.len() as u32).min(max_key + 1))
                .map(Label)
                .collect(),
        }
    }

    pub fn dual(&self, label: Label) -> Option<Label> {
        match &self.kind {
            RingKind::Su2 => Some(label),
            RingKind::Table(t) => t
                .duals
                .as_ref()
                .and_then(|d| d.get(label.0 as usize))
                .map(|&d| Label(d)),
        }
    }

    pub fn label_name(&self, label: Label) -> String {
        match &self.kind {
            RingKind::Su2 => format!("s{}", label.0),
            RingKind::Table(t) => t
                .simples
                .get(label.0 as usize)
                .cloned()
                .unwrap_or_else(|| format!("?{}", label.0)),
        }
    }

    pub fn parse_label(&self, text: &str) -> Result<Label, RingError> {
        match &self.kind {
            RingKind::Su2 => text
                .strip_prefix('s')
                .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                .and_then(|d| d.parse::<u32>().ok())
                .map(Label)
                .ok_or_else(|| RingError::UnknownLabel(text.to_string())),
            RingKind::Table(t) => t
                .index
                .get(text)
                .map(|&i| Label(i))
                .ok_or_else(|| RingError::UnknownLabel(text.to_string())),
        }
    }

    /// The fusion product `a ⊗ b` as a sum of simples.
    pub fn fuse_pair(&self, a: Label, b: Label) -> Result<FusionSum, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.kind {
            RingKind::Su2 => {
                let (m, n) = (a.0, b.0);
                let mut sum = FusionSum::new();
                for k in 0..=m.min(n) {
                    sum.add(Label(m.abs_diff(n) + 2 * k), 1);
                }
                sum
            }
            RingKind::Table(t) => t.product(a.0, b.0).clone(),
        })
    }

    /// Structure constant `N_{ab}^c = dim Hom(a ⊗ b, c)`.
    pub fn coefficient(&self, a: Label, b: Label, c: Label) -> Result<u64, RingError> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        Ok(match &self.kind {
            RingKind::Su2 => {
                let (m, n, k) = (a.0, b.0, c.0);
                let lo = m.abs_diff(n);
                u64::from(k >= lo && k <= m + n && (k - lo) % 2 == 0)
            }
            RingKind::Table(t) => t.product(a.0, b.0).coefficient(c),
        })
    }

    /// Checks `sum_u N_{ab}^u N_{uc}^d = sum_v N_{bc}^v N_{av}^d` over the
    /// whole table. Always `true` for SU(2) and not part of load validation.
    pub fn is_associative(&self) -> bool {
        let RingKind::Table(t) = &self.kind else {
            return true;
        };
        let n = t.simples.len() as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut left: BTreeMap<Label, u64> = BTreeMap::new();
                    for (u, nu) in t.product(a, b).iter() {
                        for (d, nd) in t.product(u.0, c).iter() {
                            *left.entry(d).or_default() += nu * nd;
                        }
                    }
                    let mut right: BTreeMap<Label, u64> = BTreeMap::new();
                    for (v, nv) in t.product(b, c).iter() {
                        for (d, nd) in t.product(a, v.0).iter() {
                            *right.entry(d).or_default() += nv * nd;
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Renders a fusion sum with this ring's label names, e.g. `s0 + s2`.
    pub fn format_sum(&self, sum: &FusionSum) -> String {
        if sum.is_empty() {
            return "0".to_string();
        }
        sum.iter()
            .map(|(l, m)| match m {
                1 => self.label_name(l),
                _ => format!("{m}*{}", self.label_name(l)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Su2 => write!(f, "su2"),
            RingKind::Table(t) => write!(f, "{} ({} simples)", self.name, t.simples.len()),
        }
    }
}
