//! Hierarchical H(div) bases on the four reference elements.
//!
//! Each builder returns a [`BasisSet`]: an ordered, categorized list of
//! exact vector fields. Ordering is entity functions first (lowest order,
//! then higher order, edge by edge or face by face), interior families last.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::ElementKind;
use crate::poly::MPoly;

pub mod hex;
pub mod quad;
pub mod tet;
pub mod tri;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    // quadrilateral
    EdgeLowest,
    EdgeHigher,
    InteriorT1,
    InteriorT2,
    InteriorT3Xi,
    InteriorT3Eta,
    // hexahedron; families are numbered as printed (1-based)
    FaceRT0,
    FaceHigherIJ,
    FaceHigherI,
    FaceHigherJ,
    HexT1(u8),
    HexT2(u8),
    HexT3(u8),
    // triangle (shares EdgeHigher)
    EdgeN0,
    EdgeInterior,
    InteriorBubble,
    // tetrahedron (shares EdgeInterior, InteriorBubble)
    EdgeFaceAC,
    EdgeFaceFirst,
    EdgeFaceSecond,
    FaceBubble,
    FaceInterior1,
    FaceInterior2,
}

impl Category {
    pub fn label(self) -> String {
        let s = match self {
            Category::HexT1(k) => return format!("interior-t1-{k}"),
            Category::HexT2(k) => return format!("interior-t2-{k}"),
            Category::HexT3(k) => return format!("interior-t3-{k}"),
            Category::EdgeLowest => "edge-lowest",
            Category::EdgeHigher => "edge-higher",
            Category::InteriorT1 => "interior-t1",
            Category::InteriorT2 => "interior-t2",
            Category::InteriorT3Xi => "interior-t3-xi",
            Category::InteriorT3Eta => "interior-t3-eta",
            Category::FaceRT0 => "face-rt0",
            Category::FaceHigherIJ => "face-higher-ij",
            Category::FaceHigherI => "face-higher-i",
            Category::FaceHigherJ => "face-higher-j",
            Category::EdgeN0 => "edge-n0",
            Category::EdgeInterior => "edge-interior",
            Category::InteriorBubble => "interior-bubble",
            Category::EdgeFaceAC => "edge-face-ac",
            Category::EdgeFaceFirst => "edge-face-first",
            Category::EdgeFaceSecond => "edge-face-second",
            Category::FaceBubble => "face-bubble",
            Category::FaceInterior1 => "face-interior-1",
            Category::FaceInterior2 => "face-interior-2",
        };
        s.to_string()
    }

    /// Families that are exactly divergence-free by construction.
    pub fn is_divergence_free(self) -> bool {
        matches!(
            self,
            Category::EdgeHigher
                | Category::InteriorT1
                | Category::FaceHigherIJ
                | Category::FaceHigherI
                | Category::FaceHigherJ
                | Category::HexT1(_)
        )
    }

    /// Families whose normal trace vanishes on the whole boundary.
    pub fn is_interior(self) -> bool {
        matches!(
            self,
            Category::InteriorT1
                | Category::InteriorT2
                | Category::InteriorT3Xi
                | Category::InteriorT3Eta
                | Category::HexT1(_)
                | Category::HexT2(_)
                | Category::HexT3(_)
                | Category::EdgeInterior
                | Category::InteriorBubble
                | Category::FaceInterior1
                | Category::FaceInterior2
        )
    }
}

impl Serialize for Category {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Geometric entity a function is attached to. Edge and face ids follow
/// [`crate::geometry`]; `FaceEdge` carries the 0-based vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entity {
    Cell,
    Edge(usize),
    Face(usize),
    FaceEdge { face: usize, edge: (usize, usize) },
}

/// Edge-based face families on the tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeFaceVariant {
    /// The earlier construction, kept only to exhibit its dependence at p=2.
    AC,
    FirstKind,
    SecondKind,
}

impl EdgeFaceVariant {
    pub fn name(self) -> &'static str {
        match self {
            EdgeFaceVariant::AC => "ac",
            EdgeFaceVariant::FirstKind => "first",
            EdgeFaceVariant::SecondKind => "second",
        }
    }
}

impl FromStr for EdgeFaceVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ac" => Ok(EdgeFaceVariant::AC),
            "first" => Ok(EdgeFaceVariant::FirstKind),
            "second" => Ok(EdgeFaceVariant::SecondKind),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

impl fmt::Display for EdgeFaceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct BasisFunction {
    pub id: usize,
    pub category: Category,
    pub entity: Entity,
    pub indices: Vec<usize>,
    /// Cartesian direction for bubble-type families.
    pub direction: Option<usize>,
    pub field: VectorField,
}

impl BasisFunction {
    pub(crate) fn new(
        category: Category,
        entity: Entity,
        indices: Vec<usize>,
        field: VectorField,
    ) -> Self {
        BasisFunction {
            id: 0,
            category,
            entity,
            indices,
            direction: None,
            field,
        }
    }

    pub(crate) fn with_direction(mut self, d: usize) -> Self {
        self.direction = Some(d);
        self
    }
}

/// A row of the decomposition tables.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: &'static str,
    pub formula: &'static str,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Clone, Debug)]
pub struct BasisSet {
    pub kind: ElementKind,
    pub order: usize,
    pub variant: Option<EdgeFaceVariant>,
    pub functions: Vec<BasisFunction>,
}

impl BasisSet {
    pub(crate) fn new(
        kind: ElementKind,
        order: usize,
        variant: Option<EdgeFaceVariant>,
        mut functions: Vec<BasisFunction>,
    ) -> Self {
        for (i, f) in functions.iter_mut().enumerate() {
            f.id = i;
        }
        BasisSet {
            kind,
            order,
            variant,
            functions,
        }
    }

    pub fn dimension(&self) -> usize {
        self.functions.len()
    }

    pub fn fields(&self) -> Vec<VectorField> {
        self.functions.iter().map(|f| f.field.clone()).collect()
    }

    pub fn count(&self, category: Category) -> usize {
        self.functions
            .iter()
            .filter(|f| f.category == category)
            .count()
    }

    pub fn indices_of(&self, pred: impl Fn(&BasisFunction) -> bool) -> Vec<usize> {
        self.functions
            .iter()
            .filter(|f| pred(f))
            .map(|f| f.id)
            .collect()
    }

    /// `(category, count)` in order of first appearance.
    pub fn category_counts(&self) -> Vec<(Category, usize)> {
        let mut out: Vec<(Category, usize)> = Vec::new();
        for f in &self.functions {
            match out.iter_mut().find(|(c, _)| *c == f.category) {
                Some((_, n)) => *n += 1,
                None => out.push((f.category, 1)),
            }
        }
        out
    }

    /// The decomposition table for this element with expected and built
    /// counts side by side.
    pub fn table_rows(&self) -> Vec<TableRow> {
        let p = self.order;
        let count = |cats: &[Category]| cats.iter().map(|&c| self.count(c)).sum::<usize>();
        let row = |label, formula, expected, cats: &[Category]| TableRow {
            label,
            formula,
            expected,
            actual: count(cats),
        };
        use Category::*;
        let mut rows = match self.kind {
            ElementKind::Quad => vec![
                row(
                    "Edge-based functions",
                    "4(p+1)",
                    4 * (p + 1),
                    &[EdgeLowest, EdgeHigher],
                ),
                row(
                    "Interior functions",
                    "2p(p+1)",
                    2 * p * (p + 1),
                    &[InteriorT1, InteriorT2, InteriorT3Xi, InteriorT3Eta],
                ),
            ],
            ElementKind::Hex => vec![
                row(
                    "Face-based face functions (lowest order RT)",
                    "6",
                    6,
                    &[FaceRT0],
                ),
                row(
                    "Face-based face functions (higher order)",
                    "6p(p+2)",
                    6 * p * (p + 2),
                    &[FaceHigherIJ, FaceHigherI, FaceHigherJ],
                ),
                row(
                    "Interior functions",
                    "3p(p+1)^2",
                    3 * p * (p + 1) * (p + 1),
                    &[
                        HexT1(1),
                        HexT1(2),
                        HexT1(3),
                        HexT1(4),
                        HexT1(5),
                        HexT2(1),
                        HexT2(2),
                        HexT2(3),
                        HexT2(4),
                        HexT3(1),
                        HexT3(2),
                        HexT3(3),
                    ],
                ),
            ],
            ElementKind::Tri => vec![
                row(
                    "Edge functions",
                    "3(p+1)",
                    3 * (p + 1),
                    &[EdgeN0, EdgeHigher],
                ),
                row(
                    "Edge-based interior functions",
                    "3(p-1)",
                    3 * (p - 1),
                    &[EdgeInterior],
                ),
                row(
                    "Interior bubble functions",
                    "(p-2)(p-1)",
                    p.saturating_sub(2) * (p - 1),
                    &[InteriorBubble],
                ),
            ],
            ElementKind::Tet => vec![
                row(
                    "Edge-based face functions",
                    "12p",
                    12 * p,
                    &[EdgeFaceFirst, EdgeFaceSecond, EdgeFaceAC],
                ),
                row(
                    "Face bubble functions",
                    "2(p-2)(p-1)",
                    2 * p.saturating_sub(2) * (p - 1),
                    &[FaceBubble],
                ),
                row(
                    "Edge-based interior functions",
                    "6(p-1)",
                    6 * (p - 1),
                    &[EdgeInterior],
                ),
                row(
                    "Face-based interior functions",
                    "4(p-2)(p-1)",
                    4 * p.saturating_sub(2) * (p - 1),
                    &[FaceInterior1, FaceInterior2],
                ),
                row(
                    "Interior bubble functions",
                    "(p-3)(p-2)(p-1)/2",
                    p.saturating_sub(3) * p.saturating_sub(2) * (p - 1) / 2,
                    &[InteriorBubble],
                ),
            ],
        };
        let total = rows.iter().map(|r| r.actual).sum();
        rows.push(TableRow {
            label: "Total",
            formula: total_formula(self.kind),
            expected: expected_dimension(self.kind, p),
            actual: total,
        });
        rows
    }

    /// Index groups whose Gram block is claimed to be the identity.
    pub fn orthonormal_groups(&self) -> Vec<(String, Vec<usize>)> {
        match self.kind {
            ElementKind::Tri => tri::orthonormal_groups(self),
            ElementKind::Tet => tet::orthonormal_groups(self),
            _ => Vec::new(),
        }
    }

    /// A copy with the functions permuted; ids are renumbered.
    pub fn permuted(&self, order: &[usize]) -> BasisSet {
        let functions = order.iter().map(|&i| self.functions[i].clone()).collect();
        BasisSet::new(self.kind, self.order, self.variant, functions)
    }
}

pub fn expected_dimension(kind: ElementKind, p: usize) -> usize {
    match kind {
        ElementKind::Quad => 2 * (p + 2) * (p + 1),
        ElementKind::Hex => 3 * (p + 2) * (p + 1) * (p + 1),
        ElementKind::Tri => (p + 1) * (p + 2),
        ElementKind::Tet => (p + 1) * (p + 2) * (p + 3) / 2,
    }
}

fn total_formula(kind: ElementKind) -> &'static str {
    match kind {
        ElementKind::Quad => "2(p+2)(p+1)",
        ElementKind::Hex => "3(p+2)(p+1)^2",
        ElementKind::Tri => "(p+1)(p+2)",
        ElementKind::Tet => "(p+1)(p+2)(p+3)/2",
    }
}

/// Largest order each element is built for.
pub fn max_order(kind: ElementKind) -> usize {
    match kind {
        ElementKind::Quad | ElementKind::Tri => 6,
        ElementKind::Hex | ElementKind::Tet => 4,
    }
}

pub(crate) fn check_order(what: &str, p: usize, min: usize, max: usize) -> Result<()> {
    if p < min || p > max {
        return Err(Error::OrderOutOfRange {
            what: what.to_string(),
            order: p,
            min,
            max,
        });
    }
    Ok(())
}

/// Build the full basis of order `p`. `variant` selects the tetrahedral
/// edge-based face family and is ignored elsewhere; `AC` is rejected here
/// because that family is not a basis.
pub fn build_set(kind: ElementKind, p: usize, variant: EdgeFaceVariant) -> Result<BasisSet> {
    match kind {
        ElementKind::Quad => quad::build_set(p),
        ElementKind::Hex => hex::build_set(p),
        ElementKind::Tri => tri::build_set(p),
        ElementKind::Tet => tet::build_set(p, variant),
    }
}

/// `n(2x − 1)` style affine argument maps.
pub(crate) fn shifted(dim: usize, var: usize) -> MPoly {
    let mut a = vec![0; dim];
    a[var] = 2;
    MPoly::affine(dim, -1, &a)
}
