//! Caterpillars `C(h1,h2,h3)`, their labelings, and the role-partition view
//! of a labeling on the group.
//!
//! A labeling assigns group elements to the three spine vertices and to the
//! hairs hanging off each of them. Hair vertices on the same spine vertex are
//! interchangeable, so a labeling only records the *set* of hair labels per
//! spine vertex. The equivalent partition view records, for every group
//! element, which role (spine position or hair class) it plays.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams, Matrix};

/// The hair class of a spine vertex: `X` hangs off the first, `Y` off the
/// middle and `Z` off the last spine vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hair {
    X,
    Y,
    Z,
}

impl Hair {
    pub const ALL: [Hair; 3] = [Hair::X, Hair::Y, Hair::Z];

    pub fn index(self) -> usize {
        match self {
            Hair::X => 0,
            Hair::Y => 1,
            Hair::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Hair {
        Hair::ALL[i]
    }

    /// The class on the mirrored caterpillar.
    pub fn reflected(self) -> Hair {
        match self {
            Hair::X => Hair::Z,
            Hair::Y => Hair::Y,
            Hair::Z => Hair::X,
        }
    }
}

impl fmt::Display for Hair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hair::X => "x",
            Hair::Y => "y",
            Hair::Z => "z",
        };
        f.write_str(s)
    }
}

/// Role of a group element under a labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Spine1,
    Spine2,
    Spine3,
    X,
    Y,
    Z,
}

impl Role {
    pub fn spine(i: usize) -> Role {
        [Role::Spine1, Role::Spine2, Role::Spine3][i]
    }

    pub fn spine_index(self) -> Option<usize> {
        match self {
            Role::Spine1 => Some(0),
            Role::Spine2 => Some(1),
            Role::Spine3 => Some(2),
            _ => None,
        }
    }

    pub fn hair(self) -> Option<Hair> {
        match self {
            Role::X => Some(Hair::X),
            Role::Y => Some(Hair::Y),
            Role::Z => Some(Hair::Z),
            _ => None,
        }
    }
}

impl From<Hair> for Role {
    fn from(h: Hair) -> Role {
        match h {
            Hair::X => Role::X,
            Hair::Y => Role::Y,
            Hair::Z => Role::Z,
        }
    }
}

/// Hair counts `(h1, h2, h3)` of a caterpillar whose order equals `|A|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub h: [u64; 3],
}

impl Shape {
    pub fn new(params: &GroupParams, h: [u64; 3]) -> Result<Shape> {
        let n = params.order();
        if n < 3 {
            return Err(Error::InvalidShape(format!(
                "a caterpillar with three spine vertices needs at least 3 vertices, the group has {n}"
            )));
        }
        let total = h.iter().try_fold(0u64, |acc, &x| acc.checked_add(x));
        if total != Some(n - 3) {
            return Err(Error::InvalidShape(format!(
                "hair counts {h:?} must sum to {}",
                n - 3
            )));
        }
        Ok(Shape { h })
    }

    pub fn reflected(&self) -> Shape {
        Shape {
            h: [self.h[2], self.h[1], self.h[0]],
        }
    }

    pub fn count(&self, hair: Hair) -> u64 {
        self.h[hair.index()]
    }

    /// Every shape of the given group, in lexicographic order.
    pub fn all(params: &GroupParams) -> Vec<Shape> {
        let n = params.order();
        if n < 3 {
            return Vec::new();
        }
        let m = n - 3;
        let mut out = Vec::new();
        for h1 in 0..=m {
            for h2 in 0..=m - h1 {
                out.push(Shape {
                    h: [h1, h2, m - h1 - h2],
                });
            }
        }
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h[0], self.h[1], self.h[2])
    }
}

/// Hair counts reduced mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueTriple {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl ResidueTriple {
    pub fn as_array(&self) -> [u32; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn sum(&self) -> u32 {
        self.alpha + self.beta + self.gamma
    }
}

impl fmt::Display for ResidueTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, self.gamma)
    }
}

pub fn residues(params: &GroupParams, shape: &Shape) -> Result<ResidueTriple> {
    Shape::new(params, shape.h)?;
    let p = u64::from(params.p());
    let r = shape.h.map(|h| (h % p) as u32);
    Ok(ResidueTriple {
        alpha: r[0],
        beta: r[1],
        gamma: r[2],
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hairs {
    pub x: Vec<Element>,
    pub y: Vec<Element>,
    pub z: Vec<Element>,
}

impl Hairs {
    pub fn get(&self, hair: Hair) -> &[Element] {
        match hair {
            Hair::X => &self.x,
            Hair::Y => &self.y,
            Hair::Z => &self.z,
        }
    }

    fn get_mut(&mut self, hair: Hair) -> &mut Vec<Element> {
        match hair {
            Hair::X => &mut self.x,
            Hair::Y => &mut self.y,
            Hair::Z => &mut self.z,
        }
    }
}

/// Spine labels `(a1, a2, a3)` plus the hair label set of each spine vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub spine: [Element; 3],
    pub hairs: Hairs,
}

impl Labeling {
    /// Builds a labeling; hair lists are sorted into canonical order.
    pub fn new(spine: [Element; 3], mut hairs: Hairs) -> Labeling {
        for h in Hair::ALL {
            hairs.get_mut(h).sort();
        }
        Labeling { spine, hairs }
    }

    pub fn hair_counts(&self) -> [u64; 3] {
        Hair::ALL.map(|h| self.hairs.get(h).len() as u64)
    }

    fn map_labels(&self, f: impl Fn(&Element) -> Element) -> Labeling {
        let spine = [f(&self.spine[0]), f(&self.spine[1]), f(&self.spine[2])];
        let hairs = Hairs {
            x: self.hairs.x.iter().map(&f).collect(),
            y: self.hairs.y.iter().map(&f).collect(),
            z: self.hairs.z.iter().map(&f).collect(),
        };
        Labeling::new(spine, hairs)
    }

    fn check_elements(&self, params: &GroupParams) -> Result<()> {
        for e in self.spine.iter().chain(Hair::ALL.iter().flat_map(|&h| self.hairs.get(h))) {
            params.check(e)?;
        }
        Ok(())
    }
}

/// The on-disk form of a labeling, including its group and shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    pub group: GroupParams,
    pub shape: Shape,
    pub spine: [Element; 3],
    pub hairs: Hairs,
}

impl LabelingDocument {
    pub fn new(params: GroupParams, shape: Shape, lab: &Labeling) -> Self {
        let lab = Labeling::new(lab.spine.clone(), lab.hairs.clone());
        LabelingDocument {
            group: params,
            shape,
            spine: lab.spine,
            hairs: lab.hairs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("labeling serializes")
    }

    /// Parses a document. The shape is only checked for summing to `p^k − 3`;
    /// label consistency is left to [`verify`].
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: LabelingDocument = serde_json::from_str(s)?;
        Shape::new(&doc.group, doc.shape.h)?;
        Ok(doc)
    }

    pub fn labeling(&self) -> Labeling {
        Labeling::new(self.spine.clone(), self.hairs.clone())
    }
}

/// The role of every group element, indexed by [`GroupParams::index_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    roles: Vec<Role>,
}

impl Partition {
    pub fn new(params: &GroupParams, roles: Vec<Role>) -> Result<Partition> {
        if roles.len() != params.size() {
            return Err(Error::PartitionShapeMismatch(format!(
                "expected {} roles, got {}",
                params.size(),
                roles.len()
            )));
        }
        for i in 0..3 {
            let c = roles.iter().filter(|&&r| r == Role::spine(i)).count();
            if c != 1 {
                return Err(Error::PartitionShapeMismatch(format!(
                    "spine role {} assigned {c} times",
                    i + 1
                )));
            }
        }
        Ok(Partition { roles })
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role_of(&self, params: &GroupParams, e: &Element) -> Role {
        self.roles[params.index_of(e)]
    }

    pub fn spine(&self, params: &GroupParams) -> [Element; 3] {
        let mut out: [Option<Element>; 3] = [None, None, None];
        for (i, r) in self.roles.iter().enumerate() {
            if let Some(s) = r.spine_index() {
                out[s] = Some(params.element_at(i));
            }
        }
        out.map(|e| e.expect("partition has every spine role"))
    }

    pub fn counts(&self) -> [u64; 3] {
        let mut c = [0u64; 3];
        for r in &self.roles {
            if let Some(h) = r.hair() {
                c[h.index()] += 1;
            }
        }
        c
    }
}

pub fn labeling_to_partition(params: &GroupParams, lab: &Labeling) -> Result<Partition> {
    lab.check_elements(params)?;
    let mut roles: Vec<Option<Role>> = vec![None; params.size()];
    let assigned = lab
        .spine
        .iter()
        .enumerate()
        .map(|(i, e)| (e, Role::spine(i)))
        .chain(
            Hair::ALL
                .iter()
                .flat_map(|&h| lab.hairs.get(h).iter().map(move |e| (e, Role::from(h)))),
        );
    for (e, role) in assigned {
        let slot = &mut roles[params.index_of(e)];
        if slot.is_some() {
            return Err(Error::MalformedLabeling(format!("label {e} used twice")));
        }
        *slot = Some(role);
    }
    let roles = roles
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.ok_or_else(|| {
                Error::MalformedLabeling(format!("element {} is unused", params.element_at(i)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(params, roles)
}

pub fn partition_to_labeling(
    params: &GroupParams,
    shape: &Shape,
    part: &Partition,
) -> Result<Labeling> {
    let counts = part.counts();
    if counts != shape.h {
        return Err(Error::PartitionShapeMismatch(format!(
            "role classes have sizes {counts:?}, shape is {shape}"
        )));
    }
    let mut hairs = Hairs::default();
    for (i, r) in part.roles.iter().enumerate() {
        if let Some(h) = r.hair() {
            hairs.get_mut(h).push(params.element_at(i));
        }
    }
    Ok(Labeling::new(part.spine(params), hairs))
}

/// A vertex of the caterpillar: a spine vertex (0-based) or the `i`-th hair
/// of a class in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Vertex {
    Spine(usize),
    Hair(Hair, usize),
}

/// An edge of the caterpillar: `Spine(0)` joins spine vertices 1–2,
/// `Spine(1)` joins 2–3; `Hair` edges are named by their leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeRef {
    Spine(usize),
    Hair(Hair, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub duplicate_vertex: Option<(Vertex, Vertex)>,
    pub duplicate_edge: Option<(EdgeRef, EdgeRef)>,
    pub missing_edge_label: Option<Element>,
}

fn spine_index(hair: Hair) -> usize {
    hair.index()
}

/// All edges with their induced labels, spine edges first.
pub fn edge_labels(params: &GroupParams, lab: &Labeling) -> Vec<(EdgeRef, Element)> {
    let mut out = vec![
        (EdgeRef::Spine(0), params.add_unchecked(&lab.spine[0], &lab.spine[1])),
        (EdgeRef::Spine(1), params.add_unchecked(&lab.spine[1], &lab.spine[2])),
    ];
    for h in Hair::ALL {
        let anchor = &lab.spine[spine_index(h)];
        for (i, e) in lab.hairs.get(h).iter().enumerate() {
            out.push((EdgeRef::Hair(h, i), params.add_unchecked(anchor, e)));
        }
    }
    out
}

/// Checks that the vertex labels form a bijection onto the group and that
/// the `n − 1` edge labels are pairwise distinct. The first duplicate in
/// canonical order is reported.
pub fn verify(params: &GroupParams, shape: &Shape, lab: &Labeling) -> Result<VerifyReport> {
    Shape::new(params, shape.h)?;
    lab.check_elements(params)?;
    if lab.hair_counts() != shape.h {
        return Err(Error::MalformedLabeling(format!(
            "hair counts {:?} do not match shape {shape}",
            lab.hair_counts()
        )));
    }
    let n = params.size();

    let mut seen_vertex: Vec<Option<Vertex>> = vec![None; n];
    let mut duplicate_vertex = None;
    let vertices = (0..3)
        .map(|i| (Vertex::Spine(i), &lab.spine[i]))
        .chain(Hair::ALL.iter().flat_map(|&h| {
            lab.hairs
                .get(h)
                .iter()
                .enumerate()
                .map(move |(i, e)| (Vertex::Hair(h, i), e))
        }));
    for (v, e) in vertices {
        let slot = &mut seen_vertex[params.index_of(e)];
        match slot {
            Some(first) => {
                duplicate_vertex = Some((*first, v));
                break;
            }
            None => *slot = Some(v),
        }
    }

    let mut seen_edge: Vec<Option<EdgeRef>> = vec![None; n];
    let mut duplicate_edge = None;
    for (edge, label) in edge_labels(params, lab) {
        let slot = &mut seen_edge[params.index_of(&label)];
        match slot {
            Some(first) => {
                duplicate_edge = Some((*first, edge));
                break;
            }
            None => *slot = Some(edge),
        }
    }

    let valid = duplicate_vertex.is_none() && duplicate_edge.is_none();
    let missing_edge_label = if valid {
        seen_edge
            .iter()
            .position(Option::is_none)
            .map(|i| params.element_at(i))
    } else {
        None
    };
    Ok(VerifyReport {
        valid,
        duplicate_vertex,
        duplicate_edge,
        missing_edge_label,
    })
}

/// `−(h1·a1 + (h2+1)·a2 + h3·a3)`: the label every rainbow labeling with
/// this spine and shape must leave uncovered.
pub fn zeta_closed_form(params: &GroupParams, h: [u64; 3], spine: &[Element; 3]) -> Element {
    let p = u64::from(params.p());
    let weights = [h[0] % p, (h[1] + 1) % p, h[2] % p];
    let mut acc = params.zero();
    for (w, a) in weights.iter().zip(spine) {
        acc = params.add_unchecked(&acc, &params.scale_unchecked(*w as i64, a));
    }
    params.neg_unchecked(&acc)
}

/// The unique group element absent from the edge labels of a valid labeling,
/// computed from the double-counting identity.
pub fn missing_edge_label(params: &GroupParams, shape: &Shape, lab: &Labeling) -> Result<Element> {
    if params.order() < 4 {
        return Err(Error::Precondition(format!(
            "no three-spine caterpillar labeling exists for |A| = {}",
            params.order()
        )));
    }
    if !verify(params, shape, lab)?.valid {
        return Err(Error::Precondition("labeling is not rainbow".into()));
    }
    Ok(zeta_closed_form(params, shape.h, &lab.spine))
}

/// A forbidden local pattern in the model `[a, 0, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// X at `b − a`: its edge repeats the spine edge label `b`.
    XAtBMinusA(Element),
    /// Z at `a − b`: its edge repeats the spine edge label `a`.
    ZAtAMinusB(Element),
    /// X at `u` and Y at `u + a`.
    XThenYAlongA { x: Element, y: Element },
    /// Z at `u` and Y at `u + b`.
    ZThenYAlongB { z: Element, y: Element },
    /// Z at `u` and X at `u + (b − a)`.
    ZThenXAlongBMinusA { z: Element, x: Element },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::XAtBMinusA(e) => write!(f, "x=b-a at {e}"),
            Violation::ZAtAMinusB(e) => write!(f, "z=a-b at {e}"),
            Violation::XThenYAlongA { x, y } => write!(f, "x -a-> y: {x} -> {y}"),
            Violation::ZThenYAlongB { z, y } => write!(f, "z -b-> y: {z} -> {y}"),
            Violation::ZThenXAlongBMinusA { z, x } => write!(f, "z -(b-a)-> x: {z} -> {x}"),
        }
    }
}

/// Lists every forbidden assignment in a partition placed in the model
/// `[a, 0, b]` (spine roles at `a`, `0`, `b`). The list is empty exactly when
/// the partition describes a rainbow labeling.
pub fn check_forbidden(
    params: &GroupParams,
    a: &Element,
    b: &Element,
    part: &Partition,
) -> Result<Vec<Violation>> {
    params.check(a)?;
    params.check(b)?;
    let zero = params.zero();
    if part.role_of(params, a) != Role::Spine1
        || part.role_of(params, &zero) != Role::Spine2
        || part.role_of(params, b) != Role::Spine3
    {
        return Err(Error::ModelMismatch {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let b_minus_a = params.sub(b, a)?;
    let a_minus_b = params.neg_unchecked(&b_minus_a);
    let mut out = Vec::new();
    for u in params.elements() {
        match part.role_of(params, &u) {
            Role::X => {
                if u == b_minus_a {
                    out.push(Violation::XAtBMinusA(u.clone()));
                }
                let next = params.add_unchecked(&u, a);
                if part.role_of(params, &next) == Role::Y {
                    out.push(Violation::XThenYAlongA { x: u, y: next });
                }
            }
            Role::Z => {
                if u == a_minus_b {
                    out.push(Violation::ZAtAMinusB(u.clone()));
                }
                let next = params.add_unchecked(&u, b);
                if part.role_of(params, &next) == Role::Y {
                    out.push(Violation::ZThenYAlongB {
                        z: u.clone(),
                        y: next,
                    });
                }
                let skew = params.add_unchecked(&u, &b_minus_a);
                if part.role_of(params, &skew) == Role::X {
                    out.push(Violation::ZThenXAlongBMinusA { z: u, x: skew });
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Adds `c` to every vertex label.
pub fn translate(params: &GroupParams, lab: &Labeling, c: &Element) -> Result<Labeling> {
    params.check(c)?;
    lab.check_elements(params)?;
    Ok(lab.map_labels(|e| params.add_unchecked(e, c)))
}

/// Mirrors the caterpillar: spine `a1 ↔ a3` and hair classes `X ↔ Z`.
pub fn reflect(lab: &Labeling) -> Labeling {
    Labeling::new(
        [lab.spine[2].clone(), lab.spine[1].clone(), lab.spine[0].clone()],
        Hairs {
            x: lab.hairs.z.clone(),
            y: lab.hairs.y.clone(),
            z: lab.hairs.x.clone(),
        },
    )
}

/// Replaces every label `v` by `M·v`.
pub fn apply_automorphism(params: &GroupParams, lab: &Labeling, m: &Matrix) -> Result<Labeling> {
    lab.check_elements(params)?;
    if m.rows().len() != params.k() as usize {
        return Err(Error::InvalidElement("matrix dimension mismatch".into()));
    }
    Ok(lab.map_labels(|e| m.apply(e)))
}
