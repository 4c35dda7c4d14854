//! Exact rational polyhedra: canonical H-representation, V-representation,
//! and the set operations the closure engine and certifier are built on.
//!
//! Every polyhedron is stored in a canonical form computed by a round of
//! double description: generators are enumerated from the lifted homogeneous
//! cone, and the facets are recovered from the polar cone of those
//! generators. Two inputs describing the same point set therefore always
//! canonicalize to identical representations.

mod dd;

use crate::error::{Error, Result};
use crate::lattice::{primitive_int_vector, primitive_vector};
use crate::numeric::*;
use num::{Signed, Zero};

/// A single constraint `coeffs · x ≤ rhs` (or `= rhs` when stored as an
/// equality). Coefficients are primitive integral unless the row is zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinIneq {
    pub coeffs: Vec<Int>,
    pub rhs: Rat,
}

impl LinIneq {
    pub fn new(coeffs: Vec<Int>, rhs: Rat) -> Self {
        LinIneq { coeffs, rhs }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_ir(&self.coeffs, x)
    }

    pub fn satisfied_le(&self, x: &[Rat]) -> bool {
        self.eval(x) <= self.rhs
    }

    pub fn satisfied_eq(&self, x: &[Rat]) -> bool {
        self.eval(x) == self.rhs
    }

    /// Lifted homogeneous row (coeffs, −rhs).
    fn lifted(&self) -> Vec<Rat> {
        let mut v = int_to_rat_vec(&self.coeffs);
        v.push(-self.rhs.clone());
        v
    }
}

/// Canonical H-representation: implicit equalities promoted, rows
/// irredundant, primitive and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub equalities: Vec<LinIneq>,
    pub inequalities: Vec<LinIneq>,
}

impl HRep {
    /// Canonical form of the empty polyhedron: the single row 0·x ≤ −1.
    pub fn empty_canonical(dim: usize) -> Self {
        HRep {
            dim,
            equalities: vec![],
            inequalities: vec![LinIneq::new(vec![Int::zero(); dim], -Rat::one())],
        }
    }
}

/// Minimal V-representation. Rays and lineality generators are primitive
/// integral; with nontrivial lineality, vertex and ray representatives are
/// the orthogonal projections onto the lineality complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            vertices: vec![],
            rays: vec![],
            lineality: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Set relation between two polyhedra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    SubsetStrict,
    SupersetStrict,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    hrep: HRep,
    vrep: VRep,
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        self.hrep.dim
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn is_empty(&self) -> bool {
        self.vrep.is_empty()
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            hrep: HRep::empty_canonical(dim),
            vrep: VRep::empty(dim),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_inequalities(dim, &[], &[]).expect("full space is well formed")
    }

    /// Canonicalize a raw list of inequalities and equalities.
    pub fn from_inequalities(
        dim: usize,
        ineqs: &[(Vec<Rat>, Rat)],
        eqs: &[(Vec<Rat>, Rat)],
    ) -> Result<Self> {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (a, b) in ineqs {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            let mut r = a.clone();
            r.push(-b.clone());
            rows.push(r);
        }
        for (a, b) in eqs {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            let mut r = a.clone();
            r.push(-b.clone());
            rows.push(r.iter().map(|x| -x).collect());
            rows.push(r);
        }
        Ok(Self::from_lifted_rows(dim, rows))
    }

    /// Canonical polyhedron from arbitrary (possibly redundant) generators.
    pub fn from_generators(
        dim: usize,
        vertices: Vec<Vec<Rat>>,
        rays: Vec<Vec<Int>>,
        lineality: Vec<Vec<Int>>,
    ) -> Self {
        if vertices.is_empty() {
            return Self::empty(dim);
        }
        let raw = VRep {
            dim,
            vertices,
            rays,
            lineality,
        };
        let hrep = vrep_to_hrep(&raw);
        let vrep = dd_convert_hrep(&hrep);
        Polyhedron { hrep, vrep }
    }

    pub(crate) fn from_lifted_rows(dim: usize, rows: Vec<Vec<Rat>>) -> Self {
        match raw_vrep(dim, rows) {
            None => Self::empty(dim),
            Some(vrep) => {
                let hrep = vrep_to_hrep(&vrep);
                // the vrep from the raw rows is already minimal and canonical
                Polyhedron { hrep, vrep }
            }
        }
    }

    fn lifted_rows(&self) -> Vec<Vec<Rat>> {
        let mut rows = Vec::new();
        for e in &self.hrep.equalities {
            let r = e.lifted();
            rows.push(r.iter().map(|x| -x).collect());
            rows.push(r);
        }
        for i in &self.hrep.inequalities {
            rows.push(i.lifted());
        }
        rows
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim());
        self.hrep.equalities.iter().all(|e| e.satisfied_eq(x))
            && self.hrep.inequalities.iter().all(|i| i.satisfied_le(x))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim(), other.dim());
        let mut rows = self.lifted_rows();
        rows.extend(other.lifted_rows());
        Self::from_lifted_rows(self.dim(), rows)
    }

    /// Intersection with the hyperplane d·x = δ.
    pub fn with_hyperplane(&self, d: &[Int], delta: &Rat) -> Polyhedron {
        let mut rows = self.lifted_rows();
        let mut r = int_to_rat_vec(d);
        r.push(-delta.clone());
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
        Self::from_lifted_rows(self.dim(), rows)
    }

    /// Intersection with the halfspace d·x ≤ δ (or ≥ when `upper` is false).
    pub fn with_halfspace(&self, d: &[Int], delta: &Rat, upper: bool) -> Polyhedron {
        let mut rows = self.lifted_rows();
        let mut r = int_to_rat_vec(d);
        r.push(-delta.clone());
        if !upper {
            r = r.iter().map(|x| -x).collect();
        }
        rows.push(r);
        Self::from_lifted_rows(self.dim(), rows)
    }

    /// Closed convex hull of the union, computed from combined generators.
    pub fn conv_union(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim(), other.dim());
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let mut vertices = self.vrep.vertices.clone();
        vertices.extend(other.vrep.vertices.clone());
        let mut rays = self.vrep.rays.clone();
        rays.extend(other.vrep.rays.clone());
        let mut lineality = self.vrep.lineality.clone();
        lineality.extend(other.vrep.lineality.clone());
        Self::from_generators(self.dim(), vertices, rays, lineality)
    }

    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let dim = self.dim();
        let ineqs: Vec<(Vec<Rat>, Rat)> = self
            .hrep
            .inequalities
            .iter()
            .map(|i| (int_to_rat_vec(&i.coeffs), Rat::zero()))
            .collect();
        let eqs: Vec<(Vec<Rat>, Rat)> = self
            .hrep
            .equalities
            .iter()
            .map(|e| (int_to_rat_vec(&e.coeffs), Rat::zero()))
            .collect();
        Self::from_inequalities(dim, &ineqs, &eqs)
    }

    /// Affine dimension; None for the empty polyhedron.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let v0 = &self.vrep.vertices[0];
        let mut dirs: Vec<Vec<Rat>> = self.vrep.vertices[1..]
            .iter()
            .map(|v| sub_vec(v, v0))
            .collect();
        dirs.extend(self.vrep.rays.iter().map(|r| int_to_rat_vec(r)));
        dirs.extend(self.vrep.lineality.iter().map(|l| int_to_rat_vec(l)));
        Some(rank_rat(&dirs))
    }

    /// Every generator of `self` satisfies every constraint of `other`.
    pub fn is_subset(&self, other: &Polyhedron) -> bool {
        assert_eq!(self.dim(), other.dim());
        if self.is_empty() {
            return true;
        }
        if other.is_empty() {
            return false;
        }
        let h = &other.hrep;
        for v in &self.vrep.vertices {
            if !other.contains(v) {
                return false;
            }
        }
        for r in &self.vrep.rays {
            let rr = int_to_rat_vec(r);
            if h.equalities.iter().any(|e| !dot_ir(&e.coeffs, &rr).is_zero()) {
                return false;
            }
            if h.inequalities
                .iter()
                .any(|i| dot_ir(&i.coeffs, &rr).is_positive())
            {
                return false;
            }
        }
        for l in &self.vrep.lineality {
            let lr = int_to_rat_vec(l);
            if h.equalities.iter().any(|e| !dot_ir(&e.coeffs, &lr).is_zero()) {
                return false;
            }
            if h.inequalities
                .iter()
                .any(|i| !dot_ir(&i.coeffs, &lr).is_zero())
            {
                return false;
            }
        }
        true
    }

    pub fn relate(&self, other: &Polyhedron) -> Relation {
        match (self.is_subset(other), other.is_subset(self)) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::SubsetStrict,
            (false, true) => Relation::SupersetStrict,
            (false, false) => Relation::Incomparable,
        }
    }

    /// True if this polyhedron is the trivial cone {0}.
    pub fn is_origin(&self) -> bool {
        self.vrep.rays.is_empty()
            && self.vrep.lineality.is_empty()
            && self.vrep.vertices.len() == 1
            && is_zero_vec(&self.vrep.vertices[0])
    }

    /// For a cone K and a direction c with c·x ≤ 0 valid on K: the exposed
    /// face F = {x ∈ K : c·x = 0} together with k = n − dim(F) linearly
    /// independent valid normals g_i with F = K ∩ {x : g_i·x = 0 ∀i}.
    ///
    /// Normals are chosen greedily from the tight rows of the canonical
    /// H-representation (equalities contribute both signs); for K = {0} the
    /// standard basis is returned.
    pub fn exposed_face_normals(
        &self,
        c: &[Rat],
    ) -> Result<(Polyhedron, Vec<Vec<Int>>, usize)> {
        let n = self.dim();
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let lp = crate::lp::solve_lp(self, c, crate::lp::Sense::Max);
        match lp.status {
            crate::lp::LPStatus::Optimal if lp.value.as_ref().unwrap().is_zero() => {}
            _ => return Err(Error::InvalidObjective),
        }

        if self.is_origin() {
            let basis: Vec<Vec<Int>> = (0..n)
                .map(|i| {
                    let mut v = vec![Int::zero(); n];
                    v[i] = Int::one();
                    v
                })
                .collect();
            return Ok((self.clone(), basis, n));
        }

        let face = if is_zero_vec(c) {
            self.clone()
        } else {
            let ci = clear_denominators(c);
            self.with_hyperplane(&ci, &Rat::zero())
        };
        let k = n - face.affine_dim().expect("face contains the origin");

        // generators of the face (the only vertex is the origin)
        let gens: Vec<Vec<Rat>> = face
            .vrep
            .rays
            .iter()
            .chain(face.vrep.lineality.iter())
            .map(|v| int_to_rat_vec(v))
            .collect();
        let tight = |row: &[Int]| -> bool {
            let rr = int_to_rat_vec(row);
            gens.iter().all(|g| dot(&rr, g).is_zero())
        };

        let mut candidates: Vec<Vec<Int>> = Vec::new();
        for e in &self.hrep.equalities {
            candidates.push(e.coeffs.clone());
            candidates.push(neg_int_vec(&e.coeffs));
        }
        for i in &self.hrep.inequalities {
            if tight(&i.coeffs) {
                candidates.push(i.coeffs.clone());
            }
        }

        let mut chosen: Vec<Vec<Int>> = Vec::new();
        let mut chosen_rat: Vec<Vec<Rat>> = Vec::new();
        for cand in candidates {
            if chosen.len() == k {
                break;
            }
            let mut trial = chosen_rat.clone();
            trial.push(int_to_rat_vec(&cand));
            if rank_rat(&trial) > chosen.len() {
                chosen_rat = trial;
                chosen.push(cand);
            }
        }
        assert_eq!(
            chosen.len(),
            k,
            "tight rows of the canonical form must span the face complement"
        );
        Ok((face, chosen, k))
    }

    /// Generators of the slice {x ∈ P : d·x = δ}, or None if empty.
    /// Skips facet recovery; used by the closure engine.
    pub(crate) fn slice_generators(&self, d: &[Int], delta: &Rat) -> Option<VRep> {
        let mut rows = self.lifted_rows();
        let mut r = int_to_rat_vec(d);
        r.push(-delta.clone());
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
        raw_vrep(self.dim(), rows)
    }
}

/// Run forward DD on lifted constraint rows; None when the set is empty.
fn raw_vrep(dim: usize, mut rows: Vec<Vec<Rat>>) -> Option<VRep> {
    let mut x0 = vec![Rat::zero(); dim];
    x0.push(-Rat::one());
    rows.push(x0);
    rows.sort();
    rows.dedup();
    let gens = dd::dd_cone(dim + 1, &rows);

    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for r in &gens.rays {
        let last = &r[dim];
        if last.is_zero() {
            let head = r[..dim].to_vec();
            if !is_zero_int_vec(&head) {
                rays.push(primitive_int_vector(&head));
            }
        } else {
            debug_assert!(last.is_positive());
            let lr = Rat::from_integer(last.clone());
            vertices.push(r[..dim].iter().map(|x| Rat::from_integer(x.clone()) / &lr).collect());
        }
    }
    if vertices.is_empty() {
        return None;
    }

    // canonical lineality basis: RREF of the space, primitivized
    let mut lin_rows: Vec<Vec<Rat>> = gens
        .lineality
        .iter()
        .map(|l| {
            debug_assert!(l[dim].is_zero());
            l[..dim].to_vec()
        })
        .collect();
    rref(&mut lin_rows);
    let lineality: Vec<Vec<Int>> = lin_rows
        .iter()
        .filter(|r| !is_zero_vec(r))
        .map(|r| primitive_vector(r).expect("nonzero lineality row"))
        .collect();

    // canonical representatives modulo lineality
    let (mut vertices, mut rays) = if lineality.is_empty() {
        (vertices, rays)
    } else {
        let lin_rat: Vec<Vec<Rat>> = lineality.iter().map(|l| int_to_rat_vec(l)).collect();
        let proj = |v: &[Rat]| project_out(v, &lin_rat);
        let vs: Vec<Vec<Rat>> = vertices.iter().map(|v| proj(v)).collect();
        let rs: Vec<Vec<Int>> = rays
            .iter()
            .map(|r| proj(&int_to_rat_vec(r)))
            .filter(|r| !is_zero_vec(r))
            .map(|r| primitive_vector(&r).expect("nonzero ray"))
            .collect();
        (vs, rs)
    };
    vertices.sort();
    vertices.dedup();
    rays.sort();
    rays.dedup();

    let mut lineality = lineality;
    lineality.sort();

    Some(VRep {
        dim,
        vertices,
        rays,
        lineality,
    })
}

/// Orthogonal projection of v onto the complement of span(basis).
fn project_out(v: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rat> = basis.iter().map(|b| dot(b, v)).collect();
    let mu = solve_rat(&gram, &rhs).expect("Gram matrix of a basis is invertible");
    let mut out = v.to_vec();
    for (m, b) in mu.iter().zip(basis) {
        out = sub_vec(&out, &scale_vec(b, m));
    }
    out
}

/// Facet recovery: minimal canonical H-representation from generators,
/// via the polar cone of the lifted generators.
fn vrep_to_hrep(v: &VRep) -> HRep {
    let dim = v.dim;
    if v.is_empty() {
        return HRep::empty_canonical(dim);
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for vert in &v.vertices {
        let mut r = vert.clone();
        r.push(Rat::one());
        rows.push(r);
    }
    for ray in &v.rays {
        let mut r = int_to_rat_vec(ray);
        r.push(Rat::zero());
        rows.push(r);
    }
    for l in &v.lineality {
        let mut r = int_to_rat_vec(l);
        r.push(Rat::zero());
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    rows.sort();
    rows.dedup();
    let polar = dd::dd_cone(dim + 1, &rows);

    // polar lineality = valid equalities
    let mut eq_rows: Vec<Vec<Rat>> = polar.lineality.clone();
    rref(&mut eq_rows);
    let mut equalities: Vec<LinIneq> = Vec::new();
    for row in eq_rows.iter().filter(|r| !is_zero_vec(r)) {
        let c = &row[..dim];
        assert!(
            !is_zero_vec(c),
            "nonempty polyhedron admits no equality with zero normal"
        );
        let rhs = -row[dim].clone();
        equalities.push(canonical_equality(c, &rhs));
    }
    equalities.sort();

    let eq_normals: Vec<Vec<Rat>> = equalities
        .iter()
        .map(|e| int_to_rat_vec(&e.coeffs))
        .collect();
    let mut inequalities: Vec<LinIneq> = Vec::new();
    for ray in &polar.rays {
        let c: Vec<Rat> = int_to_rat_vec(&ray[..dim]);
        let rhs = -Rat::from_integer(ray[dim].clone());
        // reduce modulo the equality span; trivial rows vanish here
        let (c, rhs) = reduce_mod_equalities(&c, &rhs, &eq_normals, &equalities);
        if is_zero_vec(&c) {
            continue;
        }
        let prim = primitive_vector(&c).expect("nonzero normal");
        // positive rescale factor applied to the rhs as well
        let j = c.iter().position(|x| !x.is_zero()).unwrap();
        let lambda = Rat::from_integer(prim[j].clone()) / &c[j];
        inequalities.push(LinIneq::new(prim, rhs * lambda));
    }
    inequalities.sort();
    inequalities.dedup();

    HRep {
        dim,
        equalities,
        inequalities,
    }
}

fn canonical_equality(c: &[Rat], rhs: &Rat) -> LinIneq {
    let first = c.iter().find(|x| !x.is_zero()).expect("nonzero normal");
    let (c, rhs) = if first.is_negative() {
        (c.iter().map(|x| -x).collect::<Vec<_>>(), -rhs.clone())
    } else {
        (c.to_vec(), rhs.clone())
    };
    let prim = primitive_vector(&c).expect("nonzero normal");
    let j = c.iter().position(|x| !x.is_zero()).unwrap();
    let lambda = Rat::from_integer(prim[j].clone()) / &c[j];
    LinIneq::new(prim, rhs * lambda)
}

/// Subtract the equality-span component of an inequality normal so that the
/// representative is orthogonal to every equality normal.
fn reduce_mod_equalities(
    c: &[Rat],
    rhs: &Rat,
    eq_normals: &[Vec<Rat>],
    equalities: &[LinIneq],
) -> (Vec<Rat>, Rat) {
    if eq_normals.is_empty() {
        return (c.to_vec(), rhs.clone());
    }
    let gram: Vec<Vec<Rat>> = eq_normals
        .iter()
        .map(|a| eq_normals.iter().map(|b| dot(a, b)).collect())
        .collect();
    let target: Vec<Rat> = eq_normals.iter().map(|e| dot(e, c)).collect();
    let mu = solve_rat(&gram, &target).expect("equality normals are independent");
    let mut out_c = c.to_vec();
    let mut out_rhs = rhs.clone();
    for ((m, e), eq) in mu.iter().zip(eq_normals).zip(equalities) {
        out_c = sub_vec(&out_c, &scale_vec(e, m));
        out_rhs -= m * &eq.rhs;
    }
    (out_c, out_rhs)
}

/// Forward conversion for an already-canonical H-representation.
fn dd_convert_hrep(h: &HRep) -> VRep {
    let mut rows = Vec::new();
    for e in &h.equalities {
        let r = e.lifted();
        rows.push(r.iter().map(|x: &Rat| -x).collect());
        rows.push(r);
    }
    for i in &h.inequalities {
        rows.push(i.lifted());
    }
    raw_vrep(h.dim, rows).unwrap_or_else(|| VRep::empty(h.dim))
}
