//! The functors between classifications, concept lattices, bonds, complete
//! adjoints, bonding pairs and complete homomorphisms, with the witnesses of
//! the three equivalences.
//!
//! | functor | from | to |
//! |---|---|---|
//! | [`l_morphism`] | functional infomorphisms | concept lattice morphisms |
//! | [`c_morphism`] | concept lattice morphisms | functional infomorphisms |
//! | [`a_bond`] | bonds | complete adjoints |
//! | [`b_adjoint`] | complete adjoints | bonds |
//! | [`a2_pair`] | bonding pairs | complete homomorphisms |
//! | [`b2_hom`] | complete homomorphisms | bonding pairs |

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::bond::{Bond, BondingPair};
use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::infomorphism::FunctionalInfomorphism;
use crate::lattice::{AbstractConceptLattice, CompleteLattice, ConceptLattice};
use crate::relalg::{FunctionGraph, Relation};

fn lattice_shape(op: &'static str, f: &FunctionGraph, dom: usize, cod: usize) -> Result<()> {
    if f.domain() != dom || f.codomain() != cod {
        return Err(Error::ShapeMismatch { op, left: (dom, cod), right: (f.domain(), f.codomain()) });
    }
    Ok(())
}

/// First `(y, x)` violating `φ(y) ≤ x ⇔ y ≤ ψ(x)`.
fn adjoint_violation(
    source: &CompleteLattice,
    target: &CompleteLattice,
    phi: &FunctionGraph,
    psi: &FunctionGraph,
) -> Option<(usize, usize)> {
    (0..target.len()).find_map(|y| {
        (0..source.len())
            .find(|&x| source.leq(phi.apply(y), x) != target.leq(y, psi.apply(x)))
            .map(|x| (y, x))
    })
}

/// An adjoint pair `φ ⊣ ψ` with `ψ: source → target` and
/// `φ: target → source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointPair {
    source: Arc<CompleteLattice>,
    target: Arc<CompleteLattice>,
    phi: FunctionGraph,
    psi: FunctionGraph,
}

impl AdjointPair {
    pub fn new(
        source: Arc<CompleteLattice>,
        target: Arc<CompleteLattice>,
        phi: FunctionGraph,
        psi: FunctionGraph,
    ) -> Result<Self> {
        lattice_shape("left adjoint", &phi, target.len(), source.len())?;
        lattice_shape("right adjoint", &psi, source.len(), target.len())?;
        if let Some((left, right)) = adjoint_violation(&source, &target, &phi, &psi) {
            return Err(Error::NotAdjoint { left, right });
        }
        Ok(AdjointPair { source, target, phi, psi })
    }

    pub fn identity(l: Arc<CompleteLattice>) -> Self {
        let id = FunctionGraph::identity(l.len());
        AdjointPair { source: l.clone(), target: l, phi: id.clone(), psi: id }
    }

    pub fn source(&self) -> &Arc<CompleteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CompleteLattice> {
        &self.target
    }

    /// Left adjoint `target → source`.
    pub fn phi(&self) -> &FunctionGraph {
        &self.phi
    }

    /// Right adjoint `source → target`.
    pub fn psi(&self) -> &FunctionGraph {
        &self.psi
    }

    pub fn compose(&self, next: &AdjointPair) -> Result<AdjointPair> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("compose adjoint pairs"));
        }
        Ok(AdjointPair {
            source: self.source.clone(),
            target: next.target.clone(),
            phi: next.phi.then(&self.phi)?,
            psi: self.psi.then(&next.psi)?,
        })
    }
}

/// A map between finite lattices preserving all meets and joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteHomomorphism {
    source: Arc<CompleteLattice>,
    target: Arc<CompleteLattice>,
    map: FunctionGraph,
}

impl CompleteHomomorphism {
    /// Checks the empty and binary meets and joins, which suffices for finite
    /// lattices. The witness is the subset whose meet or join is not
    /// preserved.
    pub fn new(source: Arc<CompleteLattice>, target: Arc<CompleteLattice>, map: FunctionGraph) -> Result<Self> {
        lattice_shape("complete homomorphism", &map, source.len(), target.len())?;
        let h = |x: usize| map.apply(x);
        if h(source.top()) != target.top() || h(source.bottom()) != target.bottom() {
            return Err(Error::NotACompleteHomomorphism { witness: vec![] });
        }
        for x in 0..source.len() {
            for y in x + 1..source.len() {
                if h(source.meet_of([x, y])) != target.meet_of([h(x), h(y)])
                    || h(source.join_of([x, y])) != target.join_of([h(x), h(y)])
                {
                    return Err(Error::NotACompleteHomomorphism { witness: vec![x, y] });
                }
            }
        }
        Ok(CompleteHomomorphism { source, target, map })
    }

    pub fn identity(l: Arc<CompleteLattice>) -> Self {
        let map = FunctionGraph::identity(l.len());
        CompleteHomomorphism { source: l.clone(), target: l, map }
    }

    pub fn source(&self) -> &Arc<CompleteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CompleteLattice> {
        &self.target
    }

    pub fn map(&self) -> &FunctionGraph {
        &self.map
    }

    pub fn compose(&self, next: &CompleteHomomorphism) -> Result<CompleteHomomorphism> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("compose homomorphisms"));
        }
        Ok(CompleteHomomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.then(&next.map)?,
        })
    }

    /// `φ(y) = ⋀{x | y ≤ ψ(x)}`, the left adjoint.
    pub fn lower_adjoint(&self) -> FunctionGraph {
        let (l, k) = (&self.source, &self.target);
        let map = (0..k.len())
            .map(|y| l.meet_of((0..l.len()).filter(|&x| k.leq(y, self.map.apply(x)))))
            .collect();
        FunctionGraph::new(map, l.len()).expect("in range")
    }

    /// `θ(y) = ⋁{x | ψ(x) ≤ y}`, the right adjoint.
    pub fn upper_adjoint(&self) -> FunctionGraph {
        let (l, k) = (&self.source, &self.target);
        let map = (0..k.len())
            .map(|y| l.join_of((0..l.len()).filter(|&x| k.leq(self.map.apply(x), y))))
            .collect();
        FunctionGraph::new(map, l.len()).expect("in range")
    }

    /// Every complete homomorphism `source → target`, by brute force.
    pub fn enumerate(source: &Arc<CompleteLattice>, target: &Arc<CompleteLattice>) -> Vec<CompleteHomomorphism> {
        FunctionGraph::enumerate(source.len(), target.len())
            .filter_map(|map| CompleteHomomorphism::new(source.clone(), target.clone(), map).ok())
            .collect()
    }
}

/// `⟨φ, ψ, f, g⟩: L ⇄ K` between abstract concept lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptLatticeMorphism {
    source: Arc<AbstractConceptLattice>,
    target: Arc<AbstractConceptLattice>,
    phi: FunctionGraph,
    psi: FunctionGraph,
    f: FunctionGraph,
    g: FunctionGraph,
}

impl ConceptLatticeMorphism {
    pub fn new(
        source: Arc<AbstractConceptLattice>,
        target: Arc<AbstractConceptLattice>,
        phi: FunctionGraph,
        psi: FunctionGraph,
        f: FunctionGraph,
        g: FunctionGraph,
    ) -> Result<Self> {
        let m = Self::unchecked(source, target, phi, psi, f, g)?;
        m.check()?;
        Ok(m)
    }

    pub fn unchecked(
        source: Arc<AbstractConceptLattice>,
        target: Arc<AbstractConceptLattice>,
        phi: FunctionGraph,
        psi: FunctionGraph,
        f: FunctionGraph,
        g: FunctionGraph,
    ) -> Result<Self> {
        lattice_shape("phi", &phi, target.len(), source.len())?;
        lattice_shape("psi", &psi, source.len(), target.len())?;
        lattice_shape("instance function", &f, target.instance_labels().len(), source.instance_labels().len())?;
        lattice_shape("type function", &g, source.type_labels().len(), target.type_labels().len())?;
        Ok(ConceptLatticeMorphism { source, target, phi, psi, f, g })
    }

    /// The candidate determined by `(f, g)`: `ψ(x) = ⋀{τ_K(g α) | x ≤ τ_L(α)}`
    /// and `φ(y) = ⋁{ι_L(f b) | ι_K(b) ≤ y}`. Not validated.
    pub fn from_functions(
        source: Arc<AbstractConceptLattice>,
        target: Arc<AbstractConceptLattice>,
        f: FunctionGraph,
        g: FunctionGraph,
    ) -> Result<Self> {
        let (l, k) = (source.lattice(), target.lattice());
        let psi = (0..l.len())
            .map(|x| k.meet_of(source.types_above(x).iter().map(|t| target.tau().apply(g.apply(t)))))
            .collect();
        let phi = (0..k.len())
            .map(|y| l.join_of(target.instances_below(y).iter().map(|b| source.iota().apply(f.apply(b)))))
            .collect();
        let psi = FunctionGraph::new(psi, k.len())?;
        let phi = FunctionGraph::new(phi, l.len())?;
        Self::unchecked(source, target, phi, psi, f, g)
    }

    /// Adjointness, type preservation `τ_L;ψ == g;τ_K` and instance
    /// preservation `ι_K;φ == f;ι_L`.
    pub fn check(&self) -> Result<()> {
        let (l, k) = (&self.source, &self.target);
        if let Some((y, x)) = adjoint_violation(l.lattice(), k.lattice(), &self.phi, &self.psi) {
            return Err(Error::NotAConceptLatticeMorphism(format!("not adjoint at ({y}, {x})")));
        }
        if let Some(t) = (0..self.g.domain()).find(|&t| self.psi.apply(l.tau().apply(t)) != k.tau().apply(self.g.apply(t))) {
            return Err(Error::NotAConceptLatticeMorphism(format!("type concept of {t} not preserved")));
        }
        if let Some(b) = (0..self.f.domain()).find(|&b| self.phi.apply(k.iota().apply(b)) != l.iota().apply(self.f.apply(b))) {
            return Err(Error::NotAConceptLatticeMorphism(format!("instance concept of {b} not preserved")));
        }
        Ok(())
    }

    pub fn identity(l: Arc<AbstractConceptLattice>) -> Self {
        let id = FunctionGraph::identity(l.len());
        let f = FunctionGraph::identity(l.instance_labels().len());
        let g = FunctionGraph::identity(l.type_labels().len());
        ConceptLatticeMorphism { source: l.clone(), target: l, phi: id.clone(), psi: id, f, g }
    }

    pub fn source(&self) -> &Arc<AbstractConceptLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AbstractConceptLattice> {
        &self.target
    }

    pub fn phi(&self) -> &FunctionGraph {
        &self.phi
    }

    pub fn psi(&self) -> &FunctionGraph {
        &self.psi
    }

    pub fn f(&self) -> &FunctionGraph {
        &self.f
    }

    pub fn g(&self) -> &FunctionGraph {
        &self.g
    }

    /// Same morphism with `ψ` replaced, unchecked. Used to inject faults.
    pub fn with_psi(&self, psi: FunctionGraph) -> Self {
        ConceptLatticeMorphism { psi, ..self.clone() }
    }

    pub fn compose(&self, next: &ConceptLatticeMorphism) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("compose concept lattice morphisms"));
        }
        Ok(ConceptLatticeMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            phi: next.phi.then(&self.phi)?,
            psi: self.psi.then(&next.psi)?,
            f: next.f.then(&self.f)?,
            g: self.g.then(&next.g)?,
        })
    }

    /// All valid morphisms `source ⇄ target`, found by running through every
    /// `(f, g)`. With `instance_identity` only `f = id` is tried.
    pub fn enumerate(
        source: &Arc<AbstractConceptLattice>,
        target: &Arc<AbstractConceptLattice>,
        instance_identity: bool,
    ) -> Vec<Self> {
        let fs: Vec<FunctionGraph> = if instance_identity {
            if source.instance_labels() != target.instance_labels() {
                return Vec::new();
            }
            vec![FunctionGraph::identity(source.instance_labels().len())]
        } else {
            FunctionGraph::enumerate(target.instance_labels().len(), source.instance_labels().len()).collect()
        };
        let mut out = Vec::new();
        for f in &fs {
            for g in FunctionGraph::enumerate(source.type_labels().len(), target.type_labels().len()) {
                let m = Self::from_functions(source.clone(), target.clone(), f.clone(), g).expect("shapes");
                if m.check().is_ok() {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// `L(A)` as an abstract concept lattice.
pub fn l_object(a: &Classification) -> Result<Arc<AbstractConceptLattice>> {
    Ok(Arc::new(a.lattice()?.to_abstract()))
}

/// `L(⟨f, g⟩)`: `ψ(E, I) = (f⁻¹[E], ..)` and `φ(E', I') = (.., g⁻¹[I'])`.
pub fn l_morphism(m: &FunctionalInfomorphism) -> Result<ConceptLatticeMorphism> {
    m.check()?;
    let (la, lb) = (m.source().lattice()?, m.target().lattice()?);
    let foreign = |what: &str| Error::NotAConceptLatticeMorphism(format!("{what} is not closed"));
    let psi = la
        .concepts()
        .iter()
        .map(|c| lb.index_of_extent(&m.f().preimage(&c.extent)).ok_or_else(|| foreign("inverse image of an extent")))
        .collect::<Result<Vec<_>>>()?;
    let phi = lb
        .concepts()
        .iter()
        .map(|d| la.index_of_intent(&m.g().preimage(&d.intent)).ok_or_else(|| foreign("inverse image of an intent")))
        .collect::<Result<Vec<_>>>()?;
    ConceptLatticeMorphism::new(
        Arc::new(la.to_abstract()),
        Arc::new(lb.to_abstract()),
        FunctionGraph::new(phi, la.len())?,
        FunctionGraph::new(psi, lb.len())?,
        m.f().clone(),
        m.g().clone(),
    )
}

/// `C(L) = ⟨inst, typ, ι ∘ ≤ ∘ τᵀ⟩`.
pub fn c_object(l: &AbstractConceptLattice) -> Classification {
    let lat = l.lattice();
    let incidence = Relation::from_fn(l.instance_labels().len(), l.type_labels().len(), |a, t| {
        lat.leq(l.iota().apply(a), l.tau().apply(t))
    });
    Classification::new(l.instance_labels().to_vec(), l.type_labels().to_vec(), incidence).expect("labels of a valid lattice")
}

/// `C(⟨φ, ψ, f, g⟩) = ⟨f, g⟩: C(L) ⇄ C(K)`.
pub fn c_morphism(m: &ConceptLatticeMorphism) -> Result<FunctionalInfomorphism> {
    m.check()?;
    FunctionalInfomorphism::new(
        Arc::new(c_object(m.source())),
        Arc::new(c_object(m.target())),
        m.f().clone(),
        m.g().clone(),
    )
}

/// A pair of mutually inverse monotone maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    pub forward: FunctionGraph,
    pub backward: FunctionGraph,
}

impl LatticeIso {
    pub fn is_isomorphism(&self, from: &CompleteLattice, to: &CompleteLattice) -> bool {
        self.forward.domain() == from.len()
            && self.backward.domain() == to.len()
            && self.forward.then(&self.backward).ok() == Some(FunctionGraph::identity(from.len()))
            && self.backward.then(&self.forward).ok() == Some(FunctionGraph::identity(to.len()))
            && from.is_monotone(self.forward.as_slice(), to)
            && to.is_monotone(self.backward.as_slice(), from)
    }
}

/// `L(C(L)) ≅ L`: forward `(E, I) ↦ ⋁ι[E]`, backward
/// `x ↦ ({a | ι(a) ≤ x}, {α | x ≤ τ(α)})`.
pub fn cl_witness(l: &AbstractConceptLattice) -> Result<(Arc<ConceptLattice>, LatticeIso)> {
    let lcl = c_object(l).lattice()?;
    let forward = lcl
        .concepts()
        .iter()
        .map(|c| l.lattice().join_of(c.extent.iter().map(|a| l.iota().apply(a))))
        .collect();
    let backward = (0..l.len())
        .map(|x| {
            let (ext, int) = (l.instances_below(x), l.types_above(x));
            lcl.index_of_extent(&ext)
                .filter(|&i| lcl.concept(i).intent == int)
                .ok_or_else(|| Error::NotALattice(format!("element {x} does not give a concept")))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = LatticeIso {
        forward: FunctionGraph::new(forward, l.len())?,
        backward: FunctionGraph::new(backward, lcl.len())?,
    };
    if !iso.is_isomorphism(lcl.lattice(), l.lattice()) {
        return Err(Error::NotALattice("witness maps are not inverse isomorphisms".into()));
    }
    Ok((lcl, iso))
}

fn meet_columns(rel: &Relation, cols: &BitSet) -> BitSet {
    let mut out = BitSet::full(rel.rows());
    for c in cols {
        out.intersect_with(&rel.col(c));
    }
    out
}

fn meet_rows(rel: &Relation, rows: &BitSet) -> BitSet {
    let mut out = BitSet::full(rel.cols());
    for r in rows {
        out.intersect_with(&rel.row(r));
    }
    out
}

/// `A(F)`: `ψ(E, I) = (I^F, ..)` on `L(A)` and `φ(E', I') = (.., E'^F)` on
/// `L(B)`.
pub fn a_bond(bond: &Bond) -> Result<AdjointPair> {
    if let Some(v) = bond.violation() {
        return Err(Error::NotABond(v));
    }
    let (la, lb) = (bond.source().lattice()?, bond.target().lattice()?);
    let psi = la
        .concepts()
        .iter()
        .map(|c| lb.index_of_extent(&meet_columns(bond.rel(), &c.intent)).expect("columns of a bond are extents"))
        .collect();
    let phi = lb
        .concepts()
        .iter()
        .map(|d| la.index_of_intent(&meet_rows(bond.rel(), &d.extent)).expect("rows of a bond are intents"))
        .collect();
    AdjointPair::new(
        la.lattice().clone(),
        lb.lattice().clone(),
        FunctionGraph::new(phi, la.len())?,
        FunctionGraph::new(psi, lb.len())?,
    )
}

/// `(ψ, φ)` of `A(F)` computed through the concept lattice of `F` itself,
/// read as the classification `⟨inst(B), typ(A), F⟩`.
pub fn a_bond_factored(bond: &Bond) -> Result<(FunctionGraph, FunctionGraph)> {
    let (a, b) = (bond.source(), bond.target());
    let k = Classification::new(b.instances().to_vec(), a.types().to_vec(), bond.rel().clone())?;
    let (la, lb, lf) = (a.lattice()?, b.lattice()?, ConceptLattice::build(&k)?);
    // ∂̃₀: (E, I) ↦ (I^F, I^FF) and ∂₁: (E, I) ↦ (E, E^B)
    let d0_tilde: Vec<usize> = la.concepts().iter().map(|c| lf.concept_of_types(&c.intent)).collect();
    let d1: Vec<usize> = lf.concepts().iter().map(|c| lb.concept_of_instances(&c.extent)).collect();
    // ∂̃₁: (E, I) ↦ (E^FF, E^F) and ∂₀: (E, I) ↦ (I^A, I)
    let d1_tilde: Vec<usize> = lb.concepts().iter().map(|c| lf.concept_of_instances(&c.extent)).collect();
    let d0: Vec<usize> = lf.concepts().iter().map(|c| la.concept_of_types(&c.intent)).collect();
    let psi = d0_tilde.iter().map(|&x| d1[x]).collect();
    let phi = d1_tilde.iter().map(|&y| d0[y]).collect();
    Ok((FunctionGraph::new(psi, lb.len())?, FunctionGraph::new(phi, la.len())?))
}

/// `B(L) = ⟨L, L, ≤⟩`.
pub fn b_object(l: &CompleteLattice) -> Classification {
    Classification::preorder(l.labels(), l.order()).expect("lattice order")
}

/// `B(⟨φ, ψ⟩)`: `y B x` iff `φ(y) ≤ x`, a bond `B(L) ⇀ B(K)`.
pub fn b_adjoint(p: &AdjointPair) -> Result<Bond> {
    let (l, k) = (p.source(), p.target());
    let rel = Relation::from_fn(k.len(), l.len(), |y, x| l.leq(p.phi().apply(y), x));
    Bond::new(Arc::new(b_object(l)), Arc::new(b_object(k)), rel)
}

/// `x ↦ (↓x, ↑x)`, the isomorphism `L ≅ L(B(L))`, as indices into the
/// concept lattice of [`b_object`].
pub fn principal_iso(l: &CompleteLattice) -> Result<FunctionGraph> {
    let lb = b_object(l).lattice()?;
    let map = (0..l.len())
        .map(|x| {
            lb.index_of_extent(&l.down_set(x))
                .filter(|&i| lb.concept(i).intent == l.up_set(x))
                .ok_or_else(|| Error::NotALattice(format!("({x}) is not a principal concept")))
        })
        .collect::<Result<Vec<_>>>()?;
    FunctionGraph::new(map, lb.len())
}

/// The embedding bonds `ι_A: B(L(A)) ⇀ A` and `τ_A: A ⇀ B(L(A))`.
pub fn embedding_bonds(a: &Arc<Classification>) -> Result<(Bond, Bond)> {
    let l = a.lattice()?;
    let bl = Arc::new(b_object(l.lattice()));
    let iota = Bond::new(bl.clone(), a.clone(), l.iota_rel().clone())?;
    let tau = Bond::new(a.clone(), bl, l.tau_rel().clone())?;
    Ok((iota, tau))
}

/// `A²(⟨F, G⟩) = ψ_F`, after checking it equals `φ_G`.
pub fn a2_pair(p: &BondingPair) -> Result<CompleteHomomorphism> {
    let psi_f = a_bond(p.forward())?;
    let phi_g = a_bond(p.backward())?;
    if psi_f.psi() != phi_g.phi() {
        let concept = (0..psi_f.psi().domain())
            .find(|&x| psi_f.psi().apply(x) != phi_g.phi().apply(x))
            .expect("maps differ somewhere");
        return Err(Error::NotABondingPair { concept });
    }
    CompleteHomomorphism::new(psi_f.source().clone(), psi_f.target().clone(), psi_f.psi().clone())
}

/// `B²(ψ) = (B(⟨φ, ψ⟩), B(⟨ψ, θ⟩))` for the adjoints `φ ⊣ ψ ⊣ θ`.
pub fn b2_hom(h: &CompleteHomomorphism) -> Result<BondingPair> {
    let (l, k) = (h.source(), h.target());
    let lower = AdjointPair::new(l.clone(), k.clone(), h.lower_adjoint(), h.map().clone())?;
    let upper = AdjointPair::new(k.clone(), l.clone(), h.map().clone(), h.upper_adjoint())?;
    BondingPair::new(b_adjoint(&lower)?, b_adjoint(&upper)?)
}

/// The bonding pair `A ⇄ B` of a complete homomorphism `L(A) → L(B)`:
/// `b F α` iff `b ∈ ext(h(τ_A α))`, `a G β` iff `β ∈ int(h(ι_A a))`.
pub fn pair_from_homomorphism(
    a: &Arc<Classification>,
    b: &Arc<Classification>,
    h: &CompleteHomomorphism,
) -> Result<BondingPair> {
    let (la, lb) = (a.lattice()?, b.lattice()?);
    if **h.source() != **la.lattice() || **h.target() != **lb.lattice() {
        return Err(Error::EndpointMismatch("homomorphism between concept lattices"));
    }
    let f = Relation::from_fn(b.num_instances(), a.num_types(), |bi, t| {
        lb.concept(h.map().apply(la.tau().apply(t))).extent.contains(bi)
    });
    let g = Relation::from_fn(a.num_instances(), b.num_types(), |ai, t| {
        lb.concept(h.map().apply(la.iota().apply(ai))).intent.contains(t)
    });
    BondingPair::new(Bond::new(a.clone(), b.clone(), f)?, Bond::new(b.clone(), a.clone(), g)?)
}

/// Every type concept is meet-irreducible.
pub fn is_type_reduced(a: &Classification) -> Result<bool> {
    let l = a.lattice()?;
    Ok((0..a.num_types()).all(|t| l.lattice().is_meet_irreducible(l.tau().apply(t))))
}

/// Every instance concept is join-irreducible.
pub fn is_instance_reduced(a: &Classification) -> Result<bool> {
    let l = a.lattice()?;
    Ok((0..a.num_instances()).all(|i| l.lattice().is_join_irreducible(l.iota().apply(i))))
}
