//! Bonds and bonding pairs.
//!
//! A bond `F: A ⇀ B` is a relation `inst(B) × typ(A)` whose rows are intents
//! of `A` and whose columns are extents of `B`. Bonds compose by residuation
//! and correspond one-to-one with closed relational infomorphisms.

use std::sync::Arc;

use crate::classification::Classification;
use crate::error::{BondViolation, Error, Result};
use crate::infomorphism::{first_difference, same, RelationalInfomorphism};
use crate::lattice::CollectiveConcept;
use crate::relalg::Relation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bond {
    source: Arc<Classification>,
    target: Arc<Classification>,
    rel: Relation,
}

fn check_shape(source: &Classification, target: &Classification, rel: &Relation) -> Result<()> {
    let expected = (target.num_instances(), source.num_types());
    if rel.shape() != expected {
        return Err(Error::ShapeMismatch { op: "bond", left: expected, right: rel.shape() });
    }
    Ok(())
}

/// First row that is not an intent of `source`, else first column that is
/// not an extent of `target`.
fn violation(source: &Classification, target: &Classification, rel: &Relation) -> Option<BondViolation> {
    if let Some(b) = (0..rel.rows()).find(|&b| !source.is_intent(&rel.row(b)).expect("shape")) {
        return Some(BondViolation::Row(b));
    }
    (0..rel.cols())
        .find(|&t| !target.is_extent(&rel.col(t)).expect("shape"))
        .map(BondViolation::Column)
}

/// Closes every row of `rel` as an intent of `a`: `(⊨_A/rel)\⊨_A`.
fn close_rows(a: &Classification, rel: &Relation) -> Relation {
    a.incidence().right_residual(rel).and_then(|x| x.left_residual(a.incidence())).expect("shape")
}

/// Closes every column of `rel` as an extent of `b`: `⊨_B/(rel\⊨_B)`.
fn close_cols(b: &Classification, rel: &Relation) -> Relation {
    rel.left_residual(b.incidence()).and_then(|x| b.incidence().right_residual(&x)).expect("shape")
}

impl Bond {
    pub fn new(source: Arc<Classification>, target: Arc<Classification>, rel: Relation) -> Result<Self> {
        check_shape(&source, &target, &rel)?;
        if let Some(v) = violation(&source, &target, &rel) {
            return Err(Error::NotABond(v));
        }
        Ok(Bond { source, target, rel })
    }

    /// No closure check; for building deliberately invalid candidates.
    pub fn unchecked(source: Arc<Classification>, target: Arc<Classification>, rel: Relation) -> Result<Self> {
        check_shape(&source, &target, &rel)?;
        Ok(Bond { source, target, rel })
    }

    /// Both closure equalities `(⊨_A/F)\⊨_A == F` and `⊨_B/(F\⊨_B) == F`.
    pub fn is_bond(source: &Classification, target: &Classification, rel: &Relation) -> Result<bool> {
        check_shape(source, target, rel)?;
        Ok(&close_rows(source, rel) == rel && &close_cols(target, rel) == rel)
    }

    /// Witness form of [`is_bond`](Self::is_bond), checked row by row and
    /// column by column.
    pub fn violation(&self) -> Option<BondViolation> {
        violation(&self.source, &self.target, &self.rel)
    }

    /// The least bond containing `rel`.
    pub fn generate(source: Arc<Classification>, target: Arc<Classification>, rel: &Relation) -> Result<Self> {
        check_shape(&source, &target, rel)?;
        let mut cur = rel.clone();
        loop {
            let next = close_cols(&target, &close_rows(&source, &cur));
            if next == cur {
                return Ok(Bond { source, target, rel: cur });
            }
            cur = next;
        }
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.target
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    /// The identity bond `⊨_A`.
    pub fn identity(a: Arc<Classification>) -> Self {
        let rel = a.incidence().clone();
        Bond { source: a.clone(), target: a, rel }
    }

    /// `F ∘ G ≜ (⊨_B/G)\F : A ⇀ C`.
    pub fn compose(&self, next: &Bond) -> Result<Bond> {
        if !same(&self.target, &next.source) {
            return Err(Error::EndpointMismatch("compose bonds"));
        }
        let rel = self.target.incidence().right_residual(&next.rel)?.left_residual(&self.rel)?;
        Ok(Bond { source: self.source.clone(), target: next.target.clone(), rel })
    }

    /// The second composition formula `G/(F\⊨_B)`.
    pub fn compose_alt(&self, next: &Bond) -> Result<Bond> {
        if !same(&self.target, &next.source) {
            return Err(Error::EndpointMismatch("compose bonds"));
        }
        let rel = next.rel.right_residual(&self.rel.left_residual(self.target.incidence())?)?;
        Ok(Bond { source: self.source.clone(), target: next.target.clone(), rel })
    }

    /// `bond(⟨r, s⟩) = r\⊨_A`.
    pub fn of_infomorphism(m: &RelationalInfomorphism) -> Result<Bond> {
        m.check()?;
        let rel = m.r().left_residual(m.source().incidence())?;
        Ok(Bond { source: m.source().clone(), target: m.target().clone(), rel })
    }

    /// The closed relational infomorphism `⟨⊨_A/F, F\⊨_B⟩`.
    pub fn to_infomorphism(&self) -> Result<RelationalInfomorphism> {
        if let Some(v) = self.violation() {
            return Err(Error::NotABond(v));
        }
        let r = self.source.incidence().right_residual(&self.rel)?;
        let s = self.rel.left_residual(self.target.incidence())?;
        RelationalInfomorphism::new(self.source.clone(), self.target.clone(), r, s)
    }

    /// `Fᵀ: B^∞ ⇀ A^∞`, the bond of the dual infomorphism.
    pub fn dual(&self) -> Bond {
        Bond {
            source: Arc::new(self.target.dual()),
            target: Arc::new(self.source.dual()),
            rel: self.rel.transpose(),
        }
    }
}

/// `m1 ≡ m2` iff they have the same bond.
pub fn bonds_equivalent(m1: &RelationalInfomorphism, m2: &RelationalInfomorphism) -> Result<bool> {
    if !same(m1.source(), m2.source()) || !same(m1.target(), m2.target()) {
        return Err(Error::EndpointMismatch("compare infomorphisms"));
    }
    Ok(Bond::of_infomorphism(m1)?.rel == Bond::of_infomorphism(m2)?.rel)
}

/// Opposed bonds `F: A ⇀ B`, `G: B ⇀ A` satisfying the pairing constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BondingPair {
    forward: Bond,
    backward: Bond,
}

impl BondingPair {
    pub fn new(forward: Bond, backward: Bond) -> Result<Self> {
        let p = BondingPair { forward, backward };
        p.check()?;
        Ok(p)
    }

    pub fn forward(&self) -> &Bond {
        &self.forward
    }

    pub fn backward(&self) -> &Bond {
        &self.backward
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.forward.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.forward.target
    }

    fn check_endpoints(forward: &Bond, backward: &Bond) -> Result<()> {
        if !same(&forward.source, &backward.target) || !same(&forward.target, &backward.source) {
            return Err(Error::EndpointMismatch("bonding pair"));
        }
        if let Some(v) = forward.violation().or_else(|| backward.violation()) {
            return Err(Error::NotABond(v));
        }
        Ok(())
    }

    /// `F/τ_A == ⊨_B/(ι_A\G)` and `ι_A\G == (F/τ_A)\⊨_B`. The witness is the
    /// first concept of `L(A)` whose column or row differs.
    pub fn check(&self) -> Result<()> {
        Self::check_endpoints(&self.forward, &self.backward)?;
        let (a, b) = (&self.forward.source, &self.forward.target);
        let l = a.lattice()?;
        let f_tau = self.forward.rel.right_residual(l.tau_rel())?;
        let iota_g = l.iota_rel().left_residual(&self.backward.rel)?;
        let first = b.incidence().right_residual(&iota_g)?;
        let second = f_tau.left_residual(b.incidence())?;
        let col = first_difference(&f_tau, &first).map(|(_, c)| c);
        let row = first_difference(&iota_g, &second).map(|(c, _)| c);
        match col.into_iter().chain(row).min() {
            None => Ok(()),
            Some(concept) => Err(Error::NotABondingPair { concept }),
        }
    }

    /// Pointwise form over each concept `(E, I)` of `L(A)`:
    /// `I^F == ext_B(E^G)` and `E^G == int_B(I^F)`, where `I^F` is the set of
    /// target instances related by `F` to all of `I` and `E^G` the set of
    /// target types related by `G` to all of `E`.
    pub fn check_pointwise(forward: &Bond, backward: &Bond) -> Result<bool> {
        Self::check_endpoints(forward, backward)?;
        let (a, b) = (&forward.source, &forward.target);
        let l = a.lattice()?;
        let ft = forward.rel.transpose();
        let g = &backward.rel;
        for c in l.concepts() {
            let mut i_f = crate::BitSet::full(b.num_instances());
            for t in &c.intent {
                i_f.intersect_with(&ft.row(t));
            }
            let mut e_g = crate::BitSet::full(b.num_types());
            for x in &c.extent {
                e_g.intersect_with(&g.row(x));
            }
            if i_f != b.extent_of(&e_g)? || e_g != b.intent_of(&i_f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn identity(a: Arc<Classification>) -> Self {
        BondingPair { forward: Bond::identity(a.clone()), backward: Bond::identity(a) }
    }

    /// `⟨F, G⟩ ∘ ⟨M, N⟩ ≜ ⟨F ∘ M, N ∘ G⟩`.
    pub fn compose(&self, next: &BondingPair) -> Result<BondingPair> {
        Ok(BondingPair {
            forward: self.forward.compose(&next.forward)?,
            backward: next.backward.compose(&self.backward)?,
        })
    }

    /// `(F/α, a\G)`: image of a collective `A`-concept as a collective
    /// `B`-concept with the same index.
    pub fn collective_image(&self, c: &CollectiveConcept) -> Result<CollectiveConcept> {
        if !c.is_collective_concept(self.source()) {
            return Err(Error::NotACollectiveConcept);
        }
        Ok(CollectiveConcept {
            extents: self.forward.rel.right_residual(&c.intents)?,
            intents: c.extents.left_residual(&self.backward.rel)?,
        })
    }
}
