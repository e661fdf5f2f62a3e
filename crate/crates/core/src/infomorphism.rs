//! Functional and relational infomorphisms.
//!
//! A functional infomorphism `A ⇄ B` pairs a covariant type map
//! `g: typ(A) → typ(B)` with a contravariant instance map
//! `f: inst(B) → inst(A)` such that `f(b) ⊨_A α ⇔ b ⊨_B g(α)`. The relational
//! version replaces both maps by relations `r ⊆ inst(A) × inst(B)` and
//! `s ⊆ typ(A) × typ(B)` and the biconditional by `r\⊨_A == ⊨_B/s`.

use std::sync::Arc;

use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::relalg::{FunctionGraph, Relation};

/// Endpoints agree if they are the same allocation or equal by value.
pub(crate) fn same(a: &Arc<Classification>, b: &Arc<Classification>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn shape_check(op: &'static str, expected: (usize, usize), got: (usize, usize)) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { op, left: expected, right: got })
    }
}

/// First position where two same-shape relations differ.
pub(crate) fn first_difference(a: &Relation, b: &Relation) -> Option<(usize, usize)> {
    (0..a.rows()).find_map(|i| (0..a.cols()).find(|&j| a.get(i, j) != b.get(i, j)).map(|j| (i, j)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalInfomorphism {
    source: Arc<Classification>,
    target: Arc<Classification>,
    f: FunctionGraph,
    g: FunctionGraph,
}

impl FunctionalInfomorphism {
    /// Builds and validates.
    pub fn new(
        source: Arc<Classification>,
        target: Arc<Classification>,
        f: FunctionGraph,
        g: FunctionGraph,
    ) -> Result<Self> {
        let m = Self::unchecked(source, target, f, g)?;
        m.check()?;
        Ok(m)
    }

    /// Builds with shape checks only; use [`check`](Self::check) afterwards.
    pub fn unchecked(
        source: Arc<Classification>,
        target: Arc<Classification>,
        f: FunctionGraph,
        g: FunctionGraph,
    ) -> Result<Self> {
        shape_check(
            "instance function",
            (target.num_instances(), source.num_instances()),
            (f.domain(), f.codomain()),
        )?;
        shape_check("type function", (source.num_types(), target.num_types()), (g.domain(), g.codomain()))?;
        Ok(FunctionalInfomorphism { source, target, f, g })
    }

    /// Fundamental property, with the first failing `(b, α)` as witness.
    pub fn check(&self) -> Result<()> {
        for b in 0..self.target.num_instances() {
            let fb = self.f.apply(b);
            for alpha in 0..self.source.num_types() {
                if self.source.classifies(fb, alpha) != self.target.classifies(b, self.g.apply(alpha)) {
                    return Err(Error::InvalidInfomorphism { instance: b, type_index: alpha });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.target
    }

    /// Instance function `inst(target) → inst(source)`.
    pub fn f(&self) -> &FunctionGraph {
        &self.f
    }

    /// Type function `typ(source) → typ(target)`.
    pub fn g(&self) -> &FunctionGraph {
        &self.g
    }

    pub fn identity(a: Arc<Classification>) -> Self {
        let f = FunctionGraph::identity(a.num_instances());
        let g = FunctionGraph::identity(a.num_types());
        FunctionalInfomorphism { source: a.clone(), target: a, f, g }
    }

    /// `η_A: A ⇄ ℘(inst A)`, identity on instances and `α ↦ ext(α)` on
    /// types.
    pub fn instance_infomorphism(a: Arc<Classification>) -> Result<Self> {
        let target = Arc::new(Classification::powerset(a.instances())?);
        let g = (0..a.num_types())
            .map(|t| a.type_extent(t).iter().map(|i| 1usize << i).sum())
            .collect();
        Self::new(
            a.clone(),
            target.clone(),
            FunctionGraph::identity(a.num_instances()),
            FunctionGraph::new(g, target.num_types())?,
        )
    }

    /// `℘f = ⟨f, f⁻¹⟩: ℘A ⇄ ℘B` for `f: B → A`.
    pub fn powerset<S: AsRef<str>>(a: &[S], b: &[S], f: FunctionGraph) -> Result<Self> {
        let source = Arc::new(Classification::powerset(a)?);
        let target = Arc::new(Classification::powerset(b)?);
        let g = (0..source.num_types())
            .map(|mask| (0..b.len()).filter(|&x| mask >> f.apply(x) & 1 == 1).map(|x| 1usize << x).sum())
            .collect();
        let g = FunctionGraph::new(g, target.num_types())?;
        Self::new(source, target, f, g)
    }

    /// `self ; next`: types `g1;g2`, instances `f2;f1`.
    pub fn compose(&self, next: &FunctionalInfomorphism) -> Result<Self> {
        if !same(&self.target, &next.source) {
            return Err(Error::EndpointMismatch("compose infomorphisms"));
        }
        Ok(FunctionalInfomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f: next.f.then(&self.f)?,
            g: self.g.then(&next.g)?,
        })
    }

    /// `B^∞ ⇄ A^∞` with the roles of `f` and `g` swapped.
    pub fn dual(&self) -> Self {
        FunctionalInfomorphism {
            source: Arc::new(self.target.dual()),
            target: Arc::new(self.source.dual()),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// `⟨f•, g•⟩` with `a f• b` iff `a ≤_A f(b)` and `α g• β` iff
    /// `g(α) ≤_B β`.
    pub fn to_relational(&self) -> Result<RelationalInfomorphism> {
        self.check()?;
        let inst_le = self.source.instance_preorder();
        let type_le = self.target.type_preorder();
        let r = Relation::from_fn(self.source.num_instances(), self.target.num_instances(), |a, b| {
            inst_le.get(a, self.f.apply(b))
        });
        let s = Relation::from_fn(self.source.num_types(), self.target.num_types(), |alpha, beta| {
            type_le.get(self.g.apply(alpha), beta)
        });
        RelationalInfomorphism::new(self.source.clone(), self.target.clone(), r, s)
    }

    /// All valid infomorphisms `a ⇄ b`, in lexicographic order of `(f, g)`.
    /// With `instance_identity` set only `f = id` is tried (the instance
    /// fiber).
    pub fn enumerate(a: &Arc<Classification>, b: &Arc<Classification>, instance_identity: bool) -> Vec<Self> {
        let fs: Vec<FunctionGraph> = if instance_identity {
            if a.instances() != b.instances() {
                return Vec::new();
            }
            vec![FunctionGraph::identity(a.num_instances())]
        } else {
            FunctionGraph::enumerate(b.num_instances(), a.num_instances()).collect()
        };
        let mut out = Vec::new();
        for f in &fs {
            for g in FunctionGraph::enumerate(a.num_types(), b.num_types()) {
                let m = FunctionalInfomorphism { source: a.clone(), target: b.clone(), f: f.clone(), g };
                if m.is_valid() {
                    out.push(m);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalInfomorphism {
    source: Arc<Classification>,
    target: Arc<Classification>,
    r: Relation,
    s: Relation,
}

impl RelationalInfomorphism {
    pub fn new(source: Arc<Classification>, target: Arc<Classification>, r: Relation, s: Relation) -> Result<Self> {
        let m = Self::unchecked(source, target, r, s)?;
        m.check()?;
        Ok(m)
    }

    pub fn unchecked(source: Arc<Classification>, target: Arc<Classification>, r: Relation, s: Relation) -> Result<Self> {
        shape_check("instance relation", (source.num_instances(), target.num_instances()), r.shape())?;
        shape_check("type relation", (source.num_types(), target.num_types()), s.shape())?;
        Ok(RelationalInfomorphism { source, target, r, s })
    }

    /// `r\⊨_A == ⊨_B/s`; the witness is the first `(b, α)` where they differ.
    pub fn check(&self) -> Result<()> {
        let left = self.r.left_residual(self.source.incidence())?;
        let right = self.target.incidence().right_residual(&self.s)?;
        match first_difference(&left, &right) {
            None => Ok(()),
            Some((b, alpha)) => Err(Error::InvalidInfomorphism { instance: b, type_index: alpha }),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.target
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    pub fn s(&self) -> &Relation {
        &self.s
    }

    pub fn identity(a: Arc<Classification>) -> Self {
        let r = Relation::identity(a.num_instances());
        let s = Relation::identity(a.num_types());
        RelationalInfomorphism { source: a.clone(), target: a, r, s }
    }

    /// `⟨r1∘r2, s1∘s2⟩`.
    pub fn compose(&self, next: &RelationalInfomorphism) -> Result<Self> {
        if !same(&self.target, &next.source) {
            return Err(Error::EndpointMismatch("compose relational infomorphisms"));
        }
        Ok(RelationalInfomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            r: self.r.compose(&next.r)?,
            s: self.s.compose(&next.s)?,
        })
    }

    /// `⟨sᵀ, rᵀ⟩: B^∞ ⇄ A^∞`.
    pub fn dual(&self) -> Self {
        RelationalInfomorphism {
            source: Arc::new(self.target.dual()),
            target: Arc::new(self.source.dual()),
            r: self.s.transpose(),
            s: self.r.transpose(),
        }
    }

    /// Pointwise form: `α ∈ (b r)ᴬ` iff `b ∈ (α s)ᴮ`, where `b r` is the set
    /// of `a` with `a r b`.
    pub fn check_pointwise(&self) -> bool {
        let (a, b) = (&self.source, &self.target);
        (0..b.num_instances()).all(|bi| {
            let intent = a.intent_of(&self.r.col(bi)).expect("shape");
            let extent_rows: Vec<_> = (0..a.num_types()).map(|t| b.extent_of(&self.s.row(t)).expect("shape")).collect();
            (0..a.num_types()).all(|t| intent.contains(t) == extent_rows[t].contains(bi))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> Arc<Classification> {
        Arc::new(Classification::from_labels(&["1", "2"], &["a", "b"], Relation::from_matrix(&[[1, 0], [1, 1]])).unwrap())
    }

    fn small_contexts() -> Vec<Arc<Classification>> {
        let mut out = Vec::new();
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for code in 0u32..1 << (n * m) {
                out.push(Arc::new(Classification::unlabelled(Relation::from_fn(n, m, |i, j| code >> (i * m + j) & 1 == 1))));
            }
        }
        out
    }

    #[test]
    fn identity_and_eta_are_valid() {
        let k = k1();
        assert!(FunctionalInfomorphism::identity(k.clone()).is_valid());
        let eta = FunctionalInfomorphism::instance_infomorphism(k.clone()).unwrap();
        // a ↦ {1,2} (mask 3), b ↦ {2} (mask 2)
        assert_eq!(eta.g().as_slice(), &[3, 2]);
        assert_eq!(eta.target().types()[3], "{1,2}");
    }

    #[test]
    fn swapped_types_fail_at_2_b() {
        let k = k1();
        let m = FunctionalInfomorphism::unchecked(
            k.clone(),
            k.clone(),
            FunctionGraph::identity(2),
            FunctionGraph::new(vec![1, 0], 2).unwrap(),
        )
        .unwrap();
        // pointwise oracle: the failing pairs are exactly those where the two
        // sides of the biconditional disagree
        let failing: Vec<(usize, usize)> = (0..2)
            .flat_map(|b| (0..2).map(move |t| (b, t)))
            .filter(|&(b, t)| k.classifies(b, t) != k.classifies(b, 1 - t))
            .collect();
        assert_eq!(failing, vec![(0, 0), (0, 1)]);
        assert_eq!(m.check(), Err(Error::InvalidInfomorphism { instance: 0, type_index: 0 }));
        assert!(!m.is_valid());
    }

    #[test]
    fn shape_errors() {
        let k = k1();
        let bad = FunctionalInfomorphism::unchecked(k.clone(), k, FunctionGraph::identity(3), FunctionGraph::identity(2));
        assert!(matches!(bad, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn composition_laws() {
        let ctxs = small_contexts();
        let mut checked = 0;
        for (i, a) in ctxs.iter().enumerate().step_by(3) {
            for b in ctxs.iter().skip(i % 5).step_by(4) {
                for m in FunctionalInfomorphism::enumerate(a, b, false) {
                    let id_a = FunctionalInfomorphism::identity(a.clone());
                    let id_b = FunctionalInfomorphism::identity(b.clone());
                    assert_eq!(id_a.compose(&m).unwrap(), m);
                    assert_eq!(m.compose(&id_b).unwrap(), m);
                    let eta = FunctionalInfomorphism::instance_infomorphism(b.clone()).unwrap();
                    assert!(m.compose(&eta).unwrap().is_valid());
                    assert_eq!(m.dual().dual(), m);
                    assert!(m.dual().is_valid());
                    for n in FunctionalInfomorphism::enumerate(b, a, false).iter().take(3) {
                        let mn = m.compose(n).unwrap();
                        assert!(mn.is_valid());
                        let (rm, rn) = (m.to_relational().unwrap(), n.to_relational().unwrap());
                        assert_eq!(mn.to_relational().unwrap(), rm.compose(&rn).unwrap());
                        for p in FunctionalInfomorphism::enumerate(a, a, false).iter().take(2) {
                            assert_eq!(mn.compose(p).unwrap(), m.compose(&n.compose(p).unwrap()).unwrap());
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 50, "only {checked} composable pairs");
    }

    #[test]
    fn composition_endpoint_mismatch() {
        let k = k1();
        let other = Arc::new(Classification::contranominal(2));
        let m = FunctionalInfomorphism::identity(k);
        let n = FunctionalInfomorphism::identity(other);
        assert_eq!(m.compose(&n), Err(Error::EndpointMismatch("compose infomorphisms")));
    }

    #[test]
    fn powerset_infomorphisms() {
        let id = FunctionalInfomorphism::powerset(&["1", "2"], &["1", "2"], FunctionGraph::identity(2)).unwrap();
        assert_eq!(id, FunctionalInfomorphism::identity(id.source().clone()));
        let constant = FunctionalInfomorphism::powerset(&["x"], &["1", "2"], FunctionGraph::new(vec![0, 0], 1).unwrap()).unwrap();
        // S = ∅ ↦ ∅, S = {x} ↦ {1,2}
        assert_eq!(constant.g().as_slice(), &[0, 3]);
        let empty: [&str; 0] = [];
        let e = FunctionalInfomorphism::powerset(&empty, &empty, FunctionGraph::identity(0)).unwrap();
        assert_eq!(e.source().types(), &["{}".to_owned()]);
    }

    #[test]
    fn powerset_cap() {
        let labels: Vec<String> = (0..17).map(|i| i.to_string()).collect();
        let err = FunctionalInfomorphism::powerset(&labels, &labels, FunctionGraph::identity(17)).unwrap_err();
        assert_eq!(err, Error::PowersetCap { size: 17, cap: 16 });
    }

    #[test]
    fn relational_identity_and_vacuous() {
        let k = k1();
        assert!(RelationalInfomorphism::identity(k.clone()).is_valid());
        let empty = RelationalInfomorphism::new(k.clone(), k.clone(), Relation::empty(2, 2), Relation::empty(2, 2)).unwrap();
        assert!(empty.check_pointwise());
        assert!(empty.r().left_residual(k.incidence()).unwrap().is_full());
    }

    #[test]
    fn fn2rel_of_identity_is_the_preorder_pair() {
        let k = k1();
        let rel = FunctionalInfomorphism::identity(k.clone()).to_relational().unwrap();
        assert_eq!(rel.r(), &k.instance_preorder());
        assert_eq!(rel.s(), &k.type_preorder());
        assert_ne!(rel, RelationalInfomorphism::identity(k.clone()));
        let anti = Arc::new(Classification::antichain(3));
        assert_eq!(
            FunctionalInfomorphism::identity(anti.clone()).to_relational().unwrap(),
            RelationalInfomorphism::identity(anti)
        );
    }

    #[test]
    fn relational_forms_agree_and_duals() {
        let ctxs = small_contexts();
        for a in ctxs.iter().step_by(5) {
            for b in ctxs.iter().step_by(7) {
                for code in 0u32..1 << (a.num_instances() * b.num_instances() + a.num_types() * b.num_types()) {
                    let ni = a.num_instances() * b.num_instances();
                    let r = Relation::from_fn(a.num_instances(), b.num_instances(), |i, j| code >> (i * b.num_instances() + j) & 1 == 1);
                    let s = Relation::from_fn(a.num_types(), b.num_types(), |i, j| code >> (ni + i * b.num_types() + j) & 1 == 1);
                    let m = RelationalInfomorphism::unchecked(a.clone(), b.clone(), r, s).unwrap();
                    assert_eq!(m.is_valid(), m.check_pointwise());
                    assert_eq!(m.dual().is_valid(), m.is_valid());
                    assert_eq!(m.dual().dual(), m);
                }
            }
        }
    }
}
