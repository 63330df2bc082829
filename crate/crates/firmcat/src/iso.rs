//! Isomorphism search between finite categories, optionally required to
//! transport tensor, restriction, and corestriction structure.
//!
//! The search assigns objects first (pruned by hom-set sizes), then decides
//! morphisms by constraint propagation: identities and structure components
//! are forced, every decided pair forces its composites and tensors, and the
//! remaining choices are branched smallest-domain-first with an explicit
//! undo trail. Work is metered against a node budget so a pathological
//! instance fails loudly instead of hanging.

use crate::fincat::{check_functor_laws, FinCategory, Functor, MorId, ObjId};
use crate::{CategoryData, Error};

/// Which structure an isomorphism must transport, beyond composition and
/// identities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StructureFlags {
    /// Transport unit, tensor tables, and coherence components.
    pub monoidal: bool,
    /// Transport the restriction operator.
    pub restriction: bool,
    /// Transport the corestriction operator.
    pub corestriction: bool,
}

impl StructureFlags {
    /// Plain categorical isomorphism.
    pub fn none() -> Self {
        Self::default()
    }

    /// Transport every kind of structure.
    pub fn all() -> Self {
        Self {
            monoidal: true,
            restriction: true,
            corestriction: true,
        }
    }
}

/// Default node budget for [`find_isomorphism`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Searches for an isomorphism from `a` to `b` transporting the structure
/// selected by `flags`, spending at most `budget` search steps.
///
/// Returns the functor when one is found, `None` when the exhaustive search
/// rules an isomorphism out, and [`Error::SearchBudgetExceeded`] when the
/// budget runs dry first. Each structure flag demands the corresponding
/// tables on both sides; a missing table is a [`Error::PrerequisiteFailed`].
pub fn find_isomorphism(
    a: &CategoryData,
    b: &CategoryData,
    flags: StructureFlags,
    budget: u64,
) -> Result<Option<Functor>, Error> {
    if flags.monoidal && (a.monoidal.is_none() || b.monoidal.is_none()) {
        return Err(Error::PrerequisiteFailed("tensor tables on both sides"));
    }
    if flags.restriction && (a.restriction.is_none() || b.restriction.is_none()) {
        return Err(Error::PrerequisiteFailed(
            "restriction tables on both sides",
        ));
    }
    if flags.corestriction && (a.corestriction.is_none() || b.corestriction.is_none()) {
        return Err(Error::PrerequisiteFailed(
            "corestriction tables on both sides",
        ));
    }
    if a.cat.n_objects() != b.cat.n_objects() || a.cat.n_morphisms() != b.cat.n_morphisms() {
        return Ok(None);
    }
    let mut search = Search {
        a,
        b,
        flags,
        pi: vec![0; a.cat.n_objects()],
        budget,
        steps: 0,
    };
    search.objects()
}

/// [`find_isomorphism`] with the default budget, reduced to a yes/no answer.
pub fn are_isomorphic(
    a: &CategoryData,
    b: &CategoryData,
    flags: StructureFlags,
) -> Result<bool, Error> {
    Ok(find_isomorphism(a, b, flags, DEFAULT_SEARCH_BUDGET)?.is_some())
}

struct Search<'x> {
    a: &'x CategoryData,
    b: &'x CategoryData,
    flags: StructureFlags,
    /// Object assignment under construction; valid up to the search frontier.
    pi: Vec<ObjId>,
    budget: u64,
    steps: u64,
}

struct MorState {
    decided: Vec<Option<MorId>>,
    used: Vec<bool>,
    trail: Vec<MorId>,
}

impl MorState {
    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().unwrap();
            let t = self.decided[f].take().unwrap();
            self.used[t] = false;
        }
    }
}

impl<'x> Search<'x> {
    fn tick(&mut self) -> Result<(), Error> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::SearchBudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn hom_count(c: &FinCategory, a: ObjId, b: ObjId) -> usize {
        c.morphisms()
            .filter(|&f| c.dom(f) == a && c.cod(f) == b)
            .count()
    }

    fn objects(&mut self) -> Result<Option<Functor>, Error> {
        let n = self.a.cat.n_objects();
        let mut used = vec![false; n];
        self.assign_object(0, &mut used)
    }

    fn assign_object(&mut self, x: ObjId, used: &mut Vec<bool>) -> Result<Option<Functor>, Error> {
        let n = self.a.cat.n_objects();
        if x == n {
            if self.flags.monoidal && !self.objects_respect_tensor() {
                return Ok(None);
            }
            return self.morphisms();
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            self.tick()?;
            if Self::hom_count(&self.a.cat, x, x) != Self::hom_count(&self.b.cat, y, y) {
                continue;
            }
            let consistent = (0..x).all(|x2| {
                let y2 = self.pi[x2];
                Self::hom_count(&self.a.cat, x, x2) == Self::hom_count(&self.b.cat, y, y2)
                    && Self::hom_count(&self.a.cat, x2, x) == Self::hom_count(&self.b.cat, y2, y)
            });
            if !consistent {
                continue;
            }
            self.pi[x] = y;
            used[y] = true;
            if let Some(found) = self.assign_object(x + 1, used)? {
                return Ok(Some(found));
            }
            used[y] = false;
        }
        Ok(None)
    }

    fn objects_respect_tensor(&self) -> bool {
        let ma = self.a.monoidal.as_ref().unwrap();
        let mb = self.b.monoidal.as_ref().unwrap();
        if self.pi[ma.unit()] != mb.unit() {
            return false;
        }
        let n = self.a.cat.n_objects();
        (0..n).all(|x| {
            (0..n).all(|y| self.pi[ma.tensor_obj(x, y)] == mb.tensor_obj(self.pi[x], self.pi[y]))
        })
    }

    fn pi_dom(&self, f: MorId) -> ObjId {
        self.pi[self.a.cat.dom(f)]
    }

    fn pi_cod(&self, f: MorId) -> ObjId {
        self.pi[self.a.cat.cod(f)]
    }

    fn morphisms(&mut self) -> Result<Option<Functor>, Error> {
        let nm = self.a.cat.n_morphisms();
        let mut st = MorState {
            decided: vec![None; nm],
            used: vec![false; nm],
            trail: Vec::new(),
        };
        let mut seeds: Vec<(MorId, MorId)> = Vec::new();
        for x in self.a.cat.objects() {
            seeds.push((self.a.cat.identity(x), self.b.cat.identity(self.pi[x])));
        }
        if self.flags.monoidal {
            let ma = self.a.monoidal.as_ref().unwrap();
            let mb = self.b.monoidal.as_ref().unwrap();
            if ma.has_braiding() != mb.has_braiding() {
                return Ok(None);
            }
            let n = self.a.cat.n_objects();
            for x in 0..n {
                seeds.push((ma.lambda(x), mb.lambda(self.pi[x])));
                seeds.push((ma.rho(x), mb.rho(self.pi[x])));
                for y in 0..n {
                    if let (Some(sa), Some(sb)) =
                        (ma.sigma(x, y), mb.sigma(self.pi[x], self.pi[y]))
                    {
                        seeds.push((sa, sb));
                    }
                    for z in 0..n {
                        seeds.push((
                            ma.alpha(x, y, z),
                            mb.alpha(self.pi[x], self.pi[y], self.pi[z]),
                        ));
                    }
                }
            }
        }
        let mark = st.trail.len();
        for (f, t) in seeds {
            if !self.decide(&mut st, f, t)? {
                st.undo(mark);
                return Ok(None);
            }
        }
        if self.extend(&mut st)? {
            let mor_map: Vec<MorId> = st.decided.iter().map(|d| d.unwrap()).collect();
            let fun = Functor {
                obj_map: self.pi.clone(),
                mor_map,
            };
            debug_assert!(check_functor_laws(&self.a.cat, &self.b.cat, &fun).passed());
            Ok(Some(fun))
        } else {
            st.undo(mark);
            Ok(None)
        }
    }

    /// Decides `f -> t` and propagates all consequences. A `false` return
    /// means conflict; partial assignments stay on the trail for the caller's
    /// mark to unwind.
    fn decide(&mut self, st: &mut MorState, f: MorId, t: MorId) -> Result<bool, Error> {
        self.tick()?;
        if let Some(prev) = st.decided[f] {
            return Ok(prev == t);
        }
        if st.used[t] {
            return Ok(false);
        }
        if self.pi_dom(f) != self.b.cat.dom(t) || self.pi_cod(f) != self.b.cat.cod(t) {
            return Ok(false);
        }
        st.decided[f] = Some(t);
        st.used[t] = true;
        st.trail.push(f);

        if self.flags.restriction {
            let ra = self.a.restriction.as_ref().unwrap();
            let rb = self.b.restriction.as_ref().unwrap();
            if !self.decide(st, ra.bar(f), rb.bar(t))? {
                return Ok(false);
            }
        }
        if self.flags.corestriction {
            let ha = self.a.corestriction.as_ref().unwrap();
            let hb = self.b.corestriction.as_ref().unwrap();
            if !self.decide(st, ha.hat(f), hb.hat(t))? {
                return Ok(false);
            }
        }
        for g in 0..st.decided.len() {
            let Some(tg) = st.decided[g] else { continue };
            if let Some(gf) = self.a.cat.compose(g, f) {
                let tgf = self
                    .b
                    .cat
                    .compose(tg, t)
                    .expect("object transport keeps composability");
                if !self.decide(st, gf, tgf)? {
                    return Ok(false);
                }
            }
            if g != f {
                if let Some(fg) = self.a.cat.compose(f, g) {
                    let tfg = self
                        .b
                        .cat
                        .compose(t, tg)
                        .expect("object transport keeps composability");
                    if !self.decide(st, fg, tfg)? {
                        return Ok(false);
                    }
                }
            }
        }
        if self.flags.monoidal {
            let ma = self.a.monoidal.as_ref().unwrap();
            let mb = self.b.monoidal.as_ref().unwrap();
            for g in 0..st.decided.len() {
                let Some(tg) = st.decided[g] else { continue };
                if !self.decide(st, ma.tensor_mor(f, g), mb.tensor_mor(t, tg))? {
                    return Ok(false);
                }
                if g != f && !self.decide(st, ma.tensor_mor(g, f), mb.tensor_mor(tg, t))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn extend(&mut self, st: &mut MorState) -> Result<bool, Error> {
        // branch on the undecided morphism with the fewest live targets
        let mut best: Option<(MorId, Vec<MorId>)> = None;
        for f in 0..st.decided.len() {
            if st.decided[f].is_some() {
                continue;
            }
            let cands: Vec<MorId> = self
                .b
                .cat
                .hom(self.pi_dom(f), self.pi_cod(f))
                .into_iter()
                .filter(|&t| !st.used[t])
                .collect();
            if cands.is_empty() {
                return Ok(false);
            }
            let tighter = best.as_ref().map_or(true, |(_, c)| cands.len() < c.len());
            if tighter {
                let decisive = cands.len() == 1;
                best = Some((f, cands));
                if decisive {
                    break;
                }
            }
        }
        let Some((f, cands)) = best else {
            return Ok(true); // everything is decided
        };
        for t in cands {
            let mark = st.trail.len();
            if self.decide(st, f, t)? && self.extend(st)? {
                return Ok(true);
            }
            st.undo(mark);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::fincat::CategoryBuilder;

    #[test]
    fn identical_chain_categories_are_isomorphic() {
        let a = examples::from_semilattice(&examples::chain_semilattice(3).unwrap());
        let b = a.clone();
        let flags = StructureFlags {
            monoidal: true,
            restriction: false,
            corestriction: false,
        };
        let fun = find_isomorphism(&a, &b, flags, 1_000_000)
            .unwrap()
            .expect("a category is isomorphic to itself");
        assert!(check_functor_laws(&a.cat, &b.cat, &fun).passed());
    }

    #[test]
    fn cyclic_and_klein_groups_are_distinguished() {
        // both one-object categories with four endomorphisms
        let z4 = examples::cyclic_group_category(4).unwrap();
        let mut b = CategoryBuilder::new(1);
        for _ in 0..4 {
            b.add_morphism(0, 0);
        }
        b.set_identity(0, 0);
        let klein = CategoryData::bare(b.finish(|g, f| g ^ f).unwrap());
        assert_eq!(z4.cat.n_morphisms(), klein.cat.n_morphisms());
        assert!(!are_isomorphic(&z4, &klein, StructureFlags::none()).unwrap());
    }

    #[test]
    fn relabelled_group_is_isomorphic_but_other_orders_are_not() {
        let a = examples::cyclic_group_category(4).unwrap();
        let b = examples::cyclic_group_category(4).unwrap();
        assert!(are_isomorphic(&a, &b, StructureFlags::all()).unwrap());
        let c = examples::cyclic_group_category(5).unwrap();
        assert!(!are_isomorphic(&a, &c, StructureFlags::none()).unwrap());
    }

    #[test]
    fn missing_tables_are_a_prerequisite_failure() {
        let a = examples::finpar(2).unwrap();
        let b = examples::finpar(2).unwrap();
        assert!(matches!(
            find_isomorphism(&a, &b, StructureFlags::all(), 1000),
            Err(Error::PrerequisiteFailed(_))
        ));
        let flags = StructureFlags {
            monoidal: false,
            restriction: true,
            corestriction: true,
        };
        assert!(are_isomorphic(&a, &b, flags).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let a = examples::from_semilattice(&examples::chain_semilattice(3).unwrap());
        let b = a.clone();
        assert!(matches!(
            find_isomorphism(&a, &b, StructureFlags::none(), 2),
            Err(Error::SearchBudgetExceeded(2))
        ));
    }
}
