//! Finite categories as explicit composition tables.
//!
//! A [`FinCategory`] stores objects and morphisms as dense indices, with
//! domain, codomain, identity, and composition tables. Constructors validate
//! shape (lengths, index ranges, typing of entries); the categorical laws
//! themselves are checked separately by [`check_category_laws`], which
//! returns a [`LawReport`] listing every violated instance with witnesses.
//!
//! Hom-sets are derived views, produced by scanning the domain and codomain
//! columns, so the only stored state is the tables themselves.

use crate::Error;

/// Dense object index, stable for the lifetime of its category.
pub type ObjId = usize;
/// Dense morphism index, stable for the lifetime of its category.
pub type MorId = usize;

/// A finite category presented by tables.
///
/// The composition table is total over composable pairs: `compose(g, f)` is
/// `Some` exactly when `cod(f) == dom(g)`. Reading the table is the only
/// way to compose; nothing is recomputed or normalized behind the scenes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    n_objects: usize,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    /// Row-major over `(g, f)`: entry `g * n_morphisms + f` holds `g∘f`.
    compose: Vec<Option<MorId>>,
}

impl FinCategory {
    /// Builds a category from raw tables, validating shape.
    ///
    /// Checks lengths, index ranges, identity typing, and that composition
    /// entries are present exactly for composable pairs with correctly
    /// typed results. Unit and associativity laws are not checked here; use
    /// [`check_category_laws`].
    pub fn new(
        n_objects: usize,
        dom: Vec<ObjId>,
        cod: Vec<ObjId>,
        identity: Vec<MorId>,
        compose: Vec<Option<MorId>>,
    ) -> Result<Self, Error> {
        let n_mor = dom.len();
        if cod.len() != n_mor {
            return Err(Error::MalformedTables(format!(
                "dom has {} entries but cod has {}",
                n_mor,
                cod.len()
            )));
        }
        if identity.len() != n_objects {
            return Err(Error::MalformedTables(format!(
                "{} objects but {} identity entries",
                n_objects,
                identity.len()
            )));
        }
        if compose.len() != n_mor * n_mor {
            return Err(Error::MalformedTables(format!(
                "composition table has {} entries, expected {}",
                compose.len(),
                n_mor * n_mor
            )));
        }
        for (f, (&d, &c)) in dom.iter().zip(cod.iter()).enumerate() {
            if d >= n_objects || c >= n_objects {
                return Err(Error::MalformedTables(format!(
                    "morphism {f} has endpoint out of range"
                )));
            }
        }
        for (a, &e) in identity.iter().enumerate() {
            if e >= n_mor {
                return Err(Error::MalformedTables(format!(
                    "identity of object {a} is out of range"
                )));
            }
            if dom[e] != a || cod[e] != a {
                return Err(Error::MalformedTables(format!(
                    "identity of object {a} is not an endomorphism of {a}"
                )));
            }
        }
        for g in 0..n_mor {
            for f in 0..n_mor {
                let entry = compose[g * n_mor + f];
                let composable = cod[f] == dom[g];
                match entry {
                    Some(h) if !composable => {
                        return Err(Error::MalformedTables(format!(
                            "composite {h} stored for non-composable pair ({g}, {f})"
                        )));
                    }
                    None if composable => {
                        return Err(Error::MalformedTables(format!(
                            "missing composite for composable pair ({g}, {f})"
                        )));
                    }
                    Some(h) => {
                        if h >= n_mor {
                            return Err(Error::MalformedTables(format!(
                                "composite of ({g}, {f}) is out of range"
                            )));
                        }
                        if dom[h] != dom[f] || cod[h] != cod[g] {
                            return Err(Error::MalformedTables(format!(
                                "composite {h} of ({g}, {f}) has wrong endpoints"
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        Ok(FinCategory { n_objects, dom, cod, identity, compose })
    }

    /// Number of objects.
    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    /// Number of morphisms.
    pub fn n_morphisms(&self) -> usize {
        self.dom.len()
    }

    /// Iterator over all object indices.
    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.n_objects
    }

    /// Iterator over all morphism indices.
    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.dom.len()
    }

    /// Domain of `f`.
    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f]
    }

    /// Codomain of `f`.
    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f]
    }

    /// Identity morphism of `a`.
    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a]
    }

    /// Composite `g∘f` (first `f`, then `g`), or `None` when the pair is
    /// not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g * self.dom.len() + f]
    }

    /// Composes a chain right to left: `compose_chain([h, g, f])` is
    /// `h∘g∘f`. Returns `None` if any adjacent pair fails to compose.
    pub fn compose_chain(&self, chain: &[MorId]) -> Option<MorId> {
        let (&last, rest) = chain.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    /// All morphisms from `a` to `b`, ascending.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.dom[f] == a && self.cod[f] == b).collect()
    }

    /// All composable pairs `(g, f)` with `cod(f) == dom(g)`, ascending in
    /// `(g, f)`.
    pub fn composable_pairs(&self) -> Vec<(MorId, MorId)> {
        let mut pairs = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if self.cod[f] == self.dom[g] {
                    pairs.push((g, f));
                }
            }
        }
        pairs
    }

    /// Tests whether `f` is a monomorphism by enumerating all parallel
    /// pairs into its domain.
    pub fn is_mono(&self, f: MorId) -> bool {
        let a = self.dom[f];
        let inbound: Vec<MorId> = self.morphisms().filter(|&g| self.cod[g] == a).collect();
        for (i, &g) in inbound.iter().enumerate() {
            for &h in &inbound[i + 1..] {
                if self.dom[g] == self.dom[h] && self.compose(f, g) == self.compose(f, h) {
                    return false;
                }
            }
        }
        true
    }

    /// Returns the two-sided inverse of `f` if one exists.
    pub fn is_iso(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom[f], self.cod[f]);
        let (id_a, id_b) = (self.identity[a], self.identity[b]);
        self.hom(b, a)
            .into_iter()
            .find(|&g| self.compose(g, f) == Some(id_a) && self.compose(f, g) == Some(id_b))
    }

    /// Consumes the category, returning its raw tables
    /// `(n_objects, dom, cod, identity, compose)`.
    pub fn into_parts(self) -> (usize, Vec<ObjId>, Vec<ObjId>, Vec<MorId>, Vec<Option<MorId>>) {
        (self.n_objects, self.dom, self.cod, self.identity, self.compose)
    }
}

/// Incremental construction helper for generators: add morphisms, then
/// supply the composition rule as a closure consulted on composable pairs.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    n_objects: usize,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<Option<MorId>>,
}

impl CategoryBuilder {
    /// Starts a builder with `n_objects` objects and no morphisms.
    pub fn new(n_objects: usize) -> Self {
        CategoryBuilder { n_objects, dom: Vec::new(), cod: Vec::new(), identity: vec![None; n_objects] }
    }

    /// Adds a morphism and returns its index.
    pub fn add_morphism(&mut self, dom: ObjId, cod: ObjId) -> MorId {
        self.dom.push(dom);
        self.cod.push(cod);
        self.dom.len() - 1
    }

    /// Declares `f` as the identity of `a`.
    pub fn set_identity(&mut self, a: ObjId, f: MorId) {
        self.identity[a] = Some(f);
    }

    /// Number of morphisms added so far.
    pub fn n_morphisms(&self) -> usize {
        self.dom.len()
    }

    /// Finishes the category; `rule(g, f)` is called for every composable
    /// pair and must return the composite.
    pub fn finish(self, mut rule: impl FnMut(MorId, MorId) -> MorId) -> Result<FinCategory, Error> {
        let n_mor = self.dom.len();
        let identity = self
            .identity
            .iter()
            .enumerate()
            .map(|(a, e)| e.ok_or_else(|| Error::MalformedTables(format!("object {a} has no identity"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut compose = vec![None; n_mor * n_mor];
        for g in 0..n_mor {
            for f in 0..n_mor {
                if self.cod[f] == self.dom[g] {
                    compose[g * n_mor + f] = Some(rule(g, f));
                }
            }
        }
        FinCategory::new(self.n_objects, self.dom, self.cod, identity, compose)
    }
}

/// One violated law instance: the tag of the law, the morphisms (or
/// objects, for object-indexed laws) involved, and the two sides that
/// disagreed when both exist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// Short tag naming the violated law, e.g. `"assoc"` or `"R1"`.
    pub law: &'static str,
    /// The witnesses, in the order the law quantifies them.
    pub mors: Vec<usize>,
    /// Left-hand side of the disagreeing equation, when applicable.
    pub lhs: Option<MorId>,
    /// Right-hand side of the disagreeing equation, when applicable.
    pub rhs: Option<MorId>,
}

/// Result of running a law suite: the suite tag plus every violation found,
/// sorted and deduplicated so reports are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    /// Which suite produced this report.
    pub suite: &'static str,
    /// All violations, sorted by `(law, witnesses)`.
    pub violations: Vec<Violation>,
}

impl LawReport {
    /// Starts an empty report for `suite`.
    pub fn new(suite: &'static str) -> Self {
        LawReport { suite, violations: Vec::new() }
    }

    /// Records one violation.
    pub fn push(&mut self, law: &'static str, mors: Vec<usize>, lhs: Option<MorId>, rhs: Option<MorId>) {
        self.violations.push(Violation { law, mors, lhs, rhs });
    }

    /// Sorts and deduplicates the violation list.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    /// True when no violations were recorded.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the unit and associativity laws by full enumeration.
///
/// Shape problems cannot occur here because [`FinCategory::new`] rejects
/// them; the report therefore only ever contains `unit-left`, `unit-right`,
/// and `assoc` violations.
pub fn check_category_laws(c: &FinCategory) -> LawReport {
    let mut report = LawReport::new("category");
    for f in c.morphisms() {
        let id_dom = c.identity(c.dom(f));
        let id_cod = c.identity(c.cod(f));
        if c.compose(f, id_dom) != Some(f) {
            report.push("unit-right", vec![f], c.compose(f, id_dom), Some(f));
        }
        if c.compose(id_cod, f) != Some(f) {
            report.push("unit-left", vec![f], c.compose(id_cod, f), Some(f));
        }
    }
    let pairs = c.composable_pairs();
    for &(g, f) in &pairs {
        let gf = c.compose(g, f).expect("composable");
        for h in c.morphisms() {
            if c.dom(h) != c.cod(g) {
                continue;
            }
            let hg = c.compose(h, g).expect("composable");
            let left = c.compose(h, gf);
            let right = c.compose(hg, f);
            if left != right {
                report.push("assoc", vec![h, g, f], left, right);
            }
        }
    }
    report.finish()
}

/// A functor between table categories: an object table and a morphism
/// table. Laws are checked by [`check_functor_laws`], not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    /// Image of each object of the source.
    pub obj_map: Vec<ObjId>,
    /// Image of each morphism of the source.
    pub mor_map: Vec<MorId>,
}

impl Functor {
    /// The identity functor on `c`.
    pub fn identity(c: &FinCategory) -> Self {
        Functor { obj_map: c.objects().collect(), mor_map: c.morphisms().collect() }
    }

    /// Composite functor `self` after `first` (apply `first`, then `self`).
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            obj_map: first.obj_map.iter().map(|&a| self.obj_map[a]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    /// True when both tables are identity maps.
    pub fn is_identity(&self) -> bool {
        self.obj_map.iter().enumerate().all(|(i, &a)| i == a)
            && self.mor_map.iter().enumerate().all(|(i, &f)| i == f)
    }
}

/// Checks that `fun` is a functor from `c` to `d`: endpoint preservation,
/// identity preservation, and preservation of every composite.
pub fn check_functor_laws(c: &FinCategory, d: &FinCategory, fun: &Functor) -> LawReport {
    let mut report = LawReport::new("functor");
    if fun.obj_map.len() != c.n_objects() || fun.mor_map.len() != c.n_morphisms() {
        report.push("func-shape", vec![fun.obj_map.len(), fun.mor_map.len()], None, None);
        return report.finish();
    }
    if fun.obj_map.iter().any(|&a| a >= d.n_objects()) || fun.mor_map.iter().any(|&f| f >= d.n_morphisms()) {
        report.push("func-range", vec![], None, None);
        return report.finish();
    }
    for f in c.morphisms() {
        let img = fun.mor_map[f];
        if d.dom(img) != fun.obj_map[c.dom(f)] {
            report.push("func-dom", vec![f], Some(d.dom(img)), Some(fun.obj_map[c.dom(f)]));
        }
        if d.cod(img) != fun.obj_map[c.cod(f)] {
            report.push("func-cod", vec![f], Some(d.cod(img)), Some(fun.obj_map[c.cod(f)]));
        }
    }
    for a in c.objects() {
        let img = fun.mor_map[c.identity(a)];
        let want = d.identity(fun.obj_map[a]);
        if img != want {
            report.push("func-id", vec![a], Some(img), Some(want));
        }
    }
    for (g, f) in c.composable_pairs() {
        let gf = c.compose(g, f).expect("composable");
        let img = d.compose(fun.mor_map[g], fun.mor_map[f]);
        if img != Some(fun.mor_map[gf]) {
            report.push("func-comp", vec![g, f], img, Some(fun.mor_map[gf]));
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Free category on the graph `0 -> 1 -> 2` plus the composite arrow.
    fn chain_walk() -> FinCategory {
        // morphisms: 0,1,2 identities; 3: 0->1; 4: 1->2; 5: 0->2
        let dom = vec![0, 1, 2, 0, 1, 0];
        let cod = vec![0, 1, 2, 1, 2, 2];
        let identity = vec![0, 1, 2];
        let n = dom.len();
        let mut compose = vec![None; n * n];
        let mut set = |g: usize, f: usize, h: usize| compose[g * n + f] = Some(h);
        for f in 0..n {
            set(f, dom[f], f);
            set(cod[f], f, f);
        }
        set(4, 3, 5);
        FinCategory::new(3, dom, cod, identity, compose).unwrap()
    }

    #[test]
    fn chain_walk_satisfies_laws() {
        let c = chain_walk();
        let report = check_category_laws(&c);
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(c.hom(0, 2), vec![5]);
        assert_eq!(c.compose_chain(&[4, 3]), Some(5));
        assert_eq!(c.compose_chain(&[2, 4, 3, 0]), Some(5));
    }

    #[test]
    fn missing_composite_is_malformed() {
        let dom = vec![0, 1, 0];
        let cod = vec![0, 1, 1];
        let identity = vec![0, 1];
        let compose = vec![None; 9];
        let err = FinCategory::new(2, dom, cod, identity, compose).unwrap_err();
        assert!(matches!(err, Error::MalformedTables(_)));
    }

    #[test]
    fn spurious_composite_is_malformed() {
        // two isolated objects; an entry for the non-composable pair (0, 1)
        let dom = vec![0, 1];
        let cod = vec![0, 1];
        let identity = vec![0, 1];
        let mut compose = vec![None; 4];
        compose[0] = Some(0);
        compose[3] = Some(1);
        compose[1] = Some(0);
        let err = FinCategory::new(2, dom, cod, identity, compose).unwrap_err();
        assert!(matches!(err, Error::MalformedTables(_)));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Monoid {id, a, b}; start from the left-zero table on {1,2}, which
        // is associative, then patch one entry to break it.
        let dom = vec![0, 0, 0];
        let cod = vec![0, 0, 0];
        let identity = vec![0];
        let n = 3;
        let mut compose = vec![None; n * n];
        // left-zero on {1,2}: x*y = x for non-identities
        for g in 0..n {
            for f in 0..n {
                let h = if g == 0 { f } else if f == 0 { g } else { g };
                compose[g * n + f] = Some(h);
            }
        }
        // patch: 1∘1 becomes 2, so (1∘1)∘1 = 2∘1 = 2 but 1∘(1∘1) = 1∘2 = 1
        compose[n + 1] = Some(2);
        let c = FinCategory::new(1, dom, cod, identity, compose).unwrap();
        let report = check_category_laws(&c);
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.law == "assoc"));
        // Exactly the triples (1,1,1) and (1,2,1) disagree, each listed once.
        assert_eq!(report.violations.len(), 2);
    }

    #[test]
    fn zero_object_category_is_valid() {
        let c = FinCategory::new(0, vec![], vec![], vec![], vec![]).unwrap();
        assert!(check_category_laws(&c).passed());
        assert_eq!(c.n_objects(), 0);
    }

    #[test]
    fn mono_and_iso_detection() {
        let c = chain_walk();
        // every identity is an iso and a mono
        for a in c.objects() {
            assert_eq!(c.is_iso(c.identity(a)), Some(c.identity(a)));
            assert!(c.is_mono(c.identity(a)));
        }
        // 3: 0->1 is mono (no parallel pairs into 0 besides identity) but not iso
        assert!(c.is_mono(3));
        assert_eq!(c.is_iso(3), None);
    }

    #[test]
    fn identity_functor_passes_laws() {
        let c = chain_walk();
        let f = Functor::identity(&c);
        assert!(check_functor_laws(&c, &c, &f).passed());
        assert!(f.is_identity());
        assert!(f.after(&f).is_identity());
    }

    #[test]
    fn non_functor_is_caught() {
        let c = chain_walk();
        let mut f = Functor::identity(&c);
        f.mor_map[5] = 3; // breaks endpoint and composite preservation
        let report = check_functor_laws(&c, &c, &f);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.law == "func-comp" || v.law == "func-cod"));
    }
}
