//! The pair construction over a firm base, and the machinery that makes it a
//! theorem factory: canonical subunit-tagged pairs, the induced restriction
//! and corestriction category, tensor-restriction axioms with exhaustively
//! searched witnesses, the orthogonal factorisation into restriction part and
//! total part, and both round trips between a firm base and the category of
//! total morphisms.
//!
//! A morphism of the constructed category is a canonical [`SPair`]: a subunit
//! class `s: S -> I` together with a base morphism `f: A (x) S -> B`. Two
//! raw pairs are the same morphism when their monos differ by an iso, so the
//! builder rewrites every pair onto the least representative of its class
//! once, at construction time, and all tables are computed on canonical
//! pairs only.

use crate::fincat::{
    check_functor_laws, FinCategory, Functor, LawReport, MorId, ObjId,
};
use crate::monoidal::{
    check_monoidal_laws, classify_subunit, enumerate_subunits, is_firm, is_tensor_total,
    isub_semilattice, meet_mono, subunit_leq, MonoidalData, Subunit,
};
use crate::restriction::{
    check_monoidal_restriction, check_r_axioms, is_restriction_total,
    restriction_idempotents, restriction_inverse, scalar_mult, total_subcategory,
    CorestrictionData, RestrictionData, TotalSubcategory,
};
use crate::{CategoryData, Error};

/// A canonical morphism of the pair construction: a subunit class index into
/// [`SCategory::subunits`], the declared source object, and the underlying
/// base morphism `under: src (x) S -> cod`.
///
/// The source is stored explicitly because `dom(under)` alone does not
/// determine it: distinct sources can tensor with `S` to the same object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SPair {
    /// Index of the canonical subunit class.
    pub subunit: usize,
    /// Declared source object.
    pub src: ObjId,
    /// Base morphism `src (x) S -> cod`.
    pub under: MorId,
}

/// The pair construction over a strict firm braided base: carrier category,
/// its monoidal, restriction, and corestriction structure, and the decoding
/// table from carrier morphism ids back to canonical pairs.
#[derive(Debug, Clone)]
pub struct SCategory {
    /// The base category the construction was built from.
    pub base: FinCategory,
    /// Monoidal structure of the base.
    pub base_monoidal: MonoidalData,
    /// The carrier: one morphism per canonical pair.
    pub cat: FinCategory,
    /// Tensor structure on the carrier (strict, braided).
    pub monoidal: MonoidalData,
    /// Restriction: `[s, f] |-> [s, rho . (src (x) s)]`.
    pub restriction: RestrictionData,
    /// Corestriction: `[s, f] |-> [s, rho . (cod (x) s)]`.
    pub corestriction: CorestrictionData,
    /// Canonical subunit classes of the base, in enumeration order.
    pub subunits: Vec<Subunit>,
    /// Decoding table: carrier morphism id to canonical pair.
    pub pairs: Vec<SPair>,
    top: usize,
}

impl SCategory {
    /// Decodes a carrier morphism to its canonical pair.
    pub fn pair(&self, f: MorId) -> &SPair {
        &self.pairs[f]
    }

    /// Index of the subunit class of the unit itself.
    pub fn top_class(&self) -> usize {
        self.top
    }

    /// Looks up an already-canonical pair. Pairs are stored sorted by
    /// `(subunit, under, src)`, so this is a binary search.
    pub fn find_pair(&self, subunit: usize, src: ObjId, under: MorId) -> Option<MorId> {
        self.pairs
            .binary_search_by(|p| (p.subunit, p.under, p.src).cmp(&(subunit, under, src)))
            .ok()
    }

    /// Rewrites a raw pair onto the canonical representative of its mono's
    /// class: `(s . m, f)` becomes `(s, f . (src (x) m)^{-1})`.
    pub fn canonicalize_pair(
        &self,
        mono: MorId,
        src: ObjId,
        under: MorId,
    ) -> Result<SPair, Error> {
        let (subunit, under) = canonical_parts(
            &self.base,
            &self.base_monoidal,
            &self.subunits,
            mono,
            src,
            under,
        )?;
        Ok(SPair { subunit, src, under })
    }

    /// Canonicalizes a raw pair and resolves it to a carrier morphism id.
    pub fn find_raw(&self, mono: MorId, src: ObjId, under: MorId) -> Result<MorId, Error> {
        let p = self.canonicalize_pair(mono, src, under)?;
        self.find_pair(p.subunit, p.src, p.under).ok_or_else(|| {
            Error::CheckFailed(format!(
                "canonical pair ({}, {}, {}) is not enumerated",
                p.subunit, p.src, p.under
            ))
        })
    }

    /// Embeds a base morphism `f: A -> B` as the everywhere-defined pair
    /// `[1, f . rho]: A -> B`.
    pub fn embed_total(&self, f: MorId) -> Result<MorId, Error> {
        let c = &self.base;
        let m = &self.base_monoidal;
        let a = c.dom(f);
        let under = c.compose(f, m.rho(a)).ok_or_else(|| {
            Error::CheckFailed(format!("morphism {f} does not compose with its unitor"))
        })?;
        self.find_raw(c.identity(m.unit()), a, under)
    }

    /// Bundles the carrier with its full structure for the generic checkers
    /// and the isomorphism search.
    pub fn data(&self) -> CategoryData {
        CategoryData {
            cat: self.cat.clone(),
            monoidal: Some(self.monoidal.clone()),
            restriction: Some(self.restriction.clone()),
            corestriction: Some(self.corestriction.clone()),
        }
    }
}

/// Canonical form of a raw pair: classifies the mono, then transports the
/// underlying morphism along the inverse of the mediating iso. Returns the
/// class index and rewritten underlying morphism.
pub fn canonical_parts(
    c: &FinCategory,
    m: &MonoidalData,
    subs: &[Subunit],
    mono: MorId,
    src: ObjId,
    under: MorId,
) -> Result<(usize, MorId), Error> {
    if c.dom(under) != m.tensor_obj(src, c.dom(mono)) {
        return Err(Error::CheckFailed(format!(
            "pair over mono {mono} with source {src} needs an underlying morphism from {}, got one from {}",
            m.tensor_obj(src, c.dom(mono)),
            c.dom(under)
        )));
    }
    let (k, med) = classify_subunit(c, subs, mono).ok_or(Error::NotASubunit(mono))?;
    let shift = c
        .is_iso(m.tensor_mor(c.identity(src), med))
        .expect("mediating iso tensors to an iso");
    let canon = c.compose(under, shift).expect("canonical pair composite is typed");
    Ok((k, canon))
}

fn comp(c: &FinCategory, g: MorId, f: MorId) -> MorId {
    c.compose(g, f).expect("composite is typed by construction")
}

/// Builds the pair construction over a strict, firm, braided base.
///
/// Composition tensors the first factor's subunit in before applying the
/// second underlying morphism; the tensor of pairs braids the second source
/// past the first subunit. Both results are canonicalized through the meet
/// mono `lambda . (s (x) t)`.
pub fn build_s_construction(c: &FinCategory, m: &MonoidalData) -> Result<SCategory, Error> {
    if !m.has_braiding() {
        return Err(Error::NotBraided);
    }
    if !m.is_strict(c) {
        return Err(Error::NotStrict(
            "the pair construction needs identity coherence components".into(),
        ));
    }
    if !is_firm(c, m) {
        return Err(Error::NotFirm(
            "the pair construction needs subunit tensors to stay monic".into(),
        ));
    }
    let subs = enumerate_subunits(c, m);
    let top = classify_subunit(c, &subs, c.identity(m.unit()))
        .expect("the unit is its own subunit")
        .0;

    // Canonical pairs in ascending (subunit, under, src) order.
    let mut pairs: Vec<SPair> = Vec::new();
    for subunit in 0..subs.len() {
        for under in c.morphisms() {
            for src in c.objects() {
                if c.dom(under) == m.tensor_obj(src, subs[subunit].domain) {
                    pairs.push(SPair { subunit, src, under });
                }
            }
        }
    }
    let find = |subunit: usize, src: ObjId, under: MorId| -> MorId {
        pairs
            .binary_search_by(|p| (p.subunit, p.under, p.src).cmp(&(subunit, under, src)))
            .expect("canonical pair is enumerated")
    };

    let n_mor = pairs.len();
    let n_obj = c.n_objects();
    let dom: Vec<ObjId> = pairs.iter().map(|p| p.src).collect();
    let cod: Vec<ObjId> = pairs.iter().map(|p| c.cod(p.under)).collect();

    let mut identity = Vec::with_capacity(n_obj);
    for a in c.objects() {
        let under = comp(c, m.rho(a), m.tensor_mor(c.identity(a), subs[top].mono));
        identity.push(find(top, a, under));
    }

    let mut table: Vec<Option<MorId>> = vec![None; n_mor * n_mor];
    for (gi, g) in pairs.iter().enumerate() {
        for (fi, f) in pairs.iter().enumerate() {
            if g.src != c.cod(f.under) {
                continue;
            }
            let raw = comp(c, g.under, m.tensor_mor(f.under, c.identity(subs[g.subunit].domain)));
            let w = meet_mono(c, m, &subs[f.subunit], &subs[g.subunit]);
            let (k, u) = canonical_parts(c, m, &subs, w, f.src, raw)?;
            table[gi * n_mor + fi] = Some(find(k, f.src, u));
        }
    }
    let cat = FinCategory::new(n_obj, dom, cod, identity.clone(), table)?;

    let mut bar = Vec::with_capacity(n_mor);
    let mut hat = Vec::with_capacity(n_mor);
    for p in &pairs {
        let s = subs[p.subunit].mono;
        let b = c.cod(p.under);
        bar.push(find(p.subunit, p.src, comp(c, m.rho(p.src), m.tensor_mor(c.identity(p.src), s))));
        hat.push(find(p.subunit, b, comp(c, m.rho(b), m.tensor_mor(c.identity(b), s))));
    }
    let restriction = RestrictionData::new(&cat, bar)?;
    let corestriction = CorestrictionData::new(&cat, hat)?;

    let unit = m.unit();
    let mut tobj = vec![0usize; n_obj * n_obj];
    for a in 0..n_obj {
        for b in 0..n_obj {
            tobj[a * n_obj + b] = m.tensor_obj(a, b);
        }
    }
    let mut tmor = vec![0usize; n_mor * n_mor];
    for (fi, f) in pairs.iter().enumerate() {
        for (gi, g) in pairs.iter().enumerate() {
            let braid = m
                .sigma(g.src, subs[f.subunit].domain)
                .expect("braiding present by precondition");
            let rearrange = m.tensor_mor(
                m.tensor_mor(c.identity(f.src), braid),
                c.identity(subs[g.subunit].domain),
            );
            let raw = comp(c, m.tensor_mor(f.under, g.under), rearrange);
            let w = meet_mono(c, m, &subs[f.subunit], &subs[g.subunit]);
            let src = m.tensor_obj(f.src, g.src);
            let (k, u) = canonical_parts(c, m, &subs, w, src, raw)?;
            tmor[fi * n_mor + gi] = find(k, src, u);
        }
    }
    let lambda: Vec<MorId> = (0..n_obj).map(|a| identity[m.tensor_obj(unit, a)]).collect();
    let rho: Vec<MorId> = (0..n_obj).map(|a| identity[m.tensor_obj(a, unit)]).collect();
    let mut alpha = Vec::with_capacity(n_obj * n_obj * n_obj);
    for a in 0..n_obj {
        for b in 0..n_obj {
            for d in 0..n_obj {
                alpha.push(identity[m.tensor_obj(m.tensor_obj(a, b), d)]);
            }
        }
    }
    // Temporary view used only to embed the base braiding.
    let embed_braid = |f: MorId| -> Result<MorId, Error> {
        let a = c.dom(f);
        let raw = comp(c, f, m.rho(a));
        let (k, u) = canonical_parts(c, m, &subs, c.identity(unit), a, raw)?;
        Ok(find(k, a, u))
    };
    let mut sigma = Vec::with_capacity(n_obj * n_obj);
    for a in 0..n_obj {
        for b in 0..n_obj {
            let s = m.sigma(a, b).expect("braiding present by precondition");
            sigma.push(embed_braid(s)?);
        }
    }
    let monoidal = MonoidalData::new(&cat, unit, tobj, tmor, lambda, rho, alpha, Some(sigma))?;

    Ok(SCategory {
        base: c.clone(),
        base_monoidal: m.clone(),
        cat,
        monoidal,
        restriction,
        corestriction,
        subunits: subs,
        pairs,
        top,
    })
}

/// Decides whether a carrier morphism `[s, f]` has a restriction inverse by
/// inverting the split composite `(f (x) S) . (src (x) copy)` in the base,
/// and returns the inverse pair `[s, rho . (src (x) s) . h^{-1}]` when it
/// does. Independent of the generic inverse search over the carrier.
pub fn restriction_inverse_via_split(s: &SCategory, f: MorId) -> Option<MorId> {
    let c = &s.base;
    let m = &s.base_monoidal;
    let p = &s.pairs[f];
    let su = &s.subunits[p.subunit];
    let spread = m.tensor_mor(c.identity(p.src), su.split);
    let composite = comp(c, m.tensor_mor(p.under, c.identity(su.domain)), spread);
    let hinv = c.is_iso(composite)?;
    let fold = comp(c, m.rho(p.src), m.tensor_mor(c.identity(p.src), su.mono));
    let under = comp(c, fold, hinv);
    let b = c.cod(p.under);
    Some(
        s.find_pair(p.subunit, b, under)
            .expect("inverse pair is enumerated"),
    )
}

fn tr_points_with(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
    subs: &[Subunit],
    x: ObjId,
) -> Vec<MorId> {
    c.hom(m.unit(), x)
        .into_iter()
        .filter(|&d| {
            restriction_inverse(c, r, d)
                .map_or(false, |inv| is_tensor_total(c, m, subs, inv))
        })
        .collect()
}

/// All points `d: I -> X` that are restriction isomorphisms whose inverse is
/// total with respect to the tensor: failing to restrict along any subunit
/// that does not already absorb into its source.
pub fn tensor_restriction_points(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
    x: ObjId,
) -> Vec<MorId> {
    let subs = enumerate_subunits(c, m);
    tr_points_with(c, m, r, &subs, x)
}

/// All `d: I -> S` with `bar d = mono . d`, for any morphism `mono: S -> I`.
pub fn restriction_subunit_points(
    c: &FinCategory,
    r: &RestrictionData,
    mono: MorId,
) -> Vec<MorId> {
    c.hom(c.cod(mono), c.dom(mono))
        .into_iter()
        .filter(|&d| c.compose(mono, d) == Some(r.bar(d)))
        .collect()
}

/// The point every other point of `mono` factors through: `d = d_max . bar d`
/// for all points `d`, if such a point exists. At most one point has the
/// property.
pub fn maximal_restriction_subunit_point(
    c: &FinCategory,
    r: &RestrictionData,
    mono: MorId,
) -> Option<MorId> {
    let points = restriction_subunit_points(c, r, mono);
    points
        .iter()
        .copied()
        .find(|&dm| points.iter().all(|&d| c.compose(dm, r.bar(d)) == Some(d)))
}

fn check_tr_prerequisites(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> Result<(), Error> {
    if !check_monoidal_laws(c, m).passed() {
        return Err(Error::PrerequisiteFailed("monoidal"));
    }
    if !check_r_axioms(c, r).passed() {
        return Err(Error::PrerequisiteFailed("R"));
    }
    if !check_monoidal_restriction(c, m, r).passed() {
        return Err(Error::PrerequisiteFailed("monrest"));
    }
    if !is_firm(c, m) {
        return Err(Error::PrerequisiteFailed("firm"));
    }
    Ok(())
}

/// Properties that subunit points enjoy in any firm restriction category,
/// checked exhaustively. Suite `points`:
///
/// - `point-iso`: every point of `s` is a restriction isomorphism with
///   inverse `bar d . s`
/// - `point-meet`: `(d (x) d') . lambda^{-1}` is a point of the meet mono
/// - `point-maximal-meet`: the meet of maximal points is a point of the meet
///   mono and every point of the meet factors through it
pub fn check_point_lemmas(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> Result<LawReport, Error> {
    check_tr_prerequisites(c, m, r)?;
    let mut report = LawReport::new("points");
    let subs = enumerate_subunits(c, m);
    let unit = m.unit();
    let lam_inv = c
        .is_iso(m.lambda(unit))
        .ok_or_else(|| Error::CheckFailed("unitor of the unit is not invertible".into()))?;
    let points: Vec<Vec<MorId>> = subs
        .iter()
        .map(|s| restriction_subunit_points(c, r, s.mono))
        .collect();
    let maximal: Vec<Option<MorId>> = subs
        .iter()
        .map(|s| maximal_restriction_subunit_point(c, r, s.mono))
        .collect();

    for (j, s) in subs.iter().enumerate() {
        for &d in &points[j] {
            let expected = c.compose(r.bar(d), s.mono);
            let actual = restriction_inverse(c, r, d);
            if actual != expected {
                report.push("point-iso", vec![s.mono, d], actual, expected);
            }
        }
    }
    for j in 0..subs.len() {
        for k in 0..subs.len() {
            let w = meet_mono(c, m, &subs[j], &subs[k]);
            for &d in &points[j] {
                for &e in &points[k] {
                    let cand = comp(c, m.tensor_mor(d, e), lam_inv);
                    let lhs = c.compose(w, cand);
                    let rhs = Some(r.bar(cand));
                    if lhs != rhs {
                        report.push("point-meet", vec![d, e], lhs, rhs);
                    }
                }
            }
            if let (Some(dj), Some(dk)) = (maximal[j], maximal[k]) {
                let cand = comp(c, m.tensor_mor(dj, dk), lam_inv);
                if c.compose(w, cand) != Some(r.bar(cand)) {
                    report.push("point-maximal-meet", vec![dj, dk], c.compose(w, cand), Some(r.bar(cand)));
                } else {
                    for &d in &restriction_subunit_points(c, r, w) {
                        if c.compose(cand, r.bar(d)) != Some(d) {
                            report.push(
                                "point-maximal-meet",
                                vec![dj, dk, d],
                                c.compose(cand, r.bar(d)),
                                Some(d),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

/// The seven tensor-restriction axioms, each decided by exhaustive search.
/// Suite `TR`:
///
/// - `TR1`: every restriction idempotent scalar factors through a subunit
///   via a tensor-restriction point
/// - `TR2`: every subunit has a point section, `s . d = bar d`
/// - `TR3`: every restriction idempotent is `e . X` for exactly one
///   restriction idempotent scalar `e` (no witness, or a second witness, is
///   reported)
/// - `TR4`: every tensor-total morphism is `T . bar f` for exactly one
///   restriction-total `T`
/// - `TR5`: points lift against subunits
/// - `TR6`: the tensor of two points, pulled back along the unitor, is a
///   point
/// - `TR7`: any two points with a common codomain are connected by a scalar
///
/// Prerequisites are checked first and reported as
/// [`Error::PrerequisiteFailed`] with the failing suite name.
pub fn check_tr_axioms(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> Result<LawReport, Error> {
    check_tr_prerequisites(c, m, r)?;
    let mut report = LawReport::new("TR");
    let subs = enumerate_subunits(c, m);
    let unit = m.unit();
    let scalars = c.hom(unit, unit);
    let o_unit = restriction_idempotents(c, r, unit)?.elements;
    let points: Vec<Vec<MorId>> = c
        .objects()
        .map(|x| tr_points_with(c, m, r, &subs, x))
        .collect();

    for &e in &o_unit {
        let factored = subs
            .iter()
            .any(|su| points[su.domain].iter().any(|&d| c.compose(su.mono, d) == Some(e)));
        if !factored {
            report.push("TR1", vec![e], None, None);
        }
    }

    for su in &subs {
        let has_section = points[su.domain]
            .iter()
            .any(|&d| c.compose(su.mono, d) == Some(r.bar(d)));
        if !has_section {
            report.push("TR2", vec![su.mono], None, None);
        }
    }

    for x in c.objects() {
        let idem = restriction_idempotents(c, r, x)?.elements;
        let id_x = c.identity(x);
        for &f in &idem {
            let witnesses: Vec<MorId> = o_unit
                .iter()
                .copied()
                .filter(|&e| scalar_mult(c, m, e, id_x).ok() == Some(f))
                .collect();
            match witnesses.len() {
                1 => {}
                0 => report.push("TR3", vec![f], None, None),
                _ => report.push("TR3", vec![f], Some(witnesses[0]), Some(witnesses[1])),
            }
        }
    }

    for f in c.morphisms() {
        if !is_tensor_total(c, m, &subs, f) {
            continue;
        }
        let bar_f = r.bar(f);
        let witnesses: Vec<MorId> = c
            .hom(c.dom(f), c.cod(f))
            .into_iter()
            .filter(|&t| is_restriction_total(c, r, t) && c.compose(t, bar_f) == Some(f))
            .collect();
        match witnesses.len() {
            1 => {}
            0 => report.push("TR4", vec![f], None, None),
            _ => report.push("TR4", vec![f], Some(witnesses[0]), Some(witnesses[1])),
        }
    }

    for su in &subs {
        for x in c.objects() {
            for &d in &points[x] {
                for f in c.hom(unit, su.domain) {
                    for g in c.hom(x, unit) {
                        if c.compose(su.mono, f) != c.compose(g, d) {
                            continue;
                        }
                        let fill = c.hom(x, su.domain).into_iter().any(|mm| {
                            c.compose(mm, d) == Some(f) && c.compose(su.mono, mm) == Some(g)
                        });
                        if !fill {
                            report.push("TR5", vec![su.mono, d, f, g], None, None);
                        }
                    }
                }
            }
        }
    }

    let lam_inv = c
        .is_iso(m.lambda(unit))
        .ok_or_else(|| Error::CheckFailed("unitor of the unit is not invertible".into()))?;
    for x in c.objects() {
        for y in c.objects() {
            for &d in &points[x] {
                for &e in &points[y] {
                    let cand = comp(c, m.tensor_mor(d, e), lam_inv);
                    if !points[m.tensor_obj(x, y)].contains(&cand) {
                        report.push("TR6", vec![d, e], Some(cand), None);
                    }
                }
            }
        }
    }

    for x in c.objects() {
        for &d in &points[x] {
            for &e in &points[x] {
                let connected = scalars.iter().any(|&s| c.compose(d, s) == Some(e));
                if !connected {
                    report.push("TR7", vec![d, e], None, None);
                }
            }
        }
    }

    Ok(report.finish())
}

/// The factorisation data of one morphism in a tensor-restriction category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrWitness {
    /// The unique restriction idempotent scalar with `e_f . dom(f) = bar f`.
    pub e_f: MorId,
    /// The least subunit `e_f` factors through via a point.
    pub s_f: Subunit,
    /// The mediating point `I -> S_f`, unique because `s_f` is monic.
    pub d_f: MorId,
    /// The unique restriction-total `T: dom(f) (x) S_f -> cod(f)` with
    /// `T . (dom(f) (x) d_f) . rho^{-1} = f`.
    pub total_part: MorId,
}

/// Computes the restriction scalar, least subunit, mediating point, and
/// total part of a morphism. Every step is a full scan; zero or several
/// candidates at any step is a [`Error::CheckFailed`].
///
/// Callers are expected to have verified [`check_tr_axioms`] first.
pub fn tr_witnesses(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
    f: MorId,
) -> Result<TrWitness, Error> {
    let subs = enumerate_subunits(c, m);
    let unit = m.unit();
    let o_unit = restriction_idempotents(c, r, unit)?.elements;
    let bar_f = r.bar(f);
    let x = c.dom(f);

    let e_witnesses: Vec<MorId> = o_unit
        .iter()
        .copied()
        .filter(|&e| scalar_mult(c, m, e, c.identity(x)).ok() == Some(bar_f))
        .collect();
    if e_witnesses.len() != 1 {
        return Err(Error::CheckFailed(format!(
            "morphism {f} has {} scalar witnesses for its restriction, expected exactly one",
            e_witnesses.len()
        )));
    }
    let e_f = e_witnesses[0];

    let mut candidates: Vec<(usize, MorId)> = Vec::new();
    for (k, su) in subs.iter().enumerate() {
        let mediating = tr_points_with(c, m, r, &subs, su.domain)
            .into_iter()
            .find(|&d| c.compose(su.mono, d) == Some(e_f));
        if let Some(d) = mediating {
            candidates.push((k, d));
        }
    }
    let least = candidates
        .iter()
        .copied()
        .find(|&(k0, _)| candidates.iter().all(|&(k, _)| subunit_leq(c, &subs, k0, k)))
        .ok_or_else(|| {
            Error::CheckFailed(format!(
                "no least subunit mediates the restriction of morphism {f}"
            ))
        })?;
    let (k_f, d_f) = least;
    let s_f = subs[k_f];

    let rho_inv = c.is_iso(m.rho(x)).ok_or_else(|| {
        Error::CheckFailed(format!("unitor of object {x} is not invertible"))
    })?;
    let connect = comp(c, m.tensor_mor(c.identity(x), d_f), rho_inv);
    let t_witnesses: Vec<MorId> = c
        .hom(m.tensor_obj(x, s_f.domain), c.cod(f))
        .into_iter()
        .filter(|&t| is_restriction_total(c, r, t) && c.compose(t, connect) == Some(f))
        .collect();
    if t_witnesses.len() != 1 {
        return Err(Error::CheckFailed(format!(
            "morphism {f} has {} total parts, expected exactly one",
            t_witnesses.len()
        )));
    }
    Ok(TrWitness { e_f, s_f, d_f, total_part: t_witnesses[0] })
}

/// The section of a subunit mono: the unique tensor-restriction point with
/// `mono . d = bar d`. Uniqueness follows from the mono being monic, since
/// any two sections share their restriction.
fn subunit_section(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
    subs: &[Subunit],
    mono: MorId,
    domain: ObjId,
) -> Result<MorId, Error> {
    let sections: Vec<MorId> = tr_points_with(c, m, r, subs, domain)
        .into_iter()
        .filter(|&d| c.compose(mono, d) == Some(r.bar(d)))
        .collect();
    if sections.len() != 1 {
        return Err(Error::CheckFailed(format!(
            "subunit mono {mono} has {} point sections, expected exactly one",
            sections.len()
        )));
    }
    Ok(sections[0])
}

/// The mutually inverse correspondence between restriction idempotent
/// scalars and subunit classes: each scalar maps to the least class it
/// factors through, each class maps back through its section. Returns the
/// scalar-to-class pairing in ascending scalar order; any mismatch is a
/// [`Error::CheckFailed`].
pub fn scalar_subunit_correspondence(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> Result<Vec<(MorId, usize)>, Error> {
    let subs = enumerate_subunits(c, m);
    let o_unit = restriction_idempotents(c, r, m.unit())?.elements;
    if o_unit.len() != subs.len() {
        return Err(Error::CheckFailed(format!(
            "{} restriction idempotent scalars against {} subunit classes",
            o_unit.len(),
            subs.len()
        )));
    }
    let mut pairing = Vec::with_capacity(o_unit.len());
    for &e in &o_unit {
        let w = tr_witnesses(c, m, r, e)?;
        let k = subs
            .iter()
            .position(|su| su.mono == w.s_f.mono)
            .expect("witness subunit is canonical");
        pairing.push((e, k));
    }
    for (k, su) in subs.iter().enumerate() {
        let d = subunit_section(c, m, r, &subs, su.mono, su.domain)?;
        let e = comp(c, su.mono, d);
        if pairing.iter().find(|&&(e0, _)| e0 == e).map(|&(_, k0)| k0) != Some(k) {
            return Err(Error::CheckFailed(format!(
                "section of subunit class {k} lands on scalar {e} outside the correspondence"
            )));
        }
    }
    let mut classes: Vec<usize> = pairing.iter().map(|&(_, k)| k).collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() != pairing.len() {
        return Err(Error::CheckFailed(
            "scalar-to-subunit assignment is not injective".into(),
        ));
    }
    Ok(pairing)
}

/// Splits a carrier morphism `[s, f]` into the restriction part
/// `[s, id]: A -> A (x) S` followed by the total part `[1, f]`.
pub fn em_factorize(s: &SCategory, f: MorId) -> (MorId, MorId) {
    let p = &s.pairs[f];
    let span = s.base_monoidal.tensor_obj(p.src, s.subunits[p.subunit].domain);
    let e_part = s
        .find_pair(p.subunit, p.src, s.base.identity(span))
        .expect("identity-shaped pair is enumerated");
    let m_part = s.embed_total(p.under).expect("underlying morphism embeds");
    debug_assert_eq!(s.cat.compose(m_part, e_part), Some(f));
    (e_part, m_part)
}

/// Verifies the orthogonal factorisation on a carrier. Suite `em`:
///
/// - `em-fact`: the two factors compose back to the morphism
/// - `em-class-e`: the first factor is a restriction isomorphism whose
///   codomain splits off the pair's subunit
/// - `em-class-m`: the second factor is everywhere defined
/// - `em-lift`: every commuting square with the first class on top and the
///   second on the bottom has exactly one diagonal fill-in
pub fn check_em_lifting(s: &SCategory) -> LawReport {
    let mut report = LawReport::new("em");
    let c = &s.cat;
    let base = &s.base;
    let bm = &s.base_monoidal;
    let in_e = |f: MorId| -> bool {
        let p = &s.pairs[f];
        restriction_inverse(c, &s.restriction, f).is_some()
            && base.objects().any(|b| {
                bm.tensor_obj(b, s.subunits[p.subunit].domain) == base.cod(p.under)
            })
    };
    let in_m = |f: MorId| -> bool { s.pairs[f].subunit == s.top };

    for f in c.morphisms() {
        let (e, mm) = em_factorize(s, f);
        if c.compose(mm, e) != Some(f) {
            report.push("em-fact", vec![f], c.compose(mm, e), Some(f));
        }
        if !in_e(e) {
            report.push("em-class-e", vec![f, e], None, None);
        }
        if !in_m(mm) {
            report.push("em-class-m", vec![f, mm], None, None);
        }
    }

    let e_list: Vec<MorId> = c.morphisms().filter(|&f| in_e(f)).collect();
    let m_list: Vec<MorId> = c.morphisms().filter(|&f| in_m(f)).collect();
    for &e in &e_list {
        for &mm in &m_list {
            for g in c.hom(c.dom(e), c.dom(mm)) {
                for h in c.hom(c.cod(e), c.cod(mm)) {
                    if c.compose(mm, g) != c.compose(h, e) {
                        continue;
                    }
                    let fills = c
                        .hom(c.cod(e), c.dom(mm))
                        .into_iter()
                        .filter(|&d| {
                            c.compose(d, e) == Some(g) && c.compose(mm, d) == Some(h)
                        })
                        .count();
                    if fills != 1 {
                        report.push("em-lift", vec![e, mm, g, h], None, None);
                    }
                }
            }
        }
    }
    report.finish()
}

/// A verified isomorphism of categories: both functors as full tables plus
/// the names of the equations that were checked to certify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    /// The functor out of the first category.
    pub forward: Functor,
    /// The functor back.
    pub backward: Functor,
    /// Which certification checks ran and passed.
    pub verified: Vec<&'static str>,
}

fn certify_monoidal_iso(
    c: &FinCategory,
    m: &MonoidalData,
    d: &FinCategory,
    md: &MonoidalData,
    forward: &Functor,
    backward: &Functor,
) -> Result<Vec<&'static str>, Error> {
    let mut verified = Vec::new();
    if !check_functor_laws(c, d, forward).passed() || !check_functor_laws(d, c, backward).passed() {
        return Err(Error::CheckFailed("round trip functor laws fail".into()));
    }
    verified.push("functors");
    if !backward.after(forward).is_identity() || !forward.after(backward).is_identity() {
        return Err(Error::CheckFailed("round trip functors are not mutually inverse".into()));
    }
    verified.push("mutually-inverse");
    if forward.obj_map[m.unit()] != md.unit() {
        return Err(Error::CheckFailed("round trip does not preserve the unit".into()));
    }
    verified.push("unit");
    for a in c.objects() {
        for b in c.objects() {
            if forward.obj_map[m.tensor_obj(a, b)]
                != md.tensor_obj(forward.obj_map[a], forward.obj_map[b])
            {
                return Err(Error::CheckFailed(format!(
                    "round trip does not preserve the tensor of objects {a} and {b}"
                )));
            }
        }
    }
    verified.push("tensor-objects");
    for f in c.morphisms() {
        for g in c.morphisms() {
            if forward.mor_map[m.tensor_mor(f, g)]
                != md.tensor_mor(forward.mor_map[f], forward.mor_map[g])
            {
                return Err(Error::CheckFailed(format!(
                    "round trip does not preserve the tensor of morphisms {f} and {g}"
                )));
            }
        }
    }
    verified.push("tensor-morphisms");
    for a in c.objects() {
        for b in c.objects() {
            let lhs = m.sigma(a, b).map(|f| forward.mor_map[f]);
            let rhs = md.sigma(forward.obj_map[a], forward.obj_map[b]);
            if lhs != rhs {
                return Err(Error::CheckFailed(format!(
                    "round trip does not preserve the braiding at {a} and {b}"
                )));
            }
        }
    }
    verified.push("braiding");
    let sl_c = isub_semilattice(c, m)?;
    let sl_d = isub_semilattice(d, md)?;
    let subs_c = enumerate_subunits(c, m);
    let subs_d = enumerate_subunits(d, md);
    if sl_c.len() != sl_d.len() {
        return Err(Error::CheckFailed("subunit class counts differ across the round trip".into()));
    }
    let mut phi = Vec::with_capacity(subs_c.len());
    for su in &subs_c {
        let (k, _) = classify_subunit(d, &subs_d, forward.mor_map[su.mono]).ok_or_else(|| {
            Error::CheckFailed(format!("image of subunit mono {} is not a subunit", su.mono))
        })?;
        phi.push(k);
    }
    let mut seen = phi.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != phi.len() || phi[sl_c.top()] != sl_d.top() {
        return Err(Error::CheckFailed("subunit classes do not biject across the round trip".into()));
    }
    for i in 0..sl_c.len() {
        for j in 0..sl_c.len() {
            if phi[sl_c.meet(i, j)] != sl_d.meet(phi[i], phi[j]) {
                return Err(Error::CheckFailed(format!(
                    "subunit meet of classes {i} and {j} is not preserved"
                )));
            }
        }
    }
    verified.push("subunits");
    Ok(verified)
}

/// Certifies that a firm base is isomorphic, as a braided monoidal category
/// with its subunit semilattice, to the total morphisms of its own pair
/// construction. The forward functor embeds a base morphism as an
/// everywhere-defined pair; the backward functor strips the unit tensor
/// factor back off.
pub fn roundtrip_ts(c: &FinCategory, m: &MonoidalData) -> Result<IsoCertificate, Error> {
    let s = build_s_construction(c, m)?;
    let tot = total_subcategory(&s.cat, &s.restriction, Some(&s.monoidal))?;
    let mt = tot
        .monoidal
        .clone()
        .ok_or_else(|| Error::CheckFailed("total morphisms lost the tensor structure".into()))?;

    let mut fwd_mor = Vec::with_capacity(c.n_morphisms());
    for f in c.morphisms() {
        let pair = s.embed_total(f)?;
        fwd_mor.push(
            tot.from_ambient[pair].expect("embedded pair is everywhere defined"),
        );
    }
    let forward = Functor { obj_map: c.objects().collect(), mor_map: fwd_mor };

    let med_top = classify_subunit(c, &s.subunits, c.identity(m.unit()))
        .expect("the unit is its own subunit")
        .1;
    let mut bwd_mor = Vec::with_capacity(tot.cat.n_morphisms());
    for ft in tot.cat.morphisms() {
        let p = &s.pairs[tot.embed.mor_map[ft]];
        if p.subunit != s.top {
            return Err(Error::CheckFailed(format!(
                "total pair {ft} does not carry the unit subunit"
            )));
        }
        let rho_inv = c.is_iso(m.rho(p.src)).ok_or_else(|| {
            Error::CheckFailed(format!("unitor of object {} is not invertible", p.src))
        })?;
        let lift = comp(c, m.tensor_mor(c.identity(p.src), med_top), rho_inv);
        bwd_mor.push(comp(c, p.under, lift));
    }
    let backward = Functor { obj_map: tot.cat.objects().collect(), mor_map: bwd_mor };

    let verified = certify_monoidal_iso(c, m, &tot.cat, &mt, &forward, &backward)?;
    Ok(IsoCertificate { forward, backward, verified })
}

/// Certifies the main round trip: a category passing the `TR` suite is
/// isomorphic to the pair construction over its own total morphisms, with
/// restriction preserved in both directions. The forward functor sends `f`
/// to the pair of its least subunit and total part; the backward functor
/// composes an underlying total morphism with the subunit's section.
pub fn roundtrip_st(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> Result<IsoCertificate, Error> {
    let tr = check_tr_axioms(c, m, r)?;
    if !tr.passed() {
        return Err(Error::PrerequisiteFailed("TR"));
    }
    let tot = total_subcategory(c, r, Some(m))?;
    let mt = tot
        .monoidal
        .clone()
        .ok_or_else(|| Error::CheckFailed("total morphisms lost the tensor structure".into()))?;
    let st = build_s_construction(&tot.cat, &mt)?;
    let subs = enumerate_subunits(c, m);

    let mut fwd_mor = Vec::with_capacity(c.n_morphisms());
    for f in c.morphisms() {
        let w = tr_witnesses(c, m, r, f)?;
        let mono_t = tot.from_ambient[w.s_f.mono].ok_or_else(|| {
            Error::CheckFailed(format!("subunit mono {} is not total", w.s_f.mono))
        })?;
        let part_t = tot.from_ambient[w.total_part].expect("total part is total");
        fwd_mor.push(st.find_raw(mono_t, c.dom(f), part_t)?);
    }
    let forward = Functor { obj_map: c.objects().collect(), mor_map: fwd_mor };

    let mut section = Vec::with_capacity(st.subunits.len());
    for su_t in &st.subunits {
        let mono_amb = tot.embed.mor_map[su_t.mono];
        section.push(subunit_section(c, m, r, &subs, mono_amb, su_t.domain)?);
    }
    let mut bwd_mor = Vec::with_capacity(st.cat.n_morphisms());
    for g in st.cat.morphisms() {
        let p = &st.pairs[g];
        let under_amb = tot.embed.mor_map[p.under];
        let rho_inv = c.is_iso(m.rho(p.src)).ok_or_else(|| {
            Error::CheckFailed(format!("unitor of object {} is not invertible", p.src))
        })?;
        let lift = comp(c, m.tensor_mor(c.identity(p.src), section[p.subunit]), rho_inv);
        bwd_mor.push(comp(c, under_amb, lift));
    }
    let backward = Functor { obj_map: st.cat.objects().collect(), mor_map: bwd_mor };

    let mut verified = certify_monoidal_iso(c, m, &st.cat, &st.monoidal, &forward, &backward)?;
    for f in c.morphisms() {
        if forward.mor_map[r.bar(f)] != st.restriction.bar(forward.mor_map[f]) {
            return Err(Error::CheckFailed(format!(
                "round trip does not preserve the restriction of morphism {f}"
            )));
        }
    }
    for g in st.cat.morphisms() {
        if backward.mor_map[st.restriction.bar(g)] != r.bar(backward.mor_map[g]) {
            return Err(Error::CheckFailed(format!(
                "round trip back does not preserve the restriction of pair {g}"
            )));
        }
    }
    verified.push("restriction");
    Ok(IsoCertificate { forward, backward, verified })
}

/// Lifts a strict monoidal, subunit-preserving functor between bases to the
/// pair constructions: `[s, f]` maps to the canonical pair of the images.
/// The input functor and the induced functor are both law-checked.
pub fn s_on_functor(
    sc: &SCategory,
    sd: &SCategory,
    fun: &Functor,
) -> Result<Functor, Error> {
    let c = &sc.base;
    let d = &sd.base;
    if !check_functor_laws(c, d, fun).passed() {
        return Err(Error::CheckFailed("functor laws fail on the base".into()));
    }
    let mc = &sc.base_monoidal;
    let md = &sd.base_monoidal;
    if fun.obj_map[mc.unit()] != md.unit() {
        return Err(Error::CheckFailed("functor does not preserve the unit".into()));
    }
    for a in c.objects() {
        for b in c.objects() {
            if fun.obj_map[mc.tensor_obj(a, b)] != md.tensor_obj(fun.obj_map[a], fun.obj_map[b]) {
                return Err(Error::CheckFailed(format!(
                    "functor does not preserve the tensor of objects {a} and {b}"
                )));
            }
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if fun.mor_map[mc.tensor_mor(f, g)] != md.tensor_mor(fun.mor_map[f], fun.mor_map[g]) {
                return Err(Error::CheckFailed(format!(
                    "functor does not preserve the tensor of morphisms {f} and {g}"
                )));
            }
        }
    }
    for su in &sc.subunits {
        if classify_subunit(d, &sd.subunits, fun.mor_map[su.mono]).is_none() {
            return Err(Error::CheckFailed(format!(
                "image of subunit mono {} is not a subunit",
                su.mono
            )));
        }
    }
    let mut mor_map = Vec::with_capacity(sc.pairs.len());
    for p in &sc.pairs {
        mor_map.push(sd.find_raw(
            fun.mor_map[sc.subunits[p.subunit].mono],
            fun.obj_map[p.src],
            fun.mor_map[p.under],
        )?);
    }
    let induced = Functor { obj_map: fun.obj_map.clone(), mor_map };
    if !check_functor_laws(&sc.cat, &sd.cat, &induced).passed() {
        return Err(Error::CheckFailed("induced pair functor fails functor laws".into()));
    }
    Ok(induced)
}

/// Restricts a restriction functor between ambient categories to their total
/// morphisms. The input functor is law-checked and checked to preserve the
/// restriction; the induced functor is law-checked.
pub fn t_on_functor(
    x: &CategoryData,
    y: &CategoryData,
    tx: &TotalSubcategory,
    ty: &TotalSubcategory,
    fun: &Functor,
) -> Result<Functor, Error> {
    let rx = x.restriction.as_ref().ok_or(Error::PrerequisiteFailed("R"))?;
    let ry = y.restriction.as_ref().ok_or(Error::PrerequisiteFailed("R"))?;
    if !check_functor_laws(&x.cat, &y.cat, fun).passed() {
        return Err(Error::CheckFailed("functor laws fail on the ambient categories".into()));
    }
    for f in x.cat.morphisms() {
        if fun.mor_map[rx.bar(f)] != ry.bar(fun.mor_map[f]) {
            return Err(Error::CheckFailed(format!(
                "functor does not preserve the restriction of morphism {f}"
            )));
        }
    }
    let mut mor_map = Vec::with_capacity(tx.cat.n_morphisms());
    for ft in tx.cat.morphisms() {
        let image = fun.mor_map[tx.embed.mor_map[ft]];
        mor_map.push(ty.from_ambient[image].ok_or_else(|| {
            Error::CheckFailed(format!("image of total morphism {ft} is not total"))
        })?);
    }
    let induced = Functor { obj_map: fun.obj_map.clone(), mor_map };
    if !check_functor_laws(&tx.cat, &ty.cat, &induced).passed() {
        return Err(Error::CheckFailed("induced total functor fails functor laws".into()));
    }
    Ok(induced)
}
