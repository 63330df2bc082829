//! Deterministic generators for the worked examples: finite semilattices and
//! the categories they induce, downset categories with explicit restriction,
//! skeletal finite sets with partial or total maps, and cyclic groups.
//!
//! Every generator is a pure function of its arguments, so repeated calls
//! produce identical tables; tests rely on that for golden comparisons.

use crate::fincat::{CategoryBuilder, FinCategory, LawReport, MorId, ObjId};
use crate::monoidal::{MonoidalData, Semilattice};
use crate::restriction::{CorestrictionData, RestrictionData};
use crate::{CategoryData, Error};

/// Largest semilattice the generators accept.
pub const MAX_SEMILATTICE: usize = 8;
/// Largest set size the skeletal map generators accept.
pub const MAX_SET: usize = 3;
/// Largest cyclic group order accepted.
pub const MAX_GROUP: usize = 6;

/// The `n`-element chain `0 < 1 < ... < n-1` with meet = minimum.
pub fn chain_semilattice(n: usize) -> Result<Semilattice, Error> {
    if n == 0 || n > MAX_SEMILATTICE {
        return Err(Error::SizeBudgetExceeded(format!(
            "chain length {n} is outside 1..={MAX_SEMILATTICE}"
        )));
    }
    let mut meet = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = a.min(b);
        }
    }
    Ok(Semilattice::new(n, meet, n - 1).expect("minimum is a lawful meet"))
}

/// The four-element diamond: bottom 0, incomparable 1 and 2, top 3.
pub fn diamond_semilattice() -> Semilattice {
    let meet = vec![
        0, 0, 0, 0, //
        0, 1, 0, 1, //
        0, 0, 2, 2, //
        0, 1, 2, 3,
    ];
    Semilattice::new(4, meet, 3).expect("diamond meet table is lawful")
}

/// The semilattice of order ideals (downward closed subsets) of the Boolean
/// poset `2^k`, ordered by inclusion, with meet = intersection.
///
/// Sizes grow fast: k = 0, 1, 2 give 2, 3, 6 ideals; k = 3 already needs 20,
/// beyond the generator cap.
pub fn boolean_ideal_semilattice(k: usize) -> Result<Semilattice, Error> {
    if k > 4 {
        return Err(Error::SizeBudgetExceeded(format!(
            "boolean poset 2^{k} is too large to enumerate ideals"
        )));
    }
    let bn = 1usize << k;
    let mut ideals: Vec<u32> = Vec::new();
    'next: for d in 0u32..(1u32 << bn) {
        for m in 0..bn {
            if d & (1 << m) == 0 {
                continue;
            }
            // every submask of a member must be a member
            let mut s = m;
            loop {
                if d & (1 << s) == 0 {
                    continue 'next;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & m;
            }
        }
        ideals.push(d);
    }
    let n = ideals.len();
    if n > MAX_SEMILATTICE {
        return Err(Error::SizeBudgetExceeded(format!(
            "2^{k} has {n} order ideals, cap is {MAX_SEMILATTICE}"
        )));
    }
    let pos = |d: u32| ideals.binary_search(&d).expect("intersection of ideals is an ideal");
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            meet[i * n + j] = pos(ideals[i] & ideals[j]);
        }
    }
    let top = pos((1u64 << bn) as u32 - 1);
    Semilattice::new(n, meet, top)
}

/// The posetal category of a semilattice: one morphism `x -> y` per `x <= y`,
/// with the meet as a strict tensor and the top as unit.
///
/// The result is strict, braided (trivially, as the tensor is idempotent and
/// commutative on the nose), and firm; its subunits are exactly the elements
/// of the semilattice.
pub fn from_semilattice(l: &Semilattice) -> CategoryData {
    let n = l.len();
    let mut b = CategoryBuilder::new(n);
    let mut idx = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) {
                idx[x * n + y] = Some(b.add_morphism(x, y));
            }
        }
    }
    let at = |x: usize, y: usize| idx[x * n + y].expect("pair is ordered");
    for x in 0..n {
        b.set_identity(x, at(x, x));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let p = pairs.clone();
    let cat = b
        .finish(|g, f| at(p[f].0, p[g].1))
        .expect("posetal composition is associative");
    let n_mor = cat.n_morphisms();
    let mut tensor_obj = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            tensor_obj[x * n + y] = l.meet(x, y);
        }
    }
    let mut tensor_mor = vec![0usize; n_mor * n_mor];
    for f in 0..n_mor {
        for g in 0..n_mor {
            tensor_mor[f * n_mor + g] = at(
                l.meet(pairs[f].0, pairs[g].0),
                l.meet(pairs[f].1, pairs[g].1),
            );
        }
    }
    let ids: Vec<MorId> = (0..n).map(|x| cat.identity(x)).collect();
    let mut alpha = vec![0usize; n * n * n];
    for a in 0..n {
        for b2 in 0..n {
            for c in 0..n {
                alpha[(a * n + b2) * n + c] = ids[l.meet(a, l.meet(b2, c))];
            }
        }
    }
    let mut sigma = vec![0usize; n * n];
    for a in 0..n {
        for b2 in 0..n {
            sigma[a * n + b2] = ids[l.meet(a, b2)];
        }
    }
    let monoidal = MonoidalData::new(
        &cat,
        l.top(),
        tensor_obj,
        tensor_mor,
        ids.clone(),
        ids,
        alpha,
        Some(sigma),
    )
    .expect("semilattice tensor tables are well typed");
    CategoryData {
        cat,
        monoidal: Some(monoidal),
        restriction: None,
        corestriction: None,
    }
}

/// The category of depressing downset maps over a semilattice: morphisms
/// `x -> y` are triples `(x, y, s)` with `x /\ s <= y`, recording a map
/// defined on the part of `x` below `s`.
///
/// Composition meets the definedness levels, `bar (x,y,s) = (x,x,s)`, and
/// `hat (x,y,s) = (y,y,s)`. This is the hand-computed model that the
/// subunit construction over [`from_semilattice`] must reproduce.
pub fn depressing_downsets(l: &Semilattice) -> CategoryData {
    let n = l.len();
    let mut b = CategoryBuilder::new(n);
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    let mut idx = vec![None; n * n * n];
    for x in 0..n {
        for y in 0..n {
            for s in 0..n {
                if l.leq(l.meet(x, s), y) {
                    let id = b.add_morphism(x, y);
                    idx[(x * n + y) * n + s] = Some(id);
                    triples.push((x, y, s));
                }
            }
        }
    }
    let at = |x: usize, y: usize, s: usize| idx[(x * n + y) * n + s].expect("triple is valid");
    for x in 0..n {
        b.set_identity(x, at(x, x, l.top()));
    }
    let t = triples.clone();
    let cat = b
        .finish(|g, f| {
            let (x, _, s) = t[f];
            let (_, z, s2) = t[g];
            at(x, z, l.meet(s, s2))
        })
        .expect("downset composition is associative");
    let n_mor = cat.n_morphisms();
    let mut tensor_obj = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            tensor_obj[x * n + y] = l.meet(x, y);
        }
    }
    let mut tensor_mor = vec![0usize; n_mor * n_mor];
    for f in 0..n_mor {
        for g in 0..n_mor {
            let (x, y, s) = triples[f];
            let (x2, y2, s2) = triples[g];
            tensor_mor[f * n_mor + g] =
                at(l.meet(x, x2), l.meet(y, y2), l.meet(s, s2));
        }
    }
    let ids: Vec<MorId> = (0..n).map(|x| cat.identity(x)).collect();
    let mut alpha = vec![0usize; n * n * n];
    for a in 0..n {
        for b2 in 0..n {
            for c in 0..n {
                alpha[(a * n + b2) * n + c] = ids[l.meet(a, l.meet(b2, c))];
            }
        }
    }
    let mut sigma = vec![0usize; n * n];
    for a in 0..n {
        for b2 in 0..n {
            sigma[a * n + b2] = ids[l.meet(a, b2)];
        }
    }
    let monoidal = MonoidalData::new(
        &cat,
        l.top(),
        tensor_obj,
        tensor_mor,
        ids.clone(),
        ids,
        alpha,
        Some(sigma),
    )
    .expect("downset tensor tables are well typed");
    let bar = (0..n_mor)
        .map(|f| {
            let (x, _, s) = triples[f];
            at(x, x, s)
        })
        .collect();
    let hat = (0..n_mor)
        .map(|f| {
            let (_, y, s) = triples[f];
            at(y, y, s)
        })
        .collect();
    let restriction = RestrictionData::new(&cat, bar).expect("bar is well typed");
    let corestriction = CorestrictionData::new(&cat, hat).expect("hat is well typed");
    CategoryData {
        cat,
        monoidal: Some(monoidal),
        restriction: Some(restriction),
        corestriction: Some(corestriction),
    }
}

fn pow(b: usize, e: usize) -> usize {
    (0..e).fold(1usize, |acc, _| acc * b)
}

/// Skeletal maps between the sets `{0, .., a-1}` for `a <= n_max`, encoded
/// as base-`b` (total) or base-`b+1` (partial, top digit = undefined) digit
/// strings.
struct SkeletalMaps {
    n_max: usize,
    partial: bool,
    off: Vec<usize>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    count: usize,
}

impl SkeletalMaps {
    fn new(n_max: usize, partial: bool) -> Self {
        let no = n_max + 1;
        let mut off = vec![0usize; no * no];
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        let mut count = 0usize;
        for a in 0..no {
            for b in 0..no {
                off[a * no + b] = count;
                let len = if partial { pow(b + 1, a) } else { pow(b, a) };
                for _ in 0..len {
                    dom.push(a);
                    cod.push(b);
                }
                count += len;
            }
        }
        Self {
            n_max,
            partial,
            off,
            dom,
            cod,
            count,
        }
    }

    fn base(&self, b: usize) -> usize {
        if self.partial {
            b + 1
        } else {
            b.max(1)
        }
    }

    fn decode(&self, f: MorId) -> (usize, usize, usize) {
        let (a, b) = (self.dom[f], self.cod[f]);
        (a, b, f - self.off[a * (self.n_max + 1) + b])
    }

    fn encode(&self, a: usize, b: usize, vals: impl Fn(usize) -> Option<usize>) -> MorId {
        let base = self.base(b);
        let mut code = 0usize;
        for i in (0..a).rev() {
            let digit = match vals(i) {
                Some(v) => v,
                None => {
                    debug_assert!(self.partial);
                    b
                }
            };
            code = code * base + digit;
        }
        self.off[a * (self.n_max + 1) + b] + code
    }

    fn value(&self, f: MorId, i: usize) -> Option<usize> {
        let (_, b, code) = self.decode(f);
        let base = self.base(b);
        let d = code / pow(base, i) % base;
        if self.partial && d == b {
            None
        } else {
            Some(d)
        }
    }

    fn identity(&self, a: usize) -> MorId {
        self.encode(a, a, Some)
    }

    fn build(&self) -> FinCategory {
        let no = self.n_max + 1;
        let identity = (0..no).map(|a| self.identity(a)).collect();
        let mut compose = vec![None; self.count * self.count];
        for g in 0..self.count {
            for f in 0..self.count {
                if self.cod[f] != self.dom[g] {
                    continue;
                }
                let (a, _, _) = self.decode(f);
                let (_, c, _) = self.decode(g);
                compose[g * self.count + f] = Some(self.encode(a, c, |i| {
                    self.value(f, i).and_then(|j| self.value(g, j))
                }));
            }
        }
        FinCategory::new(no, self.dom.clone(), self.cod.clone(), identity, compose)
            .expect("skeletal map tables are well formed")
    }

    /// Cartesian tensor tables; callable only when sizes multiply inside
    /// `0..=n_max`, i.e. `n_max <= 1`.
    fn monoidal(&self, cat: &FinCategory) -> MonoidalData {
        let no = self.n_max + 1;
        let mut tensor_obj = vec![0usize; no * no];
        for a in 0..no {
            for b in 0..no {
                tensor_obj[a * no + b] = a * b;
            }
        }
        let mut tensor_mor = vec![0usize; self.count * self.count];
        for f in 0..self.count {
            for g in 0..self.count {
                let (a, b, _) = self.decode(f);
                let (c, d, _) = self.decode(g);
                tensor_mor[f * self.count + g] = self.encode(a * c, b * d, |p| {
                    let (i, j) = (p / c.max(1), p % c.max(1));
                    match (self.value(f, i), self.value(g, j)) {
                        (Some(vi), Some(vj)) => Some(vi * d + vj),
                        _ => None,
                    }
                });
            }
        }
        let lambda: Vec<MorId> = (0..no).map(|a| cat.identity(a)).collect();
        let alpha = (0..no * no * no)
            .map(|i| {
                let c = i % no;
                let b = (i / no) % no;
                let a = i / (no * no);
                cat.identity(a * b * c)
            })
            .collect();
        let mut sigma = vec![0usize; no * no];
        for a in 0..no {
            for b in 0..no {
                sigma[a * no + b] = self.encode(a * b, b * a, |p| {
                    let (i, j) = (p / b.max(1), p % b.max(1));
                    Some(j * a + i)
                });
            }
        }
        // The unit is the one-point set when present; with only the empty
        // set around, that sole object is its own unit.
        let unit = 1.min(no - 1);
        MonoidalData::new(
            cat,
            unit,
            tensor_obj,
            tensor_mor,
            lambda.clone(),
            lambda,
            alpha,
            Some(sigma),
        )
        .expect("cartesian tensor tables are well typed")
    }
}

/// Skeletal finite sets `{0, .., n_max}` (objects are cardinalities) with all
/// partial functions; restriction is the domain of definition and
/// corestriction the image.
///
/// The cartesian tensor with the numeric pairing `(i, j) -> i * |B| + j`
/// makes every unitor and associator an identity, but a set of cardinalities
/// is closed under products only when it is contained in `{0, 1}`; for
/// larger `n_max` the category carries no tensor tables and `monoidal` is
/// `None`.
pub fn finpar(n_max: usize) -> Result<CategoryData, Error> {
    if n_max > MAX_SET {
        return Err(Error::SizeBudgetExceeded(format!(
            "partial maps on sets up to size {n_max} exceed the cap {MAX_SET}"
        )));
    }
    let maps = SkeletalMaps::new(n_max, true);
    let cat = maps.build();
    let bar = (0..maps.count)
        .map(|f| {
            let (a, _, _) = maps.decode(f);
            maps.encode(a, a, |i| maps.value(f, i).map(|_| i))
        })
        .collect();
    let hat = (0..maps.count)
        .map(|f| {
            let (a, b, _) = maps.decode(f);
            maps.encode(b, b, |j| {
                (0..a).any(|i| maps.value(f, i) == Some(j)).then_some(j)
            })
        })
        .collect();
    let restriction = RestrictionData::new(&cat, bar).expect("domains are well typed");
    let corestriction = CorestrictionData::new(&cat, hat).expect("images are well typed");
    let monoidal = (n_max <= 1).then(|| maps.monoidal(&cat));
    Ok(CategoryData {
        cat,
        monoidal,
        restriction: Some(restriction),
        corestriction: Some(corestriction),
    })
}

/// Skeletal finite sets `{0, .., n_max}` with all total functions, the wide
/// total subcategory of [`finpar`].
///
/// Tensor tables are present only for `n_max <= 1`, exactly as for
/// [`finpar`]; see there for why larger cardinality ranges cannot close
/// under the cartesian product.
pub fn finset_monoidal(n_max: usize) -> Result<CategoryData, Error> {
    if n_max > MAX_SET {
        return Err(Error::SizeBudgetExceeded(format!(
            "total maps on sets up to size {n_max} exceed the cap {MAX_SET}"
        )));
    }
    let maps = SkeletalMaps::new(n_max, false);
    let cat = maps.build();
    let monoidal = (n_max <= 1).then(|| maps.monoidal(&cat));
    Ok(CategoryData {
        cat,
        monoidal,
        restriction: None,
        corestriction: None,
    })
}

/// The cyclic group of order `n` as a one-object monoidal groupoid: the
/// tensor is the group operation, the braiding is the identity (the group is
/// abelian), and the restriction and corestriction are trivial.
pub fn cyclic_group_category(n: usize) -> Result<CategoryData, Error> {
    if n == 0 || n > MAX_GROUP {
        return Err(Error::SizeBudgetExceeded(format!(
            "cyclic group order {n} is outside 1..={MAX_GROUP}"
        )));
    }
    let mut compose = vec![None; n * n];
    for g in 0..n {
        for f in 0..n {
            compose[g * n + f] = Some((g + f) % n);
        }
    }
    let cat = FinCategory::new(1, vec![0; n], vec![0; n], vec![0], compose)
        .expect("group tables are well formed");
    let mut tensor_mor = vec![0usize; n * n];
    for f in 0..n {
        for g in 0..n {
            tensor_mor[f * n + g] = (f + g) % n;
        }
    }
    let monoidal = MonoidalData::new(
        &cat,
        0,
        vec![0],
        tensor_mor,
        vec![0],
        vec![0],
        vec![0],
        Some(vec![0]),
    )
    .expect("group tensor tables are well typed");
    let restriction = RestrictionData::new(&cat, vec![0; n]).expect("trivial bar");
    let corestriction = CorestrictionData::new(&cat, vec![0; n]).expect("trivial hat");
    Ok(CategoryData {
        cat,
        monoidal: Some(monoidal),
        restriction: Some(restriction),
        corestriction: Some(corestriction),
    })
}

/// Verifies the expected zero-morphism structure of the subunit construction
/// over skeletal finite sets: the empty-set object absorbs composites, is
/// terminal up to the extra zero endomorphism, and is not initial.
///
/// Violations are tagged `zero-absorb-left`, `zero-absorb-right`,
/// `zero-terminal`, and `zero-not-initial`; the morphism list holds the
/// offending morphism or object indices.
pub fn free_zero_check(n_max: usize) -> Result<LawReport, Error> {
    let data = finset_monoidal(n_max)?;
    let m = data
        .monoidal
        .as_ref()
        .ok_or(Error::PrerequisiteFailed(
            "a product-closed cardinality range (n_max <= 1)",
        ))?;
    let s = crate::sconstr::build_s_construction(&data.cat, m)?;
    let empty_sub = s
        .subunits
        .iter()
        .position(|su| su.domain == 0)
        .ok_or_else(|| Error::CheckFailed("no empty subunit found".into()))?;
    let zero = |x: ObjId, y: ObjId| -> MorId {
        let under = data.cat.hom(0, y)[0];
        s.find_pair(empty_sub, x, under)
            .expect("zero pair is a morphism of the construction")
    };
    let mut report = LawReport::new("free-zero");
    for f in s.cat.morphisms() {
        let (x, y) = (s.cat.dom(f), s.cat.cod(f));
        for w in s.cat.objects() {
            let lz = s.cat.compose(zero(y, w), f);
            if lz != Some(zero(x, w)) {
                report.push("zero-absorb-left", vec![f, w], lz, Some(zero(x, w)));
            }
            let rz = s.cat.compose(f, zero(w, x));
            if rz != Some(zero(w, y)) {
                report.push("zero-absorb-right", vec![f, w], rz, Some(zero(w, y)));
            }
        }
    }
    for x in s.cat.objects() {
        let into_empty = s.cat.hom(x, 0);
        let expected = if x == 0 {
            let mut v = vec![s.cat.identity(0), zero(0, 0)];
            v.sort_unstable();
            v
        } else {
            vec![zero(x, 0)]
        };
        if into_empty != expected {
            report.push("zero-terminal", vec![x], None, None);
        }
        if x != 0 && s.cat.hom(0, x).len() != 2 {
            report.push("zero-not-initial", vec![x], None, None);
        }
    }
    Ok(report.finish())
}

/// The base categories every subunit-construction suite runs over: strict
/// firm braided monoidal categories small enough for exhaustive checking.
pub fn bundled_bases() -> Vec<(&'static str, CategoryData)> {
    vec![
        ("chain1", from_semilattice(&chain_semilattice(1).unwrap())),
        ("chain2", from_semilattice(&chain_semilattice(2).unwrap())),
        ("chain3", from_semilattice(&chain_semilattice(3).unwrap())),
        ("diamond", from_semilattice(&diamond_semilattice())),
        (
            "bool_ideal1",
            from_semilattice(&boolean_ideal_semilattice(1).unwrap()),
        ),
        (
            "bool_ideal2",
            from_semilattice(&boolean_ideal_semilattice(2).unwrap()),
        ),
        ("finset1", finset_monoidal(1).unwrap()),
        ("cyclic2", cyclic_group_category(2).unwrap()),
        ("cyclic3", cyclic_group_category(3).unwrap()),
    ]
}
