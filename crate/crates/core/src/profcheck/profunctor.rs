//! Finite profunctors `C^op x C -> Set`, their coend tensor and the
//! involution induced by a dagger.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::category::{FinDagCat, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfError {
    #[error("action of `{mor}` on class {class} is not well defined")]
    IllDefinedAction { mor: String, class: String },
    #[error("the base category has no dagger")]
    NoDagger,
    #[error("{0}")]
    Table(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub label: String,
    pub dom: usize,
    pub cod: usize,
}

/// `pre[f][a] = M(f, id)(a)` (precompose by `f`), `post[a][g] = M(id, g)(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinProfunctor {
    pub elems: Vec<Elem>,
    pre: Vec<Vec<Option<usize>>>,
    post: Vec<Vec<Option<usize>>>,
}

impl FinProfunctor {
    /// Builds the tables from the two actions, checking their typing.
    pub fn from_actions(
        c: &FinDagCat,
        elems: Vec<Elem>,
        pre: impl Fn(usize, usize) -> usize,
        post: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ProfError> {
        let n = c.mor_count();
        let mut pre_t = vec![vec![None; elems.len()]; n];
        let mut post_t = vec![vec![None; n]; elems.len()];
        for (a, e) in elems.iter().enumerate() {
            for f in 0..n {
                if c.cod(f) == e.dom {
                    let b = pre(f, a);
                    if elems[b].dom != c.dom(f) || elems[b].cod != e.cod {
                        return Err(ProfError::Table(format!(
                            "{};{} lands in the wrong carrier",
                            c.name(f),
                            e.label
                        )));
                    }
                    pre_t[f][a] = Some(b);
                }
                if c.dom(f) == e.cod {
                    let b = post(a, f);
                    if elems[b].dom != e.dom || elems[b].cod != c.cod(f) {
                        return Err(ProfError::Table(format!(
                            "{};{} lands in the wrong carrier",
                            e.label,
                            c.name(f)
                        )));
                    }
                    post_t[a][f] = Some(b);
                }
            }
        }
        Ok(FinProfunctor {
            elems,
            pre: pre_t,
            post: post_t,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elems[a].label
    }

    /// `f;a` for `f: X' -> X`, `a` in `M(X, Y)`.
    pub fn pre(&self, f: usize, a: usize) -> usize {
        self.pre[f][a].expect("composable")
    }

    /// `a;g` for `a` in `M(X, Y)`, `g: Y -> Y'`.
    pub fn post(&self, a: usize, g: usize) -> usize {
        self.post[a][g].expect("composable")
    }

    /// `M(f, g)(a) = f;a;g`.
    pub fn act(&self, f: usize, a: usize, g: usize) -> usize {
        self.post(self.pre(f, a), g)
    }

    pub fn carrier(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.elems[a].dom == x && self.elems[a].cod == y)
            .collect()
    }

    /// Elements whose first index is `x`.
    pub fn from_object(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.elems[a].dom == x).collect()
    }

    /// Carrier sizes indexed by object pair.
    pub fn sizes(&self, objects: usize) -> Vec<Vec<usize>> {
        let mut s = vec![vec![0; objects]; objects];
        for e in &self.elems {
            s[e.dom][e.cod] += 1;
        }
        s
    }
}

/// `hom_C` with pre- and post-composition.
pub fn hom_profunctor(c: &FinDagCat) -> FinProfunctor {
    let elems = c
        .mors
        .iter()
        .map(|m| Elem {
            label: m.name.clone(),
            dom: m.dom,
            cod: m.cod,
        })
        .collect();
    FinProfunctor::from_actions(c, elems, |f, a| c.then(f, a), |a, g| c.then(a, g)).expect("hom is well typed")
}

/// Identity and composition laws for both actions, and their interchange.
pub fn check_profunctor(c: &FinDagCat, m: &FinProfunctor) -> Verdict {
    let n = c.mor_count();
    for a in 0..m.len() {
        let e = &m.elems[a];
        if m.pre(c.id(e.dom), a) != a || m.post(a, c.id(e.cod)) != a {
            return Err(format!("identity does not act trivially on {}", e.label));
        }
        for f in (0..n).filter(|&f| c.cod(f) == e.dom) {
            for f2 in (0..n).filter(|&f2| c.cod(f2) == c.dom(f)) {
                if m.pre(f2, m.pre(f, a)) != m.pre(c.then(f2, f), a) {
                    return Err(format!(
                        "{};({};{}) is not ({};{});{}",
                        c.name(f2),
                        c.name(f),
                        e.label,
                        c.name(f2),
                        c.name(f),
                        e.label
                    ));
                }
            }
            for g in (0..n).filter(|&g| c.dom(g) == e.cod) {
                if m.pre(f, m.post(a, g)) != m.post(m.pre(f, a), g) {
                    return Err(format!(
                        "actions of {} and {} on {} do not commute",
                        c.name(f),
                        c.name(g),
                        e.label
                    ));
                }
            }
        }
        for g in (0..n).filter(|&g| c.dom(g) == e.cod) {
            for g2 in (0..n).filter(|&g2| c.dom(g2) == c.cod(g)) {
                if m.post(m.post(a, g), g2) != m.post(a, c.then(g, g2)) {
                    return Err(format!(
                        "({};{});{} is not {};({};{})",
                        e.label,
                        c.name(g),
                        c.name(g2),
                        e.label,
                        c.name(g),
                        c.name(g2)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `F (x) G` as a quotient of composable pairs, with canonical representatives.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub prof: FinProfunctor,
    /// Composable pairs `(x, y)`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    class_of: Vec<usize>,
    /// Member pair indices of each class, smallest first.
    pub members: Vec<Vec<usize>>,
}

impl Tensor {
    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.class_of[self.pair_index[&(x, y)]]
    }

    pub fn rep(&self, class: usize) -> (usize, usize) {
        self.pairs[self.members[class][0]]
    }

    pub fn member_pairs(&self, class: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.members[class].iter().map(|&k| self.pairs[k])
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }
}

/// Coend tensor with merges applied in generation order.
pub fn prof_tensor(c: &FinDagCat, f: &FinProfunctor, g: &FinProfunctor) -> Result<Tensor, ProfError> {
    tensor_with_order(c, f, g, None)
}

/// Coend tensor with the merge order shuffled by `seed`.
pub fn prof_tensor_shuffled(
    c: &FinDagCat,
    f: &FinProfunctor,
    g: &FinProfunctor,
    seed: u64,
) -> Result<Tensor, ProfError> {
    tensor_with_order(c, f, g, Some(seed))
}

fn tensor_with_order(
    c: &FinDagCat,
    fp: &FinProfunctor,
    gp: &FinProfunctor,
    seed: Option<u64>,
) -> Result<Tensor, ProfError> {
    let mut pairs = Vec::new();
    for x in 0..fp.len() {
        for y in 0..gp.len() {
            if fp.elems[x].cod == gp.elems[y].dom {
                pairs.push((x, y));
            }
        }
    }
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    // (x;f, y) ~ (x, f;y) for x in F(X,Y), f: Y -> Y', y in G(Y',Z).
    let mut merges = Vec::new();
    for x in 0..fp.len() {
        for f in (0..c.mor_count()).filter(|&f| c.dom(f) == fp.elems[x].cod) {
            for y in gp.from_object(c.cod(f)) {
                let l = pair_index[&(fp.post(x, f), y)];
                let r = pair_index[&(x, gp.pre(f, y))];
                merges.push((l, r));
            }
        }
    }
    if let Some(s) = seed {
        merges.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let mut uf = UnionFind::<usize>::new(pairs.len());
    for (l, r) in merges {
        uf.union(l, r);
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..pairs.len() {
        by_root.entry(uf.find(k)).or_default().push(k);
    }
    let mut members: Vec<Vec<usize>> = by_root.into_values().collect();
    members.sort_by_key(|m| m[0]);
    let mut class_of = vec![0; pairs.len()];
    for (cl, ms) in members.iter().enumerate() {
        for &k in ms {
            class_of[k] = cl;
        }
    }
    let elems: Vec<Elem> = members
        .iter()
        .map(|ms| {
            let (x, y) = pairs[ms[0]];
            Elem {
                label: format!("[{}|{}]", fp.label(x), gp.label(y)),
                dom: fp.elems[x].dom,
                cod: gp.elems[y].cod,
            }
        })
        .collect();
    let n = c.mor_count();
    let mut pre = vec![vec![None; elems.len()]; n];
    let mut post = vec![vec![None; n]; elems.len()];
    for (cl, ms) in members.iter().enumerate() {
        for h in 0..n {
            if c.cod(h) == elems[cl].dom {
                let images: Vec<usize> = ms
                    .iter()
                    .map(|&k| {
                        let (x, y) = pairs[k];
                        class_of[pair_index[&(fp.pre(h, x), y)]]
                    })
                    .collect();
                if images.iter().any(|&i| i != images[0]) {
                    return Err(ProfError::IllDefinedAction {
                        mor: c.name(h).into(),
                        class: elems[cl].label.clone(),
                    });
                }
                pre[h][cl] = Some(images[0]);
            }
            if c.dom(h) == elems[cl].cod {
                let images: Vec<usize> = ms
                    .iter()
                    .map(|&k| {
                        let (x, y) = pairs[k];
                        class_of[pair_index[&(x, gp.post(y, h))]]
                    })
                    .collect();
                if images.iter().any(|&i| i != images[0]) {
                    return Err(ProfError::IllDefinedAction {
                        mor: c.name(h).into(),
                        class: elems[cl].label.clone(),
                    });
                }
                post[cl][h] = Some(images[0]);
            }
        }
    }
    Ok(Tensor {
        prof: FinProfunctor { elems, pre, post },
        pairs,
        pair_index,
        class_of,
        members,
    })
}

/// `F̄(X,Y) = F(Y,X)`, `F̄(f,g) = F(g†,f†)`; element ids are kept.
pub fn involution_prof(c: &FinDagCat, m: &FinProfunctor) -> Result<FinProfunctor, ProfError> {
    if !c.has_dagger() {
        return Err(ProfError::NoDagger);
    }
    let elems = m
        .elems
        .iter()
        .map(|e| Elem {
            label: e.label.clone(),
            dom: e.cod,
            cod: e.dom,
        })
        .collect();
    FinProfunctor::from_actions(c, elems, |f, a| m.post(a, c.dag(f)), |a, g| m.pre(c.dag(g), a))
}

/// A map between tensor classes induced by `f` on member pairs, checked to
/// be independent of the member chosen.
pub fn induced(
    src: &Tensor,
    dst: &Tensor,
    f: impl Fn(usize, usize) -> Vec<(usize, usize)>,
) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(src.class_count());
    for cl in 0..src.class_count() {
        let mut image = None;
        for (x, y) in src.member_pairs(cl) {
            for (x2, y2) in f(x, y) {
                let k = *dst
                    .pair_index
                    .get(&(x2, y2))
                    .ok_or_else(|| format!("image of {} is not a composable pair", src.prof.label(cl)))?;
                let d = dst.class_of[k];
                match image {
                    None => image = Some(d),
                    Some(i) if i != d => return Err(format!("class {} has two images", src.prof.label(cl))),
                    Some(_) => {}
                }
            }
        }
        out.push(image.ok_or_else(|| format!("class {} has no image", src.prof.label(cl)))?);
    }
    Ok(out)
}

pub fn is_bijection(map: &[usize], target: usize) -> bool {
    let mut seen = vec![false; target];
    map.len() == target
        && map.iter().all(|&i| {
            let fresh = !seen[i];
            seen[i] = true;
            fresh
        })
}

/// `chi: F̄ (x) Ḡ -> conj(G (x) F)`, `[x|y] |-> [y|x]`, as a class map
/// into `gf = G (x) F`.
pub fn chi(fbar_gbar: &Tensor, gf: &Tensor) -> Result<Vec<usize>, String> {
    let m = induced(fbar_gbar, gf, |x, y| vec![(y, x)])?;
    if is_bijection(&m, gf.class_count()) {
        Ok(m)
    } else {
        Err("chi is not a bijection".into())
    }
}

/// The unitor `hom (x) M -> M`, `[f|a] |-> f;a`, checked bijective.
pub fn left_unitor(m: &FinProfunctor, t: &Tensor) -> Verdict {
    let mut map = Vec::new();
    for cl in 0..t.class_count() {
        let imgs: Vec<usize> = t.member_pairs(cl).map(|(f, a)| m.pre(f, a)).collect();
        if imgs.iter().any(|&i| i != imgs[0]) {
            return Err(format!("class {} has two images", t.prof.label(cl)));
        }
        map.push(imgs[0]);
    }
    if is_bijection(&map, m.len()) {
        Ok(())
    } else {
        Err("hom (x) M -> M is not a bijection".into())
    }
}

/// The unitor `M (x) hom -> M`, `[a|g] |-> a;g`, checked bijective.
pub fn right_unitor(m: &FinProfunctor, t: &Tensor) -> Verdict {
    let mut map = Vec::new();
    for cl in 0..t.class_count() {
        let imgs: Vec<usize> = t.member_pairs(cl).map(|(a, g)| m.post(a, g)).collect();
        if imgs.iter().any(|&i| i != imgs[0]) {
            return Err(format!("class {} has two images", t.prof.label(cl)));
        }
        map.push(imgs[0]);
    }
    if is_bijection(&map, m.len()) {
        Ok(())
    } else {
        Err("M (x) hom -> M is not a bijection".into())
    }
}

fn compose_maps(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

/// Both coherence squares for `chi` on `F`, `G`, `H`.
pub fn check_chi_coherence(c: &FinDagCat, f: &FinProfunctor, g: &FinProfunctor, h: &FinProfunctor) -> Verdict {
    let e = |r: Result<Tensor, ProfError>| r.map_err(|e| e.to_string());
    let fb = involution_prof(c, f).map_err(|e| e.to_string())?;
    let gb = involution_prof(c, g).map_err(|e| e.to_string())?;
    let hb = involution_prof(c, h).map_err(|e| e.to_string())?;

    // Second square: conj(chi_{G,F}) . chi_{F̄,Ḡ} = id on F (x) G.
    let fg = e(prof_tensor(c, f, g))?;
    let gbfb = e(prof_tensor(c, &gb, &fb))?;
    let there = chi(&fg, &gbfb)?;
    let back = chi(&gbfb, &fg)?;
    if compose_maps(&there, &back).iter().enumerate().any(|(k, &v)| k != v) {
        return Err("chi followed by conj(chi) is not the identity".into());
    }

    // Hexagon, both paths from F̄ (x) (Ḡ (x) H̄) to (H (x) G) (x) F.
    let gbhb = e(prof_tensor(c, &gb, &hb))?;
    let start = e(prof_tensor(c, &fb, &gbhb.prof))?;
    let hg = e(prof_tensor(c, h, g))?;
    let hg_bar = involution_prof(c, &hg.prof).map_err(|e| e.to_string())?;
    let mid1 = e(prof_tensor(c, &fb, &hg_bar))?;
    let end = e(prof_tensor(c, &hg.prof, f))?;
    let chi_gh = chi(&gbhb, &hg)?;
    let step1 = induced(&start, &mid1, |x, w| vec![(x, chi_gh[w])])?;
    let step2 = chi(&mid1, &end)?;
    let path_a = compose_maps(&step1, &step2);

    let fbgb = e(prof_tensor(c, &fb, &gb))?;
    let mid2 = e(prof_tensor(c, &fbgb.prof, &hb))?;
    let assoc = induced(&start, &mid2, |x, w| {
        gbhb.member_pairs(w).map(|(y, z)| (fbgb.class_of(x, y), z)).collect()
    })?;
    let gf = e(prof_tensor(c, g, f))?;
    let gf_bar = involution_prof(c, &gf.prof).map_err(|e| e.to_string())?;
    let mid3 = e(prof_tensor(c, &gf_bar, &hb))?;
    let chi_fg = chi(&fbgb, &gf)?;
    let step3 = induced(&mid2, &mid3, |u, z| vec![(chi_fg[u], z)])?;
    let h_gf = e(prof_tensor(c, h, &gf.prof))?;
    let step4 = chi(&mid3, &h_gf)?;
    let assoc_bar = induced(&h_gf, &end, |z, w| {
        gf.member_pairs(w).map(|(y, x)| (hg.class_of(z, y), x)).collect()
    })?;
    let edges = [
        (&step1, mid1.class_count()),
        (&assoc, mid2.class_count()),
        (&step3, mid3.class_count()),
        (&assoc_bar, end.class_count()),
    ];
    if edges.iter().any(|(m, n)| !is_bijection(m, *n)) {
        return Err("a hexagon edge is not a bijection".into());
    }
    let path_b = compose_maps(&compose_maps(&compose_maps(&assoc, &step3), &step4), &assoc_bar);
    if path_a != path_b {
        let k = path_a.iter().zip(&path_b).position(|(a, b)| a != b).unwrap_or(0);
        return Err(format!("hexagon paths differ on {}", start.prof.label(k)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::category::one_object;
    use super::*;

    fn z2() -> FinDagCat {
        one_object(&["e", "t"], 0, |a, b| a ^ b, Some(vec![0, 1])).unwrap()
    }

    fn s3() -> FinDagCat {
        super::super::fixture::s3_category()
    }

    #[test]
    fn hom_on_one_object_is_the_monoid() {
        let c = z2();
        let h = hom_profunctor(&c);
        assert_eq!(h.len(), 2);
        assert!(check_profunctor(&c, &h).is_ok());
    }

    #[test]
    fn hom_tensor_hom_matches_the_multiplication_table() {
        let c = s3();
        let h = hom_profunctor(&c);
        let t = prof_tensor(&c, &h, &h).unwrap();
        assert_eq!(t.class_count(), 6);
        for cl in 0..t.class_count() {
            let products: Vec<usize> = t.member_pairs(cl).map(|(a, b)| c.then(a, b)).collect();
            assert!(products.iter().all(|&p| p == products[0]));
        }
        assert!(check_profunctor(&c, &t.prof).is_ok());
    }

    #[test]
    fn tensor_with_a_singleton_profunctor_collapses() {
        let c = z2();
        let h = hom_profunctor(&c);
        let one = FinProfunctor::from_actions(
            &c,
            vec![Elem {
                label: "*".into(),
                dom: 0,
                cod: 0,
            }],
            |_, a| a,
            |a, _| a,
        )
        .unwrap();
        let t = prof_tensor(&c, &h, &one).unwrap();
        assert_eq!(t.class_count(), 1);
    }

    #[test]
    fn class_counts_ignore_merge_order() {
        let c = s3();
        let h = hom_profunctor(&c);
        let a = prof_tensor_shuffled(&c, &h, &h, 1).unwrap();
        let b = prof_tensor_shuffled(&c, &h, &h, 2).unwrap();
        assert_eq!(a.prof.sizes(1), b.prof.sizes(1));
        assert_eq!(a.members, b.members);
    }

    #[test]
    fn involution_swaps_indices_and_is_strict() {
        let c = s3();
        let h = hom_profunctor(&c);
        let hb = involution_prof(&c, &h).unwrap();
        assert!(check_profunctor(&c, &hb).is_ok());
        assert_eq!(involution_prof(&c, &hb).unwrap(), h);
    }

    #[test]
    fn involution_needs_a_dagger() {
        let c = one_object(&["1"], 0, |_, _| 0, None).unwrap();
        let h = hom_profunctor(&c);
        assert_eq!(involution_prof(&c, &h), Err(ProfError::NoDagger));
    }

    #[test]
    fn chi_is_coherent_on_s3() {
        let c = s3();
        let h = hom_profunctor(&c);
        assert!(check_chi_coherence(&c, &h, &h, &h).is_ok());
    }

    #[test]
    fn unitors_are_bijections() {
        let c = s3();
        let h = hom_profunctor(&c);
        assert!(left_unitor(&h, &prof_tensor(&c, &h, &h).unwrap()).is_ok());
        assert!(right_unitor(&h, &prof_tensor(&c, &h, &h).unwrap()).is_ok());
    }
}
