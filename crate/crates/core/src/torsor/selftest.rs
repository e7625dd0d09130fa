use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    g_action, gh_action, gl2, h_canonicalize, h_orbit, proj_line, s4_elements, t3_from_basis, torsor_elements,
    wedge_action, ExtensionData, GhElement, Mat2, RankTwoModule, Sym3, TorsorElement, WedgeElement, ZnSquare,
};
use crate::check::Check;
use crate::error::Result;

type Perm4 = [usize; 4];

fn compose(a: &Perm4, b: &Perm4) -> Perm4 {
    [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
}

fn perm_order(p: &Perm4) -> usize {
    let id = [0, 1, 2, 3];
    let mut acc = *p;
    let mut k = 1;
    while acc != id {
        acc = compose(&acc, p);
        k += 1;
    }
    k
}

fn all_perm4() -> Vec<Perm4> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if BTreeSet::from(p).len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// For `Aut(X)` of a four-element set: `(|S1|, |S2|, d is a bijection and
/// every cyclic subgroup of order 4 acts simply transitively)`, where `S1`
/// is the set of cyclic subgroups of order 4, `S2` the fixed-point-free
/// involutions, and `d` sends a subgroup to its element of order 2.
pub fn cyclic_subgroup_bijection() -> (usize, usize, bool) {
    let perms = all_perm4();
    let mut s1: BTreeSet<Vec<Perm4>> = BTreeSet::new();
    for p in perms.iter().filter(|p| perm_order(p) == 4) {
        let mut sub = vec![[0, 1, 2, 3]];
        let mut acc = *p;
        while acc != [0, 1, 2, 3] {
            sub.push(acc);
            acc = compose(&acc, p);
        }
        sub.sort();
        s1.insert(sub);
    }
    let s2: BTreeSet<Perm4> =
        perms.iter().filter(|p| perm_order(p) == 2 && (0..4).all(|i| p[i] != i)).copied().collect();
    let mut ok = true;
    let mut image = BTreeSet::new();
    for c in &s1 {
        let orbit: BTreeSet<usize> = c.iter().map(|g| g[0]).collect();
        ok &= orbit.len() == 4;
        let inv: Vec<_> = c.iter().filter(|g| perm_order(g) == 2).collect();
        ok &= inv.len() == 1 && s2.contains(inv[0]);
        image.insert(*inv[0]);
    }
    ok &= image == s2;
    (s1.len(), s2.len(), ok)
}

/// The permutation of `T_n(V)` induced by a linear automorphism, as the
/// list of images of the ascending enumeration.
fn induced<M: RankTwoModule>(m: &M, ts: &[TorsorElement<M::Elem>], g: &Mat2) -> Result<Vec<TorsorElement<M::Elem>>> {
    ts.iter().map(|t| t.apply_linear(m, g)).collect()
}

fn bases<M: RankTwoModule>(m: &M) -> Vec<(M::Elem, M::Elem)> {
    let els = m.elements();
    let mut out = Vec::new();
    for p in &els {
        for q in &els {
            if m.is_basis(p, q) {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out
}

/// Exhaustive checks of the torsor combinatorics on `(Z/n)^2`, plus the
/// cyclic-subgroup bijection on a four-element set. `samples` sets how many
/// random `(basis, u)` pairs are tried for the basis-independence check when
/// `n = 4` (for `n = 3` it is exhaustive).
pub fn selftest(n: u32, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let v = ZnSquare::new(n)?;
    let mut out = Vec::new();
    let ts = torsor_elements(&v)?;
    out.push(Check::equal("torsor_size", n as usize, ts.len()));

    if n == 3 {
        out.push(Check::equal("projective_line_size", 4, proj_line(&v)?.len()));
        let mut ok = true;
        for (p, q) in bases(&v) {
            let f = v.phi(&p, &q)?;
            for i in 0..3 {
                let qi = v.add(&v.smul(i, &p), &q);
                let qi1 = v.add(&v.smul(i + 1, &p), &q);
                let lhs = TorsorElement::T3(t3_from_basis(&v, &p, &qi)?).apply_linear(&v, &f)?;
                ok &= lhs == TorsorElement::T3(t3_from_basis(&v, &p, &qi1)?);
            }
        }
        out.push(Check::new("phi_cycles_t3", ok, json!({ "bases": bases(&v).len() })));
    }

    if n == 4 {
        let s4 = s4_elements(&v)?;
        out.push(Check::equal("s4_size", 384, s4.len()));
        let orbit_sizes: BTreeSet<usize> = s4.iter().map(|t| h_orbit(&v, t).len()).collect();
        out.push(Check::equal("h_orbit_sizes", vec![96], orbit_sizes.into_iter().collect()));

        let s0 = &s4[0];
        let mut images = BTreeSet::new();
        for tau in Sym3::ALL {
            for mask in 0..64u8 {
                images.insert(g_action(&v, tau, mask, s0));
            }
        }
        let all: BTreeSet<_> = s4.iter().cloned().collect();
        out.push(Check::new(
            "g_simply_transitive_on_s4",
            images.len() == 384 && images == all,
            json!({ "distinct_images": images.len() }),
        ));

        let neg_ok = s4.iter().all(|t| g_action(&v, Sym3::ID, 0b11_1111, t) == (*t).map(|a| v.neg(&a)));
        out.push(Check::new("sum_of_involutions_is_negation", neg_ok, json!({})));

        let t4: Vec<_> = ts
            .iter()
            .map(|t| match t {
                TorsorElement::T4(x) => x.clone(),
                TorsorElement::T3(_) => unreachable!(),
            })
            .collect();
        let mut gh_ok = true;
        for t in &t4 {
            let imgs: BTreeSet<_> = GhElement::ALL.iter().map(|g| gh_action(&v, *g, t)).collect::<Result<_>>()?;
            gh_ok &= imgs.len() == 4;
            let [p, q, r] = *t.triple();
            let listed: BTreeSet<_> = [
                [p, q, r],
                [v.neg(&p), v.neg(&q), v.neg(&r)],
                [q, p, r],
                [v.neg(&q), v.neg(&p), v.neg(&r)],
            ]
            .iter()
            .map(|x| h_canonicalize(&v, x))
            .collect::<Result<_>>()?;
            gh_ok &= listed == imgs;
        }
        out.push(Check::new("gh_simply_transitive", gh_ok, json!({})));

        let mut phi_ok = true;
        for (p, q) in bases(&v) {
            let f2 = v.phi(&p, &q)?.pow(2);
            let base = h_canonicalize(&v, &[p, q, v.add(&p, &q)])?;
            let minus = gh_action(&v, GhElement { odd: false, negate: true }, &base)?;
            phi_ok &= base.apply_linear(&v, &f2)? == minus;
        }
        out.push(Check::new("phi_squared_is_minus_one", phi_ok, json!({})));

        let (s1, s2, bij) = cyclic_subgroup_bijection();
        out.push(Check::new("cyclic_subgroup_bijection", s1 == 3 && s2 == 3 && bij, json!({"s1": s1, "s2": s2})));
    }

    // phi_{uP,uQ} = phi_{P,Q}^{det u} as permutations of T_n(V).
    let gl = gl2(n);
    let all_bases = bases(&v);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if n == 3 {
        for i in 0..all_bases.len() {
            for j in 0..gl.len() {
                pairs.push((i, j));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            pairs.push((rng.gen_range(0..all_bases.len()), rng.gen_range(0..gl.len())));
        }
    }
    let mut det_ok = true;
    for &(i, j) in &pairs {
        let (p, q) = &all_bases[i];
        let u = &gl[j];
        let lhs = v.phi(&v.apply(u, p), &v.apply(u, q))?;
        let rhs = v.phi(p, q)?.pow(u.det() as u64);
        det_ok &= induced(&v, &ts, &lhs)? == induced(&v, &ts, &rhs)?;
    }
    out.push(Check::new("phi_basis_independence", det_ok, json!({ "pairs": pairs.len() })));

    // wedge^2 V acts simply transitively.
    let mut st_ok = true;
    for t in &ts {
        let orbit: BTreeSet<_> =
            (0..n).map(|c| wedge_action(&v, WedgeElement(c), t)).collect::<Result<_>>()?;
        st_ok &= orbit.len() == n as usize;
    }
    out.push(Check::new("wedge_simply_transitive", st_ok, json!({})));

    // Extensions: epsilon and tau.
    let exts = ExtensionData::all(n);
    let (mut eps_ok, mut tau_ok) = (true, true);
    for e in &exts {
        let line = e.line(&v);
        let torsor = e.torsor(&v);
        let mut eps_vals = BTreeSet::new();
        for l in &line {
            let vals: BTreeSet<_> =
                torsor.iter().map(|q| e.epsilon_with(&v, l, q)).collect::<Result<_>>()?;
            eps_ok &= vals.len() == 1;
            eps_vals.extend(vals);
        }
        eps_ok &= eps_vals.len() == n as usize;
        for q in &torsor {
            let by_gen: BTreeSet<_> =
                e.line_generators(&v).iter().map(|g| e.tau_with(&v, g, q)).collect::<Result<_>>()?;
            tau_ok &= by_gen.len() == 1;
        }
        let image: BTreeSet<_> = torsor.iter().map(|q| e.tau(&v, q)).collect::<Result<_>>()?;
        tau_ok &= image.len() == n as usize;
        for q in &torsor {
            let tq = e.tau(&v, q)?;
            for l in &line {
                let moved = e.tau(&v, &v.add(q, l))?;
                tau_ok &= moved == wedge_action(&v, e.epsilon(&v, l)?, &tq)?;
            }
        }
    }
    out.push(Check::new("epsilon_isomorphism", eps_ok, json!({ "extensions": exts.len() })));
    out.push(Check::new("tau_bijective_equivariant", tau_ok, json!({ "extensions": exts.len() })));
    Ok(out)
}
