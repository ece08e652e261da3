use std::collections::BTreeSet;

use super::{
    build_m, build_n, build_psi, build_s, build_u, complement_violation, fixed_space, j0_f20, m_matrix, n_matrix,
    orbits_within, rho_u, USpace,
};
use crate::baseg::GroupG;
use crate::f2::{
    all_vectors, hom_space, module_diagnostics, submodule_scan, F2Mat, F2Vec, GroupTag, ModuleAction, QuadForm,
    Subspace,
};
use crate::loopcore::Certificate;
use crate::rng::SplitMix64;

fn hom_witness(homs: &[F2Mat]) -> (usize, bool) {
    (homs.len(), homs.len() == 1 && homs[0].is_invertible())
}

fn sorted_lengths(orbits: &[Vec<F2Vec>]) -> Vec<usize> {
    let mut v: Vec<usize> = orbits.iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

fn totally_singular_planes(form: QuadForm) -> usize {
    let dim = form.dim();
    let mut planes = BTreeSet::new();
    for a in all_vectors(dim).skip(1) {
        for b in all_vectors(dim).skip(1) {
            let s = Subspace::span(dim, [a, b]);
            if s.dim() == 2 {
                planes.insert(s);
            }
        }
    }
    planes.iter().filter(|s| form.is_totally_singular(s)).count()
}

/// All module facts about `M`, `N`, `U`, `S` and `ψ`.
pub fn certify_modules(g: &GroupG) -> Certificate {
    let mut cert = Certificate::new("modules");
    let outcome = (|| -> crate::Result<()> {
        let n = build_n(g)?;
        let m = build_m(g)?;
        let u = build_u(g, false)?;
        certify_mn(g, &n.act, &m.act, &u, &mut cert)?;
        certify_u(g, &n.act, &u, &mut cert)?;
        certify_s_psi(g, &u, &mut cert);
        Ok(())
    })();
    if let Err(e) = outcome {
        cert.record("construction", false, e.to_string());
    }
    cert
}

fn certify_mn(g: &GroupG, n: &ModuleAction, m: &ModuleAction, u: &USpace, cert: &mut Certificate) -> crate::Result<()> {
    let p = u.pairs;
    cert.expect_eq(
        "N: (singular, nonsingular) nonzero vectors",
        QuadForm::N.census(),
        (5, 10),
    );
    let nonzero: Vec<Vec<F2Vec>> = n.orbits().into_iter().filter(|o| o[0] != F2Vec::zero(4)).collect();
    cert.expect_eq(
        "N: S5-orbit lengths on nonzero vectors",
        sorted_lengths(&nonzero),
        vec![5, 10],
    );
    let invariant = all_vectors(4).all(|v| {
        n.gens()
            .iter()
            .all(|a| QuadForm::N.value(a.apply(v)) == QuadForm::N.value(v))
    });
    cert.record("N: Q is S5-invariant", invariant, "");
    cert.expect_eq("N: rank of the polar form", QuadForm::N.gram().rank(), 4);
    cert.expect_eq("N: totally singular planes", totally_singular_planes(QuadForm::N), 0);

    let three = p.three;
    cert.expect_eq("element of order 3 in S5", g.phi5(three).order(), 3);
    cert.expect_eq(
        "M: dim C_M(x) for x of order 3",
        fixed_space(&[m_matrix(g.phi6(three))]).dim(),
        0,
    );
    cert.expect_eq(
        "N: dim C_N(x) for x of order 3",
        fixed_space(&[n_matrix(g.phi5(three))]).dim(),
        2,
    );

    let dn = module_diagnostics(n, Some(&n_matrix(g.phi5(g.d_idx()))))?;
    let dm = module_diagnostics(m, None)?;
    cert.expect_eq(
        "N over S5: (irreducible, endo dim)",
        (dn.irreducible, dn.endo_dim),
        (true, 1),
    );
    cert.expect_eq(
        "M over S5: (irreducible, endo dim)",
        (dm.irreducible, dm.endo_dim),
        (true, 1),
    );
    cert.expect_eq("N over C4 is free", dn.free_over_c4, Some(true));

    let on = |tag, idx: [usize; 2], f: &dyn Fn(usize) -> F2Mat| ModuleAction::new(tag, idx.map(f).to_vec());
    let n_mat = |i| n_matrix(g.phi5(i));
    let m_mat = |i| m_matrix(g.phi6(i));
    let l = [p.l.0, p.l.1];
    let f20 = [p.f20.0, p.f20.1];
    let n_a5 = on(GroupTag::A5Pair, l, &n_mat)?;
    let m_a5 = on(GroupTag::A5Pair, l, &m_mat)?;
    let n_f20 = on(GroupTag::F20Pair, f20, &n_mat)?;
    let m_f20 = on(GroupTag::F20Pair, f20, &m_mat)?;
    let da = module_diagnostics(&n_a5, None)?;
    let dma = module_diagnostics(&m_a5, None)?;
    cert.expect_eq(
        "N over A5: (irreducible, endo dim)",
        (da.irreducible, da.endo_dim),
        (true, 1),
    );
    cert.expect_eq(
        "M over A5: (irreducible, endo dim)",
        (dma.irreducible, dma.endo_dim),
        (true, 2),
    );
    cert.expect_eq("dim Hom_A5(M, N)", hom_space(&m_a5, &n_a5)?.len(), 0);
    let df = module_diagnostics(&n_f20, None)?;
    let dmf = module_diagnostics(&m_f20, None)?;
    cert.expect_eq(
        "N over F20: (irreducible, endo dim)",
        (df.irreducible, df.endo_dim),
        (true, 1),
    );
    cert.expect_eq(
        "M over F20: (irreducible, endo dim)",
        (dmf.irreducible, dmf.endo_dim),
        (true, 1),
    );
    cert.expect_eq(
        "Hom_F20(M, N): (dim, invertible)",
        hom_witness(&hom_space(&m_f20, &n_f20)?),
        (1, true),
    );

    let j0 = on(GroupTag::S5Pair, [g.c_idx(), g.d_idx()], &|i| g.j0_matrix(i))?;
    cert.expect_eq(
        "Hom_S5(M, J0): (dim, invertible)",
        hom_witness(&hom_space(m, &j0)?),
        (1, true),
    );
    cert.expect_eq("J0 over F20 agrees with M", j0_f20(g, &p)?.gens() == m_f20.gens(), true);
    Ok(())
}

fn certify_u(g: &GroupG, n: &ModuleAction, u: &USpace, cert: &mut Certificate) -> crate::Result<()> {
    let mut rng = SplitMix64::new(1);
    let bad = (0..200)
        .map(|_| (rng.below(g.order()), rng.below(g.order())))
        .find(|&(a, b)| rho_u(g.phi5(a)).mul(&rho_u(g.phi5(b))) != rho_u(g.phi5(g.group.mul_idx(a, b))));
    cert.record(
        "rho_U is a homomorphism on 200 random pairs",
        bad.is_none(),
        format!("{bad:?}"),
    );
    let trivial_on_j = (0..g.order())
        .filter(|&i| g.in_j(i))
        .all(|i| rho_u(g.phi5(i)) == F2Mat::identity(8));
    cert.record("rho_U is trivial on J", trivial_on_j, "");
    cert.record("t tau = tau t", u.t.mul(&u.tau) == u.tau.mul(&u.t), "");

    let c5 = submodule_scan(&u.p_act, None)?;
    cert.expect_eq("U: proper nonzero C5-submodules", c5.len(), 17);
    let l_subs = submodule_scan(&u.l_act, Some(&u.p_act))?;
    let expected: BTreeSet<Subspace> = [u.u1.clone(), u.u2.clone(), u.w.clone()].into();
    cert.record(
        "U: L-submodules are exactly U1, U2, W",
        l_subs.iter().cloned().collect::<BTreeSet<_>>() == expected && l_subs.len() == 3,
        format!("{} found", l_subs.len()),
    );
    let mut lattice: Vec<Subspace> = l_subs.clone();
    lattice.push(Subspace::zero(8));
    lattice.push(Subspace::full(8));
    let closed = lattice.iter().all(|a| {
        lattice
            .iter()
            .all(|b| lattice.contains(&a.sum(b)) && lattice.contains(&a.intersection(b)))
    });
    cert.record("U: L-submodule lattice closed under sum and intersection", closed, "");
    let d_subs = submodule_scan(&u.d_act, Some(&u.p_act))?;
    cert.record(
        "U: W is the only D-submodule",
        d_subs == vec![u.w.clone()],
        format!("{} found", d_subs.len()),
    );
    let d1_subs = submodule_scan(&u.d1_act, Some(&u.p_act))?;
    cert.record(
        "U: D1-submodules are W, T1, T2",
        d1_subs.len() == 3 && [&u.w, &u.t1, &u.t2].iter().all(|s| d1_subs.contains(s)),
        format!("{} found", d1_subs.len()),
    );
    for (name, t) in [("T1", &u.t1), ("T2", &u.t2)] {
        cert.expect_eq(
            format!("D1-orbit lengths on {name}"),
            sorted_lengths(&orbits_within(&u.d1_act, t)),
            vec![1, 5, 10],
        );
        cert.record(format!("U = W + {name}"), t.is_complement_of(&u.w), "");
    }

    let d1_involutions: Vec<F2Mat> =
        g.h.elements()
            .iter()
            .map(|e| rho_u(g.phi5(g.index(e))))
            .filter(|m| m.order(2) == Some(2))
            .collect();
    let unfixed =
        u.t1.elements()
            .into_iter()
            .find(|&v| !d1_involutions.iter().any(|a| a.apply(v) == v));
    cert.record(
        "every vector of T1 is fixed by an involution of D1",
        unfixed.is_none(),
        format!("{unfixed:?}"),
    );

    cert.record(
        "W = C_U(tau)",
        u.w == Subspace::span(8, (0..4).map(|i| F2Vec::from_bits(8, 0x11 << i))),
        "",
    );
    cert.record("W is totally singular", QuadForm::U.is_totally_singular(&u.w), "");
    let l_u1 = u.l_act.restrict(&u.u1)?;
    let l_w = u.l_act.restrict(&u.w)?;
    let bracket = F2Mat::from_fn(4, 4, |i| {
        let v = F2Vec::unit(8, i);
        u.w.coords(v + u.tau.apply(v)).expect("u + u tau lies in W")
    });
    let intertwines = l_u1
        .gens()
        .iter()
        .zip(l_w.gens())
        .all(|(a, b)| a.mul(&bracket) == bracket.mul(b));
    cert.record(
        "u -> u + u tau is an L-isomorphism U1 -> W",
        intertwines && bracket.is_invertible(),
        "",
    );
    let w_s5 = u.d_act.restrict(&u.w)?;
    cert.expect_eq(
        "Hom_S5(N, W): (dim, invertible)",
        hom_witness(&hom_space(n, &w_s5)?),
        (1, true),
    );

    let ct = fixed_space(std::slice::from_ref(&u.t));
    cert.expect_eq("dim C_U(t)", ct.dim(), 4);
    cert.record(
        "C_U(t) + T1 = U and C_U(t) meets T1 trivially",
        ct.is_complement_of(&u.t1),
        "",
    );
    Ok(())
}

fn certify_s_psi(g: &GroupG, u: &USpace, cert: &mut Certificate) {
    let l_orbits: Vec<usize> = [&u.w, &u.u1, &u.u2]
        .iter()
        .flat_map(|s| {
            let mut v = sorted_lengths(&orbits_within(&u.l_act, s));
            v.dedup();
            v
        })
        .collect();
    cert.expect_eq(
        "L-orbit lengths on W, U1, U2",
        l_orbits,
        vec![1, 5, 10, 1, 5, 10, 1, 5, 10],
    );
    match build_s(u) {
        Ok(s) => {
            cert.expect_eq("|S|", s.len(), 16);
            let invariant = u.d_act.gens().iter().all(|m| {
                let image: BTreeSet<F2Vec> = s.iter().map(|&v| m.apply(v)).collect();
                image.into_iter().eq(s.iter().copied())
            });
            cert.record("S is invariant under the images of c and d", invariant, "");
            let bad = complement_violation(&s, &u.t1);
            cert.record(
                "x + y not in T1 for distinct x, y in S",
                bad.is_none(),
                format!("{bad:?}"),
            );
            let meet = s.iter().filter(|&&v| u.t1.contains(v)).count();
            cert.expect_eq("|S meets T1|", meet, 1);
        }
        Err(e) => {
            cert.record("S", false, e.to_string());
        }
    }
    match build_psi(g, u) {
        Ok(psi) => {
            cert.record(
                "psi: J0 -> T1 is an F20-isomorphism",
                psi.mat.is_invertible(),
                format!("{:?}", psi.mat),
            );
        }
        Err(e) => {
            cert.record("psi: J0 -> T1 is an F20-isomorphism", false, e.to_string());
        }
    }
}
