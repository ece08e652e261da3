use bolforge::baseg::GroupG;
use bolforge::f2::{hom_space, spin, F2Vec};
use bolforge::s5mod::{build_psi, build_s, build_u, certify_modules, complement_violation, Pairs};

fn basis_strings(s: &bolforge::f2::Subspace) -> Vec<String> {
    s.basis().iter().map(|v| v.to_string()).collect()
}

#[test]
fn module_certificate_passes() {
    let g = GroupG::build().unwrap();
    let cert = certify_modules(&g);
    println!("{cert}");
    assert!(cert.passed());
}

// Frozen from the first run: the generating pairs, the two D1-complements of W and psi.
#[test]
fn frozen_module_data() {
    let g = GroupG::build().unwrap();
    let pairs = Pairs::find(&g).unwrap();
    assert_eq!((pairs.l, pairs.f20, pairs.three), ((308, 2026), (512, 1623), 2026));
    let u = build_u(&g, false).unwrap();
    assert_eq!(basis_strings(&u.t1), ["10000011", "01001110", "00100111", "00011100"]);
    assert_eq!(basis_strings(&u.t2), ["10001011", "01001010", "00100101", "00011101"]);
    assert_eq!(format!("{:?}", build_psi(&g, &u).unwrap().mat), "[0100 0011 1111 0101]");
}

#[test]
fn both_complements_work() {
    let g = GroupG::build().unwrap();
    for swap in [false, true] {
        let u = build_u(&g, swap).unwrap();
        let s = build_s(&u).unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(complement_violation(&s, &u.t1), None);
        let psi = build_psi(&g, &u).unwrap();
        assert!(psi.mat.is_invertible());
    }
    let a = build_u(&g, false).unwrap();
    let b = build_u(&g, true).unwrap();
    assert_eq!((a.t1.clone(), a.t2.clone()), (b.t2.clone(), b.t1.clone()));
}

#[test]
fn spins_and_homs_satisfy_their_definitions() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let act = &u.d1_act;
    for bits in [1u64, 0x11, 0x83, 0xff] {
        let seed = F2Vec::from_bits(8, bits);
        let s = spin(&[seed], act);
        assert!(s.contains(seed));
        assert!(act.gens().iter().all(|m| s.is_invariant(m)));
        // minimal: the spin of any vector of s is inside s
        assert!(s.elements().iter().all(|&v| spin(&[v], act).is_subspace_of(&s)));
    }
    let t1 = act.restrict(&u.t1).unwrap();
    for h in hom_space(&t1, &t1).unwrap() {
        for (a, b) in t1.gens().iter().zip(t1.gens()) {
            assert_eq!(a.mul(&h), h.mul(b));
        }
    }
}
