use bolforge::baseg::{base_folder, GroupG};
use bolforge::bigg::{
    certify_family, counterexample, family_folder, fiber_map, involution_census, BigElement, BigGroup, Census, Variant,
};
use bolforge::loopcore::FolderGroup;
use bolforge::s5mod::{build_psi, build_u};

#[test]
fn census_matches_brute_force_at_k1() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let bg = BigGroup::new(&g, &u, 1).unwrap();
    let c = bg.c();
    let (mut outside, mut coset, mut cent) = (0u128, 0u128, 0u128);
    let qc = g.phi5(g.c_idx()).clone();
    for gi in 0..g.order() {
        for v in 0..256u64 {
            let x = BigElement::new(gi, v);
            if bg.mul(x, c) == bg.mul(c, x) {
                cent += 1;
            }
            if !g.in_j(gi) && bg.is_involution(x) {
                outside += 1;
                if *g.phi5(gi) == qc {
                    coset += 1;
                }
            }
        }
    }
    let census = involution_census(&bg);
    assert_eq!(
        (census.centralizer, census.outside_j, census.in_c_coset),
        (cent, outside, coset)
    );
    assert_eq!(
        census,
        Census {
            c_u_fixed: 16,
            centralizer: 768,
            class_size: 1280,
            outside_j: 1280,
            in_c_coset: 128
        }
    );
}

#[test]
fn census_at_k2() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let census = involution_census(&BigGroup::new(&g, &u, 2).unwrap());
    assert_eq!(
        census,
        Census {
            c_u_fixed: 256,
            centralizer: 12288,
            class_size: 20480,
            outside_j: 20480,
            in_c_coset: 2048
        }
    );
    assert!(census.single_class());
}

#[test]
fn family_folders_at_k1_for_both_complements() {
    let g = GroupG::build().unwrap();
    for swap in [false, true] {
        let u = build_u(&g, swap).unwrap();
        let bg = BigGroup::new(&g, &u, 1).unwrap();
        for v in [Variant::Split, Variant::Twisted] {
            let cert = certify_family(&bg, v, true);
            assert!(cert.passed(), "{cert}");
        }
    }
}

#[test]
fn family_folders_at_k2() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let bg = BigGroup::new(&g, &u, 2).unwrap();
    for v in [Variant::Split, Variant::Twisted] {
        let cert = certify_family(&bg, v, true);
        assert!(cert.passed(), "{cert}");
    }
}

#[test]
fn twisted_needs_psi() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let bg = BigGroup::new(&g, &u, 1).unwrap();
    assert!(family_folder(&bg, Variant::Twisted, None).is_err());
    assert!(family_folder(&bg, Variant::Twisted, Some(&build_psi(&g, &u).unwrap())).is_ok());
    assert_eq!("split".parse::<Variant>().unwrap(), Variant::Split);
    assert!("other".parse::<Variant>().is_err());
}

#[test]
fn fibers_have_sixteen_elements() {
    let g = GroupG::build().unwrap();
    let u = build_u(&g, false).unwrap();
    let bg = BigGroup::new(&g, &u, 1).unwrap();
    let ff = family_folder(&bg, Variant::Split, None).unwrap();
    let fiber = fiber_map(&ff, &base_folder(&g).unwrap()).unwrap();
    let mut sizes = vec![0; 96];
    for f in fiber {
        sizes[f as usize] += 1;
    }
    assert!(sizes.iter().all(|&s| s == 16));
}

#[test]
fn counterexample_fails_where_expected() {
    let g = GroupG::build().unwrap();
    let ce = counterexample(&g).unwrap();
    let cert = ce.certify();
    assert!(cert.passed(), "{cert}");
    assert!(!cert.check("(e) fails").unwrap().witness.is_empty());
}
