use bolforge::baseg::{base_folder, certify_24, certify_star, uniqueness_probe, GroupG};
use bolforge::loopcore::{
    build_loop, check_bol, is_simple, mult_groups, table_checks, verify_folder, BolMode, IndexedGroup, MultKind,
};

#[test]
fn certificates_pass() {
    let g = GroupG::build().unwrap();
    for cert in [certify_star(&g), certify_24(&g), uniqueness_probe(&g)] {
        println!("{cert}");
        assert!(cert.passed());
    }
}

#[test]
fn base_loop() {
    let g = GroupG::build().unwrap();
    let b = base_folder(&g).unwrap();
    let ig = IndexedGroup::new(&g.group);
    let f = b.folder(&ig);
    let v = verify_folder(&f);
    println!("{v}");
    assert!(v.passed());
    let t = build_loop(&f).unwrap();
    assert_eq!(t.order(), 96);
    assert!(table_checks(&t).passed());
    assert!(check_bol(&t, BolMode::Exhaustive).passed());
    let s = is_simple(&t).unwrap();
    assert!(s.simple);
    assert_eq!(s.full_seeds, 95);
    assert_eq!(mult_groups(&t, MultKind::Right).order, 3840u32.into());
}
