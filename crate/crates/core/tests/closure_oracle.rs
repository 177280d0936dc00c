mod oracle;

use setoperads::closure::dims;
use setoperads::presentations::standard_catalog;

use oracle::oracle_dims;

#[test]
fn oracle_counts_free_magma() {
    assert_eq!(oracle_dims(&[], 4), vec![1, 2, 12, 120]);
    assert_eq!(oracle_dims(&["(ab)c = a(bc)"], 5), vec![1, 2, 6, 24, 120]);
}

#[test]
fn closure_matches_brute_force_to_arity_5() {
    for e in standard_catalog() {
        let rels = e.family.relations();
        let want = oracle_dims(&rels, 5);
        let got = dims(&e.congruence, 5, false).unwrap().entries;
        assert_eq!(got, want, "{}", e.name);
    }
}
