use std::sync::OnceLock;

use num_rational::BigRational;
use setoperads::closure::dims;
use setoperads::linear::{
    graded_dims, monomial_certificate, orbit_representatives, relation_space,
};
use setoperads::presentations::{extended_catalog, find_entry};
use setoperads::series::{
    elementary, gk_first_negative, gk_pair_check, GradedSeries, RationalSeries,
};

use setoperads_cli::cache::DimsCache;
use setoperads_cli::classify::{classify, ClassifyReport, Evidence, Verdict};
use setoperads_cli::context::Settings;
use setoperads_cli::reference::GRADED;
use setoperads_cli::render::json;

struct Runs {
    cold: ClassifyReport,
    warm: ClassifyReport,
}

fn run(settings: &Settings, threads: usize) -> ClassifyReport {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(|| classify(settings).unwrap())
}

/// One run on an empty cache with one thread, one on the filled cache with
/// three threads.
fn runs() -> &'static Runs {
    static RUNS: OnceLock<Runs> = OnceLock::new();
    RUNS.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let settings = Settings {
            cache: Some(DimsCache::new(dir.path())),
            ..Settings::default()
        };
        let cold = run(&settings, 1);
        let warm = run(&settings, 3);
        Runs { cold, warm }
    })
}

#[test]
fn warm_cache_and_more_threads_give_identical_json() {
    let r = runs();
    assert_eq!(json(&r.cold), json(&r.warm));
}

#[test]
fn verdicts_match_the_expected_classification() {
    let r = &runs().cold;
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert_eq!(r.koszul_classes.len(), 11);
    let verdict = |name: &str| r.records.iter().find(|x| x.name == name).unwrap().verdict;
    assert_eq!(verdict("Mag"), Verdict::KoszulByMonomialCertificate);
    assert_eq!(verdict("P2;10"), Verdict::KoszulByMonomialCertificate);
    assert_eq!(verdict("P3;3"), Verdict::NotKoszulByPairedGk);
    assert_eq!(verdict("P3;5"), Verdict::NotKoszulByGk);
}

fn rational(s: &str) -> BigRational {
    s.parse().unwrap()
}

#[test]
fn every_piece_of_evidence_reverifies() {
    let catalog = extended_catalog();
    for rec in &runs().cold.records {
        let e = find_entry(&catalog, &rec.name).unwrap();
        match &rec.evidence {
            Evidence::GkObstruction {
                degree,
                coefficient,
                graded: false,
                source,
                ..
            } => {
                let computed = dims(&e.congruence, source.computed_to, e.symmetrize)
                    .unwrap()
                    .entries;
                let input: Vec<u64> = source.dims.iter().map(|d| d[0]).collect();
                assert_eq!(input[..source.computed_to], computed[..], "{}", rec.name);
                let f = RationalSeries::from_dimension_list(&input);
                let o = gk_first_negative(&f, input.len()).unwrap().unwrap();
                assert_eq!(o.degree, *degree, "{}", rec.name);
                assert_eq!(o.negative_term, rational(&coefficient[0]), "{}", rec.name);
            }
            Evidence::GkObstruction {
                degree,
                coefficient,
                graded: true,
                source,
                ..
            } => {
                let r = relation_space(&e.congruence, e.symmetrize);
                let g = graded_dims(&r, source.computed_to).unwrap().graded.unwrap();
                let f = GradedSeries::from_graded_dims(&g);
                let series = match &source.tail_from {
                    None => f,
                    Some(tail) => {
                        let form = GRADED.iter().find(|x| tail.contains(x.series)).unwrap();
                        let full: GradedSeries = elementary(form.series, form.degree).unwrap();
                        assert_eq!(full.truncate(source.computed_to), f, "{}", rec.name);
                        full
                    }
                };
                let o = gk_first_negative(&series, series.order()).unwrap().unwrap();
                assert_eq!(o.degree, *degree, "{}", rec.name);
                let want: Vec<BigRational> = coefficient.iter().map(|c| rational(c)).collect();
                assert_eq!(o.negative_term.coeffs(), &want[..], "{}", rec.name);
            }
            Evidence::PairedGkDefect {
                degree,
                coefficient,
                ..
            } => {
                let d = dims(&e.congruence, rec.dims.len(), e.symmetrize)
                    .unwrap()
                    .entries;
                let f = RationalSeries::from_dimension_list(&d);
                let defect = gk_pair_check(&f, &f, d.len()).unwrap();
                assert_eq!(defect.coeff(*degree), rational(coefficient), "{}", rec.name);
                assert!((0..*degree).all(|k| defect.coeff(k) == BigRational::default()));
            }
            Evidence::MonomialCertificate { monomials } => {
                let cert = monomial_certificate(&relation_space(&e.congruence, e.symmetrize));
                assert!(cert.is_certified(), "{}", rec.name);
                let reps: Vec<String> = orbit_representatives(cert.monomials())
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                assert_eq!(&reps, monomials, "{}", rec.name);
            }
            Evidence::Citation { operad, .. } => {
                assert_eq!(rec.verdict, Verdict::KnownKoszulByCitation);
                assert!(!operad.is_empty());
            }
            Evidence::Nothing { .. } => panic!("{} is undecided", rec.name),
        }
    }
}
