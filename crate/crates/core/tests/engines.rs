use std::collections::BTreeSet;

use annseq_core::{
    annihilator, border, build_hankel, compute_d, is_annihilator, rank, staircase, AnnihilatorOptions,
    AnnihilatorResult, Engine, Exponent, Field, NSequence, PolySpan, Polynomial, PrimeField, Rationals, SequenceFamily,
    StageKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_staircase(rng: &mut ChaCha8Rng, n: usize, max_s: usize) -> BTreeSet<Exponent> {
    loop {
        let mut defining = Vec::new();
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = rng.gen_range(1..=6);
            defining.push(Exponent::new(e));
        }
        for _ in 0..rng.gen_range(0..=3) {
            defining.push(Exponent::new((0..n).map(|_| rng.gen_range(0..=4)).collect()));
        }
        let s = staircase(n, &defining).unwrap();
        if !s.is_empty() && s.len() <= max_s {
            return s;
        }
    }
}

fn random_family<F: Field>(rng: &mut ChaCha8Rng, field: &F, max_s: usize) -> SequenceFamily<F::Elem> {
    let n = rng.gen_range(1..=3);
    let members = if rng.gen_bool(0.25) { 2 } else { 1 };
    let zero_rate = [0.0, 0.3, 0.7][rng.gen_range(0..3)];
    let seqs = (0..members)
        .map(|_| {
            let s = random_staircase(rng, n, max_s);
            NSequence::from_fn(n, s, |_| {
                if rng.gen_bool(zero_rate) {
                    field.zero()
                } else {
                    field.from_i64(rng.gen_range(-9..=9))
                }
            })
            .unwrap()
        })
        .collect();
    SequenceFamily::new(seqs).unwrap()
}

fn check_family<F: Field>(field: &F, fam: &SequenceFamily<F::Elem>) {
    let opts = AnnihilatorOptions::default();
    let h = annihilator(field, fam, Engine::Hankel, opts).unwrap();
    let variants = [
        (Engine::Duality, opts),
        (Engine::Macaulay, opts),
        (Engine::Duality, AnnihilatorOptions { safe_mode: true, audit: true, ..opts }),
        (Engine::Duality, AnnihilatorOptions { audit: true, ..opts }),
        (Engine::Hankel, AnnihilatorOptions { extended_rows: true, ..opts }),
    ];
    for (engine, o) in variants {
        let other = annihilator(field, fam, engine, o).unwrap();
        assert_eq!(other.vs_basis, h.vs_basis, "{engine} {o:?} on {fam:?}");
        assert_eq!(other.border_gens, h.border_gens);
        assert_eq!(other.r, h.r);
    }
    assert_eq!(h.r, rank(field, &build_hankel(field, fam).matrix));
    for g in h.generators(field) {
        assert!(is_annihilator(field, &g, fam).unwrap());
    }
}

#[test]
fn engines_agree_over_prime_field() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let fam = random_family(&mut rng, &f, 60);
        check_family(&f, &fam);
    }
}

#[test]
fn engines_agree_over_rationals() {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..60 {
        let fam = random_family(&mut rng, &f, 30);
        check_family(&f, &fam);
    }
}

// Every annihilator supported in the staircase reduces to zero against the
// basis: adding it does not raise the dimension.
#[test]
fn basis_is_complete() {
    let f = PrimeField::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let fam = random_family(&mut rng, &f, 12);
        let res: AnnihilatorResult<u64> = annihilator(&f, &fam, Engine::Duality, Default::default()).unwrap();
        let mut span = PolySpan::new(fam.nvars());
        for p in &res.vs_basis {
            span.insert(&f, p).unwrap();
        }
        for _ in 0..200 {
            let p =
                Polynomial::from_terms(&f, fam.nvars(), res.support.iter().map(|e| (e.clone(), rng.gen_range(0..7))))
                    .unwrap();
            if is_annihilator(&f, &p, &fam).unwrap() {
                assert!(span.contains(&f, &p).unwrap());
            }
        }
    }
}

#[test]
fn border_monomials_annihilate() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let fam = random_family(&mut rng, &f, 40);
        for b in border(fam.nvars(), fam.union_support()) {
            assert!(is_annihilator(&f, &Polynomial::monomial(&f, b, 1), &fam).unwrap());
        }
    }
}

// Integration systems have n columns per element of the previous basis, and
// the dual has dimension s - r.
#[test]
fn stage_dimensions() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let fam = random_family(&mut rng, &f, 50);
        let opts = AnnihilatorOptions { audit: true, ..Default::default() };
        let res = annihilator(&f, &fam, Engine::Duality, opts).unwrap();
        if res.unit_ideal {
            continue;
        }
        let n = fam.nvars();
        assert!(res.stats.stages.iter().filter(|s| s.kind == StageKind::Integration).all(|s| s.cols % n == 0));
        assert_eq!(res.stats.stages.last().unwrap().kind, StageKind::Extraction);
        assert_eq!(compute_d(&f, &fam, opts).unwrap().dim(), res.s() - res.r);
        let h = annihilator(&f, &fam, Engine::Hankel, opts).unwrap();
        assert_eq!((h.stats.max_rows(), h.stats.max_cols()), (fam.len() * res.s(), res.s()));
    }
}
