//! Acceptance criteria, one printed PASS/FAIL line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use quiddity::bounds::find_two_small;
use quiddity::clusters::{check_ptolemy, find_zero_free_cluster};
use quiddity::enumeration::{count_nonzero_with, enumerate_naive, enumerate_nonzero_with, unit_family, zero_creating_parameters};
use quiddity::etacore::{eta_product, full_product, is_quiddity};
use quiddity::frieze::{frieze_from_cycle, is_nonzero};
use quiddity::labelling::{cc_quiddity, cycle_from_labelling, enumerate_triangulations, is_admissible, labelling_from_cycle};
use quiddity::reduction::reduce_to_base;
use quiddity::rings::elements_norm_at_most;
use quiddity::transforms::{
    conjugate_diag, contract_minus_one, contract_one, contract_uv, contract_zero, expand_minus_one, expand_one,
    expand_zero, rescale_lambda, scale_alternating, shift_zero,
};
use quiddity::worked::{check, fixtures};
use quiddity::{Cycle, Mat2, RingDescriptor, RingElement};

const Z: RingDescriptor = RingDescriptor::Integers;
const ZI: RingDescriptor = RingDescriptor::GaussianIntegers;
const ZE: RingDescriptor = RingDescriptor::EisensteinIntegers;

/// Non-zero quiddity cycles of heights 1 to 4 over the three discrete rings.
fn enumerated(ring: RingDescriptor) -> &'static Vec<Vec<Cycle>> {
    static CACHE: OnceLock<Vec<Vec<Vec<Cycle>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        [Z, ZI, ZE]
            .iter()
            .map(|&r| (1..=4).map(|n| enumerate_nonzero_with(r, n, 1).unwrap()).collect())
            .collect()
    });
    &all[[Z, ZI, ZE].iter().position(|&r| r == ring).unwrap()]
}

/// The integer corpus: enumerated cycles of length at most 7, the two
/// families with zeros and −1s, and the four worked reduction examples.
fn integer_corpus() -> Vec<Cycle> {
    let mut out: Vec<Cycle> = enumerated(Z).iter().flatten().cloned().collect();
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            out.push(Cycle::from_ints(&[a, 0, b, 0, -a - b, 0]));
        }
        out.push(Cycle::from_ints(&[1, 1, -a, -1, -1, a]));
    }
    for v in [
        &[0, 2, -2, 0, 2, -2][..],
        &[-1, -1, 0, 0, -1],
        &[0, -4, -5, 0, 4, 2, 0, -3, 3],
        &[-1, 2, -3, -1, -1, 2, -3, -1],
    ] {
        out.push(Cycle::from_ints(v));
    }
    out
}

fn ints(rows: &[&str]) -> Vec<Vec<RingElement>> {
    rows.iter().map(|r| r.split_whitespace().map(|x| RingElement::int(x.parse().unwrap())).collect()).collect()
}

fn criterion_1() {
    let expected = [
        (ZI, [(12, 6), (55, 7), (668, 81), (4368, 323)]),
        (ZE, [(12, 6), (75, 10), (1062, 127), (8526, 628)]),
    ];
    for (ring, rows) in expected {
        for (n, want) in (1..=4).zip(rows) {
            let t = Instant::now();
            let r = count_nonzero_with(ring, n, 1).unwrap();
            assert_eq!((r.total, r.orbit_count), want, "{ring} n={n}");
            assert_eq!(r.orbit_sizes.iter().sum::<usize>(), r.total);
            if n <= 3 {
                assert!(t.elapsed().as_secs() < 60, "{ring} n={n} took {:?}", t.elapsed());
            }
        }
    }
}

fn criterion_2() {
    for (n, want) in [(1, 4), (2, 5), (3, 28)] {
        let found = enumerate_nonzero_with(Z, n, 1).unwrap();
        assert_eq!(found.len(), want, "n={n}");
        assert_eq!(found, enumerate_naive(Z, n).unwrap(), "naive scan differs at n={n}");
    }
    // Positive integer friezes come from triangulations; for odd height
    // their negatives are friezes as well.
    for n in 1..=4i64 {
        let mut cc: BTreeSet<Vec<i64>> =
            enumerate_triangulations(n as usize + 3).iter().map(|t| cc_quiddity(t).to_i64s().unwrap()).collect();
        if n % 2 == 1 {
            let neg: Vec<Vec<i64>> = cc.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
            cc.extend(neg);
        }
        let found: BTreeSet<Vec<i64>> = enumerated(Z)[n as usize - 1].iter().map(|c| c.to_i64s().unwrap()).collect();
        assert_eq!(found, cc, "n={n}");
    }
}

fn box_with_zero(ring: RingDescriptor, norm: i64) -> Vec<RingElement> {
    let mut v = elements_norm_at_most(ring, &BigRational::from_integer(norm.into())).unwrap();
    v.push(RingElement::zero(ring));
    v
}

fn criterion_3() {
    for ring in [Z, ZI, ZE] {
        let elems = box_with_zero(ring, 100);
        let mut twos = Vec::new();
        for a in &elems {
            for b in &elems {
                let c = Cycle::new(vec![a.clone(), b.clone()]).unwrap();
                if is_quiddity(&c) {
                    twos.push(c);
                }
            }
        }
        assert_eq!(twos, vec![Cycle::from_ints_in(ring, &[0, 0]).unwrap()], "{ring}");
        let elems = box_with_zero(ring, 16);
        let mut threes = Vec::new();
        for a in &elems {
            let pa = eta_product(ring, std::slice::from_ref(a));
            for b in &elems {
                let pab = pa.mul_eta(b);
                for c in &elems {
                    if pab.mul_eta(c).is_scalar(-1) {
                        threes.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        let one = RingElement::one(ring);
        assert_eq!(threes, vec![(one.clone(), one.clone(), one)], "{ring}");
    }
    let mut fours = BTreeSet::new();
    for a in -12..=12i64 {
        for b in -12..=12i64 {
            let p = eta_product(Z, &[RingElement::int(a), RingElement::int(b)]);
            for c in -12..=12i64 {
                let q = p.mul_eta(&RingElement::int(c));
                for d in -12..=12i64 {
                    if q.mul_eta(&RingElement::int(d)).is_scalar(-1) {
                        fours.insert(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    let want: BTreeSet<Vec<i64>> = [1, 2, -1, -2].iter().map(|&c| vec![c, 2 / c, c, 2 / c]).collect();
    assert_eq!(fours, want);
}

fn criterion_4() {
    let all = fixtures();
    let names: BTreeSet<&str> = all.iter().map(|f| f.name.as_str()).collect();
    for need in ["hexagon", "gaussian", "labelling-1", "labelling-2", "all-zero"] {
        assert!(names.contains(need), "missing fixture {need}");
    }
    for f in &all {
        assert_eq!(check(f).unwrap(), vec![], "fixture {}", f.name);
    }
    let hexagon = frieze_from_cycle(&Cycle::from_ints(&[1, 4, 1, 2, 2, 2])).unwrap();
    let want = ints(&["0 1 1 3 2 1 0", "0 1 4 3 2 1 0", "0 1 1 1 1 1 0", "0 1 2 3 4 1 0", "0 1 2 3 1 1 0", "0 1 2 1 2 1 0"]);
    assert_eq!(hexagon.rows(), &want[..]);
    let zero = frieze_from_cycle(&Cycle::from_ints(&[0; 6])).unwrap();
    assert_eq!(zero.rows(), &ints(&["0 1 0 -1 0 1 0"; 6])[..]);
    let g = |a, b| RingElement::gaussian(a, b);
    let gauss = Cycle::new(vec![g(1, -1), g(1, 1), g(2, 0), g(1, -1), g(1, 1), g(2, 0)]).unwrap();
    let f = frieze_from_cycle(&gauss).unwrap();
    let (o, l) = (g(0, 0), g(1, 0));
    let period = [
        vec![o.clone(), l.clone(), g(1, -1), g(1, 0), g(1, 1), l.clone(), o.clone()],
        vec![o.clone(), l.clone(), g(1, 1), g(1, 2), g(2, 0), l.clone(), o.clone()],
        vec![o.clone(), l.clone(), g(2, 0), g(1, -2), g(1, -1), l, o],
    ];
    for (r, row) in f.rows().iter().enumerate() {
        assert_eq!(row, &period[r % 3]);
    }
}

fn criterion_5() {
    for c in integer_corpus() {
        assert!(is_quiddity(&c), "{c}");
        let t = reduce_to_base(&c).unwrap();
        assert_eq!(t.end(), &Cycle::from_ints(&[0, 0]), "{c}");
        assert!(t.steps.len() <= c.len(), "{c} took {} steps", t.steps.len());
        for s in &t.steps {
            assert!(is_quiddity(&s.after), "{c}: intermediate {} is not a quiddity cycle", s.after);
        }
        t.certify().unwrap();
    }
}

fn criterion_6() {
    for c in integer_corpus() {
        let lab = labelling_from_cycle(&c).unwrap();
        assert!(is_admissible(&lab), "{c}: {lab}");
        assert_eq!(cycle_from_labelling(&lab).unwrap(), c);
    }
}

fn criterion_7() {
    for ring in [Z, ZI, ZE] {
        for (n, cycles) in (1..=4i64).zip(enumerated(ring)) {
            let bound = BigRational::from_integer(((n + 1) * (n + 1)).into());
            let four = BigRational::from_integer(4.into());
            for c in cycles {
                assert!(c.entries().iter().all(|x| x.norm_sq().unwrap() <= bound), "{c}");
                let small = c.entries().iter().filter(|x| x.norm_sq().unwrap() < four).count();
                assert!(small >= 2, "{c}");
                find_two_small(c).unwrap();
            }
        }
    }
}

fn criterion_8() {
    let mut corpus = integer_corpus();
    for ring in [ZI, ZE] {
        corpus.extend(enumerated(ring).iter().flatten().cloned());
    }
    for c in &corpus {
        let f = frieze_from_cycle(c).unwrap();
        assert!(check_ptolemy(&f, None), "{c}");
        if c.len() >= 4 && c.entries().iter().any(|x| !x.is_zero()) {
            let cl = find_zero_free_cluster(c).unwrap().unwrap_or_else(|| panic!("no zero-free cluster for {c}"));
            assert!(cl.is_zero_free());
        }
    }
    for m in [6, 10] {
        let c = Cycle::from_ints(&vec![0; m]);
        assert!(is_quiddity(&c));
        assert!(find_zero_free_cluster(&c).unwrap().is_none(), "m={m}");
    }
}

fn rational() -> impl Strategy<Value = RingElement> + Clone {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| RingElement::rational(p, q))
}

fn gaussian_rational() -> impl Strategy<Value = RingElement> + Clone {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12).prop_map(|(a, b, c, d)| {
        RingElement::gaussian_rational(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

fn nonzero(s: impl Strategy<Value = RingElement>) -> impl Strategy<Value = RingElement> {
    s.prop_filter("nonzero", |x| !x.is_zero())
}

fn check_rules(elem: impl Strategy<Value = RingElement> + Clone) {
    let mut runner = TestRunner::new(Config { cases: 500, failure_persistence: None, ..Config::default() });
    let strategy = (
        elem.clone(),
        elem.clone(),
        elem.clone(),
        nonzero(elem.clone()),
        elem.clone(),
        nonzero(elem.clone()),
        nonzero(elem.clone()),
        proptest::collection::vec(elem, 4),
    );
    runner
        .run(&strategy, |(a, b, c, u, v, lambda, z, four)| {
            let ring = a.ring();
            let prod = |v: &[RingElement]| eta_product(ring, v);
            let cyc = |v: &[&RingElement]| Cycle::new(v.iter().map(|x| (*x).clone()).collect()).unwrap();
            let one = RingElement::one(ring);
            let zero = RingElement::zero(ring);
            let minus = -&one;

            let ab = cyc(&[&a, &b]);
            let e = expand_one(&ab, 1).unwrap();
            prop_assert_eq!(prod(e.cycle.entries()), prod(ab.entries()));
            prop_assert_eq!(&contract_one(&e.cycle, 2).unwrap().cycle, &ab);
            let e = expand_minus_one(&ab, 1).unwrap();
            prop_assert_eq!(prod(e.cycle.entries()), prod(ab.entries()).neg());
            prop_assert_eq!(&contract_minus_one(&e.cycle, 2).unwrap().cycle, &ab);
            let e = expand_zero(&ab, 1, &c).unwrap();
            prop_assert_eq!(prod(e.cycle.entries()), prod(ab.entries()).neg());
            prop_assert_eq!(&contract_zero(&e.cycle, 3).unwrap().cycle, &ab);

            let a1b = cyc(&[&a, &one, &b]);
            prop_assert_eq!(prod(contract_one(&a1b, 2).unwrap().cycle.entries()), prod(a1b.entries()));
            let am1b = cyc(&[&a, &minus, &b]);
            prop_assert_eq!(prod(contract_minus_one(&am1b, 2).unwrap().cycle.entries()), prod(am1b.entries()).neg());
            let a0b = cyc(&[&a, &zero, &b]);
            prop_assert_eq!(prod(contract_zero(&a0b, 2).unwrap().cycle.entries()), prod(a0b.entries()).neg());
            prop_assert_eq!(prod(shift_zero(&a0b, 2, &c).unwrap().entries()), prod(a0b.entries()));

            let window = cyc(&[&a, &u, &v, &b]);
            let w = &(&u * &v) - &one;
            if !w.is_zero() {
                prop_assert_eq!(prod(contract_uv(&window, 2).unwrap().entries()), prod(window.entries()));
                prop_assert_eq!(prod(rescale_lambda(&window, 2, &lambda).unwrap().entries()), prod(window.entries()));
            }

            let (a2, u2, b2) = conjugate_diag(&a, &u, &b, &z).unwrap();
            let zi = one.checked_div(&z).unwrap();
            let left = Mat2::diag(zi.clone(), z.clone()).mul(&prod(&[a.clone(), u.clone(), b.clone()])).mul(&Mat2::diag(z.clone(), zi));
            prop_assert_eq!(left, prod(&[a2, u2, b2]));

            let four = Cycle::new(four).unwrap();
            let x = Mat2::diag(lambda.clone(), one.clone());
            let xi = Mat2::diag(one.checked_div(&lambda).unwrap(), one.clone());
            let scaled = scale_alternating(&four, &lambda).unwrap();
            prop_assert_eq!(full_product(&scaled), x.mul(&full_product(&four)).mul(&xi));
            Ok(())
        })
        .unwrap_or_else(|e| panic!("{e}"));
}

fn criterion_9() {
    check_rules(rational());
    check_rules(gaussian_rational());
}

fn criterion_10() {
    let five = RingDescriptor::cyclotomic(5).unwrap();
    let fam = unit_family(five, 3, 12).unwrap();
    assert!(fam.len() >= 10);
    let distinct: BTreeSet<String> = fam.iter().map(|(_, c)| c.to_string()).collect();
    assert_eq!(distinct.len(), fam.len());
    for (_, c) in &fam {
        assert_eq!(c.len(), 6);
        assert!(is_quiddity(c));
        assert!(is_nonzero(&frieze_from_cycle(c).unwrap()));
    }
    assert_eq!(zero_creating_parameters(3, 40).unwrap(), vec![-4, -2, -1]);
    for n in 2..=6i64 {
        let mut want: Vec<i64> = (1..n).map(|k| -k).chain((1..n).map(|k| -2 * k)).collect();
        want.sort_unstable();
        want.dedup();
        assert_eq!(zero_creating_parameters(n, 4 * n).unwrap(), want, "n={n}");
    }
    let ts: Vec<RingElement> = unit_family(Z, 3, 10).unwrap().into_iter().map(|(t, _)| t).collect();
    assert_eq!(ts, vec![RingElement::int(1), RingElement::int(2)]);
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 10] = [
        ("count table over Z[i] and Z[zeta6], heights 1-4", criterion_1),
        ("integer counts 4, 5, 28 with brute-force oracles", criterion_2),
        ("quiddity cycles of length 2, 3 and 4", criterion_3),
        ("displayed example arrays", criterion_4),
        ("reduction of every integer corpus cycle to (0,0)", criterion_5),
        ("labelling round trip", criterion_6),
        ("entry bound and two small entries", criterion_7),
        ("zero-free clusters and Ptolemy", criterion_8),
        ("transformation identities over Q and Q(i)", criterion_9),
        ("infinite unit family and zero-creating parameters", criterion_10),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("{info}")));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        failed += usize::from(!ok);
        println!("criterion {:>2} {}: {} ({:.1?})", k + 1, if ok { "PASS" } else { "FAIL" }, name, t.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
