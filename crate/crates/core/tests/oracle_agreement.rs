use comax_core::oracle::{Budget, FiniteModel};
use comax_core::{sample, FPModule, RingDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Modular(12),
        RingDescriptor::Modular(8),
        RingDescriptor::Modular(30),
        RingDescriptor::triangular(2, RingDescriptor::Modular(2)).unwrap(),
        RingDescriptor::triangular(2, RingDescriptor::Modular(4)).unwrap(),
        RingDescriptor::product(vec![RingDescriptor::Modular(4), RingDescriptor::Modular(3)]).unwrap(),
    ]
}

fn modules(rng: &mut ChaCha8Rng, count: usize) -> Vec<FPModule> {
    let rs = rings();
    (0..count)
        .map(|_| {
            let r = &rs[rng.gen_range(0..rs.len())];
            let size = r.cardinality().unwrap();
            let g = if size > 16u32.into() { 1 } else { rng.gen_range(1..=2) };
            sample::module(r, g, 3, rng)
        })
        .collect()
}

#[test]
fn annihilators_and_components_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = Budget::default();
    for m in modules(&mut rng, 120) {
        let model = FiniteModel::new(&m, &budget).unwrap();
        assert_eq!(m.cardinality().unwrap(), model.size().into(), "{:?}", m.relations());
        let x = sample::ideal(m.ring(), &mut rng);
        let xs = model.ring().ideal_set(&x);

        let l = m.left_annihilator(&x).unwrap();
        assert_eq!(model.submodule_set(&m, &l).unwrap(), model.left_annihilator(&xs), "l_M({x})");

        let c = m.component(&x).unwrap();
        let (oc, _) = model.component(&xs);
        assert_eq!(model.submodule_set(&m, &c.submodule).unwrap(), oc, "C({x})");

        let ann = m.annihilator(None).unwrap();
        assert_eq!(model.ring().ideal_set(&ann), model.right_annihilator(&model.whole()), "r(M)");

        let t = m.times_ideal(&m.whole(), &x).unwrap();
        let expected = {
            let gens: Vec<usize> = (0..model.size())
                .flat_map(|a| xs.ones().map(move |r| (a, r)))
                .map(|(a, r)| model.act(a, r))
                .collect();
            model.span(&gens)
        };
        assert_eq!(model.submodule_set(&m, &t).unwrap(), expected, "M{x}");
    }
}

#[test]
fn submodule_lattice_operations_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let budget = Budget::default();
    for m in modules(&mut rng, 80) {
        let model = FiniteModel::new(&m, &budget).unwrap();
        let pick = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(0..=2);
            let gens: Vec<_> = (0..k)
                .map(|_| {
                    let coords = (0..m.num_generators()).map(|_| sample::element(m.ring(), rng)).collect();
                    m.element(coords).unwrap()
                })
                .collect();
            let ids: Vec<usize> = gens.iter().map(|e| model.encode(e).unwrap()).collect();
            (m.submodule(&gens), model.span(&ids))
        };
        let (a, sa) = pick(&mut rng);
        let (b, sb) = pick(&mut rng);
        assert_eq!(model.submodule_set(&m, &a).unwrap(), sa);
        let mut inter = sa.clone();
        inter.intersect_with(&sb);
        assert_eq!(model.submodule_set(&m, &m.sub_intersect(&a, &b)).unwrap(), inter);
        let sum = m.sub_sum(&a, &b);
        let expect_sum = {
            let ids: Vec<usize> = sa.ones().chain(sb.ones()).collect();
            model.span(&ids)
        };
        assert_eq!(model.submodule_set(&m, &sum).unwrap(), expect_sum);
        assert!(m.sub_contains(&sum, &a));
        assert_eq!(m.invariants(&a).cardinality, Some(sa.count_ones(..).into()));
        let ra = m.annihilator_of(&a);
        assert_eq!(model.ring().ideal_set(&ra), model.right_annihilator(&sa));
    }
}
