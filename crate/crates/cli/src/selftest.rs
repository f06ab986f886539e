//! Randomized checks of the rewriting engine: commutator identities on
//! random word triples, and agreement of the normal form with the
//! reflection representation.

use polycomm::group::random_word;
use polycomm::{Graph, GroupSpec, Order};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Coxeter,
    Artin,
    Mixed,
}

pub fn random_spec<R: Rng>(rng: &mut R, family: Family, max_m: usize) -> GroupSpec {
    let m = rng.gen_range(2..=max_m);
    let mut g = Graph::empty(m).expect("small rank");
    for a in 1..=m {
        for b in a + 1..=m {
            if rng.gen_bool(0.4) {
                g.add_edge(a, b).expect("valid edge");
            }
        }
    }
    let orders = (0..m)
        .map(|_| match family {
            Family::Coxeter => Order::Finite(2),
            Family::Artin => Order::Infinite,
            Family::Mixed => match rng.gen_range(0..4u32) {
                0 => Order::Infinite,
                k => Order::Finite(k + 1),
            },
        })
        .collect();
    GroupSpec::new(g, orders).expect("orders match rank")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub samples: usize,
    pub failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.samples += 1;
        self.failures += usize::from(!ok);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub hall: Tally,
    pub swap: Tally,
    pub oracle: Tally,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.hall.failures == 0 && self.swap.failures == 0 && self.oracle.failures == 0
    }
}

/// `samples` identity triples spread over the three group families, and
/// `samples` Coxeter words of length at most 12 checked against the matrix
/// representation. Ranks are at most 6.
pub fn run(seed: u64, samples: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SelftestReport { seed, hall: Tally::default(), swap: Tally::default(), oracle: Tally::default() };
    let families = [Family::Coxeter, Family::Artin, Family::Mixed];
    for n in 0..samples {
        let spec = random_spec(&mut rng, families[n % 3], 6);
        let [a, b, c] = [0; 3].map(|_| {
            let len = rng.gen_range(0..=4);
            random_word(&mut rng, &spec, len)
        });
        report.hall.record(spec.verify_hall(&a, &b, &c).unwrap_or(false));
        let p = rng.gen_range(1..=spec.rank());
        let q = rng.gen_range(1..=spec.rank());
        report.swap.record(spec.verify_swap(p, q, &a).unwrap_or(false));
    }
    for _ in 0..samples {
        let spec = random_spec(&mut rng, Family::Coxeter, 6);
        let len = rng.gen_range(0..=12);
        let w = random_word(&mut rng, &spec, len);
        let agree = match (spec.is_identity(&w), spec.geometric_representation(&w)) {
            (Ok(id), Ok(mat)) => id == mat.is_identity(),
            _ => false,
        };
        report.oracle.record(agree);
    }
    report
}
