//! Distribution of the selected level over seeds 0..50 for each stochastic
//! generator, under both criteria.

use std::collections::BTreeMap;

use tendex::batch::{self, Execution};
use tendex::criteria::{select_tendency, Criterion, TendencyParams};
use tendex::itd::{decompose, BoundaryPolicy};
use tendex::signals::{GeneratorSpec, SignalKind};

fn histogram(values: &[usize]) -> String {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(*v).or_insert(0) += 1;
    }
    h.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>().join(" ")
}

fn main() {
    let seeds: Vec<u64> = (0..50).collect();
    for kind in [SignalKind::Sde, SignalKind::NoisySine, SignalKind::Multiscale] {
        let rows = batch::map(Execution::Parallel, &seeds, |&seed| {
            let y = GeneratorSpec::new(kind, seed).generate().expect("generator");
            let d = decompose(&y, BoundaryPolicy::Free);
            let pick = |c, p_star| {
                select_tendency(&d, c, TendencyParams { p_star, n_lags: 1 })
                    .expect("selection")
                    .j_star
            };
            (d.depth(), pick(Criterion::Stc, 0.05), pick(Criterion::Stc, 0.17), pick(Criterion::MaxEp, 0.05))
        });
        let col = |f: fn(&(usize, usize, usize, usize)) -> usize| rows.iter().map(f).collect::<Vec<_>>();
        let same = rows.iter().filter(|r| r.1 == r.2).count();
        println!("{kind:?}");
        println!("  depth       {}", histogram(&col(|r| r.0)));
        println!("  stc  0.05   {}", histogram(&col(|r| r.1)));
        println!("  stc  0.17   {}", histogram(&col(|r| r.2)));
        println!("  maxep       {}", histogram(&col(|r| r.3)));
        println!("  stc unchanged 0.05 -> 0.17: {same}/{}", rows.len());
    }
}
