//! Regenerates the regression goldens under tests/golden:
//! `sde_selection.csv` (depth and chosen levels per SDE seed) and
//! `sde_spectrum.csv` (residual spectra for the first seed whose STC choice
//! is the modal one).
//!
//!     cargo run --release --example freeze_goldens -- tests/golden

use std::collections::BTreeMap;
use std::path::PathBuf;

use tendex::criteria::{select_tendency, Criterion, TendencyParams};
use tendex::dataio::format_value;
use tendex::hp::{hp_trend, DEFAULT_LAMBDA};
use tendex::itd::{decompose, BoundaryPolicy};
use tendex::signals::{GeneratorSpec, SignalKind};
use tendex::spectra::{residual_spectrum_report, DEFAULT_MAX_BIN};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).ok_or("usage: freeze_goldens DIR")?);
    let params = TendencyParams::default();

    let mut selection = String::from("seed,depth,stc,maxep\n");
    let mut stc_choices = Vec::new();
    for seed in 0..50u64 {
        let y = GeneratorSpec::new(SignalKind::Sde, seed).generate()?;
        let d = decompose(&y, BoundaryPolicy::Free);
        let stc = select_tendency(&d, Criterion::Stc, params)?.j_star;
        let maxep = select_tendency(&d, Criterion::MaxEp, params)?.j_star;
        selection.push_str(&format!("{seed},{},{stc},{maxep}\n", d.depth()));
        stc_choices.push((seed, stc));
    }
    std::fs::write(dir.join("sde_selection.csv"), selection)?;

    let mut counts = BTreeMap::new();
    for (_, j) in &stc_choices {
        *counts.entry(*j).or_insert(0usize) += 1;
    }
    let modal = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(j, _)| *j).unwrap();
    let seed = stc_choices.iter().find(|(_, j)| *j == modal).unwrap().0;

    let y = GeneratorSpec::new(SignalKind::Sde, seed).generate()?;
    let split = select_tendency(&decompose(&y, BoundaryPolicy::Free), Criterion::Stc, params)?;
    let hp = hp_trend(&y, DEFAULT_LAMBDA)?;
    let report = residual_spectrum_report(&y, &split.residual, &hp.residual, DEFAULT_MAX_BIN)?;
    let mut text = format!("# seed {seed}, stc j* {}\nbin,original,itd_residual,hp_residual\n", split.j_star);
    for k in 0..report.original.modulus.len() {
        text.push_str(&format!(
            "{k},{},{},{}\n",
            format_value(report.original.modulus[k]),
            format_value(report.itd_residual.modulus[k]),
            format_value(report.hp_residual.modulus[k])
        ));
    }
    std::fs::write(dir.join("sde_spectrum.csv"), text)?;
    Ok(())
}
