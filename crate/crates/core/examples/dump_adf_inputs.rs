//! Writes the seeded white-noise and random-walk series used by the ADF
//! reference check, one CSV per series, into the directory given as the
//! first argument.

use std::path::PathBuf;

use tendex::dataio::format_value;
use tendex::signals::{random_walk, white_noise};

pub const LEN: usize = 500;
pub const WHITE_SEEDS: std::ops::Range<u64> = 100..120;
pub const WALK_SEEDS: std::ops::Range<u64> = 200..220;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).ok_or("usage: dump_adf_inputs DIR")?);
    std::fs::create_dir_all(&dir)?;
    for (kind, seeds) in [("white", WHITE_SEEDS), ("walk", WALK_SEEDS)] {
        for seed in seeds {
            let s = if kind == "white" { white_noise(seed, LEN)? } else { random_walk(seed, LEN)? };
            let mut text = String::from("value\n");
            for v in s.values() {
                text.push_str(&format_value(*v));
                text.push('\n');
            }
            std::fs::write(dir.join(format!("{kind}_{seed}.csv")), text)?;
        }
    }
    Ok(())
}
