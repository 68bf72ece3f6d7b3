//! Scans the inhibitor weight of the Young automaton and prints, for each
//! setting, whether the 100x100 grid is fixed after 20 steps and its final
//! pigmented fraction. Used to pick the `spots` preset.

use algoprob::ca::{young_run_with, young_step, YoungParams};

fn main() {
    println!("w2,seed,fixed_at,fraction,stable_after_20");
    for i in 0..=10 {
        let w2 = 0.10 + 0.01 * i as f64 + std::env::var("W2_SHIFT").map_or(0.0, |v| v.parse::<f64>().unwrap());
        for seed in 1..=3u64 {
            let p = YoungParams { r1: 2.3, r2: 6.01, w1: 1.0, w2, init_density: 0.5, seed };
            let mut prev = None;
            let mut fixed_at = None;
            let g = young_run_with(&p, 100, 100, 20, |t, g| {
                if fixed_at.is_none() && prev.as_ref() == Some(g) {
                    fixed_at = Some(t - 1);
                }
                prev = Some(g.clone());
            })
            .unwrap();
            let stable = young_step(&g, &p).unwrap() == g;
            println!(
                "{w2:.2},{seed},{},{:.4},{stable}",
                fixed_at.map_or("-".to_string(), |t| t.to_string()),
                g.live_fraction()
            );
        }
    }
}
