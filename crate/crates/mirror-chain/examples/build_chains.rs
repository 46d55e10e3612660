//! Construct the two engineered chain families (plus a custom chain) and
//! print their couplings, fields, and JSON form.
//!
//! ```bash
//! cargo run --release --example build_chains
//! ```

use mirror_chain::{custom_chain, hahn_chain, krawtchouk_chain};

fn main() {
    let kraw = krawtchouk_chain(5).unwrap();
    println!("Krawtchouk chain, N = 5 ({} sites)", kraw.n_sites);
    println!("  couplings J_l = sqrt((l+1)(N-l)): {:?}", kraw.couplings);
    println!("  fields: {:?}", kraw.fields);
    println!("  mirror symmetric: {}", kraw.is_mirror_symmetric());

    let hahn = hahn_chain(5, 0, 1).unwrap();
    println!("\nHahn chain, N = 5, p = 0, q = 1 (alpha = {})", hahn.alpha().unwrap());
    println!("  couplings: {:?}", hahn.couplings);
    println!("  fields (quadratic in the site): {:?}", hahn.fields);
    println!("  predicted mirror period q*pi = {}", hahn.predicted_period.unwrap());

    let custom = custom_chain(vec![1.0, 2.0], vec![0.0, 0.0, 0.0]).unwrap();
    println!("\nCustom chain J = [1, 2]:");
    println!("  mirror symmetric: {} (J_0 != J_1)", custom.is_mirror_symmetric());

    println!("\nChain JSON (the `chain build` file format):");
    println!("{}", serde_json::to_string_pretty(&hahn).unwrap());
}
