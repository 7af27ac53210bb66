#![allow(dead_code)]

use picard_core::curve::WeierstrassFamily;

pub const GOLDEN: [&str; 4] = ["gamma1_7", "gamma0_12", "gamma_8_4_1_2", "gamma1_10"];

pub fn family(name: &str) -> WeierstrassFamily {
    let path = format!("{}/../../data/families/{name}.fam", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    WeierstrassFamily::parse(&text).unwrap()
}
