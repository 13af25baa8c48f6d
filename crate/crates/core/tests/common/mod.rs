#![allow(dead_code)]

use std::sync::Arc;

use torus_core::groups::{cyclic, dihedral, direct_product, quaternion, FiniteGroup};

/// One group from each isomorphism class of order at most 8.
pub fn groups_up_to_order_8() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let c = |n| cyclic(n).unwrap();
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", direct_product(&[c(2), c(2)])),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", dihedral(3).unwrap()),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", direct_product(&[c(2), c(4)])),
        ("C2xC2xC2", direct_product(&[c(2), c(2), c(2)])),
        ("D4", dihedral(4).unwrap()),
        ("Q8", quaternion()),
    ]
    .into_iter()
    .map(|(name, g)| (name, Arc::new(g)))
    .collect()
}
