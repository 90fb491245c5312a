mod bigint_serde;
pub mod group;
pub mod oracle;
pub mod poset;
pub mod socle;
