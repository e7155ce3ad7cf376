//! The pressure-tank fault tree in its six scenario/dependence variants.

pub const INTERVAL_INDEP: &str = include_str!("../../fixtures/pressure_tank_interval_indep.ftree");
pub const INTERVAL_MIXED: &str = include_str!("../../fixtures/pressure_tank_interval_mixed.ftree");
pub const INTERVAL_UNKNOWN: &str = include_str!("../../fixtures/pressure_tank_interval_unknown.ftree");
pub const PBOX_INDEP: &str = include_str!("../../fixtures/pressure_tank_pbox_indep.ftree");
pub const PBOX_MIXED: &str = include_str!("../../fixtures/pressure_tank_pbox_mixed.ftree");
pub const PBOX_UNKNOWN: &str = include_str!("../../fixtures/pressure_tank_pbox_unknown.ftree");

/// `(file name, case label, contents)` for every fixture.
pub const ALL: [(&str, &str, &str); 6] = [
    ("pressure_tank_interval_indep.ftree", "Independence", INTERVAL_INDEP),
    ("pressure_tank_interval_mixed.ftree", "Mixed Dependence", INTERVAL_MIXED),
    ("pressure_tank_interval_unknown.ftree", "Unknown Dependence", INTERVAL_UNKNOWN),
    ("pressure_tank_pbox_indep.ftree", "Independence", PBOX_INDEP),
    ("pressure_tank_pbox_mixed.ftree", "Mixed Dependence", PBOX_MIXED),
    ("pressure_tank_pbox_unknown.ftree", "Unknown Dependence", PBOX_UNKNOWN),
];
