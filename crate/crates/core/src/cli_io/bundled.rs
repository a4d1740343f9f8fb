//! Jobs and fixtures compiled into the binary.

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/", $name)))),*]
    };
}

const JOBS: &[(&str, &str)] = bundle![
    "sl4_pet.cfg",
    "borel_jordanian.cfg",
    "sl3_et.cfg",
    "sl4_et.cfg",
    "carrier_pet_i.cfg",
    "carrier_pet_ii.cfg",
    "carrier_et_internal.cfg",
    "heisenberg.cfg",
    "heisenberg_second.cfg",
    "heisenberg_E.cfg",
    "heisenberg_Eprime.cfg",
    "case5_abelian.cfg",
    "lemma2.cfg",
    "lemma2_degenerate.cfg",
    "rdj_flow.cfg",
];

const FIXTURES: &[(&str, &str)] = bundle![
    "sl4_pet.fix",
    "glet.dual",
    "borel_j.fix",
    "delfi_pet_i.fix",
    "delfc1_pet_i.fix",
    "delfi_pet_ii.fix",
    "delfc2_pet_ii.fix",
    "delfi_internal.fix",
    "delf_internal.fix",
    "heis_base.fix",
    "heis_e.fix",
    "heis_eprime.fix",
];

/// Bundled job configs as `(file name, text)`, in run order.
pub fn jobs() -> &'static [(&'static str, &'static str)] {
    JOBS
}

pub fn fixtures() -> &'static [(&'static str, &'static str)] {
    FIXTURES
}

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn job(name: &str) -> Option<&'static str> {
    JOBS.iter().find(|(n, _)| *n == name || n.strip_suffix(".cfg") == Some(name)).map(|(_, t)| *t)
}
