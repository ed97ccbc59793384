//! Builtin scenarios. The widths of the `fig2*` ladder are conventional
//! choices rather than measured values.

pub const SCENARIOS: &[(&str, &str)] = &[
    ("fig2a", FIG2A),
    ("fig2b", FIG2B),
    ("fig2c", FIG2C),
    ("fig2d", FIG2D),
    ("fig3a", FIG3A),
    ("fig3c", FIG3C),
    ("fig3ef", FIG3EF),
    ("fig4", FIG4),
    ("rb87", RB87),
];

const FIG2A: &str = r#"
name = "fig2a"
limit = "full"
outputs = ["density_x", "com", "populations", "analytic_overlay"]
[state]
k0 = 0.0
delta = 0.4
[model]
v_z = 1.0
[time]
tau_max = 50.0
samples = 1001
[grid]
n = 8192
"#;

const FIG2B: &str = r#"
name = "fig2b"
limit = "full"
outputs = ["density_x", "com", "populations", "analytic_overlay"]
[state]
k0 = 0.0
delta = 0.2
[model]
v_z = 1.0
[time]
tau_max = 50.0
samples = 1001
"#;

const FIG2C: &str = r#"
name = "fig2c"
limit = "full"
outputs = ["density_x", "com", "populations", "analytic_overlay"]
[state]
k0 = 0.0
delta = 0.1
[model]
v_z = 1.0
[time]
tau_max = 50.0
samples = 1001
"#;

const FIG2D: &str = r#"
name = "fig2d"
limit = "dirac"
outputs = ["density_x", "com", "populations"]
[state]
k0 = 0.0
delta = 0.1
[model]
v_z = 1.0
[time]
tau_max = 50.0
samples = 1001
"#;

const FIG3A: &str = r#"
name = "fig3a"
limit = "both"
outputs = ["density_x", "com", "populations", "analytic_overlay"]
[state]
k0 = 0.0
delta = 0.1
[model]
v_z = 1.0
[time]
tau_max = 50.0
samples = 1001
"#;

const FIG3C: &str = r#"
name = "fig3c"
limit = "both"
outputs = ["density_x", "com", "populations", "analytic_overlay"]
[state]
k0 = 0.0
delta = 0.1
[model]
v_z = 3.0
[time]
tau_max = 50.0
samples = 1001
"#;

const FIG3EF: &str = r#"
name = "fig3ef"
limit = "full"
outputs = ["density_x", "com", "populations"]
[state]
k0 = 1.0
delta = 0.1
relative_phase = 0.7853981633974483
[model]
v_z = 1.0
[time]
tau_max = 30.0
samples = 601
"#;

const FIG4: &str = r#"
name = "fig4"
limit = "full"
outputs = ["density_x", "com", "populations"]
[state]
k0 = 1.0
delta = 0.1
[model]
v_z = 1.0
[time]
tau_max = 30.0
samples = 601
[[variants]]
name = "in_phase"
relative_phase = 0.0
[[variants]]
name = "quarter_phase"
relative_phase = 0.7853981633974483
"#;

// θ = π/4 with v3 = v1 − 3.5 E_r gives a unit reduced gap
const RB87: &str = r#"
name = "rb87"
limit = "full"
outputs = ["com", "populations"]
[state]
k0 = 0.0
delta = 0.1
[physical]
kappa = 8055365.778435366
theta = 0.7853981633974483
v1 = 0.0
v3 = -3.5
[time]
tau_max = 50.0
samples = 1001
"#;

pub fn lookup(name: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|(n, _)| *n).collect()
}
