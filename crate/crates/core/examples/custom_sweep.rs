//! A sweep described in TOML, evaluated in parallel and written as CSV.
//! The same text works as a file for `plc-secrecy sweep`.

use std::io;

use plc_secrecy::sweep::{parse_config, run_sweep, write_csv};

const CONFIG: &str = r#"
preset = "fig3"
label = "strong_source"
values = [0, 20, 40, 60]
methods = ["quadrature", "asymptotic"]
workers = 2

[scenario]
n_destinations = 20

[scenario.source]
m_db = -10
"#;

fn main() -> plc_secrecy::Result<()> {
    let spec = parse_config(CONFIG)?;
    let rows = run_sweep(&spec)?;
    write_csv(&rows, io::stdout().lock())
}
