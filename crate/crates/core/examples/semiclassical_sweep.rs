//! The h-sweep from the classical to the quantum endpoint, printed as CSV.

use semiclassical::sweep::{parse_config, run_sweep, to_csv};

fn main() -> semiclassical::Result<()> {
    let cfg = parse_config(
        "N_q = 32\n\
         N_p = 32\n\
         steps = 11\n\
         hamiltonian = (2,0,0.5), (0,2,0.5)\n",
    )?;
    let records = run_sweep(&cfg)?;
    print!("{}", to_csv(&records));

    let classical = parse_config("state = classical-gaussian(1, 0, 0.5, 0.5)\nsteps = 3")?;
    for r in run_sweep(&classical)? {
        println!("h = {:.4}  mean = {:.12}  quadrature = {:.12}", r.h, r.mean, r.oracle);
    }
    Ok(())
}
