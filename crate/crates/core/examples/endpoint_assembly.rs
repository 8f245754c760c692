//! Assembles q~(h), p~(h) across [0, h0] and checks both endpoints bitwise.

use std::f64::consts::PI;

use semiclassical::repspace::{
    assemble_pair_cm, assemble_pair_qm, assemble_ptilde, assemble_qtilde, coordinate_rep, momentum_grid_for,
    momentum_rep, uniform_grid, RFactor, SemiclassicalParams,
};

fn main() -> semiclassical::Result<()> {
    let h0 = 2.0 * PI;
    let gq = uniform_grid(16, 20.0)?;
    let gp = momentum_grid_for(&gq, 1.0)?;
    let r = RFactor::balanced();
    let (q_cm, p_cm) = assemble_pair_cm(&coordinate_rep(&gq, 0.0)?, &momentum_rep(&gp, 0.0)?, &r)?;
    let (q_qm, p_qm) = assemble_pair_qm(&coordinate_rep(&gq, 1.0)?, &momentum_rep(&gp, 1.0)?, &r)?;

    for k in 0..=4 {
        let params = SemiclassicalParams::new(h0 * k as f64 / 4.0, h0)?;
        let hbar = params.hbar_of_h();
        let (fq, fp) = (coordinate_rep(&gq, hbar)?, momentum_rep(&gp, hbar)?);
        let q = assemble_qtilde(&params, &fq, &fp, &r)?;
        let p = assemble_ptilde(&params, &fq, &fp, &r)?;
        println!(
            "h/h0 = {:.2}  |q~ - q_cm| = {:.6}  |p~ - p_cm| = {:.6}  = qm pair: {}  = cm pair: {}",
            params.ratio(),
            q.sub(&q_cm)?.norm(),
            p.sub(&p_cm)?.norm(),
            q == q_qm && p == p_qm,
            q == q_cm && p == p_cm,
        );
    }
    println!("max |[q_cm, p_cm]| = {}", q_cm.commutator(&p_cm)?.max_abs());
    Ok(())
}
