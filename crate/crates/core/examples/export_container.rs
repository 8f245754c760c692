//! Writes an operator and a state to the text and binary containers and
//! reads them back.

use semiclassical::repspace::{
    assemble_pair_qm, coordinate_rep, gaussian_test_states, momentum_grid_for, momentum_rep, uniform_grid, Container,
    RFactor,
};

fn main() -> semiclassical::Result<()> {
    let gq = uniform_grid(4, 6.0)?;
    let gp = momentum_grid_for(&gq, 1.0)?;
    let (q, _) = assemble_pair_qm(&coordinate_rep(&gq, 1.0)?, &momentum_rep(&gp, 1.0)?, &RFactor::balanced())?;
    let v = gaussian_test_states(&gq, &gp)?.remove(2);

    let mut text = Vec::new();
    Container::from_vector(&v).write_text(&mut text)?;
    let text = String::from_utf8(text).expect("container text is ASCII");
    println!("{}", text.lines().take(5).collect::<Vec<_>>().join("\n"));
    assert_eq!(Container::read_text(text.as_bytes())?.to_vector()?, v);

    let mut bytes = Vec::new();
    Container::from_operator(&q).write_binary(&mut bytes)?;
    let back = Container::read_binary(bytes.as_slice())?.to_operator()?;
    println!("binary container: {} bytes, exact round trip: {}", bytes.len(), back.to_dense() == q.to_dense());
    Ok(())
}
