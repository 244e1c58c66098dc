//! Sparse Laurent polynomials: arithmetic, symmetry, substitution, evaluation.

use square_ice::laurent::sigma_of;
use square_ice::{EvalPoint, GenericPoly, Omega6Poly, VarId};

fn main() -> square_ice::Result<()> {
    let (x1, x2, y1) = (VarId::x(1), VarId::x(2), VarId::y(1));

    // sigma(a x1 / y1) = a x1 y1^-1 - a^-1 x1^-1 y1
    let s: GenericPoly = sigma_of(1, &[(x1, 1), (y1, -1)]);
    println!("s        = {s}");
    let p = &s * &sigma_of(1, &[(x2, 1), (y1, -1)]);
    println!("p        = {p}");
    println!("p symmetric in x1, x2: {}", p.is_symmetric(x1, x2)?);
    let shape = p.parity_and_centered(y1)?;
    println!("degrees in y1: {}..{}, {:?}, centered: {}", shape.min, shape.max, shape.parity, shape.centered);

    // specialize x1 = a^-1 y1
    let sub = &GenericPoly::a_pow(-1) * &GenericPoly::var(y1);
    println!("s(x1 = y1/a) = {}", s.substitute_monomial(x1, &sub)?);

    let pt: EvalPoint = "x1=2, x2=1/3+a, y1=-1, a=3".parse()?;
    println!("p at {{x1=2, x2=1/3+a, y1=-1, a=3}} = {}", p.evaluate(&pt)?);

    // in Omega6 mode a^2 = a - 1 is built in
    let q: Omega6Poly = sigma_of(2, &[]);
    println!("sigma(a^2) in omega6 mode = {q}");
    println!("as JSON: {}", serde_json::to_string(&q).unwrap());
    Ok(())
}
