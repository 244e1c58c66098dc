//! Exact arithmetic in Q(ω6) and with a symbolic `a`.

use square_ice::{CycNum, GenericCoeff};

fn main() -> square_ice::Result<()> {
    let a = CycNum::a();
    println!("a           = {a}");
    println!("a^2         = {}", a.pow(2)?);
    println!("a^6         = {}", a.pow(6)?);
    println!("sigma(a)    = {}", a.sigma()?);
    println!("sigma(a^2)  = {}", a.pow(2)?.sigma()?);
    let s = CycNum::from_ints(-1, 2);
    println!("(2a-1)^2    = {}", &s * &s);

    let z: CycNum = "3/2+1/3a".parse()?;
    let inv = z.inv()?;
    println!("{z} * {inv} = {}", &z * &inv);
    println!("norm({z}) = {}", z.norm());
    println!("as JSON: {}", serde_json::to_string(&z).unwrap());

    // with a left symbolic, a^2 and a are unrelated
    let g = GenericCoeff::a_pow(2).sigma()?;
    println!("sigma(a^2) generic = {g}, at omega6 = {}", g.at_omega6());
    Ok(())
}
