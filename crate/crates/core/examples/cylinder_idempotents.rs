//! Cylinder sets of lamp configurations become idempotents of the group ring.
use zdforge::duality::{cylinder_to_ring, BitCylinder};
use zdforge::rational::fmt_rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // lamps 0 and 1 on, lamp 2 off
    let c = BitCylinder::pattern(0, &[1, 1, 0]);
    let p = cylinder_to_ring(&c);
    println!("cylinder of measure {} -> {} terms", fmt_rational(&c.measure()), p.len());
    assert_eq!(p.mul(&p)?, p);
    assert!(p.is_self_adjoint());
    println!("idempotent, self-adjoint, tr_vN = {}", fmt_rational(&p.trace_vn()));

    // disjoint cylinders give orthogonal projections
    let q = cylinder_to_ring(&BitCylinder::pattern(0, &[0]));
    println!("P Q = 0: {}", p.mul(&q)?.is_zero());

    // intersections multiply
    let d = BitCylinder::new([(5, 1)]);
    let both = cylinder_to_ring(&c.intersect(&d).unwrap());
    println!("chi_C chi_D = chi_(C and D): {}", p.mul(&cylinder_to_ring(&d))? == both);
    Ok(())
}
