//! Walk through the octonion differential operator ring: the twisted
//! product, a nucleus certificate, the centralizer module basis of x^2 and
//! an annihilating polynomial for a commuting pair.
//!
//! Run with `cargo run --example octonion_weyl --release`.

use ore_algebra::{
    canonical_text, find_annihilating, CentralizerQuery, OreContext, OreElem, YdegCaps,
};

fn main() {
    let ctx = OreContext::diff_oct();
    let x = OreElem::x(&ctx);
    let y = OreElem::y(&ctx);

    println!("x * y       = {}", canonical_text(&x.mul(&y)));
    println!("x^2 * y     = {}", canonical_text(&x.mul(&x).mul(&y)));
    println!("x, y commute: {}", x.commutes_with(&y));

    let e1x = OreElem::term(&ctx, ctx.algebra().basis_elem(1), 0, 1);
    println!(
        "\nnucleus certificates at bounds (2, 2):\n  x    -> {}\n  e1*x -> {}",
        x.nucleus_check(2, 2).unwrap().is_member(),
        e1x.nucleus_check(2, 2).unwrap().is_member(),
    );

    let a = x.pow_left(2);
    let query = CentralizerQuery::new(a.clone(), 4, YdegCaps::Auto).unwrap();
    let basis = query.module_basis().unwrap();
    println!("\ncentralizer of x^2: free module of rank {}", basis.rank());
    for (elem, deg) in basis.elements.iter().zip(&basis.degrees) {
        println!("  chi {deg}: {}", canonical_text(elem));
    }

    let rat = OreContext::diff_rat();
    let xr = OreElem::x(&rat);
    let (a, b) = (xr.pow_left(2), xr.pow_left(3));
    let p = find_annihilating(&a, &b, 3).unwrap().unwrap();
    println!("\nannihilating polynomial of (x^2, x^3): {p}");
}
