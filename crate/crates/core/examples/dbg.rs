use hyperbolic_nbody::dynamics::*;
use hyperbolic_nbody::hypergeom::*;

fn main() {
    let a = 1e-8f64;
    let p1 = HyperboloidPoint::new(MinkowskiVec::new(a.sinh(), 0.0, a.cosh())).unwrap();
    let p2 = HyperboloidPoint::new(MinkowskiVec::new(-a.sinh(), 0.0, a.cosh())).unwrap();
    let state = StateL2::new(
        vec![Body::new(1.0).unwrap(), Body::new(1.0).unwrap()],
        vec![p1, p2],
        vec![MinkowskiVec::ZERO, MinkowskiVec::ZERO],
    )
    .unwrap();
    let acc = accel_l2(&state).unwrap();
    println!("accel0 = {:?}", acc[0]);
    match step_rk4(&state, 1e-13) {
        Ok((s, rep)) => {
            println!("step ok, repair {rep:e}");
            println!("q0 = {:?} v0 = {:?}", s.positions[0].coords(), s.velocities[0]);
        }
        Err(e) => println!("step err: {e:?}"),
    }
}
