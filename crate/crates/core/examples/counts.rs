use quiddity::enumeration::count_nonzero_with;
use quiddity::RingDescriptor;
use std::time::Instant;

fn main() {
    for ring in [RingDescriptor::GaussianIntegers, RingDescriptor::EisensteinIntegers] {
        for n in 1..=4 {
            let t = Instant::now();
            let r = count_nonzero_with(ring, n, 1).unwrap();
            println!("{ring} n={n} total={} orbits={} in {:?}", r.total, r.orbit_count, t.elapsed());
        }
    }
}
