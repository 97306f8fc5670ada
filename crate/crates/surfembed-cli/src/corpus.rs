//! The shipped example instances and knots, embedded at build time.

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

macro_rules! example {
    ($name:literal, $summary:literal) => {
        Example { name: $name, summary: $summary, text: include_str!(concat!("../examples/", $name, ".json")) }
    };
}

macro_rules! knot {
    ($name:literal, $summary:literal) => {
        Example { name: $name, summary: $summary, text: include_str!(concat!("../examples/knots/", $name, ".json")) }
    };
}

pub const INSTANCES: &[Example] = &[
    example!("torus_s3s1", "torus in S^3 x S^1 with a t = 1 Whitney disc; b-characteristic"),
    example!("tubed_sphere", "homologically trivial torus carrying a tube; not b-characteristic"),
    example!("star_cp2_sphere", "generator sphere of the fake projective plane; km = 1"),
    example!("klein_bottle_e0", "Klein bottle in S^4 with normal Euler number 0"),
    example!("klein_bottle_e4", "Klein bottle in S^4 with normal Euler number 4"),
    example!("klein_bottle_em4", "Klein bottle in S^4 with normal Euler number -4"),
    example!("cp2_cubic", "degree three sphere class in CP^2 without a dual"),
    example!("rp2_case2", "projective plane where the orientation loop maps into the kernel"),
    example!("mu_nonzero", "sphere whose self-intersection number does not vanish"),
    example!("genus2_inconsistent", "b-characteristic genus 2 surface violating the abelian Euler bound"),
];

pub const KNOTS: &[Example] = &[
    knot!("unknot", "the unknot"),
    knot!("trefoil", "the (2,3) torus knot"),
    knot!("figure_eight", "the figure eight knot"),
    knot!("t25", "the (2,5) torus knot"),
    knot!("t27", "the (2,7) torus knot"),
    knot!("triple_trefoil", "connected sum of three trefoils"),
];

pub fn find(name: &str) -> Option<&'static Example> {
    INSTANCES.iter().chain(KNOTS.iter()).find(|e| e.name == name)
}
