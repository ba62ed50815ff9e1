#![allow(dead_code)]

use extrainv::{all_subgroups, idft, subgroups_between, Complex64, Group, Signal, Spectrum, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TOL: f64 = 1e-9;

pub fn test_groups() -> Vec<Group> {
    let mut groups: Vec<Group> = (1..=24).map(Group::cyclic).collect();
    for m in [&[2i64, 4][..], &[2, 2, 2], &[3, 9]] {
        groups.push(Group::new(m).unwrap());
    }
    groups
}

/// Random spectrum with small Gaussian-integer entries on a random fraction
/// (25% to 75%) of the dual group.
pub fn random_spectrum<R: Rng>(rng: &mut R, g: &Group) -> Spectrum {
    let density = rng.gen_range(0.25..=0.75);
    let values = (0..g.order())
        .map(|_| {
            if rng.gen_bool(density) {
                loop {
                    let v = Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64);
                    if v.norm() > 0.0 {
                        break v;
                    }
                }
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Spectrum::new(g, values).unwrap()
}

pub fn random_signal<R: Rng>(rng: &mut R, g: &Group) -> Signal {
    let values = (0..g.order())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Signal::new(g, values).unwrap()
}

pub struct Instance {
    pub group: Group,
    pub h: Subgroup,
    pub m: Subgroup,
    pub family: Vec<Signal>,
}

pub fn random_instance<R: Rng>(rng: &mut R, groups: &[Group]) -> Instance {
    let group = groups.choose(rng).unwrap().clone();
    let h = all_subgroups(&group).choose(rng).unwrap().clone();
    let m = subgroups_between(&group, &h).choose(rng).unwrap().clone();
    let count = rng.gen_range(1..=3);
    let family = (0..count).map(|_| idft(&random_spectrum(rng, &group))).collect();
    Instance { group, h, m, family }
}
