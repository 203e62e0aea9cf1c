//! Seeded random move instances: ambient linking data with the move's local
//! block planted at random positions.

use super::matrix::model_for;
use super::{matrix_transform, MoveDescriptor, MoveParams, MoveTag, PairOrder};
use crate::invariants::d3_surg;
use crate::surgery::LinkingData;
use rand::seq::SliceRandom;
use rand::Rng;

fn small<G: Rng>(rng: &mut G, m: usize, range: i64) -> Vec<i64> {
    (0..m).map(|_| rng.gen_range(-range..=range)).collect()
}

/// Random external data on `m` components with consistent diagonal parity.
fn ambient<G: Rng>(rng: &mut G, m: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut q = vec![vec![0; m]; m];
    let mut r = vec![0; m];
    for i in 0..m {
        q[i][i] = rng.gen_range(-6..=2);
        r[i] = q[i][i] + 2 * rng.gen_range(-1..=1);
        for j in i + 1..m {
            let v = rng.gen_range(-2..=2);
            q[i][j] = v;
            q[j][i] = v;
        }
    }
    (q, r)
}

/// Puts the local block `(a, rot, b)` at positions `idx` among `n` components;
/// the rest hold the external data in order.
fn plant(qe: &[Vec<i64>], re: &[i64], a: &[Vec<i64>], rot: &[i64], b: &[Vec<i64>], idx: &[usize]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = re.len() + rot.len();
    let ext: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
    let mut q = vec![vec![0; n]; n];
    let mut r = vec![0; n];
    for (x, &i) in ext.iter().enumerate() {
        r[i] = re[x];
        for (y, &j) in ext.iter().enumerate() {
            q[i][j] = qe[x][y];
        }
        for (c, &l) in idx.iter().enumerate() {
            q[i][l] = b[c][x];
            q[l][i] = b[c][x];
        }
    }
    for (c, &i) in idx.iter().enumerate() {
        r[i] = rot[c];
        for (d, &j) in idx.iter().enumerate() {
            q[i][j] = a[c][d];
        }
    }
    (q, r)
}

fn positions<G: Rng>(rng: &mut G, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

fn draw<G: Rng>(tag: MoveTag, rng: &mut G) -> (LinkingData, MoveDescriptor) {
    let m = rng.gen_range(0..=3);
    let (qe, re) = ambient(rng, m);
    let plus = rng.gen_range(0..=m);
    let backward = rng.gen_bool(0.5);
    match tag {
        MoveTag::CancelInsert | MoveTag::CancelRemove => {
            let t = rng.gen_range(-4..=2);
            let rho = t + 1 + 2 * rng.gen_range(-1..=1);
            let mut d = MoveDescriptor::cancel_insert(t, rho, small(rng, m, 2));
            if let MoveParams::Cancel { order, .. } = &mut d.params {
                *order = if rng.gen_bool(0.5) { PairOrder::PlusMinus } else { PairOrder::MinusPlus };
            }
            let data = LinkingData::new(qe, re, plus).expect("ambient data is valid");
            if tag == MoveTag::CancelInsert {
                return (data, d);
            }
            let (after, map) = matrix_transform(&data, &d).expect("insertion always applies");
            let mut rm = d.inverse(&map.created);
            rm.tag = MoveTag::CancelRemove;
            rm.direction = crate::front::Direction::Forward;
            (after, rm)
        }
        MoveTag::HandleSlide => {
            let n = m + 2;
            let (q, r) = ambient(rng, n);
            let pair = positions(rng, n, 2);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut d = MoveDescriptor::handle_slide(pair[0], pair[1], sign);
            if let MoveParams::Slide { ell_rider, ell_over, .. } = &mut d.params {
                *ell_rider = small(rng, m, 2);
                *ell_over = small(rng, m, 2);
            }
            if backward {
                d = d.backward();
            }
            (LinkingData::new(q, r, rng.gen_range(0..=n)).expect("ambient data is valid"), d)
        }
        MoveTag::UnframedSlide => {
            let n = m + 2;
            let (q, r) = ambient(rng, n);
            let pair = positions(rng, n, 2);
            (LinkingData::new(q, r, plus).expect("ambient data is valid"), MoveDescriptor::unframed_slide(pair[0], pair[1], 1))
        }
        MoveTag::Lantern | MoveTag::Chain => {
            let d = if tag == MoveTag::Lantern {
                // one parity per external keeps every half-combination integral
                let par: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=1)).collect();
                let mut w = || -> Vec<i64> { par.iter().map(|p| p + 2 * rng.gen_range(-1..=1)).collect() };
                let v = [w(), w(), w(), w()];
                MoveDescriptor::lantern(vec![], v)
            } else {
                MoveDescriptor::chain(vec![], [small(rng, m, 2), small(rng, m, 2), small(rng, m, 2)])
            };
            let model = model_for(&d).expect("vectors fit the blocks");
            let k = model.before.dim();
            let idx = positions(rng, m + k, k);
            let (q, r) = plant(&qe, &re, &model.before.a, &model.before.rot, &model.before.b, &idx);
            let data = LinkingData::new(q, r, plus).expect("planted data is valid");
            let mut d = d;
            set_indices(&mut d, idx);
            if !backward {
                return (data, d);
            }
            let (after, map) = matrix_transform(&data, &d).expect("planted block matches");
            let mut back = d.backward();
            set_indices(&mut back, map.created);
            (after, back)
        }
    }
}

fn set_indices(d: &mut MoveDescriptor, idx: Vec<usize>) {
    if let MoveParams::Lantern { indices, .. } | MoveParams::Chain { indices, .. } = &mut d.params {
        *indices = idx;
    }
}

/// A random instance of `tag` on data whose c² is defined.
pub fn random_instance<G: Rng>(tag: MoveTag, rng: &mut G) -> (LinkingData, MoveDescriptor) {
    loop {
        let (data, d) = draw(tag, rng);
        if d3_surg(&data).is_ok() {
            return (data, d);
        }
    }
}

/// One seeded invariance trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub descriptor: MoveDescriptor,
    pub before: LinkingData,
    pub after: Option<LinkingData>,
    pub d3: (String, String),
    pub delta: (String, String),
    pub schur: bool,
}

impl Trial {
    pub fn passed(&self) -> bool {
        self.after.is_some() && self.d3.0 == self.d3.1 && self.delta.0 == self.delta.1 && self.schur
    }
}

/// Runs `count` random instances of `tag` through `matrix_transform` and the
/// Schur identities. Deterministic in `seed`.
pub fn invariance_trials(tag: MoveTag, count: usize, seed: u64) -> Vec<Trial> {
    use crate::invariants::delta;
    use crate::linalg::fmt_rat;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let show = |x: Result<crate::linalg::Rational, _>| x.map_or_else(|e: crate::invariants::InvariantError| e.to_string(), |v| fmt_rat(&v));
    (0..count)
        .map(|_| {
            let (before, d) = random_instance(tag, &mut rng);
            let after = matrix_transform(&before, &d).ok().map(|x| x.0);
            let (d3a, dla) = match &after {
                Some(a) => (show(d3_surg(a)), show(delta(a))),
                None => ("no result".into(), "no result".into()),
            };
            Trial {
                schur: super::verify_schur_conditions(&d).passed(),
                d3: (show(d3_surg(&before)), d3a),
                delta: (show(delta(&before)), dla),
                descriptor: d,
                before,
                after,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::delta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_instances_apply_and_keep_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for tag in MoveTag::ALL {
            for _ in 0..20 {
                let (data, d) = random_instance(tag, &mut rng);
                let (after, _) = matrix_transform(&data, &d).unwrap_or_else(|e| panic!("{d}: {e}"));
                assert_eq!(d3_surg(&data), d3_surg(&after), "{d}");
                assert_eq!(delta(&data), delta(&after), "{d}");
            }
        }
    }
}
