//! Seeded random closed fronts, used by property suites and the CLI.

use super::{Event, EventKind, FrontDiagram};
use rand::Rng;

/// A random closed word of roughly `target` events with at most `max_strands`
/// strands at any column.
pub fn random_front<G: Rng>(rng: &mut G, target: usize, max_strands: usize) -> FrontDiagram {
    let max_strands = max_strands.max(2) & !1;
    let mut events = Vec::new();
    let mut s = 0usize;
    while events.len() < target || s > 0 {
        let closing = events.len() >= target;
        let kind = if s == 0 {
            EventKind::LeftCusp
        } else if closing {
            if rng.gen_bool(0.7) {
                EventKind::RightCusp
            } else {
                EventKind::Crossing
            }
        } else {
            match rng.gen_range(0..10) {
                0..=2 if s + 2 <= max_strands => EventKind::LeftCusp,
                0..=4 => EventKind::RightCusp,
                _ => EventKind::Crossing,
            }
        };
        let level = match kind {
            EventKind::LeftCusp => rng.gen_range(1..=s + 1),
            _ => rng.gen_range(1..s),
        };
        events.push(Event { kind, level });
        s = (s as isize + kind.delta()) as usize;
    }
    FrontDiagram::new(events).expect("generator keeps every event in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_fronts_are_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = random_front(&mut rng, 20, 8);
            assert!(d.len() >= 20);
            assert_eq!(*d.counts().last().unwrap(), 0);
        }
    }
}
