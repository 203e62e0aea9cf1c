//! Far commutation of events, the normal form built on it, and window extraction.

use super::{strand_profile, Event, EventKind, FrontError, Word};

/// Where the second of two adjacent events sits relative to the first.
#[derive(PartialEq, Eq)]
enum Rel {
    Below,
    Above,
    Touching,
}

fn relation(e1: Event, e2: Event) -> Rel {
    let (a, b) = (e1.level, e2.level);
    match (e1.kind, e2.kind) {
        (EventKind::RightCusp, EventKind::LeftCusp) => {
            if b <= a {
                Rel::Below
            } else {
                Rel::Above
            }
        }
        (EventKind::RightCusp, _) => {
            if b + 2 <= a {
                Rel::Below
            } else if b >= a {
                Rel::Above
            } else {
                Rel::Touching
            }
        }
        (_, EventKind::LeftCusp) => {
            if b <= a {
                Rel::Below
            } else if b >= a + 2 {
                Rel::Above
            } else {
                Rel::Touching
            }
        }
        _ => {
            if b + 1 < a {
                Rel::Below
            } else if b > a + 1 {
                Rel::Above
            } else {
                Rel::Touching
            }
        }
    }
}

/// Exchanges two adjacent events with disjoint supports, adjusting levels.
/// Returns the new pair `(e2', e1')` in column order, or `None` when the
/// events share a strand.
pub fn swap_adjacent(e1: Event, e2: Event) -> Option<(Event, Event)> {
    match relation(e1, e2) {
        Rel::Touching => None,
        Rel::Below => Some((e2, e1.shifted(e2.kind.delta()))),
        Rel::Above => Some((e2.shifted(-e1.kind.delta()), e1)),
    }
}

/// A right cusp and a left cusp meeting in one gap. Exchanging them is an
/// isotopy, but the left cusp may then sit on either side of the closed pair.
pub fn same_gap_cusps(e1: Event, e2: Event) -> bool {
    use EventKind::*;
    match (e1.kind, e2.kind) {
        (RightCusp, LeftCusp) => e1.level == e2.level,
        (LeftCusp, RightCusp) => e2.level == e1.level + 2 || e1.level == e2.level + 2,
        _ => false,
    }
}

/// Moves `rem[j]` to the front. Returns the moved event and the remaining
/// events (with adjusted levels), or `None` if something blocks it.
fn bubble_to_front(rem: &[(Event, usize)], j: usize) -> Option<(Event, Vec<(Event, usize)>)> {
    let mut moving = rem[j].0;
    let mut passed = Vec::with_capacity(rem.len() - 1);
    for t in (0..j).rev() {
        if same_gap_cusps(rem[t].0, moving) {
            return None;
        }
        let (m, p) = swap_adjacent(rem[t].0, moving)?;
        moving = m;
        passed.push((p, rem[t].1));
    }
    passed.reverse();
    passed.extend_from_slice(&rem[j + 1..]);
    Some((moving, passed))
}

/// Far-commutation normal form together with the provenance permutation:
/// `perm[i]` is the original column of output event `i`.
pub fn normalize_with_perm(w: &Word) -> (Word, Vec<usize>) {
    let mut rem: Vec<(Event, usize)> = w.events.iter().copied().zip(0..).collect();
    let mut out = Vec::with_capacity(rem.len());
    let mut perm = Vec::with_capacity(rem.len());
    while !rem.is_empty() {
        // every event that can be commuted to the front, with the rest reordered
        let mut cands: Vec<(Event, usize, Vec<(Event, usize)>)> = Vec::new();
        for j in 0..rem.len() {
            if let Some((ev, rest)) = bubble_to_front(&rem, j) {
                cands.push((ev, j, rest));
            }
        }
        let key = cands.iter().map(|(e, _, _)| (e.level, e.kind)).min().expect("the first event is always movable");
        cands.retain(|(e, _, _)| (e.level, e.kind) == key);
        // Ties only happen between left cusps opening in the same gap. Take the
        // topmost, so the others keep the low level.
        let pick = (0..cands.len())
            .find(|&a| {
                cands.iter().enumerate().all(|(b, (_, jb, _))| {
                    if a == b {
                        return true;
                    }
                    let rest = &cands[a].2;
                    let idx = rest.iter().position(|&(_, o)| o == rem[*jb].1).unwrap();
                    bubble_to_front(rest, idx).map_or(false, |(e, _)| e.level == key.0)
                })
            })
            .unwrap_or(0);
        let (ev, j, rest) = cands.swap_remove(pick);
        out.push(ev);
        perm.push(rem[j].1);
        rem = rest;
    }
    (Word { inputs: w.inputs, events: out }, perm)
}

pub fn normalize(w: &Word) -> Word {
    normalize_with_perm(w).0
}

/// A column range `[start, end)` and a strand interval `lo .. lo + width`
/// (1-based, at the left boundary of the range). With `width == 0` the
/// interval is the gap just below position `lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub end: usize,
    pub lo: usize,
    pub width: usize,
}

impl Window {
    pub fn columns(start: usize, end: usize) -> Window {
        Window { start, end, lo: 1, width: 0 }
    }
}

/// A word split around a window: events outside the strand interval are
/// commuted out in front of the fragment.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub window: Window,
    pub foreign: Vec<Event>,
    pub foreign_cols: Vec<usize>,
    pub fragment: Word,
    pub fragment_cols: Vec<usize>,
    /// Bottom position of the interval once the foreign events have run.
    pub lo_after: usize,
}

pub fn extract_window(events: &[Event], w: Window) -> Result<Extraction, FrontError> {
    if w.start > w.end || w.end > events.len() {
        return Err(FrontError::PatternMismatch(format!("window columns {}..{} out of range", w.start, w.end)));
    }
    let counts = strand_profile(0, events)?;
    let s0 = counts[w.start];
    if w.lo == 0 || w.lo + w.width > s0 + 1 {
        return Err(FrontError::PatternMismatch(format!(
            "strand interval {}+{} does not fit {} strands",
            w.lo, w.width, s0
        )));
    }
    let (mut lo, mut width) = (w.lo, w.width);
    let mut foreign = Vec::new();
    let mut foreign_cols = Vec::new();
    let mut frag = Vec::new();
    let mut frag_cols = Vec::new();
    for col in w.start..w.end {
        let e = events[col];
        let k = e.level;
        let top = lo + width; // first position above the interval
        let place = match e.kind {
            EventKind::LeftCusp => {
                if k < lo {
                    Rel::Below
                } else if k > top {
                    Rel::Above
                } else {
                    Rel::Touching
                }
            }
            _ => {
                if k + 1 < lo {
                    Rel::Below
                } else if k >= top {
                    Rel::Above
                } else if k >= lo && k + 1 < top {
                    Rel::Touching
                } else {
                    return Err(FrontError::SupportViolation(format!("column {col}: {e} straddles the window boundary")));
                }
            }
        };
        match place {
            Rel::Touching => {
                frag.push(e.shifted(1 - lo as isize));
                frag_cols.push(col);
                width = (width as isize + e.kind.delta()) as usize;
            }
            Rel::Below => {
                foreign.push(e);
                foreign_cols.push(col);
                lo = (lo as isize + e.kind.delta()) as usize;
            }
            Rel::Above => {
                foreign.push(e.shifted(w.width as isize - width as isize));
                foreign_cols.push(col);
            }
        }
    }
    Ok(Extraction {
        window: w,
        foreign,
        foreign_cols,
        fragment: Word { inputs: w.width, events: frag },
        fragment_cols: frag_cols,
        lo_after: lo,
    })
}

impl Extraction {
    /// Rebuilds the full word with `replacement` in place of the fragment.
    pub fn splice(&self, events: &[Event], replacement: &[Event]) -> Vec<Event> {
        let mut out = events[..self.window.start].to_vec();
        out.extend_from_slice(&self.foreign);
        out.extend(replacement.iter().map(|e| e.shifted(self.lo_after as isize - 1)));
        out.extend_from_slice(&events[self.window.end..]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_events, L, R, X};
    use super::*;
    use std::collections::BTreeSet;

    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Lab {
        In(usize),
        New(usize, usize),
    }

    /// Label simulation oracle: final arrangement plus the labels each event touches.
    fn simulate(s: usize, evs: &[(usize, Event)]) -> Option<(Vec<Lab>, Vec<(usize, BTreeSet<Lab>)>)> {
        let mut pos: Vec<Lab> = (0..s).map(Lab::In).collect();
        let mut touched = Vec::new();
        for &(tag, e) in evs {
            if !e.valid_at(pos.len()) {
                return None;
            }
            let k = e.level - 1;
            let set: BTreeSet<Lab> = match e.kind {
                EventKind::LeftCusp => {
                    pos.splice(k..k, [Lab::New(tag, 0), Lab::New(tag, 1)]);
                    [Lab::New(tag, 0), Lab::New(tag, 1)].into()
                }
                EventKind::RightCusp => pos.drain(k..k + 2).collect(),
                EventKind::Crossing => {
                    pos.swap(k, k + 1);
                    [pos[k], pos[k + 1]].into()
                }
            };
            touched.push((tag, set));
        }
        touched.sort();
        Some((pos, touched))
    }

    #[test]
    fn swap_matches_label_simulation() {
        let kinds = [EventKind::LeftCusp, EventKind::RightCusp, EventKind::Crossing];
        for s in 0..7usize {
            for &k1 in &kinds {
                for a in 1..=s + 1 {
                    let e1 = Event { kind: k1, level: a };
                    if !e1.valid_at(s) {
                        continue;
                    }
                    let s1 = (s as isize + k1.delta()) as usize;
                    for &k2 in &kinds {
                        for b in 1..=s1 + 1 {
                            let e2 = Event { kind: k2, level: b };
                            if !e2.valid_at(s1) {
                                continue;
                            }
                            let before = simulate(s, &[(0, e1), (1, e2)]).unwrap();
                            match swap_adjacent(e1, e2) {
                                Some((f2, f1)) => {
                                    let after = simulate(s, &[(1, f2), (0, f1)]);
                                    assert_eq!(after.as_ref(), Some(&before), "{e1} {e2} -> {f2} {f1} at s={s}");
                                }
                                None => {
                                    // no level-shifted exchange reproduces the labels
                                    for db in [-2isize, 0, 2] {
                                        for da in [-2isize, 0, 2] {
                                            if (b as isize + db) < 1 || (a as isize + da) < 1 {
                                                continue;
                                            }
                                            let f2 = e2.shifted(db);
                                            let f1 = e1.shifted(da);
                                            if (f2, f1) == (e1, e2) {
                                                continue;
                                            }
                                            assert_ne!(
                                                simulate(s, &[(1, f2), (0, f1)]).as_ref(),
                                                Some(&before),
                                                "{e1} {e2} refused at s={s} but {f2} {f1} works"
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_is_order_independent() {
        let w = |s: &str| Word::new(0, parse_events(s).unwrap()).unwrap();
        // closing the upper eye first or last
        assert_eq!(normalize(&w("L1 L3 R1 R1")), normalize(&w("L1 L3 R3 R1")));
        assert_eq!(normalize(&w("L1 X1 L3 R3 X1 R1")), normalize(&w("L1 L3 X1 R3 X1 R1")));
        // stacked and sequential eyes differ only by a same-gap cusp exchange
        assert_ne!(normalize(&w("L1 L3 R1 R1")), normalize(&w("L1 R1 L1 R1")));
        assert!(same_gap_cusps(R(1), L(1)) && same_gap_cusps(L(3), R(1)) && !same_gap_cusps(L(1), R(5)));
    }

    #[test]
    fn extraction_moves_foreign_events_out() {
        // a foreign eye on the bottom, a window eye above it
        let evs = vec![L(1), L(3), X(3), X(3), R(1), R(1)];
        let ex = extract_window(&evs, Window { start: 1, end: 5, lo: 3, width: 0 }).unwrap();
        assert_eq!(ex.fragment.events, vec![L(1), X(1), X(1)]);
        assert_eq!(ex.foreign, vec![R(1)]);
        assert_eq!(ex.lo_after, 1);
        let rebuilt = ex.splice(&evs, &ex.fragment.events);
        assert_eq!(rebuilt, vec![L(1), R(1), L(1), X(1), X(1), R(1)]);
    }

    #[test]
    fn extraction_flags_straddles() {
        let evs = vec![L(1), L(3), X(2), X(2), R(3), R(1)];
        let err = extract_window(&evs, Window { start: 1, end: 4, lo: 3, width: 0 }).unwrap_err();
        assert!(matches!(err, FrontError::SupportViolation(_)));
    }
}

#[cfg(test)]
mod class_oracle {
    use super::super::random::random_front;
    use super::*;
    use rand::SeedableRng;
    use std::collections::{BTreeSet, VecDeque};

    type Lab = (usize, usize);

    /// Runs `evs` on the arrangement `pos`; returns the labels each event touched.
    fn run(pos: &mut Vec<Lab>, evs: &[(usize, Event)]) -> Option<Vec<(usize, BTreeSet<Lab>)>> {
        let mut out = Vec::new();
        for &(tag, e) in evs {
            if !e.valid_at(pos.len()) {
                return None;
            }
            let k = e.level - 1;
            let set: BTreeSet<Lab> = match e.kind {
                EventKind::LeftCusp => {
                    pos.splice(k..k, [(tag, 0), (tag, 1)]);
                    [(tag, 0), (tag, 1)].into()
                }
                EventKind::RightCusp => pos.drain(k..k + 2).collect(),
                EventKind::Crossing => {
                    pos.swap(k, k + 1);
                    [pos[k], pos[k + 1]].into()
                }
            };
            out.push((tag, set));
        }
        out.sort();
        Some(out)
    }

    /// Every word reachable by adjacent exchanges that keep the arrangement on
    /// both sides of the pair and the labels each event touches.
    pub(super) fn class(w: &[Event], cap: usize) -> Option<BTreeSet<Vec<Event>>> {
        let tagged: Vec<(usize, Event)> = w.iter().copied().enumerate().collect();
        let mut seen: BTreeSet<Vec<(usize, Event)>> = BTreeSet::from([tagged.clone()]);
        let mut queue = VecDeque::from([tagged]);
        while let Some(cur) = queue.pop_front() {
            let mut pos: Vec<Lab> = Vec::new();
            for i in 0..cur.len().saturating_sub(1) {
                let ((t1, e1), (t2, e2)) = (cur[i], cur[i + 1]);
                if super::same_gap_cusps(e1, e2) {
                    run(&mut pos, &cur[i..i + 1]).unwrap();
                    continue;
                }
                let mut p0 = pos.clone();
                let want = run(&mut p0, &cur[i..i + 2]).unwrap();
                for db in [-2isize, 0, 2] {
                    for da in [-2isize, 0, 2] {
                        if (e2.level as isize + db) < 1 || (e1.level as isize + da) < 1 {
                            continue;
                        }
                        let pair = [(t2, e2.shifted(db)), (t1, e1.shifted(da))];
                        let mut p1 = pos.clone();
                        if run(&mut p1, &pair).as_ref() != Some(&want) || p1 != p0 {
                            continue;
                        }
                        let mut next = cur.clone();
                        next[i] = pair[0];
                        next[i + 1] = pair[1];
                        if seen.insert(next.clone()) {
                            if seen.len() > cap {
                                return None;
                            }
                            queue.push_back(next);
                        }
                    }
                }
                run(&mut pos, &cur[i..i + 1]).unwrap();
            }
        }
        Some(seen.into_iter().map(|v| v.into_iter().map(|x| x.1).collect()).collect())
    }

    #[test]
    fn normal_form_is_constant_on_classes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut bad = 0;
        for _ in 0..400 {
            let f = random_front(&mut rng, 7, 6);
            if f.len() > 10 {
                continue;
            }
            let Some(cl) = class(f.events(), 600) else { continue };
            let forms: BTreeSet<Vec<Event>> =
                cl.iter().map(|w| normalize(&Word { inputs: 0, events: w.clone() }).events).collect();
            if forms.len() > 1 {
                bad += 1;
                if bad <= 5 {
                    let show = |v: &Vec<Event>| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
                    eprintln!("class of {} ({} words): {}", f, cl.len(), forms.iter().map(show).collect::<Vec<_>>().join(" | "));
                }
            }
        }
        assert_eq!(bad, 0);
    }
}
