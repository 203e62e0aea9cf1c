//! Moves as operations on linking data.

use super::{IndexMap, MoveDescriptor, MoveError, MoveParams, MoveTag, PairOrder};
use crate::front::Direction;
use crate::invariants::{change_vector, ChangeVector};
use crate::linalg::{fmt_rat, rank, rat, signature, Matrix, Rational, SymMatrix};
use crate::surgery::LinkingData;

/// Local data of the components a move touches: linking block, rotations,
/// external linking columns (one per local component) and the number of
/// (+1)-components among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: Vec<Vec<i64>>,
    pub rot: Vec<i64>,
    pub b: Vec<Vec<i64>>,
    pub plus: usize,
}

impl Block {
    fn empty() -> Self {
        Block { a: vec![], rot: vec![], b: vec![], plus: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rot.len()
    }
}

/// `(A, a, B)` before the forward move and `(A', a', B')` after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveMatrixModel {
    pub before: Block,
    pub after: Block,
}

const LANTERN_A: [[i64; 3]; 3] = [[-5, 0, 0], [0, -2, 1], [0, 1, -2]];
const LANTERN_ROT: [i64; 3] = [-1, 0, 0];
const LANTERN_A2: [[i64; 4]; 4] = [[-3, 0, -1, 1], [0, -3, 1, -1], [-1, 1, -2, 1], [1, -1, 1, -2]];
const LANTERN_ROT2: [i64; 4] = [1, -1, 0, 0];

/// The twelve-component block, rows and columns in the order
/// L1 L4 L7 L10 | L2 L5 L8 L11 | L3 L6 L9 L12.
const CHAIN_A_GROUPED: [[i64; 12]; 12] = [
    [-2, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0],
    [-1, -2, -1, -1, 0, -1, -1, -1, 0, 0, 0, 0],
    [-1, -1, -2, -1, 0, 0, -1, -1, 0, 0, 0, 0],
    [-1, -1, -1, -2, 0, 0, 0, -1, 0, 0, 0, 0],
    [-1, 0, 0, 0, -2, -1, -1, -1, -1, -1, -1, -1],
    [-1, -1, 0, 0, -1, -2, -1, -1, 0, -1, -1, -1],
    [-1, -1, -1, 0, -1, -1, -2, -1, 0, 0, -1, -1],
    [-1, -1, -1, -1, -1, -1, -1, -2, 0, 0, 0, -1],
    [0, 0, 0, 0, -1, 0, 0, 0, -2, -1, -1, -1],
    [0, 0, 0, 0, -1, -1, 0, 0, -1, -2, -1, -1],
    [0, 0, 0, 0, -1, -1, -1, 0, -1, -1, -2, -1],
    [0, 0, 0, 0, -1, -1, -1, -1, -1, -1, -1, -2],
];
const CHAIN_GROUPED_LABELS: [usize; 12] = [1, 4, 7, 10, 2, 5, 8, 11, 3, 6, 9, 12];
const CHAIN_A2: [[i64; 2]; 2] = [[-3, -2], [-2, -3]];
const CHAIN_ROT2: [i64; 2] = [-1, 1];

fn rows<const N: usize>(m: &[[i64; N]; N]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

fn check_len(v: &[i64], m: usize, what: &str) -> Result<(), MoveError> {
    if v.len() != m {
        return Err(MoveError::IndexError(format!("{what} has length {} but there are {m} external components", v.len())));
    }
    Ok(())
}

/// Lantern blocks for the given w-vectors; every half-combination must be integral.
pub fn lantern_blocks(w2l: &[i64], w2r: &[i64], w3l: &[i64], w3r: &[i64]) -> Result<MoveMatrixModel, MoveError> {
    let m = w2l.len();
    for (v, name) in [(w2r, "w2r"), (w3l, "w3l"), (w3r, "w3r")] {
        check_len(v, m, name)?;
    }
    let half = |f: &dyn Fn(usize) -> i64, name: &str| -> Result<Vec<i64>, MoveError> {
        (0..m)
            .map(|i| {
                let v = f(i);
                if v % 2 != 0 {
                    Err(MoveError::HalfIntegerLinking(format!("{name} has odd entry {v} at external {}", i + 1)))
                } else {
                    Ok(v / 2)
                }
            })
            .collect()
    };
    let b = vec![
        half(&|i| (w2r[i] - w2l[i]) + (w3r[i] - w3l[i]), "(w2r - w2l) + (w3r - w3l)")?,
        half(&|i| w2l[i] + w2r[i], "w2l + w2r")?,
        half(&|i| w3l[i] + w3r[i], "w3l + w3r")?,
    ];
    let b2 = vec![
        half(&|i| w2l[i] - w3r[i], "w2l - w3r")?,
        half(&|i| w2r[i] - w3l[i], "w2r - w3l")?,
        half(&|i| w2l[i] + w3l[i], "w2l + w3l")?,
        half(&|i| w2r[i] + w3r[i], "w2r + w3r")?,
    ];
    Ok(MoveMatrixModel {
        before: Block { a: rows(&LANTERN_A), rot: LANTERN_ROT.to_vec(), b, plus: 0 },
        after: Block { a: rows(&LANTERN_A2), rot: LANTERN_ROT2.to_vec(), b: b2, plus: 0 },
    })
}

/// Chain blocks with the twelve components in label order L1..L12.
pub fn chain_blocks(ell1: &[i64], ell2: &[i64], ell3: &[i64]) -> Result<MoveMatrixModel, MoveError> {
    let m = ell1.len();
    check_len(ell2, m, "ell2")?;
    check_len(ell3, m, "ell3")?;
    let pos = |label: usize| CHAIN_GROUPED_LABELS.iter().position(|&l| l == label).unwrap();
    let a = (1..=12).map(|i| (1..=12).map(|j| CHAIN_A_GROUPED[pos(i)][pos(j)]).collect()).collect();
    let b = (1..=12)
        .map(|i| match i % 3 {
            1 => ell1.to_vec(),
            2 => ell2.to_vec(),
            _ => ell3.to_vec(),
        })
        .collect();
    let sum: Vec<i64> = (0..m).map(|i| ell1[i] + ell3[i]).collect();
    Ok(MoveMatrixModel {
        before: Block { a, rot: vec![0; 12], b, plus: 0 },
        after: Block { a: rows(&CHAIN_A2), rot: CHAIN_ROT2.to_vec(), b: vec![sum.clone(), sum], plus: 0 },
    })
}

fn cancel_block(t: i64, rho: i64, ell: &[i64], order: PairOrder) -> Block {
    let (d0, d1) = match order {
        PairOrder::PlusMinus => (t + 1, t - 1),
        PairOrder::MinusPlus => (t - 1, t + 1),
    };
    Block { a: vec![vec![d0, t], vec![t, d1]], rot: vec![rho, rho], b: vec![ell.to_vec(), ell.to_vec()], plus: 1 }
}

/// Local block of the two-component slide template: `(-1)`-unknots with
/// linking `sign`, so that the slid rider is again a `tb = -1` unknot.
fn slide_block(sign: i64, ell_rider: &[i64], ell_over: &[i64]) -> Block {
    Block {
        a: vec![vec![-2, sign], vec![sign, -2]],
        rot: vec![0, 0],
        b: vec![ell_rider.to_vec(), ell_over.to_vec()],
        plus: 0,
    }
}

/// `Pᵀ X P` style update for a block: column `rider` += `sign` · column `over`.
fn slide_local(bl: &Block, rider: usize, over: usize, sign: i64) -> Block {
    let mut out = bl.clone();
    let k = bl.dim();
    for i in 0..k {
        out.a[i][rider] += sign * bl.a[i][over];
    }
    let col: Vec<i64> = (0..k).map(|i| out.a[i][rider]).collect();
    for (j, v) in col.iter().enumerate() {
        out.a[rider][j] = *v;
    }
    out.a[rider][rider] = bl.a[rider][rider] + 2 * sign * bl.a[rider][over] + bl.a[over][over];
    out.rot[rider] += sign * bl.rot[over];
    for e in 0..bl.b[rider].len() {
        out.b[rider][e] += sign * bl.b[over][e];
    }
    out
}

/// Matrix model of a descriptor in forward orientation. The cancelling pair
/// sits on the "after" side, so its d3 condition carries `q' - q = 1`.
pub fn model_for(m: &MoveDescriptor) -> Result<MoveMatrixModel, MoveError> {
    match (&m.params, m.tag) {
        (MoveParams::Cancel { t, rho, ell, order, .. }, MoveTag::CancelInsert | MoveTag::CancelRemove) => {
            if (rho - t - 1).rem_euclid(2) != 0 {
                return Err(MoveError::BlockMismatch(format!("rotation {rho} and tb {t} have equal parity")));
            }
            let mut before = Block::empty();
            before.b = vec![];
            Ok(MoveMatrixModel { before, after: cancel_block(*t, *rho, ell, *order) })
        }
        (MoveParams::Slide { sign, ell_rider, ell_over, .. }, MoveTag::HandleSlide) => {
            check_len(ell_over, ell_rider.len(), "ell-over")?;
            let before = slide_block(*sign, ell_rider, ell_over);
            let after = slide_local(&before, 0, 1, *sign);
            Ok(MoveMatrixModel { before, after })
        }
        (MoveParams::Slide { .. }, MoveTag::UnframedSlide) => {
            Ok(MoveMatrixModel { before: Block::empty(), after: Block::empty() })
        }
        (MoveParams::Lantern { w2l, w2r, w3l, w3r, .. }, MoveTag::Lantern) => lantern_blocks(w2l, w2r, w3l, w3r),
        (MoveParams::Chain { ell1, ell2, ell3, .. }, MoveTag::Chain) => chain_blocks(ell1, ell2, ell3),
        _ => Err(MoveError::PatternMismatch(format!("parameters do not fit tag {}", m.tag))),
    }
}

fn check_indices(idx: &[usize], k: usize, n: usize) -> Result<(), MoveError> {
    if idx.len() != k {
        return Err(MoveError::IndexError(format!("expected {k} component indices, got {}", idx.len())));
    }
    for (a, &i) in idx.iter().enumerate() {
        if i >= n {
            return Err(MoveError::IndexError(format!("index {} out of range for {n} components", i + 1)));
        }
        if idx[..a].contains(&i) {
            return Err(MoveError::IndexError(format!("index {} repeated", i + 1)));
        }
    }
    Ok(())
}

fn observed_block(data: &LinkingData, idx: &[usize], ext: &[usize]) -> Block {
    Block {
        a: idx.iter().map(|&i| idx.iter().map(|&j| data.q[i][j]).collect()).collect(),
        rot: idx.iter().map(|&i| data.r[i]).collect(),
        b: idx.iter().map(|&i| ext.iter().map(|&e| data.q[e][i]).collect()).collect(),
        plus: 0,
    }
}

/// Applies a move to linking data. Survivors keep their relative order and
/// created components are appended in role order.
pub fn matrix_transform(data: &LinkingData, m: &MoveDescriptor) -> Result<(LinkingData, IndexMap), MoveError> {
    let n = data.n();
    match (&m.params, m.tag) {
        (MoveParams::Slide { rider, over, sign, .. }, MoveTag::HandleSlide) => {
            check_indices(&[*rider, *over], 2, n)?;
            let s = if m.direction == Direction::Forward { *sign } else { -*sign };
            let full = Block { a: data.q.clone(), rot: data.r.clone(), b: vec![vec![]; n], plus: 0 };
            let out = slide_local(&full, *rider, *over, s);
            return Ok((LinkingData::new(out.a, out.rot, data.plus)?, IndexMap::identity(n)));
        }
        (MoveParams::Slide { .. }, MoveTag::UnframedSlide) => return Ok((data.clone(), IndexMap::identity(n))),
        _ => {}
    }
    let model = model_for(m)?;
    let inserting = match m.tag {
        MoveTag::CancelInsert | MoveTag::CancelRemove => m.inserts_pair(),
        _ => m.direction == Direction::Forward,
    };
    // for the pair, "before" is the empty side
    let (source, target) = match (m.tag, inserting) {
        (MoveTag::CancelInsert | MoveTag::CancelRemove, true) | (MoveTag::Lantern | MoveTag::Chain, true) => {
            (&model.before, &model.after)
        }
        _ => (&model.after, &model.before),
    };
    let idx: Vec<usize> = match &m.params {
        MoveParams::Cancel { indices, .. } => {
            if inserting {
                vec![]
            } else {
                indices.clone()
            }
        }
        MoveParams::Lantern { indices, .. } | MoveParams::Chain { indices, .. } => indices.clone(),
        MoveParams::Slide { .. } => unreachable!(),
    };
    check_indices(&idx, source.dim(), n)?;
    let ext: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
    let ext_len = target.b.first().or(source.b.first()).map_or(ext.len(), Vec::len);
    if ext_len != ext.len() {
        return Err(MoveError::IndexError(format!(
            "descriptor vectors have length {ext_len} but there are {} external components",
            ext.len()
        )));
    }
    let seen = observed_block(data, &idx, &ext);
    if (seen.a.clone(), seen.rot.clone(), seen.b.clone()) != (source.a.clone(), source.rot.clone(), source.b.clone()) {
        return Err(MoveError::BlockMismatch(format!(
            "{} expects A = {:?}, a = {:?}, B = {:?}; found A = {:?}, a = {:?}, B = {:?}",
            m.tag, source.a, source.rot, source.b, seen.a, seen.rot, seen.b
        )));
    }
    if data.plus < source.plus {
        return Err(MoveError::CoefficientMismatch(format!("needs {} (+1)-components, data has {}", source.plus, data.plus)));
    }
    let me = ext.len();
    let k2 = target.dim();
    let mut q = vec![vec![0; me + k2]; me + k2];
    let mut r = vec![0; me + k2];
    for (a, &i) in ext.iter().enumerate() {
        r[a] = data.r[i];
        for (b, &j) in ext.iter().enumerate() {
            q[a][b] = data.q[i][j];
        }
        for c in 0..k2 {
            q[a][me + c] = target.b[c][a];
            q[me + c][a] = target.b[c][a];
        }
    }
    for c in 0..k2 {
        r[me + c] = target.rot[c];
        for d in 0..k2 {
            q[me + c][me + d] = target.a[c][d];
        }
    }
    let plus = data.plus - source.plus + target.plus;
    let mut survivors = vec![None; n];
    for (a, &i) in ext.iter().enumerate() {
        survivors[i] = Some(a);
    }
    let map = IndexMap { survivors, created: (me..me + k2).collect(), deleted: idx };
    Ok((LinkingData::new(q, r, plus)?, map))
}

/// One identity of the Schur lemma with both sides printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurReport {
    pub tag: MoveTag,
    pub checks: Vec<SchurCheck>,
}

impl SchurReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(fmt_rat).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

fn int_matrix(r: usize, c: usize, f: impl Fn(usize, usize) -> i64) -> Matrix {
    let mut m = Matrix::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            m[(i, j)] = rat(f(i, j));
        }
    }
    m
}

/// `(B A⁻¹ Bᵀ, B A⁻¹ a, aᵀ A⁻¹ a, σ(A))`, or `None` when `A` is singular.
fn schur_terms(bl: &Block, ext: usize) -> Option<(Matrix, Vec<Rational>, Rational, i64)> {
    let k = bl.dim();
    let a = int_matrix(k, k, |i, j| bl.a[i][j]);
    let inv = a.inverse()?;
    let b = int_matrix(ext, k, |e, c| bl.b[c][e]);
    let av: Vec<Rational> = bl.rot.iter().map(|&x| rat(x)).collect();
    let binv = b.mul(&inv).ok()?;
    let bab = binv.mul(&b.transpose()).ok()?;
    let ba = binv.mul_vec(&av).ok()?;
    let inv_a = inv.mul_vec(&av).ok()?;
    let aa = av.iter().zip(&inv_a).map(|(x, y)| x * y).sum();
    let sig = signature(&SymMatrix::new(a).ok()?);
    Some((bab, ba, aa, sig))
}

/// Checks the three identities of the Schur lemma for the descriptor's blocks.
pub fn verify_schur_conditions(m: &MoveDescriptor) -> SchurReport {
    let model = match model_for(m) {
        Ok(x) => x,
        Err(e) => {
            return SchurReport {
                tag: m.tag,
                checks: vec![SchurCheck { name: "model".into(), lhs: e.to_string(), rhs: String::new(), holds: false }],
            }
        }
    };
    let ext = model.before.b.first().or(model.after.b.first()).map_or(0, Vec::len);
    let (Some(before), Some(after)) = (schur_terms(&model.before, ext), schur_terms(&model.after, ext)) else {
        return SchurReport {
            tag: m.tag,
            checks: vec![SchurCheck { name: "A invertible".into(), lhs: "singular".into(), rhs: String::new(), holds: false }],
        };
    };
    let d3_lhs = after.2.clone() - before.2.clone();
    let d3_rhs = rat(3 * (after.3 - before.3) + 2 * (model.after.dim() as i64 - model.before.dim() as i64)
        - 4 * (model.after.plus as i64 - model.before.plus as i64));
    SchurReport {
        tag: m.tag,
        checks: vec![
            SchurCheck {
                name: "B A^-1 B^T = B' A'^-1 B'^T".into(),
                lhs: fmt_matrix(&before.0),
                rhs: fmt_matrix(&after.0),
                holds: before.0 == after.0,
            },
            SchurCheck {
                name: "B A^-1 a = B' A'^-1 a'".into(),
                lhs: fmt_vec(&before.1),
                rhs: fmt_vec(&after.1),
                holds: before.1 == after.1,
            },
            SchurCheck {
                name: "a'^T A'^-1 a' - a^T A^-1 a = 3 dsigma + 2 dn - 4 dq".into(),
                holds: d3_lhs == d3_rhs,
                lhs: fmt_rat(&d3_lhs),
                rhs: fmt_rat(&d3_rhs),
            },
        ],
    }
}

fn isolated_data(bl: &Block) -> LinkingData {
    LinkingData::new(bl.a.clone(), bl.rot.clone(), bl.plus).expect("published blocks are valid linking data")
}

/// P, L and C: the change vectors of the cancelling pair, lantern and chain
/// moves, computed by running each move on its isolated local data.
pub fn standard_change_vectors() -> Vec<(&'static str, ChangeVector)> {
    let run = |data: LinkingData, m: MoveDescriptor| {
        let (after, _) = matrix_transform(&data, &m).expect("isolated local data fits its own move");
        change_vector(&data, &after).expect("local blocks are nondegenerate")
    };
    let l = lantern_blocks(&[], &[], &[], &[]).expect("empty vectors");
    let c = chain_blocks(&[], &[], &[]).expect("empty vectors");
    vec![
        ("P", run(LinkingData::empty(), MoveDescriptor::cancel_insert(-1, 0, vec![]))),
        ("L", run(isolated_data(&l.before), MoveDescriptor::lantern(vec![0, 1, 2], Default::default()))),
        ("C", run(isolated_data(&c.before), MoveDescriptor::chain((0..12).collect(), Default::default()))),
    ]
}

/// Exact rank of a set of change vectors.
pub fn independence_rank(vectors: &[ChangeVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.to_vec()).collect();
    rank(&Matrix::from_rows(&rows).expect("change vectors all have four entries"))
}
