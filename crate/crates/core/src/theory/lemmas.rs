//! Structural facts about the Pascal matrix and about digit vectors of close
//! points, as executable predicates with random instance generators.
//!
//! Every predicate returns `Err` with a description of the first violated
//! clause. `big_v` and `big_w` are powers of two `2^v > 2^w`.

use rand::Rng;

use crate::gf2core::{pascal_matrix, pascal_times_ones, BitMatrix, BitVector};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pascal(m: usize) -> BitMatrix {
    pascal_matrix(m).expect("m >= 1")
}

/// Column `W` of `P_{2W}` has ones exactly in rows `1..=W`.
pub fn pascal_column_w(big_w: usize) -> Check {
    let p = pascal(2 * big_w);
    let expected: Vec<usize> = (1..=big_w).collect();
    let got = p.column(big_w).ones_positions();
    ensure(got == expected, || format!("column {big_w}: ones at {got:?}"))
}

/// Column `V+W` of `P_{2V}` has ones exactly in rows `1..=W` and `V+1..=V+W`.
pub fn pascal_column_v_plus_w(big_v: usize, big_w: usize) -> Check {
    let p = pascal(2 * big_v);
    let expected: Vec<usize> = (1..=big_w).chain(big_v + 1..=big_v + big_w).collect();
    let got = p.column(big_v + big_w).ones_positions();
    ensure(got == expected, || {
        format!("column {}: ones at {got:?}", big_v + big_w)
    })
}

/// For `V <= len(p) <= 2V - 1`: `(P p)[V] = p[V]`, and `(P p)[V+W] = p[V+W]`
/// when also `V + W <= len(p) <= V + 2W - 1`.
///
/// Row `V+W` of `P` has its next one after the diagonal in column `V + 2W`,
/// so the second identity only reaches `2V - 1` when `W = V/2`.
pub fn pascal_keeps_digits(big_v: usize, big_w: usize, p: &BitVector) -> Check {
    keeps_digits(&pascal(p.len()), big_v, big_w, p)
}

/// `P_m p`, computed from any larger Pascal matrix by zero padding.
fn product(big: &BitMatrix, p: &BitVector) -> std::result::Result<BitVector, String> {
    let m = p.len();
    let padded = if big.cols() > m {
        p.concat(&BitVector::zeros(big.cols() - m))
    } else {
        p.clone()
    };
    big.matvec(&padded)
        .and_then(|v| v.slice(1, m))
        .map_err(|e| e.to_string())
}

fn keeps_digits(big: &BitMatrix, big_v: usize, big_w: usize, p: &BitVector) -> Check {
    let m = p.len();
    ensure((big_v..=2 * big_v - 1).contains(&m), || {
        format!("length {m} outside {big_v}..={}", 2 * big_v - 1)
    })?;
    let pp = product(big, p)?;
    ensure(pp.get(big_v) == p.get(big_v), || {
        format!("(P p)[{big_v}] != p[{big_v}] for {p:?}")
    })?;
    if (big_v + big_w..big_v + 2 * big_w).contains(&m) {
        let i = big_v + big_w;
        ensure(pp.get(i) == p.get(i), || format!("(P p)[{i}] != p[{i}] for {p:?}"))?;
    }
    Ok(())
}

/// For `V >= 2` and `V <= len(p) <= 2V - 2`: `(P p)[V-1] = p[V-1] XOR p[V]`.
pub fn pascal_mixes_digit(big_v: usize, p: &BitVector) -> Check {
    mixes_digit(&pascal(p.len()), big_v, p)
}

fn mixes_digit(big: &BitMatrix, big_v: usize, p: &BitVector) -> Check {
    let m = p.len();
    ensure(big_v >= 2 && (big_v..=2 * big_v - 2).contains(&m), || {
        format!("length {m} outside {big_v}..={}", 2 * big_v - 2)
    })?;
    let pp = product(big, p)?;
    ensure(pp.get(big_v - 1) == p.get(big_v - 1) ^ p.get(big_v), || {
        format!("(P p)[{}] mismatch for {p:?}", big_v - 1)
    })
}

/// `P_V` equals both the top-right and bottom-right `V × V` blocks of `P_{2V}`.
pub fn pascal_blocks(big_v: usize) -> Check {
    let p = pascal(2 * big_v);
    let small = pascal(big_v);
    let top = p.submatrix(1, big_v, big_v + 1, 2 * big_v).map_err(|e| e.to_string())?;
    let bottom = p
        .submatrix(big_v + 1, 2 * big_v, big_v + 1, 2 * big_v)
        .map_err(|e| e.to_string())?;
    ensure(top == small, || format!("top-right block of P_{} differs", 2 * big_v))?;
    ensure(bottom == small, || format!("bottom-right block of P_{} differs", 2 * big_v))
}

/// `P_W 1_W` is the unit vector `e_W`.
pub fn pascal_ones_w(big_w: usize) -> Check {
    let direct = pascal_times_ones(big_w).map_err(|e| e.to_string())?;
    let product = pascal(big_w)
        .matvec(&BitVector::ones(big_w))
        .map_err(|e| e.to_string())?;
    ensure(direct == product, || "direct and matrix product differ".into())?;
    ensure(product.ones_positions() == [big_w], || {
        format!("P_{big_w} 1 has ones at {:?}", product.ones_positions())
    })
}

/// `P_{V+W} 1_{V+W}` has ones exactly at `W`, `V` and `V+W`.
pub fn pascal_ones_v_plus_w(big_v: usize, big_w: usize) -> Check {
    let m = big_v + big_w;
    let direct = pascal_times_ones(m).map_err(|e| e.to_string())?;
    let product = pascal(m).matvec(&BitVector::ones(m)).map_err(|e| e.to_string())?;
    ensure(direct == product, || "direct and matrix product differ".into())?;
    ensure(product.ones_positions() == [big_w, big_v, m], || {
        format!("P_{m} 1 has ones at {:?}", product.ones_positions())
    })
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BitVector {
    BitVector::from_bits((0..len).map(|_| rng.gen::<bool>()))
}

/// Runs all seven Pascal-matrix identities for `(v, w)` with `trials` random
/// vectors for each digit identity. Returns the number of checks made.
pub fn check_pascal_identities<R: Rng + ?Sized>(
    v: u32,
    w: u32,
    trials: usize,
    rng: &mut R,
) -> Result<usize, String> {
    assert!(w < v, "need w < v");
    let (big_v, big_w) = (1usize << v, 1usize << w);
    let tag = |e: String| format!("(v={v}, w={w}): {e}");
    let mut checks = 0;
    pascal_column_w(big_w).map_err(tag)?;
    pascal_column_v_plus_w(big_v, big_w).map_err(tag)?;
    pascal_blocks(big_v).map_err(tag)?;
    pascal_ones_w(big_w).map_err(tag)?;
    pascal_ones_v_plus_w(big_v, big_w).map_err(tag)?;
    checks += 5;
    let big = pascal(2 * big_v - 1);
    for _ in 0..trials {
        let m = rng.gen_range(big_v..=2 * big_v - 1);
        keeps_digits(&big, big_v, big_w, &random_vector(rng, m)).map_err(tag)?;
        checks += 1;
        if big_v >= 2 {
            let m = rng.gen_range(big_v..=2 * big_v - 2);
            mixes_digit(&big, big_v, &random_vector(rng, m)).map_err(tag)?;
            checks += 1;
        }
    }
    Ok(checks)
}

/// A pair of indices whose first coordinates are within `2^(-l+1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CloseInstance {
    pub m: u32,
    pub l: u32,
    pub p: u64,
    pub q: u64,
}

impl CloseInstance {
    /// First-coordinate numerators over `2^m` (bit reversals of the indices).
    fn phis(&self) -> (u64, u64) {
        let rev = |n: u64| n.reverse_bits() >> (64 - self.m);
        (rev(self.p), rev(self.q))
    }

    fn vectors(&self) -> (BitVector, BitVector) {
        let m = self.m as usize;
        (
            BitVector::binary_expand(self.p, m).expect("p < 2^m"),
            BitVector::binary_expand(self.q, m).expect("q < 2^m"),
        )
    }

    /// Whether `|phi(q) - phi(p)| < 2^(-l+1)`.
    pub fn is_close(&self) -> bool {
        let (a, b) = self.phis();
        a.abs_diff(b) < 1u64 << (self.m - self.l + 1)
    }
}

/// Draws a random instance with `4 <= m <= 20`, `2 <= l <= m`, `p != q` and
/// `0 < phi(q) - phi(p) < 2^(-l+1)`. Roughly half of the instances place
/// `phi(q)` just past a dyadic boundary so that carries are well exercised.
pub fn sample_close_instance<R: Rng + ?Sized>(rng: &mut R) -> CloseInstance {
    loop {
        let m = rng.gen_range(4..=20u32);
        let l = rng.gen_range(2..=m);
        let span = 1u64 << (m - l + 1);
        let (xp, xq) = if rng.gen_bool(0.5) {
            let xp = rng.gen_range(0..1u64 << m);
            (xp, xp + rng.gen_range(1..span))
        } else {
            let level = rng.gen_range(1..=m);
            let boundary = rng.gen_range(1..1u64 << level) << (m - level);
            let below = rng.gen_range(1..span);
            let above = rng.gen_range(0..span - below);
            match boundary.checked_sub(below) {
                Some(xp) => (xp, boundary + above),
                None => continue,
            }
        };
        if xq >> m != 0 {
            continue;
        }
        let rev = |n: u64| n.reverse_bits() >> (64 - m);
        return CloseInstance {
            m,
            l,
            p: rev(xp),
            q: rev(xq),
        };
    }
}

fn all(v: &BitVector, i: usize, j: usize, bit: bool) -> bool {
    (i..=j).all(|k| v.get(k) == bit)
}

fn equal_range(a: &BitVector, b: &BitVector, i: usize, j: usize) -> bool {
    (i..=j).all(|k| a.get(k) == b.get(k))
}

/// Which alternative describes a close ordered pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CloseAlternative {
    /// The first `l - 1` digits agree.
    SharedDigits,
    /// Digits agree before `k`, then `p` reads `0 1...1` and `q` reads
    /// `1 0...0` up to `l - 1`.
    Carry { k: usize },
}

/// For `0 <= phi(q) - phi(p) < 2^(-l+1)`, checks that exactly one of the two
/// alternatives holds, each clause tested literally on the digit vectors.
pub fn close_pair_alternative(inst: &CloseInstance) -> Result<CloseAlternative, String> {
    let (xp, xq) = inst.phis();
    ensure(xp <= xq && inst.is_close(), || format!("{inst:?} violates the precondition"))?;
    let (p, q) = inst.vectors();
    let (m, l) = (inst.m as usize, inst.l as usize);
    let shared = equal_range(&p, &q, 1, l - 1);
    let carries: Vec<usize> = (1..l)
        .filter(|&k| {
            (k == 1 || equal_range(&p, &q, 1, k - 1))
                && !p.get(k)
                && q.get(k)
                && (k + 1 > l - 1 || (all(&p, k + 1, l - 1, true) && all(&q, k + 1, l - 1, false)))
                && p.get(l) >= q.get(l)
                && !equal_range(&p, &q, l, m)
        })
        .collect();
    match (shared, carries.as_slice()) {
        (true, []) => Ok(CloseAlternative::SharedDigits),
        (false, [k]) => Ok(CloseAlternative::Carry { k: *k }),
        _ => Err(format!(
            "{inst:?}: shared prefix = {shared}, carry positions = {carries:?}"
        )),
    }
}

/// For `p != q` with `|phi(q) - phi(p)| < 2^(-l+1)`, checks the shape of
/// `D = p XOR q`: its first `l - 1` digits read `0...0 1...1`; a `0 -> 1`
/// step at `k` forces the block structure and orientation of the carry; a
/// `1, 1` pair at `k - 1, k` forces `D[k..l-1] = 1` and the matching
/// orientation.
pub fn close_pair_structure(inst: &CloseInstance) -> Check {
    ensure(inst.p != inst.q && inst.is_close(), || {
        format!("{inst:?} violates the precondition")
    })?;
    let (xp, xq) = inst.phis();
    let (p, q) = inst.vectors();
    let d = &p ^ &q;
    let (m, l) = (inst.m as usize, inst.l as usize);
    let head: Vec<bool> = (1..l).map(|i| d.get(i)).collect();
    let first_one = head.iter().position(|&b| b).unwrap_or(head.len());
    ensure(head[first_one..].iter().all(|&b| b), || {
        format!("{inst:?}: D[1..l-1] = {head:?} is not of the form 0..01..1")
    })?;
    let tail_nonzero = (l..=m).any(|i| d.get(i));
    for k in 2..l {
        let (prev, cur) = (d.get(k - 1), d.get(k));
        if !cur {
            continue;
        }
        if !prev {
            ensure(
                all(&d, 1, k - 1, false) && all(&d, k, l - 1, true) && tail_nonzero,
                || format!("{inst:?}: step at {k} without block structure"),
            )?;
            let above = xp > xq
                && p.get(k)
                && !q.get(k)
                && (k + 1 > l - 1 || (all(&p, k + 1, l - 1, false) && all(&q, k + 1, l - 1, true)))
                && p.get(l) <= q.get(l);
            let below = xp < xq
                && !p.get(k)
                && q.get(k)
                && (k + 1 > l - 1 || (all(&p, k + 1, l - 1, true) && all(&q, k + 1, l - 1, false)))
                && p.get(l) >= q.get(l);
            ensure(above || below, || format!("{inst:?}: step at {k} has wrong orientation"))?;
        } else {
            ensure(all(&d, k, l - 1, true) && tail_nonzero, || {
                format!("{inst:?}: run through {k} without block structure")
            })?;
            let above = xp > xq && all(&p, k, l - 1, false) && all(&q, k, l - 1, true) && p.get(l) <= q.get(l);
            let below = xp < xq && all(&p, k, l - 1, true) && all(&q, k, l - 1, false) && p.get(l) >= q.get(l);
            ensure(above || below, || format!("{inst:?}: run through {k} has wrong orientation"))?;
        }
    }
    Ok(())
}

/// Draws `count` instances, checking both predicates on each (with `p` and
/// `q` swapped at random for the symmetric one).
pub fn check_close_pairs<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Result<usize, String> {
    for _ in 0..count {
        let inst = sample_close_instance(rng);
        close_pair_alternative(&inst)?;
        let sym = if rng.gen_bool(0.5) {
            CloseInstance {
                p: inst.q,
                q: inst.p,
                ..inst
            }
        } else {
            inst
        };
        close_pair_structure(&sym)?;
    }
    Ok(count)
}
