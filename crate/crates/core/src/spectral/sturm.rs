//! Exact real-root bookkeeping for the interlacing test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Squarefree factors `s_1, s_2, ...` with `p = c * prod s_e^e` (Yun).
fn squarefree_decomposition(p: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        out.push(a);
    }
    out
}

/// A real root, exact when rational, otherwise an isolating interval
/// `(lo, hi)` with a sign change of the squarefree polynomial.
#[derive(Debug, Clone)]
enum Root {
    Exact(BigRational),
    Between(BigRational, BigRational),
}

fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    p.sign_at(x.numer(), x.denom())
}

fn sturm_chain(f: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    while chain.last().is_some_and(|p| p.deg() > 0) {
        let k = chain.len();
        let r = chain[k - 2].positive_prem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        let g = r.content();
        let r = IntPoly::new(r.coeffs().iter().map(|c| -(c / &g)).collect());
        chain.push(r);
    }
    chain
}

fn variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolates the real roots of a squarefree polynomial, ascending.
fn isolate(f: &IntPoly) -> Vec<Root> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(f);
    let lead = f.leading().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    // Cauchy bound: every root satisfies |x| < 1 + max|c_i| / |lead|.
    let bound = BigRational::from_integer(max / lead + BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) - variations(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && sign_at(f, &hi) == 0 {
            out.push(Root::Exact(hi));
            continue;
        }
        if count == 1 && sign_at(f, &lo) != 0 {
            out.push(Root::Between(lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        // Intervals are half-open (lo, hi]; push the upper half first so the
        // lower half is processed first.
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| root_key(a).cmp(&root_key(b)));
    out
}

/// Orders roots: an interval `(lo, hi)` sorts just below the point `hi`.
fn root_key(r: &Root) -> (&BigRational, bool) {
    match r {
        Root::Exact(x) => (x, true),
        Root::Between(_, x) => (x, false),
    }
}

/// Shrinks an isolating interval of `f` so that it no longer contains `x`,
/// which must not be a root of `f`.
fn exclude_point(f: &IntPoly, root: Root, x: &BigRational) -> Root {
    match root {
        Root::Between(lo, hi) if &lo < x && x < &hi => {
            if sign_at(f, &lo) * sign_at(f, x) < 0 {
                Root::Between(lo, x.clone())
            } else {
                Root::Between(x.clone(), hi)
            }
        }
        other => other,
    }
}

fn has_root(s: &IntPoly, r: &Root) -> bool {
    match r {
        Root::Exact(x) => sign_at(s, x) == 0,
        Root::Between(lo, hi) => sign_at(s, lo) * sign_at(s, hi) < 0,
    }
}

fn multiplicity(parts: &[IntPoly], r: &Root) -> usize {
    parts
        .iter()
        .position(|s| s.deg() > 0 && has_root(s, r))
        .map_or(0, |e| e + 1)
}

/// Whether the roots of `child` (degree `n - 1`) interlace those of `parent`
/// (degree `n`), both counted with multiplicity and required to be real.
pub fn interlaces(parent: &IntPoly, child: &IntPoly) -> Result<bool> {
    let n = parent.deg();
    if parent.is_zero() || child.is_zero() || n == 0 || child.deg() + 1 != n {
        return Err(Error::DegreeMismatch {
            expected: n.saturating_sub(1),
            found: child.deg(),
        });
    }
    // Deflate the endpoint roots ±2, which are frequent in this setting.
    let mut p = parent.clone();
    let mut q = child.clone();
    let mut points: Vec<(Root, usize, usize)> = Vec::new();
    for r in [-2i64, 2] {
        let (mp, mq) = (p.root_multiplicity(r), q.root_multiplicity(r));
        let lin = IntPoly::linear_root(r);
        p = p.div_exact(&lin.pow(mp as u32)).expect("deflation is exact");
        q = q.div_exact(&lin.pow(mq as u32)).expect("deflation is exact");
        if mp + mq > 0 {
            points.push((Root::Exact(BigRational::from_integer(r.into())), mp, mq));
        }
    }
    let pq = &p * &q;
    let support = if pq.deg() == 0 {
        IntPoly::one()
    } else {
        pq.primitive()
            .div_exact(&pq.gcd(&pq.derivative()))
            .expect("gcd divides")
    };
    let (sp, sq) = (squarefree_decomposition(&p), squarefree_decomposition(&q));
    for mut root in isolate(&support) {
        // Keep isolating intervals clear of the deflated points so that
        // ordering by upper endpoint is exact.
        for r in [-2i64, 2] {
            root = exclude_point(&support, root, &BigRational::from_integer(r.into()));
        }
        let (mp, mq) = (multiplicity(&sp, &root), multiplicity(&sq, &root));
        points.push((root, mp, mq));
    }
    points.sort_by(|a, b| root_key(&a.0).cmp(&root_key(&b.0)));
    let total_p: usize = points.iter().map(|x| x.1).sum();
    let total_q: usize = points.iter().map(|x| x.2).sum();
    if total_p != n || total_q != n - 1 {
        return Ok(false);
    }
    let (mut below_p, mut below_q) = (0usize, 0usize);
    for (_, mp, mq) in &points {
        // N_p(< t) <= N_q(< t) + 1
        if below_p > below_q + 1 {
            return Ok(false);
        }
        below_p += mp;
        below_q += mq;
        // N_q(<= t) <= N_p(<= t)
        if below_q > below_p {
            return Ok(false);
        }
    }
    Ok(true)
}
