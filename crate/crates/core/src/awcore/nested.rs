use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::eval::{central_difference, dq_eval_by};
use super::{dq_closure, QParam};
use crate::error::{Error, Result};
use crate::funcmodel::{MeroFn, Polynomial};
use crate::math::{cabs, powf, quantize, C64};

/// Default cap on the number of iterated applications of `D_q`.
pub const DEFAULT_MAX_DEPTH: usize = 6;

type MemoKey = (u32, (i64, i32), (i64, i32));

/// Per-evaluation cache of inner node values of the `2^k`-leaf tree.
struct Memo(BTreeMap<MemoKey, C64>);

impl Memo {
    fn new() -> Self {
        Self(BTreeMap::new())
    }
}

/// `D_q^depth` of `leaf` at `x` by recursive divided differences.
fn nested<F>(leaf: &F, depth: u32, x: C64, q: &QParam, memo: &mut Memo) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    if depth == 0 {
        return leaf(x);
    }
    let key = (depth, quantize(x.re), quantize(x.im));
    if let Some(v) = memo.0.get(&key) {
        return Ok(*v);
    }
    // the closures need the memo mutably; RefCell keeps the borrow local
    let v = {
        let cell = core::cell::RefCell::new(&mut *memo);
        let inner = |y: C64| nested(leaf, depth - 1, y, q, &mut **cell.borrow_mut());
        dq_eval_by(x, q, inner, |y| central_difference(y, inner))?
    };
    memo.0.insert(key, v);
    Ok(v)
}

fn scaled_radius(base: f64, q: &QParam, depth: u32) -> f64 {
    if base.is_finite() {
        base * powf(cabs(q.q()), depth as f64 / 2.0) * 0.9
    } else {
        f64::INFINITY
    }
}

/// `D_q^depth f` evaluated by nested divided differences, for functions
/// without an exact closure.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericDq {
    base: Box<MeroFn>,
    depth: u32,
    q: QParam,
}

impl NumericDq {
    pub fn new(base: MeroFn, depth: u32, q: QParam) -> Self {
        Self { base: Box::new(base), depth, q }
    }

    pub fn base(&self) -> &MeroFn {
        &self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn validity_radius(&self) -> f64 {
        scaled_radius(self.base.validity_radius(), &self.q, self.depth)
    }

    pub fn eval(&self, x: C64) -> Result<C64> {
        let leaf = |y: C64| self.base.value_at(y);
        nested(&leaf, self.depth, x, &self.q, &mut Memo::new())
    }
}

/// `(Σ_j w_j(x) · D_q^j g(x)) / g(x)` for a base function `g`.
///
/// Leaves are evaluated as `g(y)/g(x)`; for an exponential base this is
/// `exp(P(y) − P(x))`, which keeps the quotient finite where `g` itself
/// would overflow.
#[derive(Clone, Debug, PartialEq)]
pub struct DqQuotient {
    base: Box<MeroFn>,
    weights: Vec<Polynomial>,
    q: QParam,
}

impl DqQuotient {
    /// `weights[j]` multiplies `D_q^j g`.
    pub fn new(base: MeroFn, weights: Vec<Polynomial>, q: QParam) -> Self {
        Self { base: Box::new(base), weights, q }
    }

    pub fn base(&self) -> &MeroFn {
        &self.base
    }

    pub fn weights(&self) -> &[Polynomial] {
        &self.weights
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn max_depth(&self) -> u32 {
        self.weights.len().saturating_sub(1) as u32
    }

    pub fn validity_radius(&self) -> f64 {
        scaled_radius(self.base.validity_radius(), &self.q, self.max_depth())
    }

    /// Entire when the base is a nonvanishing entire function.
    pub fn is_entire(&self) -> bool {
        matches!(*self.base, MeroFn::ExpPoly(_))
    }

    pub fn eval(&self, x: C64) -> Result<C64> {
        let mut memo = Memo::new();
        let mut total = C64::new(0.0, 0.0);
        match &*self.base {
            MeroFn::ExpPoly(p) => {
                let px = p.eval(x);
                let leaf = |y: C64| Ok((p.eval(y) - px).exp());
                for (j, w) in self.weights.iter().enumerate() {
                    if !w.is_zero() {
                        total += w.eval(x) * nested(&leaf, j as u32, x, &self.q, &mut memo)?;
                    }
                }
            }
            base => {
                let gx = base.value_at(x)?;
                if gx == C64::new(0.0, 0.0) {
                    return Err(Error::pole(x));
                }
                let leaf = |y: C64| Ok(base.value_at(y)? / gx);
                for (j, w) in self.weights.iter().enumerate() {
                    if !w.is_zero() {
                        total += w.eval(x) * nested(&leaf, j as u32, x, &self.q, &mut memo)?;
                    }
                }
            }
        }
        Ok(total)
    }
}

/// `D_q^k f`: exact closures for polynomial and rational input, a nested
/// numeric wrapper otherwise. At most [`DEFAULT_MAX_DEPTH`] applications.
pub fn dq_iter(f: &MeroFn, k: usize, q: &QParam) -> Result<MeroFn> {
    dq_iter_with_limit(f, k, q, DEFAULT_MAX_DEPTH)
}

pub fn dq_iter_with_limit(f: &MeroFn, k: usize, q: &QParam, max_depth: usize) -> Result<MeroFn> {
    if k > max_depth {
        return Err(Error::DepthExceeded { depth: k, max: max_depth });
    }
    match f {
        MeroFn::Polynomial(_) | MeroFn::ZeroPole(_) | MeroFn::PartialFraction(_) => {
            let mut g = f.clone();
            for _ in 0..k {
                g = dq_closure(&g, q)?;
            }
            Ok(g)
        }
        _ if k == 0 => Ok(f.clone()),
        MeroFn::NumericDq(n) if n.q == *q => {
            let depth = n.depth as usize + k;
            if depth > max_depth {
                return Err(Error::DepthExceeded { depth, max: max_depth });
            }
            Ok(MeroFn::NumericDq(NumericDq::new((*n.base).clone(), depth as u32, *q)))
        }
        _ => Ok(MeroFn::NumericDq(NumericDq::new(f.clone(), k as u32, *q))),
    }
}
