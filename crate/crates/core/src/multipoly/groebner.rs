//! Buchberger's algorithm with the Gebauer–Möller pair criteria and
//! sugar-degree pair selection.

use std::cmp::Ordering;

use super::{lane, mono_divides, mono_lcm, MonomialOrder, MultipolyError, SparsePoly, DEG_SHIFT};
use crate::fields::primes::{inv_mod, mul_mod, neg_mod, sub_mod};

pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug)]
struct Term {
    key: u128,
    m: u128,
    c: u64,
}

/// Polynomial with terms in strictly descending order-key.
type Terms = Vec<Term>;

struct Ctx {
    p: u64,
    nvars: usize,
    order: MonomialOrder,
    unit_key: u128,
}

impl Ctx {
    fn new(p: u64, nvars: usize, order: &MonomialOrder) -> Self {
        Ctx {
            p,
            nvars,
            order: order.clone(),
            unit_key: order.key(0),
        }
    }

    fn import(&self, f: &SparsePoly) -> Terms {
        let mut t: Terms = f
            .packed_terms()
            .iter()
            .map(|&(m, c)| Term {
                key: self.order.key(m),
                m,
                c,
            })
            .collect();
        t.sort_unstable_by(|a, b| b.key.cmp(&a.key));
        t
    }

    fn export(&self, t: &Terms) -> SparsePoly {
        let mut v: Vec<(u128, u64)> = t.iter().map(|x| (x.m, x.c)).collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly::from_sorted(self.p, self.nvars, v)
    }

    fn make_monic(&self, t: &mut Terms) {
        if let Some(lead) = t.first() {
            if lead.c != 1 {
                let inv = inv_mod(lead.c, self.p).unwrap();
                for x in t.iter_mut() {
                    x.c = mul_mod(x.c, inv, self.p);
                }
            }
        }
    }

    /// `a - c * mono * b`, where `mono` has order key `mono_key`.
    fn sub_scaled(&self, a: &[Term], c: u64, mono: u128, mono_key: u128, b: &[Term]) -> Terms {
        let p = self.p;
        let shift = mono_key.wrapping_sub(self.unit_key);
        let neg_c = neg_mod(c, p);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bk = b[j].key.wrapping_add(shift);
            match a[i].key.cmp(&bk) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        key: bk,
                        m: b[j].m + mono,
                        c: mul_mod(b[j].c, neg_c, p),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = sub_mod(a[i].c, mul_mod(b[j].c, c, p), p);
                    if v != 0 {
                        out.push(Term { c: v, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(Term {
                key: t.key.wrapping_add(shift),
                m: t.m + mono,
                c: mul_mod(t.c, neg_c, p),
            });
        }
        out
    }

    /// Full normal form of `f` with respect to monic `basis`.
    fn normal_form(&self, mut f: Terms, basis: &[&Terms]) -> Terms {
        let mut rem: Terms = Vec::new();
        let mut start = 0;
        while start < f.len() {
            let lt = f[start];
            let divisor = basis.iter().find(|g| mono_divides(g[0].m, lt.m));
            match divisor {
                Some(g) => {
                    let mono = lt.m - g[0].m;
                    let mono_key = self.order.key(mono);
                    f = self.sub_scaled(&f[start + 1..], lt.c, mono, mono_key, &g[1..]);
                    start = 0;
                }
                None => {
                    rem.push(lt);
                    start += 1;
                }
            }
        }
        rem
    }

    fn spoly(&self, f: &Terms, g: &Terms) -> Terms {
        let l = mono_lcm(f[0].m, g[0].m, self.nvars);
        let tf = l - f[0].m;
        let tg = l - g[0].m;
        let kf = self.order.key(tf);
        let shift = kf.wrapping_sub(self.unit_key);
        let a: Terms = f[1..]
            .iter()
            .map(|t| Term {
                key: t.key.wrapping_add(shift),
                m: t.m + tf,
                c: t.c,
            })
            .collect();
        self.sub_scaled(&a, 1, tg, self.order.key(tg), &g[1..])
    }
}

fn degree(m: u128) -> u32 {
    (m >> DEG_SHIFT) as u32
}

fn coprime(a: u128, b: u128, nvars: usize) -> bool {
    (0..nvars).all(|i| lane(a, i) == 0 || lane(b, i) == 0)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: u128,
    lcm_key: u128,
    sugar: u32,
}

/// A reduced Groebner basis: monic, sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub polys: Vec<SparsePoly>,
    /// S-pairs reduced while computing the basis.
    pub pairs_processed: u64,
}

impl GroebnerBasis {
    fn ctx(&self) -> Option<Ctx> {
        let f = self.polys.first()?;
        Some(Ctx::new(f.characteristic(), f.nvars(), &self.order))
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].packed_terms() == [(0, 1)]
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &SparsePoly) -> SparsePoly {
        let Some(ctx) = self.ctx() else {
            return f.clone();
        };
        let basis: Vec<Terms> = self.polys.iter().map(|g| ctx.import(g)).collect();
        let refs: Vec<&Terms> = basis.iter().collect();
        ctx.export(&ctx.normal_form(ctx.import(f), &refs))
    }

    /// Remainder of `f_1 f_2 ⋯ f_r`, reducing after every multiplication so
    /// the full product is never expanded.
    pub fn reduce_product(&self, factors: &[SparsePoly]) -> SparsePoly {
        let Some(first) = factors.first() else {
            let f = self.polys.first().expect("empty basis");
            return self.reduce(&SparsePoly::constant(f.characteristic(), f.nvars(), 1));
        };
        factors[1..].iter().fold(self.reduce(first), |acc, f| self.reduce(&acc.mul(f)))
    }

    pub fn contains(&self, f: &SparsePoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// `true` when every S-polynomial of the basis reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let Some(ctx) = self.ctx() else {
            return true;
        };
        let basis: Vec<Terms> = self.polys.iter().map(|g| ctx.import(g)).collect();
        let refs: Vec<&Terms> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = ctx.spoly(&basis[i], &basis[j]);
                if !ctx.normal_form(s, &refs).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn gb_reduce(f: &SparsePoly, basis: &GroebnerBasis) -> SparsePoly {
    basis.reduce(f)
}

struct State<'a> {
    ctx: &'a Ctx,
    store: Vec<Terms>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn lm(&self, i: usize) -> u128 {
        self.store[i][0].m
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (mi, mj) = (self.lm(i), self.lm(j));
        let lcm = mono_lcm(mi, mj, self.ctx.nvars);
        let sugar = (self.sugar[i] + degree(lcm) - degree(mi)).max(self.sugar[j] + degree(lcm) - degree(mj));
        Pair {
            i,
            j,
            lcm,
            lcm_key: self.ctx.order.key(lcm),
            sugar,
        }
    }

    /// Gebauer–Möller update after adding polynomial `h` to the store.
    fn update(&mut self, h: usize) {
        let nv = self.ctx.nvars;
        let lh = self.lm(h);
        let mut c: Vec<Pair> = self.active.iter().map(|&g| self.make_pair(h, g)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(pair) = c.pop() {
            let keep = coprime(lh, self.lm(pair.j), nv)
                || (!c.iter().any(|o| mono_divides(o.lcm, pair.lcm))
                    && !d.iter().any(|o| mono_divides(o.lcm, pair.lcm)));
            if keep {
                d.push(pair);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|pr| !coprime(lh, self.lm(pr.j), nv)).collect();
        let mut kept: Vec<Pair> = Vec::with_capacity(self.pairs.len());
        for pr in self.pairs.drain(..) {
            let lcm_ih = mono_lcm(self.store[pr.i][0].m, lh, nv);
            let lcm_jh = mono_lcm(self.store[pr.j][0].m, lh, nv);
            let dominated = mono_divides(lh, pr.lcm) && lcm_ih != pr.lcm && lcm_jh != pr.lcm;
            if !dominated {
                kept.push(pr);
            }
        }
        kept.extend(e);
        self.pairs = kept;
        let store = &self.store;
        self.active.retain(|&g| !mono_divides(lh, store[g][0].m));
        self.active.push(h);
    }

    fn add(&mut self, mut t: Terms, sugar: u32) {
        self.ctx.make_monic(&mut t);
        self.store.push(t);
        self.sugar.push(sugar);
        self.update(self.store.len() - 1);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then(pa.lcm_key.cmp(&pb.lcm_key))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn reducers(&self) -> Vec<&Terms> {
        self.active.iter().map(|&g| &self.store[g]).collect()
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, or
/// `BudgetExceeded` once more than `budget` S-pairs have been reduced.
pub fn buchberger(gens: &[SparsePoly], order: &MonomialOrder, budget: u64) -> Result<GroebnerBasis, MultipolyError> {
    let first = gens
        .first()
        .ok_or_else(|| MultipolyError::Parse("empty generator list".into()))?;
    let (p, nvars) = (first.characteristic(), first.nvars());
    for g in gens {
        if g.characteristic() != p {
            return Err(MultipolyError::CharacteristicMismatch(p, g.characteristic()));
        }
        if g.nvars() != nvars {
            return Err(MultipolyError::ArityMismatch(nvars, g.nvars()));
        }
    }
    if order.nvars() != nvars {
        return Err(MultipolyError::ArityMismatch(nvars, order.nvars()));
    }
    let ctx = Ctx::new(p, nvars, order);
    let mut st = State {
        ctx: &ctx,
        store: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let t = ctx.normal_form(ctx.import(g), &st.reducers());
        if !t.is_empty() {
            let sugar = g.total_degree().unwrap_or(0);
            st.add(t, sugar);
        }
    }
    let mut processed = 0u64;
    while let Some(pair) = st.pop_pair() {
        processed += 1;
        if processed > budget {
            return Err(MultipolyError::BudgetExceeded(budget));
        }
        let s = ctx.spoly(&st.store[pair.i], &st.store[pair.j]);
        let h = ctx.normal_form(s, &st.reducers());
        if !h.is_empty() {
            st.add(h, pair.sugar);
        }
    }
    // interreduce the (already minimal) active set
    let mut basis: Vec<Terms> = st.active.iter().map(|&g| st.store[g].clone()).collect();
    for i in 0..basis.len() {
        let others: Vec<&Terms> = basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g).collect();
        let lead = basis[i][0];
        let tail = ctx.normal_form(basis[i][1..].to_vec(), &others);
        let mut reduced = vec![lead];
        reduced.extend(tail);
        basis[i] = reduced;
    }
    basis.sort_by(|a, b| a[0].key.cmp(&b[0].key));
    Ok(GroebnerBasis {
        order: order.clone(),
        polys: basis.iter().map(|t| ctx.export(t)).collect(),
        pairs_processed: processed,
    })
}
