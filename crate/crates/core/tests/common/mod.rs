//! Invariant checks shared by the property suites and the acceptance runner.
//!
//! Every check returns `Err` with a human-readable counterexample.
#![allow(dead_code)]

use std::sync::Arc;

use arithsim::additive::{check_additive_prefix, pgs, PrimeGenerator};
use arithsim::arithperm::{arith_perm_coprime, order_and_cofactor, subseq_pattern_with};
use arithsim::keane::{delta_t, keane_product, keane_word, Block};
use arithsim::numtheory::{discrete_log, factorize, is_primitive_root, mod_pow, padic_val, primitive_root, sieve};
use arithsim::seq::{detect_period, similar_up_to};
use arithsim::toeplitz::{compose, fill, power, toeplitz_word, toeplitz_word_from};
use arithsim::toeplitzadd::{is_additive_pattern, lambda_word};
use arithsim::{ghom_is_homomorphism, scalar_mul, xi, CyclicGroup, IndexBase, Pattern, PatternSymbol, Perm, Seq, Word};
use rand::Rng;

pub type Check = Result<(), String>;

pub fn z(k: u32) -> CyclicGroup {
    CyclicGroup::new(k).unwrap()
}

pub fn pat(k: u32, s: &str) -> Pattern {
    Pattern::parse(z(k), s).unwrap()
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Reads a table cyclically as a base-1 sequence.
pub fn table_seq(k: u32, table: Vec<u32>) -> Seq {
    let t: Arc<[u32]> = table.into();
    Seq::new(z(k), IndexBase::One, "table", move |n| t[((n - 1) % t.len() as u64) as usize])
}

/// x(n) = v[n−1] for n ≤ n0, then periodic with the given cycle.
pub fn eventually_periodic(k: u32, pre: Vec<u32>, cycle: Vec<u32>) -> Seq {
    let (pre, cycle): (Arc<[u32]>, Arc<[u32]>) = (pre.into(), cycle.into());
    Seq::new(z(k), IndexBase::One, "eventually periodic", move |n| {
        let i = (n - 1) as usize;
        if i < pre.len() {
            pre[i]
        } else {
            cycle[(i - pre.len()) % cycle.len()]
        }
    })
}

// ---- generators -----------------------------------------------------------

pub fn random_perm<R: Rng>(rng: &mut R, k: u32) -> Perm {
    let mut t: Vec<u32> = (0..k).collect();
    for i in (1..t.len()).rev() {
        t.swap(i, rng.random_range(0..=i));
    }
    Perm::from_table(z(k), t).unwrap()
}

pub fn random_rotation<R: Rng>(rng: &mut R, k: u32) -> Perm {
    Perm::rotation(z(k).elem(rng.random_range(0..k)).unwrap())
}

/// A pattern of the given length with a letter first; each later symbol is a gap with probability 1/3.
pub fn random_pattern<R: Rng>(rng: &mut R, k: u32, len: usize) -> Pattern {
    let syms = (0..len)
        .map(|i| {
            if i > 0 && rng.random_ratio(1, 3) {
                PatternSymbol::Gap(random_perm(rng, k))
            } else {
                PatternSymbol::Letter(z(k).elem(rng.random_range(0..k)).unwrap())
            }
        })
        .collect();
    Pattern::new(z(k), syms).unwrap()
}

/// A productive one-gap pattern; the gap is last when `gap_last`.
pub fn random_one_gap<R: Rng>(rng: &mut R, k: u32, len: usize, gap_last: bool) -> Pattern {
    let at = if gap_last { len - 1 } else { rng.random_range(1..len) };
    let syms = (0..len)
        .map(|i| {
            if i == at {
                PatternSymbol::Gap(random_perm(rng, k))
            } else {
                PatternSymbol::Letter(z(k).elem(rng.random_range(0..k)).unwrap())
            }
        })
        .collect();
    Pattern::new(z(k), syms).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, k: u32, len: usize) -> Word {
    Word::new(z(k), (0..len).map(|_| rng.random_range(0..k)).collect()).unwrap()
}

pub fn random_block<R: Rng>(rng: &mut R, k: u32, len: usize) -> Block {
    let mut letters: Vec<u32> = (0..len).map(|_| rng.random_range(0..k)).collect();
    letters[0] = 0;
    Block::new(Word::new(z(k), letters).unwrap()).unwrap()
}

/// A finite generator on the given primes with random values, at least one nonzero.
pub fn random_mu<R: Rng>(rng: &mut R, k: u32, primes: &[u64]) -> PrimeGenerator {
    loop {
        let entries: Vec<_> = primes.iter().map(|&p| (p, z(k).elem(rng.random_range(0..k)).unwrap())).collect();
        let mu = PrimeGenerator::finite(z(k), entries).unwrap();
        if !mu.is_zero() {
            return mu;
        }
    }
}

// ---- groupcore ------------------------------------------------------------

pub fn xi_lcm(n: u64, m: u64) -> Check {
    let l = num_lcm(n, m);
    ensure(n * xi(n, m) == l && m * xi(m, n) == l, || format!("xi({n},{m}) breaks n·ξ = lcm"))
}

fn num_lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

pub fn perm_laws(f: &Perm, g: &Perm, h: &Perm) -> Check {
    let id = Perm::identity(f.group());
    let lhs = f.compose(&g.compose(h).unwrap()).unwrap();
    let rhs = f.compose(g).unwrap().compose(h).unwrap();
    ensure(lhs == rhs, || format!("associativity fails for {f}, {g}, {h}"))?;
    ensure(f.compose(&id).unwrap() == *f && id.compose(f).unwrap() == *f, || format!("identity not neutral for {f}"))?;
    ensure(f.compose(&f.inverse()).unwrap().is_identity() && f.inverse().compose(f).unwrap().is_identity(), || {
        format!("inverse fails for {f}")
    })
}

pub fn rotation_sum(k: u32, d: u32, e: u32) -> Check {
    let g = z(k);
    let rd = Perm::rotation(g.elem(d).unwrap());
    let re = Perm::rotation(g.elem(e).unwrap());
    ensure(rd.compose(&re).unwrap() == Perm::rotation(g.elem((d + e) % k).unwrap()), || format!("r{d}∘r{e} ≠ r{} over ℤ_{k}", (d + e) % k))
}

pub fn ghom_law(n: u32, m: u32, c: u32) -> Check {
    if !(c as u64).is_multiple_of(xi(n as u64, m as u64)) {
        return Ok(());
    }
    let (gn, gm) = (z(n), z(m));
    let c = gm.elem(c).unwrap();
    ensure(ghom_is_homomorphism(n as u64, c), || format!("gate rejects ℤ_{n} → ℤ_{m}, c = {}", c.value()))?;
    for a in gn.elements() {
        for b in gn.elements() {
            let lhs = scalar_mul(a.add(b).unwrap().value() as u64, c);
            let rhs = scalar_mul(a.value() as u64, c).add(scalar_mul(b.value() as u64, c)).unwrap();
            ensure(lhs == rhs, || format!("({a:?}+{b:?})·c ≠ a·c + b·c for n={n}, m={m}"))?;
        }
    }
    Ok(())
}

// ---- numtheory ------------------------------------------------------------

pub fn odd_primes_upto(n: u64) -> Vec<u64> {
    sieve(n).into_iter().filter(|&p| p > 2).collect()
}

pub fn base_change(p: u64) -> Check {
    let roots: Vec<u64> = (2..p).filter(|&g| is_primitive_root(g, p).unwrap()).collect();
    for &g in &roots {
        for &h in &roots {
            let lgh = discrete_log(g, h, p).unwrap();
            for a in 1..p {
                let lhs = discrete_log(g, a, p).unwrap();
                let rhs = lgh * discrete_log(h, a, p).unwrap() % (p - 1);
                ensure(lhs == rhs, || format!("base change fails: p={p}, g={g}, h={h}, a={a}"))?;
            }
        }
    }
    Ok(())
}

pub fn fermat(p: u64) -> Check {
    (1..p).try_for_each(|a| ensure(mod_pow(a, p - 1, p) == 1, || format!("{a}^({p}−1) ≢ 1 mod {p}")))
}

pub fn half_power(p: u64) -> Check {
    let g = primitive_root(p).unwrap();
    ensure(mod_pow(g, (p - 1) / 2, p) == p - 1, || format!("{g}^(({p}−1)/2) ≢ −1 mod {p}"))
}

pub fn factor_roundtrip(n: u64) -> Check {
    let f = factorize(n);
    ensure(f.product() == n as u128, || format!("factorization of {n} multiplies to {}", f.product()))?;
    let by_val: u128 = f.primes().map(|p| (p as u128).pow(padic_val(p, n).unwrap())).product();
    ensure(by_val == n as u128, || format!("Π p^ν_p({n}) = {by_val}"))
}

// ---- seqcore --------------------------------------------------------------

pub fn similarity_equivalence(s: &Seq, t: &Seq, u: &Seq, depth: u64) -> Check {
    let k = s.group().order();
    let refl = similar_up_to(s, s, depth).unwrap();
    ensure(refl.constant() == Some(0), || "σ is not similar to itself with constant 0".into())?;
    let st = similar_up_to(s, t, depth).unwrap();
    let ts = similar_up_to(t, s, depth).unwrap();
    ensure(st.is_similar() == ts.is_similar(), || "similarity is not symmetric".into())?;
    if let (Some(c1), Some(c2)) = (st.constant(), ts.constant()) {
        ensure((c1 + c2) % k == 0, || format!("symmetric constants {c1}, {c2} do not cancel"))?;
    }
    let tu = similar_up_to(t, u, depth).unwrap();
    if let (Some(c1), Some(c2)) = (st.constant(), tu.constant()) {
        let su = similar_up_to(s, u, depth).unwrap();
        ensure(su.constant() == Some((c1 + c2) % k), || {
            format!("transitivity: expected constant {}, got {:?}", (c1 + c2) % k, su.outcome)
        })?;
    }
    Ok(())
}

/// Composing two similar progressions gives a similar progression.
pub fn progression_closure(sigma: &Seq, bound: u64, depth: u64) -> Check {
    let mut pairs = Vec::new();
    for a in 1..=bound {
        for b in 1..=bound {
            if similar_up_to(&sigma.subseq(a, b).unwrap(), sigma, depth).unwrap().is_similar() {
                pairs.push((a, b));
            }
        }
    }
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            let (a2, b2) = (a + b * (c - 1), b * d);
            let n = (depth / (b * d)).min((depth - c) / d + 1);
            let v = similar_up_to(&sigma.subseq(a2, b2).unwrap(), sigma, n).unwrap();
            ensure(v.is_similar(), || format!("({a},{b}) and ({c},{d}) similar but ({a2},{b2}) is not at depth {n}"))?;
        }
    }
    Ok(())
}

/// A similar shift σ_{a,1} forces a period within the same prefix.
pub fn shift_forces_period(sigma: &Seq, a: u64, depth: u64) -> Check {
    if !similar_up_to(&sigma.subseq(a, 1).unwrap(), sigma, depth).unwrap().is_similar() {
        return Ok(());
    }
    ensure(detect_period(sigma, depth).is_some(), || format!("σ_({a},1) ~ σ but no period found at depth {depth}"))
}

/// Subsequences of eventually periodic sequences are eventually periodic.
pub fn periodic_subseq(pre: Vec<u32>, cycle: Vec<u32>, a: u64, b: u64, depth: u64) -> Check {
    let t = cycle.len() as u64;
    let sigma = eventually_periodic(4, pre, cycle);
    let sub = sigma.subseq(a, b).unwrap();
    match detect_period(&sub, depth) {
        Some((_, period)) => ensure(t.is_multiple_of(period), || format!("period {period} of σ_({a},{b}) does not divide {t}")),
        None => Err(format!("no period for σ_({a},{b}) at depth {depth}")),
    }
}

// ---- additive -------------------------------------------------------------

pub fn pgs_sum(m1: &PrimeGenerator, m2: &PrimeGenerator, depth: u64) -> Check {
    let lhs = pgs(&m1.add(m2).unwrap()).prefix(depth);
    let rhs = pgs(m1).add(&pgs(m2)).unwrap().prefix(depth);
    ensure(lhs == rhs, || format!("pgs({m1}+{m2}) ≠ pgs({m1})+pgs({m2})"))
}

pub fn additive_not_periodic(mu: &PrimeGenerator, depth: u64) -> Check {
    ensure(detect_period(&pgs(mu), depth).is_none(), || format!("pgs({mu}) reported periodic at depth {depth}"))
}

pub fn scale_invariance(mu: &PrimeGenerator, k: u64, depth: u64) -> Check {
    let s = pgs(mu);
    let v = similar_up_to(&s.subseq(k, k).unwrap(), &s, depth).unwrap();
    ensure(v.constant() == Some(s.value_at(k)), || format!("pgs({mu}) restricted to multiples of {k}: {:?}", v.outcome))
}

// ---- toeplitz -------------------------------------------------------------

pub fn compose_assoc(p: &Pattern, q: &Pattern, r: &Pattern) -> Check {
    let lhs = compose(&compose(p, q).unwrap(), r).unwrap();
    let rhs = compose(p, &compose(q, r).unwrap()).unwrap();
    ensure(lhs == rhs, || format!("({p}∘{q})∘{r} ≠ {p}∘({q}∘{r})"))?;
    let id = Pattern::identity(p.group());
    ensure(compose(&id, p).unwrap() == *p, || format!("?∘{p} ≠ {p}"))?;
    let right = compose(p, &id).unwrap();
    ensure(p.gap_count() == 0 || right == *p, || format!("{p}∘? = {right}"))
}

/// |P∘Q| = |P|·ξ(#P, |Q|) and #(P∘Q) = #Q·ξ(|Q|, #P) when P has gaps.
pub fn composition_sizes(p: &Pattern, q: &Pattern) -> Check {
    let pq = compose(p, q).unwrap();
    if p.gap_count() == 0 {
        return ensure(pq == *p, || format!("{p} has no gaps but {p}∘{q} = {pq}"));
    }
    let (n, m) = (p.gap_count() as u64, q.len() as u64);
    ensure(pq.len() as u64 == p.len() as u64 * xi(n, m), || format!("|{p}∘{q}| = {}", pq.len()))?;
    ensure(pq.gap_count() as u64 == q.gap_count() as u64 * xi(m, n), || format!("#({p}∘{q}) = {}", pq.gap_count()))
}

/// T_0 = ?^ω, T_{k+1} = Fill(P^ω, T_k), truncated.
pub fn generation(p: &Pattern, k: usize, len: usize) -> Vec<PatternSymbol> {
    let mut cur = vec![PatternSymbol::Gap(Perm::identity(p.group())); len];
    for _ in 0..k {
        let periodic: Vec<PatternSymbol> = p.symbols().iter().cycle().take(len).cloned().collect();
        let gaps = periodic.iter().filter(|s| s.is_gap()).count();
        cur = fill(&periodic, &cur[..gaps]).unwrap();
    }
    cur
}

pub fn power_is_generation(p: &Pattern, n: u64, len: usize) -> Check {
    let pw = power(p, n).unwrap();
    let lhs: Vec<PatternSymbol> = pw.symbols().iter().cycle().take(len).cloned().collect();
    ensure(lhs == generation(p, n as usize, len), || format!("power({p},{n}) differs from generation {n}"))
}

pub fn fixed_point(p: &Pattern, len: usize) -> Check {
    let t = toeplitz_word(p).unwrap().prefix(len as u64);
    let periodic: Vec<PatternSymbol> = p.symbols().iter().cycle().take(len).cloned().collect();
    let gaps = periodic.iter().filter(|s| s.is_gap()).count();
    let arg: Vec<PatternSymbol> = t[..gaps].iter().map(|&v| PatternSymbol::Letter(p.group().elem(v).unwrap())).collect();
    let filled: Vec<u32> = fill(&periodic, &arg).unwrap().iter().map(|s| s.as_letter().unwrap()).collect();
    ensure(filled == t, || format!("Fill({p}^ω, T) ≠ T"))
}

// ---- toeplitzadd ----------------------------------------------------------

/// All productive one-gap patterns of the given length over ℤ_k with rotation gaps.
pub fn rotation_patterns(k: u32, len: usize) -> Vec<Pattern> {
    let mut out = Vec::new();
    let letters = len - 1;
    for code in 0..(k as u64).pow(letters as u32) {
        let mut c = code;
        let vals: Vec<u32> = (0..letters)
            .map(|_| {
                let v = (c % k as u64) as u32;
                c /= k as u64;
                v
            })
            .collect();
        for gap_at in 1..len {
            for d in 0..k {
                let mut syms: Vec<PatternSymbol> = vals.iter().map(|&v| PatternSymbol::Letter(z(k).elem(v).unwrap())).collect();
                syms.insert(gap_at, PatternSymbol::Gap(Perm::rotation(z(k).elem(d).unwrap())));
                out.push(Pattern::new(z(k), syms).unwrap());
            }
        }
    }
    out
}

pub fn classification_agrees(p: &Pattern, depth: u64) -> Check {
    let cert = is_additive_pattern(p).unwrap();
    let prefix = check_additive_prefix(&toeplitz_word(p).unwrap(), depth).unwrap();
    ensure(cert.is_member() == prefix.is_none(), || format!("{p}: classified {:?}, prefix check {prefix:?}", cert.evidence))
}

pub fn lambda_base_change() -> Check {
    let (l3, l5) = (lambda_word(7, 3).unwrap(), lambda_word(7, 5).unwrap());
    let k = discrete_log(3, 5, 7).unwrap() as u32;
    for i in 0..6 {
        ensure(l3.letters()[i] == k * l5.letters()[i] % 6, || format!("λ_7,3({}) ≢ log_3(5)·λ_7,5({})", i + 1, i + 1))?;
    }
    Ok(())
}

// ---- arithperm ------------------------------------------------------------

pub fn direct_subseq(p: &Pattern, a: u64, b: u64, depth: u64) -> Vec<u32> {
    let t = toeplitz_word(p).unwrap().prefix(a + b * (depth - 1));
    (0..depth).map(|n| t[(a + b * n - 1) as usize]).collect()
}

pub fn coprime_permutation(p: &Pattern, a: u64, b: u64, depth: u64) -> Check {
    let r = p.len() as u128;
    let (m, c) = order_and_cofactor(r, b as u128).unwrap();
    ensure(c * b as u128 == r.pow(m) - 1, || format!("c·b ≠ r^m − 1 for r={r}, b={b}"))?;
    let q = arith_perm_coprime(p, a, b).map_err(|e| format!("{p} ({a},{b}): {e}"))?;
    let (pos, f) = q.single_gap().map_err(|e| e.to_string())?;
    ensure(pos as u128 == a as u128 * c + 1, || format!("gap of {p}_({a},{b}) at {pos}, expected {}", a as u128 * c + 1))?;
    ensure(*f == p.single_gap().unwrap().1.pow(m as u64), || format!("gap of {p}_({a},{b}) is not f^{m}"))?;
    ensure(toeplitz_word(&q).unwrap().prefix(depth) == direct_subseq(p, a, b, depth), || format!("T({q}) ≠ T({p})_({a},{b})"))
}

pub fn subseq_end_to_end(p: &Pattern, a: u64, b: u64, depth: u64) -> Check {
    let (out, trace) = subseq_pattern_with(p, a, b, 0).map_err(|e| format!("{p} ({a},{b}): {e}"))?;
    let got = toeplitz_word_from(Arc::new(out.clone()), "").unwrap().prefix(depth);
    ensure(got == direct_subseq(p, a, b, depth), || format!("subseq_pattern({p},{a},{b}) disagrees with the subsequence"))?;
    let replayed = trace.replay(p).map_err(|e| format!("{p} ({a},{b}) replay: {e}"))?;
    ensure(replayed == out, || format!("{p} ({a},{b}): replay differs"))
}

// ---- keane ----------------------------------------------------------------

pub fn keane_monoid(u: &Word, v: &Word, w: &Word) -> Check {
    let lhs = keane_product(&keane_product(u, v).unwrap(), w).unwrap();
    let rhs = keane_product(u, &keane_product(v, w).unwrap()).unwrap();
    ensure(lhs == rhs, || format!("({u}×{v})×{w} ≠ {u}×({v}×{w})"))?;
    let zero = Word::new(u.group(), vec![0]).unwrap();
    ensure(keane_product(u, &zero).unwrap() == *u && keane_product(&zero, u).unwrap() == *u, || format!("0 is not neutral for {u}"))
}

pub fn keane_recurrence(u: &Block, n_max: u64) -> Check {
    let k = u.len() as u64;
    let g = u.group();
    let w = keane_word(u).unwrap();
    for n in 0..=n_max {
        for i in 0..k {
            let lhs = w.value_at(n * k + i);
            let rhs = (w.value_at(n) + u.word().letters()[i as usize]) % g.order();
            ensure(lhs == rhs, || format!("K({u})({n}·{k}+{i}) ≠ K({u})({n}) + u_{i}"))?;
        }
    }
    Ok(())
}

pub fn keane_iteration(u: &Block) -> Check {
    let mut it = u.word().clone();
    for _ in 0..2 {
        it = keane_product(u.word(), &it).unwrap();
    }
    let w = keane_word(u).unwrap();
    let bulk = w.prefix(it.len() as u64);
    let pointwise: Vec<u32> = (0..it.len() as u64).map(|n| w.value_at(n)).collect();
    ensure(bulk == it.letters() && pointwise == it.letters(), || format!("K({u}) disagrees with {u}×{u}×{u}"))
}

pub fn delta_hom(u: &Block, v: &Block) -> Check {
    let lhs = delta_t(&u.product(v).unwrap()).unwrap();
    let rhs = compose(&delta_t(u).unwrap(), &delta_t(v).unwrap()).unwrap();
    ensure(lhs == rhs, || format!("Δ_T({u}×{v}) = {lhs} but Δ_T({u})∘Δ_T({v}) = {rhs}"))
}

pub fn delta_word(u: &Block, depth: u64) -> Check {
    let d = keane_word(u).unwrap().diff().prefix(depth);
    let t = toeplitz_word(&delta_t(u).unwrap()).unwrap().prefix(depth);
    ensure(d == t, || format!("Δ(K({u})) ≠ T(Δ_T({u}))"))
}

pub fn keane_powers_similar(u: &Block, n_max: u32, depth: u64) -> Check {
    let w = keane_word(u).unwrap();
    let k = u.len() as u64;
    for n in 0..=n_max {
        let b = k.pow(n);
        for i in 0..b {
            let v = similar_up_to(&w.subseq(i, b).unwrap(), &w, depth).unwrap();
            ensure(v.is_similar(), || format!("K({u})_({i},{b}) not similar to K({u})"))?;
        }
    }
    Ok(())
}

/// K(u) shifted to base 1, so that additivity reads σ(nm−1) = σ(n−1) + σ(m−1).
pub fn keane_shifted(u: &Block) -> Seq {
    let w = keane_word(u).unwrap();
    Seq::new(u.group(), IndexBase::One, "shifted keane", move |n| w.value_at(n - 1))
}

/// Every block of length 2..=max_len over ℤ_k.
pub fn all_blocks(k: u32, max_len: usize) -> Vec<Block> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for code in 0..(k as u64).pow(len as u32 - 1) {
            let mut c = code;
            let mut letters = vec![0];
            for _ in 1..len {
                letters.push((c % k as u64) as u32);
                c /= k as u64;
            }
            out.push(Block::new(Word::new(z(k), letters).unwrap()).unwrap());
        }
    }
    out
}
