//! Worked examples with frozen results, each checked against the oracle and
//! the in-place implementation, plus a reduced oracle fuzz.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conv::conv_acc;
use crate::error::Result;
use crate::euclid::{aper, iper, oper, oper_inv, remainder_blockwise};
use crate::ff::{Elem, Field};
use crate::modmul::fullaxpyin;
use crate::mulbase::{acc_mul_full, acc_mul_short, quad_rem, quad_tri_mul_overplace, quad_tri_solve_overplace, Ctx, Dense};
use crate::reference::{
    pad, ref_convolution, ref_dense_circulant, ref_dense_matvec, ref_dense_solve, ref_dense_toeplitz, ref_divmod, ref_mul,
    ref_mulmod,
};
use crate::region::{SplitTarget, Snapshot};
use crate::toeplitz::{
    circulant_acc, rect_toeplitz_acc, square_toeplitz_acc, tri_toeplitz_mul_overplace, tri_toeplitz_solve_overplace,
    CirculantView, Orientation, ToeplitzView,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: &'static str,
    pub expected: Vec<Elem>,
    pub oracle: Vec<Elem>,
    pub got: Vec<Elem>,
}

impl CaseResult {
    pub fn ok(&self) -> bool {
        self.oracle == self.expected && self.got == self.expected
    }
}

fn ctx(p: u64) -> Result<Ctx<'static>> {
    Ok(Ctx::new(Field::new(p)?))
}

fn add(p: u64, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()
}

fn conv_case(name: &'static str, p: u64, f: Elem, a: &[Elem], b: &[Elem], c: &[Elem], expected: &[Elem]) -> Result<CaseResult> {
    let oracle = add(p, c, &ref_convolution(p, a, b, f, c.len()));
    let (mut a, mut b, mut got) = (a.to_vec(), b.to_vec(), c.to_vec());
    conv_acc(&ctx(p)?, &mut got, &mut a, &mut b, f)?;
    Ok(CaseResult { name, expected: expected.to_vec(), oracle, got })
}

fn tri_dense(a: &[Elem], o: Orientation) -> Vec<Elem> {
    let m = a.len();
    let mut d = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            d[i * m + j] = match o {
                Orientation::Lower if j <= i => a[m - 1 - (i - j)],
                Orientation::Upper if j >= i => a[j - i],
                _ => 0,
            };
        }
    }
    d
}

/// The table of worked examples.
pub fn worked_examples() -> Result<Vec<CaseResult>> {
    let mut out = vec![
        conv_case("conv p5 n2 f2", 5, 2, &[1, 2], &[3, 1], &[0, 0], &[2, 2])?,
        conv_case("conv p5 n2 f1", 5, 1, &[1, 2], &[3, 1], &[1, 1], &[1, 3])?,
        conv_case("conv p5 n3 f2", 5, 2, &[1, 0, 1], &[0, 1, 0], &[0, 0, 0], &[2, 1, 0])?,
        conv_case("short product p5 n2", 5, 0, &[1, 2], &[3, 1], &[0, 0], &[3, 2])?,
        conv_case("short product p2 n3", 2, 0, &[1, 1, 1], &[1, 0, 1], &[0, 0, 0], &[1, 1, 0])?,
    ];

    {
        let (mut a, mut b, mut got) = (vec![2, 3], vec![1, 4], vec![1, 1, 1]);
        let oracle = add(7, &[1, 1, 1], &ref_mul(7, &a, &b));
        acc_mul_full(&ctx(7)?, SplitTarget::whole(&mut got), &mut a, &mut b)?;
        out.push(CaseResult { name: "accumulated product p7", expected: vec![3, 5, 6], oracle, got });
        out.push(CaseResult { name: "oracle product p7", expected: vec![2, 4, 5], oracle: ref_mul(7, &[2, 3], &[1, 4]), got: ref_mul(7, &[2, 3], &[1, 4]) });
        let f5 = Field::new(5)?;
        let mut got = vec![0, 0];
        acc_mul_short(&f5, &mut got, &[1, 2], &[3, 1], 2)?;
        out.push(CaseResult { name: "truncated product p5", expected: vec![3, 2], oracle: pad(&ref_mul(5, &[1, 2], &[3, 1]), 2), got });

        let u = [1, 2, 0, 1];
        let mut got = vec![3, 4];
        quad_tri_mul_overplace(&f5, &Dense { n: 2, data: &u }, &mut got)?;
        out.push(CaseResult { name: "dense triangular multiply p5", expected: vec![1, 4], oracle: ref_dense_matvec(5, 2, &u, &[3, 4]), got });
        let mut got = vec![3, 4];
        quad_tri_solve_overplace(&f5, &Dense { n: 2, data: &u }, &mut got)?;
        out.push(CaseResult { name: "dense triangular solve p5", expected: vec![0, 4], oracle: ref_dense_solve(5, 2, &u, &[3, 4])?, got });
    }

    {
        let c7 = ctx(7)?;
        let c5 = ctx(5)?;
        let mut got = vec![0, 0];
        circulant_acc(&c7, &mut got, CirculantView { a: &mut [1, 3], f: 2 }, &mut [1, 1])?;
        out.push(CaseResult { name: "f-circulant p7 f2", expected: vec![4, 0], oracle: ref_dense_matvec(7, 2, &ref_dense_circulant(7, &[1, 3], 2), &[1, 1]), got });
        let mut got = vec![0, 0];
        circulant_acc(&c5, &mut got, CirculantView { a: &mut [2, 3], f: 0 }, &mut [1, 4])?;
        out.push(CaseResult { name: "0-circulant p5", expected: vec![4, 3], oracle: ref_dense_matvec(5, 2, &ref_dense_circulant(5, &[2, 3], 0), &[1, 4]), got });

        let mut got = vec![0, 0];
        square_toeplitz_acc(&c7, &mut got, &mut [1, 2, 3], &mut [1, 1])?;
        out.push(CaseResult { name: "square Toeplitz p7", expected: vec![5, 3], oracle: ref_dense_matvec(7, 2, &ref_dense_toeplitz(2, 2, &[1, 2, 3]), &[1, 1]), got });
        let mut got = vec![0, 0, 0];
        let mut v = vec![1, 2, 3, 4];
        rect_toeplitz_acc(&c5, &mut got, ToeplitzView::new(&mut v, 3, 2)?, &mut [1, 1])?;
        out.push(CaseResult { name: "rectangular Toeplitz 3x2 p5", expected: vec![2, 0, 3], oracle: ref_dense_matvec(5, 2, &ref_dense_toeplitz(3, 2, &[1, 2, 3, 4]), &[1, 1]), got });

        for (name, o, solve, expected) in [
            ("lower triangular Toeplitz multiply p5", Orientation::Lower, false, [1, 1]),
            ("upper triangular Toeplitz multiply p5", Orientation::Upper, false, [1, 4]),
            ("upper triangular Toeplitz solve p5", Orientation::Upper, true, [0, 4]),
        ] {
            let dense = tri_dense(&[1, 2], o);
            let oracle = if solve { ref_dense_solve(5, 2, &dense, &[3, 4])? } else { ref_dense_matvec(5, 2, &dense, &[3, 4]) };
            let mut got = vec![3, 4];
            if solve {
                tri_toeplitz_solve_overplace(&c5, &mut [1, 2], &mut got, o)?;
            } else {
                tri_toeplitz_mul_overplace(&c5, &mut [1, 2], &mut got, o)?;
            }
            out.push(CaseResult { name, expected: expected.to_vec(), oracle, got });
        }
    }

    {
        let c7 = ctx(7)?;
        let (a, mut b) = (vec![1, 2, 0, 1], vec![1, 0, 1]);
        let (q, r) = ref_divmod(7, &a, &b)?;
        out.push(CaseResult { name: "oracle division p7", expected: vec![0, 1, 1, 1], oracle: [q.clone(), r.clone()].concat(), got: [q.clone(), r.clone()].concat() });
        let rem = pad(&r, 2);
        let mut got = vec![0, 0];
        quad_rem(&c7.field, &mut got, &a, &b)?;
        out.push(CaseResult { name: "quadratic remainder p7", expected: vec![1, 1], oracle: rem.clone(), got });
        let mut got = vec![0, 0];
        remainder_blockwise(&c7.field, &mut got, &a, &b, &mut [0, 0])?;
        out.push(CaseResult { name: "blockwise remainder p7", expected: vec![1, 1], oracle: rem.clone(), got });
        let mut got = vec![0, 0];
        iper(&c7, &mut got, &a, &mut b)?;
        out.push(CaseResult { name: "in-place remainder p7", expected: vec![1, 1], oracle: rem.clone(), got });
        let mut got = a.clone();
        oper(&c7, &mut got, &mut b)?;
        out.push(CaseResult { name: "over-place quotient and remainder p7", expected: vec![1, 1, 0, 1], oracle: [rem.clone(), pad(&q, 2)].concat(), got });
        let mut got = vec![1, 0];
        aper(&c7, &mut got, &mut a.clone(), &mut b)?;
        out.push(CaseResult { name: "accumulated remainder p7", expected: vec![2, 1], oracle: add(7, &[1, 0], &rem), got });

        let c5 = ctx(5)?;
        let a5 = vec![3, 1, 2];
        let (q5, r5) = ref_divmod(5, &a5, &b)?;
        let mut got = a5.clone();
        oper(&c5, &mut got, &mut b)?;
        out.push(CaseResult { name: "over-place with partial block p5", expected: vec![1, 1, 2], oracle: [pad(&r5, 2), pad(&q5, 1)].concat(), got });
    }

    {
        for (name, p, a, c, b, expected) in [
            ("modular product p7", 7u64, vec![2, 1], vec![1, 2, 3], vec![1, 0, 1], vec![1, 2]),
            ("modular product, high degrees p5", 5, vec![1, 0, 0, 1], vec![0, 0, 0, 1], vec![1, 0, 1], vec![4, 4]),
            ("extension field product p7", 7, vec![3, 5], vec![2, 6], vec![1, 0, 1], vec![4, 0]),
        ] {
            let oracle = pad(&ref_mulmod(p, &a, &c, &b)?, b.len() - 1);
            let mut got = vec![0; b.len() - 1];
            fullaxpyin(&ctx(p)?, &mut got, &mut a.clone(), &mut c.clone(), &mut b.clone())?;
            out.push(CaseResult { name, expected, oracle, got });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Random instances of every operation family against the oracles, with
/// restoration checks.
pub fn fuzz(seed: u64, rounds: usize) -> Result<FuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = FuzzReport::default();
    let check = |ok: bool, what: String, rep: &mut FuzzReport| {
        rep.cases += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    for round in 0..rounds {
        let p = [2u64, 3, 5, 7, 13, 65521][round % 6];
        let c = ctx(p)?;
        let rv = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Elem> { (0..n).map(|_| rng.gen_range(0..p)).collect() };

        let n = rng.gen_range(1..64);
        let f = if round % 3 == 0 { 0 } else { rng.gen_range(0..p) };
        let (a0, b0, c0) = (rv(&mut rng, n), rv(&mut rng, n), rv(&mut rng, n));
        let (mut a, mut b, mut cc) = (a0.clone(), b0.clone(), c0.clone());
        conv_acc(&c, &mut cc, &mut a, &mut b, f)?;
        let ok = cc == add(p, &c0, &ref_convolution(p, &a0, &b0, f, n))
            && Snapshot::take(&[&a0, &b0]).assert_restored(&[&a, &b]).is_ok();
        check(ok, format!("conv p={p} n={n} f={f}"), &mut rep);

        let m = rng.gen_range(1..10);
        let nd = rng.gen_range(0..80);
        let a0 = rv(&mut rng, nd + 1);
        let mut b0 = rv(&mut rng, m + 1);
        b0[m] = rng.gen_range(1..p);
        let rem = pad(&ref_divmod(p, &a0, &b0)?.1, m);
        let mut b = b0.clone();
        let mut r = vec![0; m];
        iper(&c, &mut r, &a0, &mut b)?;
        let mut w = a0.clone();
        oper(&c, &mut w, &mut b)?;
        let layout_ok = a0.len() <= m || w[..m] == rem[..];
        oper_inv(&c, &mut w, &mut b)?;
        check(r == rem && layout_ok && w == a0 && b == b0, format!("euclid p={p} N={nd} M={m}"), &mut rep);

        let (l, nc) = (rng.gen_range(0..20), rng.gen_range(0..20));
        let (mut a, mut cc) = (rv(&mut rng, l + 1), rv(&mut rng, nc + 1));
        let (a0, c0) = (a.clone(), cc.clone());
        let mut r = vec![0; m];
        fullaxpyin(&c, &mut r, &mut a, &mut cc, &mut b)?;
        let want = pad(&ref_mulmod(p, &a0, &c0, &b0)?, m);
        check(r == want && a == a0 && cc == c0 && b == b0, format!("mulmod p={p} L={l} N={nc} M={m}"), &mut rep);
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub examples: Vec<CaseResult>,
    pub fuzz: FuzzReport,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.examples.iter().all(CaseResult::ok) && self.fuzz.failures.is_empty()
    }
}

pub fn run(seed: u64) -> Result<SelftestReport> {
    Ok(SelftestReport { examples: worked_examples()?, fuzz: fuzz(seed, 300)? })
}

#[cfg(test)]
mod tests {
    #[test]
    fn table_and_fuzz_pass() {
        let rep = super::run(5).unwrap();
        for c in &rep.examples {
            assert!(c.ok(), "{c:?}");
        }
        assert!(rep.fuzz.failures.is_empty(), "{:?}", rep.fuzz.failures);
        assert_eq!(rep.fuzz.cases, 900);
    }
}
