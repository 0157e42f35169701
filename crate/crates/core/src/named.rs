//! Named group constructors.
//!
//! Grammar: `T`, `C<n>`, `D<n>` (dihedral of order n), `Q8`, `Dic<n>`
//! (dicyclic of order n), `S<n>`, `A<n>`, `C<n>:C<k>` (semidirect product),
//! and direct products joined by `x`, e.g. `C2xC2` or `S3xC2`.
//!
//! Element numbering per family:
//! - `C<n>`: index k is a^k.
//! - `D<n>`, n = 2m: index k < m is r^k, index m + k is s·r^k.
//! - `Q8`: 1, -1, i, -i, j, -j, k, -k.
//! - `Dic<n>`, n = 4m: index k < 2m is a^k, index 2m + k is x·a^k, with
//!   x² = a^m and x·a·x⁻¹ = a⁻¹.
//! - `S<n>` / `A<n>`: permutations of 0..n in lexicographic order of their
//!   image lists (even ones only for `A<n>`); `p*q` applies q first.
//! - `C<n>:C<k>`: index i + n·j is a^i·b^j with b·a·b⁻¹ = a^r, where r is
//!   the residue of largest multiplicative order dividing k (least such r
//!   on ties), so `C7:C6` is the full holomorph of C7.
//! - `GxH`: index g·|H| + h is the pair (g, h); longer products associate
//!   to the left.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::limits;

pub fn construct_named(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::MalformedSpec(spec.into()));
    }
    let factors: Vec<&str> = spec.split('x').collect();
    if factors.len() > 1 {
        let mut acc = factor(factors[0], spec)?;
        for f in &factors[1..] {
            let next = factor(f, spec)?;
            let order = acc.order() * next.order();
            if order > limits::MAX_PRODUCT_ORDER {
                return Err(Error::OutOfRange {
                    what: "direct product order",
                    value: order,
                    limit: limits::MAX_PRODUCT_ORDER,
                });
            }
            acc = direct_product(&acc, &next);
        }
        return Ok(acc);
    }
    factor(spec, spec)
}

fn factor(f: &str, whole: &str) -> Result<FiniteGroup> {
    let bad = || Error::MalformedSpec(whole.to_string());
    if f == "T" {
        return Ok(FiniteGroup::trivial());
    }
    if f == "Q8" {
        return Ok(quaternion());
    }
    if let Some((left, right)) = f.split_once(':') {
        let n = left.strip_prefix('C').ok_or_else(bad).and_then(|s| number(s, whole))?;
        let k = right.strip_prefix('C').ok_or_else(bad).and_then(|s| number(s, whole))?;
        return metacyclic(n, k);
    }
    if let Some(rest) = f.strip_prefix("Dic") {
        return dicyclic(number(rest, whole)?);
    }
    let head = f.chars().next().ok_or_else(bad)?;
    let n = number(&f[head.len_utf8()..], whole)?;
    match head {
        'C' => cyclic(n),
        'D' => dihedral(n),
        'S' => symmetric(n),
        'A' => alternating(n),
        _ => Err(bad()),
    }
}

fn number(s: &str, whole: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedSpec(whole.to_string()));
    }
    s.parse().map_err(|_| Error::MalformedSpec(whole.to_string()))
}

fn check_order(what: &'static str, n: usize) -> Result<()> {
    if n == 0 || n > limits::MAX_TABLE_ORDER {
        return Err(Error::OutOfRange {
            what,
            value: n,
            limit: limits::MAX_TABLE_ORDER,
        });
    }
    Ok(())
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    check_order("cyclic order", n)?;
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    Ok(FiniteGroup::from_fn(n, Some(names), |i, j| (i + j) % n))
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::OddDihedral(n));
    }
    check_order("dihedral order", n)?;
    let m = n / 2;
    let names = (0..n)
        .map(|x| match (x < m, x % m) {
            (true, 0) => "e".to_string(),
            (true, k) => format!("r^{k}"),
            (false, 0) => "s".to_string(),
            (false, k) => format!("sr^{k}"),
        })
        .collect();
    Ok(FiniteGroup::from_fn(n, Some(names), |x, y| {
        let (xs, a) = (x >= m, x % m);
        let (ys, b) = (y >= m, y % m);
        match (xs, ys) {
            (false, false) => (a + b) % m,
            (false, true) => m + (b + m - a) % m,
            (true, false) => m + (a + b) % m,
            (true, true) => (b + m - a) % m,
        }
    }))
}

fn quaternion() -> FiniteGroup {
    // basis 0=1, 1=i, 2=j, 3=k; element index = 2*basis + sign
    const BASIS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_fn(8, Some(names), |x, y| {
        let (bx, sx) = (x / 2, x % 2 == 1);
        let (by, sy) = (y / 2, y % 2 == 1);
        let (b, s) = BASIS[bx][by];
        2 * b + usize::from(s ^ sx ^ sy)
    })
}

pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::MalformedSpec(format!("Dic{n}: order must be a multiple of 4, at least 8")));
    }
    check_order("dicyclic order", n)?;
    let m = n / 4;
    let c = 2 * m;
    let names = (0..n)
        .map(|x| match (x < c, x % c) {
            (true, 0) => "e".to_string(),
            (true, k) => format!("a^{k}"),
            (false, 0) => "x".to_string(),
            (false, k) => format!("xa^{k}"),
        })
        .collect();
    Ok(FiniteGroup::from_fn(n, Some(names), |x, y| {
        let (xs, p) = (x >= c, x % c);
        let (ys, q) = (y >= c, y % c);
        match (xs, ys) {
            (false, false) => (p + q) % c,
            (false, true) => c + (q + c - p) % c,
            (true, false) => c + (p + q) % c,
            (true, true) => (m + q + c - p) % c,
        }
    }))
}

pub fn metacyclic(n: usize, k: usize) -> Result<FiniteGroup> {
    check_order("semidirect order", n.saturating_mul(k))?;
    if n < 2 || k < 2 {
        return Err(Error::MalformedSpec(format!("C{n}:C{k}")));
    }
    let mult_order = |r: usize| (1..=k).find(|&e| pow_mod(r, e, n) == 1).unwrap_or(0);
    let r = (2..n)
        .filter(|&r| pow_mod(r, k, n) == 1)
        .max_by_key(|&r| (mult_order(r), std::cmp::Reverse(r)))
        .ok_or_else(|| Error::MalformedSpec(format!("C{n}:C{k}: no nontrivial action")))?;
    // powers[j] = r^j mod n
    let powers: Vec<usize> = (0..k).map(|j| pow_mod(r, j, n)).collect();
    let names = (0..n * k)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (i, 0) => format!("a^{i}"),
                (0, j) => format!("b^{j}"),
                (i, j) => format!("a^{i}b^{j}"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_fn(n * k, Some(names), |x, y| {
        let (i, j) = (x % n, x / n);
        let (p, q) = (y % n, y / n);
        // a^i b^j a^p b^q = a^(i + r^j p) b^(j + q)
        (i + powers[j] * p) % n + n * ((j + q) % k)
    }))
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * base % m;
    }
    acc
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn permutation_group(perms: Vec<Vec<usize>>) -> FiniteGroup {
    use std::collections::HashMap;
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let names = perms.iter().map(|p| cycle_name(p)).collect();
    let n = perms.first().map_or(0, Vec::len);
    FiniteGroup::from_fn(perms.len(), Some(names), |a, b| {
        let comp: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
        index[comp.as_slice()]
    })
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > limits::MAX_SYMMETRIC_DEGREE {
        return Err(Error::OutOfRange {
            what: "symmetric degree",
            value: n,
            limit: limits::MAX_SYMMETRIC_DEGREE,
        });
    }
    Ok(permutation_group(permutations(n)))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > limits::MAX_SYMMETRIC_DEGREE {
        return Err(Error::OutOfRange {
            what: "alternating degree",
            value: n,
            limit: limits::MAX_SYMMETRIC_DEGREE,
        });
    }
    Ok(permutation_group(permutations(n).into_iter().filter(|p| is_even(p)).collect()))
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let names = match (g.names(), h.names()) {
        (Some(a), Some(b)) => Some(
            (0..g.order() * m)
                .map(|x| format!("({},{})", a[x / m], b[x % m]))
                .collect(),
        ),
        _ => None,
    };
    FiniteGroup::from_fn(g.order() * m, names, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}
