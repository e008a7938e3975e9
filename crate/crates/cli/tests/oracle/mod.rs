//! Brute-force reference computations, written without the library's
//! algebra, filtration or stability code.

use std::collections::BTreeMap;

use ncthick_core::charts::{ChartSpec, Entry};
use ncthick_core::Rat;

pub type Word = Vec<usize>;
pub type Poly = BTreeMap<Word, Rat>;

pub fn words(g: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..g).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn add_into(acc: &mut Poly, w: Word, c: Rat) {
    let e = acc.entry(w.clone()).or_insert_with(Rat::zero);
    *e += &c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

pub fn mul(a: &Poly, b: &Poly, max: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= max {
                let mut w = u.clone();
                w.extend(v);
                add_into(&mut out, w, x * y);
            }
        }
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        add_into(&mut out, w.clone(), -c.clone());
    }
    out
}

fn letter(x: usize) -> Poly {
    Poly::from([(vec![x], Rat::one())])
}

fn word_poly(w: &[usize]) -> Poly {
    Poly::from([(w.to_vec(), Rat::one())])
}

/// Right-normed brackets `[x_1, [x_2, … x_i]]` over all letter sequences.
fn brackets(g: usize, i: usize) -> Vec<Poly> {
    words(g, i)
        .into_iter()
        .map(|w| {
            let mut p = letter(w[i - 1]);
            for &x in w[..i - 1].iter().rev() {
                let l = letter(x);
                p = sub(&mul(&l, &p, i), &mul(&p, &l, i));
            }
            p
        })
        .filter(|p| !p.is_empty())
        .collect()
}

/// Spanning set of `F^k` in degrees `≤ n`: every product of factors, each a
/// letter (weight 0) or a bracket of `i ≥ 2` letters (weight `i - 1`), with
/// total weight at least `k`.
pub fn filtration_spanning(g: usize, k: usize, n: usize) -> Vec<Poly> {
    let factors: Vec<(usize, usize, Poly)> = (1..=n)
        .flat_map(|i| {
            let list = if i == 1 {
                (0..g).map(letter).collect()
            } else {
                brackets(g, i)
            };
            list.into_iter().map(move |p| (i, i - 1, p))
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize, Poly)> = vec![(0, 0, word_poly(&[]))];
    while let Some((len, weight, p)) = stack.pop() {
        if weight >= k && len > 0 {
            out.push(p.clone());
        }
        for (l, w, f) in &factors {
            if len + l <= n {
                stack.push((len + l, weight + w, mul(&p, f, n)));
            }
        }
    }
    out
}

/// `u · r · v` for all words with `|u| + |v|` small enough to matter.
pub fn ideal_spanning(g: usize, relations: &[Poly], n: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for r in relations {
        let low = r.keys().map(|w| w.len()).min().unwrap_or(0);
        for a in 0..=n.saturating_sub(low) {
            for b in 0..=n.saturating_sub(low) - a {
                for u in words(g, a) {
                    for v in words(g, b) {
                        let p = mul(&mul(&word_poly(&u), r, n), &word_poly(&v), n);
                        if !p.is_empty() {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Per-degree dimension of the span of the lowest-degree parts of `rows`'s
/// span, subtracted from the word count: dense row reduction with columns
/// ordered by degree.
pub fn graded_quotient_dims(g: usize, n: usize, rows: &[Poly]) -> Vec<usize> {
    let all: Vec<Word> = (0..=n).flat_map(|k| words(g, k)).collect();
    let index: BTreeMap<&Word, usize> = all.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|p| {
            let mut v = vec![Rat::zero(); all.len()];
            for (w, c) in p {
                v[index[w]] = c.clone();
            }
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..all.len() {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][col].recip();
        let pivot_row: Vec<Rat> = m[r].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(r + 1) {
            if !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        m[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    let mut dims: Vec<usize> = (0..=n).map(|k| g.pow(k as u32)).collect();
    for c in pivots {
        dims[all[c].len()] -= 1;
    }
    dims
}

/// Graded dimensions of `T / (relations + F^{d+1} + m^{n+1})`.
pub fn quotient_dims(g: usize, d: usize, n: usize, relations: &[Poly]) -> Vec<usize> {
    let mut rows = ideal_spanning(g, relations, n);
    rows.extend(filtration_spanning(g, d + 1, n));
    graded_quotient_dims(g, n, &rows)
}

type Matrix = (usize, usize, Vec<Poly>);

fn mat_mul(a: &Matrix, b: &Matrix, max: usize) -> Matrix {
    let (r, k, c) = (a.0, a.1, b.1);
    assert_eq!(k, b.0);
    let mut out = vec![Poly::new(); r * c];
    for i in 0..r {
        for j in 0..c {
            for l in 0..k {
                for (w, x) in mul(&a.2[i * k + l], &b.2[l * c + j], max) {
                    add_into(&mut out[i * c + j], w, x);
                }
            }
        }
    }
    (r, c, out)
}

/// Conditions for the chart's template matrices, with NC coordinates
/// `ξ_i` plugged in, to satisfy the quiver relations: every entry of every
/// relation evaluated on the templates, the deformation coordinates being
/// the template coordinates themselves (the base point is the origin).
pub fn deformation_equations(spec: &ChartSpec, n: usize) -> (usize, Vec<Poly>) {
    let coords = spec.coordinates();
    let arrows = spec.quiver.arrows();
    let mats: Vec<Matrix> = arrows
        .iter()
        .zip(&spec.templates)
        .map(|(a, t)| {
            let entries = t
                .iter()
                .map(|e| match e {
                    Entry::Constant(c) if c.is_zero() => Poly::new(),
                    Entry::Constant(c) => Poly::from([(Vec::new(), c.clone())]),
                    Entry::Coordinate(x) => letter(coords.iter().position(|y| y == x).unwrap()),
                })
                .collect();
            (spec.ranks[a.head], spec.ranks[a.tail], entries)
        })
        .collect();
    let mut eqs = Vec::new();
    for rel in spec.quiver.relations() {
        let (h, t) = (spec.ranks[rel.head], spec.ranks[rel.tail]);
        let mut total: Vec<Poly> = vec![Poly::new(); h * t];
        for (w, c) in rel.poly.terms() {
            let letters: Vec<usize> = w.letters().collect();
            let mut m = mats[letters[0]].clone();
            for &l in &letters[1..] {
                m = mat_mul(&m, &mats[l], n);
            }
            for (slot, p) in total.iter_mut().zip(&m.2) {
                for (word, x) in p {
                    add_into(slot, word.clone(), c * x);
                }
            }
        }
        eqs.extend(total.into_iter().filter(|p| !p.is_empty()));
    }
    (coords.len(), eqs)
}

type M2 = [[i64; 2]; 2];

fn apply(m: &M2, v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn parallel(u: [i64; 2], v: [i64; 2]) -> bool {
    u[0] * v[1] - u[1] * v[0] == 0
}

/// Searches all subrepresentations of the framed pair `(A, B, f)` with
/// dimension vector `(1, 2)` for one of nonpositive weight under
/// `θ = (-2, 1)`. Lines are spanned by primitive vectors with entries in
/// `[-3, 3]`, which contains every rational eigenline of a non-scalar
/// matrix with entries in `{-1, 0, 1}` as well as the line through `f`.
pub fn stable_by_search(a: &M2, b: &M2, f: [i64; 2]) -> bool {
    #[derive(Clone, Copy)]
    enum Space {
        Zero,
        Line([i64; 2]),
        All,
    }
    let mut spaces = vec![Space::Zero, Space::All];
    for p in -3i64..=3 {
        for q in -3i64..=3 {
            if (p, q) != (0, 0) && gcd(p, q) == 1 {
                spaces.push(Space::Line([p, q]));
            }
        }
    }
    let contains = |s: Space, v: [i64; 2]| match s {
        Space::Zero => v == [0, 0],
        Space::Line(l) => parallel(l, v),
        Space::All => true,
    };
    let dim = |s: Space| match s {
        Space::Zero => 0,
        Space::Line(_) => 1,
        Space::All => 2,
    };
    for wd in 0..=1i64 {
        for &ws in &spaces {
            if (wd, dim(ws)) == (0, 0) || (wd, dim(ws)) == (1, 2) {
                continue;
            }
            let closed = match ws {
                Space::Line(l) => contains(ws, apply(a, l)) && contains(ws, apply(b, l)),
                _ => true,
            } && (wd == 0 || contains(ws, f));
            if closed && -2 * wd + dim(ws) <= 0 {
                return false;
            }
        }
    }
    true
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `f` generates `Q^2` under `A` and `B`.
pub fn cyclic(a: &M2, b: &M2, f: [i64; 2]) -> bool {
    let vs = [f, apply(a, f), apply(b, f)];
    vs.iter().any(|u| vs.iter().any(|v| !parallel(*u, *v)))
}
