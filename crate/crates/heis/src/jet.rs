//! Truncated Taylor arithmetic in three variables, total degree <= 3.
//!
//! A [`Jet3`] stores the Taylor coefficients `c_a = (d^a f)/a!` of a scalar
//! function at a base point, for every multi-index `a = (i, j, k)` with
//! `i + j + k <= 3` in the coordinates `(x1, x2, t)`. Arithmetic on jets is
//! arithmetic on truncated Taylor series, so building a field expression out
//! of coordinate jets yields all its partial derivatives up to third order
//! in one evaluation, with no finite-difference noise.
//!
//! Truncation only ever flows upward: degree-3 coefficients of the inputs
//! never influence lower-degree coefficients of a product or composition.
//! [`Jet3::deriv`] exploits this; the derivative of an order-3 jet is exact
//! through order 2 and carries zeros in its top slots.

/// Number of monomials of total degree <= 3 in three variables.
pub const JET_LEN: usize = 20;

/// Multi-indices `(i, j, k)` for each coefficient slot, grouped by degree.
pub const MULTI_INDEX: [(u8, u8, u8); JET_LEN] = [
    (0, 0, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (2, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 2, 0),
    (0, 1, 1),
    (0, 0, 2),
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// Slot lookup by exponents; 255 marks degree > 3.
const IDX: [[[u8; 4]; 4]; 4] = build_idx();

const fn build_idx() -> [[[u8; 4]; 4]; 4] {
    let mut table = [[[255u8; 4]; 4]; 4];
    let mut n = 0;
    while n < JET_LEN {
        let (i, j, k) = MULTI_INDEX[n];
        table[i as usize][j as usize][k as usize] = n as u8;
        n += 1;
    }
    table
}

#[inline]
fn slot(i: u8, j: u8, k: u8) -> usize {
    IDX[i as usize][j as usize][k as usize] as usize
}

const fn factorial(n: u8) -> f64 {
    match n {
        0 | 1 => 1.0,
        2 => 2.0,
        3 => 6.0,
        _ => f64::NAN,
    }
}

/// Taylor coefficients of a scalar function at a point, through degree 3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub c: [f64; JET_LEN],
}

impl Jet3 {
    pub fn zero() -> Self {
        Jet3 { c: [0.0; JET_LEN] }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet3 { c }
    }

    /// Jet of the coordinate function itself: value plus a unit first-order
    /// coefficient in direction `dir` (0 = x1, 1 = x2, 2 = t).
    pub fn coord(value: f64, dir: usize) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = value;
        c[1 + dir] = 1.0;
        Jet3 { c }
    }

    /// Raw partial derivative `d^(i+j+k) f / dx1^i dx2^j dt^k`.
    #[inline]
    pub fn partial(&self, i: u8, j: u8, k: u8) -> f64 {
        self.c[slot(i, j, k)] * factorial(i) * factorial(j) * factorial(k)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn add(&self, other: &Jet3) -> Jet3 {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a += b;
        }
        Jet3 { c }
    }

    pub fn sub(&self, other: &Jet3) -> Jet3 {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a -= b;
        }
        Jet3 { c }
    }

    pub fn scale(&self, k: f64) -> Jet3 {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a *= k;
        }
        Jet3 { c }
    }

    pub fn neg(&self) -> Jet3 {
        self.scale(-1.0)
    }

    pub fn add_scalar(&self, k: f64) -> Jet3 {
        let mut c = self.c;
        c[0] += k;
        Jet3 { c }
    }

    /// Truncated product of two Taylor series.
    pub fn mul(&self, other: &Jet3) -> Jet3 {
        let mut out = [0.0; JET_LEN];
        for (na, &(ai, aj, ak)) in MULTI_INDEX.iter().enumerate() {
            let ca = self.c[na];
            if ca == 0.0 {
                continue;
            }
            for (nb, &(bi, bj, bk)) in MULTI_INDEX.iter().enumerate() {
                if (ai + bi) + (aj + bj) + (ak + bk) > 3 {
                    continue;
                }
                out[slot(ai + bi, aj + bj, ak + bk)] += ca * other.c[nb];
            }
        }
        Jet3 { c: out }
    }

    /// Composition with a univariate map `g`, given `g` and its first three
    /// derivatives at the jet's value.
    pub fn compose(&self, g0: f64, g1: f64, g2: f64, g3: f64) -> Jet3 {
        let mut delta = *self;
        delta.c[0] = 0.0;
        let d2 = delta.mul(&delta);
        let d3 = d2.mul(&delta);
        let mut out = Jet3::constant(g0);
        out = out.add(&delta.scale(g1));
        out = out.add(&d2.scale(g2 / 2.0));
        out = out.add(&d3.scale(g3 / 6.0));
        out
    }

    pub fn recip(&self) -> Jet3 {
        let v = self.c[0];
        self.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v))
    }

    pub fn div(&self, other: &Jet3) -> Jet3 {
        self.mul(&other.recip())
    }

    pub fn exp(&self) -> Jet3 {
        let e = self.c[0].exp();
        self.compose(e, e, e, e)
    }

    pub fn ln(&self) -> Jet3 {
        let v = self.c[0];
        self.compose(v.ln(), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    /// `self^p` for a positive-valued jet.
    pub fn powf(&self, p: f64) -> Jet3 {
        let v = self.c[0];
        self.compose(
            v.powf(p),
            p * v.powf(p - 1.0),
            p * (p - 1.0) * v.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * v.powf(p - 3.0),
        )
    }

    pub fn sqrt(&self) -> Jet3 {
        self.powf(0.5)
    }

    /// Integer power by repeated squaring on jets.
    pub fn powi(&self, mut n: u32) -> Jet3 {
        let mut base = *self;
        let mut acc = Jet3::constant(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Jet of the partial derivative in direction `dir`.
    ///
    /// Exact through degree 2; the degree-3 slots of the result are zero
    /// because they would need degree-4 data.
    pub fn deriv(&self, dir: usize) -> Jet3 {
        let mut out = [0.0; JET_LEN];
        for (n, &(i, j, k)) in MULTI_INDEX.iter().enumerate() {
            let (si, sj, sk) = match dir {
                0 => (i + 1, j, k),
                1 => (i, j + 1, k),
                _ => (i, j, k + 1),
            };
            if (si + sj + sk) > 3 {
                continue;
            }
            let bump = match dir {
                0 => si,
                1 => sj,
                _ => sk,
            };
            out[n] = self.c[slot(si, sj, sk)] * bump as f64;
        }
        Jet3 { c: out }
    }

    /// Evaluate the Taylor polynomial of `self` (coefficients at some base
    /// point) on three increment jets with zero constant term. Used to pull a
    /// jet back through a smooth coordinate change whose own jets are known.
    pub fn compose3(&self, dy1: &Jet3, dy2: &Jet3, dyt: &Jet3) -> Jet3 {
        debug_assert!(dy1.c[0] == 0.0 && dy2.c[0] == 0.0 && dyt.c[0] == 0.0);
        let one = Jet3::constant(1.0);
        let p1 = [one, *dy1, dy1.mul(dy1), dy1.mul(dy1).mul(dy1)];
        let p2 = [one, *dy2, dy2.mul(dy2), dy2.mul(dy2).mul(dy2)];
        let pt = [one, *dyt, dyt.mul(dyt), dyt.mul(dyt).mul(dyt)];
        let mut out = Jet3::zero();
        for (n, &(i, j, k)) in MULTI_INDEX.iter().enumerate() {
            let ca = self.c[n];
            if ca == 0.0 {
                continue;
            }
            let term = p1[i as usize].mul(&p2[j as usize]).mul(&pt[k as usize]);
            out = out.add(&term.scale(ca));
        }
        out
    }
}
