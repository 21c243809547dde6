//! Arithmetic in the residue extension `F_{p^e}`, used to extend scalars
//! from `F_p((t))` to the unramified extension `F_{p^e}((t))`. Elements are
//! polynomials modulo a fixed irreducible polynomial; the regular
//! representation turns them into `e x e` matrices over `F_p`, so a matrix
//! over the extension becomes a blown-up matrix over the base field.

/// The extension field context: prime, degree and the modulus polynomial
/// (monic, coefficients of degrees `0..e`; the leading 1 is implicit).
#[derive(Clone, Debug)]
pub struct GfExt {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
}

/// An element: coefficient vector of length `e`.
pub type GfElem = Vec<u64>;

impl GfExt {
    /// Finds the lexicographically first monic irreducible polynomial of
    /// degree `e` over `F_p` by trial division.
    pub fn new(p: u64, e: usize) -> Self {
        assert!(e >= 1);
        if e == 1 {
            return GfExt { p, e, modulus: vec![0] };
        }
        let total = p.pow(e as u32);
        for code in 0..total {
            let mut modulus = Vec::with_capacity(e);
            let mut c = code;
            for _ in 0..e {
                modulus.push(c % p);
                c /= p;
            }
            if Self::is_irreducible(p, &modulus) {
                return GfExt { p, e, modulus };
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p");
    }

    fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
        let e = modulus.len();
        // constant term zero means divisible by x
        if modulus[0] == 0 {
            return false;
        }
        // trial division by every monic polynomial of degree 1..=e/2
        for d in 1..=e / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    div.push(c % p);
                    c /= p;
                }
                div.push(1);
                if Self::poly_rem_is_zero(p, modulus, &div) {
                    return false;
                }
            }
        }
        true
    }

    /// True when (x^e + modulus) is divisible by `div` over F_p.
    fn poly_rem_is_zero(p: u64, modulus: &[u64], div: &[u64]) -> bool {
        let e = modulus.len();
        let mut rem: Vec<u64> = modulus.to_vec();
        rem.push(1); // the implicit leading coefficient
        let dd = div.len() - 1;
        for k in (dd..=e).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            // div is monic
            for i in 0..=dd {
                let idx = k - dd + i;
                rem[idx] = (rem[idx] + (p - div[i] % p) * c) % p;
            }
        }
        rem.iter().all(|&c| c == 0)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn zero(&self) -> GfElem {
        vec![0; self.e]
    }

    pub fn one(&self) -> GfElem {
        let mut v = vec![0; self.e];
        v[0] = 1;
        v
    }

    pub fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let e = self.e;
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % self.p;
            }
        }
        // reduce x^k for k >= e using x^e = -modulus
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let idx = k - e + i;
                prod[idx] = (prod[idx] + (self.p - self.modulus[i]) * c) % self.p;
            }
        }
        prod.truncate(e);
        prod
    }

    /// Inverse of a nonzero element, by Fermat in the multiplicative group.
    pub fn inv(&self, a: &GfElem) -> GfElem {
        assert!(!self.is_zero(a), "inverse of zero in F_{{p^e}}");
        let order = self.p.pow(self.e as u32) - 2;
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = order;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Decodes `code` in `[0, p^e)` as an element (base-p digits).
    pub fn from_code(&self, mut code: u64) -> GfElem {
        let mut v = Vec::with_capacity(self.e);
        for _ in 0..self.e {
            v.push(code % self.p);
            code /= self.p;
        }
        v
    }

    /// Matrix of multiplication by `a` on the basis `1, x, .., x^(e-1)`,
    /// column-major by basis vector.
    pub fn regular_representation(&self, a: &GfElem) -> Vec<Vec<u64>> {
        let e = self.e;
        let mut cols = Vec::with_capacity(e);
        let mut xk = self.one();
        for _ in 0..e {
            cols.push(self.mul(a, &xk));
            // multiply xk by x
            let mut shifted = vec![0u64; e + 1];
            shifted[1..=e].copy_from_slice(&xk);
            let top = shifted[e];
            shifted[e] = 0;
            for i in 0..e {
                shifted[i] = (shifted[i] + (self.p - self.modulus[i]) * top) % self.p;
            }
            shifted.truncate(e);
            xk = shifted;
        }
        let mut rows = vec![vec![0u64; e]; e];
        for (j, col) in cols.iter().enumerate() {
            for (i, &c) in col.iter().enumerate() {
                rows[i][j] = c;
            }
        }
        rows
    }
}
