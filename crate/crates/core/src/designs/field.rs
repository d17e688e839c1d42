use super::DesignError;

/// `GF(p^k)` with elements labelled `0..q`.
///
/// Label `i` is the polynomial whose coefficients are the base-`p` digits of
/// `i`, constant term first. The defining polynomial is the smallest monic
/// irreducible of degree `k` under the same integer encoding of its lower
/// coefficients.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: usize,
    k: usize,
    q: usize,
    irreducible: Vec<usize>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn poly_mod(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    // m monic
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for j in 0..dm {
                a[off + j] = (a[off + j] + (p - lead) * m[j]) % p;
            }
        }
    }
    a
}

fn divides_monic(f: &[usize], g: &[usize], p: usize) -> bool {
    poly_mod(g.to_vec(), f, p).iter().all(|&c| c == 0)
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d as u32) {
            let mut cand = digits(low, p, d);
            cand.push(1);
            if divides_monic(&cand, f, p) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self, DesignError> {
        if !is_prime(p) {
            return Err(DesignError::NotPrime(p));
        }
        if k == 0 {
            return Err(DesignError::Parameter("field extension degree must be positive".into()));
        }
        let (p, k) = (p as usize, k as usize);
        let q = p.pow(k as u32);
        let irreducible = (0..q)
            .map(|low| {
                let mut f = digits(low, p, k);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * p + d);
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u32;
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_mod(prod, &irreducible, p);
                mul[a * q + b] = encode(&r) as u32;
            }
        }
        let field = FiniteField { p, k, q, irreducible, add, mul };
        field.spot_check()?;
        Ok(field)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self, DesignError> {
        let (p, k) = prime_power(q).ok_or(DesignError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    fn spot_check(&self) -> Result<(), DesignError> {
        if self.q > 1 {
            let x = self.q - 1;
            if self.pow(x, self.q - 1) != 1 {
                return Err(DesignError::Parameter(format!(
                    "multiplicative group check failed for GF({})",
                    self.q
                )));
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn irreducible(&self) -> &[usize] {
        &self.irreducible
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.pow(a, self.q - 2))
    }

    /// Quadratic character: 0 at 0, 1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: usize) -> i64 {
        if a == 0 {
            0
        } else if self.p == 2 || self.pow(a, (self.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}
