#![allow(dead_code)]

use chordwig::{build_curve, ConvexCurve};

/// Double-double number: value = hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (hi, lo) = two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Dd { hi, lo }
    }

    pub fn div_f(self, d: f64) -> Dd {
        let q = self.hi / d;
        let r = self.add(Dd::from(q).mul(Dd::from(d)).neg());
        let (hi, lo) = two_sum(q, r.hi / d);
        Dd { hi, lo }
    }

    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const AIP0: Dd = Dd::new(-0.2588194037928068, 2.522243111610832e-17);

/// Maclaurin series of (Ai, Ai′) in double-double arithmetic.
pub fn airy_oracle(x: f64) -> (f64, f64) {
    let xd = Dd::from(x);
    let x3 = xd.mul(xd).mul(xd);
    // f = Σ x^{3k} / [(2·3)(5·6)...], g = Σ x^{3k+1} / [(3·4)(6·7)...]
    let (mut f, mut g) = (Dd::from(1.0), xd);
    let (mut tf, mut tg) = (Dd::from(1.0), xd);
    let (mut fp, mut gp) = (Dd::from(0.0), Dd::from(1.0));
    for k in 0..400 {
        let k3 = 3.0 * k as f64;
        let tf_new = tf.mul(x3).div_f((k3 + 2.0) * (k3 + 3.0));
        let tg_new = tg.mul(x3).div_f((k3 + 3.0) * (k3 + 4.0));
        // derivatives: d/dx x^{m} = m x^{m-1}
        fp = fp.add(tf_new.mul(Dd::from(k3 + 3.0)).div_f(x));
        gp = gp.add(tg_new.mul(Dd::from(k3 + 4.0)).div_f(x));
        f = f.add(tf_new);
        g = g.add(tg_new);
        tf = tf_new;
        tg = tg_new;
        if k > 4 && tf.abs_hi() + tg.abs_hi() < 1e-34 * (f.abs_hi() + g.abs_hi()) {
            break;
        }
    }
    let ai = AI0.mul(f).add(AIP0.mul(g));
    let aip = AI0.mul(fp).add(AIP0.mul(gp));
    (ai.to_f64(), aip.to_f64())
}

/// Σ (−x²/4)^k / (k!)² in double-double arithmetic.
pub fn j0_oracle(x: f64) -> f64 {
    let q = Dd::from(x).mul(Dd::from(x)).div_f(-4.0);
    let (mut sum, mut t) = (Dd::from(1.0), Dd::from(1.0));
    for k in 1..400 {
        let kf = k as f64;
        t = t.mul(q).div_f(kf * kf);
        sum = sum.add(t);
        if t.abs_hi() < 1e-34 {
            break;
        }
    }
    sum.to_f64()
}

/// Explicit Σ_k (−1)^k C(n,k) x^k / k! in double-double arithmetic.
pub fn laguerre_oracle(n: u32, x: f64) -> f64 {
    let mut sum = Dd::from(0.0);
    let mut t = Dd::from(1.0);
    for k in 0..=n {
        sum = sum.add(t);
        let kf = k as f64;
        // t_{k+1} = t_k · (−1)(n−k) x / (k+1)²
        t = t.mul(Dd::from(-(n as f64 - kf) * x)).div_f((kf + 1.0) * (kf + 1.0));
    }
    sum.to_f64()
}

pub fn circle(n: u32) -> ConvexCurve {
    build_curve("circle", &[], n, 1.0).unwrap()
}

pub fn cubic(beta: f64, n: u32) -> ConvexCurve {
    build_curve("cubic", &[beta], n, 1.0).unwrap()
}

pub fn quartic(beta: f64, n: u32) -> ConvexCurve {
    build_curve("quartic", &[beta], n, 1.0).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
