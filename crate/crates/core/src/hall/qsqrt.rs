//! Exact arithmetic in `ℚ(√q)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{fmt_rat, int, Rat};

/// `a + b√q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt {
    pub q: u32,
    pub a: Rat,
    pub b: Rat,
}

impl QSqrt {
    pub fn zero(q: u32) -> QSqrt {
        QSqrt::rational(q, Rat::zero())
    }

    pub fn one(q: u32) -> QSqrt {
        QSqrt::rational(q, Rat::one())
    }

    pub fn rational(q: u32, a: Rat) -> QSqrt {
        QSqrt { q, a, b: Rat::zero() }
    }

    pub fn from_int(q: u32, n: i64) -> QSqrt {
        QSqrt::rational(q, int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `v^k` with `v = √q`.
    pub fn v_pow(q: u32, k: i64) -> QSqrt {
        let qq = int(q.into());
        let half = k.div_euclid(2);
        let base = if half >= 0 {
            num_traits::pow(qq, half as usize)
        } else {
            Rat::one() / num_traits::pow(qq, (-half) as usize)
        };
        if k.rem_euclid(2) == 0 {
            QSqrt::rational(q, base)
        } else {
            QSqrt {
                q,
                a: Rat::zero(),
                b: base,
            }
        }
    }

    fn check(&self, other: &QSqrt) {
        assert_eq!(self.q, other.q, "values from different fields");
    }
}

impl Add for &QSqrt {
    type Output = QSqrt;
    fn add(self, o: &QSqrt) -> QSqrt {
        self.check(o);
        QSqrt {
            q: self.q,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QSqrt {
    type Output = QSqrt;
    fn sub(self, o: &QSqrt) -> QSqrt {
        self + &(-o)
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt {
            q: self.q,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Mul for &QSqrt {
    type Output = QSqrt;
    fn mul(self, o: &QSqrt) -> QSqrt {
        self.check(o);
        let q = int(self.q.into());
        QSqrt {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", fmt_rat(&self.b), self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", fmt_rat(&self.a), fmt_rat(&self.b), self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn square_root_squares_to_q() {
        let v = QSqrt::v_pow(3, 1);
        assert_eq!(&v * &v, QSqrt::from_int(3, 3));
        assert_eq!(QSqrt::v_pow(2, -2), QSqrt::rational(2, rat(1, 2)));
        let vi = QSqrt::v_pow(5, -1);
        assert_eq!(&vi * &QSqrt::v_pow(5, 1), QSqrt::one(5));
        assert_eq!(QSqrt::v_pow(2, -3).to_string(), "1/4*sqrt(2)");
    }
}
