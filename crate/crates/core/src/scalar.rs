//! Coefficient rings shared by the polynomial code: `Q` and `Q(sqrt d)`.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::qfield::{fmt_rational, QuadElem, QuadField, Rational};

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Field: Copy + PartialEq + Debug + Send + Sync;

    fn field(&self) -> Self::Field;
    fn from_rational(f: Self::Field, r: Rational) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn signum(&self) -> i32;
    fn conjugate(&self) -> Self;
    fn to_rational(&self) -> Option<Rational>;
    fn scaled(&self, r: &Rational) -> Self;
    fn render(&self) -> String;

    fn zero_in(f: Self::Field) -> Self {
        Self::from_rational(f, Rational::zero())
    }

    fn one_in(f: Self::Field) -> Self {
        Self::from_rational(f, Rational::one())
    }

    fn is_unity(&self) -> bool {
        self.minus(&Self::one_in(self.field())).is_nil()
    }

    fn quotient(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
}

impl Scalar for Rational {
    type Field = ();

    fn field(&self) {}
    fn from_rational(_: (), r: Rational) -> Self {
        r
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn signum(&self) -> i32 {
        crate::qfield::rsign(self)
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
    fn render(&self) -> String {
        fmt_rational(self)
    }
    fn is_unity(&self) -> bool {
        One::is_one(self)
    }
}

impl Scalar for QuadElem {
    type Field = QuadField;

    fn field(&self) -> QuadField {
        QuadElem::field(self)
    }
    fn from_rational(f: QuadField, r: Rational) -> Self {
        f.rational(r)
    }
    fn is_nil(&self) -> bool {
        QuadElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn signum(&self) -> i32 {
        self.sign()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_unity(&self) -> bool {
        QuadElem::is_one(self)
    }
}
