#include "ramsey/rational.hpp"

#include <cmath>
#include <sstream>

namespace ramsey {

Rational rat(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error("empty rational literal");
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw Error("bad rational literal: " + text);
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw Error("bad rational literal: " + text);
  q.canonicalize();
  if (q.get_den() == 0) throw Error("rational with zero denominator: " + text);
  return q;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

long floor_rat(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!z.fits_slong_p()) throw Error("rational floor out of range");
  return z.get_si();
}

long ceil_rat(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!z.fits_slong_p()) throw Error("rational ceil out of range");
  return z.get_si();
}

long floor_even(const Rational& x) {
  if (x < 0) throw PreconditionError("floor_even requires x >= 0");
  long f = floor_rat(x);
  return (f % 2 == 0) ? f : f - 1;
}

long floor_odd(const Rational& x) {
  if (x < 1) throw PreconditionError("floor_odd requires x >= 1");
  long f = floor_rat(x);
  return (f % 2 != 0) ? f : f - 1;
}

Rational pow_rat(const Rational& base, unsigned int exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exp);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Alg Alg::rooted(const Rational& r, const Rational& s, const Rational& x,
                int root) {
  if (root < 1) throw Error("Alg root must be >= 1");
  if (x < 0) throw Error("Alg radicand must be >= 0");
  Alg a;
  a.r_ = r;
  a.s_ = s;
  a.x_ = x;
  a.root_ = root;
  return a;
}

int Alg::compare(const Rational& q) const {
  Rational t = q - r_;
  if (is_rational()) {
    Rational v = (root_ == 1) ? Rational(s_ * x_) : Rational(0);
    return cmp(v, t) == 0 ? 0 : (v < t ? -1 : 1);
  }
  int sign_s = sgn(s_);
  int sign_t = sgn(t);
  if (sign_s > 0) {
    if (sign_t <= 0) return sign_t == 0 ? 1 : 1;
    Rational lhs = pow_rat(s_, root_) * x_;
    Rational rhs = pow_rat(t, root_);
    int c = cmp(lhs, rhs);
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  // sign_s < 0: value = r - |s| x^(1/root)
  if (sign_t >= 0) return sign_t == 0 ? -1 : -1;
  Rational lhs = pow_rat(-s_, root_) * x_;
  Rational rhs = pow_rat(-t, root_);
  // value - q = |t| - |s| x^(1/root); positive iff |s|^d x < |t|^d
  int c = cmp(lhs, rhs);
  return c == 0 ? 0 : (c < 0 ? 1 : -1);
}

Alg Alg::operator+(const Rational& q) const {
  Alg a = *this;
  a.r_ += q;
  return a;
}

Alg Alg::operator-(const Rational& q) const {
  Alg a = *this;
  a.r_ -= q;
  return a;
}

Alg Alg::operator*(const Rational& q) const {
  Alg a = *this;
  a.r_ *= q;
  a.s_ *= q;
  return a;
}

Alg Alg::negated() const {
  Alg a = *this;
  a.r_ = -a.r_;
  a.s_ = -a.s_;
  return a;
}

double Alg::approx() const {
  double v = r_.get_d();
  if (!is_rational())
    v += s_.get_d() * std::pow(x_.get_d(), 1.0 / static_cast<double>(root_));
  else if (root_ == 1)
    v += s_.get_d() * x_.get_d();
  return v;
}

std::string Alg::str() const {
  if (is_rational() && root_ == 1 && s_ != 0) {
    Rational v = r_ + s_ * x_;
    return rat_str(v);
  }
  if (is_rational()) return rat_str(r_);
  std::ostringstream os;
  os << rat_str(r_) << " + " << rat_str(s_) << "*(" << rat_str(x_) << ")^(1/"
     << root_ << ")";
  return os.str();
}

namespace {

constexpr long kAlgSaturation = 1L << 62;

long clamp_to_long(const mpz_class& z) {
  if (z > kAlgSaturation) return kAlgSaturation;
  if (z < -kAlgSaturation) return -kAlgSaturation;
  return z.get_si();
}

// Exact integer bracket of the root term s * x^(1/d): returns floor of its
// absolute value via an integer d-th root, so the final floor/ceil only has
// to probe a couple of candidates with exact comparisons.
mpz_class root_term_floor_abs(const Alg& v) {
  // |s|^d * x as an exact rational
  Rational sd = pow_rat(abs(v.scale()), v.root());
  Rational inside = sd * v.radicand();
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), inside.get_num().get_mpz_t(),
             inside.get_den().get_mpz_t());
  mpz_class root;
  mpz_root(root.get_mpz_t(), whole.get_mpz_t(), v.root());
  return root;  // floor(|s| x^(1/d))
}

}  // namespace

long ceil_alg(const Alg& value) {
  if (value.is_rational()) {
    Rational v = value.rational_part();
    if (value.root() == 1) v += value.scale() * value.radicand();
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), v.get_num().get_mpz_t(),
               v.get_den().get_mpz_t());
    return clamp_to_long(z);
  }
  mpz_class base;
  mpz_fdiv_q(base.get_mpz_t(), value.rational_part().get_num().get_mpz_t(),
             value.rational_part().get_den().get_mpz_t());
  mpz_class term = root_term_floor_abs(value);
  mpz_class guess;
  if (sgn(value.scale()) >= 0)
    guess = base + term;
  else
    guess = base - term - 1;
  // value lies within two units of guess; settle exactly
  while (guess <= kAlgSaturation &&
         value.gt(Rational(guess)))
    ++guess;
  while (guess > -kAlgSaturation && value.leq(Rational(guess - 1))) --guess;
  return clamp_to_long(guess);
}

long floor_alg(const Alg& value) {
  if (value.is_rational()) {
    Rational v = value.rational_part();
    if (value.root() == 1) v += value.scale() * value.radicand();
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), v.get_num().get_mpz_t(),
               v.get_den().get_mpz_t());
    return clamp_to_long(z);
  }
  mpz_class base;
  mpz_fdiv_q(base.get_mpz_t(), value.rational_part().get_num().get_mpz_t(),
             value.rational_part().get_den().get_mpz_t());
  mpz_class term = root_term_floor_abs(value);
  mpz_class guess;
  if (sgn(value.scale()) >= 0)
    guess = base + term + 1;
  else
    guess = base - term;
  while (guess >= -kAlgSaturation && value.lt(Rational(guess))) --guess;
  while (guess < kAlgSaturation && value.geq(Rational(guess + 1))) ++guess;
  return clamp_to_long(guess);
}

}  // namespace ramsey
