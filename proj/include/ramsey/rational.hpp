#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramsey {

// Exact rational arithmetic for all parameter and threshold comparisons.
// Floating point is never used to decide a bound.
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct BudgetError : Error {
  using Error::Error;
};

Rational rat(long num, long den = 1);

// Accepts "p/q", integer, or plain decimal strings ("0.05").
Rational rat_parse(const std::string& text);

std::string rat_str(const Rational& q);

long floor_rat(const Rational& q);
long ceil_rat(const Rational& q);

// Largest even integer <= x.  Requires x >= 0.
long floor_even(const Rational& x);
// Largest odd integer <= x.  Requires x >= 1.
long floor_odd(const Rational& x);

// Value of the form  r + s * x^(1/root)  with r, s, x rational, x >= 0.
// Thresholds in this codebase mix a rational part with a single fractional
// power of a rational (roots up to 32), so ordering against a rational is
// decidable exactly by raising both sides to the root-th power.
class Alg {
 public:
  Alg() : r_(0), s_(0), x_(0), root_(1) {}
  Alg(const Rational& r) : r_(r), s_(0), x_(0), root_(1) {}  // NOLINT
  Alg(long r) : r_(rat(r)), s_(0), x_(0), root_(1) {}        // NOLINT
  static Alg rooted(const Rational& r, const Rational& s, const Rational& x,
                    int root);

  const Rational& rational_part() const { return r_; }
  const Rational& scale() const { return s_; }
  const Rational& radicand() const { return x_; }
  int root() const { return root_; }
  bool is_rational() const { return s_ == 0 || x_ == 0 || root_ == 1; }

  // Sign of (value - q): -1, 0 or +1.
  int compare(const Rational& q) const;
  bool leq(const Rational& q) const { return compare(q) <= 0; }
  bool geq(const Rational& q) const { return compare(q) >= 0; }
  bool lt(const Rational& q) const { return compare(q) < 0; }
  bool gt(const Rational& q) const { return compare(q) > 0; }

  Alg operator+(const Rational& q) const;
  Alg operator-(const Rational& q) const;
  Alg operator*(const Rational& q) const;  // scales both parts
  Alg negated() const;

  double approx() const;
  std::string str() const;

 private:
  Rational r_, s_, x_;
  int root_;
};

// Smallest integer m with m >= value.
long ceil_alg(const Alg& value);
// Largest integer m with m <= value.
long floor_alg(const Alg& value);

Rational pow_rat(const Rational& base, unsigned int exp);

}  // namespace ramsey
