#include "cantor/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace cantor {

Dyadic::Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while ((num_ & 1) == 0) {
    num_ /= 2;
    --exp_;
  }
}

Dyadic Dyadic::pow2(int e) { return Dyadic(1, -e); }

double Dyadic::to_double() const { return std::ldexp(double(num_), -exp_); }

std::string Dyadic::str() const {
  if (num_ == 0) return "0";
  if (exp_ <= 0) {
    if (-exp_ < 62) return std::to_string(num_ << -exp_);
    return std::to_string(num_) + "*2^" + std::to_string(-exp_);
  }
  if (num_ == 1) return "2^-" + std::to_string(exp_);
  return std::to_string(num_) + "*2^-" + std::to_string(exp_);
}

namespace {
// bring both to a common exponent; throws on overflow
std::int64_t scale(std::int64_t n, int by) {
  if (by < 0 || by > 62) throw std::overflow_error("dyadic exponent spread too large");
  std::int64_t r = n * (std::int64_t(1) << by);
  if ((r >> by) != n) throw std::overflow_error("dyadic overflow");
  return r;
}
}  // namespace

Dyadic operator+(Dyadic const& a, Dyadic const& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int e = std::max(a.exp_, b.exp_);
  return Dyadic(scale(a.num_, e - a.exp_) + scale(b.num_, e - b.exp_), e);
}

Dyadic operator-(Dyadic const& a, Dyadic const& b) { return a + Dyadic(-b.num_, b.exp_); }

Dyadic operator*(Dyadic const& a, Dyadic const& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  std::int64_t r;
  if (__builtin_mul_overflow(a.num_, b.num_, &r)) throw std::overflow_error("dyadic overflow");
  return Dyadic(r, a.exp_ + b.exp_);
}

std::strong_ordering operator<=>(Dyadic const& a, Dyadic const& b) {
  int sa = (a.num_ > 0) - (a.num_ < 0), sb = (b.num_ > 0) - (b.num_ < 0);
  if (sa != sb) return sa <=> sb;
  if (a.num_ == 0) return std::strong_ordering::equal;
  bool neg = a.num_ < 0;
  std::uint64_t ma = neg ? -std::uint64_t(a.num_) : a.num_;
  std::uint64_t mb = neg ? -std::uint64_t(b.num_) : b.num_;
  // magnitude ~ 2^(bitlen - exp)
  int la = 64 - __builtin_clzll(ma) - a.exp_, lb = 64 - __builtin_clzll(mb) - b.exp_;
  std::strong_ordering r = std::strong_ordering::equal;
  if (la != lb) {
    r = la <=> lb;
  } else {
    int e = std::max(a.exp_, b.exp_);
    // same top bit position so the shift is < 64
    r = (ma << (e - a.exp_)) <=> (mb << (e - b.exp_));
  }
  if (neg) r = 0 <=> r;
  return r;
}

}  // namespace cantor
