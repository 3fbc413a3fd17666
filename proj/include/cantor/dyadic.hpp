#pragma once

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>

namespace cantor {

// exact value num * 2^(-exp); num odd or zero
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t num, int exp);

  static Dyadic pow2(int e);  // 2^e, e may be negative
  static Dyadic zero() { return Dyadic(); }

  std::int64_t num() const { return num_; }
  int exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const;
  std::string str() const;

  friend Dyadic operator+(Dyadic const& a, Dyadic const& b);
  friend Dyadic operator-(Dyadic const& a, Dyadic const& b);
  friend Dyadic operator*(Dyadic const& a, Dyadic const& b);
  Dyadic half() const { return Dyadic(num_, exp_ + 1); }

  friend std::strong_ordering operator<=>(Dyadic const& a, Dyadic const& b);
  friend bool operator==(Dyadic const& a, Dyadic const& b) = default;

 private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Dyadic const& d) { return os << d.str(); }

}  // namespace cantor
