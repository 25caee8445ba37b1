#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "logstrat/kernels/monomial_kernels.hpp"

namespace logstrat {

inline constexpr std::size_t kMaxVariables = kernels::kLanes;

// Exponent vector of a power product. Lanes past the ring arity stay zero.
struct alignas(32) Monomial {
  std::array<std::int32_t, kMaxVariables> exp{};

  static Monomial one() { return {}; }
  static Monomial variable(std::size_t index, std::int32_t power = 1) {
    Monomial m;
    m.exp[index] = power;
    return m;
  }

  std::int32_t operator[](std::size_t i) const { return exp[i]; }
  std::int32_t& operator[](std::size_t i) { return exp[i]; }

  const std::int32_t* data() const { return exp.data(); }
  std::int32_t* data() { return exp.data(); }

  bool is_one() const { return degree() == 0; }
  std::int64_t degree() const { return kernels::active_kernels().degree(data()); }

  // Bitmask of variables with a positive exponent.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exp[i] != 0) s |= 1u << i;
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exp != b.exp; }
};

static_assert(sizeof(Monomial) == kernels::kLanes * sizeof(std::int32_t),
              "monomials must pack into contiguous kernel blocks");

class ExponentOverflow : public std::overflow_error {
 public:
  ExponentOverflow() : std::overflow_error("monomial exponent overflow") {}
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  if (!kernels::active_kernels().mul(a.data(), b.data(), out.data())) throw ExponentOverflow();
  return out;
}

// a / b; requires divides(b, a).
inline Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial out;
  kernels::active_kernels().quotient(a.data(), b.data(), out.data());
  return out;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  kernels::active_kernels().lcm(a.data(), b.data(), out.data());
  return out;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  kernels::active_kernels().gcd(a.data(), b.data(), out.data());
  return out;
}

// true iff b divides a.
inline bool divides(const Monomial& b, const Monomial& a) {
  return kernels::active_kernels().divides(b.data(), a.data());
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  return kernels::active_kernels().coprime(a.data(), b.data());
}

}  // namespace logstrat
