#pragma once

#include <cstdint>
#include <vector>

namespace expcodes {

using symbol = std::uint32_t;

/// Erasure marker for words over any field; deliberately outside [0, q).
inline constexpr symbol kErased = 0xffffffffu;

/// A word over GF(q), possibly with erased positions.
using Word = std::vector<symbol>;

/// Prime-order field GF(q) with 2 <= q <= 65521. All elements live in
/// [0, q) as uint32_t; arithmetic never overflows 64 bits.
class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  symbol add(symbol a, symbol b) const { return (a + b) % q_; }
  symbol sub(symbol a, symbol b) const { return (a + q_ - b) % q_; }
  symbol neg(symbol a) const { return a == 0 ? 0 : q_ - a; }
  symbol mul(symbol a, symbol b) const {
    return static_cast<symbol>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  symbol pow(symbol a, std::uint64_t e) const;
  /// Multiplicative inverse; inverting zero is an error.
  symbol inv(symbol a) const;
  symbol div(symbol a, symbol b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const { return q_ == o.q_; }

 private:
  std::uint32_t q_;
};

}  // namespace expcodes
