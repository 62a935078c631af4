#include "expcodes/field.hpp"

#include <stdexcept>
#include <string>

namespace expcodes {

namespace {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

}  // namespace

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 2 || q > 65521 || !is_prime(q))
    throw std::invalid_argument("Field: order must be a prime in [2, 65521], got " +
                                std::to_string(q));
}

symbol Field::pow(symbol a, std::uint64_t e) const {
  std::uint64_t base = a % q_, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<symbol>(acc);
}

symbol Field::inv(symbol a) const {
  if (a % q_ == 0) throw std::domain_error("Field: zero has no inverse");
  return pow(a % q_, q_ - 2);  // Fermat
}

}  // namespace expcodes
