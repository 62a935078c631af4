#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "expcodes/field.hpp"
#include "expcodes/matrix.hpp"
#include "expcodes/rng.hpp"

namespace expcodes {

class Rng;

/// [n, k] linear code over a prime field, held as a full-rank generator
/// matrix plus the derived parity-check matrix.
class LinearCode {
 public:
  LinearCode(Field f, GfMatrix generator);

  const Field& field() const { return f_; }
  int n() const { return n_; }
  int k() const { return k_; }
  const GfMatrix& generator() const { return gen_; }
  const GfMatrix& parity() const { return par_; }

  /// Number of codewords q^k; throws if it exceeds cap.
  std::uint64_t size(std::uint64_t cap = kEnumCap) const;

  Word encode(const Word& msg) const;
  Word syndrome(const Word& w) const;
  bool is_codeword(const Word& w) const;
  /// Recover the message of a codeword (inverse of encode on the code).
  Word message_of(const Word& c) const;

  /// All-zero word; first codeword in canonical order.
  Word zero() const { return Word(n_, 0); }

  static constexpr std::uint64_t kEnumCap = 1ull << 20;

 private:
  Field f_;
  int n_, k_;
  GfMatrix gen_, par_;
  std::vector<int> pivots_;
  GfMatrix pivot_inv_;
};

/// Fraction of positions where a and b differ. Both words must be fully
/// unerased and of equal length.
double fractional_distance(const Word& a, const Word& b);

/// Number of non-erased positions of a that disagree with b (b unerased).
int disagreements_ignoring_erasures(const Word& a, const Word& b);

/// Largest error count consistent with a fractional radius on n symbols.
inline int radius_to_count(double radius, int n) {
  int c = static_cast<int>(radius * n + 1e-9);
  return c < 0 ? 0 : c;
}

/// Visit every codeword in canonical order (lexicographically ascending
/// message vectors). The visitor gets the codeword and its message.
void for_each_codeword(const LinearCode& c,
                       const std::function<void(const Word&, const Word&)>& fn,
                       std::uint64_t cap = LinearCode::kEnumCap);

/// Materialized variant of for_each_codeword, same order.
std::vector<Word> enumerate_codewords(const LinearCode& c,
                                      std::uint64_t cap = LinearCode::kEnumCap);

/// All codewords within the given fractional radius of g, canonical order,
/// not padded.
std::vector<Word> brute_force_list_decode(const LinearCode& c, const Word& g,
                                          double radius);

/// All codewords h with Pr_i[h_i not in lists[i]] <= radius, canonical order.
std::vector<Word> brute_force_list_recover(const LinearCode& c,
                                           const std::vector<std::vector<symbol>>& lists,
                                           double radius);

/// Codeword minimizing disagreements on the non-erased positions of g;
/// ties break toward the canonically first codeword. An all-erased input
/// returns the all-zero codeword.
Word nearest_codeword_with_erasures(const LinearCode& c, const Word& g);

/// Minimum fractional weight of a nonzero codeword; 1.0 hard to beat, but a
/// dimension-zero code has no nonzero codeword and is rejected.
double min_distance(const LinearCode& c);

/// Uniformly random [n, k] code: resample k x n matrices until full rank.
LinearCode random_linear_code(const Field& f, int n, int k, std::uint64_t seed);

/// A local decoding list padded to exactly `target` distinct codewords: the
/// genuine list first (canonical order), then canonically-first codewords
/// not already present.
std::vector<Word> pad_list(const LinearCode& c, std::vector<Word> list,
                           int target);

/// Text format: one header line "q n k", then k generator rows. The parity
/// matrix is recomputed on load.
void save_code(const LinearCode& c, std::ostream& os);
LinearCode load_code(std::istream& is);
void save_code_file(const LinearCode& c, const std::string& path);
LinearCode load_code_file(const std::string& path);

}  // namespace expcodes
