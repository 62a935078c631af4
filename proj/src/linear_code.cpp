#include "expcodes/linear_code.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace expcodes {

LinearCode::LinearCode(Field f, GfMatrix generator)
    : f_(f), gen_(std::move(generator)) {
  k_ = static_cast<int>(gen_.size());
  if (k_ == 0) throw std::invalid_argument("LinearCode: empty generator");
  n_ = static_cast<int>(gen_[0].size());
  for (const auto& row : gen_) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("LinearCode: ragged generator");
    for (symbol s : row)
      if (s >= f_.q()) throw std::invalid_argument("LinearCode: symbol out of range");
  }
  if (k_ > n_) throw std::invalid_argument("LinearCode: k > n");

  GfMatrix red = gen_;
  if (rref(red, f_, &pivots_) != k_)
    throw std::invalid_argument("LinearCode: generator is not full rank");

  // parity rows span {x : G x = 0}; this gives parity * gen^T = 0 directly
  par_ = nullspace_basis(gen_, f_);

  // invertible k x k submatrix on the pivot columns, used by message_of
  GfMatrix sub(k_, Word(k_));
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) sub[i][j] = gen_[i][pivots_[j]];
  pivot_inv_ = mat_inv(std::move(sub), f_);
}

std::uint64_t LinearCode::size(std::uint64_t cap) const {
  std::uint64_t total = 1;
  for (int i = 0; i < k_; ++i) {
    if (total > cap / f_.q()) throw std::length_error("LinearCode: q^k exceeds enumeration cap");
    total *= f_.q();
  }
  if (total > cap) throw std::length_error("LinearCode: q^k exceeds enumeration cap");
  return total;
}

Word LinearCode::encode(const Word& msg) const {
  if (static_cast<int>(msg.size()) != k_)
    throw std::invalid_argument("encode: message length mismatch");
  return vec_mat(msg, gen_, f_);
}

Word LinearCode::syndrome(const Word& w) const {
  if (static_cast<int>(w.size()) != n_)
    throw std::invalid_argument("syndrome: word length mismatch");
  Word s(par_.size(), 0);
  for (std::size_t i = 0; i < par_.size(); ++i) {
    symbol acc = 0;
    for (int j = 0; j < n_; ++j) acc = f_.add(acc, f_.mul(par_[i][j], w[j]));
    s[i] = acc;
  }
  return s;
}

bool LinearCode::is_codeword(const Word& w) const {
  for (symbol s : syndrome(w))
    if (s != 0) return false;
  return true;
}

Word LinearCode::message_of(const Word& c) const {
  Word proj(k_);
  for (int j = 0; j < k_; ++j) proj[j] = c[pivots_[j]];
  return vec_mat(proj, pivot_inv_, f_);
}

double fractional_distance(const Word& a, const Word& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("fractional_distance: length mismatch");
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == kErased || b[i] == kErased)
      throw std::invalid_argument("fractional_distance: erased symbol");
    diff += a[i] != b[i];
  }
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

int disagreements_ignoring_erasures(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("disagreements: length mismatch");
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != kErased && a[i] != b[i]) ++diff;
  return diff;
}

void for_each_codeword(const LinearCode& c,
                       const std::function<void(const Word&, const Word&)>& fn,
                       std::uint64_t cap) {
  std::uint64_t total = c.size(cap);
  Word msg(c.k(), 0), cw = c.zero();
  const auto& gen = c.generator();
  const Field& f = c.field();
  for (std::uint64_t idx = 0;; ++idx) {
    fn(cw, msg);
    if (idx + 1 == total) break;
    // odometer increment over messages; adding row j advances digit j by one
    for (int j = c.k() - 1;; --j) {
      for (int p = 0; p < c.n(); ++p) cw[p] = f.add(cw[p], gen[j][p]);
      if (++msg[j] == f.q()) {
        msg[j] = 0;
        continue;
      }
      break;
    }
  }
}

std::vector<Word> enumerate_codewords(const LinearCode& c, std::uint64_t cap) {
  std::vector<Word> out;
  out.reserve(c.size(cap));
  for_each_codeword(c, [&](const Word& w, const Word&) { out.push_back(w); }, cap);
  return out;
}

std::vector<Word> brute_force_list_decode(const LinearCode& c, const Word& g,
                                          double radius) {
  if (static_cast<int>(g.size()) != c.n())
    throw std::invalid_argument("list_decode: word length mismatch");
  int budget = radius_to_count(radius, c.n());
  std::vector<Word> out;
  for_each_codeword(c, [&](const Word& w, const Word&) {
    int diff = 0;
    for (int i = 0; i < c.n(); ++i) diff += w[i] != g[i];
    if (diff <= budget) out.push_back(w);
  });
  return out;
}

std::vector<Word> brute_force_list_recover(
    const LinearCode& c, const std::vector<std::vector<symbol>>& lists,
    double radius) {
  if (static_cast<int>(lists.size()) != c.n())
    throw std::invalid_argument("list_recover: need one candidate list per position");
  int budget = radius_to_count(radius, c.n());
  std::vector<Word> out;
  for_each_codeword(c, [&](const Word& w, const Word&) {
    int miss = 0;
    for (int i = 0; i < c.n(); ++i) {
      const auto& li = lists[i];
      if (std::find(li.begin(), li.end(), w[i]) == li.end()) ++miss;
    }
    if (miss <= budget) out.push_back(w);
  });
  return out;
}

Word nearest_codeword_with_erasures(const LinearCode& c, const Word& g) {
  if (static_cast<int>(g.size()) != c.n())
    throw std::invalid_argument("nearest_codeword: word length mismatch");
  Word best;
  int best_diff = -1;
  for_each_codeword(c, [&](const Word& w, const Word&) {
    int diff = disagreements_ignoring_erasures(g, w);
    if (best_diff < 0 || diff < best_diff) {
      best_diff = diff;
      best = w;
    }
  });
  return best;
}

double min_distance(const LinearCode& c) {
  int best = c.n() + 1;
  for_each_codeword(c, [&](const Word& w, const Word& msg) {
    bool zero_msg = std::all_of(msg.begin(), msg.end(), [](symbol s) { return s == 0; });
    if (zero_msg) return;
    int wt = 0;
    for (symbol s : w) wt += s != 0;
    best = std::min(best, wt);
  });
  if (best > c.n()) throw std::domain_error("min_distance: code has no nonzero codeword");
  return static_cast<double>(best) / c.n();
}

LinearCode random_linear_code(const Field& f, int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("random_linear_code: need 1 <= k <= n");
  Rng rng(seed);
  for (;;) {
    GfMatrix gen(k, Word(n));
    for (auto& row : gen)
      for (auto& s : row) s = static_cast<symbol>(rng.below(f.q()));
    if (rank(gen, f) == k) return LinearCode(f, std::move(gen));
  }
}

std::vector<Word> pad_list(const LinearCode& c, std::vector<Word> list, int target) {
  if (static_cast<int>(list.size()) > target)
    throw std::invalid_argument("pad_list: list longer than target");
  if (c.size() < static_cast<std::uint64_t>(target))
    throw std::invalid_argument("pad_list: code smaller than target list size");
  if (static_cast<int>(list.size()) == target) return list;
  for_each_codeword(c, [&](const Word& w, const Word&) {
    if (static_cast<int>(list.size()) == target) return;
    if (std::find(list.begin(), list.end(), w) == list.end()) list.push_back(w);
  });
  return list;
}

void save_code(const LinearCode& c, std::ostream& os) {
  os << c.field().q() << ' ' << c.n() << ' ' << c.k() << '\n';
  for (const auto& row : c.generator()) {
    for (int j = 0; j < c.n(); ++j) os << row[j] << (j + 1 == c.n() ? '\n' : ' ');
  }
}

LinearCode load_code(std::istream& is) {
  std::uint32_t q;
  int n, k;
  if (!(is >> q >> n >> k)) throw std::runtime_error("load_code: bad header");
  if (n < 1 || k < 1 || k > n) throw std::runtime_error("load_code: bad dimensions");
  Field f(q);
  GfMatrix gen(k, Word(n));
  for (auto& row : gen)
    for (auto& s : row) {
      long long v;
      if (!(is >> v) || v < 0 || v >= static_cast<long long>(q))
        throw std::runtime_error("load_code: bad generator entry");
      s = static_cast<symbol>(v);
    }
  return LinearCode(f, std::move(gen));
}

void save_code_file(const LinearCode& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_code_file: cannot open " + path);
  save_code(c, os);
}

LinearCode load_code_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_code_file: cannot open " + path);
  return load_code(is);
}

}  // namespace expcodes
