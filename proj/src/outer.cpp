#include "expcodes/outer.hpp"

#include <algorithm>
#include <stdexcept>

namespace expcodes {

double block_distance(const OuterWord& a, const OuterWord& b, int blocks) {
  if (a.size() != b.size() || blocks < 1 || a.size() % blocks != 0)
    throw std::invalid_argument("block_distance: shape mismatch");
  std::size_t dim = a.size() / blocks;
  int diff = 0;
  for (int i = 0; i < blocks; ++i) {
    for (std::size_t j = 0; j < dim; ++j)
      if (a[i * dim + j] != b[i * dim + j]) {
        ++diff;
        break;
      }
  }
  return static_cast<double>(diff) / blocks;
}

BruteForceOuterCode::BruteForceOuterCode(LinearCode code, int blocks)
    : code_(std::move(code)), blocks_(blocks) {
  if (blocks < 1 || code_.n() % blocks != 0)
    throw std::invalid_argument("BruteForceOuterCode: blocks must divide the length");
  dim_ = code_.n() / blocks;
  // enumerated block-metric distance; also fixes the decoding radius
  double dmin = 1.0;
  Word zero = code_.zero();
  bool any = false;
  for_each_codeword(code_, [&](const Word& w, const Word&) {
    if (w == zero) return;
    any = true;
    dmin = std::min(dmin, block_distance(w, zero, blocks_));
  });
  if (!any) throw std::invalid_argument("BruteForceOuterCode: dimension zero");
  distance_ = dmin;
  int dmin_count = static_cast<int>(dmin * blocks_ + 0.5);
  radius_ = static_cast<double>((dmin_count - 1) / 2) / blocks_;
}

std::optional<OuterWord> BruteForceOuterCode::unique_decode(
    const OuterWord& w) const {
  if (w.size() != static_cast<std::size_t>(code_.n()))
    throw std::invalid_argument("unique_decode: wrong length");
  OuterWord best;
  double best_dist = 2.0;
  for_each_codeword(code_, [&](const Word& c, const Word&) {
    double dist = block_distance(c, w, blocks_);
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  });
  return best;
}

void BruteForceOuterCode::for_each(
    const std::function<void(const OuterWord&)>& fn) const {
  for_each_codeword(code_, [&](const Word& w, const Word&) { fn(w); });
}

TannerOuterCode::TannerOuterCode(TannerCode code, double eps)
    : code_(std::move(code)), eps_(eps) {
  if (eps <= 0 || 4 * eps >= code_.delta2())
    throw std::invalid_argument("TannerOuterCode: eps leaves no decoding window");
  distance_ =
      tanner_distance_bound(code_.delta1(), code_.delta2(), code_.lambda());
  basis_ = tanner_basis(code_);
}

double TannerOuterCode::rate() const {
  long long dim = basis_ ? basis_->k() : 0;
  return static_cast<double>(dim) /
         (static_cast<double>(code_.n()) * code_.left_code().k());
}

std::uint64_t TannerOuterCode::size(std::uint64_t cap) const {
  return basis_ ? basis_->size(cap) : 1;
}

Word TannerOuterCode::expand(const OuterWord& w) const {
  int dim = symbol_dim();
  if (w.size() != static_cast<std::size_t>(code_.n() * dim))
    throw std::invalid_argument("expand: wrong length");
  const BipartiteGraph& g = code_.graph();
  Word h(code_.length());
  for (int l = 0; l < code_.n(); ++l) {
    Word msg(w.begin() + l * dim, w.begin() + (l + 1) * dim);
    Word enc = code_.left_code().encode(msg);
    for (int slot = 0; slot < g.d; ++slot) h[g.edge_at_left(l, slot)] = enc[slot];
  }
  return h;
}

OuterWord TannerOuterCode::compress(const Word& h) const {
  int dim = symbol_dim();
  OuterWord w(code_.n() * dim);
  for (int l = 0; l < code_.n(); ++l) {
    Word msg = code_.left_code().message_of(left_restriction(code_, h, l));
    std::copy(msg.begin(), msg.end(), w.begin() + l * dim);
  }
  return w;
}

bool TannerOuterCode::is_codeword(const OuterWord& w) const {
  return tanner_membership(code_, expand(w));
}

std::optional<OuterWord> TannerOuterCode::unique_decode(
    const OuterWord& w) const {
  int dim = symbol_dim();
  if (w.size() != static_cast<std::size_t>(code_.n() * dim))
    throw std::invalid_argument("unique_decode: wrong length");
  LeftAssignment g(code_.n());
  for (int l = 0; l < code_.n(); ++l) {
    Word msg(w.begin() + l * dim, w.begin() + (l + 1) * dim);
    g[l] = code_.left_code().encode(msg);
  }
  auto res = unique_decode_errors_erasures(code_, g, eps_);
  if (!res.codeword) return std::nullopt;
  return compress(*res.codeword);
}

void TannerOuterCode::for_each(
    const std::function<void(const OuterWord&)>& fn) const {
  if (!basis_) {
    fn(OuterWord(static_cast<std::size_t>(code_.n()) * symbol_dim(), 0));
    return;
  }
  for_each_codeword(*basis_, [&](const Word& h, const Word&) { fn(compress(h)); });
}

}  // namespace expcodes
