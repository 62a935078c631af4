#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "expcodes/tanner.hpp"

namespace expcodes {

/// Word over a block alphabet: length() blocks of symbol_dim() field
/// symbols each, stored flat with block i at [i*dim, (i+1)*dim).
using OuterWord = Word;

/// Fraction of blocks where a and b differ.
double block_distance(const OuterWord& a, const OuterWord& b, int blocks);

/// Outer code handle for distance amplification: a code over the block
/// alphabet GF(q)^symbol_dim with a unique decoder against the block
/// Hamming metric.
class OuterCode {
 public:
  virtual ~OuterCode() = default;

  virtual int length() const = 0;      // number of blocks
  virtual int symbol_dim() const = 0;  // field symbols per block
  virtual const Field& field() const = 0;
  /// lower bound on the fractional block distance
  virtual double distance() const = 0;
  /// radius the unique decoder is warranted for (block metric)
  virtual double decoding_radius() const = 0;
  virtual double rate() const = 0;
  virtual std::uint64_t size(std::uint64_t cap) const = 0;
  virtual bool is_codeword(const OuterWord& w) const = 0;
  /// Decodes toward the nearest codeword; absence means the decoder gave
  /// up, never that no codeword exists.
  virtual std::optional<OuterWord> unique_decode(const OuterWord& w) const = 0;
  virtual void for_each(const std::function<void(const OuterWord&)>& fn) const = 0;
};

/// Any linear code read in blocks of `dim` coordinates, decoded by full
/// enumeration: returns the true nearest codeword in block metric with
/// canonical tie-breaking. The advertised radius is half the enumerated
/// block distance.
class BruteForceOuterCode : public OuterCode {
 public:
  BruteForceOuterCode(LinearCode code, int blocks);

  int length() const override { return blocks_; }
  int symbol_dim() const override { return dim_; }
  const Field& field() const override { return code_.field(); }
  double distance() const override { return distance_; }
  double decoding_radius() const override { return radius_; }
  double rate() const override {
    return static_cast<double>(code_.k()) / code_.n();
  }
  std::uint64_t size(std::uint64_t cap) const override { return code_.size(cap); }
  bool is_codeword(const OuterWord& w) const override {
    return code_.is_codeword(w);
  }
  std::optional<OuterWord> unique_decode(const OuterWord& w) const override;
  void for_each(const std::function<void(const OuterWord&)>& fn) const override;

  const LinearCode& base() const { return code_; }

 private:
  LinearCode code_;
  int blocks_, dim_;
  double distance_, radius_;
};

/// A Tanner code folded on its left vertices: block l is the left base
/// code's message at vertex l, and the unique decoder is the alternating
/// errors-and-erasures decoder (erasure-free here), warranted up to
/// (delta2 - 4 eps) / 2.
class TannerOuterCode : public OuterCode {
 public:
  TannerOuterCode(TannerCode code, double eps);

  int length() const override { return code_.n(); }
  int symbol_dim() const override { return code_.left_code().k(); }
  const Field& field() const override { return code_.field(); }
  double distance() const override { return distance_; }
  double decoding_radius() const override {
    return (code_.delta2() - 4 * eps_) / 2;
  }
  double rate() const override;
  std::uint64_t size(std::uint64_t cap) const override;
  bool is_codeword(const OuterWord& w) const override;
  std::optional<OuterWord> unique_decode(const OuterWord& w) const override;
  void for_each(const std::function<void(const OuterWord&)>& fn) const override;

  const TannerCode& base() const { return code_; }
  /// blocks -> edge word (every block encoded by the left base code)
  Word expand(const OuterWord& w) const;
  /// edge word -> blocks; requires every left restriction in the left code
  OuterWord compress(const Word& h) const;

 private:
  TannerCode code_;
  double eps_;
  double distance_;
  std::optional<LinearCode> basis_;
};

}  // namespace expcodes
