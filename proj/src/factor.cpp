#include "expcodes/factor.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "expcodes/simplex.hpp"

namespace expcodes {

Factor build_factor(const FunctionFamily& fam) {
  if (fam.n <= 0) throw std::invalid_argument("build_factor: empty ground set");
  Factor b;
  b.n = fam.n;
  b.atom_of.assign(fam.n, -1);
  std::map<std::vector<std::uint8_t>, int> pattern_to_atom;
  for (int x = 0; x < fam.n; ++x) {
    std::vector<std::uint8_t> pattern(fam.size());
    for (int j = 0; j < fam.size(); ++j) pattern[j] = fam.sets[j][x];
    auto it = pattern_to_atom.find(pattern);
    int id;
    if (it == pattern_to_atom.end()) {
      id = static_cast<int>(b.atoms.size());
      pattern_to_atom.emplace(pattern, id);
      b.atoms.emplace_back();
    } else {
      id = it->second;
    }
    b.atom_of[x] = id;
    b.atoms[id].push_back(x);
  }
  return b;
}

AtomFn conditional_average(const std::vector<double>& f, const Factor& b) {
  if (static_cast<int>(f.size()) != b.n)
    throw std::invalid_argument("conditional_average: wrong domain size");
  AtomFn out(b.blocks(), 0.0);
  for (int a = 0; a < b.blocks(); ++a) {
    double acc = 0.0;
    for (int x : b.atoms[a]) acc += f[x];
    out[a] = acc / static_cast<double>(b.atoms[a].size());
  }
  return out;
}

std::vector<double> to_pointwise(const AtomFn& f, const Factor& b) {
  if (static_cast<int>(f.size()) != b.blocks())
    throw std::invalid_argument("to_pointwise: wrong number of atoms");
  std::vector<double> out(b.n);
  for (int x = 0; x < b.n; ++x) out[x] = f[b.atom_of[x]];
  return out;
}

std::vector<double> to_real(const VSet& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] ? 1.0 : 0.0;
  return out;
}

std::vector<double> signature_of(const std::vector<double>& f,
                                 const FunctionFamily& fam) {
  if (static_cast<int>(f.size()) != fam.n)
    throw std::invalid_argument("signature_of: wrong domain size");
  std::vector<double> sig(fam.size(), 0.0);
  for (int j = 0; j < fam.size(); ++j) {
    double acc = 0.0;
    for (int x = 0; x < fam.n; ++x)
      if (fam.sets[j][x]) acc += f[x];
    sig[j] = acc / static_cast<double>(fam.n);
  }
  return sig;
}

std::vector<double> signature_of(const VSet& s, const FunctionFamily& fam) {
  return signature_of(to_real(s), fam);
}

double family_distance(const std::vector<double>& f1,
                       const std::vector<double>& f2,
                       const FunctionFamily& fam) {
  if (f1.size() != f2.size())
    throw std::invalid_argument("family_distance: domain mismatch");
  std::vector<double> diff(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) diff[i] = f1[i] - f2[i];
  double best = 0.0;
  for (double v : signature_of(diff, fam)) best = std::max(best, std::abs(v));
  return best;
}

std::optional<std::vector<AtomFn>> realize_signature(
    const std::vector<std::vector<double>>& sigma, const FunctionFamily& fam,
    const Factor& b, double eta) {
  const int K = static_cast<int>(sigma.size());
  const int p = fam.size();
  const int A = b.blocks();
  if (K < 1) throw std::invalid_argument("realize_signature: K must be positive");
  for (const auto& row : sigma)
    if (static_cast<int>(row.size()) != p)
      throw std::invalid_argument("realize_signature: signature width mismatch");

  // weight of atom a inside set j, normalized: |P cap S_j| / n. Atoms are
  // constant on every family set, so this is |P|/n or 0.
  std::vector<std::vector<double>> w(A, std::vector<double>(p, 0.0));
  for (int a = 0; a < A; ++a) {
    int x0 = b.atoms[a][0];
    for (int j = 0; j < p; ++j)
      if (fam.sets[j][x0])
        w[a][j] = static_cast<double>(b.atoms[a].size()) / b.n;
  }

  // variables y[i][a], flattened i * A + a
  const int nvars = K * A;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto add_row = [&](std::vector<double> r, double v) {
    rows.push_back(std::move(r));
    rhs.push_back(v);
  };
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < p; ++j) {
      std::vector<double> r(nvars, 0.0);
      for (int a = 0; a < A; ++a) r[i * A + a] = w[a][j];
      add_row(r, sigma[i][j] + eta);
      for (auto& v : r) v = -v;
      add_row(std::move(r), eta - sigma[i][j]);
    }
  for (int a = 0; a < A; ++a) {
    std::vector<double> r(nvars, 0.0);
    for (int i = 0; i < K; ++i) r[i * A + a] = 1.0;
    add_row(std::move(r), 1.0);  // atoms cannot be oversubscribed
  }
  for (int v = 0; v < nvars; ++v) {
    std::vector<double> r(nvars, 0.0);
    r[v] = 1.0;
    add_row(std::move(r), 1.0);
  }

  auto x = lp_feasible_point(rows, rhs);
  if (!x) return std::nullopt;
  std::vector<AtomFn> out(K, AtomFn(A, 0.0));
  for (int i = 0; i < K; ++i)
    for (int a = 0; a < A; ++a)
      out[i][a] = std::min(1.0, std::max(0.0, (*x)[i * A + a]));
  return out;
}

std::vector<VSet> round_to_sets(const std::vector<AtomFn>& fbar, const Factor& b) {
  const int K = static_cast<int>(fbar.size());
  std::vector<VSet> sets(K, VSet(b.n, 0));
  for (int a = 0; a < b.blocks(); ++a) {
    const auto& atom = b.atoms[a];
    std::size_t cursor = 0;
    for (int i = 0; i < K; ++i) {
      if (static_cast<int>(fbar[i].size()) != b.blocks())
        throw std::invalid_argument("round_to_sets: atom count mismatch");
      auto take = static_cast<std::size_t>(
          std::floor(atom.size() * fbar[i][a] + 1e-9));
      take = std::min(take, atom.size() - cursor);
      for (std::size_t t = 0; t < take; ++t) sets[i][atom[cursor + t]] = 1;
      cursor += take;
    }
  }
  return sets;
}

}  // namespace expcodes
