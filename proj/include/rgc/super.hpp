#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgc/rational.hpp"

namespace rgc {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline bool is_odd(Parity p) { return p == Parity::Odd; }

// Symplectic tagging of a basis: letters ordered p_1..p_n, q_1..q_n,
// x_1..x_m.  odd_diagonal[j] is the value <x_j, x_j>; the canonical form of
// the symplectic pairing has all of them equal to 1, but rational Darboux
// reduction can leave non-square residues here.
struct SymplecticTag {
  int n = 0;
  int m = 0;
  std::vector<Rational> odd_diagonal;  // size m

  bool canonical() const {
    for (const auto& d : odd_diagonal)
      if (d != Rational(1)) return false;
    return true;
  }
};

// Finite super vector space: ordered basis labels with parities, optionally
// symplectically tagged.
class SuperSpace {
 public:
  SuperSpace() = default;
  SuperSpace(std::vector<std::string> labels, std::vector<Parity> parities)
      : labels_(std::move(labels)), parities_(std::move(parities)) {
    if (labels_.size() != parities_.size())
      throw std::invalid_argument("SuperSpace: label/parity length mismatch");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw std::invalid_argument("SuperSpace: duplicate basis label " + labels_[i]);
  }

  // The canonical 2n|m symplectic space with unit odd diagonal.
  static SuperSpace symplectic(int n, int m) {
    return symplectic(n, m, std::vector<Rational>(m, Rational(1)));
  }

  static SuperSpace symplectic(int n, int m, std::vector<Rational> odd_diagonal) {
    std::vector<std::string> labels;
    std::vector<Parity> parities;
    for (int i = 1; i <= n; ++i) { labels.push_back("p" + std::to_string(i)); parities.push_back(Parity::Even); }
    for (int i = 1; i <= n; ++i) { labels.push_back("q" + std::to_string(i)); parities.push_back(Parity::Even); }
    for (int j = 1; j <= m; ++j) { labels.push_back("x" + std::to_string(j)); parities.push_back(Parity::Odd); }
    SuperSpace s(std::move(labels), std::move(parities));
    if (static_cast<int>(odd_diagonal.size()) != m)
      throw std::invalid_argument("SuperSpace: odd diagonal size mismatch");
    for (const auto& d : odd_diagonal)
      if (d.is_zero()) throw std::invalid_argument("SuperSpace: degenerate odd diagonal");
    s.tag_ = SymplecticTag{n, m, std::move(odd_diagonal)};
    return s;
  }

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  Parity parity(int i) const { return parities_.at(i); }
  const std::vector<Parity>& parities() const { return parities_; }

  std::optional<int> index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  bool tagged() const { return tag_.has_value(); }
  const SymplecticTag& tag() const {
    if (!tag_) throw std::logic_error("SuperSpace: not symplectically tagged");
    return *tag_;
  }

  // Canonical form value <e_i, e_j> for a tagged space (hyperbolic pairs plus
  // the odd diagonal).
  Rational form(int i, int j) const {
    const SymplecticTag& t = tag();
    int n = t.n;
    if (i < n && j >= n && j < 2 * n) return (j - n == i) ? Rational(1) : Rational(0);
    if (j < n && i >= n && i < 2 * n) return (i - n == j) ? Rational(-1) : Rational(0);
    if (i >= 2 * n && j >= 2 * n) return (i == j) ? t.odd_diagonal[i - 2 * n] : Rational(0);
    return Rational(0);
  }

  // Index of the unique partner letter with a nonzero canonical pairing, or
  // -1 when no partner exists (never happens on a tagged space).
  int partner(int i) const {
    const SymplecticTag& t = tag();
    if (i < t.n) return i + t.n;
    if (i < 2 * t.n) return i - t.n;
    return i;
  }

  friend bool operator==(const SuperSpace& a, const SuperSpace& b) {
    return a.labels_ == b.labels_ && a.parities_ == b.parities_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Parity> parities_;
  std::optional<SymplecticTag> tag_;
};

// Gram matrix of a bilinear form on a SuperSpace, indexed by basis pairs.
class InnerProduct {
 public:
  InnerProduct() = default;
  InnerProduct(SuperSpace space, std::vector<std::vector<Rational>> entries)
      : space_(std::move(space)), g_(std::move(entries)) {
    int d = space_.dim();
    if (static_cast<int>(g_.size()) != d)
      throw std::invalid_argument("InnerProduct: matrix size mismatch");
    for (auto& row : g_)
      if (static_cast<int>(row.size()) != d)
        throw std::invalid_argument("InnerProduct: matrix size mismatch");
  }

  // Gram matrix of the canonical pairing of a tagged space.
  static InnerProduct canonical(const SuperSpace& s) {
    int d = s.dim();
    std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d, Rational(0)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g[i][j] = s.form(i, j);
    return InnerProduct(s, std::move(g));
  }

  const SuperSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const Rational& at(int i, int j) const { return g_.at(i).at(j); }
  const std::vector<std::vector<Rational>>& matrix() const { return g_; }

  // Entry zero unless the two parities agree.
  bool is_even() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (!g_[i][j].is_zero() && space_.parity(i) != space_.parity(j)) return false;
    return true;
  }

  // <a,b> = -(-1)^{|a||b|} <b,a>.
  bool is_graded_skew() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        Rational rhs = g_[j][i];
        if (is_odd(space_.parity(i)) && is_odd(space_.parity(j))) rhs = -rhs;
        if (g_[i][j] != -rhs) return false;
      }
    return true;
  }

  bool is_nondegenerate() const;  // defined in linalg.hpp

  friend bool operator==(const InnerProduct& a, const InnerProduct& b) {
    return a.space_ == b.space_ && a.g_ == b.g_;
  }

 private:
  SuperSpace space_;
  std::vector<std::vector<Rational>> g_;
};

}  // namespace rgc
