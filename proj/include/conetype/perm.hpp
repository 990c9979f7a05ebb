#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conetype/error.hpp"

namespace conetype {

/// A permutation of a finite set of letters. The domain is kept sorted;
/// images are stored positionally.
class Perm {
 public:
  static Perm identity(std::vector<std::string> domain) {
    Perm p(std::move(domain));
    p.image_.resize(p.domain_.size());
    for (size_t i = 0; i < p.domain_.size(); ++i) p.image_[i] = i;
    return p;
  }

  static Perm from_images(std::vector<std::string> domain, const std::vector<std::string>& images) {
    Perm p(std::move(domain));
    if (images.size() != p.domain_.size())
      fail(Errc::NotAdmissible, "image list does not match the domain");
    std::vector<bool> hit(p.domain_.size(), false);
    for (const std::string& img : images) {
      size_t j = p.index_of(img);
      if (hit[j]) fail(Errc::NotAdmissible, "'" + img + "' hit twice");
      hit[j] = true;
      p.image_.push_back(j);
    }
    return p;
  }

  /// Builds from cycle notation; letters not mentioned are fixed. Cycles must
  /// be disjoint and stay inside the domain.
  static Perm from_cycles(std::vector<std::string> domain,
                          const std::vector<std::vector<std::string>>& cycles) {
    Perm p = identity(std::move(domain));
    std::set<std::string> seen;
    for (const auto& cyc : cycles) {
      for (const std::string& a : cyc)
        if (!seen.insert(a).second) fail(Errc::NotAdmissible, "letter '" + a + "' in two cycles");
      for (size_t i = 0; i < cyc.size(); ++i) {
        size_t from = p.index_of(cyc[i]);
        size_t to = p.index_of(cyc[(i + 1) % cyc.size()]);
        p.image_[from] = to;
      }
    }
    return p;
  }

  const std::vector<std::string>& domain() const { return domain_; }

  const std::string& apply(const std::string& a) const { return domain_[image_[index_of(a)]]; }

  bool is_identity() const {
    for (size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  /// this after inner; both must share the domain.
  Perm compose(const Perm& inner) const {
    if (domain_ != inner.domain_) fail(Errc::DomainMismatch, "permutation domains differ");
    Perm p(domain_);
    p.image_.resize(domain_.size());
    for (size_t i = 0; i < domain_.size(); ++i) p.image_[i] = image_[inner.image_[i]];
    return p;
  }

  Perm inverse() const {
    Perm p(domain_);
    p.image_.resize(domain_.size());
    for (size_t i = 0; i < domain_.size(); ++i) p.image_[image_[i]] = i;
    return p;
  }

  /// Canonical cycle notation: each cycle starts at its least letter, cycles
  /// are ordered by first letter, fixed points are omitted.
  std::vector<std::vector<std::string>> cycles() const {
    std::vector<std::vector<std::string>> out;
    std::vector<bool> seen(domain_.size(), false);
    for (size_t i = 0; i < domain_.size(); ++i) {
      if (seen[i] || image_[i] == i) continue;
      std::vector<std::string> cyc;
      for (size_t j = i; !seen[j]; j = image_[j]) {
        seen[j] = true;
        cyc.push_back(domain_[j]);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  explicit Perm(std::vector<std::string> domain) : domain_(std::move(domain)) {
    std::sort(domain_.begin(), domain_.end());
    auto dup = std::adjacent_find(domain_.begin(), domain_.end());
    if (dup != domain_.end()) fail(Errc::NotAdmissible, "duplicate letter '" + *dup + "'");
  }

  size_t index_of(const std::string& a) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), a);
    if (it == domain_.end() || *it != a)
      fail(Errc::LetterNotInAlphabet, "letter '" + a + "' not in the domain");
    return static_cast<size_t>(it - domain_.begin());
  }

  std::vector<std::string> domain_;
  std::vector<size_t> image_;
};

/// A two-letter swap; handy in tests and fixtures.
inline Perm transposition(std::vector<std::string> domain, const std::string& a,
                          const std::string& b) {
  return Perm::from_cycles(std::move(domain), {{a, b}});
}

}  // namespace conetype
