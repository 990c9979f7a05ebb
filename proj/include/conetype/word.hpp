#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace conetype {

/// A word over an alphabet of opaque string letters. The empty word is the
/// root vertex of every path language tree.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::string> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<std::string> letters) : letters_(letters) {}

  // One letter per character, for single-character alphabets.
  static Word chars(std::string_view s) {
    std::vector<std::string> ls;
    ls.reserve(s.size());
    for (char c : s) ls.emplace_back(1, c);
    return Word(std::move(ls));
  }

  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::string& operator[](size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<std::string>& letters() const { return letters_; }

  Word with(std::string letter) const {
    Word w(*this);
    w.letters_.push_back(std::move(letter));
    return w;
  }

  Word prefix(size_t n) const {
    if (n >= size()) return *this;
    return Word(std::vector<std::string>(letters_.begin(), letters_.begin() + n));
  }

  Word suffix_from(size_t n) const {
    if (n >= size()) return Word();
    return Word(std::vector<std::string>(letters_.begin() + n, letters_.end()));
  }

  bool starts_with(const Word& p) const {
    if (p.size() > size()) return false;
    for (size_t i = 0; i < p.size(); ++i)
      if (letters_[i] != p.letters_[i]) return false;
    return true;
  }

  Word concat(const Word& tail) const {
    Word w(*this);
    w.letters_.insert(w.letters_.end(), tail.letters_.begin(), tail.letters_.end());
    return w;
  }

  std::string joined(std::string_view sep = "") const {
    std::string out;
    for (size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += sep;
      out += letters_[i];
    }
    return out;
  }

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::string> letters_;
};

// Orders words by length first, then lexicographically; the order used for
// level enumerations and all word-keyed listings.
inline bool level_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace conetype
