#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/word.hpp"

namespace conetype {

/// A portrait over an arbitrary valid DFA (not necessarily minimal): a finite
/// family of injections Sigma(v) -> Sigma, the identity on Sigma(v)
/// elsewhere. Whether such a family defines a tree automorphism is decided
/// level by level with check_general_portrait.
class GeneralPortrait {
 public:
  using Injection = std::map<std::string, std::string>;

  GeneralPortrait(Dfa dfa, std::map<Word, Injection> local)
      : dfa_(std::move(dfa)), local_(std::move(local)) {
    validate(dfa_);
    for (const auto& [v, inj] : local_) {
      auto q = run(dfa_, v);
      if (!q) fail(Errc::WordNotAccepted, "support vertex '" + v.joined(" ") + "'");
      const auto& domain = dfa_.out_letters(*q);
      if (inj.size() != domain.size())
        fail(Errc::NotAdmissible, "injection at '" + v.joined(" ") + "' has the wrong domain");
      std::set<std::string> images;
      for (const std::string& a : domain) {
        auto it = inj.find(a);
        if (it == inj.end())
          fail(Errc::NotAdmissible,
               "injection at '" + v.joined(" ") + "' is undefined on '" + a + "'");
        if (!dfa_.has_letter(it->second))
          fail(Errc::LetterNotInAlphabet, "image letter '" + it->second + "'");
        if (!images.insert(it->second).second)
          fail(Errc::NotAdmissible, "injection at '" + v.joined(" ") + "' is not injective");
      }
    }
  }

  const Dfa& dfa() const { return dfa_; }

  /// The local injection at v; identity on Sigma(v) by convention when v is
  /// not in the support.
  Injection local(const Word& v) const {
    auto it = local_.find(v);
    if (it != local_.end()) return it->second;
    Injection id;
    auto q = run(dfa_, v);
    if (!q) fail(Errc::WordNotAccepted, "'" + v.joined(" ") + "'");
    for (const std::string& a : dfa_.out_letters(*q)) id[a] = a;
    return id;
  }

  const std::map<Word, Injection>& support() const { return local_; }

 private:
  Dfa dfa_;
  std::map<Word, Injection> local_;
};

struct GeneralPortraitCheck {
  bool ok = true;
  std::optional<Word> offending;
  std::string reason;
};

/// The incremental acceptance test: walking the levels from the root, every
/// local injection must map Sigma(v) into Sigma(sigma(v)), where sigma(v) is
/// accumulated from the previous levels. If that holds up to the given
/// depth, the induced map sends every accepted word of length <= depth to an
/// accepted word; false is returned with the first offending vertex
/// otherwise.
inline GeneralPortraitCheck check_general_portrait(const GeneralPortrait& gp, size_t depth) {
  const Dfa& dfa = gp.dfa();
  // (vertex, image so far), level by level
  std::vector<std::pair<Word, Word>> frontier{{Word(), Word()}};
  for (size_t k = 0; k <= depth; ++k) {
    std::vector<std::pair<Word, Word>> next;
    for (const auto& [v, image] : frontier) {
      const std::string qv = *run(dfa, v);
      auto q_image = run(dfa, image);
      if (!q_image)
        return {false, v, "image '" + image.joined(" ") + "' is not accepted"};
      const auto& target_letters = dfa.out_letters(*q_image);
      GeneralPortrait::Injection inj = gp.local(v);
      for (const std::string& a : dfa.out_letters(qv)) {
        const std::string& b = inj.at(a);
        if (!std::binary_search(target_letters.begin(), target_letters.end(), b))
          return {false, v,
                  "local injection sends '" + a + "' to '" + b + "' outside Sigma(" +
                      image.joined(" ") + ")"};
        if (k < depth) next.emplace_back(v.with(a), image.with(b));
      }
    }
    frontier = std::move(next);
  }
  return {};
}

}  // namespace conetype
