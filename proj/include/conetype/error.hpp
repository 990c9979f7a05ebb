#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace conetype {

// Stable error codes; the string names are part of the CLI contract.
enum class Errc {
  DuplicateOutLabel,
  UnknownState,
  UnknownEdge,
  DuplicateEdgeId,
  LetterNotInAlphabet,
  RootNotPreserved,
  EdgeEndpointMismatch,
  NotLocallyInjective,
  NotLocallySurjective,
  TargetNotConnected,
  NotAPath,
  WrongStartVertex,
  DomainMismatch,
  NotConnected,
  NotMinimal,
  WordNotAccepted,
  NotAdmissible,
  BaseMismatch,
  ParseError,
  IoError,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateOutLabel: return "DuplicateOutLabel";
    case Errc::UnknownState: return "UnknownState";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::DuplicateEdgeId: return "DuplicateEdgeId";
    case Errc::LetterNotInAlphabet: return "LetterNotInAlphabet";
    case Errc::RootNotPreserved: return "RootNotPreserved";
    case Errc::EdgeEndpointMismatch: return "EdgeEndpointMismatch";
    case Errc::NotLocallyInjective: return "NotLocallyInjective";
    case Errc::NotLocallySurjective: return "NotLocallySurjective";
    case Errc::TargetNotConnected: return "TargetNotConnected";
    case Errc::NotAPath: return "NotAPath";
    case Errc::WrongStartVertex: return "WrongStartVertex";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NotMinimal: return "NotMinimal";
    case Errc::WordNotAccepted: return "WordNotAccepted";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace conetype
