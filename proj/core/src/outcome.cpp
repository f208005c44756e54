#include "lazylight/outcome.hpp"

namespace lazylight {

std::string_view to_string(Result r) noexcept {
  switch (r) {
    case Result::ChallengerWins: return "ChallengerWins";
    case Result::ResponderWins: return "ResponderWins";
    case Result::NestedMMRs: return "NestedMMRs";
  }
  return "Unknown";
}

std::string_view to_string(Reason r) noexcept {
  switch (r) {
    case Reason::ResponderTimeout: return "ResponderTimeout";
    case Reason::MalformedResponse: return "MalformedResponse";
    case Reason::ChildrenMismatch: return "ChildrenMismatch";
    case Reason::BadPredecessorProof: return "BadPredecessorProof";
    case Reason::NotAdjacent: return "NotAdjacent";
    case Reason::BadTransition: return "BadTransition";
    case Reason::BadGenesis: return "BadGenesis";
    case Reason::InvalidQuery: return "InvalidQuery";
    case Reason::ChallengerTimeout: return "ChallengerTimeout";
    case Reason::ResponderDefended: return "ResponderDefended";
    case Reason::SuffixMalformed: return "SuffixMalformed";
    case Reason::SuffixNotAdjacent: return "SuffixNotAdjacent";
    case Reason::SuffixBadTransition: return "SuffixBadTransition";
    case Reason::SuffixInconsistent: return "SuffixInconsistent";
    case Reason::ResponderTooShort: return "ResponderTooShort";
    case Reason::NestedMMRs: return "NestedMMRs";
    case Reason::InvalidClaim: return "InvalidClaim";
  }
  return "Unknown";
}

}  // namespace lazylight
