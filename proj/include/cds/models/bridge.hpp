#pragma once

#include <optional>
#include <stdexcept>

#include "cds/core/vocabulary.hpp"

namespace cds {

class BridgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moves single tokens between two vocabularies through their strings.
// Experimental: only exact string matches are bridged; STOP tokens map to the
// target's end-of-sequence token.
class VocabularyBridge {
 public:
  VocabularyBridge(const Vocabulary& from, const Vocabulary& to);

  bool identity() const { return identity_; }
  // Throws BridgeError when the token has no counterpart.
  TokenId translate(TokenId id) const;

 private:
  const Vocabulary* from_;
  const Vocabulary* to_;
  bool identity_;
};

}  // namespace cds
