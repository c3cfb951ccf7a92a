#include "cds/models/bridge.hpp"

namespace cds {

VocabularyBridge::VocabularyBridge(const Vocabulary& from, const Vocabulary& to)
    : from_(&from), to_(&to), identity_(from == to) {}

TokenId VocabularyBridge::translate(TokenId id) const {
  if (identity_) return id;
  if (from_->is_stop(id)) return to_->eos();
  const std::string& text = from_->token(id);
  if (auto target = to_->find(text)) return *target;
  throw BridgeError("vocabulary bridge: token '" + text + "' has no counterpart in the target vocabulary");
}

}  // namespace cds
