#include "cds/core/trace.hpp"

namespace cds {

std::string_view to_string(ModelRole role) {
  switch (role) {
    case ModelRole::Aligned:
      return "aligned";
    case ModelRole::Pretrained:
      return "pretrained";
    case ModelRole::Mixture:
      return "mixture";
  }
  return "unknown";
}

std::size_t GenerationTrace::yes_decisions() const {
  std::size_t n = 0;
  for (const auto& s : steps) {
    if (s.decision == DecisionLabel::Yes) ++n;
  }
  return n;
}

}  // namespace cds
