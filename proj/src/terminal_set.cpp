#include "shepherd/terminal_set.hpp"

namespace shepherd {

const TerminalSet& TerminalSet::single_dog() {
  static const TerminalSet set(Kind::SingleDog4, {"dog-x", "dog-y", "sheep-x", "sheep-y"});
  return set;
}

const TerminalSet& TerminalSet::multi_dog() {
  static const TerminalSet set(Kind::MultiDog12,
                               {"dog-x", "dog-y", "dog2-x", "dog2-y", "dog3-x", "dog3-y",
                                "sheep-x", "sheep-y", "flock-x", "flock-y", "steer-x",
                                "steer-y"});
  return set;
}

const TerminalSet& TerminalSet::of(Kind kind) {
  return kind == Kind::SingleDog4 ? single_dog() : multi_dog();
}

int TerminalSet::index_of(std::string_view name) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace shepherd
