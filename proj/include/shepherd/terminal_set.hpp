#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shepherd {

// The ordered list of named inputs available as expression-tree leaves.
//   SingleDog4: dog-x dog-y sheep-x sheep-y
//   MultiDog12: dog-x dog-y dog2-x dog2-y dog3-x dog3-y sheep-x sheep-y
//               flock-x flock-y steer-x steer-y          (exactly 3 dogs)
class TerminalSet {
 public:
  enum class Kind { SingleDog4, MultiDog12 };

  static const TerminalSet& single_dog();
  static const TerminalSet& multi_dog();
  static const TerminalSet& of(Kind kind);

  Kind kind() const { return kind_; }
  int arity() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }

  // -1 when the name is not in the set.
  int index_of(std::string_view name) const;

 private:
  TerminalSet(Kind kind, std::vector<std::string> labels)
      : kind_(kind), labels_(std::move(labels)) {}

  Kind kind_;
  std::vector<std::string> labels_;
};

}  // namespace shepherd
