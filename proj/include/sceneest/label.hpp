#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sceneest {

// Bin category for the sorting task.
enum class Category { kCleaning, kNonCleaning };

struct Label {
  std::string name;
  Category category = Category::kNonCleaning;
};

// Immutable-after-setup set of semantic labels; indices are the canonical
// label ids used by detections, tracks and confusion matrices.
class LabelRegistry {
 public:
  int add(Label label) {
    if (find(label.name) >= 0) {
      throw std::invalid_argument("duplicate label name: " + label.name);
    }
    labels_.push_back(std::move(label));
    return static_cast<int>(labels_.size()) - 1;
  }

  int size() const { return static_cast<int>(labels_.size()); }

  const Label& at(int index) const { return labels_.at(index); }

  int find(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
      if (labels_[i].name == name) return i;
    }
    return -1;
  }

 private:
  std::vector<Label> labels_;
};

}  // namespace sceneest
