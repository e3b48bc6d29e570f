#pragma once

#include "hetnet/graphs.hpp"
#include "hetnet/group4.hpp"
#include "hetnet/vfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hetnet {

struct GroupPreset {
  std::string name;
  Presentation presentation;
  /// Type computed by this library; differs from the table only where noted.
  GraphType computed;
  std::string note;
};

struct FieldPreset {
  std::string name;
  std::string group;  // name of a GroupPreset
  FieldSpec spec;
};

/// One group per row of the classification tables at minimal parameters.
const std::vector<GroupPreset>& group_presets();
const std::vector<FieldPreset>& field_presets();

/// Throws InputError on unknown names.
const GroupPreset& group_preset(const std::string& name);
const FieldPreset& field_preset(const std::string& name);

}  // namespace hetnet
