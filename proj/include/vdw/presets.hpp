// presets.hpp - built-in atom records (embedded copy of data/atoms.txt).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vdw/atom_presets_data.hpp"
#include "vdw/atoms.hpp"

namespace vdw {

inline const std::vector<AtomPreset>& builtin_atom_presets() {
  static const std::vector<AtomPreset> presets = parse_atom_presets(detail::builtin_atom_presets_text);
  return presets;
}

inline std::string atom_preset_names() {
  std::string s;
  for (const auto& p : builtin_atom_presets()) s += (s.empty() ? "" : ", ") + p.name;
  return s;
}

inline const AtomPreset& find_atom_preset(const std::string& name) {
  for (const auto& p : builtin_atom_presets())
    if (p.name == name) return p;
  throw std::out_of_range("unknown atom preset '" + name + "' (available: " + atom_preset_names() + ")");
}

}  // namespace vdw
