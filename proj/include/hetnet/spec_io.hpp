#pragma once

#include "hetnet/group4.hpp"
#include "hetnet/vfield.hpp"

#include <filesystem>
#include <string>

namespace hetnet {

/// Group spec (JSON):
///   {"name": "...", "L": "D2", "LK": "Z4", "R": "D2", "RK": "Z4",
///    "s": "automatic" | "identity" | [{"l": [w,x,y,z], "r": [w,x,y,z]}, ...],
///    "s_index": 1, "sigma": {"a": [w,x,y,z], "b": [w,x,y,z]}}
/// Syntax errors report line and column; semantic errors report the JSON path.
Presentation parse_group_spec(const std::string& text, const std::string& origin = "<group spec>");
Presentation load_group_spec(const std::filesystem::path& path);
std::string write_group_spec(const Presentation& p);

/// Field spec (JSON):
///   {"name": "...", "B": 100, "angular_scale": "per-K" | "literal",
///    "planes": [{"name": "P1", "span": [[...], [...]], "source": [...], "offset": 0.0,
///                "K": 4, "A1": 25, "A2": -5}, ...]}
FieldSpec parse_field_spec(const std::string& text, const std::string& origin = "<field spec>");
FieldSpec load_field_spec(const std::filesystem::path& path);
std::string write_field_spec(const FieldSpec& f);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hetnet
