#include "hetnet/errors.hpp"
#include "hetnet/presets.hpp"
#include "hetnet/spec_io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace hetnet;

namespace {

std::string data(const std::string& rel) { return std::string(HETNET_DATA_DIR) + "/" + rel; }

bool same_matrices(const FiniteGroup4& a, const FiniteGroup4& b) {
  if (a.size() != b.size()) return false;
  for (const auto& m : a.matrices()) {
    bool found = false;
    for (const auto& n : b.matrices()) found = found || (m - n).cwiseAbs().maxCoeff() < 1e-9;
    if (!found) return false;
  }
  return true;
}

std::string error_of(const std::string& text, bool group = true) {
  try {
    if (group)
      parse_group_spec(text, "spec");
    else
      parse_field_spec(text, "spec");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("group spec round trip preserves matrices") {
  for (const auto& gp : group_presets()) {
    CAPTURE(gp.name);
    const auto text = write_group_spec(gp.presentation);
    const auto back = parse_group_spec(text);
    CHECK(same_matrices(build_group(gp.presentation), build_group(back)));
  }
}

TEST_CASE("data files match the presets") {
  for (const auto& entry : std::filesystem::directory_iterator(data("groups"))) {
    const auto p = load_group_spec(entry.path());
    CAPTURE(p.name);
    CHECK(same_matrices(build_group(p), build_group(group_preset(p.name).presentation)));
  }
  for (const char* c : {"case-a", "case-b"}) {
    const auto f = load_field_spec(data(std::string("fields/") + c + ".json"));
    const auto& ref = field_preset(c).spec;
    CHECK(f.B == ref.B);
    REQUIRE(f.entries.size() == ref.entries.size());
    for (std::size_t k = 0; k < f.entries.size(); ++k) {
      CHECK(f.entries[k].A1 == ref.entries[k].A1);
      CHECK(f.entries[k].A2 == ref.entries[k].A2);
      CHECK(f.entries[k].K == ref.entries[k].K);
    }
  }
}

TEST_CASE("field spec round trip") {
  const auto& ref = field_preset("case-a").spec;
  const auto back = parse_field_spec(write_field_spec(ref));
  CHECK(back.name == ref.name);
  CHECK(back.B == ref.B);
  CHECK(back.scale == ref.scale);
  REQUIRE(back.entries.size() == ref.entries.size());
  for (std::size_t k = 0; k < ref.entries.size(); ++k) {
    CHECK((back.entries[k].span[0] - ref.entries[k].span[0]).norm() == 0.0);
    CHECK(back.entries[k].source.has_value() == ref.entries[k].source.has_value());
  }
}

TEST_CASE("syntax errors report line and column") {
  const auto msg = error_of("{\n  \"L\": \"D2\",\n  \"LK\" \"Z4\"\n}");
  CHECK(msg.find("spec:3:") != std::string::npos);
}

TEST_CASE("semantic errors report the JSON path") {
  CHECK(error_of(R"({"L": "D2", "LK": "Z4", "R": "D2"})").find("missing key 'RK'") != std::string::npos);
  CHECK(error_of(R"({"L": "Q2", "LK": "Z4", "R": "D2", "RK": "Z4"})").find("/L") != std::string::npos);
  CHECK(error_of(R"({"L": "D2", "LK": "Z4", "R": "D2", "RK": "Z4", "s": [{"l": [1, 0, 0], "r": [1, 0, 0, 0]}]})")
            .find("/s/0/l") != std::string::npos);
  CHECK(error_of(R"({"L": "D2", "LK": "Z4", "R": "D2", "RK": "Z4", "colour": 1})").find("unknown key") !=
        std::string::npos);
  CHECK(error_of(R"({"B": 100, "planes": [{"span": [[1,0,0,0],[0,0,0,1]], "A1": "x", "A2": 1}]})", false)
            .find("/planes/0/A1") != std::string::npos);
}

TEST_CASE("a malformed coset table is rejected when the group is built") {
  // Pairs the identity coset with a non-identity coset: not a homomorphism.
  const auto p = parse_group_spec(R"({"L": "D2", "LK": "Z4", "R": "D2", "RK": "Z4",
      "s": [{"l": [1, 0, 0, 0], "r": [0, 1, 0, 0]}, {"l": [0, 1, 0, 0], "r": [1, 0, 0, 0]}]})");
  CHECK_THROWS_AS(build_group(p), InputError);
}

TEST_CASE("missing files") { CHECK_THROWS_AS(load_group_spec("/nonexistent/spec.json"), InputError); }
