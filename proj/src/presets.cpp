#include "hetnet/presets.hpp"

#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

Presentation make(const std::string& name, const char* L, const char* LK, const char* R, const char* RK,
                  CosetPairing s = CosetPairing::automatic()) {
  Presentation p;
  p.name = name;
  p.L = QuatGroupLabel::parse(L);
  p.LK = QuatGroupLabel::parse(LK);
  p.R = QuatGroupLabel::parse(R);
  p.RK = QuatGroupLabel::parse(RK);
  p.s = std::move(s);
  return p;
}

GroupPreset row(const std::string& name, const char* L, const char* LK, const char* R, const char* RK, GraphType t,
                CosetPairing s = CosetPairing::automatic(), std::string note = {}) {
  return {name, make(name, L, LK, R, RK, std::move(s)), t, std::move(note)};
}

GroupPreset with_sigma(GroupPreset g, const std::string& name, const Quaternion& a, const Quaternion& b,
                       GraphType t) {
  g.name = name;
  g.presentation.name = name;
  g.presentation.sigma = GroupElement4::reflection(a, b);
  g.computed = t;
  return g;
}

std::vector<GroupPreset> build_group_presets() {
  using G = GraphType;
  const auto id = CosetPairing::identity();
  std::vector<GroupPreset> v;
  v.push_back(row("d2d2-d2d2", "D2", "D2", "D2", "D2", G::V));
  v.push_back(row("d2d2-d6d6", "D2", "D2", "D6", "D6", G::V));
  v.push_back(row("d2d2-d4d4", "D2", "D2", "D4", "D4", G::VI));
  v.push_back(row("d2z4-d2z4", "D2", "Z4", "D2", "Z4", G::IV));
  v.push_back(row("d2z2-d2z2", "D2", "Z2", "D2", "Z2", G::III, id));
  v.push_back(row("d2d1-d2d1", "D2", "D1", "D2", "D1", G::IV));
  v.push_back(row("d4d2-d2z4", "D4", "D2", "D2", "Z4", G::II, CosetPairing::automatic(),
                  "one further plane orbit meets no semiaxis"));
  v.push_back(row("d2d1-d2z4", "D2", "D1", "D2", "Z4", G::IV, CosetPairing::automatic(),
                  "the table lists III; the literal embedding classifies as IV"));
  v.push_back(row("d2d2-tt", "D2", "D2", "T", "T", G::II));
  v.push_back(row("d4d4-tt", "D4", "D4", "T", "T", G::I));
  v.push_back(row("d2d2-oo", "D2", "D2", "O", "O", G::III));
  v.push_back(row("d2z4-ot", "D2", "Z4", "O", "T", G::II));
  v.push_back(row("d4z8-ot", "D4", "Z8", "O", "T", G::I));
  v.push_back(row("d2d1-ot", "D2", "D1", "O", "T", G::II));
  v.push_back(row("d8d4-ot", "D8", "D4", "O", "T", G::I));
  v.push_back(row("d2d2-ii", "D2", "D2", "I", "I", G::II));
  v.push_back(row("d4d4-ii", "D4", "D4", "I", "I", G::I));
  v.push_back(row("d2z1-d2z1", "D2", "Z1", "D2", "Z1", G::II, id));
  v.push_back(with_sigma(row("", "D2", "Z2", "D2", "Z2", G::III, id), "d2z2-d2z2-refl", Quaternion{0, 1, 0, 0},
                         Quaternion{0, 1, 0, 0}, G::III));
  v.push_back(with_sigma(row("", "D2", "Z1", "D2", "Z1", G::II, id), "d2z1-d2z1-refl", Quaternion{1, 0, 0, 0},
                         Quaternion{1, 0, 0, 0}, G::II));
  return v;
}

FieldEntry entry(const char* name, Vec4 s0, Vec4 s1, Vec4 source, int K, double A1, double A2) {
  FieldEntry e;
  e.name = name;
  e.span = {s0, s1};
  e.source = source;
  e.K = K;
  e.A1 = A1;
  e.A2 = A2;
  return e;
}

// The IVc network of (D2|Z4;D2|Z4): 4-cycle L1 -> L2 -> L4 -> L3 -> L1 through
// P3, P2, P5, P1, with P4 and P6 closing the two 2-cycles.
FieldSpec ivc_field(const std::string& name, double a1, double a2, double b1, double b2) {
  FieldSpec f;
  f.name = name;
  f.B = 100.0;
  f.entries = {
      entry("P1", Vec4(1, 0, 0, 0), Vec4(0, 0, 0, 1), Vec4(1, 0, 0, 1), 4, a1, a2),
      entry("P2", Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 1, 0, 0), 4, a1, a2),
      entry("P3", Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(1, 0, 0, 0), 2, b1, b2),
      entry("P4", Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 1, 0), 2, b1, b2),
      entry("P5", Vec4(1, 0, 0, -1), Vec4(0, 1, 1, 0), Vec4(0, 1, 1, 0), 2, b1, b2),
      entry("P6", Vec4(1, 0, 0, 1), Vec4(0, 1, 1, 0), Vec4(1, 0, 0, 1), 2, b1, b2),
  };
  return f;
}

}  // namespace

const std::vector<GroupPreset>& group_presets() {
  static const std::vector<GroupPreset> v = build_group_presets();
  return v;
}

const std::vector<FieldPreset>& field_presets() {
  static const std::vector<FieldPreset> v = {
      {"case-a", "d2z4-d2z4", ivc_field("case-a", 25, -5, 15, -5)},
      {"case-b", "d2z4-d2z4", ivc_field("case-b", 2, -1, 25, -5)},
  };
  return v;
}

const GroupPreset& group_preset(const std::string& name) {
  for (const auto& g : group_presets())
    if (g.name == name) return g;
  throw InputError("unknown group preset '" + name + "'");
}

const FieldPreset& field_preset(const std::string& name) {
  for (const auto& f : field_presets())
    if (f.name == name) return f;
  throw InputError("unknown field preset '" + name + "'");
}

}  // namespace hetnet
