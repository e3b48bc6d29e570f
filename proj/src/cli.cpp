#include "hetnet/cli.hpp"

#include "hetnet/dynamics.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/graphs.hpp"
#include "hetnet/kernels.hpp"
#include "hetnet/presets.hpp"
#include "hetnet/report.hpp"
#include "hetnet/spec_io.hpp"
#include "hetnet/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>

namespace hetnet {

namespace {

namespace fs = std::filesystem;

struct Inputs {
  FiniteGroup4 group;
  std::optional<FieldSpec> field;
};

const FieldPreset* find_field_preset(const std::string& name) {
  for (const auto& f : field_presets())
    if (f.name == name) return &f;
  return nullptr;
}

Inputs load_inputs(const RunConfig& cfg, bool need_field) {
  if (!cfg.preset.empty() && !cfg.group_file.empty()) throw InputError("give either --preset or --group, not both");
  Presentation pres;
  std::optional<FieldSpec> field;
  if (!cfg.preset.empty()) {
    if (const auto* fp = find_field_preset(cfg.preset)) {
      pres = group_preset(fp->group).presentation;
      field = fp->spec;
    } else {
      pres = group_preset(cfg.preset).presentation;
    }
  } else if (!cfg.group_file.empty()) {
    pres = load_group_spec(cfg.group_file);
  } else {
    throw InputError("no group given (use --group FILE or --preset NAME)");
  }
  if (!cfg.field_file.empty()) field = load_field_spec(cfg.field_file);
  if (need_field && !field) throw InputError("no field given (use --field FILE or a field preset)");
  if (field && cfg.B) field->B = *cfg.B;
  return {build_group(pres), field};
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out.empty()) return;
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InputError("cannot write " + p.string());
  f << text;
}

int cmd_presets(std::ostream& out) {
  out << "group presets\n";
  for (const auto& g : group_presets())
    out << "  " << g.name << "  " << g.presentation.str() << "  type " << to_string(g.computed)
        << (g.note.empty() ? "" : "  (" + g.note + ")") << "\n";
  out << "field presets\n";
  for (const auto& f : field_presets()) out << "  " << f.name << "  group " << f.group << "\n";
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg, false);
  const IsotropyData iso = analyze_isotropy(in.group);
  const GroupGraph graph = build_graph(in.group, iso);
  const ExpectedType expected =
      in.group.presentation() ? expected_type(*in.group.presentation()) : ExpectedType{};
  const std::string text = classify_text(in.group, iso, graph, expected);
  out << text;
  write_file(cfg, "classify.txt", text);
  write_file(cfg, "graph.dot", graph_dot(graph));
  return kExitOk;
}

int cmd_networks(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(cfg, false);
  const GroupGraph graph = build_graph(in.group);
  if (graph.type == GraphType::NonSimple || !graph.simple) {
    err << "error: the graph is not simple (some semiaxis is not simple), so the enumeration of maximal "
           "networks does not apply\n";
    return kExitInput;
  }
  std::vector<NetworkDiagram> nets;
  std::string note;
  if (graph.type == GraphType::I) {
    note = "type I graphs admit two distinct homoclinic cycles and no heteroclinic network";
  } else {
    nets = enumerate_maximal_networks(graph);
    if (nets.empty()) note = "no edge orientation puts every edge on a directed cycle";
  }
  out << "type " << to_string(graph.type) << ": " << nets.size() << " network" << (nets.size() == 1 ? "" : "s")
      << "\n";
  if (!note.empty()) out << "note: " << note << "\n";
  for (std::size_t k = 0; k < nets.size(); ++k) {
    const auto cycles = subcycles(nets[k]);
    out << "  " << nets[k].label << ": " << nets[k].edges.size() << " edges, " << cycles.size() << " subcycles\n";
    write_file(cfg, "network_" + std::to_string(k + 1) + ".dot", network_dot(nets[k], nets[k].label));
  }
  write_file(cfg, "networks.json", networks_json(graph, nets, note));
  return kExitOk;
}

AttractionOptions attraction_options(const RunConfig& cfg) {
  AttractionOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_time = cfg.max_time;
  opt.epsilon = std::max(opt.epsilon, cfg.epsilon);
  return opt;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg, true);
  const EquivariantField f = assemble_field(in.group, *in.field);
  const AttractionContext ctx(f);
  AttractionOptions opt = attraction_options(cfg);

  write_file(cfg, "equilibria.json", equilibria_json(f, ctx.equilibria()));
  out << "network " << ctx.network().label << ", " << ctx.cycles().size() << " subcycles\n";

  if (cfg.runs > 1) {
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.runs));
    std::iota(seeds.begin(), seeds.end(), cfg.seed);
    const auto its = attraction_batch_parallel(ctx, seeds, cfg.epsilon, opt);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < its.size(); ++k) {
      out << "  seed " << seeds[k] << ": " << to_string(its[k].verdict)
          << (its[k].cycle_name.empty() ? "" : " " + its[k].cycle_name) << "\n";
      runs.push_back({{"seed", seeds[k]},
                      {"verdict", to_string(its[k].verdict)},
                      {"cycle_name", its[k].cycle_name},
                      {"entries", its[k].entries.size()},
                      {"t_final", its[k].t_final},
                      {"impossible_transition", its[k].impossible_transition}});
    }
    write_file(cfg, "batch.json", nlohmann::ordered_json{{"runs", runs}}.dump(2) + "\n");
    return kExitOk;
  }

  opt.sample_stride = cfg.stride;
  const Vec4 x0 = random_seed_near_network(ctx, cfg.epsilon, cfg.seed);
  const Itinerary it = detect_attraction(ctx, x0, opt);
  out << "verdict: " << to_string(it.verdict) << (it.cycle_name.empty() ? "" : " " + it.cycle_name) << "\n";
  out << "  " << it.entries.size() << " ball entries, t = " << it.t_final << "\n";
  if (!it.note.empty()) out << "  note: " << it.note << "\n";
  write_file(cfg, "itinerary.json", itinerary_json(ctx, it, x0, cfg.seed));
  write_file(cfg, "trajectory.csv", trajectory_csv(it.samples, ctx.point_orbits()));
  write_file(cfg, "plot.gp", gnuplot_script("trajectory.csv"));
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg, true);
  const EquivariantField f = assemble_field(in.group, *in.field);
  const StabilityReport rep = analyze_stability(f);
  out << stability_text(rep);
  write_file(cfg, "stability.json", stability_json(rep));
  return kExitOk;
}

void add_inputs(CLI::App* sub, RunConfig& cfg, bool field) {
  sub->add_option("--group", cfg.group_file, "group spec file (JSON)");
  sub->add_option("--preset", cfg.preset, "built-in group or field preset");
  if (field) {
    sub->add_option("--field", cfg.field_file, "field spec file (JSON)");
    sub->add_option("--B", cfg.B, "override the suppression constant B")->check(CLI::NonNegativeNumber);
  }
  sub->add_option("--out", cfg.out, "output directory");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite subgroups of O(4), their heteroclinic networks and stability"};
  app.require_subcommand(1);

  auto* presets = app.add_subcommand("presets", "list built-in presets");
  auto* classify = app.add_subcommand("classify", "isotropy tables, graph and type");
  add_inputs(classify, cfg, false);
  auto* networks = app.add_subcommand("networks", "enumerate maximal networks");
  add_inputs(networks, cfg, false);
  auto* simulate = app.add_subcommand("simulate", "integrate and detect the attracting cycle");
  add_inputs(simulate, cfg, true);
  simulate->add_option("--seed", cfg.seed, "seed of the initial condition");
  simulate->add_option("--tol-rel", cfg.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--tol-abs", cfg.abs_tol, "absolute tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--max-time", cfg.max_time, "integration time limit")->check(CLI::PositiveNumber);
  simulate->add_option("--epsilon", cfg.epsilon, "initial distance bound from the network")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--runs", cfg.runs, "number of seeds, run in parallel")->check(CLI::PositiveNumber);
  simulate->add_option("--stride", cfg.stride, "CSV keeps every n-th step")->check(CLI::PositiveNumber);
  auto* stability = app.add_subcommand("stability", "condst, principal structure and network verdicts");
  add_inputs(stability, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is an input error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (presets->parsed()) return cmd_presets(out);
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (networks->parsed()) return cmd_networks(cfg, out, err);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (stability->parsed()) return cmd_stability(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateError& e) {
    out << "no verdict: " << e.what() << "\n";
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const StructuralError& e) {
    err << "structural failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace hetnet
