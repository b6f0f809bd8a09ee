#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isoclus/errors.hpp"
#include "isoclus/io.hpp"

namespace {

struct Spec {
  std::string group;
  std::string sub;
  std::string about;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> inputs;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> s{
      {"construct", "surgery", "Equal-area sector and arc partition of a square frame",
       {{"q0", "inner square side (1)"}, {"q1", "outer square side (3)"}, {"m", "number of chambers (100)"}},
       {{"a", "region A inside the frame (default: the whole frame)"}}},
      {"construct", "reassembly", "Hexagonal partition with boundary pieces reassembled",
       {{"n", "number of chambers (64)"}, {"offset-x", "lattice offset x (0)"}, {"offset-y", "lattice offset y (0)"}},
       {{"omega", "ambient region (default: unit square)"}}},
      {"construct", "competitor", "Replace the chambers of a reassembled cluster near Q_l by hexagons",
       {{"n", "number of chambers (576)"}, {"mu", "diameter bound (diam of the unit hexagon)"},
        {"ql-side", "side of the centered square Q_l (1)"}},
       {{"omega", "ambient region (default: [0,3]^2)"}, {"ql", "window Q_l (overrides --ql-side)"}}},
      {"bounds", "hales", "Hexagonal isoperimetric inequality on the torus or in the plane",
       {{"torus", "honeycomb torus AxB when no cluster is given (4x4)"}},
       {{"cluster", "cluster JSON"}}},
      {"bounds", "local", "Local lower bound P(E;O)", {}, {{"cluster", "cluster JSON"}, {"window", "window region O"}}},
      {"bounds", "equi", "Equidistribution residual in a window",
       {{"n", "number of chambers (256)"}, {"ql-side", "side of the centered square Q_l (0.5)"}},
       {{"omega", "ambient region (default: unit square)"}, {"ql", "window Q_l"}}},
      {"stability", "arc", "Arc function values",
       {{"a", "comma-separated areas"}, {"eta-max", "range for the quadratic fit (0.05)"}}, {}},
      {"stability", "chordal", "Chordal inequality on a bulged unit hexagon",
       {{"areas", "up to 6 comma-separated bulge areas (0.01)"}}, {}},
      {"stability", "ngon", "Regular n-gon fit on a random near-regular corpus",
       {{"n", "sides (6)"}, {"samples", "corpus size (100)"}, {"deficit-max", "largest deficit (0.01)"}}, {}},
      {"stability", "hexagon", "Unit hexagon inequality on a bulged hexagon",
       {{"areas", "up to 6 comma-separated bulge areas (0.01)"}}, {}},
      {"stability", "alpha", "Asymmetry of the three-edge perturbation (eps 0 = honeycomb)",
       {{"torus", "AxB (2x2)"}, {"eps", "comma-separated kink heights (0)"}}, {}},
      {"stability", "kappa", "Quadratic stability constant estimate",
       {{"torus", "AxB (2x2)"}, {"eps", "comma-separated kink heights (0.001,0.01,0.05)"}}, {}},
      {"cheeger", "convex", "Cheeger constant and set of a convex polygon", {}, {{"k", "convex polygon JSON"}}},
      {"cheeger", "hn-sweep", "H_N sandwich bounds over a range of N",
       {{"nmin", "first N (1)"}, {"nmax", "last N (64)"}, {"eps", "exponent margin (0.01)"}},
       {{"omega", "ambient region (default: unit square)"}}},
      {"render", "", "Render a cluster JSON as SVG", {}, {{"cluster", "cluster JSON"}}},
  };
  return s;
}

std::string key_of(std::string flag) {
  for (char& c : flag)
    if (c == '-') c = '_';
  return flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on planar isoperimetric clusters and hexagonal tilings", "isoclus"};
  app.require_subcommand(1);
  isoclus::ExperimentConfig cfg;
  std::string out = ".", csv;
  bool svg = false;
  app.add_option("--seed", cfg.seed, "random seed (42)");
  app.add_option("--out", out, "output directory (.)");
  app.add_flag("--svg", svg, "also write an SVG per constructed cluster");
  app.add_option("--csv", csv, "CSV file to append to (default <out>/<command>.csv)");

  std::map<std::string, std::string> values;
  std::vector<std::pair<CLI::App*, const Spec*>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const Spec& s : specs()) {
    CLI::App* leaf;
    if (s.sub.empty()) {
      leaf = app.add_subcommand(s.group, s.about);
    } else {
      if (!groups.count(s.group)) {
        groups[s.group] = app.add_subcommand(s.group, s.group + " experiments");
        groups[s.group]->require_subcommand(1);
        groups[s.group]->fallthrough();
      }
      leaf = groups[s.group]->add_subcommand(s.sub, s.about);
    }
    leaf->fallthrough();
    for (const auto& [flag, help] : s.params) leaf->add_option("--" + flag, values[s.group + "/" + s.sub + "/p/" + flag], help);
    for (const auto& [flag, help] : s.inputs) leaf->add_option("--" + flag, values[s.group + "/" + s.sub + "/i/" + flag], help);
    leaves.push_back({leaf, &s});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  for (auto [leaf, s] : leaves) {
    if (!leaf->parsed()) continue;
    cfg.command = s->sub.empty() ? std::vector<std::string>{s->group} : std::vector<std::string>{s->group, s->sub};
    for (const auto& [flag, help] : s->params)
      if (leaf->count("--" + flag)) cfg.params[key_of(flag)] = values[s->group + "/" + s->sub + "/p/" + flag];
    for (const auto& [flag, help] : s->inputs)
      if (leaf->count("--" + flag)) cfg.inputs[key_of(flag)] = values[s->group + "/" + s->sub + "/i/" + flag];
  }
  cfg.out_dir = out;
  cfg.emit_svg = svg;
  if (!csv.empty()) cfg.csv = csv;

  try {
    isoclus::RunOutput r = isoclus::run(cfg);
    std::cout << r.table.to_string(true);
    std::cerr << "appended " << r.table.rows.size() << " row(s) to " << r.csv_path.string() << "\n";
    for (const auto& a : r.artifacts) std::cerr << "wrote " << a.string() << "\n";
    return r.status;
  } catch (const isoclus::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const isoclus::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
