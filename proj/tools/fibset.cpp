// Command line front end: verification runs and direct computations.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibset/charcat.hpp"
#include "fibset/fibred.hpp"
#include "fibset/group.hpp"
#include "fibset/subchar.hpp"
#include "fibset/suites.hpp"

using namespace fibset;
using json = nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inline JSON, or @path to read it from a file.
json load_json(const std::string& text, const std::string& field) {
  try {
    if (!text.empty() && text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw UsageError(field + ": cannot open " + text.substr(1));
      return json::parse(in);
    }
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(field + ": " + e.what());
  }
}

GroupPtr load_group(const std::string& spec, const std::string& field) {
  try {
    if (!spec.empty() && (spec[0] == '@' || spec[0] == '{')) return group_from_json(load_json(spec, field));
    return build_group(spec);
  } catch (const GroupError& e) {
    throw UsageError(field + ": " + e.what());
  }
}

// Objects of a small category built from the named groups, deduplicated.
struct Objects {
  std::vector<GroupPtr> groups;
  std::vector<ObjectId> ids;
};

Objects objects(const std::vector<std::string>& specs) {
  Objects o;
  const char* fields[] = {"F", "G", "H"};
  for (std::size_t k = 0; k < specs.size(); ++k) {
    auto g = load_group(specs[k], fields[k]);
    ObjectId id = o.groups.size();
    for (ObjectId e = 0; e < o.groups.size(); ++e)
      if (same_group(*o.groups[e], *g)) id = e;
    if (id == o.groups.size()) o.groups.push_back(g);
    o.ids.push_back(id);
  }
  return o;
}

void emit(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("--out: cannot write " + out);
  f << doc.dump(2) << "\n";
}

template <class S>
json fibred_to_json(const SubcharCategory& cat, const FibredMorphism<S>& x, const std::string& ell) {
  json terms = json::array();
  for (const auto& [k, c] : x.terms)
    terms.push_back({{"orbit", subchar_to_json(cat.catalog(x.cod, x.dom).at(k), cat.fiber())}, {"coeff", to_json(c)},
                     {"text", c.to_string()}});
  return {{"pair", {cat.group(x.cod)->name(), cat.group(x.dom)->name()}}, {"ell", ell}, {"terms", terms}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibred biset categories and their subcharacter polarizations"};
  app.require_subcommand(1);

  // run
  RunConfig config;
  std::string groups_csv, middle_csv, config_path, out_path;
  auto* run = app.add_subcommand("run", "run verification suites and write a report");
  run->add_option("--groups", groups_csv, "comma separated group specs");
  auto* middle_opt =
      run->add_option("--middle", middle_csv, "comma separated middle groups for the triple suites; empty means --groups");
  run->add_option("--fiber", config.fiber, "fiber: trivial, z2, z3, z2xz2, ...");
  run->add_option("--ell", config.ell, "identity, one or generic");
  run->add_option("--suite", config.suites, "suite name (repeatable); default all");
  run->add_option("--max-order", config.max_order, "order cap for enumerations");
  run->add_option("--seed", config.seed, "seed for randomized checks");
  run->add_option("--out", out_path, "report path (default stdout)");
  run->add_option("--config", config_path, "JSON config; its fields override the flags");
  run->add_flag("--timing", config.timing, "include wall time per suite");

  // compute
  auto* compute = app.add_subcommand("compute", "direct computations");
  compute->require_subcommand(1);
  std::string fiber = "trivial", ell = "generic", left, right, format = "json";
  std::vector<std::string> gspecs;
  std::size_t cap = kDefaultOrderCap;

  auto add_common = [&](CLI::App* c, std::size_t ngroups) {
    c->add_option("groups", gspecs, "group specs")->expected(static_cast<int>(ngroups))->required();
    c->add_option("--fiber", fiber, "fiber spec");
    c->add_option("--max-order", cap, "order cap");
    c->add_option("--out", out_path, "output path");
  };
  auto* c_star = compute->add_subcommand("star", "composite of two subcharacters: F G H --left --right");
  add_common(c_star, 3);
  c_star->add_option("--left", left, "subcharacter of F x G (JSON or @file)")->required();
  c_star->add_option("--right", right, "subcharacter of G x H (JSON or @file)")->required();
  auto* c_gamma = compute->add_subcommand("gamma-cap", "Γ∩ of two subgroups: F G H --left --right");
  add_common(c_gamma, 3);
  c_gamma->add_option("--left", left, "subgroup of F x G (JSON or @file)")->required();
  c_gamma->add_option("--right", right, "subgroup of G x H (JSON or @file)")->required();
  auto* c_fib = compute->add_subcommand("compose-fibred", "d_phi d_psi: F G H --left --right --ell");
  add_common(c_fib, 3);
  c_fib->add_option("--left", left, "subcharacter of F x G")->required();
  c_fib->add_option("--right", right, "subcharacter of G x H")->required();
  c_fib->add_option("--ell", ell, "identity, one or generic");
  auto* c_class = compute->add_subcommand("compose-class", "convolution of class functions: F G H --left --right");
  add_common(c_class, 3);
  c_class->add_option("--left", left, "class function on F x G")->required();
  c_class->add_option("--right", right, "class function on G x H")->required();
  auto* c_orbits = compute->add_subcommand("orbits", "orbit count of subcharacters of F x G");
  add_common(c_orbits, 2);
  bool list = false;
  c_orbits->add_flag("--list", list, "list the canonical representatives");
  auto* c_sub = compute->add_subcommand("subgroups", "subgroups of a group, or of F x G");
  c_sub->add_option("groups", gspecs, "one or two group specs")->expected(1, 2)->required();
  c_sub->add_option("--max-order", cap, "order cap");
  c_sub->add_option("--out", out_path, "output path");
  auto* c_table = compute->add_subcommand("table", "structure constants of the fibred category: F G H");
  add_common(c_table, 3);
  c_table->add_option("--ell", ell, "identity, one or generic");
  c_table->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      auto split = [](const std::string& csv) {
        std::vector<std::string> out;
        std::stringstream ss(csv);
        for (std::string item; std::getline(ss, item, ',');)
          if (!item.empty()) out.push_back(item);
        return out;
      };
      if (!groups_csv.empty()) config.groups = split(groups_csv);
      if (middle_opt->count()) config.middle_groups = split(middle_csv);
      if (!config_path.empty()) {
        try {
          config = config_from_json(load_json("@" + config_path, "--config"), config);
        } catch (const json::exception& e) {
          throw UsageError(std::string("--config: ") + e.what());
        }
      }
      Report report;
      try {
        report = run_suites(config);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(report_to_json(report), out_path);
      for (const auto& s : report.suites)
        std::cerr << s.name << ": " << (s.skipped ? "skipped" : s.passed() ? "pass" : "FAIL") << " (" << s.checked
                  << " checked)\n";
      return report.any_violation() ? 1 : 0;
    }

    AbelianFiber a;
    try {
      a = AbelianFiber::parse(fiber);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--fiber: ") + e.what());
    }
    auto sub = compute->get_subcommands()[0];
    const std::string cmd = sub->get_name();

    if (cmd == "subgroups") {
      GroupPtr g = load_group(gspecs[0], "F");
      if (gspecs.size() == 2) g = direct_product(g, load_group(gspecs[1], "G"));
      json subs = json::array();
      for (const auto& s : all_subgroups(g, cap)) subs.push_back(s.members());
      emit({{"group", g->name()}, {"count", subs.size()}, {"subgroups", subs}}, out_path);
      return 0;
    }

    const auto objs = objects(gspecs);
    SubcharCategory cat(objs.groups, a, cap);
    const ObjectId f = objs.ids[0], g = objs.ids[1];

    if (cmd == "orbits") {
      const auto& catalog = cat.catalog(f, g);
      json doc{{"pair", {cat.group(f)->name(), cat.group(g)->name()}},
               {"fiber", a.name()},
               {"basis_size", catalog.size()},
               {"orbits", catalog.orbit_reps().size()}};
      if (list) {
        json reps = json::array();
        for (auto k : catalog.orbit_reps())
          reps.push_back({{"subchar", subchar_to_json(catalog.at(k), a)}, {"orbit_size", catalog.orbit_size(k)}});
        doc["representatives"] = reps;
      }
      emit(doc, out_path);
      return 0;
    }

    const ObjectId h = objs.ids[2];
    if (cmd == "compose-class") {
      PairCategory pairs(objs.groups);
      ClassFunction xi, eta;
      try {
        xi = class_function_from_json(pairs, load_json(left, "--left"));
        eta = class_function_from_json(pairs, load_json(right, "--right"));
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (xi.cod != f || xi.dom != g) throw UsageError("--left: class function is not on F x G");
      if (eta.cod != g || eta.dom != h) throw UsageError("--right: class function is not on G x H");
      emit(class_function_to_json(pairs, compose_class(pairs, xi, eta)), out_path);
      return 0;
    }
    if (cmd == "table") {
      EllMap e = EllMap::parse(ell);
      auto t = structure_table<LaurentScalar>(cat, f, g, h, e);
      if (format == "csv") {
        if (out_path.empty()) {
          std::cout << table_to_csv(t);
        } else {
          std::ofstream(out_path) << table_to_csv(t);
        }
      } else {
        emit(table_to_json(cat, t), out_path);
      }
      return 0;
    }

    auto parse_subchar = [&](const std::string& text, const std::string& field, ObjectId x, ObjectId y) {
      try {
        return subchar_from_json(load_json(text, field), cat.group(x), cat.group(y), a);
      } catch (const json::exception& e) {
        throw UsageError(field + ": " + e.what());
      } catch (const GroupError& e) {
        throw UsageError(field + ": " + e.what());
      } catch (const CharacterError& e) {
        throw UsageError(field + ": " + e.what());
      }
    };
    const auto phi = parse_subchar(left, "--left", f, g);
    const auto psi = parse_subchar(right, "--right", g, h);

    if (cmd == "gamma-cap") {
      const auto cap_group = gamma_cap(phi.subgroup, psi.subgroup);
      emit({{"group", cat.group(g)->name()}, {"members", cap_group.members()}, {"order", cap_group.order()}}, out_path);
    } else if (cmd == "star") {
      if (!matches(phi, psi, a)) {
        emit({{"matched", false}}, out_path);
      } else {
        emit({{"matched", true},
              {"gamma_order", gamma_cap(phi.subgroup, psi.subgroup).order()},
              {"composite", subchar_to_json(star_subchar(phi, psi, a), a)}},
             out_path);
      }
    } else if (cmd == "compose-fibred") {
      const EllMap e = EllMap::parse(ell);
      const auto i = cat.catalog(f, g).index_of(phi);
      const auto j = cat.catalog(g, h).index_of(psi);
      const auto prod =
          compose_fibred(cat, d_basis<LaurentScalar>(cat, f, g, i), d_basis<LaurentScalar>(cat, g, h, j), e);
      emit(fibred_to_json(cat, prod, e.name()), out_path);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
