#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "exspec/verify.hpp"

using namespace exspec;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  int32_t p = 7;
  int32_t max_half_degree = 20;
  int32_t max_degree = -1;
  std::string space = "HE";
  std::vector<std::string> presets;
  std::vector<std::string> descriptor_paths;
  std::string format = "tsv";
  std::string suite;
  std::string cache_dir;
  std::string group = "T";
  std::string module = "svk";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<FusionDescriptor> gather_descriptors(const Options& o, size_t need) {
  std::vector<FusionDescriptor> out;
  for (const auto& name : o.presets) out.push_back(preset(name, o.p));
  for (const auto& path : o.descriptor_paths) out.push_back(descriptor_from_json(slurp(path)));
  if (out.size() != need)
    throw std::invalid_argument("expected " + std::to_string(need) +
                                " descriptor(s) via --preset/--descriptor, got " +
                                std::to_string(out.size()));
  for (const auto& f : out)
    if (f.prime().p != o.p)
      throw std::invalid_argument("descriptor prime does not match --p");
  return out;
}

json report_header(const std::string& command, const Options& o) {
  json j;
  j["command"] = command;
  json params;
  params["p"] = o.p;
  if (!o.presets.empty()) params["preset"] = o.presets;
  if (!o.descriptor_paths.empty()) params["descriptor"] = o.descriptor_paths;
  j["params"] = std::move(params);
  return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json split_json(const SplitMultiset& s) { return json::parse(split_to_json(s)); }

std::string factors_str(const FactorMultiset& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : f) {
    if (!first) os << ",";
    first = false;
    os << s.str() << ":" << c;
  }
  return os.str();
}

json factors_json(const FactorMultiset& f) {
  json out = json::object();
  for (const auto& [s, c] : f) out[s.str()] = c;
  return out;
}

// dims rows for one space; degree is the honest cohomological degree
std::vector<std::pair<int32_t, int32_t>> dims_rows(const Options& o,
                                                   const std::vector<FusionDescriptor>& ds) {
  Prime P(o.p);
  std::vector<std::pair<int32_t, int32_t>> rows;
  if (o.space == "HE") {
    for (int32_t h = 0; h <= o.max_half_degree; ++h) rows.emplace_back(2 * h, graded_dim(P, 2 * h));
  } else if (o.space == "I") {
    for (int32_t h = 0; h <= o.max_half_degree; ++h)
      rows.emplace_back(2 * h, I_basis(P, 2 * h).rank());
  } else if (o.space == "HEFP") {
    for (int32_t n = 0; n <= 2 * o.max_half_degree; ++n)
      rows.emplace_back(n, total_dim(P, hefp_factors(P, n)));
  } else if (o.space == "HG") {
    const auto& f = ds.at(0);
    for (int32_t h = 0; h <= o.max_half_degree; ++h) rows.emplace_back(2 * h, hg_dim(f, 2 * h));
  } else {
    throw std::invalid_argument("unknown space: " + o.space);
  }
  return rows;
}

int cmd_dims(const Options& o) {
  auto ds = gather_descriptors(o, o.space == "HG" ? 1 : 0);
  auto rows = dims_rows(o, ds);
  if (o.format == "json") {
    json j = report_header("dims", o);
    j["params"]["space"] = o.space;
    j["params"]["max_half_degree"] = o.max_half_degree;
    json arr = json::array();
    for (auto [n, d] : rows) arr.push_back(json{{"degree", n}, {"dim", d}});
    j["result"] = std::move(arr);
    emit(j);
  } else {
    std::cout << "degree\tdim\n";
    for (auto [n, d] : rows) std::cout << n << "\t" << d << "\n";
  }
  return kExitPass;
}

int cmd_series(const Options& o) {
  Prime P(o.p);
  struct Row {
    int32_t degree;
    FactorMultiset factors;
  };
  std::vector<Row> rows;
  if (o.space == "HE") {
    for (int32_t h = 0; h <= o.max_half_degree; ++h) rows.push_back({2 * h, he_factors(P, 2 * h)});
  } else if (o.space == "I") {
    for (int32_t h = 0; h <= o.max_half_degree; ++h) rows.push_back({2 * h, i_factors(P, 2 * h)});
  } else if (o.space == "HEFP") {
    for (int32_t n = 0; n <= 2 * o.max_half_degree; ++n) rows.push_back({n, hefp_factors(P, n)});
  } else {
    throw std::invalid_argument("series supports spaces HE, I, HEFP");
  }
  if (o.format == "json") {
    json j = report_header("series", o);
    j["params"]["space"] = o.space;
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back(json{{"degree", row.degree},
                         {"dim", total_dim(P, row.factors)},
                         {"factors", factors_json(row.factors)}});
    j["result"] = std::move(arr);
    emit(j);
  } else {
    std::cout << "degree\tdim\tfactors\n";
    for (const auto& row : rows)
      std::cout << row.degree << "\t" << total_dim(P, row.factors) << "\t"
                << factors_str(row.factors) << "\n";
  }
  return kExitPass;
}

int cmd_invariants(const Options& o) {
  Prime P(o.p);
  MatrixGroup g = named_group(o.p, group_name_from_string(o.group));
  struct Row {
    int32_t a, b, dim;
  };
  std::vector<Row> rows;
  if (o.module == "svk") {
    for (int32_t l = 0; l <= o.p - 1; ++l)
      for (int32_t k = 0; k <= o.p - 2; ++k) {
        std::vector<FpMatrix> conds;
        for (const auto& m : g.gens)
          conds.push_back(act_matrix_svk(P, m, l, k) - FpMatrix::identity(l + 1, o.p));
        int32_t d = kernel_stack(conds, l + 1, o.p).rank();
        if (d > 0) rows.push_back({l, k, d});
      }
  } else if (o.module == "csq") {
    for (int32_t q = 1; q <= o.p - 2; ++q) {
      const int32_t n = 2 * (o.p - 1 + q) + 2 * o.p * q;
      RowReducer red(o.p, graded_dim(P, n));
      for (int32_t a = q; a >= 0; --a) red.insert(to_coords(monomial_elem(P, a, q - a, 1, q), n));
      for (int32_t a = o.p - 1; a >= q; --a)
        red.insert(to_coords(monomial_elem(P, a, o.p - 1 + q - a, 0, q), n));
      int32_t d = invariants(g, P, n, red.to_subspace()).rank();
      if (d > 0) rows.push_back({q, 0, d});
    }
  } else {
    throw std::invalid_argument("unknown module: " + o.module);
  }
  if (o.format == "json") {
    json j = report_header("invariants", o);
    j["params"]["group"] = o.group;
    j["params"]["module"] = o.module;
    json arr = json::array();
    for (const auto& row : rows) {
      if (o.module == "svk")
        arr.push_back(json{{"l", row.a}, {"k", row.b}, {"dim", row.dim}});
      else
        arr.push_back(json{{"q", row.a}, {"dim", row.dim}});
    }
    j["result"] = std::move(arr);
    emit(j);
  } else {
    if (o.module == "svk") {
      std::cout << "l\tk\tdim\n";
      for (const auto& row : rows) std::cout << row.a << "\t" << row.b << "\t" << row.dim << "\n";
    } else {
      std::cout << "q\tdim\n";
      for (const auto& row : rows) std::cout << row.a << "\t" << row.dim << "\n";
    }
  }
  return kExitPass;
}

int cmd_gamma_check(const Options& o) {
  int32_t bound = o.max_degree >= 0 ? o.max_degree : 2 * (o.p + 2) * (o.p - 1);
  auto rep = check_gamma_direct_sum(Prime(o.p), bound);
  if (o.format == "json") {
    json j = report_header("gamma-check", o);
    j["params"]["max_degree"] = bound;
    j["result"] = json{{"pass", rep.pass}, {"failed_degrees", rep.failed_degrees}};
    emit(j);
  } else {
    std::cout << (rep.pass ? "pass" : "FAIL") << " through degree " << bound << "\n";
    for (int32_t n : rep.failed_degrees) std::cout << "failed at degree " << n << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_mult(const Options& o) {
  auto ds = gather_descriptors(o, 1);
  const auto& f = ds[0];
  json n = json::object(), m1 = json::object(), m2 = json::object();
  for (int32_t i = 0; i <= o.p - 1; ++i)
    for (int32_t q = 0; q <= o.p - 2; ++q) {
      int32_t c = n_mult(f, i, q);
      if (c) n[std::to_string(i) + "," + std::to_string(q)] = c;
    }
  for (int32_t q = 0; q <= o.p - 2; ++q) {
    int32_t c = m1_mult(f, q);
    if (c) m1[std::to_string(q)] = c;
  }
  if (int32_t c = m2_zero(f); c) m2["0"] = c;
  for (int32_t q = 1; q <= o.p - 2; ++q) {
    int32_t c = m2_mult(f, q);
    if (c) m2[std::to_string(q)] = c;
  }
  if (o.format == "json") {
    json j = report_header("mult", o);
    j["result"] = json{{"n", n}, {"m1", m1}, {"m2", m2}};
    emit(j);
  } else {
    std::cout << "kind\tindex\tmult\n";
    for (auto& [k, v] : n.items()) std::cout << "X\t" << k << "\t" << v << "\n";
    for (auto& [k, v] : m1.items()) std::cout << "L1\t" << k << "\t" << v << "\n";
    for (auto& [k, v] : m2.items()) std::cout << "L2\t" << k << "\t" << v << "\n";
  }
  return kExitPass;
}

std::string pretty_split(const SplitMultiset& s) {
  // render as a wedge list, combining the twist-zero pair into M(2)
  std::ostringstream os;
  SplitMultiset rest = s;
  bool first = true;
  auto emit_term = [&](int32_t c, const std::string& name) {
    if (!first) os << " v ";
    first = false;
    if (c != 1) os << c;
    os << name;
  };
  auto l10 = rest.find(SummandLabel::L1(0)), l20 = rest.find(SummandLabel::L2(0));
  int32_t m2c = 0;
  if (l10 != rest.end() && l20 != rest.end() && l10->second == l20->second) {
    m2c = l10->second;
    rest.erase(l10);
    rest.erase(SummandLabel::L2(0));
  }
  for (const auto& [lab, c] : rest)
    if (lab.kind == SummandLabel::Kind::X) emit_term(c, "X(" + std::to_string(lab.i) + "," + std::to_string(lab.q) + ")");
  if (m2c) emit_term(m2c, "M(2)");
  for (const auto& [lab, c] : rest)
    if (lab.kind == SummandLabel::Kind::L1) emit_term(c, "L(1," + std::to_string(lab.q) + ")");
  for (const auto& [lab, c] : rest)
    if (lab.kind == SummandLabel::Kind::L2) emit_term(c, "L(2," + std::to_string(lab.q) + ")");
  if (first) os << "0";
  return os.str();
}

int cmd_split(const Options& o) {
  auto ds = gather_descriptors(o, 1);
  SplitMultiset s = split(ds[0]);
  if (o.format == "json") {
    json j = report_header("split", o);
    j["result"] = split_json(s);
    emit(j);
  } else {
    std::cout << pretty_split(s) << "\n";
  }
  return kExitPass;
}

int cmd_compare(const Options& o) {
  auto ds = gather_descriptors(o, 2);
  auto diff = compare(ds[0], ds[1]);
  if (o.format == "json") {
    json j = report_header("compare", o);
    j["result"] = split_json(diff);
    emit(j);
  } else {
    std::cout << pretty_split(diff) << "\n";
  }
  return kExitPass;
}

int cmd_p3_table(const Options& o) {
  if (o.p != 3) throw verify::UsageError("p3-table requires --p 3");
  auto table = p3_lowest_degree_table();
  Prime P(3);
  int32_t sep01 = he_series_dim(P, SimpleLabel::EE(0, 1), 8);
  int32_t sep11 = he_series_dim(P, SimpleLabel::EE(1, 1), 8);
  if (o.format == "json") {
    json j = report_header("p3-table", o);
    json t = json::object();
    for (const auto& [s, v] : table) t[s.str()] = v;
    j["result"] = json{{"lowest_half_degree", t},
                       {"half_degree_4_dims", json{{"X(0,1)", sep01}, {"X(1,1)", sep11}}}};
    emit(j);
  } else {
    std::cout << "summand\tlowest_half_degree\n";
    for (const auto& [s, v] : table) std::cout << s.str() << "\t" << v << "\n";
    std::cout << "# half-degree 4 separator: X(0,1) -> " << sep01 << ", X(1,1) -> " << sep11
              << "\n";
  }
  return kExitPass;
}

int cmd_verify(const Options& o) {
  std::vector<verify::SuiteResult> results;
  if (o.suite == "all") {
    results = verify::run_all(o.p);
  } else {
    results.push_back(verify::run_suite(o.suite, o.p));
  }
  bool all_pass = true;
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << c.label << "\n";
      all_pass = all_pass && c.pass;
    }
  }
  if (o.format == "json") {
    json j = report_header("verify", o);
    j["params"]["suite"] = o.suite;
    json arr = json::array();
    for (const auto& r : results) {
      json checks = json::array();
      for (const auto& c : r.checks) checks.push_back(json{{"label", c.label}, {"pass", c.pass}});
      arr.push_back(json{{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks},
                         {"seconds", r.seconds}});
    }
    j["result"] = std::move(arr);
    j["pass"] = all_pass;
    emit(j);
  } else {
    std::cout << (all_pass ? "pass" : "FAIL") << " (" << results.size() << " suite(s))\n";
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with the mod-p cohomology of the extraspecial group of order p^3 "
               "and exponent p, and stable splittings over it"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool with_space) {
    c->add_option("--p", o.p, "odd prime, 3 <= p <= 13");
    c->add_option("--cache-dir", o.cache_dir, "directory for the on-disk basis cache");
    c->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    if (with_space)
      c->add_option("--space", o.space, "HE, I, HEFP or HG")
          ->check(CLI::IsMember({"HE", "I", "HEFP", "HG"}));
  };
  auto add_descriptors = [&](CLI::App* c) {
    c->add_option("--preset", o.presets, "named fusion system (repeatable)");
    c->add_option("--descriptor", o.descriptor_paths, "descriptor JSON file (repeatable)");
  };

  CLI::App* dims = app.add_subcommand("dims", "dimension tables of the graded pieces");
  add_common(dims, true);
  add_descriptors(dims);
  dims->add_option("--max-half-degree", o.max_half_degree, "half-degree bound");

  CLI::App* series = app.add_subcommand("series", "composition-factor tables");
  add_common(series, true);
  series->add_option("--max-half-degree", o.max_half_degree, "half-degree bound");

  CLI::App* inv = app.add_subcommand("invariants", "invariant dimensions of the small modules");
  add_common(inv, false);
  inv->add_option("--group", o.group, "T, Tw, H, Hw, SL2, SL2:2 or GL2");
  inv->add_option("--module", o.module, "svk or csq")->check(CLI::IsMember({"svk", "csq"}));

  CLI::App* gam = app.add_subcommand("gamma-check", "direct-sum check of the label subspaces");
  add_common(gam, false);
  gam->add_option("--max-degree", o.max_degree, "degree bound (default 2(p+2)(p-1))");

  CLI::App* mult = app.add_subcommand("mult", "all summand multiplicities of one descriptor");
  add_common(mult, false);
  add_descriptors(mult);

  CLI::App* spl = app.add_subcommand("split", "stable splitting of one descriptor");
  add_common(spl, false);
  add_descriptors(spl);

  CLI::App* cmp = app.add_subcommand("compare", "signed difference of two splittings");
  add_common(cmp, false);
  add_descriptors(cmp);

  CLI::App* ver = app.add_subcommand("verify", "named verification suites");
  add_common(ver, false);
  ver->add_option("name", o.suite, "suite name or 'all'");
  ver->add_option("--suite", o.suite, "suite name or 'all'")->excludes("name");

  CLI::App* p3t = app.add_subcommand("p3-table", "lowest-degree table at p = 3");
  add_common(p3t, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!o.cache_dir.empty()) set_cache_dir(o.cache_dir);
    if (dims->parsed()) return cmd_dims(o);
    if (series->parsed()) return cmd_series(o);
    if (inv->parsed()) return cmd_invariants(o);
    if (gam->parsed()) return cmd_gamma_check(o);
    if (mult->parsed()) return cmd_mult(o);
    if (spl->parsed()) return cmd_split(o);
    if (cmp->parsed()) return cmd_compare(o);
    if (ver->parsed()) {
      if (o.suite.empty()) {
        std::cout << "available suites:\n";
        for (const auto& n : verify::suite_names()) std::cout << "  " << n << "\n";
        return kExitPass;
      }
      return cmd_verify(o);
    }
    if (p3t->parsed()) {
      if (p3t->count("--p") == 0) o.p = 3;
      return cmd_p3_table(o);
    }
  } catch (const verify::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
