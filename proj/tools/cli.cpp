#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <regex>
#include <thread>

#include <CLI11.hpp>

#include "drg/graphs.hpp"
#include "report.hpp"

namespace drg::cli {

namespace {

struct Globals {
  bool json = false;
  bool verbose = false;
  std::string rules_path;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const ExclusionRules& load_rules(const Globals& g, std::optional<ExclusionRules>& storage) {
  if (g.rules_path.empty()) return ExclusionRules::defaults();
  storage = ExclusionRules::load(g.rules_path);
  return *storage;
}

std::vector<IntersectionArray> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return read_arrays(in);
  } catch (const ParseError& e) {
    // read_arrays prefixes "line N: "
    throw UsageError(path + ": " + e.what());
  }
}

void emit(std::ostream& out, const Globals& g, const FeasibilityReport& r, const ShillaConstraintReport* sh) {
  if (g.json)
    out << report_json(r, sh, g.verbose).dump() << '\n';
  else
    print_report(out, r, sh, g.verbose);
}

int cmd_check(const Globals& g, const std::vector<std::string>& texts, const std::string& file, std::ostream& out) {
  std::optional<ExclusionRules> storage;
  const ExclusionRules& rules = load_rules(g, storage);
  std::vector<IntersectionArray> arrays;
  for (const auto& t : texts) {
    try {
      arrays.push_back(parse_array(t));
    } catch (const ParseError& e) {
      throw UsageError("cannot parse \"" + t + "\": " + e.what());
    }
  }
  if (!file.empty())
    for (auto& a : read_file(file)) arrays.push_back(std::move(a));
  if (arrays.empty()) throw UsageError("no arrays given (pass arrays or --file)");

  bool any_infeasible = false;
  for (const auto& arr : arrays) {
    FeasibilityReport r = feasibility_check(arr, rules);
    std::optional<ShillaConstraintReport> sh;
    if (arr.diameter() == 3 && passes_basic(arr))
      if (auto p = shilla_params(arr)) sh = shilla_constraints(*p);
    emit(out, g, r, sh ? &*sh : nullptr);
    any_infeasible = any_infeasible || r.overall == Verdict::Infeasible;
  }
  return any_infeasible ? kInfeasible : kOk;
}

std::pair<std::int64_t, std::int64_t> parse_b_range(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("--b expects N or A..B, got \"" + text + "\"");
  try {
    std::int64_t lo = std::stoll(m[1]);
    std::int64_t hi = m[2].matched ? std::stoll(m[2]) : lo;
    return {lo, hi};
  } catch (const std::out_of_range&) {
    throw UsageError("--b value out of range");
  }
}

void print_survivors(std::ostream& out, const Globals& g, const std::vector<Survivor>& survivors) {
  for (const auto& s : survivors) {
    if (g.json)
      out << report_json(s.feasibility, &s.shilla, g.verbose).dump() << '\n';
    else
      out << format_array(s.array) << '\n';
  }
}

void print_summary(std::ostream& out, const EnumerationQuery& q, const EnumerationResult& r) {
  out << "# survivors " << r.survivors.size() << ", visited " << r.visited << ", filters "
      << q.filters.to_string() << '\n';
  out << "# pruned";
  for (const auto& [name, n] : r.pruned) out << ' ' << name << '=' << n;
  out << '\n';
  out << "# wall time " << r.wall_seconds << " s\n";
}

struct EnumerateArgs {
  std::string b;
  std::optional<std::int64_t> a3_max;
  bool m2_eq_m3 = false;
  bool qpoly = false;
  std::vector<std::string> disabled;
  std::uint64_t cap = 0;
  std::string expect;
  bool progress = false;
};

int cmd_enumerate(const Globals& g, const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<ExclusionRules> storage;
  EnumerationQuery q;
  std::tie(q.b_min, q.b_max) = parse_b_range(a.b);
  q.a3_max = a.a3_max;
  for (const auto& name : a.disabled) q.filters = q.filters.without(*parse_filter(name));
  if (a.m2_eq_m3) q.filters = q.filters.with(Filter::RequireM2EqM3);
  if (a.qpoly) q.filters = q.filters.with(Filter::RequireQpoly);
  q.parallelism = g.jobs;
  if (a.cap > 0) q.candidate_cap = a.cap;
  q.rules = &load_rules(g, storage);
  std::vector<IntersectionArray> expected;
  if (!a.expect.empty()) expected = read_file(a.expect);
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.progress) {
    auto last = std::chrono::steady_clock::now();
    q.progress = [&err, last](const EnumerationProgress& p) mutable {
      auto now = std::chrono::steady_clock::now();
      if (now - last < std::chrono::seconds(1)) return;
      last = now;
      err << "# progress: b " << p.b << ", a3 " << p.a3 << ", visited " << p.visited << ", survivors "
          << p.survivors << std::endl;
    };
  }

  std::ostream& summary = g.json ? err : out;
  EnumerationResult r;
  try {
    r = enumerate_shilla(q);
  } catch (const CandidateCapExceeded& e) {
    print_survivors(out, g, e.partial().survivors);
    print_summary(summary, q, e.partial());
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  }
  print_survivors(out, g, r.survivors);
  print_summary(summary, q, r);
  int code = kOk;
  for (const auto& d : r.defects) {
    err << "defect: " << d << '\n';
    code = kInfeasible;
  }
  if (!a.expect.empty()) {
    ListDiff d = diff_against(q, r, expected);
    if (d.empty()) {
      summary << "# expect: no differences\n";
    } else {
      err << "differences against " << a.expect << ":\n" << to_string(d);
      code = kInfeasible;
    }
  }
  return code;
}

int cmd_qpoly(const Globals& g, std::int64_t b, std::ostream& out) {
  std::optional<ExclusionRules> storage;
  const ExclusionRules& rules = load_rules(g, storage);
  for (const auto& p : qpoly_candidates(b, rules)) {
    auto arr = shilla_array(p);
    if (g.json) {
      auto sh = shilla_constraints(p);
      out << report_json(feasibility_check(arr, rules), &sh, g.verbose).dump() << '\n';
    } else {
      out << format_array(arr) << '\n';
    }
  }
  return kOk;
}

int cmd_graphs_verify(const Globals& g, const std::vector<std::string>& only, std::ostream& out) {
  bool all_ok = true;
  for (const auto& name : only.empty() ? witness_names() : only) {
    Graph graph = witness_graph(name);
    DistancePartitionCheck dr = verify_distance_regular(graph);
    nlohmann::json j{{"graph", name}, {"name", graph.name()}, {"n", graph.n()}, {"edges", graph.edges().size()}};
    bool ok = dr.ok();
    std::vector<std::pair<std::string, std::string>> rows;
    if (!ok) {
      j["distance_regular"] = false;
      j["witness"] = to_string(*dr.witness);
      rows.emplace_back("distance-regular", "FAIL: " + to_string(*dr.witness));
    } else {
      const IntersectionArray& arr = *dr.array;
      j["distance_regular"] = true;
      j["array"] = format_array(arr);
      rows.emplace_back("distance-regular", format_array(arr));

      auto cc = coclique_bound_check(graph, arr);
      j["coclique"] = {{"pass", cc.ok}, {"max_coclique_min", cc.min_max_coclique}, {"failures", cc.failures}};
      rows.emplace_back("co-clique bound", cc.ok ? "pass (max co-clique " + std::to_string(cc.min_max_coclique) + ")"
                                                 : "FAIL: " + cc.failures.front());
      ok = ok && cc.ok;

      if (arr.diameter() == 3) {
        auto il = interlacing_check(graph, arr);
        j["interlacing"] = {{"pass", il.ok}, {"failures", il.failures}};
        rows.emplace_back("interlacing", il.ok ? "pass" : "FAIL: " + il.failures.front());
        ok = ok && il.ok;

        // theta1 = a3 = (a1 + sqrt(a1^2 + 4k)) / 2, exactly.
        auto theta = eigenvalues(arr);
        const std::int64_t a1 = arr.a_at(1), k = arr.k();
        AlgebraicNumber root(QuadraticNumber(make_rational(a1, 2), make_rational(1, 2), BigInt(a1 * a1 + 4 * k)));
        bool ident = theta[1] == AlgebraicNumber(arr.a_at(3)) && theta[1] == root;
        j["theta1_identity"] = ident;
        rows.emplace_back("theta1 = a3 = root", ident ? "pass (theta1 = " + theta[1].to_string() + ")" : "FAIL");
        ok = ok && ident;
      }

      auto sp = spectrum_check(graph, arr);
      j["spectrum"] = {{"pass", sp.ok}, {"failures", sp.failures}};
      std::string mult;
      for (auto [ev, m] : sp.numeric) mult += (mult.empty() ? "" : ", ") + std::to_string(m);
      rows.emplace_back("spectrum", sp.ok ? "pass (multiplicities " + mult + ")" : "FAIL: " + sp.failures.front());
      ok = ok && sp.ok;
    }
    j["pass"] = ok;
    all_ok = all_ok && ok;
    if (g.json) {
      out << j.dump() << '\n';
    } else {
      out << graph.name() << "  n = " << graph.n() << "  " << (ok ? "PASS" : "FAIL") << '\n';
      for (const auto& [label, value] : rows) out << "  " << label << ": " << value << '\n';
    }
  }
  return all_ok ? kOk : kInfeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact feasibility checks for distance-regular graph intersection arrays", "drgcheck"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "One JSON object per line");
  app.add_flag("-v,--verbose", g.verbose, "Include standard sequences");
  app.add_option("--rules", g.rules_path, "Exclusion rules file (default: $DRG_RULES_FILE, else built-in)");
  app.add_option("-j,--jobs", g.jobs, "Worker threads for enumerate")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Check intersection arrays, e.g. \"{42,30,12;1,6,28}\"");
  std::vector<std::string> texts;
  std::string file;
  check->add_option("arrays", texts, "Arrays in {b0,...;c1,...} form");
  check->add_option("-f,--file", file, "File with one array per line ('#' comments allowed)");

  auto* en = app.add_subcommand("enumerate", "Enumerate feasible Shilla arrays");
  EnumerateArgs ea;
  std::vector<std::string> filter_names;
  for (Filter f : all_filters())
    if (f != Filter::RequireM2EqM3 && f != Filter::RequireQpoly) filter_names.push_back(to_string(f));
  en->add_option("--b", ea.b, "b or a range A..B")->required();
  en->add_option("--a3-max", ea.a3_max, "Largest a3 (default: the theoretical bound for each b)");
  en->add_flag("--require-m2-eq-m3", ea.m2_eq_m3, "Keep only arrays with m2 = m3");
  en->add_flag("--require-qpoly", ea.qpoly, "Keep only Q-polynomial arrays");
  en->add_option("--disable", ea.disabled, "Switch off default filters")->check(CLI::IsMember(filter_names));
  en->add_option("--cap", ea.cap, "Stop after this many candidate tuples (exit 3)");
  en->add_option("--expect", ea.expect, "Compare with the arrays in this file; exit 1 on any difference");
  en->add_flag("--progress", ea.progress, "Report progress on stderr");

  auto* qp = app.add_subcommand("qpoly", "Q-polynomial Shilla arrays for one b");
  std::int64_t qb = 0;
  qp->add_option("--b", qb, "b >= 2")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{10000}));

  auto* gr = app.add_subcommand("graphs", "Witness graph constructions");
  gr->require_subcommand(1, 1);
  auto* gv = gr->add_subcommand("verify", "Verify distance-regularity and the graph-level inequalities");
  std::vector<std::string> only;
  gv->add_option("--only", only, "Restrict to these graphs")->check(CLI::IsMember(witness_names()));
  auto* ge = gr->add_subcommand("export", "Print an edge list");
  std::string gname;
  ge->add_option("--name", gname, "Graph name")->required()->check(CLI::IsMember(witness_names()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(g, texts, file, out);
    if (*en) return cmd_enumerate(g, ea, out, err);
    if (*qp) return cmd_qpoly(g, qb, out);
    if (*gv) return cmd_graphs_verify(g, only, out);
    if (*ge) {
      write_edge_list(witness_graph(gname), out);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace drg::cli
