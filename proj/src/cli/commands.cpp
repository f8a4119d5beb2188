#include "lxkit/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "lxkit/dilworth.hpp"
#include "lxkit/io.hpp"
#include "lxkit/linespace.hpp"
#include "lxkit/matroidcore.hpp"
#include "lxkit/polyrel.hpp"
#include "lxkit/tropfan.hpp"

namespace lxkit::commands {

using foundation::colex_subsets;
using foundation::QMatrix;
using foundation::Subset;
using io::Json;
using matroidcore::Matroid;

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

class Builder {
 public:
  explicit Builder(const RunConfig& config) : config_(config) {}

  bool wanted(const std::string& name) const {
    if (config_.emit.empty()) return true;
    const std::string stem = name.substr(0, name.rfind(".json") == std::string::npos ? name.size() : name.rfind(".json"));
    for (const auto& e : config_.emit)
      if (e == name || e == stem) return true;
    return false;
  }

  void add(const std::string& name, std::string content) {
    if (wanted(name)) result_.artifacts.push_back({name, std::move(content)});
  }

  CommandResult finish(const Json& report, bool ok) {
    result_.report = dump(report);
    add("report.json", result_.report);
    result_.exit_code = ok ? kExitOk : kExitVerification;
    return std::move(result_);
  }

  CommandResult finish_text(std::string text) {
    result_.report = std::move(text);
    return std::move(result_);
  }

 private:
  const RunConfig& config_;
  CommandResult result_;
};

void require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing required option ") + flag);
}

void check_caps(const RunConfig& config, int n, int d) {
  if (config.no_caps) return;
  if (n > kMaxN || d > kMaxD)
    throw DimensionError("n = " + std::to_string(n) + ", d = " + std::to_string(d) + " exceeds the limits n <= " +
                         std::to_string(kMaxN) + ", d <= " + std::to_string(kMaxD) + " (pass --no-caps to override)");
}

Json gale_json(const linespace::GaleReport& g) {
  return Json{{"product_zero", g.product_zero},
              {"rank_u", g.rank_u},
              {"rank_v", g.rank_v},
              {"coefficient_identity", g.coefficient_identity},
              {"holds", g.holds()}};
}

Json subset_lists(const std::vector<std::vector<Subset>>& lists) {
  Json out = Json::array();
  for (const auto& l : lists) {
    Json inner = Json::array();
    for (auto s : l) inner.push_back(s.to_string());
    out.push_back(std::move(inner));
  }
  return out;
}

linespace::SubspaceInput load_subspace(const RunConfig& config) {
  require_path(config.input, "--input");
  auto x = io::subspace_from_json(io::read_json_file(config.input));
  check_caps(config, x.n, x.d);
  return x;
}

CommandResult lines_matroid(const RunConfig& config) {
  const auto x = load_subspace(config);
  if (config.e && *config.e != x.d + 1) throw InputError("only e = d+1 is supported");
  const auto w = linespace::reduced_W(x);
  const auto u = linespace::matrix_U(w);
  const auto v = linespace::matrix_V(w);
  const auto gale = linespace::gale_check(u, v);
  const Matroid via_v = linespace::lines_matroid_from_V(v);
  const Matroid via_u = linespace::lines_matroid_from_U(u);
  const Matroid via_lines = x.basis ? matroidcore::matroid_of_lines(*x.basis, x.d) : matroidcore::matroid_of_lines(w);
  const bool three_way = matroidcore::matroid_equal(via_v, via_u) && matroidcore::matroid_equal(via_v, via_lines);
  const bool generic = matroidcore::matroid_equal(via_v, dilworth::relabeled_dilworth_uniform(x.n, x.d));

  Builder b(config);
  b.add("U.json", dump(io::to_json(u)));
  b.add("V.json", dump(io::to_json(v)));
  b.add("matroid.json", dump(io::to_json(via_v)));
  Json report = Json::object();
  report["n"] = x.n;
  report["d"] = x.d;
  report["frame"] = w.basis_cols.to_string();
  report["permutation"] = w.permutation;
  report["gale_duality"] = gale_json(gale);
  report["three_way_equal"] = three_way;
  report["generic"] = generic;
  report["rank"] = via_v.rank();
  report["bases"] = via_v.bases().size();
  return b.finish(report, gale.holds() && three_way);
}

CommandResult genericity(const RunConfig& config) {
  const auto x = load_subspace(config);
  const auto g = linespace::genericity_report(x);
  Json report = Json::object();
  report["n"] = x.n;
  report["d"] = x.d;
  report["is_generic"] = g.is_generic;
  report["vanishing_minor_columns"] = subset_lists(g.vanishing_minor_columns);
  if (x.n == 6 && x.d == 2) {
    const auto q = linespace::plucker_of(x);
    if (q[Subset({1, 2, 3})] != 0) {
      Json values = Json::array();
      for (const auto& r : linespace::gr36_minor_values(q)) values.push_back(io::to_json(r));
      report["gr36_minor_values"] = std::move(values);
    }
  }
  Builder b(config);
  return b.finish(report, true);
}

CommandResult dilworth_cmd(const RunConfig& config) {
  Matroid base;
  int n = config.n;
  if (!config.matroid.empty()) {
    base = io::matroid_from_json(io::read_json_file(config.matroid));
    if (n == 0) n = base.size();
    if (config.geometric) throw InputError("--geometric needs the uniform matroid; drop --matroid");
  } else {
    if (n < 1) throw InputError("--n must be positive");
    check_caps(config, n, 0);
    base = Matroid::uniform(n, n);
  }
  if (base.size() > kMaxN && !config.no_caps) check_caps(config, base.size(), 0);
  if (config.k < 1 || config.k > base.rank()) throw InputError("--k must satisfy 1 <= k <= rank");
  Matroid d = dilworth::dilworth(base, config.k);
  Json report = Json::object();
  report["k"] = config.k;
  bool ok = true;
  if (config.geometric) {
    const Matroid g = dilworth::geometric_dilworth(QMatrix::identity(static_cast<std::size_t>(n)), config.k, config.seed);
    ok = matroidcore::matroid_equal(d, g);
    report["geometric_agrees"] = ok;
  }
  if (config.relabel) d = dilworth::relabel_complements(d, n);
  report["matroid"] = io::to_json(d);
  Builder b(config);
  b.add("matroid.json", dump(io::to_json(d)));
  return b.finish(report, ok);
}

Matroid load_matroid(const RunConfig& config) {
  require_path(config.matroid, "--matroid");
  Matroid m = io::matroid_from_json(io::read_json_file(config.matroid));
  if (m.size() == 0) throw InputError("matroid has an empty ground set");
  return m;
}

tropfan::Graph link_for(const Matroid& m, bool smooth) {
  auto g = tropfan::link_graph(m);
  return smooth ? tropfan::smooth_degree2(g) : g;
}

Json graph_summary(const tropfan::Graph& g) {
  return Json{{"vertices", g.vertices.size()},
              {"edges", g.edges.size()},
              {"regular_degree", g.regular_degree()},
              {"girth", g.girth()}};
}

CommandResult bergman(const RunConfig& config) {
  const Matroid m = load_matroid(config);
  const auto chart = tropfan::bergman_chart(m);
  Builder b(config);
  Json report = Json::object();
  report["rays"] = chart.rays.size();
  report["chains"] = chart.chains.size();
  report["maximal_chains"] = chart.maximal_chains().size();
  b.add("chart.json", dump(io::to_json(chart)));
  if (m.rank() == 3) {
    const auto g = link_for(m, config.smooth);
    report["link"] = graph_summary(g);
    b.add("link.dot", io::graph_dot(g, "link"));
  }
  return b.finish(report, true);
}

CommandResult tropcheck(const RunConfig& config) {
  require_path(config.p, "--p");
  const auto p = io::trop_pluecker_from_json(io::read_json_file(config.p));
  Json report = Json::object();
  const bool plucker = tropfan::trop_plucker_check(p);
  report["plucker_relations"] = plucker;
  bool ok = plucker;
  if (!config.q.empty()) {
    const auto q = io::trop_pluecker_from_json(io::read_json_file(config.q));
    const bool incidence = tropfan::trop_incidence_check(p, q);
    report["incidence_relations"] = incidence;
    ok = ok && incidence;
  }
  Builder b(config);
  return b.finish(report, ok);
}

Json tuple_json(Subset a, Subset b, Subset c, const char* index_name, int index) {
  return Json{{"A", a.to_string()}, {"B", b.to_string()}, {"C", c.to_string()}, {index_name, index}};
}

CommandResult verify_identities(const RunConfig& config) {
  const int n = config.n, d = config.d;
  if (d < 1 || n < d + 1) throw InputError("need --d >= 1 and --n >= d+1");
  check_caps(config, n, d);
  bool fault_pending = config.inject_fault;

  Json in2pl_failures = Json::array();
  std::size_t in2pl_checked = 0;
  Json moveb_failures = Json::array();
  std::size_t moveb_checked = 0;
  for (auto a_set : colex_subsets(n, d - 1))
    for (auto b_set : colex_subsets(n, d + 1))
      for (auto c_set : colex_subsets(n, d + 1)) {
        for (int a : (a_set - c_set).elements()) {
          ++in2pl_checked;
          auto [lhs, rhs] = polyrel::detail::in2pl_sides(a_set, b_set, c_set, a, fault_pending);
          fault_pending = false;
          if (!(lhs - rhs).is_zero()) in2pl_failures.push_back(tuple_json(a_set, b_set, c_set, "a", a));
        }
        if (!a_set.is_subset_of(c_set)) continue;
        for (int b : (b_set - c_set).elements()) {
          ++moveb_checked;
          auto [lhs, rhs] = polyrel::detail::moveB_sides(a_set, b_set, c_set, b, fault_pending);
          fault_pending = false;
          if (!(lhs - rhs).is_zero()) moveb_failures.push_back(tuple_json(a_set, b_set, c_set, "b", b));
        }
      }

  const Subset pivot = Subset::range(d + 1);
  Json cert_failures = Json::array();
  std::size_t cert_checked = 0;
  unsigned max_exponent = 0;
  for (auto a_set : colex_subsets(n, d - 1))
    for (auto b_set : colex_subsets(n, d + 1)) {
      ++cert_checked;
      const auto cert = polyrel::saturation_certificate(a_set, b_set, pivot);
      max_exponent = std::max(max_exponent, cert.exponent);
      if (!polyrel::replay(cert).holds)
        cert_failures.push_back(Json{{"A", a_set.to_string()}, {"B", b_set.to_string()}});
    }

  const bool ok = in2pl_failures.empty() && moveb_failures.empty() && cert_failures.empty();
  Json report = Json::object();
  report["n"] = n;
  report["d"] = d;
  report["in2pl"] = Json{{"checked", in2pl_checked}, {"failures", std::move(in2pl_failures)}};
  report["moveB"] = Json{{"checked", moveb_checked}, {"failures", std::move(moveb_failures)}};
  report["certificates"] = Json{{"pivot", pivot.to_string()},
                                {"checked", cert_checked},
                                {"max_exponent", max_exponent},
                                {"failures", std::move(cert_failures)}};
  report["all_hold"] = ok;
  Builder b(config);
  return b.finish(report, ok);
}

CommandResult certify_saturation(const RunConfig& config) {
  const Subset a = Subset::parse(config.a_set), b = Subset::parse(config.b_set), c = Subset::parse(config.c_set);
  if (b.size() < 2 || c.size() != b.size() || a.size() + 2 != b.size())
    throw DimensionError("need |A| = d-1, |B| = |C| = d+1");
  const int n = std::max({a.empty() ? 0 : a.max(), b.max(), c.max()});
  check_caps(config, n, b.size() - 1);
  const auto cert = polyrel::saturation_certificate(a, b, c);
  const bool ok = polyrel::replay(cert).holds;
  Json report = io::to_json(cert);
  report["replay_holds"] = ok;
  Builder b2(config);
  b2.add("certificate.json", dump(io::to_json(cert)));
  return b2.finish(report, ok);
}

CommandResult replay_certificate(const RunConfig& config) {
  require_path(config.certificate, "--certificate");
  const auto cert = io::certificate_from_json(io::read_json_file(config.certificate));
  const auto check = polyrel::replay(cert);
  Json report = Json::object();
  report["holds"] = check.holds;
  report["residual_terms"] = check.residual.size();
  Builder b(config);
  return b.finish(report, check.holds);
}

CommandResult export_dot(const RunConfig& config) {
  const Matroid m = load_matroid(config);
  const bool lattice = config.lattice || !config.link;
  Builder b(config);
  std::string text;
  if (lattice) {
    const auto dot = io::lattice_dot(m, matroidcore::flats(m));
    b.add("lattice.dot", dot);
    text += dot;
  }
  if (config.link) {
    const auto dot = io::graph_dot(link_for(m, config.smooth), "link");
    b.add("link.dot", dot);
    text += dot;
  }
  return b.finish_text(text);
}

const std::map<std::string, std::function<CommandResult(const RunConfig&)>>& registry() {
  static const std::map<std::string, std::function<CommandResult(const RunConfig&)>> table = {
      {"lines-matroid", lines_matroid},
      {"genericity", genericity},
      {"dilworth", dilworth_cmd},
      {"bergman", bergman},
      {"tropcheck", tropcheck},
      {"verify-identities", verify_identities},
      {"certify-saturation", certify_saturation},
      {"replay-certificate", replay_certificate},
      {"export-dot", export_dot},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CommandResult run_command(const RunConfig& config) {
  auto it = registry().find(config.command);
  if (it == registry().end()) throw InputError("unknown command: " + config.command);
  return it->second(config);
}

void write_artifacts(const CommandResult& result, const RunConfig& config) {
  if (!config.output_dir) return;
  const std::filesystem::path dir(*config.output_dir);
  std::filesystem::create_directories(dir);
  for (const auto& a : result.artifacts) {
    std::ofstream out(dir / a.name, std::ios::binary);
    if (!out) throw InputError("cannot write " + (dir / a.name).string());
    out << a.content;
  }
}

std::string error_json(const std::string& message) { return Json{{"error", message}}.dump() + "\n"; }

}  // namespace lxkit::commands
